/// @file manager.hpp
/// @brief Groupings, CFLOBDD handles and the hash-consing manager.

#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "cflobdd/value.hpp"

namespace cflobdd {

/// Exit and middle vertices are numbered from 0 in every tuple.
using ReturnTuple = std::vector<uint32_t>;

enum class Kind : uint8_t { fork, dont_care, internal };

/// One node of the grouping DAG.
///
/// Groupings obtained from a Manager are interned and immutable. The same
/// struct is used for hand-built mock structures (see MockArena).
struct Grouping {
  Kind kind = Kind::internal;
  uint32_t level = 0;
  uint32_t exits = 0;
  uint64_t id = 0;
  size_t hash = 0;
  const Grouping* a = nullptr;
  ReturnTuple art;
  std::vector<const Grouping*> b;
  std::vector<ReturnTuple> brt;

  size_t middles() const { return b.size(); }
  /// For interned groupings a single exit means the no-distinction proto.
  bool is_no_distinction() const { return exits == 1; }
};

/// Raised when a structure handed to the manager breaks a structural invariant.
class InvariantError : public std::logic_error {
 public:
  InvariantError(std::string invariant, const std::string& what)
      : std::logic_error(invariant + ": " + what), invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

struct CflobddNode {
  const Grouping* grouping = nullptr;
  std::vector<Value> values;
  uint64_t id = 0;
  size_t hash = 0;
};

/// Handle to an interned CFLOBDD. Handle equality is function equality.
class Cflobdd {
 public:
  Cflobdd() = default;

  const Grouping* grouping() const { return n_->grouping; }
  const std::vector<Value>& values() const { return n_->values; }
  uint32_t level() const { return n_->grouping->level; }
  uint64_t id() const { return n_->id; }
  const CflobddNode* node() const { return n_; }
  explicit operator bool() const { return n_ != nullptr; }

  bool operator==(const Cflobdd& o) const { return n_ == o.n_; }
  bool operator!=(const Cflobdd& o) const { return n_ != o.n_; }

 private:
  friend class Manager;
  explicit Cflobdd(const CflobddNode* n) : n_(n) {}
  const CflobddNode* n_ = nullptr;
};

struct CflobddHash {
  size_t operator()(const Cflobdd& c) const { return std::hash<const void*>{}(c.node()); }
};

namespace detail {
struct Caches;
}

/// Owns all groupings and CFLOBDDs built through it plus the operation caches.
///
/// A Manager is not thread-safe; distinct managers are independent.
class Manager {
 public:
  explicit Manager(uint64_t seed = 0);
  ~Manager();
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  const Grouping* fork() const { return fork_; }
  const Grouping* dont_care() const { return dont_care_; }

  /// Returns the unique representative of `candidate`, installing it if new.
  /// Children must already be representatives. Throws InvariantError.
  const Grouping* intern(Grouping candidate);

  /// Returns the unique CFLOBDD over `g` with the given value tuple.
  Cflobdd make(const Grouping* g, std::vector<Value> values);

  size_t grouping_count() const { return groupings_.size(); }
  size_t cflobdd_count() const { return nodes_.size(); }

  std::mt19937_64& rng() { return rng_; }
  uint64_t seed() const { return seed_; }
  void reseed(uint64_t seed);

  /// Drops every operation cache. Interned structures are kept.
  void clear_caches();
  detail::Caches& caches() { return *caches_; }

 private:
  struct GroupingPtrHash {
    size_t operator()(const Grouping* g) const { return g->hash; }
  };
  struct GroupingPtrEq {
    bool operator()(const Grouping* x, const Grouping* y) const;
  };
  struct NodePtrHash {
    size_t operator()(const CflobddNode* n) const { return n->hash; }
  };
  struct NodePtrEq {
    bool operator()(const CflobddNode* x, const CflobddNode* y) const {
      return x->grouping == y->grouping && x->values == y->values;
    }
  };

  void validate(const Grouping& g) const;

  std::deque<Grouping> groupings_;
  std::unordered_set<const Grouping*, GroupingPtrHash, GroupingPtrEq> table_;
  std::deque<CflobddNode> nodes_;
  std::unordered_set<const CflobddNode*, NodePtrHash, NodePtrEq> node_table_;
  const Grouping* fork_ = nullptr;
  const Grouping* dont_care_ = nullptr;
  std::unique_ptr<detail::Caches> caches_;
  uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Structural hash over shallow content; children are identified by id.
size_t structural_hash(const Grouping& g);

}  // namespace cflobdd

/// @file apply.hpp
/// @brief Pair and triple products, reduction, apply, ITE, restriction and quantification.

#pragma once

#include <array>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cflobdd/manager.hpp"

namespace cflobdd {

using PairTuple = std::vector<std::pair<uint32_t, uint32_t>>;
using TripleTuple = std::vector<std::array<uint32_t, 3>>;
using ReductionTuple = std::vector<uint32_t>;

/// Keeps the first occurrence of each class in order and maps every input
/// position to the index of its class.
template <class T, class Hash = std::hash<T>, class Eq = std::equal_to<T>>
std::pair<std::vector<T>, ReductionTuple> collapse_classes_leftmost(const std::vector<T>& t) {
  std::vector<T> projected;
  ReductionTuple renumbered;
  renumbered.reserve(t.size());
  std::unordered_map<T, uint32_t, Hash, Eq> seen;
  for (const auto& x : t) {
    auto [it, fresh] = seen.try_emplace(x, static_cast<uint32_t>(projected.size()));
    if (fresh) projected.push_back(x);
    renumbered.push_back(it->second);
  }
  return {std::move(projected), std::move(renumbered)};
}

inline std::pair<std::vector<Value>, ReductionTuple> collapse_values(const std::vector<Value>& t) {
  return collapse_classes_leftmost<Value, ValueHash>(t);
}

/// Accumulates the B-connections of an internal grouping under construction.
class GroupingBuilder {
 public:
  GroupingBuilder(uint32_t level, const Grouping* a);

  /// Returns the slot holding (h, rt), appending a new slot if the pair is new.
  uint32_t insert_b_connection(const Grouping* h, const ReturnTuple& rt);
  /// Appends without checking for an equal slot.
  void push_b_connection(const Grouping* h, ReturnTuple rt);
  size_t size() const { return g_.b.size(); }
  void set_a(const Grouping* a) { g_.a = a; }
  /// Interns the grouping; the exit count is one more than the largest entry.
  const Grouping* finish(Manager& m);

 private:
  struct SlotKey {
    const Grouping* h;
    const ReturnTuple* rt;
  };
  struct SlotHash {
    size_t operator()(const SlotKey& k) const;
  };
  struct SlotEq {
    bool operator()(const SlotKey& x, const SlotKey& y) const {
      return x.h == y.h && *x.rt == *y.rt;
    }
  };
  Grouping g_;
  std::deque<ReturnTuple> store_;
  std::unordered_map<SlotKey, uint32_t, SlotHash, SlotEq> slots_;
};

struct PairProductResult {
  const Grouping* g = nullptr;
  PairTuple pt;
};

struct TripleProductResult {
  const Grouping* g = nullptr;
  TripleTuple tt;
};

/// Cross product of two same-level protos; exit e of the result stands for pt[e].
const PairProductResult& pair_product(Manager& m, const Grouping* g1, const Grouping* g2);
const TripleProductResult& triple_product(Manager& m, const Grouping* g1, const Grouping* g2,
                                          const Grouping* g3);

/// Merges exits of g according to a leftmost-normalized reduction tuple.
const Grouping* reduce(Manager& m, const Grouping* g, const ReductionTuple& rt);

Cflobdd binary_apply_and_reduce(Manager& m, const Cflobdd& n1, const Cflobdd& n2,
                                const BinaryOp& op);
Cflobdd ternary_apply_and_reduce(Manager& m, const Cflobdd& n1, const Cflobdd& n2,
                                 const Cflobdd& n3, const TernaryOp& op);
/// Applies f to every terminal value and restores canonical form.
Cflobdd map_values(Manager& m, const Cflobdd& c, const std::function<Value(const Value&)>& f);

Cflobdd ite(Manager& m, const Cflobdd& a, const Cflobdd& b, const Cflobdd& c);
/// The binary Boolean op with truth-table `code` expressed through ITE.
Cflobdd binary_op_via_ite(Manager& m, unsigned code, const Cflobdd& a, const Cflobdd& b);

/// Swaps the two terminal values.
Cflobdd flip_value_tuple(Manager& m, const Cflobdd& c);
/// Boolean negation.
Cflobdd complement(Manager& m, const Cflobdd& c);
Cflobdd scalar_multiply(Manager& m, const Cflobdd& c, const Value& v);

/// f with variable i fixed to v; the result still ranges over all variables.
Cflobdd restrict(Manager& m, const Cflobdd& c, uint64_t i, bool v);
Cflobdd exists(Manager& m, const Cflobdd& c, uint64_t i);

Cflobdd and_(Manager& m, const Cflobdd& a, const Cflobdd& b);
Cflobdd or_(Manager& m, const Cflobdd& a, const Cflobdd& b);
Cflobdd xor_(Manager& m, const Cflobdd& a, const Cflobdd& b);
Cflobdd plus(Manager& m, const Cflobdd& a, const Cflobdd& b);
Cflobdd minus(Manager& m, const Cflobdd& a, const Cflobdd& b);
Cflobdd times(Manager& m, const Cflobdd& a, const Cflobdd& b);

}  // namespace cflobdd

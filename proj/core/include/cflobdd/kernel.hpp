/// @file kernel.hpp
/// @brief Invariant checking, interpretation, semantics, fold/unfold, sizes and serialization.

#pragma once

#include <string>
#include <vector>

#include "cflobdd/manager.hpp"

namespace cflobdd {

/// Bit i is the value of the i-th variable in the CFLOBDD's order.
using Assignment = std::vector<bool>;

struct Violation {
  std::string invariant;  // "Inv1", "Inv2a", "Inv2b", "Inv3", "Inv4", "Inv5", "Inv6", "Coverage", "Shape"
  uint64_t grouping = 0;
  int64_t index = -1;
  std::string detail;
};

/// Checks every grouping reachable from g plus the value tuple; empty means canonical.
std::vector<Violation> check_invariants(const Grouping& g, const std::vector<Value>& values);
std::vector<Violation> check_invariants(const Cflobdd& c);

/// Storage for hand-built structures that bypass the manager's validation.
class MockArena {
 public:
  const Grouping* fork();
  const Grouping* dont_care();
  const Grouping* internal(uint32_t level, const Grouping* a, ReturnTuple art,
                           std::vector<const Grouping*> b, std::vector<ReturnTuple> brt,
                           uint32_t exits);

 private:
  std::deque<Grouping> store_;
  uint64_t next_id_ = uint64_t{1} << 48;
};

uint32_t interpret_grouping(const Grouping* g, const Assignment& a, size_t offset = 0);
Value interpret(const Cflobdd& c, const Assignment& a);

/// Preimage of each exit as sorted bit strings; level <= 4.
std::vector<std::vector<std::string>> denotation(const Grouping* g);
std::vector<std::vector<std::string>> denotation(const Cflobdd& c);

struct DecisionTree {
  uint32_t level = 0;
  /// Leaf p (MSB-first bits of p) holds f(bits(p)); size 2^(2^level).
  std::vector<Value> leaves;
};

/// Exit index reached by every assignment in lexicographic order; level <= 5.
std::vector<uint32_t> unfold_exits(const Grouping* g);
DecisionTree unfold(const Cflobdd& c);

struct FoldResult {
  const Grouping* g = nullptr;
  /// Leaf labels of the exits, in exit order.
  std::vector<uint32_t> exit_labels;
};

/// Canonical proto for a labelled tree of 2^(2^level) leaves.
FoldResult fold_labels(Manager& m, uint32_t level, const std::vector<uint32_t>& leaves);
Cflobdd fold(Manager& m, const DecisionTree& t);

/// A B-connection into a single-exit proto counts as one edge; any other
/// connection counts its call edge plus one edge per return-tuple entry.
struct SizeReport {
  uint64_t groupings = 0;
  uint64_t vertices = 0;
  uint64_t edges = 0;
  uint64_t value_edges = 0;
};

SizeReport size_report(const Grouping* g);
SizeReport size_report(const Cflobdd& c);

/// Unique groupings reachable from g, children before parents.
std::vector<const Grouping*> reachable(const Grouping* g);

/// Order in which exits are first reached when enumerating assignments
/// lexicographically; level <= 3.
std::vector<uint32_t> lex_first_visit_order(const Grouping* g);
std::vector<uint32_t> lex_first_visit_order(const Cflobdd& c);

/// One line per grouping (children first) and a final values line.
std::string to_text(const Cflobdd& c);
/// Rebuilds a CFLOBDD from to_text output. Throws ParseError.
Cflobdd from_text(Manager& m, const std::string& text);
std::string to_dot(const Cflobdd& c);

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

}  // namespace cflobdd

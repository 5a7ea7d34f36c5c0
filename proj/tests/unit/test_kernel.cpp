#include <doctest.h>

#include <random>

#include "cflobdd/cflobdd.hpp"
#include "support/dense.hpp"

using namespace cflobdd;

namespace {

bool has(const std::vector<Violation>& vs, const std::string& name) {
  for (const auto& v : vs)
    if (v.invariant == name) return true;
  return false;
}

}  // namespace

TEST_CASE("interpret follows the truth table") {
  Manager m;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto e = dense::random_expr(m, 2, rng, 4);
    CHECK(dense::table_of(e.node) == e.table);
  }
  CHECK_THROWS(interpret(projection(m, 2, 0), Assignment(3)));
}

TEST_CASE("lexicographic exit order of a two-level function") {
  Manager m;
  auto x = [&](int i) { return projection(m, 2, i); };
  Cflobdd f = or_(m, xor_(m, x(0), x(1)), and_(m, and_(m, x(0), x(1)), x(2)));
  CHECK(check_invariants(f).empty());
  const Grouping* g = f.grouping();
  CHECK(unfold_exits(g->a) == std::vector<uint32_t>{0, 1, 1, 2});
  REQUIRE(g->b.size() == 3);
  CHECK(unfold_exits(g->b[2]) == std::vector<uint32_t>{0, 0, 1, 1});
  CHECK(unfold_exits(g) == std::vector<uint32_t>{0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1});
  CHECK(lex_first_visit_order(g) == std::vector<uint32_t>{0, 1});
  CHECK(f.values() == std::vector<Value>{false, true});
}

TEST_CASE("collapse keeps first occurrences") {
  auto [proj, ren] = collapse_classes_leftmost(std::vector<int>{2, 2, 1, 1, 4, 1, 1});
  CHECK(proj == std::vector<int>{2, 1, 4});
  CHECK(ren == ReductionTuple{0, 0, 1, 1, 2, 1, 1});
}

TEST_CASE("fold inverts unfold") {
  Manager m(5);
  std::mt19937_64 rng(5);
  for (uint32_t level = 0; level <= 3; ++level)
    for (int i = 0; i < 10; ++i) {
      DecisionTree t{level, {}};
      size_t leaves = size_t{1} << (1u << level);
      for (size_t p = 0; p < leaves; ++p) t.leaves.push_back(Value(static_cast<int>(rng() % 3)));
      Cflobdd c = fold(m, t);
      CHECK(check_invariants(c).empty());
      CHECK(unfold(c).leaves == t.leaves);
      CHECK(fold(m, unfold(c)) == c);
    }
}

TEST_CASE("denotation lists preimages") {
  Manager m;
  auto d = denotation(eq_relation(m, 1));
  REQUIRE(d.size() == 2);
  CHECK(d[0] == std::vector<std::string>{"00", "11"});
  CHECK(d[1] == std::vector<std::string>{"01", "10"});
}

TEST_CASE("size of the equality relation") {
  Manager m;
  SizeReport r = size_report(eq_relation(m, 1));
  CHECK(r.groupings == 2);
  CHECK(r.vertices == 8);
  CHECK(r.edges == 11);
  CHECK(r.value_edges == 2);
}

TEST_CASE("mock structures and invariant names") {
  MockArena a;
  const Grouping* f = a.fork();
  const Grouping* d = a.dont_care();
  const Grouping* ok = a.internal(1, f, {0, 1}, {f, f}, {{0, 1}, {1, 0}}, 2);
  CHECK(check_invariants(*ok, {true, false}).empty());

  CHECK(has(check_invariants(*a.internal(1, f, {1, 0}, {f, f}, {{0, 1}, {1, 0}}, 2), {true, false}), "Inv1"));
  CHECK(has(check_invariants(*a.internal(1, f, {0, 1}, {f}, {{0, 1}}, 2), {true, false}), "Inv1"));
  CHECK(has(check_invariants(*a.internal(1, f, {0, 1}, {f, f}, {{0, 0}, {1, 0}}, 2), {true, false}), "Inv2a"));
  CHECK(has(check_invariants(*a.internal(1, f, {0, 1}, {f, d}, {{1, 0}, {0}}, 2), {true, false}), "Inv2b"));
  CHECK(has(check_invariants(*a.internal(1, f, {0, 1}, {d, d}, {{0}, {0}}, 2), {true, false}), "Inv4"));
  CHECK(has(check_invariants(*ok, {true, true}), "Inv6"));
  CHECK(has(check_invariants(*ok, {true}), "Inv5"));
  CHECK(has(check_invariants(*a.internal(1, f, {0, 1}, {d, d}, {{0}, {1}}, 3), {1, 2, 3}), "Coverage"));

  const Grouping* f2 = a.fork();
  CHECK(has(check_invariants(*a.internal(1, f, {0, 1}, {f2, d}, {{0, 1}, {0}}, 2), {true, false}), "Inv3"));
}

TEST_CASE("manager rejects malformed groupings") {
  Manager m;
  Grouping g;
  g.level = 1;
  g.a = m.fork();
  g.b = {m.dont_care(), m.dont_care()};
  g.brt = {{0}, {0}};
  g.exits = 1;
  CHECK_THROWS_AS(m.intern(g), InvariantError);
  CHECK_THROWS_AS(m.make(m.fork(), {true, true}), InvariantError);
}

TEST_CASE("text serialization round trip") {
  Manager m;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    auto e = dense::random_expr(m, 2, rng, 4);
    std::string text = to_text(e.node);
    Manager other;
    Cflobdd back = from_text(other, text);
    CHECK(to_text(back) == text);
    CHECK(dense::table_of(back) == e.table);
  }
  Cflobdd h = hadamard(m, 2);
  CHECK(from_text(m, to_text(h)) == h);
}

TEST_CASE("text parse errors carry a line number") {
  Manager m;
  std::string text = to_text(projection(m, 1, 0));
  CHECK_THROWS_AS(from_text(m, "level:0 kind:Q\n"), ParseError);
  std::string broken = text;
  broken.replace(broken.find("values:"), 7, "valuez:");
  CHECK_THROWS_AS(from_text(m, broken), ParseError);
  try {
    from_text(m, "level:0 kind:F exits:2\nlevel:1 kind:I A:0 ART:[1,2] B:[0 0] BRT:[[1,1] [2,1]] exits:2\nvalues:[F T]\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("dot output") {
  Manager m;
  std::string dot = to_dot(eq_relation(m, 1));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("cluster") != std::string::npos);
}

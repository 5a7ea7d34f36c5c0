#include <doctest.h>

#include <random>

#include "cflobdd/cflobdd.hpp"
#include "support/dense.hpp"

using namespace cflobdd;

TEST_CASE("all sixteen binary operations") {
  Manager m;
  std::mt19937_64 rng(21);
  for (int i = 0; i < 12; ++i) {
    auto a = dense::random_expr(m, 2, rng, 3);
    auto b = dense::random_expr(m, 2, rng, 3);
    for (unsigned code = 0; code < 16; ++code) {
      Cflobdd c = binary_apply_and_reduce(m, a.node, b.node, ops::boolean(code));
      CHECK(check_invariants(c).empty());
      CHECK(dense::table_of(c) == a.table.zip(b.table, code));
      CHECK(binary_op_via_ite(m, code, a.node, b.node) == c);
    }
  }
}

TEST_CASE("ite restrict and exists") {
  Manager m;
  std::mt19937_64 rng(22);
  for (int i = 0; i < 10; ++i) {
    auto a = dense::random_expr(m, 2, rng, 3);
    auto b = dense::random_expr(m, 2, rng, 3);
    auto c = dense::random_expr(m, 2, rng, 3);
    CHECK(dense::table_of(ite(m, a.node, b.node, c.node)) == a.table.ite(b.table, c.table));
    for (uint32_t v = 0; v < 4; ++v) {
      CHECK(dense::table_of(restrict(m, a.node, v, false)) == a.table.restrict(v, false));
      CHECK(dense::table_of(restrict(m, a.node, v, true)) == a.table.restrict(v, true));
      CHECK(dense::table_of(exists(m, a.node, v)) == a.table.exists(v));
    }
  }
  CHECK_THROWS_AS(restrict(m, projection(m, 2, 0), 4, true), std::out_of_range);
}

TEST_CASE("handles are canonical") {
  Manager m;
  auto x = [&](int i) { return projection(m, 2, i); };
  Cflobdd lhs = complement(m, and_(m, x(0), x(3)));
  Cflobdd rhs = or_(m, complement(m, x(0)), complement(m, x(3)));
  CHECK(lhs == rhs);
  CHECK(xor_(m, x(1), x(1)) == false_(m, 2));
  CHECK(flip_value_tuple(m, x(2)) == complement(m, x(2)));
}

TEST_CASE("arithmetic on integer terminals") {
  Manager m;
  Cflobdd a = map_values(m, projection(m, 1, 0), [](const Value& v) { return Value(v.as_bool() ? 3 : 1); });
  Cflobdd b = map_values(m, projection(m, 1, 1), [](const Value& v) { return Value(v.as_bool() ? 5 : 2); });
  Cflobdd s = plus(m, a, b);
  Cflobdd p = times(m, a, b);
  Cflobdd d = minus(m, a, b);
  for (size_t q = 0; q < 4; ++q) {
    int av = (q & 2) ? 3 : 1, bv = (q & 1) ? 5 : 2;
    auto as = dense::assignment_of(q, 2);
    CHECK(interpret(s, as) == Value(av + bv));
    CHECK(interpret(p, as) == Value(av * bv));
    CHECK(interpret(d, as) == Value(av - bv));
  }
  CHECK(scalar_multiply(m, a, Value(0)) == constant(m, 1, Value(0)));
  CHECK_THROWS_AS(and_(m, a, b), std::domain_error);
  CHECK_THROWS_AS(complement(m, a), std::domain_error);
}

TEST_CASE("reduce merges exits") {
  Manager m;
  Cflobdd e = eq_relation(m, 2);
  CHECK(reduce(m, e.grouping(), {0, 0}) == no_distinction_proto(m, 2));
  CHECK(reduce(m, e.grouping(), {0, 1}) == e.grouping());
  CHECK_THROWS_AS(reduce(m, e.grouping(), {1, 0}), std::invalid_argument);
}

TEST_CASE("pair product exits list reachable pairs") {
  Manager m;
  const auto& r = pair_product(m, projection_proto(m, 2, 0), projection_proto(m, 2, 3));
  CHECK(r.pt.size() == 4);
  CHECK(r.pt[0] == std::pair<uint32_t, uint32_t>{0, 0});
  const auto& same = pair_product(m, projection_proto(m, 2, 1), projection_proto(m, 2, 1));
  CHECK(same.pt.size() == 2);
}

#include "cflobdd/construct.hpp"

#include <stdexcept>

#include "caches.hpp"

namespace cflobdd {

const Grouping* no_distinction_proto(Manager& m, uint32_t k) {
  auto& cache = m.caches().no_distinction;
  if (cache.empty()) cache.push_back(m.dont_care());
  while (cache.size() <= k) {
    const Grouping* lower = cache.back();
    Grouping g;
    g.level = static_cast<uint32_t>(cache.size());
    g.a = lower;
    g.b = {lower};
    g.brt = {{0}};
    g.exits = 1;
    cache.push_back(m.intern(std::move(g)));
  }
  return cache[k];
}

Cflobdd constant(Manager& m, uint32_t k, const Value& v) { return m.make(no_distinction_proto(m, k), {v}); }
Cflobdd false_(Manager& m, uint32_t k) { return constant(m, k, false); }
Cflobdd true_(Manager& m, uint32_t k) { return constant(m, k, true); }

const Grouping* projection_proto(Manager& m, uint32_t k, uint64_t i) {
  if (k == 0) return m.fork();
  uint64_t half = uint64_t{1} << (k - 1);
  Grouping g;
  g.level = k;
  g.exits = 2;
  const Grouping* nd = no_distinction_proto(m, k - 1);
  if (i < half) {
    g.a = projection_proto(m, k - 1, i);
    g.b = {nd, nd};
    g.brt = {{0}, {1}};
  } else {
    g.a = nd;
    g.b = {projection_proto(m, k - 1, i - half)};
    g.brt = {{0, 1}};
  }
  return m.intern(std::move(g));
}

Cflobdd projection(Manager& m, uint32_t k, uint64_t i) {
  if (k < 64 && i >= (uint64_t{1} << k))
    throw std::out_of_range("projection: index " + std::to_string(i) + " out of range for level " + std::to_string(k));
  return m.make(projection_proto(m, k, i), {false, true});
}

namespace {

bool all_zero(const std::vector<bool>& bits, size_t lo, size_t n) {
  for (size_t i = lo; i < lo + n; ++i)
    if (bits[i]) return false;
  return true;
}

const Grouping* basis_rec(Manager& m, uint32_t k, const std::vector<bool>& bits, size_t lo) {
  if (k == 0) return m.fork();
  size_t half = size_t{1} << (k - 1);
  bool hi_zero = all_zero(bits, lo, half);
  bool lo_zero = all_zero(bits, lo + half, half);
  const Grouping* nd = no_distinction_proto(m, k - 1);
  const Grouping* lower = basis_rec(m, k - 1, bits, lo + half);
  Grouping g;
  g.level = k;
  g.exits = 2;
  g.a = basis_rec(m, k - 1, bits, lo);
  if (hi_zero) {
    g.b = {lower, nd};
    g.brt = {{0, 1}, {lo_zero ? 1u : 0u}};
  } else {
    g.b = {nd, lower};
    g.brt = {{0}, lo_zero ? ReturnTuple{1, 0} : ReturnTuple{0, 1}};
  }
  return m.intern(std::move(g));
}

}  // namespace

const Grouping* standard_basis_proto(Manager& m, uint32_t k, const std::vector<bool>& bits) {
  if (k >= 40 || bits.size() != (size_t{1} << k))
    throw std::invalid_argument("standard_basis_vector: need exactly 2^k index bits");
  return basis_rec(m, k, bits, 0);
}

Cflobdd standard_basis_vector(Manager& m, uint32_t k, const std::vector<bool>& bits, const Value& one) {
  const Grouping* g = standard_basis_proto(m, k, bits);
  Value zero = from_integer(0, one);
  if (all_zero(bits, 0, bits.size())) return m.make(g, {one, zero});
  return m.make(g, {zero, one});
}

Cflobdd standard_basis_vector(Manager& m, uint32_t k, uint64_t x, const Value& one) {
  if (k > 6) throw std::invalid_argument("standard_basis_vector: integer index needs k <= 6");
  size_t n = size_t{1} << k;
  if (n < 64 && x >= (uint64_t{1} << n)) throw std::out_of_range("standard_basis_vector: index out of range");
  std::vector<bool> bits(n);
  for (size_t i = 0; i < n; ++i) bits[i] = (x >> (n - 1 - i)) & 1;
  return standard_basis_vector(m, k, bits, one);
}

const Grouping* eq_proto(Manager& m, uint32_t l) {
  if (l == 0) throw std::invalid_argument("eq_relation: level must be >= 1");
  auto& cache = m.caches().identity;
  while (cache.size() < l) {
    Grouping g;
    g.level = static_cast<uint32_t>(cache.size() + 1);
    g.exits = 2;
    if (cache.empty()) {
      g.a = m.fork();
      g.b = {m.fork(), m.fork()};
      g.brt = {{0, 1}, {1, 0}};
    } else {
      g.a = cache.back();
      g.b = {cache.back(), no_distinction_proto(m, g.level - 1)};
      g.brt = {{0, 1}, {1}};
    }
    cache.push_back(m.intern(std::move(g)));
  }
  return cache[l - 1];
}

Cflobdd eq_relation(Manager& m, uint32_t l) { return m.make(eq_proto(m, l), {true, false}); }

namespace {

const Grouping* sum_proto(Manager& m) {
  Grouping g;
  g.level = 1;
  g.exits = 3;
  g.a = m.fork();
  g.b = {m.fork(), m.fork()};
  g.brt = {{0, 1}, {1, 2}};
  return m.intern(std::move(g));
}

const Grouping* check_proto(Manager& m) {
  Grouping g;
  g.level = 1;
  g.exits = 2;
  g.a = m.fork();
  g.b = {m.dont_care(), m.dont_care()};
  g.brt = {{0}, {1}};
  return m.intern(std::move(g));
}

}  // namespace

const Grouping* add_proto(Manager& m, uint32_t l, bool carry_in) {
  if (l < 2) throw std::invalid_argument("add_proto: level must be >= 2");
  Grouping g;
  g.level = l;
  g.exits = 3;
  if (l == 2) {
    const Grouping* z = check_proto(m);
    g.a = sum_proto(m);
    g.b = {z, z, z};
    g.brt = carry_in ? std::vector<ReturnTuple>{{0, 1}, {2, 0}, {0, 2}}
                     : std::vector<ReturnTuple>{{0, 1}, {1, 0}, {2, 1}};
    return m.intern(std::move(g));
  }
  const Grouping* r = add_proto(m, l - 1, false);
  const Grouping* p = add_proto(m, l - 1, true);
  const Grouping* nd = no_distinction_proto(m, l - 1);
  if (carry_in) {
    g.a = p;
    g.b = {nd, r, p};
    g.brt = {{0}, {1, 0, 2}, {0, 1, 2}};
  } else {
    g.a = r;
    g.b = {r, nd, p};
    g.brt = {{0, 1, 2}, {1}, {1, 0, 2}};
  }
  return m.intern(std::move(g));
}

Cflobdd add_relation(Manager& m, uint32_t l) {
  const Grouping* g = add_proto(m, l + 2, false);
  return m.make(reduce(m, g, {0, 1, 0}), {true, false});
}

}  // namespace cflobdd

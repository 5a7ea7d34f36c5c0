#include "cflobdd/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "caches.hpp"
#include "cflobdd/construct.hpp"

namespace cflobdd {

using detail::mix;
using detail::SymMatrix;

BilinearPoly BilinearPoly::single(uint32_t e1, uint32_t e2, const mpz_class& coef) {
  BilinearPoly p;
  if (coef != 0) p.terms.push_back({e1, e2, coef});
  return p;
}

BilinearPoly BilinearPoly::operator+(const BilinearPoly& o) const {
  BilinearPoly r;
  size_t i = 0, j = 0;
  while (i < terms.size() || j < o.terms.size()) {
    if (j == o.terms.size() ||
        (i < terms.size() && std::tie(terms[i].e1, terms[i].e2) < std::tie(o.terms[j].e1, o.terms[j].e2))) {
      r.terms.push_back(terms[i++]);
    } else if (i == terms.size() ||
               std::tie(o.terms[j].e1, o.terms[j].e2) < std::tie(terms[i].e1, terms[i].e2)) {
      r.terms.push_back(o.terms[j++]);
    } else {
      mpz_class c = terms[i].coef + o.terms[j].coef;
      if (c != 0) r.terms.push_back({terms[i].e1, terms[i].e2, c});
      ++i;
      ++j;
    }
  }
  return r;
}

BilinearPoly BilinearPoly::scaled(const mpz_class& c) const {
  BilinearPoly r;
  if (c == 0) return r;
  r.terms = terms;
  for (auto& t : r.terms) t.coef *= c;
  return r;
}

BilinearPoly BilinearPoly::remapped(const ReturnTuple& rt1, const ReturnTuple& rt2) const {
  BilinearPoly r;
  r.terms.reserve(terms.size());
  for (const auto& t : terms) r.terms.push_back({rt1[t.e1], rt2[t.e2], t.coef});
  std::sort(r.terms.begin(), r.terms.end(),
            [](const Term& x, const Term& y) { return std::tie(x.e1, x.e2) < std::tie(y.e1, y.e2); });
  std::vector<Term> merged;
  for (auto& t : r.terms) {
    if (!merged.empty() && merged.back().e1 == t.e1 && merged.back().e2 == t.e2) {
      merged.back().coef += t.coef;
      if (merged.back().coef == 0) merged.pop_back();
    } else {
      merged.push_back(std::move(t));
    }
  }
  r.terms = std::move(merged);
  return r;
}

size_t BilinearPoly::hash() const {
  size_t h = terms.size();
  for (const auto& t : terms) {
    h = mix(h, t.e1);
    h = mix(h, t.e2);
    h = mix(h, mpz_get_ui(t.coef.get_mpz_t()));
    h = mix(h, mpz_sizeinbase(t.coef.get_mpz_t(), 2));
  }
  return h;
}

namespace {

const Grouping* internal(Manager& m, uint32_t level, const Grouping* a, std::vector<const Grouping*> b,
                         std::vector<ReturnTuple> brt) {
  Grouping g;
  g.level = level;
  g.a = a;
  g.b = std::move(b);
  g.brt = std::move(brt);
  uint32_t exits = 0;
  for (const auto& rt : g.brt)
    for (uint32_t e : rt) exits = std::max(exits, e + 1);
  g.exits = exits;
  return m.intern(std::move(g));
}

Value zero_like(const Value& v) { return from_integer(0, v); }

}  // namespace

const Grouping* hadamard_grouping(Manager& m, uint32_t l) {
  if (l == 0) throw std::invalid_argument("hadamard: level must be >= 1");
  auto& cache = m.caches().hadamard;
  while (cache.size() < l) {
    uint32_t level = static_cast<uint32_t>(cache.size() + 1);
    if (cache.empty()) {
      cache.push_back(internal(m, 1, m.fork(), {m.dont_care(), m.fork()}, {{0}, {0, 1}}));
    } else {
      const Grouping* h = cache.back();
      cache.push_back(internal(m, level, h, {h, h}, {{0, 1}, {1, 0}}));
    }
  }
  return cache[l - 1];
}

Cflobdd hadamard(Manager& m, uint32_t l) { return m.make(hadamard_grouping(m, l), {1, -1}); }

const Grouping* identity_grouping(Manager& m, uint32_t l) { return eq_proto(m, l); }

Cflobdd identity(Manager& m, uint32_t l) { return m.make(identity_grouping(m, l), {1, 0}); }

Cflobdd identity_valued(Manager& m, uint32_t l, const Value& diagonal, const Value& off) {
  if (diagonal == off) return constant(m, l, diagonal);
  return m.make(identity_grouping(m, l), {diagonal, off});
}

Cflobdd not_matrix(Manager& m) { return m.make(identity_grouping(m, 1), {0, 1}); }

const Grouping* column1_grouping(Manager& m, uint32_t l) {
  if (l == 0) throw std::invalid_argument("column1: level must be >= 1");
  auto& cache = m.caches().column1;
  while (cache.size() < l) {
    uint32_t level = static_cast<uint32_t>(cache.size() + 1);
    if (cache.empty()) {
      cache.push_back(internal(m, 1, m.dont_care(), {m.fork()}, {{0, 1}}));
    } else {
      const Grouping* c = cache.back();
      cache.push_back(internal(m, level, c, {c, no_distinction_proto(m, level - 1)}, {{0, 1}, {1}}));
    }
  }
  return cache[l - 1];
}

Cflobdd column1_matrix(Manager& m, uint32_t l) { return m.make(column1_grouping(m, l), {1, 0}); }

namespace {

const Grouping* shift(Manager& m, const Grouping* g, uint32_t base, bool to_a) {
  if (g->level < base) throw std::invalid_argument("shift: grouping below base level");
  auto& cache = m.caches().shift;
  detail::ShiftKey key{g, base, to_a};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const Grouping* out;
  if (g->level == base) {
    const Grouping* nd = no_distinction_proto(m, base);
    if (to_a) {
      std::vector<const Grouping*> b(g->exits, nd);
      std::vector<ReturnTuple> brt;
      for (uint32_t j = 0; j < g->exits; ++j) brt.push_back({j});
      out = internal(m, base + 1, g, std::move(b), std::move(brt));
    } else {
      ReturnTuple id(g->exits);
      for (uint32_t j = 0; j < g->exits; ++j) id[j] = j;
      out = internal(m, base + 1, nd, {g}, {id});
    }
  } else if (g->is_no_distinction()) {
    out = no_distinction_proto(m, g->level + 1);
  } else {
    std::vector<const Grouping*> b;
    for (const auto* x : g->b) b.push_back(shift(m, x, base, to_a));
    out = internal(m, g->level + 1, shift(m, g->a, base, to_a), std::move(b), g->brt);
  }
  cache.emplace(key, out);
  return out;
}

}  // namespace

const Grouping* shift_to_a(Manager& m, const Grouping* g, uint32_t base) { return shift(m, g, base, true); }
const Grouping* shift_to_b(Manager& m, const Grouping* g, uint32_t base) { return shift(m, g, base, false); }

namespace {

Cflobdd kron_at(Manager& m, const Cflobdd& w, const Cflobdd& v, uint32_t base) {
  if (w.level() != v.level()) throw std::invalid_argument("kronecker: level mismatch");
  Cflobdd wa = m.make(shift_to_a(m, w.grouping(), base), w.values());
  Cflobdd vb = m.make(shift_to_b(m, v.grouping(), base), v.values());
  return times(m, wa, vb);
}

}  // namespace

Cflobdd kronecker_v1(Manager& m, const Cflobdd& w, const Cflobdd& v) { return kron_at(m, w, v, w.level()); }

Cflobdd kronecker_v2(Manager& m, const Cflobdd& w, const Cflobdd& v) {
  if (w.level() == 0) throw std::invalid_argument("kronecker_v2: matrices start at level 1");
  return kron_at(m, w, v, 1);
}

Cflobdd kronecker_v2_vectors(Manager& m, const Cflobdd& w, const Cflobdd& v) { return kron_at(m, w, v, 0); }

Cflobdd vector_to_matrix(Manager& m, const Cflobdd& v) {
  Cflobdd spread = m.make(shift_to_a(m, v.grouping(), 0), v.values());
  return times(m, spread, column1_matrix(m, v.level() + 1));
}

namespace {

detail::Caches& C(Manager& m) { return m.caches(); }

SymMatrix base_mult(Manager& m, const Grouping* g1, const Grouping* g2) {
  uint32_t e1[2][2], e2[2][2];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Assignment a{x == 1, y == 1};
      e1[x][y] = interpret_grouping(g1, a);
      e2[x][y] = interpret_grouping(g2, a);
    }
  std::vector<uint32_t> leaves(4);
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 2; ++z)
      leaves[2 * x + z] = C(m).intern_bp(BilinearPoly::single(e1[x][0], e2[0][z]) +
                                         BilinearPoly::single(e1[x][1], e2[1][z]));
  FoldResult r = fold_labels(m, 1, leaves);
  return {r.g, r.exit_labels};
}

SymMatrix scale(Manager& m, SymMatrix s, const mpz_class& c) {
  if (c == 1) return s;
  for (auto& id : s.bps) {
    BilinearPoly p = C(m).bp[id].scaled(c);
    id = C(m).intern_bp(std::move(p));
  }
  return s;
}

SymMatrix combine_add(Manager& m, const SymMatrix& x, const SymMatrix& y, const mpz_class& c) {
  const PairProductResult& p = pair_product(m, x.g, y.g);
  std::vector<uint32_t> raw;
  raw.reserve(p.pt.size());
  for (auto [e1, e2] : p.pt) {
    BilinearPoly sum = C(m).bp[x.bps[e1]] + C(m).bp[y.bps[e2]].scaled(c);
    raw.push_back(C(m).intern_bp(std::move(sum)));
  }
  auto [ids, renumbered] = collapse_classes_leftmost(raw);
  return {reduce(m, p.g, renumbered), std::move(ids)};
}

const SymMatrix& mm(Manager& m, const Grouping* g1, const Grouping* g2) {
  auto& cache = C(m).matmult;
  detail::PtrPair key{g1, g2};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  SymMatrix out;
  uint32_t k = g1->level;
  if (g1->is_no_distinction() && g2->is_no_distinction()) {
    mpz_class dim;
    mpz_mul_2exp(dim.get_mpz_t(), mpz_class(1).get_mpz_t(), uint64_t{1} << (k - 1));
    out = {no_distinction_proto(m, k), {C(m).intern_bp(BilinearPoly::single(0, 0, dim))}};
  } else if (k == 1) {
    out = base_mult(m, g1, g2);
  } else {
    const SymMatrix sa = mm(m, g1->a, g2->a);
    std::vector<SymMatrix> blocks;
    blocks.reserve(sa.bps.size());
    for (uint32_t id : sa.bps) {
      const BilinearPoly poly = C(m).bp[id];
      SymMatrix acc;
      bool first = true;
      for (const auto& t : poly.terms) {
        SymMatrix y = mm(m, g1->b[t.e1], g2->b[t.e2]);
        for (auto& bid : y.bps) {
          BilinearPoly r = C(m).bp[bid].remapped(g1->brt[t.e1], g2->brt[t.e2]);
          bid = C(m).intern_bp(std::move(r));
        }
        if (first) acc = scale(m, std::move(y), t.coef);
        else acc = combine_add(m, acc, y, t.coef);
        first = false;
      }
      blocks.push_back(std::move(acc));
    }
    std::map<std::pair<const Grouping*, std::vector<uint32_t>>, uint32_t> slots;
    std::vector<const SymMatrix*> unique;
    ReductionTuple red_a;
    for (const auto& b : blocks) {
      auto [sit, fresh] = slots.try_emplace({b.g, b.bps}, static_cast<uint32_t>(unique.size()));
      if (fresh) unique.push_back(&b);
      red_a.push_back(sit->second);
    }
    GroupingBuilder builder(k, reduce(m, sa.g, red_a));
    std::map<uint32_t, uint32_t> exit_of;
    for (const SymMatrix* b : unique) {
      ReturnTuple rt;
      for (uint32_t id : b->bps) {
        auto [eit, fresh] = exit_of.try_emplace(id, static_cast<uint32_t>(out.bps.size()));
        if (fresh) out.bps.push_back(id);
        rt.push_back(eit->second);
      }
      builder.push_b_connection(b->g, std::move(rt));
    }
    out.g = builder.finish(m);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

const SymbolicProduct& matrix_mult_symbolic(Manager& m, const Grouping* g1, const Grouping* g2) {
  if (g1->level != g2->level || g1->level == 0) throw std::invalid_argument("matrix_mult: bad levels");
  auto& cache = C(m).matmult_public;
  detail::PtrPair key{g1, g2};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const SymMatrix& s = mm(m, g1, g2);
  SymbolicProduct p;
  p.g = s.g;
  for (uint32_t id : s.bps) p.tuple.push_back(C(m).bp[id]);
  return cache.emplace(key, std::move(p)).first->second;
}

Cflobdd matrix_mult(Manager& m, const Cflobdd& n1, const Cflobdd& n2) {
  if (n1.level() != n2.level() || n1.level() == 0) throw std::invalid_argument("matrix_mult: bad levels");
  auto& cache = C(m).matmult_top;
  detail::PtrPair key{n1.node(), n2.node()};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const Grouping* id = identity_grouping(m, n1.level());
  Cflobdd out;
  if (n1.grouping() == id && n1.values()[1].is_zero()) {
    out = scalar_multiply(m, n2, n1.values()[0]);
  } else if (n2.grouping() == id && n2.values()[1].is_zero()) {
    out = scalar_multiply(m, n1, n2.values()[0]);
  } else {
    const SymMatrix s = mm(m, n1.grouping(), n2.grouping());
    std::vector<Value> raw;
    raw.reserve(s.bps.size());
    for (uint32_t bid : s.bps) {
      const BilinearPoly& p = C(m).bp[bid];
      Value acc;
      bool first = true;
      for (const auto& t : p.terms) {
        Value prod = mul(n1.values()[t.e1], n2.values()[t.e2]);
        Value term = t.coef == 1 ? prod : mul(from_integer(t.coef, prod), prod);
        acc = first ? term : add(acc, term);
        first = false;
      }
      raw.push_back(acc);
    }
    auto [values, renumbered] = collapse_values(raw);
    out = m.make(reduce(m, s.g, renumbered), std::move(values));
  }
  C(m).matmult_top.emplace(key, out);
  return out;
}

Cflobdd matrix_power(Manager& m, const Cflobdd& n, uint64_t e) {
  const Value& like = n.values()[0];
  Cflobdd result = identity_valued(m, n.level(), from_integer(1, like), zero_like(like));
  Cflobdd base = n;
  while (e) {
    if (e & 1) result = matrix_mult(m, result, base);
    e >>= 1;
    if (e) base = matrix_mult(m, base, base);
  }
  return result;
}

namespace {

// Partial CNOT protos: control in range, target later ([on0, off, on1]);
// and target in range, control earlier and set ([off, on]).
const Grouping* cnot_ctrl(Manager& m, uint32_t l, uint64_t i) {
  if (l == 1) return internal(m, 1, m.fork(), {m.fork(), m.fork()}, {{0, 1}, {1, 2}});
  uint64_t half = uint64_t{1} << (l - 2);
  const Grouping* id = identity_grouping(m, l - 1);
  const Grouping* nd = no_distinction_proto(m, l - 1);
  if (i < half) return internal(m, l, cnot_ctrl(m, l - 1, i), {id, nd, id}, {{0, 1}, {1}, {2, 1}});
  return internal(m, l, id, {cnot_ctrl(m, l - 1, i - half), nd}, {{0, 1, 2}, {1}});
}

const Grouping* cnot_target(Manager& m, uint32_t l, uint64_t j) {
  if (l == 1) return identity_grouping(m, 1);
  uint64_t half = uint64_t{1} << (l - 2);
  const Grouping* id = identity_grouping(m, l - 1);
  const Grouping* nd = no_distinction_proto(m, l - 1);
  if (j < half) return internal(m, l, cnot_target(m, l - 1, j), {nd, id}, {{0}, {1, 0}});
  return internal(m, l, id, {cnot_target(m, l - 1, j - half), nd}, {{0, 1}, {0}});
}

const Grouping* cnot_full(Manager& m, uint32_t l, uint64_t i, uint64_t j) {
  uint64_t half = uint64_t{1} << (l - 2);
  const Grouping* id = identity_grouping(m, l - 1);
  const Grouping* nd = no_distinction_proto(m, l - 1);
  if (j < half) return internal(m, l, cnot_full(m, l - 1, i, j), {id, nd}, {{0, 1}, {1}});
  if (i >= half) return internal(m, l, id, {cnot_full(m, l - 1, i - half, j - half), nd}, {{0, 1}, {1}});
  return internal(m, l, cnot_ctrl(m, l - 1, i), {id, nd, cnot_target(m, l - 1, j - half)},
                  {{0, 1}, {1}, {1, 0}});
}

}  // namespace

Cflobdd cnot(Manager& m, uint32_t l, uint32_t i, uint32_t j) {
  if (l < 2 || l > 40) throw std::invalid_argument("cnot: level must be in [2, 40]");
  uint64_t qubits = uint64_t{1} << (l - 1);
  if (!(i < j) || j >= qubits) throw std::out_of_range("cnot: need i < j < 2^(l-1)");
  return m.make(cnot_full(m, l, i, j), {1, 0});
}

Cflobdd cnot_interleaved(Manager& m, uint32_t l) {
  if (l < 2) throw std::invalid_argument("cnot_interleaved: level must be >= 2");
  const Grouping* g = cnot_full(m, 2, 0, 1);
  for (uint32_t k = 3; k <= l; ++k) g = internal(m, k, g, {g, no_distinction_proto(m, k - 1)}, {{0, 1}, {1}});
  return m.make(g, {1, 0});
}

namespace {

struct TransducerBuild {
  Manager& m;
  const Transducer& t;
  std::map<std::tuple<uint32_t, uint64_t, uint32_t>, std::pair<const Grouping*, std::vector<uint32_t>>> memo;

  std::pair<const Grouping*, std::vector<uint32_t>> run(uint32_t level, uint64_t lo, uint32_t state) {
    auto key = std::make_tuple(level, lo, state);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::pair<const Grouping*, std::vector<uint32_t>> out;
    if (level == 0) {
      uint32_t s0 = t.step(state, lo, false), s1 = t.step(state, lo, true);
      out = s0 == s1 ? std::make_pair(m.dont_care(), std::vector<uint32_t>{s0})
                     : std::make_pair(m.fork(), std::vector<uint32_t>{s0, s1});
    } else {
      uint64_t half = uint64_t{1} << (level - 1);
      auto [a, mids] = run(level - 1, lo, state);
      GroupingBuilder builder(level, nullptr);
      std::map<uint32_t, uint32_t> exit_of;
      ReductionTuple red_a;
      for (uint32_t s : mids) {
        auto [b, ends] = run(level - 1, lo + half, s);
        ReturnTuple rt;
        for (uint32_t e : ends) {
          auto [eit, fresh] = exit_of.try_emplace(e, static_cast<uint32_t>(out.second.size()));
          if (fresh) out.second.push_back(e);
          rt.push_back(eit->second);
        }
        red_a.push_back(builder.insert_b_connection(b, rt));
      }
      builder.set_a(reduce(m, a, red_a));
      out.first = builder.finish(m);
    }
    memo.emplace(key, out);
    return out;
  }
};

}  // namespace

Cflobdd from_transducer(Manager& m, uint32_t l, const Transducer& t) {
  TransducerBuild b{m, t, {}};
  auto [g, states] = b.run(l, 0, t.start);
  std::vector<Value> raw;
  for (uint32_t s : states) raw.push_back(t.output(s));
  auto [values, renumbered] = collapse_values(raw);
  return m.make(reduce(m, g, renumbered), std::move(values));
}

Cflobdd controlled_phase(Manager& m, uint32_t l, uint32_t i, uint32_t j, const Value& phase) {
  uint64_t qubits = uint64_t{1} << (l - 1);
  if (l == 0 || i == j || i >= qubits || j >= qubits) throw std::out_of_range("controlled_phase: bad qubits");
  if (i > j) std::swap(i, j);
  enum : uint32_t { diag = 0, diag_ctrl = 1, phased = 2, dead = 3 };
  Transducer t;
  t.start = 0;
  t.step = [=](uint32_t s, uint64_t var, bool bit) -> uint32_t {
    uint32_t mode = s >> 1, pending = s & 1;
    if (mode == dead) return s;
    uint64_t q = var >> 1;
    if ((var & 1) == 0) return (mode << 1) | (bit ? 1u : 0u);
    if (static_cast<uint32_t>(bit) != pending) return dead << 1;
    if (bit && q == i) mode = diag_ctrl;
    if (bit && q == j && mode == diag_ctrl) mode = phased;
    return mode << 1;
  };
  Value one = from_integer(1, phase), zero = from_integer(0, phase);
  t.output = [=](uint32_t s) {
    uint32_t mode = s >> 1;
    if (mode == dead) return zero;
    return mode == phased ? phase : one;
  };
  return from_transducer(m, l, t);
}

Cflobdd swap_gate(Manager& m, uint32_t l, uint32_t i, uint32_t j) {
  uint64_t qubits = uint64_t{1} << (l - 1);
  if (l == 0 || i == j || i >= qubits || j >= qubits) throw std::out_of_range("swap_gate: bad qubits");
  if (i > j) std::swap(i, j);
  // State bits: 0 pending x, 1 remembered x_i, 2 remembered y_i, 3 dead.
  Transducer t;
  t.start = 0;
  t.step = [=](uint32_t s, uint64_t var, bool bit) -> uint32_t {
    if (s & 8) return 8;
    uint64_t q = var >> 1;
    bool is_y = var & 1;
    bool pending = s & 1;
    uint32_t kept = s & 6;
    if (!is_y) return kept | (bit ? 1u : 0u);
    if (q == i) return (pending ? 2u : 0u) | (bit ? 4u : 0u);
    if (q == j) {
      bool xi = s & 2, yi = s & 4;
      return (pending == yi && bit == xi) ? 0u : 8u;
    }
    return bit == pending ? kept : 8u;
  };
  t.output = [](uint32_t s) { return Value((s & 8) ? 0 : 1); };
  return from_transducer(m, l, t);
}

namespace {

uint64_t interleave_index(uint64_t r, uint64_t c, size_t h) {
  uint64_t p = 0;
  for (size_t b = 0; b < h; ++b) {
    size_t shift = h - 1 - b;
    p = (p << 2) | (((r >> shift) & 1) << 1) | ((c >> shift) & 1);
  }
  return p;
}

}  // namespace

Cflobdd matrix_from_dense(Manager& m, uint32_t l, const std::vector<Value>& entries) {
  if (l == 0 || l > 4) throw std::invalid_argument("matrix_from_dense: level must be in [1, 4]");
  size_t h = size_t{1} << (l - 1);
  size_t dim = size_t{1} << h;
  if (entries.size() != dim * dim) throw std::invalid_argument("matrix_from_dense: wrong entry count");
  DecisionTree t;
  t.level = l;
  t.leaves.resize(dim * dim);
  for (size_t r = 0; r < dim; ++r)
    for (size_t c = 0; c < dim; ++c) t.leaves[interleave_index(r, c, h)] = entries[r * dim + c];
  return fold(m, t);
}

Cflobdd vector_from_dense(Manager& m, uint32_t k, const std::vector<Value>& entries) {
  if (k > 4) throw std::invalid_argument("vector_from_dense: level must be <= 4");
  return fold(m, DecisionTree{k, entries});
}

Assignment matrix_assignment(const std::vector<bool>& row, const std::vector<bool>& col) {
  if (row.size() != col.size()) throw std::invalid_argument("matrix_assignment: length mismatch");
  Assignment a;
  a.reserve(2 * row.size());
  for (size_t i = 0; i < row.size(); ++i) {
    a.push_back(row[i]);
    a.push_back(col[i]);
  }
  return a;
}

Value matrix_entry(const Cflobdd& c, uint64_t row, uint64_t col) {
  if (c.level() == 0 || c.level() > 7) throw std::invalid_argument("matrix_entry: level must be in [1, 7]");
  size_t h = size_t{1} << (c.level() - 1);
  std::vector<bool> r(h), s(h);
  for (size_t b = 0; b < h; ++b) {
    r[b] = (row >> (h - 1 - b)) & 1;
    s[b] = (col >> (h - 1 - b)) & 1;
  }
  return interpret(c, matrix_assignment(r, s));
}

Value vector_entry(const Cflobdd& c, uint64_t index) {
  if (c.level() > 6) throw std::invalid_argument("vector_entry: level must be <= 6");
  size_t n = size_t{1} << c.level();
  Assignment a(n);
  for (size_t b = 0; b < n; ++b) a[b] = (index >> (n - 1 - b)) & 1;
  return interpret(c, a);
}

namespace {

Cflobdd tensor_rec(Manager& m, const std::vector<Cflobdd>& f, size_t lo, size_t n,
                   std::map<std::vector<uint64_t>, Cflobdd>& memo) {
  if (n == 1) return f[lo];
  std::vector<uint64_t> key;
  key.reserve(n);
  for (size_t i = lo; i < lo + n; ++i) key.push_back(f[i].id());
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Cflobdd left = tensor_rec(m, f, lo, n / 2, memo);
  Cflobdd right = tensor_rec(m, f, lo + n / 2, n / 2, memo);
  Cflobdd out = kronecker_v1(m, left, right);
  memo.emplace(std::move(key), out);
  return out;
}

}  // namespace

Cflobdd tensor_all(Manager& m, const std::vector<Cflobdd>& factors) {
  size_t n = factors.size();
  if (n == 0 || (n & (n - 1))) throw std::invalid_argument("tensor_all: factor count must be a power of two");
  for (const auto& f : factors)
    if (f.level() != factors[0].level()) throw std::invalid_argument("tensor_all: level mismatch");
  std::map<std::vector<uint64_t>, Cflobdd> memo;
  return tensor_rec(m, factors, 0, n, memo);
}

}  // namespace cflobdd

#include "cflobdd/apply.hpp"

#include <map>
#include <stdexcept>

#include "caches.hpp"
#include "cflobdd/construct.hpp"

namespace cflobdd {

using detail::mix;

GroupingBuilder::GroupingBuilder(uint32_t level, const Grouping* a) {
  g_.kind = Kind::internal;
  g_.level = level;
  g_.a = a;
}

size_t GroupingBuilder::SlotHash::operator()(const SlotKey& k) const {
  return detail::hash_tuple(std::hash<const void*>{}(k.h), *k.rt);
}

uint32_t GroupingBuilder::insert_b_connection(const Grouping* h, const ReturnTuple& rt) {
  auto it = slots_.find(SlotKey{h, &rt});
  if (it != slots_.end()) return it->second;
  store_.push_back(rt);
  auto slot = static_cast<uint32_t>(g_.b.size());
  slots_.emplace(SlotKey{h, &store_.back()}, slot);
  g_.b.push_back(h);
  g_.brt.push_back(rt);
  return slot;
}

void GroupingBuilder::push_b_connection(const Grouping* h, ReturnTuple rt) {
  g_.b.push_back(h);
  g_.brt.push_back(std::move(rt));
}

const Grouping* GroupingBuilder::finish(Manager& m) {
  uint32_t exits = 0;
  for (const auto& rt : g_.brt)
    for (uint32_t e : rt) exits = std::max(exits, e + 1);
  g_.exits = exits;
  return m.intern(std::move(g_));
}

namespace {

bool is_identity(const ReductionTuple& rt) {
  for (size_t i = 0; i < rt.size(); ++i)
    if (rt[i] != i) return false;
  return true;
}

template <class Key>
uint32_t number_of(std::map<Key, uint32_t>& ids, std::vector<Key>& order, const Key& k) {
  auto [it, fresh] = ids.try_emplace(k, static_cast<uint32_t>(order.size()));
  if (fresh) order.push_back(k);
  return it->second;
}

}  // namespace

const PairProductResult& pair_product(Manager& m, const Grouping* g1, const Grouping* g2) {
  if (g1->level != g2->level) throw std::invalid_argument("pair_product: level mismatch");
  auto& cache = m.caches().pair_product;
  detail::PtrPair key{g1, g2};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PairProductResult r;
  if (g1->is_no_distinction()) {
    r.g = g2;
    for (uint32_t k = 0; k < g2->exits; ++k) r.pt.push_back({0, k});
  } else if (g2->is_no_distinction()) {
    r.g = g1;
    for (uint32_t k = 0; k < g1->exits; ++k) r.pt.push_back({k, 0});
  } else if (g1->level == 0) {
    r.g = m.fork();
    r.pt = {{0, 0}, {1, 1}};
  } else {
    const PairProductResult a = pair_product(m, g1->a, g2->a);
    GroupingBuilder builder(g1->level, nullptr);
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> ids;
    ReductionTuple red_a;
    for (auto [m1, m2] : a.pt) {
      const PairProductResult& b = pair_product(m, g1->b[m1], g2->b[m2]);
      ReturnTuple rt;
      rt.reserve(b.pt.size());
      for (auto [e1, e2] : b.pt)
        rt.push_back(number_of(ids, r.pt, {g1->brt[m1][e1], g2->brt[m2][e2]}));
      red_a.push_back(builder.insert_b_connection(b.g, rt));
    }
    builder.set_a(reduce(m, a.g, red_a));
    r.g = builder.finish(m);
  }
  return cache.emplace(key, std::move(r)).first->second;
}

const TripleProductResult& triple_product(Manager& m, const Grouping* g1, const Grouping* g2,
                                          const Grouping* g3) {
  if (g1->level != g2->level || g1->level != g3->level)
    throw std::invalid_argument("triple_product: level mismatch");
  auto& cache = m.caches().triple_product;
  detail::PtrTriple key{g1, g2, g3};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  TripleProductResult r;
  bool nd1 = g1->is_no_distinction(), nd2 = g2->is_no_distinction(), nd3 = g3->is_no_distinction();
  if (nd1 && nd2 && nd3) {
    r.g = g1;
    r.tt = {{0, 0, 0}};
  } else if (nd1 || nd2 || nd3) {
    const Grouping* x = nd1 ? g2 : g1;
    const Grouping* y = nd3 ? g2 : g3;
    if (nd1 && nd3) {
      r.g = g2;
      for (uint32_t k = 0; k < g2->exits; ++k) r.tt.push_back({0, k, 0});
    } else if (nd1 && nd2) {
      r.g = g3;
      for (uint32_t k = 0; k < g3->exits; ++k) r.tt.push_back({0, 0, k});
    } else if (nd2 && nd3) {
      r.g = g1;
      for (uint32_t k = 0; k < g1->exits; ++k) r.tt.push_back({k, 0, 0});
    } else {
      const PairProductResult& p = pair_product(m, x, y);
      r.g = p.g;
      for (auto [e1, e2] : p.pt) {
        if (nd1) r.tt.push_back({0, e1, e2});
        else if (nd2) r.tt.push_back({e1, 0, e2});
        else r.tt.push_back({e1, e2, 0});
      }
    }
  } else if (g1->level == 0) {
    r.g = m.fork();
    r.tt = {{0, 0, 0}, {1, 1, 1}};
  } else {
    const TripleProductResult a = triple_product(m, g1->a, g2->a, g3->a);
    GroupingBuilder builder(g1->level, nullptr);
    std::map<std::array<uint32_t, 3>, uint32_t> ids;
    ReductionTuple red_a;
    for (const auto& mid : a.tt) {
      const TripleProductResult& b = triple_product(m, g1->b[mid[0]], g2->b[mid[1]], g3->b[mid[2]]);
      ReturnTuple rt;
      rt.reserve(b.tt.size());
      for (const auto& e : b.tt)
        rt.push_back(number_of(ids, r.tt,
                               {g1->brt[mid[0]][e[0]], g2->brt[mid[1]][e[1]], g3->brt[mid[2]][e[2]]}));
      red_a.push_back(builder.insert_b_connection(b.g, rt));
    }
    builder.set_a(reduce(m, a.g, red_a));
    r.g = builder.finish(m);
  }
  return cache.emplace(key, std::move(r)).first->second;
}

const Grouping* reduce(Manager& m, const Grouping* g, const ReductionTuple& rt) {
  if (rt.size() != g->exits) throw std::invalid_argument("reduce: tuple length differs from exit count");
  if (is_identity(rt)) return g;
  uint32_t next = 0;
  for (uint32_t x : rt) {
    if (x > next) throw std::invalid_argument("reduce: tuple is not leftmost-normalized");
    if (x == next) ++next;
  }
  if (next == 1) return no_distinction_proto(m, g->level);
  auto& cache = m.caches().reduce;
  detail::ReduceKey key{g, rt};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GroupingBuilder builder(g->level, nullptr);
  ReductionTuple red_a;
  red_a.reserve(g->b.size());
  for (size_t i = 0; i < g->b.size(); ++i) {
    std::vector<uint32_t> induced;
    induced.reserve(g->brt[i].size());
    for (uint32_t e : g->brt[i]) induced.push_back(rt[e]);
    auto [projected, renumbered] = collapse_classes_leftmost(induced);
    const Grouping* bi = reduce(m, g->b[i], renumbered);
    red_a.push_back(builder.insert_b_connection(bi, projected));
  }
  builder.set_a(reduce(m, g->a, red_a));
  const Grouping* out = builder.finish(m);
  cache.emplace(std::move(key), out);
  return out;
}

namespace {

Cflobdd finish_with_values(Manager& m, const Grouping* g, const std::vector<Value>& raw) {
  auto [values, renumbered] = collapse_values(raw);
  return m.make(reduce(m, g, renumbered), std::move(values));
}

}  // namespace

Cflobdd binary_apply_and_reduce(Manager& m, const Cflobdd& n1, const Cflobdd& n2,
                                const BinaryOp& op) {
  if (n1.level() != n2.level()) throw std::invalid_argument("binary_apply_and_reduce: level mismatch");
  auto& cache = m.caches().apply;
  detail::ApplyKey key{n1.node(), n2.node(), nullptr, op.id()};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const PairProductResult& p = pair_product(m, n1.grouping(), n2.grouping());
  std::vector<Value> raw;
  raw.reserve(p.pt.size());
  for (auto [e1, e2] : p.pt) {
    const Value& a = n1.values()[e1];
    const Value& b = n2.values()[e2];
    try {
      raw.push_back(op(a, b));
    } catch (const std::exception& e) {
      throw std::domain_error(op.name() + "(" + a.str() + ", " + b.str() + "): " + e.what());
    }
  }
  Cflobdd out = finish_with_values(m, p.g, raw);
  m.caches().apply.emplace(key, out);
  return out;
}

Cflobdd ternary_apply_and_reduce(Manager& m, const Cflobdd& n1, const Cflobdd& n2,
                                 const Cflobdd& n3, const TernaryOp& op) {
  if (n1.level() != n2.level() || n1.level() != n3.level())
    throw std::invalid_argument("ternary_apply_and_reduce: level mismatch");
  auto& cache = m.caches().apply;
  detail::ApplyKey key{n1.node(), n2.node(), n3.node(), op.id()};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const TripleProductResult& t = triple_product(m, n1.grouping(), n2.grouping(), n3.grouping());
  std::vector<Value> raw;
  raw.reserve(t.tt.size());
  for (const auto& e : t.tt) {
    const Value& a = n1.values()[e[0]];
    const Value& b = n2.values()[e[1]];
    const Value& c = n3.values()[e[2]];
    try {
      raw.push_back(op(a, b, c));
    } catch (const std::exception& ex) {
      throw std::domain_error(op.name() + "(" + a.str() + ", " + b.str() + ", " + c.str() + "): " + ex.what());
    }
  }
  Cflobdd out = finish_with_values(m, t.g, raw);
  m.caches().apply.emplace(key, out);
  return out;
}

Cflobdd map_values(Manager& m, const Cflobdd& c, const std::function<Value(const Value&)>& f) {
  std::vector<Value> raw;
  raw.reserve(c.values().size());
  for (const auto& v : c.values()) raw.push_back(f(v));
  return finish_with_values(m, c.grouping(), raw);
}

namespace {

void require_bool(const Cflobdd& c, const char* what) {
  for (const auto& v : c.values())
    if (!v.is_bool()) throw std::domain_error(std::string(what) + ": non-Boolean terminal " + v.str());
}

}  // namespace

Cflobdd ite(Manager& m, const Cflobdd& a, const Cflobdd& b, const Cflobdd& c) {
  require_bool(a, "ite");
  require_bool(b, "ite");
  require_bool(c, "ite");
  return ternary_apply_and_reduce(m, a, b, c, ops::ite());
}

Cflobdd binary_op_via_ite(Manager& m, unsigned code, const Cflobdd& a, const Cflobdd& b) {
  if (code > 15) throw std::invalid_argument("binary_op_via_ite: code must be < 16");
  auto branch = [&](bool av) {
    bool at0 = (code >> (2 * av)) & 1;
    bool at1 = (code >> (2 * av + 1)) & 1;
    if (at0 == at1) return at0 ? true_(m, b.level()) : false_(m, b.level());
    return at1 ? b : complement(m, b);
  };
  return ite(m, a, branch(true), branch(false));
}

Cflobdd flip_value_tuple(Manager& m, const Cflobdd& c) {
  if (c.values().size() != 2) throw std::invalid_argument("flip_value_tuple: needs exactly two values");
  return m.make(c.grouping(), {c.values()[1], c.values()[0]});
}

Cflobdd complement(Manager& m, const Cflobdd& c) {
  require_bool(c, "complement");
  if (c.values().size() == 2) return flip_value_tuple(m, c);
  return m.make(c.grouping(), {!c.values()[0].as_bool()});
}

Cflobdd scalar_multiply(Manager& m, const Cflobdd& c, const Value& v) {
  return map_values(m, c, [&](const Value& x) { return mul(x, v); });
}

namespace {

const detail::RestrictResult& restrict_grouping(Manager& m, const Grouping* g, uint64_t i, bool v) {
  auto& cache = m.caches().restrict;
  detail::RestrictKey key{g, i, v};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  detail::RestrictResult r;
  if (g->is_no_distinction()) {
    r = {g, {0}};
  } else if (g->level == 0) {
    r = {m.dont_care(), {v ? 1u : 0u}};
  } else {
    uint64_t half = uint64_t{1} << (g->level - 1);
    std::map<uint32_t, uint32_t> ids;
    if (i < half) {
      const detail::RestrictResult ra = restrict_grouping(m, g->a, i, v);
      GroupingBuilder builder(g->level, ra.g);
      for (uint32_t mid : ra.rt) {
        ReturnTuple rt;
        for (uint32_t e : g->brt[mid]) rt.push_back(number_of(ids, r.rt, e));
        builder.push_b_connection(g->b[mid], std::move(rt));
      }
      r.g = builder.finish(m);
    } else {
      GroupingBuilder builder(g->level, nullptr);
      ReductionTuple red_a;
      for (size_t k = 0; k < g->b.size(); ++k) {
        const detail::RestrictResult rb = restrict_grouping(m, g->b[k], i - half, v);
        ReturnTuple rt;
        for (uint32_t e : rb.rt) rt.push_back(number_of(ids, r.rt, g->brt[k][e]));
        red_a.push_back(builder.insert_b_connection(rb.g, rt));
      }
      builder.set_a(reduce(m, g->a, red_a));
      r.g = builder.finish(m);
    }
  }
  return cache.emplace(key, std::move(r)).first->second;
}

}  // namespace

Cflobdd restrict(Manager& m, const Cflobdd& c, uint64_t i, bool v) {
  if (c.level() < 64 && i >= (uint64_t{1} << c.level()))
    throw std::out_of_range("restrict: variable index " + std::to_string(i) + " out of range");
  const detail::RestrictResult& r = restrict_grouping(m, c.grouping(), i, v);
  std::vector<Value> vals;
  for (uint32_t e : r.rt) vals.push_back(c.values()[e]);
  return m.make(r.g, std::move(vals));
}

Cflobdd exists(Manager& m, const Cflobdd& c, uint64_t i) {
  require_bool(c, "exists");
  return or_(m, restrict(m, c, i, false), restrict(m, c, i, true));
}

Cflobdd and_(Manager& m, const Cflobdd& a, const Cflobdd& b) {
  return binary_apply_and_reduce(m, a, b, ops::and_());
}
Cflobdd or_(Manager& m, const Cflobdd& a, const Cflobdd& b) {
  return binary_apply_and_reduce(m, a, b, ops::or_());
}
Cflobdd xor_(Manager& m, const Cflobdd& a, const Cflobdd& b) {
  return binary_apply_and_reduce(m, a, b, ops::xor_());
}
Cflobdd plus(Manager& m, const Cflobdd& a, const Cflobdd& b) {
  return binary_apply_and_reduce(m, a, b, ops::plus());
}
Cflobdd minus(Manager& m, const Cflobdd& a, const Cflobdd& b) {
  return binary_apply_and_reduce(m, a, b, ops::minus());
}
Cflobdd times(Manager& m, const Cflobdd& a, const Cflobdd& b) {
  return binary_apply_and_reduce(m, a, b, ops::times());
}

}  // namespace cflobdd

#include "cflobdd/manager.hpp"

#include <algorithm>
#include <unordered_set>

#include "caches.hpp"

namespace cflobdd {

using detail::mix;

size_t structural_hash(const Grouping& g) {
  size_t h = mix(static_cast<size_t>(g.kind), g.level);
  h = mix(h, g.exits);
  if (g.a) h = mix(h, g.a->id);
  for (size_t i = 0; i < g.b.size(); ++i) {
    h = mix(h, g.b[i]->id);
    h = detail::hash_tuple(h, g.brt[i]);
  }
  return h;
}

bool Manager::GroupingPtrEq::operator()(const Grouping* x, const Grouping* y) const {
  return x->kind == y->kind && x->level == y->level && x->exits == y->exits && x->a == y->a &&
         x->b == y->b && x->brt == y->brt;
}

Manager::Manager(uint64_t seed)
    : caches_(std::make_unique<detail::Caches>()), seed_(seed), rng_(seed) {
  Grouping f;
  f.kind = Kind::fork;
  f.level = 0;
  f.exits = 2;
  fork_ = intern(f);
  Grouping d;
  d.kind = Kind::dont_care;
  d.level = 0;
  d.exits = 1;
  dont_care_ = intern(d);
}

Manager::~Manager() = default;

void Manager::reseed(uint64_t seed) {
  seed_ = seed;
  rng_.seed(seed);
}

void Manager::clear_caches() { caches_ = std::make_unique<detail::Caches>(); }

void Manager::validate(const Grouping& g) const {
  auto fail = [&](const char* inv, const std::string& msg) {
    throw InvariantError(inv, "level-" + std::to_string(g.level) + " grouping: " + msg);
  };
  if (g.kind == Kind::fork) {
    if (g.level != 0 || g.exits != 2 || g.a || !g.b.empty()) fail("Shape", "malformed fork");
    return;
  }
  if (g.kind == Kind::dont_care) {
    if (g.level != 0 || g.exits != 1 || g.a || !g.b.empty()) fail("Shape", "malformed don't-care");
    return;
  }
  if (g.level == 0 || !g.a) fail("Shape", "internal grouping needs level >= 1 and an A-connection");
  if (g.a->level + 1 != g.level) fail("Shape", "A-connection level mismatch");
  if (g.b.size() != g.brt.size()) fail("Shape", "B-connection and return-tuple counts differ");
  if (g.a->exits != g.b.size())
    fail("Inv1", "A-connection has " + std::to_string(g.a->exits) + " exits but " +
                     std::to_string(g.b.size()) + " B-connections");
  if (!g.art.empty()) {
    for (size_t i = 0; i < g.art.size(); ++i)
      if (g.art[i] != i || g.art.size() != g.a->exits) fail("Inv1", "A return tuple is not the identity");
  }
  std::vector<bool> hit(g.exits, false);
  uint32_t running = 0;
  bool any = false;
  for (size_t i = 0; i < g.b.size(); ++i) {
    const auto* bi = g.b[i];
    const auto& rt = g.brt[i];
    if (!bi || bi->level + 1 != g.level) fail("Shape", "B-connection level mismatch");
    if (rt.size() != bi->exits) fail("Shape", "return tuple length differs from callee exits");
    std::unordered_set<uint32_t> seen;
    for (uint32_t e : rt) {
      if (e >= g.exits) fail("Inv2a", "return tuple entry out of range");
      if (!seen.insert(e).second) fail("Inv2a", "repeated entry in B return tuple");
      if (!any || e > running) {
        uint32_t expect = any ? running + 1 : 0;
        if (e != expect) fail("Inv2b", "exit " + std::to_string(e) + " introduced out of order");
        running = e;
        any = true;
      }
      hit[e] = true;
    }
  }
  for (uint32_t e = 0; e < g.exits; ++e)
    if (!hit[e]) fail("Coverage", "exit " + std::to_string(e) + " is never reached");
  if (g.b.size() > 1) {
    std::vector<size_t> order(g.b.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      if (g.b[x] != g.b[y]) return g.b[x]->id < g.b[y]->id;
      return g.brt[x] < g.brt[y];
    });
    for (size_t i = 1; i < order.size(); ++i)
      if (g.b[order[i]] == g.b[order[i - 1]] && g.brt[order[i]] == g.brt[order[i - 1]])
        fail("Inv4", "duplicate (B-connection, return tuple) pair");
  }
}

const Grouping* Manager::intern(Grouping candidate) {
  if (!candidate.art.empty()) validate(candidate);
  candidate.art.clear();
  candidate.hash = structural_hash(candidate);
  auto it = table_.find(&candidate);
  if (it != table_.end()) return *it;
  validate(candidate);
  if (candidate.kind == Kind::internal) {
    candidate.art.resize(candidate.a->exits);
    for (uint32_t i = 0; i < candidate.a->exits; ++i) candidate.art[i] = i;
  }
  candidate.id = groupings_.size();
  groupings_.push_back(std::move(candidate));
  const Grouping* g = &groupings_.back();
  table_.insert(g);
  return g;
}

Cflobdd Manager::make(const Grouping* g, std::vector<Value> values) {
  if (values.size() != g->exits)
    throw InvariantError("Inv5", "value tuple has " + std::to_string(values.size()) +
                                     " entries for " + std::to_string(g->exits) + " exits");
  size_t h = mix(std::hash<const void*>{}(g), values.size());
  for (const auto& v : values) h = mix(h, v.hash());
  CflobddNode probe;
  probe.grouping = g;
  probe.values = std::move(values);
  probe.hash = h;
  auto it = node_table_.find(&probe);
  if (it != node_table_.end()) return Cflobdd(*it);
  std::unordered_set<Value, ValueHash> seen;
  for (const auto& v : probe.values)
    if (!seen.insert(v).second) throw InvariantError("Inv6", "repeated terminal value " + v.str());
  probe.id = nodes_.size();
  nodes_.push_back(std::move(probe));
  const CflobddNode* n = &nodes_.back();
  node_table_.insert(n);
  return Cflobdd(n);
}

}  // namespace cflobdd

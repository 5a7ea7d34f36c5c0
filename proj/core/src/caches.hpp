#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "cflobdd/apply.hpp"
#include "cflobdd/linalg.hpp"

namespace cflobdd::detail {

inline size_t mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline size_t hash_tuple(size_t seed, const std::vector<uint32_t>& t) {
  size_t h = mix(seed, t.size());
  for (uint32_t x : t) h = mix(h, x);
  return h;
}

struct PtrPair {
  const void* x;
  const void* y;
  bool operator==(const PtrPair& o) const { return x == o.x && y == o.y; }
};

struct PtrPairHash {
  size_t operator()(const PtrPair& k) const {
    return mix(std::hash<const void*>{}(k.x), std::hash<const void*>{}(k.y));
  }
};

struct PtrTriple {
  const void* x;
  const void* y;
  const void* z;
  bool operator==(const PtrTriple& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct PtrTripleHash {
  size_t operator()(const PtrTriple& k) const {
    return mix(mix(std::hash<const void*>{}(k.x), std::hash<const void*>{}(k.y)),
               std::hash<const void*>{}(k.z));
  }
};

struct ReduceKey {
  const Grouping* g;
  ReductionTuple rt;
  bool operator==(const ReduceKey& o) const { return g == o.g && rt == o.rt; }
};

struct ReduceKeyHash {
  size_t operator()(const ReduceKey& k) const { return hash_tuple(k.g->hash, k.rt); }
};

struct RestrictKey {
  const Grouping* g;
  uint64_t i;
  bool v;
  bool operator==(const RestrictKey& o) const { return g == o.g && i == o.i && v == o.v; }
};

struct RestrictKeyHash {
  size_t operator()(const RestrictKey& k) const { return mix(mix(k.g->hash, k.i), k.v); }
};

struct RestrictResult {
  const Grouping* g;
  /// Exit e of the restricted grouping is exit rt[e] of the original.
  ReturnTuple rt;
};

struct ShiftKey {
  const Grouping* g;
  uint32_t base;
  bool to_a;
  bool operator==(const ShiftKey& o) const { return g == o.g && base == o.base && to_a == o.to_a; }
};

struct ShiftKeyHash {
  size_t operator()(const ShiftKey& k) const { return mix(mix(k.g->hash, k.base), k.to_a); }
};

struct ApplyKey {
  const void* x;
  const void* y;
  const void* z;
  uint32_t op;
  bool operator==(const ApplyKey& o) const {
    return x == o.x && y == o.y && z == o.z && op == o.op;
  }
};

struct ApplyKeyHash {
  size_t operator()(const ApplyKey& k) const {
    return mix(PtrTripleHash{}(PtrTriple{k.x, k.y, k.z}), k.op);
  }
};

/// Symbolic matrix: exits labelled by interned bilinear polynomials.
struct SymMatrix {
  const Grouping* g = nullptr;
  std::vector<uint32_t> bps;
};

struct Caches {
  std::vector<const Grouping*> no_distinction;
  std::unordered_map<PtrPair, PairProductResult, PtrPairHash> pair_product;
  std::unordered_map<PtrTriple, TripleProductResult, PtrTripleHash> triple_product;
  std::unordered_map<ReduceKey, const Grouping*, ReduceKeyHash> reduce;
  std::unordered_map<RestrictKey, RestrictResult, RestrictKeyHash> restrict;
  std::unordered_map<ShiftKey, const Grouping*, ShiftKeyHash> shift;
  std::unordered_map<ApplyKey, Cflobdd, ApplyKeyHash> apply;
  std::unordered_map<PtrPair, SymMatrix, PtrPairHash> matmult;
  std::unordered_map<PtrPair, SymbolicProduct, PtrPairHash> matmult_public;
  std::unordered_map<PtrPair, Cflobdd, PtrPairHash> matmult_top;
  std::vector<BilinearPoly> bp;
  std::unordered_map<BilinearPoly, uint32_t, BilinearPolyHash> bp_ids;
  std::unordered_map<const Grouping*, std::vector<mpz_class>> paths;
  std::vector<const Grouping*> hadamard, identity, column1;

  uint32_t intern_bp(BilinearPoly p) {
    auto it = bp_ids.find(p);
    if (it != bp_ids.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(bp.size());
    bp.push_back(p);
    bp_ids.emplace(std::move(p), id);
    return id;
  }
};

}  // namespace cflobdd::detail

#include "cflobdd/distribution.hpp"

#include <stdexcept>

#include "caches.hpp"

namespace cflobdd {

const std::vector<mpz_class>& path_counts(Manager& m, const Grouping* g) {
  auto& cache = m.caches().paths;
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;
  std::vector<mpz_class> out(g->exits);
  if (g->kind == Kind::fork) {
    out = {1, 1};
  } else if (g->kind == Kind::dont_care) {
    out = {2};
  } else {
    const std::vector<mpz_class> a = path_counts(m, g->a);
    for (size_t i = 0; i < g->b.size(); ++i) {
      const std::vector<mpz_class> b = path_counts(m, g->b[i]);
      for (size_t j = 0; j < b.size(); ++j) out[g->brt[i][j]] += a[i] * b[j];
    }
  }
  return m.caches().paths.emplace(g, std::move(out)).first->second;
}

std::vector<mpz_class> count_paths(Manager& m, const Cflobdd& c) { return path_counts(m, c.grouping()); }

std::vector<mpq_class> middle_probabilities(Manager& m, const Grouping* g, uint32_t exit) {
  if (g->kind != Kind::internal) throw std::invalid_argument("middle_probabilities: needs an internal grouping");
  if (exit >= g->exits) throw std::out_of_range("middle_probabilities: exit out of range");
  const std::vector<mpz_class>& a = path_counts(m, g->a);
  mpz_class total = path_counts(m, g)[exit];
  std::vector<mpq_class> out;
  for (size_t i = 0; i < g->b.size(); ++i) {
    const std::vector<mpz_class>& b = path_counts(m, g->b[i]);
    mpz_class paths = 0;
    for (size_t j = 0; j < b.size(); ++j)
      if (g->brt[i][j] == exit) paths += a[i] * b[j];
    mpq_class p(paths, total);
    p.canonicalize();
    out.push_back(p);
  }
  return out;
}

mpq_class norm2_weight(const Value& v) { return weight_norm2(v); }

mpz_class uniform_below(const mpz_class& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  if (bound == 1) return 0;
  size_t bits = mpz_sizeinbase(mpz_class(bound - 1).get_mpz_t(), 2);
  for (;;) {
    mpz_class r = 0;
    size_t left = bits;
    while (left > 0) {
      size_t take = std::min<size_t>(left, 64);
      uint64_t word = rng();
      if (take < 64) word &= (uint64_t{1} << take) - 1;
      r <<= take;
      mpz_class w;
      mpz_import(w.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      r += w;
      left -= take;
    }
    if (r < bound) return r;
  }
}

Sampler::Sampler(Manager& m, const Cflobdd& c, const WeightFn& weight) : m_(m), c_(c) {
  const auto& counts = path_counts(m, c.grouping());
  mpq_class running = 0;
  for (size_t e = 0; e < counts.size(); ++e) {
    mpq_class w = weight(c.values()[e]);
    if (w < 0) throw std::domain_error("sample_assignment: negative weight for " + c.values()[e].str());
    running += w * mpq_class(counts[e]);
    cumulative_.push_back(running);
  }
  total_ = running;
  if (total_ == 0) throw std::domain_error("sample_assignment: all weights are zero");
}

mpq_class Sampler::exit_probability(uint32_t e) const {
  mpq_class prev = e == 0 ? mpq_class(0) : cumulative_[e - 1];
  mpq_class p = (cumulative_[e] - prev) / total_;
  p.canonicalize();
  return p;
}

Assignment Sampler::sample(std::mt19937_64& rng) const {
  uint64_t draw = rng();
  mpz_class u;
  mpz_import(u.get_mpz_t(), 1, 1, sizeof(draw), 0, 0, &draw);
  mpq_class threshold(u, mpz_class(1) << 64);
  threshold.canonicalize();
  threshold *= total_;
  uint32_t exit = 0;
  while (exit + 1 < cumulative_.size() && !(cumulative_[exit] > threshold)) ++exit;
  while (cumulative_[exit] == (exit == 0 ? mpq_class(0) : cumulative_[exit - 1])) ++exit;
  Assignment out(size_t{1} << c_.level());
  descend(c_.grouping(), exit, 0, out, rng);
  return out;
}

void Sampler::descend(const Grouping* g, uint32_t exit, size_t offset, Assignment& out,
                      std::mt19937_64& rng) const {
  if (g->kind == Kind::fork) {
    out[offset] = exit == 1;
    return;
  }
  if (g->kind == Kind::dont_care) {
    out[offset] = rng() & 1;
    return;
  }
  if (g->exits == 1) {
    size_t n = size_t{1} << g->level;
    for (size_t i = 0; i < n; i += 64) {
      uint64_t word = rng();
      for (size_t b = 0; b < 64 && i + b < n; ++b) out[offset + i + b] = (word >> b) & 1;
    }
    return;
  }
  const std::vector<mpz_class>& a = path_counts(m_, g->a);
  std::vector<std::pair<uint32_t, uint32_t>> choices;
  std::vector<mpz_class> weights;
  mpz_class total = 0;
  for (uint32_t i = 0; i < g->b.size(); ++i) {
    const std::vector<mpz_class>& b = path_counts(m_, g->b[i]);
    for (uint32_t j = 0; j < g->brt[i].size(); ++j)
      if (g->brt[i][j] == exit) {
        choices.push_back({i, j});
        weights.push_back(a[i] * b[j]);
        total += weights.back();
      }
  }
  mpz_class r = uniform_below(total, rng);
  size_t pick = 0;
  while (r >= weights[pick]) r -= weights[pick++];
  auto [i, j] = choices[pick];
  size_t half = size_t{1} << (g->level - 1);
  descend(g->a, i, offset, out, rng);
  descend(g->b[i], j, offset + half, out, rng);
}

Assignment sample_assignment(Manager& m, const Cflobdd& c, const WeightFn& weight) {
  return Sampler(m, c, weight).sample(m.rng());
}

}  // namespace cflobdd

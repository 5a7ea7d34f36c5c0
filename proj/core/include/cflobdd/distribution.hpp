/// @file distribution.hpp
/// @brief Path counting per exit and weighted sampling of assignments.

#pragma once

#include <functional>
#include <random>
#include <vector>

#include "cflobdd/kernel.hpp"

namespace cflobdd {

/// Number of matched paths reaching each exit of g; cached on the manager.
const std::vector<mpz_class>& path_counts(Manager& m, const Grouping* g);
std::vector<mpz_class> count_paths(Manager& m, const Cflobdd& c);

/// P(middle vertex i | path ends at `exit`) for every middle vertex of g.
std::vector<mpq_class> middle_probabilities(Manager& m, const Grouping* g, uint32_t exit);

using WeightFn = std::function<mpq_class(const Value&)>;

/// Squared modulus; the quantum measurement weight.
mpq_class norm2_weight(const Value& v);

/// Draws assignments with probability proportional to weight(value).
class Sampler {
 public:
  Sampler(Manager& m, const Cflobdd& c, const WeightFn& weight);

  Assignment sample(std::mt19937_64& rng) const;
  /// Exact probability of drawing some assignment that reaches exit e.
  mpq_class exit_probability(uint32_t e) const;

 private:
  void descend(const Grouping* g, uint32_t exit, size_t offset, Assignment& out,
               std::mt19937_64& rng) const;

  Manager& m_;
  Cflobdd c_;
  std::vector<mpq_class> cumulative_;
  mpq_class total_;
};

Assignment sample_assignment(Manager& m, const Cflobdd& c, const WeightFn& weight);

/// Uniform integer in [0, bound) drawn by rejection from rng.
mpz_class uniform_below(const mpz_class& bound, std::mt19937_64& rng);

}  // namespace cflobdd

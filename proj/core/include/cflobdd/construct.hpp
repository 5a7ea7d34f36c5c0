/// @file construct.hpp
/// @brief Direct constructions: constants, projections, basis vectors, EQ and ADD relations.

#pragma once

#include <cstdint>
#include <vector>

#include "cflobdd/manager.hpp"

namespace cflobdd {

/// Single-exit proto at level k.
const Grouping* no_distinction_proto(Manager& m, uint32_t k);

Cflobdd constant(Manager& m, uint32_t k, const Value& v);
Cflobdd false_(Manager& m, uint32_t k);
Cflobdd true_(Manager& m, uint32_t k);

/// lambda x. x_i over 2^k variables, values [F, T].
const Grouping* projection_proto(Manager& m, uint32_t k, uint64_t i);
Cflobdd projection(Manager& m, uint32_t k, uint64_t i);

/// e_x for the MSB-first bit string x of length 2^k. Exit 1 holds e_x unless x is all zero.
const Grouping* standard_basis_proto(Manager& m, uint32_t k, const std::vector<bool>& bits);
Cflobdd standard_basis_vector(Manager& m, uint32_t k, const std::vector<bool>& bits,
                              const Value& one = Value(1));
/// Same with x given as an integer; requires k <= 6.
Cflobdd standard_basis_vector(Manager& m, uint32_t k, uint64_t x, const Value& one = Value(1));

/// Exit 0 is reached exactly when x_i = y_i for every pair; l >= 1.
const Grouping* eq_proto(Manager& m, uint32_t l);
Cflobdd eq_relation(Manager& m, uint32_t l);

/// Ripple-adder protos at level l >= 2. Carry-in 0 has exits [ok/carry 0, fail, ok/carry 1];
/// carry-in 1 has exits [fail, ok/carry 0, ok/carry 1].
const Grouping* add_proto(Manager& m, uint32_t l, bool carry_in);
/// Z = X + Y mod 2^(2^l) over blocks (x_i, y_i, z_i, dummy), least significant block first.
Cflobdd add_relation(Manager& m, uint32_t l);

}  // namespace cflobdd

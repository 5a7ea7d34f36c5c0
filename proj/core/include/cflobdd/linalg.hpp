/// @file linalg.hpp
/// @brief Matrix and vector encodings, Kronecker products, matrix multiplication and gates.
///
/// A matrix at level k has 2^(k-1) row bits x and column bits y, read in the
/// interleaved order x0,y0,x1,y1,... with x0 the most significant row bit.
/// A vector at level k uses all 2^k variables as index bits, MSB first.

#pragma once

#include <functional>
#include <vector>

#include "cflobdd/apply.hpp"
#include "cflobdd/kernel.hpp"

namespace cflobdd {

/// Map from (left exit, right exit) to a positive coefficient.
struct BilinearPoly {
  struct Term {
    uint32_t e1;
    uint32_t e2;
    mpz_class coef;
    bool operator==(const Term& o) const {
      return e1 == o.e1 && e2 == o.e2 && coef == o.coef;
    }
  };
  /// Sorted by (e1, e2); no zero coefficients.
  std::vector<Term> terms;

  static BilinearPoly single(uint32_t e1, uint32_t e2, const mpz_class& coef = 1);
  BilinearPoly operator+(const BilinearPoly& o) const;
  BilinearPoly scaled(const mpz_class& c) const;
  BilinearPoly remapped(const ReturnTuple& rt1, const ReturnTuple& rt2) const;
  bool operator==(const BilinearPoly& o) const { return terms == o.terms; }
  size_t hash() const;
};

struct BilinearPolyHash {
  size_t operator()(const BilinearPoly& p) const { return p.hash(); }
};

using MatMultTuple = std::vector<BilinearPoly>;

/// Symbolic product of two protos: exit e of `g` evaluates to `tuple[e]`.
struct SymbolicProduct {
  const Grouping* g = nullptr;
  MatMultTuple tuple;
};

const Grouping* hadamard_grouping(Manager& m, uint32_t l);
Cflobdd hadamard(Manager& m, uint32_t l);
/// Exit 0 marks the diagonal.
const Grouping* identity_grouping(Manager& m, uint32_t l);
Cflobdd identity(Manager& m, uint32_t l);
/// Identity proto with terminals `diagonal` and `off`.
Cflobdd identity_valued(Manager& m, uint32_t l, const Value& diagonal, const Value& off);
Cflobdd not_matrix(Manager& m);
const Grouping* column1_grouping(Manager& m, uint32_t l);
Cflobdd column1_matrix(Manager& m, uint32_t l);

/// Wraps the level-`base` groupings of g as A-connections (B-connections are
/// no-distinction), adding one dummy block after each.
const Grouping* shift_to_a(Manager& m, const Grouping* g, uint32_t base);
/// Wraps the level-`base` groupings of g as the single B-connection.
const Grouping* shift_to_b(Manager& m, const Grouping* g, uint32_t base);

/// Ordinary Kronecker product of two level-k matrices (or vectors).
Cflobdd kronecker_v1(Manager& m, const Cflobdd& w, const Cflobdd& v);
/// Kronecker product with the qubits of w and v interleaved.
Cflobdd kronecker_v2(Manager& m, const Cflobdd& w, const Cflobdd& v);
/// Interleaved Kronecker product of two level-k vectors (bits alternate).
Cflobdd kronecker_v2_vectors(Manager& m, const Cflobdd& w, const Cflobdd& v);

/// Level-k vector to level-(k+1) matrix holding the vector in column 0.
Cflobdd vector_to_matrix(Manager& m, const Cflobdd& v);

const SymbolicProduct& matrix_mult_symbolic(Manager& m, const Grouping* g1, const Grouping* g2);
Cflobdd matrix_mult(Manager& m, const Cflobdd& n1, const Cflobdd& n2);
/// n^e by square and multiply; e = 0 gives the identity.
Cflobdd matrix_power(Manager& m, const Cflobdd& n, uint64_t e);

/// Matrix (exit order on, off) flipping bit j when bit i is set; 0 <= i < j < 2^(l-1).
Cflobdd cnot(Manager& m, uint32_t l, uint32_t i, uint32_t j);
/// CNOT_2 on every (even, odd) qubit pair of a level-l matrix, l >= 2.
Cflobdd cnot_interleaved(Manager& m, uint32_t l);
/// Controlled phase with terminals [1, 0, phase].
Cflobdd controlled_phase(Manager& m, uint32_t l, uint32_t i, uint32_t j, const Value& phase);
Cflobdd swap_gate(Manager& m, uint32_t l, uint32_t i, uint32_t j);

/// Deterministic transducer reading one variable at a time.
///
/// States are small integers; `step(state, var, bit)` returns the next state
/// and `output(state)` the terminal value of a completed path.
struct Transducer {
  uint32_t start = 0;
  std::function<uint32_t(uint32_t state, uint64_t var, bool bit)> step;
  std::function<Value(uint32_t state)> output;
};

/// Canonical CFLOBDD at level l for the function computed by `t`.
Cflobdd from_transducer(Manager& m, uint32_t l, const Transducer& t);

/// Level-l matrix from a dense row-major table of size 2^h x 2^h, h = 2^(l-1).
Cflobdd matrix_from_dense(Manager& m, uint32_t l, const std::vector<Value>& entries);
Cflobdd vector_from_dense(Manager& m, uint32_t k, const std::vector<Value>& entries);
/// Assignment for a matrix entry; row and col are MSB-first bit strings of length 2^(l-1).
Assignment matrix_assignment(const std::vector<bool>& row, const std::vector<bool>& col);
Value matrix_entry(const Cflobdd& c, uint64_t row, uint64_t col);
Value vector_entry(const Cflobdd& c, uint64_t index);

/// Kronecker product of a power-of-two count of equal-level factors.
Cflobdd tensor_all(Manager& m, const std::vector<Cflobdd>& factors);

}  // namespace cflobdd

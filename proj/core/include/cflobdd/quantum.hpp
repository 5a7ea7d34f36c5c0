/// @file quantum.hpp
/// @brief Quantum circuits on CFLOBDD state matrices: GHZ, BV, DJ, Simon, Grover and QFT.
///
/// A state over P qubits (P a power of two) is a matrix at level log2(P) + 1
/// holding the state vector in column 0. Qubit 0 is the most significant bit.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cflobdd/distribution.hpp"
#include "cflobdd/linalg.hpp"

namespace cflobdd {

using BitString = std::vector<bool>;

std::string bits_to_string(const BitString& b);
BitString string_to_bits(const std::string& s);

/// Rows are constraints r . s = 0 over n bits.
struct GF2System {
  size_t n = 0;
  std::vector<BitString> rows;
};

/// Basis of {s : r . s = 0 for every row r}.
std::vector<BitString> gf2_null_space(const GF2System& sys);
size_t gf2_rank(const GF2System& sys);

struct StepSize {
  std::string step;
  SizeReport size;
};

struct QuantumRun {
  std::string algo;
  uint32_t n = 0;
  /// Qubits after padding to a power of two.
  uint32_t qubits = 0;
  Cflobdd state;
  std::vector<StepSize> steps;
  std::vector<BitString> samples;
  /// Recovered secret, verdict or measured index, algorithm dependent.
  std::string answer;
  bool success = false;
};

class SimonInconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest power of two >= n.
uint32_t padded_qubits(uint32_t n);
/// Level of a matrix acting on `qubits` qubits (a power of two).
uint32_t matrix_level(uint32_t qubits);

/// Product state from single-qubit vectors given as level-0 CFLOBDDs.
Cflobdd product_state(Manager& m, const std::vector<Cflobdd>& qubit_vectors);
/// 2x2 gate placed on qubit q of a `qubits`-qubit register, identity elsewhere.
Cflobdd single_qubit_gate(Manager& m, uint32_t qubits, uint32_t q, const Cflobdd& gate);
/// Same gate on every qubit listed in `on`, identity elsewhere.
Cflobdd layer_gate(Manager& m, uint32_t qubits, const std::vector<bool>& on, const Cflobdd& gate);
/// Normalized 2x2 Hadamard with exact entries.
Cflobdd hadamard_gate(Manager& m);
Cflobdd apply_gate(Manager& m, const Cflobdd& gate, const Cflobdd& state);

/// Amplitude of basis index `index` (level <= 7).
Value amplitude(const Cflobdd& state, uint64_t index);
/// Measures the first `bits` qubits `shots` times from one prepared state.
std::vector<BitString> measure(Manager& m, const Cflobdd& state, uint32_t bits, uint64_t shots);

QuantumRun ghz(Manager& m, uint32_t n, uint64_t shots);
QuantumRun bv(Manager& m, uint32_t n, const BitString& s, uint64_t shots = 1);

enum class DjOracle { constant0, constant1, balanced };
DjOracle parse_dj_oracle(const std::string& s);
QuantumRun dj(Manager& m, uint32_t n, DjOracle oracle, uint64_t shots = 1);

/// Register of size 8, n <= 8. Throws SimonInconclusive when the constraints stay short.
QuantumRun simon(Manager& m, uint32_t n, const BitString& s);
/// Oracle matrix on one 8-qubit register with U[f(c), c] = 1 for f(x) = min(x, x ^ s).
Cflobdd simon_oracle(Manager& m, uint32_t n, const BitString& s);
/// The Simon state before measurement: first register interleaved with the second.
Cflobdd simon_state(Manager& m, uint32_t n, const BitString& s, std::vector<StepSize>* steps = nullptr);

uint64_t grover_iterations(uint32_t n);
/// Diffusion 2|s><s| - I on n qubits padded to `qubits`.
Cflobdd grover_diffusion(Manager& m, uint32_t n, uint32_t qubits, bool direct);
Cflobdd grover_oracle(Manager& m, uint32_t n, uint32_t qubits, uint64_t w);
QuantumRun grover(Manager& m, uint32_t n, uint64_t w, uint64_t shots);

/// QFT of basis state x; exact root-of-unity terminals or grid-rounded floats.
QuantumRun qft(Manager& m, uint32_t n, uint64_t x, uint64_t shots, bool exact = true);

}  // namespace cflobdd

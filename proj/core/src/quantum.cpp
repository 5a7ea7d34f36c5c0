#include "cflobdd/quantum.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "cflobdd/apply.hpp"
#include "cflobdd/construct.hpp"

namespace cflobdd {

std::string bits_to_string(const BitString& b) {
  std::string s;
  for (bool x : b) s += x ? '1' : '0';
  return s;
}

BitString string_to_bits(const std::string& s) {
  BitString b;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain 0 and 1: " + s);
    b.push_back(c == '1');
  }
  return b;
}

namespace {

struct Echelon {
  std::vector<BitString> rows;
  std::vector<size_t> pivots;
};

Echelon echelon(const GF2System& sys) {
  Echelon e;
  for (BitString r : sys.rows) {
    if (r.size() != sys.n) throw std::invalid_argument("gf2: row length differs from n");
    for (size_t k = 0; k < e.rows.size(); ++k)
      if (r[e.pivots[k]])
        for (size_t c = 0; c < sys.n; ++c) r[c] = r[c] != e.rows[k][c];
    size_t p = 0;
    while (p < sys.n && !r[p]) ++p;
    if (p == sys.n) continue;
    for (auto& other : e.rows)
      if (other[p])
        for (size_t c = 0; c < sys.n; ++c) other[c] = other[c] != r[c];
    e.rows.push_back(std::move(r));
    e.pivots.push_back(p);
  }
  return e;
}

}  // namespace

size_t gf2_rank(const GF2System& sys) { return echelon(sys).rows.size(); }

std::vector<BitString> gf2_null_space(const GF2System& sys) {
  Echelon e = echelon(sys);
  std::vector<bool> is_pivot(sys.n, false);
  for (size_t p : e.pivots) is_pivot[p] = true;
  std::vector<BitString> basis;
  for (size_t f = 0; f < sys.n; ++f) {
    if (is_pivot[f]) continue;
    BitString v(sys.n, false);
    v[f] = true;
    for (size_t k = 0; k < e.rows.size(); ++k) v[e.pivots[k]] = e.rows[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

uint32_t padded_qubits(uint32_t n) {
  uint32_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

uint32_t matrix_level(uint32_t qubits) {
  uint32_t l = 1;
  while ((uint32_t{1} << (l - 1)) < qubits) ++l;
  return l;
}

namespace {

Value amp(long v) { return Amplitude(v); }
Value inv_sqrt2() { return Amplitude::inv_sqrt2_pow(1); }

Cflobdd as_amplitudes(Manager& m, const Cflobdd& c) {
  return map_values(m, c, [](const Value& v) -> Value {
    if (v.is_int()) return Amplitude(v.as_int());
    return v;
  });
}

Cflobdd ket(Manager& m, bool bit, const Value& one) {
  Value zero = from_integer(0, one);
  return bit ? m.make(m.fork(), {zero, one}) : m.make(m.fork(), {one, zero});
}

Cflobdd plus_state(Manager& m) { return constant(m, 0, inv_sqrt2()); }
Cflobdd minus_state(Manager& m) { return m.make(m.fork(), {inv_sqrt2(), neg(inv_sqrt2())}); }

void record(QuantumRun& r, const std::string& step) { r.steps.push_back({step, size_report(r.state)}); }

Cflobdd identity_amp(Manager& m, uint32_t l) { return identity_valued(m, l, amp(1), amp(0)); }

uint64_t bits_value(const BitString& b) {
  uint64_t v = 0;
  for (bool x : b) v = (v << 1) | (x ? 1 : 0);
  return v;
}

}  // namespace

Cflobdd product_state(Manager& m, const std::vector<Cflobdd>& qubit_vectors) {
  return vector_to_matrix(m, tensor_all(m, qubit_vectors));
}

Cflobdd layer_gate(Manager& m, uint32_t qubits, const std::vector<bool>& on, const Cflobdd& gate) {
  Cflobdd id = identity_amp(m, 1);
  std::vector<Cflobdd> factors;
  factors.reserve(qubits);
  for (uint32_t q = 0; q < qubits; ++q) factors.push_back(q < on.size() && on[q] ? gate : id);
  return tensor_all(m, factors);
}

Cflobdd single_qubit_gate(Manager& m, uint32_t qubits, uint32_t q, const Cflobdd& gate) {
  std::vector<bool> on(qubits, false);
  on.at(q) = true;
  return layer_gate(m, qubits, on, gate);
}

Cflobdd hadamard_gate(Manager& m) { return scalar_multiply(m, hadamard(m, 1), inv_sqrt2()); }

Cflobdd apply_gate(Manager& m, const Cflobdd& gate, const Cflobdd& state) { return matrix_mult(m, gate, state); }

Value amplitude(const Cflobdd& state, uint64_t index) { return matrix_entry(state, index, 0); }

std::vector<BitString> measure(Manager& m, const Cflobdd& state, uint32_t bits, uint64_t shots) {
  Sampler sampler(m, state, norm2_weight);
  std::vector<BitString> out;
  out.reserve(shots);
  for (uint64_t s = 0; s < shots; ++s) {
    Assignment a = sampler.sample(m.rng());
    BitString b(bits);
    for (uint32_t q = 0; q < bits; ++q) b[q] = a[2 * size_t{q}];
    out.push_back(std::move(b));
  }
  return out;
}

QuantumRun ghz(Manager& m, uint32_t n, uint64_t shots) {
  if (n == 0) throw std::invalid_argument("ghz: need at least one qubit");
  QuantumRun r;
  r.algo = "ghz";
  r.n = n;
  r.qubits = padded_qubits(n + 1);
  uint32_t l = matrix_level(r.qubits);
  std::vector<Cflobdd> init;
  for (uint32_t q = 0; q < r.qubits; ++q) init.push_back(q < n ? plus_state(m) : ket(m, q == n, amp(1)));
  r.state = product_state(m, init);
  record(r, "init");
  for (uint32_t i = 0; i < n; ++i) {
    r.state = apply_gate(m, cnot(m, l, i, n), r.state);
    record(r, "cnot " + std::to_string(i));
  }
  std::vector<bool> on(r.qubits, false);
  for (uint32_t q = 0; q <= n; ++q) on[q] = true;
  r.state = apply_gate(m, layer_gate(m, r.qubits, on, hadamard_gate(m)), r.state);
  record(r, "hadamard");
  r.samples = measure(m, r.state, n, shots);
  uint64_t ones = 0;
  r.success = true;
  for (const auto& s : r.samples) {
    bool all0 = true, all1 = true;
    for (bool b : s) (b ? all0 : all1) = false;
    if (!all0 && !all1) r.success = false;
    ones += all1;
  }
  r.answer = std::to_string(shots - ones) + " zeros, " + std::to_string(ones) + " ones";
  return r;
}

namespace {

QuantumRun phase_kickback(Manager& m, const std::string& algo, uint32_t n,
                          const std::vector<std::pair<std::string, Cflobdd>>& oracle_gates, uint64_t shots) {
  QuantumRun r;
  r.algo = algo;
  r.n = n;
  r.qubits = padded_qubits(n + 1);
  std::vector<Cflobdd> init;
  for (uint32_t q = 0; q < r.qubits; ++q)
    init.push_back(q < n ? plus_state(m) : q == n ? minus_state(m) : ket(m, false, amp(1)));
  r.state = product_state(m, init);
  record(r, "init");
  for (const auto& [name, gate] : oracle_gates) {
    r.state = apply_gate(m, gate, r.state);
    record(r, name);
  }
  std::vector<bool> on(r.qubits, false);
  for (uint32_t q = 0; q < n; ++q) on[q] = true;
  r.state = apply_gate(m, layer_gate(m, r.qubits, on, hadamard_gate(m)), r.state);
  record(r, "hadamard");
  r.samples = measure(m, r.state, n, shots);
  return r;
}

}  // namespace

QuantumRun bv(Manager& m, uint32_t n, const BitString& s, uint64_t shots) {
  if (n == 0 || s.size() != n) throw std::invalid_argument("bv: secret must have n >= 1 bits");
  uint32_t l = matrix_level(padded_qubits(n + 1));
  std::vector<std::pair<std::string, Cflobdd>> gates;
  for (uint32_t i = 0; i < n; ++i)
    if (s[i]) gates.push_back({"cnot " + std::to_string(i), cnot(m, l, i, n)});
  QuantumRun r = phase_kickback(m, "bv", n, gates, shots);
  r.answer = bits_to_string(r.samples.at(0));
  r.success = true;
  for (const auto& x : r.samples) r.success = r.success && x == s;
  return r;
}

DjOracle parse_dj_oracle(const std::string& s) {
  if (s == "constant0") return DjOracle::constant0;
  if (s == "constant1") return DjOracle::constant1;
  if (s == "balanced" || s == "balanced-first-bit") return DjOracle::balanced;
  throw std::invalid_argument("unknown oracle kind: " + s);
}

QuantumRun dj(Manager& m, uint32_t n, DjOracle oracle, uint64_t shots) {
  if (n == 0) throw std::invalid_argument("dj: need at least one qubit");
  uint32_t qubits = padded_qubits(n + 1);
  uint32_t l = matrix_level(qubits);
  std::vector<std::pair<std::string, Cflobdd>> gates;
  if (oracle == DjOracle::constant0) gates.push_back({"oracle", identity_amp(m, l)});
  if (oracle == DjOracle::constant1)
    gates.push_back({"oracle", single_qubit_gate(m, qubits, n, as_amplitudes(m, not_matrix(m)))});
  if (oracle == DjOracle::balanced) gates.push_back({"oracle", cnot(m, l, 0, n)});
  QuantumRun r = phase_kickback(m, "dj", n, gates, shots);
  bool constant_seen = false, balanced_seen = false;
  for (const auto& x : r.samples) {
    bool zero = std::none_of(x.begin(), x.end(), [](bool b) { return b; });
    (zero ? constant_seen : balanced_seen) = true;
  }
  r.answer = constant_seen && !balanced_seen ? "constant" : (!constant_seen ? "balanced" : "mixed");
  r.success = r.answer == (oracle == DjOracle::balanced ? "balanced" : "constant");
  return r;
}

namespace {

constexpr uint32_t simon_register = 8;

}  // namespace

Cflobdd simon_oracle(Manager& m, uint32_t n, const BitString& s) {
  if (n == 0 || n > simon_register || s.size() != n) throw std::invalid_argument("simon: need 1 <= n <= 8");
  uint32_t spare = simon_register - n;
  uint64_t sv = bits_value(s);
  size_t dim = size_t{1} << simon_register;
  std::vector<Value> entries(dim * dim, amp(0));
  for (uint64_t c = 0; c < dim; ++c) {
    uint64_t hi = c >> spare, lo = c & ((uint64_t{1} << spare) - 1);
    uint64_t f = (std::min(hi, hi ^ sv) << spare) | lo;
    entries[f * dim + c] = amp(1);
  }
  return matrix_from_dense(m, matrix_level(simon_register), entries);
}

Cflobdd simon_state(Manager& m, uint32_t n, const BitString& s, std::vector<StepSize>* steps) {
  uint32_t l = matrix_level(simon_register);
  std::vector<bool> on(simon_register, false);
  for (uint32_t q = 0; q < n; ++q) on[q] = true;
  Cflobdd hx = layer_gate(m, simon_register, on, hadamard_gate(m));
  Cflobdd u = simon_oracle(m, n, s);
  std::vector<Cflobdd> zeros(2 * simon_register, ket(m, false, amp(1)));
  Cflobdd state = product_state(m, zeros);
  auto note = [&](const char* name) {
    if (steps) steps->push_back({name, size_report(state)});
  };
  note("init");
  state = apply_gate(m, kronecker_v2(m, hx, identity_amp(m, l)), state);
  note("hadamard");
  state = apply_gate(m, cnot_interleaved(m, l + 1), state);
  note("cnot");
  state = apply_gate(m, kronecker_v2(m, hx, u), state);
  note("oracle+hadamard");
  return state;
}

QuantumRun simon(Manager& m, uint32_t n, const BitString& s) {
  if (std::none_of(s.begin(), s.end(), [](bool b) { return b; }))
    throw std::invalid_argument("simon: secret must be nonzero");
  QuantumRun r;
  r.algo = "simon";
  r.n = n;
  r.qubits = 2 * simon_register;
  r.state = simon_state(m, n, s, &r.steps);
  Sampler sampler(m, r.state, norm2_weight);
  GF2System sys{n, {}};
  size_t rank = 0;
  for (uint32_t trial = 0; trial < 4 * n && rank + 1 < n; ++trial) {
    Assignment a = sampler.sample(m.rng());
    BitString y(n);
    for (uint32_t q = 0; q < n; ++q) y[q] = a[4 * size_t{q}];
    r.samples.push_back(y);
    sys.rows.push_back(y);
    rank = gf2_rank(sys);
  }
  std::vector<BitString> basis = gf2_null_space(sys);
  if (basis.size() != 1)
    throw SimonInconclusive("simon: only " + std::to_string(rank) + " independent constraints after " +
                            std::to_string(r.samples.size()) + " trials");
  r.answer = bits_to_string(basis[0]);
  r.success = basis[0] == s;
  return r;
}

uint64_t grover_iterations(uint32_t n) {
  return static_cast<uint64_t>(std::floor(std::numbers::pi / 4 * std::sqrt(std::ldexp(1.0, static_cast<int>(n)))));
}

Cflobdd grover_diffusion(Manager& m, uint32_t n, uint32_t qubits, bool direct) {
  uint32_t l = matrix_level(qubits);
  if (direct) {
    if (n != qubits) throw std::invalid_argument("grover_diffusion: direct form needs n to be a power of two");
    mpz_class big_n = mpz_class(1) << n;
    return identity_valued(m, l, Amplitude::dyadic(2 - big_n, n), Amplitude::dyadic(2, n));
  }
  std::vector<Cflobdd> factors;
  Cflobdd half = constant(m, 1, Amplitude::dyadic(1, 1));
  for (uint32_t q = 0; q < qubits; ++q) factors.push_back(q < n ? half : identity_amp(m, 1));
  Cflobdd proj = tensor_all(m, factors);
  return minus(m, scalar_multiply(m, proj, amp(2)), identity_amp(m, l));
}

Cflobdd grover_oracle(Manager& m, uint32_t n, uint32_t qubits, uint64_t w) {
  uint32_t l = matrix_level(qubits);
  Cflobdd sel0 = matrix_from_dense(m, 1, {amp(1), amp(0), amp(0), amp(0)});
  Cflobdd sel1 = matrix_from_dense(m, 1, {amp(0), amp(0), amp(0), amp(1)});
  std::vector<Cflobdd> factors;
  for (uint32_t q = 0; q < qubits; ++q)
    factors.push_back(q < n ? (((w >> (n - 1 - q)) & 1) ? sel1 : sel0) : identity_amp(m, 1));
  Cflobdd diag = tensor_all(m, factors);
  return minus(m, identity_amp(m, l), scalar_multiply(m, diag, amp(2)));
}

QuantumRun grover(Manager& m, uint32_t n, uint64_t w, uint64_t shots) {
  if (n == 0 || n > 62 || w >= (uint64_t{1} << n)) throw std::invalid_argument("grover: need 1 <= n <= 62 and w < 2^n");
  QuantumRun r;
  r.algo = "grover";
  r.n = n;
  r.qubits = padded_qubits(n);
  std::vector<Cflobdd> init;
  for (uint32_t q = 0; q < r.qubits; ++q) init.push_back(q < n ? plus_state(m) : ket(m, false, amp(1)));
  r.state = product_state(m, init);
  record(r, "init");
  Cflobdd uw = grover_oracle(m, n, r.qubits, w);
  Cflobdd us = grover_diffusion(m, n, r.qubits, n == r.qubits);
  Cflobdd iterate = matrix_power(m, matrix_mult(m, us, uw), grover_iterations(n));
  r.state = apply_gate(m, iterate, r.state);
  record(r, "iterate^" + std::to_string(grover_iterations(n)));
  r.samples = measure(m, r.state, n, shots);
  std::map<uint64_t, uint64_t> freq;
  for (const auto& s : r.samples) ++freq[bits_value(s)];
  uint64_t best = 0, best_count = 0;
  for (auto [v, c] : freq)
    if (c > best_count) best = v, best_count = c;
  r.answer = std::to_string(best);
  r.success = best == w;
  return r;
}

QuantumRun qft(Manager& m, uint32_t n, uint64_t x, uint64_t shots, bool exact) {
  if (n == 0 || n > 62 || x >= (uint64_t{1} << n)) throw std::invalid_argument("qft: need 1 <= n <= 62 and x < 2^n");
  QuantumRun r;
  r.algo = "qft";
  r.n = n;
  r.qubits = padded_qubits(n);
  uint32_t l = matrix_level(r.qubits);
  Value one = exact ? Value(Amplitude(1)) : Value(FloatAmplitude({1.0, 0.0}));
  std::vector<Cflobdd> init;
  for (uint32_t q = 0; q < r.qubits; ++q) init.push_back(ket(m, q < n && ((x >> (n - 1 - q)) & 1), one));
  r.state = product_state(m, init);
  record(r, "init");
  Cflobdd h = exact ? hadamard_gate(m)
                    : scalar_multiply(m, hadamard(m, 1), FloatAmplitude({std::sqrt(0.5), 0.0}));
  for (uint32_t q = 0; q < n; ++q) {
    r.state = apply_gate(m, single_qubit_gate(m, r.qubits, q, h), r.state);
    record(r, "h " + std::to_string(q));
    for (uint32_t j = q + 1; j < n; ++j) {
      uint32_t k = j - q + 1;
      Value phase = exact ? Value(Amplitude::root_of_unity(1, k))
                          : Value(FloatAmplitude(std::polar(1.0, 2 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(k)))));
      r.state = apply_gate(m, controlled_phase(m, l, q, j, phase), r.state);
      record(r, "cp " + std::to_string(q) + "," + std::to_string(j));
    }
  }
  for (uint32_t q = 0; q < n / 2; ++q) {
    r.state = apply_gate(m, swap_gate(m, l, q, n - 1 - q), r.state);
    record(r, "swap " + std::to_string(q) + "," + std::to_string(n - 1 - q));
  }
  r.samples = measure(m, r.state, n, shots);
  r.success = true;
  if (l <= 7 && n <= 12) {
    uint64_t big_n = uint64_t{1} << n;
    for (uint64_t y = 0; y < big_n && r.success; ++y) {
      Value got = amplitude(r.state, y << (r.qubits - n));
      if (exact) {
        Value want = Amplitude::root_of_unity((x * y) % big_n, n) * Amplitude::inv_sqrt2_pow(n);
        r.success = got == want;
      } else {
        std::complex<double> want = std::polar(std::pow(2.0, -0.5 * n), 2 * std::numbers::pi * double((x * y) % big_n) / double(big_n));
        r.success = std::abs(got.to_complex() - want) < 1e-9;
      }
    }
  }
  r.answer = r.success ? "amplitudes match the DFT" : "amplitude mismatch";
  return r;
}

}  // namespace cflobdd

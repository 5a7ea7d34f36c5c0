/// @file value.hpp
/// @brief Terminal values: booleans, big integers and canonical complex amplitudes.

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace cflobdd {

/// Exact element of Z[1/2][zeta] with zeta = exp(2*pi*i / 2^m).
///
/// The value is (sum_t c[t] * zeta^t) / 2^k for t < 2^(m-1). Every value has
/// one normal form: m and k are minimal, so equality is structural.
class Amplitude {
 public:
  Amplitude();
  Amplitude(long v);  // NOLINT: integers embed implicitly
  Amplitude(const mpz_class& v);  // NOLINT

  /// num / 2^k.
  static Amplitude dyadic(const mpz_class& num, uint64_t k);
  /// zeta_{2^m}^v.
  static Amplitude root_of_unity(uint64_t v, uint32_t m);
  /// 2^(-h/2).
  static Amplitude inv_sqrt2_pow(uint64_t h);

  Amplitude operator+(const Amplitude& o) const;
  Amplitude operator-(const Amplitude& o) const;
  Amplitude operator*(const Amplitude& o) const;
  Amplitude operator-() const;
  Amplitude conj() const;
  /// |z|^2, always real.
  Amplitude norm2() const;

  bool is_zero() const;
  /// True when the value lies in Q.
  bool is_rational() const { return m_ == 1; }
  /// Exact rational value; only valid when is_rational().
  mpq_class to_rational() const;
  std::complex<double> to_complex() const;

  bool operator==(const Amplitude& o) const;
  bool operator!=(const Amplitude& o) const { return !(*this == o); }
  size_t hash() const;

  uint32_t m() const { return m_; }
  uint64_t k() const { return k_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }

  /// Serialized as amp(m,k:c0,c1,...).
  std::string str() const;
  static Amplitude parse(const std::string& s);

 private:
  Amplitude(uint32_t m, uint64_t k, std::vector<mpz_class> c);
  void normalize();
  Amplitude lifted(uint32_t m) const;

  uint32_t m_ = 1;
  uint64_t k_ = 0;
  std::vector<mpz_class> c_;
};

/// Complex double snapped to a 2^-40 grid so that equality and hashing agree.
class FloatAmplitude {
 public:
  FloatAmplitude() = default;
  explicit FloatAmplitude(std::complex<double> z);

  std::complex<double> value() const { return z_; }
  bool operator==(const FloatAmplitude& o) const { return z_ == o.z_; }
  size_t hash() const;

  static constexpr int grid_bits = 40;

 private:
  std::complex<double> z_{0.0, 0.0};
};

/// Hashable terminal value.
class Value {
 public:
  using Storage = std::variant<bool, mpz_class, Amplitude, FloatAmplitude>;

  Value() : v_(false) {}
  Value(bool b) : v_(b) {}  // NOLINT
  Value(int i) : v_(mpz_class(i)) {}  // NOLINT
  Value(long i) : v_(mpz_class(i)) {}  // NOLINT
  Value(const mpz_class& i) : v_(i) {}  // NOLINT
  Value(const Amplitude& a) : v_(a) {}  // NOLINT
  Value(const FloatAmplitude& f) : v_(f) {}  // NOLINT

  bool is_bool() const { return v_.index() == 0; }
  bool is_int() const { return v_.index() == 1; }
  bool is_amplitude() const { return v_.index() == 2; }
  bool is_float() const { return v_.index() == 3; }

  bool as_bool() const;
  const mpz_class& as_int() const;
  const Amplitude& as_amplitude() const;
  const FloatAmplitude& as_float() const;

  /// Complex view of any numeric value; booleans map to 0/1.
  std::complex<double> to_complex() const;
  bool is_zero() const;

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }
  size_t hash() const;

  std::string str() const;
  static Value parse(const std::string& s);

  const Storage& storage() const { return v_; }

 private:
  Storage v_;
};

struct ValueHash {
  size_t operator()(const Value& v) const { return v.hash(); }
};

/// Semiring addition; mixed numeric kinds promote int < amplitude < float.
Value add(const Value& a, const Value& b);
Value sub(const Value& a, const Value& b);
Value mul(const Value& a, const Value& b);
Value neg(const Value& a);
/// The integer n in the numeric kind of `like`.
Value from_integer(const mpz_class& n, const Value& like);
/// Squared modulus as a rational; irrational values are approximated to 2^-64.
mpq_class weight_norm2(const Value& v);

/// A named binary operation on terminal values. Equal names share a cache id.
class BinaryOp {
 public:
  using Fn = std::function<Value(const Value&, const Value&)>;
  BinaryOp(std::string name, Fn fn);

  Value operator()(const Value& a, const Value& b) const { return fn_(a, b); }
  uint32_t id() const { return id_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
  uint32_t id_;
};

class TernaryOp {
 public:
  using Fn = std::function<Value(const Value&, const Value&, const Value&)>;
  TernaryOp(std::string name, Fn fn);

  Value operator()(const Value& a, const Value& b, const Value& c) const {
    return fn_(a, b, c);
  }
  uint32_t id() const { return id_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
  uint32_t id_;
};

namespace ops {

const BinaryOp& plus();
const BinaryOp& minus();
const BinaryOp& times();
/// Boolean op by truth-table code: bit (2a + b) of `code` is op(a, b).
const BinaryOp& boolean(unsigned code);
const BinaryOp& and_();
const BinaryOp& or_();
const BinaryOp& xor_();
const BinaryOp& xnor();
const BinaryOp& nand();
const BinaryOp& nor();
const BinaryOp& implies();
const TernaryOp& ite();

}  // namespace ops

}  // namespace cflobdd

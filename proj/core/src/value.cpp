#include "cflobdd/value.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cflobdd {

namespace {

size_t mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

size_t hash_mpz(const mpz_class& z) {
  size_t h = static_cast<size_t>(mpz_size(z.get_mpz_t()));
  h = mix(h, static_cast<size_t>(mpz_sgn(z.get_mpz_t()) + 1));
  size_t limbs = mpz_size(z.get_mpz_t());
  for (size_t i = 0; i < limbs && i < 4; ++i)
    h = mix(h, static_cast<size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  return h;
}

double mpz_scaled(const mpz_class& z, int64_t shift) {
  if (z == 0) return 0.0;
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::ldexp(d, static_cast<int>(std::clamp<int64_t>(e + shift, -100000, 100000)));
}

}  // namespace

Amplitude::Amplitude() : c_{mpz_class(0)} {}
Amplitude::Amplitude(long v) : c_{mpz_class(v)} {}
Amplitude::Amplitude(const mpz_class& v) : c_{v} {}

Amplitude::Amplitude(uint32_t m, uint64_t k, std::vector<mpz_class> c)
    : m_(m), k_(k), c_(std::move(c)) {
  normalize();
}

Amplitude Amplitude::dyadic(const mpz_class& num, uint64_t k) {
  return Amplitude(1, k, {num});
}

Amplitude Amplitude::root_of_unity(uint64_t v, uint32_t m) {
  if (m == 0) return Amplitude(1L);
  if (m > 30) throw std::invalid_argument("root_of_unity: order too large");
  uint64_t n = uint64_t{1} << m;
  uint64_t d = n / 2;
  v %= n;
  std::vector<mpz_class> c(d, mpz_class(0));
  if (v < d)
    c[v] = 1;
  else
    c[v - d] = -1;
  return Amplitude(m, 0, std::move(c));
}

Amplitude Amplitude::inv_sqrt2_pow(uint64_t h) {
  if (h % 2 == 0) return dyadic(1, h / 2);
  // sqrt(2) = zeta_8 - zeta_8^3
  return Amplitude(3, (h + 1) / 2, {0, 1, 0, -1});
}

void Amplitude::normalize() {
  bool all_zero = std::all_of(c_.begin(), c_.end(), [](const mpz_class& z) { return z == 0; });
  if (all_zero) {
    m_ = 1;
    k_ = 0;
    c_.assign(1, mpz_class(0));
    return;
  }
  while (m_ > 1) {
    bool odd_zero = true;
    for (size_t t = 1; t < c_.size(); t += 2)
      if (c_[t] != 0) {
        odd_zero = false;
        break;
      }
    if (!odd_zero) break;
    std::vector<mpz_class> e;
    e.reserve(c_.size() / 2);
    for (size_t t = 0; t < c_.size(); t += 2) e.push_back(c_[t]);
    c_ = std::move(e);
    --m_;
  }
  if (k_ > 0) {
    uint64_t tz = k_;
    for (const auto& z : c_)
      if (z != 0) tz = std::min<uint64_t>(tz, mpz_scan1(z.get_mpz_t(), 0));
    if (tz > 0) {
      for (auto& z : c_) mpz_fdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), tz);
      k_ -= tz;
    }
  }
}

Amplitude Amplitude::lifted(uint32_t m) const {
  if (m == m_) return *this;
  size_t d = size_t{1} << (m - 1);
  size_t stride = size_t{1} << (m - m_);
  Amplitude r;
  r.m_ = m;
  r.k_ = k_;
  r.c_.assign(d, mpz_class(0));
  for (size_t t = 0; t < c_.size(); ++t) r.c_[t * stride] = c_[t];
  return r;
}

Amplitude Amplitude::operator+(const Amplitude& o) const {
  uint32_t m = std::max(m_, o.m_);
  Amplitude a = lifted(m), b = o.lifted(m);
  uint64_t k = std::max(a.k_, b.k_);
  std::vector<mpz_class> c(a.c_.size());
  for (size_t t = 0; t < c.size(); ++t) {
    mpz_class x = a.c_[t], y = b.c_[t];
    mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), k - a.k_);
    mpz_mul_2exp(y.get_mpz_t(), y.get_mpz_t(), k - b.k_);
    c[t] = x + y;
  }
  return Amplitude(m, k, std::move(c));
}

Amplitude Amplitude::operator-() const {
  Amplitude r = *this;
  for (auto& z : r.c_) z = -z;
  return r;
}

Amplitude Amplitude::operator-(const Amplitude& o) const { return *this + (-o); }

Amplitude Amplitude::operator*(const Amplitude& o) const {
  uint32_t m = std::max(m_, o.m_);
  Amplitude a = lifted(m), b = o.lifted(m);
  size_t d = a.c_.size();
  std::vector<mpz_class> c(d, mpz_class(0));
  for (size_t i = 0; i < d; ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (b.c_[j] == 0) continue;
      size_t t = i + j;
      if (t < d)
        c[t] += a.c_[i] * b.c_[j];
      else
        c[t - d] -= a.c_[i] * b.c_[j];
    }
  }
  return Amplitude(m, a.k_ + b.k_, std::move(c));
}

Amplitude Amplitude::conj() const {
  size_t d = c_.size();
  std::vector<mpz_class> c(d, mpz_class(0));
  c[0] = c_[0];
  for (size_t t = 1; t < d; ++t) c[d - t] = -c_[t];
  return Amplitude(m_, k_, std::move(c));
}

Amplitude Amplitude::norm2() const { return *this * conj(); }

bool Amplitude::is_zero() const { return c_.size() == 1 && c_[0] == 0; }

mpq_class Amplitude::to_rational() const {
  if (!is_rational()) throw std::logic_error("Amplitude::to_rational: irrational value");
  mpq_class q(c_[0]);
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), k_);
  return q;
}

std::complex<double> Amplitude::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  double n = std::ldexp(1.0, static_cast<int>(m_));
  for (size_t t = 0; t < c_.size(); ++t) {
    if (c_[t] == 0) continue;
    double mag = mpz_scaled(c_[t], -static_cast<int64_t>(k_));
    double ang = 2.0 * M_PI * static_cast<double>(t) / n;
    acc += std::polar(1.0, ang) * mag;
  }
  return acc;
}

bool Amplitude::operator==(const Amplitude& o) const {
  return m_ == o.m_ && k_ == o.k_ && c_ == o.c_;
}

size_t Amplitude::hash() const {
  size_t h = mix(m_, k_);
  for (const auto& z : c_) h = mix(h, hash_mpz(z));
  return h;
}

std::string Amplitude::str() const {
  std::ostringstream os;
  os << "amp(" << m_ << "," << k_ << ":";
  for (size_t t = 0; t < c_.size(); ++t) os << (t ? "," : "") << c_[t].get_str();
  os << ")";
  return os.str();
}

Amplitude Amplitude::parse(const std::string& s) {
  if (s.rfind("amp(", 0) != 0 || s.back() != ')')
    throw std::invalid_argument("bad amplitude literal: " + s);
  std::string body = s.substr(4, s.size() - 5);
  auto colon = body.find(':');
  auto comma = body.find(',');
  if (colon == std::string::npos || comma == std::string::npos || comma > colon)
    throw std::invalid_argument("bad amplitude literal: " + s);
  uint32_t m = static_cast<uint32_t>(std::stoul(body.substr(0, comma)));
  uint64_t k = std::stoull(body.substr(comma + 1, colon - comma - 1));
  std::vector<mpz_class> c;
  std::stringstream ss(body.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) c.emplace_back(item);
  if (m == 0 || c.size() != (size_t{1} << (m - 1)))
    throw std::invalid_argument("bad amplitude literal: " + s);
  return Amplitude(m, k, std::move(c));
}

FloatAmplitude::FloatAmplitude(std::complex<double> z) {
  auto snap = [](double x) {
    double g = std::ldexp(1.0, grid_bits);
    double r = std::nearbyint(x * g) / g;
    return r == 0.0 ? 0.0 : r;
  };
  z_ = {snap(z.real()), snap(z.imag())};
}

size_t FloatAmplitude::hash() const {
  return mix(std::hash<double>{}(z_.real()), std::hash<double>{}(z_.imag()));
}

bool Value::as_bool() const {
  if (!is_bool()) throw std::invalid_argument("terminal is not Boolean: " + str());
  return std::get<bool>(v_);
}

const mpz_class& Value::as_int() const {
  if (!is_int()) throw std::invalid_argument("terminal is not an integer: " + str());
  return std::get<mpz_class>(v_);
}

const Amplitude& Value::as_amplitude() const {
  if (!is_amplitude()) throw std::invalid_argument("terminal is not an amplitude: " + str());
  return std::get<Amplitude>(v_);
}

const FloatAmplitude& Value::as_float() const {
  if (!is_float()) throw std::invalid_argument("terminal is not a float amplitude: " + str());
  return std::get<FloatAmplitude>(v_);
}

std::complex<double> Value::to_complex() const {
  switch (v_.index()) {
    case 0: return std::get<bool>(v_) ? 1.0 : 0.0;
    case 1: return mpz_scaled(std::get<mpz_class>(v_), 0);
    case 2: return std::get<Amplitude>(v_).to_complex();
    default: return std::get<FloatAmplitude>(v_).value();
  }
}

bool Value::is_zero() const {
  switch (v_.index()) {
    case 0: return !std::get<bool>(v_);
    case 1: return std::get<mpz_class>(v_) == 0;
    case 2: return std::get<Amplitude>(v_).is_zero();
    default: return std::get<FloatAmplitude>(v_).value() == std::complex<double>{};
  }
}

bool Value::operator==(const Value& o) const {
  if (v_.index() != o.v_.index()) return false;
  switch (v_.index()) {
    case 0: return std::get<bool>(v_) == std::get<bool>(o.v_);
    case 1: return std::get<mpz_class>(v_) == std::get<mpz_class>(o.v_);
    case 2: return std::get<Amplitude>(v_) == std::get<Amplitude>(o.v_);
    default: return std::get<FloatAmplitude>(v_) == std::get<FloatAmplitude>(o.v_);
  }
}

size_t Value::hash() const {
  size_t h = v_.index();
  switch (v_.index()) {
    case 0: return mix(h, std::get<bool>(v_));
    case 1: return mix(h, hash_mpz(std::get<mpz_class>(v_)));
    case 2: return mix(h, std::get<Amplitude>(v_).hash());
    default: return mix(h, std::get<FloatAmplitude>(v_).hash());
  }
}

std::string Value::str() const {
  switch (v_.index()) {
    case 0: return std::get<bool>(v_) ? "T" : "F";
    case 1: return std::get<mpz_class>(v_).get_str();
    case 2: return std::get<Amplitude>(v_).str();
    default: {
      char buf[96];
      auto z = std::get<FloatAmplitude>(v_).value();
      std::snprintf(buf, sizeof buf, "flt(%a,%a)", z.real(), z.imag());
      return buf;
    }
  }
}

Value Value::parse(const std::string& s) {
  if (s == "T") return Value(true);
  if (s == "F") return Value(false);
  if (s.rfind("amp(", 0) == 0) return Value(Amplitude::parse(s));
  if (s.rfind("flt(", 0) == 0 && s.back() == ')') {
    std::string body = s.substr(4, s.size() - 5);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad float literal: " + s);
    double re = std::strtod(body.substr(0, comma).c_str(), nullptr);
    double im = std::strtod(body.substr(comma + 1).c_str(), nullptr);
    return Value(FloatAmplitude({re, im}));
  }
  mpz_class z;
  if (s.empty() || z.set_str(s, 10) != 0) throw std::invalid_argument("bad terminal literal: " + s);
  return Value(z);
}

namespace {

int rank_of(const Value& v) {
  if (v.is_float()) return 3;
  if (v.is_amplitude()) return 2;
  return 1;
}

mpz_class int_of(const Value& v) {
  if (v.is_bool()) return v.as_bool() ? 1 : 0;
  return v.as_int();
}

Amplitude amp_of(const Value& v) {
  if (v.is_amplitude()) return v.as_amplitude();
  return Amplitude(int_of(v));
}

template <class IntOp, class AmpOp, class CplxOp>
Value numeric(const Value& a, const Value& b, IntOp iop, AmpOp aop, CplxOp cop) {
  int r = std::max(rank_of(a), rank_of(b));
  if (r == 1) return Value(iop(int_of(a), int_of(b)));
  if (r == 2) return Value(aop(amp_of(a), amp_of(b)));
  return Value(FloatAmplitude(cop(a.to_complex(), b.to_complex())));
}

}  // namespace

Value add(const Value& a, const Value& b) {
  if (a.is_bool() && b.is_bool()) return Value(a.as_bool() || b.as_bool());
  return numeric(
      a, b, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x + y); },
      [](const Amplitude& x, const Amplitude& y) { return x + y; },
      [](std::complex<double> x, std::complex<double> y) { return x + y; });
}

Value sub(const Value& a, const Value& b) {
  if (a.is_bool() && b.is_bool()) throw std::invalid_argument("subtraction on Boolean terminals");
  return numeric(
      a, b, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x - y); },
      [](const Amplitude& x, const Amplitude& y) { return x - y; },
      [](std::complex<double> x, std::complex<double> y) { return x - y; });
}

Value mul(const Value& a, const Value& b) {
  if (a.is_bool() && b.is_bool()) return Value(a.as_bool() && b.as_bool());
  return numeric(
      a, b, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x * y); },
      [](const Amplitude& x, const Amplitude& y) { return x * y; },
      [](std::complex<double> x, std::complex<double> y) { return x * y; });
}

Value neg(const Value& a) {
  if (a.is_bool()) throw std::invalid_argument("negation on Boolean terminal");
  return sub(from_integer(0, a), a);
}

Value from_integer(const mpz_class& n, const Value& like) {
  if (like.is_bool()) return Value(n != 0);
  if (like.is_int()) return Value(n);
  if (like.is_amplitude()) return Value(Amplitude(n));
  return Value(FloatAmplitude({mpz_scaled(n, 0), 0.0}));
}

mpq_class weight_norm2(const Value& v) {
  if (v.is_bool()) return v.as_bool() ? 1 : 0;
  if (v.is_int()) return mpq_class(v.as_int() * v.as_int());
  if (v.is_amplitude()) {
    Amplitude n = v.as_amplitude().norm2();
    if (n.is_rational()) return n.to_rational();
    double d = std::max(0.0, n.to_complex().real());
    mpq_class q(std::ldexp(std::nearbyint(std::ldexp(d, 64)), -64));
    return q;
  }
  return mpq_class(std::norm(v.as_float().value()));
}

namespace {

uint32_t op_id(const std::string& name) {
  static std::mutex mu;
  static std::unordered_map<std::string, uint32_t> ids;
  std::lock_guard<std::mutex> lock(mu);
  auto it = ids.find(name);
  if (it != ids.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(ids.size());
  ids.emplace(name, id);
  return id;
}

}  // namespace

BinaryOp::BinaryOp(std::string name, Fn fn)
    : name_(std::move(name)), fn_(std::move(fn)), id_(op_id("2:" + name_)) {}

TernaryOp::TernaryOp(std::string name, Fn fn)
    : name_(std::move(name)), fn_(std::move(fn)), id_(op_id("3:" + name_)) {}

namespace ops {

const BinaryOp& plus() {
  static const BinaryOp op("plus", [](const Value& a, const Value& b) { return add(a, b); });
  return op;
}

const BinaryOp& minus() {
  static const BinaryOp op("minus", [](const Value& a, const Value& b) { return sub(a, b); });
  return op;
}

const BinaryOp& times() {
  static const BinaryOp op("times", [](const Value& a, const Value& b) { return mul(a, b); });
  return op;
}

const BinaryOp& boolean(unsigned code) {
  static const std::vector<BinaryOp> table = [] {
    std::vector<BinaryOp> t;
    for (unsigned c = 0; c < 16; ++c)
      t.emplace_back("bool" + std::to_string(c), [c](const Value& a, const Value& b) {
        unsigned idx = (a.as_bool() ? 2u : 0u) + (b.as_bool() ? 1u : 0u);
        return Value(((c >> idx) & 1u) != 0);
      });
    return t;
  }();
  if (code >= 16) throw std::invalid_argument("boolean op code must be < 16");
  return table[code];
}

const BinaryOp& and_() { return boolean(8); }
const BinaryOp& or_() { return boolean(14); }
const BinaryOp& xor_() { return boolean(6); }
const BinaryOp& xnor() { return boolean(9); }
const BinaryOp& nand() { return boolean(7); }
const BinaryOp& nor() { return boolean(1); }
const BinaryOp& implies() { return boolean(11); }

const TernaryOp& ite() {
  static const TernaryOp op("ite", [](const Value& a, const Value& b, const Value& c) {
    return a.as_bool() ? b : c;
  });
  return op;
}

}  // namespace ops

}  // namespace cflobdd

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cflobdd/value.hpp"

using namespace cflobdd;

TEST_CASE("amplitude ring arithmetic") {
  Amplitude s = Amplitude::inv_sqrt2_pow(1);
  CHECK(s * s == Amplitude::dyadic(1, 1));
  CHECK(Amplitude::inv_sqrt2_pow(2) == Amplitude::dyadic(1, 1));
  CHECK((s * s).is_rational());
  CHECK_FALSE(s.is_rational());

  Amplitude w = Amplitude::root_of_unity(1, 3);
  Amplitude p = 1;
  for (int i = 0; i < 8; ++i) p = p * w;
  CHECK(p == Amplitude(1));
  CHECK(Amplitude::root_of_unity(2, 3) == Amplitude::root_of_unity(1, 2));
  CHECK(Amplitude::root_of_unity(1, 1) == Amplitude(-1));
  CHECK(w * w.conj() == Amplitude(1));
  CHECK(w.norm2() == Amplitude(1));

  Amplitude sqrt2 = Amplitude::root_of_unity(1, 3) - Amplitude::root_of_unity(3, 3);
  CHECK(sqrt2 * sqrt2 == Amplitude(2));
  CHECK(sqrt2 * s == Amplitude(1));
  CHECK(std::abs(sqrt2.to_complex() - std::complex<double>(std::numbers::sqrt2, 0)) < 1e-12);

  CHECK((Amplitude(3) - Amplitude(3)).is_zero());
  CHECK(Amplitude::dyadic(6, 2) == Amplitude::dyadic(3, 1));
  CHECK(Amplitude::dyadic(6, 2).to_rational() == mpq_class(3, 2));
}

TEST_CASE("equal amplitudes hash alike") {
  Amplitude a = Amplitude::inv_sqrt2_pow(3) * Amplitude::inv_sqrt2_pow(1);
  Amplitude b = Amplitude::dyadic(1, 2);
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK(Value(a).hash() == Value(b).hash());
}

TEST_CASE("amplitude text round trip") {
  for (Amplitude a : {Amplitude(0), Amplitude(-7), Amplitude::dyadic(5, 3), Amplitude::root_of_unity(3, 4),
                      Amplitude::inv_sqrt2_pow(5) * Amplitude::root_of_unity(1, 2)}) {
    CHECK(Amplitude::parse(a.str()) == a);
    CHECK(Value::parse(Value(a).str()) == Value(a));
  }
  CHECK_THROWS_AS(Amplitude::parse("amp(1,1"), std::invalid_argument);
}

TEST_CASE("value kinds and promotion") {
  CHECK(Value::parse(Value(true).str()) == Value(true));
  CHECK(Value::parse(Value(false).str()) == Value(false));
  CHECK(Value::parse(Value(-12).str()) == Value(-12));
  CHECK(Value(1) != Value(true));

  Value x = add(Value(2), Value(Amplitude::dyadic(1, 1)));
  CHECK(x.is_amplitude());
  CHECK(x == Value(Amplitude::dyadic(5, 1)));
  Value f = mul(Value(2), Value(FloatAmplitude({0.25, 0.0})));
  CHECK(f.is_float());
  CHECK(f.to_complex() == std::complex<double>(0.5, 0.0));
  CHECK(from_integer(3, Value(Amplitude(1))) == Value(Amplitude(3)));
  CHECK_THROWS(neg(Value(true)));
  CHECK_THROWS(Value(3).as_bool());
}

TEST_CASE("float amplitudes snap to a grid") {
  FloatAmplitude a({0.1 + 1e-15, 0.0});
  FloatAmplitude b({0.1, 0.0});
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
}

TEST_CASE("weights") {
  CHECK(weight_norm2(Value(-3)) == mpq_class(9));
  CHECK(weight_norm2(Value(Amplitude::inv_sqrt2_pow(3))) == mpq_class(1, 8));
  CHECK(weight_norm2(Value(true)) == mpq_class(1));
}

TEST_CASE("boolean op codes") {
  for (unsigned code = 0; code < 16; ++code)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(ops::boolean(code)(Value(a == 1), Value(b == 1)).as_bool() == (((code >> (2 * a + b)) & 1) == 1));
  CHECK(ops::boolean(0b1000).id() == ops::and_().id());
  CHECK(ops::boolean(0b0110).id() == ops::xor_().id());
}

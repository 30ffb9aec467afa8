#include "nodalgen/modforms.hpp"
#include "nodalgen/multipoly.hpp"
#include "nodalgen/qseries.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace nodalgen;

namespace {

RationalSeries S(int v, std::vector<long> c, int p) {
  std::vector<Rational> r;
  for (long x : c)
    r.emplace_back(x);
  return RationalSeries::from_coefficients(v, std::move(r), p);
}

RationalSeries random_series(std::mt19937_64& rng, int v, int p, bool unit = false) {
  std::vector<Rational> c;
  for (int i = v; i < p; ++i)
    c.push_back(oracle::random_rational(rng));
  if (unit)
    c[0] = 1;
  while (sgn(c[0]) == 0)
    c[0] = oracle::random_rational(rng);
  return RationalSeries::from_coefficients(v, std::move(c), p);
}

oracle::Dense dense(const RationalSeries& s) {
  oracle::Dense out;
  for (int i = 0; i < s.precision(); ++i)
    out.push_back(s.coeff(i));
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

} // namespace

TEST_CASE("rationals stay canonical") {
  CHECK(to_string(make_rational(BigInt(6), BigInt(-4))) == "-3/2");
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_rational("abc"); }) == ErrorCode::ParseError);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(7, 2) == 21);
}

TEST_CASE("addition") {
  CHECK(S(1, {1, 1}, 3) + S(1, {-1}, 3) == S(2, {1}, 3));
  const auto sum = S(0, {1}, 5) + RationalSeries::zero(2);
  CHECK(sum == S(0, {1}, 2));
  const auto laurent = S(-1, {1}, 2) + S(1, {1}, 2);
  CHECK(laurent.valuation() == -1);
  CHECK(laurent.precision() == 2);
  CHECK(laurent.coeff(0) == 0);
  CHECK(laurent.coeff(1) == 1);
}

TEST_CASE("canonical zero") {
  const auto z = S(0, {1, 2}, 4) - S(0, {1, 2}, 4);
  CHECK(z.is_zero());
  CHECK(z.valuation() == 4);
  CHECK(z == RationalSeries::zero(4));
  CHECK(RationalSeries::zero(3).coeff(0) == 0);
  CHECK(code_of([] { RationalSeries::zero(3).coeff(3); }) == ErrorCode::OutOfPrecision);
}

TEST_CASE("multiplication") {
  CHECK(S(0, {1, 1}, 3) * S(0, {1, -1}, 3) == S(0, {1, 0, -1}, 3));
  const auto one = S(-1, {1}, 5) * S(1, {1}, 5);
  CHECK(one.valuation() == 0);
  CHECK(one.coeff(0) == 1);
  const auto prod = S(0, {1, 24, 324}, 3) * S(1, {1, -24, 252}, 4);
  CHECK(prod.precision() == 4);
  CHECK(prod == S(1, {1, 0, 0}, 4));
}

TEST_CASE("division") {
  CHECK(S(1, {1, 6, 12}, 4) / S(1, {1}, 100) == S(0, {1, 6, 12}, 3));
  CHECK(S(0, {1}, 4) / S(0, {1, -1}, 4) == S(0, {1, 1, 1, 1}, 4));
  const auto inv = S(0, {1}, 100) / modforms::delta(5);
  CHECK(inv.valuation() == -1);
  CHECK(inv == S(-1, {1, 24, 324, 3200}, 3));
  CHECK(code_of([] { S(0, {1}, 3) / RationalSeries::zero(3); }) == ErrorCode::DivisionByZeroSeries);
  const PolySeries bad = PolySeries::constant(Poly4::x(), 3);
  CHECK(code_of([&] { PolySeries::constant(Poly4(1), 3) / bad; }) == ErrorCode::NonInvertibleLeadingCoefficient);
}

TEST_CASE("q-derivative") {
  CHECK(q_derivative(modforms::eisenstein(2, 4)) == S(1, {1, 6, 12}, 4));
  CHECK(q_derivative(S(0, {5}, 3)).is_zero());
  CHECK(q_derivative(S(-1, {1}, 2)) == S(-1, {-1}, 2));
}

TEST_CASE("exp") {
  const auto e = exp(S(1, {1}, 3));
  CHECK(e.coeff(0) == 1);
  CHECK(e.coeff(1) == 1);
  CHECK(e.coeff(2) == Rational(1, 2));
  CHECK(exp(RationalSeries::zero(5)) == S(0, {1}, 5));
  CHECK(exp(S(1, {6, -6, 28}, 4)) == S(0, {1, 6, 12, 28}, 4));
  CHECK(code_of([] { exp(S(0, {1, 1}, 3)); }) == ErrorCode::PositiveValuationRequired);
}

TEST_CASE("log") {
  CHECK(log(S(0, {1, 6, 12, 28}, 4)) == S(1, {6, -6, 28}, 4));
  CHECK(log(S(0, {1}, 4)).is_zero());
  const auto f = S(1, {3, 0, 5}, 6);
  CHECK(log(exp(f)) == f);
  CHECK(code_of([] { log(S(0, {2, 1}, 3)); }) == ErrorCode::UnitConstantTermRequired);
  CHECK(code_of([] { log(S(1, {1}, 3)); }) == ErrorCode::UnitConstantTermRequired);
}

TEST_CASE("pow") {
  const auto ratio = shifted(modforms::d2g2(3), -1) / shifted(modforms::delta(3), -1);
  CHECK(pow(ratio, Rational(1, 2)) == S(0, {1, 18}, 2));
  CHECK(pow(S(0, {1, 1}, 10), 3L) == S(0, {1, 3, 3, 1}, 10));
  CHECK(pow(S(1, {1}, 6), -2L).valuation() == -2);
  CHECK(code_of([] { pow(S(0, {2, 1}, 3), Rational(1, 2)); }) == ErrorCode::UnitConstantTermRequired);

  const Poly4 e = (Poly4::x() - Poly4::y()) * Rational(1, 2) + (Poly4::z() + Poly4::t()) * Rational(1, 12);
  const PolySeries base = lift<Poly4>(shifted(modforms::dg2(3), -1));
  const PolySeries p = pow_unit(base, e);
  CHECK(p.coeff(0) == Poly4(1));
  CHECK(p.coeff(1) == e * Rational(6));
}

TEST_CASE("compose") {
  const auto x2 = S(2, {1}, 100);
  CHECK(compose(x2, S(1, {1, 1}, 5)) == S(2, {1, 2, 1}, 5));
  const auto f = S(0, {2, -1, 3}, 5);
  CHECK(compose(f, S(1, {1}, 100)) == f);
  CHECK(compose(S(1, {1, -6, 60}, 4), modforms::dg2(4)) == S(1, {1}, 4));
  CHECK(code_of([] { compose(S(0, {1}, 3), S(0, {1}, 3)); }) == ErrorCode::PositiveValuationRequired);
  CHECK(code_of([] { compose(S(-1, {1}, 3), S(1, {1}, 3)); }) == ErrorCode::NegativeValuationUnsupported);
}

TEST_CASE("expansion in a base series") {
  const auto g = S(1, {1, 2, -1}, 6);
  const auto c = expand_in_base(g, g);
  REQUIRE(c.size() == 6);
  CHECK(c[1] == 1);
  for (std::size_t k : {0u, 2u, 3u, 4u, 5u})
    CHECK(c[k] == 0);

  const auto geometric = S(0, {1}, 7) / S(0, {1, -1}, 7);
  const auto base = S(1, {1}, 100) * geometric;
  const auto q = expand_in_base(S(1, {1}, 7), base);
  CHECK(q == std::vector<Rational>{0, 1, -1, 1, -1, 1, -1});

  const auto c1 = expand_in_base(log(shifted(modforms::dg2(5), -1)) * Rational(1, 2), modforms::dg2(5));
  CHECK(c1[0] == 0);
  CHECK(c1[1] == 3);
  CHECK(c1[2] == -21);
  CHECK(c1[3] == 230);

  CHECK(code_of([] { expand_in_base(S(0, {1}, 3), S(2, {1}, 3)); }) == ErrorCode::BaseValuationMustBeOne);
}

TEST_CASE("coefficient access") {
  const auto inv = S(0, {1}, 100) / modforms::delta(4);
  CHECK(inv.coeff(-1) == 1);
  CHECK(modforms::dg2(5).coeff(4) == 28);
  CHECK(RationalSeries::zero(1).coeff(0) == 0);
  CHECK(code_of([] { modforms::dg2(5).coeff(5); }) == ErrorCode::OutOfPrecision);
}

TEST_CASE("exp and log invert each other on random input") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> prec(2, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = prec(rng);
    const auto f = random_series(rng, 1, p);
    CHECK(log(exp(f)) == f);
    const auto u = random_series(rng, 0, p, true);
    CHECK(exp(log(u)) == u);
  }
}

TEST_CASE("exp and log match the naive power sums") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto u = random_series(rng, 0, 8, true);
    CHECK(dense(log(u)) == oracle::log_unit(dense(u)));
    const auto f = random_series(rng, 1, 8);
    CHECK(dense(exp(f)) == oracle::exp_nil(dense(f)));
  }
}

TEST_CASE("base expansion round trips and both routes agree") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> prec(1, 14);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = prec(rng);
    const auto f = random_series(rng, 0, p);
    const auto g = random_series(rng, 1, p + 1);
    const auto c = expand_in_base(f, g);
    CHECK(c == expand_in_base_residue(f, g));
    CHECK(static_cast<int>(c.size()) == p);
    const auto back = evaluate_in_base(c, g);
    CHECK(agree(back, f));
    CHECK(back.precision() >= p);
  }
}

TEST_CASE("compose matches Horner substitution") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_series(rng, 0, 7);
    const auto g = random_series(rng, 1, 7);
    const auto h = compose(f, g);
    CHECK(h.precision() == 7);
    CHECK(dense(h) == oracle::compose(dense(f), dense(g), 7));
  }
}

TEST_CASE("Leibniz rule for D") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_series(rng, trial % 3 - 1, 9);
    const auto b = random_series(rng, trial % 2, 9);
    CHECK(q_derivative(a * b) == q_derivative(a) * b + a * q_derivative(b));
  }
}

TEST_CASE("square root squares back") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = random_series(rng, 0, 10, true);
    const auto r = pow(u, Rational(1, 2));
    CHECK(r * r == u);
  }
}

TEST_CASE("division inverts multiplication") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_series(rng, trial % 4 - 2, 8);
    const auto b = random_series(rng, trial % 3 - 1, 8);
    CHECK(agree((a * b) / b, a));
    CHECK(agree((a / b) * b, a));
  }
}

TEST_CASE("integer powers agree with repeated products") {
  std::mt19937_64 rng(8);
  for (long e = -3; e <= 5; ++e) {
    const auto a = random_series(rng, 1, 9);
    RationalSeries expect = RationalSeries::constant(Rational(1), 100);
    for (long i = 0; i < std::abs(e); ++i)
      expect = expect * a;
    if (e < 0)
      expect = RationalSeries::constant(Rational(1), 100) / expect;
    CHECK(agree(pow(a, e), expect));
    CHECK(pow(a, e).valuation() == e);
  }
}

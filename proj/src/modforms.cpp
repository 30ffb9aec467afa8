#include "nodalgen/modforms.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace nodalgen::modforms {

BigInt sigma(unsigned k, unsigned long n) {
  BigInt total = 0;
  BigInt term;
  for (unsigned long d = 1; d * d <= n; ++d) {
    if (n % d != 0)
      continue;
    mpz_ui_pow_ui(term.get_mpz_t(), d, k);
    total += term;
    const unsigned long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(term.get_mpz_t(), e, k);
      total += term;
    }
  }
  return total;
}

Rational bernoulli(unsigned n) {
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (unsigned j = 0; j < m; ++j)
      acc += Rational(binomial(m + 1, j)) * b[j];
    b[m] = -acc / Rational(m + 1);
  }
  return b[n];
}

RationalSeries eisenstein(int k, int precision) {
  if (k < 2 || k % 2 != 0)
    throw Error(ErrorCode::OddWeightUnsupported, "Eisenstein series needs even k >= 2, got " + std::to_string(k));
  std::vector<Rational> c(static_cast<std::size_t>(std::max(precision, 0)));
  if (!c.empty())
    c[0] = -bernoulli(static_cast<unsigned>(k)) / Rational(2 * k);
  for (int n = 1; n < precision; ++n)
    c[static_cast<std::size_t>(n)] = Rational(sigma(static_cast<unsigned>(k - 1), static_cast<unsigned long>(n)));
  return RationalSeries::from_coefficients(0, std::move(c), precision);
}

RationalSeries delta(int precision) {
  // coefficients of prod (1 - q^k)^24 up to q^{P-2}, then shift by q
  const int len = std::max(precision - 1, 0);
  std::vector<BigInt> c(static_cast<std::size_t>(len), BigInt(0));
  if (len > 0)
    c[0] = 1;
  for (int k = 1; k < len; ++k)
    for (int rep = 0; rep < 24; ++rep)
      for (int n = len - 1; n >= k; --n)
        c[static_cast<std::size_t>(n)] -= c[static_cast<std::size_t>(n - k)];
  std::vector<Rational> out(c.begin(), c.end());
  return RationalSeries::from_coefficients(1, std::move(out), precision);
}

namespace {

RationalSeries weighted_sigma1(int power, int precision) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(precision, 0)), Rational(0));
  for (int n = 1; n < precision; ++n) {
    BigInt w;
    mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(power));
    c[static_cast<std::size_t>(n)] = Rational(w * sigma(1, static_cast<unsigned long>(n)));
  }
  return RationalSeries::from_coefficients(0, std::move(c), precision);
}

} // namespace

RationalSeries dg2(int precision) { return weighted_sigma1(1, precision); }

RationalSeries d2g2(int precision) { return weighted_sigma1(2, precision); }

const RationalSeries& form(std::string_view name, int precision) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, int>, RationalSeries> memo;

  std::lock_guard lock(mutex);
  auto key = std::make_pair(std::string(name), precision);
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  RationalSeries s;
  if (name == "G2")
    s = eisenstein(2, precision);
  else if (name == "G4")
    s = eisenstein(4, precision);
  else if (name == "G6")
    s = eisenstein(6, precision);
  else if (name == "Delta")
    s = delta(precision);
  else if (name == "DG2")
    s = dg2(precision);
  else if (name == "D2G2")
    s = d2g2(precision);
  else
    throw Error(ErrorCode::UnknownKind, "no form named '" + std::string(name) + "'");
  return memo.emplace(std::move(key), std::move(s)).first->second;
}

} // namespace nodalgen::modforms

#pragma once

// Reference computations for the tests. Everything here is deliberately naive
// and shares no code with the library beyond the Rational type.

#include "nodalgen/rational.hpp"

#include <random>
#include <vector>

namespace oracle {

using nodalgen::BigInt;
using nodalgen::Rational;
using Dense = std::vector<Rational>; // coefficients of q^0 .. q^{n-1}

inline Dense mul(const Dense& a, const Dense& b, std::size_t n) {
  Dense out(n, Rational(0));
  for (std::size_t i = 0; i < a.size() && i < n; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

inline Dense add(const Dense& a, const Dense& b) {
  Dense out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i)
    out[i] += b[i];
  return out;
}

inline Dense scale(Dense a, const Rational& r) {
  for (auto& c : a)
    c *= r;
  return a;
}

// sum_k (-1)^{k+1} (f - 1)^k / k for f with constant term 1
inline Dense log_unit(const Dense& f) {
  const std::size_t n = f.size();
  Dense u = f;
  u[0] = 0;
  Dense power(n, Rational(0));
  power[0] = 1;
  Dense out(n, Rational(0));
  for (std::size_t k = 1; k < n; ++k) {
    power = mul(power, u, n);
    out = add(out, scale(power, Rational(k % 2 ? 1 : -1, static_cast<long>(k))));
  }
  return out;
}

// sum_k f^k / k! for f with zero constant term
inline Dense exp_nil(const Dense& f) {
  const std::size_t n = f.size();
  Dense power(n, Rational(0));
  power[0] = 1;
  Dense out = power;
  Rational fact = 1;
  for (std::size_t k = 1; k < n; ++k) {
    power = mul(power, f, n);
    fact *= static_cast<long>(k);
    out = add(out, scale(power, 1 / fact));
  }
  return out;
}

// f(g) by Horner, g with zero constant term
inline Dense compose(const Dense& f, const Dense& g, std::size_t n) {
  Dense out(n, Rational(0));
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    out = mul(out, g, n);
    out[0] += *it;
  }
  return out;
}

inline BigInt sigma(unsigned k, long n) {
  BigInt total = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      BigInt p = 1;
      for (unsigned i = 0; i < k; ++i)
        p *= d;
      total += p;
    }
  return total;
}

// prod_{k>=1} (1 - q^k)^e, e of either sign, by multiplying factor by factor
inline std::vector<BigInt> eta_power(int e, std::size_t n) {
  std::vector<BigInt> out(n, BigInt(0));
  out[0] = 1;
  for (std::size_t k = 1; k < n; ++k)
    for (int rep = 0; rep < std::abs(e); ++rep) {
      if (e > 0) {
        for (std::size_t i = n; i-- > k;)
          out[i] -= out[i - k];
      } else {
        for (std::size_t i = k; i < n; ++i)
          out[i] += out[i - k];
      }
    }
  return out;
}

// prod (1 - q^k) through Euler's pentagonal numbers
inline std::vector<BigInt> pentagonal(std::size_t n) {
  std::vector<BigInt> out(n, BigInt(0));
  for (long k = 0;; ++k) {
    bool any = false;
    for (long s : {k, -k}) {
      if (k == 0 && s < 0)
        continue;
      const long g = s * (3 * s - 1) / 2;
      if (g < static_cast<long>(n)) {
        out[static_cast<std::size_t>(g)] = (k % 2 == 0) ? 1 : -1;
        any = true;
      }
    }
    if (!any)
      break;
  }
  return out;
}

// Akiyama–Tanigawa; gives B_1 = +1/2, so callers flip n = 1.
inline Rational bernoulli(unsigned n) {
  std::vector<Rational> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j)
      a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
  }
  return n == 1 ? Rational(-1, 2) : a[0];
}

// Unions of d lines through 2d general points: perfect matchings of 2d points.
inline BigInt line_configurations(int d) {
  BigInt out = 1;
  for (int k = 2 * d - 1; k > 0; k -= 2)
    out *= k;
  return out;
}

// Classical closed forms for plane Severi degrees with few nodes.
inline Rational severi_closed(int delta, long d) {
  const Rational x = d;
  switch (delta) {
  case 0: return 1;
  case 1: return 3 * (x - 1) * (x - 1);
  case 2: return Rational(3, 2) * (x - 1) * (x - 2) * (3 * x * x - 3 * x - 11);
  case 3:
    return Rational(9, 2) * x * x * x * x * x * x - 27 * x * x * x * x * x + Rational(9, 2) * x * x * x * x +
           Rational(423, 2) * x * x * x - 229 * x * x - Rational(829, 2) * x + 525;
  default: return -1;
  }
}

inline Rational random_rational(std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  return nodalgen::make_rational(BigInt(num(rng)), BigInt(den(rng)));
}

} // namespace oracle

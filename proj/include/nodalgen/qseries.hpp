#pragma once

// Truncated Laurent series in q over an exact coefficient domain.
//
// A QSeries stores sum_{i >= v} c_{i-v} q^i together with an absolute
// precision P: the series is only known modulo q^P. Every operation computes
// the tightest precision that follows from the precisions of its inputs.
// The series that is zero to precision P has an empty coefficient vector and
// reports valuation() == P.

#include "nodalgen/error.hpp"
#include "nodalgen/rational.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace nodalgen {

// Per-domain hooks the series code needs beyond ring arithmetic.
template <class C>
struct DomainTraits;

template <>
struct DomainTraits<Rational> {
  static bool is_zero(const Rational& a) { return sgn(a) == 0; }
  static Rational inverse(const Rational& a) {
    if (sgn(a) == 0)
      throw Error(ErrorCode::NonInvertibleLeadingCoefficient, "zero rational");
    return Rational(1) / a;
  }
  static Rational from_rational(const Rational& r) { return r; }
  static std::string to_string(const Rational& a) { return nodalgen::to_string(a); }
};

template <class C>
concept CoefficientDomain = std::copyable<C> && std::equality_comparable<C> &&
    requires(const C& a, const C& b, const Rational& r) {
      { C(a + b) };
      { C(a - b) };
      { C(a * b) };
      { C(-a) };
      { C(a * r) };
      { C(0) };
      { C(1) };
      { DomainTraits<C>::is_zero(a) } -> std::convertible_to<bool>;
      { DomainTraits<C>::inverse(a) } -> std::convertible_to<C>;
      { DomainTraits<C>::from_rational(r) } -> std::convertible_to<C>;
    };

template <CoefficientDomain C>
class QSeries {
public:
  using coefficient_type = C;

  QSeries() = default;

  static QSeries zero(int precision) {
    QSeries s;
    s.valuation_ = precision;
    s.precision_ = precision;
    return s;
  }

  // Builds sum coeffs[i] q^{valuation+i} mod q^precision. Terms at or above
  // the precision are dropped and leading zeros stripped.
  static QSeries from_coefficients(int valuation, std::vector<C> coeffs, int precision) {
    QSeries s;
    s.valuation_ = valuation;
    s.precision_ = precision;
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
  }

  static QSeries monomial(const C& c, int exponent, int precision) {
    return from_coefficients(exponent, {c}, precision);
  }

  static QSeries constant(const C& c, int precision) { return monomial(c, 0, precision); }

  int valuation() const noexcept { return valuation_; }
  int precision() const noexcept { return precision_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<C>& coefficients() const noexcept { return coeffs_; }

  // Coefficient of q^n; zero below the valuation.
  C coeff(int n) const {
    if (n >= precision_)
      throw Error(ErrorCode::OutOfPrecision,
                  "coefficient q^" + std::to_string(n) + " requested, precision " +
                      std::to_string(precision_));
    if (n < valuation_)
      return C(0);
    return coeffs_[static_cast<std::size_t>(n - valuation_)];
  }

  const C& leading() const { return coeffs_.front(); }

  QSeries truncated(int precision) const {
    if (precision >= precision_)
      return *this;
    QSeries s = *this;
    s.precision_ = precision;
    s.normalize();
    return s;
  }

  QSeries operator-() const {
    QSeries s = *this;
    for (auto& c : s.coeffs_)
      c = C(-c);
    return s;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    const int p = std::min(a.precision_, b.precision_);
    const int v = std::min(a.valuation_, b.valuation_);
    if (v >= p)
      return zero(p);
    std::vector<C> out(static_cast<std::size_t>(p - v), C(0));
    for (int n = v; n < p; ++n) {
      C& slot = out[static_cast<std::size_t>(n - v)];
      if (n >= a.valuation_ && n - a.valuation_ < a.length())
        slot = a.coeffs_[static_cast<std::size_t>(n - a.valuation_)];
      if (n >= b.valuation_ && n - b.valuation_ < b.length())
        slot = C(slot + b.coeffs_[static_cast<std::size_t>(n - b.valuation_)]);
    }
    return from_coefficients(v, std::move(out), p);
  }

  friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    const int v = a.valuation_ + b.valuation_;
    const int p = std::min(a.precision_ + b.valuation_, b.precision_ + a.valuation_);
    if (a.is_zero() || b.is_zero() || v >= p)
      return zero(p);
    const int len = p - v;
    std::vector<C> out(static_cast<std::size_t>(len), C(0));
    for (int i = 0; i < std::min(a.length(), len); ++i) {
      const C& ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (DomainTraits<C>::is_zero(ai))
        continue;
      for (int j = 0; j < std::min(b.length(), len - i); ++j)
        out[static_cast<std::size_t>(i + j)] =
            C(out[static_cast<std::size_t>(i + j)] + ai * b.coeffs_[static_cast<std::size_t>(j)]);
    }
    return from_coefficients(v, std::move(out), p);
  }

  friend QSeries operator*(const QSeries& a, const C& c) {
    QSeries s = a;
    for (auto& x : s.coeffs_)
      x = C(x * c);
    s.normalize();
    return s;
  }

  friend QSeries operator/(const QSeries& a, const QSeries& b) {
    if (b.is_zero())
      throw Error(ErrorCode::DivisionByZeroSeries,
                  "divisor is zero to precision " + std::to_string(b.precision_));
    const C lead_inv = DomainTraits<C>::inverse(b.leading());
    const int v = a.valuation_ - b.valuation_;
    const int rel = std::min(a.precision_ - a.valuation_, b.precision_ - b.valuation_);
    const int p = v + rel;
    if (a.is_zero() || rel <= 0)
      return zero(p);
    // w = (b / q^{v_b})^{-1} to rel terms.
    std::vector<C> w(static_cast<std::size_t>(rel), C(0));
    w[0] = lead_inv;
    for (int n = 1; n < rel; ++n) {
      C acc(0);
      for (int k = 1; k <= std::min(n, b.length() - 1); ++k)
        acc = C(acc + b.coeffs_[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(n - k)]);
      w[static_cast<std::size_t>(n)] = C(-(acc * lead_inv));
    }
    std::vector<C> out(static_cast<std::size_t>(rel), C(0));
    for (int i = 0; i < std::min(a.length(), rel); ++i)
      for (int j = 0; j < rel - i; ++j)
        out[static_cast<std::size_t>(i + j)] =
            C(out[static_cast<std::size_t>(i + j)] +
              a.coeffs_[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)]);
    return from_coefficients(v, std::move(out), p);
  }

  // Structural equality: same precision and same known coefficients.
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.precision_ == b.precision_ && a.valuation_ == b.valuation_ && a.coeffs_ == b.coeffs_;
  }

  // Equality of the parts both series know, i.e. modulo q^min(P_a, P_b).
  friend bool agree(const QSeries& a, const QSeries& b) { return (a - b).is_zero(); }

private:
  int length() const noexcept { return static_cast<int>(coeffs_.size()); }

  void normalize() {
    // dense: exactly P - v coefficients
    coeffs_.resize(static_cast<std::size_t>(std::max(0, precision_ - valuation_)), C(0));
    std::size_t lead = 0;
    while (lead < coeffs_.size() && DomainTraits<C>::is_zero(coeffs_[lead]))
      ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = precision_;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      valuation_ += static_cast<int>(lead);
    }
  }

  int valuation_ = 0;
  int precision_ = 0;
  std::vector<C> coeffs_;
};

using RationalSeries = QSeries<Rational>;

// Multiplies by q^by.
template <CoefficientDomain C>
QSeries<C> shifted(const QSeries<C>& s, int by) {
  return QSeries<C>::from_coefficients(s.valuation() + by, s.coefficients(), s.precision() + by);
}

// Embeds a rational series into a series over another domain.

template <CoefficientDomain C>
QSeries<C> lift(const QSeries<Rational>& s) {
  std::vector<C> out;
  out.reserve(s.coefficients().size());
  for (const auto& c : s.coefficients())
    out.push_back(DomainTraits<C>::from_rational(c));
  return QSeries<C>::from_coefficients(s.valuation(), std::move(out), s.precision());
}

// Same-domain no-op or rational embedding, used by mixed-domain operations.
template <CoefficientDomain C, CoefficientDomain G>
QSeries<C> lift_like(const QSeries<G>& g) {
  if constexpr (std::is_same_v<C, G>)
    return g;
  else
    return lift<C>(g);
}

// D = q d/dq.
template <CoefficientDomain C>
QSeries<C> q_derivative(const QSeries<C>& a) {
  std::vector<C> out = a.coefficients();
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = C(out[i] * Rational(a.valuation() + static_cast<int>(i)));
  return QSeries<C>::from_coefficients(a.valuation(), std::move(out), a.precision());
}

template <CoefficientDomain C>
QSeries<C> exp(const QSeries<C>& a) {
  const int p = a.precision();
  if (a.is_zero())
    return QSeries<C>::constant(C(1), p);
  if (a.valuation() < 1)
    throw Error(ErrorCode::PositiveValuationRequired,
                "exp needs valuation >= 1, got " + std::to_string(a.valuation()));
  if (p <= 0)
    return QSeries<C>::zero(p);
  // n f_n = sum_{k=1}^{n} k a_k f_{n-k}
  std::vector<C> f(static_cast<std::size_t>(p), C(0));
  f[0] = C(1);
  for (int n = 1; n < p; ++n) {
    C acc(0);
    for (int k = a.valuation(); k <= n; ++k) {
      const C ak = a.coeff(k);
      if (DomainTraits<C>::is_zero(ak))
        continue;
      acc = C(acc + ak * f[static_cast<std::size_t>(n - k)] * Rational(k));
    }
    f[static_cast<std::size_t>(n)] = C(acc * Rational(1, n));
  }
  return QSeries<C>::from_coefficients(0, std::move(f), p);
}

template <CoefficientDomain C>
void require_unit_constant(const QSeries<C>& a, const char* op) {
  if (a.is_zero() || a.valuation() != 0 || !(a.leading() == C(1)))
    throw Error(ErrorCode::UnitConstantTermRequired,
                std::string(op) + " needs valuation 0 and constant term 1");
}

template <CoefficientDomain C>
QSeries<C> log(const QSeries<C>& a) {
  require_unit_constant(a, "log");
  const int p = a.precision();
  // n f_n = n a_n - sum_{k=1}^{n-1} k f_k a_{n-k}
  std::vector<C> f(static_cast<std::size_t>(p), C(0));
  for (int n = 1; n < p; ++n) {
    C acc = C(a.coeff(n) * Rational(n));
    for (int k = 1; k < n; ++k) {
      const C& fk = f[static_cast<std::size_t>(k)];
      if (DomainTraits<C>::is_zero(fk))
        continue;
      acc = C(acc - fk * a.coeff(n - k) * Rational(k));
    }
    f[static_cast<std::size_t>(n)] = C(acc * Rational(1, n));
  }
  return QSeries<C>::from_coefficients(0, std::move(f), p);
}

template <CoefficientDomain C>
QSeries<C> pow(const QSeries<C>& a, long e) {
  if (e < 0) {
    QSeries<C> one = QSeries<C>::constant(C(1), a.precision() - a.valuation());
    return pow(one / a, -e);
  }
  QSeries<C> result = QSeries<C>::constant(C(1), a.precision() - a.valuation());
  if (e == 0)
    return result;
  QSeries<C> base = a;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return result;
}

// a^e for a ring-element exponent, via exp(e log a); a must be 1 + O(q).
template <CoefficientDomain C>
QSeries<C> pow_unit(const QSeries<C>& a, const C& e) {
  require_unit_constant(a, "fractional or symbolic power");
  return exp(log(a) * e);
}

// Rational exponent: integral exponents take the multiplicative route,
// anything else goes through exp(e log a).
template <CoefficientDomain C>
QSeries<C> pow(const QSeries<C>& a, const Rational& e) {
  if (is_integer(e) && e.get_num().fits_slong_p())
    return pow(a, e.get_num().get_si());
  return pow_unit(a, DomainTraits<C>::from_rational(e));
}

// f(g(q)); coefficients are exact below min(P_f * v_g, P_g).
template <CoefficientDomain C, CoefficientDomain G>
QSeries<C> compose(const QSeries<C>& f, const QSeries<G>& g) {
  if (g.valuation() < 1)
    throw Error(ErrorCode::PositiveValuationRequired, "compose needs the inner series to have valuation >= 1");
  if (!f.is_zero() && f.valuation() < 0)
    throw Error(ErrorCode::NegativeValuationUnsupported, "compose needs the outer series to have valuation >= 0");
  const int vg = g.valuation();
  const int p = std::min(f.precision() * vg, g.precision());
  if (f.is_zero() || p <= 0)
    return QSeries<C>::zero(p);
  const QSeries<C> inner = lift_like<C>(g);
  int top = std::min(f.precision() - 1, (p - 1) / vg);
  QSeries<C> acc = QSeries<C>::constant(f.coeff(top), p);
  for (int k = top - 1; k >= 0; --k)
    acc = (acc * inner).truncated(p) + QSeries<C>::constant(f.coeff(k), p);
  return acc.truncated(p);
}

// Coefficients c_0..c_{P-1} with f = sum_k c_k g^k mod q^P, P = min(P_f, P_g),
// by repeated elimination of the lowest surviving term.
template <CoefficientDomain C>
std::vector<C> expand_in_base(const QSeries<C>& f, const QSeries<Rational>& g) {
  if (g.is_zero() || g.valuation() != 1)
    throw Error(ErrorCode::BaseValuationMustBeOne, "base series must start at q^1");
  if (!f.is_zero() && f.valuation() < 0)
    throw Error(ErrorCode::NegativeValuationUnsupported, "expanded series must have valuation >= 0");
  const int p = std::min(f.precision(), g.precision());
  if (p <= 0)
    return {};
  const auto n = static_cast<std::size_t>(p);
  std::vector<C> rest(n, C(0));
  for (int i = 0; i < p; ++i)
    rest[static_cast<std::size_t>(i)] = f.coeff(i);
  std::vector<Rational> gd(n, Rational(0));
  for (int i = 1; i < p; ++i)
    gd[static_cast<std::size_t>(i)] = g.coeff(i);
  const Rational lead_inv = Rational(1) / g.leading();

  std::vector<C> out(n, C(0));
  std::vector<Rational> power(n, Rational(0)); // dense g^k
  power[0] = 1;
  Rational lead_pow = 1; // lead_inv^k
  for (std::size_t k = 0; k < n; ++k) {
    const C ck = C(rest[k] * lead_pow);
    out[k] = ck;
    if (!DomainTraits<C>::is_zero(ck))
      for (std::size_t m = k; m < n; ++m)
        if (sgn(power[m]) != 0)
          rest[m] = C(rest[m] - ck * power[m]);
    if (k + 1 == n)
      break;
    std::vector<Rational> next(n, Rational(0));
    for (std::size_t i = k; i < n; ++i) {
      if (sgn(power[i]) == 0)
        continue;
      for (std::size_t j = 1; i + j < n; ++j)
        next[i + j] += power[i] * gd[j];
    }
    power = std::move(next);
    lead_pow *= lead_inv;
  }
  return out;
}

// Same expansion through the residue pairing: c_0 = f_0 and, for k >= 1,
// c_k = Coeff_{q^0}(f Dg / g^{k+1}) = (1/k) Coeff_{q^0}(Df g^{-k}).
// The second form is the first after moving D across the pairing; it needs no
// precision beyond what the coefficient depends on.
template <CoefficientDomain C>
std::vector<C> expand_in_base_residue(const QSeries<C>& f, const QSeries<Rational>& g) {
  if (g.is_zero() || g.valuation() != 1)
    throw Error(ErrorCode::BaseValuationMustBeOne, "base series must start at q^1");
  if (!f.is_zero() && f.valuation() < 0)
    throw Error(ErrorCode::NegativeValuationUnsupported, "expanded series must have valuation >= 0");
  const int p = std::min(f.precision(), g.precision());
  if (p <= 0)
    return {};
  std::vector<C> out(static_cast<std::size_t>(p), C(0));
  out[0] = f.coeff(0);
  if (p == 1)
    return out;
  const QSeries<C> df = q_derivative(f.truncated(p));
  const QSeries<Rational> g_inv = QSeries<Rational>::constant(Rational(1), p) / g.truncated(p);
  QSeries<Rational> g_neg_k = QSeries<Rational>::constant(Rational(1), p);
  for (int k = 1; k < p; ++k) {
    g_neg_k = g_neg_k * g_inv;
    const QSeries<C> pairing = df * lift_like<C>(g_neg_k);
    out[static_cast<std::size_t>(k)] = C(pairing.coeff(0) * Rational(1, k));
  }
  return out;
}

// Horner evaluation of sum_k c_k g^k, the inverse of expand_in_base.
template <CoefficientDomain C>
QSeries<C> evaluate_in_base(const std::vector<C>& coeffs, const QSeries<Rational>& g) {
  const int p = std::min(static_cast<int>(coeffs.size()) * std::max(g.valuation(), 1), g.precision());
  return compose(QSeries<C>::from_coefficients(0, coeffs, static_cast<int>(coeffs.size())), g).truncated(p);
}

} // namespace nodalgen

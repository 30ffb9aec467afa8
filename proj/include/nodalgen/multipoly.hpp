#pragma once

// Sparse exact polynomials in the four intersection-number variables
//   x = L^2, y = L.K_S, z = K_S^2, t = c_2(S)
// and dense univariate rational polynomials.

#include "nodalgen/qseries.hpp"
#include "nodalgen/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nodalgen {

using Exponents = std::array<int, 4>;

// Graded lexicographic order, larger monomials first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = a[0] + a[1] + a[2] + a[3];
    const int db = b[0] + b[1] + b[2] + b[3];
    if (da != db)
      return da > db;
    return a > b;
  }
};

class Poly4 {
public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  Poly4() = default;
  Poly4(int c) : Poly4(Rational(c)) {}
  Poly4(const Rational& c);

  static Poly4 monomial(const Rational& c, const Exponents& e);
  static Poly4 x() { return monomial(1, {1, 0, 0, 0}); }
  static Poly4 y() { return monomial(1, {0, 1, 0, 0}); }
  static Poly4 z() { return monomial(1, {0, 0, 1, 0}); }
  static Poly4 t() { return monomial(1, {0, 0, 0, 1}); }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;
  // Total degree; -1 for the zero polynomial.
  int degree() const noexcept;

  Poly4 operator-() const;
  Poly4& operator+=(const Poly4& other);
  Poly4& operator-=(const Poly4& other);
  friend Poly4 operator+(Poly4 a, const Poly4& b) { return a += b; }
  friend Poly4 operator-(Poly4 a, const Poly4& b) { return a -= b; }
  friend Poly4 operator*(const Poly4& a, const Poly4& b);
  friend Poly4 operator*(const Poly4& a, const Rational& r);
  friend Poly4 operator*(const Rational& r, const Poly4& a) { return a * r; }
  friend bool operator==(const Poly4& a, const Poly4& b) { return a.terms_ == b.terms_; }

  Rational eval(const std::array<Rational, 4>& values) const;

  // "c * x^a y^b z^c t^d" terms in descending grlex order, joined by " + ".
  std::string to_string() const;
  std::vector<std::string> term_strings() const;
  static Poly4 parse(std::string_view text);
  static Poly4 parse_term(std::string_view text);

private:
  void add_term(const Exponents& e, const Rational& c);

  TermMap terms_;
};

template <>
struct DomainTraits<Poly4> {
  static bool is_zero(const Poly4& a) { return a.is_zero(); }
  static Poly4 inverse(const Poly4& a);
  static Poly4 from_rational(const Rational& r) { return Poly4(r); }
  static std::string to_string(const Poly4& a) { return a.to_string(); }
};

using PolySeries = QSeries<Poly4>;

// Univariate polynomial sum c_i v^i with trailing zeros trimmed.
class Poly1 {
public:
  Poly1() = default;
  explicit Poly1(std::vector<Rational> coeffs);

  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  // Coefficient of v^i, zero past the degree.
  Rational coefficient(int i) const;
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Rational eval(const Rational& v) const;

  friend Poly1 operator+(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(const Poly1& a, const Rational& r);
  friend bool operator==(const Poly1& a, const Poly1& b) { return a.coeffs_ == b.coeffs_; }

  // Descending powers, e.g. "3*d^2 - 6*d + 3".
  std::string to_string(std::string_view var = "d") const;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Substitutes (x, y, z, t) = (d^2, -3d, 9, 3).
Poly1 specialize_p2(const Poly4& p);

// Exact Lagrange interpolation through points with distinct abscissae.
Poly1 interpolate(const std::vector<std::pair<Rational, Rational>>& points);

} // namespace nodalgen

#include "nodalgen/multipoly.hpp"

#include "nodalgen/error.hpp"

#include <cctype>

namespace nodalgen {

namespace {

constexpr std::array<char, 4> kVarNames = {'x', 'y', 'z', 't'};

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string monomial_text(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (e[i] == 0)
      continue;
    if (!out.empty())
      out += ' ';
    out += kVarNames[i];
    if (e[i] != 1)
      out += '^' + std::to_string(e[i]);
  }
  return out;
}

} // namespace

Poly4::Poly4(const Rational& c) {
  if (sgn(c) != 0)
    terms_.emplace(Exponents{0, 0, 0, 0}, c);
}

Poly4 Poly4::monomial(const Rational& c, const Exponents& e) {
  Poly4 p;
  p.add_term(e, c);
  return p;
}

bool Poly4::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0, 0, 0});
}

Rational Poly4::constant_term() const { return coefficient({0, 0, 0, 0}); }

Rational Poly4::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly4::degree() const noexcept {
  if (terms_.empty())
    return -1;
  const auto& e = terms_.begin()->first;
  return e[0] + e[1] + e[2] + e[3];
}

void Poly4::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0)
      terms_.erase(it);
  }
}

Poly4 Poly4::operator-() const {
  Poly4 p = *this;
  for (auto& [e, c] : p.terms_)
    c = -c;
  return p;
}

Poly4& Poly4::operator+=(const Poly4& other) {
  for (const auto& [e, c] : other.terms_)
    add_term(e, c);
  return *this;
}

Poly4& Poly4::operator-=(const Poly4& other) {
  for (const auto& [e, c] : other.terms_)
    add_term(e, -c);
  return *this;
}

Poly4 operator*(const Poly4& a, const Poly4& b) {
  Poly4 out;
  Rational prod;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]}, prod);
    }
  return out;
}

Poly4 operator*(const Poly4& a, const Rational& r) {
  if (sgn(r) == 0)
    return {};
  Poly4 p = a;
  for (auto& [e, c] : p.terms_)
    c *= r;
  return p;
}

Rational Poly4::eval(const std::array<Rational, 4>& values) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k)
        term *= values[i];
    total += term;
  }
  return total;
}

std::vector<std::string> Poly4::term_strings() const {
  std::vector<std::string> out;
  for (const auto& [e, c] : terms_) {
    std::string mono = monomial_text(e);
    out.push_back(mono.empty() ? nodalgen::to_string(c) : nodalgen::to_string(c) + " * " + mono);
  }
  return out;
}

std::string Poly4::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& term : term_strings()) {
    if (first) {
      out = term;
      first = false;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

Poly4 Poly4::parse_term(std::string_view text) {
  text = trim_view(text);
  if (text.empty())
    throw Error(ErrorCode::ParseError, "empty polynomial term");
  auto star = text.find('*');
  Rational coeff = parse_rational(trim_view(text.substr(0, star)));
  Exponents e{0, 0, 0, 0};
  if (star != std::string_view::npos) {
    std::string_view mono = trim_view(text.substr(star + 1));
    while (!mono.empty()) {
      auto space = mono.find(' ');
      std::string_view factor = mono.substr(0, space);
      mono = space == std::string_view::npos ? std::string_view{} : trim_view(mono.substr(space + 1));
      std::size_t idx = 4;
      for (std::size_t i = 0; i < 4; ++i)
        if (!factor.empty() && factor[0] == kVarNames[i])
          idx = i;
      if (idx == 4)
        throw Error(ErrorCode::ParseError, "unknown variable in '" + std::string(factor) + "'");
      int power = 1;
      if (factor.size() > 1) {
        if (factor[1] != '^')
          throw Error(ErrorCode::ParseError, "bad factor '" + std::string(factor) + "'");
        power = static_cast<int>(parse_bigint(factor.substr(2)).get_si());
        if (power < 1)
          throw Error(ErrorCode::ParseError, "exponent must be positive in '" + std::string(factor) + "'");
      }
      e[idx] += power;
    }
  }
  return monomial(coeff, e);
}

Poly4 Poly4::parse(std::string_view text) {
  text = trim_view(text);
  Poly4 out;
  // split on " + " and " - " separators
  std::size_t start = 0;
  bool negate = false;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const bool at_end = i == text.size();
    const bool sep = !at_end && i + 2 < text.size() && text[i] == ' ' &&
                     (text[i + 1] == '+' || text[i + 1] == '-') && text[i + 2] == ' ';
    if (!at_end && !sep)
      continue;
    Poly4 term = parse_term(text.substr(start, i - start));
    out += negate ? -term : term;
    if (at_end)
      break;
    negate = text[i + 1] == '-';
    start = i + 3;
    i += 2;
  }
  return out;
}

Poly4 DomainTraits<Poly4>::inverse(const Poly4& a) {
  if (!a.is_constant() || a.is_zero())
    throw Error(ErrorCode::NonInvertibleLeadingCoefficient,
                "leading coefficient '" + a.to_string() + "' is not a nonzero constant");
  return Poly4(Rational(1) / a.constant_term());
}

Poly1::Poly1(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly1::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0)
    coeffs_.pop_back();
}

Rational Poly1::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size()))
    return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational Poly1::eval(const Rational& v) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * v + *it;
  return acc;
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
    out[i] += b.coeffs_[i];
  return Poly1(std::move(out));
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.is_zero() || b.is_zero())
    return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly1(std::move(out));
}

Poly1 operator*(const Poly1& a, const Rational& r) {
  std::vector<Rational> out = a.coeffs_;
  for (auto& c : out)
    c *= r;
  return Poly1(std::move(out));
}

std::string Poly1::to_string(std::string_view var) const {
  if (coeffs_.empty())
    return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0)
      continue;
    Rational mag = abs(c);
    std::string term;
    if (i == 0 || mag != 1)
      term = nodalgen::to_string(mag);
    if (i > 0) {
      if (!term.empty())
        term += '*';
      term += var;
      if (i > 1)
        term += '^' + std::to_string(i);
    }
    if (out.empty())
      out = sgn(c) < 0 ? "-" + term : term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  return out;
}

Poly1 specialize_p2(const Poly4& p) {
  std::vector<Rational> out;
  for (const auto& [e, c] : p.terms()) {
    // x^a y^b z^c t^d -> c * (-3)^b 9^c 3^d d^{2a+b}
    Rational coeff = c;
    BigInt factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), 3, static_cast<unsigned long>(e[1] + 2 * e[2] + e[3]));
    coeff *= Rational(factor);
    if (e[1] % 2 != 0)
      coeff = -coeff;
    const auto power = static_cast<std::size_t>(2 * e[0] + e[1]);
    if (out.size() <= power)
      out.resize(power + 1, Rational(0));
    out[power] += coeff;
  }
  return Poly1(std::move(out));
}

Poly1 interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw Error(ErrorCode::DuplicateAbscissa, "abscissa " + nodalgen::to_string(points[i].first) + " repeated");
  Poly1 total;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Poly1 basis(std::vector<Rational>{Rational(1)});
    Rational denom = 1;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i)
        continue;
      basis = basis * Poly1(std::vector<Rational>{-points[j].first, Rational(1)});
      denom *= points[i].first - points[j].first;
    }
    total = total + basis * (points[i].second / denom);
  }
  return total;
}

} // namespace nodalgen

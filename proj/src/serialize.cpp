#include "nodalgen/serialize.hpp"

namespace nodalgen::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

template <class C, class Render>
json series_doc(const QSeries<C>& s, Render&& render) {
  json coeffs = json::array();
  for (const auto& c : s.coefficients())
    coeffs.push_back(render(c));
  return {{"valuation", s.valuation()}, {"precision", s.precision()}, {"coefficients", std::move(coeffs)}};
}

const json& array_at(const json& doc, const char* key) {
  const json& a = doc.at(key);
  if (!a.is_array())
    throw Error(ErrorCode::ParseError, std::string("'") + key + "' must be an array");
  return a;
}

template <class C, class Read>
QSeries<C> series_from(const json& doc, Read&& read) {
  std::vector<C> coeffs;
  for (const auto& c : array_at(doc, "coefficients"))
    coeffs.push_back(read(c));
  const int v = doc.at("valuation").get<int>();
  const int p = doc.at("precision").get<int>();
  if (!coeffs.empty() && p <= v + static_cast<int>(coeffs.size()) - 1)
    throw Error(ErrorCode::ParseError, "series precision does not cover its coefficients");
  return QSeries<C>::from_coefficients(v, std::move(coeffs), p);
}

} // namespace

json rationals_to_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values)
    out.push_back(to_string(v));
  return out;
}

std::vector<Rational> rationals_from_json(const json& doc) {
  return guarded("rational list", [&] {
    if (!doc.is_array())
      throw Error(ErrorCode::ParseError, "expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& v : doc)
      out.push_back(parse_rational(v.get<std::string>()));
    return out;
  });
}

json to_json(const RationalSeries& s) {
  return series_doc(s, [](const Rational& c) { return to_string(c); });
}

json to_json(const PolySeries& s) {
  return series_doc(s, [](const Poly4& c) { return c.to_string(); });
}

json to_json(const Poly4& p) {
  return {{"variables", {"x", "y", "z", "t"}}, {"terms", p.term_strings()}};
}

json to_json(const Poly1& p, std::string_view var) {
  return {{"variable", std::string(var)}, {"coefficients", rationals_to_json(p.coefficients())}};
}

RationalSeries rational_series_from_json(const json& doc) {
  return guarded("series", [&] {
    return series_from<Rational>(doc, [](const json& c) { return parse_rational(c.get<std::string>()); });
  });
}

PolySeries poly_series_from_json(const json& doc) {
  return guarded("polynomial series", [&] {
    return series_from<Poly4>(doc, [](const json& c) { return Poly4::parse(c.get<std::string>()); });
  });
}

Poly4 poly4_from_json(const json& doc) {
  return guarded("polynomial", [&] {
    Poly4 out;
    for (const auto& term : array_at(doc, "terms"))
      out += Poly4::parse_term(term.get<std::string>());
    return out;
  });
}

Poly1 poly1_from_json(const json& doc) {
  return guarded("polynomial", [&] { return Poly1(rationals_from_json(doc.at("coefficients"))); });
}

json to_json(const FitResult& fit) {
  json residuals = json::array();
  for (const auto& r : fit.residuals)
    residuals.push_back({{"delta", r.delta},
                         {"degrees", {r.d1, r.d2}},
                         {"c2_residual", to_string(r.c2_residual)},
                         {"c3_residual", to_string(r.c3_residual)}});
  return {{"max_delta", fit.max_delta},
          {"degrees", fit.degrees},
          {"C1", rationals_to_json(fit.C1)},
          {"C2", rationals_to_json(fit.C2)},
          {"C3", rationals_to_json(fit.C3)},
          {"B1", to_json(fit.B.B1)},
          {"B2", to_json(fit.B.B2)},
          {"residuals", std::move(residuals)},
          {"consistent", fit.consistent()}};
}

FitResult fit_from_json(const json& doc) {
  return guarded("fit result", [&] {
    FitResult fit;
    fit.max_delta = doc.at("max_delta").get<int>();
    fit.degrees = doc.at("degrees").get<std::vector<int>>();
    fit.C1 = rationals_from_json(doc.at("C1"));
    fit.C2 = rationals_from_json(doc.at("C2"));
    fit.C3 = rationals_from_json(doc.at("C3"));
    fit.B.B1 = rational_series_from_json(doc.at("B1"));
    fit.B.B2 = rational_series_from_json(doc.at("B2"));
    for (const auto& r : array_at(doc, "residuals")) {
      const auto pair = r.at("degrees").get<std::vector<int>>();
      if (pair.size() != 2)
        throw Error(ErrorCode::ParseError, "residual needs exactly two degrees");
      fit.residuals.push_back({r.at("delta").get<int>(), pair[0], pair[1],
                               parse_rational(r.at("c2_residual").get<std::string>()),
                               parse_rational(r.at("c3_residual").get<std::string>())});
    }
    if (doc.at("consistent").get<bool>() != fit.consistent())
      throw Error(ErrorCode::ParseError, "consistency flag disagrees with the residuals");
    return fit;
  });
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json parse(std::string_view text) {
  return guarded("document", [&] { return json::parse(text); });
}

} // namespace nodalgen::io

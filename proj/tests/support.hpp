#pragma once

#include "nodalgen/multipoly.hpp"
#include "nodalgen/qseries.hpp"

#include <doctest.h>

namespace doctest {

template <nodalgen::CoefficientDomain C>
struct StringMaker<nodalgen::QSeries<C>> {
  static String convert(const nodalgen::QSeries<C>& s) {
    std::string out = "[v=" + std::to_string(s.valuation()) + " P=" + std::to_string(s.precision()) + ":";
    for (const auto& c : s.coefficients())
      out += " " + nodalgen::DomainTraits<C>::to_string(c);
    return (out + "]").c_str();
  }
};

template <>
struct StringMaker<nodalgen::Rational> {
  static String convert(const nodalgen::Rational& r) { return nodalgen::to_string(r).c_str(); }
};

template <>
struct StringMaker<nodalgen::Poly4> {
  static String convert(const nodalgen::Poly4& p) { return p.to_string().c_str(); }
};

template <>
struct StringMaker<nodalgen::Poly1> {
  static String convert(const nodalgen::Poly1& p) { return p.to_string().c_str(); }
};

} // namespace doctest

#pragma once

// JSON documents for the value types. Every exact number is written as a
// decimal string; parsing a document and emitting it again gives the same bytes.

#include "nodalgen/multipoly.hpp"
#include "nodalgen/qseries.hpp"
#include "nodalgen/universal.hpp"

#include <json.hpp>

namespace nodalgen::io {

using json = nlohmann::json;

json to_json(const RationalSeries& s);
json to_json(const PolySeries& s);
json to_json(const Poly4& p);
json to_json(const Poly1& p, std::string_view var);
json to_json(const FitResult& fit);
json rationals_to_json(const std::vector<Rational>& values);

RationalSeries rational_series_from_json(const json& doc);
PolySeries poly_series_from_json(const json& doc);
Poly4 poly4_from_json(const json& doc);
Poly1 poly1_from_json(const json& doc);
FitResult fit_from_json(const json& doc);
std::vector<Rational> rationals_from_json(const json& doc);

// Two-space indented JSON with a trailing newline.
std::string dump(const json& doc);
json parse(std::string_view text);

} // namespace nodalgen::io

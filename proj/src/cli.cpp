#include "nodalgen/cli.hpp"

#include "nodalgen/modforms.hpp"
#include "nodalgen/serialize.hpp"
#include "nodalgen/surfaces.hpp"
#include "nodalgen/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nodalgen::cli {

namespace {

using io::json;
using Rows = std::vector<std::vector<std::string>>;

struct Output {
  json doc;
  std::string text;
  Rows csv;
};

std::string series_text(const RationalSeries& s, std::string_view var = "q") {
  std::string out;
  for (int i = s.valuation(); i < s.precision(); ++i) {
    const Rational c = s.coeff(i);
    if (sgn(c) == 0)
      continue;
    std::string mono;
    if (i != 0)
      mono = i == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(i);
    const Rational mag = abs(c);
    std::string term = mono.empty() ? to_string(mag) : (mag == 1 ? mono : to_string(mag) + "*" + mono);
    if (out.empty())
      out = sgn(c) < 0 ? "-" + term : term;
    else
      out += (sgn(c) < 0 ? " - " : " + ") + term;
  }
  const std::string tail = "O(" + std::string(var) + "^" + std::to_string(s.precision()) + ")";
  return out.empty() ? tail : out + " + " + tail;
}

Rows series_rows(const RationalSeries& s, const std::string& label = {}) {
  Rows rows;
  for (int i = s.valuation(); i < s.precision(); ++i) {
    std::vector<std::string> row;
    if (!label.empty())
      row.push_back(label);
    row.push_back(std::to_string(i));
    row.push_back(to_string(s.coeff(i)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Errors caused by the arguments themselves rather than by the computation.
bool is_usage_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::InvalidProfile || code == ErrorCode::UnknownKind ||
         code == ErrorCode::InsufficientDegrees;
}

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos)
    return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const Rows& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

struct Factored {
  int sign = 1;
  unsigned two = 0, three = 0;
  BigInt cofactor = 1;
  Poly1 primitive;
};

// Pulls the content of an integer polynomial apart into sign, 2^a 3^b and the rest.
Factored factor_content(const Poly1& p) {
  Factored f;
  BigInt content = 0;
  for (const auto& c : p.coefficients())
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num().get_mpz_t());
  if (content == 0) {
    f.primitive = p;
    return f;
  }
  f.sign = sgn(p.coefficient(p.degree())) < 0 ? -1 : 1;
  BigInt rest = content;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) {
    rest /= 2;
    ++f.two;
  }
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 3)) {
    rest /= 3;
    ++f.three;
  }
  f.cofactor = rest;
  f.primitive = p * make_rational(BigInt(f.sign), content);
  return f;
}

std::string factored_text(const Factored& f, std::string_view var) {
  std::vector<std::string> parts;
  if (f.two)
    parts.push_back(f.two == 1 ? "2" : "2^" + std::to_string(f.two));
  if (f.three)
    parts.push_back(f.three == 1 ? "3" : "3^" + std::to_string(f.three));
  if (f.cofactor != 1)
    parts.push_back(f.cofactor.get_str());
  std::string prefix = f.sign < 0 ? "-" : "";
  for (std::size_t i = 0; i < parts.size(); ++i)
    prefix += (i ? " " : "") + parts[i];
  const std::string body = f.primitive.to_string(var);
  if (prefix.empty())
    return body;
  if (prefix == "-")
    return "-(" + body + ")";
  return prefix + " (" + body + ")";
}

json geometry_json(const SurfaceGeometry& g) {
  return {{"L2", std::to_string(g.L2)}, {"LK", std::to_string(g.LK)},   {"K2", std::to_string(g.K2)},
          {"c2", std::to_string(g.c2)}, {"chi_O", to_string(g.chi_O())}, {"chi_L", to_string(g.chi_L())}};
}

class Session {
public:
  Session(std::ostream& err, int verbosity) : err_(err), verbosity_(verbosity) {}

  void open_cache(const std::string& path, bool load) {
    path_ = path;
    if (load && !path_.empty() && std::filesystem::exists(path_)) {
      cache_ = severi::MemoCache::load(path_);
      note(1, "loaded " + std::to_string(cache_.size()) + " cache entries from " + path_);
    }
    loaded_size_ = cache_.size();
  }

  void close_cache() {
    if (!path_.empty() && cache_.size() != loaded_size_) {
      cache_.save(path_);
      note(1, "saved " + std::to_string(cache_.size()) + " cache entries to " + path_);
    }
  }

  void note(int level, const std::string& msg) const {
    if (verbosity_ >= level)
      err_ << "nodalgen: " << msg << '\n';
  }

  severi::MemoCache& cache() { return cache_; }
  severi::SeveriEngine& engine() { return engine_; }
  const std::string& cache_path() const { return path_; }
  int verbosity() const { return verbosity_; }

  BSeriesPair b_series(int max_delta) {
    note(1, "fitting B-series through q^" + std::to_string(max_delta));
    return fitted_b_series(engine_, max_delta);
  }

private:
  std::ostream& err_;
  int verbosity_;
  std::string path_;
  severi::MemoCache cache_;
  severi::SeveriEngine engine_{cache_};
  std::size_t loaded_size_ = 0;
};

struct FormArgs {
  std::string name;
  int order = 10;
};

Output cmd_form(const FormArgs& a) {
  const RationalSeries& s = modforms::form(a.name, a.order);
  Output o;
  o.doc = {{"kind", "form"}, {"name", a.name}, {"series", io::to_json(s)}};
  o.text = a.name + " = " + series_text(s) + "\n";
  o.csv = {{"exponent", "coefficient"}};
  for (auto& row : series_rows(s))
    o.csv.push_back(row);
  return o;
}

struct SeveriArgs {
  int d = 1;
  int delta = 0;
  std::string alpha, beta;
  bool table = false;
};

Output cmd_severi(Session& session, const SeveriArgs& a) {
  Output o;
  if (a.table) {
    const auto table = session.engine().table(a.d, a.delta, [&](int d, int delta) {
      session.note(2, "N^{" + std::to_string(d) + "," + std::to_string(delta) + "}");
    });
    json rows = json::array();
    o.csv = {{"d", "delta", "value"}};
    for (const auto& [key, value] : table) {
      rows.push_back({{"d", key.first}, {"delta", key.second}, {"value", value.get_str()}});
      o.csv.push_back({std::to_string(key.first), std::to_string(key.second), value.get_str()});
      o.text += "N^{" + std::to_string(key.first) + "," + std::to_string(key.second) + "} = " + value.get_str() + "\n";
    }
    o.doc = {{"kind", "severi-table"}, {"d_max", a.d}, {"delta_max", a.delta}, {"values", rows}};
    return o;
  }
  severi::SeveriKey key;
  key.d = a.d;
  key.delta = a.delta;
  key.alpha = severi::TangencyProfile::parse(a.alpha);
  key.beta = a.beta.empty() && a.alpha.empty() ? severi::TangencyProfile::unit(1, a.d)
                                                : severi::TangencyProfile::parse(a.beta);
  const BigInt value = session.engine().relative(key);
  o.doc = {{"kind", "severi"},
           {"d", a.d},
           {"delta", a.delta},
           {"alpha", key.alpha.to_string()},
           {"beta", key.beta.to_string()},
           {"value", value.get_str()}};
  o.text = value.get_str() + "\n";
  o.csv = {{"d", "delta", "alpha", "beta", "value"},
           {std::to_string(a.d), std::to_string(a.delta), key.alpha.to_string(), key.beta.to_string(), value.get_str()}};
  return o;
}

struct FitArgs {
  int max_delta = 8;
  std::vector<int> degrees;
  bool three_degree = false;
  bool allow_inconsistent = false;
};

Output cmd_fit(Session& session, const FitArgs& a) {
  std::vector<int> degrees = a.degrees.empty() ? default_fit_degrees(a.max_delta) : a.degrees;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  session.note(1, "Severi degrees for the fit window");
  const severi::SeveriTable table = severi_window(session.engine(), a.max_delta, degrees);
  const FitResult fit = fit_BC(table, a.max_delta, degrees, {!a.allow_inconsistent});

  Output o;
  o.doc = io::to_json(fit);
  o.doc["kind"] = "fit";
  o.text = "B1 = " + series_text(fit.B.B1) + "\nB2 = " + series_text(fit.B.B2) + "\n";
  std::size_t bad = 0;
  for (const auto& r : fit.residuals)
    bad += sgn(r.c2_residual) != 0 || sgn(r.c3_residual) != 0;
  o.text += "degree pairs checked: " + std::to_string(fit.residuals.size()) + ", nonzero residuals: " +
            std::to_string(bad) + "\n";
  o.csv = {{"series", "exponent", "coefficient"}};
  for (const auto& [name, values] : {std::pair{"C1", &fit.C1}, {"C2", &fit.C2}, {"C3", &fit.C3}})
    for (std::size_t i = 0; i < values->size(); ++i)
      o.csv.push_back({name, std::to_string(i), to_string((*values)[i])});
  for (auto& row : series_rows(fit.B.B1, "B1"))
    o.csv.push_back(row);
  for (auto& row : series_rows(fit.B.B2, "B2"))
    o.csv.push_back(row);

  if (a.three_degree) {
    std::vector<int> three = degrees;
    for (int extra = degrees.back() + 1; three.size() < 3; ++extra)
      three.push_back(extra);
    three.resize(3);
    const ThreeDegreeReport report = fit3_verify_C1(severi_window(session.engine(), a.max_delta, three),
                                                    a.max_delta, three);
    json rows = json::array();
    for (const auto& r : report.rows)
      rows.push_back({{"delta", r.delta},
                      {"C1", to_string(r.fitted_c1)},
                      {"expected_C1", to_string(r.expected_c1)},
                      {"C2", to_string(r.fitted_c2)},
                      {"C3", to_string(r.fitted_c3)}});
    o.doc["three_degree_check"] = {{"degrees", three}, {"ok", report.ok()}, {"rows", rows}};
    o.text += "three-degree C1 check with " + std::to_string(three[0]) + "," + std::to_string(three[1]) + "," +
              std::to_string(three[2]) + ": " + (report.ok() ? "agrees" : "DIFFERS") + "\n";
    if (!report.ok())
      throw Error(ErrorCode::InconsistentOverdetermination, "three-degree C1 differs from (1/2) log(DG2/q)");
  }
  return o;
}

Output cmd_universal(Session& session, int max_delta) {
  const auto t = tdelta_universal(session.b_series(max_delta), max_delta);
  Output o;
  json polys = json::array();
  o.csv = {{"delta", "coefficient", "x", "y", "z", "t"}};
  for (std::size_t delta = 0; delta < t.size(); ++delta) {
    polys.push_back(io::to_json(t[delta]));
    o.text += "T_" + std::to_string(delta) + " = " + t[delta].to_string() + "\n";
    for (const auto& [e, c] : t[delta].terms())
      o.csv.push_back({std::to_string(delta), to_string(c), std::to_string(e[0]), std::to_string(e[1]),
                       std::to_string(e[2]), std::to_string(e[3])});
  }
  o.doc = {{"kind", "universal"}, {"max_delta", max_delta}, {"T", polys}};
  return o;
}

struct SurfaceArgs {
  std::string kind = "k3";
  int r = 0;
  int order = 10;
  std::optional<int> coeff;
  int max_delta = 8;
  surfaces::PresetParams params;
};

Output cmd_surface(Session& session, const SurfaceArgs& a) {
  const surfaces::SurfaceKind kind = surfaces::parse_kind(a.kind);
  Output o;
  if (kind == surfaces::SurfaceKind::K3 || kind == surfaces::SurfaceKind::Abelian ||
      kind == surfaces::SurfaceKind::Enriques) {
    if (a.r < 0)
      throw Error(ErrorCode::UnknownKind, "r must be nonnegative");
    int precision = a.order;
    if (a.coeff)
      precision = std::max(precision, *a.coeff + 1);
    surfaces::GenusCountSeries g = kind == surfaces::SurfaceKind::K3        ? surfaces::k3_genus_series(a.r, precision)
                                   : kind == surfaces::SurfaceKind::Abelian ? surfaces::abelian_genus_series(a.r, precision)
                                                                            : surfaces::enriques_genus_series(a.r, precision);
    if (a.coeff) {
      const Rational value = g.n(*a.coeff);
      o.doc = {{"kind", "genus-count"}, {"surface", a.kind}, {"r", a.r},        {"genus", g.genus()},
               {"l", *a.coeff},         {"value", to_string(value)}};
      o.text = to_string(value) + "\n";
      o.csv = {{"surface", "r", "genus", "l", "value"},
               {a.kind, std::to_string(a.r), std::to_string(g.genus()), std::to_string(*a.coeff), to_string(value)}};
      return o;
    }
    o.doc = {{"kind", "genus-series"}, {"surface", a.kind}, {"r", a.r}, {"genus", g.genus()},
             {"series", io::to_json(g.series)}};
    o.text = a.kind + " r=" + std::to_string(a.r) + " (genus " + std::to_string(g.genus()) +
             "): " + series_text(g.series) + "\n";
    o.csv = {{"exponent", "coefficient"}};
    for (auto& row : series_rows(g.series))
      o.csv.push_back(row);
    return o;
  }

  const SurfaceGeometry geom = surfaces::geometry_preset(kind, a.params);
  const BSeriesPair b = session.b_series(a.max_delta);
  std::vector<Rational> values;
  std::vector<bool> valid;
  if (kind == surfaces::SurfaceKind::Ruled) {
    for (const auto& p : surfaces::ruled_predictions(a.params.e, a.params.n, a.params.m, a.max_delta, b)) {
      values.push_back(p.value);
      valid.push_back(p.valid);
    }
  } else {
    values = tdelta_evaluate(geom, b, a.max_delta);
    if (kind == surfaces::SurfaceKind::P2)
      for (int delta = 0; delta <= a.max_delta; ++delta)
        valid.push_back(delta <= 2 * a.params.d - 2);
  }
  json rows = json::array();
  o.csv = {{"delta", "value", "in_range"}};
  for (std::size_t delta = 0; delta < values.size(); ++delta) {
    json row = {{"delta", delta}, {"value", to_string(values[delta])}};
    std::string flag;
    if (!valid.empty()) {
      row["in_range"] = static_cast<bool>(valid[delta]);
      flag = valid[delta] ? "" : "  (outside the range where it counts curves)";
    }
    rows.push_back(row);
    o.text += "t_" + std::to_string(delta) + " = " + to_string(values[delta]) + flag + "\n";
    o.csv.push_back({std::to_string(delta), to_string(values[delta]),
                     valid.empty() ? "" : (valid[delta] ? "true" : "false")});
  }
  o.doc = {{"kind", "predictions"}, {"surface", a.kind}, {"geometry", geometry_json(geom)}, {"values", rows}};
  return o;
}

Output cmd_nodepoly(Session& session, int delta, bool all) {
  const auto polys = surfaces::node_polynomials(delta, session.b_series(delta));
  Output o;
  json docs = json::array();
  o.csv = {{"delta", "power", "coefficient"}};
  for (const auto& p : polys) {
    if (!all && p.delta != delta)
      continue;
    json d = io::to_json(p.P, "d");
    d["delta"] = p.delta;
    docs.push_back(d);
    o.text += "P_" + std::to_string(p.delta) + "(d) = " + p.P.to_string("d") + "\n";
    for (int i = 0; i <= p.P.degree(); ++i)
      o.csv.push_back({std::to_string(p.delta), std::to_string(i), to_string(p.P.coefficient(i))});
  }
  o.doc = {{"kind", "node-polynomials"}, {"polynomials", docs}};
  return o;
}

Output cmd_qmu(Session& session, int mu) {
  const Poly1 q = surfaces::qmu_extract(mu, session.b_series(surfaces::qmu_max_delta(mu)));
  const Factored f = factor_content(q);
  Output o;
  o.doc = {{"kind", "qmu"},
           {"mu", mu},
           {"polynomial", io::to_json(q, "delta")},
           {"factored",
            {{"sign", f.sign},
             {"power_of_two", f.two},
             {"power_of_three", f.three},
             {"cofactor", f.cofactor.get_str()},
             {"primitive", io::to_json(f.primitive, "delta")}}}};
  o.text = "Q_" + std::to_string(mu) + "(delta) = " + factored_text(f, "delta") + "\n";
  o.csv = {{"mu", "power", "coefficient"}};
  for (int i = 0; i <= q.degree(); ++i)
    o.csv.push_back({std::to_string(mu), std::to_string(i), to_string(q.coefficient(i))});
  return o;
}

std::string seconds_text(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s;
  return out.str();
}

Output cmd_verify(Session& session, const std::string& level, bool& passed) {
  verify::Options options;
  options.level = verify::parse_level(level);
  options.cache = &session.cache();
  options.on_result = [&](const verify::CheckResult& r) {
    session.note(1, std::string(r.passed ? "pass " : "FAIL ") + r.name + " (" + seconds_text(r.seconds) + "s)");
  };
  const verify::Report report = verify::run(options);
  passed = report.all_passed();
  Output o;
  o.doc = verify::to_json(report);
  o.doc["kind"] = "verify";
  o.csv = {{"name", "source", "passed", "seconds", "detail"}};
  for (const auto& c : report.checks) {
    o.text += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + "  [" + std::string(verify::source_name(c.source)) +
              "]  " + seconds_text(c.seconds) + "s" + (c.passed ? "" : "  " + c.detail) + "\n";
    o.csv.push_back({c.name, std::string(verify::source_name(c.source)), c.passed ? "true" : "false",
                     seconds_text(c.seconds), c.detail});
  }
  o.text += passed ? "all checks passed\n" : "some checks FAILED\n";
  return o;
}

struct CacheArgs {
  std::string action = "info";
  int d_max = 8;
  int delta_max = 8;
};

Output cmd_cache(Session& session, const CacheArgs& a) {
  if (session.cache_path().empty())
    throw CLI::ValidationError("cache", "no cache path; pass --cache or set NODALGEN_CACHE");
  Output o;
  if (a.action == "clear") {
    const bool removed = std::filesystem::remove(session.cache_path());
    session.cache() = severi::MemoCache{};
    o.doc = {{"kind", "cache"}, {"action", "clear"}, {"path", session.cache_path()}, {"removed", removed}};
    o.text = (removed ? "removed " : "nothing to remove at ") + session.cache_path() + "\n";
    o.csv = {{"path", "removed"}, {session.cache_path(), removed ? "true" : "false"}};
    return o;
  }
  if (a.action == "warm")
    session.engine().table(a.d_max, a.delta_max, [&](int d, int delta) {
      session.note(2, "N^{" + std::to_string(d) + "," + std::to_string(delta) + "}");
    });
  const std::size_t entries = session.cache().size();
  o.doc = {{"kind", "cache"},
           {"action", a.action},
           {"path", session.cache_path()},
           {"entries", entries},
           {"header", std::string(severi::kCacheHeader)}};
  o.text = session.cache_path() + ": " + std::to_string(entries) + " entries\n";
  o.csv = {{"path", "entries"}, {session.cache_path(), std::to_string(entries)}};
  return o;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for generating functions of nodal curves on surfaces", "nodalgen"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  std::string out_path;
  std::string cache_path;
  int verbosity = 0;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", out_path, "Write output to this file instead of standard output");
  app.add_option("--cache", cache_path, "Severi memo cache file")->envname("NODALGEN_CACHE");
  app.add_flag("-v,--verbose", verbosity, "Progress messages on standard error (repeat for more)");

  FormArgs form;
  auto* form_cmd = app.add_subcommand("form", "q-expansion of a quasimodular form");
  form_cmd->add_option("name", form.name, "G2, G4, G6, Delta, DG2 or D2G2")->required();
  form_cmd->add_option("--order", form.order, "Precision P (terms below q^P)")->check(CLI::NonNegativeNumber);

  SeveriArgs sev;
  auto* sev_cmd = app.add_subcommand("severi", "Severi degree N^{d,delta} or a relative degree");
  sev_cmd->add_option("--d", sev.d, "Curve degree")->required()->check(CLI::Range(1, severi::kMaxDegree));
  sev_cmd->add_option("--delta", sev.delta, "Number of nodes")->required()->check(CLI::NonNegativeNumber);
  sev_cmd->add_option("--alpha", sev.alpha, "Fixed tangency profile, e.g. 1,0,2");
  sev_cmd->add_option("--beta", sev.beta, "Moving tangency profile");
  sev_cmd->add_flag("--table", sev.table, "All N^{d',delta'} with d' <= d, delta' <= delta");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit B1, B2 from plane Severi degrees");
  fit_cmd->add_option("--max-delta", fit.max_delta, "Fit through x^N")->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--degrees", fit.degrees, "Curve degrees to use")->delimiter(',');
  fit_cmd->add_flag("--three-degree-check", fit.three_degree, "Solve for C1 from three degrees and compare");
  fit_cmd->add_flag("--allow-inconsistent", fit.allow_inconsistent, "Report disagreeing degree pairs instead of failing");

  int universal_n = 4;
  auto* uni_cmd = app.add_subcommand("universal", "Universal polynomials T_0..T_N");
  uni_cmd->add_option("--max-delta", universal_n, "Largest delta")->check(CLI::NonNegativeNumber);

  SurfaceArgs surf;
  std::int64_t L2 = 0, LK = 0, K2 = 0, c2 = 0, d = 1, e = 0, n = 1, m = 0;
  int coeff = 0;
  auto* surf_cmd = app.add_subcommand("surface", "Curve counts on a given surface");
  surf_cmd->add_option("--kind", surf.kind, "Surface kind")
      ->check(CLI::IsMember({"p2", "ruled", "k3", "abelian", "enriques", "custom"}));
  surf_cmd->add_option("--r", surf.r, "Number of nodes removed from the genus (k3, abelian, enriques)");
  surf_cmd->add_option("--order", surf.order, "q-precision of the genus series")->check(CLI::NonNegativeNumber);
  auto* coeff_opt = surf_cmd->add_option("--coeff", coeff, "Print only the coefficient of q^n");
  surf_cmd->add_option("--max-delta", surf.max_delta, "Largest delta for p2, ruled, custom")
      ->check(CLI::NonNegativeNumber);
  surf_cmd->add_option("--d", d, "p2: curve degree");
  surf_cmd->add_option("--e", e, "ruled: E^2 = -e");
  surf_cmd->add_option("--n", n, "ruled: L = nF + mE");
  surf_cmd->add_option("--m", m, "ruled: L = nF + mE");
  surf_cmd->add_option("--L2", L2, "custom: L^2");
  surf_cmd->add_option("--LK", LK, "custom: L.K");
  surf_cmd->add_option("--K2", K2, "custom: K^2");
  surf_cmd->add_option("--c2", c2, "custom: c_2");

  int node_delta = 4;
  bool node_all = false;
  auto* node_cmd = app.add_subcommand("nodepoly", "Node polynomial P_delta(d) of plane curves");
  node_cmd->add_option("--delta", node_delta, "delta")->check(CLI::NonNegativeNumber);
  node_cmd->add_flag("--all", node_all, "Also list P_0 .. P_{delta-1}");

  int mu = 8;
  auto* qmu_cmd = app.add_subcommand("qmu", "Polynomial Q_mu(delta) behind the coefficients of P_delta");
  qmu_cmd->add_option("--mu", mu, "mu")->check(CLI::NonNegativeNumber);

  std::string level = "quick";
  auto* verify_cmd = app.add_subcommand("verify", "Run the reproduction checks");
  verify_cmd->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  CacheArgs cache_args;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect, warm or clear the Severi memo cache");
  cache_cmd->add_option("action", cache_args.action, "info, warm or clear")
      ->check(CLI::IsMember({"info", "warm", "clear"}));
  cache_cmd->add_option("--d-max", cache_args.d_max, "warm: largest degree")->check(CLI::Range(1, severi::kMaxDegree));
  cache_cmd->add_option("--delta-max", cache_args.delta_max, "warm: largest delta")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }

  Session session(err, verbosity);
  try {
    const bool clearing = *cache_cmd && cache_args.action == "clear";
    // a corrupted cache must still be clearable
    session.open_cache(cache_path, !clearing);
    Output result;
    bool passed = true;
    if (*form_cmd)
      result = cmd_form(form);
    else if (*sev_cmd)
      result = cmd_severi(session, sev);
    else if (*fit_cmd)
      result = cmd_fit(session, fit);
    else if (*uni_cmd)
      result = cmd_universal(session, universal_n);
    else if (*surf_cmd) {
      surf.params = {d, e, n, m, L2, LK, K2, c2};
      if (*coeff_opt)
        surf.coeff = coeff;
      result = cmd_surface(session, surf);
    } else if (*node_cmd)
      result = cmd_nodepoly(session, node_delta, node_all);
    else if (*qmu_cmd)
      result = cmd_qmu(session, mu);
    else if (*verify_cmd)
      result = cmd_verify(session, level, passed);
    else if (*cache_cmd)
      result = cmd_cache(session, cache_args);
    if (!clearing)
      session.close_cache();

    const std::string body =
        format == "json" ? io::dump(result.doc) : format == "csv" ? render_csv(result.csv) : result.text;
    if (out_path.empty()) {
      out << body;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      file << body;
      if (!file)
        throw Error(ErrorCode::IoFailure, "cannot write " + out_path);
    }
    return passed ? 0 : 1;
  } catch (const CLI::ValidationError& e) {
    err << "nodalgen: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "nodalgen: " << e.what() << '\n';
    return is_usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "nodalgen: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

} // namespace nodalgen::cli

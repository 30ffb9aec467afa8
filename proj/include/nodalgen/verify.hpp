#pragma once

// Self-check suite behind `nodalgen verify`: reproduces the published tables
// and runs the structural identities the engine relies on.

#include "nodalgen/serialize.hpp"
#include "nodalgen/severi.hpp"

#include <functional>
#include <optional>

namespace nodalgen::verify {

enum class Level { Quick, Full };

Level parse_level(std::string_view name);
std::string_view level_name(Level level);

// Where the expected values of a check come from.
enum class Source { Published, Derived, Trivial };

std::string_view source_name(Source source);

struct CheckResult {
  std::string name;
  Source source = Source::Derived;
  bool passed = false;
  double seconds = 0.0;
  std::string detail; // first failure, or a short summary
};

struct Report {
  Level level = Level::Quick;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

struct Options {
  Level level = Level::Quick;
  // Shared memo for the Severi engine; a private one is used when null.
  severi::MemoCache* cache = nullptr;
  std::function<void(const CheckResult&)> on_result;
};

Report run(const Options& options);

io::json to_json(const Report& report);
Report report_from_json(const io::json& doc);

// Published B-series coefficients of q^0..q^20.
const std::vector<BigInt>& published_b1();
const std::vector<BigInt>& published_b2();

struct PublishedQ {
  int mu;
  Poly1 Q;
};
const std::vector<PublishedQ>& published_q();

} // namespace nodalgen::verify

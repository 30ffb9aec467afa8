#pragma once

// Plane Severi degrees N^{d,delta} (reducible curves included) from the
// Caporaso-Harris recursion on relative Severi degrees N(d, delta, alpha, beta).
//
// alpha counts contacts with a fixed line L at fixed points, beta contacts at
// unassigned points; alpha_k is the number of contact points of order k.
// With I(a) = sum k a_k and |a| = sum a_k:
//
//   N(d, delta, alpha, beta) =
//       sum_{k: beta_k > 0} k N(d, delta, alpha + e_k, beta - e_k)
//     + sum_{alpha' <= alpha, beta' >= beta, I(alpha') + I(beta') = d - 1}
//         prod_k k^{beta'_k - beta_k} C(alpha_k, alpha'_k) C(beta'_k, beta_k)
//         N(d - 1, delta', alpha', beta')
//
// with delta' = delta + |beta' - beta| + 1 - d. Lines (d = 1) count 1 with no
// nodes, and N vanishes outside 0 <= delta <= d(d-1)/2.

#include "nodalgen/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nodalgen::severi {

class TangencyProfile {
public:
  TangencyProfile() = default;
  // multiplicities[i] is the number of contacts of order i + 1.
  explicit TangencyProfile(std::vector<int> multiplicities);
  // count * e_order
  static TangencyProfile unit(int order, int count = 1);

  const std::vector<int>& multiplicities() const noexcept { return m_; }
  // Multiplicity of contact order k (1-based); zero past the end.
  int operator[](int k) const noexcept;
  int weight() const noexcept;
  int length() const noexcept;
  bool empty() const noexcept { return m_.empty(); }

  TangencyProfile adjusted(int order, int change) const;
  // componentwise <=
  bool leq(const TangencyProfile& other) const noexcept;

  // "m_1,m_2,..." with trailing zeros trimmed; "" for the empty profile.
  std::string to_string() const;
  static TangencyProfile parse(std::string_view text);

  friend bool operator==(const TangencyProfile&, const TangencyProfile&) = default;

private:
  void trim();
  std::vector<int> m_;
};

struct SeveriKey {
  int d = 1;
  int delta = 0;
  TangencyProfile alpha;
  TangencyProfile beta;

  bool valid() const noexcept { return d >= 1 && alpha.weight() + beta.weight() == d; }
  // "d:delta:alpha|beta"
  std::string canonical() const;
  static SeveriKey parse(std::string_view text);

  friend bool operator==(const SeveriKey&, const SeveriKey&) = default;
};

// Header line of the cache file; encodes the delta' convention so caches
// built with a different bookkeeping are rejected on load.
inline constexpr std::string_view kCacheHeader =
    "# nodalgen severi-cache v1 cogenus-shift delta'=delta+|beta'-beta|+1-d";

// Write-once memo of relative Severi degrees, safe for concurrent readers and
// writers. Inserting a key that is already present with a different value is a
// logic error and throws.
class MemoCache {
public:
  MemoCache() = default;
  MemoCache(const MemoCache& other);
  MemoCache& operator=(const MemoCache& other);

  std::optional<BigInt> find(const SeveriKey& key) const;
  void insert(const SeveriKey& key, const BigInt& value);
  std::size_t size() const;
  // Entries as (canonical key, value), sorted by key text.
  std::vector<std::pair<std::string, BigInt>> entries() const;

  // Replaces a stored value; only for fault-injection tests and tools.
  void overwrite(const SeveriKey& key, const BigInt& value);

  void save(const std::filesystem::path& path) const;
  static MemoCache load(const std::filesystem::path& path);

  // Packed-key access used by the recursion.
  std::optional<BigInt> find_packed(const std::string& packed) const;
  void insert_packed(const std::string& packed, const BigInt& value);

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, BigInt> map_;
};

std::string pack_key(const SeveriKey& key);
SeveriKey unpack_key(const std::string& packed);

// Largest curve degree the engine accepts; keys pack d into one byte.
inline constexpr int kMaxDegree = 60;

enum class TraversalOrder { Forward, Reverse };

struct EngineOptions {
  TraversalOrder order = TraversalOrder::Forward;
  // Skip states whose family dimension 2d + g - 1 + |beta| is below one.
  bool prune_by_dimension = true;
};

using SeveriTable = std::map<std::pair<int, int>, BigInt>;

class SeveriEngine {
public:
  explicit SeveriEngine(MemoCache& cache, EngineOptions options = {});

  BigInt relative(const SeveriKey& key);
  BigInt degree(int d, int delta);
  // N^{d,delta} for 1 <= d <= d_max, 0 <= delta <= delta_max.
  SeveriTable table(int d_max, int delta_max, const std::function<void(int, int)>& progress = {});

  std::uint64_t evaluations() const noexcept { return evaluations_; }

private:
  struct State;
  BigInt eval(const State& s, int depth);

  MemoCache& cache_;
  EngineOptions options_;
  std::uint64_t evaluations_ = 0;
};

BigInt severi_rel(const SeveriKey& key, MemoCache& cache);
BigInt severi_degree(int d, int delta, MemoCache& cache);
SeveriTable severi_table(int d_max, int delta_max, MemoCache& cache,
                         const std::function<void(int, int)>& progress = {});

} // namespace nodalgen::severi

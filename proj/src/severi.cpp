#include "nodalgen/severi.hpp"

#include "nodalgen/error.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <fstream>
#include <mutex>
#include <stdexcept>

namespace nodalgen::severi {

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  if (text.empty())
    return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    BigInt v = parse_bigint(piece);
    if (v < 0 || !v.fits_sint_p())
      throw Error(ErrorCode::ParseError, "bad multiplicity '" + std::string(piece) + "'");
    out.push_back(static_cast<int>(v.get_si()));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

} // namespace

TangencyProfile::TangencyProfile(std::vector<int> multiplicities) : m_(std::move(multiplicities)) {
  for (int v : m_)
    if (v < 0)
      throw Error(ErrorCode::InvalidProfile, "negative multiplicity");
  trim();
}

TangencyProfile TangencyProfile::unit(int order, int count) {
  std::vector<int> m(static_cast<std::size_t>(order), 0);
  m.back() = count;
  return TangencyProfile(std::move(m));
}

void TangencyProfile::trim() {
  while (!m_.empty() && m_.back() == 0)
    m_.pop_back();
}

int TangencyProfile::operator[](int k) const noexcept {
  if (k < 1 || k > static_cast<int>(m_.size()))
    return 0;
  return m_[static_cast<std::size_t>(k - 1)];
}

int TangencyProfile::weight() const noexcept {
  int w = 0;
  for (std::size_t i = 0; i < m_.size(); ++i)
    w += static_cast<int>(i + 1) * m_[i];
  return w;
}

int TangencyProfile::length() const noexcept {
  int n = 0;
  for (int v : m_)
    n += v;
  return n;
}

TangencyProfile TangencyProfile::adjusted(int order, int change) const {
  std::vector<int> m = m_;
  if (static_cast<int>(m.size()) < order)
    m.resize(static_cast<std::size_t>(order), 0);
  m[static_cast<std::size_t>(order - 1)] += change;
  return TangencyProfile(std::move(m));
}

bool TangencyProfile::leq(const TangencyProfile& other) const noexcept {
  for (std::size_t i = 0; i < m_.size(); ++i)
    if (m_[i] > other[static_cast<int>(i + 1)])
      return false;
  return true;
}

std::string TangencyProfile::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < m_.size(); ++i) {
    if (i > 0)
      out += ',';
    out += std::to_string(m_[i]);
  }
  return out;
}

TangencyProfile TangencyProfile::parse(std::string_view text) { return TangencyProfile(parse_int_list(text)); }

std::string SeveriKey::canonical() const {
  return std::to_string(d) + ':' + std::to_string(delta) + ':' + alpha.to_string() + '|' + beta.to_string();
}

SeveriKey SeveriKey::parse(std::string_view text) {
  auto c1 = text.find(':');
  auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  auto bar = c2 == std::string_view::npos ? c2 : text.find('|', c2 + 1);
  if (bar == std::string_view::npos)
    throw Error(ErrorCode::ParseError, "malformed key '" + std::string(text) + "'");
  SeveriKey key;
  BigInt d = parse_bigint(text.substr(0, c1));
  BigInt delta = parse_bigint(text.substr(c1 + 1, c2 - c1 - 1));
  if (d < 1 || d > kMaxDegree || !delta.fits_sint_p())
    throw Error(ErrorCode::ParseError, "key out of range '" + std::string(text) + "'");
  key.d = static_cast<int>(d.get_si());
  key.delta = static_cast<int>(delta.get_si());
  key.alpha = TangencyProfile::parse(text.substr(c2 + 1, bar - c2 - 1));
  key.beta = TangencyProfile::parse(text.substr(bar + 1));
  if (!key.valid())
    throw Error(ErrorCode::InvalidProfile, "I(alpha) + I(beta) != d in '" + std::string(text) + "'");
  return key;
}

// Packed layout: d, delta (two bytes), alpha_1..alpha_d, beta_1..beta_d.
std::string pack_key(const SeveriKey& key) {
  if (!key.valid() || key.d > kMaxDegree)
    throw Error(ErrorCode::InvalidProfile, "cannot pack key " + key.canonical());
  std::string out(static_cast<std::size_t>(3 + 2 * key.d), '\0');
  out[0] = static_cast<char>(key.d);
  const auto delta = static_cast<unsigned>(key.delta);
  out[1] = static_cast<char>(delta & 0xffU);
  out[2] = static_cast<char>((delta >> 8) & 0xffU);
  for (int k = 1; k <= key.d; ++k) {
    out[static_cast<std::size_t>(2 + k)] = static_cast<char>(key.alpha[k]);
    out[static_cast<std::size_t>(2 + key.d + k)] = static_cast<char>(key.beta[k]);
  }
  return out;
}

SeveriKey unpack_key(const std::string& packed) {
  const auto byte = [&](std::size_t i) { return static_cast<int>(static_cast<unsigned char>(packed[i])); };
  SeveriKey key;
  key.d = byte(0);
  key.delta = byte(1) | (byte(2) << 8);
  std::vector<int> a(static_cast<std::size_t>(key.d)), b(static_cast<std::size_t>(key.d));
  for (int k = 1; k <= key.d; ++k) {
    a[static_cast<std::size_t>(k - 1)] = byte(static_cast<std::size_t>(2 + k));
    b[static_cast<std::size_t>(k - 1)] = byte(static_cast<std::size_t>(2 + key.d + k));
  }
  key.alpha = TangencyProfile(std::move(a));
  key.beta = TangencyProfile(std::move(b));
  return key;
}

MemoCache::MemoCache(const MemoCache& other) {
  std::shared_lock lock(other.mutex_);
  map_ = other.map_;
}

MemoCache& MemoCache::operator=(const MemoCache& other) {
  if (this != &other) {
    std::unordered_map<std::string, BigInt> copy;
    {
      std::shared_lock lock(other.mutex_);
      copy = other.map_;
    }
    std::unique_lock lock(mutex_);
    map_ = std::move(copy);
  }
  return *this;
}

std::optional<BigInt> MemoCache::find_packed(const std::string& packed) const {
  std::shared_lock lock(mutex_);
  auto it = map_.find(packed);
  if (it == map_.end())
    return std::nullopt;
  return it->second;
}

void MemoCache::insert_packed(const std::string& packed, const BigInt& value) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = map_.try_emplace(packed, value);
  if (!inserted && it->second != value)
    throw std::logic_error("memo cache write-once violation at " + unpack_key(packed).canonical());
}

std::optional<BigInt> MemoCache::find(const SeveriKey& key) const { return find_packed(pack_key(key)); }

void MemoCache::insert(const SeveriKey& key, const BigInt& value) { insert_packed(pack_key(key), value); }

void MemoCache::overwrite(const SeveriKey& key, const BigInt& value) {
  std::unique_lock lock(mutex_);
  map_[pack_key(key)] = value;
}

std::size_t MemoCache::size() const {
  std::shared_lock lock(mutex_);
  return map_.size();
}

std::vector<std::pair<std::string, BigInt>> MemoCache::entries() const {
  std::vector<std::pair<std::string, BigInt>> out;
  {
    std::shared_lock lock(mutex_);
    out.reserve(map_.size());
    for (const auto& [packed, value] : map_)
      out.emplace_back(unpack_key(packed).canonical(), value);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void MemoCache::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for writing");
  out << kCacheHeader << '\n';
  for (const auto& [key, value] : entries())
    out << key << '=' << value.get_str(10) << '\n';
  out.flush();
  if (!out)
    throw Error(ErrorCode::IoFailure, "write to '" + path.string() + "' failed");
}

MemoCache MemoCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoFailure, "cannot open '" + path.string() + "' for reading");
  MemoCache cache;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != kCacheHeader)
        throw Error(ErrorCode::FormatVersionMismatch, where + ": unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::FormatVersionMismatch, where + ": missing '='");
    try {
      SeveriKey key = SeveriKey::parse(std::string_view(line).substr(0, eq));
      BigInt value = parse_bigint(std::string_view(line).substr(eq + 1));
      if (value < 0)
        throw Error(ErrorCode::ParseError, "negative value");
      cache.map_.emplace(pack_key(key), std::move(value));
    } catch (const Error& e) {
      throw Error(ErrorCode::FormatVersionMismatch, where + ": " + e.what());
    }
  }
  return cache;
}

struct SeveriEngine::State {
  int d = 1;
  int delta = 0;
  std::array<std::uint8_t, kMaxDegree + 1> alpha{}; // index = contact order
  std::array<std::uint8_t, kMaxDegree + 1> beta{};

  static State from_key(const SeveriKey& key) {
    State s;
    s.d = key.d;
    s.delta = key.delta;
    for (int k = 1; k <= key.d; ++k) {
      s.alpha[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(key.alpha[k]);
      s.beta[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(key.beta[k]);
    }
    return s;
  }

  int weight_alpha() const {
    int w = 0;
    for (int k = 1; k <= d; ++k)
      w += k * alpha[static_cast<std::size_t>(k)];
    return w;
  }

  int length_beta() const {
    int n = 0;
    for (int k = 1; k <= d; ++k)
      n += beta[static_cast<std::size_t>(k)];
    return n;
  }

  std::string packed() const {
    std::string out(static_cast<std::size_t>(3 + 2 * d), '\0');
    out[0] = static_cast<char>(d);
    out[1] = static_cast<char>(static_cast<unsigned>(delta) & 0xffU);
    out[2] = static_cast<char>((static_cast<unsigned>(delta) >> 8) & 0xffU);
    for (int k = 1; k <= d; ++k) {
      out[static_cast<std::size_t>(2 + k)] = static_cast<char>(alpha[static_cast<std::size_t>(k)]);
      out[static_cast<std::size_t>(2 + d + k)] = static_cast<char>(beta[static_cast<std::size_t>(k)]);
    }
    return out;
  }
};

namespace {

// A partition of n as (order, multiplicity) pairs plus its number of parts.
struct Partition {
  std::vector<std::pair<int, int>> parts;
  int count = 0;
};

const std::vector<Partition>& partitions_of(int n) {
  static std::mutex mutex;
  static std::map<int, std::vector<Partition>> memo;
  std::lock_guard lock(mutex);
  if (auto it = memo.find(n); it != memo.end())
    return it->second;
  std::vector<Partition> out;
  std::vector<int> mult(static_cast<std::size_t>(n + 1), 0);
  // parts chosen in decreasing order
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      Partition p;
      for (int k = 1; k <= n; ++k)
        if (mult[static_cast<std::size_t>(k)] > 0) {
          p.parts.emplace_back(k, mult[static_cast<std::size_t>(k)]);
          p.count += mult[static_cast<std::size_t>(k)];
        }
      out.push_back(std::move(p));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      ++mult[static_cast<std::size_t>(part)];
      rec(remaining - part, part);
      --mult[static_cast<std::size_t>(part)];
    }
  };
  rec(n, n);
  return memo.emplace(n, std::move(out)).first->second;
}

unsigned long small_binomial(int n, int k) {
  unsigned long r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * static_cast<unsigned long>(n - k + i) / static_cast<unsigned long>(i);
  return r;
}

} // namespace

SeveriEngine::SeveriEngine(MemoCache& cache, EngineOptions options) : cache_(cache), options_(options) {}

BigInt SeveriEngine::relative(const SeveriKey& key) {
  if (!key.valid())
    throw Error(ErrorCode::InvalidProfile, "I(alpha) + I(beta) != d for " + key.canonical());
  if (key.d > kMaxDegree)
    throw Error(ErrorCode::InvalidProfile, "degree above supported maximum " + std::to_string(kMaxDegree));
  return eval(State::from_key(key), 0);
}

BigInt SeveriEngine::degree(int d, int delta) {
  SeveriKey key;
  key.d = d;
  key.delta = delta;
  key.beta = TangencyProfile::unit(1, d);
  return relative(key);
}

SeveriTable SeveriEngine::table(int d_max, int delta_max, const std::function<void(int, int)>& progress) {
  SeveriTable out;
  for (int d = 1; d <= d_max; ++d)
    for (int delta = 0; delta <= delta_max; ++delta) {
      if (progress)
        progress(d, delta);
      out.emplace(std::make_pair(d, delta), degree(d, delta));
    }
  return out;
}

BigInt SeveriEngine::eval(const State& s, int depth) {
  const int d = s.d;
  if (s.delta < 0 || s.delta > d * (d - 1) / 2)
    return 0;
  if (d == 1)
    return s.delta == 0 ? 1 : 0;
  if (options_.prune_by_dimension) {
    const int genus = (d - 1) * (d - 2) / 2 - s.delta;
    if (2 * d + genus - 1 + s.length_beta() < 1)
      return 0;
  }
  assert(d + s.weight_alpha() <= 2 * d);
  (void)depth;

  const std::string key = s.packed();
  if (auto hit = cache_.find_packed(key))
    return *hit;
  ++evaluations_;

  const bool reverse = options_.order == TraversalOrder::Reverse;
  BigInt total = 0;

  // A point of the configuration specialises onto L as a contact of order k.
  for (int i = 1; i <= d; ++i) {
    const int k = reverse ? d + 1 - i : i;
    if (s.beta[static_cast<std::size_t>(k)] == 0)
      continue;
    State next = s;
    ++next.alpha[static_cast<std::size_t>(k)];
    --next.beta[static_cast<std::size_t>(k)];
    BigInt sub = eval(next, depth + 1);
    if (sgn(sub) != 0) {
      sub *= static_cast<unsigned long>(k);
      total += sub;
    }
  }

  // L splits off; the residual curve has degree d - 1.
  std::vector<int> orders;
  for (int k = 1; k <= d; ++k)
    if (s.alpha[static_cast<std::size_t>(k)] > 0)
      orders.push_back(k);
  if (reverse)
    std::reverse(orders.begin(), orders.end());
  const int weight_alpha = s.weight_alpha();
  const int max_delta_next = (d - 1) * (d - 2) / 2;

  std::vector<int> kept(orders.size(), 0); // alpha'_k for k in orders
  if (!reverse)
    for (std::size_t i = 0; i < orders.size(); ++i)
      kept[i] = 0;
  else
    for (std::size_t i = 0; i < orders.size(); ++i)
      kept[i] = s.alpha[static_cast<std::size_t>(orders[i])];

  BigInt coeff;
  BigInt sub;
  while (true) {
    int weight_kept = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
      weight_kept += orders[i] * kept[i];
    const int rem = weight_alpha - weight_kept - 1;
    if (rem >= 0) {
      const auto& parts = partitions_of(rem);
      for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const Partition& gamma = parts[reverse ? parts.size() - 1 - pi : pi];
        const int delta_next = s.delta + gamma.count + 1 - d;
        if (delta_next < 0 || delta_next > max_delta_next)
          continue;
        State next;
        next.d = d - 1;
        next.delta = delta_next;
        for (std::size_t i = 0; i < orders.size(); ++i)
          next.alpha[static_cast<std::size_t>(orders[i])] = static_cast<std::uint8_t>(kept[i]);
        for (int k = 1; k < d; ++k)
          next.beta[static_cast<std::size_t>(k)] = s.beta[static_cast<std::size_t>(k)];
        coeff = 1;
        for (const auto& [k, m] : gamma.parts) {
          const int before = s.beta[static_cast<std::size_t>(k)];
          next.beta[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(before + m);
          for (int r = 0; r < m; ++r)
            coeff *= static_cast<unsigned long>(k);
          coeff *= small_binomial(before + m, before);
        }
        for (std::size_t i = 0; i < orders.size(); ++i)
          coeff *= small_binomial(s.alpha[static_cast<std::size_t>(orders[i])], kept[i]);
        sub = eval(next, depth + 1);
        if (sgn(sub) != 0)
          total += coeff * sub;
      }
    }
    // advance the odometer over alpha' <= alpha
    std::size_t i = 0;
    for (; i < orders.size(); ++i) {
      const int cap = s.alpha[static_cast<std::size_t>(orders[i])];
      if (!reverse) {
        if (kept[i] < cap) {
          ++kept[i];
          break;
        }
        kept[i] = 0;
      } else {
        if (kept[i] > 0) {
          --kept[i];
          break;
        }
        kept[i] = cap;
      }
    }
    if (i == orders.size())
      break;
  }

  if (sgn(total) < 0)
    throw std::logic_error("negative relative Severi degree at " + unpack_key(key).canonical());
  cache_.insert_packed(key, total);
  return total;
}

BigInt severi_rel(const SeveriKey& key, MemoCache& cache) { return SeveriEngine(cache).relative(key); }

BigInt severi_degree(int d, int delta, MemoCache& cache) { return SeveriEngine(cache).degree(d, delta); }

SeveriTable severi_table(int d_max, int delta_max, MemoCache& cache, const std::function<void(int, int)>& progress) {
  return SeveriEngine(cache).table(d_max, delta_max, progress);
}

} // namespace nodalgen::severi

#pragma once

// Weight-2 newform records (level, Fricke sign, analytic rank) from a
// modular-forms database over HTTP, with a per-level JSON cache and bundled
// offline fixtures.
//
// fricke_sign is the sign of the functional equation, i.e. minus the W_N
// eigenvalue; the Fricke-minus space S_2^new(Gamma_0(N))^- is fricke_sign = -1.

#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ceresa {

enum class DataSource { Online, Cache, Fixture };
enum class FetchMode { Online, Offline };

std::string to_string(DataSource s);
std::string to_string(FetchMode m);

struct NewformRecord {
  std::int64_t level = 1;
  std::string label;
  int weight = 2;
  std::int64_t dim = 1;
  int fricke_sign = 1;  // +1 or -1
  int analytic_rank = 0;
  DataSource source = DataSource::Fixture;

  bool operator==(const NewformRecord&) const = default;
};

struct ClientConfig {
  std::string base_url = "https://www.lmfdb.org/api/mf_newforms/";
  std::string cache_dir = "cache";
  std::string fixtures_dir;  // defaults to the bundled data/newforms
  int timeout_ms = 10000;
  double rate_limit_rps = 2.0;

  /// Defaults, then the JSON file at `path` (if given), then CERESA_BASE_URL,
  /// CERESA_CACHE_DIR, CERESA_FIXTURES_DIR and CERESA_TIMEOUT_MS.
  static ClientConfig load(const std::optional<std::string>& path = std::nullopt);
  void apply_env();
};

/// Directory of the fixtures shipped with the source tree.
std::string default_fixtures_dir();

/// The one place that knows the database schema. Accepts a top-level array or
/// {"data": [...]}; each record needs label, level, weight, fricke_eigenval and
/// analytic_rank (dim optional). Records with a nontrivial character
/// (char_orbit_index != 1) are dropped. Throws ParseError with the record index
/// on a malformed record or a rank/sign parity clash.
std::vector<NewformRecord> normalize_payload(const nlohmann::json& payload, std::int64_t level,
                                             DataSource source);

/// Stored (cache and fixture) document: {"schema_version": 1, "level": M,
/// "records": [...]}, keys sorted, records sorted by label.
nlohmann::json to_document(std::int64_t level, const std::vector<NewformRecord>& records);
std::vector<NewformRecord> from_document(const nlohmann::json& doc, std::int64_t level,
                                         DataSource source);
nlohmann::json to_json(const NewformRecord& r);

inline constexpr int kCacheSchemaVersion = 1;

/// Blocking token spacing: callers are admitted at most `rps` times per second,
/// in arrival order.
class RateLimiter {
 public:
  explicit RateLimiter(double rps);
  void acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_;
};

struct Witness {
  std::int64_t level = 0;
  NewformRecord record;
};

struct WitnessScan {
  std::optional<Witness> witness;
  /// Levels with no data (or a failed fetch) met before a witness was found.
  std::vector<std::int64_t> unavailable_levels;
  /// Fetch failures other than missing data (network, malformed payload).
  std::vector<std::string> errors;
  /// No witness and at least one level could not be checked.
  bool indeterminate() const { return !witness && !unavailable_levels.empty(); }
};

class NewformClient {
 public:
  explicit NewformClient(ClientConfig cfg = ClientConfig::load());

  /// Online: HTTP GET base_url?level=M&weight=2, normalize, write the cache.
  /// Offline: cache, then fixtures. Sorted by label.
  /// Throws TransientError (network), ParseError (payload) or DataUnavailable.
  std::vector<NewformRecord> fetch_newforms(std::int64_t level, FetchMode mode);

  /// First divisor M | N (increasing) carrying a record with fricke_sign = -1
  /// and analytic_rank = 1. Levels above `max_level` are not scanned.
  WitnessScan witness_minus_rank1(std::int64_t N, FetchMode mode,
                                  std::int64_t max_level = 1000000);
  WitnessScan witness_minus_rank1(const std::vector<std::int64_t>& divisors, FetchMode mode);

  std::string cache_path(std::int64_t level) const;
  std::string fixture_path(std::int64_t level) const;
  const ClientConfig& config() const { return cfg_; }
  /// Number of HTTP requests actually sent.
  std::size_t requests_sent() const;

 private:
  std::vector<NewformRecord> fetch_online(std::int64_t level);
  std::vector<NewformRecord> http_get(std::int64_t level);
  std::optional<std::vector<NewformRecord>> read_cache(std::int64_t level);
  void write_cache(std::int64_t level, const std::vector<NewformRecord>& records);

  ClientConfig cfg_;
  RateLimiter limiter_;
  mutable std::mutex mu_;
  std::map<std::int64_t, std::shared_future<std::vector<NewformRecord>>> in_flight_;
  std::size_t requests_ = 0;
};

}  // namespace ceresa

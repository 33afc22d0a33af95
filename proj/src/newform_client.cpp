#include "ceresa/newform_client.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <httplib.h>

#include "ceresa/arith.hpp"
#include "ceresa/errors.hpp"

#ifndef CERESA_FIXTURES_DIR
#define CERESA_FIXTURES_DIR "data/newforms"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace ceresa {

namespace {

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataUnavailable("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void sort_by_label(std::vector<NewformRecord>& v) {
  std::sort(v.begin(), v.end(),
            [](const NewformRecord& a, const NewformRecord& b) { return a.label < b.label; });
}

std::int64_t int_field(const json& rec, const char* key, long index) {
  if (!rec.contains(key)) throw ParseError(std::string("record lacks '") + key + "'", index);
  const auto& v = rec.at(key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field '") + key + "' is not an integer", index);
  return v.get<std::int64_t>();
}

void check_record(const NewformRecord& r, std::int64_t level, long index) {
  if (r.level != level)
    throw ParseError("record level " + std::to_string(r.level) + " in a level " +
                         std::to_string(level) + " response",
                     index);
  if (r.weight != 2) throw ParseError("weight " + std::to_string(r.weight) + " != 2", index);
  if (r.label.empty()) throw ParseError("empty label", index);
  if (r.fricke_sign != 1 && r.fricke_sign != -1)
    throw ParseError("Fricke sign must be +1 or -1", index);
  if (r.analytic_rank < 0) throw ParseError("negative analytic rank", index);
  if (r.dim < 1) throw ParseError("dimension must be positive", index);
  // root number (-1)^rank
  if ((r.analytic_rank % 2 == 1) != (r.fricke_sign == -1))
    throw ParseError("analytic rank " + std::to_string(r.analytic_rank) +
                         " has the wrong parity for sign " + std::to_string(r.fricke_sign),
                     index);
}

const json& record_array(const json& payload) {
  if (payload.is_array()) return payload;
  if (payload.is_object() && payload.contains("data") && payload.at("data").is_array())
    return payload.at("data");
  throw ParseError("payload is neither an array nor an object with a 'data' array", -1);
}

struct Endpoint {
  std::string scheme_host_port;
  std::string path;
};

Endpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw InvalidArgument("base_url lacks a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::atomic<unsigned long> temp_counter{0};

}  // namespace

std::string to_string(DataSource s) {
  switch (s) {
    case DataSource::Online: return "online";
    case DataSource::Cache: return "cache";
    case DataSource::Fixture: return "fixture";
  }
  return "?";
}

std::string to_string(FetchMode m) { return m == FetchMode::Online ? "online" : "offline"; }

std::string default_fixtures_dir() { return CERESA_FIXTURES_DIR; }

ClientConfig ClientConfig::load(const std::optional<std::string>& path) {
  ClientConfig c;
  c.fixtures_dir = default_fixtures_dir();
  if (path) {
    json doc;
    try {
      doc = json::parse(read_file(*path));
    } catch (const json::exception& e) {
      throw InvalidArgument("config " + *path + ": " + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("config " + *path + " is not a JSON object");
    try {
      if (doc.contains("base_url")) c.base_url = doc.at("base_url").get<std::string>();
      if (doc.contains("cache_dir")) c.cache_dir = doc.at("cache_dir").get<std::string>();
      if (doc.contains("fixtures_dir")) c.fixtures_dir = doc.at("fixtures_dir").get<std::string>();
      if (doc.contains("timeout_ms")) c.timeout_ms = doc.at("timeout_ms").get<int>();
      if (doc.contains("rate_limit_rps")) c.rate_limit_rps = doc.at("rate_limit_rps").get<double>();
    } catch (const json::exception& e) {
      throw InvalidArgument("config " + *path + ": " + e.what());
    }
  }
  c.apply_env();
  if (c.timeout_ms <= 0) throw InvalidArgument("timeout_ms must be positive");
  if (!(c.rate_limit_rps > 0)) throw InvalidArgument("rate_limit_rps must be positive");
  return c;
}

void ClientConfig::apply_env() {
  if (auto v = env("CERESA_BASE_URL")) base_url = *v;
  if (auto v = env("CERESA_CACHE_DIR")) cache_dir = *v;
  if (auto v = env("CERESA_FIXTURES_DIR")) fixtures_dir = *v;
  if (auto v = env("CERESA_TIMEOUT_MS")) {
    try {
      timeout_ms = std::stoi(*v);
    } catch (const std::exception&) {
      throw InvalidArgument("CERESA_TIMEOUT_MS is not an integer: " + *v);
    }
  }
}

std::vector<NewformRecord> normalize_payload(const json& payload, std::int64_t level,
                                             DataSource source) {
  const json& arr = record_array(payload);
  std::vector<NewformRecord> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const long idx = static_cast<long>(i);
    const json& rec = arr[i];
    if (!rec.is_object()) throw ParseError("record is not an object", idx);
    if (rec.contains("char_orbit_index") && rec.at("char_orbit_index") != 1) continue;
    NewformRecord r;
    if (!rec.contains("label") || !rec.at("label").is_string())
      throw ParseError("record lacks a string 'label'", idx);
    r.label = rec.at("label").get<std::string>();
    r.level = int_field(rec, "level", idx);
    r.weight = static_cast<int>(int_field(rec, "weight", idx));
    r.dim = rec.contains("dim") ? int_field(rec, "dim", idx) : 1;
    const auto eig = int_field(rec, "fricke_eigenval", idx);
    if (eig != 1 && eig != -1) throw ParseError("fricke_eigenval must be +1 or -1", idx);
    r.fricke_sign = static_cast<int>(-eig);
    r.analytic_rank = static_cast<int>(int_field(rec, "analytic_rank", idx));
    r.source = source;
    check_record(r, level, idx);
    out.push_back(std::move(r));
  }
  sort_by_label(out);
  return out;
}

json to_json(const NewformRecord& r) {
  return json{{"level", r.level},
              {"label", r.label},
              {"weight", r.weight},
              {"dim", r.dim},
              {"fricke_sign", r.fricke_sign},
              {"fricke_eigenvalue", -r.fricke_sign},
              {"analytic_rank", r.analytic_rank}};
}

json to_document(std::int64_t level, const std::vector<NewformRecord>& records) {
  auto sorted = records;
  sort_by_label(sorted);
  json recs = json::array();
  for (const auto& r : sorted) recs.push_back(to_json(r));
  return json{{"schema_version", kCacheSchemaVersion}, {"level", level}, {"records", recs}};
}

std::vector<NewformRecord> from_document(const json& doc, std::int64_t level, DataSource source) {
  if (!doc.is_object() || !doc.contains("schema_version") || !doc.contains("records") ||
      !doc.at("records").is_array())
    throw ParseError("not a newform document", -1);
  if (doc.at("schema_version") != kCacheSchemaVersion)
    throw ParseError("unsupported schema_version " + doc.at("schema_version").dump(), -1);
  if (doc.contains("level") && doc.at("level") != level)
    throw ParseError("document is for level " + doc.at("level").dump(), -1);
  std::vector<NewformRecord> out;
  const auto& arr = doc.at("records");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const long idx = static_cast<long>(i);
    const json& rec = arr[i];
    if (!rec.is_object() || !rec.contains("label") || !rec.at("label").is_string())
      throw ParseError("stored record lacks a label", idx);
    NewformRecord r;
    r.label = rec.at("label").get<std::string>();
    r.level = int_field(rec, "level", idx);
    r.weight = static_cast<int>(int_field(rec, "weight", idx));
    r.dim = rec.contains("dim") ? int_field(rec, "dim", idx) : 1;
    r.fricke_sign = static_cast<int>(int_field(rec, "fricke_sign", idx));
    r.analytic_rank = static_cast<int>(int_field(rec, "analytic_rank", idx));
    r.source = source;
    check_record(r, level, idx);
    out.push_back(std::move(r));
  }
  sort_by_label(out);
  return out;
}

RateLimiter::RateLimiter(double rps)
    : interval_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(1.0 / rps))),
      next_(std::chrono::steady_clock::now()) {}

void RateLimiter::acquire() {
  std::unique_lock lock(mu_);
  const auto now = std::chrono::steady_clock::now();
  const auto slot = std::max(now, next_);
  next_ = slot + interval_;
  // holding the lock keeps admissions in arrival order
  std::this_thread::sleep_until(slot);
}

NewformClient::NewformClient(ClientConfig cfg)
    : cfg_(std::move(cfg)), limiter_(cfg_.rate_limit_rps) {}

std::string NewformClient::cache_path(std::int64_t level) const {
  return (fs::path(cfg_.cache_dir) / "newforms" / ("level_" + std::to_string(level) + ".json"))
      .string();
}

std::string NewformClient::fixture_path(std::int64_t level) const {
  return (fs::path(cfg_.fixtures_dir) / ("level_" + std::to_string(level) + ".json")).string();
}

std::size_t NewformClient::requests_sent() const {
  std::lock_guard lock(mu_);
  return requests_;
}

std::vector<NewformRecord> NewformClient::fetch_newforms(std::int64_t level, FetchMode mode) {
  if (level < 1) throw InvalidArgument("level must be >= 1");
  if (mode == FetchMode::Online) return fetch_online(level);
  if (auto cached = read_cache(level)) return *cached;
  const fs::path fixture = fixture_path(level);
  if (!fs::exists(fixture))
    throw DataUnavailable("no cached or fixture newform data for level " + std::to_string(level));
  json doc;
  try {
    doc = json::parse(read_file(fixture));
  } catch (const json::parse_error& e) {
    throw ParseError(fixture.string() + ": " + e.what(), -1);
  }
  return from_document(doc, level, DataSource::Fixture);
}

std::vector<NewformRecord> NewformClient::fetch_online(std::int64_t level) {
  std::promise<std::vector<NewformRecord>> promise;
  std::shared_future<std::vector<NewformRecord>> fut;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto it = in_flight_.find(level);
    if (it != in_flight_.end()) {
      fut = it->second;
    } else {
      fut = promise.get_future().share();
      in_flight_.emplace(level, fut);
      owner = true;
    }
  }
  if (owner) {
    try {
      auto records = http_get(level);
      write_cache(level, records);
      promise.set_value(std::move(records));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
    std::lock_guard lock(mu_);
    in_flight_.erase(level);
  }
  return fut.get();
}

std::vector<NewformRecord> NewformClient::http_get(std::int64_t level) {
  const auto ep = split_url(cfg_.base_url);
  httplib::Client cli(ep.scheme_host_port);
  const auto sec = cfg_.timeout_ms / 1000;
  const auto usec = (cfg_.timeout_ms % 1000) * 1000;
  cli.set_connection_timeout(sec, usec);
  cli.set_read_timeout(sec, usec);
  cli.set_write_timeout(sec, usec);
  cli.set_follow_location(true);
  const httplib::Params params{
      {"level", std::to_string(level)}, {"weight", "2"}, {"_format", "json"}};
  limiter_.acquire();
  {
    std::lock_guard lock(mu_);
    ++requests_;
  }
  auto res = cli.Get(ep.path, params, httplib::Headers{{"Accept", "application/json"}});
  if (!res)
    throw TransientError("newform request for level " + std::to_string(level) +
                         " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw TransientError("newform request for level " + std::to_string(level) + " returned HTTP " +
                         std::to_string(res->status));
  json payload;
  try {
    payload = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("response is not JSON: ") + e.what(), -1);
  }
  return normalize_payload(payload, level, DataSource::Online);
}

std::optional<std::vector<NewformRecord>> NewformClient::read_cache(std::int64_t level) {
  const fs::path p = cache_path(level);
  std::error_code ec;
  if (!fs::exists(p, ec)) return std::nullopt;
  try {
    return from_document(json::parse(read_file(p)), level, DataSource::Cache);
  } catch (const json::exception&) {
  } catch (const ParseError&) {
  }
  // quarantine rather than delete, so the bad file can be inspected
  const auto stamp = std::chrono::system_clock::now().time_since_epoch().count();
  fs::path q = p;
  q += ".corrupt-" + std::to_string(stamp);
  fs::rename(p, q, ec);
  return std::nullopt;
}

void NewformClient::write_cache(std::int64_t level, const std::vector<NewformRecord>& records) {
  const fs::path p = cache_path(level);
  fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(temp_counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << to_document(level, records).dump(2) << '\n';
    if (!out) throw Error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, p);
}

WitnessScan NewformClient::witness_minus_rank1(const std::vector<std::int64_t>& levels,
                                               FetchMode mode) {
  WitnessScan scan;
  for (auto M : levels) {
    std::vector<NewformRecord> records;
    try {
      records = fetch_newforms(M, mode);
    } catch (const DataUnavailable&) {
      scan.unavailable_levels.push_back(M);
      continue;
    } catch (const Error& e) {
      // transient or malformed data: the level stays unchecked
      scan.unavailable_levels.push_back(M);
      scan.errors.push_back("level " + std::to_string(M) + ": " + e.what());
      continue;
    }
    for (const auto& r : records) {
      if (r.fricke_sign == -1 && r.analytic_rank == 1) {
        scan.witness = Witness{M, r};
        return scan;
      }
    }
  }
  return scan;
}

WitnessScan NewformClient::witness_minus_rank1(std::int64_t N, FetchMode mode,
                                               std::int64_t max_level) {
  if (N < 1) throw InvalidArgument("level N must be >= 1");
  std::vector<std::int64_t> levels;
  for (auto d : divisors(N))
    if (d <= max_level) levels.push_back(d);
  return witness_minus_rank1(levels, mode);
}

}  // namespace ceresa

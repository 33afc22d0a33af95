#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "ceresa/errors.hpp"
#include "ceresa/newform_client.hpp"

using namespace ceresa;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto p = fs::temp_directory_path() / ("ceresa-" + tag + "-" + std::to_string(rng()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

ClientConfig fixture_config(const fs::path& cache) {
  ClientConfig c;
  c.fixtures_dir = default_fixtures_dir();
  c.cache_dir = cache.string();
  c.rate_limit_rps = 1000;
  return c;
}

// Database-shaped records for a level (raw W_N eigenvalue, not the sign).
json raw_level(std::int64_t level) {
  if (level == 37)
    return json::array({
        {{"label", "37.2.a.b"}, {"level", 37}, {"weight", 2}, {"dim", 1},
         {"fricke_eigenval", -1}, {"analytic_rank", 0}, {"char_orbit_index", 1}},
        {{"label", "37.2.a.a"}, {"level", 37}, {"weight", 2}, {"dim", 1},
         {"fricke_eigenval", 1}, {"analytic_rank", 1}, {"char_orbit_index", 1}},
        {{"label", "37.2.b.a"}, {"level", 37}, {"weight", 2}, {"dim", 2},
         {"fricke_eigenval", nullptr}, {"analytic_rank", 0}, {"char_orbit_index", 2}},
    });
  return json::array();
}

class FakeDatabase {
 public:
  FakeDatabase() {
    server_.Get("/api/mf_newforms/", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      if (delay_ms_ > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms_));
      if (req.get_param_value("weight") != "2") {
        res.status = 400;
        return;
      }
      const auto level = std::stoll(req.get_param_value("level"));
      if (level == 500) {
        res.status = 503;
        return;
      }
      if (level == 501) {
        res.set_content("{not json", "application/json");
        return;
      }
      if (level == 502) {
        json bad = raw_level(37);
        for (auto& rec : bad) rec["level"] = 502;
        bad[1]["analytic_rank"] = 2;  // even rank with root number -1
        res.set_content(bad.dump(), "application/json");
        return;
      }
      json body = raw_level(level);
      if (wrap_) body = json{{"data", body}};
      res.set_content(body.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeDatabase() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/api/mf_newforms/"; }
  int hits() const { return hits_; }
  void set_delay(int ms) { delay_ms_ = ms; }
  void set_wrap(bool w) { wrap_ = w; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  std::atomic<int> delay_ms_{0};
  std::atomic<bool> wrap_{false};
};

}  // namespace

TEST_CASE("offline fixtures") {
  NewformClient client(fixture_config(scratch_dir("fx")));
  const auto r37 = client.fetch_newforms(37, FetchMode::Offline);
  int minus_rank1 = 0;
  for (const auto& r : r37) {
    CHECK(r.source == DataSource::Fixture);
    CHECK(r.weight == 2);
    minus_rank1 += (r.fricke_sign == -1 && r.analytic_rank == 1);
  }
  CHECK(minus_rank1 == 1);
  CHECK(client.fetch_newforms(1, FetchMode::Offline).empty());
  bool found = false;
  for (const auto& r : client.fetch_newforms(128, FetchMode::Offline))
    found = found || (r.fricke_sign == -1 && r.analytic_rank == 1);
  CHECK(found);
  CHECK_THROWS_AS(client.fetch_newforms(100000, FetchMode::Offline), DataUnavailable);
  CHECK_THROWS_AS(client.fetch_newforms(0, FetchMode::Offline), InvalidArgument);
}

TEST_CASE("fixtures cover the key levels and are sorted by label") {
  NewformClient client(fixture_config(scratch_dir("fx")));
  for (std::int64_t M : {37, 43, 53, 61, 67, 79, 83, 89, 101, 131, 125, 128, 243, 343}) {
    const auto recs = client.fetch_newforms(M, FetchMode::Offline);
    INFO("M = " << M);
    CHECK(std::is_sorted(recs.begin(), recs.end(),
                         [](const auto& a, const auto& b) { return a.label < b.label; }));
    const auto scan = client.witness_minus_rank1(std::vector<std::int64_t>{M}, FetchMode::Offline);
    REQUIRE(scan.witness);
    CHECK(scan.witness->level == M);
  }
}

TEST_CASE("witness scan over divisors") {
  NewformClient client(fixture_config(scratch_dir("fx")));
  const auto w74 = client.witness_minus_rank1(74, FetchMode::Offline);
  REQUIRE(w74.witness);
  CHECK(w74.witness->level == 37);
  CHECK(w74.witness->record.label == "37.2.a.a");
  const auto w6 = client.witness_minus_rank1(6, FetchMode::Offline);
  CHECK_FALSE(w6.witness);
  CHECK_FALSE(w6.indeterminate());
  const auto big = client.witness_minus_rank1(37 * 128, FetchMode::Offline);
  REQUIRE(big.witness);
  CHECK(big.witness->level == 37);
  // 1000003 is past the fixtures: level 1 is checked, the rest is unknown
  const auto far = client.witness_minus_rank1(1000003, FetchMode::Offline, 2000000);
  CHECK_FALSE(far.witness);
  CHECK(far.indeterminate());
  CHECK(far.unavailable_levels == std::vector<std::int64_t>{1000003});
}

TEST_CASE("normalizer") {
  const auto recs = normalize_payload(raw_level(37), 37, DataSource::Online);
  REQUIRE(recs.size() == 2);  // nontrivial character dropped
  CHECK(recs[0].label == "37.2.a.a");
  CHECK(recs[0].fricke_sign == -1);  // W_N eigenvalue +1 means root number -1
  CHECK(recs[0].analytic_rank == 1);
  CHECK(recs[1].fricke_sign == 1);
  CHECK(normalize_payload(json{{"data", raw_level(37)}}, 37, DataSource::Online) == recs);

  json missing = raw_level(37);
  missing[1].erase("analytic_rank");
  try {
    normalize_payload(missing, 37, DataSource::Online);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.index() == 1);
  }
  json wrong_level = raw_level(37);
  wrong_level[0]["level"] = 38;
  CHECK_THROWS_AS(normalize_payload(wrong_level, 37, DataSource::Online), ParseError);
  json weight4 = raw_level(37);
  weight4[0]["weight"] = 4;
  CHECK_THROWS_AS(normalize_payload(weight4, 37, DataSource::Online), ParseError);
  try {
    normalize_payload(json{{"rows", 1}}, 37, DataSource::Online);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.index() == -1);
  }
}

TEST_CASE("stored documents round trip") {
  const auto recs = normalize_payload(raw_level(37), 37, DataSource::Online);
  const auto doc = to_document(37, recs);
  CHECK(doc["schema_version"] == kCacheSchemaVersion);
  auto back = from_document(doc, 37, DataSource::Online);
  CHECK(back == recs);
  json bad = doc;
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(from_document(bad, 37, DataSource::Cache), ParseError);
}

TEST_CASE("online fetch writes the cache; offline then reads it") {
  FakeDatabase db;
  const auto cache = scratch_dir("cache");
  auto cfg = fixture_config(cache);
  cfg.base_url = db.url();
  cfg.fixtures_dir = (cache / "no-fixtures").string();
  NewformClient client(cfg);

  const auto online = client.fetch_newforms(37, FetchMode::Online);
  REQUIRE(online.size() == 2);
  CHECK(online[0].source == DataSource::Online);
  CHECK(online[0].fricke_sign == -1);
  CHECK(db.hits() == 1);
  const fs::path file = client.cache_path(37);
  CHECK(file == cache / "newforms" / "level_37.json");
  REQUIRE(fs::exists(file));
  const auto first = slurp(file);

  const auto cached = client.fetch_newforms(37, FetchMode::Offline);
  REQUIRE(cached.size() == 2);
  CHECK(cached[0].source == DataSource::Cache);
  CHECK(cached[0].label == online[0].label);
  CHECK(db.hits() == 1);

  client.fetch_newforms(37, FetchMode::Online);
  CHECK(slurp(file) == first);  // byte-stable
  CHECK(json::parse(first)["schema_version"] == 1);

  db.set_wrap(true);
  CHECK(client.fetch_newforms(37, FetchMode::Online).size() == 2);
}

TEST_CASE("online failures are typed") {
  FakeDatabase db;
  auto cfg = fixture_config(scratch_dir("cache"));
  cfg.base_url = db.url();
  NewformClient client(cfg);
  CHECK_THROWS_AS(client.fetch_newforms(500, FetchMode::Online), TransientError);
  CHECK_THROWS_AS(client.fetch_newforms(501, FetchMode::Online), ParseError);
  try {
    client.fetch_newforms(502, FetchMode::Online);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.index() == 1);
  }

  auto dead = cfg;
  {
    httplib::Server s;
    const int port = s.bind_to_any_port("127.0.0.1");
    dead.base_url = "http://127.0.0.1:" + std::to_string(port) + "/api/";
  }  // closed again: nothing listens there
  dead.timeout_ms = 500;
  NewformClient offline_db(dead);
  CHECK_THROWS_AS(offline_db.fetch_newforms(37, FetchMode::Online), TransientError);
  // the certifier-facing scan records the failure instead of throwing
  const auto scan = offline_db.witness_minus_rank1(std::vector<std::int64_t>{37}, FetchMode::Online);
  CHECK(scan.indeterminate());
  CHECK(scan.errors.size() == 1);
}

TEST_CASE("corrupt cache files are quarantined") {
  const auto cache = scratch_dir("cache");
  NewformClient client(fixture_config(cache));
  const fs::path file = client.cache_path(37);
  fs::create_directories(file.parent_path());
  std::ofstream(file) << "{ truncated";
  const auto recs = client.fetch_newforms(37, FetchMode::Offline);
  CHECK(recs[0].source == DataSource::Fixture);
  CHECK_FALSE(fs::exists(file));
  int quarantined = 0;
  for (const auto& e : fs::directory_iterator(file.parent_path()))
    quarantined += e.path().filename().string().rfind("level_37.json.corrupt-", 0) == 0;
  CHECK(quarantined == 1);
}

TEST_CASE("rate limiter spaces admissions") {
  RateLimiter limiter(20);
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) threads.emplace_back([&] { limiter.acquire(); });
  for (auto& t : threads) t.join();
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(elapsed >= std::chrono::milliseconds(245));  // 5 gaps of 50 ms
}

TEST_CASE("online requests honour the configured rate") {
  FakeDatabase db;
  auto cfg = fixture_config(scratch_dir("cache"));
  cfg.base_url = db.url();
  cfg.rate_limit_rps = 10;
  NewformClient client(cfg);
  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t level : {1, 2, 3, 4}) client.fetch_newforms(level, FetchMode::Online);
  CHECK(std::chrono::steady_clock::now() - start >= std::chrono::milliseconds(295));
  CHECK(client.requests_sent() == 4);
}

TEST_CASE("concurrent requests for one level are deduplicated") {
  FakeDatabase db;
  db.set_delay(300);
  auto cfg = fixture_config(scratch_dir("cache"));
  cfg.base_url = db.url();
  NewformClient client(cfg);
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < 8; ++i)
    threads.emplace_back([&] {
      if (client.fetch_newforms(37, FetchMode::Online).size() == 2) ++ok;
    });
  for (auto& t : threads) t.join();
  CHECK(ok == 8);
  CHECK(db.hits() == 1);
  CHECK(client.requests_sent() == 1);
}

TEST_CASE("config file and environment overrides") {
  const auto dir = scratch_dir("cfg");
  const auto path = (dir / "ceresa.json").string();
  std::ofstream(path) << R"({"base_url": "http://example.invalid/api/", "cache_dir": "c1",
                              "timeout_ms": 1234, "rate_limit_rps": 3.5})";
  auto c = ClientConfig::load(path);
  CHECK(c.base_url == "http://example.invalid/api/");
  CHECK(c.cache_dir == "c1");
  CHECK(c.timeout_ms == 1234);
  CHECK(c.rate_limit_rps == 3.5);
  ::setenv("CERESA_BASE_URL", "http://127.0.0.1:9/x/", 1);
  ::setenv("CERESA_CACHE_DIR", "c2", 1);
  ::setenv("CERESA_TIMEOUT_MS", "77", 1);
  c = ClientConfig::load(path);
  CHECK(c.base_url == "http://127.0.0.1:9/x/");
  CHECK(c.cache_dir == "c2");
  CHECK(c.timeout_ms == 77);
  ::setenv("CERESA_TIMEOUT_MS", "soon", 1);
  CHECK_THROWS_AS(ClientConfig::load(path), InvalidArgument);
  ::unsetenv("CERESA_BASE_URL");
  ::unsetenv("CERESA_CACHE_DIR");
  ::unsetenv("CERESA_TIMEOUT_MS");
  std::ofstream(path) << "[1, 2]";
  CHECK_THROWS_AS(ClientConfig::load(path), InvalidArgument);
}

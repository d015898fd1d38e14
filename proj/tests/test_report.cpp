#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aromatica/errors.hpp"
#include "aromatica/report.hpp"

using namespace aromatica;

namespace {

using Env = std::map<std::string, std::string>;

std::function<std::optional<std::string>(const std::string&)> env_of(Env env) {
  return [env = std::move(env)](const std::string& k) -> std::optional<std::string> {
    auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("aromatica-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("config file parsing") {
  auto kv = parse_config_text("# comment\nmax_n = 4\n\n  seed=7  # trailing\ncap.bseries = 5\n");
  CHECK(kv.at("max_n") == "4");
  CHECK(kv.at("seed") == "7");
  CHECK(kv.at("cap.bseries") == "5");
  CHECK_THROWS_AS(parse_config_text("no equals sign\n"), UsageError);
}

TEST_CASE("config precedence: cli over environment over file over defaults") {
  const std::string file = "max_n = 2\nseed = 3\nparallel = true\n";
  Config defaults = resolve_config({}, env_of({}), "");
  CHECK_FALSE(defaults.max_n.has_value());
  CHECK(defaults.seed == 20240607u);
  CHECK_FALSE(defaults.parallel);

  Config from_file = resolve_config({}, env_of({}), file);
  CHECK(from_file.max_n == 2);
  CHECK(from_file.seed == 3u);
  CHECK(from_file.parallel);

  Config from_env = resolve_config({}, env_of({{"AFL_MAX_N", "3"}, {"AFL_CAP_BSERIES", "6"}}), file);
  CHECK(from_env.max_n == 3);
  CHECK(from_env.seed == 3u);
  CHECK(from_env.caps.at("bseries") == 6);

  Config from_cli = resolve_config({{"max_n", "4"}}, env_of({{"AFL_MAX_N", "3"}}), file);
  CHECK(from_cli.max_n == 4);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(resolve_config({}, env_of({}), "frobnicate = 1\n"), UsageError);
  CHECK_THROWS_AS(resolve_config({{"max_n", "four"}}, env_of({}), ""), UsageError);
  CHECK_THROWS_AS(resolve_config({{"parallel", "maybe"}}, env_of({}), ""), UsageError);
}

TEST_CASE("suite limits") {
  CHECK(suite_names().size() == suite_limits().size());
  for (auto& [name, lim] : suite_limits()) CHECK(lim.default_n <= lim.cap);
  Config c;
  CHECK_THROWS_AS(run_suite("nonsense", c), UsageError);
  c.max_n = 99;
  CHECK_THROWS_AS(run_suite("dimensions", c), UsageError);
  c.max_n = 0;
  CHECK_THROWS_AS(run_suite("identities", c), UsageError);
}

TEST_CASE("report JSON") {
  Config c;
  c.max_n = 3;
  VerificationReport r = run_suite("ce-homology", c);
  CHECK(r.all_pass());
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "ce-homology");
  REQUIRE(j["checks"].is_array());
  CHECK(j["checks"].size() == r.checks.size());
  for (auto& check : j["checks"]) {
    CHECK(check.contains("claim"));
    CHECK(check.contains("anchor"));
    CHECK(check.contains("expected"));
    CHECK(check.contains("computed"));
    CHECK(check["pass"] == true);
  }
  std::ostringstream table;
  r.print_table(table);
  CHECK(table.str().find("PASS") != std::string::npos);
}

TEST_CASE("parallel and serial runs agree") {
  Config c;
  c.max_n = 3;
  VerificationReport serial = run_suite("graph-complex", c);
  c.parallel = true;
  VerificationReport parallel = run_suite("graph-complex", c);
  REQUIRE(serial.checks.size() == parallel.checks.size());
  for (std::size_t i = 0; i < serial.checks.size(); ++i) {
    CHECK(serial.checks[i].claim == parallel.checks[i].claim);
    CHECK(serial.checks[i].computed == parallel.checks[i].computed);
  }
}

TEST_CASE("basis cache: build, hit, corruption, version") {
  auto dir = fresh_dir("cache");
  std::ostringstream warnings;
  BasisCache cache(dir, &warnings);

  auto first = cache.get_or_build("trees", 3, "all");
  CHECK(first.outcome == BasisCache::Outcome::Built);
  CHECK(first.keys.size() == 9);
  auto second = cache.get_or_build("trees", 3, "all");
  CHECK(second.outcome == BasisCache::Outcome::Hit);
  CHECK(second.keys == first.keys);
  CHECK(warnings.str().empty());

  // flip one body byte: checksum mismatch forces a rebuild with a warning
  auto path = cache.path_for("trees", 3, "all");
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-3, std::ios::end);
    f.put('9');
  }
  auto third = cache.get_or_build("trees", 3, "all");
  CHECK(third.outcome == BasisCache::Outcome::Rebuilt);
  CHECK(third.keys == first.keys);
  CHECK(warnings.str().find("corrupt") != std::string::npos);

  // an older format version is treated the same way
  std::string content;
  {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    content = s.str();
  }
  content.replace(content.find("aromatica-basis 1"), 17, "aromatica-basis 0");
  {
    std::ofstream out(path, std::ios::trunc);
    out << content;
  }
  CHECK(cache.get_or_build("trees", 3, "all").outcome == BasisCache::Outcome::Rebuilt);

  // truncated file
  {
    std::ofstream out(path, std::ios::trunc);
    out << "aromatica-basis 1\n";
  }
  CHECK(cache.get_or_build("trees", 3, "all").outcome == BasisCache::Outcome::Rebuilt);

  // distinct parameters map to distinct files
  CHECK(cache.path_for("aromas", 3, "all") != cache.path_for("aromas", 3, "cycle>=2"));
  CHECK(cache.get_or_build("aromas", 3, "cycle>=2").keys.size() < cache.get_or_build("aromas", 3, "all").keys.size());
  CHECK_THROWS_AS(BasisCache::build("hedgehogs", 2, "all"), UsageError);
  CHECK_THROWS_AS(BasisCache::build("trees", 2, "cycle>=7"), UsageError);
  std::filesystem::remove_all(dir);
}

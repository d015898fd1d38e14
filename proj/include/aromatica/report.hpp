#pragma once

// Verification suites, their reports, configuration resolution and the
// on-disk basis cache used by the command-line tool.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace aromatica {

struct Check {
  std::string claim;   // short identifier, e.g. "rt-count"
  std::string anchor;  // the statement being checked, or "plumbing"
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string expected;
  std::string computed;
  bool pass = false;
  double seconds = 0;
};

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;

  bool all_pass() const;
  std::string to_json() const;  // carries "schema": 1
  void print_table(std::ostream& os) const;
};

struct Config {
  std::optional<int> max_n;  // unset: each suite uses its default size
  std::uint32_t seed = 20240607;
  bool parallel = false;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> dump_dir;
  std::map<std::string, int> caps;  // suite -> largest allowed size
};

/// Default and maximum size per suite.
struct SuiteLimits {
  int default_n;
  int cap;
};
const std::map<std::string, SuiteLimits>& suite_limits();
std::vector<std::string> suite_names();  // excluding "all"

/// Layers settings: CLI > environment (AFL_*) > config file > defaults.
/// `cli` and `file` hold key=value pairs; `getenv` looks up environment names.
Config resolve_config(const std::map<std::string, std::string>& cli,
                      const std::function<std::optional<std::string>(const std::string&)>& getenv,
                      const std::string& config_file_text);

/// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Throws UsageError for unknown suites or sizes above the cap. For "all",
/// every suite is clamped to its own cap.
VerificationReport run_suite(const std::string& name, const Config& config);

// ---------------------------------------------------------------------------
// Basis cache
//
// One text file per (kind, n, variant): a header with a format version and a
// checksum of the body, then one serialized basis element per line.

class BasisCache {
 public:
  static constexpr int kFormatVersion = 1;

  explicit BasisCache(std::filesystem::path dir, std::ostream* warnings = nullptr);

  enum class Outcome { Hit, Built, Rebuilt };
  struct Result {
    std::vector<std::string> keys;
    Outcome outcome;
  };

  /// kind: trees | aromas | forests | unlabelled-trees | unlabelled-aromas.
  /// variant: "all" or "cycle>=2".
  Result get_or_build(const std::string& kind, int n, const std::string& variant);
  std::filesystem::path path_for(const std::string& kind, int n, const std::string& variant) const;

  static std::vector<std::string> build(const std::string& kind, int n, const std::string& variant);

 private:
  std::filesystem::path dir_;
  std::ostream* warnings_;
};

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace aromatica

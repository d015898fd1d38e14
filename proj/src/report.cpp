#include "aromatica/report.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aromatica/bseries.hpp"
#include "aromatica/complexes.hpp"
#include "aromatica/operad.hpp"
#include "aromatica/properties.hpp"

namespace aromatica {

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["pass"] = all_pass();
  j["checks"] = nlohmann::json::array();
  for (auto& c : checks) {
    nlohmann::json params = nlohmann::json::object();
    for (auto& [k, v] : c.parameters) params[k] = v;
    j["checks"].push_back({{"claim", c.claim},
                           {"anchor", c.anchor},
                           {"parameters", params},
                           {"expected", c.expected},
                           {"computed", c.computed},
                           {"pass", c.pass},
                           {"wall_time_s", c.seconds}});
  }
  return j.dump(2);
}

void VerificationReport::print_table(std::ostream& os) const {
  os << "suite " << suite << "\n";
  for (auto& c : checks) {
    std::string params;
    for (auto& [k, v] : c.parameters) params += (params.empty() ? "" : " ") + k + "=" + v;
    os << (c.pass ? "  PASS " : "  FAIL ") << std::left << std::setw(26) << c.claim << std::setw(12) << params
       << " expected=" << c.expected << " computed=" << c.computed << "  [" << c.anchor << "]"
       << std::fixed << std::setprecision(3) << " " << c.seconds << "s\n";
  }
  os << (all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << " (" << checks.size() << ")\n";
}

const std::map<std::string, SuiteLimits>& suite_limits() {
  static const std::map<std::string, SuiteLimits> limits{
      {"dimensions", {7, 7}}, {"kernels", {6, 6}},       {"embedding", {5, 5}},     {"ce-homology", {4, 5}},
      {"bicomplex", {4, 4}},  {"graph-complex", {5, 6}}, {"bseries", {4, 5}},       {"characters", {4, 5}},
      {"identities", {4, 6}}, {"properties", {5, 6}},
  };
  return limits;
}

std::vector<std::string> suite_names() {
  // execution order of "all"
  return {"dimensions", "kernels",    "embedding", "ce-homology", "bicomplex",
          "graph-complex", "bseries", "characters", "identities", "properties"};
}

// ---------------------------------------------------------------------------
// Configuration

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace {

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw UsageError("setting " + key + " expects an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw UsageError("setting " + key + " expects a boolean, got '" + value + "'");
}

std::string env_name(const std::string& key) {
  std::string out = "AFL_";
  for (char c : key) out += (c == '-' || c == '.') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

Config resolve_config(const std::map<std::string, std::string>& cli,
                      const std::function<std::optional<std::string>(const std::string&)>& getenv,
                      const std::string& config_file_text) {
  const auto file = parse_config_text(config_file_text);
  std::vector<std::string> keys{"max_n", "seed", "parallel", "cache_dir", "dump_dir"};
  for (auto& name : suite_names()) keys.push_back("cap." + name);

  auto lookup = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = cli.find(key); it != cli.end()) return it->second;
    if (getenv)
      if (auto v = getenv(env_name(key))) return v;
    if (auto it = file.find(key); it != file.end()) return it->second;
    return std::nullopt;
  };
  for (auto& [k, v] : file)
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw UsageError("unknown config key: " + k);

  Config c;
  if (auto v = lookup("max_n")) c.max_n = parse_int("max_n", *v);
  if (auto v = lookup("seed")) c.seed = static_cast<std::uint32_t>(parse_int("seed", *v));
  if (auto v = lookup("parallel")) c.parallel = parse_bool("parallel", *v);
  if (auto v = lookup("cache_dir")) c.cache_dir = *v;
  if (auto v = lookup("dump_dir")) c.dump_dir = *v;
  for (auto& name : suite_names())
    if (auto v = lookup("cap." + name)) c.caps[name] = parse_int("cap." + name, *v);
  return c;
}

// ---------------------------------------------------------------------------
// Suites

namespace {

using Task = std::function<Check()>;
using Clock = std::chrono::steady_clock;

std::string str(const Integer& x) { return x.get_str(); }
std::string str(std::size_t x) { return std::to_string(x); }
std::string str(bool x) { return x ? "true" : "false"; }

Check check(std::string claim, std::string anchor, std::vector<std::pair<std::string, std::string>> params,
            std::string expected, std::string computed) {
  Check c{std::move(claim), std::move(anchor), std::move(params), std::move(expected), std::move(computed), false, 0};
  c.pass = c.expected == c.computed;
  return c;
}

Task timed(std::function<Check()> body) {
  return [body = std::move(body)] {
    auto t0 = Clock::now();
    Check c = body();
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return c;
  };
}

Integer ipow(long base, unsigned long e) {
  Integer r;
  mpz_class b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Integer factorial(int n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::vector<std::pair<std::string, std::string>> at_n(int n) { return {{"n", std::to_string(n)}}; }

// connected endofunctions: sum_k n^(n-k) (n-1)!/(n-k)!
Integer connected_endofunctions(int n) {
  Integer s = 0;
  for (int k = 1; k <= n; ++k) s += ipow(n, static_cast<unsigned long>(n - k)) * factorial(n - 1) / factorial(n - k);
  return s;
}

std::vector<Task> dimension_tasks(int max_n, const Config& config) {
  std::vector<Task> tasks;
  for (int n = 1; n <= max_n; ++n) {
    tasks.push_back(timed([n, config] {
      std::size_t count;
      if (config.cache_dir) {
        count = BasisCache(*config.cache_dir).get_or_build("trees", n, "all").keys.size();
      } else {
        count = enumerate_rooted_trees(n).size();
      }
      return check("rt-count", "|RT(n)| = n^(n-1)", at_n(n), str(ipow(n, static_cast<unsigned long>(n - 1))), str(count));
    }));
  }
  for (int n = 1; n <= std::min(max_n, 6); ++n) {
    tasks.push_back(timed([n] {
      std::set<std::string> codes;
      for (auto& t : enumerate_rooted_trees(n)) codes.insert(tree_code(t));
      return check("unlabelled-tree-count", "unlabelled trees = labelled trees modulo relabelling", at_n(n),
                   str(codes.size()), str(enumerate_unlabelled(UnlabelledKind::Tree, n).size()));
    }));
    tasks.push_back(timed([n] {
      return check("aroma-count", "aromas = connected endofunctions", at_n(n), str(connected_endofunctions(n)),
                   str(enumerate_aromas(n).size()));
    }));
    tasks.push_back(timed([n] {
      return check("forest-count", "aromatic forests = partial endofunctions", at_n(n),
                   str(ipow(n + 1, static_cast<unsigned long>(n))),
                   str(enumerate_aromatic_forests(iota_labels(n)).size()));
    }));
  }
  return tasks;
}

std::vector<Task> kernel_tasks(int max_n) {
  std::vector<Task> tasks;
  for (int n = 1; n <= max_n; ++n) {
    tasks.push_back(timed([n] {
      return check("div-rank", "Div is injective on RT(n)", at_n(n), str(ipow(n, static_cast<unsigned long>(n - 1))),
                   str(rank(divergence_matrix(n, false))));
    }));
    tasks.push_back(timed([n] {
      SparseMatrix d0 = divergence_matrix(n, true);
      const std::size_t kernel_dim = d0.cols() - rank(d0);
      auto lie = lie_basis(n);
      BasisIndex<RootedTree> trees(enumerate_rooted_trees(n));
      EchelonSpace span;
      bool in_kernel = true;
      for (auto& x : lie) {
        span.insert(coordinates(x, trees));
        in_kernel = in_kernel && div0(x).is_zero();
      }
      // Lie inside the kernel and of the same dimension: the two coincide.
      bool equal = in_kernel && span.dim() == kernel_dim;
      std::string computed = "dim ker=" + str(kernel_dim) + " dim Lie=" + str(span.dim()) + " equal=" + str(equal);
      std::string expected = "dim ker=" + str(factorial(n - 1)) + " dim Lie=" + str(factorial(n - 1)) + " equal=true";
      return check("div0-kernel", "ker Div0 = Lie", at_n(n), expected, computed);
    }));
    tasks.push_back(timed([n] {
      bool both = true;
      for (auto& x : lie_basis(n))
        both = both && is_lie_element(x, LieCriterion::Div0) && is_lie_element(x, LieCriterion::SymDiv0);
      return check("lie-criteria", "Lie elements satisfy both kernel criteria", at_n(n), "true", str(both));
    }));
    if (n >= 2) {
      tasks.push_back(timed([n] {
        SparseMatrix m = unlabelled_div0_matrix(n);
        return check("unlabelled-div0-kernel", "Div0 on unlabelled trees is injective", at_n(n), "0",
                     str(m.cols() - rank(m)));
      }));
    }
  }
  return tasks;
}

AromaComb three_cycle_difference() {
  return AromaComb(Aroma({1, 2, 3}, {2, 3, 1})) - AromaComb(Aroma({1, 2, 3}, {3, 1, 2}));
}

std::vector<Task> embedding_tasks(int max_n) {
  std::vector<Task> tasks;
  for (int n = 1; n <= max_n; ++n) {
    tasks.push_back(timed([n] {
      return check("suboperad-span", "generated suboperad has dim (n+1)^(n-1)", at_n(n),
                   str(ipow(n + 1, static_cast<unsigned long>(n - 1))), str(suboperad_span_dimension(n)));
    }));
  }
  for (int n = 1; n <= std::min(max_n, 4); ++n) {
    tasks.push_back(timed([n] {
      return check("brace-span", "cyclic braces span the same subspace", at_n(n), str(suboperad_span_dimension(n)),
                   str(cyclic_brace_span_dimension(n)));
    }));
  }
  if (max_n >= 3) {
    tasks.push_back(timed([] {
      return check("three-cycle-outside", "3-cycle orientation difference is not generated", at_n(3), "false",
                   str(in_suboperad_span(three_cycle_difference(), 3)));
    }));
  }
  return tasks;
}

std::string dims_text(const std::map<int, std::size_t>& h) {
  std::string s;
  for (auto& [k, d] : h) s += (s.empty() ? "" : ",") + std::to_string(k) + ":" + std::to_string(d);
  return s;
}

std::vector<Task> ce_tasks(int max_n) {
  std::vector<Task> tasks;
  for (int n = 1; n <= max_n; ++n) {
    tasks.push_back(timed([n] {
      auto h = homology_dimensions(build_ce_complex(CEVariant::L, n).complex);
      std::map<int, std::size_t> expected;
      for (int k = 0; k <= n; ++k) expected[k] = 0;
      expected[0] = ipow(n - 1, static_cast<unsigned long>(n)).get_ui();
      return check("ce-L-homology", "H(CE(L)) concentrated in degree 0 with dim (n-1)^n", at_n(n), dims_text(expected),
                   dims_text(h));
    }));
    tasks.push_back(timed([n] {
      auto h = homology_dimensions(build_ce_complex(CEVariant::LTilde, n).complex);
      std::map<int, std::size_t> expected;
      for (int k = 0; k <= n; ++k) expected[k] = 0;
      if (n >= 3) expected[0] = ipow(n - 2, static_cast<unsigned long>(n)).get_ui();
      if (n == 1) expected[1] = 1;
      return check("ce-Ltilde-homology", "H(CE(L~)): (n-2)^n in degree 0, 1 in degree 1 at n=1", at_n(n),
                   dims_text(expected), dims_text(h));
    }));
    tasks.push_back(timed([n] {
      Integer fixed_point_free = 0;
      for (auto& f : enumerate_aromatic_forests(iota_labels(n), 2))
        if (f.trees.empty()) ++fixed_point_free;
      return check("fixed-point-free", "H0(CE(L)) counts endofunctions without fixed points", at_n(n),
                   str(ipow(n - 1, static_cast<unsigned long>(n))), str(fixed_point_free));
    }));
  }
  return tasks;
}

std::vector<Task> bicomplex_tasks(int max_n) {
  std::vector<Task> tasks;
  for (auto variant : {BicomplexVariant::Full, BicomplexVariant::DivergenceFree}) {
    const bool full = variant == BicomplexVariant::Full;
    const std::string tag = full ? "full" : "divergence-free";
    for (int n = 1; n <= max_n; ++n) {
      tasks.push_back(timed([=] {
        Bicomplex b = build_aromatic_bicomplex(variant, n);
        CEComplex ce = build_ce_complex(full ? CEVariant::L : CEVariant::LTilde, n);
        std::vector<std::string> exp, got;
        bool vertical_acyclic = true;
        for (int p = 0; p <= n; ++p)
          for (auto& [k, d] : homology_dimensions(b.vertical(p))) vertical_acyclic = vertical_acyclic && d == 0;
        got.push_back("commute=" + str(b.differentials_commute()));
        exp.push_back("commute=true");
        got.push_back("dV-acyclic=" + str(vertical_acyclic));
        exp.push_back("dV-acyclic=true");
        for (int q = 0; q <= n; ++q) {
          auto h = homology_dimensions(b.horizontal(q));
          std::map<int, std::size_t> e;
          for (int p = 0; p <= n; ++p) e[p] = 0;
          e[0] = expected_bicomplex_homology(ce, 0, q);
          if (!full) e[1] = expected_bicomplex_homology(ce, 1, q);
          got.push_back("q" + std::to_string(q) + "[" + dims_text(h) + "]");
          exp.push_back("q" + std::to_string(q) + "[" + dims_text(e) + "]");
        }
        if (!full) {
          // column 1 is carried by the one-vertex trees, black and white
          std::size_t col1 = 0;
          for (int q = 0; q <= n; ++q) col1 += homology_dimensions(b.horizontal(q))[1];
          got.push_back("col1=" + str(col1));
          exp.push_back("col1=" + std::string(n == 1 ? "2" : "0"));
        }
        auto join = [](const std::vector<std::string>& v) {
          std::string s;
          for (auto& x : v) s += (s.empty() ? "" : " ") + x;
          return s;
        };
        return check("bicomplex-" + tag, "dV acyclic; dH homology = H(CE) o K", at_n(n), join(exp), join(got));
      }));
    }
  }
  return tasks;
}

std::vector<Task> graph_tasks(int max_n) {
  std::vector<Task> tasks;
  for (int n = 1; n <= max_n; ++n) {
    tasks.push_back(timed([n] {
      GraphComplex g = build_graph_complex(GraphVariant::All, n);
      std::size_t total = 0;
      for (auto& [k, d] : homology_dimensions(g.complex)) total += d;
      return check("graphs-all", "graph complex homology is 1-dim at arity one, else 0", at_n(n),
                   "homology=" + std::string(n == 1 ? "1" : "0") + " homotopy=true",
                   "homology=" + str(total) + " homotopy=" + str(graph_homotopy_identity_holds(g)));
    }));
    tasks.push_back(timed([n] {
      GraphComplex g = build_graph_complex(GraphVariant::ConnectedReduced, n);
      std::size_t total = 0;
      for (auto& [k, d] : homology_dimensions(g.complex)) total += d;
      return check("graphs-connected", "connected graph homology = shifted Lie, dim (n-1)!", at_n(n),
                   str(factorial(n - 1)), str(total));
    }));
  }
  return tasks;
}

BSeriesCoefficients supported_on(const std::map<std::string, Rational>& values, int order) {
  BSeriesCoefficients b;
  b.order = order;
  for (int k = 1; k <= order; ++k)
    for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k)) b.value[key.code] = 0;
  for (auto& [code, v] : values) b.value[code] = v;
  return b;
}

std::vector<Task> bseries_tasks(int max_order, std::uint32_t seed) {
  std::vector<Task> tasks;
  for (int k = 1; k <= max_order; ++k) {
    tasks.push_back(timed([k, seed] {
      PolyVectorField f = random_polynomial_field(3, 3, seed);
      std::size_t ok = 0, total = 0;
      for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k)) {
        ++total;
        if (check_divergence_identity(key, f)) ++ok;
      }
      return check("divergence-identity", "Div F(tau) = sum over closings of F(alpha)",
                   {{"order", std::to_string(k)}, {"dim", "3"}, {"seed", std::to_string(seed)}}, str(total), str(ok));
    }));
  }
  constexpr int kObstructionOrder = 6;
  tasks.push_back(timed([] {
    auto obstruction = volume_obstruction(supported_on({{"()", 1}}, kObstructionOrder));
    return check("exact-flow-volume", "the exact flow is volume preserving", {{"order", "6"}}, "0",
                 str(obstruction.size()));
  }));
  tasks.push_back(timed([] {
    // every single-tree perturbation is detected at its own order
    std::size_t detected = 0, total = 0;
    for (int k = 2; k <= kObstructionOrder; ++k) {
      for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k)) {
        ++total;
        auto obstruction = volume_obstruction(supported_on({{"()", 1}, {key.code, 1}}, kObstructionOrder));
        if (!obstruction.empty() && obstruction.begin()->first == k) ++detected;
      }
    }
    return check("only-exact-flow", "no B-series method besides the flow preserves volume", {{"order", "6"}},
                 str(total), str(detected));
  }));
  return tasks;
}

std::vector<Task> character_tasks(int max_n) {
  std::vector<Task> tasks;
  for (int n = 1; n <= max_n; ++n) {
    tasks.push_back(timed([n] {
      std::string exp, got;
      for (auto& row : character_check(n)) {
        std::string type;
        for (int p : row.cycle_type) type += (type.empty() ? "" : "+") + std::to_string(p);
        exp += type + ":" + str(row.formula) + " ";
        got += type + ":" + to_string(row.euler_trace) + (row.match ? "" : "!") + " ";
      }
      return check("character", "character of H(CE(L~)) = prod (-2 + sum d a_d)^(a_k)", at_n(n), exp, got);
    }));
  }
  return tasks;
}

std::vector<Task> identity_tasks(int max_n) {
  std::vector<Task> tasks;
  tasks.push_back(timed([] {
    std::size_t ok = 0;
    for (int n = 1; n <= 20; ++n) ok += abel_identity_holds(n) ? 1 : 0;
    return check("abel-identity", "(n-1)^n = sum C(n,k)(k-2)^k(n+1-k)^(n-1-k)", {{"n", "1..20"}}, "20", str(ok));
  }));
  tasks.push_back(timed([max_n] {
    auto series = euler_characteristic_series(max_n);
    std::string exp, got;
    for (int n = 1; n <= max_n; ++n) {
      exp += str(ipow(n - 2, static_cast<unsigned long>(n))) + " ";
      got += str(series[static_cast<std::size_t>(n - 1)]) + " ";
    }
    return check("euler-characteristic", "Euler characteristic of CE(L~) in arity n is (n-2)^n",
                 {{"n", "1.." + std::to_string(max_n)}}, exp, got);
  }));
  return tasks;
}

std::vector<Task> property_tasks(int max_n) {
  std::vector<std::function<PropertyResult()>> fns{
      check_sequential_associativity, check_parallel_associativity, check_equivariance,
      check_prelie_identity,          check_module_identity,        check_jacobi,
      check_tadpole_cocycle,          [max_n] { return check_cyclic_brace_symmetrization(max_n); }};
  std::vector<Task> tasks;
  for (auto& fn : fns) {
    tasks.push_back(timed([fn] {
      PropertyResult r = fn();
      Check c = check(r.name, "identity holds on all small cases", {{"cases", std::to_string(r.cases)}}, "true",
                      str(r.pass));
      if (!r.pass) c.computed += " (" + r.detail + ")";
      return c;
    }));
  }
  return tasks;
}

std::vector<Task> tasks_for(const std::string& name, int n, const Config& config) {
  if (name == "dimensions") return dimension_tasks(n, config);
  if (name == "kernels") return kernel_tasks(n);
  if (name == "embedding") return embedding_tasks(n);
  if (name == "ce-homology") return ce_tasks(n);
  if (name == "bicomplex") return bicomplex_tasks(n);
  if (name == "graph-complex") return graph_tasks(n);
  if (name == "bseries") return bseries_tasks(n, config.seed);
  if (name == "characters") return character_tasks(n);
  if (name == "identities") return identity_tasks(n);
  if (name == "properties") return property_tasks(n);
  throw UsageError("unknown suite: " + name);
}

int cap_for(const std::string& name, const Config& config) {
  auto it = config.caps.find(name);
  return it != config.caps.end() ? it->second : suite_limits().at(name).cap;
}

std::vector<Check> run_tasks(std::vector<Task> tasks, bool parallel) {
  std::vector<Check> out;
  if (!parallel) {
    for (auto& t : tasks) out.push_back(t());
    return out;
  }
  std::vector<std::future<Check>> futures;
  for (auto& t : tasks) futures.push_back(std::async(std::launch::async, t));
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

VerificationReport run_suite(const std::string& name, const Config& config) {
  if (config.max_n && *config.max_n < 1) throw UsageError("--max-n must be >= 1");
  std::vector<Task> tasks;
  if (name == "all") {
    for (auto& s : suite_names()) {
      int n = config.max_n ? std::min(*config.max_n, cap_for(s, config)) : suite_limits().at(s).default_n;
      auto more = tasks_for(s, n, config);
      for (auto& t : more) {
        tasks.push_back([t, s] {
          Check c = t();
          c.claim = s + "/" + c.claim;
          return c;
        });
      }
    }
  } else {
    auto limits = suite_limits().find(name);
    if (limits == suite_limits().end()) throw UsageError("unknown suite: " + name);
    int n = config.max_n.value_or(limits->second.default_n);
    int cap = cap_for(name, config);
    if (n > cap)
      throw UsageError("suite " + name + " refuses size " + std::to_string(n) + ": cap is " + std::to_string(cap) +
                       " (bases grow superexponentially; raise cap." + name + " to override)");
    tasks = tasks_for(name, n, config);
  }
  return VerificationReport{name, run_tasks(std::move(tasks), config.parallel)};
}

// ---------------------------------------------------------------------------
// Basis cache

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

BasisCache::BasisCache(std::filesystem::path dir, std::ostream* warnings)
    : dir_(std::move(dir)), warnings_(warnings) {}

std::filesystem::path BasisCache::path_for(const std::string& kind, int n, const std::string& variant) const {
  std::string id = kind + "|" + std::to_string(n) + "|" + variant;
  std::ostringstream name;
  name << kind << "-n" << n << "-" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(id) << ".basis";
  return dir_ / name.str();
}

std::vector<std::string> BasisCache::build(const std::string& kind, int n, const std::string& variant) {
  int min_cycle = 1;
  if (variant == "cycle>=2") min_cycle = 2;
  else if (variant != "all") throw UsageError("unknown basis variant: " + variant);
  std::vector<std::string> out;
  if (kind == "trees") {
    for (auto& t : enumerate_rooted_trees(n)) out.push_back(to_text(t));
  } else if (kind == "aromas") {
    for (auto& a : enumerate_aromas(n, min_cycle)) out.push_back(to_text(a));
  } else if (kind == "forests") {
    for (auto& f : enumerate_aromatic_forests(iota_labels(n), min_cycle)) out.push_back(to_text(f));
  } else if (kind == "unlabelled-trees") {
    for (auto& k : enumerate_unlabelled(UnlabelledKind::Tree, n)) out.push_back(k.code);
  } else if (kind == "unlabelled-aromas") {
    auto which = min_cycle == 2 ? UnlabelledKind::AromaPlus : UnlabelledKind::Aroma;
    for (auto& k : enumerate_unlabelled(which, n)) out.push_back(k.code);
  } else {
    throw UsageError("unknown basis kind: " + kind);
  }
  return out;
}

namespace {

std::string body_of(const std::vector<std::string>& keys) {
  std::string body;
  for (auto& k : keys) body += k + "\n";
  return body;
}

std::string header_of(const std::string& kind, int n, const std::string& variant, const std::string& body,
                      std::size_t count) {
  std::ostringstream h;
  h << "aromatica-basis " << BasisCache::kFormatVersion << "\n"
    << "kind " << kind << "\nn " << n << "\nvariant " << variant << "\ncount " << count << "\nchecksum " << std::hex
    << fnv1a(body) << "\n";
  return h.str();
}

}  // namespace

BasisCache::Result BasisCache::get_or_build(const std::string& kind, int n, const std::string& variant) {
  const auto path = path_for(kind, n, variant);
  bool existed = std::filesystem::exists(path);
  if (existed) {
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    // header is six lines
    std::size_t pos = 0;
    for (int i = 0; i < 6 && pos != std::string::npos; ++i) {
      pos = content.find('\n', pos);
      if (pos != std::string::npos) ++pos;
    }
    if (pos != std::string::npos) {
      std::string header = content.substr(0, pos), body = content.substr(pos);
      std::vector<std::string> keys;
      std::istringstream lines(body);
      for (std::string line; std::getline(lines, line);) keys.push_back(line);
      if (header == header_of(kind, n, variant, body, keys.size())) return {std::move(keys), Outcome::Hit};
    }
    if (warnings_) *warnings_ << "warning: cache entry " << path.string() << " is corrupt or outdated; rebuilding\n";
  }
  auto keys = build(kind, n, variant);
  std::filesystem::create_directories(dir_);
  std::string body = body_of(keys);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << header_of(kind, n, variant, body, keys.size()) << body;
  return {std::move(keys), existed ? Outcome::Rebuilt : Outcome::Built};
}

}  // namespace aromatica

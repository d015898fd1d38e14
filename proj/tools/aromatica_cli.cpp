// Command-line front end: enumerate, op, homology, bseries, verify.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aromatica/bseries.hpp"
#include "aromatica/complexes.hpp"
#include "aromatica/operad.hpp"
#include "aromatica/report.hpp"

using namespace aromatica;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// "--json" with no value prints to stdout; with a value writes that file.
void emit_json(const std::string& target, const std::string& text) {
  if (target.empty() || target == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(target);
  if (!out) throw UsageError("cannot write " + target);
  out << text << "\n";
}

template <class T>
std::string text_of(const LinComb<T>& x) {
  return format_lincomb(x, [](const T& k) { return to_text(k); });
}

// Parses "t1 - 2*t2 + 1/3*t3" over trees; terms are separated by spaced signs.
TreeComb parse_tree_comb(const std::string& s, LabelNames* names) {
  TreeComb out;
  std::istringstream in(s);
  std::string tok;
  Rational sign = 1;
  while (in >> tok) {
    if (tok == "+") { sign = 1; continue; }
    if (tok == "-") { sign = -1; continue; }
    Rational c = 1;
    if (auto star = tok.find('*'); star != std::string::npos && star > 0) {
      c = parse_rational(tok.substr(0, star));
      tok = tok.substr(star + 1);
    }
    out.add(parse_tree(tok, names), sign * c);
    sign = 1;
  }
  return out;
}

std::string homology_json(const std::string& name, int n, const ChainComplex& c, const json& checks) {
  json j;
  j["schema"] = 1;
  j["complex"] = name;
  j["arity"] = n;
  j["degrees"] = json::array();
  for (auto& [k, d] : homology_dimensions(c)) j["degrees"].push_back({{"degree", k}, {"dim_chain", c.dim(k)}, {"dim_homology", d}});
  j["checks"] = checks;
  return j.dump(2);
}

void dump_all(const ChainComplex& c, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  for (auto& [k, m] : c.differential) {
    auto path = dir / (stem + "-d" + std::to_string(k) + ".txt");
    std::ofstream out(path);
    dump_matrix(out, m, stem + " d" + std::to_string(k));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rooted-tree and aromatic-forest operads: enumeration, operations, homology, B-series checks"};
  app.require_subcommand(1);

  // shared options
  std::string json_target;
  bool json_requested = false;
  std::string cache_dir, dump_dir, config_path;
  std::optional<int> max_n;
  std::optional<unsigned> seed;
  bool parallel = false;

  std::vector<CLI::Option*> json_options;
  auto add_common = [&](CLI::App* sub) {
    json_options.push_back(
        sub->add_option("--json", json_target, "write a JSON report (to PATH, or stdout when no PATH)")->expected(0, 1));
  };

  // enumerate
  auto* en = app.add_subcommand("enumerate", "list a basis");
  std::string kind = "trees";
  int n = 3;
  en->add_option("--kind", kind, "trees | aromas | aromas+ | forests | unlabelled-trees | unlabelled-aromas | unlabelled-aromas+")
      ->capture_default_str();
  en->add_option("-n,--n", n, "number of vertices")->capture_default_str();
  en->add_option("--cache-dir", cache_dir, "basis cache directory");
  add_common(en);

  // op
  auto* op = app.add_subcommand("op", "apply one operation to serialized arguments");
  std::string op_name;
  std::vector<std::string> op_args;
  op->add_option("name", op_name,
                 "compose | prelie | bracket | action | div | tau | div0 | brace | lie-basis | is-lie | "
                 "span-dim | code | symmetry")
      ->required();
  op->add_option("args", op_args, "arguments in text format");
  std::string criterion = "div0";
  op->add_option("--criterion", criterion, "is-lie criterion: div0 | sym-div0")->capture_default_str();

  // homology
  auto* ho = app.add_subcommand("homology", "homology of one complex");
  std::string complex_name;
  int arity = 1;
  ho->add_option("--complex", complex_name, "ce-L | ce-Ltilde | aromatic | aromatic-df | graphs | graphs-cr")->required();
  ho->add_option("--arity", arity, "arity")->required();
  ho->add_option("--dump-matrices", dump_dir, "write every differential to DIR");
  add_common(ho);

  // bseries
  auto* bs = app.add_subcommand("bseries", "elementary differential checks");
  bool check_div = false;
  std::string obstruction_file;
  int max_order = 4, dim = 3;
  bs->add_flag("--check-divergence", check_div, "verify Div F(tau) = sum F(alpha) on a seeded cubic field");
  bs->add_option("--obstruction", obstruction_file, "coefficient JSON file; print the volume obstruction");
  bs->add_option("--max-order", max_order, "largest tree order")->capture_default_str();
  bs->add_option("--dim", dim, "dimension of the test field")->capture_default_str();
  bs->add_option("--seed", seed, "seed of the test field");
  add_common(bs);

  // verify
  auto* ve = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  ve->add_option("suite", suite, "all | dimensions | kernels | embedding | ce-homology | bicomplex | graph-complex | "
                                 "bseries | characters | identities | properties")
      ->required();
  ve->add_option("--max-n", max_n, "size of every check in the suite");
  ve->add_option("--seed", seed, "seed for random test fields");
  ve->add_option("--cache-dir", cache_dir, "basis cache directory");
  ve->add_option("--config", config_path, "key = value config file (default: $AFL_CONFIG)");
  ve->add_flag("--parallel", parallel, "run independent checks concurrently");
  add_common(ve);

  CLI11_PARSE(app, argc, argv);
  for (auto* o : json_options) json_requested = json_requested || o->count() > 0;

  try {
    if (*en) {
      std::vector<std::string> keys;
      auto variant = kind.back() == '+' ? std::string("cycle>=2") : std::string("all");
      std::string base = kind.back() == '+' ? kind.substr(0, kind.size() - 1) : kind;
      if (!cache_dir.empty()) {
        keys = BasisCache(cache_dir, &std::cerr).get_or_build(base, n, variant).keys;
      } else {
        keys = BasisCache::build(base, n, variant);
      }
      if (json_requested) {
        emit_json(json_target, json{{"schema", 1}, {"kind", kind}, {"n", n}, {"count", keys.size()}, {"basis", keys}}.dump(2));
      } else {
        for (auto& k : keys) std::cout << k << "\n";
        std::cerr << keys.size() << " elements\n";
      }
      return 0;
    }

    if (*op) {
      LabelNames names;
      auto need = [&](std::size_t k) {
        if (op_args.size() != k) throw UsageError(op_name + " expects " + std::to_string(k) + " arguments");
      };
      if (op_name == "compose") {
        need(3);
        const bool numeric = std::all_of(op_args[1].begin(), op_args[1].end(), ::isdigit);
        Label star = numeric ? std::stoi(op_args[1]) : names.intern(op_args[1]);
        Operation outer = parse_operation(op_args[0], &names);
        Operation inner = parse_operation(op_args[2], &names);
        std::cout << format_lincomb(compose_at(outer, star, inner), [&](const Operation& o) { return to_text(o, &names); })
                  << "\n";
      } else if (op_name == "prelie" || op_name == "bracket") {
        need(2);
        auto a = parse_tree(op_args[0], &names), b = parse_tree(op_args[1], &names);
        TreeComb r = op_name == "prelie" ? prelie(a, b) : lie_bracket(a, b);
        std::cout << format_lincomb(r, [&](const RootedTree& t) { return to_text(t, &names); }) << "\n";
      } else if (op_name == "action") {
        need(2);
        auto m = parse_aroma(op_args[0], &names);
        auto a = parse_tree(op_args[1], &names);
        std::cout << format_lincomb(module_action(m, a), [&](const Aroma& x) { return to_text(x, &names); }) << "\n";
      } else if (op_name == "div" || op_name == "div0" || op_name == "tau") {
        need(1);
        auto t = parse_tree(op_args[0], &names);
        AromaComb r = op_name == "div" ? div(t) : op_name == "div0" ? div0(t) : AromaComb(tau(t));
        std::cout << format_lincomb(r, [&](const Aroma& x) { return to_text(x, &names); }) << "\n";
      } else if (op_name == "brace") {
        if (op_args.empty()) throw UsageError("brace expects at least one tree");
        std::vector<RootedTree> ts;
        for (auto& s : op_args) ts.push_back(parse_tree(s, &names));
        std::cout << format_lincomb(cyclic_brace(ts), [&](const Aroma& x) { return to_text(x, &names); }) << "\n";
      } else if (op_name == "lie-basis") {
        need(1);
        for (auto& x : lie_basis(std::stoi(op_args[0]))) std::cout << text_of(x) << "\n";
      } else if (op_name == "is-lie") {
        need(1);
        auto c = criterion == "sym-div0" ? LieCriterion::SymDiv0 : LieCriterion::Div0;
        if (criterion != "div0" && criterion != "sym-div0") throw UsageError("unknown criterion " + criterion);
        std::cout << (is_lie_element(parse_tree_comb(op_args[0], &names), c) ? "true" : "false") << "\n";
      } else if (op_name == "span-dim") {
        need(1);
        std::cout << suboperad_span_dimension(std::stoi(op_args[0])) << "\n";
      } else if (op_name == "code") {
        need(1);
        const auto& s = op_args[0];
        if (s.rfind("cycle[", 0) == 0) std::cout << aroma_code(parse_aroma(s, &names)) << "\n";
        else if (s.rfind("forest{", 0) == 0) {
          auto fc = forest_code(parse_forest(s, &names));
          std::cout << fc.code << " sign " << fc.sign << "\n";
        } else std::cout << tree_code(parse_tree(s, &names)) << "\n";
      } else if (op_name == "symmetry") {
        need(1);
        std::cout << symmetry_order(UnlabelledKey{op_args[0]}) << "\n";
      } else {
        throw UsageError("unknown operation " + op_name);
      }
      return 0;
    }

    if (*ho) {
      ChainComplex c;
      json checks = json::array();
      if (complex_name == "ce-L" || complex_name == "ce-Ltilde") {
        c = build_ce_complex(complex_name == "ce-L" ? CEVariant::L : CEVariant::LTilde, arity).complex;
        checks.push_back({{"check", "d∘d = 0"}, {"pass", true}});
      } else if (complex_name == "graphs" || complex_name == "graphs-cr") {
        auto g = build_graph_complex(complex_name == "graphs" ? GraphVariant::All : GraphVariant::ConnectedReduced, arity);
        c = g.complex;
        checks.push_back({{"check", "d∘d = 0"}, {"pass", true}});
        if (complex_name == "graphs")
          checks.push_back({{"check", "dh + hd = C(n,2) id"}, {"pass", graph_homotopy_identity_holds(g)}});
      } else if (complex_name == "aromatic" || complex_name == "aromatic-df") {
        auto b = build_aromatic_bicomplex(
            complex_name == "aromatic" ? BicomplexVariant::Full : BicomplexVariant::DivergenceFree, arity);
        json rows = json::array();
        for (int q = 0; q <= arity; ++q) {
          ChainComplex h = b.horizontal(q);
          json degrees = json::array();
          for (auto& [p, d] : homology_dimensions(h)) degrees.push_back({{"degree", p}, {"dim_chain", h.dim(p)}, {"dim_homology", d}});
          rows.push_back({{"white_vertices", q}, {"degrees", degrees}});
          if (!dump_dir.empty()) dump_all(h, dump_dir, complex_name + "-n" + std::to_string(arity) + "-q" + std::to_string(q) + "-dH");
        }
        std::size_t vertical = 0;
        for (int p = 0; p <= arity; ++p) {
          ChainComplex v = b.vertical(p);
          for (auto& [k, d] : homology_dimensions(v)) vertical += d;
          if (!dump_dir.empty()) dump_all(v, dump_dir, complex_name + "-n" + std::to_string(arity) + "-p" + std::to_string(p) + "-dV");
        }
        json j{{"schema", 1}, {"complex", complex_name}, {"arity", arity}, {"horizontal", rows},
               {"checks", json::array({{{"check", "dH dV = dV dH"}, {"pass", b.differentials_commute()}},
                                       {{"check", "dV homology total"}, {"value", vertical}, {"pass", vertical == 0}}})}};
        if (json_requested) {
          emit_json(json_target, j.dump(2));
        } else {
          for (auto& row : rows) {
            std::cout << "q=" << row["white_vertices"] << ":";
            for (auto& d : row["degrees"]) std::cout << " H_" << d["degree"] << "=" << d["dim_homology"] << "/" << d["dim_chain"];
            std::cout << "\n";
          }
          std::cout << "dV homology total " << vertical << ", differentials commute " << b.differentials_commute() << "\n";
        }
        return 0;
      } else {
        throw UsageError("unknown complex " + complex_name);
      }
      if (!dump_dir.empty()) dump_all(c, dump_dir, complex_name + "-n" + std::to_string(arity));
      if (json_requested) {
        emit_json(json_target, homology_json(complex_name, arity, c, checks));
      } else {
        for (auto& [k, d] : homology_dimensions(c)) std::cout << "H_" << k << " = " << d << "  (chain dim " << c.dim(k) << ")\n";
      }
      return 0;
    }

    if (*bs) {
      if (!check_div && obstruction_file.empty()) throw UsageError("bseries needs --check-divergence or --obstruction FILE");
      json j{{"schema", 1}};
      bool ok = true;
      if (check_div) {
        const unsigned s = seed.value_or(Config{}.seed);
        PolyVectorField f = random_polynomial_field(dim, 3, s);
        json rows = json::array();
        for (int k = 1; k <= max_order; ++k)
          for (auto& key : enumerate_unlabelled(UnlabelledKind::Tree, k)) {
            bool pass = check_divergence_identity(key, f);
            ok = ok && pass;
            rows.push_back({{"tree", key.code}, {"pass", pass}});
            if (!json_requested) std::cout << (pass ? "PASS " : "FAIL ") << key.code << "\n";
          }
        j["divergence_identity"] = {{"dim", dim}, {"seed", s}, {"trees", rows}};
      }
      if (!obstruction_file.empty()) {
        BSeriesCoefficients b = parse_coefficients_json(read_file(obstruction_file));
        if (max_order > b.order) b.order = max_order;
        auto obs = volume_obstruction(b);
        json rows = json::object();
        for (auto& [order, x] : obs) {
          std::string t = format_lincomb(x, [](const UnlabelledKey& k) { return k.code; });
          rows[std::to_string(order)] = t;
          if (!json_requested) std::cout << "order " << order << ": " << t << "\n";
        }
        if (!json_requested && obs.empty()) std::cout << "volume obstruction vanishes through order " << b.order << "\n";
        j["volume_obstruction"] = rows;
      }
      if (json_requested) emit_json(json_target, j.dump(2));
      return ok ? 0 : 1;
    }

    if (*ve) {
      std::map<std::string, std::string> cli;
      if (max_n) cli["max_n"] = std::to_string(*max_n);
      if (seed) cli["seed"] = std::to_string(*seed);
      if (parallel) cli["parallel"] = "true";
      if (!cache_dir.empty()) cli["cache_dir"] = cache_dir;
      auto env = [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
      };
      if (config_path.empty())
        if (auto p = env("AFL_CONFIG")) config_path = *p;
      std::string file_text = config_path.empty() ? "" : read_file(config_path);
      Config config = resolve_config(cli, env, file_text);
      VerificationReport report = run_suite(suite, config);
      if (json_requested) {
        if (json_target.empty() || json_target == "-") {
          std::cout << report.to_json() << "\n";
        } else {
          emit_json(json_target, report.to_json());
          report.print_table(std::cout);
        }
      } else {
        report.print_table(std::cout);
      }
      return report.all_pass() ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

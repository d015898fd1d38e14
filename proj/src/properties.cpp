#include "aromatica/properties.hpp"

#include <algorithm>
#include <numeric>

#include "aromatica/operad.hpp"

namespace aromatica {

namespace {

std::vector<Label> range(Label lo, Label hi) {
  std::vector<Label> v;
  for (Label x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

// Trees with one or two vertices on labels starting at `lo`.
std::vector<RootedTree> small_trees(Label lo) {
  std::vector<RootedTree> out;
  for (Label size = 1; size <= 2; ++size)
    for (auto& t : enumerate_rooted_trees(range(lo, lo + size - 1))) out.push_back(t);
  return out;
}

std::vector<Aroma> small_aromas(Label lo) {
  std::vector<Aroma> out;
  for (Label size = 1; size <= 2; ++size)
    for (auto& a : enumerate_aromas(range(lo, lo + size - 1))) out.push_back(a);
  return out;
}

std::vector<Operation> small_operations(Label lo) {
  std::vector<Operation> out;
  for (auto& t : small_trees(lo)) {
    out.emplace_back(t);
    out.emplace_back(MarkedTree{t});
  }
  for (auto& a : small_aromas(lo)) out.emplace_back(a);
  return out;
}

std::vector<Label> vertices(const Operation& op) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, MarkedTree>) {
          return x.tree.labels();
        } else {
          return x.labels();
        }
      },
      op);
}

bool slot_is_m(const Operation& op, Label v) {
  return op.index() == 1 && std::get<MarkedTree>(op).mark() == v;
}

bool fits(const Operation& outer, Label slot, const Operation& inner) {
  return (output_colour(inner) == Colour::m) == slot_is_m(outer, slot);
}

Operation relabel(const Operation& op, const std::function<Label(Label)>& f) {
  return std::visit(
      [&](const auto& x) -> Operation {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MarkedTree>) {
          return MarkedTree{x.tree.relabelled(f)};
        } else {
          return x.relabelled(f);
        }
      },
      op);
}

OperationComb relabel(const OperationComb& x, const std::function<Label(Label)>& f) {
  OperationComb out;
  for (auto& [op, c] : x) out.add(relabel(op, f), c);
  return out;
}

std::string text(const OperationComb& x) {
  return format_lincomb(x, [](const Operation& op) { return to_text(op); });
}

template <class T>
std::string text(const LinComb<T>& x) {
  return format_lincomb(x, [](const T& k) { return to_text(k); });
}

AromaComb tadpole_action(const TreeComb& a) { return div(a); }

}  // namespace

PropertyResult check_prelie_identity() {
  PropertyResult r{"pre-Lie identity", 0, true, ""};
  for (auto& a : small_trees(1))
    for (auto& b : small_trees(3))
      for (auto& c : small_trees(5)) {
        TreeComb A(a), B(b), C(c);
        TreeComb lhs = prelie(prelie(A, B), C) - prelie(A, prelie(B, C));
        TreeComb rhs = prelie(prelie(A, C), B) - prelie(A, prelie(C, B));
        ++r.cases;
        if (lhs != rhs && r.pass) {
          r.pass = false;
          r.detail = "associator not symmetric for " + to_text(a) + ", " + to_text(b) + ", " + to_text(c);
        }
      }
  return r;
}

PropertyResult check_module_identity() {
  PropertyResult r{"right module identity", 0, true, ""};
  for (auto& m : small_aromas(1))
    for (auto& a : small_trees(3))
      for (auto& b : small_trees(5)) {
        AromaComb M(m);
        TreeComb A(a), B(b);
        AromaComb lhs = module_action(module_action(M, A), B) - module_action(M, prelie(A, B));
        AromaComb rhs = module_action(module_action(M, B), A) - module_action(M, prelie(B, A));
        ++r.cases;
        if (lhs != rhs && r.pass) {
          r.pass = false;
          r.detail = "failed for " + to_text(m) + ", " + to_text(a) + ", " + to_text(b);
        }
      }
  return r;
}

PropertyResult check_jacobi() {
  PropertyResult r{"Jacobi identity on generators", 1, true, ""};
  TreeComb x(RootedTree::single(1)), y(RootedTree::single(2)), z(RootedTree::single(3));
  TreeComb sum = lie_bracket(lie_bracket(x, y), z) + lie_bracket(lie_bracket(y, z), x) + lie_bracket(lie_bracket(z, x), y);
  if (!sum.is_zero()) {
    r.pass = false;
    r.detail = text(sum);
  }
  return r;
}

PropertyResult check_tadpole_cocycle() {
  PropertyResult r{"tadpole 1-cocycle", 0, true, ""};
  for (int total = 2; total <= 3; ++total) {
    for (int na = 1; na < total; ++na) {
      for (auto& a : enumerate_rooted_trees(range(1, na)))
        for (auto& b : enumerate_rooted_trees(range(na + 1, total))) {
          TreeComb A(a), B(b);
          AromaComb lhs = tadpole_action(lie_bracket(A, B));
          AromaComb rhs = module_action(tadpole_action(A), B) - module_action(tadpole_action(B), A);
          ++r.cases;
          if (lhs != rhs && r.pass) {
            r.pass = false;
            r.detail = "failed for " + to_text(a) + ", " + to_text(b);
          }
        }
    }
  }
  return r;
}

PropertyResult check_cyclic_brace_symmetrization(int max_n) {
  PropertyResult r{"cyclic brace of generators is the symmetrized cycle", 0, true, ""};
  for (int n = 1; n <= max_n; ++n) {
    std::vector<RootedTree> gens;
    for (Label v = 1; v <= n; ++v) gens.push_back(RootedTree::single(v));
    AromaComb expected;
    std::vector<Label> rest = range(2, n);
    do {
      std::vector<Label> order{1};
      order.insert(order.end(), rest.begin(), rest.end());
      std::vector<Label> succ(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < order.size(); ++i)
        succ[static_cast<std::size_t>(order[i] - 1)] = order[(i + 1) % order.size()];
      expected.add(Aroma(range(1, n), succ), 1);
    } while (std::next_permutation(rest.begin(), rest.end()));
    ++r.cases;
    AromaComb got = cyclic_brace(gens);
    if (got != expected && r.pass) {
      r.pass = false;
      r.detail = "n=" + std::to_string(n) + ": " + text(got);
    }
  }
  return r;
}

PropertyResult check_sequential_associativity() {
  PropertyResult r{"sequential operadic associativity", 0, true, ""};
  for (auto& x : small_operations(1))
    for (Label a : vertices(x))
      for (auto& y : small_operations(3)) {
        if (!fits(x, a, y)) continue;
        for (Label b : vertices(y))
          for (auto& z : small_operations(5)) {
            if (!fits(y, b, z)) continue;
            OperationComb X(x), Y(y), Z(z);
            OperationComb lhs = compose_at(compose_at(X, a, Y), b, Z);
            OperationComb rhs = compose_at(X, a, compose_at(Y, b, Z));
            ++r.cases;
            if (lhs != rhs && r.pass) {
              r.pass = false;
              r.detail = to_text(x) + " o_" + std::to_string(a) + " " + to_text(y) + " o_" + std::to_string(b) + " " + to_text(z);
            }
          }
      }
  return r;
}

PropertyResult check_parallel_associativity() {
  PropertyResult r{"parallel operadic associativity", 0, true, ""};
  for (auto& x : small_operations(1)) {
    auto vs = vertices(x);
    for (Label a : vs)
      for (Label b : vs) {
        if (a == b) continue;
        for (auto& y : small_operations(3)) {
          if (!fits(x, a, y)) continue;
          for (auto& z : small_operations(5)) {
            if (!fits(x, b, z)) continue;
            OperationComb X(x), Y(y), Z(z);
            OperationComb lhs = compose_at(compose_at(X, a, Y), b, Z);
            OperationComb rhs = compose_at(compose_at(X, b, Z), a, Y);
            ++r.cases;
            if (lhs != rhs && r.pass) {
              r.pass = false;
              r.detail = to_text(x) + " at " + std::to_string(a) + "," + std::to_string(b);
            }
          }
        }
      }
  }
  return r;
}

PropertyResult check_equivariance() {
  PropertyResult r{"equivariance of composition", 0, true, ""};
  // an order-scrambling bijection onto a disjoint label range
  auto sigma = [](Label v) { return 100 + (7 * v) % 11; };
  for (auto& x : small_operations(1))
    for (Label a : vertices(x))
      for (auto& y : small_operations(3)) {
        if (!fits(x, a, y)) continue;
        OperationComb lhs = relabel(compose_at(x, a, y), sigma);
        OperationComb rhs = compose_at(relabel(x, sigma), sigma(a), relabel(y, sigma));
        ++r.cases;
        if (lhs != rhs && r.pass) {
          r.pass = false;
          r.detail = to_text(x) + " o_" + std::to_string(a) + " " + to_text(y) + ": " + text(lhs) + " vs " + text(rhs);
        }
      }
  return r;
}

std::vector<PropertyResult> run_property_checks() {
  return {check_sequential_associativity(), check_parallel_associativity(), check_equivariance(),
          check_prelie_identity(),          check_module_identity(),        check_jacobi(),
          check_tadpole_cocycle(),          check_cyclic_brace_symmetrization()};
}

}  // namespace aromatica

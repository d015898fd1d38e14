#include "aromatica/operad.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace aromatica {

namespace {

// Vertex set with a partial out-map; the common shape of every operation.
struct Digraph {
  std::vector<Label> labels;
  std::vector<Label> out;  // kNoLabel marks the root

  Label out_of(Label v) const {
    auto i = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), v) - labels.begin());
    return out[i];
  }
  bool has(Label v) const { return std::find(labels.begin(), labels.end(), v) != labels.end(); }
};

Digraph as_digraph(const Operation& op) {
  return std::visit(
      [](const auto& x) -> Digraph {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RootedTree>) {
          return {x.labels(), x.parent_array()};
        } else if constexpr (std::is_same_v<T, MarkedTree>) {
          return {x.tree.labels(), x.tree.parent_array()};
        } else {
          return {x.labels(), x.successor_array()};
        }
      },
      op);
}

std::string kind_name(const Operation& op) {
  switch (op.index()) {
    case 0: return "tree";
    case 1: return "marked tree";
    default: return "aroma";
  }
}

}  // namespace

Colour output_colour(const Operation& op) { return op.index() == 0 ? Colour::o : Colour::m; }

std::string to_text(const Operation& op, const LabelNames* names) {
  return std::visit([&](const auto& x) { return to_text(x, names); }, op);
}

Operation parse_operation(std::string_view text, LabelNames* names) {
  if (!text.empty() && text[0] == '*') return MarkedTree{parse_tree(text.substr(1), names)};
  if (text.rfind("cycle[", 0) == 0) return parse_aroma(text, names);
  return parse_tree(text, names);
}

OperationComb compose_at(const Operation& outer, Label star, const Operation& inner) {
  Digraph o = as_digraph(outer);
  Digraph in = as_digraph(inner);
  if (!o.has(star)) throw DomainError("compose_at: vertex " + std::to_string(star) + " is not in the outer operation");

  // colour of the slot
  const bool m_slot = outer.index() == 1 && std::get<MarkedTree>(outer).mark() == star;
  const Colour needed = m_slot ? Colour::m : Colour::o;
  if (output_colour(inner) != needed) {
    throw ColourError("compose_at: cannot insert a " + kind_name(inner) + " into a " +
                      (m_slot ? "m" : "o") + "-coloured input");
  }
  for (Label v : in.labels)
    if (v != star && o.has(v)) throw DomainError("compose_at: label clash on " + std::to_string(v));

  const Label star_out = o.out_of(star);
  Label inner_root = kNoLabel;
  for (std::size_t i = 0; i < in.labels.size(); ++i)
    if (in.out[i] == kNoLabel) inner_root = in.labels[i];

  // edges into star (from other outer vertices, or the loop at star)
  std::vector<Label> incoming;
  for (std::size_t i = 0; i < o.labels.size(); ++i)
    if (o.labels[i] != star && o.out[i] == star) incoming.push_back(o.labels[i]);
  const bool loop = star_out == star;
  const std::size_t slots = incoming.size() + (loop ? 1 : 0);

  OperationComb result;
  std::vector<std::size_t> choice(slots, 0);
  while (true) {
    std::vector<Label> labels, out;
    for (std::size_t i = 0; i < o.labels.size(); ++i) {
      if (o.labels[i] == star) continue;
      labels.push_back(o.labels[i]);
      if (o.out[i] == star) {
        auto k = static_cast<std::size_t>(std::find(incoming.begin(), incoming.end(), o.labels[i]) - incoming.begin());
        out.push_back(in.labels[choice[k]]);
      } else {
        out.push_back(o.out[i]);
      }
    }
    for (std::size_t i = 0; i < in.labels.size(); ++i) {
      labels.push_back(in.labels[i]);
      if (in.labels[i] != inner_root) {
        out.push_back(in.out[i]);
      } else if (loop) {
        out.push_back(in.labels[choice.back()]);
      } else {
        out.push_back(star_out);
      }
    }

    // Result kind: aromas stay aromas; inserting into an m-slot takes the
    // inner output; otherwise the outer kind is kept.
    if (outer.index() == 2 || (m_slot && inner.index() == 2)) {
      result.add(Operation{Aroma(std::move(labels), std::move(out))}, 1);
    } else if (outer.index() == 1) {
      result.add(Operation{MarkedTree{RootedTree(std::move(labels), std::move(out))}}, 1);
    } else {
      result.add(Operation{RootedTree(std::move(labels), std::move(out))}, 1);
    }

    std::size_t k = 0;
    while (k < slots && ++choice[k] == in.labels.size()) choice[k++] = 0;
    if (k == slots) break;
  }
  return result;
}

OperationComb compose_at(const OperationComb& outer, Label star, const OperationComb& inner) {
  return bilinear<Operation>(outer, inner,
                             [&](const Operation& a, const Operation& b) { return compose_at(a, star, b); });
}

TreeComb prelie(const RootedTree& a, const RootedTree& b) {
  TreeComb out;
  for (Label v : a.labels()) out.add(a.grafted(v, b), 1);
  return out;
}

TreeComb prelie(const TreeComb& a, const TreeComb& b) {
  return bilinear<RootedTree>(a, b, [](const RootedTree& x, const RootedTree& y) { return prelie(x, y); });
}

TreeComb lie_bracket(const RootedTree& a, const RootedTree& b) { return prelie(a, b) - prelie(b, a); }

TreeComb lie_bracket(const TreeComb& a, const TreeComb& b) { return prelie(a, b) - prelie(b, a); }

AromaComb module_action(const Aroma& m, const RootedTree& a) {
  AromaComb out;
  for (Label v : m.labels()) out.add(m.grafted(v, a), 1);
  return out;
}

AromaComb module_action(const AromaComb& m, const TreeComb& a) {
  return bilinear<Aroma>(m, a, [](const Aroma& x, const RootedTree& y) { return module_action(x, y); });
}

AromaComb div(const RootedTree& t) {
  AromaComb out;
  for (Label v : t.labels()) out.add(Aroma::close(t, v), 1);
  return out;
}

AromaComb div(const TreeComb& x) {
  return x.map_linear<Aroma>([](const RootedTree& t) { return div(t); });
}

Aroma tau(const RootedTree& t) { return Aroma::close(t, t.root()); }

AromaComb div0(const RootedTree& t) {
  AromaComb out;
  for (Label v : t.labels())
    if (v != t.root()) out.add(Aroma::close(t, v), 1);
  return out;
}

AromaComb div0(const TreeComb& x) {
  return x.map_linear<Aroma>([](const RootedTree& t) { return div0(t); });
}

AromaComb cyclic_brace(const std::vector<TreeComb>& args) {
  if (args.empty()) throw DomainError("cyclic_brace: needs at least one argument");
  if (args.size() == 1) return div(args[0]);
  std::vector<TreeComb> head(args.begin(), args.end() - 1);
  const TreeComb& last = args.back();
  AromaComb out;
  for (std::size_t k = 0; k < head.size(); ++k) {
    auto shifted = head;
    shifted[k] = prelie(head[k], last);
    out += cyclic_brace(shifted);
  }
  out -= module_action(cyclic_brace(head), last);
  return out;
}

AromaComb cyclic_brace(const std::vector<RootedTree>& args) {
  std::vector<Label> all;
  for (auto& t : args) all.insert(all.end(), t.labels().begin(), t.labels().end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw DomainError("cyclic_brace: label clash");
  std::vector<TreeComb> combs;
  for (auto& t : args) combs.emplace_back(t);
  return cyclic_brace(combs);
}

// ---------------------------------------------------------------------------
// Suboperad span

namespace {

// Order-preserving relabelling {1..k} -> targets.
template <class T>
T relabel_onto(const T& x, const std::vector<Label>& targets) {
  return x.relabelled([&](Label v) { return targets[static_cast<std::size_t>(v - 1)]; });
}

AromaComb relabel_onto(const AromaComb& x, const std::vector<Label>& targets) {
  AromaComb out;
  for (auto& [a, c] : x) out.add(relabel_onto(a, targets), c);
  return out;
}

}  // namespace

std::vector<AromaComb> suboperad_span_basis(int n) {
  if (n < 1) throw DomainError("suboperad_span_basis: n must be >= 1");
  // bases[k] spans the image on {1..k}
  std::vector<std::vector<AromaComb>> bases(static_cast<std::size_t>(n) + 1);
  for (int k = 1; k <= n; ++k) {
    BasisIndex<Aroma> ambient(enumerate_aromas(k));
    EchelonSpace space;
    auto& basis = bases[static_cast<std::size_t>(k)];
    auto offer = [&](AromaComb x) {
      if (space.insert(coordinates(x, ambient))) basis.push_back(std::move(x));
    };
    for (auto& t : enumerate_rooted_trees(k)) offer(div(t));
    // x ◂ T with x on a proper subset A and T a tree on the complement
    const auto labels = iota_labels(k);
    for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
      std::vector<Label> a, b;
      for (int i = 0; i < k; ++i) ((mask >> i) & 1u ? a : b).push_back(labels[static_cast<std::size_t>(i)]);
      auto trees = enumerate_rooted_trees(b);
      for (auto& x : bases[a.size()]) {
        AromaComb moved = relabel_onto(x, a);
        for (auto& t : trees) offer(module_action(moved, TreeComb(t)));
      }
    }
  }
  return bases[static_cast<std::size_t>(n)];
}

std::size_t suboperad_span_dimension(int n) { return suboperad_span_basis(n).size(); }

std::size_t cyclic_brace_span_dimension(int n) {
  if (n < 1) throw DomainError("cyclic_brace_span_dimension: n must be >= 1");
  BasisIndex<Aroma> ambient(enumerate_aromas(n));
  EchelonSpace space;
  const auto labels = iota_labels(n);
  for (auto& forest : enumerate_tree_forests(labels)) space.insert(coordinates(cyclic_brace(forest.trees), ambient));
  return space.dim();
}

bool in_suboperad_span(const AromaComb& x, int n) {
  BasisIndex<Aroma> ambient(enumerate_aromas(n));
  EchelonSpace space;
  for (auto& b : suboperad_span_basis(n)) space.insert(coordinates(b, ambient));
  return space.contains(coordinates(x, ambient));
}

// ---------------------------------------------------------------------------
// Lie elements

std::vector<TreeComb> lie_basis(int n) {
  if (n < 1) throw DomainError("lie_basis: n must be >= 1");
  std::vector<Label> rest;
  for (Label v = 2; v <= n; ++v) rest.push_back(v);
  std::vector<TreeComb> out;
  do {
    TreeComb x(RootedTree::single(1));
    for (Label v : rest) x = lie_bracket(x, TreeComb(RootedTree::single(v)));
    out.push_back(std::move(x));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

AromaticForest sym(const Aroma& a) {
  AromaticForest f;
  for (Label c : a.cycle()) f.trees.push_back(a.hanging_tree(c));
  f.canonicalize();
  return f;
}

bool is_lie_element(const TreeComb& x, LieCriterion criterion) {
  std::optional<std::vector<Label>> support;
  for (auto& [t, c] : x) {
    if (!support) {
      support = t.labels();
    } else if (*support != t.labels()) {
      throw UnsupportedInputError("is_lie_element: input is not multilinear (terms use different label sets)");
    }
  }
  AromaComb d = div0(x);
  if (criterion == LieCriterion::Div0) return d.is_zero();
  ForestComb s = d.map_linear<AromaticForest>([](const Aroma& a) { return ForestComb(sym(a)); });
  return s.is_zero();
}

SparseMatrix divergence_matrix(int n, bool reduced) {
  BasisIndex<RootedTree> domain(enumerate_rooted_trees(n));
  BasisIndex<Aroma> codomain(enumerate_aromas(n, reduced ? 2 : 1));
  SparseMatrix m = matrix_of_map(domain, codomain, [&](const RootedTree& t) { return reduced ? div0(t) : div(t); });
  for (auto& t : domain.keys()) m.col_keys.push_back(to_text(t));
  for (auto& a : codomain.keys()) m.row_keys.push_back(to_text(a));
  return m;
}

SparseMatrix unlabelled_div0_matrix(int n) {
  if (n < 1) throw DomainError("unlabelled_div0_matrix: n must be >= 1");
  auto trees = enumerate_unlabelled(UnlabelledKind::Tree, n);
  std::vector<UnlabelledKey> aromas;
  if (n >= 2) aromas = enumerate_unlabelled(UnlabelledKind::AromaPlus, n);
  BasisIndex<UnlabelledKey> rows(aromas);
  SparseMatrix m(aromas.size(), trees.size());
  for (std::size_t j = 0; j < trees.size(); ++j) {
    RootedTree t = tree_from_code(trees[j].code);
    for (Label v : t.labels())
      if (v != t.root()) m.add(rows.index_of({aroma_code(Aroma::close(t, v))}), j, 1);
  }
  for (auto& k : trees) m.col_keys.push_back(k.code);
  for (auto& k : aromas) m.row_keys.push_back(k.code);
  return m;
}

}  // namespace aromatica

#pragma once

// Operadic structure on rooted trees and aromas: partial compositions in the
// two-coloured operad of trees, marked trees and aromas, the pre-Lie product,
// its right module action on aromas, divergence maps and cyclic braces.

#include <variant>
#include <vector>

#include "aromatica/lincomb.hpp"
#include "aromatica/linalg.hpp"
#include "aromatica/species.hpp"

namespace aromatica {

using TreeComb = LinComb<RootedTree>;
using AromaComb = LinComb<Aroma>;
using ForestComb = LinComb<AromaticForest>;

/// One operation of the coloured operad. Trees have output colour o; marked
/// trees and aromas have output colour m.
using Operation = std::variant<RootedTree, MarkedTree, Aroma>;
using OperationComb = LinComb<Operation>;

enum class Colour { o, m };

Colour output_colour(const Operation& op);
std::string to_text(const Operation& op, const LabelNames* names = nullptr);
Operation parse_operation(std::string_view text, LabelNames* names = nullptr);

/// Substitutes `inner` for vertex `star` of `outer`: the out-edge of `star`
/// leaves from the root of `inner`, and each in-edge of `star` is reattached
/// to some vertex of `inner`, summed over all choices.
OperationComb compose_at(const Operation& outer, Label star, const Operation& inner);
OperationComb compose_at(const OperationComb& outer, Label star, const OperationComb& inner);

/// a ◁ b: graft the root of b onto each vertex of a.
TreeComb prelie(const RootedTree& a, const RootedTree& b);
TreeComb prelie(const TreeComb& a, const TreeComb& b);

TreeComb lie_bracket(const RootedTree& a, const RootedTree& b);
TreeComb lie_bracket(const TreeComb& a, const TreeComb& b);

/// m ◂ a: graft the root of a onto each vertex of m.
AromaComb module_action(const Aroma& m, const RootedTree& a);
AromaComb module_action(const AromaComb& m, const TreeComb& a);

/// Sum over all vertices v of the aroma closing t by the arc root -> v.
AromaComb div(const RootedTree& t);
AromaComb div(const TreeComb& x);
/// The root loop term of div.
Aroma tau(const RootedTree& t);
/// div minus the root loop; supported on cycles of length >= 2.
AromaComb div0(const RootedTree& t);
AromaComb div0(const TreeComb& x);

/// ⟨a1⟩ = div(a1); ⟨a1..a(n+1)⟩ = Σ_k ⟨.., a_k ◁ a(n+1), ..⟩ − ⟨a1..an⟩ ◂ a(n+1).
AromaComb cyclic_brace(const std::vector<TreeComb>& args);
AromaComb cyclic_brace(const std::vector<RootedTree>& args);

/// Spanning set of the image of the suboperad generated by ◁, ◂ and the
/// tadpole inside the aromas on {1..n}: the iterated module words
/// ((div(T0) ◂ T1) ◂ ...) ◂ Tk over ordered forests.
std::vector<AromaComb> suboperad_span_basis(int n);
std::size_t suboperad_span_dimension(int n);

/// Same subspace, spanned instead by cyclic braces of forests.
std::size_t cyclic_brace_span_dimension(int n);

/// Whether x lies in the span of suboperad_span_basis(n).
bool in_suboperad_span(const AromaComb& x, int n);

/// Left-normed brackets [..[[•1, •σ2], •σ3].., •σn] over permutations σ of {2..n}.
std::vector<TreeComb> lie_basis(int n);

enum class LieCriterion { Div0, SymDiv0 };

/// Multilinear Lie test: x ∈ ker div0, or x ∈ ker(Sym ∘ div0) where Sym
/// forgets the cyclic order of the hanging trees.
bool is_lie_element(const TreeComb& x, LieCriterion criterion);

/// Sym: aroma -> unordered forest of its hanging trees.
AromaticForest sym(const Aroma& a);

/// Labelled divergence matrices on RT({1..n}); rows are aromas (cycle length
/// >= 2 when reduced).
SparseMatrix divergence_matrix(int n, bool reduced);

/// Reduced divergence on unlabelled trees with n vertices into unlabelled
/// aromas with cycle length >= 2; entries count the closing vertices.
SparseMatrix unlabelled_div0_matrix(int n);

/// Expands a combination of RootedTree into coordinates over `basis`.
template <class Key>
SparseVec coordinates(const LinComb<Key>& x, const BasisIndex<Key>& basis) {
  SparseVec v;
  for (const auto& [k, c] : x) v.emplace(basis.index_of(k), c);
  return v;
}

}  // namespace aromatica

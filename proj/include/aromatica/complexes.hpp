#pragma once

// Chevalley–Eilenberg complexes of the dg Lie algebras
//   L  = RT --Div-->  Cyc(RT)     and     L~ = RT --Div0--> Cyc+(RT),
// the aromatic bicomplex built from them, and complexes of undirected graphs.
//
// A CE basis element in arity n is an aromatic forest on {1..n}: tree blocks
// are odd and ordered (canonical order, sign tracked), aroma blocks are even.
// Homological degree is the number of tree blocks.

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "aromatica/linalg.hpp"
#include "aromatica/operad.hpp"

namespace aromatica {

enum class CEVariant { L, LTilde };

/// Relabels by `perm` (perm[i] is the image of label i+1) and brings the
/// result to canonical form; returns the Koszul sign of reordering tree blocks.
std::pair<AromaticForest, int> permute(const AromaticForest& f, std::span<const int> perm);

/// CE differential of one forest: Div (or Div0) on a tree block, brackets of
/// pairs of tree blocks, and the action of a tree block on an aroma block.
ForestComb ce_differential(const AromaticForest& f, CEVariant variant);

struct CEComplex {
  CEVariant variant;
  int arity = 0;
  std::shared_ptr<const std::map<int, BasisIndex<AromaticForest>>> basis;
  ChainComplex complex;  // carries the relabelling action
};

CEComplex build_ce_complex(CEVariant variant, int n);

// ---------------------------------------------------------------------------
// Aromatic bicomplex
//
// Omega_{p,q}: forests with p tree blocks and q white vertices. White labels are
// 1..q and the element is skew under their permutations; the n-q black labels
// q+1..n are interchangeable. An element is stored as the least labelled forest
// in its orbit under S_q x S_{n-q}; orbits with an odd stabiliser vanish.
//
// d^H is the CE differential (adds an edge out of the last root).
// d^V whitens one black vertex, which becomes white label q+1.

enum class BicomplexVariant { Full, DivergenceFree };

struct Bicomplex {
  BicomplexVariant variant;
  int arity = 0;
  std::map<std::pair<int, int>, std::vector<AromaticForest>> basis;  // (p, q)
  std::map<std::pair<int, int>, SparseMatrix> dH;                    // (p, q) -> (p-1, q)
  std::map<std::pair<int, int>, SparseMatrix> dV;                    // (p, q) -> (p, q+1)

  std::size_t dim(int p, int q) const;
  /// Row of fixed q, graded by p.
  ChainComplex horizontal(int q) const;
  /// Column of fixed p, graded by -q so the differential lowers degree.
  ChainComplex vertical(int p) const;
  /// d^H d^V == d^V d^H on every bidegree.
  bool differentials_commute() const;
};

Bicomplex build_aromatic_bicomplex(BicomplexVariant variant, int n);

/// dim of the (sgn on q whites) x (trivial on n-q blacks) coinvariants of
/// H_degree of the CE complex, from the character of the S_n-action.
std::size_t expected_bicomplex_homology(const CEComplex& ce, int degree, int whites);

// ---------------------------------------------------------------------------
// Graph complexes on labelled vertices {1..n}, edges of degree -1.
// A graph is a bitmask over the edges of K_n in lexicographic order; the
// edge list is kept in that order so the orientation sign is implicit.

enum class GraphVariant { All, ConnectedReduced };

struct GraphComplex {
  GraphVariant variant;
  int arity = 0;
  std::map<int, std::vector<std::uint64_t>> graphs;  // degree -> edge masks
  ChainComplex complex;                              // degree = -#edges
  std::map<int, SparseMatrix> homotopy;              // degree k -> k+1, removes an edge
};

GraphComplex build_graph_complex(GraphVariant variant, int n);

/// d h + h d - C(n,2) id on every degree; zero for a correct construction.
bool graph_homotopy_identity_holds(const GraphComplex& g);

// ---------------------------------------------------------------------------
// Counting identities and characters

/// Euler characteristics sum_k (-1)^k dim C_k of CE(L~) in arities 1..max_n,
/// from enumerated chain dimensions.
std::vector<Integer> euler_characteristic_series(int max_n);

/// Right-hand side of (n-1)^n = sum_k C(n,k) (k-2)^k (n+1-k)^(n-1-k).
Integer abel_sum(int n);
bool abel_identity_holds(int n);

/// Partitions of n, parts in decreasing order.
std::vector<std::vector<int>> partitions(int n);
/// A permutation of {1..n} with the given cycle type (perm[i] = image of i+1).
std::vector<int> permutation_of_type(const std::vector<int>& parts);
/// prod_k (-2 + sum_{d|k} d a_d)^(a_k), a_k = number of parts equal to k.
Integer character_formula(const std::vector<int>& parts);

struct CharacterRow {
  std::vector<int> cycle_type;
  Integer formula;
  Rational trace_h0;
  Rational euler_trace;  // sum_k (-1)^k tr(sigma | H_k)
  bool match = false;    // formula == euler_trace, and == trace_h0 when H_1 = 0
};

std::vector<CharacterRow> character_check(int n);

}  // namespace aromatica

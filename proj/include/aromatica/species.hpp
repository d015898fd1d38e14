#pragma once

// Labelled rooted trees, aromas (connected functional graphs) and aromatic
// forests, with canonical codes and exhaustive enumeration.
//
// Every structure stores its vertex labels sorted ascending together with a
// parallel array of out-neighbours. Edges point from child to parent in trees
// and from a vertex to its successor in aromas.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aromatica/errors.hpp"
#include "aromatica/rational.hpp"

namespace aromatica {

using Label = int;
inline constexpr Label kNoLabel = -1;

class RootedTree {
 public:
  /// `parent[i]` is the parent of `labels[i]`, or kNoLabel for the root.
  RootedTree(std::vector<Label> labels, std::vector<Label> parent);

  static RootedTree single(Label v);

  const std::vector<Label>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  Label root() const { return root_; }
  Label min_label() const { return labels_.front(); }
  bool contains(Label v) const;
  Label parent(Label v) const;
  std::vector<Label> children(Label v) const;
  const std::vector<Label>& parent_array() const { return parent_; }

  /// Attaches `other` with its root as a new child of `at`.
  RootedTree grafted(Label at, const RootedTree& other) const;

  template <class F>
  RootedTree relabelled(F&& f) const {
    std::vector<Label> l, p;
    l.reserve(size());
    p.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      l.push_back(f(labels_[i]));
      p.push_back(parent_[i] == kNoLabel ? kNoLabel : f(parent_[i]));
    }
    return RootedTree(std::move(l), std::move(p));
  }

  friend auto operator<=>(const RootedTree& a, const RootedTree& b) {
    if (auto c = a.labels_ <=> b.labels_; c != 0) return c;
    return a.parent_ <=> b.parent_;
  }
  friend bool operator==(const RootedTree& a, const RootedTree& b) {
    return a.labels_ == b.labels_ && a.parent_ == b.parent_;
  }

 private:
  std::size_t index_of(Label v) const;

  std::vector<Label> labels_;
  std::vector<Label> parent_;
  Label root_ = kNoLabel;
};

/// Connected functional graph: one directed cycle with rooted trees hanging
/// from its vertices.
class Aroma {
 public:
  Aroma(std::vector<Label> labels, std::vector<Label> successor);

  /// Closes `t` by adding the arc root(t) -> `target`.
  static Aroma close(const RootedTree& t, Label target);

  const std::vector<Label>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  Label min_label() const { return labels_.front(); }
  bool contains(Label v) const;
  Label successor(Label v) const;
  const std::vector<Label>& successor_array() const { return succ_; }
  std::vector<Label> predecessors(Label v) const;

  /// Cycle vertices in successor order, starting from the smallest label.
  std::vector<Label> cycle() const;
  std::size_t cycle_length() const { return cycle().size(); }

  /// Tree of `v` together with everything hanging off it, cycle arcs removed.
  RootedTree hanging_tree(Label cycle_vertex) const;

  /// Attaches `t` with the arc root(t) -> `at`.
  Aroma grafted(Label at, const RootedTree& t) const;

  template <class F>
  Aroma relabelled(F&& f) const {
    std::vector<Label> l, s;
    l.reserve(size());
    s.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      l.push_back(f(labels_[i]));
      s.push_back(f(succ_[i]));
    }
    return Aroma(std::move(l), std::move(s));
  }

  friend auto operator<=>(const Aroma& a, const Aroma& b) {
    if (auto c = a.labels_ <=> b.labels_; c != 0) return c;
    return a.succ_ <=> b.succ_;
  }
  friend bool operator==(const Aroma& a, const Aroma& b) {
    return a.labels_ == b.labels_ && a.succ_ == b.succ_;
  }

 private:
  std::size_t index_of(Label v) const;

  std::vector<Label> labels_;
  std::vector<Label> succ_;
};

/// Rooted tree whose root is the distinguished m-coloured input.
struct MarkedTree {
  RootedTree tree;
  Label mark() const { return tree.root(); }
  friend auto operator<=>(const MarkedTree&, const MarkedTree&) = default;
  friend bool operator==(const MarkedTree&, const MarkedTree&) = default;
};

/// Ordered tree components plus a multiset of aromas. The order of the tree
/// components carries a sign; see canonicalize().
struct AromaticForest {
  std::vector<RootedTree> trees;
  std::vector<Aroma> aromas;

  /// Sorts trees into canonical order (unlabelled code, then smallest label)
  /// and aromas ascending; returns the sign of the tree permutation applied.
  int canonicalize();

  std::size_t vertex_count() const;
  std::vector<Label> labels() const;  // sorted

  template <class F>
  AromaticForest relabelled(F&& f) const {
    AromaticForest out;
    for (const auto& t : trees) out.trees.push_back(t.relabelled(f));
    for (const auto& a : aromas) out.aromas.push_back(a.relabelled(f));
    return out;
  }

  friend auto operator<=>(const AromaticForest&, const AromaticForest&) = default;
  friend bool operator==(const AromaticForest&, const AromaticForest&) = default;
};

// ---------------------------------------------------------------------------
// Unlabelled canonical codes

struct UnlabelledKey {
  std::string code;
  friend auto operator<=>(const UnlabelledKey&, const UnlabelledKey&) = default;
};

enum class UnlabelledKind { Tree, Aroma, AromaPlus, Forest };

std::string tree_code(const RootedTree& t);
std::string aroma_code(const Aroma& a);

struct ForestCode {
  std::string code;
  int sign = 1;  // sign of the permutation sorting the tree components
};
ForestCode forest_code(const AromaticForest& f);

UnlabelledKey canonical_code(const RootedTree& t);
UnlabelledKey canonical_code(const Aroma& a);
ForestCode canonical_code(const AromaticForest& f);

/// Kind of structure a code encodes; throws StructuralError if malformed.
UnlabelledKind code_kind(const std::string& code);
std::size_t code_vertex_count(const std::string& code);

/// Representatives with labels 1..n assigned in preorder (cycle order for aromas).
RootedTree tree_from_code(const std::string& code);
Aroma aroma_from_code(const std::string& code);

/// |Aut| of the unlabelled tree or aroma.
Integer symmetry_order(const UnlabelledKey& key);

// ---------------------------------------------------------------------------
// Enumeration. All outputs are sorted by unlabelled code, then by labels.

std::vector<RootedTree> enumerate_rooted_trees(std::span<const Label> labels);
std::vector<RootedTree> enumerate_rooted_trees(int n);  // labels 1..n

std::vector<Aroma> enumerate_aromas(std::span<const Label> labels, int min_cycle_length = 1);
std::vector<Aroma> enumerate_aromas(int n, int min_cycle_length = 1);

std::vector<UnlabelledKey> enumerate_unlabelled(UnlabelledKind kind, int n);

/// Every aromatic forest on the labels, in canonical form (sign dropped), each
/// aroma of cycle length >= `min_cycle_length`. This is the set of partial
/// endofunctions: roots are the points without an image.
std::vector<AromaticForest> enumerate_aromatic_forests(std::span<const Label> labels,
                                                       int min_cycle_length = 1);

/// Unordered forests of rooted trees (no aromas) on the labels, canonical form.
std::vector<AromaticForest> enumerate_tree_forests(std::span<const Label> labels);

std::vector<Label> iota_labels(int n);  // {1..n}

// ---------------------------------------------------------------------------
// Text format
//
//   tree    3(1,2(4))          children in increasing label order
//   marked  *3(1)              root is the m-coloured input
//   aroma   cycle[1(4);2;3]    hanging trees in cycle order, smallest cycle label first
//   forest  forest{1(2);3|cycle[4]}

/// Interns symbolic labels (a, c, x1, ...) as integers >= kSymbolBase.
class LabelNames {
 public:
  static constexpr Label kSymbolBase = 1 << 20;
  Label intern(const std::string& token);
  std::string name(Label v) const;

 private:
  std::map<std::string, Label> ids_;
  std::vector<std::string> names_;
};

std::string to_text(const RootedTree& t, const LabelNames* names = nullptr);
std::string to_text(const MarkedTree& t, const LabelNames* names = nullptr);
std::string to_text(const Aroma& a, const LabelNames* names = nullptr);
std::string to_text(const AromaticForest& f, const LabelNames* names = nullptr);

RootedTree parse_tree(std::string_view text, LabelNames* names = nullptr);
Aroma parse_aroma(std::string_view text, LabelNames* names = nullptr);
AromaticForest parse_forest(std::string_view text, LabelNames* names = nullptr);

}  // namespace aromatica

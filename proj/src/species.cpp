#include "aromatica/species.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace aromatica {

namespace {

// Sorts the parallel arrays by label and rejects duplicates.
void sort_parallel(std::vector<Label>& labels, std::vector<Label>& out, const char* what) {
  if (labels.size() != out.size()) throw StructuralError(std::string(what) + ": array length mismatch");
  if (labels.empty()) throw DomainError(std::string(what) + ": empty label set");
  std::vector<std::size_t> idx(labels.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });
  std::vector<Label> l(labels.size()), o(labels.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    l[i] = labels[idx[i]];
    o[i] = out[idx[i]];
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i] < 0) throw DomainError(std::string(what) + ": negative label");
    if (i > 0 && l[i] == l[i - 1])
      throw StructuralError(std::string(what) + ": duplicate label " + std::to_string(l[i]));
  }
  labels = std::move(l);
  out = std::move(o);
}

std::size_t find_index(const std::vector<Label>& labels, Label v) {
  auto it = std::lower_bound(labels.begin(), labels.end(), v);
  if (it == labels.end() || *it != v) return labels.size();
  return static_cast<std::size_t>(it - labels.begin());
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

// Code of the subtree at index `v`, given child lists by index.
std::string subtree_code(std::size_t v, const std::vector<std::vector<std::size_t>>& kids) {
  std::vector<std::string> parts;
  parts.reserve(kids[v].size());
  for (auto c : kids[v]) parts.push_back(subtree_code(c, kids));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (auto& p : parts) out += p;
  out += ")";
  return out;
}

template <class T>
std::vector<T> min_rotation(const std::vector<T>& seq) {
  std::vector<T> best = seq;
  std::vector<T> rot = seq;
  for (std::size_t r = 1; r < seq.size(); ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// ----- unlabelled shapes parsed from codes -----

struct Shape {
  std::vector<Shape> children;
  std::string code;  // canonical code of this subtree
};

Shape parse_shape(const std::string& s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '(') throw StructuralError("malformed tree code: '" + s + "'");
  std::size_t start = pos++;
  Shape out;
  while (pos < s.size() && s[pos] == '(') out.children.push_back(parse_shape(s, pos));
  if (pos >= s.size() || s[pos] != ')') throw StructuralError("malformed tree code: '" + s + "'");
  ++pos;
  out.code = s.substr(start, pos - start);
  return out;
}

Shape parse_tree_code(const std::string& s) {
  std::size_t pos = 0;
  Shape sh = parse_shape(s, pos);
  if (pos != s.size()) throw StructuralError("trailing characters in tree code: '" + s + "'");
  return sh;
}

std::vector<std::string> split_top(const std::string& body, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : body) {
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Shape> parse_aroma_code(const std::string& s) {
  const std::string head = "cycle[";
  if (s.rfind(head, 0) != 0 || s.back() != ']') throw StructuralError("malformed aroma code: '" + s + "'");
  std::string body = s.substr(head.size(), s.size() - head.size() - 1);
  if (body.empty()) throw StructuralError("empty aroma code");
  std::vector<Shape> out;
  for (auto& part : split_top(body, ';')) out.push_back(parse_tree_code(part));
  return out;
}

std::size_t shape_size(const Shape& s) {
  std::size_t n = 1;
  for (auto& c : s.children) n += shape_size(c);
  return n;
}

Integer shape_symmetry(const Shape& s) {
  Integer out = 1;
  std::map<std::string, int> mult;
  for (auto& c : s.children) {
    out *= shape_symmetry(c);
    ++mult[c.code];
  }
  for (auto& [code, m] : mult) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    out *= f;
  }
  return out;
}

// Builds labels in preorder starting at `next`; returns the root label.
Label emit_shape(const Shape& s, Label& next, std::vector<Label>& labels, std::vector<Label>& parent,
                 Label parent_label) {
  Label me = next++;
  labels.push_back(me);
  parent.push_back(parent_label);
  for (auto& c : s.children) emit_shape(c, next, labels, parent, me);
  return me;
}

}  // namespace

// ---------------------------------------------------------------------------
// RootedTree

RootedTree::RootedTree(std::vector<Label> labels, std::vector<Label> parent)
    : labels_(std::move(labels)), parent_(std::move(parent)) {
  sort_parallel(labels_, parent_, "rooted tree");
  const std::size_t n = labels_.size();
  std::vector<std::size_t> pidx(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (parent_[i] == kNoLabel) {
      if (root_ != kNoLabel) throw StructuralError("rooted tree: more than one root");
      root_ = labels_[i];
      continue;
    }
    pidx[i] = find_index(labels_, parent_[i]);
    if (pidx[i] == n) throw StructuralError("rooted tree: parent " + std::to_string(parent_[i]) + " is not a vertex");
  }
  if (root_ == kNoLabel) throw StructuralError("rooted tree: no root");
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t v = i;
    std::size_t steps = 0;
    while (pidx[v] != n) {
      v = pidx[v];
      if (++steps > n) throw StructuralError("rooted tree: parent map has a cycle");
    }
  }
}

RootedTree RootedTree::single(Label v) { return RootedTree({v}, {kNoLabel}); }

std::size_t RootedTree::index_of(Label v) const {
  std::size_t i = find_index(labels_, v);
  if (i == labels_.size()) throw DomainError("label " + std::to_string(v) + " is not a vertex of the tree");
  return i;
}

bool RootedTree::contains(Label v) const { return find_index(labels_, v) != labels_.size(); }

Label RootedTree::parent(Label v) const { return parent_[index_of(v)]; }

std::vector<Label> RootedTree::children(Label v) const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (parent_[i] == v) out.push_back(labels_[i]);
  return out;
}

RootedTree RootedTree::grafted(Label at, const RootedTree& other) const {
  index_of(at);
  std::vector<Label> l = labels_, p = parent_;
  for (std::size_t i = 0; i < other.size(); ++i) {
    if (contains(other.labels_[i]))
      throw DomainError("graft: label clash on " + std::to_string(other.labels_[i]));
    l.push_back(other.labels_[i]);
    p.push_back(other.parent_[i] == kNoLabel ? at : other.parent_[i]);
  }
  return RootedTree(std::move(l), std::move(p));
}

// ---------------------------------------------------------------------------
// Aroma

Aroma::Aroma(std::vector<Label> labels, std::vector<Label> successor)
    : labels_(std::move(labels)), succ_(std::move(successor)) {
  sort_parallel(labels_, succ_, "aroma");
  const std::size_t n = labels_.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = find_index(labels_, succ_[i]);
    if (j == n) throw StructuralError("aroma: successor " + std::to_string(succ_[i]) + " is not a vertex");
    uf.unite(i, j);
  }
  for (std::size_t i = 1; i < n; ++i)
    if (uf.find(i) != uf.find(0)) throw StructuralError("aroma: functional graph is not connected");
}

Aroma Aroma::close(const RootedTree& t, Label target) {
  if (!t.contains(target)) throw DomainError("close: target is not a vertex of the tree");
  std::vector<Label> s = t.parent_array();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == kNoLabel) s[i] = target;
  return Aroma(t.labels(), std::move(s));
}

std::size_t Aroma::index_of(Label v) const {
  std::size_t i = find_index(labels_, v);
  if (i == labels_.size()) throw DomainError("label " + std::to_string(v) + " is not a vertex of the aroma");
  return i;
}

bool Aroma::contains(Label v) const { return find_index(labels_, v) != labels_.size(); }

Label Aroma::successor(Label v) const { return succ_[index_of(v)]; }

std::vector<Label> Aroma::predecessors(Label v) const {
  std::vector<Label> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (succ_[i] == v) out.push_back(labels_[i]);
  return out;
}

std::vector<Label> Aroma::cycle() const {
  Label v = labels_.front();
  for (std::size_t i = 0; i < size(); ++i) v = successor(v);
  std::vector<Label> cyc{v};
  for (Label w = successor(v); w != v; w = successor(w)) cyc.push_back(w);
  auto mn = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), mn, cyc.end());
  return cyc;
}

RootedTree Aroma::hanging_tree(Label cycle_vertex) const {
  auto cyc = cycle();
  std::set<Label> on_cycle(cyc.begin(), cyc.end());
  if (!on_cycle.count(cycle_vertex)) throw DomainError("hanging_tree: vertex is not on the cycle");
  std::vector<Label> l, p;
  for (std::size_t i = 0; i < size(); ++i) {
    Label v = labels_[i];
    Label w = v;
    while (!on_cycle.count(w)) w = successor(w);
    if (w != cycle_vertex) continue;
    l.push_back(v);
    p.push_back(v == cycle_vertex ? kNoLabel : succ_[i]);
  }
  return RootedTree(std::move(l), std::move(p));
}

Aroma Aroma::grafted(Label at, const RootedTree& t) const {
  index_of(at);
  std::vector<Label> l = labels_, s = succ_;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Label v = t.labels()[i];
    if (contains(v)) throw DomainError("graft: label clash on " + std::to_string(v));
    l.push_back(v);
    s.push_back(t.parent_array()[i] == kNoLabel ? at : t.parent_array()[i]);
  }
  return Aroma(std::move(l), std::move(s));
}

// ---------------------------------------------------------------------------
// Forests

int AromaticForest::canonicalize() {
  std::vector<std::pair<std::string, Label>> keys;
  keys.reserve(trees.size());
  for (auto& t : trees) keys.emplace_back(tree_code(t), t.min_label());
  std::vector<std::size_t> perm(trees.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
  std::vector<RootedTree> sorted;
  sorted.reserve(trees.size());
  for (auto i : perm) sorted.push_back(std::move(trees[i]));
  trees = std::move(sorted);
  std::sort(aromas.begin(), aromas.end());
  return permutation_sign(perm);
}

std::size_t AromaticForest::vertex_count() const {
  std::size_t n = 0;
  for (auto& t : trees) n += t.size();
  for (auto& a : aromas) n += a.size();
  return n;
}

std::vector<Label> AromaticForest::labels() const {
  std::vector<Label> out;
  for (auto& t : trees) out.insert(out.end(), t.labels().begin(), t.labels().end());
  for (auto& a : aromas) out.insert(out.end(), a.labels().begin(), a.labels().end());
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Codes

std::string tree_code(const RootedTree& t) {
  const std::size_t n = t.size();
  std::vector<std::vector<std::size_t>> kids(n);
  std::size_t root = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Label p = t.parent_array()[i];
    if (p == kNoLabel) {
      root = i;
    } else {
      kids[find_index(t.labels(), p)].push_back(i);
    }
  }
  return subtree_code(root, kids);
}

std::string aroma_code(const Aroma& a) {
  std::vector<std::string> codes;
  for (Label c : a.cycle()) codes.push_back(tree_code(a.hanging_tree(c)));
  return "cycle[" + join(min_rotation(codes), ";") + "]";
}

ForestCode forest_code(const AromaticForest& f) {
  AromaticForest copy = f;
  int sign = copy.canonicalize();
  std::vector<std::string> tc, ac;
  for (auto& t : copy.trees) tc.push_back(tree_code(t));
  for (auto& a : copy.aromas) ac.push_back(aroma_code(a));
  std::sort(ac.begin(), ac.end());
  return {"forest{" + join(tc, ";") + "|" + join(ac, ";") + "}", sign};
}

UnlabelledKey canonical_code(const RootedTree& t) { return {tree_code(t)}; }
UnlabelledKey canonical_code(const Aroma& a) { return {aroma_code(a)}; }
ForestCode canonical_code(const AromaticForest& f) { return forest_code(f); }

UnlabelledKind code_kind(const std::string& code) {
  if (!code.empty() && code[0] == '(') {
    parse_tree_code(code);
    return UnlabelledKind::Tree;
  }
  if (code.rfind("cycle[", 0) == 0) {
    auto parts = parse_aroma_code(code);
    return parts.size() >= 2 ? UnlabelledKind::AromaPlus : UnlabelledKind::Aroma;
  }
  if (code.rfind("forest{", 0) == 0 && code.back() == '}') return UnlabelledKind::Forest;
  throw StructuralError("unrecognized code: '" + code + "'");
}

std::size_t code_vertex_count(const std::string& code) {
  return static_cast<std::size_t>(std::count(code.begin(), code.end(), '('));
}

RootedTree tree_from_code(const std::string& code) {
  Shape s = parse_tree_code(code);
  std::vector<Label> l, p;
  Label next = 1;
  emit_shape(s, next, l, p, kNoLabel);
  return RootedTree(std::move(l), std::move(p));
}

Aroma aroma_from_code(const std::string& code) {
  auto parts = parse_aroma_code(code);
  std::vector<Label> l, s, roots;
  Label next = 1;
  for (auto& part : parts) {
    std::size_t first = l.size();
    roots.push_back(emit_shape(part, next, l, s, kNoLabel));
    (void)first;
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (s[i] != kNoLabel) continue;
    auto pos = std::find(roots.begin(), roots.end(), l[i]) - roots.begin();
    s[i] = roots[(static_cast<std::size_t>(pos) + 1) % roots.size()];
  }
  return Aroma(std::move(l), std::move(s));
}

Integer symmetry_order(const UnlabelledKey& key) {
  switch (code_kind(key.code)) {
    case UnlabelledKind::Tree:
      return shape_symmetry(parse_tree_code(key.code));
    case UnlabelledKind::Aroma:
    case UnlabelledKind::AromaPlus: {
      auto parts = parse_aroma_code(key.code);
      std::vector<std::string> codes;
      Integer out = 1;
      for (auto& p : parts) {
        out *= shape_symmetry(p);
        codes.push_back(p.code);
      }
      int rotations = 0;
      auto rot = codes;
      for (std::size_t r = 0; r < codes.size(); ++r) {
        if (rot == codes) ++rotations;
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      }
      return out * rotations;
    }
    case UnlabelledKind::Forest:
      break;
  }
  throw StructuralError("symmetry_order expects a tree or aroma code");
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Label> iota_labels(int n) {
  std::vector<Label> out(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(out.begin(), out.end(), 1);
  return out;
}

std::vector<RootedTree> enumerate_rooted_trees(std::span<const Label> labels_in) {
  if (labels_in.empty()) throw DomainError("enumerate_rooted_trees: empty label set");
  std::vector<Label> labels(labels_in.begin(), labels_in.end());
  std::sort(labels.begin(), labels.end());
  const std::size_t n = labels.size();
  std::vector<RootedTree> out;
  if (n == 1) {
    out.push_back(RootedTree::single(labels[0]));
    return out;
  }
  // Unrooted trees via Prüfer sequences, then every choice of root.
  std::vector<std::size_t> seq(n - 2, 0);
  while (true) {
    std::vector<int> degree(n, 1);
    for (auto x : seq) ++degree[x];
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto x : seq) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      adj[leaf].push_back(x);
      adj[x].push_back(leaf);
      --degree[leaf];
      --degree[x];
    }
    std::size_t u = n, w = n;
    for (std::size_t i = 0; i < n; ++i)
      if (degree[i] == 1) (u == n ? u : w) = i;
    adj[u].push_back(w);
    adj[w].push_back(u);

    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Label> parent(n, kNoLabel);
      std::vector<std::size_t> stack{r};
      std::vector<bool> seen(n, false);
      seen[r] = true;
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto x : adj[v]) {
          if (seen[x]) continue;
          seen[x] = true;
          parent[x] = labels[v];
          stack.push_back(x);
        }
      }
      out.emplace_back(labels, std::move(parent));
    }

    std::size_t k = 0;
    while (k < seq.size() && ++seq[k] == n) seq[k++] = 0;
    if (k == seq.size()) break;
  }
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) keys.emplace_back(tree_code(out[i]), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return out[a.second] < out[b.second];
  });
  std::vector<RootedTree> sorted;
  sorted.reserve(out.size());
  for (auto& [code, i] : keys) sorted.push_back(std::move(out[i]));
  return sorted;
}

std::vector<RootedTree> enumerate_rooted_trees(int n) {
  auto l = iota_labels(n);
  return enumerate_rooted_trees(l);
}

namespace {

// Calls `visit(f)` for every f: [n] -> [n] ∪ {none}, encoded with n meaning none.
template <class Visit>
void for_each_partial_map(std::size_t n, bool allow_none, Visit&& visit) {
  const std::size_t base = allow_none ? n + 1 : n;
  std::vector<std::size_t> f(n, 0);
  while (true) {
    visit(f);
    std::size_t k = 0;
    while (k < n && ++f[k] == base) f[k++] = 0;
    if (k == n) break;
  }
}

template <class T, class CodeFn>
void sort_by_code(std::vector<T>& items, CodeFn&& code) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) keys.emplace_back(code(items[i]), i);
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return items[a.second] < items[b.second];
  });
  std::vector<T> sorted;
  sorted.reserve(items.size());
  for (auto& [c, i] : keys) sorted.push_back(std::move(items[i]));
  items = std::move(sorted);
}

// Splits a partial endofunction into tree and aroma components. Returns false
// if some aroma has a cycle shorter than `min_cycle`.
bool decompose(const std::vector<std::size_t>& f, const std::vector<Label>& labels, int min_cycle,
               AromaticForest& forest) {
  const std::size_t n = labels.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    if (f[i] < n) uf.unite(i, f[i]);
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < n; ++i) comps[uf.find(i)].push_back(i);
  for (auto& [rep, members] : comps) {
    bool has_root = std::any_of(members.begin(), members.end(), [&](auto i) { return f[i] == n; });
    std::vector<Label> l, o;
    for (auto i : members) {
      l.push_back(labels[i]);
      o.push_back(f[i] == n ? kNoLabel : labels[f[i]]);
    }
    if (has_root) {
      forest.trees.emplace_back(std::move(l), std::move(o));
    } else {
      // cycle length: walk n steps then measure
      std::size_t v = members.front();
      for (std::size_t s = 0; s < n; ++s) v = f[v];
      int len = 1;
      for (std::size_t w = f[v]; w != v; w = f[w]) ++len;
      if (len < min_cycle) return false;
      forest.aromas.emplace_back(std::move(l), std::move(o));
    }
  }
  return true;
}

}  // namespace

std::vector<Aroma> enumerate_aromas(std::span<const Label> labels_in, int min_cycle_length) {
  if (labels_in.empty()) throw DomainError("enumerate_aromas: empty label set");
  std::vector<Label> labels(labels_in.begin(), labels_in.end());
  std::sort(labels.begin(), labels.end());
  const std::size_t n = labels.size();
  std::vector<Aroma> out;
  for_each_partial_map(n, false, [&](const std::vector<std::size_t>& f) {
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) uf.unite(i, f[i]);
    for (std::size_t i = 1; i < n; ++i)
      if (uf.find(i) != uf.find(0)) return;
    std::size_t v = 0;
    for (std::size_t s = 0; s < n; ++s) v = f[v];
    int len = 1;
    for (std::size_t w = f[v]; w != v; w = f[w]) ++len;
    if (len < min_cycle_length) return;
    std::vector<Label> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = labels[f[i]];
    out.emplace_back(labels, std::move(s));
  });
  sort_by_code(out, [](const Aroma& a) { return aroma_code(a); });
  return out;
}

std::vector<Aroma> enumerate_aromas(int n, int min_cycle_length) {
  auto l = iota_labels(n);
  return enumerate_aromas(l, min_cycle_length);
}

std::vector<AromaticForest> enumerate_aromatic_forests(std::span<const Label> labels_in, int min_cycle_length) {
  std::vector<Label> labels(labels_in.begin(), labels_in.end());
  std::sort(labels.begin(), labels.end());
  std::vector<AromaticForest> out;
  if (labels.empty()) {
    out.emplace_back();
    return out;
  }
  for_each_partial_map(labels.size(), true, [&](const std::vector<std::size_t>& f) {
    AromaticForest forest;
    if (!decompose(f, labels, min_cycle_length, forest)) return;
    forest.canonicalize();
    out.push_back(std::move(forest));
  });
  sort_by_code(out, [](const AromaticForest& a) { return forest_code(a).code; });
  return out;
}

std::vector<AromaticForest> enumerate_tree_forests(std::span<const Label> labels_in) {
  std::vector<Label> labels(labels_in.begin(), labels_in.end());
  std::sort(labels.begin(), labels.end());
  std::vector<AromaticForest> out;
  if (labels.empty()) {
    out.emplace_back();
    return out;
  }
  const std::size_t n = labels.size();
  for_each_partial_map(n, true, [&](const std::vector<std::size_t>& f) {
    // reject maps with a cycle
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t v = i;
      std::size_t steps = 0;
      while (f[v] != n) {
        v = f[v];
        if (++steps > n) return;
      }
    }
    AromaticForest forest;
    decompose(f, labels, 1, forest);
    forest.canonicalize();
    out.push_back(std::move(forest));
  });
  sort_by_code(out, [](const AromaticForest& a) { return forest_code(a).code; });
  return out;
}

namespace {

const std::vector<std::string>& unlabelled_trees(int n) {
  static std::map<int, std::vector<std::string>> memo;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::set<std::string> codes;
  if (n == 1) {
    codes.insert("()");
  } else {
    // multisets of subtrees of total size n-1, chosen in non-increasing
    // (size, index) order
    std::vector<std::string> chosen;
    auto rec = [&](auto&& self, int remaining, int max_size, std::size_t max_idx) -> void {
      if (remaining == 0) {
        auto parts = chosen;
        std::sort(parts.begin(), parts.end());
        std::string c = "(";
        for (auto& p : parts) c += p;
        codes.insert(c + ")");
        return;
      }
      for (int s = std::min(remaining, max_size); s >= 1; --s) {
        const auto& sub = unlabelled_trees(s);
        std::size_t lim = (s == max_size) ? max_idx : sub.size() - 1;
        for (std::size_t i = 0; i <= lim && i < sub.size(); ++i) {
          chosen.push_back(sub[i]);
          self(self, remaining - s, s, i);
          chosen.pop_back();
        }
      }
    };
    rec(rec, n - 1, n - 1, unlabelled_trees(n - 1).size() - 1);
  }
  return memo[n] = std::vector<std::string>(codes.begin(), codes.end());
}

}  // namespace

std::vector<UnlabelledKey> enumerate_unlabelled(UnlabelledKind kind, int n) {
  if (n < 1) throw DomainError("enumerate_unlabelled: n must be >= 1");
  std::vector<UnlabelledKey> out;
  if (kind == UnlabelledKind::Tree) {
    for (auto& c : unlabelled_trees(n)) out.push_back({c});
    return out;
  }
  if (kind == UnlabelledKind::Forest) throw DomainError("enumerate_unlabelled: forests are not supported");
  const int min_len = kind == UnlabelledKind::AromaPlus ? 2 : 1;
  std::set<std::string> codes;
  for (int len = min_len; len <= n; ++len) {
    // compositions of n into `len` positive parts
    std::vector<int> parts;
    auto rec_parts = [&](auto&& self, int remaining, int slots) -> void {
      if (slots == 0) {
        if (remaining != 0) return;
        std::vector<std::string> seq;
        auto rec_trees = [&](auto&& inner, std::size_t i) -> void {
          if (i == parts.size()) {
            codes.insert("cycle[" + join(min_rotation(seq), ";") + "]");
            return;
          }
          for (auto& c : unlabelled_trees(parts[i])) {
            seq.push_back(c);
            inner(inner, i + 1);
            seq.pop_back();
          }
        };
        rec_trees(rec_trees, 0);
        return;
      }
      for (int s = 1; s <= remaining - (slots - 1); ++s) {
        parts.push_back(s);
        self(self, remaining - s, slots - 1);
        parts.pop_back();
      }
    };
    rec_parts(rec_parts, n, len);
  }
  for (auto& c : codes) out.push_back({c});
  return out;
}

// ---------------------------------------------------------------------------
// Text format

Label LabelNames::intern(const std::string& token) {
  if (token.empty()) throw StructuralError("empty label");
  if (std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
    if (token.size() > 7) throw DomainError("label out of range: " + token);
    return std::stoi(token);
  }
  auto [it, inserted] = ids_.try_emplace(token, kSymbolBase + static_cast<Label>(names_.size()));
  if (inserted) names_.push_back(token);
  return it->second;
}

std::string LabelNames::name(Label v) const {
  if (v >= kSymbolBase && static_cast<std::size_t>(v - kSymbolBase) < names_.size())
    return names_[static_cast<std::size_t>(v - kSymbolBase)];
  return std::to_string(v);
}

namespace {

std::string label_text(Label v, const LabelNames* names) { return names ? names->name(v) : std::to_string(v); }

std::string tree_text_at(const RootedTree& t, Label v, const LabelNames* names) {
  std::string out = label_text(v, names);
  auto kids = t.children(v);
  if (kids.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) out += ",";
    out += tree_text_at(t, kids[i], names);
  }
  return out + ")";
}

class Parser {
 public:
  Parser(std::string_view s, LabelNames* names) : s_(s), names_(names) {}

  bool done() const { return pos_ == s_.size(); }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  bool starts_with(std::string_view w) const { return s_.substr(pos_, w.size()) == w; }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect(std::string_view w) {
    if (!starts_with(w)) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw StructuralError("parse error at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + why);
  }

  Label label() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a label");
    std::string tok(s_.substr(start, pos_ - start));
    if (names_) return names_->intern(tok);
    LabelNames plain;
    Label v = plain.intern(tok);
    if (v >= LabelNames::kSymbolBase) fail("symbolic label '" + tok + "' not allowed here");
    return v;
  }

  // Appends the subtree to the arrays; returns its root.
  Label subtree(std::vector<Label>& l, std::vector<Label>& p, Label parent) {
    Label v = label();
    l.push_back(v);
    p.push_back(parent);
    if (peek('(')) {
      ++pos_;
      subtree(l, p, v);
      while (peek(',')) {
        ++pos_;
        subtree(l, p, v);
      }
      expect(')');
    }
    return v;
  }

  RootedTree tree() {
    std::vector<Label> l, p;
    subtree(l, p, kNoLabel);
    return RootedTree(std::move(l), std::move(p));
  }

  Aroma aroma() {
    expect("cycle[");
    std::vector<Label> l, p, roots;
    roots.push_back(subtree(l, p, kNoLabel));
    while (peek(';')) {
      ++pos_;
      roots.push_back(subtree(l, p, kNoLabel));
    }
    expect(']');
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (p[i] != kNoLabel) continue;
      auto k = static_cast<std::size_t>(std::find(roots.begin(), roots.end(), l[i]) - roots.begin());
      p[i] = roots[(k + 1) % roots.size()];
    }
    return Aroma(std::move(l), std::move(p));
  }

  AromaticForest forest() {
    expect("forest{");
    AromaticForest f;
    if (!peek('|')) {
      f.trees.push_back(tree());
      while (peek(';')) {
        ++pos_;
        f.trees.push_back(tree());
      }
    }
    expect('|');
    if (!peek('}')) {
      f.aromas.push_back(aroma());
      while (peek(';')) {
        ++pos_;
        f.aromas.push_back(aroma());
      }
    }
    expect('}');
    auto all = f.labels();
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) fail("components share a label");
    return f;
  }

 private:
  std::string_view s_;
  LabelNames* names_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const RootedTree& t, const LabelNames* names) { return tree_text_at(t, t.root(), names); }

std::string to_text(const MarkedTree& t, const LabelNames* names) { return "*" + to_text(t.tree, names); }

std::string to_text(const Aroma& a, const LabelNames* names) {
  std::vector<std::string> parts;
  for (Label c : a.cycle()) parts.push_back(to_text(a.hanging_tree(c), names));
  return "cycle[" + join(parts, ";") + "]";
}

std::string to_text(const AromaticForest& f, const LabelNames* names) {
  std::vector<std::string> tp, ap;
  for (auto& t : f.trees) tp.push_back(to_text(t, names));
  for (auto& a : f.aromas) ap.push_back(to_text(a, names));
  return "forest{" + join(tp, ";") + "|" + join(ap, ";") + "}";
}

RootedTree parse_tree(std::string_view text, LabelNames* names) {
  Parser p(text, names);
  auto t = p.tree();
  if (!p.done()) p.fail("trailing characters");
  return t;
}

Aroma parse_aroma(std::string_view text, LabelNames* names) {
  Parser p(text, names);
  auto a = p.aroma();
  if (!p.done()) p.fail("trailing characters");
  return a;
}

AromaticForest parse_forest(std::string_view text, LabelNames* names) {
  Parser p(text, names);
  auto f = p.forest();
  if (!p.done()) p.fail("trailing characters");
  return f;
}

}  // namespace aromatica

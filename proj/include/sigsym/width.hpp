#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sigsym/error.hpp"
#include "sigsym/subset.hpp"

namespace sigsym {

inline constexpr std::size_t kMaxWidthVertices = 10;

/// Memoized set function on subsets of {0..n-1}. Expected to be symmetric
/// (f(X) = f(V \ X)). Not safe for concurrent use; give each thread its own.
class CutFunction {
 public:
  CutFunction(std::size_t n, std::function<std::size_t(Subset)> eval) : n_(n), eval_(std::move(eval)) {
    if (n_ <= 20) dense_.assign(std::size_t{1} << n_, kUnset);
  }

  std::size_t ground_size() const { return n_; }

  std::size_t operator()(Subset x) const {
    if (!dense_.empty()) {
      auto& slot = dense_[x.bits()];
      if (slot == kUnset) slot = eval_(x);
      return slot;
    }
    auto it = sparse_.find(x.bits());
    if (it != sparse_.end()) return it->second;
    return sparse_[x.bits()] = eval_(x);
  }

 private:
  static constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::size_t n_;
  std::function<std::size_t(Subset)> eval_;
  mutable std::vector<std::size_t> dense_;
  mutable std::unordered_map<std::uint32_t, std::size_t> sparse_;
};

/// A layout stored as a rooted binary tree whose leaves are the vertices.
/// Suppressing the root gives the cubic tree: every non-root node owns the
/// edge to its parent, and the root's two child edges are one edge.
class Layout {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    int leaf = -1;
  };

  Layout() = default;

  static Layout single(std::size_t vertex) {
    Layout l;
    l.root_ = l.add_leaf(vertex);
    return l;
  }

  int add_leaf(std::size_t vertex) {
    nodes_.push_back({-1, -1, static_cast<int>(vertex)});
    return static_cast<int>(nodes_.size()) - 1;
  }
  int add_join(int left, int right) {
    nodes_.push_back({left, right, -1});
    return static_cast<int>(nodes_.size()) - 1;
  }
  void set_root(int r) { root_ = r; }

  int root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  bool empty() const { return root_ < 0; }

  Subset leaves_below(int node) const {
    const Node& nd = nodes_[static_cast<std::size_t>(node)];
    if (nd.leaf >= 0) return Subset::single(static_cast<std::size_t>(nd.leaf));
    return leaves_below(nd.left) | leaves_below(nd.right);
  }

  Subset leaves() const { return empty() ? Subset{} : leaves_below(root_); }

  /// One side of every edge of the cubic tree.
  std::vector<Subset> edge_sides() const {
    std::vector<Subset> out;
    if (empty()) return out;
    const Node& r = nodes_[static_cast<std::size_t>(root_)];
    if (r.leaf >= 0) return out;
    out.push_back(leaves_below(r.left));
    collect(r.left, out);
    collect(r.right, out);
    return out;
  }

  /// Nested-parenthesis term over the given labels, e.g. `((x y) (z w))`.
  std::string to_string(const std::vector<std::string>& labels) const {
    if (empty()) return "()";
    return term(root_, labels);
  }

  /// Parses a term produced by to_string (any nesting of binary pairs).
  static Layout parse(std::string_view text, const std::vector<std::string>& labels) {
    Layout l;
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    std::function<int()> parse_node = [&]() -> int {
      skip();
      if (pos >= text.size()) fail(ErrorKind::ParseError, "unexpected end of layout term");
      if (text[pos] == '(') {
        ++pos;
        const int a = parse_node();
        const int b = parse_node();
        skip();
        if (pos >= text.size() || text[pos] != ')') fail(ErrorKind::ParseError, "expected ')' in layout term");
        ++pos;
        return l.add_join(a, b);
      }
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) && text[end] != '(' &&
             text[end] != ')')
        ++end;
      const std::string name(text.substr(pos, end - pos));
      pos = end;
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return l.add_leaf(i);
      fail(ErrorKind::ParseError, "unknown label '" + name + "' in layout term");
    };
    skip();
    if (text.substr(pos) == "()") return l;
    l.root_ = parse_node();
    skip();
    if (pos != text.size()) fail(ErrorKind::ParseError, "trailing text after layout term");
    std::vector<int> seen(labels.size(), 0);
    for (const auto& nd : l.nodes_)
      if (nd.leaf >= 0 && seen[static_cast<std::size_t>(nd.leaf)]++)
        fail(ErrorKind::ParseError, "label repeated in layout term");
    return l;
  }

 private:
  void collect(int node, std::vector<Subset>& out) const {
    const Node& nd = nodes_[static_cast<std::size_t>(node)];
    if (nd.leaf >= 0) return;
    out.push_back(leaves_below(nd.left));
    out.push_back(leaves_below(nd.right));
    collect(nd.left, out);
    collect(nd.right, out);
  }

  std::string term(int node, const std::vector<std::string>& labels) const {
    const Node& nd = nodes_[static_cast<std::size_t>(node)];
    if (nd.leaf >= 0) return labels[static_cast<std::size_t>(nd.leaf)];
    return "(" + term(nd.left, labels) + " " + term(nd.right, labels) + ")";
  }

  std::vector<Node> nodes_;
  int root_ = -1;
};

enum class EdgeSide { Below, Above };

/// Maximum of f over the edges of the layout; 0 with no edges.
inline std::size_t layout_width(const CutFunction& f, const Layout& layout, EdgeSide side = EdgeSide::Below) {
  const Subset all = Subset::full(f.ground_size());
  if (layout.leaves() != all) fail(ErrorKind::GroundMismatch, "layout leaves do not match the ground set");
  std::size_t w = 0;
  for (Subset s : layout.edge_sides()) w = std::max(w, f(side == EdgeSide::Below ? s : all - s));
  return w;
}

struct WidthResult {
  std::size_t width = 0;
  Layout layout;
};

/// Exact minimum width over all layouts, by dynamic programming over
/// subsets: best(S) is the least achievable max over edges inside a subtree
/// with leaf set S. Ties keep the first split in increasing bitmask order of
/// the part holding the least element of S.
inline WidthResult min_width(const CutFunction& f) {
  const std::size_t n = f.ground_size();
  if (n > kMaxWidthVertices) fail(ErrorKind::SizeLimitExceeded, "exact width limited to 10 vertices");
  WidthResult result;
  if (n == 0) return result;
  if (n == 1) {
    result.layout = Layout::single(0);
    return result;
  }

  const std::uint32_t full = (1u << n) - 1;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best(full + 1, kInf);
  std::vector<std::uint32_t> split(full + 1, 0);

  // Subsets in increasing size so that parts are solved first.
  std::vector<std::uint32_t> order;
  for (std::uint32_t s = 1; s <= full; ++s) order.push_back(s);
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });

  for (std::uint32_t s : order) {
    if (std::popcount(s) == 1) {
      best[s] = 0;
      continue;
    }
    if (s == full) continue;
    const std::uint32_t low = s & (~s + 1);
    const std::uint32_t rest = s ^ low;
    // c ranges over subsets containing `low`, proper.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t c = sub | low;
      if (c != s) {
        const std::uint32_t d = s ^ c;
        const std::size_t w =
            std::max({f(Subset(c)), f(Subset(d)), best[c], best[d]});
        if (w < best[s] || (w == best[s] && c < split[s])) {
          best[s] = w;
          split[s] = c;
        }
      }
      if (sub == 0) break;
    }
  }

  // Top level: the root edge joins A and V \ A.
  std::size_t top = kInf;
  std::uint32_t top_split = 0;
  const std::uint32_t rest = full ^ 1u;
  for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
    const std::uint32_t a = sub | 1u;
    if (a != full) {
      const std::size_t w = std::max({f(Subset(a)), best[a], best[full ^ a]});
      if (w < top || (w == top && a < top_split)) {
        top = w;
        top_split = a;
      }
    }
    if (sub == 0) break;
  }

  Layout l;
  std::function<int(std::uint32_t)> build = [&](std::uint32_t s) -> int {
    if (std::popcount(s) == 1) return l.add_leaf(static_cast<std::size_t>(std::countr_zero(s)));
    const int a = build(split[s]);
    const int b = build(s ^ split[s]);
    return l.add_join(a, b);
  };
  const int left = build(top_split);
  const int right = build(full ^ top_split);
  l.set_root(l.add_join(left, right));
  result.width = top;
  result.layout = std::move(l);
  return result;
}

/// Every layout of {0..n-1} exactly once (as cubic trees), built by inserting
/// leaves one at a time on every edge. There are (2n-5)!! of them for n >= 3.
inline std::vector<Layout> enumerate_layouts(std::size_t n) {
  if (n > kMaxWidthVertices) fail(ErrorKind::SizeLimitExceeded, "layout enumeration limited to 10 vertices");
  std::vector<Layout> out;
  if (n == 0) return {Layout{}};
  if (n == 1) return {Layout::single(0)};
  Layout base;
  const int a = base.add_leaf(0);
  const int b = base.add_leaf(1);
  base.set_root(base.add_join(a, b));
  std::vector<Layout> current{base};
  for (std::size_t v = 2; v < n; ++v) {
    std::vector<Layout> next;
    for (const Layout& l : current) {
      const int root = l.root();
      const int skip = l.nodes()[static_cast<std::size_t>(root)].right;
      for (int node = 0; node < static_cast<int>(l.nodes().size()); ++node) {
        if (node == root || node == skip) continue;
        // Subdivide the edge above `node` and hang the new leaf there.
        const auto& nodes = l.nodes();
        Layout rebuilt;
        std::function<int(int)> rebuild = [&](int x) -> int {
          const auto& nd = nodes[static_cast<std::size_t>(x)];
          int id;
          if (nd.leaf >= 0) {
            id = rebuilt.add_leaf(static_cast<std::size_t>(nd.leaf));
          } else {
            const int l1 = rebuild(nd.left);
            const int r1 = rebuild(nd.right);
            id = rebuilt.add_join(l1, r1);
          }
          if (x == node) id = rebuilt.add_join(id, rebuilt.add_leaf(v));
          return id;
        };
        rebuilt.set_root(rebuild(root));
        next.push_back(std::move(rebuilt));
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace sigsym

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sigsym/error.hpp"
#include "sigsym/field.hpp"
#include "sigsym/matrix.hpp"
#include "sigsym/subset.hpp"
#include "sigsym/width.hpp"

namespace sigsym {

/// An F*-graph is its matrix: m_xy is the colour of the edge (x,y), 0 when
/// absent, diagonal entries are loops.
using FStarGraph = LabeledMatrix;

inline bool is_loop_free(const FStarGraph& g) { return g.zero_diagonal(); }

/// A directed graph on sorted labels; loops allowed.
class DirectedGraph {
 public:
  explicit DirectedGraph(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
      fail(ErrorKind::InvalidArgument, "duplicate vertex label");
    if (labels_.size() > kMaxLabels) fail(ErrorKind::SizeLimitExceeded, "at most 24 vertices supported");
    out_.assign(labels_.size(), 0);
  }

  static DirectedGraph with_size(std::size_t n) { return DirectedGraph(LabeledMatrix::default_labels(n)); }

  /// Arc (i,j) present iff bit i*n + j is set.
  static DirectedGraph from_bits(std::size_t n, std::uint64_t bits) {
    DirectedGraph g = with_size(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (bits >> (i * n + j) & 1u) g.add_arc(i, j);
    return g;
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t index_of(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) fail(ErrorKind::InvalidArgument, "unknown vertex '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool has_arc(std::size_t u, std::size_t v) const { return out_[u] >> v & 1u; }
  void add_arc(std::size_t u, std::size_t v) { out_[u] |= std::uint32_t{1} << v; }
  void add_arc(const std::string& u, const std::string& v) { add_arc(index_of(u), index_of(v)); }

  std::vector<std::pair<std::size_t, std::size_t>> arcs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v = 0; v < size(); ++v)
        if (has_arc(u, v)) out.emplace_back(u, v);
    return out;
  }

  bool is_loop_free() const {
    for (std::size_t u = 0; u < size(); ++u)
      if (has_arc(u, u)) return false;
    return true;
  }

  /// 0/1 adjacency matrix over GF(2), not symmetric in general.
  LabeledMatrix adjacency() const {
    const Field f2 = Field::prime(2);
    LabeledMatrix m(f2, labels_);
    for (auto [u, v] : arcs()) m(u, v) = f2.one();
    return m;
  }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint32_t> out_;
};

/// sigma_4(x) = x^2 on GF(4).
inline SesquiMorphism gf4_conjugation() {
  const Field f4 = Field::canonical(2, 2);
  return SesquiMorphism::make(f4, 1, f4.one());
}

/// Entry (x,y) is 1 for arcs both ways, a for (x,y) only, a^2 for (y,x)
/// only; a loop gives 1 on the diagonal.
inline FStarGraph digraph_to_gf4(const DirectedGraph& g) {
  const Field f4 = Field::canonical(2, 2);
  const Elem a{2}, a2{3};
  LabeledMatrix m(f4, g.labels());
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y) {
      const bool fwd = g.has_arc(x, y), back = g.has_arc(y, x);
      if (fwd && back)
        m(x, y) = f4.one();
      else if (fwd)
        m(x, y) = a;
      else if (back)
        m(x, y) = a2;
    }
  return m;
}

/// Inverse of digraph_to_gf4 on sigma_4-symmetric GF(4) matrices.
inline DirectedGraph gf4_to_digraph(const FStarGraph& m) {
  if (!m.field().is_gf4()) fail(ErrorKind::FieldMismatch, "directed graph decoding needs GF(4)");
  if (!is_sigma_eps_symmetric(m, gf4_conjugation(), {}))
    fail(ErrorKind::NotSigmaEpsSymmetric, "matrix is not sigma_4-symmetric");
  DirectedGraph g(m.labels());
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) {
      const auto v = m(x, y).v;
      if (v == 1 || v == 2) g.add_arc(x, y);
    }
  return g;
}

/// GF(q^2) over GF(q) with the conjugation sigma(x) = x^q, the image of
/// GF(q) inside it, and a fixed omega with {omega, omega^q} a GF(q)-basis.
struct QuadraticExtension {
  Field base;
  Field extension;
  SesquiMorphism conjugation;
  std::vector<Elem> embed;
  Elem omega;
  Elem omega_q;
};

inline QuadraticExtension quadratic_extension(const Field& base) {
  const int p = base.characteristic();
  const int k = base.degree();
  long big = 1;
  for (int i = 0; i < 2 * k; ++i) big *= p;
  if (big > static_cast<long>(kMaxFieldOrder)) fail(ErrorKind::FieldTooLarge, "quadratic extension exceeds order 512");
  const Field ext = Field::canonical(p, 2 * k);
  const SesquiMorphism conj = SesquiMorphism::make(ext, k, ext.one());

  // Root of the base modulus in the extension, least by code.
  const auto& mod = base.modulus();
  std::optional<Elem> root;
  for (Elem r : ext.elements()) {
    Elem acc = ext.zero();
    for (int i = static_cast<int>(mod.size()) - 1; i >= 0; --i)
      acc = ext.add(ext.mul(acc, r), ext.from_int(mod[static_cast<std::size_t>(i)]));
    if (acc == ext.zero()) {
      root = r;
      break;
    }
  }
  if (!root) fail(ErrorKind::ReducibleModulus, "base modulus has no root in the extension");
  std::vector<Elem> embed;
  for (Elem x : base.elements()) {
    const auto c = base.coeffs(x);
    Elem acc = ext.zero();
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
      acc = ext.add(ext.mul(acc, *root), ext.from_int(c[static_cast<std::size_t>(i)]));
    embed.push_back(acc);
  }

  // omega: least element whose conjugate is not a GF(q)-multiple of it.
  std::optional<Elem> omega;
  for (Elem w : ext.elements()) {
    if (w == ext.zero()) continue;
    const Elem wq = conj(w);
    bool dependent = false;
    for (Elem c : embed) dependent = dependent || ext.mul(c, w) == wq;
    if (!dependent) {
      omega = w;
      break;
    }
  }
  return {base, ext, conj, std::move(embed), *omega, conj(*omega)};
}

/// m~[x,y] = e(l(x,y)) omega + e(l(y,x)) omega^q; sigma-symmetric with
/// eps = +1 for the conjugation.
inline FStarGraph embed_quadratic(const FStarGraph& g, const QuadraticExtension& q) {
  require_same_field(g.field(), q.base);
  const Field& e = q.extension;
  LabeledMatrix m(e, g.labels());
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      m(x, y) = e.add(e.mul(q.embed[g(x, y).v], q.omega), e.mul(q.embed[g(y, x).v], q.omega_q));
  return m;
}

inline FStarGraph embed_quadratic(const FStarGraph& g) { return embed_quadratic(g, quadratic_extension(g.field())); }

/// The graph of I_Z P P_X (M*X) Q^-1 I_Z'. The input must be
/// (sigma, eps)-symmetric for some eps; the output is checked to be.
inline FStarGraph loop_pivot(const FStarGraph& g, const SesquiMorphism& sigma, const LoopPivotParams& params) {
  if (!sigma_eps_check(g, sigma)) fail(ErrorKind::NotSigmaEpsSymmetric, "graph is not (sigma, eps)-symmetric");
  FStarGraph out = loop_pivot_matrix(g, sigma, params);
  if (!sigma_eps_check(out, sigma)) fail(ErrorKind::NotSigmaEpsSymmetric, "complementation lost (sigma, eps)-symmetry");
  return out;
}

/// loop_pivot on a loop-free graph followed by deleting all loops.
inline FStarGraph pivot(const FStarGraph& g, const SesquiMorphism& sigma, const LoopPivotParams& params) {
  if (!is_loop_free(g)) fail(ErrorKind::NotLoopFree, "pivot needs a loop-free graph");
  return with_zero_diagonal(loop_pivot(g, sigma, params));
}

/// Lexicographically least serialization over all vertex orders; equal for
/// isomorphic graphs of the same field. The order is built one vertex at a
/// time, each step appending the entries between the new vertex and the
/// ones already placed, so a partial order fixes a prefix of the key.
inline std::vector<std::uint16_t> canonical_form(const FStarGraph& g) {
  const std::size_t n = g.size();
  if (n > kMaxWidthVertices) fail(ErrorKind::SizeLimitExceeded, "canonical form limited to 10 vertices");
  std::vector<std::uint16_t> best, cur;
  std::vector<std::size_t> order;
  std::vector<bool> used(n, false);
  bool have_best = false;
  auto extend = [&](auto&& self) -> void {
    const std::size_t k = order.size();
    if (k == n) {
      if (!have_best || cur < best) {
        best = cur;
        have_best = true;
      }
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      const std::size_t mark = cur.size();
      for (std::size_t i = 0; i < k; ++i) {
        cur.push_back(g(v, order[i]).v);
        cur.push_back(g(order[i], v).v);
      }
      cur.push_back(g(v, v).v);
      // prune when this prefix already exceeds the best key's prefix
      bool worse = false;
      if (have_best) {
        const auto cmp = std::lexicographical_compare_three_way(cur.begin(), cur.end(), best.begin(),
                                                                 best.begin() + static_cast<std::ptrdiff_t>(cur.size()));
        worse = cmp > 0;
      }
      if (!worse) {
        used[v] = true;
        order.push_back(v);
        self(self);
        order.pop_back();
        used[v] = false;
      }
      cur.resize(mark);
    }
  };
  extend(extend);
  best.insert(best.begin(), static_cast<std::uint16_t>(n));
  return best;
}

enum class PivotMode { Loop, LoopFree };

/// One generating complementation.
struct PivotMove {
  enum class Kind { Pivot, Scale, LeftSign, RightSign };
  Kind kind = Kind::Pivot;
  Subset set;
  std::size_t vertex = 0;
  Elem p;

  friend bool operator==(const PivotMove&, const PivotMove&) = default;
};

inline LoopPivotParams move_params(const SesquiMorphism& sigma, std::size_t n, const PivotMove& mv) {
  LoopPivotParams params;
  switch (mv.kind) {
    case PivotMove::Kind::Pivot:
      params.pivot = mv.set;
      break;
    case PivotMove::Kind::Scale:
      params.scaling = ScalingPair::single(sigma, n, mv.vertex, mv.p);
      break;
    case PivotMove::Kind::LeftSign:
      params.left_signs = Subset::single(mv.vertex);
      break;
    case PivotMove::Kind::RightSign:
      params.right_signs = Subset::single(mv.vertex);
      break;
  }
  return params;
}

inline FStarGraph apply_move(const FStarGraph& g, const SesquiMorphism& sigma, const PivotMove& mv, PivotMode mode) {
  const auto params = move_params(sigma, g.size(), mv);
  return mode == PivotMode::Loop ? loop_pivot(g, sigma, params) : pivot(g, sigma, params);
}

/// The generating moves available at g: pivots on every non-empty X with
/// M[X] non-singular, single-vertex scalings by p != 1 (q forced), and in
/// odd characteristic single-vertex left and right signs. Any
/// complementation factors into these, since the diagonal factors commute
/// with deleting loops.
inline std::vector<PivotMove> generating_moves(const FStarGraph& g) {
  const Field& f = g.field();
  const std::size_t n = g.size();
  std::vector<PivotMove> out;
  for (std::uint32_t bits = 1; bits < (1u << n); ++bits)
    if (nonsingular_principal(g, Subset(bits))) out.push_back({PivotMove::Kind::Pivot, Subset(bits), 0, f.zero()});
  for (std::size_t v = 0; v < n; ++v)
    for (Elem p : f.units())
      if (p != f.one()) out.push_back({PivotMove::Kind::Scale, {}, v, p});
  if (f.characteristic() != 2)
    for (std::size_t v = 0; v < n; ++v) {
      out.push_back({PivotMove::Kind::LeftSign, {}, v, f.zero()});
      out.push_back({PivotMove::Kind::RightSign, {}, v, f.zero()});
    }
  return out;
}

struct PivotClassLimits {
  std::size_t max_vertices = 6;
  int max_field_order = 5;
  std::size_t max_class_size = 20000;
};

struct PivotClass {
  struct Member {
    FStarGraph graph;
    std::vector<std::uint16_t> key;
    int parent = -1;
    PivotMove move;
  };
  std::vector<Member> members;
  bool truncated = false;

  std::size_t size() const { return members.size(); }

  /// Moves leading from the start graph to member i.
  std::vector<PivotMove> trace(std::size_t i) const {
    std::vector<PivotMove> out;
    for (int at = static_cast<int>(i); members[static_cast<std::size_t>(at)].parent >= 0;
         at = members[static_cast<std::size_t>(at)].parent)
      out.push_back(members[static_cast<std::size_t>(at)].move);
    std::reverse(out.begin(), out.end());
    return out;
  }

  bool contains_key(const std::vector<std::uint16_t>& key) const {
    return std::any_of(members.begin(), members.end(), [&](const Member& m) { return m.key == key; });
  }
};

/// Breadth-first closure of g under the generating moves, one member per
/// isomorphism class. Members keep the matrix actually reached so traces
/// replay exactly.
inline PivotClass pivot_class(const FStarGraph& g, const SesquiMorphism& sigma, PivotMode mode,
                              const PivotClassLimits& limits = {}) {
  require_same_field(g, sigma);
  if (g.size() > limits.max_vertices) fail(ErrorKind::SizeLimitExceeded, "pivot class limited by max_vertices");
  if (g.field().order() > limits.max_field_order)
    fail(ErrorKind::SizeLimitExceeded, "pivot class limited by max_field_order");
  if (!sigma_eps_check(g, sigma)) fail(ErrorKind::NotSigmaEpsSymmetric, "graph is not (sigma, eps)-symmetric");
  if (mode == PivotMode::LoopFree && !is_loop_free(g)) fail(ErrorKind::NotLoopFree, "pivot needs a loop-free graph");

  PivotClass out;
  std::unordered_map<std::string, std::size_t> seen;
  auto key_string = [](const std::vector<std::uint16_t>& k) { return std::string(k.begin(), k.end()); };
  auto key0 = canonical_form(g);
  seen.emplace(key_string(key0), 0);
  out.members.push_back({g, std::move(key0), -1, {}});
  for (std::size_t head = 0; head < out.members.size(); ++head) {
    const FStarGraph current = out.members[head].graph;
    for (const PivotMove& mv : generating_moves(current)) {
      FStarGraph next = apply_move(current, sigma, mv, mode);
      auto key = canonical_form(next);
      if (!seen.emplace(key_string(key), out.members.size()).second) continue;
      if (out.members.size() >= limits.max_class_size) {
        out.truncated = true;
        return out;
      }
      out.members.push_back({std::move(next), std::move(key), static_cast<int>(head), mv});
    }
  }
  return out;
}

struct PivotMinorWitness {
  std::vector<PivotMove> trace;
  FStarGraph member;
  /// Vertices of the member inducing a copy of H.
  Subset induced;
  /// Vertex of the member (by index) for each vertex of H.
  std::vector<std::size_t> embedding;
};

/// Searches the class of g for a member with an induced subgraph
/// isomorphic to h.
inline std::optional<PivotMinorWitness> pivot_minor_check(const FStarGraph& h, const FStarGraph& g,
                                                          const SesquiMorphism& sigma, PivotMode mode,
                                                          const PivotClassLimits& limits = {}) {
  require_same_field(h.field(), g.field());
  if (h.size() > g.size()) return std::nullopt;
  const PivotClass cls = pivot_class(g, sigma, mode, limits);
  if (cls.truncated) fail(ErrorKind::SizeLimitExceeded, "pivot class exceeds max_class_size");
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const FStarGraph& member = cls.members[i].graph;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      const Subset s(bits);
      if (s.size() != h.size()) continue;
      const LabeledMatrix sub = member.principal(s);
      auto iso = matrix_isomorphic(h, sub);
      if (!iso) continue;
      const auto members = s.members();
      std::vector<std::size_t> emb;
      for (std::size_t v = 0; v < h.size(); ++v) emb.push_back(members[(*iso)[v]]);
      return PivotMinorWitness{cls.trace(i), member, s, std::move(emb)};
    }
  }
  return std::nullopt;
}

struct RankWidthResult {
  std::size_t width = 0;
  Layout layout;
};

/// Minimum width of the cut-rank function over all layouts. The graph must
/// be (sigma, eps)-symmetric for some sesqui-morphism sigma.
inline RankWidthResult rank_width(const FStarGraph& g) {
  if (!find_sigma(g)) fail(ErrorKind::NotSigmaEpsSymmetric, "graph is not (sigma, eps)-symmetric for any sigma");
  if (g.size() > kMaxWidthVertices) fail(ErrorKind::SizeLimitExceeded, "rank-width limited to 10 vertices");
  CutFunction f(g.size(), [&g](Subset x) { return cut_rank(g, x); });
  auto r = min_width(f);
  return {r.width, std::move(r.layout)};
}

/// Rank-width of a directed graph: the GF(4) rank-width of its encoding.
inline RankWidthResult rank_width(const DirectedGraph& g) { return rank_width(digraph_to_gf4(g)); }

}  // namespace sigsym

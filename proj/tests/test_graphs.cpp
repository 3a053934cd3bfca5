#include <gtest/gtest.h>

#include <set>

#include "sigsym/graphs.hpp"
#include "sigsym/random.hpp"
#include "test_util.hpp"

using namespace sigsym;
using testutil::mat;

namespace {

std::size_t brute_rank_width(const FStarGraph& g) {
  CutFunction f(g.size(), [&g](Subset x) { return cut_rank(g, x); });
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& l : enumerate_layouts(g.size())) best = std::min(best, layout_width(f, l));
  return best;
}

DirectedGraph directed_cycle(std::size_t n) {
  auto g = DirectedGraph::with_size(n);
  for (std::size_t i = 0; i < n; ++i) g.add_arc(i, (i + 1) % n);
  return g;
}

DirectedGraph directed_path(std::size_t n) {
  auto g = DirectedGraph::with_size(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_arc(i, i + 1);
  return g;
}

LabeledMatrix permuted(const LabeledMatrix& m, const std::vector<std::size_t>& perm) {
  LabeledMatrix out(m.field(), m.labels());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(perm[i], perm[j]) = m(i, j);
  return out;
}

std::vector<std::size_t> random_perm(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng.engine());
  return p;
}

/// Closure under every complementation I_Z P P_X (M*X) Q^-1 I_Z' with all
/// parameters enumerated, keyed by canonical form.
std::set<std::vector<std::uint16_t>> full_closure(const FStarGraph& g, const SesquiMorphism& s, PivotMode mode) {
  const Field& f = g.field();
  const std::size_t n = g.size();
  // every sigma-compatible diagonal pair: p free in F*, q forced
  std::vector<ScalingPair> scalings;
  const auto units = f.units();
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    ScalingPair sp = ScalingPair::identity(f, n);
    for (std::size_t v = 0; v < n; ++v) {
      sp.p[v] = units[idx[v]];
      sp.q[v] = ScalingPair::partner(s, sp.p[v]);
    }
    scalings.push_back(sp);
    std::size_t v = 0;
    while (v < n && ++idx[v] == units.size()) idx[v++] = 0;
    if (v == n) break;
  }
  std::set<std::vector<std::uint16_t>> seen{canonical_form(g)};
  std::deque<FStarGraph> queue{g};
  while (!queue.empty()) {
    const FStarGraph cur = queue.front();
    queue.pop_front();
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      if (!nonsingular_principal(cur, Subset(x))) continue;
      for (std::uint32_t z = 0; z < (1u << n); ++z)
        for (std::uint32_t z2 = 0; z2 < (1u << n); ++z2)
          for (const auto& sp : scalings) {
            const LoopPivotParams params{Subset(x), Subset(z), Subset(z2), sp};
            FStarGraph next = mode == PivotMode::Loop ? loop_pivot(cur, s, params) : pivot(cur, s, params);
            if (seen.insert(canonical_form(next)).second) queue.push_back(std::move(next));
          }
    }
  }
  return seen;
}

std::set<std::vector<std::uint16_t>> class_keys(const PivotClass& c) {
  std::set<std::vector<std::uint16_t>> out;
  for (const auto& m : c.members) out.insert(m.key);
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(Graphs, Gf4EncodingTable) {
  auto g = DirectedGraph::with_size(3);
  g.add_arc(0, 1);
  g.add_arc(1, 0);
  g.add_arc(1, 2);
  g.add_arc(2, 2);
  auto m = digraph_to_gf4(g);
  EXPECT_EQ(m(0, 1).v, 1);
  EXPECT_EQ(m(1, 0).v, 1);
  EXPECT_EQ(m(1, 2).v, 2);
  EXPECT_EQ(m(2, 1).v, 3);
  EXPECT_EQ(m(2, 2).v, 1);
  EXPECT_EQ(m(0, 2).v, 0);
  EXPECT_TRUE(is_sigma_eps_symmetric(m, gf4_conjugation(), {}));
  auto empty = digraph_to_gf4(DirectedGraph::with_size(4));
  EXPECT_EQ(empty, LabeledMatrix(Field::canonical(2, 2), LabeledMatrix::default_labels(4)));
}

TEST(Graphs, Gf4RoundTrips) {
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
      auto g = DirectedGraph::from_bits(n, bits);
      EXPECT_EQ(gf4_to_digraph(digraph_to_gf4(g)), g);
    }
  const Field f4 = Field::canonical(2, 2);
  const auto s4 = gf4_conjugation();
  for (std::size_t n = 1; n <= 2; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n * n; ++i) total *= 4;
    std::size_t symmetric = 0;
    for (std::size_t code = 0; code < total; ++code) {
      LabeledMatrix m(f4, LabeledMatrix::default_labels(n));
      std::size_t c = code;
      for (std::size_t k = 0; k < n * n; ++k, c /= 4) m(k / n, k % n) = Elem{static_cast<std::uint16_t>(c % 4)};
      if (!is_sigma_eps_symmetric(m, s4, {})) {
        EXPECT_EQ(kind_of([&] { gf4_to_digraph(m); }), ErrorKind::NotSigmaEpsSymmetric);
        continue;
      }
      ++symmetric;
      EXPECT_EQ(digraph_to_gf4(gf4_to_digraph(m)), m);
    }
    // one sigma_4-symmetric matrix per directed graph
    EXPECT_EQ(symmetric, std::size_t{1} << (n * n));
  }
}

TEST(Graphs, QuadraticEmbeddingAtTwoIsTheTable) {
  const auto ext = quadratic_extension(Field::prime(2));
  EXPECT_EQ(ext.omega.v, 2);
  EXPECT_EQ(ext.omega_q.v, 3);
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * n)); ++bits) {
      auto g = DirectedGraph::from_bits(n, bits);
      EXPECT_EQ(embed_quadratic(g.adjacency(), ext), digraph_to_gf4(g));
    }
}

TEST(Graphs, QuadraticEmbeddingProperties) {
  for (const Field& base : {Field::prime(3), Field::canonical(2, 2), Field::prime(5), Field::canonical(2, 3)}) {
    const auto ext = quadratic_extension(base);
    const Field& e = ext.extension;
    EXPECT_EQ(e.order(), base.order() * base.order());
    // the embedding is a field homomorphism
    for (Elem x : base.elements())
      for (Elem y : base.elements()) {
        EXPECT_EQ(ext.embed[base.mul(x, y).v], e.mul(ext.embed[x.v], ext.embed[y.v]));
        EXPECT_EQ(ext.embed[base.add(x, y).v], e.add(ext.embed[x.v], ext.embed[y.v]));
      }
    // {omega, omega^q} is a basis: the encoding of a pair is injective
    std::set<std::uint16_t> codes;
    for (Elem x : base.elements())
      for (Elem y : base.elements())
        codes.insert(e.add(e.mul(ext.embed[x.v], ext.omega), e.mul(ext.embed[y.v], ext.omega_q)).v);
    EXPECT_EQ(codes.size(), static_cast<std::size_t>(e.order()));
    Rng rng(base.order());
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 1 + rng.below(4);
      LabeledMatrix g(base, LabeledMatrix::default_labels(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.sparse_element(base, 0.4);
      const auto m = embed_quadratic(g, ext);
      EXPECT_TRUE(is_sigma_eps_symmetric(m, ext.conjugation, {}));
    }
  }
  // GF(9): the root of the canonical modulus is not usable as omega
  const auto e9 = quadratic_extension(Field::prime(3));
  EXPECT_NE(e9.omega.v, 3);
  EXPECT_EQ(kind_of([] { quadratic_extension(Field::prime(23)); }), ErrorKind::FieldTooLarge);
  const auto edgeless = embed_quadratic(LabeledMatrix(Field::prime(3), {"x", "y"}));
  EXPECT_EQ(edgeless, LabeledMatrix(e9.extension, {"x", "y"}));
}

TEST(Graphs, EmbeddingReflectsIsomorphism) {
  const Field f3 = Field::prime(3);
  const auto ext = quadratic_extension(f3);
  for (std::uint64_t i = 0; i < 60; ++i) {
    Rng rng = Rng::stream(89, "reflect", i);
    const std::size_t n = 1 + rng.below(4);
    LabeledMatrix g(f3, LabeledMatrix::default_labels(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g(a, b) = rng.sparse_element(f3, 0.5);
    LabeledMatrix h = permuted(g, random_perm(n, rng));
    if (rng.chance(0.5)) {
      const std::size_t a = rng.below(n), b = rng.below(n);
      h(a, b) = f3.add(h(a, b), f3.one());
    }
    EXPECT_EQ(matrix_isomorphic(g, h).has_value(),
              matrix_isomorphic(embed_quadratic(g, ext), embed_quadratic(h, ext)).has_value());
  }
}

TEST(Graphs, CanonicalFormDetectsIsomorphism) {
  for (const Field& f : testutil::test_fields())
    for (std::uint64_t i = 0; i < 40; ++i) {
      Rng rng = Rng::stream(97, "canon", i);
      const std::size_t n = 1 + rng.below(5);
      LabeledMatrix g(f, LabeledMatrix::default_labels(n));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) g(a, b) = rng.sparse_element(f, 0.6);
      const LabeledMatrix h = permuted(g, random_perm(n, rng));
      EXPECT_EQ(canonical_form(g), canonical_form(h));
      LabeledMatrix k = h;
      const std::size_t a = rng.below(n), b = rng.below(n);
      k(a, b) = f.add(k(a, b), f.one());
      EXPECT_EQ(canonical_form(g) == canonical_form(k), matrix_isomorphic(g, k).has_value());
    }
}

TEST(Graphs, LoopPivotBasics) {
  const Field f2 = Field::prime(2);
  const auto id = SesquiMorphism::identity(f2);
  auto path = mat(f2, {"x", "y", "z"}, {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  EXPECT_EQ(loop_pivot(path, id, {}), path);
  EXPECT_EQ(pivot(path, id, {}), path);
  auto pv = pivot(path, id, {path.subset({"x", "y"}), {}, {}, std::nullopt});
  EXPECT_TRUE(is_loop_free(pv));
  EXPECT_EQ(rank_width(pv).width, rank_width(path).width);
  EXPECT_EQ(kind_of([&] { pivot(path, id, {Subset::single(0), {}, {}, std::nullopt}); }),
            ErrorKind::SingularPivotBlock);
  auto looped = mat(f2, {"x"}, {{1}});
  EXPECT_EQ(kind_of([&] { pivot(looped, id, {}); }), ErrorKind::NotLoopFree);
  EXPECT_EQ(kind_of([&] { loop_pivot(mat(f2, {"x", "y"}, {{0, 1}, {0, 0}}), id, {}); }),
            ErrorKind::NotSigmaEpsSymmetric);

  const auto s4 = gf4_conjugation();
  auto arc = DirectedGraph::with_size(2);
  arc.add_arc(0, 1);
  auto m = digraph_to_gf4(arc);
  for (std::uint32_t x = 0; x < 4; ++x) {
    if (!nonsingular_principal(m, Subset(x))) continue;
    auto out = loop_pivot(m, s4, {Subset(x), {}, {}, std::nullopt});
    EXPECT_TRUE(sigma_eps_check(out, s4).has_value());
  }
}

TEST(Graphs, RandomComplementationsPreserveRankWidth) {
  for (const Field& f : testutil::test_fields())
    for (std::uint64_t i = 0; i < 10; ++i) {
      Rng rng = Rng::stream(101, "rw-keep", i);
      const std::size_t n = 1 + rng.below(5);
      const auto sig = enumerate_sesqui(f);
      const auto s = sig[rng.below(sig.size())];
      const auto g = random_sigma_eps_matrix(s, random_epsilon(f, n, rng), n, rng);
      const std::size_t rw = rank_width(g).width;
      for (int t = 0; t < 5; ++t) {
        const Subset x = rng.subset(n);
        if (!nonsingular_principal(g, x)) continue;
        const LoopPivotParams params{x, rng.subset(n), rng.subset(n), random_scaling_pair(s, n, rng)};
        EXPECT_EQ(rank_width(loop_pivot(g, s, params)).width, rw);
        const auto lf = with_zero_diagonal(g);
        if (nonsingular_principal(lf, x)) {
          EXPECT_EQ(rank_width(pivot(lf, s, params)).width, rank_width(lf).width);
        }
      }
    }
}

TEST(Graphs, PivotClassSmallCases) {
  const Field f2 = Field::prime(2);
  const auto id = SesquiMorphism::identity(f2);
  auto edgeless = LabeledMatrix(f2, {"x", "y", "z"});
  EXPECT_EQ(pivot_class(edgeless, id, PivotMode::LoopFree).size(), 1u);
  EXPECT_EQ(pivot_class(edgeless, id, PivotMode::Loop).size(), 1u);
  auto edge = mat(f2, {"x", "y"}, {{0, 1}, {1, 0}});
  auto cls = pivot_class(edge, id, PivotMode::LoopFree);
  EXPECT_EQ(cls.size(), 1u);
  EXPECT_FALSE(cls.truncated);
  auto path = mat(f2, {"x", "y", "z"}, {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  PivotClassLimits tiny;
  tiny.max_class_size = 1;
  auto looped = mat(f2, {"x", "y", "z"}, {{1, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  EXPECT_TRUE(pivot_class(looped, id, PivotMode::Loop, tiny).truncated);
  PivotClassLimits small;
  small.max_vertices = 2;
  EXPECT_EQ(kind_of([&] { pivot_class(path, id, PivotMode::LoopFree, small); }), ErrorKind::SizeLimitExceeded);
  EXPECT_EQ(kind_of([&] { pivot_class(LabeledMatrix(Field::prime(7), {"x"}), SesquiMorphism::identity(Field::prime(7)),
                                      PivotMode::Loop); }),
            ErrorKind::SizeLimitExceeded);
}

TEST(Graphs, GeneratorClosureEqualsFullClosure) {
  struct Case {
    Field f;
    std::size_t n;
  };
  for (const Case& c : {Case{Field::prime(2), 3}, Case{Field::prime(3), 2}, Case{Field::canonical(2, 2), 2},
                        Case{Field::prime(5), 2}})
    for (std::uint64_t i = 0; i < 6; ++i) {
      Rng rng = Rng::stream(103, "closure", i);
      const auto sig = enumerate_sesqui(c.f);
      const auto s = sig[rng.below(sig.size())];
      const auto g = random_sigma_eps_matrix(s, random_epsilon(c.f, c.n, rng), c.n, rng);
      EXPECT_EQ(class_keys(pivot_class(g, s, PivotMode::Loop)), full_closure(g, s, PivotMode::Loop));
      const auto lf = with_zero_diagonal(g);
      EXPECT_EQ(class_keys(pivot_class(lf, s, PivotMode::LoopFree)), full_closure(lf, s, PivotMode::LoopFree));
    }
}

TEST(Graphs, PivotClassInvariants) {
  for (const Field& f : testutil::test_fields())
    for (std::uint64_t i = 0; i < 4; ++i) {
      Rng rng = Rng::stream(107, "class", i);
      const std::size_t n = 2 + rng.below(2);
      const auto sig = enumerate_sesqui(f);
      const auto s = sig[rng.below(sig.size())];
      const auto g = random_sigma_eps_matrix(s, random_epsilon(f, n, rng), n, rng);
      for (PivotMode mode : {PivotMode::Loop, PivotMode::LoopFree}) {
        const auto start = mode == PivotMode::Loop ? g : with_zero_diagonal(g);
        const auto cls = pivot_class(start, s, mode);
        ASSERT_FALSE(cls.truncated);
        const std::size_t rw = rank_width(start).width;
        for (std::size_t k = 0; k < cls.size(); ++k) {
          const auto& member = cls.members[k].graph;
          EXPECT_TRUE(sigma_eps_check(member, s).has_value());
          EXPECT_EQ(rank_width(member).width, rw);
          if (mode == PivotMode::LoopFree) {
            EXPECT_TRUE(is_loop_free(member));
          }
          FStarGraph replay = start;
          for (const auto& mv : cls.trace(k)) replay = apply_move(replay, s, mv, mode);
          EXPECT_EQ(replay, member);
        }
        // symmetric relation: the start lies in the class of any member
        const auto& last = cls.members.back().graph;
        EXPECT_TRUE(pivot_class(last, s, mode).contains_key(canonical_form(start)));
      }
    }
}

TEST(Graphs, PivotMinorWitnesses) {
  const Field f2 = Field::prime(2);
  const auto id = SesquiMorphism::identity(f2);
  auto path = mat(f2, {"w", "x", "y", "z"}, {{0, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}});
  auto self = pivot_minor_check(path, path, id, PivotMode::LoopFree);
  ASSERT_TRUE(self.has_value());
  EXPECT_TRUE(self->trace.empty());
  EXPECT_EQ(self->induced, Subset::full(4));
  auto single = pivot_minor_check(LabeledMatrix(f2, {"v"}), path, id, PivotMode::LoopFree);
  ASSERT_TRUE(single.has_value());
  EXPECT_EQ(single->induced.size(), 1u);
  auto triangle = mat(f2, {"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  auto c5 = mat(f2, {"a", "b", "c", "d", "e"},
                {{0, 1, 0, 0, 1}, {1, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}, {1, 0, 0, 1, 0}});
  auto w = pivot_minor_check(triangle, c5, id, PivotMode::LoopFree);
  ASSERT_TRUE(w.has_value());
  FStarGraph replay = c5;
  for (const auto& mv : w->trace) replay = apply_move(replay, id, mv, PivotMode::LoopFree);
  EXPECT_EQ(replay, w->member);
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(triangle(u, v), w->member(w->embedding[u], w->embedding[v]));
  EXPECT_LE(rank_width(triangle).width, rank_width(c5).width);

  for (std::uint64_t i = 0; i < 30; ++i) {
    Rng rng = Rng::stream(109, "pm", i);
    const Field f = testutil::test_fields()[rng.below(4)];
    const auto sig = enumerate_sesqui(f);
    const auto s = sig[rng.below(sig.size())];
    const std::size_t n = 2 + rng.below(3);
    const auto g = with_zero_diagonal(random_sigma_eps_matrix(s, random_epsilon(f, n, rng), n, rng));
    const std::size_t nh = 1 + rng.below(n);
    const auto h = with_zero_diagonal(random_sigma_eps_matrix(s, random_epsilon(f, nh, rng), nh, rng));
    auto wit = pivot_minor_check(h, g, s, PivotMode::LoopFree);
    if (wit) {
      EXPECT_LE(rank_width(h).width, rank_width(g).width);
    }
  }
}

TEST(Graphs, RankWidthValues) {
  const Field f2 = Field::prime(2);
  EXPECT_EQ(rank_width(LabeledMatrix(f2, {"a", "b", "c"})).width, 0u);
  auto k4 = mat(f2, {"a", "b", "c", "d"}, {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}});
  EXPECT_EQ(rank_width(k4).width, 1u);
  EXPECT_EQ(brute_rank_width(k4), 1u);
  EXPECT_EQ(rank_width(directed_cycle(4)).width, brute_rank_width(digraph_to_gf4(directed_cycle(4))));
  EXPECT_EQ(rank_width(directed_path(4)).width, brute_rank_width(digraph_to_gf4(directed_path(4))));
  EXPECT_EQ(rank_width(directed_cycle(4)).width, 2u);
  EXPECT_EQ(rank_width(directed_path(4)).width, 1u);
  EXPECT_EQ(kind_of([&] { rank_width(mat(f2, {"x", "y"}, {{0, 1}, {0, 0}})); }), ErrorKind::NotSigmaEpsSymmetric);
}

TEST(Graphs, UndirectedRankWidthAgreesAcrossFields) {
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = Rng::stream(113, "undirected", i);
    const std::size_t n = 1 + rng.below(5);
    auto g = DirectedGraph::with_size(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng.chance(0.5)) {
          g.add_arc(u, v);
          g.add_arc(v, u);
        }
    EXPECT_EQ(rank_width(g).width, rank_width(g.adjacency()).width);
  }
}

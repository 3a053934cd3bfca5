#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigsym/error.hpp"
#include "sigsym/graphs.hpp"
#include "sigsym/matrix.hpp"
#include "sigsym/subset.hpp"

namespace sigsym {

inline constexpr std::size_t kMaxBranchWidthVertices = 8;

/// A set system (V, F) with F non-empty. Feasible sets are kept in
/// canonical subset order.
class DeltaMatroid {
 public:
  DeltaMatroid(std::vector<std::string> ground, std::vector<Subset> feasible) : ground_(std::move(ground)) {
    if (ground_.size() > kMaxLabels) fail(ErrorKind::SizeLimitExceeded, "at most 24 ground elements supported");
    const Subset all = Subset::full(ground_.size());
    for (Subset f : feasible)
      if (!f.is_subset_of(all)) fail(ErrorKind::InvalidArgument, "feasible set outside the ground set");
    if (feasible.empty()) fail(ErrorKind::InvalidArgument, "a set system needs at least one feasible set");
    std::sort(feasible.begin(), feasible.end(), canonical_less);
    feasible.erase(std::unique(feasible.begin(), feasible.end()), feasible.end());
    feasible_ = std::move(feasible);
    for (Subset f : feasible_) lookup_.push_back(f.bits());
    std::sort(lookup_.begin(), lookup_.end());
  }

  const std::vector<std::string>& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  const std::vector<Subset>& feasible() const { return feasible_; }

  bool contains(Subset s) const { return std::binary_search(lookup_.begin(), lookup_.end(), s.bits()); }

  friend bool operator==(const DeltaMatroid& a, const DeltaMatroid& b) {
    return a.ground_ == b.ground_ && a.feasible_ == b.feasible_;
  }

 private:
  std::vector<std::string> ground_;
  std::vector<Subset> feasible_;
  std::vector<std::uint32_t> lookup_;
};

/// S(M): the sets X with M[X] non-singular; the empty set always is.
inline DeltaMatroid delta_matroid_of(const LabeledMatrix& m) {
  std::vector<Subset> feasible;
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m.size()); ++bits)
    if (nonsingular_principal(m, Subset(bits))) feasible.emplace_back(bits);
  return DeltaMatroid(m.labels(), std::move(feasible));
}

struct SeaViolation {
  Subset f;
  Subset f_prime;
  std::size_t x = 0;
};

/// Symmetric exchange: for F, F' feasible and x in F^F' some y in F^F'
/// (y = x allowed) has F^{x,y} feasible. Returns the first violation with
/// F, F' in canonical order and x ascending.
inline std::optional<SeaViolation> sea_check(const DeltaMatroid& d) {
  for (Subset f : d.feasible())
    for (Subset g : d.feasible()) {
      const Subset diff = f ^ g;
      for (auto x : diff.members()) {
        bool ok = false;
        for (auto y : diff.members()) {
          if (d.contains(f ^ (Subset::single(x) | Subset::single(y)))) {
            ok = true;
            break;
          }
        }
        if (!ok) return SeaViolation{f, g, x};
      }
    }
  return std::nullopt;
}

inline DeltaMatroid twist(const DeltaMatroid& d, Subset x) {
  std::vector<Subset> out;
  for (Subset f : d.feasible()) out.push_back(f ^ x);
  return DeltaMatroid(d.ground(), std::move(out));
}

/// Ground V \ (X u Y), feasible sets (F ^ X) \ Y. X and Y must be disjoint.
inline DeltaMatroid minor(const DeltaMatroid& d, Subset x, Subset y) {
  if ((x & y) != Subset{}) fail(ErrorKind::OverlappingMinorSets, "minor sets overlap");
  const Subset kept = (x | y).complement(d.size());
  const auto keep = kept.members();
  std::vector<std::string> ground;
  for (auto i : keep) ground.push_back(d.ground()[i]);
  std::vector<Subset> out;
  for (Subset f : d.feasible()) {
    const Subset g = (f ^ x) - y;
    Subset packed;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (g.contains(keep[i])) packed = packed.with(i);
    out.push_back(packed);
  }
  return DeltaMatroid(std::move(ground), std::move(out));
}

/// Least X in canonical order with d1 = twist(d2, X).
inline std::optional<Subset> equivalent(const DeltaMatroid& d1, const DeltaMatroid& d2) {
  if (d1.ground() != d2.ground()) fail(ErrorKind::GroundMismatch, "delta-matroids have different ground sets");
  if (d1.feasible().size() != d2.feasible().size()) return std::nullopt;
  // any solution maps the first feasible set of d1 onto some feasible set of d2
  std::vector<Subset> candidates;
  const Subset f0 = d1.feasible().front();
  for (Subset f : d2.feasible()) candidates.push_back(f0 ^ f);
  std::sort(candidates.begin(), candidates.end(), canonical_less);
  for (Subset x : candidates)
    if (twist(d2, x) == d1) return x;
  return std::nullopt;
}

/// The exchange step behind S(M) being a delta-matroid: with X, Y feasible,
/// x in X^Y and M' = P_X (M*X), either m'_xx != 0 or some y in X^Y has
/// M'[{x,y}] non-singular.
inline bool exchange_step_holds(const LabeledMatrix& m, const SesquiMorphism& sigma, Subset x_set, Subset y_set,
                                std::size_t x) {
  const LabeledMatrix mp = loop_pivot_matrix(m, sigma, {x_set, {}, {}, std::nullopt});
  if (mp(x, x) != m.field().zero()) return true;
  for (auto y : (x_set ^ y_set).members())
    if (nonsingular_principal(mp, Subset::single(x) | Subset::single(y))) return true;
  return false;
}

/// Upper bound on the branch-width of S(M): the least rank-width among M
/// and its complementations P_X (M*X) at feasible X.
inline std::size_t branch_width_bound(const LabeledMatrix& m) {
  const auto sigma = find_sigma(m);
  if (!sigma) fail(ErrorKind::NotSigmaEpsSymmetric, "matrix is not (sigma, eps)-symmetric for any sigma");
  if (m.size() > kMaxBranchWidthVertices) fail(ErrorKind::SizeLimitExceeded, "branch-width bound limited to 8 vertices");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const DeltaMatroid d = delta_matroid_of(m);
  for (Subset x : d.feasible())
    best = std::min(best, rank_width(loop_pivot_matrix(m, *sigma, {x, {}, {}, std::nullopt})).width);
  return best;
}

}  // namespace sigsym

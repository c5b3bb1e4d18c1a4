#pragma once

// Endomorphism algebras of m-rigid objects in C. For T inside the fundamental
// domain, Hom_C(a, b) = Hom_D(a, b) + Hom_D(a, Gb), and a composition
//
//   (g0, g1) o (f0, f1) = (g0 f0, G(g0) f1 + g1 f0)
//
// drops the Hom_D(a, G^2 c) term, which vanishes. Each Hom space is tracked as
// the pair of its two D-components.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "mcluster/cluster.hpp"
#include "mcluster/linalg.hpp"
#include "mcluster/localise.hpp"

namespace mcluster {

using IntMatrix = std::vector<std::vector<int>>;

struct EndoAlgebraData {
  std::vector<DVertex> summands;
  IntMatrix hom_dims;
  IntMatrix rad_sq_dims;
  IntMatrix arrows;
  int total_dim = 0;
};

namespace detail {

inline IntMatrix square(std::size_t k) { return IntMatrix(k, std::vector<int>(k, 0)); }

// Spanning vectors of rad^2 of End_C(T) inside the two D-components of Hom_C(a, c).
struct RadSquare {
  std::vector<Vector> degree0;
  std::vector<Vector> degree1;
};

inline RadSquare rad_square(const ClusterModel& model, const std::vector<DVertex>& t, std::size_t a, std::size_t c) {
  const DerivedCategory& dc = model.derived();
  const MeshCategory& mesh = *model.mesh;
  const DVertex ta = t[a];
  const DVertex tc = t[c];
  const DVertex gtc = dc.G_free(tc, 1);
  RadSquare out;
  for (std::size_t b = 0; b < t.size(); ++b) {
    const DVertex tb = t[b];
    if (b != a && b != c) {
      for (auto& v : mesh.factoring_span(ta, tc, {tb})) out.degree0.push_back(std::move(v));
    }
    if (b != c) {
      for (auto& v : mesh.factoring_span(ta, gtc, {dc.G_free(tb, 1)})) out.degree1.push_back(std::move(v));
    }
    if (b != a) {
      for (auto& v : mesh.factoring_span(ta, gtc, {tb})) out.degree1.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace detail

inline EndoAlgebraData endo_dims(const ClusterModel& model, const std::vector<DVertex>& t) {
  const DerivedCategory& dc = model.derived();
  const std::size_t k = t.size();
  EndoAlgebraData out{t, detail::square(k), detail::square(k), detail::square(k), 0};
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t c = 0; c < k; ++c) {
      const int d0 = dc.hom_derived(t[a], t[c]);
      const int d1 = dc.hom_derived(t[a], dc.G_free(t[c], 1));
      out.hom_dims[a][c] = d0 + d1;
      const auto rs = detail::rad_square(model, t, a, c);
      out.rad_sq_dims[a][c] = static_cast<int>(span_rank(rs.degree0, static_cast<std::size_t>(d0)) +
                                               span_rank(rs.degree1, static_cast<std::size_t>(d1)));
      out.arrows[a][c] = out.hom_dims[a][c] - (a == c ? 1 : 0) - out.rad_sq_dims[a][c];
      if (out.arrows[a][c] < 0) throw InvariantViolation("negative arrow count in an endomorphism algebra");
      out.total_dim += out.hom_dims[a][c];
    }
  }
  return out;
}

enum class IdealThrough {
  all_shifts,  // maps factoring through M[i] or (GM)[i] for any i: the kernel of localisation
  orbit,       // maps factoring through G^s M in D, i.e. through add M in C
};

struct FactorData {
  std::vector<DVertex> remaining;  // summands other than M
  IntMatrix dims;                  // dim of Hom_C(T_a, T_b) modulo the ideal
  IntMatrix ideal_dims;
  IntMatrix arrows;                // Gabriel quiver of the quotient algebra
};

inline FactorData factor_dims(const ClusterModel& model, const std::vector<DVertex>& t, const DVertex& M,
                              IdealThrough through_kind = IdealThrough::orbit) {
  const DerivedCategory& dc = model.derived();
  const MeshCategory& mesh = *model.mesh;
  if (std::find(t.begin(), t.end(), M) == t.end()) throw PreconditionError("M is not a summand of the object");

  std::vector<DVertex> through;
  if (through_kind == IdealThrough::all_shifts) {
    const DVertex gm = dc.G_free(M, 1);
    const int lo = dc.window().lo - dc.m() - 2;
    const int hi = dc.window().hi + dc.m() + 2;
    for (int s = lo; s <= hi; ++s) {
      through.push_back({M.module, s});
      through.push_back({gm.module, s});
    }
  } else {
    for (int s = -2; s <= 2; ++s) through.push_back(dc.G_free(M, s));
  }
  std::sort(through.begin(), through.end());
  through.erase(std::unique(through.begin(), through.end()), through.end());

  std::vector<std::size_t> keep;
  FactorData out;
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (t[a] != M) {
      keep.push_back(a);
      out.remaining.push_back(t[a]);
    }
  }
  const std::size_t k = keep.size();
  out.dims = out.ideal_dims = out.arrows = detail::square(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const DVertex ta = t[keep[i]];
      const DVertex tb = t[keep[j]];
      const DVertex gtb = dc.G_free(tb, 1);
      const auto d0 = static_cast<std::size_t>(dc.hom_derived(ta, tb));
      const auto d1 = static_cast<std::size_t>(dc.hom_derived(ta, gtb));
      auto ideal0 = mesh.factoring_span(ta, tb, through);
      auto ideal1 = mesh.factoring_span(ta, gtb, through);
      const std::size_t ideal = span_rank(ideal0, d0) + span_rank(ideal1, d1);
      out.ideal_dims[i][j] = static_cast<int>(ideal);
      out.dims[i][j] = static_cast<int>(d0 + d1 - ideal);

      auto rs = detail::rad_square(model, t, keep[i], keep[j]);
      rs.degree0.insert(rs.degree0.end(), ideal0.begin(), ideal0.end());
      rs.degree1.insert(rs.degree1.end(), ideal1.begin(), ideal1.end());
      const std::size_t rad = d0 + d1 - (i == j ? 1 : 0);
      out.arrows[i][j] = static_cast<int>(rad - span_rank(rs.degree0, d0) - span_rank(rs.degree1, d1));
    }
  }
  return out;
}

struct FactorTheoremReport {
  std::vector<DVertex> remaining;
  std::vector<DVertex> images;        // L(T_a) in D0
  IntMatrix factor;                   // Gamma / Gamma e Gamma, ideal generated by add M in C
  IntMatrix factor_all_shifts;        // ideal through every shift of M and GM in D, for diagnostics
  IntMatrix localised;                // dim Hom_D(Y_a, Y_b) + dim Hom_D(Y_a, L(G Y_b))
  IntMatrix localised_prime;          // End of the image computed inside the H' model
  IntMatrix factor_arrows;
  IntMatrix prime_arrows;
  bool dims_agree = false;
  bool arrows_agree = false;
  bool ideals_agree = false;
  std::string detail;

  bool ok() const { return dims_agree && arrows_agree; }
};

inline FactorTheoremReport verify_factor_theorem(const ClusterModel& model, const MRigidObject& t, const DVertex& M) {
  const DerivedCategory& dc = model.derived();
  FactorTheoremReport rep;
  const FactorData fd = factor_dims(model, t.summands, M, IdealThrough::orbit);
  const FactorData shifts = factor_dims(model, t.summands, M, IdealThrough::all_shifts);
  rep.remaining = fd.remaining;
  rep.factor = fd.dims;
  rep.factor_all_shifts = shifts.dims;
  rep.factor_arrows = fd.arrows;
  rep.ideals_agree = fd.dims == shifts.dims;

  const LocalisationResult loc = localise_object(model, t, M);
  if (!loc.indecomposable) {
    rep.detail = "localisation produced a decomposable image";
    return rep;
  }
  // localise_object sorts by H' domain order; realign with `remaining`.
  std::vector<DVertex> prime(fd.remaining.size());
  rep.images.assign(fd.remaining.size(), DVertex{});
  for (std::size_t k = 0; k < loc.sources.size(); ++k) {
    const auto pos = std::find(fd.remaining.begin(), fd.remaining.end(), loc.sources[k]) - fd.remaining.begin();
    rep.images[static_cast<std::size_t>(pos)] = loc.images[k];
    prime[static_cast<std::size_t>(pos)] = loc.prime_images[k];
  }

  const std::size_t k = rep.images.size();
  rep.localised = detail::square(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const DObject gy = project_to_D0(model, loc.pd, dc.G_free(rep.images[b], 1));
      rep.localised[a][b] = dc.hom_derived(rep.images[a], rep.images[b]) + dc.hom(DObject{rep.images[a]}, gy);
    }
  }
  const EndoAlgebraData prime_endo = endo_dims(*loc.pd.prime, prime);
  rep.localised_prime = prime_endo.hom_dims;
  rep.prime_arrows = prime_endo.arrows;
  rep.dims_agree = rep.factor == rep.localised && rep.factor == rep.localised_prime;
  rep.arrows_agree = rep.factor_arrows == rep.prime_arrows;
  if (!rep.dims_agree) rep.detail = "dimension matrices differ";
  if (!rep.arrows_agree) rep.detail += rep.detail.empty() ? "arrow counts differ" : "; arrow counts differ";
  return rep;
}

}  // namespace mcluster

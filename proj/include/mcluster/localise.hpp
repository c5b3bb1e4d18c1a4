#pragma once

// Localisation of D at a rigid indecomposable M. The localised category is
// modelled by D0 = {U[i] : U in U_X}, where X is the module with M = X[k] and
// U_X is the perpendicular category {U : Hom(X, U) = 0 = Ext^1(X, U)}; U_X is
// equivalent to mod H' for a hereditary H' with n-1 simples.
//
// An object w is sent to the unique R in add D0 with Hom(R, U) = Hom(w, U) for
// every U in D0. The Hom matrix of D0 is unitriangular in (degree, slice)
// order, so R comes out of a forward substitution.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcluster/cluster.hpp"
#include "mcluster/derived.hpp"
#include "mcluster/errors.hpp"
#include "mcluster/mesh_basis.hpp"

namespace mcluster {

struct PerpendicularData {
  DVertex M;
  std::size_t base_module = 0;
  std::vector<std::size_t> U_members;         // module ids, slice order
  std::vector<std::size_t> projectives_of_U;  // module ids; position a is the projective at H' vertex a
  Quiver H_prime;
  std::shared_ptr<const ClusterModel> prime;  // C^m of H'

  bool in_U(std::size_t module) const {
    return std::binary_search(U_members.begin(), U_members.end(), module);
  }
};

inline bool is_in_D0(const DerivedCategory& dc, const DVertex& u, const DVertex& M) {
  const Window& w = dc.window();
  for (int s = w.lo; s <= w.hi; ++s) {
    if (dc.hom_derived({M.module, s}, u) != 0) return false;
  }
  return true;
}

inline bool is_in_D0(const DerivedCategory& dc, const DVertex& u, const PerpendicularData& pd) {
  (void)dc;
  return pd.in_U(u.module);
}

namespace detail {

inline std::string prime_label(std::size_t k, std::size_t count) {
  const std::string digits = std::to_string(count);
  std::string s = std::to_string(k);
  return std::string(digits.size() - s.size(), '0') + s;
}

}  // namespace detail

inline PerpendicularData perpendicular_algebra(const ClusterModel& model, const DVertex& M) {
  const DerivedCategory& dc = model.derived();
  const ARQuiver& ar = *model.ar;
  const std::size_t n = model.n();
  if (ar.ext(M.module, M.module) != 0) throw PreconditionError("M is not rigid");
  if (M.shift < 0 || M.shift > dc.m() - 1) throw PreconditionError("M must have degree in [0, m-1]");

  PerpendicularData pd;
  pd.M = M;
  pd.base_module = M.module;
  for (std::size_t u = 0; u < ar.size(); ++u) {
    if (ar.hom(M.module, u) == 0 && ar.ext(M.module, u) == 0) pd.U_members.push_back(u);
  }
  for (std::size_t p : pd.U_members) {
    if (std::all_of(pd.U_members.begin(), pd.U_members.end(), [&](std::size_t y) { return ar.ext(p, y) == 0; })) {
      pd.projectives_of_U.push_back(p);
    }
  }
  if (pd.projectives_of_U.size() + 1 != n) {
    throw InvariantViolation("perpendicular category has " + std::to_string(pd.projectives_of_U.size()) +
                             " projectives, expected " + std::to_string(n - 1));
  }

  const std::size_t k = pd.projectives_of_U.size();
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < k; ++a) labels.push_back(detail::prime_label(a + 1, k));
  std::vector<std::pair<std::string, std::string>> arrows;
  const MeshCategory& mesh = *model.mesh;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      // Irreducible maps P'(b) -> P'(a) are the arrows a -> b of H'.
      const DVertex pb{pd.projectives_of_U[b], 0};
      const DVertex pa{pd.projectives_of_U[a], 0};
      std::vector<DVertex> others;
      for (std::size_t c = 0; c < k; ++c) {
        if (c != a && c != b) others.push_back({pd.projectives_of_U[c], 0});
      }
      const std::size_t irreducible = mesh.hom_dim(pb, pa) - mesh.factoring_dim(pb, pa, others);
      for (std::size_t r = 0; r < irreducible; ++r) arrows.emplace_back(labels[a], labels[b]);
    }
  }
  pd.H_prime = Quiver::from_labels(labels, arrows, {.allow_disconnected = true, .allow_empty = true});
  pd.prime = ClusterModel::build(pd.H_prime, dc.m(), dc.window());
  return pd;
}

// The H'-model vertex of U[s] for U in U_X: dimension vector (dim Hom(P'_a, U))_a.
inline DVertex to_prime(const ClusterModel& model, const PerpendicularData& pd, const DVertex& u) {
  if (!pd.in_U(u.module)) throw PreconditionError(model.name(u) + " is not in D0");
  const std::size_t k = pd.projectives_of_U.size();
  DimVector dim = DimVector::zero(k);
  for (std::size_t a = 0; a < k; ++a) dim[a] = model.ar->hom(pd.projectives_of_U[a], u.module);
  const auto id = pd.prime->ar->find(dim);
  if (!id) throw InvariantViolation("perpendicular module " + dim.to_string() + " is not an H' root");
  return {*id, u.shift};
}

// Inverse of to_prime.
inline DVertex from_prime(const ClusterModel& model, const PerpendicularData& pd, const DVertex& v) {
  const DimVector& dim = pd.prime->ar->vertex(v.module).dim;
  for (std::size_t u : pd.U_members) {
    const DVertex candidate{u, v.shift};
    if (to_prime(model, pd, candidate).module == v.module) return candidate;
  }
  throw InvariantViolation("no perpendicular module with H' dimension vector " + dim.to_string());
}

inline DObject project_to_D0(const ClusterModel& model, const PerpendicularData& pd, const DObject& w) {
  const DerivedCategory& dc = model.derived();
  const Window& win = dc.window();
  DObject out;
  for (const auto& [x, mult] : w.summands()) {
    if (x.shift < win.lo || x.shift > win.hi - 1) {
      throw WindowOverflow("projecting " + model.name(x) + " needs degrees outside the window; widen --window");
    }
    std::vector<DVertex> candidates;
    for (int s = x.shift - 1; s <= x.shift + 2; ++s) {
      for (std::size_t u : pd.U_members) candidates.push_back({u, s});
    }
    std::sort(candidates.begin(), candidates.end(), [&](const DVertex& a, const DVertex& b) {
      if (a.shift != b.shift) return a.shift < b.shift;
      return dc.ar().vertex(a.module).slice_index < dc.ar().vertex(b.module).slice_index;
    });
    std::vector<int> coeff(candidates.size(), 0);
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      int r = dc.hom_derived(x, candidates[j]);
      for (std::size_t i = 0; i < j; ++i) {
        if (coeff[i] != 0) r -= coeff[i] * dc.hom_derived(candidates[i], candidates[j]);
      }
      if (r < 0) {
        throw WindowOverflow("fingerprint of " + model.name(x) + " has no non-negative solution; widen --window");
      }
      coeff[j] = r;
      if (r > 0 && candidates[j].shift != x.shift && candidates[j].shift != x.shift + 1) {
        throw InvariantViolation("projection of " + model.name(x) + " reaches degree " +
                                 std::to_string(candidates[j].shift));
      }
    }
    for (std::size_t j = 0; j < candidates.size(); ++j) out.add(candidates[j], coeff[j] * mult);
  }
  return out;
}

inline DObject project_to_D0(const ClusterModel& model, const PerpendicularData& pd, const DVertex& x) {
  return project_to_D0(model, pd, DObject{x});
}

// All shifts of M inside the window.
inline std::vector<DVertex> shifts_of(const DerivedCategory& dc, const DVertex& M) {
  std::vector<DVertex> out;
  for (int s = dc.window().lo; s <= dc.window().hi; ++s) out.push_back({M.module, s});
  return out;
}

// M_x -> x -> Y -> with M_x the minimal right add{M[i]}-approximation and Y in D0.
inline ApproxTriangle approximation_triangle(const ClusterModel& model, const PerpendicularData& pd,
                                             const DVertex& x) {
  const DerivedCategory& dc = model.derived();
  ApproxTriangle tri = model.mesh->minimal_right_approximation(
      x, shifts_of(dc, pd.M), [&](const DVertex& v) { return project_to_D0(model, pd, v); });
  for (const auto& [v, k] : tri.cone->summands()) {
    if (!pd.in_U(v.module)) throw InvariantViolation("approximation cone leaves D0");
  }
  for (int t = 1; t <= 2; ++t) {
    for (const auto& [v, k] : tri.approx_source.summands()) {
      if (dc.hom_derived(x, DerivedCategory::shift_free(v, t)) != 0) {
        throw InvariantViolation("Hom(x, M_x[" + std::to_string(t) + "]) is nonzero");
      }
    }
  }
  return tri;
}

// Indecomposables x outside D0 with L(x) = y, Hom(x, M[t]) = 0 for all t and
// Hom(M, x[t]) = 0 for t != 1 - i. Every candidate in the window is returned.
inline std::vector<DVertex> find_left_replacement(const ClusterModel& model, const PerpendicularData& pd,
                                                  const DVertex& y, int i) {
  const DerivedCategory& dc = model.derived();
  if (!pd.in_U(y.module)) throw PreconditionError(model.name(y) + " is not in D0");
  if (dc.hom_derived(y, DerivedCategory::shift_free(pd.M, i)) == 0) {
    throw PreconditionError("Hom(y, M[" + std::to_string(i) + "]) vanishes");
  }
  const Window& w = dc.window();
  std::vector<DVertex> out;
  for (int s = w.lo; s <= w.hi - 1; ++s) {
    for (std::size_t id = 0; id < dc.ar().size(); ++id) {
      const DVertex x{id, s};
      if (pd.in_U(id)) continue;
      bool ok = true;
      for (int t = w.lo - w.hi - 2; t <= w.hi - w.lo + 2 && ok; ++t) {
        const DVertex mt = DerivedCategory::shift_free(pd.M, t);
        if (dc.hom_derived(x, mt) != 0) ok = false;
        if (t != 1 - i && dc.hom_derived(pd.M, DerivedCategory::shift_free(x, t)) != 0) ok = false;
      }
      if (!ok) continue;
      if (project_to_D0(model, pd, x) == DObject{y}) out.push_back(x);
    }
  }
  if (out.empty()) throw WindowOverflow("no left replacement found in the window; widen --window");
  return out;
}

struct LocalisationResult {
  PerpendicularData pd;
  std::vector<DVertex> sources;       // summands of t other than M
  std::vector<DVertex> images;        // L(x) in D0, one per source
  std::vector<DVertex> prime_images;  // the same objects in the H' model
  bool indecomposable = false;
  bool in_prime_domain = false;
  bool rigid = false;
  bool maximal = false;

  bool ok() const { return indecomposable && in_prime_domain && rigid && maximal; }
};

inline LocalisationResult localise_object(const ClusterModel& model, const MRigidObject& t, const DVertex& M) {
  if (std::find(t.summands.begin(), t.summands.end(), M) == t.summands.end()) {
    throw PreconditionError("M is not a summand of the object");
  }
  LocalisationResult res{perpendicular_algebra(model, M), {}, {}, {}, true, true, false, false};
  for (const DVertex& x : t.summands) {
    if (x == M) continue;
    res.sources.push_back(x);
    const auto y = project_to_D0(model, res.pd, x).as_indecomposable();
    if (!y) {
      res.indecomposable = false;
      continue;
    }
    res.images.push_back(*y);
    const DVertex p = to_prime(model, res.pd, *y);
    res.prime_images.push_back(p);
    if (!res.pd.prime->fd.contains(p)) res.in_prime_domain = false;
  }
  if (res.indecomposable && res.in_prime_domain) {
    auto& imgs = res.prime_images;
    const auto& fd = res.pd.prime->fd;
    std::vector<std::size_t> order(imgs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return *fd.index_of(imgs[a]) < *fd.index_of(imgs[b]); });
    LocalisationResult sorted = res;
    for (std::size_t k = 0; k < order.size(); ++k) {
      sorted.sources[k] = res.sources[order[k]];
      sorted.images[k] = res.images[order[k]];
      sorted.prime_images[k] = res.prime_images[order[k]];
    }
    res = std::move(sorted);
    const auto& g = res.pd.prime->graph;
    res.rigid = is_m_rigid(res.prime_images, g);
    res.maximal = res.rigid && common_neighbours(res.prime_images, g).empty() &&
                  res.prime_images.size() + 1 == model.n();
  }
  return res;
}

}  // namespace mcluster

#pragma once

// Batch verification: invariant suites over the derived model, the cluster
// theorems on the enumerated objects, and the localisation and factor sweeps.
// Reports are deterministic; elapsed time is kept apart from the checks.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mcluster/cluster.hpp"
#include "mcluster/endo.hpp"
#include "mcluster/localise.hpp"

namespace mcluster {

struct Check {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::vector<std::string> failures;  // first few failing cases

  void record(bool ok, const std::function<std::string()>& describe) {
    ++cases;
    if (ok) return;
    pass = false;
    if (failures.size() < max_failures) failures.push_back(describe());
  }

  static constexpr std::size_t max_failures = 5;
};

struct VerifyOptions {
  std::optional<Window> window;
  std::size_t max_cliques = default_clique_cap;
  bool derived_suite = true;
  bool sweeps = true;  // localisation and factor-theorem sweeps
  unsigned threads = 0;  // 0: hardware concurrency
};

struct VerificationReport {
  std::string quiver;
  int m = 0;
  std::vector<Check> checks;
  std::map<std::size_t, std::size_t> summand_sizes;        // size -> number of maximal objects
  std::map<std::size_t, std::size_t> complement_histogram;  // complement count -> almost complete objects
  std::size_t object_count = 0;
  bool capped = false;
  std::string capped_reason;
  double elapsed_seconds = 0;

  bool pass() const {
    return !capped && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  nlohmann::json to_json(bool with_timing = false) const {
    nlohmann::json out;
    out["quiver"] = quiver;
    out["m"] = m;
    out["status"] = capped ? "capped" : (pass() ? "pass" : "fail");
    if (capped) out["capped_reason"] = capped_reason;
    auto& cs = out["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      cs.push_back({{"name", c.name}, {"pass", c.pass}, {"cases", c.cases}, {"failures", c.failures}});
    }
    auto& counts = out["counts"];
    counts["maximal_m_rigid"] = object_count;
    for (const auto& [k, v] : summand_sizes) counts["summand_sizes"][std::to_string(k)] = v;
    for (const auto& [k, v] : complement_histogram) counts["complements"][std::to_string(k)] = v;
    if (!counts.contains("summand_sizes")) counts["summand_sizes"] = nlohmann::json::object();
    if (!counts.contains("complements")) counts["complements"] = nlohmann::json::object();
    if (with_timing) out["elapsed_seconds"] = elapsed_seconds;
    return out;
  }
};

namespace detail {

// Runs body(i) for i in [0, count) on a bounded pool; results go to per-index slots.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline std::string join_names(const ClusterModel& model, const std::vector<DVertex>& vs) {
  std::string out;
  for (const auto& v : vs) out += (out.empty() ? "" : " ") + model.name(v);
  return "{" + out + "}";
}

// Localisation needs G of degree-m objects projected back, which reaches shift 2m+2.
inline Window sweep_window(const DerivedCategory& dc) {
  Window w = dc.window();
  w.hi = std::max(w.hi, 2 * dc.m() + 3);
  return w;
}

}  // namespace detail

// Invariants of the module category and of D over every pair of window vertices.
inline std::vector<Check> check_derived_invariants(const ClusterModel& model) {
  const ARQuiver& ar = *model.ar;
  const DerivedCategory& dc = model.derived();
  const MeshCategory& mesh = *model.mesh;
  const Quiver& q = model.quiver();
  std::vector<Check> out;

  Check euler{"euler_identity", true, 0, {}};
  Check brick{"brick_property", true, 0, {}};
  for (std::size_t a = 0; a < ar.size(); ++a) {
    const auto& da = ar.vertex(a).dim;
    brick.record(ar.hom(a, a) == 1, [&] { return ar.name(a); });
    for (std::size_t b = 0; b < ar.size(); ++b) {
      const auto& db = ar.vertex(b).dim;
      euler.record(ar.hom(a, b) - ar.ext(a, b) == euler_form(q, da, db),
                   [&] { return ar.name(a) + ", " + ar.name(b); });
    }
  }

  const auto vs = dc.window_vertices();
  Check serre{"serre_duality", true, 0, {}};
  Check additivity{"mesh_additivity", true, 0, {}};
  Check agreement{"mesh_basis_matches_hammocks", true, 0, {}};
  for (const auto& x : vs) {
    for (const auto& y : vs) {
      const auto pair = [&] { return dc.name(x) + ", " + dc.name(y); };
      serre.record(dc.hom_derived(x, DerivedCategory::shift_free(y, 1)) == dc.hom_derived(y, dc.tau_free(x)), pair);
      if (dc.in_window(dc.tau_free(y))) {
        int middle = 0;
        for (const auto& w : dc.predecessors(y)) middle += dc.hom_derived(x, w);
        const int lhs = dc.hom_derived(x, y) + dc.hom_derived(x, dc.tau_free(y)) - middle;
        // Hom(x, -) on the triangle tau y -> E -> y -> is exact away from x = y and x = y[-1].
        const int expected = (x == y ? 1 : 0) + (x == DerivedCategory::shift_free(y, -1) ? 1 : 0);
        additivity.record(lhs == expected, pair);
      }
      agreement.record(mesh.hom_dim(x, y) == static_cast<std::size_t>(dc.hom_derived(x, y)), pair);
    }
  }

  Check orbit{"hom_orbit_vanishing", true, 0, {}};
  const auto& fd = model.fd.vertices;
  for (const auto& x : fd) {
    for (const auto& y : fd) {
      const auto pair = [&] { return dc.name(x) + ", " + dc.name(y); };
      bool ok = true;
      for (int i = -3; i <= 3; ++i) {
        if (i != 0 && i != 1 && dc.hom_derived(x, dc.G_free(y, i)) != 0) ok = false;
      }
      if (dc.m() >= 2 && dc.hom_derived(x, y) != 0 && dc.hom_derived(x, dc.G_free(y, 1)) != 0) ok = false;
      for (int k = 0; k <= dc.m() && ok; ++k) {
        try {
          dc.hom_orbit(x, y, k);
        } catch (const InvariantViolation&) {
          ok = false;
        }
      }
      orbit.record(ok, pair);
    }
  }
  for (Check* c : {&euler, &brick, &serre, &additivity, &agreement, &orbit}) out.push_back(std::move(*c));
  return out;
}

namespace detail {

inline void cluster_checks(const ClusterModel& model, const std::vector<MRigidObject>& objects,
                           VerificationReport& rep) {
  const auto& g = model.graph;
  const std::size_t n = model.n();
  Check sizes{"n_summands", true, 0, {}};
  Check comps{"m_plus_one_complements", true, 0, {}};
  Check tilting{"maximal_equals_cluster_tilting", true, 0, {}};
  Check embed{"tilting_modules_embed", true, 0, {}};

  std::set<std::vector<DVertex>> partials;
  for (const auto& t : objects) {
    rep.summand_sizes[t.summands.size()]++;
    sizes.record(t.summands.size() == n, [&] { return join_names(model, t.summands); });
    tilting.record(is_m_cluster_tilting(t, g), [&] { return join_names(model, t.summands); });
    for (std::size_t k = 0; k < t.summands.size(); ++k) {
      auto p = t.summands;
      p.erase(p.begin() + static_cast<std::ptrdiff_t>(k));
      partials.insert(std::move(p));
    }
  }
  for (const auto& p : partials) {
    if (p.size() + 1 != n) continue;
    const std::size_t c = complements(p, g).size();
    rep.complement_histogram[c]++;
    comps.record(c == static_cast<std::size_t>(model.m()) + 1, [&] { return join_names(model, p); });
  }

  std::set<std::vector<DVertex>> found;
  for (const auto& t : objects) found.insert(t.summands);
  for (const auto& ids : tilting_modules(*model.ar)) {
    std::vector<DVertex> t;
    for (std::size_t id : ids) t.push_back({id, 0});
    std::sort(t.begin(), t.end(), [&](const DVertex& a, const DVertex& b) {
      return *model.fd.index_of(a) < *model.fd.index_of(b);
    });
    embed.record(is_maximal_m_rigid(t, g) && found.count(t) == 1, [&] { return join_names(model, t); });
  }
  for (Check* c : {&sizes, &comps, &tilting, &embed}) rep.checks.push_back(std::move(*c));
}

inline void sweep_checks(const ClusterModel& model, const std::vector<MRigidObject>& objects, unsigned threads,
                         VerificationReport& rep) {
  struct Outcome {
    bool normalized = true;
    std::string norm_error;
    std::vector<std::pair<bool, std::string>> loc, fac;  // per (object, summand) pair
  };
  std::vector<Outcome> results(objects.size());
  parallel_for(objects.size(), threads, [&](std::size_t i) {
    const MRigidObject& t = objects[i];
    Outcome& res = results[i];
    std::optional<Normalization> nz;
    const bool needs = std::any_of(t.summands.begin(), t.summands.end(),
                                   [&](const DVertex& v) { return v.shift == model.m(); });
    if (needs) {
      try {
        nz = normalize_to_Dminus(model, t);
        if (!nz->repositioned.maximal) res.normalized = false;
      } catch (const Error& e) {
        res.normalized = false;
        res.norm_error = e.what();
      }
    }
    for (std::size_t k = 0; k < t.summands.size(); ++k) {
      const ClusterModel* where = &model;
      MRigidObject obj = t;
      DVertex M = t.summands[k];
      if (M.shift == model.m()) {
        if (!nz) continue;
        where = nz->h0.get();
        obj = nz->repositioned;
        M = nz->images[k];
      }
      const std::string label = join_names(model, t.summands) + " at " + model.name(t.summands[k]);
      try {
        const LocalisationResult loc = localise_object(*where, obj, M);
        res.loc.emplace_back(loc.ok(), label);
        const FactorTheoremReport fr = verify_factor_theorem(*where, obj, M);
        res.fac.emplace_back(fr.ok(), label + ": " + fr.detail);
      } catch (const Error& e) {
        res.loc.emplace_back(false, label + ": " + e.what());
        res.fac.emplace_back(false, label + ": " + e.what());
      }
    }
  });

  Check norm{"normalization", true, 0, {}};
  Check loc{"localisation", true, 0, {}};
  Check fac{"factor_theorem", true, 0, {}};
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const Outcome& r = results[i];
    norm.record(r.normalized, [&] { return join_names(model, objects[i].summands) + " " + r.norm_error; });
    for (const auto& [ok, what] : r.loc) loc.record(ok, [&] { return what; });
    for (const auto& [ok, what] : r.fac) fac.record(ok, [&] { return what; });
  }
  for (Check* c : {&norm, &loc, &fac}) rep.checks.push_back(std::move(*c));
}

}  // namespace detail

// Derived suite, cluster theorems, then localisation and factor sweeps, in that order.
inline VerificationReport run_verify_all(const Quiver& q, const std::string& name, int m,
                                         const VerifyOptions& opts = {}) {
  if (m < 1) throw PreconditionError("m must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.quiver = name;
  rep.m = m;
  const auto model = ClusterModel::build(q, m, opts.window);
  if (opts.derived_suite) {
    for (auto& c : check_derived_invariants(*model)) rep.checks.push_back(std::move(c));
  }
  std::vector<MRigidObject> objects;
  try {
    objects = enumerate_maximal_m_rigid(model->graph, opts.max_cliques);
  } catch (const CapExceeded& e) {
    rep.capped = true;
    rep.capped_reason = e.what();
  }
  rep.object_count = objects.size();
  if (!rep.capped) {
    detail::cluster_checks(*model, objects, rep);
    if (opts.sweeps) {
      const Window wide = detail::sweep_window(model->derived());
      auto sweep_model = model;
      if (wide.hi != model->derived().window().hi) sweep_model = ClusterModel::build(q, m, wide);
      detail::sweep_checks(*sweep_model, objects, opts.threads, rep);
    }
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace mcluster

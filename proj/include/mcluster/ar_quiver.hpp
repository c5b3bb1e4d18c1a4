#pragma once

// Auslander-Reiten quiver of mod kQ for a Dynkin quiver Q, knitted from the
// projectives. Vertices live on ZQ^op: (r, i) stands for tau^{-r} P(i), and an
// arrow i -> j of Q gives AR arrows (r, j) -> (r, i) and (r, i) -> (r + 1, j).

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "mcluster/errors.hpp"
#include "mcluster/quiver.hpp"

namespace mcluster {

struct ARVertex {
  std::size_t id = 0;
  DimVector dim;
  std::optional<std::size_t> projective_of;  // quiver vertex index
  std::optional<std::size_t> injective_of;
  int slice_index = 0;
  std::size_t orbit = 0;  // tau-orbit, named by the quiver vertex of its projective
  int level = 0;          // r in tau^{-r} P(orbit)
};

// Almost split sequence start -> middles -> end, with start = tau(end).
struct Mesh {
  std::size_t start;
  std::vector<std::size_t> middles;
  std::size_t end;
};

class ARQuiver {
 public:
  const Quiver& quiver() const noexcept { return quiver_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<ARVertex>& vertices() const noexcept { return vertices_; }
  const ARVertex& vertex(std::size_t id) const {
    check(id);
    return vertices_[id];
  }
  const std::vector<std::pair<std::size_t, std::size_t>>& arrows() const noexcept { return arrows_; }
  const std::vector<Mesh>& meshes() const noexcept { return meshes_; }

  const std::vector<std::size_t>& successors(std::size_t id) const { return check(id), succ_[id]; }
  const std::vector<std::size_t>& predecessors(std::size_t id) const { return check(id), pred_[id]; }

  std::optional<std::size_t> tau(std::size_t id) const { return check(id), tau_[id]; }
  std::optional<std::size_t> tau_inverse(std::size_t id) const { return check(id), tau_inv_[id]; }

  std::size_t projective(std::size_t i) const { return projectives_.at(i); }
  std::size_t injective(std::size_t i) const { return injectives_.at(i); }

  std::optional<std::size_t> find(const DimVector& d) const {
    const auto it = by_dim_.find(d);
    if (it == by_dim_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> find(std::string_view name) const {
    const auto d = DimVector::parse(name);
    if (!d || d->size() != quiver_.size()) return std::nullopt;
    return find(*d);
  }

  // Mesh ending at a non-projective vertex.
  const Mesh* mesh_ending_at(std::size_t id) const {
    check(id);
    return mesh_of_[id] ? &meshes_[*mesh_of_[id]] : nullptr;
  }

  int hom(std::size_t a, std::size_t b) const {
    check(a);
    check(b);
    return hom_[a * size() + b];
  }

  // Ext^1(a, b) = D Hom(b, tau a); zero when a is projective.
  int ext(std::size_t a, std::size_t b) const {
    const auto t = tau(a);
    return t ? hom(b, *t) : 0;
  }

  std::string name(std::size_t id) const { return vertex(id).dim.to_string(); }

 private:
  friend ARQuiver knit_module_category(const Quiver& q);

  void check(std::size_t id) const {
    if (id >= vertices_.size()) throw PreconditionError("AR vertex " + std::to_string(id) + " out of range");
  }

  Quiver quiver_;
  std::vector<ARVertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> arrows_;
  std::vector<Mesh> meshes_;
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
  std::vector<std::optional<std::size_t>> tau_;
  std::vector<std::optional<std::size_t>> tau_inv_;
  std::vector<std::optional<std::size_t>> mesh_of_;
  std::vector<std::size_t> projectives_;
  std::vector<std::size_t> injectives_;
  std::map<DimVector, std::size_t> by_dim_;
  std::vector<int> hom_;
};

namespace detail {

// Distance function on the underlying tree with d(i) = d(j) + 1 for every arrow
// i -> j, normalised to minimum 0 on each component.
inline std::vector<int> arrow_depths(const Quiver& q) {
  std::vector<int> depth(q.size(), 0);
  for (const auto& comp : q.components()) {
    std::vector<bool> seen(q.size(), false);
    std::queue<std::size_t> todo;
    todo.push(comp.front());
    seen[comp.front()] = true;
    while (!todo.empty()) {
      const std::size_t v = todo.front();
      todo.pop();
      for (const auto& a : q.arrows()) {
        if (a.source == v && !seen[a.target]) {
          depth[a.target] = depth[v] - 1;
          seen[a.target] = true;
          todo.push(a.target);
        } else if (a.target == v && !seen[a.source]) {
          depth[a.source] = depth[v] + 1;
          seen[a.source] = true;
          todo.push(a.source);
        }
      }
    }
    int lowest = depth[comp.front()];
    for (std::size_t v : comp) lowest = std::min(lowest, depth[v]);
    for (std::size_t v : comp) depth[v] -= lowest;
  }
  return depth;
}

}  // namespace detail

inline ARQuiver knit_module_category(const Quiver& q) {
  const std::size_t n = q.size();
  ARQuiver ar;
  ar.quiver_ = q;

  std::vector<DimVector> proj_dim(n, DimVector::zero(n));
  std::vector<DimVector> inj_dim(n, DimVector::zero(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      proj_dim[i][j] = static_cast<int>(q.count_paths(i, j));
      inj_dim[i][j] = static_cast<int>(q.count_paths(j, i));
    }
  }
  auto injective_index = [&](const DimVector& d) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < n; ++k) {
      if (inj_dim[k] == d) return k;
    }
    return std::nullopt;
  };

  struct Knot {
    int level;
    std::size_t orbit;
    DimVector dim;
  };
  std::vector<Knot> knots;
  std::map<std::pair<int, std::size_t>, std::size_t> at;  // (level, orbit) -> knot
  struct RawMesh {
    std::size_t start;
    std::vector<std::size_t> middles;
    std::size_t end;
  };
  std::vector<RawMesh> raw_meshes;

  for (std::size_t i = 0; i < n; ++i) {
    at[{0, i}] = knots.size();
    knots.push_back({0, i, proj_dim[i]});
  }
  const std::size_t expected = positive_roots(q).size();
  std::vector<std::size_t> sinks_first(q.topological_order().rbegin(), q.topological_order().rend());
  for (int r = 0;; ++r) {
    bool grew = false;
    for (std::size_t j : sinks_first) {
      const auto cur = at.find({r, j});
      if (cur == at.end() || injective_index(knots[cur->second].dim)) continue;
      std::vector<std::size_t> middles;
      for (std::size_t i : q.in_neighbors(j)) {
        if (auto it = at.find({r, i}); it != at.end()) middles.push_back(it->second);
      }
      for (std::size_t k : q.out_neighbors(j)) {
        if (auto it = at.find({r + 1, k}); it != at.end()) middles.push_back(it->second);
      }
      DimVector d = -knots[cur->second].dim;
      for (std::size_t w : middles) d += knots[w].dim;
      if (!d.is_positive() || tits_form(q, d) != 1) {
        throw InvariantViolation("knitting produced " + d.to_string() + ", which is not a positive root");
      }
      at[{r + 1, j}] = knots.size();
      raw_meshes.push_back({cur->second, std::move(middles), knots.size()});
      knots.push_back({r + 1, j, d});
      grew = true;
    }
    if (!grew) break;
    if (knots.size() > expected) throw InvariantViolation("knitting did not terminate at the injectives");
  }
  if (knots.size() != expected) {
    throw InvariantViolation("knitting found " + std::to_string(knots.size()) + " modules, expected " +
                             std::to_string(expected));
  }

  const auto depth = detail::arrow_depths(q);
  std::vector<std::size_t> order(knots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto slice_of = [&](const Knot& k) { return 2 * k.level + depth[k.orbit]; };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const int sa = slice_of(knots[a]);
    const int sb = slice_of(knots[b]);
    if (sa != sb) return sa < sb;
    return knots[a].orbit < knots[b].orbit;
  });
  std::vector<std::size_t> id_of(knots.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) id_of[order[pos]] = pos;

  const std::size_t count = knots.size();
  ar.vertices_.resize(count);
  ar.projectives_.assign(n, 0);
  ar.injectives_.assign(n, 0);
  for (std::size_t k = 0; k < count; ++k) {
    ARVertex& v = ar.vertices_[id_of[k]];
    v.id = id_of[k];
    v.dim = knots[k].dim;
    v.level = knots[k].level;
    v.orbit = knots[k].orbit;
    v.slice_index = slice_of(knots[k]);
    if (v.level == 0) {
      v.projective_of = v.orbit;
      ar.projectives_[v.orbit] = v.id;
    }
    v.injective_of = injective_index(v.dim);
    if (v.injective_of) ar.injectives_[*v.injective_of] = v.id;
    if (!ar.by_dim_.emplace(v.dim, v.id).second) {
      throw InvariantViolation("two AR vertices share dimension vector " + v.dim.to_string());
    }
  }

  for (const auto& a : q.arrows()) {
    for (const auto& [key, k] : at) {
      const auto [r, orbit] = key;
      if (orbit == a.target) {
        if (auto it = at.find({r, a.source}); it != at.end()) ar.arrows_.emplace_back(id_of[k], id_of[it->second]);
      } else if (orbit == a.source) {
        if (auto it = at.find({r + 1, a.target}); it != at.end()) {
          ar.arrows_.emplace_back(id_of[k], id_of[it->second]);
        }
      }
    }
  }
  std::sort(ar.arrows_.begin(), ar.arrows_.end());
  ar.succ_.assign(count, {});
  ar.pred_.assign(count, {});
  for (const auto& [s, t] : ar.arrows_) {
    if (ar.vertices_[t].slice_index != ar.vertices_[s].slice_index + 1) {
      throw InvariantViolation("AR arrow does not advance the slice index by one");
    }
    ar.succ_[s].push_back(t);
    ar.pred_[t].push_back(s);
  }

  ar.tau_.assign(count, std::nullopt);
  ar.tau_inv_.assign(count, std::nullopt);
  ar.mesh_of_.assign(count, std::nullopt);
  for (const auto& rm : raw_meshes) {
    Mesh mesh{id_of[rm.start], {}, id_of[rm.end]};
    for (std::size_t w : rm.middles) mesh.middles.push_back(id_of[w]);
    std::sort(mesh.middles.begin(), mesh.middles.end());
    ar.tau_[mesh.end] = mesh.start;
    ar.tau_inv_[mesh.start] = mesh.end;
    ar.mesh_of_[mesh.end] = ar.meshes_.size();
    ar.meshes_.push_back(std::move(mesh));
  }
  std::sort(ar.meshes_.begin(), ar.meshes_.end(), [](const Mesh& a, const Mesh& b) { return a.end < b.end; });
  for (std::size_t k = 0; k < ar.meshes_.size(); ++k) ar.mesh_of_[ar.meshes_[k].end] = k;

  // Hammock functions: f(Z) = sum_{W -> Z} f(W) - f(tau Z) + [Z = X], in slice order.
  ar.hom_.assign(count * count, 0);
  for (std::size_t x = 0; x < count; ++x) {
    int* f = &ar.hom_[x * count];
    for (std::size_t z = x; z < count; ++z) {
      int value = z == x ? 1 : 0;
      for (std::size_t w : ar.pred_[z]) value += f[w];
      if (ar.tau_[z]) value -= f[*ar.tau_[z]];
      if (value < 0) throw InvariantViolation("hammock function went negative");
      f[z] = value;
    }
  }
  return ar;
}

inline std::optional<std::size_t> tau_module(const ARQuiver& ar, std::size_t id) { return ar.tau(id); }

}  // namespace mcluster

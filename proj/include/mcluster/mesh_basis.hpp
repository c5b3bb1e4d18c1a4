#pragma once

// Hom spaces of the mesh category k(ZQ^op) with explicit bases.
//
// For a fixed source x the representable functor V = Hom(x, -) is built one
// vertex at a time in height order: V(x) is spanned by the identity, and for
// z != x
//
//   V(z) = (sum over arrows w -> z of V(w)) / image of V(tau z),
//
// which is exactly the mesh relation at z (all coefficients +1, one per middle
// of the mesh). The quotient basis is the set of non-pivot columns of the
// reduced relation matrix, so each basis element of V(z) is a single arrow
// w -> z applied to a basis element of V(w). Unwinding gives one path per basis
// element.
//
// Post-composition with a basis element g of Hom(y, z) acts on Hom(x, y) through
// the arrow matrices of V along the path of g; that is all composition needs.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcluster/derived.hpp"
#include "mcluster/errors.hpp"
#include "mcluster/linalg.hpp"

namespace mcluster {

// Basis element j of Hom(source, target) is arrow(via -> target) composed with
// basis element `index` of Hom(source, via); the identity has no lift.
struct Lift {
  DVertex via;
  std::size_t index;
};

using Path = std::vector<DVertex>;

struct HomBasis {
  DVertex source;
  DVertex target;
  std::vector<std::optional<Lift>> lifts;

  std::size_t size() const noexcept { return lifts.size(); }
};

// approx_source -> target -> cone -> for a right approximation. For a left
// approximation the maps run target -> approx_source instead.
struct ApproxTriangle {
  struct Component {
    DVertex vertex;
    Vector map;  // coordinates in hom_basis(vertex, target) (right) or hom_basis(target, vertex) (left)
  };

  DObject approx_source;
  std::vector<Component> map;
  DVertex target;
  std::optional<DObject> cone;
};

using ConeFunction = std::function<DObject(const DVertex&)>;

class MeshCategory {
 public:
  explicit MeshCategory(std::shared_ptr<const DerivedCategory> dc) : dc_(std::move(dc)) {
    if (!dc_) throw PreconditionError("null derived category");
  }

  MeshCategory(const MeshCategory&) = delete;
  MeshCategory& operator=(const MeshCategory&) = delete;

  const DerivedCategory& derived() const noexcept { return *dc_; }
  std::shared_ptr<const DerivedCategory> derived_ptr() const noexcept { return dc_; }

  std::size_t hom_dim(const DVertex& x, const DVertex& y) const {
    std::lock_guard lock(mutex_);
    return functor(x).dim(y);
  }

  HomBasis hom_basis(const DVertex& x, const DVertex& y) const {
    std::lock_guard lock(mutex_);
    HomBasis out{x, y, {}};
    const Node* node = functor(x).node(y);
    if (node) out.lifts = node->lifts;
    return out;
  }

  // The single path underlying basis element j of Hom(x, y).
  Path basis_path(const DVertex& x, const DVertex& y, std::size_t j) const {
    std::lock_guard lock(mutex_);
    Path reversed{y};
    DVertex cur = y;
    std::size_t idx = j;
    for (;;) {
      const Node* node = functor(x).node(cur);
      if (!node || idx >= node->lifts.size()) throw PreconditionError("basis index out of range");
      const auto& lift = node->lifts[idx];
      if (!lift) break;
      cur = lift->via;
      idx = lift->index;
      reversed.push_back(cur);
    }
    return Path(reversed.rbegin(), reversed.rend());
  }

  // Matrix of g_j o - : Hom(x, y) -> Hom(x, z) for basis element g_j of Hom(y, z).
  Matrix postcompose(const DVertex& x, const DVertex& y, const DVertex& z, std::size_t j) const {
    std::lock_guard lock(mutex_);
    return postcompose_locked(x, y, z, j);
  }

  // g o f for f in Hom(x, y) and g in Hom(y, z), both given in basis coordinates.
  Vector compose(const DVertex& x, const DVertex& y, const DVertex& z, const Vector& f, const Vector& g) const {
    std::lock_guard lock(mutex_);
    const std::size_t dxy = functor(x).dim(y);
    const std::size_t dyz = functor(y).dim(z);
    const std::size_t dxz = functor(x).dim(z);
    if (f.size() != dxy || g.size() != dyz) throw PreconditionError("composition coordinates have the wrong size");
    Vector out(dxz);
    for (std::size_t j = 0; j < dyz; ++j) {
      if (is_zero(g[j])) continue;
      const Vector part = postcompose_locked(x, y, z, j) * f;
      for (std::size_t r = 0; r < dxz; ++r) out[r] += g[j] * part[r];
    }
    return out;
  }

  // All compositions of basis maps x -> w -> z with w in `through`.
  std::vector<Vector> factoring_span(const DVertex& x, const DVertex& z, const std::vector<DVertex>& through) const {
    std::lock_guard lock(mutex_);
    std::vector<Vector> out;
    for (const DVertex& w : through) {
      const std::size_t dxw = functor(x).dim(w);
      const std::size_t dwz = functor(w).dim(z);
      if (dxw == 0 || dwz == 0) continue;
      for (std::size_t j = 0; j < dwz; ++j) {
        const Matrix phi = postcompose_locked(x, w, z, j);
        for (std::size_t i = 0; i < dxw; ++i) out.push_back(phi.column(i));
      }
    }
    return out;
  }

  std::size_t factoring_dim(const DVertex& x, const DVertex& z, const std::vector<DVertex>& through) const {
    return span_rank(factoring_span(x, z, through), hom_dim(x, z));
  }

  ApproxTriangle minimal_right_approximation(const DVertex& x, std::vector<DVertex> cls,
                                             const ConeFunction& cone = {}) const {
    normalise(cls);
    std::vector<ApproxTriangle::Component> copies;
    for (const DVertex& c : cls) {
      const std::size_t d = hom_dim(c, x);
      for (std::size_t j = 0; j < d; ++j) copies.push_back({c, unit(d, j)});
    }
    auto covers = [&](const std::vector<ApproxTriangle::Component>& set) {
      for (const DVertex& a : cls) {
        const std::size_t target_dim = hom_dim(a, x);
        if (target_dim == 0) continue;
        std::vector<Vector> images;
        for (const auto& copy : set) {
          const std::size_t dac = hom_dim(a, copy.vertex);
          for (std::size_t i = 0; i < dac; ++i) images.push_back(compose(a, copy.vertex, x, unit(dac, i), copy.map));
        }
        if (span_rank(images, target_dim) != target_dim) return false;
      }
      return true;
    };
    return finish(x, prune(std::move(copies), covers), cone);
  }

  ApproxTriangle minimal_left_approximation(const DVertex& x, std::vector<DVertex> cls,
                                            const ConeFunction& cone = {}) const {
    normalise(cls);
    std::vector<ApproxTriangle::Component> copies;
    for (const DVertex& c : cls) {
      const std::size_t d = hom_dim(x, c);
      for (std::size_t j = 0; j < d; ++j) copies.push_back({c, unit(d, j)});
    }
    auto covers = [&](const std::vector<ApproxTriangle::Component>& set) {
      for (const DVertex& a : cls) {
        const std::size_t target_dim = hom_dim(x, a);
        if (target_dim == 0) continue;
        std::vector<Vector> images;
        for (const auto& copy : set) {
          const std::size_t dca = hom_dim(copy.vertex, a);
          for (std::size_t i = 0; i < dca; ++i) images.push_back(compose(x, copy.vertex, a, copy.map, unit(dca, i)));
        }
        if (span_rank(images, target_dim) != target_dim) return false;
      }
      return true;
    };
    return finish(x, prune(std::move(copies), covers), cone);
  }

 private:
  struct Node {
    std::size_t dim = 0;
    std::vector<std::pair<DVertex, Matrix>> in;  // arrow matrices A_{w -> z}: V(w) -> V(z)
    std::vector<std::optional<Lift>> lifts;

    const Matrix* arrow_from(const DVertex& w) const {
      for (const auto& [v, a] : in) {
        if (v == w) return &a;
      }
      return nullptr;
    }
  };

  // Hom(x, -) on the vertices reachable from x with shift at most shift(x) + 1;
  // everything else receives no nonzero maps from x.
  class SourceFunctor {
   public:
    SourceFunctor(const DerivedCategory& dc, const DVertex& x) {
      std::set<DVertex> region{x};
      std::queue<DVertex> todo;
      todo.push(x);
      while (!todo.empty()) {
        const DVertex v = todo.front();
        todo.pop();
        for (const DVertex& w : dc.successors(v)) {
          if (w.shift <= x.shift + 1 && region.insert(w).second) todo.push(w);
        }
      }
      std::vector<DVertex> order(region.begin(), region.end());
      std::stable_sort(order.begin(), order.end(),
                       [&](const DVertex& a, const DVertex& b) { return dc.height(a) < dc.height(b); });
      for (const DVertex& z : order) {
        Node node = z == x ? identity_node() : quotient_node(dc, z);
        if (node.dim != static_cast<std::size_t>(dc.hom_derived(x, z))) {
          throw InvariantViolation("mesh basis of Hom(" + dc.name(x) + ", " + dc.name(z) + ") has dimension " +
                                   std::to_string(node.dim) + " but the hammock gives " +
                                   std::to_string(dc.hom_derived(x, z)));
        }
        if (node.dim > 0) nodes_.emplace(z, std::move(node));
      }
    }

    const Node* node(const DVertex& z) const {
      const auto it = nodes_.find(z);
      return it == nodes_.end() ? nullptr : &it->second;
    }
    std::size_t dim(const DVertex& z) const {
      const Node* n = node(z);
      return n ? n->dim : 0;
    }

   private:
    static Node identity_node() {
      Node node;
      node.dim = 1;
      node.lifts.push_back(std::nullopt);
      return node;
    }

    Node quotient_node(const DerivedCategory& dc, const DVertex& z) const {
      struct Block {
        DVertex w;
        std::size_t offset;
        std::size_t dim;
      };
      std::vector<Block> blocks;
      std::size_t total = 0;
      for (const DVertex& w : dc.predecessors(z)) {
        const std::size_t d = dim(w);
        if (d == 0) continue;
        blocks.push_back({w, total, d});
        total += d;
      }
      Node out;
      if (total == 0) return out;

      const DVertex tz = dc.tau_free(z);
      std::vector<Vector> relations;
      if (const Node* start = node(tz)) {
        for (std::size_t e = 0; e < start->dim; ++e) {
          Vector row(total);
          for (const Block& b : blocks) {
            const Matrix* a = nodes_.at(b.w).arrow_from(tz);
            if (!a) continue;
            for (std::size_t r = 0; r < b.dim; ++r) row[b.offset + r] = (*a)(r, e);
          }
          relations.push_back(std::move(row));
        }
      }
      RowEchelon ech = relations.empty() ? RowEchelon{Matrix(0, total), {}} : row_echelon(from_rows(relations, total));
      std::vector<std::optional<std::size_t>> pivot_row(total);
      for (std::size_t p = 0; p < ech.pivots.size(); ++p) pivot_row[ech.pivots[p]] = p;
      std::vector<std::size_t> free_pos(total, 0);
      std::vector<std::size_t> free_cols;
      for (std::size_t c = 0; c < total; ++c) {
        if (!pivot_row[c]) {
          free_pos[c] = free_cols.size();
          free_cols.push_back(c);
        }
      }
      out.dim = free_cols.size();
      if (out.dim == 0) return out;
      for (const Block& b : blocks) {
        Matrix a(out.dim, b.dim);
        for (std::size_t k = 0; k < b.dim; ++k) {
          const std::size_t c = b.offset + k;
          if (!pivot_row[c]) {
            a(free_pos[c], k) = 1;
          } else {
            for (std::size_t q = 0; q < free_cols.size(); ++q) a(q, k) = -ech.reduced(*pivot_row[c], free_cols[q]);
          }
        }
        out.in.emplace_back(b.w, std::move(a));
      }
      for (std::size_t c : free_cols) {
        const auto it = std::find_if(blocks.begin(), blocks.end(),
                                     [&](const Block& b) { return c >= b.offset && c < b.offset + b.dim; });
        out.lifts.push_back(Lift{it->w, c - it->offset});
      }
      return out;
    }

    std::map<DVertex, Node> nodes_;
  };

  const SourceFunctor& functor(const DVertex& x) const {
    auto it = functors_.find(x);
    if (it == functors_.end()) it = functors_.emplace(x, std::make_unique<SourceFunctor>(*dc_, x)).first;
    return *it->second;
  }

  Matrix postcompose_locked(const DVertex& x, const DVertex& y, const DVertex& z, std::size_t j) const {
    const std::size_t dxy = functor(x).dim(y);
    const std::size_t dxz = functor(x).dim(z);
    const Node* yz = functor(y).node(z);
    if (!yz || j >= yz->dim) throw PreconditionError("basis index out of range in composition");
    auto& cache = post_cache_[{x, y}];
    if (const auto it = cache.find({z, j}); it != cache.end()) return it->second;

    Matrix result(dxz, dxy);
    const auto& lift = yz->lifts[j];
    if (!lift) {
      result = Matrix::identity(dxy);
    } else if (dxz > 0 && dxy > 0) {
      const Node* xz = functor(x).node(z);
      if (const Matrix* a = xz->arrow_from(lift->via)) result = *a * postcompose_locked(x, y, lift->via, lift->index);
    }
    post_cache_[{x, y}].emplace(std::make_pair(z, j), result);
    return result;
  }

  static Vector unit(std::size_t d, std::size_t j) {
    Vector v(d);
    v[j] = 1;
    return v;
  }

  static void normalise(std::vector<DVertex>& cls) {
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
  }

  // Drop copies one at a time while the approximation property survives; the
  // property is monotone in the set, so one pass leaves an inclusion-minimal set.
  template <class Covers>
  static std::vector<ApproxTriangle::Component> prune(std::vector<ApproxTriangle::Component> copies,
                                                      const Covers& covers) {
    if (!covers(copies)) throw InvariantViolation("full set of basis maps is not an approximation");
    for (std::size_t k = copies.size(); k-- > 0;) {
      auto trial = copies;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
      if (covers(trial)) copies = std::move(trial);
    }
    return copies;
  }

  static ApproxTriangle finish(const DVertex& x, std::vector<ApproxTriangle::Component> copies,
                               const ConeFunction& cone) {
    ApproxTriangle out;
    out.target = x;
    for (const auto& c : copies) out.approx_source.add(c.vertex);
    out.map = std::move(copies);
    if (cone) out.cone = cone(x);
    return out;
  }

  std::shared_ptr<const DerivedCategory> dc_;
  mutable std::recursive_mutex mutex_;
  mutable std::map<DVertex, std::unique_ptr<SourceFunctor>> functors_;
  mutable std::map<std::pair<DVertex, DVertex>, std::map<std::pair<DVertex, std::size_t>, Matrix>> post_cache_;
};

}  // namespace mcluster

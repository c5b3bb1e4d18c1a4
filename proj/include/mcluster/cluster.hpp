#pragma once

// The m-cluster category C = D / G with G = tau^{-1}[m]. Objects are named by
// their representatives in the fundamental domain
//
//   D_G = mod H[0] v ... v mod H[m-1] v H[m].

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "mcluster/derived.hpp"
#include "mcluster/errors.hpp"
#include "mcluster/mesh_basis.hpp"

namespace mcluster {

struct FundamentalDomain {
  int m = 1;
  std::vector<DVertex> vertices;

  std::optional<std::size_t> index_of(const DVertex& v) const {
    const auto it = std::find(vertices.begin(), vertices.end(), v);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }
  bool contains(const DVertex& v) const { return index_of(v).has_value(); }
};

// Modules at shifts 0..m-1 and projectives at shift m, ordered by slice index,
// then shift, then dimension vector.
inline FundamentalDomain fundamental_domain(const DerivedCategory& dc) {
  const ARQuiver& ar = dc.ar();
  FundamentalDomain fd{dc.m(), {}};
  for (int s = 0; s <= dc.m(); ++s) {
    for (std::size_t id = 0; id < ar.size(); ++id) {
      if (s < dc.m() || ar.vertex(id).projective_of) fd.vertices.push_back({id, s});
    }
  }
  std::sort(fd.vertices.begin(), fd.vertices.end(), [&](const DVertex& a, const DVertex& b) {
    const auto& va = ar.vertex(a.module);
    const auto& vb = ar.vertex(b.module);
    if (va.slice_index != vb.slice_index) return va.slice_index < vb.slice_index;
    if (a.shift != b.shift) return a.shift < b.shift;
    return va.dim < vb.dim;
  });
  return fd;
}

// dim Ext^k_C(x, y) for k in 1..m, and dim Hom_C(x, y) for k = 0.
inline int ext_cluster(const DerivedCategory& dc, const DVertex& x, const DVertex& y, int k) {
  if (k < 0 || k > dc.m()) throw PreconditionError("cluster Ext degree must lie in [0, m]");
  return dc.hom_orbit(x, y, k);
}

struct CompatibilityGraph {
  int m = 1;
  std::vector<DVertex> nodes;
  std::vector<bool> self_rigid;
  std::vector<boost::dynamic_bitset<>> adjacency;

  std::size_t size() const noexcept { return nodes.size(); }
  bool adjacent(std::size_t a, std::size_t b) const { return adjacency.at(a).test(b); }
  std::optional<std::size_t> index_of(const DVertex& v) const {
    const auto it = std::find(nodes.begin(), nodes.end(), v);
    if (it == nodes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - nodes.begin());
  }
  std::size_t require_index(const DVertex& v) const {
    const auto i = index_of(v);
    if (!i) throw PreconditionError("object is not in the fundamental domain");
    return *i;
  }
};

inline CompatibilityGraph compatibility_graph(const DerivedCategory& dc, const FundamentalDomain& fd) {
  const std::size_t count = fd.vertices.size();
  CompatibilityGraph g{fd.m, fd.vertices, std::vector<bool>(count, true),
                       std::vector<boost::dynamic_bitset<>>(count, boost::dynamic_bitset<>(count))};
  // vanish[a][b]: Ext^k_C(a, b) = 0 for every k in 1..m.
  std::vector<std::vector<bool>> vanish(count, std::vector<bool>(count, true));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      for (int k = 1; k <= fd.m && vanish[a][b]; ++k) {
        if (ext_cluster(dc, fd.vertices[a], fd.vertices[b], k) != 0) vanish[a][b] = false;
      }
    }
    g.self_rigid[a] = vanish[a][a];
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      if (a != b && vanish[a][b] && vanish[b][a]) g.adjacency[a].set(b);
    }
  }
  return g;
}

struct MRigidObject {
  std::vector<DVertex> summands;  // in fundamental-domain order
  bool maximal = false;

  friend bool operator==(const MRigidObject&, const MRigidObject&) = default;
};

namespace detail {

class CliqueEnumerator {
 public:
  CliqueEnumerator(const CompatibilityGraph& g, std::size_t cap) : g_(g), cap_(cap) {}

  std::vector<std::vector<std::size_t>> run() {
    const std::size_t n = g_.size();
    boost::dynamic_bitset<> p(n), x(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (g_.self_rigid[v]) p.set(v);
    }
    std::vector<std::size_t> r;
    expand(r, p, x);
    for (auto& c : found_) std::sort(c.begin(), c.end());
    std::sort(found_.begin(), found_.end());
    return std::move(found_);
  }

 private:
  // Bron-Kerbosch with Tomita pivoting.
  void expand(std::vector<std::size_t>& r, boost::dynamic_bitset<> p, boost::dynamic_bitset<> x) {
    if (p.none()) {
      if (x.none()) {
        if (found_.size() >= cap_) {
          throw CapExceeded("more than " + std::to_string(cap_) + " maximal m-rigid objects; raise --max-cliques");
        }
        found_.push_back(r);
      }
      return;
    }
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have = false;
    const boost::dynamic_bitset<> px = p | x;
    for (std::size_t u = px.find_first(); u != boost::dynamic_bitset<>::npos; u = px.find_next(u)) {
      const std::size_t c = (p & adjacency(u)).count();
      if (!have || c > best) {
        pivot = u;
        best = c;
        have = true;
      }
    }
    const boost::dynamic_bitset<> candidates = p - adjacency(pivot);
    for (std::size_t v = candidates.find_first(); v != boost::dynamic_bitset<>::npos; v = candidates.find_next(v)) {
      r.push_back(v);
      expand(r, p & adjacency(v), x & adjacency(v));
      r.pop_back();
      p.reset(v);
      x.set(v);
    }
  }

  const boost::dynamic_bitset<>& adjacency(std::size_t v) const { return g_.adjacency[v]; }

  const CompatibilityGraph& g_;
  std::size_t cap_;
  std::vector<std::vector<std::size_t>> found_;
};

}  // namespace detail

inline constexpr std::size_t default_clique_cap = 100000;

// All maximal cliques among self-rigid nodes, each sorted, in lexicographic order.
inline std::vector<MRigidObject> enumerate_maximal_m_rigid(const CompatibilityGraph& g,
                                                           std::size_t cap = default_clique_cap) {
  std::vector<MRigidObject> out;
  for (const auto& clique : detail::CliqueEnumerator(g, cap).run()) {
    MRigidObject t;
    for (std::size_t i : clique) t.summands.push_back(g.nodes[i]);
    t.maximal = true;
    out.push_back(std::move(t));
  }
  return out;
}

inline bool is_m_rigid(const std::vector<DVertex>& summands, const CompatibilityGraph& g) {
  std::vector<std::size_t> idx;
  for (const auto& v : summands) {
    const auto i = g.index_of(v);
    if (!i || !g.self_rigid[*i]) return false;
    idx.push_back(*i);
  }
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b] || !g.adjacent(idx[a], idx[b])) return false;
    }
  }
  return true;
}

// Nodes outside `summands` compatible with all of them; self-rigid ones only
// unless `include_non_rigid`.
inline std::vector<DVertex> common_neighbours(const std::vector<DVertex>& summands, const CompatibilityGraph& g,
                                              bool include_non_rigid = false) {
  boost::dynamic_bitset<> acc(g.size());
  acc.set();
  for (const auto& v : summands) {
    const std::size_t i = g.require_index(v);
    acc &= g.adjacency[i];
    acc.reset(i);
  }
  std::vector<DVertex> out;
  for (std::size_t v = acc.find_first(); v != boost::dynamic_bitset<>::npos; v = acc.find_next(v)) {
    if (include_non_rigid || g.self_rigid[v]) out.push_back(g.nodes[v]);
  }
  return out;
}

// Number of simples, read off as the number of shifted projectives in the domain.
inline std::size_t rank_of(const CompatibilityGraph& g) {
  return static_cast<std::size_t>(
      std::count_if(g.nodes.begin(), g.nodes.end(), [&](const DVertex& v) { return v.shift == g.m; }));
}

inline std::vector<DVertex> complements(const std::vector<DVertex>& partial, const CompatibilityGraph& g) {
  if (partial.size() + 1 != rank_of(g)) {
    throw PreconditionError("an almost complete object needs exactly n-1 summands");
  }
  if (!is_m_rigid(partial, g)) throw PreconditionError("object is not m-rigid");
  return common_neighbours(partial, g);
}

// No node outside t, rigid or not, is compatible with every summand of t.
inline bool is_m_cluster_tilting(const MRigidObject& t, const CompatibilityGraph& g) {
  if (!is_m_rigid(t.summands, g)) throw PreconditionError("object is not m-rigid");
  return common_neighbours(t.summands, g, true).empty();
}

inline bool is_maximal_m_rigid(const std::vector<DVertex>& summands, const CompatibilityGraph& g) {
  return is_m_rigid(summands, g) && common_neighbours(summands, g).empty();
}

// Basic tilting modules: n pairwise Ext^1-orthogonal indecomposables.
inline std::vector<std::vector<std::size_t>> tilting_modules(const ARQuiver& ar) {
  const std::size_t n = ar.quiver().size();
  std::vector<std::size_t> rigid;
  for (std::size_t id = 0; id < ar.size(); ++id) {
    if (ar.ext(id, id) == 0) rigid.push_back(id);
  }
  auto orthogonal = [&](std::size_t a, std::size_t b) { return ar.ext(a, b) == 0 && ar.ext(b, a) == 0; };
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> chosen;
  auto search = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == n) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t k = from; k < rigid.size(); ++k) {
      const std::size_t c = rigid[k];
      if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t a) { return orthogonal(a, c); })) {
        chosen.push_back(c);
        self(self, k + 1);
        chosen.pop_back();
      }
    }
  };
  search(search, 0);
  return out;
}

// Everything needed to work in C for one quiver and one m.
struct ClusterModel {
  std::shared_ptr<const ARQuiver> ar;
  std::shared_ptr<const DerivedCategory> dc;
  std::shared_ptr<const MeshCategory> mesh;
  FundamentalDomain fd;
  CompatibilityGraph graph;

  static std::shared_ptr<const ClusterModel> build(const Quiver& q, int m, std::optional<Window> window = std::nullopt) {
    auto model = std::make_shared<ClusterModel>();
    model->ar = std::make_shared<const ARQuiver>(knit_module_category(q));
    model->dc = std::make_shared<const DerivedCategory>(model->ar, m, window);
    model->mesh = std::make_shared<const MeshCategory>(model->dc);
    model->fd = fundamental_domain(*model->dc);
    model->graph = compatibility_graph(*model->dc, model->fd);
    return model;
  }

  const Quiver& quiver() const { return ar->quiver(); }
  const DerivedCategory& derived() const { return *dc; }
  int m() const { return dc->m(); }
  std::size_t n() const { return ar->quiver().size(); }

  std::string name(const DVertex& v) const { return dc->name(v); }
  std::vector<std::string> names(const std::vector<DVertex>& vs) const {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(dc->name(v));
    return out;
  }
  std::vector<DVertex> parse_names(const std::vector<std::string>& names) const {
    std::vector<DVertex> out;
    for (const auto& s : names) out.push_back(dc->parse_or_throw(s));
    return out;
  }
};

// A section of ZQ^op: one vertex per tau-orbit, indexed by quiver vertex.
struct Slice {
  std::vector<DVertex> vertices;

  friend bool operator==(const Slice&, const Slice&) = default;
  friend auto operator<=>(const Slice&, const Slice&) = default;
};

struct Normalization {
  Slice slice;
  std::shared_ptr<const ClusterModel> h0;  // model built on the slice quiver
  std::vector<DVertex> representatives;    // in the original model, inside the slice's domain
  std::vector<int> degrees;                // slice-relative degrees of the representatives
  std::vector<DVertex> images;             // slice-model names, aligned with the input summands
  MRigidObject repositioned;               // the same object in slice-model domain order
};

namespace detail {

inline std::optional<Slice> reflect(const DerivedCategory& dc, const Slice& s, std::size_t a, bool at_source) {
  const Quiver& q = dc.quiver();
  const auto succ = dc.successors(s.vertices[a]);
  const auto pred = dc.predecessors(s.vertices[a]);
  for (std::size_t b : q.out_neighbors(a)) {
    const auto& list = at_source ? succ : pred;
    if (std::find(list.begin(), list.end(), s.vertices[b]) == list.end()) return std::nullopt;
  }
  for (std::size_t b : q.in_neighbors(a)) {
    const auto& list = at_source ? succ : pred;
    if (std::find(list.begin(), list.end(), s.vertices[b]) == list.end()) return std::nullopt;
  }
  Slice out = s;
  out.vertices[a] = at_source ? dc.tau_inverse_free(s.vertices[a]) : dc.tau_free(s.vertices[a]);
  return out;
}

// Unique j with Hom(S[j], x) != 0.
inline int slice_degree(const DerivedCategory& dc, const Slice& s, const DVertex& x) {
  std::optional<int> found;
  for (const DVertex& p : s.vertices) {
    for (int j : {x.shift - p.shift - 1, x.shift - p.shift}) {
      if (dc.hom_derived(DerivedCategory::shift_free(p, j), x) == 0) continue;
      if (found && *found != j) throw InvariantViolation("object has two degrees relative to a slice");
      found = j;
    }
  }
  if (!found) throw InvariantViolation("object receives no maps from the slice");
  return *found;
}

inline Quiver slice_quiver(const DerivedCategory& dc, const Slice& s) {
  const Quiver& q = dc.quiver();
  std::vector<std::pair<std::string, std::string>> arrows;
  for (std::size_t a = 0; a < q.size(); ++a) {
    for (const DVertex& w : dc.successors(s.vertices[a])) {
      for (std::size_t b = 0; b < q.size(); ++b) {
        // ZQ^op arrow S_a -> S_b is the map P0(a) -> P0(b), i.e. an arrow b -> a.
        if (s.vertices[b] == w) arrows.emplace_back(q.label(b), q.label(a));
      }
    }
  }
  return Quiver::from_labels(q.labels(), arrows, {.allow_disconnected = true, .allow_empty = true});
}

}  // namespace detail

// Finds a slice S for which every summand of t, moved along its G-orbit into
// the domain of S, has S-relative degree in [0, m-1]. Slices are visited
// breadth first from the projectives, so the identity slice wins when possible.
inline Normalization normalize_to_Dminus(const ClusterModel& model, const MRigidObject& t,
                                         std::size_t max_slices = 20000) {
  const DerivedCategory& dc = model.derived();
  const Quiver& q = model.quiver();
  const int m = dc.m();
  if (!is_maximal_m_rigid(t.summands, model.graph)) throw PreconditionError("object is not maximal m-rigid");

  Slice start;
  for (std::size_t i = 0; i < q.size(); ++i) start.vertices.push_back({model.ar->projective(i), 0});
  std::set<Slice> seen{start};
  std::queue<Slice> todo;
  todo.push(start);
  const Window& w = dc.window();
  while (!todo.empty()) {
    const Slice s = todo.front();
    todo.pop();

    std::vector<DVertex> reps;
    std::vector<int> degrees;
    bool ok = true;
    for (const DVertex& x : t.summands) {
      std::optional<std::pair<DVertex, int>> rep;
      for (int j = -2; j <= 2; ++j) {
        const DVertex y = dc.G_free(x, j);
        const int d = detail::slice_degree(dc, s, y);
        bool inside = d >= 0 && d <= m - 1;
        if (d == m) {
          for (const DVertex& p : s.vertices) inside = inside || DerivedCategory::shift_free(p, m) == y;
        }
        if (!inside) continue;
        if (rep) throw InvariantViolation("G-orbit meets a slice domain twice");
        rep = std::make_pair(y, d);
      }
      if (!rep || rep->second > m - 1) {
        ok = false;
        break;
      }
      reps.push_back(rep->first);
      degrees.push_back(rep->second);
    }
    if (ok) {
      Normalization out{s, nullptr, reps, degrees, {}, {}};
      const Quiver h0q = detail::slice_quiver(dc, s);
      out.h0 = ClusterModel::build(h0q, m, w);
      for (std::size_t k = 0; k < reps.size(); ++k) {
        DimVector dim = DimVector::zero(q.size());
        for (std::size_t b = 0; b < q.size(); ++b) {
          dim[b] = dc.hom_derived(DerivedCategory::shift_free(s.vertices[b], degrees[k]), reps[k]);
        }
        const auto id = out.h0->ar->find(dim);
        if (!id) throw InvariantViolation("slice module " + dim.to_string() + " is not a root of the slice quiver");
        out.images.push_back({*id, degrees[k]});
      }
      out.repositioned.summands = out.images;
      auto& summands = out.repositioned.summands;
      for (const DVertex& v : summands) {
        if (!out.h0->fd.contains(v)) throw InvariantViolation("repositioned summand lies outside the slice domain");
      }
      std::sort(summands.begin(), summands.end(), [&](const DVertex& a, const DVertex& b) {
        return *out.h0->fd.index_of(a) < *out.h0->fd.index_of(b);
      });
      out.repositioned.maximal = is_maximal_m_rigid(summands, out.h0->graph);
      return out;
    }

    for (std::size_t a = 0; a < q.size(); ++a) {
      for (bool at_source : {true, false}) {
        auto next = detail::reflect(dc, s, a, at_source);
        if (!next) continue;
        const DVertex& moved = next->vertices[a];
        if (moved.shift < w.lo || moved.shift > w.hi) continue;
        if (seen.insert(*next).second) {
          if (seen.size() > max_slices) throw CapExceeded("slice search exceeded its cap");
          todo.push(*next);
        }
      }
    }
  }
  throw WindowOverflow("no slice inside the shift window places the object in degrees 0..m-1; widen --window");
}

}  // namespace mcluster

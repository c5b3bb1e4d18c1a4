#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mcluster/errors.hpp"

namespace mcluster {

// Dimension vector indexed by the quiver's canonical vertex order.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::vector<int> entries) : entries_(std::move(entries)) {}

  static DimVector zero(std::size_t n) { return DimVector(std::vector<int>(n, 0)); }
  static DimVector unit(std::size_t n, std::size_t i) {
    DimVector v = zero(n);
    v.entries_.at(i) = 1;
    return v;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  int total() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int x) { return x == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int x) { return x >= 0; });
  }
  bool is_positive() const { return is_nonnegative() && !is_zero(); }

  DimVector& operator+=(const DimVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  DimVector& operator-=(const DimVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  friend DimVector operator+(DimVector a, const DimVector& b) { return a += b; }
  friend DimVector operator-(DimVector a, const DimVector& b) { return a -= b; }
  friend DimVector operator-(DimVector a) {
    for (auto& x : a.entries_) x = -x;
    return a;
  }

  friend bool operator==(const DimVector&, const DimVector&) = default;
  friend auto operator<=>(const DimVector&, const DimVector&) = default;

  // "110" when every entry is a single non-negative digit, "(1,10,0)" otherwise.
  std::string to_string() const {
    const bool digits =
        std::all_of(entries_.begin(), entries_.end(), [](int x) { return x >= 0 && x < 10; });
    std::string out;
    if (digits) {
      for (int x : entries_) out.push_back(static_cast<char>('0' + x));
      return out;
    }
    out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(entries_[i]);
    }
    return out + ")";
  }

  static std::optional<DimVector> parse(std::string_view text) {
    std::vector<int> entries;
    if (!text.empty() && text.front() == '(') {
      if (text.back() != ')') return std::nullopt;
      std::string body(text.substr(1, text.size() - 2));
      std::size_t pos = 0;
      while (pos <= body.size()) {
        const auto comma = body.find(',', pos);
        const std::string token = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (token.empty()) return std::nullopt;
        try {
          std::size_t used = 0;
          entries.push_back(std::stoi(token, &used));
          if (used != token.size()) return std::nullopt;
        } catch (const std::exception&) {
          return std::nullopt;
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      return DimVector(std::move(entries));
    }
    for (char c : text) {
      if (c < '0' || c > '9') return std::nullopt;
      entries.push_back(c - '0');
    }
    if (entries.empty()) return std::nullopt;
    return DimVector(std::move(entries));
  }

 private:
  void check_size(const DimVector& o) const {
    if (o.size() != size()) throw PreconditionError("dimension vectors of different length");
  }

  std::vector<int> entries_;
};

struct Arrow {
  std::size_t source;
  std::size_t target;

  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

struct QuiverOptions {
  // Perpendicular and slice quivers may split into several Dynkin components,
  // and localising A1 leaves the empty quiver; user input allows neither.
  bool allow_disconnected = false;
  bool allow_empty = false;
};

// Finite acyclic quiver whose underlying graph is a disjoint union of ADE diagrams.
// Vertices are stored in lexicographic label order; all indices refer to that order.
class Quiver {
 public:
  Quiver() = default;

  static Quiver from_labels(std::vector<std::string> vertices,
                            const std::vector<std::pair<std::string, std::string>>& arrows,
                            QuiverOptions options = {}) {
    Quiver q;
    if (vertices.empty() && !options.allow_empty) {
      throw QuiverError(QuiverErrorKind::malformed, "quiver has no vertices");
    }
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
      throw QuiverError(QuiverErrorKind::malformed, "duplicate vertex label");
    }
    q.labels_ = std::move(vertices);
    for (const auto& [s, t] : arrows) {
      const auto si = q.index_of(s);
      const auto ti = q.index_of(t);
      if (!si || !ti) {
        throw QuiverError(QuiverErrorKind::malformed, "arrow " + s + "->" + t + " uses an unknown vertex");
      }
      q.arrows_.push_back({*si, *ti});
    }
    std::sort(q.arrows_.begin(), q.arrows_.end());
    q.validate(options);
    return q;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }

  std::optional<std::size_t> index_of(std::string_view label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                                     [](const std::string& a, std::string_view b) { return a < b; });
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  bool has_arrow(std::size_t s, std::size_t t) const {
    return std::binary_search(arrows_.begin(), arrows_.end(), Arrow{s, t});
  }

  std::vector<std::size_t> out_neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& a : arrows_) {
      if (a.source == i) out.push_back(a.target);
    }
    return out;
  }

  std::vector<std::size_t> in_neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (const auto& a : arrows_) {
      if (a.target == i) out.push_back(a.source);
    }
    return out;
  }

  // Sources first; ties by label order.
  const std::vector<std::size_t>& topological_order() const noexcept { return topo_; }

  // Connected components of the underlying graph, each sorted by index.
  const std::vector<std::vector<std::size_t>>& components() const noexcept { return components_; }

  std::size_t component_of(std::size_t i) const { return component_index_.at(i); }

  // Number of paths from s to t (1 for s == t).
  std::size_t count_paths(std::size_t s, std::size_t t) const {
    std::vector<std::size_t> ways(size(), 0);
    ways[s] = 1;
    for (std::size_t v : topo_) {
      if (ways[v] == 0) continue;
      for (std::size_t w : out_neighbors(v)) ways[w] += ways[v];
    }
    return ways[t];
  }

  // "A3", "D4", or "A1+A2" for disconnected quivers ("" for the empty quiver).
  std::string dynkin_type() const {
    std::string out;
    for (const auto& t : component_types_) {
      if (!out.empty()) out += '+';
      out += t;
    }
    return out;
  }

  const std::vector<std::string>& component_types() const noexcept { return component_types_; }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.labels_ == b.labels_ && a.arrows_ == b.arrows_;
  }

 private:
  void validate(const QuiverOptions& options) {
    const std::size_t n = size();
    for (const auto& a : arrows_) {
      if (a.source == a.target) {
        throw QuiverError(QuiverErrorKind::cyclic, "loop at vertex " + labels_[a.source]);
      }
    }
    // Kahn's algorithm; smallest available index first for determinism.
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& a : arrows_) ++indegree[a.target];
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] == 0) ready.insert(i);
    }
    topo_.clear();
    while (!ready.empty()) {
      const std::size_t v = *ready.begin();
      ready.erase(ready.begin());
      topo_.push_back(v);
      for (const auto& a : arrows_) {
        if (a.source == v && --indegree[a.target] == 0) ready.insert(a.target);
      }
    }
    if (topo_.size() != n) throw QuiverError(QuiverErrorKind::cyclic, "quiver has an oriented cycle");

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& a : arrows_) {
      const auto e = std::minmax(a.source, a.target);
      if (!edges.insert(e).second) {
        throw QuiverError(QuiverErrorKind::non_dynkin,
                          "multiple arrows between " + labels_[a.source] + " and " + labels_[a.target]);
      }
    }

    std::vector<std::vector<std::size_t>> adjacency(n);
    for (const auto& [u, v] : edges) {
      adjacency[u].push_back(v);
      adjacency[v].push_back(u);
    }
    component_index_.assign(n, n);
    components_.clear();
    for (std::size_t start = 0; start < n; ++start) {
      if (component_index_[start] != n) continue;
      std::vector<std::size_t> comp;
      std::queue<std::size_t> todo;
      todo.push(start);
      component_index_[start] = components_.size();
      while (!todo.empty()) {
        const std::size_t v = todo.front();
        todo.pop();
        comp.push_back(v);
        for (std::size_t w : adjacency[v]) {
          if (component_index_[w] == n) {
            component_index_[w] = components_.size();
            todo.push(w);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      components_.push_back(std::move(comp));
    }
    if (components_.size() > 1 && !options.allow_disconnected) {
      throw QuiverError(QuiverErrorKind::disconnected,
                        "underlying graph has " + std::to_string(components_.size()) + " components");
    }

    component_types_.clear();
    for (const auto& comp : components_) component_types_.push_back(classify(comp, adjacency));
  }

  std::string classify(const std::vector<std::size_t>& comp,
                       const std::vector<std::vector<std::size_t>>& adjacency) const {
    std::size_t edge_count = 0;
    for (std::size_t v : comp) edge_count += adjacency[v].size();
    edge_count /= 2;
    if (edge_count + 1 != comp.size()) {
      throw QuiverError(QuiverErrorKind::non_dynkin, "underlying graph contains a cycle");
    }
    std::vector<std::size_t> branch;
    for (std::size_t v : comp) {
      if (adjacency[v].size() > 3) {
        throw QuiverError(QuiverErrorKind::non_dynkin, "vertex " + labels_[v] + " has degree > 3");
      }
      if (adjacency[v].size() == 3) branch.push_back(v);
    }
    const std::string rank = std::to_string(comp.size());
    if (branch.empty()) return "A" + rank;
    if (branch.size() > 1) throw QuiverError(QuiverErrorKind::non_dynkin, "more than one branch vertex");

    std::vector<std::size_t> arms;
    for (std::size_t first : adjacency[branch[0]]) {
      std::size_t length = 1;
      std::size_t prev = branch[0];
      std::size_t cur = first;
      while (adjacency[cur].size() == 2) {
        const std::size_t next = adjacency[cur][0] == prev ? adjacency[cur][1] : adjacency[cur][0];
        prev = cur;
        cur = next;
        ++length;
      }
      arms.push_back(length);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + rank;
    if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + rank;
    throw QuiverError(QuiverErrorKind::non_dynkin, "branch arms are not of type D or E");
  }

  std::vector<std::string> labels_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> topo_;
  std::vector<std::vector<std::size_t>> components_;
  std::vector<std::size_t> component_index_;
  std::vector<std::string> component_types_;
};

// Quiver JSON: {"vertices": [string...], "arrows": [[string,string]...]}, no other keys.
inline Quiver parse_quiver(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw QuiverError(QuiverErrorKind::malformed, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw QuiverError(QuiverErrorKind::malformed, "top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "vertices" && key != "arrows") {
      throw QuiverError(QuiverErrorKind::malformed, "unknown key \"" + key + "\"");
    }
  }
  if (!doc.contains("vertices") || !doc.contains("arrows")) {
    throw QuiverError(QuiverErrorKind::malformed, "both \"vertices\" and \"arrows\" are required");
  }
  const auto& vs = doc["vertices"];
  const auto& as = doc["arrows"];
  if (!vs.is_array() || !as.is_array()) {
    throw QuiverError(QuiverErrorKind::malformed, "\"vertices\" and \"arrows\" must be arrays");
  }
  std::vector<std::string> vertices;
  for (const auto& v : vs) {
    if (!v.is_string()) throw QuiverError(QuiverErrorKind::malformed, "vertex labels must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> arrows;
  for (const auto& a : as) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string()) {
      throw QuiverError(QuiverErrorKind::malformed, "each arrow must be a [source, target] pair of strings");
    }
    arrows.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
  }
  return Quiver::from_labels(std::move(vertices), arrows);
}

inline nlohmann::json to_json(const Quiver& q) {
  nlohmann::json arrows = nlohmann::json::array();
  for (const auto& a : q.arrows()) arrows.push_back({q.label(a.source), q.label(a.target)});
  return {{"vertices", q.labels()}, {"arrows", arrows}};
}

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"A1", "A2", "A3", "A4", "A5", "A6",
                                                 "A7", "A8", "D4", "D5", "D6", "E6"};
  return names;
}

// A_n: 1->2->...->n. D_n: chain 1-...-(n-2) with legs n-1, n at the branch vertex n-2.
// E6: chain 1-2-3-4-5 with 6 attached to 3. D and E arrows all point away from the branch vertex.
inline std::optional<Quiver> preset_quiver(std::string_view name) {
  if (std::find(preset_names().begin(), preset_names().end(), name) == preset_names().end()) {
    return std::nullopt;
  }
  const char family = name[0];
  const int n = std::stoi(std::string(name.substr(1)));
  std::vector<std::string> vertices;
  for (int i = 1; i <= n; ++i) vertices.push_back(std::to_string(i));
  std::vector<std::pair<std::string, std::string>> arrows;
  auto arrow = [&](int s, int t) { arrows.emplace_back(std::to_string(s), std::to_string(t)); };
  if (family == 'A') {
    for (int i = 1; i < n; ++i) arrow(i, i + 1);
  } else if (family == 'D') {
    const int branch = n - 2;
    for (int i = branch; i > 1; --i) arrow(i, i - 1);
    arrow(branch, n - 1);
    arrow(branch, n);
  } else {
    arrow(3, 2);
    arrow(2, 1);
    arrow(3, 4);
    arrow(4, 5);
    arrow(3, 6);
  }
  return Quiver::from_labels(std::move(vertices), arrows);
}

inline void check_dims(const Quiver& q, const DimVector& a) {
  if (a.size() != q.size()) {
    throw PreconditionError("dimension vector has " + std::to_string(a.size()) + " entries but the quiver has " +
                            std::to_string(q.size()) + " vertices");
  }
}

// <a,b> = sum_i a_i b_i - sum_{i->j} a_i b_j
inline int euler_form(const Quiver& q, const DimVector& a, const DimVector& b) {
  check_dims(q, a);
  check_dims(q, b);
  int value = 0;
  for (std::size_t i = 0; i < q.size(); ++i) value += a[i] * b[i];
  for (const auto& arrow : q.arrows()) value -= a[arrow.source] * b[arrow.target];
  return value;
}

// Symmetrized (Tits) form; equals euler_form(q, a, a).
inline int tits_form(const Quiver& q, const DimVector& a) { return euler_form(q, a, a); }

// Positive roots of the underlying diagram, generated by adding simple roots
// while the Tits form stays 1. Sorted by height, then entries.
inline std::vector<DimVector> positive_roots(const Quiver& q) {
  const std::size_t n = q.size();
  std::set<DimVector> seen;
  std::queue<DimVector> todo;
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = DimVector::unit(n, i);
    seen.insert(e);
    todo.push(e);
  }
  while (!todo.empty()) {
    const DimVector root = todo.front();
    todo.pop();
    for (std::size_t i = 0; i < n; ++i) {
      DimVector next = root + DimVector::unit(n, i);
      if (tits_form(q, next) == 1 && seen.insert(next).second) todo.push(next);
    }
  }
  std::vector<DimVector> roots(seen.begin(), seen.end());
  std::stable_sort(roots.begin(), roots.end(), [](const DimVector& a, const DimVector& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return a < b;
  });
  return roots;
}

}  // namespace mcluster

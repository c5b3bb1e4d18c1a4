#pragma once

// Bounded derived category D^b(kQ) of a Dynkin quiver, modelled on ZQ^op.
// An indecomposable is a module vertex together with a shift. Hom dimensions
// come from the module-level hammock tables: Hom(X[s], Y[t]) is Hom_H(X, Y) when
// t = s, Ext^1_H(X, Y) when t = s + 1, and zero otherwise.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcluster/ar_quiver.hpp"
#include "mcluster/errors.hpp"

namespace mcluster {

struct DVertex {
  std::size_t module = 0;
  int shift = 0;

  friend bool operator==(const DVertex&, const DVertex&) = default;
  friend auto operator<=>(const DVertex&, const DVertex&) = default;
};

// Finite direct sum of indecomposables with positive multiplicities.
class DObject {
 public:
  DObject() = default;
  DObject(std::initializer_list<DVertex> vs) {
    for (const auto& v : vs) add(v);
  }
  explicit DObject(const std::vector<DVertex>& vs) {
    for (const auto& v : vs) add(v);
  }

  void add(const DVertex& v, int multiplicity = 1) {
    if (multiplicity < 0) throw PreconditionError("negative multiplicity");
    if (multiplicity == 0) return;
    summands_[v] += multiplicity;
  }
  void add(const DObject& o) {
    for (const auto& [v, k] : o.summands_) add(v, k);
  }

  const std::map<DVertex, int>& summands() const noexcept { return summands_; }
  int multiplicity(const DVertex& v) const {
    const auto it = summands_.find(v);
    return it == summands_.end() ? 0 : it->second;
  }
  bool empty() const noexcept { return summands_.empty(); }
  bool is_basic() const {
    for (const auto& [v, k] : summands_) {
      if (k != 1) return false;
    }
    return true;
  }
  std::size_t distinct() const noexcept { return summands_.size(); }
  int total() const {
    int out = 0;
    for (const auto& [v, k] : summands_) out += k;
    return out;
  }
  std::vector<DVertex> vertices() const {
    std::vector<DVertex> out;
    for (const auto& [v, k] : summands_) out.push_back(v);
    return out;
  }
  // Single indecomposable summand with multiplicity 1, if that is all there is.
  std::optional<DVertex> as_indecomposable() const {
    if (summands_.size() != 1 || summands_.begin()->second != 1) return std::nullopt;
    return summands_.begin()->first;
  }

  friend bool operator==(const DObject&, const DObject&) = default;

 private:
  std::map<DVertex, int> summands_;
};

struct Window {
  int lo = -3;
  int hi = 5;

  static Window for_m(int m) { return {-3, m + 4}; }
  bool contains(int shift) const noexcept { return lo <= shift && shift <= hi; }
};

class DerivedCategory {
 public:
  DerivedCategory(std::shared_ptr<const ARQuiver> ar, int m, std::optional<Window> window = std::nullopt)
      : ar_(std::move(ar)), m_(m), window_(window.value_or(Window::for_m(m))) {
    if (!ar_) throw PreconditionError("null AR quiver");
    if (m_ < 1) throw PreconditionError("m must be at least 1");
    if (window_.lo > 0 || window_.hi < m_) throw PreconditionError("window must contain the shifts 0..m");
    build_orbit_data();
  }

  const ARQuiver& ar() const noexcept { return *ar_; }
  std::shared_ptr<const ARQuiver> ar_ptr() const noexcept { return ar_; }
  const Quiver& quiver() const noexcept { return ar_->quiver(); }
  int m() const noexcept { return m_; }
  const Window& window() const noexcept { return window_; }

  bool in_window(const DVertex& x) const noexcept { return window_.contains(x.shift); }

  int degree(const DVertex& x) const noexcept { return x.shift; }

  DVertex shift(const DVertex& x, int k) const {
    require_window(x);
    return checked(shift_free(x, k));
  }
  DObject shift(const DObject& x, int k) const {
    DObject out;
    for (const auto& [v, mult] : x.summands()) out.add(shift(v, k), mult);
    return out;
  }

  DVertex tau_derived(const DVertex& x) const {
    require_window(x);
    return checked(tau_free(x));
  }
  DVertex tau_inverse_derived(const DVertex& x) const {
    require_window(x);
    return checked(tau_inverse_free(x));
  }

  // G = tau^{-1}[m]; negative t applies G^{-1} = tau[-m].
  DVertex G_apply(const DVertex& x, int t) const {
    require_window(x);
    return checked(G_free(x, t));
  }

  // Window-free versions. Hom spaces between vertices of far apart degree vanish,
  // so the orbit sums and mesh computations are allowed to step outside the window.
  static DVertex shift_free(const DVertex& x, int k) noexcept { return {x.module, x.shift + k}; }

  DVertex tau_free(const DVertex& x) const {
    const ARVertex& v = ar_->vertex(x.module);
    if (v.projective_of) return {ar_->injective(*v.projective_of), x.shift - 1};
    return {*ar_->tau(x.module), x.shift};
  }

  DVertex tau_inverse_free(const DVertex& x) const {
    const ARVertex& v = ar_->vertex(x.module);
    if (v.injective_of) return {ar_->projective(*v.injective_of), x.shift + 1};
    return {*ar_->tau_inverse(x.module), x.shift};
  }

  DVertex G_free(DVertex x, int t) const {
    for (; t > 0; --t) x = shift_free(tau_inverse_free(x), m_);
    for (; t < 0; ++t) x = tau_free(shift_free(x, -m_));
    return x;
  }

  int hom_derived(const DVertex& x, const DVertex& y) const {
    const int gap = y.shift - x.shift;
    if (gap == 0) return ar_->hom(x.module, y.module);
    if (gap == 1) return ar_->ext(x.module, y.module);
    return 0;
  }

  int hom(const DObject& x, const DObject& y) const {
    int out = 0;
    for (const auto& [a, ka] : x.summands()) {
      for (const auto& [b, kb] : y.summands()) out += ka * kb * hom_derived(a, b);
    }
    return out;
  }

  // One term of the orbit sum: Hom_D(x, G^t(y)[k]).
  int hom_orbit_term(const DVertex& x, const DVertex& y, int k, int t) const {
    return hom_derived(x, shift_free(G_free(y, t), k));
  }

  // sum_{t in [-2, 2]} Hom_D(x, G^t(y)[k]); the |t| = 2 terms must vanish.
  int hom_orbit(const DVertex& x, const DVertex& y, int k) const {
    int total = 0;
    for (int t = -2; t <= 2; ++t) {
      const int term = hom_orbit_term(x, y, k, t);
      if ((t == -2 || t == 2) && term != 0) {
        throw InvariantViolation("orbit sum term t=" + std::to_string(t) + " is nonzero for " + name(x) + ", " +
                                 name(y) + ", k=" + std::to_string(k));
      }
      total += term;
    }
    return total;
  }

  // Height function on ZQ^op: every arrow raises it by one and tau lowers it by two.
  long height(const DVertex& x) const {
    const ARVertex& v = ar_->vertex(x.module);
    return v.slice_index + static_cast<long>(x.shift) * shift_height_[quiver().component_of(v.orbit)];
  }

  // tau-orbit of x, named by a quiver vertex.
  std::size_t orbit(const DVertex& x) const {
    std::size_t o = ar_->vertex(x.module).orbit;
    for (int s = x.shift; s > 0; --s) o = nakayama_[o];
    for (int s = x.shift; s < 0; ++s) o = nakayama_inverse_[o];
    return o;
  }

  // Orbit of I(i) is nakayama(i).
  std::size_t nakayama(std::size_t i) const { return nakayama_.at(i); }

  std::vector<DVertex> successors(const DVertex& x) const {
    std::vector<DVertex> out;
    for (std::size_t w : ar_->successors(x.module)) out.push_back({w, x.shift});
    if (const auto i = ar_->vertex(x.module).injective_of) {
      for (std::size_t b : quiver().out_neighbors(*i)) out.push_back({ar_->projective(b), x.shift + 1});
    }
    return out;
  }

  std::vector<DVertex> predecessors(const DVertex& x) const {
    std::vector<DVertex> out;
    if (const auto b = ar_->vertex(x.module).projective_of) {
      for (std::size_t a : quiver().in_neighbors(*b)) out.push_back({ar_->injective(a), x.shift - 1});
    }
    for (std::size_t w : ar_->predecessors(x.module)) out.push_back({w, x.shift});
    return out;
  }

  bool is_projective_module(const DVertex& x) const { return ar_->vertex(x.module).projective_of.has_value(); }

  // All indecomposables with shift in the window, ordered by (shift, module id).
  std::vector<DVertex> window_vertices() const {
    std::vector<DVertex> out;
    for (int s = window_.lo; s <= window_.hi; ++s) {
      for (std::size_t id = 0; id < ar_->size(); ++id) out.push_back({id, s});
    }
    return out;
  }

  // "110[1]": dimension vector of the module followed by the shift.
  std::string name(const DVertex& x) const { return ar_->name(x.module) + "[" + std::to_string(x.shift) + "]"; }

  std::string name(const DObject& x) const {
    std::string out;
    for (const auto& [v, k] : x.summands()) {
      if (!out.empty()) out += " + ";
      if (k != 1) out += std::to_string(k) + "*";
      out += name(v);
    }
    return out.empty() ? "0" : out;
  }

  // Accepts "110[1]", "110" (shift 0), "(1,10,0)[-2]".
  std::optional<DVertex> parse(std::string_view text) const {
    int shift = 0;
    std::string_view dim = text;
    if (!text.empty() && text.back() == ']') {
      const auto open = text.rfind('[');
      if (open == std::string_view::npos) return std::nullopt;
      const std::string number(text.substr(open + 1, text.size() - open - 2));
      try {
        std::size_t used = 0;
        shift = std::stoi(number, &used);
        if (used != number.size()) return std::nullopt;
      } catch (const std::exception&) {
        return std::nullopt;
      }
      dim = text.substr(0, open);
    }
    const auto id = ar_->find(dim);
    if (!id) return std::nullopt;
    return DVertex{*id, shift};
  }

  DVertex parse_or_throw(std::string_view text) const {
    const auto v = parse(text);
    if (!v) throw PreconditionError("unknown object \"" + std::string(text) + "\"");
    return *v;
  }

 private:
  void require_window(const DVertex& x) const {
    if (!in_window(x)) {
      throw WindowOverflow(name(x) + " lies outside the shift window [" + std::to_string(window_.lo) + ", " +
                           std::to_string(window_.hi) + "]; widen it with --window");
    }
  }
  DVertex checked(const DVertex& x) const {
    require_window(x);
    return x;
  }

  void build_orbit_data() {
    const Quiver& q = quiver();
    const std::size_t n = q.size();
    nakayama_.assign(n, 0);
    nakayama_inverse_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t o = ar_->vertex(ar_->injective(i)).orbit;
      nakayama_[i] = o;
      nakayama_inverse_[o] = i;
    }
    shift_height_.assign(q.components().size(), 0);
    for (std::size_t c = 0; c < q.components().size(); ++c) {
      const std::size_t i = q.components()[c].front();
      shift_height_[c] = 2L + ar_->vertex(ar_->injective(i)).slice_index - ar_->vertex(ar_->projective(i)).slice_index;
      for (std::size_t j : q.components()[c]) {
        const long hs = 2L + ar_->vertex(ar_->injective(j)).slice_index - ar_->vertex(ar_->projective(j)).slice_index;
        if (hs != shift_height_[c]) throw InvariantViolation("shift does not act by a constant height");
      }
    }
    for (const auto& a : q.arrows()) {
      const DVertex from{ar_->injective(a.source), 0};
      const DVertex to{ar_->projective(a.target), 1};
      if (height(to) != height(from) + 1) throw InvariantViolation("connecting arrow breaks the height function");
    }
  }

  std::shared_ptr<const ARQuiver> ar_;
  int m_;
  Window window_;
  std::vector<std::size_t> nakayama_;
  std::vector<std::size_t> nakayama_inverse_;
  std::vector<long> shift_height_;
};

inline std::ostream& operator<<(std::ostream& os, const DVertex& v) {
  return os << "(" << v.module << ")[" << v.shift << "]";
}

}  // namespace mcluster

#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "mcluster/mesh_basis.hpp"
#include "oracles.hpp"

using namespace mcluster;

namespace {

struct Fixture {
  std::shared_ptr<const DerivedCategory> dc;
  std::shared_ptr<const MeshCategory> mesh;
};

Fixture make(const Quiver& q, int m = 1) {
  auto ar = std::make_shared<const ARQuiver>(knit_module_category(q));
  auto dc = std::make_shared<const DerivedCategory>(ar, m);
  return {dc, std::make_shared<const MeshCategory>(dc)};
}

// Vertices with shift in [lo, hi].
std::vector<DVertex> slab(const DerivedCategory& dc, int lo, int hi) {
  std::vector<DVertex> out;
  for (const auto& v : dc.window_vertices()) {
    if (v.shift >= lo && v.shift <= hi) out.push_back(v);
  }
  return out;
}

// Coordinates of a path in the path basis of (x, y).
Vector path_vector(const oracle::PathModel::Path& p, const std::vector<oracle::PathModel::Path>& basis) {
  Vector v(basis.size());
  const auto it = std::find(basis.begin(), basis.end(), p);
  v[static_cast<std::size_t>(it - basis.begin())] = 1;
  return v;
}

}  // namespace

TEST(MeshBasis, DimensionsMatchHammocksOnAllPresets) {
  for (const auto& name : preset_names()) {
    const auto f = make(*preset_quiver(name));
    for (const auto& x : slab(*f.dc, -1, 1)) {
      for (const auto& y : slab(*f.dc, -1, 2)) {
        ASSERT_EQ(f.mesh->hom_dim(x, y), static_cast<std::size_t>(f.dc->hom_derived(x, y)))
            << name << " " << f.dc->name(x) << " -> " << f.dc->name(y);
      }
    }
  }
}

TEST(MeshBasis, DimensionsMatchPathQuotient) {
  std::vector<Quiver> qs = oracle::a_orientations(3);
  qs.push_back(*preset_quiver("A2"));
  qs.push_back(*preset_quiver("D4"));
  for (const Quiver& q : qs) {
    const auto f = make(q);
    const oracle::PathModel paths(*f.dc);
    for (const auto& x : slab(*f.dc, 0, 0)) {
      for (const auto& y : slab(*f.dc, 0, 1)) {
        ASSERT_EQ(static_cast<int>(f.mesh->hom_dim(x, y)), paths.hom(x, y))
            << to_json(q).dump() << " " << f.dc->name(x) << " -> " << f.dc->name(y);
      }
    }
  }
}

TEST(MeshBasis, BasisPathsAreIndependentModuloMeshes) {
  for (const std::string name : {"A2", "A3", "D4"}) {
    const auto f = make(*preset_quiver(name));
    const oracle::PathModel pm(*f.dc);
    for (const auto& x : slab(*f.dc, 0, 0)) {
      for (const auto& y : slab(*f.dc, 0, 1)) {
        const auto basis = pm.paths(x, y);
        auto span = pm.ideal(x, y);
        const std::size_t ideal = span_rank(span, basis.size());
        const std::size_t d = f.mesh->hom_dim(x, y);
        for (std::size_t j = 0; j < d; ++j) {
          const Path p = f.mesh->basis_path(x, y, j);
          ASSERT_EQ(p.front(), x);
          ASSERT_EQ(p.back(), y);
          span.push_back(path_vector(p, basis));
        }
        EXPECT_EQ(span_rank(span, basis.size()), ideal + d);
      }
    }
  }
}

// g o f in the mesh category agrees with concatenation of representative paths modulo the mesh ideal.
TEST(MeshBasis, CompositionIsPathConcatenation) {
  for (const std::string name : {"A2", "A3"}) {
    const auto f = make(*preset_quiver(name));
    const oracle::PathModel pm(*f.dc);
    const auto vs = slab(*f.dc, 0, 1);
    for (const auto& x : slab(*f.dc, 0, 0)) {
      for (const auto& y : vs) {
        for (const auto& z : vs) {
          const std::size_t dxy = f.mesh->hom_dim(x, y), dyz = f.mesh->hom_dim(y, z), dxz = f.mesh->hom_dim(x, z);
          if (dxy == 0 || dyz == 0) continue;
          const auto basis = pm.paths(x, z);
          const auto ideal = pm.ideal(x, z);
          const std::size_t r = span_rank(ideal, basis.size());
          for (std::size_t i = 0; i < dxy; ++i) {
            for (std::size_t j = 0; j < dyz; ++j) {
              Vector ei(dxy), ej(dyz);
              ei[i] = 1;
              ej[j] = 1;
              const Vector c = f.mesh->compose(x, y, z, ei, ej);
              Path cat = f.mesh->basis_path(x, y, i);
              const Path tail = f.mesh->basis_path(y, z, j);
              cat.insert(cat.end(), tail.begin() + 1, tail.end());
              Vector diff = path_vector(cat, basis);
              for (std::size_t k = 0; k < dxz; ++k) {
                const Vector pk = path_vector(f.mesh->basis_path(x, z, k), basis);
                for (std::size_t e = 0; e < diff.size(); ++e) diff[e] -= c[k] * pk[e];
              }
              auto with = ideal;
              with.push_back(diff);
              EXPECT_EQ(span_rank(with, basis.size()), r) << name << " " << f.dc->name(x) << " -> "
                                                          << f.dc->name(y) << " -> " << f.dc->name(z);
            }
          }
        }
      }
    }
  }
}

TEST(MeshBasis, CompositionIsAssociativeAndBilinear) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (const std::string name : {"A2", "A3"}) {
    const auto f = make(*preset_quiver(name), 2);
    const auto vs = slab(*f.dc, 0, 1);
    const auto random = [&](std::size_t d) {
      Vector v(d);
      for (auto& e : v) e = coeff(rng);
      return v;
    };
    for (const auto& w : slab(*f.dc, 0, 0)) {
      for (const auto& x : vs) {
        for (const auto& y : vs) {
          for (const auto& z : vs) {
            const std::size_t a = f.mesh->hom_dim(w, x), b = f.mesh->hom_dim(x, y), c = f.mesh->hom_dim(y, z);
            if (!a || !b || !c) continue;
            const Vector f1 = random(a), f2 = random(a), g = random(b), h = random(c);
            const Vector left = f.mesh->compose(w, y, z, f.mesh->compose(w, x, y, f1, g), h);
            const Vector right = f.mesh->compose(w, x, z, f1, f.mesh->compose(x, y, z, g, h));
            EXPECT_EQ(left, right);
            Vector sum(a);
            for (std::size_t k = 0; k < a; ++k) sum[k] = f1[k] + Rational(2) * f2[k];
            const Vector lin = f.mesh->compose(w, x, y, sum, g);
            const Vector p1 = f.mesh->compose(w, x, y, f1, g), p2 = f.mesh->compose(w, x, y, f2, g);
            for (std::size_t k = 0; k < lin.size(); ++k) EXPECT_EQ(lin[k], p1[k] + Rational(2) * p2[k]);
          }
        }
      }
    }
  }
}

TEST(MeshBasis, IdentityActsTrivially) {
  const auto f = make(*preset_quiver("D4"));
  for (const auto& x : slab(*f.dc, 0, 0)) {
    for (const auto& y : slab(*f.dc, 0, 1)) {
      const std::size_t d = f.mesh->hom_dim(x, y);
      if (d == 0) continue;
      EXPECT_TRUE(f.mesh->postcompose(x, y, y, 0) == Matrix::identity(d));
      const Matrix pre = f.mesh->postcompose(x, x, y, 0);
      EXPECT_EQ(pre.rows(), d);
    }
  }
}

TEST(MeshBasis, FactoringThroughEverythingIsTheRadical) {
  // For x != z every map in Hom(x, z) factors through the immediate successors of x.
  for (const std::string name : {"A3", "D4"}) {
    const auto f = make(*preset_quiver(name));
    for (const auto& x : slab(*f.dc, 0, 0)) {
      const auto succ = f.dc->successors(x);
      for (const auto& z : slab(*f.dc, 0, 1)) {
        const std::size_t d = f.mesh->hom_dim(x, z);
        EXPECT_EQ(f.mesh->factoring_dim(x, z, succ), x == z ? 0 : d);
      }
    }
  }
}

TEST(Approximations, RightApproximationCoversAllMaps) {
  const auto f = make(*preset_quiver("A3"));
  const auto cls = slab(*f.dc, 0, 0);
  for (const auto& x : slab(*f.dc, 0, 1)) {
    const ApproxTriangle tri = f.mesh->minimal_right_approximation(x, {cls[0], cls[2]});
    for (const auto& c : {cls[0], cls[2]}) {
      const std::size_t d = f.mesh->hom_dim(c, x);
      std::vector<Vector> span;
      for (const auto& comp : tri.map) {
        const std::size_t dc_ = f.mesh->hom_dim(c, comp.vertex);
        for (std::size_t i = 0; i < dc_; ++i) {
          Vector e(dc_);
          e[i] = 1;
          span.push_back(f.mesh->compose(c, comp.vertex, x, e, comp.map));
        }
      }
      EXPECT_EQ(span_rank(span, d), d) << f.dc->name(x);
    }
    EXPECT_LE(tri.approx_source.total(), 4);
  }
}

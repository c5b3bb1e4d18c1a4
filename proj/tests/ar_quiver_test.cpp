#include <gtest/gtest.h>

#include <set>

#include "mcluster/ar_quiver.hpp"
#include "oracles.hpp"

using namespace mcluster;

TEST(Knitting, SmallCases) {
  const ARQuiver a1 = knit_module_category(*preset_quiver("A1"));
  ASSERT_EQ(a1.size(), 1u);
  EXPECT_EQ(a1.projective(0), a1.injective(0));
  EXPECT_FALSE(a1.tau(0).has_value());

  const ARQuiver a2 = knit_module_category(*preset_quiver("A2"));
  ASSERT_EQ(a2.size(), 3u);
  const std::size_t p2 = *a2.find("01"), p1 = *a2.find("11"), s1 = *a2.find("10");
  EXPECT_EQ(a2.projective(1), p2);
  EXPECT_EQ(a2.projective(0), p1);
  EXPECT_EQ(a2.injective(0), s1);
  EXPECT_EQ(a2.arrows(), (std::vector<std::pair<std::size_t, std::size_t>>{{p2, p1}, {p1, s1}}));
  EXPECT_EQ(a2.tau(s1), p2);
  EXPECT_FALSE(a2.tau(p1).has_value());
}

TEST(Knitting, VertexCountsMatchRoots) {
  for (const auto& name : preset_names()) {
    const Quiver q = *preset_quiver(name);
    const ARQuiver ar = knit_module_category(q);
    const auto roots = positive_roots(q);
    std::set<DimVector> dims;
    for (const auto& v : ar.vertices()) dims.insert(v.dim);
    EXPECT_EQ(dims, std::set<DimVector>(roots.begin(), roots.end())) << name;
  }
}

TEST(Knitting, ProjectivesAndInjectivesByPathCounting) {
  for (const auto& name : preset_names()) {
    const Quiver q = *preset_quiver(name);
    const ARQuiver ar = knit_module_category(q);
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::vector<int> p(q.size()), inj(q.size());
      for (std::size_t j = 0; j < q.size(); ++j) {
        p[j] = static_cast<int>(q.count_paths(i, j));
        inj[j] = static_cast<int>(q.count_paths(j, i));
      }
      EXPECT_EQ(ar.vertex(ar.projective(i)).dim, DimVector(p));
      EXPECT_EQ(ar.vertex(ar.injective(i)).dim, DimVector(inj));
    }
  }
}

TEST(Knitting, MeshAdditivityAndTau) {
  for (const auto& name : preset_names()) {
    const ARQuiver ar = knit_module_category(*preset_quiver(name));
    std::size_t non_projective = 0;
    std::set<std::size_t> images;
    for (const auto& v : ar.vertices()) {
      const auto t = ar.tau(v.id);
      EXPECT_EQ(t.has_value(), !v.projective_of.has_value());
      if (!t) continue;
      ++non_projective;
      EXPECT_FALSE(ar.vertex(*t).injective_of.has_value());
      images.insert(*t);
      EXPECT_EQ(ar.tau_inverse(*t), v.id);
      const Mesh* mesh = ar.mesh_ending_at(v.id);
      ASSERT_NE(mesh, nullptr);
      DimVector sum = DimVector::zero(v.dim.size());
      for (std::size_t w : mesh->middles) sum = sum + ar.vertex(w).dim;
      EXPECT_EQ(ar.vertex(*t).dim + v.dim, sum) << name << " at " << ar.name(v.id);
    }
    EXPECT_EQ(images.size(), non_projective);
    for (const auto& [a, b] : ar.arrows()) EXPECT_EQ(ar.vertex(b).slice_index, ar.vertex(a).slice_index + 1);
  }
}

TEST(Knitting, DeterministicOrder) {
  for (const auto& name : preset_names()) {
    const ARQuiver a = knit_module_category(*preset_quiver(name));
    const ARQuiver b = knit_module_category(*preset_quiver(name));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t id = 0; id < a.size(); ++id) EXPECT_EQ(a.vertex(id).dim, b.vertex(id).dim);
    EXPECT_EQ(a.arrows(), b.arrows());
  }
}

TEST(Hammocks, HomFromProjectiveIsDimensionAtVertex) {
  for (const auto& name : preset_names()) {
    const ARQuiver ar = knit_module_category(*preset_quiver(name));
    for (std::size_t i = 0; i < ar.quiver().size(); ++i) {
      for (const auto& v : ar.vertices()) EXPECT_EQ(ar.hom(ar.projective(i), v.id), v.dim[i]);
    }
  }
}

TEST(Hammocks, MatchIntervalModulesInEveryOrientation) {
  for (int n = 1; n <= 5; ++n) {
    for (const Quiver& q : oracle::a_orientations(n)) {
      const ARQuiver ar = knit_module_category(q);
      const auto ivs = oracle::intervals(q.size());
      ASSERT_EQ(ivs.size(), ar.size());
      for (const auto& v : ivs) {
        const std::size_t a = *ar.find(oracle::interval_dim(q, v));
        for (const auto& w : ivs) {
          const std::size_t b = *ar.find(oracle::interval_dim(q, w));
          ASSERT_EQ(ar.hom(a, b), oracle::interval_hom(q, v, w))
              << to_json(q).dump() << " " << ar.name(a) << " -> " << ar.name(b);
        }
      }
    }
  }
}

TEST(Hammocks, EulerIdentityAndBricks) {
  for (const auto& name : preset_names()) {
    const ARQuiver ar = knit_module_category(*preset_quiver(name));
    for (const auto& x : ar.vertices()) {
      EXPECT_EQ(ar.hom(x.id, x.id), 1);
      EXPECT_EQ(ar.ext(x.id, x.id), 0);
      for (const auto& y : ar.vertices()) {
        EXPECT_EQ(ar.hom(x.id, y.id) - ar.ext(x.id, y.id), euler_form(ar.quiver(), x.dim, y.dim));
      }
    }
  }
}

#include <gtest/gtest.h>

#include <set>

#include "mcluster/quiver.hpp"

using namespace mcluster;

namespace {

QuiverErrorKind error_kind(const std::string& text) {
  try {
    parse_quiver(text);
  } catch (const QuiverError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return QuiverErrorKind::malformed;
}

}  // namespace

TEST(QuiverParse, AcceptsA2AndA1) {
  const Quiver a2 = parse_quiver(R"({"vertices":["1","2"],"arrows":[["1","2"]]})");
  EXPECT_EQ(a2.size(), 2u);
  ASSERT_EQ(a2.arrows().size(), 1u);
  EXPECT_TRUE(a2.has_arrow(*a2.index_of("1"), *a2.index_of("2")));
  EXPECT_EQ(a2.dynkin_type(), "A2");

  const Quiver a1 = parse_quiver(R"({"vertices":["1"],"arrows":[]})");
  EXPECT_EQ(a1.size(), 1u);
  EXPECT_EQ(a1.dynkin_type(), "A1");
}

TEST(QuiverParse, DistinctDiagnostics) {
  EXPECT_EQ(error_kind(R"({"vertices":["1","2"],"arrows":[["1","2"],["2","1"]]})"), QuiverErrorKind::cyclic);
  EXPECT_EQ(error_kind(R"({"vertices":["1"],"arrows":[["1","1"]]})"), QuiverErrorKind::cyclic);
  EXPECT_EQ(error_kind(R"({"vertices":["1","2"],"arrows":[]})"), QuiverErrorKind::disconnected);
  EXPECT_EQ(error_kind(R"({"vertices":["1","2"],"arrows":[["1","2"],["1","2"]]})"), QuiverErrorKind::non_dynkin);
  EXPECT_EQ(error_kind(R"({"vertices":["1","2","3"],"arrows":[["1","2"],["2","3"],["1","3"]]})"),
            QuiverErrorKind::non_dynkin);
  // Affine D4: a vertex of degree four.
  EXPECT_EQ(error_kind(R"({"vertices":["c","1","2","3","4"],"arrows":[["c","1"],["c","2"],["c","3"],["c","4"]]})"),
            QuiverErrorKind::non_dynkin);
  EXPECT_EQ(error_kind(R"({"vertices":["1","2"],"arrows":[["1","3"]]})"), QuiverErrorKind::malformed);
  EXPECT_EQ(error_kind(R"({"vertices":["1"],"arrows":[],"extra":1})"), QuiverErrorKind::malformed);
  EXPECT_EQ(error_kind(R"({"vertex":["1"],"arrows":[]})"), QuiverErrorKind::malformed);
  EXPECT_EQ(error_kind("not json"), QuiverErrorKind::malformed);
}

TEST(QuiverParse, RoundTripsThroughJson) {
  for (const auto& name : preset_names()) {
    const Quiver q = *preset_quiver(name);
    const Quiver back = parse_quiver(to_json(q).dump());
    EXPECT_EQ(back.labels(), q.labels());
    EXPECT_EQ(back.arrows(), q.arrows());
  }
}

TEST(QuiverPresets, DynkinTypes) {
  for (const auto& name : preset_names()) EXPECT_EQ(preset_quiver(name)->dynkin_type(), name);
  EXPECT_FALSE(preset_quiver("A9").has_value());
  EXPECT_FALSE(preset_quiver("E7").has_value());
}

TEST(EulerForm, SmallValues) {
  const Quiver a2 = *preset_quiver("A2");
  EXPECT_EQ(euler_form(a2, DimVector({1, 0}), DimVector({0, 1})), -1);
  EXPECT_EQ(euler_form(a2, DimVector({0, 1}), DimVector({1, 0})), 0);
  EXPECT_EQ(euler_form(a2, DimVector({1, 1}), DimVector({1, 1})), 1);
  for (const auto& name : preset_names()) {
    const Quiver q = *preset_quiver(name);
    for (std::size_t i = 0; i < q.size(); ++i) {
      EXPECT_EQ(euler_form(q, DimVector::unit(q.size(), i), DimVector::unit(q.size(), i)), 1);
    }
  }
}

TEST(EulerForm, SymmetrisationIsOrientationFree) {
  const Quiver a = *preset_quiver("A3");
  const Quiver b = parse_quiver(R"({"vertices":["1","2","3"],"arrows":[["2","1"],["2","3"]]})");
  for (const auto& x : positive_roots(a)) {
    for (const auto& y : positive_roots(a)) {
      EXPECT_EQ(euler_form(a, x, y) + euler_form(a, y, x), euler_form(b, x, y) + euler_form(b, y, x));
    }
  }
}

TEST(PositiveRoots, Counts) {
  EXPECT_EQ(positive_roots(*preset_quiver("A1")).size(), 1u);
  const auto a2 = positive_roots(*preset_quiver("A2"));
  EXPECT_EQ(std::set<DimVector>(a2.begin(), a2.end()),
            (std::set<DimVector>{DimVector({1, 0}), DimVector({0, 1}), DimVector({1, 1})}));
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(positive_roots(*preset_quiver("A" + std::to_string(n))).size(), std::size_t(n * (n + 1) / 2));
  }
  for (int n = 4; n <= 6; ++n) {
    EXPECT_EQ(positive_roots(*preset_quiver("D" + std::to_string(n))).size(), std::size_t(n * (n - 1)));
  }
  EXPECT_EQ(positive_roots(*preset_quiver("E6")).size(), 36u);
}

TEST(PositiveRoots, RealAndDistinct) {
  for (const auto& name : preset_names()) {
    const Quiver q = *preset_quiver(name);
    const auto roots = positive_roots(q);
    EXPECT_EQ(std::set<DimVector>(roots.begin(), roots.end()).size(), roots.size());
    for (const auto& r : roots) {
      EXPECT_TRUE(r.is_positive());
      EXPECT_EQ(tits_form(q, r), 1);
    }
  }
}

TEST(PositiveRoots, IndependentOfOrientation) {
  const Quiver d4 = *preset_quiver("D4");
  const Quiver other = parse_quiver(R"({"vertices":["1","2","3","4"],"arrows":[["1","2"],["3","2"],["2","4"]]})");
  EXPECT_EQ(positive_roots(d4), positive_roots(other));
}

TEST(DimVectorNames, PrintAndParse) {
  EXPECT_EQ(DimVector({1, 1, 0}).to_string(), "110");
  EXPECT_EQ(DimVector({1, 10, 0}).to_string(), "(1,10,0)");
  EXPECT_EQ(*DimVector::parse("110"), DimVector({1, 1, 0}));
  EXPECT_EQ(*DimVector::parse("(1,10,0)"), DimVector({1, 10, 0}));
  EXPECT_FALSE(DimVector::parse("1a").has_value());
}

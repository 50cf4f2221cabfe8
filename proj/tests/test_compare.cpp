#include "wittkit/catalog.hpp"
#include "wittkit/compare.hpp"
#include "wittkit/json_io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wittkit;
using compare::Verdict;
using groups::SymGroup;
using witt::Twist;

namespace {

spaces::SurfaceDescriptor random_surface(std::mt19937& rng, bool surjective) {
  const std::size_t b2 = 1 + rng() % 8;
  spaces::SurfaceInput in;
  in.h_int = {SymGroup::free(1), SymGroup::zero(), SymGroup::free(b2), SymGroup::zero(), SymGroup::free(1)};
  in.rho = surjective ? b2 : rng() % b2;
  in.sq2 = groups::F2Matrix(1, b2);
  for (std::size_t j = 0; j < b2; ++j) in.sq2(0, j) = static_cast<std::uint8_t>(rng() % 2);
  in.pi2 = groups::F2Matrix::identity(b2);
  if (!surjective) {
    groups::F2Matrix s1(1, in.rho);
    for (std::size_t j = 0; j < in.rho; ++j) s1(0, j) = in.sq2(0, j);
    in.s1 = s1;
  }
  return spaces::make_surface(in);
}

}  // namespace

TEST(Compare, CurvesAreAlwaysIsomorphic) {
  for (std::size_t g = 0; g <= 8; ++g)
    for (auto t : {Twist::Trivial, Twist::Op}) {
      auto r = compare::compare_w_kok(spaces::make_curve(true, g, 0), t);
      EXPECT_EQ(r.verdict, Verdict::CurveAlwaysIso);
      EXPECT_TRUE(r.assertion_holds());
      for (const auto& s : r.shifts) EXPECT_EQ(s.w_reduced, s.kok_reduced);
    }
  for (std::size_t g = 0; g <= 2; ++g)
    for (std::size_t n = 1; n <= 3; ++n)
      EXPECT_TRUE(compare::compare_w_kok(spaces::make_curve(false, g, n)).assertion_holds());
  EXPECT_TRUE(compare::compare_w_kok(spaces::PointDescriptor{}).assertion_holds());
}

TEST(Compare, SurjectivePicardGivesIsomorphisms) {
  for (const auto& e : catalog::catalog_all()) {
    if (!spaces::is_surface(e.descriptor) || !spaces::pic_surjective(e.descriptor)) continue;
    auto r = compare::compare_w_kok(e.descriptor);
    EXPECT_EQ(r.verdict, Verdict::SurfaceIso) << e.name << ": " << r.detail();
    EXPECT_EQ(r.predicted, Verdict::SurfaceIso);
  }
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto r = compare::compare_w_kok(random_surface(rng, true));
    EXPECT_TRUE(r.assertion_holds()) << r.detail();
  }
}

TEST(Compare, K3GapIsTranscendentalRank) {
  for (std::size_t rho = 0; rho <= 20; ++rho) {
    auto r = compare::compare_w_kok(catalog::catalog_get("k3?rho=" + std::to_string(rho)).descriptor);
    EXPECT_EQ(r.shift0_rank_gap, static_cast<long>(22 - rho));
    EXPECT_EQ(r.verdict, Verdict::SurfaceMismatch);
    EXPECT_EQ(r.predicted, Verdict::SurfaceMismatch);
    ASSERT_TRUE(r.first_mismatch.has_value());
    EXPECT_EQ(r.first_mismatch->shift, 0);
    EXPECT_FALSE(r.assertion_holds());
  }
}

TEST(Compare, GapOnRandomNonSurjectiveSurfaces) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = random_surface(rng, false);
    auto r = compare::compare_w_kok(s);
    EXPECT_EQ(r.shift0_rank_gap, static_cast<long>(s.b2 - s.rho));
    EXPECT_EQ(r.verdict, Verdict::SurfaceMismatch);
  }
}

TEST(Compare, SquaringAgainstSteenrodSquare) {
  for (const auto& e : catalog::catalog_all()) {
    const auto* s = std::get_if<spaces::SurfaceDescriptor>(&e.descriptor);
    if (!s) continue;
    auto r = compare::s1_vs_sq2z(*s);
    EXPECT_TRUE(r.holds) << e.name;
    EXPECT_EQ(r.pic_surjective, s->rho == s->b2);
  }
}

TEST(Compare, VerdictNames) {
  EXPECT_EQ(compare::to_string(Verdict::CurveAlwaysIso), "curve-always-iso");
  EXPECT_EQ(compare::to_string(Verdict::SurfaceMismatch), "surface-mismatch");
  EXPECT_EQ(json_io::parse_verdict("surface-iso"), Verdict::SurfaceIso);
  EXPECT_THROW(json_io::parse_verdict("iso"), Error);
}

TEST(Compare, ReportRoundTripsThroughJson) {
  for (const auto& e : catalog::catalog_all()) {
    auto j = json_io::to_json(compare::compare_w_kok(e.descriptor));
    const std::string text = j.dump();
    auto back = json_io::comparison_from_json(json_io::Json::parse(text));
    EXPECT_EQ(json_io::to_json(back).dump(), text) << e.name;
  }
}

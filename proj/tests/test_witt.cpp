#include "wittkit/catalog.hpp"
#include "wittkit/witt.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace wittkit;
using groups::SymGroup;
using witt::Twist;

namespace {

SymGroup g(const std::string& s) { return groups::parse_group(s); }

std::string jac(std::size_t genus) { return genus ? " + D(" + std::to_string(2 * genus) + ")" : ""; }

std::string z2(std::size_t k) {
  if (k == 0) return "0";
  std::string out = "Z/2";
  for (std::size_t i = 1; i < k; ++i) out += " + Z/2";
  return out;
}

}  // namespace

TEST(Witt, Point) {
  const char* gw[] = {"Z", "0", "Z", "Z/2"};
  const char* w[] = {"Z/2", "0", "0", "0"};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(witt::gw_point(i), g(gw[i]));
    EXPECT_EQ(witt::w_point(i), g(w[i]));
    EXPECT_EQ(witt::gw_point(i + 4), witt::gw_point(i));
    EXPECT_EQ(witt::gw_point(i - 4), witt::gw_point(i));
  }
  EXPECT_THROW(witt::witt_table(spaces::PointDescriptor{}, Twist::Op), Error);
}

TEST(Witt, ProjectiveCurvesUntwisted) {
  for (std::size_t genus = 0; genus <= 5; ++genus) {
    auto c = spaces::make_curve(true, genus, 0);
    EXPECT_EQ(witt::gw_curve(c, 0), g("Z + " + z2(2 * genus + 1)));
    EXPECT_EQ(witt::gw_curve(c, 1), g("Z" + jac(genus)));
    EXPECT_EQ(witt::gw_curve(c, 2), g("Z"));
    EXPECT_EQ(witt::gw_curve(c, 3), g("Z + Z/2" + jac(genus)));
    EXPECT_EQ(witt::w_curve(c, 0), g(z2(2 * genus + 1)));
    EXPECT_EQ(witt::w_curve(c, 1), g("Z/2"));
    EXPECT_TRUE(witt::w_curve(c, 2).is_zero());
    EXPECT_TRUE(witt::w_curve(c, 3).is_zero());
  }
}

TEST(Witt, ProjectiveCurvesTwisted) {
  for (std::size_t genus = 0; genus <= 5; ++genus) {
    auto c = spaces::make_curve(true, genus, 0);
    EXPECT_EQ(witt::gw_curve(c, 0, Twist::Op), g(genus ? "Z + " + z2(2 * genus) : "Z"));
    EXPECT_EQ(witt::gw_curve(c, 1, Twist::Op), g("Z" + jac(genus)));
    EXPECT_EQ(witt::gw_curve(c, 2, Twist::Op), g("Z"));
    EXPECT_EQ(witt::gw_curve(c, 3, Twist::Op), g("Z" + jac(genus)));
    EXPECT_EQ(witt::w_curve(c, 0, Twist::Op), g(z2(2 * genus)));
    for (int i = 1; i < 4; ++i) EXPECT_TRUE(witt::w_curve(c, i, Twist::Op).is_zero());
  }
}

TEST(Witt, AffineCurves) {
  for (std::size_t genus = 0; genus <= 2; ++genus)
    for (std::size_t n = 1; n <= 3; ++n) {
      auto c = spaces::make_curve(false, genus, n);
      const std::size_t h1 = 2 * genus + n - 1;
      EXPECT_EQ(witt::w_curve(c, 0), g(z2(h1 + 1)));
      EXPECT_TRUE(witt::w_curve(c, 1).is_zero());  // Pic/2 = 0
      EXPECT_EQ(witt::gw_curve(c, 1), g(genus ? "D(" + std::to_string(2 * genus) + ")" : "0"));
      EXPECT_THROW(witt::w_curve(c, 0, Twist::Op), Error);
    }
}

TEST(Witt, CurveRankIdentity) {
  // rank W^i = rank GW^i_red - rank of the image of K_0, on mod-2 shadows
  for (std::size_t genus = 0; genus <= 3; ++genus) {
    auto c = spaces::make_curve(true, genus, 0);
    EXPECT_EQ(witt::w_curve_reduced(c, 0).f2_rank(),
              witt::gw_curve_reduced(c, 0).torsion().size() - 1);  // Z/2 from FH^3
  }
}

TEST(Witt, SurfacesMatchTheBettiNumberFormula) {
  for (const auto& e : catalog::catalog_all()) {
    const auto* s = std::get_if<spaces::SurfaceDescriptor>(&e.descriptor);
    if (!s || !s->projective) continue;
    const bool s1_zero = groups::f2_rank(s->s1) == 0;
    EXPECT_EQ(witt::w_surface(*s, 0).f2_rank(), 1 + s->b1 + s->b2 - s->rho + 2 * s->nu) << e.name;
    EXPECT_EQ(witt::w_surface(*s, 1).f2_rank(), s->b1 + s->rho + 2 * s->nu - (s1_zero ? 0 : 1)) << e.name;
    EXPECT_EQ(witt::w_surface(*s, 2).f2_rank(), s1_zero ? 1u : 0u) << e.name;
    EXPECT_TRUE(witt::w_surface(*s, 3).is_zero());
  }
}

TEST(Witt, KnownSurfaces) {
  auto w = [](const std::string& name, int i) {
    return witt::w_surface(std::get<spaces::SurfaceDescriptor>(catalog::catalog_get(name).descriptor), i);
  };
  EXPECT_EQ(w("p2", 0), g("Z/2"));
  EXPECT_TRUE(w("p2", 1).is_zero());
  EXPECT_TRUE(w("p2", 2).is_zero());
  EXPECT_EQ(w("blowup_p2", 1), g("Z/2"));
  EXPECT_EQ(w("enriques", 0), g(z2(3)));
  EXPECT_EQ(w("enriques", 1), g(z2(12)));
  EXPECT_EQ(w("enriques", 2), g("Z/2"));
  for (std::size_t rho = 0; rho <= 20; ++rho) {
    const std::string k3 = "k3?rho=" + std::to_string(rho);
    EXPECT_EQ(w(k3, 0), g(z2(23 - rho)));
    EXPECT_EQ(w(k3, 1), g(z2(rho)));
    EXPECT_EQ(w(k3, 2), g("Z/2"));
  }
}

TEST(Witt, SurfaceTableRejectsTwists) {
  try {
    witt::witt_table(catalog::catalog_get("p2").descriptor, Twist::Op);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.signal(), Signal::UnsupportedTwist);
  }
}

TEST(Witt, ImageOfFHOnCurves) {
  for (std::size_t genus = 0; genus <= 3; ++genus) {
    auto c = spaces::make_curve(true, genus, 0);
    for (int i = 0; i < 4; ++i) {
      const bool even = i % 2 == 0;
      EXPECT_EQ(witt::fh_image(c, i).render(), even ? "0" : "2Z + Jac");
      EXPECT_EQ(witt::fh_image(c, i, Twist::Op).render(), even ? "Z(2,1) + 0" : "0 + Z + Jac");
    }
  }
}

TEST(Witt, FHEndomorphismFromDuality) {
  // E + (-1)^i E^dual on (rank, degree): duality negates degree;
  // twisting by O(p) adds the rank to the degree.
  for (int i = 0; i < 4; ++i) {
    const int sign = i % 2 == 0 ? 1 : -1;
    for (int twisted = 0; twisted < 2; ++twisted) {
      auto m = witt::fh_endomorphism(i, twisted ? Twist::Op : Twist::Trivial).free_part;
      for (int r = -3; r <= 3; ++r)
        for (int d = -3; d <= 3; ++d) {
          const int dual_r = r, dual_d = -d + (twisted ? r : 0);
          EXPECT_EQ(m(0, 0) * r + m(0, 1) * d, r + sign * dual_r);
          EXPECT_EQ(m(1, 0) * r + m(1, 1) * d, d + sign * dual_d);
        }
    }
  }
}

TEST(Witt, GradedFHOnSurfaces) {
  EXPECT_EQ(witt::fh_graded_surface(0), (std::array<int, 3>{2, 0, 2}));
  EXPECT_EQ(witt::fh_graded_surface(3), (std::array<int, 3>{0, 2, 0}));
}

TEST(Witt, KaroubiSequencesAssemble) {
  for (std::size_t genus = 0; genus <= 3; ++genus) {
    for (auto t : {Twist::Trivial, Twist::Op}) {
      auto r = witt::karoubi_check(spaces::make_curve(true, genus, 0), t);
      for (const auto& n : r.nodes) EXPECT_TRUE(n.pass) << "g=" << genus << " shift " << n.shift << ": " << n.detail;
      EXPECT_TRUE(r.pass);
      // only untwisted GW^1 is a nonsplit extension
      for (const auto& n : r.nodes) EXPECT_EQ(n.split, !(t == Twist::Trivial && n.shift == 1));
    }
    for (std::size_t n = 1; n <= 3; ++n) EXPECT_TRUE(witt::karoubi_check(spaces::make_curve(false, genus, n)).pass);
  }
}

TEST(Witt, KaroubiDetectsTheNonsplitExtension) {
  // with the split flag forced, untwisted GW^1 would carry an extra Z/2
  auto c = spaces::make_curve(true, 1, 0);
  auto r = witt::karoubi_check(c);
  const auto& n1 = r.nodes[1];
  auto e = witt::detail::extend(n1.image_h.fg_part(), n1.w_expected, true);
  EXPECT_NE(SymGroup::make(e.total.free_rank(), e.total.torsion(), n1.image_h.divisible_rank()), n1.gw_expected);
  EXPECT_EQ(n1.gw_assembled.render(), "Z + D(2)");
}

TEST(Witt, KaroubiGenusOneShadowRanks) {
  // reduced GW^0 of a genus-one curve: Z/2 -> GW^0 -> W^0 with ranks 1, 3, 2
  auto r = witt::karoubi_check(spaces::make_curve(true, 1, 0));
  const auto& n0 = r.nodes[0];
  EXPECT_EQ(n0.image_h.render(), "Z/2");
  EXPECT_EQ(n0.gw_assembled.f2_rank(), 3u);
  EXPECT_EQ(n0.w_expected.f2_rank(), 2u);
  EXPECT_TRUE(n0.exact);
}

TEST(Witt, ContainmentOfConsecutiveImages) {
  for (std::size_t genus = 0; genus <= 3; ++genus)
    for (auto t : {Twist::Trivial, Twist::Op})
      for (const auto& n : witt::karoubi_check(spaces::make_curve(true, genus, 0), t).nodes)
        EXPECT_TRUE(n.containment);
}

TEST(Witt, TwistParsing) {
  EXPECT_EQ(witt::parse_twist("trivial"), Twist::Trivial);
  EXPECT_EQ(witt::parse_twist("O(p)"), Twist::Op);
  EXPECT_THROW(witt::parse_twist("O(2p)"), Error);
  EXPECT_EQ(witt::to_string(Twist::Op), "O(p)");
}

#include "wittkit/catalog.hpp"
#include "wittkit/specseq.hpp"
#include "wittkit/topko.hpp"
#include "wittkit/witt.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wittkit;
using groups::SymGroup;
using specseq::BigradedPage;
using specseq::Position;

namespace {

// Free rank and log2 of the torsion order; both multiply through extensions.
struct Size {
  std::size_t free = 0;
  std::size_t log2_torsion = 0;
  bool operator==(const Size&) const = default;
};

std::size_t log2_exact(const wittkit::Integer& n) {
  std::size_t k = 0;
  wittkit::Integer m = n;
  while (m > 1) {
    EXPECT_TRUE(m % 2 == 0) << "odd torsion";
    m /= 2;
    ++k;
  }
  return k;
}

Size size_of(const SymGroup& g) {
  Size s{g.free_rank(), 0};
  for (const auto& d : g.torsion()) s.log2_torsion += log2_exact(d);
  return s;
}

Size size_of(const specseq::DegreeReport& deg) {
  Size s;
  for (const auto& p : deg.pieces) {
    Size t = size_of(p.group);
    s.free += t.free;
    s.log2_torsion += t.log2_torsion;
  }
  return s;
}

std::vector<spaces::Space> curves_and_point() {
  std::vector<spaces::Space> xs{spaces::PointDescriptor{}};
  for (std::size_t g = 0; g <= 3; ++g) xs.push_back(spaces::make_curve(true, g, 0));
  for (std::size_t g = 0; g <= 2; ++g)
    for (std::size_t n = 1; n <= 3; ++n) xs.push_back(spaces::make_curve(false, g, n));
  return xs;
}

BigradedPage multiplication_by_two() {
  BigradedPage p;
  p.entries[{0, 0}] = SymGroup::free(1);
  p.entries[{2, -1}] = SymGroup::free(1);
  wittkit::IntMatrix m(1, 1);
  m(0, 0) = 2;
  p.differentials.emplace(Position{0, 0}, groups::make_map(SymGroup::free(1), SymGroup::free(1), m));
  return p;
}

}  // namespace

TEST(Specseq, TurnPageTakesHomology) {
  BigradedPage e3 = specseq::turn_page(multiplication_by_two());
  EXPECT_EQ(e3.r, 3);
  EXPECT_TRUE(e3.at({0, 0}).is_zero());
  EXPECT_EQ(e3.at({2, -1}).render(), "Z/2");
}

TEST(Specseq, PardonBidegree) {
  BigradedPage p;
  p.convention = specseq::Convention::Pardon;
  p.r = 2;
  EXPECT_EQ(p.target({1, 1}), (Position{2, 2}));
  p.r = 3;
  EXPECT_EQ(p.target({0, 0}), (Position{1, 2}));
  BigradedPage c;
  c.r = 3;
  EXPECT_EQ(c.target({0, 0}), (Position{3, -2}));
  EXPECT_EQ(c.source_of(c.target({1, 4})), (Position{1, 4}));
}

TEST(Specseq, RejectsWrongShape) {
  BigradedPage p = multiplication_by_two();
  p.entries[{2, -1}] = SymGroup::free(2);
  try {
    specseq::validate(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.signal(), Signal::MalformedPage);
  }
}

TEST(Specseq, RejectsNonzeroComposite) {
  BigradedPage p;
  for (int k = 0; k < 3; ++k) p.entries[{2 * k, 1 - k}] = SymGroup::free(1);
  auto id = groups::identity_map(SymGroup::free(1));
  p.differentials.emplace(Position{0, 1}, id);
  p.differentials.emplace(Position{2, 0}, id);
  try {
    specseq::validate(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.signal(), Signal::MalformedPage);
  }
}

TEST(Specseq, RejectsDivisibleEntries) {
  BigradedPage p;
  p.entries[{0, 0}] = SymGroup::divisible(2);
  try {
    specseq::validate(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.signal(), Signal::UnsupportedDivisible);
  }
}

TEST(Specseq, StabilizesAndAssemblesExponentTwoDegrees) {
  BigradedPage p;
  p.entries[{0, 0}] = SymGroup::cyclic(2);
  p.entries[{1, -1}] = SymGroup::cyclic(2);
  auto loose = specseq::run_to_stable(p, nullptr);
  EXPECT_FALSE(loose.degrees.at(0).extension_resolved);
  EXPECT_FALSE(loose.degrees.at(0).abutment.has_value());
  auto tight = specseq::run_to_stable(p, nullptr, {}, true);
  EXPECT_TRUE(tight.degrees.at(0).extension_resolved);
  EXPECT_EQ(tight.degrees.at(0).abutment->render(), "Z/2 + Z/2");
}

TEST(Specseq, UnknownDifferentialMarksBothDegrees) {
  BigradedPage p;
  p.entries[{0, 0}] = SymGroup::free(1);
  p.entries[{3, -2}] = SymGroup::cyclic(2);
  auto rule = [](BigradedPage& page) {
    if (page.r == 3) page.unknown.insert({0, 0});
  };
  auto r = specseq::run_to_stable(p, rule);
  EXPECT_TRUE(r.degrees.at(0).indeterminate);
  EXPECT_TRUE(r.degrees.at(1).indeterminate);
  EXPECT_FALSE(r.degrees.at(0).abutment.has_value());
}

TEST(Specseq, DumpFormat) {
  auto text = specseq::dump(multiplication_by_two());
  EXPECT_EQ(text, "E_2[0,0] = Z\nE_2[2,-1] = Z\nd_2[0,0→2,-1] = [[2]]\n");
}

TEST(Specseq, KoAhssHasTheSizeOfKoOnCurves) {
  for (const auto& x : curves_and_point()) {
    auto r = specseq::ahss_ko(x);
    const auto* c = std::get_if<spaces::CurveDescriptor>(&x);
    for (int d = 0; d < 8; ++d) {
      SymGroup expected = c ? topko::ko_curve(*c, d) : topko::ko_point(d);
      Size got = r.degrees.count(d) ? size_of(r.degrees.at(d)) : Size{};
      EXPECT_EQ(got, size_of(expected)) << "degree " << d;
    }
  }
}

TEST(Specseq, KoAhssOfPointIsTheCoefficientRing) {
  auto r = specseq::ahss_ko(spaces::PointDescriptor{});
  for (int d = 0; d < 8; ++d) {
    ASSERT_TRUE(r.degrees.count(d) == 0 || r.degrees.at(d).abutment.has_value());
    SymGroup got = r.degrees.count(d) ? *r.degrees.at(d).abutment : SymGroup::zero();
    EXPECT_EQ(got, topko::ko_point(d)) << d;
  }
}

TEST(Specseq, ComplexAhssCollapses) {
  for (const auto& e : catalog::catalog_all()) {
    auto r = specseq::ahss_k(e.descriptor);
    for (const auto& page : r.pages) {
      EXPECT_TRUE(page.unknown.empty()) << e.name;
      for (const auto& [pos, d] : page.differentials) EXPECT_TRUE(groups::is_zero_map(d)) << e.name;
    }
    std::map<Position, SymGroup> e2;
    for (const auto& [pos, grp] : r.pages.front().entries)
      if (specseq::default_region().contains(pos)) e2[pos] = grp;
    EXPECT_EQ(r.stable, e2) << e.name;
    auto gr = topko::k_top_graded(e.descriptor);
    for (int k = 0; k <= 2; ++k)
      EXPECT_EQ(r.stable.count({2 * k, -2 * k}) ? r.stable.at({2 * k, -2 * k}) : SymGroup::zero(),
                gr[static_cast<std::size_t>(k)])
          << e.name;
  }
}

TEST(Specseq, SurfaceKoSqTwoDifferential) {
  // Sq^2 on H^2(P^2; Z/2) is onto H^4, so E_3 loses the two classes it connects
  auto r = specseq::ahss_ko(catalog::catalog_get("p2").descriptor);
  ASSERT_GE(r.pages.size(), 2u);
  EXPECT_TRUE(r.stable.count({2, -1}) == 0);
  EXPECT_TRUE(r.stable.count({4, -2}) == 0);
  EXPECT_EQ(r.stable.at({2, 0}).render(), "Z");  // kernel of Sq^2 o reduction is 2Z
  EXPECT_EQ(r.stable.count({4, -1}), 0u);
}

TEST(Specseq, PardonAgreesWithClosedFormsOnSurfaces) {
  for (const auto& e : catalog::catalog_all()) {
    const auto* s = std::get_if<spaces::SurfaceDescriptor>(&e.descriptor);
    if (!s) continue;
    auto r = specseq::run_pardon(e.descriptor);
    for (int i = 0; i < 4; ++i) {
      SymGroup got = r.degrees.count(i) ? *r.degrees.at(i).abutment : SymGroup::zero();
      EXPECT_EQ(got, witt::w_surface(*s, i)) << e.name << " shift " << i;
    }
  }
}

TEST(Specseq, PardonAgreesOnRandomS1) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t b2 = 2 + rng() % 6, rho = rng() % b2;
    spaces::SurfaceInput in;
    in.h_int = {SymGroup::free(1), SymGroup::zero(), SymGroup::free(b2), SymGroup::zero(), SymGroup::free(1)};
    in.rho = rho;
    in.sq2 = groups::F2Matrix(1, b2);
    for (std::size_t j = 0; j < b2; ++j) in.sq2(0, j) = static_cast<std::uint8_t>(rng() % 2);
    in.pi2 = groups::F2Matrix::identity(b2);
    groups::F2Matrix s1(1, rho);
    for (std::size_t j = 0; j < rho; ++j) s1(0, j) = static_cast<std::uint8_t>(rng() % 2);
    in.s1 = s1;
    auto s = spaces::make_surface(in);
    auto r = specseq::run_pardon(s);
    for (int i = 0; i < 3; ++i) {
      SymGroup got = r.degrees.count(i) ? *r.degrees.at(i).abutment : SymGroup::zero();
      EXPECT_EQ(got, witt::w_surface(s, i));
    }
  }
}

TEST(Specseq, PardonAgreesWithCurveWittGroups) {
  for (const auto& x : curves_and_point()) {
    auto r = specseq::run_pardon(x);
    auto w = witt::witt_table(x).w;
    for (int i = 0; i < 4; ++i) {
      SymGroup got = r.degrees.count(i) ? *r.degrees.at(i).abutment : SymGroup::zero();
      EXPECT_EQ(got, w[static_cast<std::size_t>(i)]) << i;
    }
  }
}

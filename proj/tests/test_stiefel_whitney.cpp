#include "wittkit/stiefel_whitney.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wittkit;
using namespace wittkit::sw;

namespace {

using Exps = std::array<int, 5>;  // m, x1, x2, x3, x4

Element mono(const Ring& r, Exps e) {
  auto idx = generic_monomial(r, e);
  return idx ? r.basis(*idx) : r.zero();
}

Exps x(std::size_t j) {
  Exps e{0, 0, 0, 0, 0};
  if (j > 0) e[j] = 1;
  return e;
}

bool binom_odd(int n, int k) { return k >= 0 && k <= n && (k & (n - k)) == 0; }  // Lucas

Element random_of_degree(const Ring& r, int d, std::mt19937& rng) {
  Element e = r.zero();
  for (std::size_t i = 0; i < r.dim(); ++i)
    if (r.degree_of(i) == d && rng() % 2) e[i] = 1;
  return e;
}

TruncatedClass random_class(const RingPtr& r, std::mt19937& rng) {
  std::vector<Element> c{r->one()};
  for (int k = 1; k <= r->top_degree(); ++k) c.push_back(random_of_degree(*r, k, rng));
  return make_class(r, c);
}

std::vector<Element> generic_chern(const Ring& r, std::size_t n) {
  std::vector<Element> c{r.one()};
  for (std::size_t j = 1; j <= std::min<std::size_t>(n, 4); ++j) c.push_back(mono(r, x(j)));
  return c;
}

}  // namespace

TEST(StiefelWhitney, FirstTwoClassesOfTheTotalClass) {
  auto r = generic_ring();
  const Element m = r->minus_one();
  for (std::size_t n = 1; n <= 4; ++n) {
    auto w = sw_metabolic_total(generic_chern(*r, n), n, r, false);
    EXPECT_EQ(w.w(0), r->one());
    EXPECT_EQ(w.w(1), n % 2 ? m : r->zero()) << "rank " << n;
    Element w2 = mono(*r, x(1));
    if ((n * (n - 1) / 2) % 2) w2 = r->add(w2, r->mul(m, m));
    EXPECT_EQ(w.w(2), w2) << "rank " << n;
  }
}

TEST(StiefelWhitney, TotalClassMatchesBinomialExpansion) {
  auto r = generic_ring();
  for (int n = 1; n <= 4; ++n) {
    auto w = sw_metabolic_total(generic_chern(*r, static_cast<std::size_t>(n)), static_cast<std::size_t>(n), r, false);
    for (int k = 0; k <= r->top_degree(); ++k) {
      Element expect = r->zero();
      for (int j = 0; j <= n && 2 * j <= k; ++j) {
        if (!binom_odd(n - j, k - 2 * j)) continue;
        Exps e = x(static_cast<std::size_t>(j));
        e[0] = k - 2 * j;
        expect = r->add(expect, mono(*r, e));
      }
      EXPECT_EQ(w.w(static_cast<std::size_t>(k)), expect) << "rank " << n << " degree " << k;
    }
  }
}

TEST(StiefelWhitney, ComplexClassesAreChernClasses) {
  std::mt19937 rng(11);
  for (const auto& r : catalog_rings()) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + rng() % 3;
      std::vector<Element> c{r->one()};
      for (std::size_t j = 1; j <= n; ++j) c.push_back(random_of_degree(*r, static_cast<int>(2 * j), rng));
      auto w = sw_metabolic_total(c, n, r, true);
      for (int k = 0; k <= r->top_degree(); ++k) {
        if (k % 2) {
          EXPECT_TRUE(r->is_zero(w.w(static_cast<std::size_t>(k)))) << r->name();
        } else {
          const std::size_t j = static_cast<std::size_t>(k / 2);
          EXPECT_EQ(w.w(static_cast<std::size_t>(k)), j < c.size() ? c[j] : r->zero()) << r->name();
        }
      }
    }
  }
}

TEST(StiefelWhitney, WhitneyProductIsCommutativeAndAssociative) {
  std::mt19937 rng(5);
  std::vector<RingPtr> rings = catalog_rings();
  rings.push_back(generic_ring());
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const RingPtr& r = rings[static_cast<std::size_t>(trial) % rings.size()];
    auto a = random_class(r, rng), b = random_class(r, rng), c = random_class(r, rng);
    auto ab = sw_whitney_product(a, b);
    EXPECT_EQ(ab, sw_whitney_product(b, a));
    EXPECT_EQ(sw_whitney_product(ab, c), sw_whitney_product(a, sw_whitney_product(b, c)));
    EXPECT_EQ(ab.w(0), r->one());
    EXPECT_EQ(sw_whitney_product(a, unit_class(r)), a);
    checked += 3;
  }
  EXPECT_GE(checked, 100);
}

TEST(StiefelWhitney, TotalClassIsMultiplicativeInTheLagrangian) {
  // L1 of rank 1 with c = 1 + x1, L2 of rank 2 with c = 1 + x1 + x2
  auto r = generic_ring();
  const Element x1 = mono(*r, x(1)), x2 = mono(*r, x(2));
  auto w1 = sw_metabolic_total({r->one(), x1}, 1, r, false);
  auto w2 = sw_metabolic_total({r->one(), x1, x2}, 2, r, false);
  // c(L1 + L2) = (1 + x1)(1 + x1 + x2) = 1 + x1^2 + x2 + x1 x2  (c1 = 2 x1 = 0)
  std::vector<Element> c{r->one(), r->zero(), r->add(mono(*r, {0, 2, 0, 0, 0}), x2), mono(*r, {0, 1, 1, 0, 0})};
  EXPECT_EQ(sw_metabolic_total(c, 3, r, false), sw_whitney_product(w1, w2));
}

TEST(StiefelWhitney, SmallExamples) {
  auto p2 = projective_space_ring(2);
  auto w = sw_metabolic_total({p2->one(), p2->parse("h")}, 1, p2, true);
  EXPECT_EQ(w.w(2), p2->parse("h"));
  EXPECT_TRUE(p2->is_zero(w.w(4)));
  auto zero = sw_metabolic_total({p2->one()}, 2, p2, true);
  EXPECT_EQ(zero, unit_class(p2));

  auto g = generic_ring();
  auto rank1 = sw_metabolic_total({g->one(), mono(*g, x(1))}, 1, g, false);
  EXPECT_EQ(rank1.w(1), g->minus_one());
  EXPECT_EQ(rank1.w(2), mono(*g, x(1)));
}

TEST(StiefelWhitney, Errors) {
  auto p2 = projective_space_ring(2);
  auto expect_signal = [](auto f, Signal s) {
    try {
      f();
      ADD_FAILURE() << "no error";
    } catch (const Error& e) {
      EXPECT_EQ(e.signal(), s) << e.what();
    }
  };
  expect_signal([&] { sw_metabolic_total({p2->one(), p2->parse("h^2")}, 1, p2, true); }, Signal::Truncation);
  expect_signal([&] { sw_metabolic_total({p2->one(), p2->parse("h"), p2->parse("h^2")}, 1, p2, true); },
                Signal::Truncation);
  expect_signal([&] { sw_metabolic_total({}, 1, p2, true); }, Signal::Truncation);
  expect_signal([&] { make_class(p2, {p2->one(), p2->zero(), p2->parse("1 + h")}); }, Signal::Truncation);
  expect_signal([&] { sw_whitney_product(unit_class(p2), unit_class(projective_space_ring(1))); },
                Signal::RingMismatch);
  expect_signal([&] { ring_by_name("quintic"); }, Signal::UnknownName);
  expect_signal([&] { p2->parse("q"); }, Signal::ParseError);
}

TEST(StiefelWhitney, CatalogRingStructure) {
  auto c2 = curve_ring(2);
  EXPECT_EQ(c2->mul(c2->parse("a1"), c2->parse("b1")), c2->parse("w"));
  EXPECT_TRUE(c2->is_zero(c2->mul(c2->parse("a1"), c2->parse("b2"))));
  auto k3 = k3_ring();
  for (std::size_t i = 1; i <= 22; ++i) EXPECT_TRUE(k3->is_zero(k3->mul(k3->basis(i), k3->basis(i))));
  auto bl = blowup_p2_ring();
  EXPECT_EQ(bl->mul(bl->parse("x1"), bl->parse("x1")), bl->parse("pt"));
  EXPECT_TRUE(bl->is_zero(bl->mul(bl->parse("x1"), bl->parse("x2"))));
  EXPECT_EQ(ring_by_name("P5")->top_degree(), 10);
  EXPECT_EQ(ring_by_name("curve(7)")->dim(), 16u);
}

TEST(StiefelWhitney, RenderParseRoundTrip) {
  std::mt19937 rng(3);
  for (const auto& r : catalog_rings())
    for (int trial = 0; trial < 10; ++trial) {
      Element e = r->zero();
      for (auto& b : e) b = static_cast<std::uint8_t>(rng() % 2);
      EXPECT_EQ(r->parse(r->render(e)), e);
    }
}

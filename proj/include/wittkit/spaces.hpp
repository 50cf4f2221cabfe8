#pragma once

// Descriptors of the geometric inputs and the cohomology groups derived from
// them. Mod-2 etale cohomology of a complex variety is taken to be singular
// mod-2 cohomology of its analytic space.

#include "wittkit/groups.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wittkit::spaces {

using groups::F2Matrix;
using groups::SymGroup;

enum class Coefficients { Integral, Mod2 };

struct PointDescriptor {
  friend bool operator==(const PointDescriptor&, const PointDescriptor&) = default;
};

struct CurveDescriptor {
  bool projective = true;
  std::size_t genus = 0;
  std::size_t punctures = 0;
  friend bool operator==(const CurveDescriptor&, const CurveDescriptor&) = default;
};

/// Raw surface data as supplied by a user or the catalog.
struct SurfaceInput {
  bool projective = true;
  std::array<SymGroup, 5> h_int;
  std::size_t nu = 0;
  std::size_t rho = 0;
  std::size_t ch2_mod2_rank = 1;
  F2Matrix sq2;
  F2Matrix pi2;
  std::optional<F2Matrix> s1;
};

/// Validated surface. Every field below is consistent with h_int.
struct SurfaceDescriptor {
  bool projective = true;
  std::array<SymGroup, 5> h_int;
  std::size_t b1 = 0, b2 = 0, b3 = 0;
  std::size_t nu = 0;  // 2-rank of the torsion of H^2(X;Z)
  std::size_t t3 = 0;  // 2-rank of the torsion of H^3(X;Z)
  std::size_t rho = 0;
  SymGroup pic;
  std::size_t ch2_mod2_rank = 1;
  F2Matrix sq2;  // H^2(X;Z/2) -> H^4(X;Z/2)
  F2Matrix pi2;  // H^2(X;Z)/2 -> H^2(X;Z/2)
  F2Matrix s1;   // Pic/2 -> CH^2/2
  bool s1_supplied = false;

  /// Sq^2 precomposed with reduction: H^2(X;Z)/2 -> H^4(X;Z/2).
  F2Matrix sq2_z() const { return groups::f2_product(sq2, pi2); }

  friend bool operator==(const SurfaceDescriptor&, const SurfaceDescriptor&) = default;
};

using Space = std::variant<PointDescriptor, CurveDescriptor, SurfaceDescriptor>;

inline std::size_t complex_dimension(const Space& x) {
  return std::visit(
      [](const auto& d) -> std::size_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PointDescriptor>) return 0;
        else if constexpr (std::is_same_v<T, CurveDescriptor>) return 1;
        else return 2;
      },
      x);
}

inline bool is_curve(const Space& x) { return std::holds_alternative<CurveDescriptor>(x); }
inline bool is_surface(const Space& x) { return std::holds_alternative<SurfaceDescriptor>(x); }
inline bool is_point(const Space& x) { return std::holds_alternative<PointDescriptor>(x); }

// ---------------------------------------------------------------------------
// Construction

inline CurveDescriptor make_curve(bool projective, std::size_t genus, std::size_t punctures) {
  if (projective && punctures > 0)
    throw Error(Signal::InconsistentDescriptor, "projective curve with punctures");
  if (!projective && punctures == 0)
    throw Error(Signal::InconsistentDescriptor, "affine curve needs at least one puncture");
  return CurveDescriptor{projective, genus, punctures};
}

namespace detail {
inline std::size_t dim_mod2(const SymGroup& h, const SymGroup& next) {
  return groups::mod2(h).f2_rank() + groups::two_torsion(next).f2_rank();
}

inline std::string shape(const F2Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline void fail(const std::string& what) { throw Error(Signal::InconsistentDescriptor, what); }
}  // namespace detail

inline SurfaceDescriptor make_surface(const SurfaceInput& in) {
  using detail::fail;
  using detail::shape;
  SurfaceDescriptor s;
  s.projective = in.projective;
  s.h_int = in.h_int;
  for (std::size_t d = 0; d < 5; ++d)
    if (!in.h_int[d].is_finitely_generated())
      fail("h_int[" + std::to_string(d) + "] must be finitely generated");
  if (!(in.h_int[0] == SymGroup::free(1))) fail("h_int[0] must be Z (connected surface)");
  if (!in.h_int[1].torsion().empty()) fail("h_int[1] must be torsion-free");

  s.b1 = in.h_int[1].free_rank();
  s.b2 = in.h_int[2].free_rank();
  s.b3 = in.h_int[3].free_rank();
  s.nu = groups::even_factor_count(in.h_int[2]);
  s.t3 = groups::even_factor_count(in.h_int[3]);
  if (in.nu != s.nu)
    fail("nu = " + std::to_string(in.nu) + " but torsion of h_int[2] has 2-rank " +
         std::to_string(s.nu));

  if (in.projective) {
    if (!(in.h_int[4] == SymGroup::free(1))) fail("projective surface needs H^4 = Z");
    if (in.ch2_mod2_rank != 1) fail("projective surface needs ch2_mod2_rank = 1");
    if (s.b1 != s.b3) fail("projective surface needs b1 = b3");
    if (s.t3 != s.nu) fail("projective surface needs matching 2-torsion in H^2 and H^3");
  }
  const std::size_t h4_mod2 = groups::mod2(in.h_int[4]).f2_rank();
  if (in.ch2_mod2_rank != h4_mod2)
    fail("ch2_mod2_rank = " + std::to_string(in.ch2_mod2_rank) + " but H^4/2 has rank " +
         std::to_string(h4_mod2));

  if (in.rho > s.b2) fail("rho exceeds b2");
  s.rho = in.rho;
  s.ch2_mod2_rank = in.ch2_mod2_rank;

  const std::size_t h2z_mod2 = s.b2 + s.nu;
  const std::size_t h2_mod2 = h2z_mod2 + s.t3;
  const std::size_t h4_f2 = detail::dim_mod2(in.h_int[4], SymGroup::zero());
  if (in.pi2.rows() != h2_mod2 || in.pi2.cols() != h2z_mod2)
    fail("pi2 is " + shape(in.pi2) + ", expected " + std::to_string(h2_mod2) + "x" +
         std::to_string(h2z_mod2));
  if (groups::f2_rank(in.pi2) != h2z_mod2) fail("pi2 is not injective");
  if (in.sq2.rows() != h4_f2 || in.sq2.cols() != h2_mod2)
    fail("sq2 is " + shape(in.sq2) + ", expected " + std::to_string(h4_f2) + "x" +
         std::to_string(h2_mod2));
  s.sq2 = in.sq2;
  s.pi2 = in.pi2;

  const std::size_t pic_mod2 = s.rho + s.nu;
  if (in.s1) {
    if (in.s1->rows() != s.ch2_mod2_rank || in.s1->cols() != pic_mod2)
      fail("s1 is " + shape(*in.s1) + ", expected " + std::to_string(s.ch2_mod2_rank) + "x" +
           std::to_string(pic_mod2));
    s.s1 = *in.s1;
    s.s1_supplied = true;
  }
  if (s.rho == s.b2) {
    F2Matrix sq2z = s.sq2_z();
    if (in.s1 && !(*in.s1 == sq2z)) fail("s1 must agree with Sq^2 on integral classes when rho = b2");
    s.s1 = sq2z;
  } else if (!in.s1) {
    fail("s1 must be supplied when rho < b2");
  }

  std::vector<Integer> tors = in.h_int[2].torsion();
  s.pic = SymGroup::make(s.rho, tors, s.b1);
  return s;
}

// ---------------------------------------------------------------------------
// Cohomology

namespace detail {
inline void check_degree(const Space& x, int d) {
  const int top = 2 * static_cast<int>(complex_dimension(x));
  if (d < 0 || d > top)
    throw Error(Signal::DegreeOutOfRange,
                "degree " + std::to_string(d) + " outside 0.." + std::to_string(top));
}

inline SymGroup integral(const Space& x, int d) {
  if (d < 0) return SymGroup::zero();
  return std::visit(
      [d](const auto& s) -> SymGroup {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointDescriptor>) {
          return d == 0 ? SymGroup::free(1) : SymGroup::zero();
        } else if constexpr (std::is_same_v<T, CurveDescriptor>) {
          if (d == 0) return SymGroup::free(1);
          if (d == 1)
            return SymGroup::free(s.projective ? 2 * s.genus : 2 * s.genus + s.punctures - 1);
          if (d == 2 && s.projective) return SymGroup::free(1);
          return SymGroup::zero();
        } else {
          return d <= 4 ? s.h_int[static_cast<std::size_t>(d)] : SymGroup::zero();
        }
      },
      x);
}
}  // namespace detail

/// Singular cohomology of the analytic space. Mod-2 groups follow from the
/// universal coefficient sequence: H^d/2 + H^{d+1}[2].
inline SymGroup singular_h(const Space& x, int d, Coefficients c) {
  detail::check_degree(x, d);
  if (c == Coefficients::Integral) return detail::integral(x, d);
  return SymGroup::elementary_two(detail::dim_mod2(detail::integral(x, d), detail::integral(x, d + 1)));
}

inline SymGroup picard(const Space& x) {
  return std::visit(
      [](const auto& s) -> SymGroup {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointDescriptor>) return SymGroup::zero();
        else if constexpr (std::is_same_v<T, CurveDescriptor>)
          return SymGroup::make(s.projective ? 1 : 0, {}, 2 * s.genus);
        else return s.pic;
      },
      x);
}

/// Mod-2 etale cohomology. Curves go through the Kummer sequence; surfaces
/// through the comparison with singular cohomology.
inline SymGroup etale_h(const Space& x, int d) {
  detail::check_degree(x, d);
  if (const auto* c = std::get_if<CurveDescriptor>(&x)) {
    SymGroup pic = picard(x);
    if (d == 0) return SymGroup::cyclic(2);
    if (d == 2) return groups::mod2(pic);
    // units modulo squares contribute one class per puncture beyond the first
    const std::size_t units = c->projective ? 0 : c->punctures - 1;
    return SymGroup::elementary_two(groups::two_torsion(pic).f2_rank() + units);
  }
  return singular_h(x, d, Coefficients::Mod2);
}

/// Graded pieces of K_0: rank, first Chern class, second Chern class.
inline std::vector<SymGroup> k0_alg(const Space& x) {
  return std::visit(
      [&x](const auto& s) -> std::vector<SymGroup> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointDescriptor>) return {SymGroup::free(1)};
        else if constexpr (std::is_same_v<T, CurveDescriptor>) return {SymGroup::free(1), picard(x)};
        else {
          SymGroup ch2 = s.projective ? SymGroup::free(1)
                                      : SymGroup::elementary_two(s.ch2_mod2_rank);
          return {SymGroup::free(1), s.pic, ch2};
        }
      },
      x);
}

/// Pic -> H^2(X;Z) is onto: always for curves and the point, rho = b2 for surfaces.
inline bool pic_surjective(const Space& x) {
  if (const auto* s = std::get_if<SurfaceDescriptor>(&x)) return s->rho == s->b2;
  return true;
}

// ---------------------------------------------------------------------------
// CW model

/// The data the topological side consumes: integral cohomology in degrees
/// 0..4 plus Sq^2 on H^2 and the reduction H^2(Z)/2 -> H^2(Z/2).
struct CwModel {
  std::array<SymGroup, 5> h_int;
  F2Matrix sq2;  // H^2(Z/2) -> H^4(Z/2)
  F2Matrix pi2;  // H^2(Z)/2 -> H^2(Z/2)

  SymGroup h(int d) const {
    return d >= 0 && d <= 4 ? h_int[static_cast<std::size_t>(d)] : SymGroup::zero();
  }
  std::size_t mod2_dim(int d) const { return detail::dim_mod2(h(d), h(d + 1)); }
  SymGroup h_mod2(int d) const { return SymGroup::elementary_two(mod2_dim(d)); }
  F2Matrix sq2_z() const { return groups::f2_product(sq2, pi2); }

  /// Reduction H^2(Z) -> H^2(Z)/2 on canonical generators. Even torsion
  /// factors sit at the end of the invariant-factor chain.
  F2Matrix reduce2() const {
    const SymGroup& g = h_int[2];
    const std::size_t free = g.free_rank();
    const std::size_t gens = g.generator_count();
    const std::size_t even = groups::even_factor_count(g);
    F2Matrix r(free + even, gens);
    for (std::size_t j = 0; j < free; ++j) r(j, j) = 1;
    for (std::size_t k = 0; k < even; ++k) r(free + k, gens - even + k) = 1;
    return r;
  }
};

inline CwModel cw_model(const Space& x) {
  if (const auto* s = std::get_if<SurfaceDescriptor>(&x)) return CwModel{s->h_int, s->sq2, s->pi2};
  CwModel m;
  for (int d = 0; d <= 4; ++d) m.h_int[static_cast<std::size_t>(d)] = detail::integral(x, d);
  const std::size_t h2 = m.h_int[2].free_rank();
  m.sq2 = F2Matrix(m.mod2_dim(4), m.mod2_dim(2));
  m.pi2 = F2Matrix::identity(h2);
  return m;
}

}  // namespace wittkit::spaces

#pragma once

// Grothendieck-Witt and Witt groups of a point, of smooth curves (all shifts,
// untwisted or twisted by O(p)) and of smooth surfaces, together with the
// bookkeeping of the Karoubi sequences GW^{i-1} -> K_0 -> GW^i -> W^i -> 0.

#include "wittkit/groups.hpp"
#include "wittkit/spaces.hpp"

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wittkit::witt {

using wittkit::IntMatrix;
using groups::SymGroup;
using spaces::CurveDescriptor;
using spaces::Space;
using spaces::SurfaceDescriptor;

/// Twists matter only through their class in Pic/2.
enum class Twist { Trivial, Op };

inline std::string to_string(Twist t) { return t == Twist::Trivial ? "trivial" : "O(p)"; }

inline Twist parse_twist(const std::string& s) {
  if (s == "trivial") return Twist::Trivial;
  if (s == "O(p)") return Twist::Op;
  throw Error(Signal::ParseError, "unknown twist '" + s + "' (expected trivial or O(p))");
}

inline int shift_mod4(int i) { return ((i % 4) + 4) % 4; }

using Quad = std::array<SymGroup, 4>;

// ---------------------------------------------------------------------------
// Point

inline SymGroup gw_point(int i) {
  static const Quad table{SymGroup::free(1), SymGroup::zero(), SymGroup::free(1), SymGroup::cyclic(2)};
  return table[static_cast<std::size_t>(shift_mod4(i))];
}

inline SymGroup w_point(int i) { return shift_mod4(i) == 0 ? SymGroup::cyclic(2) : SymGroup::zero(); }

// ---------------------------------------------------------------------------
// Curves

namespace detail {
inline void require_twist(const CurveDescriptor& c, Twist t) {
  if (t == Twist::Op && !c.projective)
    throw Error(Signal::NoSuchTwist, "affine curves have Pic/2 = 0, so only the trivial twist exists");
}

inline SymGroup curve_h(const CurveDescriptor& c, int d) { return spaces::etale_h(Space{c}, d); }
inline SymGroup curve_pic(const CurveDescriptor& c) { return spaces::picard(Space{c}); }
inline SymGroup jac(const CurveDescriptor& c) { return SymGroup::divisible(2 * c.genus); }
}  // namespace detail

/// Reduced groups drop the summands pulled back from a point.
inline SymGroup gw_curve_reduced(const CurveDescriptor& c, int i, Twist t = Twist::Trivial) {
  detail::require_twist(c, t);
  const int k = shift_mod4(i);
  if (t == Twist::Op) {
    // twisted groups carry no point contribution
    if (k == 0) return groups::direct_sum(SymGroup::free(1), detail::curve_h(c, 1));
    if (k == 2) return SymGroup::free(1);
    return groups::direct_sum(SymGroup::free(1), detail::jac(c));
  }
  switch (k) {
    case 0: return groups::direct_sum(detail::curve_h(c, 1), detail::curve_h(c, 2));
    case 1: return detail::curve_pic(c);
    case 2: return SymGroup::zero();
    default: return detail::curve_pic(c);
  }
}

inline SymGroup w_curve_reduced(const CurveDescriptor& c, int i, Twist t = Twist::Trivial) {
  detail::require_twist(c, t);
  const int k = shift_mod4(i);
  if (t == Twist::Op) return k == 0 ? detail::curve_h(c, 1) : SymGroup::zero();
  if (k == 0) return detail::curve_h(c, 1);
  if (k == 1) return detail::curve_h(c, 2);
  return SymGroup::zero();
}

inline SymGroup gw_curve(const CurveDescriptor& c, int i, Twist t = Twist::Trivial) {
  SymGroup red = gw_curve_reduced(c, i, t);
  return t == Twist::Op ? red : groups::direct_sum(gw_point(i), red);
}

inline SymGroup w_curve(const CurveDescriptor& c, int i, Twist t = Twist::Trivial) {
  SymGroup red = w_curve_reduced(c, i, t);
  return t == Twist::Op ? red : groups::direct_sum(w_point(i), red);
}

// ---------------------------------------------------------------------------
// Surfaces

/// (rank, w1, w2) pieces of W^0: Z/2, H^1_et, H^2_et / Pic.
inline std::array<SymGroup, 3> w0_graded_surface(const SurfaceDescriptor& s) {
  const Space x{s};
  const std::size_t h2 = spaces::etale_h(x, 2).f2_rank();
  const std::size_t pic2 = groups::mod2(s.pic).f2_rank();
  return {SymGroup::cyclic(2), spaces::etale_h(x, 1), SymGroup::elementary_two(h2 - pic2)};
}

inline SymGroup w_surface(const SurfaceDescriptor& s, int i) {
  const Space x{s};
  const auto s1 = groups::f2_map(s.s1);
  switch (shift_mod4(i)) {
    case 0: {
      auto g = w0_graded_surface(s);
      return groups::direct_sum({g[0], g[1], g[2]});
    }
    case 1: return groups::direct_sum(groups::kernel(s1), spaces::etale_h(x, 3));
    case 2: return groups::cokernel(s1);
    default: return SymGroup::zero();
  }
}

inline SymGroup w_surface_reduced(const SurfaceDescriptor& s, int i) {
  SymGroup w = w_surface(s, i);
  if (shift_mod4(i) != 0) return w;
  return SymGroup::elementary_two(w.f2_rank() - 1);
}

// ---------------------------------------------------------------------------
// Uniform entry points

struct WittTable {
  std::optional<Quad> gw;  // not modeled for surfaces
  std::optional<Quad> gw_reduced;
  Quad w;
  Quad w_reduced;
  std::optional<std::array<SymGroup, 3>> w0_graded;
  Twist twist = Twist::Trivial;
  std::map<std::string, bool> flags;
};

inline WittTable witt_table(const Space& x, Twist t = Twist::Trivial) {
  WittTable out;
  out.twist = t;
  if (spaces::is_point(x)) {
    if (t != Twist::Trivial) throw Error(Signal::NoSuchTwist, "a point has no nontrivial twist");
    Quad gw, zero4;
    for (int i = 0; i < 4; ++i) {
      gw[i] = gw_point(i);
      out.w[i] = w_point(i);
    }
    out.gw = gw;
    out.gw_reduced = zero4;
    out.w_reduced = zero4;
    return out;
  }
  if (const auto* c = std::get_if<CurveDescriptor>(&x)) {
    Quad gw, gwr;
    for (int i = 0; i < 4; ++i) {
      gw[i] = gw_curve(*c, i, t);
      gwr[i] = gw_curve_reduced(*c, i, t);
      out.w[i] = w_curve(*c, i, t);
      out.w_reduced[i] = w_curve_reduced(*c, i, t);
    }
    out.gw = gw;
    out.gw_reduced = gwr;
    out.flags["gw0_split"] = true;
    if (t == Twist::Trivial && c->projective) out.flags["gw1_split"] = false;
    return out;
  }
  const auto& s = std::get<SurfaceDescriptor>(x);
  if (t != Twist::Trivial) throw Error(Signal::UnsupportedTwist, "twisted surface groups are not modeled");
  for (int i = 0; i < 4; ++i) {
    out.w[i] = w_surface(s, i);
    out.w_reduced[i] = w_surface_reduced(s, i);
  }
  out.w0_graded = w0_graded_surface(s);
  out.flags["s1_supplied"] = s.s1_supplied;
  return out;
}

// ---------------------------------------------------------------------------
// Images of the forgetful/hyperbolic composites on K_0

/// How a subgroup meets the Jacobian summand of K_0.
enum class JacPart { None, TwoTorsion, All };

/// A subgroup of K_0 of a curve: a lattice in the free coordinates plus its
/// intersection with Jac. Coordinates are (degree) on reduced K_0 of an
/// untwisted curve and (rank, degree) on full K_0 in the twisted case.
struct LatticeImage {
  std::size_t coords = 1;
  IntMatrix basis;  // column HNF, coords x k
  JacPart jac = JacPart::None;

  friend bool operator==(const LatticeImage&, const LatticeImage&) = default;

  std::string render() const {
    std::ostringstream os;
    auto jac_text = [this]() -> std::string {
      if (jac == JacPart::All) return "Jac";
      if (jac == JacPart::TwoTorsion) return "Jac[2]";
      return "0";
    };
    if (coords <= 1) {
      std::vector<std::string> parts;
      if (basis.cols() == 1) parts.push_back(basis(0, 0) == 1 ? "Z" : basis(0, 0).str() + "Z");
      if (jac != JacPart::None) parts.push_back(jac_text());
      if (parts.empty()) return "0";
      for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? " + " : "") << parts[k];
      return os.str();
    }
    if (basis.cols() == 0) {
      os << "0 + 0";
    } else if (basis.cols() == 1 && basis(0, 0) != 0) {
      os << "Z(" << basis(0, 0) << "," << basis(1, 0) << ")";
    } else if (basis.cols() == 1) {
      os << "0 + " << (basis(1, 0) == 1 ? std::string("Z") : basis(1, 0).str() + "Z");
    } else {
      os << "Z^2";
    }
    os << " + " << jac_text();
    return os.str();
  }
};

/// The endomorphism F o H^i of K_0 on the free coordinates (rank, degree)
/// and its effect on Jac (multiplication by 0 or by 2).
struct FhEndomorphism {
  IntMatrix free_part;  // 2x2 on (rank, degree)
  bool jac_doubling = false;
};

inline FhEndomorphism fh_endomorphism(int i, Twist t) {
  const bool even = shift_mod4(i) % 2 == 0;
  IntMatrix m(2, 2);
  if (t == Twist::Trivial) {
    // E + E^dual in even shifts, E - E^dual in odd ones
    if (even) m(0, 0) = 2;
    else m(1, 1) = 2;
  } else {
    // the dual is twisted by O(p), which shifts degrees by the rank
    if (even) {
      m(0, 0) = 2;
      m(1, 0) = 1;
    } else {
      m(1, 0) = -1;
      m(1, 1) = 2;
    }
  }
  return {m, !even};
}

namespace detail {
inline LatticeImage lattice(std::size_t coords, const IntMatrix& generators, JacPart jac) {
  return LatticeImage{coords, groups::column_hnf(generators), jac};
}
}  // namespace detail

/// im(F H^i): reduced K_0 for untwisted curves, full K_0 when twisted.
inline LatticeImage fh_image(const CurveDescriptor& c, int i, Twist t = Twist::Trivial) {
  detail::require_twist(c, t);
  FhEndomorphism fh = fh_endomorphism(i, t);
  // Divisible Jac: doubling is onto, zero map has zero image.
  const JacPart jac = fh.jac_doubling ? JacPart::All : JacPart::None;
  if (!c.projective) return detail::lattice(0, IntMatrix(0, 0), jac);
  if (t == Twist::Trivial) {
    // reduced K_0 is the kernel of rank: keep the degree coordinate
    IntMatrix deg(1, 1);
    deg(0, 0) = fh.free_part(1, 1);
    return detail::lattice(1, deg, jac);
  }
  return detail::lattice(2, fh.free_part, jac);
}

/// Multipliers of F H^i on gr K_0 = Z + Pic + CH^2 of a surface.
inline std::array<int, 3> fh_graded_surface(int i) {
  return shift_mod4(i) % 2 == 0 ? std::array<int, 3>{2, 0, 2} : std::array<int, 3>{0, 2, 0};
}

// ---------------------------------------------------------------------------
// Karoubi bookkeeping

struct KaroubiNode {
  int shift = 0;
  LatticeImage image_f;     // im(F: GW^{i-1} -> K_0)
  SymGroup image_h;         // K_0 / im F, i.e. the image of H^i
  SymGroup gw_expected;     // from the closed forms
  SymGroup w_expected;
  SymGroup gw_assembled;    // image_h extended by W^i
  bool split = true;
  bool containment = false;  // im(F H^{i-1}) inside im F
  bool exact = false;        // 0 -> im H^i -> GW^i -> W^i -> 0 on shadows
  bool pass = false;
  std::string detail;
};

struct KaroubiReport {
  Twist twist = Twist::Trivial;
  std::array<KaroubiNode, 4> nodes;
  bool pass = false;
};

namespace detail {
inline bool contained(const LatticeImage& a, const LatticeImage& b) {
  if (static_cast<int>(a.jac) > static_cast<int>(b.jac)) return false;
  if (a.basis.cols() == 0) return true;
  // a inside b iff adding a's generators does not change b's lattice
  return groups::column_hnf(hconcat(b.basis, a.basis)) == b.basis;
}

/// K_0 / L for a lattice image L; Jac/Jac[2] is again Jac.
inline SymGroup quotient(const LatticeImage& l, std::size_t genus) {
  // relations of Z^coords / span(basis)
  SymGroup free = groups::group_from_presentation(l.basis.transposed(), l.coords);
  const std::size_t jac = l.jac == JacPart::All ? 0 : 2 * genus;
  return SymGroup::make(free.free_rank(), free.torsion(), jac);
}

/// Proof-supplied images of F: GW^{i-1} -> K_0 for shifts 0..3.
inline LatticeImage forgetful_image(const CurveDescriptor& c, int i, Twist t) {
  const int k = shift_mod4(i);
  if (!c.projective) {
    static const JacPart parts[4] = {JacPart::All, JacPart::TwoTorsion, JacPart::All, JacPart::None};
    return lattice(0, IntMatrix(0, 0), parts[k]);
  }
  if (t == Twist::Trivial) {
    IntMatrix none(1, 0), two(1, 1), one(1, 1);
    two(0, 0) = 2;
    one(0, 0) = 1;
    switch (k) {
      case 0: return lattice(1, two, JacPart::All);         // im F H^3
      case 1: return lattice(1, none, JacPart::TwoTorsion);  // symmetric line bundles
      case 2: return lattice(1, one, JacPart::All);         // F(Psi) = (1, O)
      default: return lattice(1, none, JacPart::None);      // reduced GW^2 = 0
    }
  }
  IntMatrix twist_even(2, 1), twist_odd(2, 1);
  twist_even(0, 0) = 2;
  twist_even(1, 0) = 1;
  twist_odd(1, 0) = 1;
  switch (k) {
    case 0: return lattice(2, twist_odd, JacPart::All);
    case 1: return lattice(2, twist_even, JacPart::TwoTorsion);
    case 2: return lattice(2, twist_odd, JacPart::All);
    default: return lattice(2, twist_even, JacPart::None);
  }
}

/// Extension 0 -> A -> E -> B -> 0 with B elementary abelian 2-group, on
/// finitely generated shadows. Nonsplit means each generator of B lifts to x
/// with 2x a free generator of A. Returns E and the two maps.
struct Extension {
  SymGroup total;
  groups::GroupMap inclusion;
  groups::GroupMap projection;
};

inline Extension extend(const SymGroup& a, const SymGroup& b, bool split) {
  const std::size_t na = a.generator_count();
  const std::size_t nb = b.generator_count();
  const auto ra = a.relation_orders();
  const auto rb = b.relation_orders();
  IntMatrix rel(na + nb, na + nb);
  for (std::size_t j = 0; j < na; ++j) rel(j, j) = ra[j];
  for (std::size_t j = 0; j < nb; ++j) rel(na + j, na + j) = rb[j];
  if (!split) {
    if (b.free_rank() != 0 || a.free_rank() < nb)
      throw Error(Signal::InvalidMap, "nonsplit extension needs free room in the subgroup");
    for (std::size_t j = 0; j < nb; ++j) {
      rel(na + j, j) = -1;  // 2 x_j = e_j
    }
  }
  groups::CanonicalForm cf = groups::canonicalize(rel, na + nb);
  IntMatrix inc_pres(na + nb, na), proj_pres(nb, na + nb);
  for (std::size_t j = 0; j < na; ++j) inc_pres(j, j) = 1;
  for (std::size_t j = 0; j < nb; ++j) proj_pres(j, na + j) = 1;
  Extension e{cf.group, groups::make_map(a, cf.group, cf.to_canonical * inc_pres),
              groups::make_map(cf.group, b, proj_pres * cf.from_canonical)};
  return e;
}
}  // namespace detail

/// Checks every Karoubi node of a curve against the closed forms. Reduced
/// groups for the trivial twist, full groups for O(p).
inline KaroubiReport karoubi_check(const CurveDescriptor& c, Twist t = Twist::Trivial) {
  detail::require_twist(c, t);
  KaroubiReport report;
  report.twist = t;
  report.pass = true;
  for (int i = 0; i < 4; ++i) {
    KaroubiNode& n = report.nodes[static_cast<std::size_t>(i)];
    n.shift = i;
    n.image_f = detail::forgetful_image(c, i, t);
    n.image_h = detail::quotient(n.image_f, c.genus);
    n.gw_expected = gw_curve_reduced(c, i, t);
    n.w_expected = w_curve_reduced(c, i, t);
    n.split = !(t == Twist::Trivial && c.projective && i == 1);

    LatticeImage fh_prev = fh_image(c, i - 1, t);
    n.containment = detail::contained(fh_prev, n.image_f);

    std::ostringstream why;
    try {
      detail::Extension e = detail::extend(n.image_h.fg_part(), n.w_expected, n.split);
      n.gw_assembled = SymGroup::make(e.total.free_rank(), e.total.torsion(),
                                      n.image_h.divisible_rank());
      const SymGroup zero;
      auto report_exact = groups::check_exact({groups::zero_map(zero, e.inclusion.domain), e.inclusion,
                                               e.projection, groups::zero_map(n.w_expected, zero)});
      n.exact = report_exact.exact;
      if (!n.exact) why << "not exact: " << report_exact.detail << "; ";
    } catch (const Error& err) {
      why << err.what() << "; ";
    }
    if (!n.containment) why << "im(FH^" << shift_mod4(i - 1) << ") not inside im F; ";
    if (!(n.gw_assembled == n.gw_expected))
      why << "assembled " << n.gw_assembled << " but expected " << n.gw_expected << "; ";
    n.pass = n.exact && n.containment && n.gw_assembled == n.gw_expected;
    n.detail = why.str();
    report.pass = report.pass && n.pass;
  }
  return report;
}

}  // namespace wittkit::witt

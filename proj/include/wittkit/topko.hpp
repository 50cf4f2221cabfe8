#pragma once

// Topological K, KO and KO/K of points, curves and surfaces (complexes of
// real dimension at most four), the eta comparison and mod-2 rank tables.

#include "wittkit/groups.hpp"
#include "wittkit/spaces.hpp"
#include "wittkit/specseq.hpp"
#include "wittkit/witt.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace wittkit::topko {

using groups::SymGroup;
using spaces::CurveDescriptor;
using spaces::Space;
using witt::Twist;

inline int mod8(int d) { return ((d % 8) + 8) % 8; }

/// KO^d of a point.
inline SymGroup ko_point(int d) {
  switch (mod8(d)) {
    case 0:
    case 4: return SymGroup::free(1);
    case 6:
    case 7: return SymGroup::cyclic(2);
    default: return SymGroup::zero();
  }
}

/// KO^d of a curve. Projective: closed table. Affine: a wedge of k circles,
/// KO^d(pt) + KO^{d-1}(pt)^k.
inline SymGroup ko_curve(const CurveDescriptor& c, int d) {
  const std::size_t g2 = 2 * c.genus;
  if (!c.projective) {
    const std::size_t k = 2 * c.genus + c.punctures - 1;
    SymGroup out = ko_point(d);
    for (std::size_t j = 0; j < k; ++j) out = groups::direct_sum(out, ko_point(d - 1));
    return out;
  }
  switch (mod8(d)) {
    case 0: return groups::direct_sum(SymGroup::free(1), SymGroup::elementary_two(g2 + 1));
    case 1: return groups::direct_sum(SymGroup::free(g2), SymGroup::cyclic(2));
    case 2: return SymGroup::free(1);
    case 3: return SymGroup::zero();
    case 4: return SymGroup::free(1);
    case 5: return SymGroup::free(g2);
    case 6: return groups::direct_sum(SymGroup::cyclic(2), SymGroup::free(1));
    default: return SymGroup::elementary_two(g2 + 1);
  }
}

/// Graded pieces (Z, H^2(Z), H^4(Z)) of K^0.
inline std::array<SymGroup, 3> k_top_graded(const Space& x) {
  spaces::CwModel m = spaces::cw_model(x);
  return {m.h(0), m.h(2), m.h(4)};
}

/// K^1 has graded pieces H^1(Z) and H^3(Z); H^1 is free, so its 2-torsion
/// comes from H^3.
inline SymGroup k1_two_torsion(const Space& x) {
  return groups::two_torsion(spaces::cw_model(x).h(3));
}

// ---------------------------------------------------------------------------
// KO/K

namespace detail {
inline void require_twist(const Space& x, Twist t) {
  if (t == Twist::Trivial) return;
  if (spaces::is_surface(x)) throw Error(Signal::UnsupportedTwist, "twisted KO/K of surfaces is not modeled");
  const auto* c = std::get_if<CurveDescriptor>(&x);
  if (!c || !c->projective) throw Error(Signal::NoSuchTwist, "no nontrivial twist exists on this space");
}
}  // namespace detail

/// KO^{2i}/K for a complex of dimension <= 4:
///   KOK^0 = Z/2 + H^1(Z/2) + H^2(Z/2)/H^2(Z),  KOK^2 = ker Sq2_Z + H^3(Z/2),
///   KOK^4 = coker Sq2_Z,  KOK^6 = 0,
/// with Sq2_Z = Sq^2 o pi on H^2(Z)/2. Twisted curves use the Thom-space table.
inline SymGroup kok(const Space& x, int two_i, Twist t = Twist::Trivial) {
  if (two_i % 2 != 0) throw Error(Signal::DegreeOutOfRange, "KO/K is taken in even degrees");
  detail::require_twist(x, t);
  const int i = ((two_i / 2) % 4 + 4) % 4;
  if (t == Twist::Op) {
    const auto& c = std::get<CurveDescriptor>(x);
    return i == 0 ? SymGroup::elementary_two(2 * c.genus) : SymGroup::zero();
  }
  spaces::CwModel m = spaces::cw_model(x);
  const auto sq2z = groups::f2_map(m.sq2_z());
  switch (i) {
    case 0: {
      const std::size_t h2 = m.mod2_dim(2);
      const std::size_t h2z = groups::f2_rank(m.pi2);
      return groups::direct_sum(
          {SymGroup::cyclic(2), m.h_mod2(1), SymGroup::elementary_two(h2 - h2z)});
    }
    case 1: return groups::direct_sum(groups::kernel(sq2z), m.h_mod2(3));
    case 2: return groups::cokernel(sq2z);
    default: return SymGroup::zero();
  }
}

inline SymGroup kok_reduced(const Space& x, int two_i, Twist t = Twist::Trivial) {
  SymGroup g = kok(x, two_i, t);
  if (t != Twist::Trivial || ((two_i / 2) % 4 + 4) % 4 != 0) return g;
  return SymGroup::elementary_two(g.f2_rank() - 1);
}

// ---------------------------------------------------------------------------
// KO tables

/// KO^d for d = 0..7; entries the closed forms do not determine are empty.
/// Surfaces take every degree the AHSS resolves without an open differential.
inline std::array<std::optional<SymGroup>, 8> ko_table(const Space& x) {
  std::array<std::optional<SymGroup>, 8> out;
  if (spaces::is_point(x)) {
    for (int d = 0; d < 8; ++d) out[static_cast<std::size_t>(d)] = ko_point(d);
    return out;
  }
  if (const auto* c = std::get_if<CurveDescriptor>(&x)) {
    for (int d = 0; d < 8; ++d) out[static_cast<std::size_t>(d)] = ko_curve(*c, d);
    return out;
  }
  specseq::EInfinityReport r = specseq::ahss_ko(x);
  for (int d = 0; d < 8; ++d) {
    auto it = r.degrees.find(d);
    if (it == r.degrees.end()) {
      out[static_cast<std::size_t>(d)] = SymGroup::zero();
      continue;
    }
    if (it->second.abutment && !it->second.indeterminate) out[static_cast<std::size_t>(d)] = *it->second.abutment;
  }
  return out;
}

// ---------------------------------------------------------------------------
// eta and mod-2 coefficients

struct EtaReport {
  bool k1_two_torsion_free = false;
  bool checked = false;  // the comparison was carried out
  bool holds = false;
  std::string mode;      // "groups" or "ranks"
  std::string detail;
};

/// When K^1 has no 2-torsion, eta identifies KOK^{2i} with KO^{2i-1}[2].
/// Curves and the point compare groups; surfaces compare 2-ranks with the
/// E_infinity pieces in degree 2i-1, which bound the 2-rank of KO^{2i-1}.
inline EtaReport eta_iso_check(const Space& x) {
  EtaReport r;
  r.k1_two_torsion_free = k1_two_torsion(x).is_zero();
  if (!r.k1_two_torsion_free) {
    r.detail = "K^1 has 2-torsion " + k1_two_torsion(x).render();
    return r;
  }
  r.checked = true;
  r.holds = true;
  if (!spaces::is_surface(x)) {
    r.mode = "groups";
    auto ko = ko_table(x);
    for (int i = 0; i < 4; ++i) {
      SymGroup lhs = kok(x, 2 * i);
      SymGroup rhs = groups::two_torsion(*ko[static_cast<std::size_t>(mod8(2 * i - 1))]);
      if (!(lhs == rhs)) {
        r.holds = false;
        r.detail += "KOK^" + std::to_string(2 * i) + " = " + lhs.render() + " but KO^" +
                    std::to_string(2 * i - 1) + "[2] = " + rhs.render() + "; ";
      }
    }
    return r;
  }
  r.mode = "ranks";
  specseq::EInfinityReport e = specseq::ahss_ko(x);
  for (int i = 0; i < 4; ++i) {
    const int deg = mod8(2 * i - 1);
    std::size_t bound = 0;
    if (auto it = e.degrees.find(deg); it != e.degrees.end())
      for (const auto& piece : it->second.pieces) bound += groups::two_torsion(piece.group).f2_rank();
    const std::size_t rank = kok(x, 2 * i).f2_rank();
    if (rank > bound) {
      r.holds = false;
      r.detail += "rank KOK^" + std::to_string(2 * i) + " = " + std::to_string(rank) +
                  " exceeds the 2-rank bound " + std::to_string(bound) + "; ";
    }
  }
  return r;
}

struct Mod2Ranks {
  std::array<std::size_t, 4> w{};
  std::array<std::size_t, 4> kok{};
  std::array<std::size_t, 4> kok_mod2{};
  std::optional<std::array<std::size_t, 4>> w_mod2;  // empty when eta-obstructed
  std::size_t k0_mod2_rank = 0;                      // log2 |K^0(X;Z/2)|
  std::size_t k0_over_two_rank = 0;
  std::size_t k1_two_rank = 0;
  bool eta_obstructed = false;
};

/// Rank additivity for Z/2 coefficients: rank A(Z/2)^i = rank A^i + rank A^{i+1}.
inline Mod2Ranks mod2_ranks(const Space& x) {
  Mod2Ranks t;
  witt::WittTable wt = witt::witt_table(x);
  for (std::size_t i = 0; i < 4; ++i) {
    t.w[i] = wt.w[i].f2_rank();
    t.kok[i] = kok(x, static_cast<int>(2 * i)).f2_rank();
  }
  for (std::size_t i = 0; i < 4; ++i) t.kok_mod2[i] = t.kok[i] + t.kok[(i + 1) % 4];
  auto gr = k_top_graded(x);
  t.k0_over_two_rank = groups::mod2(groups::direct_sum({gr[0], gr[1], gr[2]})).f2_rank();
  t.k1_two_rank = k1_two_torsion(x).f2_rank();
  t.k0_mod2_rank = t.k0_over_two_rank + t.k1_two_rank;
  t.eta_obstructed = t.k1_two_rank != 0;
  if (!t.eta_obstructed) {
    std::array<std::size_t, 4> w2{};
    for (std::size_t i = 0; i < 4; ++i) w2[i] = t.w[i] + t.w[(i + 1) % 4];
    t.w_mod2 = w2;
  }
  return t;
}

struct HermitianVerdict {
  bool pic_surjective = false;
  bool k1_two_torsion_free = false;
  bool verdict = false;
  std::optional<bool> mod2_ranks_agree;  // set when the verdict holds
};

/// Both hypotheses for comparing hermitian K-theory with Z/2 coefficients.
inline HermitianVerdict ql_hermitian_verdict(const Space& x) {
  HermitianVerdict v;
  v.pic_surjective = spaces::pic_surjective(x);
  v.k1_two_torsion_free = k1_two_torsion(x).is_zero();
  v.verdict = v.pic_surjective && v.k1_two_torsion_free;
  if (v.verdict) {
    Mod2Ranks t = mod2_ranks(x);
    v.mod2_ranks_agree = t.w_mod2 && *t.w_mod2 == t.kok_mod2;
  }
  return v;
}

}  // namespace wittkit::topko

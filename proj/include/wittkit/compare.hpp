#pragma once

// Group-level comparison of Witt groups with the topological quotients
// KO^{2i}/K, and the surjectivity criterion Pic -> H^2(X;Z).

#include "wittkit/spaces.hpp"
#include "wittkit/topko.hpp"
#include "wittkit/witt.hpp"

#include <array>
#include <optional>
#include <sstream>
#include <string>

namespace wittkit::compare {

using groups::F2Matrix;
using groups::SymGroup;
using spaces::Space;
using witt::Twist;

using spaces::pic_surjective;

enum class Verdict { CurveAlwaysIso, CurveMismatch, SurfaceIso, SurfaceMismatch };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::CurveAlwaysIso: return "curve-always-iso";
    case Verdict::CurveMismatch: return "curve-mismatch";
    case Verdict::SurfaceIso: return "surface-iso";
    case Verdict::SurfaceMismatch: return "surface-mismatch";
  }
  return "?";
}

struct ShiftComparison {
  int shift = 0;
  SymGroup w, kok;
  SymGroup w_reduced, kok_reduced;
  bool iso = false;
};

struct Mismatch {
  int shift = 0;
  std::size_t w_rank = 0;
  std::size_t kok_rank = 0;
};

struct ComparisonReport {
  bool pic_surjective = false;
  Twist twist = Twist::Trivial;
  std::array<ShiftComparison, 4> shifts;
  Verdict verdict = Verdict::CurveAlwaysIso;
  Verdict predicted = Verdict::CurveAlwaysIso;
  std::optional<Mismatch> first_mismatch;
  /// rank W^0_red - rank KOK^0_red; equals b2 - rho on the surfaces in scope
  long shift0_rank_gap = 0;

  bool all_iso() const {
    for (const auto& s : shifts)
      if (!s.iso) return false;
    return true;
  }
  /// What `--assert` checks: the observed verdict is the predicted one and
  /// nothing disagrees.
  bool assertion_holds() const { return verdict == predicted && all_iso(); }

  std::string detail() const {
    if (!first_mismatch) return "iso at all shifts";
    std::ostringstream os;
    os << "mismatch at shift " << first_mismatch->shift << ": rank W = " << first_mismatch->w_rank
       << ", rank KOK = " << first_mismatch->kok_rank;
    return os.str();
  }
};

/// The theorems predict an isomorphism for every curve (and the point) in
/// every twist, and for a surface exactly when Pic -> H^2(X;Z) is onto.
inline Verdict predicted_verdict(const Space& x) {
  if (!spaces::is_surface(x)) return Verdict::CurveAlwaysIso;
  return pic_surjective(x) ? Verdict::SurfaceIso : Verdict::SurfaceMismatch;
}

inline ComparisonReport compare_w_kok(const Space& x, Twist t = Twist::Trivial) {
  ComparisonReport r;
  r.twist = t;
  r.pic_surjective = pic_surjective(x);
  witt::WittTable wt = witt::witt_table(x, t);
  for (int i = 0; i < 4; ++i) {
    ShiftComparison& s = r.shifts[static_cast<std::size_t>(i)];
    s.shift = i;
    s.w = wt.w[static_cast<std::size_t>(i)];
    s.w_reduced = wt.w_reduced[static_cast<std::size_t>(i)];
    s.kok = topko::kok(x, 2 * i, t);
    s.kok_reduced = topko::kok_reduced(x, 2 * i, t);
    s.iso = s.w == s.kok;
    if (!s.iso && !r.first_mismatch) r.first_mismatch = Mismatch{i, s.w.f2_rank(), s.kok.f2_rank()};
  }
  r.shift0_rank_gap = static_cast<long>(r.shifts[0].w_reduced.f2_rank()) -
                      static_cast<long>(r.shifts[0].kok_reduced.f2_rank());
  const bool surface = spaces::is_surface(x);
  if (r.all_iso()) r.verdict = surface ? Verdict::SurfaceIso : Verdict::CurveAlwaysIso;
  else r.verdict = surface ? Verdict::SurfaceMismatch : Verdict::CurveMismatch;
  r.predicted = predicted_verdict(x);
  return r;
}

struct S1Report {
  bool pic_surjective = false;
  std::size_t rank_s1 = 0;
  std::size_t rank_sq2z = 0;        // on all of H^2(Z)/2
  std::size_t rank_sq2z_picard = 0; // on the Picard image
  bool holds = false;
};

/// Picard classes occupy the first rho free coordinates and all torsion
/// coordinates of H^2(Z)/2.
inline F2Matrix sq2z_on_picard(const spaces::SurfaceDescriptor& s) {
  F2Matrix full = s.sq2_z();
  F2Matrix out(full.rows(), s.rho + s.nu);
  for (std::size_t i = 0; i < full.rows(); ++i) {
    for (std::size_t j = 0; j < s.rho; ++j) out(i, j) = full(i, j);
    for (std::size_t j = 0; j < s.nu; ++j) out(i, s.rho + j) = full(i, s.b2 + j);
  }
  return out;
}

/// S^1 on Pic/2 against Sq^2 on integral classes. When Pic is onto H^2 the
/// two maps have the same kernel and cokernel ranks; otherwise S^1 factors
/// through the restriction of Sq2_Z to the Picard image.
inline S1Report s1_vs_sq2z(const spaces::SurfaceDescriptor& s) {
  S1Report r;
  r.pic_surjective = s.rho == s.b2;
  r.rank_s1 = groups::f2_rank(s.s1);
  r.rank_sq2z = groups::f2_rank(s.sq2_z());
  r.rank_sq2z_picard = groups::f2_rank(sq2z_on_picard(s));
  if (r.pic_surjective) {
    // same domain and codomain dimensions, so equal rank gives equal ker/coker
    r.holds = s.s1.cols() == s.sq2_z().cols() && s.s1.rows() == s.sq2_z().rows() &&
              r.rank_s1 == r.rank_sq2z;
  } else {
    r.holds = r.rank_s1 <= r.rank_sq2z_picard;
  }
  return r;
}

}  // namespace wittkit::compare

#pragma once

// A small engine for bigraded spectral sequences over finitely generated
// groups, with the three instances used here: Pardon's sequence for dim <= 2
// and the Atiyah-Hirzebruch sequences for K and KO of complexes of
// dimension <= 4.

#include "wittkit/groups.hpp"
#include "wittkit/spaces.hpp"

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace wittkit::specseq {

using groups::F2Matrix;
using groups::GroupMap;
using groups::SymGroup;

/// Cohomological: d_r has bidegree (r, 1-r). Pardon: d_r has bidegree (1, r-1).
enum class Convention { Cohomological, Pardon };

struct Position {
  int s = 0;
  int t = 0;
  auto operator<=>(const Position&) const = default;
};

struct Region {
  int s_min = 0, s_max = 5;
  int t_min = -8, t_max = 8;
  bool contains(Position p) const {
    return p.s >= s_min && p.s <= s_max && p.t >= t_min && p.t <= t_max;
  }
};

struct BigradedPage {
  int r = 2;
  Convention convention = Convention::Cohomological;
  std::map<Position, SymGroup> entries;          // absent means 0
  std::map<Position, GroupMap> differentials;    // keyed by source
  std::set<Position> unknown;                    // sources of undetermined d_r

  Position target(Position p) const {
    if (convention == Convention::Cohomological) return {p.s + r, p.t - r + 1};
    return {p.s + 1, p.t + r - 1};
  }
  Position source_of(Position p) const {
    if (convention == Convention::Cohomological) return {p.s - r, p.t + r - 1};
    return {p.s - 1, p.t - r + 1};
  }
  SymGroup at(Position p) const {
    auto it = entries.find(p);
    return it == entries.end() ? SymGroup::zero() : it->second;
  }
  /// Total degree and filtration index of a position.
  int total_degree(Position p) const {
    return convention == Convention::Cohomological ? p.s + p.t : p.s;
  }
  int filtration(Position p) const { return convention == Convention::Cohomological ? p.s : p.t; }

  GroupMap differential(Position p) const {
    auto it = differentials.find(p);
    if (it != differentials.end()) return it->second;
    return groups::zero_map(at(p), at(target(p)));
  }
};

/// Checks positions, shapes and d o d = 0.
inline void validate(const BigradedPage& page) {
  for (const auto& [p, g] : page.entries)
    if (!g.is_finitely_generated())
      throw Error(Signal::UnsupportedDivisible, "page entries must be finitely generated");
  for (const auto& [p, d] : page.differentials) {
    if (!(d.domain == page.at(p)) || !(d.codomain == page.at(page.target(p))))
      throw Error(Signal::MalformedPage, "differential at [" + std::to_string(p.s) + "," +
                                             std::to_string(p.t) + "] has the wrong shape");
  }
  for (const auto& [p, d] : page.differentials) {
    auto next = page.differentials.find(page.target(p));
    if (next == page.differentials.end()) continue;
    if (!groups::is_zero_map(groups::compose(next->second, d)))
      throw Error(Signal::MalformedPage, "consecutive differentials do not compose to zero");
  }
}

/// Homology at every position; the next page starts with zero differentials.
inline BigradedPage turn_page(const BigradedPage& page) {
  validate(page);
  std::set<Position> positions;
  for (const auto& [p, g] : page.entries) positions.insert(p);
  BigradedPage next;
  next.r = page.r + 1;
  next.convention = page.convention;
  for (Position p : positions) {
    GroupMap in = page.differential(page.source_of(p));
    GroupMap out = page.differential(p);
    SymGroup h = groups::homology(in, out);
    if (!h.is_zero()) next.entries[p] = h;
  }
  return next;
}

struct GradedPiece {
  Position position;
  SymGroup group;
};

struct DegreeReport {
  std::vector<GradedPiece> pieces;   // filtration order
  bool extension_resolved = false;
  bool indeterminate = false;        // touched by an undetermined differential
  std::optional<SymGroup> abutment;  // set when extension_resolved
};

struct EInfinityReport {
  std::map<Position, SymGroup> stable;
  std::map<int, DegreeReport> degrees;
  std::vector<BigradedPage> pages;  // E_2, E_3, ... up to the stable page
};

/// Supplies the differentials of page r (given its entries), or none.
using DifferentialRule = std::function<void(BigradedPage&)>;

namespace detail {
inline bool has_live_differential(const BigradedPage& page, const Region& region) {
  for (const auto& [p, g] : page.entries) {
    if (!region.contains(p)) continue;
    Position q = page.target(p);
    if (region.contains(q) && !page.at(q).is_zero()) return true;
  }
  return false;
}

/// Some d_r with r at least the current page could still be nonzero. Past
/// the width of the region every target falls outside it.
inline bool may_change(const BigradedPage& page, const Region& region) {
  const int span = page.convention == Convention::Cohomological ? region.s_max - region.s_min
                                                                 : region.t_max - region.t_min + 1;
  BigradedPage probe;
  probe.convention = page.convention;
  probe.entries = page.entries;
  for (probe.r = page.r; probe.r <= span; ++probe.r)
    if (has_live_differential(probe, region)) return true;
  return false;
}
}  // namespace detail

/// Turns pages until every differential inside the region is forced to vanish.
/// With exponent_two set, degrees whose pieces are all elementary 2-groups are
/// assembled as direct sums.
inline EInfinityReport run_to_stable(BigradedPage page, const DifferentialRule& rule,
                                     const Region& region = {}, bool exponent_two = false) {
  EInfinityReport report;
  std::set<int> indeterminate;
  for (;;) {
    if (rule) rule(page);
    validate(page);
    for (Position p : page.unknown) {
      indeterminate.insert(page.total_degree(p));
      indeterminate.insert(page.total_degree(page.target(p)));
    }
    report.pages.push_back(page);
    if (!detail::may_change(page, region)) break;
    page = turn_page(page);
  }
  for (const auto& [p, g] : page.entries)
    if (region.contains(p) && !g.is_zero()) report.stable[p] = g;

  for (const auto& [p, g] : report.stable) report.degrees[page.total_degree(p)].pieces.push_back({p, g});
  for (auto& [n, deg] : report.degrees) {
    std::sort(deg.pieces.begin(), deg.pieces.end(), [&](const GradedPiece& a, const GradedPiece& b) {
      return page.filtration(a.position) < page.filtration(b.position);
    });
    deg.indeterminate = indeterminate.count(n) > 0;
    bool all_elementary = std::all_of(deg.pieces.begin(), deg.pieces.end(),
                                      [](const GradedPiece& x) { return x.group.is_elementary_two(); });
    deg.extension_resolved =
        !deg.indeterminate && (deg.pieces.size() <= 1 || (exponent_two && all_elementary));
    if (deg.extension_resolved) {
      SymGroup sum;
      for (const auto& piece : deg.pieces) sum = groups::direct_sum(sum, piece.group);
      deg.abutment = sum;
    }
  }
  for (int n : indeterminate)
    if (!report.degrees.count(n)) report.degrees[n].indeterminate = true;
  return report;
}

// ---------------------------------------------------------------------------
// Debug dump

inline std::string dump(const BigradedPage& page) {
  std::ostringstream os;
  for (const auto& [p, g] : page.entries)
    os << "E_" << page.r << "[" << p.s << "," << p.t << "] = " << g << "\n";
  for (const auto& [p, d] : page.differentials) {
    if (groups::is_zero_map(d)) continue;
    Position q = page.target(p);
    os << "d_" << page.r << "[" << p.s << "," << p.t << "→" << q.s << "," << q.t
       << "] = " << d.matrix << "\n";
  }
  for (Position p : page.unknown) {
    Position q = page.target(p);
    os << "d_" << page.r << "[" << p.s << "," << p.t << "→" << q.s << "," << q.t
       << "] = ?\n";
  }
  return os.str();
}

inline std::string dump(const EInfinityReport& report) {
  std::ostringstream os;
  for (const auto& page : report.pages) os << dump(page);
  for (const auto& [p, g] : report.stable)
    os << "E_inf[" << p.s << "," << p.t << "] = " << g << "\n";
  for (const auto& [n, deg] : report.degrees) {
    os << "degree " << n << ":";
    for (const auto& piece : deg.pieces) os << " [" << piece.group << "]";
    if (deg.abutment) os << " => " << *deg.abutment;
    else os << " => unresolved";
    if (deg.indeterminate) os << " (undetermined differential)";
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Pardon's spectral sequence

/// E_2 page with entries (0,0) Z/2, (0,1) H^1, (1,1) Pic/2, (0,2) H^2/Pic,
/// (1,2) H^3, (2,2) CH^2/2; d_2 is S^1 on (1,1). Untwisted only.
inline BigradedPage pardon_e2(const spaces::Space& x) {
  if (spaces::complex_dimension(x) > 2)
    throw Error(Signal::DimensionTooLarge, "Pardon page needs dimension <= 2");
  BigradedPage page;
  page.r = 2;
  page.convention = Convention::Pardon;
  auto put = [&](Position p, const SymGroup& g) {
    if (!g.is_zero()) page.entries[p] = g;
  };
  const std::size_t dim = spaces::complex_dimension(x);
  put({0, 0}, SymGroup::cyclic(2));
  if (dim == 0) return page;
  const SymGroup pic2 = groups::mod2(spaces::picard(x));
  put({0, 1}, spaces::etale_h(x, 1));
  put({1, 1}, pic2);
  if (const auto* s = std::get_if<spaces::SurfaceDescriptor>(&x)) {
    const std::size_t h2 = spaces::etale_h(x, 2).f2_rank();
    put({0, 2}, SymGroup::elementary_two(h2 - pic2.f2_rank()));
    put({1, 2}, spaces::etale_h(x, 3));
    put({2, 2}, SymGroup::elementary_two(s->ch2_mod2_rank));
    if (!pic2.is_zero() && s->ch2_mod2_rank > 0)
      page.differentials.emplace(Position{1, 1}, groups::f2_map(s->s1));
  }
  return page;
}

inline EInfinityReport run_pardon(const spaces::Space& x) {
  BigradedPage e2 = pardon_e2(x);
  return run_to_stable(e2, nullptr, Region{0, 2, 0, 2}, true);
}

// ---------------------------------------------------------------------------
// Atiyah-Hirzebruch spectral sequences

enum class Coefficient { Zero, Integers, Mod2 };

/// KO^q(pt): Z for q = 0, 4 mod 8; Z/2 for q = -1, -2 mod 8; else 0.
inline Coefficient ko_coefficient(int q) {
  const int m = ((q % 8) + 8) % 8;
  if (m == 0 || m == 4) return Coefficient::Integers;
  if (m == 7 || m == 6) return Coefficient::Mod2;
  return Coefficient::Zero;
}

inline Coefficient k_coefficient(int q) {
  return (q % 2 == 0) ? Coefficient::Integers : Coefficient::Zero;
}

namespace detail {
inline SymGroup coefficient_group(const spaces::CwModel& m, int p, Coefficient c) {
  switch (c) {
    case Coefficient::Integers: return m.h(p);
    case Coefficient::Mod2: return m.h_mod2(p);
    case Coefficient::Zero: break;
  }
  return SymGroup::zero();
}

inline BigradedPage ahss_e2(const spaces::CwModel& m, Coefficient (*coeff)(int), const Region& region) {
  BigradedPage page;
  page.r = 2;
  page.convention = Convention::Cohomological;
  for (int p = region.s_min; p <= std::min(region.s_max, 4); ++p)
    for (int q = region.t_min; q <= region.t_max; ++q) {
      SymGroup g = coefficient_group(m, p, coeff(q));
      if (!g.is_zero()) page.entries[{p, q}] = g;
    }
  return page;
}
}  // namespace detail

inline Region default_region() { return Region{}; }

/// E_2 of the KO sequence with d_2 = Sq^2 o pi out of Z rows and Sq^2 out of
/// the Z/2 rows sitting one below them. Sq^2 vanishes below degree 2 and the
/// target of d_2 lies above degree 4 for sources above degree 2.
inline BigradedPage ahss_ko_e2(const spaces::CwModel& m, const Region& region = default_region()) {
  if (m.h(0).is_zero()) throw Error(Signal::InconsistentDescriptor, "CW model must be connected");
  BigradedPage page = detail::ahss_e2(m, ko_coefficient, region);
  const F2Matrix sq2_pi = groups::f2_product(m.sq2_z(), m.reduce2());
  for (const auto& [p, g] : page.entries) {
    if (p.s != 2) continue;
    Position q = page.target(p);
    if (!region.contains(q) || page.at(q).is_zero()) continue;
    const int row = ((p.t % 8) + 8) % 8;
    if (row == 0 && ko_coefficient(q.t) == Coefficient::Mod2)
      page.differentials.emplace(p, groups::make_map(g, page.at(q), groups::to_int(sq2_pi)));
    else if (row == 7 && ko_coefficient(q.t) == Coefficient::Mod2)
      page.differentials.emplace(p, groups::f2_map(m.sq2));
  }
  return page;
}

/// Rule for pages past E_2 of the KO sequence. d_3 out of row -2 is
/// beta o Sq^2 and vanishes in this range; d_3 out of H^1(Z) in a Z row is
/// not determined and is carried as unknown when both ends survive.
inline DifferentialRule ko_rule(const Region& region) {
  return [region](BigradedPage& page) {
    if (page.r != 3) return;
    for (const auto& [p, g] : page.entries) {
      if (p.s != 1 || (((p.t % 8) + 8) % 8) != 0) continue;
      Position q = page.target(p);
      if (region.contains(q) && !page.at(q).is_zero()) page.unknown.insert(p);
    }
  };
}

inline EInfinityReport ahss_ko(const spaces::Space& x, const Region& region = default_region()) {
  if (spaces::complex_dimension(x) > 2)
    throw Error(Signal::DimensionTooLarge, "AHSS engine needs a complex of dimension <= 4");
  spaces::CwModel m = spaces::cw_model(x);
  BigradedPage e2 = ahss_ko_e2(m, region);
  DifferentialRule third = ko_rule(region);
  return run_to_stable(e2, [third](BigradedPage& page) {
    if (page.r >= 3) third(page);
  }, region, false);
}

/// K sequence: integral cohomology in even rows. d_3 = beta o Sq^2 o pi is
/// zero on degrees <= 1 and lands above degree 4 otherwise, so no rule is
/// needed and the sequence collapses.
inline EInfinityReport ahss_k(const spaces::Space& x, const Region& region = default_region()) {
  if (spaces::complex_dimension(x) > 2)
    throw Error(Signal::DimensionTooLarge, "AHSS engine needs a complex of dimension <= 4");
  spaces::CwModel m = spaces::cw_model(x);
  return run_to_stable(detail::ahss_e2(m, k_coefficient, region), nullptr, region, false);
}

}  // namespace wittkit::specseq

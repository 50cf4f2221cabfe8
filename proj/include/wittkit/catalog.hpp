#pragma once

// Named example spaces. Parametric families use query syntax, for instance
// curve?g=2, affine_curve?g=1&n=2, k3?rho=20, ruled?g=1&b1=2.

#include "wittkit/spaces.hpp"

#include <charconv>
#include <map>
#include <string>
#include <vector>

namespace wittkit::catalog {

using groups::F2Matrix;
using groups::SymGroup;
using spaces::Space;

struct CatalogEntry {
  std::string name;
  std::string summary;
  Space descriptor;
  std::map<std::string, std::string> provenance;  // field -> source note
};

namespace detail {
inline F2Matrix rows(std::initializer_list<std::initializer_list<int>> r, std::size_t cols) {
  F2Matrix m(r.size(), cols);
  std::size_t i = 0;
  for (const auto& row : r) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = static_cast<std::uint8_t>(v & 1);
    ++i;
  }
  return m;
}

inline F2Matrix identity_over(std::size_t rows, std::size_t cols) {
  F2Matrix m(rows, cols);
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) m(k, k) = 1;
  return m;
}

[[noreturn]] inline void unknown(const std::string& name, const std::string& why) {
  throw Error(Signal::UnknownName, "catalog entry '" + name + "': " + why);
}

/// Parses "base?k=v&k=v" into base and integer parameters.
inline std::string split_name(const std::string& name, std::map<std::string, std::size_t>& params) {
  const auto q = name.find('?');
  if (q == std::string::npos) return name;
  std::string rest = name.substr(q + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto amp = rest.find('&', pos);
    const std::string kv = rest.substr(pos, amp == std::string::npos ? std::string::npos : amp - pos);
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) unknown(name, "malformed parameter '" + kv + "'");
    const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || p != val.data() + val.size()) unknown(name, "parameter '" + key + "' is not a number");
    if (!params.emplace(key, v).second) unknown(name, "parameter '" + key + "' repeated");
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }
  return name.substr(0, q);
}

inline std::size_t take(const std::string& name, std::map<std::string, std::size_t>& params,
                        const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) unknown(name, "missing parameter '" + key + "'");
  std::size_t v = it->second;
  params.erase(it);
  return v;
}

inline CatalogEntry curve_entry(std::string name, bool projective, std::size_t g, std::size_t n) {
  CatalogEntry e;
  e.name = std::move(name);
  e.descriptor = spaces::make_curve(projective, g, n);
  if (projective) {
    e.summary = "smooth projective curve of genus " + std::to_string(g);
    e.provenance = {{"genus", "parameter"}, {"punctures", "projective curves have none"}};
  } else {
    e.summary = "genus " + std::to_string(g) + " curve with " + std::to_string(n) + " points removed";
    e.provenance = {{"genus", "parameter"},
                    {"punctures", "parameter"},
                    {"h1_rank", "wedge of 2g+n-1 circles"}};
  }
  return e;
}

inline CatalogEntry surface_entry(std::string name, std::string summary, const spaces::SurfaceInput& in,
                                  std::map<std::string, std::string> provenance) {
  return CatalogEntry{std::move(name), std::move(summary), spaces::make_surface(in), std::move(provenance)};
}

inline CatalogEntry p2() {
  spaces::SurfaceInput in;
  in.h_int = {SymGroup::free(1), SymGroup::zero(), SymGroup::free(1), SymGroup::zero(), SymGroup::free(1)};
  in.nu = 0;
  in.rho = 1;
  in.sq2 = rows({{1}}, 1);
  in.pi2 = rows({{1}}, 1);
  return surface_entry("p2", "projective plane", in,
                       {{"h_int", "cellular cohomology, one cell in each even dimension"},
                        {"nu", "H^2 is torsion-free"},
                        {"rho", "hyperplane class generates H^2"},
                        {"sq2", "the hyperplane class squares to the point class"},
                        {"pi2", "H^2(Z)/2 = H^2(Z/2)"},
                        {"s1", "equal to Sq2 on integral classes since rho = b2"}});
}

inline CatalogEntry blowup_p2() {
  spaces::SurfaceInput in;
  in.h_int = {SymGroup::free(1), SymGroup::zero(), SymGroup::free(2), SymGroup::zero(), SymGroup::free(1)};
  in.nu = 0;
  in.rho = 2;
  in.sq2 = rows({{1, 1}}, 2);  // H^2 = 1, E^2 = -1
  in.pi2 = identity_over(2, 2);
  return surface_entry("blowup_p2", "blow-up of the projective plane in a point", in,
                       {{"h_int", "P^2 plus one exceptional sphere"},
                        {"nu", "H^2 is torsion-free"},
                        {"rho", "Pic is spanned by the pulled-back line H and the exceptional curve E"},
                        {"sq2", "intersection form diag(1,-1): both basis classes have odd square"},
                        {"pi2", "H^2(Z)/2 = H^2(Z/2)"},
                        {"s1", "equal to Sq2 on integral classes since rho = b2"}});
}

inline CatalogEntry enriques() {
  spaces::SurfaceInput in;
  in.h_int = {SymGroup::free(1), SymGroup::zero(), SymGroup::make(10, {2}), SymGroup::cyclic(2),
              SymGroup::free(1)};
  in.nu = 1;
  in.rho = 10;
  // H^2(Z/2): ten free classes, the canonical class, one class dual to it
  F2Matrix sq2(1, 12);
  sq2(0, 11) = 1;  // x -> x w2, and w2 is the reduction of the torsion canonical class
  in.sq2 = sq2;
  in.pi2 = identity_over(12, 11);
  return surface_entry("enriques", "Enriques surface", in,
                       {{"h_int", "pi_1 = Z/2, b1 = 0, b2 = 10, torsion Z/2 in H^2 and H^3"},
                        {"nu", "torsion of H^2 is Z/2, generated by the canonical class"},
                        {"rho", "geometric genus zero, so rho = b2"},
                        {"sq2", "Sq2 = cup with w2; integral classes pair evenly with K"},
                        {"pi2", "H^2(Z)/2 embeds as the first eleven coordinates"},
                        {"s1", "equal to Sq2 on integral classes, which vanishes"},
                        {"k1_two_torsion", "torsion of H^3 is Z/2"}});
}

inline CatalogEntry k3(std::size_t rho) {
  if (rho > 20) unknown("k3?rho=" + std::to_string(rho), "rho must be at most 20");
  spaces::SurfaceInput in;
  in.h_int = {SymGroup::free(1), SymGroup::zero(), SymGroup::free(22), SymGroup::zero(), SymGroup::free(1)};
  in.nu = 0;
  in.rho = rho;
  in.sq2 = F2Matrix(1, 22);  // even lattice: w2 = 0
  in.pi2 = identity_over(22, 22);
  in.s1 = F2Matrix(1, rho);
  return surface_entry("k3?rho=" + std::to_string(rho), "K3 surface of Picard number " + std::to_string(rho), in,
                       {{"h_int", "simply connected, b2 = 22, torsion-free"},
                        {"nu", "H^2 is torsion-free"},
                        {"rho", "parameter, at most 20"},
                        {"sq2", "intersection lattice 3U + 2E8(-1) is even"},
                        {"pi2", "H^2(Z)/2 = H^2(Z/2)"},
                        {"s1", "zero: squares of divisor classes are even"}});
}

inline CatalogEntry ruled(std::size_t g, std::size_t b1) {
  spaces::SurfaceInput in;
  in.h_int = {SymGroup::free(1), SymGroup::free(b1), SymGroup::free(2), SymGroup::free(b1), SymGroup::free(1)};
  in.nu = 0;
  in.rho = 2;
  in.sq2 = F2Matrix(1, 2);  // product C x P^1: hyperbolic form
  in.pi2 = identity_over(2, 2);
  return surface_entry("ruled?g=" + std::to_string(g) + "&b1=" + std::to_string(b1),
                       "product of a genus " + std::to_string(g) + " curve with P^1", in,
                       {{"h_int", "Kunneth formula with b1 taken as a parameter"},
                        {"b1", "explicit parameter; the topological value is 2g"},
                        {"nu", "H^2 is torsion-free"},
                        {"rho", "fibre and section span H^2"},
                        {"sq2", "hyperbolic intersection form is even"},
                        {"pi2", "H^2(Z)/2 = H^2(Z/2)"},
                        {"s1", "equal to Sq2 on integral classes since rho = b2"}});
}
}  // namespace detail

/// Looks up a fixed or parametric entry.
inline CatalogEntry catalog_get(const std::string& name) {
  std::map<std::string, std::size_t> params;
  const std::string base = detail::split_name(name, params);
  CatalogEntry e;
  if (base == "point") {
    e = CatalogEntry{"point", "a single point", spaces::PointDescriptor{}, {{"kind", "zero-dimensional"}}};
  } else if (base == "p1") {
    e = detail::curve_entry("p1", true, 0, 0);
    e.summary = "projective line";
  } else if (base == "curve") {
    const std::size_t g = detail::take(name, params, "g");
    if (g > 8) detail::unknown(name, "registered genera are 0..8");
    e = detail::curve_entry("curve?g=" + std::to_string(g), true, g, 0);
  } else if (base == "affine_curve") {
    const std::size_t g = detail::take(name, params, "g");
    const std::size_t n = detail::take(name, params, "n");
    if (n == 0) detail::unknown(name, "an affine curve needs n >= 1");
    e = detail::curve_entry("affine_curve?g=" + std::to_string(g) + "&n=" + std::to_string(n), false, g, n);
  } else if (base == "p2") {
    e = detail::p2();
  } else if (base == "blowup_p2") {
    e = detail::blowup_p2();
  } else if (base == "enriques") {
    e = detail::enriques();
  } else if (base == "k3") {
    e = detail::k3(detail::take(name, params, "rho"));
  } else if (base == "ruled") {
    const std::size_t g = detail::take(name, params, "g");
    const std::size_t b1 = detail::take(name, params, "b1");
    e = detail::ruled(g, b1);
  } else {
    detail::unknown(name, "no such entry");
  }
  if (!params.empty()) detail::unknown(name, "unexpected parameter '" + params.begin()->first + "'");
  return e;
}

/// Every registered name, in a fixed order.
inline std::vector<std::string> catalog_list() {
  std::vector<std::string> names{"point", "p1"};
  for (int g = 0; g <= 8; ++g) names.push_back("curve?g=" + std::to_string(g));
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 3; ++n) names.push_back("affine_curve?g=" + std::to_string(g) + "&n=" + std::to_string(n));
  names.push_back("p2");
  names.push_back("blowup_p2");
  names.push_back("enriques");
  for (int r = 0; r <= 20; ++r) names.push_back("k3?rho=" + std::to_string(r));
  names.push_back("ruled?g=1&b1=2");
  names.push_back("ruled?g=2&b1=4");
  return names;
}

inline std::vector<CatalogEntry> catalog_all() {
  std::vector<CatalogEntry> out;
  for (const auto& n : catalog_list()) out.push_back(catalog_get(n));
  return out;
}

}  // namespace wittkit::catalog

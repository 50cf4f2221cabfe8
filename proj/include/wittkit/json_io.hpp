#pragma once

// JSON reading and writing for descriptors and reports.

#include "wittkit/catalog.hpp"
#include "wittkit/compare.hpp"
#include "wittkit/specseq.hpp"
#include "wittkit/stiefel_whitney.hpp"
#include "wittkit/topko.hpp"
#include "wittkit/witt.hpp"

#include <json.hpp>

#include <string>

namespace wittkit::json_io {

using Json = nlohmann::ordered_json;
using groups::F2Matrix;
using groups::SymGroup;
using spaces::Space;

// ---------------------------------------------------------------------------
// Descriptors

namespace detail {
[[noreturn]] inline void bad(const std::string& what) { throw Error(Signal::ParseError, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("descriptor must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

inline bool get_bool(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) bad(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

inline std::size_t get_count(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    bad(std::string("'") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

/// Rows of 0/1 entries. An empty list has `cols_if_empty` columns.
inline F2Matrix get_bits(const Json& v, const std::string& key, std::size_t cols_if_empty) {
  if (!v.is_array()) bad("'" + key + "' must be a list of rows");
  if (v.empty()) return F2Matrix(0, cols_if_empty);
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  F2Matrix m(v.size(), cols);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) bad("'" + key + "' rows must be lists of equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& b = v[i][k];
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
        bad("'" + key + "' entries must be 0 or 1");
      m(i, k) = static_cast<std::uint8_t>(b.get<int>());
    }
  }
  return m;
}

inline Json bits(const F2Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(static_cast<int>(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}
}  // namespace detail

inline Space space_from_json(const Json& j) {
  const Json& kind = detail::field(j, "kind");
  if (!kind.is_string()) detail::bad("'kind' must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "point") return spaces::PointDescriptor{};
  if (k == "curve")
    return spaces::make_curve(detail::get_bool(j, "projective"), detail::get_count(j, "genus"),
                              detail::get_count(j, "punctures"));
  if (k != "surface") detail::bad("unknown kind '" + k + "'");

  spaces::SurfaceInput in;
  in.projective = detail::get_bool(j, "projective");
  const Json& h = detail::field(j, "h_int");
  if (!h.is_array() || h.size() != 5) detail::bad("'h_int' must list H^0..H^4");
  for (std::size_t d = 0; d < 5; ++d) {
    if (!h[d].is_string()) detail::bad("'h_int' entries must be group strings");
    in.h_int[d] = groups::parse_group(h[d].get<std::string>());
  }
  in.nu = detail::get_count(j, "nu");
  in.rho = detail::get_count(j, "rho");
  in.ch2_mod2_rank = detail::get_count(j, "ch2_mod2_rank");
  // column counts for empty matrices follow from the cohomology
  const std::size_t h2z = in.h_int[2].free_rank() + groups::even_factor_count(in.h_int[2]);
  const std::size_t h2 = h2z + groups::even_factor_count(in.h_int[3]);
  in.sq2 = detail::get_bits(detail::field(j, "sq2"), "sq2", h2);
  in.pi2 = detail::get_bits(detail::field(j, "pi2"), "pi2", h2z);
  if (auto it = j.find("s1"); it != j.end() && !it->is_null())
    in.s1 = detail::get_bits(*it, "s1", in.rho + in.nu);
  return spaces::make_surface(in);
}

inline Space space_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Signal::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return space_from_json(j);
}

inline Json to_json(const Space& x) {
  Json j;
  if (spaces::is_point(x)) {
    j["kind"] = "point";
  } else if (const auto* c = std::get_if<spaces::CurveDescriptor>(&x)) {
    j["kind"] = "curve";
    j["projective"] = c->projective;
    j["genus"] = c->genus;
    j["punctures"] = c->punctures;
  } else {
    const auto& s = std::get<spaces::SurfaceDescriptor>(x);
    j["kind"] = "surface";
    j["projective"] = s.projective;
    j["h_int"] = Json::array();
    for (const auto& g : s.h_int) j["h_int"].push_back(g.render());
    j["nu"] = s.nu;
    j["rho"] = s.rho;
    j["ch2_mod2_rank"] = s.ch2_mod2_rank;
    j["sq2"] = detail::bits(s.sq2);
    j["pi2"] = detail::bits(s.pi2);
    if (s.s1_supplied) j["s1"] = detail::bits(s.s1);
  }
  return j;
}

inline Json to_json(const catalog::CatalogEntry& e) {
  Json j;
  j["name"] = e.name;
  j["summary"] = e.summary;
  j["descriptor"] = to_json(e.descriptor);
  j["provenance"] = Json::object();
  for (const auto& [k, v] : e.provenance) j["provenance"][k] = v;
  return j;
}

// ---------------------------------------------------------------------------
// Groups and tables

template <std::size_t N>
inline Json groups_json(const std::array<SymGroup, N>& a) {
  Json out = Json::array();
  for (const auto& g : a) out.push_back(g.render());
  return out;
}

inline Json to_json(const witt::WittTable& t) {
  Json j;
  j["W"] = groups_json(t.w);
  j["GW"] = t.gw ? groups_json(*t.gw) : Json(nullptr);
  j["twist"] = witt::to_string(t.twist);
  j["flags"] = Json::object();
  for (const auto& [k, v] : t.flags) j["flags"][k] = v;
  if (t.w0_graded) j["W0_graded"] = groups_json(*t.w0_graded);
  return j;
}

inline Json kok_json(const Space& x, witt::Twist t) {
  Json out = Json::array();
  for (int i = 0; i < 4; ++i) out.push_back(topko::kok(x, 2 * i, t).render());
  return out;
}

inline Json ko_json(const Space& x, witt::Twist t) {
  Json j;
  j["KO"] = Json::array();
  if (t == witt::Twist::Trivial) {
    for (const auto& g : topko::ko_table(x)) j["KO"].push_back(g ? Json(g->render()) : Json(nullptr));
  } else {
    // twisted KO groups are not modeled; only their KO/K quotients are
    for (int d = 0; d < 8; ++d) j["KO"].push_back(nullptr);
  }
  j["K0_gr"] = groups_json(topko::k_top_graded(x));
  j["KOK"] = kok_json(x, t);
  return j;
}

inline Json k_json(const Space& x) {
  spaces::CwModel m = spaces::cw_model(x);
  Json j;
  j["K0_gr"] = groups_json(topko::k_top_graded(x));
  j["K1_gr"] = Json::array({m.h(1).render(), m.h(3).render()});
  j["K1_two_torsion"] = topko::k1_two_torsion(x).render();
  return j;
}

// ---------------------------------------------------------------------------
// Comparison reports

inline Json to_json(const compare::ComparisonReport& r) {
  Json j;
  j["pic_surjective"] = r.pic_surjective;
  j["twist"] = witt::to_string(r.twist);
  j["shifts"] = Json::array();
  for (const auto& s : r.shifts) {
    Json e;
    e["shift"] = s.shift;
    e["W"] = s.w.render();
    e["KOK"] = s.kok.render();
    e["W_reduced"] = s.w_reduced.render();
    e["KOK_reduced"] = s.kok_reduced.render();
    e["iso"] = s.iso;
    j["shifts"].push_back(e);
  }
  j["verdict"] = compare::to_string(r.verdict);
  j["predicted"] = compare::to_string(r.predicted);
  j["shift0_rank_gap"] = r.shift0_rank_gap;
  if (r.first_mismatch)
    j["mismatch"] = Json{{"shift", r.first_mismatch->shift},
                         {"w_rank", r.first_mismatch->w_rank},
                         {"kok_rank", r.first_mismatch->kok_rank}};
  else
    j["mismatch"] = nullptr;
  return j;
}

inline compare::Verdict parse_verdict(const std::string& s) {
  for (auto v : {compare::Verdict::CurveAlwaysIso, compare::Verdict::CurveMismatch,
                 compare::Verdict::SurfaceIso, compare::Verdict::SurfaceMismatch})
    if (compare::to_string(v) == s) return v;
  throw Error(Signal::ParseError, "unknown verdict '" + s + "'");
}

inline compare::ComparisonReport comparison_from_json(const Json& j) {
  try {
    compare::ComparisonReport r;
    r.pic_surjective = j.at("pic_surjective").get<bool>();
    r.twist = witt::parse_twist(j.at("twist").get<std::string>());
    const Json& shifts = j.at("shifts");
    if (!shifts.is_array() || shifts.size() != 4) throw Error(Signal::ParseError, "need four shifts");
    for (std::size_t i = 0; i < 4; ++i) {
      auto& s = r.shifts[i];
      s.shift = shifts[i].at("shift").get<int>();
      s.w = groups::parse_group(shifts[i].at("W").get<std::string>());
      s.kok = groups::parse_group(shifts[i].at("KOK").get<std::string>());
      s.w_reduced = groups::parse_group(shifts[i].at("W_reduced").get<std::string>());
      s.kok_reduced = groups::parse_group(shifts[i].at("KOK_reduced").get<std::string>());
      s.iso = shifts[i].at("iso").get<bool>();
    }
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.predicted = parse_verdict(j.at("predicted").get<std::string>());
    r.shift0_rank_gap = j.at("shift0_rank_gap").get<long>();
    const Json& m = j.at("mismatch");
    if (!m.is_null())
      r.first_mismatch = compare::Mismatch{m.at("shift").get<int>(), m.at("w_rank").get<std::size_t>(),
                                           m.at("kok_rank").get<std::size_t>()};
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Signal::ParseError, std::string("malformed comparison report: ") + e.what());
  }
}

inline Json to_json(const compare::S1Report& r) {
  return Json{{"pic_surjective", r.pic_surjective},
              {"rank_s1", r.rank_s1},
              {"rank_sq2z", r.rank_sq2z},
              {"rank_sq2z_picard", r.rank_sq2z_picard},
              {"holds", r.holds}};
}

inline Json to_json(const topko::EtaReport& r) {
  return Json{{"k1_two_torsion_free", r.k1_two_torsion_free},
              {"checked", r.checked},
              {"holds", r.holds},
              {"mode", r.mode},
              {"detail", r.detail}};
}

inline Json to_json(const topko::Mod2Ranks& t) {
  Json j;
  j["W"] = t.w;
  j["W_mod2"] = t.w_mod2 ? Json(*t.w_mod2) : Json(nullptr);
  j["KOK"] = t.kok;
  j["KOK_mod2"] = t.kok_mod2;
  j["K0_mod2_rank"] = t.k0_mod2_rank;
  j["K0_over_two_rank"] = t.k0_over_two_rank;
  j["K1_two_rank"] = t.k1_two_rank;
  j["eta_obstructed"] = t.eta_obstructed;
  return j;
}

inline Json to_json(const topko::HermitianVerdict& v) {
  Json j;
  j["pic_surjective"] = v.pic_surjective;
  j["k1_two_torsion_free"] = v.k1_two_torsion_free;
  j["verdict"] = v.verdict;
  j["mod2_ranks_agree"] = v.mod2_ranks_agree ? Json(*v.mod2_ranks_agree) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Spectral sequences

inline Json to_json(const specseq::EInfinityReport& r) {
  Json j;
  j["pages"] = Json::array();
  for (const auto& page : r.pages) {
    Json p;
    p["r"] = page.r;
    p["entries"] = Json::array();
    for (const auto& [pos, g] : page.entries) p["entries"].push_back(Json{{"s", pos.s}, {"t", pos.t}, {"group", g.render()}});
    p["differentials"] = Json::array();
    for (const auto& [pos, d] : page.differentials) {
      if (groups::is_zero_map(d)) continue;
      auto tgt = page.target(pos);
      Json rows = Json::array();
      for (std::size_t a = 0; a < d.matrix.rows(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < d.matrix.cols(); ++b) row.push_back(d.matrix(a, b).str());
        rows.push_back(row);
      }
      p["differentials"].push_back(
          Json{{"from", {pos.s, pos.t}}, {"to", {tgt.s, tgt.t}}, {"matrix", rows}});
    }
    p["unknown"] = Json::array();
    for (auto pos : page.unknown) p["unknown"].push_back(Json::array({pos.s, pos.t}));
    j["pages"].push_back(p);
  }
  j["degrees"] = Json::array();
  for (const auto& [n, deg] : r.degrees) {
    Json d;
    d["degree"] = n;
    d["pieces"] = Json::array();
    for (const auto& piece : deg.pieces)
      d["pieces"].push_back(Json{{"s", piece.position.s}, {"t", piece.position.t}, {"group", piece.group.render()}});
    d["extension_resolved"] = deg.extension_resolved;
    d["indeterminate"] = deg.indeterminate;
    d["abutment"] = deg.abutment ? Json(deg.abutment->render()) : Json(nullptr);
    j["degrees"].push_back(d);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Stiefel-Whitney

inline Json to_json(const sw::TruncatedClass& c) {
  Json j;
  j["ring"] = c.ring->name();
  j["w"] = Json::array();
  for (const auto& e : c.coefficients) j["w"].push_back(c.ring->render(e));
  return j;
}

}  // namespace wittkit::json_io

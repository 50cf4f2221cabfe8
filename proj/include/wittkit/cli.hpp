#pragma once

// Command-line front end. `run` is the whole program; tools/wittkit.cpp only
// forwards argv and the standard streams.

#include "wittkit/catalog.hpp"
#include "wittkit/compare.hpp"
#include "wittkit/json_io.hpp"
#include "wittkit/specseq.hpp"
#include "wittkit/stiefel_whitney.hpp"
#include "wittkit/topko.hpp"
#include "wittkit/witt.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace wittkit::cli {

using json_io::Json;
using spaces::Space;

enum ExitCode : int { Ok = 0, UsageError = 1, AssertionFailed = 2 };

struct NamedSpace {
  std::string name;
  Space space;
};

/// `catalog:<name>`, `catalog:all`, or a path to a descriptor file.
inline std::vector<NamedSpace> resolve_spaces(const std::string& spec) {
  const std::string prefix = "catalog:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string name = spec.substr(prefix.size());
    std::vector<NamedSpace> out;
    if (name == "all") {
      for (auto& e : catalog::catalog_all()) out.push_back({e.name, e.descriptor});
    } else {
      auto e = catalog::catalog_get(name);
      out.push_back({e.name, e.descriptor});
    }
    return out;
  }
  std::ifstream in(spec);
  if (!in) throw Error(Signal::ParseError, "cannot read descriptor file '" + spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return {{spec, json_io::space_from_text(buf.str())}};
}

inline bool batch(const std::string& spec) { return spec == "catalog:all"; }

namespace detail {

struct Table {
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> r) { rows.push_back(std::move(r)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::ostringstream os;
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      os << line << '\n';
    }
    return os.str();
  }
};

inline std::string cell(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "?";
  return j.dump();
}

/// One result: JSON for machines, a text rendering for people.
struct Output {
  Json json;
  std::string table;
};

inline void emit(std::ostream& out, const std::string& name, const Output& o, bool many, bool as_json) {
  if (as_json) {
    if (many) out << Json{{"space", name}, {"result", o.json}}.dump() << '\n';
    else out << o.json.dump() << '\n';
    return;
  }
  if (many) out << "# " << name << '\n';
  out << o.table;
}

inline void emit_error(std::ostream& out, std::ostream& err, const std::string& name, const Error& e,
                       bool many, bool as_json) {
  err << "error: " << name << ": " << e.what() << '\n';
  if (many && as_json)
    out << Json{{"space", name}, {"error", {{"signal", to_string(e.signal())}, {"detail", e.what()}}}}.dump()
        << '\n';
}

// --- compute ---------------------------------------------------------------

inline Output compute_one(const Space& x, const std::string& theory, witt::Twist t, std::optional<int> shift) {
  Output o;
  Table tab;
  if (theory == "witt") {
    witt::WittTable wt = witt::witt_table(x, t);
    o.json = json_io::to_json(wt);
    if (shift) {
      const auto i = static_cast<std::size_t>(witt::shift_mod4(*shift));
      o.json = Json{{"shift", i}, {"W", o.json["W"][i]}, {"GW", wt.gw ? o.json["GW"][i] : Json(nullptr)}};
    }
    tab.add({"shift", "W", "GW"});
    for (std::size_t i = 0; i < 4; ++i) {
      if (shift && i != static_cast<std::size_t>(witt::shift_mod4(*shift))) continue;
      tab.add({std::to_string(i), wt.w[i].render(), wt.gw ? (*wt.gw)[i].render() : "?"});
    }
    o.table = tab.str() + "twist: " + witt::to_string(t) + "\n";
    return o;
  }
  if (theory == "gw" || theory == "kok") {
    Json arr = theory == "kok" ? json_io::kok_json(x, t) : [&] {
      witt::WittTable wt = witt::witt_table(x, t);
      if (!wt.gw) throw Error(Signal::UnsupportedTwist, "GW groups of surfaces are not modeled");
      return json_io::groups_json(*wt.gw);
    }();
    tab.add({"shift", theory == "kok" ? "KO^{2i}/K" : "GW"});
    for (std::size_t i = 0; i < 4; ++i) {
      if (shift && i != static_cast<std::size_t>(witt::shift_mod4(*shift))) continue;
      tab.add({std::to_string(i), arr[i].get<std::string>()});
    }
    o.json = shift ? arr[static_cast<std::size_t>(witt::shift_mod4(*shift))] : arr;
    o.table = tab.str();
    return o;
  }
  if (theory == "ko") {
    Json j = json_io::ko_json(x, t);
    const std::size_t d0 = shift ? static_cast<std::size_t>(topko::mod8(*shift)) : 0;
    tab.add({"degree", "KO"});
    for (std::size_t d = 0; d < 8; ++d) {
      if (shift && d != d0) continue;
      tab.add({std::to_string(d), cell(j["KO"][d])});
    }
    o.table = tab.str();
    if (shift) {
      o.json = j["KO"][d0];
    } else {
      o.json = j;
      o.table += "K0 graded: " + cell(j["K0_gr"][0]) + ", " + cell(j["K0_gr"][1]) + ", " + cell(j["K0_gr"][2]) + "\n";
    }
    return o;
  }
  // theory == "k"
  if (shift) throw Error(Signal::DegreeOutOfRange, "--shift is not used with --theory k");
  if (t != witt::Twist::Trivial) throw Error(Signal::UnsupportedTwist, "complex K-theory takes no twist");
  o.json = json_io::k_json(x);
  tab.add({"K0 graded", cell(o.json["K0_gr"][0]), cell(o.json["K0_gr"][1]), cell(o.json["K0_gr"][2])});
  tab.add({"K1 graded", cell(o.json["K1_gr"][0]), cell(o.json["K1_gr"][1])});
  tab.add({"K1[2]", cell(o.json["K1_two_torsion"])});
  o.table = tab.str();
  return o;
}

// --- compare ---------------------------------------------------------------

inline std::pair<Output, bool> compare_one(const Space& x, witt::Twist t) {
  compare::ComparisonReport r = compare::compare_w_kok(x, t);
  Output o;
  o.json = json_io::to_json(r);
  o.json["detail"] = r.detail();
  if (t == witt::Twist::Trivial) {
    o.json["eta"] = json_io::to_json(topko::eta_iso_check(x));
    o.json["mod2_ranks"] = json_io::to_json(topko::mod2_ranks(x));
    o.json["hermitian_mod2"] = json_io::to_json(topko::ql_hermitian_verdict(x));
    if (const auto* s = std::get_if<spaces::SurfaceDescriptor>(&x))
      o.json["s1_vs_sq2z"] = json_io::to_json(compare::s1_vs_sq2z(*s));
  }
  Table tab;
  tab.add({"shift", "W", "KO/K", "iso"});
  for (const auto& s : r.shifts) tab.add({std::to_string(s.shift), s.w.render(), s.kok.render(), s.iso ? "yes" : "no"});
  o.table = tab.str() + "verdict: " + compare::to_string(r.verdict) + " (predicted " +
            compare::to_string(r.predicted) + ")\n" + r.detail() + "\n";
  return {o, r.assertion_holds()};
}

// --- specseq ---------------------------------------------------------------

inline Output specseq_one(const Space& x, const std::string& which) {
  specseq::EInfinityReport r =
      which == "pardon" ? specseq::run_pardon(x) : which == "k" ? specseq::ahss_k(x) : specseq::ahss_ko(x);
  Output o;
  o.json = json_io::to_json(r);
  o.json["sequence"] = which;
  o.table = specseq::dump(r);
  return o;
}

// --- sw --------------------------------------------------------------------

inline Output sw_one(const std::string& ring_name, std::size_t rank, const std::vector<std::string>& chern,
                     bool complex) {
  sw::RingPtr ring = sw::ring_by_name(ring_name);
  std::vector<sw::Element> c{ring->one()};
  for (const auto& expr : chern) c.push_back(ring->parse(expr));
  sw::TruncatedClass w = sw::sw_metabolic_total(c, rank, ring, complex);
  Output o;
  o.json = json_io::to_json(w);
  o.json["rank"] = rank;
  o.json["field"] = complex ? "complex" : "general";
  Table tab;
  for (std::size_t k = 0; k < w.coefficients.size(); ++k)
    tab.add({"w" + std::to_string(k), ring->render(w.coefficients[k])});
  o.table = tab.str();
  return o;
}

}  // namespace detail

/// Runs the program on argv. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Witt groups of low-dimensional varieties against topological KO/K"};
  app.name("wittkit");
  app.require_subcommand(1);

  const std::vector<std::string> formats{"json", "table"};
  const std::vector<std::string> twists{"trivial", "O(p)"};

  std::string space, theory = "witt", twist = "trivial", format = "json";
  std::optional<int> shift;
  bool assert_flag = false;

  auto* compute = app.add_subcommand("compute", "Witt, GW, KO, KO/K or K groups of a space");
  compute->add_option("--space", space, "catalog:<name>, catalog:all, or a descriptor file")->required();
  compute->add_option("--theory", theory, "witt | gw | ko | kok | k")
      ->check(CLI::IsMember({"witt", "gw", "ko", "kok", "k"}));
  compute->add_option("--twist", twist, "trivial | O(p)")->check(CLI::IsMember(twists));
  compute->add_option("--shift", shift, "single shift (degree for ko)");
  compute->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* cmp = app.add_subcommand("compare", "compare W^i with KO^{2i}/K");
  cmp->add_option("--space", space)->required();
  cmp->add_option("--twist", twist)->check(CLI::IsMember(twists));
  cmp->add_flag("--assert", assert_flag, "exit 2 unless every shift agrees as predicted");
  cmp->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string sequence = "ko";
  auto* ss = app.add_subcommand("specseq", "run a spectral sequence and dump its pages");
  ss->add_option("--space", space)->required();
  ss->add_option("--theory", sequence, "ko | k | pardon")->check(CLI::IsMember({"ko", "k", "pardon"}));
  ss->add_option("--format", format)->check(CLI::IsMember(formats));

  std::string ring = "generic", field = "complex";
  std::size_t rank = 1;
  std::vector<std::string> chern;
  bool list_rings = false;
  auto* swc = app.add_subcommand("sw", "total Stiefel-Whitney class of a metabolic bundle");
  swc->add_option("--ring", ring, "cohomology ring name");
  swc->add_option("--rank", rank, "rank of the Lagrangian");
  swc->add_option("--chern", chern, "c_1,c_2,... as sums of basis labels")->delimiter(',');
  swc->add_option("--field", field, "complex | general")->check(CLI::IsMember({"complex", "general"}));
  swc->add_flag("--list-rings", list_rings);
  swc->add_option("--format", format)->check(CLI::IsMember(formats));

  auto* cat = app.add_subcommand("catalog", "list catalog entries or show one");
  cat->add_option("--space", space, "catalog:<name> or catalog:all");
  cat->add_option("--format", format)->check(CLI::IsMember(formats));

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : UsageError;
  }

  const bool as_json = format == "json";
  try {
    const witt::Twist t = witt::parse_twist(twist);

    if (*swc) {
      if (list_rings) {
        Json names = Json::array();
        for (const auto& r : sw::catalog_rings()) names.push_back(r->name());
        names.push_back("generic");
        if (as_json) out << names.dump() << '\n';
        else
          for (const auto& n : names) out << n.get<std::string>() << '\n';
        return Ok;
      }
      detail::emit(out, ring, detail::sw_one(ring, rank, chern, field == "complex"), false, as_json);
      return Ok;
    }

    if (*cat && space.empty()) {
      auto names = catalog::catalog_list();
      if (as_json) out << Json(names).dump() << '\n';
      else
        for (const auto& n : names) out << n << '\n';
      return Ok;
    }

    const bool many = batch(space);
    int code = Ok;
    for (const auto& [name, x] : resolve_spaces(space)) {
      try {
        if (*compute) {
          detail::emit(out, name, detail::compute_one(x, theory, t, shift), many, as_json);
        } else if (*cmp) {
          auto [o, holds] = detail::compare_one(x, t);
          detail::emit(out, name, o, many, as_json);
          if (assert_flag && !holds) {
            err << "assertion failed: " << name << ": " << o.json["detail"].get<std::string>() << '\n';
            if (code == Ok) code = AssertionFailed;
          }
        } else if (*ss) {
          detail::emit(out, name, detail::specseq_one(x, sequence), many, as_json);
        } else {
          auto e = catalog::catalog_get(name);
          detail::Output o{json_io::to_json(e), ""};
          o.table = e.name + ": " + e.summary + "\n" + o.json["descriptor"].dump() + "\n";
          detail::emit(out, name, o, many, as_json);
        }
      } catch (const Error& e) {
        if (!many) throw;
        detail::emit_error(out, err, name, e, many, as_json);
        code = UsageError;
      }
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return UsageError;
  }
}

}  // namespace wittkit::cli

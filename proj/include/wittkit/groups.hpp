#pragma once

// Finitely generated abelian groups extended by formal divisible summands.
//
// A SymGroup is stored in canonical form  Z^r + Z/d1 + ... + Z/dk + D(t)  with
// d1 | d2 | ... | dk, each di >= 2. D(t) is a formal divisible group whose only
// recorded invariant is its 2-torsion rank t (Jacobians, Pic^0). Maps, kernels
// and cokernels are only defined on the finitely generated part.

#include "wittkit/error.hpp"
#include "wittkit/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace wittkit::groups {

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithForm {
  IntMatrix U;      // rows x rows, unimodular
  IntMatrix S;      // diagonal, d1 | d2 | ..., all >= 0
  IntMatrix V;      // cols x cols, unimodular
  IntMatrix V_inv;  // inverse of V, kept in step with V
  std::size_t rank = 0;
};

/// U * m * V = S with a nonnegative divisibility chain on the diagonal.
inline SmithForm smith_form(IntMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm out{IntMatrix::identity(rows), std::move(m), IntMatrix::identity(cols),
                IntMatrix::identity(cols), 0};
  IntMatrix& S = out.S;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;
  IntMatrix& Vi = out.V_inv;

  auto col_swap = [&](std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    V.swap_cols(a, b);
    Vi.swap_rows(a, b);
  };
  // col[dst] += f * col[src]
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    S.add_col(dst, src, f);
    V.add_col(dst, src, f);
    Vi.add_row(src, dst, -f);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    U.swap_rows(a, b);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    S.add_row(dst, src, f);
    U.add_row(dst, src, f);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    bool any = false;
    for (;;) {
      // pivot = smallest nonzero |entry| in the trailing block
      std::size_t pi = t, pj = t;
      Integer best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          const Integer& v = S(i, j);
          if (v == 0) continue;
          Integer a = abs(v);
          if (best == 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) break;
      any = true;
      row_swap(t, pi);
      col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = S(i, t) / S(t, t);
        row_add(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = S(t, j) / S(t, t);
        col_add(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // pivot must divide the rest of the block
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (S(i, j) % S(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        row_add(t, *bad_row, Integer{1});
        continue;
      }
      break;
    }
    if (!any) break;
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
    ++out.rank;
  }
  return out;
}

/// Basis (as columns) of the integer null space {x : a x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm sf = smith_form(a);
  return sf.V.col_range(sf.rank, a.cols());
}

// ---------------------------------------------------------------------------
// F2 linear algebra (kept separate from the integer engine)

using F2Matrix = Matrix<std::uint8_t>;

inline std::size_t f2_rank(F2Matrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && (m(p, c) & 1U) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(rank, p);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != rank && (m(r, c) & 1U))
        for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) ^= m(rank, k);
    ++rank;
  }
  return rank;
}

inline F2Matrix f2_product(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Signal::ShapeMismatch, "F2 product shape mismatch");
  F2Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) & 1U)
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) ^= (b(k, j) & 1U);
  return c;
}

inline bool f2_is_zero(const F2Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) & 1U) return false;
  return true;
}

inline IntMatrix to_int(const F2Matrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Integer(m(i, j) & 1U);
  return out;
}

inline F2Matrix to_f2(const IntMatrix& m) {
  F2Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = static_cast<std::uint8_t>(boost::multiprecision::bit_test(abs(m(i, j)), 0));
  return out;
}

// ---------------------------------------------------------------------------
// SymGroup

class SymGroup {
 public:
  SymGroup() = default;

  /// Normalizes arbitrary cyclic orders (each >= 1) into invariant factors.
  static SymGroup make(std::size_t free_rank, const std::vector<Integer>& cyclic_orders,
                       std::size_t divisible_rank = 0) {
    SymGroup g;
    g.free_ = free_rank;
    g.divisible_ = divisible_rank;
    std::vector<Integer> orders;
    for (const auto& d : cyclic_orders) {
      if (d < 1) throw Error(Signal::ParseError, "cyclic order must be positive");
      if (d > 1) orders.push_back(d);
    }
    if (orders.empty()) return g;
    IntMatrix diag(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
    SmithForm sf = smith_form(std::move(diag));
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (sf.S(i, i) > 1) g.torsion_.push_back(sf.S(i, i));
    return g;
  }

  static SymGroup zero() { return {}; }
  static SymGroup free(std::size_t r) { return make(r, {}); }
  static SymGroup cyclic(const Integer& n) { return make(0, {n}); }
  static SymGroup elementary_two(std::size_t k) {
    return make(0, std::vector<Integer>(k, Integer{2}));
  }
  static SymGroup divisible(std::size_t t) { return make(0, {}, t); }

  std::size_t free_rank() const noexcept { return free_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }
  std::size_t divisible_rank() const noexcept { return divisible_; }

  bool is_zero() const noexcept { return free_ == 0 && torsion_.empty() && divisible_ == 0; }
  bool is_finitely_generated() const noexcept { return divisible_ == 0; }
  bool is_finite() const noexcept { return free_ == 0 && divisible_ == 0; }
  bool is_elementary_two() const noexcept {
    return is_finite() &&
           std::all_of(torsion_.begin(), torsion_.end(), [](const Integer& d) { return d == 2; });
  }
  /// Exponent <= 2 (includes the zero group).
  bool has_exponent_at_most_two() const noexcept { return is_elementary_two(); }

  /// Number of canonical generators of the finitely generated part.
  std::size_t generator_count() const noexcept { return free_ + torsion_.size(); }

  /// Orders of the canonical generators; 0 marks a free generator.
  std::vector<Integer> relation_orders() const {
    std::vector<Integer> out(free_, Integer{0});
    out.insert(out.end(), torsion_.begin(), torsion_.end());
    return out;
  }

  /// Number of elements; only for finite groups.
  Integer order() const {
    if (!is_finite()) throw Error(Signal::UnsupportedDivisible, "order of an infinite group");
    Integer n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  /// F2-dimension of an elementary 2-group.
  std::size_t f2_rank() const {
    if (!is_elementary_two())
      throw Error(Signal::UnsupportedDivisible, "f2 rank of a non-elementary group " + render());
    return torsion_.size();
  }

  /// Finitely generated shadow: drops D(t).
  SymGroup fg_part() const {
    SymGroup g = *this;
    g.divisible_ = 0;
    return g;
  }

  std::string render() const {
    std::vector<std::string> parts;
    if (free_ == 1) parts.emplace_back("Z");
    if (free_ > 1) parts.push_back("Z^" + std::to_string(free_));
    for (const auto& d : torsion_) parts.push_back("Z/" + d.str());
    if (divisible_ > 0) parts.push_back("D(" + std::to_string(divisible_) + ")");
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
  }

  friend bool operator==(const SymGroup&, const SymGroup&) = default;

 private:
  std::size_t free_ = 0;
  std::vector<Integer> torsion_;
  std::size_t divisible_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const SymGroup& g) { return os << g.render(); }

/// Parses the rendering grammar: `0`, `Z`, `Z^r`, `Z/n`, `D(t)` joined by `+`.
inline SymGroup parse_group(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_count = [&](std::string_view digits) -> std::size_t {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw Error(Signal::ParseError, "bad number '" + std::string(digits) + "'");
    return std::stoul(std::string(digits));
  };

  std::size_t free = 0, divisible = 0;
  std::vector<Integer> orders;
  std::size_t pos = 0;
  const std::string_view whole = trim(text);
  if (whole.empty()) throw Error(Signal::ParseError, "empty group expression");
  while (pos <= whole.size()) {
    std::size_t next = whole.find('+', pos);
    if (next == std::string_view::npos) next = whole.size();
    std::string_view term = trim(whole.substr(pos, next - pos));
    if (term == "0") {
    } else if (term == "Z") {
      free += 1;
    } else if (term.starts_with("Z^")) {
      free += parse_count(term.substr(2));
    } else if (term.starts_with("Z/")) {
      std::string_view digits = term.substr(2);
      parse_count(digits);
      orders.emplace_back(std::string(digits));
    } else if (term.starts_with("D(") && term.ends_with(")")) {
      divisible += parse_count(term.substr(2, term.size() - 3));
    } else {
      throw Error(Signal::ParseError, "unrecognized term '" + std::string(term) + "'");
    }
    pos = next + 1;
  }
  return SymGroup::make(free, orders, divisible);
}

// ---------------------------------------------------------------------------
// Group arithmetic

inline SymGroup direct_sum(const SymGroup& a, const SymGroup& b) {
  std::vector<Integer> orders = a.torsion();
  orders.insert(orders.end(), b.torsion().begin(), b.torsion().end());
  return SymGroup::make(a.free_rank() + b.free_rank(), orders,
                        a.divisible_rank() + b.divisible_rank());
}

inline SymGroup direct_sum(std::initializer_list<SymGroup> parts) {
  SymGroup acc;
  for (const auto& p : parts) acc = direct_sum(acc, p);
  return acc;
}

inline std::size_t even_factor_count(const SymGroup& g) {
  return static_cast<std::size_t>(std::count_if(
      g.torsion().begin(), g.torsion().end(),
      [](const Integer& d) { return !boost::multiprecision::bit_test(d, 0); }));
}

/// g / 2g. D(t) is 2-divisible and contributes nothing.
inline SymGroup mod2(const SymGroup& g) {
  return SymGroup::elementary_two(g.free_rank() + even_factor_count(g));
}

/// g[2], the 2-torsion subgroup.
inline SymGroup two_torsion(const SymGroup& g) {
  return SymGroup::elementary_two(even_factor_count(g) + g.divisible_rank());
}

/// g / g[2]. On D(t) this is again D(t).
inline SymGroup quotient_by_two_torsion(const SymGroup& g) {
  std::vector<Integer> orders;
  for (const auto& d : g.torsion())
    orders.push_back(boost::multiprecision::bit_test(d, 0) ? d : Integer(d / 2));
  return SymGroup::make(g.free_rank(), orders, g.divisible_rank());
}

/// g / ng. Odd n is rejected when a divisible atom is present.
inline SymGroup mod_n(const SymGroup& g, const Integer& n) {
  if (n < 1) throw Error(Signal::InvalidMap, "mod_n needs n >= 1");
  if (g.divisible_rank() > 0 && n != 2)
    throw Error(Signal::UnsupportedDivisible, "only 2-primary data of D(t) is recorded");
  std::vector<Integer> orders(g.free_rank(), n);
  for (const auto& d : g.torsion()) orders.push_back(boost::multiprecision::gcd(d, n));
  return SymGroup::make(0, orders);
}

/// g[n]. Only n = 2 is defined on divisible atoms.
inline SymGroup n_torsion(const SymGroup& g, const Integer& n) {
  if (n < 1) throw Error(Signal::InvalidMap, "n_torsion needs n >= 1");
  if (g.divisible_rank() > 0 && n != 2)
    throw Error(Signal::UnsupportedDivisible, "only 2-primary data of D(t) is recorded");
  if (n == 2) return two_torsion(g);
  std::vector<Integer> orders;
  for (const auto& d : g.torsion()) orders.push_back(boost::multiprecision::gcd(d, n));
  return SymGroup::make(0, orders);
}

// ---------------------------------------------------------------------------
// Presentations

/// A canonical group together with coordinate changes to and from the
/// generators of the presentation it came from.
struct CanonicalForm {
  SymGroup group;
  IntMatrix to_canonical;    // canonical gens x presentation gens
  IntMatrix from_canonical;  // presentation gens x canonical gens
};

/// Z^generators modulo the row lattice of `relations`.
inline CanonicalForm canonicalize(const IntMatrix& relations, std::size_t generators) {
  if (relations.rows() > 0 && relations.cols() != generators)
    throw Error(Signal::ShapeMismatch, "relation width differs from generator count");
  IntMatrix rel = relations.rows() == 0 ? IntMatrix(0, generators) : relations;
  SmithForm sf = smith_form(rel);

  std::vector<std::size_t> free_idx, tors_idx;
  std::vector<Integer> tors_orders;
  for (std::size_t i = 0; i < generators; ++i) {
    if (i >= sf.rank) {
      free_idx.push_back(i);
    } else if (sf.S(i, i) > 1) {
      tors_idx.push_back(i);
      tors_orders.push_back(sf.S(i, i));
    }
  }
  CanonicalForm out;
  out.group = SymGroup::make(free_idx.size(), tors_orders);
  std::vector<std::size_t> order = free_idx;
  order.insert(order.end(), tors_idx.begin(), tors_idx.end());

  out.to_canonical = IntMatrix(order.size(), generators);
  out.from_canonical = IntMatrix(generators, order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    const std::size_t i = order[c];
    for (std::size_t j = 0; j < generators; ++j) {
      Integer v = sf.V(j, i);
      if (i < sf.rank) {
        const Integer& s = sf.S(i, i);
        v %= s;
        if (v < 0) v += s;
      }
      out.to_canonical(c, j) = v;
      out.from_canonical(j, c) = sf.V_inv(i, j);
    }
  }
  return out;
}

inline SymGroup group_from_presentation(const IntMatrix& relations, std::size_t generators) {
  return canonicalize(relations, generators).group;
}

inline IntMatrix diagonal(const std::vector<Integer>& entries) {
  IntMatrix d(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
  return d;
}

/// Hermite normal form basis of the lattice spanned by the columns of `a`:
/// column echelon, positive pivots, entries left of a pivot reduced modulo it.
inline IntMatrix column_hnf(const IntMatrix& a) {
  IntMatrix m = a.transposed();  // rows span the lattice
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t r = lead; r < m.rows(); ++r)
        if (m(r, c) != 0 && (best == m.rows() || abs(m(r, c)) < abs(m(best, c)))) best = r;
      if (best == m.rows()) break;
      m.swap_rows(lead, best);
      bool done = true;
      for (std::size_t r = lead + 1; r < m.rows(); ++r) {
        if (m(r, c) == 0) continue;
        Integer q = m(r, c) / m(lead, c);
        m.add_row(r, lead, -q);
        if (m(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (lead >= m.rows() || m(lead, c) == 0) continue;
    if (m(lead, c) < 0) m.negate_row(lead);
    for (std::size_t r = 0; r < lead; ++r) {
      Integer q = m(r, c) / m(lead, c);
      if (m(r, c) - q * m(lead, c) < 0) q -= 1;
      if (q != 0) m.add_row(r, lead, -q);
    }
    ++lead;
  }
  return m.row_range(0, lead).transposed();
}

// ---------------------------------------------------------------------------
// Homomorphisms

enum class DivisibleBehavior { Absent, Zero, TorsionInclusion };

/// A homomorphism between canonical groups, written on canonical generators:
/// column j is the image of domain generator j.
struct GroupMap {
  SymGroup domain;
  SymGroup codomain;
  IntMatrix matrix;
  DivisibleBehavior divisible = DivisibleBehavior::Absent;
};

namespace detail {
inline bool divides(const Integer& modulus, const Integer& value) {
  if (modulus == 0) return value == 0;
  return value % modulus == 0;
}
}  // namespace detail

/// Builds and validates a map on the finitely generated parts.
inline GroupMap make_map(const SymGroup& domain, const SymGroup& codomain, IntMatrix matrix,
                         DivisibleBehavior divisible = DivisibleBehavior::Absent) {
  if (matrix.rows() != codomain.generator_count() || matrix.cols() != domain.generator_count())
    throw Error(Signal::ShapeMismatch, "matrix is " + std::to_string(matrix.rows()) + "x" +
                                           std::to_string(matrix.cols()) + " for " +
                                           domain.render() + " -> " + codomain.render());
  if (divisible == DivisibleBehavior::Absent &&
      (!domain.is_finitely_generated() || !codomain.is_finitely_generated()))
    throw Error(Signal::UnsupportedDivisibleMap, "map touching D(t) needs a divisible behavior");
  const auto d = domain.relation_orders();
  const auto e = codomain.relation_orders();
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d[j] == 0) continue;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (!detail::divides(e[i], d[j] * matrix(i, j)))
        throw Error(Signal::InvalidMap, "generator of order " + d[j].str() +
                                            " sent to an element of larger order");
  }
  // Reduce torsion coordinates to [0, e_i).
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) {
      matrix(i, j) %= e[i];
      if (matrix(i, j) < 0) matrix(i, j) += e[i];
    }
  }
  return GroupMap{domain, codomain, std::move(matrix), divisible};
}

inline GroupMap zero_map(const SymGroup& domain, const SymGroup& codomain) {
  return make_map(domain.fg_part(), codomain.fg_part(),
                  IntMatrix(codomain.generator_count(), domain.generator_count()));
}

inline GroupMap identity_map(const SymGroup& g) {
  return make_map(g.fg_part(), g.fg_part(), IntMatrix::identity(g.generator_count()));
}

/// F2 matrix between elementary 2-groups of the matching ranks.
inline GroupMap f2_map(const F2Matrix& m) {
  return make_map(SymGroup::elementary_two(m.cols()), SymGroup::elementary_two(m.rows()), to_int(m));
}

/// g o f.
inline GroupMap compose(const GroupMap& g, const GroupMap& f) {
  if (!(f.codomain == g.domain)) throw Error(Signal::ShapeMismatch, "maps are not composable");
  return make_map(f.domain, g.codomain, g.matrix * f.matrix);
}

namespace detail {
inline void require_fg(const GroupMap& f) {
  if (f.divisible != DivisibleBehavior::Absent || !f.domain.is_finitely_generated() ||
      !f.codomain.is_finitely_generated())
    throw Error(Signal::UnsupportedDivisibleMap, "kernel/cokernel need finitely generated groups");
}

// Generators (columns, in domain coordinates) of {x : f(x) = 0 in codomain}.
inline IntMatrix kernel_lattice(const GroupMap& f) {
  const std::size_t m = f.domain.generator_count();
  IntMatrix k = integer_kernel(hconcat(f.matrix, diagonal(f.codomain.relation_orders())));
  return k.row_range(0, m);
}

// Quotient of lattice spanned by `num` by lattice spanned by `den` (den inside num).
inline CanonicalForm lattice_quotient(const IntMatrix& num, const IntMatrix& den) {
  const std::size_t q = num.cols();
  IntMatrix rel = integer_kernel(hconcat(num, den)).row_range(0, q).transposed();
  return canonicalize(rel, q);
}
}  // namespace detail

struct KernelResult {
  SymGroup group;
  GroupMap inclusion;  // kernel -> domain
};

inline KernelResult kernel_with_inclusion(const GroupMap& f) {
  detail::require_fg(f);
  IntMatrix lattice = detail::kernel_lattice(f);
  CanonicalForm cf = detail::lattice_quotient(lattice, diagonal(f.domain.relation_orders()));
  GroupMap inc = make_map(cf.group, f.domain, lattice * cf.from_canonical);
  return {cf.group, std::move(inc)};
}

struct CokernelResult {
  SymGroup group;
  GroupMap projection;  // codomain -> cokernel
};

inline CokernelResult cokernel_with_projection(const GroupMap& f) {
  detail::require_fg(f);
  const std::size_t n = f.codomain.generator_count();
  IntMatrix rel = hconcat(f.matrix, diagonal(f.codomain.relation_orders())).transposed();
  CanonicalForm cf = canonicalize(rel, n);
  GroupMap proj = make_map(f.codomain, cf.group, cf.to_canonical);
  return {cf.group, std::move(proj)};
}

inline SymGroup kernel(const GroupMap& f) { return kernel_with_inclusion(f).group; }
inline SymGroup cokernel(const GroupMap& f) { return cokernel_with_projection(f).group; }

inline SymGroup image(const GroupMap& f) {
  detail::require_fg(f);
  IntMatrix lattice = detail::kernel_lattice(f);
  return canonicalize(lattice.transposed(), f.domain.generator_count()).group;
}

/// F2-rank of the induced map f/2 : A/2A -> B/2B.
inline std::size_t image_rank2(const GroupMap& f) {
  detail::require_fg(f);
  const auto d = f.domain.relation_orders();
  const auto e = f.codomain.relation_orders();
  auto even = [](const Integer& x) { return !boost::multiprecision::bit_test(x, 0); };
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (even(e[i])) rows.push_back(i);
  for (std::size_t j = 0; j < d.size(); ++j)
    if (even(d[j])) cols.push_back(j);
  F2Matrix m(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      m(a, b) = static_cast<std::uint8_t>(
          boost::multiprecision::bit_test(abs(f.matrix(rows[a], cols[b])), 0));
  return f2_rank(m);
}

/// True when every column of the matrix is zero in the codomain.
inline bool is_zero_map(const GroupMap& f) {
  const auto e = f.codomain.relation_orders();
  for (std::size_t i = 0; i < f.matrix.rows(); ++i)
    for (std::size_t j = 0; j < f.matrix.cols(); ++j)
      if (!detail::divides(e[i], f.matrix(i, j))) return false;
  return true;
}

/// ker(g) / im(f) at the middle object of A -f-> B -g-> C. Requires g o f = 0.
inline SymGroup homology(const GroupMap& f, const GroupMap& g) {
  detail::require_fg(f);
  detail::require_fg(g);
  if (!(f.codomain == g.domain)) throw Error(Signal::ShapeMismatch, "maps are not composable");
  IntMatrix ker_g = detail::kernel_lattice(g);
  IntMatrix im_f = hconcat(f.matrix, diagonal(f.codomain.relation_orders()));
  return detail::lattice_quotient(ker_g, im_f).group;
}

struct ExactnessReport {
  bool exact = true;
  std::optional<std::size_t> failing_node;  // node k sits between maps k-1 and k
  std::string detail;
};

/// Checks exactness at every interior node of A0 -> A1 -> ... -> An.
inline ExactnessReport check_exact(const std::vector<GroupMap>& seq) {
  for (const auto& f : seq) detail::require_fg(f);
  for (std::size_t k = 1; k < seq.size(); ++k)
    if (!(seq[k - 1].codomain == seq[k].domain))
      throw Error(Signal::ShapeMismatch, "map " + std::to_string(k - 1) + " lands in " +
                                             seq[k - 1].codomain.render() + " but map " +
                                             std::to_string(k) + " starts at " +
                                             seq[k].domain.render());
  ExactnessReport report;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    const GroupMap& in = seq[k - 1];
    const GroupMap& out = seq[k];
    GroupMap comp = make_map(in.domain, out.codomain, out.matrix * in.matrix);
    std::ostringstream why;
    if (!is_zero_map(comp)) {
      why << "composite through node " << k << " (" << in.codomain << ") is nonzero";
    } else {
      SymGroup h = homology(in, out);
      if (h.is_zero()) continue;
      why << "homology " << h << " at node " << k << " (" << in.codomain << ")";
    }
    report.exact = false;
    report.failing_node = k;
    report.detail = why.str();
    return report;
  }
  return report;
}

}  // namespace wittkit::groups

#pragma once

// Total Stiefel-Whitney classes of metabolic symmetric bundles, computed in a
// graded F2-algebra given by structure constants.

#include "wittkit/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wittkit::sw {

/// An element of the ring as an F2 vector on the basis.
using Element = std::vector<std::uint8_t>;

/// Graded commutative F2-algebra with basis b_0 = 1, b_1, ..., b_{N-1}.
/// Products of basis elements are sums of basis elements (sparse lists).
class Ring {
 public:
  Ring(std::string name, std::vector<int> degrees,
       std::vector<std::vector<std::vector<std::size_t>>> table,
       std::optional<std::size_t> minus_one = std::nullopt, std::vector<std::string> labels = {})
      : name_(std::move(name)), degrees_(std::move(degrees)), table_(std::move(table)),
        minus_one_(minus_one), labels_(std::move(labels)) {
    if (degrees_.empty() || degrees_[0] != 0)
      throw Error(Signal::RingMismatch, "basis must start with the unit in degree 0");
    top_ = *std::max_element(degrees_.begin(), degrees_.end());
    if (labels_.empty()) {
      labels_.push_back("1");
      for (std::size_t i = 1; i < degrees_.size(); ++i) labels_.push_back("b" + std::to_string(i));
    }
    if (labels_.size() != degrees_.size()) throw Error(Signal::RingMismatch, "one label per basis element");
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return degrees_.size(); }
  int degree_of(std::size_t basis) const { return degrees_[basis]; }
  int top_degree() const { return top_; }

  Element zero() const { return Element(dim(), 0); }
  Element one() const { return basis(0); }
  Element basis(std::size_t i) const {
    Element e = zero();
    e.at(i) = 1;
    return e;
  }
  /// The class of -1 in degree 1; zero when -1 is a square (e.g. over C).
  Element minus_one() const { return minus_one_ ? basis(*minus_one_) : zero(); }
  bool has_minus_one() const { return minus_one_.has_value(); }

  Element add(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = a[i] ^ b[i];
    return c;
  }

  Element mul(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element c = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (!b[j]) continue;
        for (std::size_t k : table_[i][j]) c[k] ^= 1;
      }
    }
    return c;
  }

  const std::string& label(std::size_t i) const { return labels_.at(i); }

  /// Sum of basis labels, "0" for zero.
  std::string render(const Element& a) const {
    check(a);
    std::string out;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!a[i]) continue;
      if (!out.empty()) out += " + ";
      out += labels_[i];
    }
    return out.empty() ? "0" : out;
  }

  /// Inverse of render: labels joined by '+', whitespace ignored.
  Element parse(const std::string& text) const {
    std::string compact;
    for (char ch : text)
      if (ch != ' ' && ch != '\t') compact += ch;
    Element e = zero();
    if (compact == "0") return e;
    std::size_t pos = 0;
    while (true) {
      const auto plus = compact.find('+', pos);
      const std::string term = compact.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
      auto it = std::find(labels_.begin(), labels_.end(), term);
      if (it == labels_.end()) throw Error(Signal::ParseError, "'" + term + "' is not a basis label of " + name_);
      e[static_cast<std::size_t>(it - labels_.begin())] ^= 1;
      if (plus == std::string::npos) break;
      pos = plus + 1;
    }
    return e;
  }

  bool is_zero(const Element& a) const {
    check(a);
    return std::all_of(a.begin(), a.end(), [](std::uint8_t x) { return x == 0; });
  }

  /// Degree of a nonzero homogeneous element; nullopt for 0 or mixed degrees.
  std::optional<int> degree(const Element& a) const {
    check(a);
    std::optional<int> d;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!a[i]) continue;
      if (d && *d != degrees_[i]) return std::nullopt;
      d = degrees_[i];
    }
    return d;
  }

  bool is_homogeneous(const Element& a, int d) const {
    if (is_zero(a)) return true;
    auto k = degree(a);
    return k && *k == d;
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.name_ == b.name_ && a.degrees_ == b.degrees_ && a.table_ == b.table_ &&
           a.minus_one_ == b.minus_one_ && a.labels_ == b.labels_;
  }

 private:
  void check(const Element& a) const {
    if (a.size() != dim()) throw Error(Signal::RingMismatch, "element does not belong to ring " + name_);
  }

  std::string name_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::vector<std::size_t>>> table_;
  std::optional<std::size_t> minus_one_;
  std::vector<std::string> labels_;
  int top_ = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

/// w_t = sum_k w_k t^k with w_k of degree k, truncated at the top degree.
struct TruncatedClass {
  RingPtr ring;
  std::vector<Element> coefficients;  // index k holds w_k

  Element w(std::size_t k) const {
    return k < coefficients.size() ? coefficients[k] : ring->zero();
  }
  friend bool operator==(const TruncatedClass& a, const TruncatedClass& b) {
    if (!(*a.ring == *b.ring)) return false;
    const std::size_t n = std::max(a.coefficients.size(), b.coefficients.size());
    for (std::size_t k = 0; k < n; ++k)
      if (a.w(k) != b.w(k)) return false;
    return true;
  }
};

inline TruncatedClass unit_class(const RingPtr& r) {
  TruncatedClass c{r, std::vector<Element>(static_cast<std::size_t>(r->top_degree()) + 1, r->zero())};
  c.coefficients[0] = r->one();
  return c;
}

/// Builds a class from its coefficients, checking w_0 = 1 and homogeneity.
inline TruncatedClass make_class(const RingPtr& r, std::vector<Element> coeffs) {
  TruncatedClass c = unit_class(r);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!r->is_homogeneous(coeffs[k], static_cast<int>(k)))
      throw Error(Signal::Truncation, "coefficient of t^" + std::to_string(k) + " is not of degree " +
                                          std::to_string(k));
    if (k > static_cast<std::size_t>(r->top_degree())) {
      if (!r->is_zero(coeffs[k]))
        throw Error(Signal::Truncation, "coefficient beyond the top degree of " + r->name());
      continue;
    }
    c.coefficients[k] = coeffs[k];
  }
  if (c.coefficients[0] != r->one()) throw Error(Signal::Truncation, "total class must start with 1");
  return c;
}

/// Whitney sum: product of total classes, truncated at the top degree.
inline TruncatedClass sw_whitney_product(const TruncatedClass& a, const TruncatedClass& b) {
  if (!(*a.ring == *b.ring)) throw Error(Signal::RingMismatch, "classes live in different rings");
  const Ring& r = *a.ring;
  TruncatedClass c = unit_class(a.ring);
  const std::size_t top = static_cast<std::size_t>(r.top_degree());
  for (std::size_t k = 0; k <= top; ++k) {
    Element sum = r.zero();
    for (std::size_t i = 0; i <= k; ++i) sum = r.add(sum, r.mul(a.w(i), b.w(k - i)));
    c.coefficients[k] = sum;
  }
  return c;
}

/// Total class of a metabolic bundle whose Lagrangian has rank n and Chern
/// classes c_0 = 1, c_1, ... (c_j of degree 2j):
///   w_t = sum_j (1 + m t)^{n-j} c_j t^{2j},  m the class of -1.
/// Over C the class m vanishes and w_{2j} = c_j.
inline TruncatedClass sw_metabolic_total(const std::vector<Element>& chern, std::size_t rank,
                                         const RingPtr& ring, bool complex) {
  const Ring& r = *ring;
  const Element m = complex ? r.zero() : r.minus_one();
  TruncatedClass total{ring, std::vector<Element>(static_cast<std::size_t>(r.top_degree()) + 1, r.zero())};
  TruncatedClass one_plus_mt = unit_class(ring);
  if (one_plus_mt.coefficients.size() > 1) one_plus_mt.coefficients[1] = m;

  for (std::size_t j = 0; j < chern.size(); ++j) {
    const Element& c = chern[j];
    if (!r.is_homogeneous(c, static_cast<int>(2 * j)))
      throw Error(Signal::Truncation, "c_" + std::to_string(j) + " is not of degree " + std::to_string(2 * j));
    if (j == 0 && c != r.one()) throw Error(Signal::Truncation, "c_0 must be 1");
    if (r.is_zero(c)) continue;
    if (j > rank) throw Error(Signal::Truncation, "c_" + std::to_string(j) + " exceeds the rank");
    TruncatedClass power = unit_class(ring);
    for (std::size_t e = 0; e < rank - j; ++e) power = sw_whitney_product(power, one_plus_mt);
    for (std::size_t k = 0; k + 2 * j < total.coefficients.size(); ++k)
      total.coefficients[k + 2 * j] = r.add(total.coefficients[k + 2 * j], r.mul(power.w(k), c));
  }
  if (chern.empty()) throw Error(Signal::Truncation, "Chern classes must include c_0 = 1");
  return total;
}

// ---------------------------------------------------------------------------
// Ring catalog

namespace detail {
using Table = std::vector<std::vector<std::vector<std::size_t>>>;

inline Table empty_table(std::size_t n) { return Table(n, std::vector<std::vector<std::size_t>>(n)); }

inline void unit_products(Table& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[0][i] = {i};
    t[i][0] = {i};
  }
}

/// Ring 1, x_1..x_k in degree 2, pt in degree 4 with x_i x_j = Q_ij pt.
inline RingPtr surface_ring(std::string name, const std::vector<std::vector<int>>& q) {
  const std::size_t k = q.size();
  std::vector<int> deg{0};
  for (std::size_t i = 0; i < k; ++i) deg.push_back(2);
  deg.push_back(4);
  std::vector<std::string> labels{"1"};
  for (std::size_t i = 0; i < k; ++i) labels.push_back("x" + std::to_string(i + 1));
  labels.push_back("pt");
  Table t = empty_table(k + 2);
  unit_products(t);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (q[i][j] % 2 != 0) t[i + 1][j + 1] = {k + 1};
  return std::make_shared<const Ring>(std::move(name), deg, t, std::nullopt, labels);
}
}  // namespace detail

inline RingPtr point_ring() {
  detail::Table t = detail::empty_table(1);
  t[0][0] = {0};
  return std::make_shared<const Ring>("point", std::vector<int>{0}, t, std::nullopt, std::vector<std::string>{"1"});
}

/// F2[h]/h^{d+1}, h in degree 2.
inline RingPtr projective_space_ring(std::size_t d) {
  std::vector<int> deg;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k <= d; ++k) {
    deg.push_back(static_cast<int>(2 * k));
    labels.push_back(k == 0 ? "1" : k == 1 ? "h" : "h^" + std::to_string(k));
  }
  detail::Table t = detail::empty_table(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; i + j <= d; ++j) t[i][j] = {i + j};
  return std::make_shared<const Ring>("P" + std::to_string(d), deg, t, std::nullopt, labels);
}

/// Cohomology of a closed genus-g surface: a_i b_i = b_i a_i = w.
inline RingPtr curve_ring(std::size_t g) {
  std::vector<int> deg{0};
  for (std::size_t i = 0; i < 2 * g; ++i) deg.push_back(1);
  deg.push_back(2);
  std::vector<std::string> labels{"1"};
  for (std::size_t i = 0; i < g; ++i) labels.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < g; ++i) labels.push_back("b" + std::to_string(i + 1));
  labels.push_back("w");
  const std::size_t top = 2 * g + 1;
  detail::Table t = detail::empty_table(top + 1);
  detail::unit_products(t);
  for (std::size_t i = 0; i < g; ++i) {
    t[1 + i][1 + g + i] = {top};
    t[1 + g + i][1 + i] = {top};
  }
  return std::make_shared<const Ring>("curve(" + std::to_string(g) + ")", deg, t, std::nullopt, labels);
}

/// Blow-up of P^2 in a point: H^2 = E^2 = pt mod 2, HE = 0.
inline RingPtr blowup_p2_ring() { return detail::surface_ring("blowup_p2", {{1, 0}, {0, 1}}); }

/// K3 lattice 3U + 2E8(-1) reduced mod 2.
inline RingPtr k3_ring() {
  std::vector<std::vector<int>> q(22, std::vector<int>(22, 0));
  for (std::size_t u = 0; u < 3; ++u) {
    q[2 * u][2 * u + 1] = 1;
    q[2 * u + 1][2 * u] = 1;
  }
  // E8 Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 attached to node 4
  const std::array<std::pair<int, int>, 7> edges{{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}}};
  for (std::size_t block = 0; block < 2; ++block) {
    const std::size_t off = 6 + 8 * block;
    for (auto [a, b] : edges) {
      q[off + a][off + b] = 1;
      q[off + b][off + a] = 1;
    }
  }
  return detail::surface_ring("k3", q);
}

/// Generic test ring F2[m, x_1, x_2, x_3, x_4] truncated above degree 8, with
/// m in degree 1 playing -1 and x_j in degree 2j playing c_j.
inline RingPtr generic_ring() {
  using Mono = std::array<int, 5>;  // exponents of m, x1..x4
  const std::array<int, 5> weight{1, 2, 4, 6, 8};
  const int top = 8;
  std::vector<Mono> monos;
  auto deg_of = [&](const Mono& e) {
    int d = 0;
    for (std::size_t i = 0; i < 5; ++i) d += e[i] * weight[i];
    return d;
  };
  for (int d = 0; d <= top; ++d)
    for (int a = 0; a <= top; ++a)
      for (int b = 0; 2 * b <= top; ++b)
        for (int c = 0; 4 * c <= top; ++c)
          for (int e = 0; 6 * e <= top; ++e)
            for (int f = 0; 8 * f <= top; ++f) {
              Mono mono{a, b, c, e, f};
              if (deg_of(mono) == d) monos.push_back(mono);
            }
  std::map<Mono, std::size_t> index;
  std::vector<int> deg;
  std::vector<std::string> labels;
  const std::array<const char*, 5> var{"m", "x1", "x2", "x3", "x4"};
  for (std::size_t i = 0; i < monos.size(); ++i) {
    index[monos[i]] = i;
    deg.push_back(deg_of(monos[i]));
    std::string l;
    for (std::size_t k = 0; k < 5; ++k) {
      if (monos[i][k] == 0) continue;
      if (!l.empty()) l += "*";
      l += var[k];
      if (monos[i][k] > 1) l += "^" + std::to_string(monos[i][k]);
    }
    labels.push_back(l.empty() ? "1" : l);
  }
  detail::Table t = detail::empty_table(monos.size());
  for (std::size_t i = 0; i < monos.size(); ++i)
    for (std::size_t j = 0; j < monos.size(); ++j) {
      Mono p;
      for (std::size_t k = 0; k < 5; ++k) p[k] = monos[i][k] + monos[j][k];
      auto it = index.find(p);
      if (it != index.end()) t[i][j] = {it->second};
    }
  return std::make_shared<const Ring>("generic", deg, t, index.at(Mono{1, 0, 0, 0, 0}), labels);
}

/// Basis index of a monomial m^a x1^b x2^c x3^d x4^e in generic_ring().
inline std::optional<std::size_t> generic_monomial(const Ring& r, std::array<int, 5> exps) {
  // the ring is built in degree order, so rebuild the same enumeration
  const std::array<int, 5> weight{1, 2, 4, 6, 8};
  int target = 0;
  for (std::size_t i = 0; i < 5; ++i) target += exps[i] * weight[i];
  if (target > r.top_degree()) return std::nullopt;
  std::size_t idx = 0;
  for (int d = 0; d <= r.top_degree(); ++d)
    for (int a = 0; a <= 8; ++a)
      for (int b = 0; 2 * b <= 8; ++b)
        for (int c = 0; 4 * c <= 8; ++c)
          for (int e = 0; 6 * e <= 8; ++e)
            for (int f = 0; 8 * f <= 8; ++f) {
              if (a + 2 * b + 4 * c + 6 * e + 8 * f != d) continue;
              if (std::array<int, 5>{a, b, c, e, f} == exps) return idx;
              ++idx;
            }
  return std::nullopt;
}

/// Named rings used by the catalog.
inline std::vector<RingPtr> catalog_rings() {
  std::vector<RingPtr> out{point_ring()};
  for (std::size_t g = 0; g <= 3; ++g) out.push_back(curve_ring(g));
  out.push_back(projective_space_ring(1));
  out.push_back(projective_space_ring(2));
  out.push_back(blowup_p2_ring());
  out.push_back(k3_ring());
  return out;
}

inline RingPtr ring_by_name(const std::string& name) {
  if (name == "generic") return generic_ring();
  for (const auto& r : catalog_rings())
    if (r->name() == name) return r;
  if (name.rfind("curve(", 0) == 0 && name.back() == ')') {
    try {
      return curve_ring(std::stoul(name.substr(6, name.size() - 7)));
    } catch (const std::exception&) {
    }
  }
  if (name.size() > 1 && name[0] == 'P') {
    try {
      return projective_space_ring(std::stoul(name.substr(1)));
    } catch (const std::exception&) {
    }
  }
  throw Error(Signal::UnknownName, "unknown ring '" + name + "'");
}

}  // namespace wittkit::sw

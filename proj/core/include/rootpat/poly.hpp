#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rootpat/field.hpp"

namespace rootpat {

/// Exponent vector (i_1, ..., i_n) of a monomial X_1^{i_1} ... X_n^{i_n}.
struct Monomial {
  std::vector<std::uint32_t> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> e) : exponents(std::move(e)) {}
  Monomial(std::initializer_list<std::uint32_t> e) : exponents(e) {}
  static Monomial one(std::size_t n) { return Monomial(std::vector<std::uint32_t>(n, 0)); }

  std::size_t vars() const { return exponents.size(); }
  std::uint32_t operator[](std::size_t i) const { return exponents[i]; }
  std::uint32_t& operator[](std::size_t i) { return exponents[i]; }
  std::uint64_t total_degree() const;

  auto operator<=>(const Monomial&) const = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Monomial order: lexicographic or graded-lexicographic over a fixed
/// variable priority (priority[0] is the most significant variable).
struct MonomialOrder {
  enum class Kind { Lex, GradedLex };

  Kind kind = Kind::Lex;
  std::vector<std::size_t> priority;  // empty means X_1 > X_2 > ... > X_n

  static MonomialOrder lex() { return {Kind::Lex, {}}; }
  static MonomialOrder graded_lex() { return {Kind::GradedLex, {}}; }

  bool less(const Monomial& a, const Monomial& b) const;
};

/// Dense univariate polynomial b_0 + b_1 X + ... ; trailing zeros trimmed.
class UniPoly {
 public:
  explicit UniPoly(FieldPtr field, std::vector<Elem> coeffs = {});

  const FieldPtr& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }
  /// Coefficient b_i, zero above the degree.
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Elem{}; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  std::vector<std::uint32_t> support() const;
  Elem evaluate(Elem x) const;

  bool operator==(const UniPoly& other) const;

 private:
  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

/// Sparse polynomial in n variables: Monomial -> nonzero coefficient.
class MultiPoly {
 public:
  MultiPoly(FieldPtr field, std::size_t n);
  static MultiPoly constant(FieldPtr field, std::size_t n, Elem c);
  static MultiPoly from_uni(const UniPoly& p);

  const FieldPtr& field() const { return field_; }
  std::size_t vars() const { return n_; }
  const std::map<Monomial, Elem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Sets a coefficient; a zero coefficient removes the term.
  void set(const Monomial& m, Elem c);
  /// Adds c to the coefficient of m.
  void accumulate(const Monomial& m, Elem c);
  Elem coeff(const Monomial& m) const;

  /// Key set of the term map, ascending.
  std::vector<Monomial> support() const;
  std::uint32_t degree_in(std::size_t var) const;
  Elem evaluate(std::span<const Elem> point) const;
  /// Lossless conversion for n = 1; throws otherwise.
  UniPoly to_uni() const;

  bool operator==(const MultiPoly& other) const;

 private:
  FieldPtr field_;
  std::size_t n_;
  std::map<Monomial, Elem> terms_;
};

/// Factor root sets S_1, ..., S_n ⊆ F_q^* of a product-form polynomial.
/// T_i = F_q^* \ S_i and m = prod t_i are derived on demand.
class RootBoxes {
 public:
  RootBoxes(FieldPtr field, std::vector<std::vector<Elem>> roots);

  const FieldPtr& field() const { return field_; }
  std::size_t vars() const { return roots_.size(); }
  const std::vector<Elem>& S(std::size_t i) const { return roots_[i]; }
  std::vector<Elem> T(std::size_t i) const;
  std::uint32_t s(std::size_t i) const { return static_cast<std::uint32_t>(roots_[i].size()); }
  std::uint32_t t(std::size_t i) const { return field_->group_order() - s(i); }
  std::uint64_t m() const;

  /// Builds boxes from complement sets T_i instead of root sets.
  static RootBoxes from_complements(FieldPtr field, const std::vector<std::vector<Elem>>& complements);

 private:
  FieldPtr field_;
  std::vector<std::vector<Elem>> roots_;
};

/// Axis node lists A_1, ..., A_n of a product grid.
using Grid = std::vector<std::vector<Elem>>;

/// prod_{a in S} (X - a), monic of degree |S|.
UniPoly from_roots(const FieldPtr& field, std::span<const Elem> S);

/// prod_i prod_{x in roots[i]} (X_i - x) for arbitrary per-axis root lists.
MultiPoly root_product(const FieldPtr& field, const std::vector<std::vector<Elem>>& roots);

/// Tensor product of the per-axis from_roots polynomials.
MultiPoly product_form(const RootBoxes& boxes);

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

/// X^k * P reduced modulo {X_i^{q-1} - 1}: each exponent i_s becomes
/// (i_s + k_s) mod (q-1). All exponents of P must lie below q-1.
MultiPoly cyclic_shift(const MultiPoly& p, const Monomial& k);

/// Number of points of (F_q^*)^n where p does not vanish.
std::uint64_t nonroot_count(const MultiPoly& p);
std::uint64_t nonroot_count(const UniPoly& p);

/// The order-maximal monomial of the support. Throws on the zero polynomial.
Monomial leading_monomial(const MultiPoly& p, const MonomialOrder& order);

/// Values of p at every grid point, row-major with the last axis fastest.
std::vector<Elem> evaluate_on_grid(const MultiPoly& p, const Grid& grid);

/// The unique polynomial with deg_{X_i} < |A_i| taking `values` (row-major,
/// last axis fastest) on the grid.
MultiPoly interpolate(const FieldPtr& field, const Grid& grid, std::span<const Elem> values);

/// Exact division of g by prod_i prod_{x in factor_roots[i]} (X_i - x).
///
/// Requires deg_{X_i} g < |A_i| and factor_roots[i] ⊊ A_i; throws when
/// that hypothesis fails. Returns the quotient, or nullopt when some linear
/// factor leaves a nonzero remainder.
std::optional<MultiPoly> divide_by_root_product(const MultiPoly& g, const Grid& grid,
                                                const std::vector<std::vector<Elem>>& factor_roots);

}  // namespace rootpat

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rootpat/field.hpp"
#include "rootpat/poly.hpp"

namespace rootpat {

/// U(q, m, n): exponent vectors in [0, q-2]^n whose co-degree product
/// prod_s (q-1-i_s) is at most m.
///
/// For n = 1 this is the run of the top m exponents {q-1-m, ..., q-2}.
class USet {
 public:
  USet(std::uint32_t q, std::uint64_t m, std::size_t n);

  std::uint32_t q() const { return q_; }
  std::uint64_t m() const { return m_; }
  std::size_t vars() const { return n_; }

  bool contains(std::span<const std::uint32_t> exponents) const;
  bool contains(const Monomial& mono) const { return contains(mono.exponents); }
  /// All members in lexicographic order. Throws when (q-1)^n exceeds `limit`.
  std::vector<Monomial> members(std::uint64_t limit = 1u << 24) const;
  std::uint64_t size() const;

 private:
  std::uint32_t q_;
  std::uint64_t m_;
  std::size_t n_;
};

/// Per-axis window sets: axis i holds {j d_i + r : 0 <= j < (q-1)/d_i,
/// 0 <= r <= d_i - t_i}; members are the Cartesian product.
class WSet {
 public:
  struct Axis {
    std::uint32_t d;
    std::uint32_t t;
  };

  WSet(std::uint32_t q, std::vector<Axis> axes);

  std::uint32_t q() const { return q_; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::vector<std::uint32_t> axis_exponents(std::size_t i) const;
  bool contains(std::span<const std::uint32_t> exponents) const;
  bool contains(const Monomial& mono) const { return contains(mono.exponents); }
  std::vector<Monomial> members() const;

 private:
  std::uint32_t q_;
  std::vector<Axis> axes_;
};

struct Theorem1Result {
  bool holds = true;
  std::optional<std::uint32_t> window;  // start of an all-zero window of length m
  std::uint64_t m = 0;
  std::uint32_t longest_zero_run = 0;   // cyclic, over b_0..b_{q-2}
};

/// Scans every cyclic window of m consecutive coefficients of p (m = number
/// of non-roots in F_q^*) and reports the first all-zero one, if any.
Theorem1Result theorem1_check(const UniPoly& p);

/// prod_s (q-1-i_s) for the leading monomial of p under `order`.
std::uint64_t footprint_bound(const MultiPoly& p, const MonomialOrder& order);

struct Theorem3Result {
  bool holds = true;
  std::optional<Monomial> shift;  // first k whose shifted support misses U(q,m,n)
  std::uint64_t m = 0;
};

/// Checks that every cyclic shift of p meets U(q, m, n), m = nonroot_count(p).
/// Shifts are scanned in lexicographic order.
Theorem3Result theorem3_check(const MultiPoly& p);

enum class GapMode {
  Window,  // univariate: m-1 zero coefficients b_k..b_{k+m-2}, k in [1, q-2m]
  Shift,   // multivariate: Supp(X^k P mod ...) ∩ U(q, m-1, n) = ∅, k in [1, q-2]^n
};

/// Witness for a zero gap. In window mode `shift` holds the single start
/// index k; in shift mode the exponent vector k.
struct GapCertificate {
  GapMode mode = GapMode::Shift;
  Monomial shift;
  std::uint32_t q = 0;
  std::uint64_t avoided_m = 0;  // the certificate avoids U(q, avoided_m, n)
  std::size_t n = 1;
  bool verified = false;
};

/// Exhaustive gap search. Throws when m < 2 or p is not of the product form
/// the mode requires.
std::optional<GapCertificate> gap_search(const MultiPoly& p, std::uint64_t m, GapMode mode);
std::optional<GapCertificate> gap_search(const RootBoxes& boxes, GapMode mode);

/// Re-verifies a gap certificate against p from scratch.
bool verify_gap(const MultiPoly& p, const GapCertificate& cert);

struct CosetCertificate {
  std::vector<CosetContainment> axes;
};

/// Per-axis coset containment of T_i. Every T_i must be nonempty and not every
/// s_i may equal q-2; an axis with T_i = F_q^* yields none.
std::optional<CosetCertificate> coset_condition(const RootBoxes& boxes);

/// Builds the shift k = (d_1, ..., d_n) from a coset certificate and checks
/// Supp(shift) ⊆ W, W ∩ U(q, m-1, n) = ∅. Throws VerificationError if any
/// check fails.
GapCertificate constructive_shift(const RootBoxes& boxes, const CosetCertificate& cert);

struct Prop1Report {
  std::uint32_t d = 0;
  bool within_windows = false;
  bool endpoints_nonzero = false;

  bool ok() const { return within_windows && endpoints_nonzero; }
};

/// Window structure of prod_{a in S}(X - a) for subgroup order d, where
/// T = F_q^* \ S must lie in a coset of the order-d subgroup.
Prop1Report prop1_structure_check(const FieldPtr& field, std::span<const Elem> S, std::uint32_t d);
/// The same check for every valid subgroup order.
std::vector<Prop1Report> prop1_structure_check_all(const FieldPtr& field, std::span<const Elem> S);

/// Number of maximal cyclic runs of at least m-1 zero coefficients in
/// b_0..b_{q-2}. p must be a product of distinct linear factors over F_q^*
/// whose non-root set lies in a proper coset.
std::uint64_t disjoint_runs_count(const UniPoly& p, std::uint64_t m);

}  // namespace rootpat

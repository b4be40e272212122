#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rootpat {

/// Raw element of some finite field.
///
/// The representation is the canonical residue: for F_p an integer in
/// [0, p), for F_{p^k} the coefficient vector c_0 + c_1 x + ... packed as
/// c_0 + c_1 p + c_2 p^2 + ...  A raw Elem carries no field pointer; it is
/// only meaningful together with the Field that produced it.
struct Elem {
  std::uint32_t rep = 0;

  constexpr bool is_zero() const { return rep == 0; }
  constexpr auto operator<=>(const Elem&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Multiplicative subgroup {x : x^order = 1} of F_q^*.
struct Subgroup {
  std::uint32_t order = 1;
  std::uint32_t index = 1;  // (q-1)/order; elements are generator^(index*j)
  std::vector<Elem> elements;

  bool proper(std::uint32_t q) const { return order < q - 1; }
};

/// Certifies that a set T satisfies T ⊆ gamma * subgroup.
struct CosetWitness {
  Elem gamma;
  Subgroup subgroup;
};

/// Result of a successful coset search. `witness` uses the smallest valid
/// subgroup order; `valid_orders` lists every proper order that works.
struct CosetContainment {
  CosetWitness witness;
  std::vector<std::uint32_t> valid_orders;
};

/// Largest field size accepted; log/antilog tables are sized by q.
inline constexpr std::uint32_t kMaxFieldSize = 1u << 20;

/// F_q for q = p^k, with exp/log tables built against a primitive element.
///
/// Instances are immutable and shared through FieldPtr.
class Field {
 public:
  /// Builds F_{p^k}. `modulus` lists the coefficients c_k, ..., c_0 of a
  /// degree-k polynomial over F_p (highest first). When omitted, the
  /// smallest irreducible polynomial (ordered by c_{k-1}, ..., c_0) whose
  /// root x is primitive is chosen. For k = 1 the modulus is ignored.
  static FieldPtr make(std::uint32_t p, std::uint32_t k,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t size() const { return q_; }
  /// q - 1, the order of F_q^*.
  std::uint32_t group_order() const { return q_ - 1; }
  /// Monic modulus, highest coefficient first; empty when k = 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem generator() const { return generator_; }
  /// Embeds an integer as an element of the prime subfield.
  Elem from_int(std::int64_t v) const;
  bool contains(Elem a) const { return a.rep < q_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return Elem{neg_[a.rep]}; }
  Elem mul(Elem a, Elem b) const {
    if (a.rep == 0 || b.rep == 0) return Elem{0};
    return Elem{exp_[log_[a.rep] + log_[b.rep]]};
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::int64_t e) const;

  /// generator^j for any integer j (reduced modulo q - 1).
  Elem exp(std::int64_t j) const;
  /// Discrete logarithm in [0, q-2]. Throws on zero.
  std::uint32_t dlog(Elem a) const;
  /// Unchecked dlog for hot loops; a must be nonzero.
  std::uint32_t dlog_unchecked(Elem a) const { return log_[a.rep]; }
  /// generator^j for j in [0, 2(q-1)); unchecked.
  Elem exp_unchecked(std::uint32_t j) const { return Elem{exp_[j]}; }

  /// All nonzero elements in representation order (1, 2, ..., q-1).
  std::vector<Elem> nonzero_elements() const;

  /// One subgroup per divisor of q - 1, ascending by order.
  std::vector<Subgroup> subgroups() const;
  Subgroup subgroup(std::uint32_t order) const;

  /// Structural identity: same p, k and modulus.
  bool same_as(const Field& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
  }

 private:
  Field() = default;

  std::uint32_t p_ = 0;
  std::uint32_t k_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem generator_;
  std::vector<std::uint32_t> exp_;  // 2(q-1) entries
  std::vector<std::uint32_t> log_;  // q entries, log_[0] unused
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> add_table_;  // q*q entries for small q, else empty
};

/// Element bound to its field, for checked arithmetic outside hot loops.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elem value);

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  FieldElement operator+(const FieldElement& b) const;
  FieldElement operator-(const FieldElement& b) const;
  FieldElement operator*(const FieldElement& b) const;
  FieldElement operator/(const FieldElement& b) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;
  std::uint32_t dlog() const { return field_->dlog(value_); }

  bool operator==(const FieldElement& b) const;

 private:
  void require_same_field(const FieldElement& b) const;

  FieldPtr field_;
  Elem value_;
};

/// Decides whether T ⊆ gamma*H for some proper subgroup H of F_q^*.
///
/// With t0 the first element of T, let e = gcd(q-1, dlog(t) - dlog(t0));
/// containment holds iff e > 1, with smallest order d = (q-1)/e and
/// gamma = t0. Throws on empty T or elements outside F_q^*.
std::optional<CosetContainment> coset_containment(const Field& field, std::span<const Elem> T);

bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> divisors(std::uint32_t n);

}  // namespace rootpat

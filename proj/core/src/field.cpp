#include "rootpat/field.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "rootpat/error.hpp"

namespace rootpat {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

namespace {

// Polynomials over F_p as coefficient vectors, lowest degree first. Only
// used while constructing a field; afterwards everything is table driven.
using PrimePoly = std::vector<std::uint32_t>;

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw Error("element not invertible modulo p");
  return static_cast<std::uint32_t>((t % p + p) % p);
}

// Remainder of a modulo a monic b.
PrimePoly poly_mod(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * std::uint64_t{b[i]}) % p);
    trim(a);
  }
  return a;
}

PrimePoly digits_of(std::uint32_t rep, std::uint32_t p, std::uint32_t k) {
  PrimePoly d(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    d[i] = rep % p;
    rep /= p;
  }
  return d;
}

std::uint32_t rep_of(const PrimePoly& d, std::uint32_t p) {
  std::uint32_t rep = 0;
  for (std::size_t i = d.size(); i-- > 0;) rep = rep * p + d[i];
  return rep;
}

// Multiplication in F_p[x]/(modulus) on packed representations.
struct SlowRing {
  std::uint32_t p;
  std::uint32_t k;
  PrimePoly modulus;  // monic, lowest first, size k+1

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (k == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    PrimePoly da = digits_of(a, p, k), db = digits_of(b, p, k);
    PrimePoly prod(2 * k - 1, 0);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t j = 0; j < k; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
    PrimePoly r = poly_mod(prod, modulus, p);
    r.resize(k, 0);
    return rep_of(r, p);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t result = 1, base = a;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  bool primitive(std::uint32_t g, std::uint32_t group_order) const {
    if (g == 0) return false;
    if (pow(g, group_order) != 1) return false;
    std::uint32_t n = group_order;
    for (std::uint32_t r = 2; r <= n; ++r) {
      if (n % r != 0) continue;
      while (n % r == 0) n /= r;
      if (pow(g, group_order / r) == 1) return false;
    }
    return true;
  }
};

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible(const PrimePoly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      PrimePoly g = digits_of(static_cast<std::uint32_t>(v), p, static_cast<std::uint32_t>(d));
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::uint32_t gcd32(std::uint32_t a, std::uint32_t b) { return std::gcd(a, b); }

}  // namespace

FieldPtr Field::make(std::uint32_t p, std::uint32_t k,
                     std::optional<std::vector<std::uint32_t>> modulus) {
  if (k == 0) throw Error("extension degree must be at least 1");
  if (!is_prime(p)) throw Error("characteristic " + std::to_string(p) + " is not prime");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q64 *= p;
    if (q64 > kMaxFieldSize) throw Error("field size exceeds 2^20");
  }
  const auto q = static_cast<std::uint32_t>(q64);

  SlowRing ring{p, k, {}};
  std::uint32_t generator = 0;

  if (k == 1) {
    if (modulus && !(modulus->size() == 2 && modulus->front() % p != 0))
      throw Error("modulus must have degree 1 for a prime field");
    for (std::uint32_t g = 1; g < q; ++g)
      if (ring.primitive(g, q - 1)) {
        generator = g;
        break;
      }
  } else if (modulus) {
    if (modulus->size() != k + 1 || (*modulus)[0] % p == 0)
      throw Error("modulus must have degree exactly " + std::to_string(k));
    const std::uint32_t lead_inv = inv_mod((*modulus)[0] % p, p);
    PrimePoly f(k + 1);
    for (std::uint32_t i = 0; i <= k; ++i)
      f[i] = static_cast<std::uint32_t>(std::uint64_t{(*modulus)[k - i] % p} * lead_inv % p);
    if (!irreducible(f, p)) throw Error("modulus is reducible over F_" + std::to_string(p));
    ring.modulus = f;
    if (ring.primitive(p, q - 1)) {
      generator = p;
    } else {
      for (std::uint32_t g = 2; g < q; ++g)
        if (ring.primitive(g, q - 1)) {
          generator = g;
          break;
        }
    }
  } else {
    const std::uint32_t tails = q;  // p^k choices of c_{k-1}, ..., c_0
    PrimePoly first_irreducible;
    for (std::uint32_t v = 0; v < tails && generator == 0; ++v) {
      PrimePoly f = digits_of(v, p, k);
      f.push_back(1);
      if (f[0] == 0 || !irreducible(f, p)) continue;
      if (first_irreducible.empty()) first_irreducible = f;
      ring.modulus = f;
      if (ring.primitive(p, q - 1)) generator = p;
    }
    if (generator == 0) {
      ring.modulus = first_irreducible;
      for (std::uint32_t g = 2; g < q; ++g)
        if (ring.primitive(g, q - 1)) {
          generator = g;
          break;
        }
    }
  }
  if (generator == 0) throw Error("no primitive element found");

  auto field = std::shared_ptr<Field>(new Field());
  field->p_ = p;
  field->k_ = k;
  field->q_ = q;
  if (k > 1) field->modulus_.assign(ring.modulus.rbegin(), ring.modulus.rend());
  field->generator_ = Elem{generator};

  const std::uint32_t n = q - 1;
  field->exp_.resize(2 * std::size_t{n});
  field->log_.assign(q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t j = 0; j < n; ++j) {
    field->exp_[j] = x;
    field->exp_[j + n] = x;
    field->log_[x] = j;
    x = ring.mul(x, generator);
  }

  field->neg_.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    PrimePoly d = digits_of(a, p, k);
    for (auto& c : d) c = (p - c) % p;
    field->neg_[a] = rep_of(d, p);
  }

  if (q <= 512) {
    field->add_table_.resize(std::size_t{q} * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        PrimePoly da = digits_of(a, p, k), db = digits_of(b, p, k);
        for (std::uint32_t i = 0; i < k; ++i) da[i] = (da[i] + db[i]) % p;
        field->add_table_[std::size_t{a} * q + b] = rep_of(da, p);
      }
  }
  return field;
}

Elem Field::from_int(std::int64_t v) const {
  const std::int64_t r = ((v % p_) + p_) % p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return Elem{add_table_[std::size_t{a.rep} * q_ + b.rep]};
  if (p_ == 2) return Elem{a.rep ^ b.rep};
  std::uint32_t result = 0, scale = 1;
  std::uint32_t x = a.rep, y = b.rep;
  for (std::uint32_t i = 0; i < k_; ++i) {
    result += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return Elem{result};
}

Elem Field::inv(Elem a) const {
  if (a.is_zero()) throw Error("division by zero");
  const std::uint32_t l = log_[a.rep];
  return Elem{exp_[(q_ - 1 - l) % (q_ - 1)]};
}

Elem Field::pow(Elem a, std::int64_t e) const {
  if (a.is_zero()) {
    if (e < 0) throw Error("division by zero");
    return e == 0 ? one() : zero();
  }
  const std::int64_t n = q_ - 1;
  const std::int64_t j = ((static_cast<std::int64_t>(log_[a.rep]) * (e % n)) % n + n) % n;
  return Elem{exp_[static_cast<std::size_t>(j)]};
}

Elem Field::exp(std::int64_t j) const {
  const std::int64_t n = q_ - 1;
  return Elem{exp_[static_cast<std::size_t>(((j % n) + n) % n)]};
}

std::uint32_t Field::dlog(Elem a) const {
  if (!contains(a)) throw Error("element outside the field");
  if (a.is_zero()) throw Error("discrete logarithm of zero");
  return log_[a.rep];
}

std::vector<Elem> Field::nonzero_elements() const {
  std::vector<Elem> out;
  out.reserve(q_ - 1);
  for (std::uint32_t r = 1; r < q_; ++r) out.push_back(Elem{r});
  return out;
}

Subgroup Field::subgroup(std::uint32_t order) const {
  if (order == 0 || (q_ - 1) % order != 0)
    throw Error("subgroup order " + std::to_string(order) + " does not divide q-1");
  Subgroup h;
  h.order = order;
  h.index = (q_ - 1) / order;
  h.elements.reserve(order);
  for (std::uint32_t j = 0; j < order; ++j) h.elements.push_back(exp(std::int64_t{h.index} * j));
  return h;
}

std::vector<Subgroup> Field::subgroups() const {
  std::vector<Subgroup> out;
  for (std::uint32_t d : divisors(q_ - 1)) out.push_back(subgroup(d));
  return out;
}

std::optional<CosetContainment> coset_containment(const Field& field, std::span<const Elem> T) {
  if (T.empty()) throw Error("coset containment needs a nonempty set");
  for (Elem t : T)
    if (!field.contains(t) || t.is_zero()) throw Error("coset containment set must lie in F_q^*");

  const std::uint32_t n = field.group_order();
  const std::uint32_t base = field.dlog_unchecked(T[0]);
  std::uint32_t e = n;
  for (Elem t : T) {
    const std::uint32_t diff = (field.dlog_unchecked(t) + n - base) % n;
    e = gcd32(e, diff);
  }
  if (e <= 1) return std::nullopt;

  const std::uint32_t d = n / e;
  CosetContainment result;
  result.witness.gamma = T[0];
  result.witness.subgroup = field.subgroup(d);
  for (std::uint32_t order : divisors(n))
    if (order < n && order % d == 0) result.valid_orders.push_back(order);
  return result;
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (!field_) throw Error("element without a field");
  if (!field_->contains(value_)) throw Error("representation outside the field");
}

void FieldElement::require_same_field(const FieldElement& b) const {
  if (field_ != b.field_ && !field_->same_as(*b.field_)) throw Error("operands belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& b) const {
  require_same_field(b);
  return {field_, field_->add(value_, b.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& b) const {
  require_same_field(b);
  return {field_, field_->sub(value_, b.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& b) const {
  require_same_field(b);
  return {field_, field_->mul(value_, b.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& b) const {
  require_same_field(b);
  return {field_, field_->div(value_, b.value_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::int64_t e) const { return {field_, field_->pow(value_, e)}; }

bool FieldElement::operator==(const FieldElement& b) const {
  return field_->same_as(*b.field_) && value_ == b.value_;
}

}  // namespace rootpat

#include "rootpat/patterns.hpp"

#include <algorithm>
#include <string>

#include "rootpat/error.hpp"

namespace rootpat {

namespace {

void require_pattern_field(const Field& f) {
  if (f.size() < 3) throw Error("pattern analysis needs q >= 3");
}

// Advances a lexicographic odometer over [lo, hi]^n; false after the last.
bool next_vector(std::vector<std::uint32_t>& v, std::uint32_t lo, std::uint32_t hi) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] < hi) {
      ++v[i];
      return true;
    }
    v[i] = lo;
  }
  return false;
}

std::vector<std::vector<std::uint32_t>> exponent_rows(const MultiPoly& p) {
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) rows.push_back(m.exponents);
  return rows;
}

// True when the support shifted by k (mod q-1) avoids `u` entirely.
bool shifted_support_avoids(const std::vector<std::vector<std::uint32_t>>& rows, std::span<const std::uint32_t> k,
                            std::uint32_t order, const USet& u, std::vector<std::uint32_t>& scratch) {
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) scratch[i] = (row[i] + k[i]) % order;
    if (u.contains(scratch)) return false;
  }
  return true;
}

void require_reduced(const MultiPoly& p) {
  const std::uint32_t order = p.field()->group_order();
  for (const auto& [m, c] : p.terms())
    for (std::uint32_t e : m.exponents)
      if (e >= order) throw Error("every exponent must be below q-1");
}

bool in_coset(const Field& f, std::span<const Elem> T, Elem gamma, std::uint32_t d) {
  const Elem gamma_inv = f.inv(gamma);
  return std::all_of(T.begin(), T.end(), [&](Elem t) { return f.pow(f.mul(t, gamma_inv), d) == f.one(); });
}

std::vector<Elem> complement_in_units(const Field& f, std::span<const Elem> S) {
  std::vector<Elem> sorted(S.begin(), S.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Elem> out;
  for (Elem x : f.nonzero_elements())
    if (!std::binary_search(sorted.begin(), sorted.end(), x)) out.push_back(x);
  return out;
}

// Checks that p is monic with deg p distinct roots in F_q^* and returns m.
std::uint64_t require_root_product(const UniPoly& p) {
  const Field& f = *p.field();
  if (p.is_zero()) throw Error("zero polynomial");
  const auto deg = static_cast<std::uint64_t>(p.degree());
  if (deg > f.group_order() - 1) throw Error("degree must be at most q-2");
  if (p.coeff(deg) != f.one()) throw Error("polynomial is not a monic product of linear factors");
  const std::uint64_t m = f.group_order() - deg;
  if (nonroot_count(p) != m) throw Error("polynomial is not a product of distinct linear factors over F_q^*");
  return m;
}

}  // namespace

// ------------------------------------------------------------------ USet

USet::USet(std::uint32_t q, std::uint64_t m, std::size_t n) : q_(q), m_(m), n_(n) {
  if (q < 3) throw Error("U-sets need q >= 3");
  if (n == 0) throw Error("U-sets need n >= 1");
}

bool USet::contains(std::span<const std::uint32_t> exponents) const {
  if (exponents.size() != n_) return false;
  std::uint64_t product = 1;
  for (std::uint32_t e : exponents) {
    if (e > q_ - 2) return false;
    product *= q_ - 1 - e;
    if (product > m_) return false;
  }
  return true;
}

std::vector<Monomial> USet::members(std::uint64_t limit) const {
  std::uint64_t box = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    box *= q_ - 1;
    if (box > limit) throw Error("U-set too large to materialize");
  }
  std::vector<Monomial> out;
  std::vector<std::uint32_t> v(n_, 0);
  do {
    if (contains(v)) out.emplace_back(v);
  } while (next_vector(v, 0, q_ - 2));
  return out;
}

std::uint64_t USet::size() const {
  if (n_ == 1) return std::min<std::uint64_t>(m_, q_ - 1);
  std::uint64_t count = 0;
  std::vector<std::uint32_t> v(n_, 0);
  do {
    if (contains(v)) ++count;
  } while (next_vector(v, 0, q_ - 2));
  return count;
}

// ------------------------------------------------------------------ WSet

WSet::WSet(std::uint32_t q, std::vector<Axis> axes) : q_(q), axes_(std::move(axes)) {
  for (const auto& a : axes_) {
    if (a.d == 0 || (q - 1) % a.d != 0) throw Error("W-set order must divide q-1");
    if (a.t == 0 || a.t > a.d) throw Error("W-set needs 1 <= t <= d");
  }
}

std::vector<std::uint32_t> WSet::axis_exponents(std::size_t i) const {
  const auto [d, t] = axes_.at(i);
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 0; j < (q_ - 1) / d; ++j)
    for (std::uint32_t r = 0; r <= d - t; ++r) out.push_back(j * d + r);
  return out;
}

bool WSet::contains(std::span<const std::uint32_t> exponents) const {
  if (exponents.size() != axes_.size()) return false;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (exponents[i] >= q_ - 1) return false;
    if (exponents[i] % axes_[i].d > axes_[i].d - axes_[i].t) return false;
  }
  return true;
}

std::vector<Monomial> WSet::members() const {
  std::vector<std::vector<std::uint32_t>> per_axis;
  for (std::size_t i = 0; i < axes_.size(); ++i) per_axis.push_back(axis_exponents(i));
  std::vector<Monomial> out;
  std::vector<std::uint32_t> idx(axes_.size(), 0);
  while (true) {
    Monomial m = Monomial::one(axes_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) m[i] = per_axis[i][idx[i]];
    out.push_back(std::move(m));
    std::size_t axis = idx.size();
    while (axis > 0) {
      --axis;
      if (++idx[axis] < per_axis[axis].size()) break;
      idx[axis] = 0;
      if (axis == 0) return out;
    }
    if (idx.empty()) return out;
  }
}

// -------------------------------------------------------- univariate checks

Theorem1Result theorem1_check(const UniPoly& p) {
  const Field& f = *p.field();
  require_pattern_field(f);
  if (p.is_zero()) throw Error("zero polynomial");
  const std::uint32_t len = f.group_order();
  if (static_cast<std::uint64_t>(p.degree()) >= len) throw Error("degree must be at most q-2");

  Theorem1Result result;
  result.m = nonroot_count(p);

  std::vector<bool> zero(len);
  for (std::uint32_t i = 0; i < len; ++i) zero[i] = p.coeff(i).is_zero();

  // run_at[i]: length of the zero run starting at i, read cyclically.
  // p is nonzero, so every run is shorter than q-1.
  std::vector<std::uint32_t> run_at(len, 0);
  for (std::uint32_t pass = 0; pass < 2; ++pass)
    for (std::uint32_t i = len; i-- > 0;) run_at[i] = zero[i] ? 1 + run_at[(i + 1) % len] : 0;
  for (std::uint32_t i = 0; i < len; ++i) {
    run_at[i] = std::min(run_at[i], len - 1);
    result.longest_zero_run = std::max(result.longest_zero_run, run_at[i]);
    if (result.holds && run_at[i] >= result.m) {
      result.holds = false;
      result.window = i;
    }
  }
  return result;
}

// ---------------------------------------------------------- footprint

std::uint64_t footprint_bound(const MultiPoly& p, const MonomialOrder& order) {
  const Monomial lm = leading_monomial(p, order);
  const std::uint32_t n = p.field()->group_order();
  std::uint64_t bound = 1;
  for (std::uint32_t e : lm.exponents) {
    if (e >= n) throw Error("leading exponents must be below q-1");
    bound *= n - e;
  }
  return bound;
}

// ----------------------------------------------------------- theorem 3

Theorem3Result theorem3_check(const MultiPoly& p) {
  const Field& f = *p.field();
  require_pattern_field(f);
  if (p.is_zero()) throw Error("zero polynomial");
  require_reduced(p);

  Theorem3Result result;
  result.m = nonroot_count(p);
  const USet u(f.size(), result.m, p.vars());
  const auto rows = exponent_rows(p);
  const std::uint32_t order = f.group_order();

  std::vector<std::uint32_t> k(p.vars(), 0), scratch(p.vars());
  do {
    if (shifted_support_avoids(rows, k, order, u, scratch)) {
      result.holds = false;
      result.shift = Monomial(k);
      return result;
    }
  } while (next_vector(k, 0, order - 1));
  return result;
}

// ----------------------------------------------------------- gap search

std::optional<GapCertificate> gap_search(const MultiPoly& p, std::uint64_t m, GapMode mode) {
  const Field& f = *p.field();
  require_pattern_field(f);
  if (m < 2) throw Error("gap search needs m >= 2");
  const std::uint32_t q = f.size();

  GapCertificate cert;
  cert.mode = mode;
  cert.q = q;
  cert.avoided_m = m - 1;
  cert.n = p.vars();

  if (mode == GapMode::Window) {
    if (p.vars() != 1) throw Error("window mode needs a univariate polynomial");
    const UniPoly u = p.to_uni();
    if (require_root_product(u) != m) throw Error("m must equal q-1-deg P");
    for (std::uint64_t k = 1; k + 2 * m <= q; ++k) {
      bool all_zero = true;
      for (std::uint64_t j = k; j <= k + m - 2 && all_zero; ++j) all_zero = u.coeff(j).is_zero();
      if (all_zero) {
        cert.shift = Monomial{static_cast<std::uint32_t>(k)};
        cert.verified = verify_gap(p, cert);
        if (!cert.verified) throw VerificationError("window certificate failed re-verification");
        return cert;
      }
    }
    return std::nullopt;
  }

  require_reduced(p);
  std::uint64_t corner = 1;
  for (std::size_t i = 0; i < p.vars(); ++i) corner *= f.group_order() - p.degree_in(i);
  if (corner != m || nonroot_count(p) != m) throw Error("polynomial is not a product form with m non-roots");

  const USet u(q, m - 1, p.vars());
  const auto rows = exponent_rows(p);
  std::vector<std::uint32_t> k(p.vars(), 1), scratch(p.vars());
  do {
    if (shifted_support_avoids(rows, k, f.group_order(), u, scratch)) {
      cert.shift = Monomial(k);
      cert.verified = verify_gap(p, cert);
      if (!cert.verified) throw VerificationError("shift certificate failed re-verification");
      return cert;
    }
  } while (next_vector(k, 1, q - 2));
  return std::nullopt;
}

std::optional<GapCertificate> gap_search(const RootBoxes& boxes, GapMode mode) {
  if (mode == GapMode::Window && boxes.vars() != 1) throw Error("window mode needs a single axis");
  return gap_search(product_form(boxes), boxes.m(), mode);
}

bool verify_gap(const MultiPoly& p, const GapCertificate& cert) {
  const Field& f = *p.field();
  if (cert.q != f.size() || cert.n != p.vars() || cert.shift.vars() != p.vars()) return false;
  if (p.is_zero() || nonroot_count(p) != cert.avoided_m + 1) return false;
  const std::uint64_t m = cert.avoided_m + 1;

  if (cert.mode == GapMode::Window) {
    if (p.vars() != 1) return false;
    const std::uint64_t k = cert.shift[0];
    if (k < 1 || k + 2 * m > cert.q) return false;
    const UniPoly u = p.to_uni();
    for (std::uint64_t j = k; j <= k + m - 2; ++j)
      if (!u.coeff(j).is_zero()) return false;
    return true;
  }

  for (std::uint32_t e : cert.shift.exponents)
    if (e == 0 || e >= f.group_order()) return false;
  const USet u(cert.q, cert.avoided_m, cert.n);
  const MultiPoly shifted = cyclic_shift(p, cert.shift);
  for (const auto& [mono, c] : shifted.terms())
    if (u.contains(mono)) return false;
  return true;
}

// ----------------------------------------------------------- coset side

std::optional<CosetCertificate> coset_condition(const RootBoxes& boxes) {
  const Field& f = *boxes.field();
  require_pattern_field(f);
  bool all_near_full = true, some_full_T = false;
  for (std::size_t i = 0; i < boxes.vars(); ++i) {
    const std::uint32_t s = boxes.s(i);
    if (s >= f.group_order()) throw Error("axis " + std::to_string(i + 1) + " needs a nonempty T_i");
    all_near_full = all_near_full && s == f.group_order() - 1;
    some_full_T = some_full_T || s == 0;
  }
  if (all_near_full) throw Error("not all s_i may equal q-2");
  // T_i = F_q^* fits in no proper coset.
  if (some_full_T) return std::nullopt;

  CosetCertificate cert;
  for (std::size_t i = 0; i < boxes.vars(); ++i) {
    const auto T = boxes.T(i);
    auto witness = coset_containment(f, T);
    if (!witness) return std::nullopt;
    cert.axes.push_back(std::move(*witness));
  }
  return cert;
}

GapCertificate constructive_shift(const RootBoxes& boxes, const CosetCertificate& cert) {
  const Field& f = *boxes.field();
  require_pattern_field(f);
  const std::size_t n = boxes.vars();
  if (cert.axes.size() != n) throw Error("certificate arity does not match boxes");
  const std::uint64_t m = boxes.m();
  if (m < 2) throw Error("constructive shift needs m >= 2");

  std::vector<WSet::Axis> axes;
  std::vector<std::uint32_t> k;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = cert.axes[i].witness;
    const std::uint32_t d = w.subgroup.order;
    if (d >= f.group_order()) throw Error("coset witness uses an improper subgroup");
    const auto T = boxes.T(i);
    if (!in_coset(f, T, w.gamma, d)) throw Error("coset witness does not cover T_" + std::to_string(i + 1));
    axes.push_back({d, boxes.t(i)});
    k.push_back(d);
  }

  const WSet w(f.size(), axes);
  const USet u(f.size(), m - 1, n);
  const MultiPoly p = product_form(boxes);
  for (const auto& [mono, c] : p.terms())
    if (!w.contains(mono)) throw VerificationError("support of P escapes the W-set");
  const MultiPoly shifted = cyclic_shift(p, Monomial(k));
  for (const auto& [mono, c] : shifted.terms())
    if (!w.contains(mono)) throw VerificationError("shifted support escapes the W-set");
  for (const auto& mono : w.members())
    if (u.contains(mono)) throw VerificationError("W-set meets U(q, m-1, n)");

  GapCertificate gap;
  gap.mode = GapMode::Shift;
  gap.shift = Monomial(k);
  gap.q = f.size();
  gap.avoided_m = m - 1;
  gap.n = n;
  gap.verified = verify_gap(p, gap);
  if (!gap.verified) throw VerificationError("constructive shift failed re-verification");
  return gap;
}

// ---------------------------------------------------------- structure

Prop1Report prop1_structure_check(const FieldPtr& field, std::span<const Elem> S, std::uint32_t d) {
  const Field& f = *field;
  require_pattern_field(f);
  for (Elem x : S)
    if (!f.contains(x) || x.is_zero()) throw Error("S must lie in F_q^*");
  const auto T = complement_in_units(f, S);
  if (T.empty()) throw Error("T = F_q^* \\ S is empty");
  const auto containment = coset_containment(f, T);
  if (!containment || std::find(containment->valid_orders.begin(), containment->valid_orders.end(), d) ==
                          containment->valid_orders.end())
    throw Error("T is not contained in a coset of the subgroup of order " + std::to_string(d));

  const auto t = static_cast<std::uint32_t>(T.size());
  const UniPoly p = from_roots(field, S);
  Prop1Report report;
  report.d = d;
  report.within_windows = true;
  for (std::uint32_t e : p.support())
    if (e >= f.group_order() || e % d > d - t) report.within_windows = false;
  report.endpoints_nonzero = true;
  for (std::uint32_t j = 0; j < f.group_order() / d; ++j)
    if (p.coeff(j * d).is_zero() || p.coeff(j * d + d - t).is_zero()) report.endpoints_nonzero = false;
  return report;
}

std::vector<Prop1Report> prop1_structure_check_all(const FieldPtr& field, std::span<const Elem> S) {
  const auto T = complement_in_units(*field, S);
  if (T.empty()) throw Error("T = F_q^* \\ S is empty");
  const auto containment = coset_containment(*field, T);
  if (!containment) throw Error("T is not contained in a proper coset");
  std::vector<Prop1Report> out;
  for (std::uint32_t d : containment->valid_orders) out.push_back(prop1_structure_check(field, S, d));
  return out;
}

std::uint64_t disjoint_runs_count(const UniPoly& p, std::uint64_t m) {
  const Field& f = *p.field();
  require_pattern_field(f);
  if (m < 2) throw Error("run counting needs m >= 2");
  if (require_root_product(p) != m) throw Error("m must equal q-1-deg P");

  std::vector<Elem> T;
  for (Elem x : f.nonzero_elements())
    if (!p.evaluate(x).is_zero()) T.push_back(x);
  if (!coset_containment(f, T)) throw Error("non-roots are not contained in a proper coset");

  const std::uint32_t len = f.group_order();
  // b_0 is a nonzero constant term, so every cyclic run starts after a
  // nonzero coefficient; scanning from index 1 never splits a run.
  std::uint64_t count = 0;
  std::uint64_t run = 0;
  for (std::uint32_t step = 1; step <= len; ++step) {
    const std::uint32_t i = step % len;
    if (p.coeff(i).is_zero()) {
      ++run;
    } else {
      if (run >= m - 1) ++count;
      run = 0;
    }
  }
  return count;
}

}  // namespace rootpat

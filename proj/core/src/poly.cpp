#include "rootpat/poly.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "rootpat/error.hpp"

namespace rootpat {

std::uint64_t Monomial::total_degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.vars() != b.vars()) throw Error("monomials with different variable counts");
  Monomial out = a;
  for (std::size_t i = 0; i < out.vars(); ++i) out[i] += b[i];
  return out;
}

bool MonomialOrder::less(const Monomial& a, const Monomial& b) const {
  if (kind == Kind::GradedLex) {
    const auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
  }
  const std::size_t n = a.vars();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t v = priority.empty() ? j : priority[j];
    if (a[v] != b[v]) return a[v] < b[v];
  }
  return false;
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw Error("polynomial without a field");
  for (Elem c : coeffs_)
    if (!field_->contains(c)) throw Error("coefficient outside the field");
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

std::vector<std::uint32_t> UniPoly::support() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

Elem UniPoly::evaluate(Elem x) const {
  Elem acc{};
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
  return acc;
}

bool UniPoly::operator==(const UniPoly& other) const {
  return field_->same_as(*other.field_) && coeffs_ == other.coeffs_;
}

// -------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(FieldPtr field, std::size_t n) : field_(std::move(field)), n_(n) {
  if (!field_) throw Error("polynomial without a field");
}

MultiPoly MultiPoly::constant(FieldPtr field, std::size_t n, Elem c) {
  MultiPoly p(std::move(field), n);
  p.set(Monomial::one(n), c);
  return p;
}

MultiPoly MultiPoly::from_uni(const UniPoly& u) {
  MultiPoly p(u.field(), 1);
  for (std::uint32_t i : u.support()) p.terms_.emplace(Monomial{i}, u.coeff(i));
  return p;
}

void MultiPoly::set(const Monomial& m, Elem c) {
  if (m.vars() != n_) throw Error("monomial arity does not match polynomial");
  if (!field_->contains(c)) throw Error("coefficient outside the field");
  if (c.is_zero())
    terms_.erase(m);
  else
    terms_[m] = c;
}

void MultiPoly::accumulate(const Monomial& m, Elem c) {
  if (c.is_zero()) return;
  set(m, field_->add(coeff(m), c));
}

Elem MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Elem{} : it->second;
}

std::vector<Monomial> MultiPoly::support() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) out.push_back(m);
  return out;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

Elem MultiPoly::evaluate(std::span<const Elem> point) const {
  if (point.size() != n_) throw Error("evaluation point has wrong dimension");
  Elem acc{};
  for (const auto& [m, c] : terms_) {
    Elem v = c;
    for (std::size_t i = 0; i < n_; ++i) v = field_->mul(v, field_->pow(point[i], m[i]));
    acc = field_->add(acc, v);
  }
  return acc;
}

UniPoly MultiPoly::to_uni() const {
  if (n_ != 1) throw Error("polynomial is not univariate");
  std::vector<Elem> coeffs(terms_.empty() ? 0 : degree_in(0) + 1);
  for (const auto& [m, c] : terms_) coeffs[m[0]] = c;
  return UniPoly(field_, std::move(coeffs));
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  return n_ == other.n_ && field_->same_as(*other.field_) && terms_ == other.terms_;
}

// -------------------------------------------------------------- RootBoxes

namespace {

std::vector<Elem> normalized_set(const Field& field, std::vector<Elem> s, bool allow_zero) {
  for (Elem x : s) {
    if (!field.contains(x)) throw Error("element outside the field");
    if (!allow_zero && x.is_zero()) throw Error("root sets must lie in F_q^*");
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

RootBoxes::RootBoxes(FieldPtr field, std::vector<std::vector<Elem>> roots)
    : field_(std::move(field)), roots_(std::move(roots)) {
  if (!field_) throw Error("root boxes without a field");
  if (roots_.empty()) throw Error("root boxes need at least one axis");
  for (auto& s : roots_) s = normalized_set(*field_, std::move(s), false);
}

RootBoxes RootBoxes::from_complements(FieldPtr field, const std::vector<std::vector<Elem>>& complements) {
  std::vector<std::vector<Elem>> roots;
  for (const auto& t : complements) {
    const auto tn = normalized_set(*field, t, false);
    std::vector<Elem> s;
    for (Elem x : field->nonzero_elements())
      if (!std::binary_search(tn.begin(), tn.end(), x)) s.push_back(x);
    roots.push_back(std::move(s));
  }
  return RootBoxes(std::move(field), std::move(roots));
}

std::vector<Elem> RootBoxes::T(std::size_t i) const {
  std::vector<Elem> out;
  for (Elem x : field_->nonzero_elements())
    if (!std::binary_search(roots_[i].begin(), roots_[i].end(), x)) out.push_back(x);
  return out;
}

std::uint64_t RootBoxes::m() const {
  std::uint64_t m = 1;
  for (std::size_t i = 0; i < roots_.size(); ++i) m *= t(i);
  return m;
}

// ------------------------------------------------------------ construction

UniPoly from_roots(const FieldPtr& field, std::span<const Elem> S) {
  const auto roots = normalized_set(*field, std::vector<Elem>(S.begin(), S.end()), true);
  std::vector<Elem> c{field->one()};
  for (Elem a : roots) {
    // c(X) * (X - a)
    const Elem minus_a = field->neg(a);
    std::vector<Elem> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = field->add(next[i + 1], c[i]);
      next[i] = field->add(next[i], field->mul(c[i], minus_a));
    }
    c = std::move(next);
  }
  return UniPoly(field, std::move(c));
}

namespace {

MultiPoly embed_axis(const UniPoly& u, std::size_t axis, std::size_t n) {
  MultiPoly p(u.field(), n);
  for (std::uint32_t i : u.support()) {
    Monomial m = Monomial::one(n);
    m[axis] = i;
    p.set(m, u.coeff(i));
  }
  return p;
}

}  // namespace

MultiPoly root_product(const FieldPtr& field, const std::vector<std::vector<Elem>>& roots) {
  const std::size_t n = roots.size();
  MultiPoly out = MultiPoly::constant(field, n, field->one());
  for (std::size_t i = 0; i < n; ++i) out = multiply(out, embed_axis(from_roots(field, roots[i]), i, n));
  return out;
}

MultiPoly product_form(const RootBoxes& boxes) {
  std::vector<std::vector<Elem>> roots;
  for (std::size_t i = 0; i < boxes.vars(); ++i) roots.push_back(boxes.S(i));
  return root_product(boxes.field(), roots);
}

MultiPoly multiply(const MultiPoly& a, const MultiPoly& b) {
  if (a.vars() != b.vars()) throw Error("cannot multiply polynomials with different variable counts");
  if (!a.field()->same_as(*b.field())) throw Error("cannot multiply polynomials over different fields");
  const Field& f = *a.field();
  MultiPoly out(a.field(), a.vars());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.accumulate(ma * mb, f.mul(ca, cb));
  return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return multiply(a, b); }

MultiPoly cyclic_shift(const MultiPoly& p, const Monomial& k) {
  const std::uint32_t n = p.field()->group_order();
  if (k.vars() != p.vars()) throw Error("shift arity does not match polynomial");
  for (std::uint32_t e : k.exponents)
    if (e >= n) throw Error("shift exponents must lie in [0, q-2]");
  MultiPoly out(p.field(), p.vars());
  for (const auto& [m, c] : p.terms()) {
    Monomial shifted = m;
    for (std::size_t i = 0; i < m.vars(); ++i) {
      if (m[i] >= n) throw Error("polynomial exponent at or above q-1");
      shifted[i] = (m[i] + k[i]) % n;
    }
    out.set(shifted, c);
  }
  return out;
}

std::uint64_t nonroot_count(const MultiPoly& p) {
  const Field& f = *p.field();
  const std::uint32_t order = f.group_order();
  const std::size_t n = p.vars();
  if (p.is_zero()) return 0;

  // Each term c*X^e at x = g^a contributes g^(log c + <a, e>).
  struct Term {
    std::uint32_t log_coeff;
    std::vector<std::uint32_t> exps;
  };
  std::vector<Term> terms;
  terms.reserve(p.term_count());
  for (const auto& [m, c] : p.terms()) {
    Term t{f.dlog_unchecked(c), m.exponents};
    for (auto& e : t.exps) e %= order;
    terms.push_back(std::move(t));
  }

  std::vector<std::uint32_t> a(n, 0);
  std::vector<std::uint32_t> logs(terms.size());
  for (std::size_t t = 0; t < terms.size(); ++t) logs[t] = terms[t].log_coeff;

  std::uint64_t count = 0;
  while (true) {
    Elem acc{};
    for (std::uint32_t l : logs) acc = f.add(acc, f.exp_unchecked(l));
    if (!acc.is_zero()) ++count;

    // Advance the odometer, last axis fastest, updating term logs in place.
    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (a[axis] + 1 < order) {
        ++a[axis];
        for (std::size_t t = 0; t < terms.size(); ++t) logs[t] = (logs[t] + terms[t].exps[axis]) % order;
        break;
      }
      // Wrapping from q-2 back to 0 subtracts (q-2)*e, i.e. adds e mod q-1.
      a[axis] = 0;
      for (std::size_t t = 0; t < terms.size(); ++t) logs[t] = (logs[t] + terms[t].exps[axis]) % order;
      if (axis == 0) return count;
    }
    if (n == 0) return count;
  }
}

std::uint64_t nonroot_count(const UniPoly& p) { return nonroot_count(MultiPoly::from_uni(p)); }

Monomial leading_monomial(const MultiPoly& p, const MonomialOrder& order) {
  if (p.is_zero()) throw Error("zero polynomial has no leading monomial");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (best == nullptr || order.less(*best, m)) best = &m;
  return *best;
}

// ----------------------------------------------------------- grids

namespace {

void validate_grid(const Field& f, const Grid& grid) {
  for (const auto& axis : grid) {
    if (axis.empty()) throw Error("grid axis is empty");
    std::set<Elem> seen;
    for (Elem x : axis) {
      if (!f.contains(x)) throw Error("grid node outside the field");
      if (!seen.insert(x).second) throw Error("duplicate grid node");
    }
  }
}

std::size_t grid_size(const Grid& grid) {
  std::size_t total = 1;
  for (const auto& axis : grid) total *= axis.size();
  return total;
}

// Coefficients of the Lagrange basis polynomials for distinct nodes:
// basis[t][j] is the X^j coefficient of l_t.
std::vector<std::vector<Elem>> lagrange_basis(const FieldPtr& field, const std::vector<Elem>& nodes) {
  const Field& f = *field;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    std::vector<Elem> others;
    Elem denom = f.one();
    for (std::size_t s = 0; s < nodes.size(); ++s) {
      if (s == t) continue;
      others.push_back(nodes[s]);
      denom = f.mul(denom, f.sub(nodes[t], nodes[s]));
    }
    const UniPoly num = from_roots(field, others);
    const Elem scale = f.inv(denom);
    std::vector<Elem> row(nodes.size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = f.mul(num.coeff(j), scale);
    basis.push_back(std::move(row));
  }
  return basis;
}

}  // namespace

std::vector<Elem> evaluate_on_grid(const MultiPoly& p, const Grid& grid) {
  const Field& f = *p.field();
  if (grid.size() != p.vars()) throw Error("grid dimension does not match polynomial");
  validate_grid(f, grid);
  const std::size_t n = grid.size();
  std::vector<Elem> out;
  out.reserve(grid_size(grid));
  std::vector<std::size_t> idx(n, 0);
  std::vector<Elem> point(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) point[i] = grid[i][idx[i]];
    out.push_back(p.evaluate(point));
    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (++idx[axis] < grid[axis].size()) break;
      idx[axis] = 0;
      if (axis == 0) return out;
    }
    if (n == 0) return out;
  }
}

MultiPoly interpolate(const FieldPtr& field, const Grid& grid, std::span<const Elem> values) {
  const Field& f = *field;
  validate_grid(f, grid);
  const std::size_t n = grid.size();
  const std::size_t total = grid_size(grid);
  if (values.size() != total)
    throw Error("interpolation needs " + std::to_string(total) + " values, got " + std::to_string(values.size()));
  for (Elem v : values)
    if (!f.contains(v)) throw Error("value outside the field");

  std::vector<Elem> tensor(values.begin(), values.end());
  std::size_t stride = total;
  for (std::size_t axis = 0; axis < n; ++axis) {
    const std::size_t len = grid[axis].size();
    stride /= len;
    const auto basis = lagrange_basis(field, grid[axis]);
    const std::size_t block = stride * len;
    std::vector<Elem> fiber(len);
    for (std::size_t outer = 0; outer < total; outer += block)
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t j = 0; j < len; ++j) {
          Elem acc{};
          for (std::size_t t = 0; t < len; ++t) acc = f.add(acc, f.mul(tensor[base + t * stride], basis[t][j]));
          fiber[j] = acc;
        }
        for (std::size_t j = 0; j < len; ++j) tensor[base + j * stride] = fiber[j];
      }
  }

  MultiPoly out(field, n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (tensor[flat].is_zero()) continue;
    Monomial m = Monomial::one(n);
    std::size_t rest = flat;
    for (std::size_t axis = n; axis-- > 0;) {
      m[axis] = static_cast<std::uint32_t>(rest % grid[axis].size());
      rest /= grid[axis].size();
    }
    out.set(m, tensor[flat]);
  }
  return out;
}

std::optional<MultiPoly> divide_by_root_product(const MultiPoly& g, const Grid& grid,
                                                const std::vector<std::vector<Elem>>& factor_roots) {
  const FieldPtr& field = g.field();
  const Field& f = *field;
  const std::size_t n = g.vars();
  if (grid.size() != n || factor_roots.size() != n) throw Error("grid and factor roots must match the arity of G");
  validate_grid(f, grid);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<Elem> axis(grid[i].begin(), grid[i].end());
    std::set<Elem> roots;
    for (Elem x : factor_roots[i]) {
      if (!axis.count(x)) throw Error("factor root outside its grid axis");
      if (!roots.insert(x).second) throw Error("duplicate factor root");
    }
    if (roots.size() >= axis.size()) throw Error("factor roots must form a proper subset of the grid axis");
    if (!g.is_zero() && g.degree_in(i) >= grid[i].size())
      throw Error("deg_X" + std::to_string(i + 1) + " G must be below the grid axis size");
  }

  MultiPoly current = g;
  for (std::size_t axis = 0; axis < n; ++axis) {
    for (Elem x : factor_roots[axis]) {
      // Group by the exponents of the other variables and run synthetic
      // division by (X_axis - x) on each univariate slice.
      std::map<Monomial, std::vector<Elem>> slices;
      for (const auto& [m, c] : current.terms()) {
        Monomial key = m;
        key[axis] = 0;
        auto& slice = slices[key];
        if (slice.size() <= m[axis]) slice.resize(m[axis] + 1);
        slice[m[axis]] = c;
      }
      MultiPoly quotient(field, n);
      for (const auto& [key, coeffs] : slices) {
        Elem carry{};
        for (std::size_t j = coeffs.size(); j-- > 1;) {
          carry = f.add(coeffs[j], f.mul(carry, x));
          Monomial m = key;
          m[axis] = static_cast<std::uint32_t>(j - 1);
          quotient.set(m, carry);
        }
        const Elem remainder = f.add(coeffs[0], f.mul(carry, x));
        if (!remainder.is_zero()) return std::nullopt;
      }
      current = std::move(quotient);
    }
  }
  return current;
}

}  // namespace rootpat

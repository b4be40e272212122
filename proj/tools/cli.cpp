#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "rootpat/error.hpp"
#include "rootpat/harness.hpp"
#include "rootpat/io.hpp"

namespace rootpat::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_elements(const Field& f, const std::vector<Elem>& xs) {
  std::vector<std::uint32_t> logs;
  for (Elem x : xs) logs.push_back(f.dlog(x));
  std::sort(logs.begin(), logs.end());
  std::string s;
  for (std::uint32_t l : logs) s += (s.empty() ? "a" : ",a") + std::to_string(l);
  return "{" + s + "}";
}

std::string format_tuple(const std::vector<std::uint32_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string format_modulus(const Field& f) {
  if (f.degree() == 1) return "(prime field)";
  std::string s;
  const auto& c = f.modulus();
  const std::size_t k = c.size() - 1;
  for (std::size_t i = 0; i <= k; ++i) {
    const std::size_t power = k - i;
    if (c[i] == 0) continue;
    if (!s.empty()) s += " + ";
    const bool unit = c[i] == 1;
    if (!unit || power == 0) s += std::to_string(c[i]);
    if (power >= 1) s += power == 1 ? "x" : "x^" + std::to_string(power);
  }
  return s;
}

std::vector<std::vector<Elem>> collect_axes(const Field& f, const std::vector<std::string>& args) {
  std::vector<std::vector<Elem>> axes;
  for (const auto& a : args)
    for (auto& axis : parse_axis_lists(f, a)) axes.push_back(std::move(axis));
  if (axes.empty()) throw Error("no axis lists given");
  return axes;
}

RootBoxes boxes_from(const FieldPtr& field, const std::vector<std::string>& roots, const std::vector<std::string>& T) {
  if (!roots.empty()) return RootBoxes(field, collect_axes(*field, roots));
  if (!T.empty()) return RootBoxes::from_complements(field, collect_axes(*field, T));
  throw Error("one of --roots or --T is required");
}

void print_field(std::ostream& out, const Field& f) {
  out << "field: F_" << f.size() << " (p=" << f.characteristic() << ", k=" << f.degree() << ")\n";
  out << "spec: " << field_spec_string(f) << "\n";
  out << "modulus: " << format_modulus(f) << "\n";
  out << "generator: a1 (rep " << f.generator().rep << ")\n";
  out << "subgroups of F_q^* (q-1 = " << f.group_order() << "):\n";
  const auto groups = f.subgroups();
  for (const auto& h : groups) {
    out << "  d=" << h.order << " index=" << h.index << (h.proper(f.size()) ? "" : " (whole group)");
    std::string below;
    for (const auto& g : groups)
      if (g.order < h.order && h.order % g.order == 0) below += (below.empty() ? "" : ",") + std::to_string(g.order);
    out << " contains d in {" << below << "} elements " << join_elements(f, h.elements) << "\n";
  }
}

int report_gap(std::ostream& out, const MultiPoly& p, const std::optional<GapCertificate>& cert, bool grid) {
  if (!cert) {
    out << "no gap certificate\n";
    if (grid && p.vars() <= 2) out << render_grid(p, nonroot_count(p), std::nullopt);
    return kNegative;
  }
  out << "gap shift k = " << format_tuple(cert->shift.exponents) << "\n";
  out << gap_certificate_record(*cert) << "\n";
  if (grid && p.vars() <= 2) out << render_grid(p, cert->avoided_m + 1, cert);
  if (!cert->verified) throw VerificationError("gap certificate failed verification");
  return kSuccess;
}

// ------------------------------------------------------------- examples

struct ExampleCheck {
  std::ostream& out;
  bool all_ok = true;

  void line(const std::string& what, bool ok) {
    out << "  [" << (ok ? "ok" : "MISMATCH") << "] " << what << "\n";
    all_ok = all_ok && ok;
  }
};

std::set<std::uint32_t> uni_support(const UniPoly& p) {
  const auto s = p.support();
  return {s.begin(), s.end()};
}

std::string format_exps(const std::set<std::uint32_t>& s) {
  std::vector<Monomial> ms;
  for (auto e : s) ms.push_back(Monomial{e});
  return format_support(ms);
}

std::vector<std::vector<Elem>> subsets_of_size(const std::vector<Elem>& set, std::size_t k) {
  std::vector<std::vector<Elem>> out;
  const std::size_t n = set.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
    std::vector<Elem> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) sub.push_back(set[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

int run_worked_examples(std::ostream& out) {
  const FieldPtr field = parse_field_spec("16");
  const Field& f = *field;
  ExampleCheck check{out};
  auto powers = [&](std::initializer_list<int> ks) {
    std::vector<Elem> v;
    for (int k : ks) v.push_back(f.exp(k));
    return v;
  };
  auto product_for_T = [&](const std::vector<Elem>& T) {
    return from_roots(field, RootBoxes::from_complements(field, {T}).S(0));
  };

  out << "Example 1 over F_16 (" << field_spec_string(f) << ", a = primitive root of the modulus)\n";
  const auto coset3 = powers({1, 6, 11});
  const auto coset5 = powers({2, 5, 8, 11, 14});

  const std::set<std::uint32_t> golden_c3{0, 3, 6, 9, 12};
  const auto s1 = uni_support(product_for_T(coset3));
  check.line("T = " + join_elements(f, coset3) + ": Supp P = " + format_exps(s1), s1 == golden_c3);

  const std::set<std::uint32_t> golden_pair{0, 1, 3, 4, 6, 7, 9, 10, 12, 13};
  for (const auto& T : subsets_of_size(coset3, 2)) {
    const auto s = uni_support(product_for_T(T));
    check.line("T = " + join_elements(f, T) + ": Supp P = " + format_exps(s), s == golden_pair);
  }

  const std::set<std::uint32_t> golden_c5{0, 5, 10};
  const auto s3 = uni_support(product_for_T(coset5));
  check.line("T = " + join_elements(f, coset5) + ": Supp P = " + format_exps(s3), s3 == golden_c5);

  const std::set<std::uint32_t> lower{0, 2, 5, 7, 10, 12};
  const std::set<std::uint32_t> upper{0, 1, 2, 5, 6, 7, 10, 11, 12};
  for (const auto& T : subsets_of_size(coset5, 3)) {
    const auto s = uni_support(product_for_T(T));
    const bool ok = std::includes(s.begin(), s.end(), lower.begin(), lower.end()) &&
                    std::includes(upper.begin(), upper.end(), s.begin(), s.end());
    check.line("T = " + join_elements(f, T) + ": " + format_exps(lower) + " <= Supp P <= " + format_exps(upper), ok);
  }

  out << "Example 2 over F_16, T1 = " << join_elements(f, coset5) << ", T2 = " << join_elements(f, coset3) << "\n";
  const RootBoxes boxes = RootBoxes::from_complements(field, {coset5, coset3});
  const MultiPoly p = product_form(boxes);
  std::set<Monomial> golden_support;
  for (std::uint32_t a : {0u, 5u, 10u})
    for (std::uint32_t b : {0u, 3u, 6u, 9u, 12u}) golden_support.insert(Monomial{a, b});
  const auto support = p.support();
  check.line("Supp P = " + format_support(support),
             std::set<Monomial>(support.begin(), support.end()) == golden_support);
  const std::uint64_t m = nonroot_count(p);
  check.line("m = " + std::to_string(m), m == 15 && boxes.m() == 15);

  const auto gap = gap_search(boxes, GapMode::Shift);
  check.line("first gap shift k = " + (gap ? format_tuple(gap->shift.exponents) : std::string("none")),
             gap && gap->shift == Monomial({5, 3}) && gap->verified);
  const auto coset = coset_condition(boxes);
  check.line("coset orders d = " +
                 (coset ? format_tuple({coset->axes[0].witness.subgroup.order, coset->axes[1].witness.subgroup.order})
                        : std::string("none")),
             coset && coset->axes[0].witness.subgroup.order == 5 && coset->axes[1].witness.subgroup.order == 3);
  if (coset) {
    const auto constructive = constructive_shift(boxes, *coset);
    check.line("constructive shift k = " + format_tuple(constructive.shift.exponents),
               constructive.shift == Monomial({5, 3}) && constructive.verified);
  }
  const USet u(16, m - 1, 2);
  bool disjoint = true;
  const MultiPoly shifted = cyclic_shift(p, Monomial{5, 3});
  for (const auto& [mono, c] : shifted.terms()) disjoint = disjoint && !u.contains(mono);
  check.line("Supp(X1^5 X2^3 P mod {X1^15-1, X2^15-1}) and U(16,14,2) are disjoint", disjoint);
  out << render_grid(p, m, gap);
  return check.all_ok ? kSuccess : kInternal;
}

}  // namespace

// -------------------------------------------------------------- helpers

std::string format_monomial(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.vars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += ' ';
    s += m.vars() == 1 ? "X" : "X" + std::to_string(i + 1);
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string format_support(const std::vector<Monomial>& support) {
  // Graded order reads more naturally: 1, X^3, X^6, ...
  std::vector<Monomial> sorted = support;
  std::sort(sorted.begin(), sorted.end(), [](const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> ra(a.exponents.rbegin(), a.exponents.rend());
    std::vector<std::uint32_t> rb(b.exponents.rbegin(), b.exponents.rend());
    return ra < rb;
  });
  std::string s = "{";
  for (std::size_t i = 0; i < sorted.size(); ++i) s += (i ? ", " : "") + format_monomial(sorted[i]);
  return s + "}";
}

std::optional<GapCertificate> find_shift(const MultiPoly& p, std::uint64_t m) {
  const Field& f = *p.field();
  if (f.size() < 3) throw Error("pattern analysis needs q >= 3");
  if (m < 2) throw Error("gap search needs m >= 2");
  const std::uint32_t top = f.size() - 2;
  const USet u(f.size(), m - 1, p.vars());
  std::vector<std::uint32_t> k(p.vars(), 1);
  while (true) {
    const MultiPoly shifted = cyclic_shift(p, Monomial(k));
    const bool avoids = std::none_of(shifted.terms().begin(), shifted.terms().end(),
                                     [&](const auto& term) { return u.contains(term.first); });
    if (avoids) {
      GapCertificate cert;
      cert.mode = GapMode::Shift;
      cert.shift = Monomial(k);
      cert.q = f.size();
      cert.avoided_m = m - 1;
      cert.n = p.vars();
      cert.verified = verify_gap(p, cert);
      return cert;
    }
    std::size_t i = k.size();
    while (i > 0 && k[i - 1] == top) k[--i] = 1;
    if (i == 0) return std::nullopt;
    ++k[i - 1];
  }
}

std::string render_grid(const MultiPoly& p, std::uint64_t m, const std::optional<GapCertificate>& gap) {
  const std::size_t n = p.vars();
  if (n == 0 || n > 2) throw Error("grid rendering needs n <= 2");
  const std::uint32_t q = p.field()->size();
  const std::uint32_t order = q - 1;

  std::set<Monomial> support;
  for (const auto& [mono, c] : p.terms()) support.insert(mono);
  std::set<Monomial> u_members, d_members;
  if (m >= 2 && q >= 3) {
    for (auto& mono : USet(q, m - 1, n).members()) {
      if (gap) {
        Monomial d = mono;
        for (std::size_t i = 0; i < n; ++i) d[i] = (mono[i] + order - gap->shift[i] % order) % order;
        d_members.insert(d);
      }
      u_members.insert(std::move(mono));
    }
  }

  const std::size_t width = std::to_string(order - 1).size() + 1;
  auto pad = [&](const std::string& s, std::size_t visible) { return s + std::string(width - visible, ' '); };
  auto cell = [&](const Monomial& mono) -> std::string {
    if (support.count(mono)) return pad("◆", 1);
    if (d_members.count(mono)) return pad("●", 1);
    if (u_members.count(mono)) return pad("·", 1);
    return pad(" ", 1);
  };
  auto label = [&](std::uint32_t v) {
    std::string s = std::to_string(v);
    return std::string(width - 1 - s.size(), ' ') + s;
  };

  std::ostringstream out;
  out << "legend: ◆ Supp P, · U(q,m-1,n), ● D with X^k D = U" << (gap ? "" : " (no shift found)") << "\n";
  const std::uint32_t rows = n == 2 ? order : 1;
  for (std::uint32_t r = rows; r-- > 0;) {
    out << (n == 2 ? label(r) : std::string(width - 1, ' ')) << " | ";
    std::string line;
    for (std::uint32_t c = 0; c < order; ++c) {
      const Monomial mono = n == 2 ? Monomial{c, r} : Monomial{c};
      line += cell(mono);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  out << std::string(width, ' ') << "+" << std::string(order * width, '-') << "\n";
  out << std::string(width + 1, ' ');
  for (std::uint32_t c = 0; c < order; ++c) out << std::string(width - std::to_string(c).size(), ' ') << c;
  out << "   (" << (n == 2 ? "X1 across, X2 up" : "X exponent") << ")\n";
  return out.str();
}

// ------------------------------------------------------------------ run

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rootpat: roots and zero-coefficient patterns of polynomials over finite fields", "rootpat"};
  app.require_subcommand(1);

  std::string field_spec, poly_path, output, suite = "thm1", budget = "exhaustive", mode = "shift";
  std::vector<std::string> roots, complements;
  bool grid = false, constructive = false, count_only = false, paper = false;
  std::uint32_t uset_q = 0, verify_q = 0;
  std::uint64_t uset_m = 0, seed = 0, max_evaluations = 100'000'000;
  std::size_t uset_n = 1, verify_n = 1;
  unsigned jobs = 1;

  auto* field_cmd = app.add_subcommand("field", "Print a field summary and its subgroup lattice");
  field_cmd->add_option("spec", field_spec, "q, or p^k/c_k,...,c_0")->required();

  auto* build_cmd = app.add_subcommand("build", "Build a product of linear factors and print its record");
  build_cmd->add_option("--field", field_spec)->required();
  auto* build_roots = build_cmd->add_option("--roots", roots, "root lists S_i, axes separated by ';'");
  auto* build_T = build_cmd->add_option("--T", complements, "complement lists T_i, axes separated by ';'");
  build_roots->excludes(build_T);
  build_cmd->add_option("--output", output, "write the polynomial record to this file");

  auto* support_cmd = app.add_subcommand("support", "Print the support of a polynomial record");
  support_cmd->add_option("--poly", poly_path)->required();
  support_cmd->add_flag("--grid", grid, "render an ASCII grid (n <= 2)");

  auto* uset_cmd = app.add_subcommand("uset", "List the members of U(q, m, n)");
  uset_cmd->add_option("q", uset_q)->required();
  uset_cmd->add_option("m", uset_m)->required();
  uset_cmd->add_option("n", uset_n)->required();
  uset_cmd->add_flag("--count-only", count_only);
  auto* uset_grid = uset_cmd->add_flag("--grid", grid);
  uset_grid->excludes(uset_cmd->get_option("--count-only"));

  auto* thm1_cmd = app.add_subcommand("check-thm1", "Check for an all-zero window of m coefficients");
  thm1_cmd->add_option("--poly", poly_path)->required();
  auto* thm3_cmd = app.add_subcommand("check-thm3", "Check that every cyclic shift meets U(q, m, n)");
  thm3_cmd->add_option("--poly", poly_path)->required();

  auto* coset_cmd = app.add_subcommand("check-coset", "Find gamma_i H_i containing each T_i");
  coset_cmd->add_option("--field", field_spec)->required();
  coset_cmd->add_option("--T", complements)->required();

  auto* gap_cmd = app.add_subcommand("find-gap", "Search for a zero gap of a product of linear factors");
  gap_cmd->add_option("--field", field_spec)->required();
  auto* gap_roots = gap_cmd->add_option("--roots", roots);
  auto* gap_T = gap_cmd->add_option("--T", complements);
  gap_roots->excludes(gap_T);
  gap_cmd->add_flag("--constructive", constructive, "build the shift from the coset condition");
  gap_cmd->add_option("--mode", mode, "shift or window")->check(CLI::IsMember({"shift", "window"}));
  gap_cmd->add_flag("--grid", grid);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite and append its report");
  verify_cmd->add_option("--suite", suite)->required();
  verify_cmd->add_option("--q", verify_q)->required();
  verify_cmd->add_option("--n", verify_n);
  verify_cmd->add_option("--budget", budget, "exhaustive or an instance count");
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--jobs", jobs);
  verify_cmd->add_option("--output", output, "results directory")->default_str("results");
  verify_cmd->add_option("--max-evaluations", max_evaluations);

  auto* examples_cmd = app.add_subcommand("examples", "Reproduce the worked F_16 examples");
  examples_cmd->add_flag("--paper", paper)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*field_cmd) {
      print_field(out, *parse_field_spec(field_spec));
      return kSuccess;
    }

    if (*build_cmd) {
      const FieldPtr field = parse_field_spec(field_spec);
      const RootBoxes boxes = boxes_from(field, roots, complements);
      const MultiPoly p = product_form(boxes);
      const std::string record = poly_to_record(p);
      if (output.empty()) {
        out << record << "\n";
      } else {
        std::ofstream file(output);
        if (!file) throw Error("cannot write " + output);
        file << record << "\n";
      }
      out << "support: " << format_support(p.support()) << "\n";
      out << "m = " << boxes.m() << "\n";
      return kSuccess;
    }

    if (*support_cmd) {
      const MultiPoly p = poly_from_record(read_file(poly_path));
      out << "support (" << p.term_count() << " terms): " << format_support(p.support()) << "\n";
      if (grid) {
        if (p.vars() > 2) {
          for (const auto& mono : p.support()) out << format_tuple(mono.exponents) << "\n";
          return kSuccess;
        }
        const std::uint64_t m = nonroot_count(p);
        out << "m = " << m << "\n";
        out << render_grid(p, m, m >= 2 ? find_shift(p, m) : std::nullopt);
      }
      return kSuccess;
    }

    if (*uset_cmd) {
      const USet u(uset_q, uset_m, uset_n);
      out << "U(" << uset_q << "," << uset_m << "," << uset_n << "): " << u.size() << " members\n";
      if (count_only) return kSuccess;
      if (grid && uset_n <= 2) {
        MultiPoly empty(field_of_order(uset_q), uset_n);
        out << render_grid(empty, uset_m + 1, std::nullopt);
        return kSuccess;
      }
      for (const auto& mono : u.members()) out << format_tuple(mono.exponents) << "\n";
      return kSuccess;
    }

    if (*thm1_cmd) {
      const MultiPoly p = poly_from_record(read_file(poly_path));
      const auto r = theorem1_check(p.to_uni());
      out << "m = " << r.m << ", longest cyclic zero run = " << r.longest_zero_run << "\n";
      if (r.holds) {
        out << "holds: no window of " << r.m << " consecutive zero coefficients\n";
        return kSuccess;
      }
      out << "violation: coefficients b_" << *r.window << " .. (" << r.m << " of them, cyclic) are zero\n";
      return kNegative;
    }

    if (*thm3_cmd) {
      const MultiPoly p = poly_from_record(read_file(poly_path));
      const auto r = theorem3_check(p);
      out << "m = " << r.m << "\n";
      if (r.holds) {
        out << "holds: every cyclic shift meets U(q," << r.m << "," << p.vars() << ")\n";
        return kSuccess;
      }
      out << "violation: shift " << format_tuple(r.shift->exponents) << " misses U(q,m,n)\n";
      return kNegative;
    }

    if (*coset_cmd) {
      const FieldPtr field = parse_field_spec(field_spec);
      const auto axes = collect_axes(*field, complements);
      CosetCertificate cert;
      bool all = true;
      for (std::size_t i = 0; i < axes.size(); ++i) {
        const auto c = coset_containment(*field, axes[i]);
        out << "axis " << i + 1 << ": T = " << join_elements(*field, axes[i]);
        if (!c) {
          out << " lies in no proper coset\n";
          all = false;
          continue;
        }
        out << " ⊆ " << element_string(*field, c->witness.gamma) << "·H, d=" << c->witness.subgroup.order
            << " (valid d: " << format_tuple(c->valid_orders) << ")\n";
        cert.axes.push_back(*c);
      }
      if (!all) return kNegative;
      out << coset_certificate_record(*field, cert, true) << "\n";
      return kSuccess;
    }

    if (*gap_cmd) {
      if (constructive && mode == "window") throw CLI::ValidationError("--constructive", "conflicts with --mode window");
      const FieldPtr field = parse_field_spec(field_spec);
      const RootBoxes boxes = boxes_from(field, roots, complements);
      const MultiPoly p = product_form(boxes);
      out << "m = " << boxes.m() << "\n";
      if (constructive) {
        const auto coset = coset_condition(boxes);
        if (!coset) {
          out << "coset condition fails; no constructive shift\n";
          return kNegative;
        }
        out << coset_certificate_record(*field, *coset, true) << "\n";
        return report_gap(out, p, constructive_shift(boxes, *coset), grid);
      }
      const auto cert = gap_search(boxes, mode == "window" ? GapMode::Window : GapMode::Shift);
      return report_gap(out, p, cert, grid);
    }

    if (*verify_cmd) {
      SuiteSpec spec;
      spec.suite = parse_suite_id(suite);
      spec.q = verify_q;
      spec.n = verify_n;
      spec.jobs = jobs;
      spec.max_evaluations = max_evaluations;
      if (budget == "exhaustive") {
        spec.budget = Budget::exhaustive();
      } else {
        std::uint64_t count = 0;
        try {
          std::size_t used = 0;
          count = std::stoull(budget, &used);
          if (used != budget.size()) throw std::invalid_argument(budget);
        } catch (const std::exception&) {
          throw Error("--budget must be 'exhaustive' or an instance count");
        }
        spec.budget = Budget::sampled(count, seed);
      }
      const Report report = run_suite(spec);
      const auto path = append_report(report, output.empty() ? "results" : output);
      out << "suite " << suite_name(spec.suite) << " q=" << spec.q << " n=" << spec.n << ": " << report.instances
          << " instances, " << report.violation_count << " violations, " << (report.passed() ? "pass" : "FAIL")
          << "\n";
      out << "report: " << path.string() << "\n";
      if (!report.passed()) {
        for (const auto& v : report.violations) err << "counterexample #" << v.index << " [" << v.direction << "]\n";
        return kNegative;
      }
      return kSuccess;
    }

    if (*examples_cmd) return run_worked_examples(out);
  } catch (const VerificationError& e) {
    err << "internal verification failure: " << e.what() << "\n";
    return kInternal;
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace rootpat::cli

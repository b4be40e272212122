#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rootpat/error.hpp"
#include "rootpat/io.hpp"
#include "rootpat/patterns.hpp"
#include "support.hpp"

using namespace rootpat;
using testing_support::naive_of;
using testing_support::subset_of;
using testing_support::to_naive;

namespace {

struct F16 {
  FieldPtr f = field_of_order(16);
  std::vector<Elem> powers(std::initializer_list<int> ks) const {
    std::vector<Elem> v;
    for (int k : ks) v.push_back(f->exp(k));
    return v;
  }
  RootBoxes example2() const {
    return RootBoxes::from_complements(f, {powers({2, 5, 8, 11, 14}), powers({1, 6, 11})});
  }
};

std::set<Monomial> as_set(const std::vector<Monomial>& v) { return {v.begin(), v.end()}; }

UniPoly product_for_T(const FieldPtr& f, const std::vector<Elem>& T) {
  return from_roots(f, RootBoxes::from_complements(f, {T}).S(0));
}

}  // namespace

TEST(USetTest, Examples) {
  const USet u1(16, 14, 2);
  EXPECT_TRUE(u1.contains(Monomial{14, 14}));
  EXPECT_FALSE(u1.contains(Monomial{10, 12}));
  EXPECT_EQ(USet(7, 0, 3).size(), 0u);
  EXPECT_EQ(as_set(USet(7, 1, 3).members()), (std::set<Monomial>{Monomial{5, 5, 5}}));
  EXPECT_THROW(USet(2, 1, 1), Error);
  EXPECT_THROW(USet(5, 1, 0), Error);
}

TEST(USetTest, UnivariateIsTopWindow) {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    for (std::uint64_t m = 0; m <= q + 1; ++m) {
      std::set<Monomial> want;
      for (std::int64_t e = static_cast<std::int64_t>(q) - 1 - static_cast<std::int64_t>(m); e <= q - 2; ++e)
        if (e >= 0) want.insert(Monomial{static_cast<std::uint32_t>(e)});
      EXPECT_EQ(as_set(USet(q, m, 1).members()), want) << q << " " << m;
    }
  }
}

TEST(USetTest, MembershipMatchesInequality) {
  for (std::uint32_t q : {4u, 5u, 7u}) {
    for (std::uint64_t m : {1u, 2u, 5u, 9u, 20u}) {
      const USet u(q, m, 3);
      const auto members = as_set(u.members());
      EXPECT_EQ(u.size(), members.size());
      for (std::uint32_t a = 0; a < q - 1; ++a)
        for (std::uint32_t b = 0; b < q - 1; ++b)
          for (std::uint32_t c = 0; c < q - 1; ++c) {
            const bool in = oracle::naive_in_u({a, b, c}, q, m);
            EXPECT_EQ(u.contains(Monomial{a, b, c}), in);
            EXPECT_EQ(members.count(Monomial{a, b, c}) > 0, in);
          }
    }
  }
}

TEST(WSetTest, AxisExponentsAndShiftInvariance) {
  const WSet w(16, {{5, 3}, {3, 3}});
  EXPECT_EQ(w.axis_exponents(0), (std::vector<std::uint32_t>{0, 1, 2, 5, 6, 7, 10, 11, 12}));
  EXPECT_EQ(w.axis_exponents(1), (std::vector<std::uint32_t>{0, 3, 6, 9, 12}));
  const auto members = as_set(w.members());
  EXPECT_EQ(members.size(), 45u);
  for (std::uint32_t j1 = 0; j1 < 3; ++j1)
    for (std::uint32_t j2 = 0; j2 < 5; ++j2) {
      std::set<Monomial> shifted;
      for (const auto& m : members) shifted.insert(Monomial{(m[0] + 5 * j1) % 15, (m[1] + 3 * j2) % 15});
      EXPECT_EQ(shifted, members);
    }
  EXPECT_THROW(WSet(16, {{4, 1}}), Error);
  EXPECT_THROW(WSet(16, {{3, 4}}), Error);
}

TEST(Theorem1Test, Examples) {
  auto f5 = field_of_order(5);
  const UniPoly p(f5, {Elem{1}, Elem{0}, Elem{1}});
  const auto r = theorem1_check(p);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.m, 2u);
  EXPECT_EQ(r.longest_zero_run, 1u);

  F16 e;
  const auto r16 = theorem1_check(product_for_T(e.f, e.powers({1, 6, 11})));
  EXPECT_TRUE(r16.holds);
  EXPECT_EQ(r16.m, 3u);
  EXPECT_EQ(r16.longest_zero_run, 2u);

  const auto rc = theorem1_check(UniPoly(e.f, {Elem{7}}));
  EXPECT_TRUE(rc.holds);
  EXPECT_EQ(rc.m, 15u);
  EXPECT_EQ(rc.longest_zero_run, 14u);
}

TEST(Theorem1Test, Errors) {
  auto f = field_of_order(5);
  EXPECT_THROW(theorem1_check(UniPoly(f)), Error);
  EXPECT_THROW(theorem1_check(UniPoly(f, {Elem{1}, Elem{0}, Elem{0}, Elem{0}, Elem{1}})), Error);
}

TEST(Theorem1Test, ZeroRunsMatchBruteForceOverF5) {
  auto f = field_of_order(5);
  const auto naive = naive_of(*f);
  for (std::uint32_t code = 1; code < 625; ++code) {
    std::vector<Elem> c(4);
    for (std::uint32_t i = 0, v = code; i < 4; ++i, v /= 5) c[i] = Elem{v % 5};
    const UniPoly p(f, c);
    const auto r = theorem1_check(p);
    const auto b = oracle::dense(to_naive(MultiPoly::from_uni(p)), 5);
    const auto m = oracle::naive_nonroots(naive, to_naive(MultiPoly::from_uni(p)), 1);
    ASSERT_EQ(r.m, m);
    bool any = false;
    std::uint32_t longest = 0;
    for (std::uint32_t k = 0; k < 4; ++k) {
      any = any || oracle::naive_window_zero(b, k, m);
      for (std::uint32_t len = 1; len <= 4; ++len)
        if (oracle::naive_window_zero(b, k, len)) longest = std::max(longest, len);
    }
    ASSERT_EQ(r.holds, !any);
    ASSERT_EQ(r.longest_zero_run, longest);
  }
}

TEST(FootprintTest, Examples) {
  auto f = field_of_order(7);
  EXPECT_EQ(footprint_bound(MultiPoly::constant(f, 2, f->one()), MonomialOrder::lex()), 36u);
  const auto p = MultiPoly::from_uni(from_roots(f, std::vector<Elem>{Elem{1}, Elem{2}, Elem{4}}));
  EXPECT_EQ(footprint_bound(p, MonomialOrder::lex()), 3u);

  F16 e;
  const auto p2 = product_form(e.example2());
  for (const auto& order : {MonomialOrder::lex(), MonomialOrder::graded_lex()})
    EXPECT_EQ(footprint_bound(p2, order), 15u);

  MultiPoly big(f, 1);
  big.set(Monomial{6}, f->one());
  EXPECT_THROW(footprint_bound(big, MonomialOrder::lex()), Error);
  EXPECT_THROW(footprint_bound(MultiPoly(f, 1), MonomialOrder::lex()), Error);
}

TEST(Theorem3Test, Example2HoldsOverAllShifts) {
  F16 e;
  const auto r = theorem3_check(product_form(e.example2()));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.m, 15u);
}

TEST(Theorem3Test, RandomF5Bivariate) {
  std::mt19937_64 rng(21);
  auto f = field_of_order(5);
  for (int trial = 0; trial < 200; ++trial) {
    MultiPoly p(f, 2);
    for (int t = 0; t < 5; ++t)
      p.set(Monomial{static_cast<std::uint32_t>(rng() % 4), static_cast<std::uint32_t>(rng() % 4)},
            Elem{static_cast<std::uint32_t>(rng() % 5)});
    if (p.is_zero()) continue;
    EXPECT_TRUE(theorem3_check(p).holds);
  }
}

TEST(Theorem3Test, Errors) {
  auto f = field_of_order(5);
  EXPECT_THROW(theorem3_check(MultiPoly(f, 2)), Error);
  MultiPoly p(f, 2);
  p.set(Monomial{4, 0}, f->one());
  EXPECT_THROW(theorem3_check(p), Error);
}

TEST(GapSearchTest, F7WindowExample) {
  auto f = field_of_order(7);
  const RootBoxes boxes(f, {{Elem{1}, Elem{3}, Elem{4}, Elem{6}}});
  const auto cert = gap_search(boxes, GapMode::Window);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->shift, Monomial{1});
  EXPECT_EQ(cert->avoided_m, 1u);
  EXPECT_TRUE(cert->verified);
  EXPECT_TRUE(verify_gap(product_form(boxes), *cert));
}

TEST(GapSearchTest, Example2Shift) {
  F16 e;
  const auto cert = gap_search(e.example2(), GapMode::Shift);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->shift, (Monomial{5, 3}));
  EXPECT_EQ(cert->avoided_m, 14u);
  EXPECT_TRUE(cert->verified);
}

TEST(GapSearchTest, F8GeneratorPairHasNoGap) {
  auto f = field_of_order(8);
  const auto boxes = RootBoxes::from_complements(f, {{f->one(), f->generator()}});
  EXPECT_FALSE(gap_search(boxes, GapMode::Window));
  EXPECT_FALSE(gap_search(boxes, GapMode::Shift));
  const auto b = oracle::dense(to_naive(product_form(boxes)), 8);
  EXPECT_FALSE(oracle::naive_window_gap(b, 8, 2));
}

TEST(GapSearchTest, Errors) {
  auto f = field_of_order(7);
  // m = 1
  EXPECT_THROW(gap_search(RootBoxes(f, {{Elem{1}, Elem{2}, Elem{3}, Elem{4}, Elem{5}}}), GapMode::Window), Error);
  MultiPoly not_monic(f, 1);
  not_monic.set(Monomial{1}, Elem{2});
  not_monic.set(Monomial{0}, Elem{1});
  EXPECT_THROW(gap_search(not_monic, 5, GapMode::Window), Error);
  const auto p = product_form(RootBoxes(f, {{Elem{1}, Elem{3}}}));
  EXPECT_THROW(gap_search(p, 3, GapMode::Window), Error);  // m must be q-1-deg
  EXPECT_THROW(gap_search(p, 1, GapMode::Shift), Error);
  EXPECT_THROW(gap_search(RootBoxes(f, {{Elem{1}}, {Elem{2}}}), GapMode::Window), Error);
}

TEST(GapSearchTest, WindowMatchesOracleOnEverySubset) {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u}) {
    auto f = field_of_order(q);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (q - 1)); ++mask) {
      const auto S = subset_of(q, mask);
      const std::uint64_t m = q - 1 - S.size();
      if (m < 2 || m > q - 2) continue;
      const RootBoxes boxes(f, {S});
      const auto p = product_form(boxes);
      const auto want = oracle::naive_window_gap(oracle::dense(to_naive(p), q), q, m);
      const auto got = gap_search(boxes, GapMode::Window);
      ASSERT_EQ(got.has_value(), want.has_value()) << q << " " << mask;
      if (got) ASSERT_EQ(got->shift[0], *want);
    }
  }
}

TEST(GapSearchTest, ShiftMatchesOracleOnBivariateBoxes) {
  std::mt19937_64 rng(17);
  for (std::uint32_t q : {4u, 5u, 7u}) {
    auto f = field_of_order(q);
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<std::vector<Elem>> S(2);
      for (auto& axis : S)
        for (std::uint32_t x = 1; x < q; ++x)
          if (rng() % 2) axis.push_back(Elem{x});
      const RootBoxes boxes(f, S);
      if (boxes.m() < 2) continue;
      const auto p = product_form(boxes);
      const auto want = oracle::naive_shift_gap(to_naive(p), 2, q, boxes.m() - 1, 1);
      const auto got = gap_search(boxes, GapMode::Shift);
      ASSERT_EQ(got.has_value(), want.has_value());
      if (got) ASSERT_EQ(got->shift.exponents, *want);
    }
  }
}

TEST(VerifyGapTest, RejectsBadCertificates) {
  F16 e;
  const auto p = product_form(e.example2());
  GapCertificate bad{GapMode::Shift, Monomial{1, 1}, 16, 14, 2, true};
  EXPECT_FALSE(verify_gap(p, bad));
  GapCertificate good{GapMode::Shift, Monomial{5, 3}, 16, 14, 2, true};
  EXPECT_TRUE(verify_gap(p, good));
  GapCertificate zero_shift{GapMode::Shift, Monomial{0, 3}, 16, 14, 2, true};
  EXPECT_FALSE(verify_gap(p, zero_shift));
}

TEST(CosetConditionTest, Examples) {
  F16 e;
  const auto cert = coset_condition(e.example2());
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->axes[0].witness.subgroup.order, 5u);
  EXPECT_EQ(cert->axes[1].witness.subgroup.order, 3u);

  auto f = field_of_order(7);
  const auto singles = RootBoxes::from_complements(f, {{Elem{3}}, {Elem{5}}, {Elem{2}, Elem{4}}});
  const auto c = coset_condition(singles);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->axes[0].witness.subgroup.order, 1u);
  EXPECT_EQ(c->axes[1].witness.subgroup.order, 1u);

  const RootBoxes full_T(f, {{}, {Elem{1}}});
  EXPECT_FALSE(coset_condition(full_T));
}

TEST(CosetConditionTest, HypothesisViolations) {
  auto f = field_of_order(7);
  EXPECT_THROW(coset_condition(RootBoxes(f, {f->nonzero_elements()})), Error);
  EXPECT_THROW(coset_condition(RootBoxes::from_complements(f, {{Elem{1}}, {Elem{2}}})), Error);
}

TEST(ConstructiveShiftTest, Example2) {
  F16 e;
  const auto boxes = e.example2();
  const auto cert = constructive_shift(boxes, *coset_condition(boxes));
  EXPECT_EQ(cert.shift, (Monomial{5, 3}));
  EXPECT_TRUE(cert.verified);
  const auto p = product_form(boxes);
  EXPECT_EQ(as_set(cyclic_shift(p, cert.shift).support()), as_set(p.support()));
}

TEST(ConstructiveShiftTest, F7Pair) {
  auto f = field_of_order(7);
  const auto boxes = RootBoxes::from_complements(f, {{Elem{2}, Elem{5}}});
  const auto cert = constructive_shift(boxes, *coset_condition(boxes));
  EXPECT_EQ(cert.shift, Monomial{2});
  const auto p = product_form(boxes);
  EXPECT_EQ(as_set(p.support()), (std::set<Monomial>{Monomial{0}, Monomial{2}, Monomial{4}}));
  EXPECT_EQ(as_set(cyclic_shift(p, cert.shift).support()), as_set(p.support()));
  EXPECT_FALSE(USet(7, 1, 1).contains(Monomial{4}));
  EXPECT_TRUE(verify_gap(p, cert));
}

TEST(ConstructiveShiftTest, RejectsMEqualsOne) {
  auto f = field_of_order(7);
  const auto boxes = RootBoxes::from_complements(f, {{Elem{3}}, {Elem{5}}, {Elem{2}, Elem{4}}});
  // m = 2 here; with a single T of size one m = 1.
  EXPECT_NO_THROW(constructive_shift(boxes, *coset_condition(boxes)));
  const auto one = RootBoxes::from_complements(f, {{Elem{3}}});
  CosetCertificate trivial{{*coset_containment(*f, std::vector<Elem>{Elem{3}})}};
  EXPECT_THROW(constructive_shift(one, trivial), Error);
}

TEST(ConstructiveShiftTest, RejectsMismatchedCertificate) {
  F16 e;
  const auto boxes = e.example2();
  auto cert = *coset_condition(boxes);
  cert.axes.pop_back();
  EXPECT_THROW(constructive_shift(boxes, cert), Error);
}

TEST(ProductSupportTest, AvoidsUOfMMinusOne) {
  std::mt19937_64 rng(23);
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u}) {
    auto f = field_of_order(q);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 1 + trial % 3;
      std::vector<std::vector<Elem>> S(n);
      for (auto& axis : S)
        for (std::uint32_t x = 1; x < q; ++x)
          if (rng() % 2) axis.push_back(Elem{x});
      const RootBoxes boxes(f, S);
      if (boxes.m() < 2) continue;
      const USet u(q, boxes.m() - 1, n);
      for (const auto& mono : product_form(boxes).support()) EXPECT_FALSE(u.contains(mono));
    }
  }
}

TEST(Prop1Test, Examples) {
  F16 e;
  const auto coset3 = e.powers({1, 6, 11});
  const auto S3 = RootBoxes::from_complements(e.f, {coset3}).S(0);
  const auto r = prop1_structure_check(e.f, S3, 3);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(from_roots(e.f, S3).support(), (std::vector<std::uint32_t>{0, 3, 6, 9, 12}));

  const auto coset5 = e.powers({2, 5, 8, 11, 14});
  for (std::uint64_t mask = 0; mask < 32; ++mask) {
    if (std::popcount(mask) != 3) continue;
    std::vector<Elem> T;
    for (int i = 0; i < 5; ++i)
      if (mask >> i & 1) T.push_back(coset5[i]);
    const auto S = RootBoxes::from_complements(e.f, {T}).S(0);
    const auto reports = prop1_structure_check_all(e.f, S);
    ASSERT_EQ(reports.size(), 1u);
    EXPECT_EQ(reports[0].d, 5u);
    EXPECT_TRUE(reports[0].ok());
  }

  auto f7 = field_of_order(7);
  const auto s7 = RootBoxes::from_complements(f7, {{Elem{2}, Elem{5}}}).S(0);
  EXPECT_TRUE(prop1_structure_check(f7, s7, 2).ok());
  EXPECT_EQ(from_roots(f7, s7).support(), (std::vector<std::uint32_t>{0, 2, 4}));
}

TEST(Prop1Test, PreconditionFailures) {
  F16 e;
  const auto S = RootBoxes::from_complements(e.f, {e.powers({1, 6, 11})}).S(0);
  EXPECT_THROW(prop1_structure_check(e.f, S, 5), Error);
  EXPECT_THROW(prop1_structure_check(e.f, S, 4), Error);
  const auto S2 = RootBoxes::from_complements(e.f, {e.powers({0, 1})}).S(0);
  EXPECT_THROW(prop1_structure_check_all(e.f, S2), Error);
}

TEST(DisjointRunsTest, Examples) {
  F16 e;
  EXPECT_EQ(disjoint_runs_count(product_for_T(e.f, e.powers({1, 6, 11})), 3), 5u);
  EXPECT_EQ(disjoint_runs_count(product_for_T(e.f, e.powers({2, 5, 8, 11, 14})), 5), 3u);
  auto f7 = field_of_order(7);
  EXPECT_EQ(disjoint_runs_count(product_for_T(f7, {Elem{2}, Elem{5}}), 2), 3u);
}

TEST(DisjointRunsTest, Errors) {
  auto f8 = field_of_order(8);
  EXPECT_THROW(disjoint_runs_count(product_for_T(f8, {f8->one(), f8->generator()}), 2), Error);
  F16 e;
  EXPECT_THROW(disjoint_runs_count(product_for_T(e.f, e.powers({1, 6, 11})), 4), Error);
}

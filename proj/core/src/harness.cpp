#include "rootpat/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "rootpat/error.hpp"
#include "rootpat/io.hpp"
#include "rootpat/patterns.hpp"

namespace rootpat {

using nlohmann::json;

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct SuiteInfo {
  SuiteId id;
  std::string_view name;
};

constexpr SuiteInfo kSuites[] = {
    {SuiteId::Thm1, "thm1"},       {SuiteId::Thm2Iff, "thm2-iff"}, {SuiteId::Thm3, "thm3"},
    {SuiteId::Thm4Iff, "thm4-iff"}, {SuiteId::Prop1, "prop1"},      {SuiteId::Prop2, "prop2"},
    {SuiteId::Lemma1, "lemma1"},   {SuiteId::RunsCount, "runs-count"},
};

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

std::vector<Elem> mask_to_set(std::uint64_t mask, std::uint32_t units) {
  std::vector<Elem> s;
  for (std::uint32_t j = 0; j < units; ++j)
    if (mask >> j & 1) s.push_back(Elem{j + 1});
  return s;
}

bool is_sampled(const SuiteSpec& spec) { return spec.budget.kind == Budget::Kind::Sampled; }

}  // namespace

// ------------------------------------------------------------- naming

std::string_view suite_name(SuiteId id) {
  for (const auto& s : kSuites)
    if (s.id == id) return s.name;
  return "unknown";
}

SuiteId parse_suite_id(std::string_view name) {
  for (const auto& s : kSuites)
    if (s.name == name) return s.id;
  throw Error("unknown suite id '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- RNG

CounterRng::CounterRng(std::uint64_t key, std::uint64_t index) : state_(mix64(key ^ mix64(index + kGolden))) {}

CounterRng::result_type CounterRng::operator()() {
  state_ += kGolden;
  return mix64(state_);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("empty range");
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do x = (*this)();
  while (x >= limit);
  return x % bound;
}

// ------------------------------------------------------------ streams

InstanceStream::InstanceStream(const SuiteSpec& spec) : spec_(spec) {
  if (spec.q < 3) throw Error("suites need q >= 3");
  field_ = field_of_order(spec.q);
  if (spec.n == 0 || spec.n > 8) throw Error("suites need 1 <= n <= 8");
  if (spec.jobs == 0) throw Error("jobs must be positive");

  const std::uint32_t units = spec.q - 1;
  if (units > 30) throw Error("subset enumeration needs q <= 31");
  const std::uint64_t masks = std::uint64_t{1} << units;
  const bool univariate_only = spec.suite == SuiteId::Thm1 || spec.suite == SuiteId::Thm2Iff ||
                               spec.suite == SuiteId::Prop1 || spec.suite == SuiteId::RunsCount;
  if (univariate_only && spec.n != 1) throw Error(std::string(suite_name(spec.suite)) + " is univariate; use n = 1");
  if (spec.suite == SuiteId::Thm2Iff && spec.q < 4) throw Error("thm2-iff needs q >= 4");

  const bool sampled = is_sampled(spec);
  switch (spec.suite) {
    case SuiteId::Thm1:
      if (sampled) {
        product_part_ = masks;
        size_ = masks + spec.budget.count;
      } else {
        const std::uint64_t all = checked_pow(spec.q, units);
        size_ = all == std::numeric_limits<std::uint64_t>::max() ? all : all - 1;
      }
      break;
    case SuiteId::Thm2Iff:
    case SuiteId::Prop1:
    case SuiteId::RunsCount:
      size_ = sampled ? spec.budget.count : masks;
      break;
    case SuiteId::Thm3:
    case SuiteId::Thm4Iff:
      size_ = sampled ? spec.budget.count : checked_pow(masks, spec.n);
      break;
    case SuiteId::Prop2:
      if (!sampled && spec.n != 1) throw Error("prop2 exhaustive mode covers n = 1 products only");
      product_part_ = spec.n == 1 ? masks : 0;
      size_ = product_part_ + (sampled ? spec.budget.count : 0);
      break;
    case SuiteId::Lemma1:
      if (!sampled) throw Error("lemma1 requires a sampled budget");
      size_ = spec.budget.count;
      break;
  }

  const std::uint64_t per_instance = checked_pow(spec.suite == SuiteId::Lemma1 ? spec.q : units, spec.n);
  if (size_ > 0 && (per_instance == std::numeric_limits<std::uint64_t>::max() ||
                    size_ > spec.max_evaluations / per_instance))
    throw Error("infeasible budget: " + std::string(suite_name(spec.suite)) + " over q=" + std::to_string(spec.q) +
                " needs more than " + std::to_string(spec.max_evaluations) + " evaluations");
}

InstanceStream enumerate_instances(const SuiteSpec& spec) { return InstanceStream(spec); }

std::optional<Instance> InstanceStream::at(std::uint64_t index) const {
  if (index >= size_) throw Error("instance index out of range");
  const Field& f = *field_;
  const std::uint32_t q = spec_.q;
  const std::uint32_t units = q - 1;
  const std::uint64_t masks = std::uint64_t{1} << units;
  const std::size_t n = spec_.n;
  CounterRng rng(fnv1a(suite_name(spec_.suite)) ^ mix64(spec_.budget.seed), index);

  Instance inst;
  inst.index = index;

  auto random_nonzero = [&] { return Elem{static_cast<std::uint32_t>(1 + rng.below(units))}; };
  auto random_poly = [&] {
    MultiPoly p(field_, n);
    const std::uint64_t box = checked_pow(units, n);
    const std::uint64_t terms = 1 + rng.below(std::min<std::uint64_t>(6, box));
    for (std::uint64_t t = 0; t < terms; ++t) {
      Monomial m = Monomial::one(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(rng.below(units));
      p.set(m, random_nonzero());
    }
    return p;
  };
  // Mask for one axis with s in [lo, hi].
  auto random_mask = [&](std::uint32_t lo, std::uint32_t hi) {
    while (true) {
      const std::uint64_t mask = rng.below(masks);
      const auto s = static_cast<std::uint32_t>(std::popcount(mask));
      if (s >= lo && s <= hi) return mask;
    }
  };
  auto coset_ok = [&](const std::vector<Elem>& S, std::uint32_t min_t) {
    const auto T = RootBoxes(field_, {S}).T(0);
    return T.size() >= min_t && coset_containment(f, T).has_value();
  };

  switch (spec_.suite) {
    case SuiteId::Thm1: {
      if (index < product_part_) {
        auto S = mask_to_set(index, units);
        if (S.size() == units) return std::nullopt;
        inst.poly = MultiPoly::from_uni(from_roots(field_, S));
        inst.sets = {std::move(S)};
        return inst;
      }
      std::vector<Elem> coeffs(units);
      if (is_sampled(spec_)) {
        do
          for (auto& c : coeffs) c = Elem{static_cast<std::uint32_t>(rng.below(q))};
        while (std::all_of(coeffs.begin(), coeffs.end(), [](Elem c) { return c.is_zero(); }));
      } else {
        std::uint64_t rest = index + 1;
        for (auto& c : coeffs) {
          c = Elem{static_cast<std::uint32_t>(rest % q)};
          rest /= q;
        }
      }
      inst.poly = MultiPoly::from_uni(UniPoly(field_, std::move(coeffs)));
      return inst;
    }
    case SuiteId::Thm2Iff: {
      const std::uint64_t mask = is_sampled(spec_) ? random_mask(1, units - 2) : index;
      auto S = mask_to_set(mask, units);
      const std::uint64_t m = units - S.size();
      if (m < 2 || m > q - 2) return std::nullopt;
      inst.sets = {std::move(S)};
      return inst;
    }
    case SuiteId::Prop1:
    case SuiteId::RunsCount: {
      const std::uint32_t min_t = spec_.suite == SuiteId::RunsCount ? 2 : 1;
      std::vector<Elem> S;
      if (is_sampled(spec_)) {
        do S = mask_to_set(random_mask(0, units - min_t), units);
        while (!coset_ok(S, min_t));
      } else {
        S = mask_to_set(index, units);
        if (!coset_ok(S, min_t)) return std::nullopt;
      }
      inst.sets = {std::move(S)};
      return inst;
    }
    case SuiteId::Thm3:
    case SuiteId::Thm4Iff: {
      if (spec_.suite == SuiteId::Thm3 && is_sampled(spec_)) {
        inst.poly = random_poly();
        return inst;
      }
      const bool admissible_only = spec_.suite == SuiteId::Thm4Iff;
      std::vector<std::uint64_t> axis_masks(n);
      if (is_sampled(spec_)) {
        do
          for (auto& mask : axis_masks) mask = random_mask(1, units - 1);
        while (std::all_of(axis_masks.begin(), axis_masks.end(),
                           [&](std::uint64_t mask) { return std::popcount(mask) == static_cast<int>(units - 1); }));
      } else {
        std::uint64_t rest = index;
        for (std::size_t i = n; i-- > 0;) {
          axis_masks[i] = rest % masks;
          rest /= masks;
        }
      }
      bool all_near_full = true;
      for (std::uint64_t mask : axis_masks) {
        const auto s = static_cast<std::uint32_t>(std::popcount(mask));
        if (s == units) return std::nullopt;
        if (admissible_only && s == 0) return std::nullopt;
        all_near_full = all_near_full && s == units - 1;
        inst.sets.push_back(mask_to_set(mask, units));
      }
      if (admissible_only && all_near_full) return std::nullopt;
      if (!admissible_only) inst.poly = product_form(RootBoxes(field_, inst.sets));
      return inst;
    }
    case SuiteId::Prop2: {
      if (index < product_part_) {
        auto S = mask_to_set(index, units);
        if (S.size() == units) return std::nullopt;
        inst.poly = MultiPoly::from_uni(from_roots(field_, S));
        inst.sets = {std::move(S)};
        return inst;
      }
      inst.poly = random_poly();
      return inst;
    }
    case SuiteId::Lemma1: {
      auto shuffled = [&](std::vector<Elem> v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
        return v;
      };
      std::vector<Elem> all(q);
      for (std::uint32_t r = 0; r < q; ++r) all[r] = Elem{r};
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t len = 2 + rng.below(q - 1);
        auto axis = shuffled(all);
        axis.resize(len);
        auto roots = shuffled(axis);
        roots.resize(rng.below(len));
        inst.grid.push_back(std::move(axis));
        inst.sets.push_back(std::move(roots));
      }
      if (std::all_of(inst.sets.begin(), inst.sets.end(), [](const auto& b) { return b.empty(); }))
        inst.sets[0] = {inst.grid[0][0]};

      std::vector<std::size_t> idx(n, 0);
      std::vector<std::size_t> on_zero_set;
      while (true) {
        bool vanishes = false;
        for (std::size_t i = 0; i < n; ++i) {
          const auto& b = inst.sets[i];
          vanishes = vanishes || std::find(b.begin(), b.end(), inst.grid[i][idx[i]]) != b.end();
        }
        if (vanishes) on_zero_set.push_back(inst.values.size());
        inst.values.push_back(vanishes ? Elem{} : Elem{static_cast<std::uint32_t>(rng.below(q))});
        std::size_t axis = n;
        bool done = true;
        while (axis > 0) {
          --axis;
          if (++idx[axis] < inst.grid[axis].size()) {
            done = false;
            break;
          }
          idx[axis] = 0;
        }
        if (done) break;
      }
      inst.perturb_at = on_zero_set[rng.below(on_zero_set.size())];
      inst.perturb_value = random_nonzero();
      return inst;
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------- running

namespace {

json dlog_sets(const Field& f, const std::vector<std::vector<Elem>>& sets) {
  json out = json::array();
  for (const auto& s : sets) {
    json axis = json::array();
    for (Elem x : s) axis.push_back(element_string(f, x));
    out.push_back(std::move(axis));
  }
  return out;
}

std::string serialize_instance(const Field& f, const Instance& inst, SuiteId suite) {
  json record;
  record["field"] = field_spec_string(f);
  record["suite"] = suite_name(suite);
  record["index"] = inst.index;
  if (!inst.sets.empty()) record["sets"] = dlog_sets(f, inst.sets);
  if (inst.poly) record["poly"] = json::parse(poly_to_record(*inst.poly));
  if (!inst.grid.empty()) {
    record["grid"] = dlog_sets(f, inst.grid);
    json values = json::array();
    for (Elem v : inst.values) values.push_back(element_string(f, v));
    record["values"] = std::move(values);
    record["perturb_at"] = inst.perturb_at;
    record["perturb_value"] = element_string(f, inst.perturb_value);
  }
  return record.dump();
}

void merge_metric(std::map<std::string, double>& metrics, const std::string& key, double value) {
  auto [it, inserted] = metrics.emplace(key, value);
  if (inserted) return;
  if (key.rfind("max_", 0) == 0)
    it->second = std::max(it->second, value);
  else if (key.rfind("min_", 0) == 0)
    it->second = std::min(it->second, value);
  else
    it->second += value;
}

struct ShardResult {
  std::uint64_t instances = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;
  std::map<std::string, double> metrics;
};

class Checker {
 public:
  Checker(const InstanceStream& stream, ShardResult& out) : stream_(stream), f_(stream.field()), out_(out) {}

  void run(const Instance& inst) {
    inst_ = &inst;
    ++out_.instances;
    try {
      dispatch(inst);
    } catch (const std::exception& e) {
      fail(std::string("exception: ") + e.what());
    }
  }

 private:
  void fail(const std::string& direction) {
    ++out_.violation_count;
    if (out_.violations.size() < Report::kMaxStoredViolations)
      out_.violations.push_back({inst_->index, direction, serialize_instance(*f_, *inst_, stream_.spec().suite)});
  }

  void metric(const std::string& key, double value) { merge_metric(out_.metrics, key, value); }

  void dispatch(const Instance& inst) {
    const Field& f = *f_;
    const std::uint32_t units = f.group_order();
    switch (stream_.spec().suite) {
      case SuiteId::Thm1: {
        const auto r = theorem1_check(inst.poly->to_uni());
        if (!r.holds) fail("zero window at k=" + std::to_string(*r.window));
        metric("max_run_minus_m", static_cast<double>(r.longest_zero_run) - static_cast<double>(r.m));
        break;
      }
      case SuiteId::Thm2Iff: {
        const RootBoxes boxes(f_, inst.sets);
        const bool gap = gap_search(boxes, GapMode::Window).has_value();
        const bool coset = coset_containment(f, boxes.T(0)).has_value();
        if (gap && !coset) fail("gap=>coset");
        if (coset && !gap) fail("coset=>gap");
        metric("gap_instances", gap ? 1 : 0);
        break;
      }
      case SuiteId::Thm3: {
        const MultiPoly p = inst.poly ? *inst.poly : product_form(RootBoxes(f_, inst.sets));
        const auto r = theorem3_check(p);
        if (!r.holds) {
          std::string k;
          for (auto e : r.shift->exponents) k += (k.empty() ? "" : ",") + std::to_string(e);
          fail("shift (" + k + ") misses U(q,m,n)");
        }
        metric("max_m", static_cast<double>(r.m));
        break;
      }
      case SuiteId::Thm4Iff: {
        const RootBoxes boxes(f_, inst.sets);
        const bool gap = gap_search(boxes, GapMode::Shift).has_value();
        const auto coset = coset_condition(boxes);
        if (gap && !coset) fail("gap=>coset");
        if (coset && !gap) fail("coset=>gap");
        if (coset) {
          try {
            const auto cert = constructive_shift(boxes, *coset);
            if (!cert.verified) fail("constructive shift unverified");
          } catch (const VerificationError& e) {
            fail(std::string("constructive shift: ") + e.what());
          }
        }
        metric("coset_instances", coset ? 1 : 0);
        break;
      }
      case SuiteId::Prop1: {
        for (const auto& r : prop1_structure_check_all(f_, inst.sets[0])) {
          if (!r.within_windows) fail("d=" + std::to_string(r.d) + ": support outside windows");
          if (!r.endpoints_nonzero) fail("d=" + std::to_string(r.d) + ": zero window endpoint");
          metric("structure_checks", 1);
        }
        break;
      }
      case SuiteId::RunsCount: {
        const auto& S = inst.sets[0];
        const std::uint64_t m = units - S.size();
        const auto containment = coset_containment(f, RootBoxes(f_, {S}).T(0));
        const std::uint32_t d = containment->witness.subgroup.order;
        const auto count = disjoint_runs_count(from_roots(f_, S), m);
        if (count != units / d)
          fail("runs=" + std::to_string(count) + " expected " + std::to_string(units / d) + " (d=" +
               std::to_string(d) + ")");
        break;
      }
      case SuiteId::Prop2: {
        const MultiPoly& p = *inst.poly;
        const std::uint64_t nonroots = nonroot_count(p);
        for (const auto& [name, order] : {std::pair{"lex", MonomialOrder::lex()},
                                          std::pair{"grlex", MonomialOrder::graded_lex()}}) {
          const std::uint64_t bound = footprint_bound(p, order);
          if (nonroots < bound) fail(std::string("order=") + name + ": nonroots below footprint bound");
          metric("min_slack", static_cast<double>(nonroots) - static_cast<double>(bound));
        }
        if (!inst.sets.empty()) {
          const std::uint64_t expected = units - inst.sets[0].size();
          if (nonroots != expected || footprint_bound(p, MonomialOrder::lex()) != expected)
            fail("product form: bound not attained");
          metric("equality_checks", 1);
        }
        break;
      }
      case SuiteId::Lemma1: {
        const MultiPoly p = root_product(f_, inst.sets);
        const MultiPoly g = interpolate(f_, inst.grid, inst.values);
        const auto quotient = divide_by_root_product(g, inst.grid, inst.sets);
        if (!quotient)
          fail("vanishing G not divisible");
        else if (multiply(*quotient, p) != g)
          fail("quotient * P != G");
        auto perturbed = inst.values;
        perturbed[inst.perturb_at] = inst.perturb_value;
        const MultiPoly g2 = interpolate(f_, inst.grid, perturbed);
        if (divide_by_root_product(g2, inst.grid, inst.sets)) fail("perturbed G still divisible");
        break;
      }
    }
  }

  const InstanceStream& stream_;
  FieldPtr f_;
  ShardResult& out_;
  const Instance* inst_ = nullptr;
};

}  // namespace

Report run_suite(const SuiteSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const InstanceStream stream = enumerate_instances(spec);

  const std::uint64_t total = stream.size();
  const unsigned shards = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(spec.jobs, total)));
  std::vector<ShardResult> results(shards);
  auto work = [&](unsigned shard) {
    const std::uint64_t lo = total * shard / shards, hi = total * (shard + 1) / shards;
    Checker checker(stream, results[shard]);
    for (std::uint64_t i = lo; i < hi; ++i)
      if (auto inst = stream.at(i)) checker.run(*inst);
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned s = 0; s < shards; ++s) threads.emplace_back(work, s);
  }

  Report report;
  report.spec = spec;
  for (auto& r : results) {
    report.instances += r.instances;
    report.violation_count += r.violation_count;
    for (auto& v : r.violations)
      if (report.violations.size() < Report::kMaxStoredViolations) report.violations.push_back(std::move(v));
    for (const auto& [k, v] : r.metrics) merge_metric(report.metrics, k, v);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string Report::to_json_line() const {
  json record;
  record["schema"] = kSchemaVersion;
  record["suite"] = suite_name(spec.suite);
  record["q"] = spec.q;
  record["n"] = spec.n;
  if (spec.budget.kind == Budget::Kind::Exhaustive)
    record["budget"] = {{"kind", "exhaustive"}};
  else
    record["budget"] = {{"kind", "sampled"}, {"count", spec.budget.count}, {"seed", spec.budget.seed}};
  record["instances"] = instances;
  record["violation_count"] = violation_count;
  json vs = json::array();
  for (const auto& v : violations)
    vs.push_back({{"index", v.index}, {"direction", v.direction}, {"instance", json::parse(v.record)}});
  record["violations"] = std::move(vs);
  record["status"] = passed() ? "pass" : "fail";
  record["wall_seconds"] = wall_seconds;
  record["metrics"] = metrics;
  return record.dump();
}

std::filesystem::path append_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / "reports.jsonl";
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot open " + path.string());
  out << report.to_json_line() << '\n';
  return path;
}

}  // namespace rootpat

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rootpat/field.hpp"
#include "rootpat/poly.hpp"

namespace rootpat {

enum class SuiteId { Thm1, Thm2Iff, Thm3, Thm4Iff, Prop1, Prop2, Lemma1, RunsCount };

std::string_view suite_name(SuiteId id);
/// Accepts thm1, thm2-iff, thm3, thm4-iff, prop1, prop2, lemma1, runs-count.
SuiteId parse_suite_id(std::string_view name);

struct Budget {
  enum class Kind { Exhaustive, Sampled };

  Kind kind = Kind::Exhaustive;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static Budget exhaustive() { return {}; }
  static Budget sampled(std::uint64_t count, std::uint64_t seed) { return {Kind::Sampled, count, seed}; }
};

struct SuiteSpec {
  SuiteId suite = SuiteId::Thm1;
  std::uint32_t q = 3;
  std::size_t n = 1;
  Budget budget;
  unsigned jobs = 1;
  /// Guard on instances x grid points; exceeding it rejects the spec.
  std::uint64_t max_evaluations = 100'000'000;
};

/// One element of a suite's instance space. Which fields are populated
/// depends on the suite:
///   sets    root sets S_i (thm1 products, thm2-iff, thm3/thm4-iff boxes,
///           prop1, prop2 products, runs-count) or factor roots B_i (lemma1)
///   poly    an explicit polynomial (thm1, thm3, prop2 samples)
///   grid, values, perturb_at, perturb_value   lemma1 only
struct Instance {
  std::uint64_t index = 0;
  std::vector<std::vector<Elem>> sets;
  std::optional<MultiPoly> poly;
  Grid grid;
  std::vector<Elem> values;
  std::size_t perturb_at = 0;
  Elem perturb_value;
};

/// Random-access, deterministic instance space of a suite. Index i always
/// maps to the same instance (or to nullopt when i is filtered out).
class InstanceStream {
 public:
  explicit InstanceStream(const SuiteSpec& spec);

  const SuiteSpec& spec() const { return spec_; }
  const FieldPtr& field() const { return field_; }
  std::uint64_t size() const { return size_; }
  std::optional<Instance> at(std::uint64_t index) const;

 private:
  SuiteSpec spec_;
  FieldPtr field_;
  std::uint64_t size_ = 0;
  std::uint64_t product_part_ = 0;  // leading indices that enumerate root masks
};

/// Validates the spec (including the evaluation cap) and returns its stream.
InstanceStream enumerate_instances(const SuiteSpec& spec);

struct Violation {
  std::uint64_t index = 0;
  std::string direction;
  std::string record;  // JSON serialization of the full instance
};

struct Report {
  static constexpr int kSchemaVersion = 1;
  static constexpr std::size_t kMaxStoredViolations = 64;

  SuiteSpec spec;
  std::uint64_t instances = 0;
  std::uint64_t violation_count = 0;
  std::vector<Violation> violations;  // first kMaxStoredViolations, by index
  double wall_seconds = 0.0;
  /// Aggregated per-instance metrics. Keys prefixed "max_" / "min_" keep the
  /// extreme value; other keys are summed.
  std::map<std::string, double> metrics;

  bool passed() const { return violation_count == 0; }
  std::string to_json_line() const;
};

Report run_suite(const SuiteSpec& spec);

/// Appends the report as one line to <dir>/reports.jsonl; returns the path.
std::filesystem::path append_report(const Report& report, const std::filesystem::path& dir);

/// Stateless generator keyed by (key, index): draws for instance i never
/// depend on other instances.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t key, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

}  // namespace rootpat

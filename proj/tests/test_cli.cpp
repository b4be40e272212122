#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "rootpat/error.hpp"
#include "rootpat/io.hpp"

using namespace rootpat;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "rootpat_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(CliTest, WorkedExamplesMatchGoldens) {
  const auto r = run({"examples", "--paper"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
  EXPECT_NE(r.out.find("first gap shift k = (5,3)"), std::string::npos);
  EXPECT_NE(r.out.find("◆"), std::string::npos);
}

TEST(CliTest, DeterministicOutputIsByteStable) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"examples", "--paper"}, {"field", "16"}, {"uset", "7", "4", "2"},
        {"find-gap", "--field", "16", "--T", "a2,a5,a8,a11,a14;a1,a6,a11", "--grid"}})
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliTest, USetCount) {
  const auto r = run({"uset", "16", "14", "2", "--count-only"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "U(16,14,2): " + std::to_string(USet(16, 14, 2).size()) + " members\n");
  const auto list = run({"uset", "16", "14", "2"});
  EXPECT_NE(list.out.find("(14,14)\n"), std::string::npos);
  EXPECT_EQ(list.out.find("(10,12)\n"), std::string::npos);
}

TEST(CliTest, CheckCoset) {
  const auto r = run({"check-coset", "--field", "16", "--T", "a2,a5,a8,a11,a14"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("d=5"), std::string::npos);
  EXPECT_EQ(run({"check-coset", "--field", "8", "--T", "a0,a1"}).code, 1);
}

TEST(CliTest, FieldSummary) {
  const auto r = run({"field", "16"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("modulus: x^4 + x + 1"), std::string::npos);
  EXPECT_NE(r.out.find("d=3 index=5 contains d in {1} elements {a0,a5,a10}"), std::string::npos);
}

TEST(CliTest, FindGapModes) {
  const std::vector<std::string> base{"find-gap", "--field", "16", "--T", "a2,a5,a8,a11,a14;a1,a6,a11"};
  auto shift = run(base);
  EXPECT_EQ(shift.code, 0);
  EXPECT_NE(shift.out.find("gap shift k = (5,3)"), std::string::npos);
  auto args = base;
  args.push_back("--constructive");
  auto constructive = run(args);
  EXPECT_EQ(constructive.code, 0);
  EXPECT_NE(constructive.out.find("\"kind\":\"coset\""), std::string::npos);

  const auto window = run({"find-gap", "--field", "7", "--roots", "a0,a1,a4,a3", "--mode", "window"});
  EXPECT_EQ(window.code, 0);
  EXPECT_NE(window.out.find("\"kind\":\"gap-window\""), std::string::npos);
  EXPECT_EQ(run({"find-gap", "--field", "8", "--T", "a0,a1"}).code, 1);
  EXPECT_EQ(run({"find-gap", "--field", "8", "--T", "a0,a1", "--constructive"}).code, 1);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"field", "6"}).code, 2);
  EXPECT_EQ(run({"field", "16/3"}).code, 2);
  EXPECT_EQ(run({"build", "--field", "7", "--roots", "a1", "--T", "a2"}).code, 2);
  EXPECT_EQ(run({"build", "--field", "7"}).code, 2);
  EXPECT_EQ(run({"build", "--field", "7", "--roots", "a1,0"}).code, 2);
  EXPECT_EQ(run({"find-gap", "--field", "16", "--T", "a1,a6,a11", "--constructive", "--mode", "window"}).code, 2);
  EXPECT_EQ(run({"find-gap", "--field", "16", "--T", "a1", "--mode", "diagonal"}).code, 2);
  EXPECT_EQ(run({"uset", "16", "3", "2", "--grid", "--count-only"}).code, 2);
  EXPECT_EQ(run({"examples"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "thm9", "--q", "5"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "thm1", "--q", "5", "--budget", "lots"}).code, 2);
  EXPECT_EQ(run({"support", "--poly", "/nonexistent/poly.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliTest, BuildThenInspect) {
  const auto path = scratch("example2.json");
  const auto b = run({"build", "--field", "16", "--T", "a2,a5,a8,a11,a14", "--T", "a1,a6,a11", "--output", path.string()});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("m = 15"), std::string::npos);

  const auto s = run({"support", "--poly", path.string(), "--grid"});
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("support (15 terms)"), std::string::npos);
  EXPECT_NE(s.out.find("●"), std::string::npos);

  EXPECT_EQ(run({"check-thm3", "--poly", path.string()}).code, 0);
  EXPECT_EQ(run({"check-thm1", "--poly", path.string()}).code, 2);  // bivariate

  const auto uni = scratch("uni.json");
  ASSERT_EQ(run({"build", "--field", "16", "--T", "a1,a6,a11", "--output", uni.string()}).code, 0);
  const auto t1 = run({"check-thm1", "--poly", uni.string()});
  EXPECT_EQ(t1.code, 0);
  EXPECT_NE(t1.out.find("longest cyclic zero run = 2"), std::string::npos);
  std::filesystem::remove_all(path.parent_path());
}

TEST(CliTest, VerifyWritesReport) {
  const auto dir = scratch("results");
  std::filesystem::remove_all(dir);
  const auto r = run({"verify", "--suite", "thm2-iff", "--q", "8", "--output", dir.string(), "--jobs", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "reports.jsonl"));
  const auto sampled =
      run({"verify", "--suite", "lemma1", "--q", "7", "--n", "2", "--budget", "50", "--seed", "42", "--output", dir.string()});
  EXPECT_EQ(sampled.code, 0) << sampled.err;
  std::filesystem::remove_all(dir.parent_path());
}

TEST(CliTest, GridShowsAllThreeMarks) {
  const auto f = parse_field_spec("16");
  const auto boxes = RootBoxes::from_complements(
      f, {{f->exp(2), f->exp(5), f->exp(8), f->exp(11), f->exp(14)}, {f->exp(1), f->exp(6), f->exp(11)}});
  const auto p = product_form(boxes);
  const auto grid = cli::render_grid(p, 15, gap_search(boxes, GapMode::Shift));
  for (const char* mark : {"◆", "●", "·"}) EXPECT_NE(grid.find(mark), std::string::npos) << mark;
  EXPECT_THROW(cli::render_grid(MultiPoly(f, 3), 2, std::nullopt), Error);
}

TEST(CliTest, FindShiftOnGenericPolynomial) {
  const auto f = parse_field_spec("7");
  MultiPoly p(f, 1);
  p.set(Monomial{0}, f->one());
  p.set(Monomial{3}, f->one());  // X^3 + 1 has 3 roots in F_7^*
  const auto cert = cli::find_shift(p, nonroot_count(p));
  ASSERT_TRUE(cert);
  EXPECT_TRUE(cert->verified);
}

TEST(CliTest, FormatMonomial) {
  EXPECT_EQ(cli::format_monomial(Monomial{0, 0}), "1");
  EXPECT_EQ(cli::format_monomial(Monomial{3}), "X^3");
  EXPECT_EQ(cli::format_monomial(Monomial{5, 1}), "X1^5 X2");
}

#include "retset/analyzer.hpp"
#include "retset/parse.hpp"
#include "retset/report.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

namespace retset {
void PrintTo(const IndexSet& S, std::ostream* os) { *os << format(S); }
}  // namespace retset

using namespace retset;

namespace {

const std::vector<std::string> kFixtures = {"power_sums_p3", "frobenius_line_p2", "frobenius_line_p3", "diagonal", "diagonal_shifted", "rotation"};

ProblemSpec fixture(const std::string& name) {
  return load_problem_spec(std::string(RETSET_FIXTURE_DIR) + "/" + name + ".json");
}

std::vector<BigInt> ints(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

const ComponentStatus* status_of(const StructureReport& r, const std::string& component) {
  for (const auto& s : r.statuses)
    if (s.component == component) return &s;
  return nullptr;
}

}  // namespace

TEST(ProblemSpec, ParsesTheDocumentedFormat) {
  const ProblemSpec s = parse_problem_spec(
      R"J({"p":2,"N":2,"map":{"matrix":[[3,0],[0,3]],"translation":["1","1"]},"alpha":["1","1"],)J"
      R"J("variety":["t*x1 + (1-t)*x2 - 1"],"fsets":[{"type":"forbit","r1":["1/t","1/(1-t)"],"r2":["t","1-t"],"k":2}]})J");
  EXPECT_EQ(s.p, 2u);
  EXPECT_EQ(s.N, 2u);
  EXPECT_EQ(s.map.A(0, 0), 3);
  ASSERT_EQ(s.fsets.size(), 1u);
  EXPECT_EQ(s.fsets[0].kind, FSetInput::Kind::forbit);
  ASSERT_EQ(s.fsets[0].orbits.size(), 1u);
  EXPECT_EQ(s.fsets[0].orbits[0].second, 2u);
  EXPECT_EQ(s.params.nmax, 200);
  EXPECT_EQ(s.params.modular.degree, 16u);
}

TEST(ProblemSpec, RejectsMalformedInput) {
  EXPECT_THROW(parse_problem_spec("{"), InputError);
  EXPECT_THROW(parse_problem_spec(R"J({"p":4,"N":1,"map":{"matrix":[[1]],"translation":["t"]},"alpha":["1"],"variety":["x1-1"]})J"),
               InputError);
  EXPECT_THROW(parse_problem_spec(R"J({"p":2,"N":2,"map":{"matrix":[[1]],"translation":["t","t"]},"alpha":["1","1"],"variety":["x1"]})J"),
               InputError);
  EXPECT_THROW(parse_problem_spec(R"J({"p":2,"N":1,"map":{"matrix":[[1]],"translation":["0"]},"alpha":["1"],"variety":["x1"]})J"),
               InputError);
  EXPECT_THROW(parse_problem_spec(R"J({"p":2,"N":1,"map":{"matrix":[[1]],"translation":["t"]},"alpha":["1"],"variety":["x1"],)J"
                                  R"J("fsets":[{"type":"cone"}]})J"),
               InputError);
  EXPECT_THROW(load_problem_spec("/nonexistent/spec.json"), InputError);
}

TEST(Scan, PowerSums) {
  ProblemSpec s = fixture("power_sums_p3");
  const ScanResult r = scan_returns(s, 100);
  EXPECT_EQ(r.hits, ints({2, 4, 6, 10, 12, 18, 28, 30, 36, 54, 82, 84, 90}));
  EXPECT_EQ(r.reached, 100);
  EXPECT_FALSE(r.truncated);
}

TEST(Scan, FrobeniusLine) {
  const ScanResult r = scan_returns(fixture("frobenius_line_p2"), 10);
  EXPECT_EQ(r.hits, ints({0, 1, 5}));
}

TEST(Scan, ConstantEquationNeverHolds) {
  ProblemSpec s = fixture("frobenius_line_p2");
  s.variety = Curve{};
  s.variety.equations.push_back(parse_laurent("1", 2, 2));
  EXPECT_TRUE(scan_returns(s, 30).hits.empty());
}

TEST(Fit, Examples) {
  EXPECT_EQ(fit_structure(ints({0, 1, 5}), 10, 2, 4), (IndexSet{{}, {}, {{Rational(1, 3), Rational(-1, 3), 2, 2}}}));
  std::vector<BigInt> even;
  for (long n = 2; n <= 100; n += 2) even.emplace_back(n);
  EXPECT_EQ(fit_structure(even, 100, 2, 4), (IndexSet{{}, {{2, 2}}, {}}));
  EXPECT_EQ(fit_structure(ints({7}), 100, 2, 4), IndexSet::of_finite({BigInt(7)}));
}

TEST(Fit, CoversEveryHitExactly) {
  // Random hit sets: the fitted structure restricted to the scanned range
  // reproduces the hits.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const long top = 40 + static_cast<long>(rng() % 60);
    std::set<BigInt> H;
    const long m = 1 + static_cast<long>(rng() % 7), l = static_cast<long>(rng() % 10);
    if (rng() % 2)
      for (long x = l; x <= top; x += m) H.insert(BigInt(x));
    const int extra = static_cast<int>(rng() % 6);
    for (int e = 0; e < extra; ++e) H.insert(BigInt(static_cast<long>(rng() % (top + 1))));
    if (rng() % 2)
      for (long x = 1; x <= top; x = 3 * x + 1) H.insert(BigInt(x));
    if (H.empty()) continue;
    const std::vector<BigInt> hits(H.begin(), H.end());
    const IndexSet S = fit_structure(hits, top, 3, 4);
    EXPECT_EQ(elements_upto(S, BigInt(top)), hits) << format(S);
  }
}

TEST(Verify, ConfirmsFrobeniusLineLongRange) {
  const ProblemSpec s = fixture("frobenius_line_p2");
  const ScanResult scan = scan_returns(s, 12);
  const IndexSet cand{{}, {}, {{Rational(1, 3), Rational(-1, 3), 2, 2}}};
  const StructureReport r = verify_structure(s, cand, scan);
  EXPECT_EQ(r.structure, cand);
  ASSERT_EQ(r.statuses.size(), 1u);
  const auto& st = r.statuses[0];
  EXPECT_EQ(st.kind, ComponentStatus::Kind::verified_probabilistic);
  EXPECT_EQ(st.confirmed, ints({21, 85, 341, 1365, 5461, 21845, 87381, 349525}));
  EXPECT_GE(st.nonmembers_checked, 20u);
  EXPECT_GT(r.error_bound.checks, 0u);
  EXPECT_LE(r.error_bound.log10_bound, 0.0);
}

TEST(Verify, DemotesWronglyExtendedProgression) {
  // {4k + 1} agrees with the hits on [0, 6] and fails at n = 9.
  const ProblemSpec s = fixture("frobenius_line_p2");
  const ScanResult scan = scan_returns(s, 6);
  const IndexSet cand{{BigInt(0), BigInt(1), BigInt(5)}, {{4, 1}}, {}};
  const StructureReport r = verify_structure(s, cand, scan);
  const ComponentStatus* st = status_of(r, "{4k + 1}");
  ASSERT_NE(st, nullptr);
  EXPECT_EQ(st->kind, ComponentStatus::Kind::demoted);
  EXPECT_EQ(elements_upto(r.structure, BigInt(1000)), ints({0, 1, 5}));
}

TEST(Verify, EmptyCandidate) {
  const ProblemSpec s = fixture("diagonal_shifted");
  const ScanResult scan = scan_returns(s, 20);
  const StructureReport r = verify_structure(s, IndexSet{}, scan);
  EXPECT_TRUE(r.structure.empty());
  EXPECT_TRUE(r.statuses.empty());
  EXPECT_TRUE(r.hits.empty());
}

TEST(Analyze, FrobeniusLine) {
  const StructureReport r = analyze(fixture("frobenius_line_p2"));
  EXPECT_EQ(r.structure, (IndexSet{{}, {}, {{Rational(1, 3), Rational(-1, 3), 2, 2}}}));
  EXPECT_EQ(r.orbit.kind, OrbitClassification::Kind::infinite_certified);
  for (const auto& s : r.statuses) EXPECT_NE(s.kind, ComponentStatus::Kind::demoted);
}

TEST(Analyze, PowerSumsKeepsFiniteHits) {
  // Two independent exponents: no single progression or p-arithmetic
  // sequence fits, so the structure is the scan itself.
  const StructureReport r = analyze(fixture("power_sums_p3"));
  EXPECT_EQ(elements_upto(r.structure, BigInt(100)), r.hits);
}

TEST(Reduce, FrobeniusLine) {
  for (const char* name : {"frobenius_line_p2", "frobenius_line_p3"}) {
    const ProblemSpec s = fixture(name);
    const StructureReport r = run_reduction(s);
    const Rational c(1, s.p * s.p - 1);
    EXPECT_EQ(r.structure, (IndexSet{{}, {}, {{c, -c, 2, s.p}}})) << name;
    ASSERT_EQ(r.statuses.size(), 1u);
    EXPECT_EQ(r.statuses[0].kind, ComponentStatus::Kind::proved);
    ASSERT_TRUE(r.cross_check.has_value());
    EXPECT_TRUE(*r.cross_check);
  }
}

TEST(Reduce, PowerSumsTwoOrbitsRejected) {
  EXPECT_THROW(run_reduction(fixture("power_sums_p3")), InputError);
}

TEST(Reduce, WholeGroupCoset) {
  const StructureReport r = run_reduction(fixture("diagonal"));
  EXPECT_EQ(r.structure, (IndexSet{{}, {{1, 0}}, {}}));
  EXPECT_EQ(r.statuses.at(0).kind, ComponentStatus::Kind::proved);
  EXPECT_TRUE(r.cross_check.value());
}

TEST(Reduce, ShiftedDiagonalIsEmpty) {
  const StructureReport r = run_reduction(fixture("diagonal_shifted"));
  EXPECT_TRUE(r.structure.empty());
  EXPECT_TRUE(r.cross_check.value());
}

TEST(Reduce, PreperiodicRotation) {
  const StructureReport r = run_reduction(fixture("rotation"));
  EXPECT_EQ(r.orbit.kind, OrbitClassification::Kind::preperiodic);
  EXPECT_EQ(r.orbit.period, 4);
  EXPECT_EQ(r.structure, (IndexSet{{}, {{4, 3}}, {}}));
  EXPECT_TRUE(r.cross_check.value());
}

TEST(Reduce, InconsistentFsetFailsCrossCheck) {
  ProblemSpec s = fixture("diagonal");
  s.fsets[0].h.clear();  // only the point (1, 1): misses every n > 0
  const StructureReport r = run_reduction(s);
  EXPECT_EQ(r.structure, IndexSet::of_finite({BigInt(0)}));
  EXPECT_FALSE(r.cross_check.value());
}

TEST(Report, DeterministicAcrossRuns) {
  for (const auto& name : {"frobenius_line_p2", "diagonal"}) {
    const std::string a = to_json(analyze(fixture(name))).dump(2);
    const std::string b = to_json(analyze(fixture(name))).dump(2);
    EXPECT_EQ(a, b);
  }
}

TEST(Report, CarriesTheDocumentedKeys) {
  const auto j = to_json(run_reduction(fixture("frobenius_line_p2")));
  for (const char* key : {"hits", "structure", "statuses", "orbit", "params", "error_bounds"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["cross_check"], "pass");
  EXPECT_EQ(j["structure"]["parith"][0]["a"], "1/3");
  EXPECT_FALSE(to_text(run_reduction(fixture("frobenius_line_p2"))).empty());
}

TEST(Report, IndexSetRoundTrip) {
  const IndexSet S{{BigInt(3), BigInt(8)}, {{5, 2}}, {{Rational(1, 3), Rational(-1, 3), 2, 2}}};
  EXPECT_EQ(index_set_from_json(to_json(S)), S);
}

TEST(Fixtures, StructureMatchesScanOnExactRange) {
  for (const auto& name : kFixtures) {
    const ProblemSpec s = fixture(name);
    const StructureReport r = analyze(s);
    EXPECT_EQ(elements_upto(r.structure, BigInt(r.scanned_to)), r.hits) << name;
    for (const auto& st : r.statuses) {
      if (st.kind == ComponentStatus::Kind::verified_probabilistic) EXPECT_GE(st.members_checked, 2u) << name;
    }
  }
}

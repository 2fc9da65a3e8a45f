#pragma once

// End-to-end analysis of a return set S = {n : Phi^n(alpha) in V}: exact
// orbit scans, structure fitting with modular verification, and the
// certified reduction from user-supplied F-set data.

#include "retset/reduction.hpp"

#include <optional>
#include <string>

namespace retset {

struct FSetInput {
  enum class Kind { coset, forbit };
  Kind kind = Kind::coset;
  TorusPoint r;                   // coset representative, or R1
  std::vector<TorusPoint> h;      // coset subgroup generators
  std::vector<std::pair<TorusPoint, unsigned long>> orbits;  // (R2, k) factors of an F-orbit product
};

struct AnalyzerParams {
  long nmax = 200;
  BigInt horizon = 1000000;
  ModularParams modular;
  unsigned long kmax = 4;
  SearchBounds bounds;
  long orbit_bound = 1000;
  std::size_t nonmember_samples = 20;
  std::size_t ap_samples = 40;
};

struct ProblemSpec {
  std::uint32_t p = 2;
  std::size_t N = 0;
  MonomialAffineMap map;
  TorusPoint alpha;
  Curve variety;
  std::vector<std::string> variety_text;
  std::vector<FSetInput> fsets;
  AnalyzerParams params;
};

// Reads the JSON problem format; throws InputError on malformed input.
ProblemSpec parse_problem_spec(const std::string& json_text);
ProblemSpec load_problem_spec(const std::string& path);

struct ScanResult {
  std::vector<BigInt> hits;
  long reached = -1;  // largest n checked exactly
  bool truncated = false;
  std::string warning;
};

// Exact membership scan for n <= nmax; stops early at the degree cap.
ScanResult scan_returns(const ProblemSpec& spec, long nmax);

// Candidate structure for the hits of an exact scan over [0, scanned_to].
IndexSet fit_structure(const std::vector<BigInt>& hits, long scanned_to, std::uint32_t p, unsigned long kmax);

struct ComponentStatus {
  enum class Kind { exact, proved, verified_probabilistic, verified_to_bound, demoted };
  std::string component;
  Kind kind = Kind::exact;
  BigInt bound;
  std::size_t members_checked = 0;
  std::size_t nonmembers_checked = 0;
  std::vector<BigInt> confirmed;  // members beyond the exact range found on V
  std::vector<std::string> notes;
};
std::string to_string(ComponentStatus::Kind kind);

struct ErrorBound {
  unsigned degree = 0;
  unsigned trials = 0;
  BigInt numerator_degree;   // largest D over all probabilistic checks
  BigInt irreducible_count;  // I_d
  double log10_bound = 0;    // worst per-equation log10 error, capped at 0
  std::size_t checks = 0;
};

struct StructureReport {
  std::string mode;
  std::vector<BigInt> hits;
  long scanned_to = -1;
  bool truncated = false;
  IndexSet structure;
  std::vector<ComponentStatus> statuses;
  OrbitClassification orbit;
  AnalyzerParams params;
  ErrorBound error_bound;
  std::optional<bool> cross_check;  // reduction answer against the exact scan
  std::vector<std::string> warnings;
};

// Checks the infinite components of a candidate up to the horizon with
// modular membership and demotes any that a check contradicts.
StructureReport verify_structure(const ProblemSpec& spec, const IndexSet& candidate, const ScanResult& scan);

// Empirical mode: scan, fit, verify.
StructureReport analyze(const ProblemSpec& spec);

// Certified mode from the spec's F-set inputs, cross-checked against an
// exact scan.
StructureReport run_reduction(const ProblemSpec& spec);

// Single-index queries on the orbit of alpha.
TorusPoint orbit_point(const ProblemSpec& spec, const BigInt& n);
bool member_exact(const ProblemSpec& spec, const BigInt& n);
ModularResult member_modular(const ProblemSpec& spec, const BigInt& n);

}  // namespace retset

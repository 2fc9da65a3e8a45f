#include "retset/analyzer.hpp"

#include "retset/parse.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace retset {

namespace {

using nlohmann::json;
using Index = Eigen::Index;

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("problem spec is missing \"") + key + "\"");
  return j.at(key);
}

std::string text_of(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InputError("expected an expression string, got " + v.dump());
}

TorusPoint parse_point(const json& v, std::uint32_t p, std::size_t N, const std::string& what) {
  if (!v.is_array() || v.size() != N)
    throw InputError(what + " must be a list of " + std::to_string(N) + " expressions");
  TorusPoint out;
  for (const auto& c : v) {
    FpRational f = parse_function(text_of(c), p);
    if (f.is_zero()) throw InputError(what + " has a zero coordinate");
    out.push_back(std::move(f));
  }
  return out;
}

BigInt parse_integer(const json& v) {
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  throw InputError("expected an integer, got " + v.dump());
}

unsigned long parse_k(const json& v) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError("F-orbit exponent k must be a nonnegative integer");
  return v.get<unsigned long>();
}

FSetInput parse_fset(const json& f, std::uint32_t p, std::size_t N) {
  FSetInput out;
  const std::string type = require(f, "type").get<std::string>();
  if (type == "coset") {
    out.kind = FSetInput::Kind::coset;
    out.r = parse_point(require(f, "r"), p, N, "coset representative");
    if (f.contains("h"))
      for (const auto& g : f.at("h")) out.h.push_back(parse_point(g, p, N, "subgroup generator"));
  } else if (type == "forbit") {
    out.kind = FSetInput::Kind::forbit;
    out.r = parse_point(require(f, "r1"), p, N, "r1");
    if (f.contains("factors")) {
      for (const auto& g : f.at("factors"))
        out.orbits.emplace_back(parse_point(require(g, "r2"), p, N, "r2"), parse_k(require(g, "k")));
    } else {
      out.orbits.emplace_back(parse_point(require(f, "r2"), p, N, "r2"), parse_k(require(f, "k")));
    }
  } else {
    throw InputError("unknown fset type \"" + type + "\"");
  }
  return out;
}

struct Session {
  SupportBasis basis;
  CurveEvaluator evaluator;
  EncodedMap phi;
  PointRep alpha;

  explicit Session(const ProblemSpec& spec)
      : basis(spec.p), evaluator(spec.variety, basis) {
    phi = {spec.map.A, encode(spec.map.y, basis), spec.p};
    alpha = encode(spec.alpha, basis);
    phi.y = widen(phi.y, basis.size());
    alpha = widen(alpha, basis.size());
  }

  PointRep at(const BigInt& n) const { return iterate_lattice(phi, alpha, n); }
};

bool is_natural(const Rational& x) { return is_integer(x) && x >= 0; }

std::vector<BigInt> members_between(const IndexSet& S, const BigInt& lo, const BigInt& hi) {
  std::vector<BigInt> out;
  for (const auto& x : elements_upto(S, hi))
    if (x > lo) out.push_back(x);
  return out;
}

void note_error(ErrorBound& eb, const ModularResult& r) {
  eb.numerator_degree = std::max(eb.numerator_degree, r.numerator_degree);
  eb.irreducible_count = r.irreducible_count;
  eb.log10_bound = eb.checks == 0 ? r.log10_error_bound : std::max(eb.log10_bound, r.log10_error_bound);
  ++eb.checks;
}

std::vector<ComponentStatus> component_labels(const IndexSet& S) {
  std::vector<ComponentStatus> out;
  if (!S.finite.empty()) out.push_back({format(IndexSet::of_finite(S.finite)), ComponentStatus::Kind::exact, 0, 0, 0, {}, {}});
  for (const auto& A : S.aps) out.push_back({format(A), ComponentStatus::Kind::exact, 0, 0, 0, {}, {}});
  for (const auto& P : S.parith) out.push_back({format(P), ComponentStatus::Kind::exact, 0, 0, 0, {}, {}});
  return out;
}

// One infinite component checked beyond the exact range.
struct Check {
  bool ok = true;
  ComponentStatus status;
};

Check check_component(const Session& session, const IndexSet& component, const IndexSet& whole,
                      const std::string& label, long reached, const AnalyzerParams& params, std::uint64_t stream,
                      ErrorBound& eb) {
  Check out;
  out.status.component = label;
  out.status.kind = ComponentStatus::Kind::verified_probabilistic;
  out.status.bound = params.horizon;
  const BigInt lo(reached);
  std::vector<BigInt> members = members_between(component, lo, params.horizon);
  if (!component.aps.empty() && members.size() > params.ap_samples) {
    std::vector<BigInt> picked;
    for (std::size_t i = 0; i < params.ap_samples; ++i)
      picked.push_back(members[i * (members.size() - 1) / (params.ap_samples - 1)]);
    members = std::move(picked);
  }
  for (const auto& n : members) {
    const ModularResult r = session.evaluator.on_curve_modular(session.at(n), params.modular);
    ++out.status.members_checked;
    if (!r.hit) {
      out.ok = false;
      out.status.notes.push_back("predicted member " + n.get_str() + " is not on the curve");
      return out;
    }
    note_error(eb, r);
    out.status.confirmed.push_back(n);
  }
  // Non-members between consecutive predicted members.
  const auto all = members_between(component, BigInt(-1), params.horizon);
  if (all.size() >= 2) {
    std::mt19937_64 rng(params.modular.seed * 1000003 + stream);
    std::size_t tries = 0;
    while (out.status.nonmembers_checked < params.nonmember_samples && tries < 50 * params.nonmember_samples) {
      ++tries;
      const std::size_t g = rng() % (all.size() - 1);
      const BigInt gap = all[g + 1] - all[g];
      if (gap < 2) continue;
      const BigInt span = gap - 1;
      const BigInt n = all[g] + 1 + BigInt(static_cast<unsigned long>(rng() % span.get_ui()));
      if (n <= lo || member(whole, n)) continue;
      const ModularResult r = session.evaluator.on_curve_modular(session.at(n), params.modular);
      ++out.status.nonmembers_checked;
      if (r.hit) {
        out.ok = false;
        out.status.notes.push_back("non-member " + n.get_str() + " lies on the curve");
        return out;
      }
    }
  }
  return out;
}

}  // namespace

std::string to_string(ComponentStatus::Kind kind) {
  switch (kind) {
    case ComponentStatus::Kind::exact: return "exact";
    case ComponentStatus::Kind::proved: return "proved";
    case ComponentStatus::Kind::verified_probabilistic: return "verified (probabilistic)";
    case ComponentStatus::Kind::verified_to_bound: return "verified_to_bound";
    case ComponentStatus::Kind::demoted: return "demoted";
  }
  return "exact";
}

ProblemSpec parse_problem_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("problem spec is not valid JSON: ") + e.what());
  }
  ProblemSpec spec;
  try {
    const BigInt p = parse_integer(require(j, "p"));
    if (p < 2 || p > 65521 || !is_prime(p.get_ui())) throw InputError("p must be a prime below 2^16");
    spec.p = static_cast<std::uint32_t>(p.get_ui());
    const BigInt N = parse_integer(require(j, "N"));
    if (N < 1 || N > 64) throw InputError("N must be between 1 and 64");
    spec.N = N.get_ui();
    const json& map = require(j, "map");
    const json& matrix = require(map, "matrix");
    if (!matrix.is_array() || matrix.size() != spec.N) throw InputError("map matrix must be N x N");
    spec.map.A = IntMatrix(static_cast<Index>(spec.N), static_cast<Index>(spec.N));
    for (std::size_t i = 0; i < spec.N; ++i) {
      if (!matrix[i].is_array() || matrix[i].size() != spec.N) throw InputError("map matrix must be N x N");
      for (std::size_t k = 0; k < spec.N; ++k)
        spec.map.A(static_cast<Index>(i), static_cast<Index>(k)) = parse_integer(matrix[i][k]);
    }
    spec.map.y = parse_point(require(map, "translation"), spec.p, spec.N, "translation");
    spec.alpha = parse_point(require(j, "alpha"), spec.p, spec.N, "alpha");
    const json& variety = require(j, "variety");
    if (!variety.is_array() || variety.empty()) throw InputError("variety needs at least one equation");
    for (const auto& e : variety) {
      spec.variety_text.push_back(text_of(e));
      spec.variety.equations.push_back(parse_laurent(spec.variety_text.back(), spec.p, spec.N));
    }
    if (j.contains("fsets"))
      for (const auto& f : j.at("fsets")) spec.fsets.push_back(parse_fset(f, spec.p, spec.N));
    if (j.contains("params")) {
      const json& pr = j.at("params");
      if (pr.contains("nmax")) spec.params.nmax = pr.at("nmax").get<long>();
      if (pr.contains("horizon")) spec.params.horizon = parse_integer(pr.at("horizon"));
      if (pr.contains("kmax")) spec.params.kmax = pr.at("kmax").get<unsigned long>();
      if (pr.contains("modular_degree")) spec.params.modular.degree = pr.at("modular_degree").get<unsigned>();
      if (pr.contains("trials")) spec.params.modular.trials = pr.at("trials").get<unsigned>();
      if (pr.contains("seed")) spec.params.modular.seed = pr.at("seed").get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed problem spec: ") + e.what());
  }
  return spec;
}

ProblemSpec load_problem_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_spec(ss.str());
}

ScanResult scan_returns(const ProblemSpec& spec, long nmax) {
  ScanResult out;
  Session session(spec);
  PointRep x = session.alpha;
  for (long n = 0; n <= nmax; ++n) {
    try {
      if (session.evaluator.on_curve(x)) out.hits.emplace_back(n);
    } catch (const DegreeCapExceeded& e) {
      out.truncated = true;
      out.warning = "exact scan stopped at n = " + std::to_string(n) + ": " + e.what();
      break;
    }
    out.reached = n;
    x = step(session.phi, x);
  }
  return out;
}

IndexSet fit_structure(const std::vector<BigInt>& hits, long scanned_to, std::uint32_t p, unsigned long kmax) {
  const std::set<BigInt> H(hits.begin(), hits.end());
  std::set<BigInt> rest = H;
  const BigInt top(scanned_to);
  IndexSet out;

  // Progressions: three equally spaced hits whose extension over the scanned
  // range consists of hits only.
  for (bool found = true; found;) {
    found = false;
    const std::vector<BigInt> r(rest.begin(), rest.end());
    for (std::size_t i = 0; i < r.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < r.size() && !found; ++j) {
        const BigInt d = r[j] - r[i];
        if (!H.count(r[i] + 2 * d)) continue;
        bool consistent = true;
        for (BigInt x = r[i]; x <= top && consistent; x += d) consistent = H.count(x) > 0;
        if (!consistent) continue;
        BigInt start = r[i];
        while (start - d >= 0 && H.count(start - d)) start -= d;
        out.aps.push_back({d, start});
        for (BigInt x = start; x <= top; x += d) rest.erase(x);
        found = true;
      }
    }
  }

  // p-arithmetic sequences through triples x0 < x1 < x2 with
  // x2 - x1 = p^k (x1 - x0).
  for (unsigned long k = 1; k <= kmax; ++k) {
    const Rational q(ipow(BigInt(p), k));
    for (bool found = true; found;) {
      found = false;
      const std::vector<BigInt> r(rest.begin(), rest.end());
      for (std::size_t i = 0; i < r.size() && !found; ++i) {
        for (std::size_t j = i + 1; j < r.size() && !found; ++j) {
          const Rational x0(r[i]), x1(r[j]);
          const Rational x2 = x1 + q * (x1 - x0);
          if (x2 > Rational(top) || !H.count(BigInt(x2))) continue;
          Rational a = (x1 - x0) / (q - 1);
          const Rational b = x0 - a;
          for (;;) {
            const Rational prev = a / q + b;
            if (!is_natural(prev) || !H.count(BigInt(prev))) break;
            a /= q;
          }
          const PArithSeq P{a, b, k, p};
          bool consistent = true;
          std::vector<BigInt> members;
          for (unsigned long n = 0;; ++n) {
            const Rational v = P.value(n);
            if (v > Rational(top)) break;
            if (!is_natural(v) || !H.count(BigInt(v))) {
              consistent = false;
              break;
            }
            members.push_back(BigInt(v));
          }
          if (!consistent || members.size() < 3) continue;
          out.parith.push_back(P);
          for (const auto& m : members) rest.erase(m);
          found = true;
        }
      }
    }
  }
  out.finite.insert(rest.begin(), rest.end());
  return canonicalize(out);
}

StructureReport verify_structure(const ProblemSpec& spec, const IndexSet& candidate, const ScanResult& scan) {
  StructureReport report;
  report.mode = "analyze";
  report.hits = scan.hits;
  report.scanned_to = scan.reached;
  report.truncated = scan.truncated;
  report.params = spec.params;
  report.error_bound.degree = spec.params.modular.degree;
  report.error_bound.trials = spec.params.modular.trials;
  if (!scan.warning.empty()) report.warnings.push_back(scan.warning);
  if (candidate.empty()) return report;

  Session session(spec);
  std::uint64_t stream = 0;
  IndexSet kept{candidate.finite, {}, {}};
  std::vector<ComponentStatus> statuses;
  std::vector<BigInt> loose;  // in-range hits of demoted components

  auto run = [&](const IndexSet& cand, bool allow_refit, auto& self) -> void {
    std::vector<std::pair<IndexSet, std::string>> parts;
    for (const auto& A : cand.aps) parts.push_back({IndexSet{{}, {A}, {}}, format(A)});
    for (const auto& P : cand.parith) parts.push_back({IndexSet{{}, {}, {P}}, format(P)});
    std::vector<BigInt> failed_hits;
    for (const auto& [part, label] : parts) {
      Check c = check_component(session, part, cand, label, scan.reached, spec.params, stream++, report.error_bound);
      if (c.ok) {
        kept = unite(kept, part);
        statuses.push_back(std::move(c.status));
      } else {
        c.status.kind = ComponentStatus::Kind::demoted;
        statuses.push_back(std::move(c.status));
        for (const auto& x : elements_upto(part, BigInt(scan.reached))) failed_hits.push_back(x);
      }
    }
    if (failed_hits.empty()) return;
    if (!allow_refit) {
      loose.insert(loose.end(), failed_hits.begin(), failed_hits.end());
      return;
    }
    IndexSet refit = fit_structure(failed_hits, scan.reached, spec.p, spec.params.kmax);
    loose.insert(loose.end(), refit.finite.begin(), refit.finite.end());
    refit.finite.clear();
    // A component that was just refuted is not offered again.
    IndexSet fresh;
    for (const auto& A : refit.aps) {
      if (std::find(cand.aps.begin(), cand.aps.end(), A) == cand.aps.end()) {
        fresh.aps.push_back(A);
      } else {
        for (const auto& x : elements_upto(IndexSet{{}, {A}, {}}, BigInt(scan.reached))) loose.push_back(x);
      }
    }
    for (const auto& P : refit.parith) {
      if (std::find(cand.parith.begin(), cand.parith.end(), P) == cand.parith.end()) {
        fresh.parith.push_back(P);
      } else {
        for (const auto& x : elements_upto(IndexSet{{}, {}, {P}}, BigInt(scan.reached))) loose.push_back(x);
      }
    }
    self(fresh, false, self);
  };
  run(candidate, true, run);
  kept.finite.insert(loose.begin(), loose.end());
  report.structure = canonicalize(kept);

  std::vector<ComponentStatus> out;
  if (!report.structure.finite.empty()) {
    ComponentStatus f;
    f.component = format(IndexSet::of_finite(report.structure.finite));
    f.kind = ComponentStatus::Kind::exact;
    f.bound = scan.reached;
    f.notes.push_back("hits of the exact scan up to n = " + std::to_string(scan.reached));
    out.push_back(std::move(f));
  }
  for (auto& s : statuses) out.push_back(std::move(s));
  report.statuses = std::move(out);
  return report;
}

StructureReport analyze(const ProblemSpec& spec) {
  const ScanResult scan = scan_returns(spec, spec.params.nmax);
  const IndexSet candidate =
      scan.hits.empty() ? IndexSet{} : fit_structure(scan.hits, scan.reached, spec.p, spec.params.kmax);
  StructureReport report = verify_structure(spec, candidate, scan);
  Session session(spec);
  report.orbit = classify_orbit(session.phi, session.alpha, spec.params.orbit_bound);
  return report;
}

StructureReport run_reduction(const ProblemSpec& spec) {
  if (spec.fsets.empty()) throw InputError("reduce needs at least one fset in the problem spec");
  StructureReport report;
  report.mode = "reduce";
  report.params = spec.params;
  report.error_bound.degree = spec.params.modular.degree;
  report.error_bound.trials = spec.params.modular.trials;

  Session session(spec);
  SupportBasis& basis = session.basis;
  const GroupContext ctx = make_context(spec.map, spec.alpha, basis);
  const OrbitSequences seqs = build_orbit_sequences(ctx);
  report.orbit = classify_orbit(ctx.phi, ctx.alpha, spec.params.orbit_bound);

  const ScanResult scan = scan_returns(spec, spec.params.nmax);
  report.hits = scan.hits;
  report.scanned_to = scan.reached;
  report.truncated = scan.truncated;
  if (!scan.warning.empty()) report.warnings.push_back(scan.warning);

  Solution total{IndexSet{}, {}};
  if (report.orbit.kind == OrbitClassification::Kind::preperiodic) {
    // The orbit is finite: S is read off one preperiod and one period.
    const long pre = report.orbit.preperiod, per = report.orbit.period;
    PointRep x = widen(ctx.alpha, basis.size());
    const EncodedMap phi{ctx.phi.A, widen(ctx.phi.y, basis.size()), ctx.phi.p};
    for (long n = 0; n < pre + per; ++n) {
      if (session.evaluator.on_curve(x)) {
        if (n < pre) total.set.finite.insert(BigInt(n));
        else total.set.aps.push_back({BigInt(per), BigInt(n)});
      }
      x = step(phi, x);
    }
    total.set = canonicalize(total.set);
  } else {
    for (std::size_t i = 0; i < spec.fsets.size(); ++i) {
      const FSetInput& f = spec.fsets[i];
      Solution part;
      if (f.kind == FSetInput::Kind::coset) {
        const PointRep R = encode(f.r, basis);
        std::vector<PointRep> gens;
        for (const auto& g : f.h) gens.push_back(encode(g, basis));
        const Subgroup H(gens, ctx.dim(), basis.size(), basis.p());
        part = solve_coset(ctx, seqs, R, H, spec.params.bounds);
      } else {
        PointRep R1 = encode(f.r, basis);
        std::vector<std::pair<PointRep, unsigned long>> infinite;
        for (const auto& [r2, k] : f.orbits) {
          PointRep R2 = encode(r2, basis);
          const std::size_t s = basis.size();
          const bool trivial = flatten(widen(normalize(R2, basis.p()), s)).isZero();
          if (k == 0 || trivial) {
            R1 = widen(R1, s) + widen(R2, s);
          } else {
            infinite.emplace_back(R2, k);
          }
        }
        if (infinite.size() > 1)
          throw InputError("fset " + std::to_string(i + 1) + " is a product of " + std::to_string(infinite.size()) +
                           " infinite F-orbits; the reduction covers a single orbit translate");
        if (infinite.empty()) {
          const Subgroup H({}, ctx.dim(), basis.size(), basis.p());
          part = solve_coset(ctx, seqs, R1, H, spec.params.bounds);
        } else {
          part = solve_forbit(ctx, seqs, R1, infinite.front().first, infinite.front().second, spec.params.bounds);
        }
      }
      for (auto& note : part.status.notes) note = "fset " + std::to_string(i + 1) + ", " + note;
      total.set = canonicalize(unite(total.set, part.set));
      total.status = combine(total.status, part.status);
    }
    const ApHooks hooks{[&](const BigInt& n) {
                          const ModularResult r = session.evaluator.on_curve_modular(
                              widen(iterate_lattice(ctx.phi, ctx.alpha, n), basis.size()), spec.params.modular);
                          return r.hit;
                        },
                        spec.params.horizon, spec.params.nonmember_samples};
    total = simplify_if_infinite_ap(total, hooks);
  }
  report.structure = total.set;

  const auto predicted = elements_upto(total.set, BigInt(scan.reached));
  report.cross_check = predicted == scan.hits;

  for (auto& c : component_labels(total.set)) {
    if (total.status.proved()) {
      c.kind = ComponentStatus::Kind::proved;
    } else {
      c.kind = ComponentStatus::Kind::verified_to_bound;
      c.bound = total.status.bound;
      c.notes = total.status.notes;
    }
    report.statuses.push_back(std::move(c));
  }
  if (report.orbit.kind == OrbitClassification::Kind::preperiodic)
    for (auto& c : report.statuses) c.notes.push_back("orbit is preperiodic; S follows from one period");
  return report;
}

TorusPoint orbit_point(const ProblemSpec& spec, const BigInt& n) {
  if (n < 0) throw InputError("n must be nonnegative");
  Session session(spec);
  return decode(session.at(n), session.basis);
}

bool member_exact(const ProblemSpec& spec, const BigInt& n) {
  if (n < 0) throw InputError("n must be nonnegative");
  Session session(spec);
  return session.evaluator.on_curve(session.at(n));
}

ModularResult member_modular(const ProblemSpec& spec, const BigInt& n) {
  if (n < 0) throw InputError("n must be nonnegative");
  Session session(spec);
  return session.evaluator.on_curve_modular(session.at(n), spec.params.modular);
}

}  // namespace retset

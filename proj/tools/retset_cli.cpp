// retset: return sets of monomial-affine orbits on curves over F_p(t).

#include "retset/analyzer.hpp"
#include "retset/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace retset;
using nlohmann::json;

namespace {

struct Overrides {
  std::optional<long> nmax;
  std::optional<std::string> horizon;
  std::optional<unsigned> modular_degree;
  std::optional<unsigned> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned long> kmax;
  std::string format = "json";
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--nmax", o.nmax, "exact scan bound");
  cmd->add_option("--horizon", o.horizon, "verification horizon");
  cmd->add_option("--modular-degree", o.modular_degree, "degree of the random moduli");
  cmd->add_option("--trials", o.trials, "moduli per modular check");
  cmd->add_option("--seed", o.seed, "seed for moduli and sampling");
  cmd->add_option("--kmax", o.kmax, "largest k tried when fitting p-arithmetic sequences");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
}

ProblemSpec load(const std::string& path, const Overrides& o) {
  ProblemSpec spec = load_problem_spec(path);
  auto& pr = spec.params;
  if (o.nmax) pr.nmax = *o.nmax;
  if (o.horizon) pr.horizon = parse_bigint(*o.horizon);
  if (o.modular_degree) pr.modular.degree = *o.modular_degree;
  if (o.trials) pr.modular.trials = *o.trials;
  if (o.seed) pr.modular.seed = *o.seed;
  if (o.kmax) pr.kmax = *o.kmax;
  if (pr.nmax < 0) throw InputError("--nmax must be nonnegative");
  if (pr.horizon < 0) throw InputError("--horizon must be nonnegative");
  if (pr.modular.degree == 0 || pr.modular.trials == 0) throw InputError("modular degree and trials must be positive");
  return spec;
}

void emit(const json& j, const std::string& text, const std::string& format) {
  if (format == "text") std::cout << text;
  else std::cout << j.dump(2) << "\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Rational> rationals(const std::string& s) {
  std::vector<Rational> out;
  if (s.empty()) return out;
  for (const auto& x : split(s, ',')) out.push_back(parse_rational(x));
  return out;
}

unsigned long small(const std::string& s, const char* what) {
  const BigInt x = parse_bigint(s);
  if (x < 0 || !x.fits_ulong_p()) throw InputError(std::string(what) + " out of range");
  return x.get_ui();
}

// "ap:m,l", "parith:a,b,k,p", "finite:x,y,...", "empty"
IndexSet parse_operand(const std::string& arg) {
  if (arg == "empty") return {};
  const auto colon = arg.find(':');
  if (colon == std::string::npos) throw InputError("operand \"" + arg + "\" needs a kind prefix");
  const std::string kind = arg.substr(0, colon);
  const auto parts = split(arg.substr(colon + 1), ',');
  if (kind == "ap") {
    if (parts.size() != 2) throw InputError("ap operand is ap:m,l");
    const BigInt m = parse_bigint(parts[0]), l = parse_bigint(parts[1]);
    if (m < 1 || l < 0) throw InputError("ap needs m >= 1 and l >= 0");
    return IndexSet{{}, {{m, l}}, {}};
  }
  if (kind == "parith") {
    if (parts.size() != 4) throw InputError("parith operand is parith:a,b,k,p");
    const unsigned long p = small(parts[3], "p");
    if (p < 2 || !is_prime(p)) throw InputError("parith needs a prime p");
    const PArithSeq P{parse_rational(parts[0]), parse_rational(parts[1]), small(parts[2], "k"), p};
    return clip_to_naturals(P);
  }
  if (kind == "finite") {
    IndexSet S;
    for (const auto& x : parts) {
      if (x.empty()) continue;
      const BigInt v = parse_bigint(x);
      if (v < 0) throw InputError("finite members must be nonnegative");
      S.finite.insert(v);
    }
    return S;
  }
  throw InputError("unknown operand kind \"" + kind + "\"");
}

json solution_json(const Solution& s) {
  json j = to_json(s.set);
  j["status"] = to_json(s.status);
  if (!s.status.proved()) j["bound"] = s.status.bound.get_str();
  return j;
}

std::string solution_text(const Solution& s) {
  std::string out = format(s.set) + "\n" + to_string(s.status) + "\n";
  for (const auto& n : s.status.notes) out += "  " + n + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Return sets of monomial-affine orbits on curves over F_p(t)"};
  app.require_subcommand(1);
  Overrides o;
  std::string spec_path;
  std::string n_text;
  bool modular = false;
  int code = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "scan, fit and verify the return set");
  analyze_cmd->add_option("spec", spec_path, "problem spec (JSON)")->required();
  add_overrides(analyze_cmd, o);

  auto* reduce_cmd = app.add_subcommand("reduce", "certified return set from the spec's fsets");
  reduce_cmd->add_option("spec", spec_path, "problem spec (JSON)")->required();
  add_overrides(reduce_cmd, o);

  auto* iterate_cmd = app.add_subcommand("iterate", "print Phi^n(alpha)");
  iterate_cmd->add_option("spec", spec_path, "problem spec (JSON)")->required();
  iterate_cmd->add_option("--n", n_text, "iteration count")->required();
  add_overrides(iterate_cmd, o);

  auto* member_cmd = app.add_subcommand("member", "test whether Phi^n(alpha) lies on V");
  member_cmd->add_option("spec", spec_path, "problem spec (JSON)")->required();
  member_cmd->add_option("--n", n_text, "iteration count")->required();
  member_cmd->add_flag("--modular", modular, "use randomized modular evaluation");
  add_overrides(member_cmd, o);

  auto* seq_cmd = app.add_subcommand("seq", "index-set algebra");
  seq_cmd->require_subcommand(1);
  std::vector<std::string> operands;
  std::string upto;
  auto* intersect_cmd = seq_cmd->add_subcommand("intersect", "intersect ap:m,l / parith:a,b,k,p / finite:... operands");
  intersect_cmd->add_option("operands", operands, "operands")->required()->expected(2, -1);
  intersect_cmd->add_option("--upto", upto, "also list members up to this bound");
  intersect_cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));

  auto* lrs_cmd = app.add_subcommand("lrs", "linear recurrence equations");
  lrs_cmd->require_subcommand(1);
  std::string coeffs, init, eq, parith;
  SearchBounds bounds;
  auto* solve_cmd = lrs_cmd->add_subcommand("solve", "solve u_n = c or u_n = a p^(km) + b");
  solve_cmd->add_option("--coeffs", coeffs, "c_0,...,c_{m-1} of u_{n+m} + c_{m-1} u_{n+m-1} + ... + c_0 u_n = 0")
      ->required();
  solve_cmd->add_option("--init", init, "u_0,...,u_{m-1}")->required();
  auto* eq_opt = solve_cmd->add_option("--eq", eq, "constant c");
  solve_cmd->add_option("--parith", parith, "a,b,k,p")->excludes(eq_opt);
  solve_cmd->add_option("--search-n", bounds.n, "index search bound");
  solve_cmd->add_option("--search-m", bounds.m, "exponent search bound");
  solve_cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*analyze_cmd) {
      const StructureReport r = analyze(load(spec_path, o));
      emit(to_json(r), to_text(r), o.format);
    } else if (*reduce_cmd) {
      const StructureReport r = run_reduction(load(spec_path, o));
      emit(to_json(r), to_text(r), o.format);
      if (r.cross_check && !*r.cross_check) {
        std::cerr << "retset: reduction disagrees with the exact scan\n";
        code = 2;
      }
    } else if (*iterate_cmd) {
      const ProblemSpec spec = load(spec_path, o);
      const BigInt n = parse_bigint(n_text);
      const TorusPoint x = orbit_point(spec, n);
      json coords = json::array();
      std::string text;
      for (std::size_t i = 0; i < x.size(); ++i) {
        coords.push_back(format(x[i]));
        text += "x" + std::to_string(i + 1) + " = " + format(x[i]) + "\n";
      }
      emit(json{{"n", n.get_str()}, {"point", coords}}, text, o.format);
    } else if (*member_cmd) {
      const ProblemSpec spec = load(spec_path, o);
      const BigInt n = parse_bigint(n_text);
      json j{{"n", n.get_str()}};
      std::string text;
      if (modular) {
        const ModularResult r = member_modular(spec, n);
        j["member"] = r.hit;
        j["method"] = "modular";
        j["numerator_degree"] = r.numerator_degree.get_str();
        if (r.hit) j["log10_error_bound"] = r.log10_error_bound;
        text = std::string(r.hit ? "member" : "not a member") + " (modular";
        if (r.hit) text += ", log10 error <= " + std::to_string(r.log10_error_bound);
        text += ")\n";
      } else {
        const bool hit = member_exact(spec, n);
        j["member"] = hit;
        j["method"] = "exact";
        text = std::string(hit ? "member" : "not a member") + " (exact)\n";
      }
      emit(j, text, o.format);
    } else if (*intersect_cmd) {
      IndexSet S = parse_operand(operands.front());
      for (std::size_t i = 1; i < operands.size(); ++i) S = intersect(S, parse_operand(operands[i]));
      S = canonicalize(S);
      json j = to_json(S);
      std::string text = format(S) + "\n";
      if (!upto.empty()) {
        json list = json::array();
        std::string line;
        for (const auto& x : elements_upto(S, parse_bigint(upto))) {
          list.push_back(x.get_str());
          line += (line.empty() ? "" : " ") + x.get_str();
        }
        j["members"] = list;
        text += line + "\n";
      }
      emit(j, text, o.format);
    } else if (*solve_cmd) {
      Lrs u{rationals(coeffs), rationals(init)};
      u.validate();
      Solution s;
      if (!parith.empty()) {
        const auto parts = split(parith, ',');
        if (parts.size() != 4) throw InputError("--parith is a,b,k,p");
        const unsigned long p = small(parts[3], "p");
        if (p < 2 || !is_prime(p)) throw InputError("--parith needs a prime p");
        s = solve_eq_parith(u, parse_rational(parts[0]), parse_rational(parts[1]), small(parts[2], "k"), p, bounds);
      } else {
        s = solve_eq_const(u, eq.empty() ? Rational(0) : parse_rational(eq), bounds);
      }
      json j = solution_json(s);
      j["recurrence"] = to_json(u);
      emit(j, solution_text(s), o.format);
    }
  } catch (const InputError& e) {
    std::cerr << "retset: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "retset: " << e.what() << "\n";
    return 1;
  }
  return code;
}

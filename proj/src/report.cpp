#include "retset/report.hpp"

#include <sstream>

namespace retset {

using nlohmann::json;

namespace {

json strings(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<Rational> rationals(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
  std::vector<Rational> out;
  for (const auto& x : j) {
    if (x.is_string()) {
      out.push_back(parse_rational(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      out.emplace_back(std::to_string(x.get<long long>()));
    } else {
      throw InputError(std::string(what) + " entries must be rationals");
    }
  }
  return out;
}

BigInt integer(const json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  throw InputError("expected an integer");
}

}  // namespace

json to_json(const IndexSet& S) {
  json finite = json::array();
  for (const auto& x : S.finite) finite.push_back(x.get_str());
  json aps = json::array();
  for (const auto& A : S.aps) aps.push_back({{"m", A.m.get_str()}, {"l", A.l.get_str()}});
  json parith = json::array();
  for (const auto& P : S.parith)
    parith.push_back({{"a", to_string(P.a)}, {"b", to_string(P.b)}, {"k", P.k}, {"p", P.p}});
  return {{"text", format(S)}, {"finite", finite}, {"aps", aps}, {"parith", parith}};
}

IndexSet index_set_from_json(const json& j) {
  IndexSet S;
  try {
    if (j.contains("finite"))
      for (const auto& x : j.at("finite")) S.finite.insert(integer(x));
    if (j.contains("aps"))
      for (const auto& A : j.at("aps")) S.aps.push_back({integer(A.at("m")), integer(A.at("l"))});
    if (j.contains("parith"))
      for (const auto& P : j.at("parith"))
        S.parith.push_back({parse_rational(P.at("a").get<std::string>()), parse_rational(P.at("b").get<std::string>()),
                            P.at("k").get<unsigned long>(), P.at("p").get<unsigned long>()});
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed index set: ") + e.what());
  }
  return S;
}

json to_json(const Lrs& u) { return {{"coeffs", strings(u.coeffs)}, {"init", strings(u.init)}}; }

Lrs lrs_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.contains("init"))
    throw InputError("recurrence needs \"coeffs\" and \"init\"");
  Lrs u{rationals(j.at("coeffs"), "coeffs"), rationals(j.at("init"), "init")};
  u.validate();
  return u;
}

json to_json(const PointRep& v) {
  json tors = json::array();
  for (Eigen::Index i = 0; i < v.tors.size(); ++i) tors.push_back(v.tors(i).get_str());
  json expo = json::array();
  for (Eigen::Index i = 0; i < v.expo.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < v.expo.cols(); ++k) row.push_back(v.expo(i, k).get_str());
    expo.push_back(row);
  }
  return {{"tors", tors}, {"expo", expo}};
}

json to_json(const CertStatus& s) {
  json out{{"status", to_string(s)}};
  if (!s.notes.empty()) out["notes"] = s.notes;
  return out;
}

json to_json(const OrbitClassification& c) {
  json out{{"kind", to_string(c.kind)}};
  if (c.kind == OrbitClassification::Kind::preperiodic) {
    out["preperiod"] = c.preperiod;
    out["period"] = c.period;
  }
  if (c.kind == OrbitClassification::Kind::unknown_to_bound) out["bound"] = c.bound;
  if (!c.certificate.empty()) out["certificate"] = c.certificate;
  return out;
}

json to_json(const StructureReport& r) {
  json hits = json::array();
  for (const auto& n : r.hits) hits.push_back(n.get_str());
  json statuses = json::array();
  for (const auto& s : r.statuses) {
    json c{{"component", s.component}, {"status", to_string(s.kind)}};
    if (s.kind == ComponentStatus::Kind::verified_probabilistic || s.kind == ComponentStatus::Kind::verified_to_bound ||
        s.kind == ComponentStatus::Kind::exact)
      c["bound"] = s.bound.get_str();
    if (s.members_checked > 0) c["members_checked"] = s.members_checked;
    if (s.nonmembers_checked > 0) c["nonmembers_checked"] = s.nonmembers_checked;
    if (!s.confirmed.empty()) {
      json conf = json::array();
      for (const auto& n : s.confirmed) conf.push_back(n.get_str());
      c["confirmed"] = conf;
    }
    if (!s.notes.empty()) c["notes"] = s.notes;
    statuses.push_back(c);
  }
  const auto& p = r.params;
  json params{{"mode", r.mode},
              {"nmax", p.nmax},
              {"scanned_to", r.scanned_to},
              {"truncated", r.truncated},
              {"horizon", p.horizon.get_str()},
              {"kmax", p.kmax},
              {"modular_degree", p.modular.degree},
              {"trials", p.modular.trials},
              {"seed", p.modular.seed},
              {"search_n", p.bounds.n},
              {"search_m", p.bounds.m}};
  json errors{{"modular_degree", r.error_bound.degree},
              {"trials", r.error_bound.trials},
              {"probabilistic_checks", r.error_bound.checks}};
  if (r.error_bound.checks > 0) {
    errors["numerator_degree"] = r.error_bound.numerator_degree.get_str();
    errors["irreducible_count"] = r.error_bound.irreducible_count.get_str();
    errors["log10_error_per_equation"] = r.error_bound.log10_bound;
  }
  json out{{"hits", hits},
           {"structure", to_json(r.structure)},
           {"statuses", statuses},
           {"orbit", to_json(r.orbit)},
           {"params", params},
           {"error_bounds", errors}};
  if (r.cross_check) out["cross_check"] = *r.cross_check ? "pass" : "fail";
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

std::string to_text(const StructureReport& r) {
  std::ostringstream os;
  os << "mode: " << r.mode << "\n";
  os << "hits (n <= " << r.scanned_to << (r.truncated ? ", truncated" : "") << "):";
  for (const auto& n : r.hits) os << " " << n;
  os << "\nstructure: " << format(r.structure) << "\n";
  for (const auto& s : r.statuses) {
    os << "  " << s.component << ": " << to_string(s.kind);
    if (s.kind == ComponentStatus::Kind::verified_probabilistic || s.kind == ComponentStatus::Kind::verified_to_bound)
      os << " (bound " << s.bound << ")";
    if (s.members_checked > 0) os << ", " << s.members_checked << " members checked";
    if (s.nonmembers_checked > 0) os << ", " << s.nonmembers_checked << " non-members checked";
    os << "\n";
    for (const auto& note : s.notes) os << "    " << note << "\n";
  }
  os << "orbit: " << to_string(r.orbit.kind);
  if (r.orbit.kind == OrbitClassification::Kind::preperiodic)
    os << " (preperiod " << r.orbit.preperiod << ", period " << r.orbit.period << ")";
  os << "\n";
  if (r.error_bound.checks > 0)
    os << "modular checks: " << r.error_bound.checks << " at degree " << r.error_bound.degree << " x "
       << r.error_bound.trials << " trials, log10 error per equation <= " << r.error_bound.log10_bound << "\n";
  if (r.cross_check) os << "cross-check against exact scan: " << (*r.cross_check ? "pass" : "fail") << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace retset

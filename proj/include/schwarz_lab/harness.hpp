#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "schwarz_lab/instances.hpp"
#include "schwarz_lab/oracles.hpp"

namespace schwarz_lab {

struct RunConfig {
  std::uint64_t seed = 7;
  int samples = 100;       // instances per theorem per domain
  double tolerance = 1e-9;
  std::vector<TheoremId> theorems;  // empty = all
  std::vector<Space> domains;       // empty = default roster
  int threads = 1;
};

inline std::vector<Space> default_roster() {
  return {Space::Euclidean(1), Space::Euclidean(2), Space::Sup(2), Space::Product({2, 1}),
          Space::One(2)};
}

inline Space space_from_name(const std::string& name) {
  const auto split = [&](char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(name);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
  };
  if (name == "disc") return Space::Euclidean(1);
  const std::vector<std::string> p = split(':');
  try {
    if (p.size() == 2 && p[0] == "euclidean") return Space::Euclidean(std::stoi(p[1]));
    if (p.size() == 2 && p[0] == "sup") return Space::Sup(std::stoi(p[1]));
    if (p.size() == 2 && p[0] == "one") return Space::One(std::stoi(p[1]));
    if (p.size() == 2 && p[0] == "real_euclidean") return Space::RealEuclidean(std::stoi(p[1]));
    if (p.size() == 3 && p[0] == "lp") return Space::Lp(std::stoi(p[1]), std::stod(p[2]));
    if (p.size() == 2 && p[0] == "product") {
      std::vector<int> dims;
      std::stringstream ss(p[1]);
      std::string item;
      while (std::getline(ss, item, ',')) dims.push_back(std::stoi(item));
      return Space::Product(dims);
    }
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("unknown space name: " + name);
}

inline RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.seed = j.value("seed", std::uint64_t{7});
  c.samples = j.value("samples", 100);
  c.tolerance = j.value("tolerance", 1e-9);
  if (c.samples < 1) throw std::invalid_argument("samples must be positive");
  if (c.tolerance < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
  if (j.contains("theorems"))
    for (const auto& t : j.at("theorems")) c.theorems.push_back(theorem_from_string(t));
  if (j.contains("domains"))
    for (const auto& d : j.at("domains")) c.domains.push_back(space_from_name(d));
  if (const char* env = std::getenv("SCHWARZ_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n < 1) throw std::invalid_argument("SCHWARZ_LAB_THREADS must be a positive integer");
    c.threads = n;
  }
  return c;
}

inline bool applicable(TheoremId id, const Space& s) {
  switch (id) {
    case TheoremId::HARRIS:
      return s.dim == 1 && s.kind == NormKind::euclidean;
    case TheoremId::T2_3_MU:
    case TheoremId::T2_3_EXTREMAL:
    case TheoremId::T2_5:
    case TheoremId::T3_5:
      return detail::system_for(s).has_value();
    case TheoremId::T3_10:
    case TheoremId::C3_11:
    case TheoremId::C3_13:
      return s.kind == NormKind::euclidean || s.kind == NormKind::sup ||
             s.kind == NormKind::product;
    default:
      return !s.real_restricted;
  }
}

inline nlohmann::ordered_json check_to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["theorem"] = to_string(r.theorem);
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["flags"] = r.flags;
  j["instance_digest"] = r.instance_digest;
  j["seed"] = r.seed;
  return j;
}

// ---------------------------------------------------------------------------
// oracle gates: independent numeric routes must agree before any theorem
// checks are trusted
// ---------------------------------------------------------------------------
inline std::vector<OracleReport> run_oracle_gates(std::uint64_t seed) {
  std::vector<OracleReport> out;
  Rng rng(seed ^ 0x0f0f0f0f);

  {
    OracleReport r{"derivatives_fd", 0.0, 1e-6, false};
    for (MapFamily fam :
         {MapFamily::slice_blaschke, MapFamily::poly_scaled, MapFamily::harmonic_slice}) {
      for (const Space& dom : {Space::Euclidean(2), Space::Sup(2)}) {
        const auto m = random_ball_map(dom, Space::Euclidean(2), fam, 6, rng);
        for (int i = 0; i < 4; ++i) {
          const Vec z = detail::interior_point(dom, rng) * 0.7;
          const DerivPair exact = m->derivatives(z);
          const DerivPair fd = fd_derivatives(*m, z);
          r.max_error = std::max(r.max_error, (exact.dh - fd.dh).cwiseAbs().maxCoeff());
          r.max_error = std::max(r.max_error, (exact.dg - fd.dg).cwiseAbs().maxCoeff());
        }
      }
    }
    r.pass = r.max_error <= r.gate;
    out.push_back(r);
  }

  {
    OracleReport r{"operator_norm", 0.0, 1e-5, false};
    for (int i = 0; i < 12; ++i) {
      const int n = 1 + rng.uniform_int(4);
      const int m = 1 + rng.uniform_int(4);
      Mat A(m, n);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b) A(a, b) = rng.complex_gaussian();
      const Space d = Space::Euclidean(n), c = Space::Euclidean(m);
      const double lib = operator_norm(LinearMap{A, d, c}).value;
      const double ora = numeric_operator_norm(A, d, c).value;
      r.max_error = std::max(r.max_error, std::abs(lib - ora));
    }
    r.pass = r.max_error <= r.gate;
    out.push_back(r);
  }

  {
    OracleReport r{"bergman_metric", 0.0, 1e-5, false};
    for (const TripleSystem& sys : {TripleSystem::HilbertBall(2), TripleSystem::Polydisc(2),
                                    TripleSystem::ProductOfBalls({2, 1})}) {
      const Mat H = numeric_bergman_metric0(sys);
      Mat closed(sys.dim, sys.dim);
      for (int i = 0; i < sys.dim; ++i)
        for (int j = 0; j < sys.dim; ++j) {
          Vec x = Vec::Zero(sys.dim), y = Vec::Zero(sys.dim);
          x[i] = 1.0;
          y[j] = 1.0;
          closed(i, j) = bergman_metric0(sys, x, y);
        }
      r.max_error = std::max(r.max_error, (H - closed).cwiseAbs().maxCoeff());
    }
    r.pass = r.max_error <= r.gate;
    out.push_back(r);
  }

  {
    OracleReport r{"c_constant", 0.0, 1e-4, false};
    for (const TripleSystem& sys : {TripleSystem::HilbertBall(2), TripleSystem::Polydisc(3),
                                    TripleSystem::ProductOfBalls({2, 1})}) {
      const double numeric = numeric_c_constant(sys, numeric_bergman_metric0(sys));
      r.max_error = std::max(r.max_error, std::abs(numeric - c_constant(sys)));
    }
    r.pass = r.max_error <= r.gate;
    out.push_back(r);
  }

  return out;
}

struct RunReport {
  std::vector<OracleReport> gates;
  std::vector<CheckReport> checks;
  int exit_code = 0;  // 0 pass, 1 theorem failure, 2 oracle gate failure
};

inline RunReport run(const RunConfig& cfg) {
  RunReport rep;
  rep.gates = run_oracle_gates(cfg.seed);
  for (const OracleReport& g : rep.gates)
    if (!g.pass) {
      rep.exit_code = 2;
      return rep;
    }

  std::vector<TheoremId> tags = cfg.theorems;
  if (tags.empty())
    for (const auto& [t, n] : theorem_names()) tags.push_back(t);
  const std::vector<Space> domains = cfg.domains.empty() ? default_roster() : cfg.domains;

  bool failed = false;
  for (TheoremId id : tags) {
    for (const Space& dom : domains) {
      if (!applicable(id, dom)) continue;
      Rng rng(cfg.seed ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(id) + 1)) ^
              std::hash<std::string>{}(dom.name()));
      for (int i = 0; i < cfg.samples; ++i) {
        Instance ins = random_instance(id, dom, rng);
        CheckReport r = run_instance(id, ins, cfg.tolerance);
        r.seed = cfg.seed;
        r.instance_digest = detail::digest_of(id, cfg.seed, i, ins.z);
        r.flags.push_back("domain:" + dom.name());
        if (!r.pass) failed = true;
        rep.checks.push_back(std::move(r));
      }
    }
  }
  rep.exit_code = failed ? 1 : 0;
  return rep;
}

inline nlohmann::ordered_json report_to_json(const RunReport& rep, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.samples;
  j["threads"] = cfg.threads;
  j["oracle_gates"] = nlohmann::ordered_json::array();
  for (const OracleReport& g : rep.gates) {
    nlohmann::ordered_json gj;
    gj["name"] = g.name;
    gj["max_error"] = g.max_error;
    gj["gate"] = g.gate;
    gj["pass"] = g.pass;
    j["oracle_gates"].push_back(gj);
  }
  j["checks"] = nlohmann::ordered_json::array();
  int failures = 0;
  for (const CheckReport& c : rep.checks) {
    if (!c.pass) ++failures;
    j["checks"].push_back(check_to_json(c));
  }
  j["summary"] = {{"total", rep.checks.size()},
                  {"failures", failures},
                  {"exit_code", rep.exit_code}};
  return j;
}

inline void write_report(const nlohmann::ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report path: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace schwarz_lab

// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "schwarz_lab/harness.hpp"

using namespace schwarz_lab;

namespace {

int g_failures = 0;

void report(int n, const std::string& what, bool pass, const std::string& detail) {
  std::printf("%s  [%d] %s (%s)\n", pass ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

Vec cvec(std::initializer_list<Complex> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v[i++] = x;
  return v;
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// 1. every bound holds on 10^3 certified random instances per tag
void criterion_soundness() {
  const std::vector<Space> roster = default_roster();
  double worst = 0.0;
  std::string worst_at = "none";
  long total = 0;
  bool pass = true;
  for (const auto& [id, name] : theorem_names()) {
    std::vector<Space> domains;
    for (const Space& s : roster)
      if (applicable(id, s)) domains.push_back(s);
    if (domains.empty()) {
      pass = false;
      worst_at = std::string(name) + ": no applicable domain";
      continue;
    }
    Rng rng(0xACC0 + static_cast<std::uint64_t>(id));
    for (int i = 0; i < 1000; ++i) {
      const Space& dom = domains[i % domains.size()];
      const Instance ins = random_instance(id, dom, rng);
      const CheckReport r = run_instance(id, ins, 1e-9);
      ++total;
      if (r.residual < worst) {
        worst = r.residual;
        worst_at = std::string(name) + " on " + dom.name();
      }
      if (!r.pass) pass = false;
    }
  }
  report(1, "soundness: 1000 random instances per bound, residual >= -1e-9", pass,
         std::to_string(total) + " checks, worst residual " + fmt(worst) + " at " + worst_at);
}

// 2. the registered extremal maps attain equality
void criterion_sharpness() {
  struct Item {
    TheoremId id;
    double residual;
  };
  std::vector<Item> items;
  const auto ball2 = [] {
    ExtremalParams p;
    p.dom = Space::Euclidean(2);
    p.codom = Space::Euclidean(2);
    p.w0 = cvec({0.6, {0.0, 0.8}});
    p.b = cvec({{0.0, 0.6}, 0.8});
    return p;
  };

  {
    ExtremalParams p = ball2();
    p.a = 0.3;
    items.push_back({TheoremId::T2_1,
                     interior_bound(TheoremId::T2_1, *extremal(TheoremId::T2_1, p),
                                    Vec(0.55 * p.w0)).residual});
  }
  {
    ExtremalParams p = ball2();
    p.r = 0.4;
    items.push_back({TheoremId::T2_2,
                     interior_bound(TheoremId::T2_2, *extremal(TheoremId::T2_2, p),
                                    Vec(0.5 * p.w0)).residual});
  }
  {
    ExtremalParams p = ball2();
    p.r = 0.5;
    items.push_back({TheoremId::T2_4,
                     boundary_bound(TheoremId::T2_4, *extremal(TheoremId::T2_4, p), p.w0).residual});
  }
  {
    const TripleSystem sys = TripleSystem::HilbertBall(2);
    ExtremalParams p = ball2();
    p.b = p.w0;
    p.a = 0.2;
    p.bmag = 0.5;
    const auto f = extremal(TheoremId::T2_5, p);
    items.push_back({TheoremId::T2_5,
                     pairing_boundary_bound(TheoremId::T2_5, &sys, *f, p.w0, p.b).residual});
    items.push_back({TheoremId::T2_6,
                     pairing_boundary_bound(TheoremId::T2_6, nullptr, *f, p.w0, p.b).residual});
  }
  {
    // vanishing at the origin: the slice profile is odd-symmetric at 0
    ExtremalParams p = ball2();
    items.push_back({TheoremId::T3_1,
                     interior_bound(TheoremId::T3_1, *extremal(TheoremId::T3_1, p),
                                    Vec(0.5 * p.w0)).residual});
  }
  {
    const TripleSystem sys = TripleSystem::Polydisc(2);
    ExtremalParams p;
    p.dom = sys.space();
    p.codom = sys.space();
    p.w0 = cvec({1.0, 0.0});
    p.b = cvec({{0.0, 1.0}, {1.0, 0.0}});
    const auto f = extremal(TheoremId::T3_5, p);
    items.push_back({TheoremId::T3_5,
                     pairing_boundary_bound(TheoremId::T3_5, &sys, *f, p.w0, p.b).residual});
  }
  {
    ExtremalParams p = ball2();
    const auto f = extremal(TheoremId::T3_6, p);
    items.push_back({TheoremId::T3_6,
                     pairing_boundary_bound(TheoremId::T3_6, nullptr, *f, p.w0, p.b).residual});
  }
  {
    ExtremalParams p = ball2();
    items.push_back({TheoremId::T3_7,
                     gradient_bound(TheoremId::T3_7, *extremal(TheoremId::T3_7, p),
                                    Vec(Vec::Zero(2))).residual});
  }
  {
    ExtremalParams p;
    p.dom = Space::Product({2, 1});
    p.codom = Space::Euclidean(3);
    p.w0 = cvec({0.6, 0.8, {0.0, 1.0}});
    p.b = cvec({1.0, 0.0, 0.0});
    p.r = 0.5;
    const auto f = extremal(TheoremId::T3_10, p);
    const std::vector<Vec> dirs = {cvec({0.6, 0.8, 0.0}), cvec({0.0, 0.0, 1.0})};
    items.push_back({TheoremId::T3_10,
                     directional_sum_bound(TheoremId::T3_10, *f, cvec({0.3, 0.4, {0.1, 0.0}}),
                                           dirs).residual});
  }

  bool pass = true;
  double worst = 0.0;
  std::string worst_at = "none";
  for (const Item& it : items) {
    if (std::abs(it.residual) > std::abs(worst)) {
      worst = it.residual;
      worst_at = to_string(it.id);
    }
    if (std::abs(it.residual) > 1e-8) pass = false;
  }
  report(2, "sharpness: extremal maps attain equality within 1e-8", pass,
         std::to_string(items.size()) + " extremals, worst |residual| " + fmt(std::abs(worst)) +
             " at " + worst_at);
}

// 3. derivative norm of the inverse Mobius map at its center
void criterion_kaup() {
  double worst = 0.0;
  bool pass = true;
  Rng rng(0x6a0);
  for (const TripleSystem& sys : {TripleSystem::HilbertBall(1), TripleSystem::HilbertBall(2),
                                  TripleSystem::Polydisc(2)}) {
    const Space sp = sys.space();
    for (int i = 0; i < 100; ++i) {
      Vec z0 = unit_sphere_sample(sp, rng) * rng.uniform(0.05, 0.9);
      const Mobius g = mobius(sys, Vec(-z0));
      const double got = operator_norm(LinearMap{g.deriv(z0), sp, sp}, 2048, 7 + i).value;
      const double nz = norm(sp, z0);
      const double want = 1.0 / (1.0 - nz * nz);
      worst = std::max(worst, std::abs(got - want) / want);
      if (std::abs(got - want) / want > 1e-6) pass = false;
    }
  }
  report(3, "Mobius derivative norm at the center equals 1/(1-||z0||^2)", pass,
         "300 points, worst relative error " + fmt(worst));
}

// 4. pairing constants vs the numeric kernel oracle, and the sandwich
void criterion_constants() {
  bool pass = true;
  double worst = 0.0;
  const auto check = [&](const TripleSystem& sys, double expect) {
    const double closed = c_constant(sys);
    const double numeric = numeric_c_constant(sys, numeric_bergman_metric0(sys));
    worst = std::max(worst, std::abs(numeric - closed));
    if (closed != expect) pass = false;
    if (std::abs(numeric - closed) > 1e-4) pass = false;
    const double lo = (sys.dim + sys.rank) / 2.0;
    if (!(lo <= closed && closed <= sys.dim)) pass = false;
  };
  for (int n : {1, 2, 3}) check(TripleSystem::HilbertBall(n), (n + 1) / 2.0);
  for (int n : {2, 3}) check(TripleSystem::Polydisc(n), static_cast<double>(n));
  check(TripleSystem::ProductOfBalls({2, 1}), 2.5);
  report(4, "pairing constants match the kernel oracle and the dimension sandwich", pass,
         "worst oracle gap " + fmt(worst));
}

// 5. the ratio envelope mu_k: endpoints and monotonicity
void criterion_mu() {
  bool pass = true;
  double worst = 0.0;
  for (double k = 0.1; k < 0.95; k += 0.1) {
    worst = std::max(worst, std::abs(mu_k(k, 1.0) - (1.0 + k)));
    worst = std::max(worst, std::abs(mu_k(k, 0.0) - (1.0 + k / 2.0)));
    if (std::abs(mu_k(k, 1.0) - (1.0 + k)) > 1e-14) pass = false;
    if (std::abs(mu_k(k, 0.0) - (1.0 + k / 2.0)) > 1e-14) pass = false;
    double prev = mu_k(k, 0.0) - 1e-12;
    for (int i = 1; i <= 1000; ++i) {
      const double cur = mu_k(k, i / 1000.0);
      if (cur < prev) pass = false;
      prev = cur;
    }
  }
  report(5, "ratio envelope endpoints 1+k/2 and 1+k, nondecreasing on 1000 points", pass,
         "worst endpoint error " + fmt(worst));
}

// 6. the linear extremal hits ratio 1-k, confirmed by the schlicht disk oracle
void criterion_bloch() {
  bool pass = true;
  double worst = 0.0;
  Rng rng(0xb10c);
  for (double k : {0.0, 0.25, 0.5, 0.75}) {
    const CheckReport r =
        bloch_ratio_extremal(k, TripleSystem::HilbertBall(2), detail::random_unitary(2, rng));
    if (r.lhs != 1.0 - k || !r.pass) pass = false;

    // 1-d twin of the extremal, measured by the brute force schlicht radius
    const Complex u = detail::random_phase(rng);
    Poly h, g;
    h.terms[{1}] = cvec({u});
    if (k > 0.0) g.terms[{1}] = cvec({k * u});
    const PluriharmonicMap f(Space::Euclidean(1), Space::Euclidean(1), std::move(h), std::move(g));
    const auto o = univalent_radius_1d(f, Complex(0.0, 0.0));
    const double err = std::abs(o.radius - (1.0 - k));
    worst = std::max(worst, err);
    if (err > 2.0 * o.grid_cell || o.collision) pass = false;
  }
  report(6, "linear extremal ratio is exactly 1-k, schlicht radius oracle agrees", pass,
         "worst oracle gap " + fmt(worst));
}

// 7. the directional derivative ceiling 4/pi and its attainment
void criterion_lambda() {
  bool pass = true;
  double worst = 0.0;
  Rng rng(0x1a3bda);
  const Space dom = Space::Euclidean(2);
  for (int i = 0; i < 1000; ++i) {
    const auto f = random_ball_map(dom, Space::Euclidean(2), random_family(rng),
                                   3 + rng.uniform_int(5), rng);
    const Vec w = unit_sphere_sample(dom, rng);
    const double v = lambda0(*f, w).value;
    worst = std::max(worst, v);
    if (v > 4.0 / kPi + 1e-9) pass = false;
  }
  ExtremalParams p;
  p.dom = dom;
  p.codom = dom;
  p.w0 = cvec({0.6, {0.0, 0.8}});
  p.b = cvec({{0.0, 0.6}, 0.8});
  const double attained = lambda0(*extremal(TheoremId::T3_4, p), p.w0).value;
  if (std::abs(attained - 4.0 / kPi) > 1e-6) pass = false;
  report(7, "directional derivative ceiling 4/pi, attained by the arctan profile", pass,
         "1000 maps, sup " + fmt(worst) + " vs 4/pi = " + fmt(4.0 / kPi) + ", extremal " +
             fmt(attained));
}

// 8. the classical 2/pi boundary constant for maps fixing the origin
void criterion_heinz() {
  bool pass = true;
  double worst_res = 1e9;
  Rng rng(0x2417);
  const Space disc = Space::Euclidean(1);
  const Vec w0 = cvec({1.0});
  for (int i = 0; i < 100; ++i) {
    std::shared_ptr<ScalarSlice> s;
    switch (i % 3) {
      case 0: s = std::make_shared<HeinzSlice>(); break;
      case 1: s = detail::boundary_slice_holo(rng, true, false); break;
      default: s = detail::boundary_slice_pluri(rng, true); break;
    }
    const auto f = detail::slice_map(disc, disc, w0, w0, std::move(s));
    const CheckReport r = boundary_bound(TheoremId::T3_3, *f, w0);
    if (std::abs(r.rhs - 2.0 / kPi) > 1e-12) pass = false;  // f(0) = 0 endpoint
    worst_res = std::min(worst_res, r.residual);
    if (!r.pass) pass = false;
  }
  report(8, "boundary derivative of origin-fixing disc maps stays above 2/pi", pass,
         "100 maps, min residual " + fmt(worst_res));
}

// 9. the two pairing normalizations agree on the Hilbert ball
void criterion_coherence() {
  bool pass = true;
  double worst = 0.0;
  Rng rng(0xc053);
  const Space dom = Space::Euclidean(2);
  for (int i = 0; i < 100; ++i) {
    const Instance ins = random_instance(TheoremId::T2_5, dom, rng);
    const CheckReport a = run_instance(TheoremId::T2_5, ins);
    const CheckReport b = pairing_boundary_bound(TheoremId::T2_6, nullptr, *ins.map, ins.z,
                                                 ins.beta);
    worst = std::max(worst, std::abs(a.residual - b.residual));
    if (std::abs(a.residual - b.residual) > 1e-10) pass = false;
  }
  report(9, "metric and inner product pairings give identical residuals on the ball", pass,
         "100 instances, worst gap " + fmt(worst));
}

// 10. independent numeric oracles agree with the library routes
void criterion_gates() {
  const std::vector<OracleReport> gates = run_oracle_gates(7);
  bool pass = true;
  std::string detail;
  for (const OracleReport& g : gates) {
    if (!g.pass) pass = false;
    if (g.name == "derivatives_fd" && g.max_error > 1e-6) pass = false;
    if (g.name == "operator_norm" && g.max_error > 1e-3) pass = false;
    if (g.name == "bergman_metric" && g.max_error > 1e-5) pass = false;
    if (!detail.empty()) detail += ", ";
    detail += g.name + " " + fmt(g.max_error);
  }
  report(10, "oracle gates: finite differences, operator norms, kernel metric", pass, detail);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_soundness();
  criterion_sharpness();
  criterion_kaup();
  criterion_constants();
  criterion_mu();
  criterion_bloch();
  criterion_lambda();
  criterion_heinz();
  criterion_coherence();
  criterion_gates();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s: %d of 10 criteria passed in %.1f s\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", 10 - g_failures, secs);
  return g_failures == 0 ? 0 : 1;
}

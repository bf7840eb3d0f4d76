#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schwarz_lab/theorems.hpp"

namespace schwarz_lab {

enum class MapFamily { slice_blaschke, poly_scaled, harmonic_slice };

inline std::string to_string(MapFamily f) {
  switch (f) {
    case MapFamily::slice_blaschke: return "slice_blaschke";
    case MapFamily::poly_scaled: return "poly_scaled";
    default: return "harmonic_slice";
  }
}

namespace detail {

using SPoly = std::map<MultiIndex, Complex>;

inline SPoly spoly_mul(const SPoly& a, const SPoly& b) {
  SPoly out;
  for (const auto& [ia, ca] : a)
    for (const auto& [ib, cb] : b) {
      MultiIndex s(ia.size());
      for (std::size_t j = 0; j < ia.size(); ++j) s[j] = ia[j] + ib[j];
      out[s] += ca * cb;
    }
  return out;
}

// Taylor coefficients of a finite Blaschke-type product up to `full`, with
// the absolute tail of the dropped range [keep+1, full]. Coefficients beyond
// `full` are vanishingly small for zeros of modulus <= 0.6 and are covered
// by a fixed 1e-12 allowance.
struct TruncatedSeries {
  std::vector<Complex> c;  // degrees 0..keep
  double tail = 0.0;
};

inline TruncatedSeries blaschke_series(Complex u, int zero_order, const std::vector<Complex>& zeros,
                                       int keep, int full = 200) {
  std::vector<Complex> s(full + 1, 0.0);
  if (zero_order > full) throw std::invalid_argument("zero order too large");
  s[zero_order] = u;
  for (Complex a : zeros) {
    if (std::abs(a) > 0.6) throw std::invalid_argument("Blaschke zero too close to the boundary");
    std::vector<Complex> f(full + 1, 0.0);
    f[0] = -a;
    const Complex ac = std::conj(a);
    Complex pw = 1.0;
    for (int n = 1; n <= full; ++n) {
      f[n] = pw * (1.0 - std::norm(a));
      pw *= ac;
    }
    std::vector<Complex> t(full + 1, 0.0);
    for (int i = 0; i <= full; ++i) {
      if (s[i] == Complex(0.0, 0.0)) continue;
      for (int j = 0; i + j <= full; ++j) t[i + j] += s[i] * f[j];
    }
    s.swap(t);
  }
  TruncatedSeries out;
  out.c.assign(s.begin(), s.begin() + std::min<int>(keep, full) + 1);
  for (int n = keep + 1; n <= full; ++n) out.tail += std::abs(s[n]);
  out.tail += 1e-12;
  return out;
}

// expand sum c_n (l(z))^n into a multi-index polynomial
inline SPoly substitute(const std::vector<Complex>& c, const Vec& lcoef) {
  const int dim = static_cast<int>(lcoef.size());
  SPoly lin;
  for (int j = 0; j < dim; ++j) {
    if (lcoef[j] == Complex(0.0, 0.0)) continue;
    MultiIndex e(dim, 0);
    e[j] = 1;
    lin[e] = lcoef[j];
  }
  SPoly out, pw;
  pw[MultiIndex(dim, 0)] = 1.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (n > 0) pw = spoly_mul(pw, lin);
    if (c[n] == Complex(0.0, 0.0)) continue;
    for (const auto& [a, v] : pw) out[a] += c[n] * v;
  }
  return out;
}

inline Poly scaled_direction_poly(const SPoly& s, const Vec& b) {
  Poly p;
  for (const auto& [a, v] : s) {
    if (std::abs(v) < 1e-300) continue;
    p.terms[a] = v * b;
  }
  return p;
}

inline std::vector<Complex> random_zeros(Rng& rng, int count) {
  std::vector<Complex> zs;
  for (int i = 0; i < count; ++i) {
    const double r = 0.5 * std::sqrt(rng.uniform());
    const double th = 2.0 * kPi * rng.uniform();
    zs.emplace_back(r * std::cos(th), r * std::sin(th));
  }
  return zs;
}

inline Complex random_phase(Rng& rng) {
  const double th = 2.0 * kPi * rng.uniform();
  return {std::cos(th), std::sin(th)};
}

}  // namespace detail

struct GeneratorOptions {
  bool origin_zero = false;
  bool holomorphic_only = false;
};

// A random pluriharmonic polynomial map of the unit ball of dom into the unit
// ball of codom, carrying a containment certificate.
inline std::shared_ptr<PluriharmonicMap> random_ball_map(const Space& dom, const Space& codom,
                                                         MapFamily family, int degree, Rng& rng,
                                                         GeneratorOptions opts = {}) {
  if (opts.holomorphic_only && family == MapFamily::harmonic_slice)
    family = MapFamily::slice_blaschke;
  // slice families are univariate in l(z); carry enough terms that the
  // truncation tail stays far below the containment margin
  const int keep = (dom.dim <= 4) ? std::max(degree, 24) : 12;
  const Vec w0 = unit_sphere_sample(dom, rng);
  const Functional l = support_functional(dom, w0);

  if (family == MapFamily::slice_blaschke) {
    const double rho_h = opts.holomorphic_only ? 0.98 : 0.52;
    const auto sh = detail::blaschke_series(rho_h * detail::random_phase(rng),
                                            opts.origin_zero ? 1 : rng.uniform_int(2),
                                            detail::random_zeros(rng, 1 + rng.uniform_int(2)), keep);
    const Vec bh = unit_sphere_sample(codom, rng);
    Poly h = detail::scaled_direction_poly(detail::substitute(sh.c, l.coefficients), bh);
    Poly g;
    double sup = rho_h * (1.0 + sh.tail);
    if (!opts.holomorphic_only) {
      const double rho_g = 0.45;
      const auto sg = detail::blaschke_series(rho_g * detail::random_phase(rng),
                                              opts.origin_zero ? 1 : rng.uniform_int(2),
                                              detail::random_zeros(rng, 1 + rng.uniform_int(2)), keep);
      const Vec bg = unit_sphere_sample(codom, rng);
      g = detail::scaled_direction_poly(detail::substitute(sg.c, l.coefficients), bg);
      sup += rho_g * (1.0 + sg.tail);
    }
    auto m = std::make_shared<PluriharmonicMap>(dom, codom, std::move(h), std::move(g));
    m->attached_certificate = BallCertificate{sup, 1.0 - sup};
    return m;
  }

  if (family == MapFamily::harmonic_slice) {
    // t1 Re(m) + t2 Im(m) along a direction; p = q = ((t1 - i t2)/2) m
    const double budget = 0.97 * rng.uniform(0.4, 1.0);
    const double split = rng.uniform();
    const double t1 = budget * split, t2 = budget * (1.0 - split);
    const auto sm = detail::blaschke_series(detail::random_phase(rng), 1,
                                            detail::random_zeros(rng, rng.uniform_int(3)), keep);
    const Complex c = 0.5 * Complex(t1, -t2);
    std::vector<Complex> cp(sm.c.size());
    for (std::size_t i = 0; i < sm.c.size(); ++i) cp[i] = c * sm.c[i];
    const Vec b = unit_sphere_sample(codom, rng);
    const detail::SPoly s = detail::substitute(cp, l.coefficients);
    Poly h = detail::scaled_direction_poly(s, b);
    Poly g = detail::scaled_direction_poly(s, Vec(b.conjugate()));
    auto m = std::make_shared<PluriharmonicMap>(dom, codom, std::move(h), std::move(g));
    m->attached_certificate = BallCertificate{budget + 2.0 * std::abs(c) * sm.tail,
                                              1.0 - budget - 2.0 * std::abs(c) * sm.tail};
    return m;
  }

  // poly_scaled: sparse random coefficients, normalized by the coefficient sum
  const auto random_poly = [&](bool skip_constant) {
    Poly p;
    const int terms = 2 * (std::min(degree, 6) + 1);
    for (int t = 0; t < terms; ++t) {
      MultiIndex a(dom.dim, 0);
      int total = 0;
      for (int j = 0; j < dom.dim; ++j) {
        a[j] = rng.uniform_int(std::min(degree, 6) + 1);
        total += a[j];
      }
      if (total > degree || (skip_constant && total == 0)) continue;
      Vec c(codom.dim);
      for (int j = 0; j < codom.dim; ++j) c[j] = rng.complex_gaussian();
      p.terms[a] = c;
    }
    if (p.terms.empty()) {
      MultiIndex a(dom.dim, 0);
      a[0] = 1;
      Vec c = Vec::Zero(codom.dim);
      c[0] = 1.0;
      p.terms[a] = c;
    }
    return p;
  };
  Poly h = random_poly(opts.origin_zero);
  Poly g = opts.holomorphic_only ? Poly{} : random_poly(opts.origin_zero);
  double s = 0.0;
  for (const auto* poly : {&h, &g})
    for (const auto& [a, c] : poly->terms) s += norm(codom, c);
  const double target = 0.995 * rng.uniform(0.3, 1.0);
  const double t = target / s;
  for (auto* poly : {&h, &g})
    for (auto& [a, c] : poly->terms) c *= t;
  return std::make_shared<PluriharmonicMap>(dom, codom, std::move(h), std::move(g));
}

// ---------------------------------------------------------------------------
// per-theorem randomized instances
// ---------------------------------------------------------------------------
struct Instance {
  std::shared_ptr<Map> map;
  std::optional<TripleSystem> sys;
  Vec z;               // interior or boundary evaluation point
  Vec beta;            // pairing target / boundary image
  std::vector<Vec> dirs;
  double k = 0.5;
  double omega_norm = 0.0;  // Bloch band instances
  double ratio = 0.0;
  Mat unitary;
  std::string digest;
};

namespace detail {

inline std::optional<TripleSystem> system_for(const Space& s) {
  switch (s.kind) {
    case NormKind::euclidean: return TripleSystem::HilbertBall(s.dim);
    case NormKind::sup: return TripleSystem::Polydisc(s.dim);
    case NormKind::product: return TripleSystem::ProductOfBalls(s.factors);
    default: return std::nullopt;
  }
}

inline Vec interior_point(const Space& s, Rng& rng) {
  return Vec(unit_sphere_sample(s, rng) * (0.95 * std::pow(rng.uniform(), 0.7)));
}

inline Vec maximal_tripotent_sample(const TripleSystem& sys, Rng& rng) {
  Vec e(sys.dim);
  for_each_factor(sys, [&](int off, int k) {
    Vec u(k);
    for (int j = 0; j < k; ++j) u[j] = rng.complex_gaussian();
    e.segment(off, k) = u / u.norm();
  });
  return e;
}

inline Mat random_unitary(int n, Rng& rng) {
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.complex_gaussian();
  const Eigen::HouseholderQR<Mat> qr(A);
  Mat Q = qr.householderQ();
  const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = R(j, j);
    Q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : 1.0;
  }
  return Q;
}

// holomorphic slice profile with phi(1) = 1 for boundary instances
inline std::shared_ptr<ScalarSlice> boundary_slice_holo(Rng& rng, bool origin_zero,
                                                        bool allow_offset) {
  switch (rng.uniform_int(origin_zero ? 2 : (allow_offset ? 4 : 3))) {
    case 0: return std::make_shared<SchwarzZeroSlice>(Complex(rng.uniform(), 0.0));
    case 1: {
      const std::vector<Complex> zeros = random_zeros(rng, 1 + rng.uniform_int(2));
      const int e0 = origin_zero ? 1 : 0;
      // rotate so the product equals 1 at zeta = 1
      const Complex v = BlaschkeSlice(1.0, e0, zeros).p(1.0);
      return std::make_shared<BlaschkeSlice>(std::conj(v), e0, zeros);
    }
    case 2: return std::make_shared<MobiusSlice>(Complex(0.0, 0.0));  // identity
    default: {
      const double a = 0.8 * rng.uniform();
      const double b = rng.uniform() * (1.0 - a * a);
      return std::make_shared<BoundaryExtremeSlice>(Complex(a, 0.0), b);
    }
  }
}

// convex combination of pluriharmonic profiles with phi(1) = 1 (real), and
// phi(0) = 0 unless an offset term is allowed
inline std::shared_ptr<ScalarSlice> boundary_slice_pluri(Rng& rng, bool origin_zero) {
  std::vector<std::shared_ptr<ScalarSlice>> parts;
  parts.push_back(std::make_shared<HeinzSlice>());
  parts.push_back(std::make_shared<SchwarzZeroSlice>(Complex(rng.uniform(), 0.0)));
  parts.push_back(std::make_shared<MobiusSlice>(Complex(0.0, 0.0)));
  if (!origin_zero && rng.uniform() < 0.5)
    parts.push_back(std::make_shared<MobiusSlice>(Complex(0.7 * rng.uniform(), 0.0)));
  std::vector<double> w(parts.size());
  double s = 0.0;
  for (auto& x : w) {
    x = rng.uniform();
    s += x;
  }
  for (auto& x : w) x /= s;
  return std::make_shared<ConvexComboSlice>(std::move(w), std::move(parts));
}

inline std::shared_ptr<Map> slice_map(const Space& dom, const Space& codom, const Vec& w0,
                                      const Vec& b, std::shared_ptr<ScalarSlice> slice) {
  return std::make_shared<ClosedFormMap>(dom, codom, support_functional(dom, w0), b,
                                         std::move(slice));
}

inline std::string digest_of(TheoremId id, std::uint64_t seed, int index, const Vec& z) {
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(id));
  mix(seed);
  mix(static_cast<std::uint64_t>(index));
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    std::uint64_t bits;
    double re = z[j].real(), im = z[j].imag();
    static_assert(sizeof(bits) == sizeof(re));
    std::memcpy(&bits, &re, 8);
    mix(bits);
    std::memcpy(&bits, &im, 8);
    mix(bits);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detail

inline MapFamily random_family(Rng& rng) {
  switch (rng.uniform_int(3)) {
    case 0: return MapFamily::slice_blaschke;
    case 1: return MapFamily::poly_scaled;
    default: return MapFamily::harmonic_slice;
  }
}

// A randomized instance of the hypotheses of `id` over the given domain.
inline Instance random_instance(TheoremId id, const Space& dom, Rng& rng) {
  Instance ins;
  ins.sys = detail::system_for(dom);
  const Space eucl = Space::Euclidean(dom.dim);
  switch (id) {
    case TheoremId::T2_1:
    case TheoremId::T2_2:
    case TheoremId::HARRIS: {
      GeneratorOptions opts;
      opts.holomorphic_only = true;
      opts.origin_zero = (id == TheoremId::T2_2);
      const Space codom = (id == TheoremId::HARRIS) ? Space::Euclidean(1)
                          : (rng.uniform() < 0.5 ? eucl : dom);
      const Space d = (id == TheoremId::HARRIS) ? Space::Euclidean(1) : dom;
      ins.map = random_ball_map(d, codom, random_family(rng), 8, rng, opts);
      ins.z = detail::interior_point(d, rng);
      break;
    }
    case TheoremId::T3_1:
    case TheoremId::T3_2:
    case TheoremId::T3_7:
    case TheoremId::P3_9:
    case TheoremId::T3_10:
    case TheoremId::C3_11:
    case TheoremId::P3_12:
    case TheoremId::C3_13: {
      GeneratorOptions opts;
      opts.origin_zero = (id == TheoremId::T3_2);
      const Space codom = (id == TheoremId::T3_1 && rng.uniform() < 0.4) ? dom : eucl;
      ins.map = random_ball_map(dom, codom, random_family(rng), 8, rng, opts);
      ins.z = detail::interior_point(dom, rng);
      if (id == TheoremId::T3_10) {
        const std::vector<int> factors = detail::product_factors(dom);
        int off = 0;
        for (int kf : factors) {
          Vec w = Vec::Zero(dom.dim);
          Vec u(kf);
          for (int j = 0; j < kf; ++j) u[j] = rng.complex_gaussian();
          w.segment(off, kf) = u / u.norm();
          ins.dirs.push_back(w);
          off += kf;
        }
      }
      break;
    }
    case TheoremId::T3_8A:
    case TheoremId::T3_8B: {
      // f = h + conj(h) = 2 Re h maps into a real Euclidean space
      GeneratorOptions opts;
      opts.holomorphic_only = true;
      auto base = random_ball_map(dom, eucl, MapFamily::poly_scaled, 6, rng, opts);
      Poly h, g;
      double sup = 0.0;
      for (const auto& [a, c] : base->h().terms) {
        h.terms[a] = 0.49 * c;
        g.terms[a] = 0.49 * c;
        sup += 2.0 * 0.49 * c.norm();
      }
      auto m = std::make_shared<PluriharmonicMap>(dom, Space::RealEuclidean(dom.dim),
                                                  std::move(h), std::move(g));
      m->attached_certificate = BallCertificate{sup, 1.0 - sup};
      ins.map = m;
      ins.z = detail::interior_point(dom, rng);
      break;
    }
    case TheoremId::T2_4:
    case TheoremId::T3_3:
    case TheoremId::T3_4: {
      ins.z = unit_sphere_sample(dom, rng);
      const Vec b = unit_sphere_sample(eucl, rng);
      std::shared_ptr<ScalarSlice> s;
      if (id == TheoremId::T2_4)
        s = detail::boundary_slice_holo(rng, true, false);
      else
        s = detail::boundary_slice_pluri(rng, id == TheoremId::T3_4);
      ins.map = detail::slice_map(dom, eucl, ins.z, b, std::move(s));
      break;
    }
    case TheoremId::T2_5:
    case TheoremId::T3_5: {
      if (!ins.sys) throw std::invalid_argument("domain is not a bounded symmetric domain");
      ins.z = unit_sphere_sample(dom, rng);
      ins.beta = detail::maximal_tripotent_sample(*ins.sys, rng);
      std::shared_ptr<ScalarSlice> s = (id == TheoremId::T2_5)
                                           ? detail::boundary_slice_holo(rng, false, true)
                                           : detail::boundary_slice_pluri(rng, true);
      ins.map = detail::slice_map(dom, dom, ins.z, ins.beta, std::move(s));
      break;
    }
    case TheoremId::T2_6:
    case TheoremId::T3_6: {
      ins.z = unit_sphere_sample(dom, rng);
      ins.beta = unit_sphere_sample(eucl, rng);
      std::shared_ptr<ScalarSlice> s = (id == TheoremId::T2_6)
                                           ? detail::boundary_slice_holo(rng, false, true)
                                           : detail::boundary_slice_pluri(rng, true);
      ins.map = detail::slice_map(dom, eucl, ins.z, ins.beta, std::move(s));
      break;
    }
    case TheoremId::T2_3_MU: {
      if (!ins.sys) throw std::invalid_argument("domain is not a bounded symmetric domain");
      ins.k = rng.uniform(0.2, 0.9);
      const double c = ins.k * rng.uniform();
      const double scale = rng.uniform(0.2, 0.9);
      const Mat U = detail::random_unitary(dom.dim, rng);
      Poly h, g;
      for (int j = 0; j < dom.dim; ++j) {
        MultiIndex e(dom.dim, 0);
        e[j] = 1;
        h.terms[e] = scale * U.col(j);
        g.terms[e] = c * scale * U.col(j);
      }
      auto m = std::make_shared<PluriharmonicMap>(dom, eucl, std::move(h), std::move(g));
      const Mat w = omega(*m, Vec::Zero(dom.dim));
      ins.omega_norm = operator_norm(LinearMap{w, eucl, eucl}).value;
      // image inradii of the linear map scale by exactly (1 - c)
      ins.ratio = 1.0 - c;
      ins.map = m;
      ins.z = Vec::Zero(dom.dim);
      break;
    }
    case TheoremId::T2_3_EXTREMAL: {
      if (!ins.sys) throw std::invalid_argument("domain is not a bounded symmetric domain");
      ins.k = rng.uniform(0.1, 0.9);
      ins.unitary = detail::random_unitary(dom.dim, rng);
      ins.z = Vec::Zero(dom.dim);
      break;
    }
    case TheoremId::T3_14: {
      const int n = dom.dim;
      Mat A = detail::random_unitary(n, rng);
      for (int j = 0; j < n; ++j) A.col(j) *= rng.uniform(0.5, 1.0);
      ins.k = rng.uniform(0.15, 0.9);
      Mat C(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) C(i, j) = rng.complex_gaussian();
      const double nc = operator_norm(LinearMap{C, eucl, eucl}).value;
      C *= (0.9 * ins.k) / nc;
      Poly h, g;
      const Mat CA = C * A;
      for (int j = 0; j < n; ++j) {
        MultiIndex e(n, 0);
        e[j] = 1;
        h.terms[e] = A.col(j);
        g.terms[e] = CA.col(j);
      }
      auto m = std::make_shared<PluriharmonicMap>(dom, eucl, std::move(h), std::move(g));
      const double s = coefficient_sup_bound(*m).sup_bound;
      Poly hs, gs;
      for (const auto& [a, c] : m->h().terms) hs.terms[a] = (0.97 / s) * c;
      for (const auto& [a, c] : m->g().terms) gs.terms[a] = (0.97 / s) * c;
      ins.map = std::make_shared<PluriharmonicMap>(dom, eucl, std::move(hs), std::move(gs));
      ins.z = detail::interior_point(dom, rng);
      break;
    }
    case TheoremId::S5_LAMBDA: {
      const Space d = Space::Euclidean(dom.dim);
      ins.z = unit_sphere_sample(d, rng);
      ins.beta = unit_sphere_sample(d, rng);
      ins.map = detail::slice_map(d, d, ins.z, ins.beta,
                                  detail::boundary_slice_pluri(rng, false));
      break;
    }
  }
  return ins;
}

// run the check matching `id` on an instance built by random_instance
inline CheckReport run_instance(TheoremId id, const Instance& ins, double tol = 1e-9) {
  switch (id) {
    case TheoremId::T2_1:
    case TheoremId::T2_2:
    case TheoremId::HARRIS:
    case TheoremId::T3_1:
    case TheoremId::T3_2:
      return interior_bound(id, *ins.map, ins.z, tol);
    case TheoremId::T2_4:
    case TheoremId::T3_3:
    case TheoremId::T3_4:
      return boundary_bound(id, *ins.map, ins.z, tol);
    case TheoremId::T2_5:
    case TheoremId::T3_5:
      return pairing_boundary_bound(id, &*ins.sys, *ins.map, ins.z, ins.beta, tol);
    case TheoremId::T2_6:
    case TheoremId::T3_6:
      return pairing_boundary_bound(id, nullptr, *ins.map, ins.z, ins.beta, tol);
    case TheoremId::T3_7:
    case TheoremId::T3_8A:
    case TheoremId::T3_8B:
    case TheoremId::P3_9:
      return gradient_bound(id, *ins.map, ins.z, tol);
    case TheoremId::T3_10:
    case TheoremId::C3_11:
      return directional_sum_bound(id, *ins.map, ins.z, ins.dirs, tol);
    case TheoremId::P3_12:
    case TheoremId::C3_13:
    case TheoremId::T3_14:
      return frobenius_quasiregular_bound(id, *ins.map, ins.z, ins.k, tol);
    case TheoremId::T2_3_MU:
      return bloch_ratio_band(ins.k, ins.omega_norm, ins.ratio, tol);
    case TheoremId::T2_3_EXTREMAL:
      return bloch_ratio_extremal(ins.k, *ins.sys, ins.unitary, tol);
    case TheoremId::S5_LAMBDA:
      return boundary_adjoint_lambda(*ins.map, ins.z, ins.beta, tol).report;
  }
  throw std::invalid_argument("unreachable");
}

}  // namespace schwarz_lab

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schwarz_lab/mappings.hpp"
#include "schwarz_lab/slices.hpp"
#include "schwarz_lab/symmetric.hpp"

namespace schwarz_lab {

enum class TheoremId {
  T2_1,
  T2_2,
  HARRIS,
  T2_3_MU,
  T2_3_EXTREMAL,
  T2_4,
  T2_5,
  T2_6,
  T3_1,
  T3_2,
  T3_3,
  T3_4,
  T3_5,
  T3_6,
  T3_7,
  T3_8A,
  T3_8B,
  P3_9,
  T3_10,
  C3_11,
  P3_12,
  C3_13,
  T3_14,
  S5_LAMBDA,
};

inline const std::vector<std::pair<TheoremId, std::string>>& theorem_names() {
  static const std::vector<std::pair<TheoremId, std::string>> table = {
      {TheoremId::T2_1, "T2_1"},       {TheoremId::T2_2, "T2_2"},
      {TheoremId::HARRIS, "HARRIS"},   {TheoremId::T2_3_MU, "T2_3_MU"},
      {TheoremId::T2_3_EXTREMAL, "T2_3_EXTREMAL"},
      {TheoremId::T2_4, "T2_4"},       {TheoremId::T2_5, "T2_5"},
      {TheoremId::T2_6, "T2_6"},       {TheoremId::T3_1, "T3_1"},
      {TheoremId::T3_2, "T3_2"},       {TheoremId::T3_3, "T3_3"},
      {TheoremId::T3_4, "T3_4"},       {TheoremId::T3_5, "T3_5"},
      {TheoremId::T3_6, "T3_6"},       {TheoremId::T3_7, "T3_7"},
      {TheoremId::T3_8A, "T3_8A"},     {TheoremId::T3_8B, "T3_8B"},
      {TheoremId::P3_9, "P3_9"},       {TheoremId::T3_10, "T3_10"},
      {TheoremId::C3_11, "C3_11"},     {TheoremId::P3_12, "P3_12"},
      {TheoremId::C3_13, "C3_13"},     {TheoremId::T3_14, "T3_14"},
      {TheoremId::S5_LAMBDA, "S5_LAMBDA"},
  };
  return table;
}

inline std::string to_string(TheoremId id) {
  for (const auto& [t, s] : theorem_names())
    if (t == id) return s;
  throw std::invalid_argument("unknown theorem id");
}

inline TheoremId theorem_from_string(const std::string& s) {
  for (const auto& [t, n] : theorem_names())
    if (n == s) return t;
  throw std::invalid_argument("unknown theorem tag: " + s);
}

// residual >= 0 means the inequality holds; pass allows a -tolerance slack
struct CheckReport {
  TheoremId theorem = TheoremId::T2_1;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> flags;
  std::string instance_digest;
  std::uint64_t seed = 0;
};

namespace detail {

inline CheckReport finish(TheoremId id, double lhs, double rhs, double residual, double tol,
                          std::vector<std::string> flags) {
  CheckReport r;
  r.theorem = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = residual;
  r.tolerance = tol;
  r.pass = residual >= -tol;
  r.flags = std::move(flags);
  return r;
}

inline double op_norm(const Mat& A, const Space& dom, const Space& codom,
                      std::vector<std::string>& flags, const std::string& label) {
  const OperatorNormResult r = operator_norm(LinearMap{A, dom, codom});
  if (r.lower_bound_only) flags.push_back("lower_bound_only:" + label);
  return r.value;
}

// Instances must come with a containment guarantee. Polynomial maps carry a
// coefficient certificate; closed form slice maps are disk self-map profiles
// pushed through a support functional, contained by construction.
inline void require_into_ball(const Map& f, std::vector<std::string>& flags,
                              bool open_ball_needed) {
  if (const auto* p = dynamic_cast<const PluriharmonicMap*>(&f)) {
    const double limit = open_ball_needed ? 1.0 : 1.0 + 1e-12;
    if (p->attached_certificate) {
      if (p->attached_certificate->sup_bound >= limit)
        throw std::invalid_argument("no ball certificate: analytic sup bound " +
                                    std::to_string(p->attached_certificate->sup_bound));
      flags.push_back("certified:analytic_bound");
      return;
    }
    const BallCertificate cert = coefficient_sup_bound(*p);
    if (cert.sup_bound >= limit)
      throw std::invalid_argument("no ball certificate: coefficient sup bound " +
                                  std::to_string(cert.sup_bound));
    flags.push_back("certified:coefficient_bound");
  } else {
    flags.push_back("certified:closed_form");
  }
}

inline void require_inside(const Space& s, const Vec& z, const char* what) {
  if (norm(s, z) >= 1.0) throw std::invalid_argument(std::string(what) + " outside the open unit ball");
}

inline void require_sphere(const Space& s, const Vec& b, const char* what, double tol = 1e-9) {
  if (std::abs(norm(s, b) - 1.0) > tol)
    throw std::invalid_argument(std::string(what) + " not on the unit sphere");
}

inline void require_holomorphic(const Map& f) {
  if (!f.holomorphic()) throw std::invalid_argument("hypothesis violated: map is not holomorphic");
}

inline void require_vanishes_at_origin(const Map& f) {
  if (norm(f.codom(), f.eval(Vec::Zero(f.dom().dim))) > 1e-12)
    throw std::invalid_argument("hypothesis violated: f(0) != 0");
}

inline std::vector<int> product_factors(const Space& s) {
  switch (s.kind) {
    case NormKind::product: return s.factors;
    case NormKind::sup: return std::vector<int>(s.dim, 1);
    case NormKind::euclidean: return {s.dim};
    default:
      throw std::invalid_argument("domain is not a product of Hilbert balls");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// interior pointwise bounds: T2_1, T2_2, HARRIS, T3_1, T3_2
// ---------------------------------------------------------------------------
inline CheckReport interior_bound(TheoremId id, const Map& f, const Vec& z, double tol = 1e-9) {
  std::vector<std::string> flags;
  detail::require_inside(f.dom(), z, "z");
  const Vec f0 = f.eval(Vec::Zero(f.dom().dim));
  const double nz = norm(f.dom(), z);
  switch (id) {
    case TheoremId::T2_1: {
      detail::require_holomorphic(f);
      detail::require_into_ball(f, flags, false);
      const double a = norm(f.codom(), f0);
      const double lhs = norm(f.codom(), f.eval(z));
      const double rhs = (a + nz) / (1.0 + a * nz);
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    case TheoremId::T2_2: {
      detail::require_holomorphic(f);
      detail::require_vanishes_at_origin(f);
      detail::require_into_ball(f, flags, true);
      const DerivPair d0 = f.derivatives(Vec::Zero(f.dom().dim));
      const double a = detail::op_norm(d0.dh, f.dom(), f.codom(), flags, "Df(0)");
      const double lhs = norm(f.codom(), f.eval(z));
      const double rhs = nz * (a + nz) / (1.0 + a * nz);
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    case TheoremId::HARRIS: {
      detail::require_holomorphic(f);
      detail::require_into_ball(f, flags, true);
      if (f.dom().dim != 1 || f.codom().dim != 1)
        throw std::invalid_argument("this bound is stated for self-maps of the disk");
      const double a = std::abs(f0[0]);
      const double lhs = std::abs(f.eval(z)[0] - f0[0]);
      const double rhs = nz * (1.0 - a * a) / (1.0 - a * nz);
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    case TheoremId::T3_1: {
      detail::require_into_ball(f, flags, true);
      const double c = (1.0 - nz * nz) / (1.0 + nz * nz);
      const double lhs = norm(f.codom(), Vec(f.eval(z) - c * f0));
      const double rhs = (4.0 / kPi) * std::atan(nz);
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    case TheoremId::T3_2: {
      detail::require_into_ball(f, flags, true);
      detail::require_vanishes_at_origin(f);
      if (nz == 0.0) return detail::finish(id, 0.0, 0.0, 0.0, tol, std::move(flags));
      const LambdaResult L = lambda0(f, Vec(z / nz));
      if (L.lower_bound_only) flags.push_back("lower_bound_only:Lambda");
      const double s = (kPi / 4.0) * L.value;
      const double lhs = norm(f.codom(), f.eval(z));
      const double rhs = (4.0 / kPi) * std::atan((nz + s) / (1.0 + s * nz) * nz);
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    default:
      throw std::invalid_argument("not an interior pointwise bound: " + to_string(id));
  }
}

// ---------------------------------------------------------------------------
// boundary radial derivative bounds: T2_4, T3_3, T3_4
// ---------------------------------------------------------------------------
inline CheckReport boundary_bound(TheoremId id, const Map& f, const Vec& b, double tol = 1e-9) {
  std::vector<std::string> flags;
  detail::require_sphere(f.dom(), b, "b");
  detail::require_into_ball(f, flags, true);
  const double fb = norm(f.codom(), f.eval(b));
  if (std::abs(fb - 1.0) > 1e-9)
    throw std::invalid_argument("boundary hypothesis unmet: ||f(b)|| != 1");
  const double lhs = norm(f.codom(), radial_derivative(f, b));
  const Vec f0 = f.eval(Vec::Zero(f.dom().dim));
  const double nf0 = norm(f.codom(), f0);
  switch (id) {
    case TheoremId::T2_4: {
      detail::require_holomorphic(f);
      detail::require_vanishes_at_origin(f);
      const DerivPair d0 = f.derivatives(Vec::Zero(f.dom().dim));
      const double a = detail::op_norm(d0.dh, f.dom(), f.codom(), flags, "Df(0)");
      const double rhs = 2.0 / (1.0 + a);
      return detail::finish(id, lhs, rhs, lhs - rhs, tol, std::move(flags));
    }
    case TheoremId::T3_3: {
      const double rhs = std::max(2.0 / kPi - nf0, (1.0 - nf0) / 2.0);
      return detail::finish(id, lhs, rhs, lhs - rhs, tol, std::move(flags));
    }
    case TheoremId::T3_4: {
      detail::require_vanishes_at_origin(f);
      const LambdaResult L = lambda0(f, b);
      if (L.lower_bound_only) flags.push_back("lower_bound_only:Lambda");
      const double rhs = (4.0 / kPi) / (1.0 + (kPi / 4.0) * L.value);
      return detail::finish(id, lhs, rhs, lhs - rhs, tol, std::move(flags));
    }
    default:
      throw std::invalid_argument("not a boundary radial bound: " + to_string(id));
  }
}

// ---------------------------------------------------------------------------
// boundary bounds through the Bergman metric or inner product pairing:
// T2_5, T2_6 (holomorphic) and T3_5, T3_6 (pluriharmonic, f(0) = 0)
// ---------------------------------------------------------------------------
inline CheckReport pairing_boundary_bound(TheoremId id, const TripleSystem* sys, const Map& f,
                                          const Vec& alpha, const Vec& beta, double tol = 1e-9) {
  std::vector<std::string> flags;
  const bool metric_pairing = (id == TheoremId::T2_5 || id == TheoremId::T3_5);
  if (metric_pairing && sys == nullptr)
    throw std::invalid_argument("Bergman pairing needs a bounded symmetric domain");
  detail::require_sphere(f.dom(), alpha, "alpha");
  detail::require_into_ball(f, flags, true);

  if (metric_pairing) {
    if (!is_maximal_tripotent(*sys, beta))
      throw std::invalid_argument("beta is not a maximal tripotent");
  } else {
    detail::require_sphere(Space::Euclidean(f.codom().dim), beta, "beta");
  }
  if (norm(f.codom(), Vec(f.eval(alpha) - beta)) > 1e-9)
    throw std::invalid_argument("boundary hypothesis unmet: f(alpha) != beta");

  const double twoc = metric_pairing ? 2.0 * c_constant(*sys) : 0.0;
  const auto pairing = [&](const Vec& x) -> Complex {
    if (metric_pairing) return bergman_metric0(*sys, x, beta) / twoc;
    return detail::dotc(x, beta);
  };

  const Vec rd = radial_derivative(f, alpha);
  const Complex lhs_c = pairing(rd);
  if (std::abs(lhs_c.imag()) > 1e-8) flags.push_back("nonreal_pairing");
  const double lhs = lhs_c.real();

  const Vec zero = Vec::Zero(f.dom().dim);
  double rhs = 0.0;
  switch (id) {
    case TheoremId::T2_5:
    case TheoremId::T2_6: {
      detail::require_holomorphic(f);
      const Complex a = pairing(f.eval(zero));
      const DerivPair d0 = f.derivatives(zero);
      const double da = norm(f.codom(), Vec(d0.dh * alpha));
      rhs = 2.0 * std::norm(1.0 - a) / (1.0 - std::norm(a) + da);
      break;
    }
    case TheoremId::T3_5:
    case TheoremId::T3_6: {
      detail::require_vanishes_at_origin(f);
      const LambdaResult L = lambda0(f, alpha);
      if (L.lower_bound_only) flags.push_back("lower_bound_only:Lambda");
      rhs = (4.0 / kPi) / (1.0 + (kPi / 4.0) * L.value);
      break;
    }
    default:
      throw std::invalid_argument("not a pairing boundary bound: " + to_string(id));
  }
  return detail::finish(id, lhs, rhs, lhs - rhs, tol, std::move(flags));
}

// ---------------------------------------------------------------------------
// norm gradient bounds: T3_7, T3_8A, T3_8B, P3_9
// ---------------------------------------------------------------------------
inline CheckReport gradient_bound(TheoremId id, const Map& f, const Vec& z0, double tol = 1e-9) {
  std::vector<std::string> flags;
  detail::require_inside(f.dom(), z0, "z0");
  detail::require_into_ball(f, flags, true);
  const double nz = norm(f.dom(), z0);
  const NablaNormResult g = nabla_norm(f, z0);
  if (g.lower_bound_only) flags.push_back("lower_bound_only:grad_norm");
  if (g.near_singular_support) flags.push_back("near_singular_support");
  const double lhs = g.value;
  switch (id) {
    case TheoremId::T3_7: {
      const double rhs = (4.0 / kPi) / (1.0 - nz * nz);
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    case TheoremId::T3_8A:
    case TheoremId::T3_8B: {
      if (!f.codom().real_restricted)
        throw std::invalid_argument("hypothesis violated: target is not a real Euclidean space");
      check_real(f.codom(), f.eval(z0));
      const double nf = norm(f.codom(), f.eval(z0));
      const double rhs = (id == TheoremId::T3_8A)
                             ? (4.0 / kPi) * (1.0 - nf * nf) / (1.0 - nz * nz)
                             : (4.0 / kPi) * std::cos((kPi / 2.0) * nf) / (1.0 - nz * nz);
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    case TheoremId::P3_9: {
      if (!f.codom().euclidean_like())
        throw std::invalid_argument("hypothesis violated: target norm is not Euclidean");
      const DerivPair d = f.derivatives(z0);
      const double rhs = detail::op_norm(d.dh, f.dom(), f.codom(), flags, "Dh") +
                         detail::op_norm(d.dg, f.dom(), f.codom(), flags, "Dg");
      return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
    }
    default:
      throw std::invalid_argument("not a gradient bound: " + to_string(id));
  }
}

// ---------------------------------------------------------------------------
// directional derivative sums on products of balls: T3_10 and C3_11
// ---------------------------------------------------------------------------
inline CheckReport directional_sum_bound(TheoremId id, const Map& f, const Vec& z,
                                         const std::vector<Vec>& dirs, double tol = 1e-9) {
  std::vector<std::string> flags;
  detail::require_inside(f.dom(), z, "z");
  detail::require_into_ball(f, flags, true);
  if (!f.codom().euclidean_like())
    throw std::invalid_argument("hypothesis violated: target norm is not Euclidean");
  const std::vector<int> factors = detail::product_factors(f.dom());
  const DerivPair d = f.derivatives(z);
  const double nz = norm(f.dom(), z);
  const double nf = norm(f.codom(), f.eval(z));
  const double denom = (1.0 - nz * nz) * (1.0 - nz * nz);

  double lhs = 0.0;
  double rhs = 0.0;
  if (id == TheoremId::T3_10) {
    if (dirs.size() != factors.size())
      throw std::invalid_argument("need one direction per factor");
    int off = 0;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const Vec& w = dirs[j];
      check_dim(f.dom(), w);
      for (Eigen::Index i = 0; i < w.size(); ++i)
        if ((i < off || i >= off + factors[j]) && std::abs(w[i]) > 1e-14)
          throw std::invalid_argument("direction is not supported on its factor");
      if (std::abs(w.segment(off, factors[j]).norm() - 1.0) > 1e-9)
        throw std::invalid_argument("direction is not a unit vector of its factor");
      lhs += (d.dh * w).squaredNorm() + (d.dg * w).squaredNorm();
      off += factors[j];
    }
    rhs = (1.0 - nf * nf) / denom;
  } else if (id == TheoremId::C3_11) {
    lhs = d.dh.squaredNorm() + d.dg.squaredNorm();
    const double kappa = *std::max_element(factors.begin(), factors.end());
    rhs = kappa * (1.0 - nf * nf) / denom;
  } else {
    throw std::invalid_argument("not a directional sum bound: " + to_string(id));
  }
  return detail::finish(id, lhs, rhs, rhs - lhs, tol, std::move(flags));
}

// ---------------------------------------------------------------------------
// Frobenius and quasiregularity bounds: P3_12, C3_13, T3_14
// ---------------------------------------------------------------------------
namespace detail {

// the real gradient (df/dx_1, df/dy_1, ..., df/dx_m, df/dy_m), assembled
// explicitly; its squared Frobenius norm equals 2 (|Dh|_F^2 + |Dg|_F^2)
inline Mat real_gradient(const DerivPair& d) {
  const Eigen::Index n = d.dh.rows(), m = d.dh.cols();
  Mat G(n, 2 * m);
  const Complex i(0.0, 1.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    G.col(2 * k) = d.dh.col(k) + d.dg.col(k).conjugate();
    G.col(2 * k + 1) = i * d.dh.col(k) - i * d.dg.col(k).conjugate();
  }
  return G;
}

}  // namespace detail

inline CheckReport frobenius_quasiregular_bound(TheoremId id, const Map& f, const Vec& z, double k,
                                                double tol = 1e-9) {
  std::vector<std::string> flags;
  detail::require_inside(f.dom(), z, "z");
  if (!f.codom().euclidean_like())
    throw std::invalid_argument("hypothesis violated: target norm is not Euclidean");
  const DerivPair d = f.derivatives(z);
  const double fro = detail::real_gradient(d).norm();
  const double nz = norm(f.dom(), z);
  switch (id) {
    case TheoremId::P3_12: {
      const double m = f.dom().dim;
      const double ndh = detail::op_norm(d.dh, Space::Euclidean(f.dom().dim), f.codom(), flags, "Dh");
      const double ndg = detail::op_norm(d.dg, Space::Euclidean(f.dom().dim), f.codom(), flags, "Dg");
      const double rhs = std::sqrt(2.0 * m * (ndh * ndh + ndg * ndg));
      return detail::finish(id, fro, rhs, rhs - fro, tol, std::move(flags));
    }
    case TheoremId::C3_13: {
      detail::require_into_ball(f, flags, true);
      const std::vector<int> factors = detail::product_factors(f.dom());
      const double kappa = *std::max_element(factors.begin(), factors.end());
      const double nf = norm(f.codom(), f.eval(z));
      const double rhs =
          2.0 * kappa * (1.0 - nf * nf) / ((1.0 - nz * nz) * (1.0 - nz * nz));
      return detail::finish(id, fro * fro, rhs, rhs - fro * fro, tol, std::move(flags));
    }
    case TheoremId::T3_14: {
      detail::require_into_ball(f, flags, true);
      if (k <= 0.0 || k >= 1.0) throw std::invalid_argument("quasiregularity needs k in (0,1)");
      // spot check the dilatation hypothesis ||omega_f|| <= k on sampled points
      Rng rng(0x14);
      for (int s = 0; s <= 32; ++s) {
        Vec zs = (s == 0) ? z : Vec(unit_sphere_sample(f.dom(), rng) * std::pow(rng.uniform(), 0.5) * 0.95);
        const Mat w = omega(f, zs);
        const double nw = operator_norm(LinearMap{w, Space::Euclidean(w.cols()),
                                                  Space::Euclidean(w.rows())}).value;
        if (nw > k + 1e-9)
          throw std::invalid_argument("hypothesis violated: ||omega_f|| > k at a sampled point");
      }
      flags.push_back("omega_checked_points:33");
      const double K = (1.0 + k) / (1.0 - k);
      const double nf = norm(f.codom(), f.eval(z));
      const double ndh = detail::op_norm(d.dh, f.dom(), f.codom(), flags, "Dh");
      const double ndg = detail::op_norm(d.dg, f.dom(), f.codom(), flags, "Dg");
      const double rhs = (2.0 * K / std::sqrt(2.0 * (K * K + 1.0))) *
                         std::sqrt(1.0 - nf * nf) / (1.0 - nz * nz);
      return detail::finish(id, ndh + ndg, rhs, rhs - (ndh + ndg), tol, std::move(flags));
    }
    default:
      throw std::invalid_argument("not a Frobenius/quasiregularity bound: " + to_string(id));
  }
}

// ---------------------------------------------------------------------------
// Bloch ratio envelope: mu_k and the linear extremal attaining ratio 1 - k
// ---------------------------------------------------------------------------
inline double mu_k(double k, double x) {
  if (k <= 0.0 || k >= 1.0) throw std::invalid_argument("mu_k needs k in (0,1)");
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("mu_k needs x in [0,1]");
  if (x == 0.0) return 1.0 + k / 2.0;
  return 1.0 + k * (1.0 / x + (1.0 - 1.0 / (x * x)) * std::log1p(x));
}

// f(z) = U z + k conj(U z) on a product-of-balls domain, U unitary. The image
// of the unit ball has inradius (1-k) times that of the holomorphic part, so
// the Bloch-type ratio attains the lower envelope 1 - k exactly.
inline CheckReport bloch_ratio_extremal(double k, const TripleSystem& sys, const Mat& U,
                                        double tol = 1e-9) {
  std::vector<std::string> flags;
  if (k < 0.0 || k >= 1.0) throw std::invalid_argument("needs k in [0,1)");
  const int n = sys.dim;
  if (U.rows() != n || U.cols() != n) throw std::invalid_argument("unitary size mismatch");
  if ((U.adjoint() * U - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("matrix is not unitary");

  Poly h, g;
  for (int j = 0; j < n; ++j) {
    MultiIndex e(n, 0);
    e[j] = 1;
    h.terms[e] = U.col(j);
    g.terms[e] = k * U.col(j);
  }
  const PluriharmonicMap f(sys.space(), Space::Euclidean(n), std::move(h), std::move(g));

  const Mat w = omega(f, Vec::Zero(n));
  const double werr = (w - k * Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (werr > 1e-12) throw std::invalid_argument("dilatation of the extremal is not k I");
  flags.push_back("omega_equals_kI");

  // the boundary of the domain has Euclidean inradius 1 (some factor on its
  // sphere), and v + k conj(v) has modulus >= (1-k)|v| with equality on
  // purely imaginary v, so both image inradii are exact
  const double ratio = (1.0 - k) * 1.0 / 1.0;
  const double envelope = 1.0 - k;
  CheckReport r = detail::finish(TheoremId::T2_3_EXTREMAL, ratio, envelope, ratio - envelope, tol,
                                 std::move(flags));
  return r;
}

// band check for the ratio of a general instance: 1-k <= ratio <= mu_k(|w|/k)
inline CheckReport bloch_ratio_band(double k, double omega_norm, double ratio, double tol = 1e-9) {
  std::vector<std::string> flags;
  if (omega_norm > k + 1e-12) throw std::invalid_argument("dilatation exceeds k");
  const double upper = mu_k(k, std::min(1.0, omega_norm / k));
  const double residual = std::min(ratio - (1.0 - k), upper - ratio);
  return detail::finish(TheoremId::T2_3_MU, ratio, upper, residual, tol, std::move(flags));
}

// ---------------------------------------------------------------------------
// extremal constructors
// ---------------------------------------------------------------------------
struct ExtremalParams {
  Space dom = Space::Euclidean(1);
  Space codom = Space::Euclidean(1);
  Vec w0;                  // sphere point of the domain the slice runs through
  Vec b;                   // unit direction in the codomain
  double a = 0.0;          // T2_1 value of ||f(0)||, T2_5/T2_6 pairing at 0
  double r = 0.0;          // T2_2/T2_4 derivative parameter
  double bmag = 0.0;       // T2_5/T2_6 slice derivative modulus at 0
  Complex gamma{1.0, 0.0}; // T3_7 unimodular factor
  Complex center{0.0, 0.0};// T3_7 inner automorphism center
};

inline std::unique_ptr<Map> extremal(TheoremId id, const ExtremalParams& prm) {
  detail::require_sphere(prm.dom, prm.w0, "w0", 1e-12);
  Functional l = support_functional(prm.dom, prm.w0);
  Vec b = prm.b;
  if (std::abs(norm(prm.codom, b) - 1.0) > 1e-12)
    throw std::invalid_argument("b not on the unit sphere");
  std::shared_ptr<ScalarSlice> slice;
  switch (id) {
    case TheoremId::T2_1:
      if (prm.a < 0.0 || prm.a >= 1.0) throw std::invalid_argument("needs a in [0,1)");
      slice = std::make_shared<MobiusSlice>(Complex(prm.a, 0.0));
      break;
    case TheoremId::HARRIS:
      slice = std::make_shared<MobiusSlice>(Complex(prm.a, 0.0));
      break;
    case TheoremId::T2_2:
    case TheoremId::T2_4:
      slice = std::make_shared<SchwarzZeroSlice>(Complex(prm.r, 0.0));
      break;
    case TheoremId::T2_5:
    case TheoremId::T2_6:
      slice = std::make_shared<BoundaryExtremeSlice>(Complex(prm.a, 0.0), prm.bmag);
      break;
    case TheoremId::T3_1:
    case TheoremId::T3_2:
    case TheoremId::T3_3:
    case TheoremId::T3_4:
    case TheoremId::T3_5:
    case TheoremId::T3_6:
    case TheoremId::S5_LAMBDA:
      slice = std::make_shared<HeinzSlice>();
      break;
    case TheoremId::T3_7:
      slice = std::make_shared<ColonnaSlice>(prm.gamma, prm.center);
      break;
    case TheoremId::T3_10: {
      // first factor slice z -> mobius(-t)(<z_1, w0_1>) b with t = r
      if (prm.r < 0.0 || prm.r >= 1.0) throw std::invalid_argument("needs r in [0,1)");
      slice = std::make_shared<MobiusSlice>(Complex(-prm.r, 0.0));
      const std::vector<int> factors = detail::product_factors(prm.dom);
      Vec c = Vec::Zero(prm.dom.dim);
      const Vec head = prm.w0.head(factors[0]);
      if (std::abs(head.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("w0 must have a unit first factor");
      c.head(factors[0]) = head.conjugate();
      l = Functional{c, prm.w0};
      break;
    }
    default:
      throw std::invalid_argument("no closed form extremal registered for " + to_string(id));
  }
  return std::make_unique<ClosedFormMap>(prm.dom, prm.codom, std::move(l), std::move(b), std::move(slice));
}

// ---------------------------------------------------------------------------
// boundary adjoint eigenvalue bound (S5_LAMBDA)
// ---------------------------------------------------------------------------
struct AdjointLambdaResult {
  double lambda = 0.0;
  double collinearity_error = 0.0;  // ||Df(z0)^* w0 - lambda z0||
  CheckReport report;
};

// For a pluriharmonic self-map of the Euclidean ball smooth up to a boundary
// point z0 with w0 = f(z0) on the sphere, the adjoint derivative satisfies
// Df(z0)^* w0 = lambda z0 with
//   lambda >= max(2/pi - ||f(0)||, (1 - Re<f(0), w0>) / 2).
inline AdjointLambdaResult boundary_adjoint_lambda(const Map& f, const Vec& z0, const Vec& w0,
                                                   double tol = 1e-9) {
  std::vector<std::string> flags;
  if (!f.dom().euclidean_like() || !f.codom().euclidean_like())
    throw std::invalid_argument("hypothesis violated: needs Euclidean balls");
  detail::require_sphere(f.dom(), z0, "z0");
  detail::require_sphere(f.codom(), w0, "w0");
  if ((f.eval(z0) - w0).norm() > 1e-9)
    throw std::invalid_argument("boundary hypothesis unmet: f(z0) != w0");

  const DerivPair d = f.derivatives(z0);
  // adjoint of v -> dh v + conj(dg v) against Re<.,.>
  const Vec adj = d.dh.adjoint() * w0 + (d.dg.transpose() * w0).conjugate();
  const double lambda = detail::dotc(adj, z0).real();
  const Vec f0 = f.eval(Vec::Zero(f.dom().dim));
  const double rhs =
      std::max(2.0 / kPi - f0.norm(), (1.0 - detail::dotc(f0, w0).real()) / 2.0);

  AdjointLambdaResult out;
  out.lambda = lambda;
  out.collinearity_error = (adj - lambda * z0).norm();
  if (out.collinearity_error > 1e-6) flags.push_back("noncollinear_adjoint");
  out.report = detail::finish(TheoremId::S5_LAMBDA, lambda, rhs, lambda - rhs, tol, std::move(flags));
  return out;
}

}  // namespace schwarz_lab

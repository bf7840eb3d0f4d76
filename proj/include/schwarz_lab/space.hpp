#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace schwarz_lab {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Deterministic RNG. std::normal_distribution is implementation-defined, so
// Gaussian draws go through an explicit Box-Muller on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform() {
    // top 53 bits -> [0,1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

enum class NormKind { euclidean, sup, one, p, real_euclidean, product };

// A finite-dimensional complex vector space tagged with a norm. `product`
// is the l^infty-sum of Euclidean factors (factor dims in `factors`); it is
// the norm carried by the unit ball of a product-of-balls triple system.
struct Space {
  int dim = 1;
  NormKind kind = NormKind::euclidean;
  double p = 2.0;                 // only for NormKind::p
  std::vector<int> factors;       // only for NormKind::product
  bool real_restricted = false;

  static Space Euclidean(int n) { return Space{n, NormKind::euclidean, 2.0, {}, false}; }
  static Space Sup(int n) { return Space{n, NormKind::sup, 2.0, {}, false}; }
  static Space One(int n) { return Space{n, NormKind::one, 2.0, {}, false}; }
  static Space Lp(int n, double p) {
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp norm requires p in (1, inf)");
    return Space{n, NormKind::p, p, {}, false};
  }
  static Space RealEuclidean(int n) { return Space{n, NormKind::real_euclidean, 2.0, {}, true}; }
  static Space Product(std::vector<int> factor_dims) {
    int total = std::accumulate(factor_dims.begin(), factor_dims.end(), 0);
    return Space{total, NormKind::product, 2.0, std::move(factor_dims), false};
  }

  bool euclidean_like() const {
    return kind == NormKind::euclidean || kind == NormKind::real_euclidean;
  }

  std::string name() const {
    switch (kind) {
      case NormKind::euclidean: return "euclidean(" + std::to_string(dim) + ")";
      case NormKind::sup: return "sup(" + std::to_string(dim) + ")";
      case NormKind::one: return "one(" + std::to_string(dim) + ")";
      case NormKind::p: return "p(" + std::to_string(dim) + "," + std::to_string(p) + ")";
      case NormKind::real_euclidean: return "real_euclidean(" + std::to_string(dim) + ")";
      case NormKind::product: {
        std::string s = "product(";
        for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + std::to_string(factors[i]);
        return s + ")";
      }
    }
    return "?";
  }
};

inline void check_dim(const Space& s, const Vec& v) {
  if (v.size() != s.dim) throw std::invalid_argument("dimension mismatch");
}

inline void check_real(const Space& s, const Vec& v) {
  if (!s.real_restricted) return;
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (std::abs(v[j].imag()) > 1e-12)
      throw std::invalid_argument("non-real vector in a real-restricted space");
}

inline double norm(const Space& s, const Vec& v) {
  check_dim(s, v);
  check_real(s, v);
  switch (s.kind) {
    case NormKind::euclidean:
    case NormKind::real_euclidean:
      return v.norm();
    case NormKind::sup: {
      double m = 0.0;
      for (Eigen::Index j = 0; j < v.size(); ++j) m = std::max(m, std::abs(v[j]));
      return m;
    }
    case NormKind::one: {
      double t = 0.0;
      for (Eigen::Index j = 0; j < v.size(); ++j) t += std::abs(v[j]);
      return t;
    }
    case NormKind::p: {
      double t = 0.0;
      for (Eigen::Index j = 0; j < v.size(); ++j) t += std::pow(std::abs(v[j]), s.p);
      return std::pow(t, 1.0 / s.p);
    }
    case NormKind::product: {
      double m = 0.0;
      Eigen::Index off = 0;
      for (int k : s.factors) {
        m = std::max(m, v.segment(off, k).norm());
        off += k;
      }
      return m;
    }
  }
  return 0.0;
}

// A Hahn-Banach support functional l_x: l_x(x) = ||x|| and dual norm 1.
// `coefficients` is a covector; eval is plain (unconjugated) pairing.
struct Functional {
  Vec coefficients;
  Vec source;
};

inline Complex functional_eval(const Functional& l, const Vec& v) {
  Complex s = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) s += l.coefficients[j] * v[j];
  return s;
}

inline Functional support_functional(const Space& s, const Vec& x) {
  check_dim(s, x);
  check_real(s, x);
  const double nx = norm(s, x);
  if (nx == 0.0) throw std::invalid_argument("support functional of zero vector");
  Vec c = Vec::Zero(s.dim);
  switch (s.kind) {
    case NormKind::euclidean:
    case NormKind::real_euclidean:
      c = x.conjugate() / nx;
      break;
    case NormKind::sup: {
      // lowest index attaining the max modulus, phase-corrected
      Eigen::Index jstar = 0;
      double best = -1.0;
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double a = std::abs(x[j]);
        if (a > best + 1e-15) { best = a; jstar = j; }
      }
      c[jstar] = std::conj(x[jstar]) / std::abs(x[jstar]);
      break;
    }
    case NormKind::one:
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double a = std::abs(x[j]);
        if (a > 0.0) c[j] = std::conj(x[j]) / a;
      }
      break;
    case NormKind::p:
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double a = std::abs(x[j]);
        if (a > 0.0) c[j] = std::conj(x[j]) * std::pow(a, s.p - 2.0) / std::pow(nx, s.p - 1.0);
      }
      break;
    case NormKind::product: {
      // dual of an l^infty-sum is the l^1-sum; pick the first factor
      // attaining the max factor norm
      Eigen::Index off = 0, best_off = 0;
      int best_k = s.factors.empty() ? s.dim : s.factors[0];
      double best = -1.0;
      for (int k : s.factors) {
        const double a = x.segment(off, k).norm();
        if (a > best + 1e-15) { best = a; best_off = off; best_k = k; }
        off += k;
      }
      c.segment(best_off, best_k) = x.segment(best_off, best_k).conjugate() / best;
      break;
    }
  }
  return Functional{c, x};
}

inline Vec unit_sphere_sample(const Space& s, Rng& rng) {
  Vec v(s.dim);
  for (;;) {
    for (int j = 0; j < s.dim; ++j)
      v[j] = s.real_restricted ? Complex(rng.gaussian(), 0.0) : rng.complex_gaussian();
    const double n = norm(s, v);
    if (n > 1e-8) return v / n;
  }
}

struct LinearMap {
  Mat matrix;
  Space dom;
  Space codom;
};

struct OperatorNormResult {
  double value = 0.0;
  bool lower_bound_only = false;
};

// Sampled lower bound with per-coordinate phase/magnitude ascent; used for
// non-Euclidean norm pairs (and as an independent oracle for Euclidean ones).
inline double sampled_operator_norm(const Mat& A, const Space& dom, const Space& codom,
                                    int samples, Rng& rng, int ascent_steps = 64) {
  double best = 0.0;
  Vec best_v;
  for (int i = 0; i < samples; ++i) {
    Vec v = unit_sphere_sample(dom, rng);
    const double val = norm(codom, A * v);
    if (val > best) { best = val; best_v = v; }
  }
  if (best_v.size() == 0) return best;
  // local refinement: perturb one coordinate at a time, renormalize
  Vec v = best_v;
  double step = 0.25;
  for (int it = 0; it < ascent_steps; ++it) {
    bool improved = false;
    for (int j = 0; j < dom.dim; ++j) {
      for (Complex d : {Complex(step, 0), Complex(-step, 0), Complex(0, step), Complex(0, -step)}) {
        if (dom.real_restricted && d.imag() != 0.0) continue;
        Vec w = v;
        w[j] += d;
        const double nw = norm(dom, w);
        if (nw < 1e-12) continue;
        w /= nw;
        const double val = norm(codom, A * w);
        if (val > best) {
          best = val;
          v = w;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-10) break;
  }
  return best;
}

inline OperatorNormResult operator_norm(const LinearMap& A, int samples = 512,
                                        std::uint64_t seed = 0x5eed) {
  if (A.matrix.rows() != A.codom.dim || A.matrix.cols() != A.dom.dim)
    throw std::invalid_argument("dimension mismatch");
  if (A.dom.euclidean_like() && A.codom.euclidean_like()) {
    Eigen::JacobiSVD<Mat> svd(A.matrix);
    return {svd.singularValues().size() ? svd.singularValues()[0] : 0.0, false};
  }
  Rng rng(seed);
  return {sampled_operator_norm(A.matrix, A.dom, A.codom, samples, rng), true};
}

}  // namespace schwarz_lab

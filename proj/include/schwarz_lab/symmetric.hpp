#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "schwarz_lab/space.hpp"

namespace schwarz_lab {

// Finite rank bounded symmetric domains of "product of Hilbert balls" type:
// B = B_{k_1} x ... x B_{k_p} with the sup norm across factors. This covers
// the Euclidean ball (p = 1) and the polydisk (all k_j = 1).
enum class TripleKind { hilbert_ball, polydisc, product_of_balls };

struct TripleSystem {
  TripleKind kind = TripleKind::hilbert_ball;
  std::vector<int> factors;  // factor dimensions
  int dim = 0;
  int rank = 0;

  static TripleSystem HilbertBall(int n) {
    if (n < 1) throw std::invalid_argument("ball dimension must be positive");
    return {TripleKind::hilbert_ball, {n}, n, 1};
  }
  static TripleSystem Polydisc(int n) {
    if (n < 1) throw std::invalid_argument("polydisc dimension must be positive");
    return {TripleKind::polydisc, std::vector<int>(n, 1), n, n};
  }
  static TripleSystem ProductOfBalls(std::vector<int> dims) {
    if (dims.empty()) throw std::invalid_argument("empty factor list");
    int d = 0;
    for (int k : dims) {
      if (k < 1) throw std::invalid_argument("factor dimension must be positive");
      d += k;
    }
    const int r = static_cast<int>(dims.size());
    return {TripleKind::product_of_balls, std::move(dims), d, r};
  }

  Space space() const {
    switch (kind) {
      case TripleKind::hilbert_ball: return Space::Euclidean(dim);
      case TripleKind::polydisc: return Space::Sup(dim);
      default: return Space::Product(factors);
    }
  }

  std::string name() const {
    switch (kind) {
      case TripleKind::hilbert_ball: return "ball(" + std::to_string(dim) + ")";
      case TripleKind::polydisc: return "polydisc(" + std::to_string(dim) + ")";
      default: {
        std::string s = "product(";
        for (std::size_t i = 0; i < factors.size(); ++i)
          s += (i ? "," : "") + std::to_string(factors[i]);
        return s + ")";
      }
    }
  }
};

namespace detail {

template <typename F>
void for_each_factor(const TripleSystem& sys, const F& f) {
  int off = 0;
  for (int k : sys.factors) {
    f(off, k);
    off += k;
  }
}

inline Complex dotc(const Vec& a, const Vec& b) {
  // sum a_j conj(b_j)
  Complex s = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) s += a[j] * std::conj(b[j]);
  return s;
}

}  // namespace detail

// {x, y, z} computed factorwise with the Hilbert ball formula
// ( <x,y> z + <z,y> x ) / 2 on each factor.
inline Vec triple_product(const TripleSystem& sys, const Vec& x, const Vec& y, const Vec& z) {
  if (x.size() != sys.dim || y.size() != sys.dim || z.size() != sys.dim)
    throw std::invalid_argument("triple product dimension mismatch");
  Vec out = Vec::Zero(sys.dim);
  detail::for_each_factor(sys, [&](int off, int k) {
    const Vec xj = x.segment(off, k), yj = y.segment(off, k), zj = z.segment(off, k);
    out.segment(off, k) = 0.5 * (detail::dotc(xj, yj) * zj + detail::dotc(zj, yj) * xj);
  });
  return out;
}

// Bergman operator B(z, w) v = v - 2 {z, w, v} + {z, {w, v, w}, z},
// assembled as a matrix (the map is complex linear in v).
inline Mat bergman_operator(const TripleSystem& sys, const Vec& z, const Vec& w) {
  if (z.size() != sys.dim || w.size() != sys.dim)
    throw std::invalid_argument("Bergman operator dimension mismatch");
  Mat B(sys.dim, sys.dim);
  for (int k = 0; k < sys.dim; ++k) {
    Vec v = Vec::Zero(sys.dim);
    v[k] = 1.0;
    B.col(k) = v - 2.0 * triple_product(sys, z, w, v) +
               triple_product(sys, z, triple_product(sys, w, v, w), z);
  }
  return B;
}

// Mobius transformation g_a with g_a(0) = a, computed factorwise by the
// closed Hilbert ball form
//   g_a(z) = a + (s Q_a z + s^2 P_a z) / (1 + <z, a>),  s = sqrt(1 - |a|^2),
// where P_a is the orthogonal projection onto span(a) and Q_a = I - P_a.
class Mobius {
 public:
  Mobius(TripleSystem sys, Vec a) : sys_(std::move(sys)), a_(std::move(a)) {
    if (a_.size() != sys_.dim) throw std::invalid_argument("Mobius center dimension mismatch");
    if (norm(sys_.space(), a_) >= 1.0)
      throw std::invalid_argument("Mobius center must lie in the open unit ball");
  }

  Vec eval(const Vec& z) const {
    Vec out(sys_.dim);
    detail::for_each_factor(sys_, [&](int off, int k) {
      out.segment(off, k) = factor_eval(a_.segment(off, k), z.segment(off, k));
    });
    return out;
  }

  // exact complex Jacobian, block diagonal across factors
  Mat deriv(const Vec& z) const {
    Mat D = Mat::Zero(sys_.dim, sys_.dim);
    detail::for_each_factor(sys_, [&](int off, int k) {
      D.block(off, off, k, k) = factor_deriv(a_.segment(off, k), z.segment(off, k));
    });
    return D;
  }

  const Vec& center() const { return a_; }
  const TripleSystem& system() const { return sys_; }

 private:
  static Mat m_matrix(const Vec& a) {
    const int k = static_cast<int>(a.size());
    const double na2 = a.squaredNorm();
    const double s = std::sqrt(1.0 - na2);
    if (na2 == 0.0) return Mat::Identity(k, k);
    const Mat P = (a * a.adjoint()) / na2;
    return s * (Mat::Identity(k, k) - P) + (s * s) * P;
  }
  static Vec factor_eval(const Vec& a, const Vec& z) {
    const Complex den = 1.0 + detail::dotc(z, a);
    return a + (m_matrix(a) * z) / den;
  }
  static Mat factor_deriv(const Vec& a, const Vec& z) {
    const Complex den = 1.0 + detail::dotc(z, a);
    const Mat M = m_matrix(a);
    return M / den - (M * z) * a.adjoint() / (den * den);
  }

  TripleSystem sys_;
  Vec a_;
};

inline Mobius mobius(const TripleSystem& sys, const Vec& a) { return Mobius(sys, a); }

// Bergman metric at the origin: h_0(x, y) = sum_j (k_j + 1) <x_j, y_j>.
inline Complex bergman_metric0(const TripleSystem& sys, const Vec& x, const Vec& y) {
  if (x.size() != sys.dim || y.size() != sys.dim)
    throw std::invalid_argument("Bergman metric dimension mismatch");
  Complex s = 0.0;
  detail::for_each_factor(sys, [&](int off, int k) {
    s += static_cast<double>(k + 1) * detail::dotc(x.segment(off, k), y.segment(off, k));
  });
  return s;
}

// c(B) = (1/2) sup_{||x||=||y||=1} |h_0(x, y)| = sum_j (k_j + 1) / 2.
// Always satisfies (dim + rank) / 2 <= c(B) <= dim.
inline double c_constant(const TripleSystem& sys) {
  double c = 0.0;
  for (int k : sys.factors) c += (k + 1) / 2.0;
  return c;
}

// Maximal tripotents of a product of balls are the points with every factor
// on its unit sphere.
inline bool is_maximal_tripotent(const TripleSystem& sys, const Vec& e, double tol = 1e-9) {
  if (e.size() != sys.dim) throw std::invalid_argument("tripotent dimension mismatch");
  bool ok = true;
  detail::for_each_factor(sys, [&](int off, int k) {
    if (std::abs(e.segment(off, k).norm() - 1.0) > tol) ok = false;
  });
  return ok;
}

}  // namespace schwarz_lab

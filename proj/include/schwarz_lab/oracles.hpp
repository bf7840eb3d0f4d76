#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "schwarz_lab/mappings.hpp"
#include "schwarz_lab/symmetric.hpp"

namespace schwarz_lab {

struct OracleReport {
  std::string name;
  double max_error = 0.0;
  double gate = 0.0;
  bool pass = false;
};

// Finite difference Wirtinger derivatives, fourth order central stencil.
// Returns (dh, dg) with Dh = df/dz and dg = conj(df/dzbar) columnwise.
inline DerivPair fd_derivatives(const Map& f, const Vec& z, double h = 1e-3) {
  const int n = f.dom().dim;
  const int m = f.codom().dim;
  Mat dh(m, n), dg(m, n);
  const auto stencil = [&](const Vec& e) -> Vec {
    return (-f.eval(z + 2.0 * h * e) + 8.0 * f.eval(z + h * e) - 8.0 * f.eval(z - h * e) +
            f.eval(z - 2.0 * h * e)) /
           (12.0 * h);
  };
  for (int k = 0; k < n; ++k) {
    Vec ex = Vec::Zero(n), ey = Vec::Zero(n);
    ex[k] = 1.0;
    ey[k] = Complex(0.0, 1.0);
    const Vec dx = stencil(ex);
    const Vec dy = stencil(ey);
    const Complex i(0.0, 1.0);
    dh.col(k) = 0.5 * (dx - i * dy);            // df/dz_k
    dg.col(k) = (0.5 * (dx + i * dy)).conjugate();  // conj(df/dzbar_k)
  }
  return {std::move(dh), std::move(dg), z};
}

// Operator norm by a route independent of the SVD path in operator_norm():
// power iteration on A^H A for Euclidean norms, otherwise random probing
// with coordinatewise ascent. The probing route is a lower bound.
inline OperatorNormResult numeric_operator_norm(const Mat& A, const Space& dom, const Space& codom,
                                                int samples = 2048, std::uint64_t seed = 0xacce5) {
  OperatorNormResult out;
  if (dom.euclidean_like() && codom.euclidean_like()) {
    const Mat G = A.adjoint() * A;
    Vec v = Vec::Ones(A.cols()).normalized();
    for (int it = 0; it < 200; ++it) {
      Vec w = G * v;
      const double nw = w.norm();
      if (nw == 0.0) break;
      v = w / nw;
    }
    out.value = std::sqrt(std::abs((v.adjoint() * G * v)(0, 0)));
    out.lower_bound_only = false;
    return out;
  }
  Rng rng(seed);
  double best = 0.0;
  const auto score = [&](const Vec& v) { return norm(codom, A * v) / norm(dom, v); };
  for (int s = 0; s < samples; ++s) {
    Vec v = unit_sphere_sample(dom, rng);
    double cur = score(v);
    double step = 0.25;
    for (int it = 0; it < 48; ++it) {
      bool improved = false;
      for (Eigen::Index j = 0; j < v.size(); ++j) {
        for (const Complex d : {Complex(step, 0.0), Complex(-step, 0.0), Complex(0.0, step),
                                Complex(0.0, -step)}) {
          Vec w = v;
          w[j] += d;
          const double sc = score(w);
          if (sc > cur) {
            cur = sc;
            v = w;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
      if (step < 1e-7) break;
    }
    best = std::max(best, cur);
  }
  out.value = best;
  out.lower_bound_only = true;
  return out;
}

// Bergman metric at the origin from the kernel: H_jk = d^2 log K / dz_j dzbar_k
// evaluated by real central differences of log K(z) = -sum (k_f+1) log(1-||z_f||^2)
// up to an additive constant.
inline Mat numeric_bergman_metric0(const TripleSystem& sys, double h = 1e-3) {
  const int n = sys.dim;
  const auto logk = [&](const Vec& z) {
    double u = 0.0;
    detail::for_each_factor(sys, [&](int off, int k) {
      u -= (k + 1) * std::log(1.0 - z.segment(off, k).squaredNorm());
    });
    return u;
  };
  // real coordinates: index 2j = x_j, 2j+1 = y_j
  const auto unit = [&](int r) {
    Vec e = Vec::Zero(n);
    e[r / 2] = (r % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
    return e;
  };
  const auto d2 = [&](int r, int s) {
    const Vec er = unit(r), es = unit(s);
    if (r == s)
      return (logk(h * er) - 2.0 * logk(Vec::Zero(n)) + logk(-h * er)) / (h * h);
    return (logk(h * er + h * es) - logk(h * er - h * es) - logk(-h * er + h * es) +
            logk(-h * er - h * es)) /
           (4.0 * h * h);
  };
  Mat H(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double xx = d2(2 * j, 2 * k), yy = d2(2 * j + 1, 2 * k + 1);
      const double xy = d2(2 * j, 2 * k + 1), yx = d2(2 * j + 1, 2 * k);
      H(j, k) = 0.25 * (Complex(xx + yy, 0.0) + Complex(0.0, 1.0) * (xy - yx));
    }
  return H;
}

// c(B) recovered from a metric matrix H by alternating maximization of
// |x^T H conj(y)| over the product unit sphere. Exact per factor at each step.
inline double numeric_c_constant(const TripleSystem& sys, const Mat& H, std::uint64_t seed = 0xc0de) {
  Rng rng(seed);
  const Space sp = sys.space();
  double best = 0.0;
  for (int start = 0; start < 8; ++start) {
    Vec x = unit_sphere_sample(sp, rng);
    double val = 0.0;
    for (int it = 0; it < 32; ++it) {
      // optimal y for fixed x, factor by factor
      const Vec v = (x.transpose() * H).transpose();
      Vec y = Vec::Zero(sys.dim);
      detail::for_each_factor(sys, [&](int off, int k) {
        const double nv = v.segment(off, k).norm();
        if (nv > 0.0) y.segment(off, k) = v.segment(off, k).conjugate() / nv;
      });
      // optimal x for fixed y
      const Vec w = H * y.conjugate();
      Vec xn = Vec::Zero(sys.dim);
      detail::for_each_factor(sys, [&](int off, int k) {
        const double nw = w.segment(off, k).norm();
        if (nw > 0.0) xn.segment(off, k) = w.segment(off, k).conjugate() / nw;
      });
      x = xn;
      const double cur = std::abs((x.transpose() * H * y.conjugate())(0, 0));
      if (cur <= val + 1e-14) {
        val = std::max(val, cur);
        break;
      }
      val = cur;
    }
    best = std::max(best, val);
  }
  return 0.5 * best;
}

namespace detail {

// Smallest image gap |f(a) - f(b)| reachable from the candidate pair by
// coordinate descent, with a and b kept apart. A genuine two-branch overlap
// descends to (numerical) zero; a mere anisotropic squeeze bottoms out at
// the separation floor times the local contraction.
inline double collision_gap(const Map& f, Complex a, Complex b, double step, double min_sep) {
  const auto at = [&](Complex z) {
    Vec v(1);
    v[0] = z;
    return f.eval(v)[0];
  };
  double cur = std::abs(at(a) - at(b));
  double s = step;
  while (s > 1e-9 && cur > 0.0) {
    bool improved = false;
    for (int which = 0; which < 2; ++which) {
      for (const Complex d : {Complex(s, 0.0), Complex(-s, 0.0), Complex(0.0, s),
                              Complex(0.0, -s)}) {
        const Complex ca = which == 0 ? a + d : a;
        const Complex cb = which == 0 ? b : b + d;
        if (std::abs(ca) >= 0.999 || std::abs(cb) >= 0.999 || std::abs(ca - cb) < min_sep)
          continue;
        const double val = std::abs(at(ca) - at(cb));
        if (val < cur) {
          cur = val;
          a = ca;
          b = cb;
          improved = true;
        }
      }
    }
    if (!improved) s *= 0.5;
  }
  return cur;
}

}  // namespace detail

struct UnivalentRadiusResult {
  double radius = 0.0;     // largest verified schlicht disk radius around f(z0)
  double grid_cell = 0.0;  // image-space resolution of the mesh
  bool collision = false;  // radius limited by a two-branch collision
};

// Brute force univalent disk radius for a map of the 1-dimensional disk.
// Builds a polar mesh, runs a minimax-path Dijkstra on |f(.) - f(z0)| from
// the node nearest z0, and detects image collisions between domain-distant
// nodes with a spatial hash.
inline UnivalentRadiusResult univalent_radius_1d(const Map& f, Complex z0, int radial = 128,
                                                 int angular = 256) {
  if (f.dom().dim != 1 || f.codom().dim != 1)
    throw std::invalid_argument("univalent_radius_1d needs a map of the disk");
  const auto at = [&](Complex z) {
    Vec v(1);
    v[0] = z;
    return f.eval(v)[0];
  };
  const Complex w0 = at(z0);

  struct Node {
    Complex z, w;
    double cost;
  };
  const int total = radial * angular;
  std::vector<Node> nodes(total);
  for (int i = 0; i < radial; ++i)
    for (int j = 0; j < angular; ++j) {
      const double r = (i + 1.0) / (radial + 1.0);
      const double th = 2.0 * kPi * j / angular;
      const Complex z(r * std::cos(th), r * std::sin(th));
      nodes[i * angular + j] = {z, at(z), 0.0};
    }
  for (auto& nd : nodes) nd.cost = std::abs(nd.w - w0);

  const auto neighbors = [&](int id, std::vector<int>& out) {
    out.clear();
    const int i = id / angular, j = id % angular;
    const int jl = (j + angular - 1) % angular, jr = (j + 1) % angular;
    out.push_back(i * angular + jl);
    out.push_back(i * angular + jr);
    if (i > 0) {
      out.push_back((i - 1) * angular + j);
      out.push_back((i - 1) * angular + jl);
      out.push_back((i - 1) * angular + jr);
    }
    if (i + 1 < radial) {
      out.push_back((i + 1) * angular + j);
      out.push_back((i + 1) * angular + jl);
      out.push_back((i + 1) * angular + jr);
    }
  };

  // seed at the mesh node nearest z0
  int seed_id = 0;
  double seed_d = std::numeric_limits<double>::infinity();
  for (int id = 0; id < total; ++id) {
    const double d = std::abs(nodes[id].z - z0);
    if (d < seed_d) {
      seed_d = d;
      seed_id = id;
    }
  }

  std::vector<double> t(total, std::numeric_limits<double>::infinity());
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  t[seed_id] = nodes[seed_id].cost;
  pq.push({t[seed_id], seed_id});
  std::vector<int> nbr;
  std::vector<int> order;
  order.reserve(total);
  std::vector<bool> done(total, false);
  while (!pq.empty()) {
    const auto [tv, id] = pq.top();
    pq.pop();
    if (done[id]) continue;
    done[id] = true;
    order.push_back(id);
    neighbors(id, nbr);
    for (int q : nbr) {
      const double cand = std::max(tv, nodes[q].cost);
      if (cand < t[q]) {
        t[q] = cand;
        pq.push({cand, q});
      }
    }
  }

  double edge = 0.0;
  for (int id = 0; id < total; ++id) {
    neighbors(id, nbr);
    for (int q : nbr) edge = std::max(edge, std::abs(nodes[id].w - nodes[q].w));
  }

  double boundary_t = std::numeric_limits<double>::infinity();
  for (int j = 0; j < angular; ++j)
    boundary_t = std::min(boundary_t, t[(radial - 1) * angular + j]);

  // collision sweep in increasing t
  const double domain_cell = 2.0 * kPi / angular + 1.0 / (radial + 1.0);
  const double cell = std::max(edge, 1e-12);
  std::unordered_map<long long, std::vector<int>> hash;
  const auto key = [&](Complex w) {
    const long long gx = static_cast<long long>(std::floor(w.real() / cell));
    const long long gy = static_cast<long long>(std::floor(w.imag() / cell));
    return gx * 1000003LL + gy;
  };
  double collision_t = std::numeric_limits<double>::infinity();
  for (int id : order) {
    if (t[id] >= std::min(boundary_t, collision_t)) break;
    const Complex w = nodes[id].w;
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        const long long k = key(w + Complex(dx * cell, dy * cell));
        const auto it = hash.find(k);
        if (it == hash.end()) continue;
        for (int q : it->second) {
          if (std::abs(nodes[q].w - w) <= edge &&
              std::abs(nodes[q].z - nodes[id].z) > 4.0 * domain_cell &&
              detail::collision_gap(f, nodes[id].z, nodes[q].z, domain_cell,
                                    3.0 * domain_cell) <= 1e-4 * edge)
            collision_t = std::min(collision_t, std::max(t[id], t[q]));
        }
      }
    hash[key(w)].push_back(id);
  }

  UnivalentRadiusResult out;
  out.grid_cell = edge;
  out.collision = collision_t < boundary_t;
  out.radius = std::min(boundary_t, collision_t);
  return out;
}

}  // namespace schwarz_lab

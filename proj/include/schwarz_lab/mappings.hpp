#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schwarz_lab/space.hpp"

#include <nlohmann/json.hpp>

namespace schwarz_lab {

// The pair of Jacobians of the holomorphic parts at a point. The full
// real-linear Frechet derivative acts as v -> dh v + conj(dg v).
struct DerivPair {
  Mat dh;
  Mat dg;
  Vec at;

  Vec apply(const Vec& v) const { return dh * v + (dg * v).conjugate(); }
};

struct BallCertificate {
  double sup_bound = 0.0;
  double margin = 0.0;

  bool maps_into_open_ball() const { return sup_bound < 1.0; }
};

// Common interface for maps f = h + conj(g): exact polynomial maps and the
// closed-form extremals share evaluation, derivatives, and flags.
class Map {
 public:
  virtual ~Map() = default;
  virtual Vec eval(const Vec& z) const = 0;
  virtual DerivPair derivatives(const Vec& z) const = 0;
  virtual bool holomorphic() const = 0;
  virtual const Space& dom() const = 0;
  virtual const Space& codom() const = 0;
};

using MultiIndex = std::vector<int>;

// Multivariate polynomial with vector coefficients, sparse over multi-indices.
struct Poly {
  std::map<MultiIndex, Vec> terms;

  bool empty() const {
    for (const auto& [a, c] : terms)
      if (c.norm() > 0.0) return false;
    return true;
  }

  Vec eval(const Vec& z, int codim) const {
    Vec out = Vec::Zero(codim);
    for (const auto& [alpha, c] : terms) {
      Complex mono = 1.0;
      for (std::size_t j = 0; j < alpha.size(); ++j)
        for (int k = 0; k < alpha[j]; ++k) mono *= z[static_cast<Eigen::Index>(j)];
      out += mono * c;
    }
    return out;
  }

  // Exact coefficient-shift Jacobian.
  Mat jacobian(const Vec& z, int codim) const {
    const int n = static_cast<int>(z.size());
    Mat J = Mat::Zero(codim, n);
    for (const auto& [alpha, c] : terms) {
      for (int j = 0; j < n; ++j) {
        if (alpha[static_cast<std::size_t>(j)] == 0) continue;
        Complex mono = static_cast<double>(alpha[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i) {
          int e = alpha[static_cast<std::size_t>(i)] - (i == j ? 1 : 0);
          for (int k = 0; k < e; ++k) mono *= z[i];
        }
        J.col(j) += mono * c;
      }
    }
    return J;
  }
};

class PluriharmonicMap final : public Map {
 public:
  PluriharmonicMap(Space dom, Space codom, Poly h, Poly g)
      : dom_(std::move(dom)), codom_(std::move(codom)), h_(std::move(h)), g_(std::move(g)) {
    for (const auto* poly : {&h_, &g_})
      for (const auto& [alpha, c] : poly->terms) {
        if (static_cast<int>(alpha.size()) != dom_.dim || c.size() != codom_.dim)
          throw std::invalid_argument("coefficient shape mismatch");
      }
  }

  Vec eval(const Vec& z) const override {
    check_dim(dom_, z);
    return h_.eval(z, codom_.dim) + g_.eval(z, codom_.dim).conjugate();
  }

  DerivPair derivatives(const Vec& z) const override {
    check_dim(dom_, z);
    return {h_.jacobian(z, codom_.dim), g_.jacobian(z, codom_.dim), z};
  }

  bool holomorphic() const override { return g_.empty(); }
  const Space& dom() const override { return dom_; }
  const Space& codom() const override { return codom_; }
  const Poly& h() const { return h_; }
  const Poly& g() const { return g_; }

  // tighter containment bound supplied by a generator when the coefficient
  // sum overshoots (truncated products of disk self-maps)
  std::optional<BallCertificate> attached_certificate;

 private:
  Space dom_, codom_;
  Poly h_, g_;
};

inline Vec radial_derivative(const Map& f, const Vec& b) {
  const double nb = norm(f.dom(), b);
  if (std::abs(nb - 1.0) > 1e-12) throw std::invalid_argument("radial derivative needs a boundary point");
  const DerivPair d = f.derivatives(b);
  return d.apply(b);
}

// |grad ||f|| |(z0): branches on f(z0) = 0.
//   f(z0) = 0  -> real operator norm of Df(z0), sampled over the dom sphere;
//   otherwise  -> sup over unit beta of |l_{f(z0)}(Df(z0) beta)|.
struct NablaNormResult {
  double value = 0.0;
  bool lower_bound_only = true;
  bool near_singular_support = false;  // ||f(z0)|| in (1e-12, 1e-8)
};

namespace detail {

// maximize `score` over the unit sphere of `dom` by sampling + per-coordinate
// ascent; deterministic given the rng
template <typename Score>
double sphere_sup(const Space& dom, Rng& rng, const Score& score, int samples = 512,
                  int ascent_steps = 32) {
  double best = 0.0;
  Vec best_v;
  for (int i = 0; i < samples; ++i) {
    Vec v = unit_sphere_sample(dom, rng);
    const double val = score(v);
    if (val > best) { best = val; best_v = v; }
  }
  if (best_v.size() == 0) return best;
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
        const double val = score(w);
        if (val > best) { best = val; v = w; improved = true; }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-10) break;
  }
  return best;
}

}  // namespace detail

inline NablaNormResult nabla_norm(const Map& f, const Vec& z0, std::uint64_t seed = 0x5eed) {
  if (norm(f.dom(), z0) >= 1.0) throw std::invalid_argument("z0 outside the open unit ball");
  const Vec fz0 = f.eval(z0);
  const DerivPair d = f.derivatives(z0);
  const double nf = norm(f.codom(), fz0);
  Rng rng(seed);
  NablaNormResult out;
  if (nf <= 1e-12) {
    out.value = detail::sphere_sup(f.dom(), rng, [&](const Vec& beta) {
      return norm(f.codom(), d.apply(beta));
    });
  } else {
    out.near_singular_support = nf < 1e-8;
    const Functional l = support_functional(f.codom(), fz0);
    out.value = detail::sphere_sup(f.dom(), rng, [&](const Vec& beta) {
      return std::abs(functional_eval(l, d.apply(beta)));
    });
  }
  return out;
}

// Lambda_f(0; w) = ||Dh(0)w|| + ||conj(Dg(0)w)||, exact for every codomain
// norm: the two sups over support functionals decouple and each is attained.
struct LambdaResult {
  double value = 0.0;
  bool lower_bound_only = false;
};

inline LambdaResult lambda0(const Map& f, const Vec& w, std::uint64_t = 0) {
  if (std::abs(norm(f.dom(), w) - 1.0) > 1e-9)
    throw std::invalid_argument("Lambda_f(0;w) needs w on the unit sphere");
  const DerivPair d = f.derivatives(Vec::Zero(f.dom().dim));
  const Space& Y = f.codom();
  // sup_u |l_u(Dh(0)w)| + |l_u(conj(Dg(0)w))| factors; each sup equals the
  // norm of its argument, attained by the canonical support functional
  return {norm(Y, Vec(d.dh * w)) + norm(Y, Vec((d.dg * w).conjugate())), false};
}

// Second complex dilatation omega_f = Dg [Dh]^{-1}.
inline Mat omega(const Map& f, const Vec& z) {
  if (f.dom().dim != f.codom().dim)
    throw std::invalid_argument("omega needs equal dom/codom dimensions");
  const DerivPair d = f.derivatives(z);
  Eigen::JacobiSVD<Mat> svd(d.dh, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[sv.size() - 1] <= 0.0 || sv[0] / sv[sv.size() - 1] > 1e12)
    throw std::domain_error("locally-non-biholomorphic: Dh(z) is singular");
  return d.dg * svd.solve(Mat::Identity(f.dom().dim, f.dom().dim));
}

// sum of coefficient norms; a sup bound over the closed unit ball for every
// supported dom norm (each |z_j| <= ||z|| there, so |z^alpha| <= 1)
inline BallCertificate coefficient_sup_bound(const PluriharmonicMap& f) {
  double s = 0.0;
  for (const auto* poly : {&f.h(), &f.g()})
    for (const auto& [alpha, c] : poly->terms) s += norm(f.codom(), c);
  return {s, 1.0 - s};
}

// --- serialization -------------------------------------------------------

inline nlohmann::ordered_json space_to_json(const Space& s) {
  nlohmann::ordered_json j;
  j["dim"] = s.dim;
  switch (s.kind) {
    case NormKind::euclidean: j["norm"] = "euclidean"; break;
    case NormKind::sup: j["norm"] = "sup"; break;
    case NormKind::one: j["norm"] = "one"; break;
    case NormKind::p: j["norm"] = "p"; j["p"] = s.p; break;
    case NormKind::real_euclidean: j["norm"] = "real_euclidean"; break;
    case NormKind::product: j["norm"] = "product"; j["factors"] = s.factors; break;
  }
  return j;
}

inline Space space_from_json(const nlohmann::json& j) {
  const std::string k = j.at("norm").get<std::string>();
  const int dim = j.at("dim").get<int>();
  if (k == "euclidean") return Space::Euclidean(dim);
  if (k == "sup") return Space::Sup(dim);
  if (k == "one") return Space::One(dim);
  if (k == "p") return Space::Lp(dim, j.at("p").get<double>());
  if (k == "real_euclidean") return Space::RealEuclidean(dim);
  if (k == "product") return Space::Product(j.at("factors").get<std::vector<int>>());
  throw std::invalid_argument("unknown norm kind: " + k);
}

inline nlohmann::ordered_json poly_to_json(const Poly& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [alpha, c] : p.terms) {
    nlohmann::ordered_json t;
    t["alpha"] = alpha;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < c.size(); ++i) cs.push_back({c[i].real(), c[i].imag()});
    t["c"] = cs;
    arr.push_back(t);
  }
  return arr;
}

inline Poly poly_from_json(const nlohmann::json& arr) {
  Poly p;
  for (const auto& t : arr) {
    MultiIndex alpha = t.at("alpha").get<MultiIndex>();
    const auto& cs = t.at("c");
    Vec c(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
      c[static_cast<Eigen::Index>(i)] = Complex(cs[i][0].get<double>(), cs[i][1].get<double>());
    p.terms[alpha] = c;
  }
  return p;
}

inline nlohmann::ordered_json map_to_json(const PluriharmonicMap& f) {
  nlohmann::ordered_json j;
  j["dom"] = space_to_json(f.dom());
  j["codom"] = space_to_json(f.codom());
  j["h"] = poly_to_json(f.h());
  j["g"] = poly_to_json(f.g());
  return j;
}

inline PluriharmonicMap map_from_json(const nlohmann::json& j) {
  return PluriharmonicMap(space_from_json(j.at("dom")), space_from_json(j.at("codom")),
                          poly_from_json(j.at("h")), poly_from_json(j.at("g")));
}

}  // namespace schwarz_lab

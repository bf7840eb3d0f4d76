#pragma once

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "schwarz_lab/mappings.hpp"

namespace schwarz_lab {

// A planar harmonic profile phi(zeta) = p(zeta) + conj(q(zeta)) with p, q
// holomorphic, given by exact closed forms with symbolic derivatives. All
// profiles used here are self-maps of the unit disk.
class ScalarSlice {
 public:
  virtual ~ScalarSlice() = default;
  virtual Complex p(Complex z) const = 0;
  virtual Complex dp(Complex z) const = 0;
  virtual Complex q(Complex) const { return 0.0; }
  virtual Complex dq(Complex) const { return 0.0; }
  virtual bool holomorphic() const { return true; }

  Complex value(Complex z) const { return p(z) + std::conj(q(z)); }
};

// (a + zeta) / (1 + a zeta), a in the closed unit disk of admissible params
class MobiusSlice final : public ScalarSlice {
 public:
  explicit MobiusSlice(Complex a) : a_(a) {
    if (std::abs(a) >= 1.0) throw std::invalid_argument("mobius slice needs |a| < 1");
  }
  Complex p(Complex z) const override { return (a_ + z) / (1.0 + std::conj(a_) * z); }
  Complex dp(Complex z) const override {
    const Complex d = 1.0 + std::conj(a_) * z;
    return (1.0 - std::norm(a_)) / (d * d);
  }

 private:
  Complex a_;
};

// zeta (a + zeta) / (1 + a zeta); the Osserman/Theorem B extremal profile.
// a = 1 degenerates to zeta^2.
class SchwarzZeroSlice final : public ScalarSlice {
 public:
  explicit SchwarzZeroSlice(Complex a) : a_(a) {
    if (std::abs(a) > 1.0) throw std::invalid_argument("schwarz slice needs |a| <= 1");
  }
  Complex p(Complex z) const override {
    if (a_ == Complex(1.0, 0.0)) return z * z;
    return z * (a_ + z) / (1.0 + std::conj(a_) * z);
  }
  Complex dp(Complex z) const override {
    if (a_ == Complex(1.0, 0.0)) return 2.0 * z;
    const Complex d = 1.0 + std::conj(a_) * z;
    const Complex phi = (a_ + z) / d;
    return phi + z * (1.0 - std::norm(a_)) / (d * d);
  }

 private:
  Complex a_;
};

// Zhu's extreme function for the boundary Schwarz lemma on the disk:
//   p = (gamma A + a) / (1 + gamma conj(a) A),
//   A(zeta) = zeta ((1-|a|^2) zeta + b) / ((1-|a|^2) + b zeta),
// with p(1) = 1 and p'(1) = 2|1-a|^2 / (1-|a|^2+b).
class BoundaryExtremeSlice final : public ScalarSlice {
 public:
  BoundaryExtremeSlice(Complex a, double bmag) : a_(a), b_(bmag) {
    if (std::abs(a) >= 1.0) throw std::invalid_argument("needs |a| < 1");
    if (bmag < 0.0 || bmag > 1.0 - std::norm(a)) throw std::invalid_argument("needs 0 <= b <= 1-|a|^2");
    gamma_ = (a == Complex(1.0, 0.0)) ? 1.0 : (1.0 - a_) / std::conj(1.0 - a_);
  }
  Complex p(Complex z) const override {
    const Complex A = inner(z);
    return (gamma_ * A + a_) / (1.0 + gamma_ * std::conj(a_) * A);
  }
  Complex dp(Complex z) const override {
    const Complex A = inner(z);
    const Complex den = 1.0 + gamma_ * std::conj(a_) * A;
    return gamma_ * (1.0 - std::norm(a_)) / (den * den) * dinner(z);
  }

 private:
  Complex inner(Complex z) const {
    const double c = 1.0 - std::norm(a_);
    return z * (c * z + b_) / (c + b_ * z);
  }
  Complex dinner(Complex z) const {
    const double c = 1.0 - std::norm(a_);
    const Complex num = c * z * z + b_ * z;
    const Complex dnum = 2.0 * c * z + b_;
    const Complex den = c + b_ * z;
    return (dnum * den - num * b_) / (den * den);
  }
  Complex a_;
  double b_;
  Complex gamma_;
};

// The Heinz extremal psi(zeta) = (2/pi) arctan(2 Re zeta / (1-|zeta|^2))
// written as p + conj(p) with p = -(i/pi) log((1+i zeta)/(1-i zeta)).
// psi(r) = (4/pi) arctan r on [0,1]; psi(1) = 1.
class HeinzSlice final : public ScalarSlice {
 public:
  Complex p(Complex z) const override {
    const Complex i(0.0, 1.0);
    return -(i / kPi) * std::log((1.0 + i * z) / (1.0 - i * z));
  }
  Complex dp(Complex z) const override { return (2.0 / kPi) / (1.0 + z * z); }
  Complex q(Complex z) const override { return p(z); }
  Complex dq(Complex z) const override { return dp(z); }
  bool holomorphic() const override { return false; }
};

// Colonna's extremal (2 gamma / pi) arg((1 + m(zeta)) / (1 - m(zeta))),
// m a disk automorphism; attains (4/pi)/(1-|z|^2) for the gradient bound.
class ColonnaSlice final : public ScalarSlice {
 public:
  ColonnaSlice(Complex gamma, Complex center) : gamma_(gamma), c_(center) {
    if (std::abs(std::abs(gamma) - 1.0) > 1e-12) throw std::invalid_argument("needs |gamma| = 1");
    if (std::abs(center) >= 1.0) throw std::invalid_argument("needs |center| < 1");
  }
  Complex p(Complex z) const override { return gamma_ * u(z); }
  Complex dp(Complex z) const override { return gamma_ * du(z); }
  Complex q(Complex z) const override { return std::conj(gamma_) * u(z); }
  Complex dq(Complex z) const override { return std::conj(gamma_) * du(z); }
  bool holomorphic() const override { return false; }

 private:
  Complex m(Complex z) const { return (c_ + z) / (1.0 + std::conj(c_) * z); }
  Complex dm(Complex z) const {
    const Complex d = 1.0 + std::conj(c_) * z;
    return (1.0 - std::norm(c_)) / (d * d);
  }
  Complex u(Complex z) const {
    const Complex i(0.0, 1.0);
    const Complex w = m(z);
    return -(i / kPi) * std::log((1.0 + w) / (1.0 - w));
  }
  Complex du(Complex z) const {
    const Complex i(0.0, 1.0);
    const Complex w = m(z);
    return -(i / kPi) * 2.0 * dm(z) / (1.0 - w * w);
  }
  Complex gamma_, c_;
};

// Finite Blaschke-type product u * zeta^e0 * prod (zeta - a_i)/(1 - conj(a_i) zeta).
class BlaschkeSlice final : public ScalarSlice {
 public:
  BlaschkeSlice(Complex unimodular, int zero_order, std::vector<Complex> zeros)
      : u_(unimodular), e0_(zero_order), zeros_(std::move(zeros)) {
    for (Complex a : zeros_)
      if (std::abs(a) >= 1.0) throw std::invalid_argument("Blaschke zeros must lie in the disk");
  }
  Complex p(Complex z) const override {
    Complex v = u_;
    for (int k = 0; k < e0_; ++k) v *= z;
    for (Complex a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
  }
  Complex dp(Complex z) const override {
    // product rule over all factors
    std::vector<Complex> vals, ders;
    for (int k = 0; k < e0_; ++k) { vals.push_back(z); ders.push_back(1.0); }
    for (Complex a : zeros_) {
      const Complex d = 1.0 - std::conj(a) * z;
      vals.push_back((z - a) / d);
      ders.push_back((1.0 - std::norm(a)) / (d * d));
    }
    Complex total = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      Complex term = u_ * ders[i];
      for (std::size_t j = 0; j < vals.size(); ++j)
        if (j != i) term *= vals[j];
      total += term;
    }
    return total;
  }

 private:
  Complex u_;
  int e0_;
  std::vector<Complex> zeros_;
};

// Convex combination of profiles: sum t_i phi_i with t_i >= 0, sum t_i <= 1.
class ConvexComboSlice final : public ScalarSlice {
 public:
  ConvexComboSlice(std::vector<double> weights, std::vector<std::shared_ptr<ScalarSlice>> parts)
      : w_(std::move(weights)), parts_(std::move(parts)) {
    double s = 0.0;
    for (double t : w_) {
      if (t < 0.0) throw std::invalid_argument("negative convex weight");
      s += t;
    }
    if (s > 1.0 + 1e-12) throw std::invalid_argument("convex weights exceed 1");
  }
  Complex p(Complex z) const override { return sum([&](const ScalarSlice& s) { return s.p(z); }); }
  Complex dp(Complex z) const override { return sum([&](const ScalarSlice& s) { return s.dp(z); }); }
  Complex q(Complex z) const override { return sum([&](const ScalarSlice& s) { return s.q(z); }); }
  Complex dq(Complex z) const override { return sum([&](const ScalarSlice& s) { return s.dq(z); }); }
  bool holomorphic() const override {
    for (const auto& s : parts_)
      if (!s->holomorphic()) return false;
    return true;
  }

 private:
  template <typename F>
  Complex sum(const F& f) const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) t += w_[i] * f(*parts_[i]);
    return t;
  }
  std::vector<double> w_;
  std::vector<std::shared_ptr<ScalarSlice>> parts_;
};

// f(z) = phi(l(z)) * b: a one-dimensional harmonic profile pushed through a
// support functional of the domain and a unit direction of the codomain.
// h(z) = p(l(z)) b and g(z) = q(l(z)) conj(b).
class ClosedFormMap final : public Map {
 public:
  ClosedFormMap(Space dom, Space codom, Functional l, Vec b, std::shared_ptr<ScalarSlice> slice)
      : dom_(std::move(dom)), codom_(std::move(codom)), l_(std::move(l)), b_(std::move(b)),
        slice_(std::move(slice)) {
    if (l_.coefficients.size() != dom_.dim || b_.size() != codom_.dim)
      throw std::invalid_argument("slice map shape mismatch");
  }

  Vec eval(const Vec& z) const override {
    check_dim(dom_, z);
    const Complex zeta = functional_eval(l_, z);
    return slice_->p(zeta) * b_ + std::conj(slice_->q(zeta)) * b_;
  }

  DerivPair derivatives(const Vec& z) const override {
    check_dim(dom_, z);
    const Complex zeta = functional_eval(l_, z);
    Mat dh = slice_->dp(zeta) * (b_ * l_.coefficients.transpose());
    Mat dg = slice_->dq(zeta) * (b_.conjugate() * l_.coefficients.transpose());
    return {std::move(dh), std::move(dg), z};
  }

  bool holomorphic() const override { return slice_->holomorphic(); }
  const Space& dom() const override { return dom_; }
  const Space& codom() const override { return codom_; }
  const ScalarSlice& slice() const { return *slice_; }
  const Functional& functional() const { return l_; }
  const Vec& direction() const { return b_; }

 private:
  Space dom_, codom_;
  Functional l_;
  Vec b_;
  std::shared_ptr<ScalarSlice> slice_;
};

}  // namespace schwarz_lab

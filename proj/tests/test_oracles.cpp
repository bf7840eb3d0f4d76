#include <catch2/catch_amalgamated.hpp>

#include "schwarz_lab/instances.hpp"
#include "schwarz_lab/oracles.hpp"

using namespace schwarz_lab;

namespace {

Vec cvec(std::initializer_list<Complex> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("finite difference derivatives agree with the exact jacobians") {
  Rng rng(101);
  for (MapFamily fam :
       {MapFamily::slice_blaschke, MapFamily::poly_scaled, MapFamily::harmonic_slice}) {
    const auto m = random_ball_map(Space::Euclidean(2), Space::Euclidean(2), fam, 6, rng);
    for (int i = 0; i < 5; ++i) {
      const Vec z = unit_sphere_sample(Space::Euclidean(2), rng) * 0.6;
      const DerivPair exact = m->derivatives(z);
      const DerivPair fd = fd_derivatives(*m, z);
      CHECK((exact.dh - fd.dh).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((exact.dg - fd.dg).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("independent operator norm agrees with the svd route") {
  Rng rng(55);
  for (int i = 0; i < 10; ++i) {
    Mat A(3, 2);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 2; ++b) A(a, b) = rng.complex_gaussian();
    const Space d = Space::Euclidean(2), c = Space::Euclidean(3);
    const double lib = operator_norm(LinearMap{A, d, c}).value;
    const auto ora = numeric_operator_norm(A, d, c);
    CHECK_FALSE(ora.lower_bound_only);
    CHECK(ora.value == Catch::Approx(lib).margin(1e-9));
  }
}

TEST_CASE("probed operator norm stays below the bound it estimates") {
  const Mat I = Mat::Identity(2, 2);
  const auto r = numeric_operator_norm(I, Space::Sup(2), Space::Euclidean(2), 512);
  CHECK(r.lower_bound_only);
  CHECK(r.value <= std::sqrt(2.0) + 1e-9);
  CHECK(r.value >= std::sqrt(2.0) - 1e-4);
}

TEST_CASE("kernel route bergman metric matches the closed form") {
  for (const TripleSystem& sys : {TripleSystem::HilbertBall(2), TripleSystem::Polydisc(2),
                                  TripleSystem::ProductOfBalls({2, 1})}) {
    const Mat H = numeric_bergman_metric0(sys);
    for (int i = 0; i < sys.dim; ++i)
      for (int j = 0; j < sys.dim; ++j) {
        Vec x = Vec::Zero(sys.dim), y = Vec::Zero(sys.dim);
        x[i] = 1.0;
        y[j] = 1.0;
        CHECK(std::abs(H(i, j) - bergman_metric0(sys, x, y)) < 1e-3);
      }
  }
}

TEST_CASE("numeric c constant recovers the closed form") {
  for (const TripleSystem& sys : {TripleSystem::HilbertBall(2), TripleSystem::Polydisc(3),
                                  TripleSystem::ProductOfBalls({2, 1})}) {
    const double val = numeric_c_constant(sys, numeric_bergman_metric0(sys));
    CHECK(val == Catch::Approx(c_constant(sys)).margin(1e-4));
  }
}

TEST_CASE("univalent radius of the identity fills the disk") {
  Poly h;
  h.terms[{1}] = cvec({1.0});
  const PluriharmonicMap f(Space::Euclidean(1), Space::Euclidean(1), h, {});
  const auto r = univalent_radius_1d(f, Complex(0.0, 0.0));
  CHECK_FALSE(r.collision);
  CHECK(r.radius > 0.97);
  CHECK(r.radius <= 1.0 + 1e-12);
}

TEST_CASE("univalent radius sees the squashing of a fold") {
  // f(z) = z + 0.6 conj(z): real-linear, injective, image inradius 0.4
  Poly h, g;
  h.terms[{1}] = cvec({1.0});
  g.terms[{1}] = cvec({0.6});
  const PluriharmonicMap f(Space::Euclidean(1), Space::Euclidean(1), h, g);
  const auto r = univalent_radius_1d(f, Complex(0.0, 0.0));
  CHECK_FALSE(r.collision);
  CHECK(std::abs(r.radius - 0.4) <= 2.0 * r.grid_cell);
}

TEST_CASE("univalent radius collapses for a two-to-one map") {
  Poly h;
  h.terms[{2}] = cvec({1.0});
  const PluriharmonicMap f(Space::Euclidean(1), Space::Euclidean(1), h, {});
  const auto r = univalent_radius_1d(f, Complex(0.0, 0.0));
  CHECK(r.collision);
  CHECK(r.radius < 0.05);
}

TEST_CASE("univalent radius demands a map of the disk") {
  Poly h;
  h.terms[{1, 0}] = cvec({0.5, 0.0});
  const PluriharmonicMap f(Space::Euclidean(2), Space::Euclidean(2), h, {});
  CHECK_THROWS_AS(univalent_radius_1d(f, Complex(0.0, 0.0)), std::invalid_argument);
}

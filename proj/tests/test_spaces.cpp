#include <catch2/catch_amalgamated.hpp>

#include "schwarz_lab/space.hpp"

using namespace schwarz_lab;

namespace {

Vec vec2(Complex a, Complex b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("norms across kinds") {
  const Vec v = vec2({3.0, 0.0}, {0.0, 4.0});
  CHECK(norm(Space::Euclidean(2), v) == Catch::Approx(5.0));
  CHECK(norm(Space::Sup(2), v) == Catch::Approx(4.0));
  CHECK(norm(Space::One(2), v) == Catch::Approx(7.0));
  CHECK(norm(Space::Lp(2, 3.0), v) == Catch::Approx(std::pow(27.0 + 64.0, 1.0 / 3.0)));

  Vec w(3);
  w << Complex(0.6, 0.0), Complex(0.0, 0.8), Complex(0.3, 0.0);
  CHECK(norm(Space::Product({2, 1}), w) == Catch::Approx(1.0));
}

TEST_CASE("real restriction") {
  const Space r = Space::RealEuclidean(2);
  CHECK(norm(r, vec2(3.0, 4.0)) == Catch::Approx(5.0));
  CHECK_THROWS_AS(norm(r, vec2({0.0, 1.0}, 0.0)), std::invalid_argument);
}

TEST_CASE("dimension mismatch is rejected") {
  Vec v(3);
  v.setZero();
  CHECK_THROWS_AS(norm(Space::Euclidean(2), v), std::invalid_argument);
}

TEST_CASE("support functionals attain the norm with unit dual norm") {
  Rng rng(42);
  for (const Space& s : {Space::Euclidean(3), Space::Sup(3), Space::One(3), Space::Lp(3, 2.5),
                         Space::Product({2, 1})}) {
    for (int i = 0; i < 50; ++i) {
      const Vec x = unit_sphere_sample(s, rng) * rng.uniform(0.2, 2.0);
      const Functional l = support_functional(s, x);
      CHECK(functional_eval(l, x).real() == Catch::Approx(norm(s, x)).margin(1e-12));
      CHECK(std::abs(functional_eval(l, x).imag()) < 1e-12);
      // |l(y)| <= ||y|| for arbitrary y
      for (int j = 0; j < 20; ++j) {
        const Vec y = unit_sphere_sample(s, rng);
        CHECK(std::abs(functional_eval(l, y)) <= 1.0 + 1e-10);
      }
    }
  }
}

TEST_CASE("support functional of zero vector throws") {
  Vec z(2);
  z.setZero();
  CHECK_THROWS_AS(support_functional(Space::Euclidean(2), z), std::invalid_argument);
}

TEST_CASE("sphere samples live on the sphere") {
  Rng rng(7);
  for (const Space& s : {Space::Euclidean(2), Space::Sup(3), Space::One(2), Space::Product({2, 2}),
                         Space::RealEuclidean(2)}) {
    for (int i = 0; i < 25; ++i)
      CHECK(norm(s, unit_sphere_sample(s, rng)) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("operator norm on euclidean pairs matches the largest singular value") {
  Mat A(2, 2);
  A << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
  const auto r = operator_norm(LinearMap{A, Space::Euclidean(2), Space::Euclidean(2)});
  CHECK_FALSE(r.lower_bound_only);
  CHECK(r.value == Catch::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
}

TEST_CASE("operator norm between mixed norms is flagged and bracketed") {
  // identity from sup-normed C^2 to euclidean C^2 has norm sqrt(2)
  const Mat I = Mat::Identity(2, 2);
  const auto r = operator_norm(LinearMap{I, Space::Sup(2), Space::Euclidean(2)});
  CHECK(r.lower_bound_only);
  CHECK(r.value <= std::sqrt(2.0) + 1e-9);
  CHECK(r.value >= std::sqrt(2.0) - 1e-6);
}

TEST_CASE("operator norm rejects shape mismatch") {
  const Mat I = Mat::Identity(2, 2);
  CHECK_THROWS_AS(operator_norm(LinearMap{I, Space::Euclidean(3), Space::Euclidean(2)}),
                  std::invalid_argument);
}

TEST_CASE("rng is deterministic and roughly standard") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng g(5);
  double mean = 0.0, var = 0.0;
  const int n = 20000;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = g.gaussian();
    mean += xs[i];
  }
  mean /= n;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= n;
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == Catch::Approx(1.0).margin(0.05));
}

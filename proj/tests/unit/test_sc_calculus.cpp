#include <doctest.h>

#include <cmath>

#include "rbpdn/sc_calculus.hpp"
#include "support/test_util.hpp"

using namespace rbpdn;

namespace {

// Independent inverse of omega_star by bisection on [0, 1).
double bisect_omega_star_inv(double s) {
  double lo = 0.0;
  double hi = std::nextafter(1.0, 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (-mid - std::log1p(-mid) < s) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("omega basic values") {
  CHECK(omega(0.0) == 0.0);
  CHECK(omega(1.0) == doctest::Approx(0.3068528194400547).epsilon(1e-14));
  CHECK(omega(0.2) == doctest::Approx(0.2 - std::log(1.2)).epsilon(1e-14));
  CHECK_THROWS_AS(omega(-1.0), std::domain_error);
  // strictly increasing on [0, inf)
  double prev = omega(0.0);
  for (double t = 0.25; t <= 10.0; t += 0.25) {
    const double cur = omega(t);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("omega_star basic values") {
  CHECK(omega_star(0.0) == 0.0);
  CHECK(omega_star(0.5) ==
        doctest::Approx(0.19314718055994531).epsilon(1e-14));
  CHECK(omega_star(0.9) ==
        doctest::Approx(1.4025850929940457).epsilon(1e-14));
  CHECK_THROWS_AS(omega_star(1.0), std::domain_error);
  CHECK_THROWS_AS(omega_star(-0.1), std::domain_error);
}

TEST_CASE("conjugacy identity on a dense grid") {
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.01 * i;
    const double tau = omega_prime(t);
    CHECK(std::abs(omega(t) - (t * tau - omega_star(tau))) <= 1e-12);
  }
}

TEST_CASE("Fenchel-Young inequality") {
  auto rng = testing::make_rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double t = testing::uniform(rng, 0.0, 50.0);
    const double tau = testing::uniform(rng, 0.0, 0.99);
    CHECK(omega(t) + omega_star(tau) >= tau * t - 1e-12);
  }
}

TEST_CASE("omega_star_inv roundtrips and matches the bisection oracle") {
  CHECK(omega_star_inv(0.0) == 0.0);
  CHECK(omega_star_inv(0.1931471805) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(omega_star_inv(1.4025850929) == doctest::Approx(0.9).epsilon(1e-9));
  CHECK_THROWS_AS(omega_star_inv(-1e-9), std::domain_error);

  auto rng = testing::make_rng(11);
  for (int i = 0; i < 200; ++i) {
    const double s = testing::uniform(rng, 0.0, 20.0);
    const double t = omega_star_inv(s);
    CHECK(t >= 0.0);
    CHECK(t < 1.0);
    CHECK(std::abs(t - bisect_omega_star_inv(s)) <= 1e-12);
  }
  // Direct-roundtrip within the well-conditioned range; above s ~ 13.4 the
  // derivative of omega_star exceeds 1e10/ulp and no double can represent
  // the root to 1e-10 in function space.
  for (int i = 0; i <= 128; ++i) {
    const double s = 12.8 * i / 128.0;
    CHECK(std::abs(omega_star(omega_star_inv(s)) - s) <= 1e-10);
  }
  // Image points cover the full range: s = omega_star(t) roundtrips through
  // the inverse at machine level.
  for (int i = 1; i <= 200; ++i) {
    const double t = i / 201.0;
    const double s = omega_star(t * t * t);  // cluster near 0 and spread
    const double back = omega_star(omega_star_inv(s));
    CHECK(std::abs(back - s) <= 1e-10);
  }
  const double s_big = omega_star(1.0 - 7.5e-10);  // about 20
  CHECK(std::abs(omega_star(omega_star_inv(s_big)) - s_big) <= 1e-10);
  // monotone in s
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double t = omega_star_inv(0.2 * i);
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("weighted norms") {
  Matrix I2 = Matrix::Identity(2, 2);
  SpdOperator id(I2);
  Vector u(2);
  u << 3.0, 4.0;
  CHECK(id.norm(u) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(id.dual_norm(u) == doctest::Approx(5.0).epsilon(1e-12));

  Matrix D = Vector((Vector(2) << 4.0, 1.0).finished()).asDiagonal();
  SpdOperator diag(D);
  Vector ones = Vector::Ones(2);
  CHECK(diag.norm(ones) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(diag.dual_norm(ones) ==
        doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));

  CHECK(id.norm(Vector::Zero(2)) == 0.0);
  CHECK_THROWS_AS(id.norm(Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("SpdOperator rejects asymmetric matrices") {
  Matrix M(2, 2);
  M << 1.0, 0.5, 0.2, 1.0;
  CHECK_THROWS_AS(SpdOperator{M}, std::invalid_argument);
}

TEST_CASE("norm/dual-norm pairing on random SPD matrices") {
  auto rng = testing::make_rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 49);
    Matrix H = testing::random_spd(rng, n);
    SpdOperator op(H);
    const Vector u = testing::random_vector(rng, n);
    const Vector v = testing::random_vector(rng, n);
    // |<u, v>| <= ||u||_H ||v||*_H
    CHECK(std::abs(u.dot(v)) <= op.norm(u) * op.dual_norm(v) * (1.0 + 1e-10));
    // dual norm of H u collapses back to the primal norm of u
    const double lhs = op.dual_norm(Vector(H * u));
    CHECK(lhs == doctest::Approx(op.norm(u)).epsilon(1e-8));
  }
}

TEST_CASE("operator-form SpdOperator agrees with dense form") {
  auto rng = testing::make_rng(33);
  const Eigen::Index n = 17;
  Matrix H = testing::random_spd(rng, n, 0.5);
  SpdOperator dense(H);
  SpdOperator op(n, [&H](const Vector& in, Vector& out) {
    out.noalias() = H * in;
  });
  CHECK(!op.is_dense());
  for (int trial = 0; trial < 10; ++trial) {
    const Vector v = testing::random_vector(rng, n);
    CHECK(op.norm(v) == doctest::Approx(dense.norm(v)).epsilon(1e-12));
    CHECK(op.dual_norm(v) == doctest::Approx(dense.dual_norm(v)).epsilon(1e-9));
  }
}

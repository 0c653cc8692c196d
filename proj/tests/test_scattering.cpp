#include <doctest.h>

#include <random>

#include "qgraph/scattering.hpp"

using namespace qgraph;

namespace {

MetricGraph interval(double l = 1.0) { return MetricGraph::build(2, {{0, 1, l}}); }
MetricGraph star() { return MetricGraph::build(4, {{0, 1, 1.0}, {0, 2, 1.3}, {0, 3, 1.7}}); }

}  // namespace

TEST_CASE("Dirichlet S is -1 for all k") {
  auto g = interval();
  ScatteringModel m(g, dirichlet(g));
  for (cplx k : {cplx(0.0), cplx(1.0), cplx(-3.0, 0.2), cplx(50.0)}) {
    CHECK((m.S(k) + CMatrix::Identity(2, 2)).norm() < 1e-14);
  }
}

TEST_CASE("Kirchhoff at a degree-2 vertex transmits fully") {
  auto g = MetricGraph::build(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  ScatteringModel m(g, kirchhoff(g));
  const CMatrix S = m.S(1.7);
  // ends 2 (terminal of edge 0) and 1 (initial of edge 1) meet at vertex 1
  CHECK(std::abs(S(2, 2)) < 1e-14);
  CHECK(std::abs(S(1, 2) - 1.0) < 1e-14);
  CHECK(std::abs(S(2, 1) - 1.0) < 1e-14);
}

TEST_CASE("star Kirchhoff vertex matrix") {
  auto g = MetricGraph::build(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  ScatteringModel m(g, kirchhoff(g));
  const CMatrix S = m.S(2.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double expect = (i == j ? -1.0 : 0.0) + 2.0 / 3.0;
      CHECK(std::abs(S(i, j) - expect) < 1e-14);
    }
  }
  for (int j = 3; j < 6; ++j) CHECK(std::abs(S(j, j) - 1.0) < 1e-14);
}

TEST_CASE("Robin interval eigenvalues of S at k = 1") {
  auto g = interval(4.0);
  ScatteringModel m(g, robin(g, {1.0, 1.0}));
  const CMatrix S = m.S(1.0);
  CHECK((S - cplx(0.0, 1.0) * CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((m.S_direct(1.0) - S).norm() < 1e-14);
}

TEST_CASE("unitarity, inverse relation and the two S' forms") {
  auto g = star();
  ScatteringModel m(g, kirchhoff(g, {1.0, -0.5, 0.0, 2.0}));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-20.0, 20.0), v(-0.5, 0.5);
  for (int i = 0; i < 100; ++i) {
    const double k = u(rng);
    const CMatrix S = m.S(k);
    CHECK(identity_deviation(S * S.adjoint()) < 1e-12);
    const CMatrix U = m.U(k);
    CHECK(identity_deviation(U * U.adjoint()) < 1e-12);
    CHECK(identity_deviation(U * m.U_inverse(k)) < 1e-12);
    const cplx z(u(rng), v(rng));
    CHECK(identity_deviation(m.S(z) * m.S(-z)) < 1e-10);
    CHECK((m.S_prime(z) - m.S_prime_from_inverse(z)).norm() < 1e-10);
  }
}

TEST_CASE("S' against central differences") {
  auto g = interval(4.0);
  ScatteringModel m(g, robin(g, {1.0, 1.0}));
  const double h = 1e-6;
  const CMatrix fd = (m.S(2.0 + h) - m.S(2.0 - h)) / (2 * h);
  CHECK((fd - m.S_prime(2.0)).norm() / m.S_prime(2.0).norm() < 1e-6);

  auto s = star();
  ScatteringModel k(s, kirchhoff(s));
  CHECK(k.S_prime(3.0).norm() == 0.0);

  // |S'| decays like 1/|k|^2
  const double a = m.S_prime(10.0).norm(), b = m.S_prime(20.0).norm();
  CHECK(a / b == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("Lambda and D") {
  auto g = star();
  ScatteringModel m(g, kirchhoff(g));
  CHECK((m.Lambda(3.0) - kI * m.D()).norm() < 1e-14);
  CHECK(m.D().trace().real() == doctest::Approx(2.0 * g.total_length()));
  CHECK((m.T(1.0) * m.T(-1.0) - CMatrix::Identity(6, 6)).norm() < 1e-14);
}

TEST_CASE("limits and expansions") {
  auto g = interval();
  ScatteringModel n(g, neumann(g));
  CHECK((n.S_infinity() - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((n.S_zero() - CMatrix::Identity(2, 2)).norm() < 1e-14);

  auto g4 = interval(4.0);
  ScatteringModel r(g4, robin(g4, {1.0, 1.0}));
  const double margin = 10.0;
  for (double phi : {0.3, 1.1, 2.5, 4.0}) {
    const cplx k = 10.0 * std::polar(1.0, phi);
    CHECK((r.S(k) - r.S_series_high(k, 12)).norm() < std::pow(0.1, 13) * margin);
  }
  CHECK((r.S_infinity() - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((r.S_zero() + CMatrix::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("duality S(A,B;k) = -S(-B,A;1/k)") {
  auto g = star();
  const auto bc = kirchhoff(g, {1.0, -0.5, 0.0, 2.0});
  ScatteringModel m(g, bc), dual(g, swapped(bc));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 20.0);
  for (int i = 0; i < 20; ++i) {
    const double k = (i % 2 ? 1 : -1) * u(rng);
    CHECK((m.S(k) + dual.S(1.0 / k)).norm() < 1e-10);
  }
}

TEST_CASE("norm bounds on the imaginary axis") {
  auto g = interval(4.0);
  ScatteringModel m(g, robin(g, {1.0, 1.0}));
  for (double kappa : {0.1, 0.5, 0.9}) {
    CHECK(operator_norm(m.U(cplx(0.0, kappa))) <= m.U_bound(kappa) + 1e-10);
    CHECK(operator_norm(m.S(cplx(0.3, kappa))) <= m.S_bound_small(kappa) + 1e-10);
  }
  for (double kappa : {1.5, 3.0, 10.0}) {
    CHECK(operator_norm(m.S(cplx(-0.7, kappa))) <= m.S_bound_large(kappa) + 1e-10);
  }
}

TEST_CASE("pole exclusion") {
  auto g = interval(4.0);
  ScatteringModel m(g, robin(g, {1.0, 1.0}));
  CHECK(m.near_pole(cplx(0.0, 1.0 + 1e-8), m.exclusion_radius()));
  CHECK_THROWS_AS(m.S(cplx(0.0, 1.0)), Error);
  CHECK_THROWS_AS(m.S(cplx(0.0, -1.0)), Error);
  CHECK_NOTHROW(m.S(cplx(0.0, 1.1)));
}

TEST_CASE("transition mask follows locality") {
  auto g = MetricGraph::build(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  ScatteringModel m(g, kirchhoff(g));
  auto mask = m.transition_mask();
  for (int j = 0; j < 6; ++j) {
    for (int j2 = 0; j2 < 6; ++j2) {
      CHECK(mask.allowed(j, j2) == (g.end_vertex(j2) == g.end_vertex(g.omega(j))));
    }
  }
  ScatteringModel d(g, dirichlet(g));
  auto dm = d.transition_mask();
  for (int j = 0; j < 6; ++j) {
    for (int j2 = 0; j2 < 6; ++j2) CHECK(dm.allowed(j, j2) == (j2 == g.omega(j)));
  }
}

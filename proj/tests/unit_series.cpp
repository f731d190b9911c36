#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <sijc/oracle.hpp>
#include <sijc/series.hpp>

using namespace sijc;

namespace {

double trig(FKind kind, bool first, double arg) {
  const bool sine = first ? (kind == FKind::sc || kind == FKind::ss)
                          : (kind == FKind::cs || kind == FKind::ss);
  return sine ? std::sin(arg) : std::cos(arg);
}

// Independent value by adaptive quadrature of the defining integral.
double by_quadrature(FKind kind, double t, double x, double w) {
  auto f = [&](double xi) {
    Matrix m(1, 1);
    m(0, 0) = trig(kind, true, x * xi) * trig(kind, false, w * xi);
    return m;
  };
  return integrate_matrix_function(f, 0.0, t, 1e-14)(0, 0).real();
}

}  // namespace

TEST_CASE("cos-cos kernel reproduces the closed two-frequency value") {
  // int_0^t cos(2s) cos(3s) ds = sin(t)/2 + sin(5t)/10 at x=2, w=3.
  const double t = 0.7;
  const SeriesResult r = f_kernel(FKind::cc, t, 2.0, 3.0);
  const double exact = 0.5 * (std::sin(t) + std::sin(5.0 * t) / 5.0);
  REQUIRE(r.value == Catch::Approx(exact).margin(1e-14));
  REQUIRE(r.bound <= 1e-13);
}

TEST_CASE("all four kernels match adaptive quadrature") {
  const double cases[][3] = {
      {2.0, 3.0, 0.7},  {0.5, 4.0, 2.5}, {3.3, 0.2, 3.0},
      {9.0, 1.0, 1.1},  {0.0, 2.0, 1.3}, {2.0, 0.0, 1.3},
      {1.0, 1.0, 4.0},  {7.5, 7.5, 1.3},
  };
  for (const auto& c : cases) {
    const double x = c[0], w = c[1], t = c[2];
    for (FKind kind : {FKind::cc, FKind::cs, FKind::sc, FKind::ss}) {
      const SeriesResult r = f_kernel(kind, t, x, w);
      const double q = by_quadrature(kind, t, x, w);
      INFO("kind " << static_cast<int>(kind) << " x=" << x << " w=" << w
                   << " t=" << t);
      REQUIRE(r.value == Catch::Approx(q).margin(1e-12));
      REQUIRE(std::abs(r.value - q) <= r.bound + 1e-12);
    }
  }
}

TEST_CASE("kernels have definite parity in t") {
  const double x = 1.7, w = 0.9, t = 2.3;
  REQUIRE(f_kernel(FKind::cc, -t, x, w).value ==
          -f_kernel(FKind::cc, t, x, w).value);
  REQUIRE(f_kernel(FKind::ss, -t, x, w).value ==
          -f_kernel(FKind::ss, t, x, w).value);
  REQUIRE(f_kernel(FKind::cs, -t, x, w).value ==
          f_kernel(FKind::cs, t, x, w).value);
  REQUIRE(f_kernel(FKind::sc, -t, x, w).value ==
          f_kernel(FKind::sc, t, x, w).value);
}

TEST_CASE("kernels vanish at t = 0 exactly") {
  for (FKind kind : {FKind::cc, FKind::cs, FKind::sc, FKind::ss}) {
    const SeriesResult r = f_kernel(kind, 0.0, 3.0, 4.0);
    REQUIRE(r.value == 0.0);
  }
}

TEST_CASE("panel count follows the argument scale") {
  const SeriesResult small = f_kernel(FKind::cc, 1.0, 1.0, 0.5);
  REQUIRE(small.panels == 1);
  const SeriesResult big = f_kernel(FKind::cc, 5.0, 4.2, 1.0);
  REQUIRE(big.panels == static_cast<Index>(std::ceil(4.2 * 5.0 / 2.0)));
}

TEST_CASE("large arguments keep their accuracy through panelization") {
  // |x| t = 21: a direct double Taylor sum would lose ~9 digits here.
  const double x = 4.2, w = 1.43, t = 5.0;
  for (FKind kind : {FKind::cc, FKind::cs, FKind::sc, FKind::ss}) {
    const SeriesResult r = f_kernel(kind, t, x, w);
    const double q = by_quadrature(kind, t, x, w);
    REQUIRE(r.value == Catch::Approx(q).margin(1e-13));
    REQUIRE(r.bound <= 1e-12);
  }
}

TEST_CASE("argument budget is enforced") {
  try {
    f_kernel(FKind::cc, 10.0, 5.0, 1.0);  // |x| t = 50
    FAIL("must throw");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::convergence_budget_exceeded);
  }
  REQUIRE_THROWS_AS(f_kernel(FKind::ss, 10.0, 1.0, 4.1), error);
  REQUIRE_THROWS_AS(f_kernel(FKind::cc, 1.0, 1.0, 1.0, 4), error);
}

TEST_CASE("paired kernels combine the shifted arguments") {
  const double t = 1.2, p = 2.0, q = 0.7, r = 1.1;
  for (int sign : {+1, -1}) {
    const SeriesResult g = aux_g(FKind::cs, sign, t, p, q, r);
    const double lo = f_kernel(FKind::cs, t, p - q, r).value;
    const double hi = f_kernel(FKind::cs, t, p + q, r).value;
    REQUIRE(g.value == lo + sign * hi);
  }
  REQUIRE_THROWS_AS(aux_g(FKind::cc, 0, 1.0, 1.0, 1.0, 1.0), error);
}

TEST_CASE("difference combinations survive near-cancellation") {
  // p - q close to zero exercises the small-argument kernel branch.
  const double t = 3.0, p = 1.0000001, q = 1.0, r = 0.5;
  const SeriesResult g = aux_g(FKind::cc, -1, t, p, q, r);
  auto f = [&](double xi) {
    Matrix m(1, 1);
    m(0, 0) = (std::cos((p - q) * xi) - std::cos((p + q) * xi)) *
              std::cos(r * xi);
    return m;
  };
  const double ref = integrate_matrix_function(f, 0.0, t, 1e-14)(0, 0).real();
  REQUIRE(g.value == Catch::Approx(ref).margin(1e-12));
}

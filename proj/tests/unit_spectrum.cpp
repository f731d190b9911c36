#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include <sijc/spectrum.hpp>

using namespace sijc;

namespace {

OperatorBundle harmonic_bundle(double alpha, double delta, Index N,
                               double hbar = 1.0) {
  return build_operators(
      build_spectrum(ShapeInvariantModel::harmonic(1.0, hbar), N),
      JCParams(alpha, delta, hbar));
}

}  // namespace

TEST_CASE("lowest pair splits by the detuned coupling") {
  const auto b = harmonic_bundle(0.2, 0.3, 6);
  const DressedPair d = dressed_pair(b, 0);

  // E = 1, alpha sqrt(E^2 + beta^2) = sqrt(0.04 + 0.09) = sqrt(0.13)
  const double split = std::sqrt(0.13);
  REQUIRE(d.pair_energy == 1.0);
  REQUIRE(d.energy_plus == Catch::Approx(1.0 + split).epsilon(1e-15));
  REQUIRE(d.energy_minus == Catch::Approx(1.0 - split).epsilon(1e-15));
  REQUIRE(d.lambda_plus == Catch::Approx(split).epsilon(1e-15));
  REQUIRE(d.lambda_minus == Catch::Approx(-split).epsilon(1e-15));
}

TEST_CASE("pair states are exact eigenvectors of the full matrix") {
  const auto b = harmonic_bundle(0.2, 0.3, 6);
  for (Index m = 0; m + 1 < b.N; ++m) {
    const DressedPair d = dressed_pair(b, m);
    for (Branch br : {Branch::plus, Branch::minus}) {
      const Vector v = dressed_state(b, m, br);
      const double e = br == Branch::plus ? d.energy_plus : d.energy_minus;
      REQUIRE((b.H_total * v - e * v).norm() <= 1e-14 * (1.0 + std::abs(e)));
      REQUIRE(std::abs(v.norm() - 1.0) <= 1e-15);
    }
  }
}

TEST_CASE("branch states of one pair are orthogonal to the last bit") {
  const auto b = harmonic_bundle(0.17, 0.41, 8);
  for (Index m = 0; m + 1 < b.N; ++m) {
    const Vector p = dressed_state(b, m, Branch::plus);
    const Vector q = dressed_state(b, m, Branch::minus);
    const Complex overlap = p.adjoint() * q;
    REQUIRE(overlap == Complex(0.0, 0.0));
  }
}

TEST_CASE("amplitude ratios are reciprocal across branches") {
  const auto b = harmonic_bundle(0.2, -0.7, 6);
  const DressedPair d = dressed_pair(b, 2);
  const double rho_plus = d.c_upper_plus / d.c_lower_plus;
  const double rho_minus = d.c_upper_minus / d.c_lower_minus;
  REQUIRE(rho_plus * rho_minus == Catch::Approx(1.0).epsilon(1e-14));
  REQUIRE(d.c_lower_plus > 0.0);
  REQUIRE(d.c_lower_minus > 0.0);
}

TEST_CASE("resonant pair data collapses to the exact split") {
  const auto b = harmonic_bundle(0.25, 0.0, 8);
  for (Index m = 0; m + 1 < b.N; ++m) {
    const DressedPair d = dressed_pair(b, m);
    const double E = b.energy(m + 1);
    REQUIRE(d.energy_plus == (1.0 + 0.25) * E);
    REQUIRE(d.energy_minus == (1.0 - 0.25) * E);
    REQUIRE(d.lambda_plus == 0.25 * E);
    REQUIRE(d.c_lower_plus == M_SQRT1_2);
    REQUIRE(d.c_upper_plus == M_SQRT1_2);
    REQUIRE(d.c_lower_minus == M_SQRT1_2);
    REQUIRE(d.c_upper_minus == M_SQRT1_2);
  }
}

TEST_CASE("pair index outside the coupled range is rejected") {
  const auto b = harmonic_bundle(0.2, 0.0, 4);
  try {
    dressed_pair(b, 3);  // e_3 is the uncoupled edge
    FAIL("must throw");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::block_out_of_range);
    REQUIRE(e.index() == 3);
  }
  REQUIRE_THROWS_AS(dressed_pair(b, -1), error);
  REQUIRE_THROWS_AS(dressed_state(b, 7, Branch::plus), error);
}

TEST_CASE("singlets read their energies off the full matrix") {
  const auto b = harmonic_bundle(0.2, 0.3, 5);
  const EigenPair g = ground_singlet(b);
  const EigenPair e = edge_singlet(b);
  REQUIRE(g.energy == Catch::Approx(-0.3).epsilon(1e-15));  // -hbar delta
  REQUIRE(e.energy == Catch::Approx(0.3).epsilon(1e-15));
  REQUIRE((b.H_total * g.state - g.energy * g.state).norm() <= 1e-15);
  REQUIRE((b.H_total * e.state - e.energy * e.state).norm() <= 1e-15);
}

TEST_CASE("assembled eigensystem matches dense diagonalization") {
  const auto s = build_spectrum(ShapeInvariantModel::self_similar(1.0, 0.8), 7);
  const auto b = build_operators(s, JCParams(0.3, -0.2));
  const auto eigs = dressed_spectrum(b);
  REQUIRE(eigs.size() == 14);

  std::vector<double> closed;
  for (const auto& p : eigs) {
    closed.push_back(p.energy);
    REQUIRE((b.H_total * p.state - p.energy * p.state).norm() <= 1e-13);
  }
  std::sort(closed.begin(), closed.end());

  Eigen::SelfAdjointEigenSolver<Matrix> es(b.H_total);
  for (Index k = 0; k < 14; ++k)
    REQUIRE(closed[static_cast<std::size_t>(k)] ==
            Catch::Approx(es.eigenvalues()(k)).margin(1e-13));
}

TEST_CASE("mode-frequency parametrization agrees with the generic pair") {
  // omega = 1, omega0 = 0.7, alpha = 0.2 corresponds to delta = 0.3.
  const HOLimitPair h = ho_limit_eigensystem(1.0, 0.7, 0.2, 0);
  REQUIRE(h.delta_m == Catch::Approx(1.5).epsilon(1e-14));
  const double root = std::sqrt(3.25);
  REQUIRE(h.gamma_plus == Catch::Approx(root - 1.5).epsilon(1e-13));
  REQUIRE(h.gamma_minus == Catch::Approx(root + 1.5).epsilon(1e-13));
  REQUIRE(h.gamma_plus * h.gamma_minus == Catch::Approx(1.0).epsilon(1e-14));
  REQUIRE(h.energy_plus == Catch::Approx(1.0 + std::sqrt(0.13)).epsilon(1e-14));
  REQUIRE(h.energy_minus ==
          Catch::Approx(1.0 - std::sqrt(0.13)).epsilon(1e-14));

  const auto b = harmonic_bundle(0.2, 0.3, 8);
  for (Index m = 0; m + 1 < b.N; ++m) {
    const DressedPair d = dressed_pair(b, m);
    const HOLimitPair hm = ho_limit_eigensystem(1.0, 0.7, 0.2, m);
    REQUIRE(hm.energy_plus ==
            Catch::Approx(d.energy_plus).epsilon(1e-13));
    REQUIRE(hm.energy_minus ==
            Catch::Approx(d.energy_minus).epsilon(1e-13));
    REQUIRE(hm.gamma_plus ==
            Catch::Approx(d.c_upper_plus / d.c_lower_plus).epsilon(1e-12));
    REQUIRE(hm.gamma_minus ==
            Catch::Approx(d.c_upper_minus / d.c_lower_minus).epsilon(1e-12));
  }
}

TEST_CASE("mode-frequency parametrization validates inputs") {
  REQUIRE_THROWS_AS(ho_limit_eigensystem(0.0, 0.7, 0.2, 0), error);
  REQUIRE_THROWS_AS(ho_limit_eigensystem(1.0, 0.7, 0.0, 0), error);
  REQUIRE_THROWS_AS(ho_limit_eigensystem(1.0, 0.7, 0.2, -1), error);
}

#include <catch2/catch_amalgamated.hpp>

#include <sijc/algebra.hpp>

using namespace sijc;

TEST_CASE("harmonic ladder accumulates uniform gaps") {
  const auto s = build_spectrum(ShapeInvariantModel::harmonic(1.0), 5);
  REQUIRE(s.dim == 5);
  const double expected[] = {0.0, 1.0, 2.0, 3.0, 4.0};
  for (int m = 0; m < 5; ++m) REQUIRE(s.energy(m) == expected[m]);
}

TEST_CASE("self-similar ladder follows the geometric sum") {
  const auto s = build_spectrum(ShapeInvariantModel::self_similar(1.0, 0.5), 4);
  REQUIRE(s.energy(0) == 0.0);
  REQUIRE(s.energy(1) == 1.0);
  REQUIRE(s.energy(2) == 1.5);
  REQUIRE(s.energy(3) == 1.75);
}

TEST_CASE("explicit gaps are used verbatim and validated") {
  const auto s = build_spectrum(
      ShapeInvariantModel::explicit_remainders({0.5, 2.0, 0.25}), 4);
  REQUIRE(s.energy(1) == 0.5);
  REQUIRE(s.energy(2) == 2.5);
  REQUIRE(s.energy(3) == 2.75);

  try {
    build_spectrum(ShapeInvariantModel::explicit_remainders({1.0, -0.2}), 3);
    FAIL("negative gap must throw");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::non_positive_remainder);
    REQUIRE(e.index() == 2);
  }

  // List shorter than the requested ladder.
  REQUIRE_THROWS_AS(
      build_spectrum(ShapeInvariantModel::explicit_remainders({1.0}), 3),
      error);
}

TEST_CASE("ladder needs at least two levels") {
  try {
    build_spectrum(ShapeInvariantModel::harmonic(1.0), 1);
    FAIL("dim 1 must throw");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::dimension_too_small);
  }
}

TEST_CASE("model constructors validate their parameters") {
  REQUIRE_THROWS_AS(ShapeInvariantModel::harmonic(0.0), error);
  REQUIRE_THROWS_AS(ShapeInvariantModel::harmonic(-1.0), error);
  REQUIRE_THROWS_AS(ShapeInvariantModel::self_similar(0.0, 0.5), error);
  REQUIRE_THROWS_AS(ShapeInvariantModel::self_similar(1.0, -0.5), error);
  REQUIRE_THROWS_AS(JCParams(0.0, 0.1), error);
  REQUIRE_THROWS_AS(JCParams(-0.2, 0.1), error);
  REQUIRE_THROWS_AS(JCParams(0.2, 0.1, 0.0), error);
}

TEST_CASE("derived coupling constants") {
  const JCParams p(0.1, 0.3, 1.0);
  REQUIRE(p.beta() == Catch::Approx(3.0).epsilon(1e-15));
  REQUIRE(p.gamma() == Catch::Approx(4.0 * 0.01 * 3.0).epsilon(1e-15));
  const JCParams r(0.1, 0.0);
  REQUIRE(r.beta() == 0.0);
  REQUIRE(r.gamma() == 0.0);
}

TEST_CASE("operator bundle entries carry the stored energies") {
  const auto s = build_spectrum(ShapeInvariantModel::harmonic(1.0), 5);
  const auto b = build_operators(s, JCParams(0.1, 0.0));
  const Index N = 5;

  for (Index m = 0; m < N; ++m)
    REQUIRE(b.H1(m, m).real() == s.energy(m));
  for (Index m = 0; m + 1 < N; ++m)
    REQUIRE(b.H2(m, m).real() == s.energy(m + 1));
  REQUIRE(b.H2(N - 1, N - 1) == Complex(0.0, 0.0));  // truncated product edge

  for (Index m = 0; m + 1 < N; ++m) {
    REQUIRE(b.Bplus(m + 1, m).real() == std::sqrt(s.energy(m + 1)));
    REQUIRE(b.Qdagger(m + 1, m) == Complex(1.0, 0.0));
    REQUIRE(b.sqrtTBminus(m, m + 1).real() == std::pow(s.energy(m + 1), 0.25));
    REQUIRE(b.X(m, m + 1).real() == s.energy(m + 1));
  }
  REQUIRE((b.Bminus - b.Bplus.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  // The assembled diagonal equals the truncated ladder product.
  const Matrix prod = b.Bminus * b.Bplus;
  REQUIRE((prod - b.H2).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("coupling block matches the closed form") {
  const auto s = build_spectrum(ShapeInvariantModel::harmonic(1.0), 4);

  SECTION("on resonance") {
    const auto b = build_operators(s, JCParams(0.1, 0.0));
    REQUIRE(b.H_int(b.e(0), b.e(0)) == Complex(0.0, 0.0));
    REQUIRE(b.H_int(b.e(0), b.g(1)).real() == Catch::Approx(0.1));
    REQUIRE(b.H_int(b.g(1), b.e(0)).real() == Catch::Approx(0.1));
    REQUIRE(b.H_int(b.g(1), b.g(1)) == Complex(0.0, 0.0));
  }

  SECTION("off resonance") {
    const auto b = build_operators(s, JCParams(0.1, 0.3));
    const double ab = 0.1 * (0.3 / 0.1);  // alpha * beta = hbar * delta
    REQUIRE(b.H_int(b.e(0), b.e(0)).real() == Catch::Approx(ab));
    REQUIRE(b.H_int(b.g(1), b.g(1)).real() == Catch::Approx(-ab));
    REQUIRE(b.H_int(b.e(1), b.g(2)).real() == Catch::Approx(0.1 * 2.0));
  }
}

TEST_CASE("doubled-space operators have the advertised block structure") {
  const auto s = build_spectrum(ShapeInvariantModel::self_similar(1.0, 0.5), 6);
  const auto b = build_operators(s, JCParams(0.2, 0.3));
  const Index N = 6;

  REQUIRE((b.S_i - b.S_i.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((b.H_int - b.H_int.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((b.H_total - b.H_total.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  REQUIRE((b.S_i.block(0, 0, N, N)).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((b.S_i.block(N, N, N, N)).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((b.S_i.block(0, N, N, N) - b.X).cwiseAbs().maxCoeff() == 0.0);

  REQUIRE((b.H_o.block(0, 0, N, N) - b.H2).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE((b.H_o.block(N, N, N, N) - b.H1).cwiseAbs().maxCoeff() == 0.0);
  // Re-subtracting the addends leaves one rounding per diagonal entry.
  REQUIRE((b.H_total - b.H_o - b.H_int).cwiseAbs().maxCoeff() <= 1e-15);

  // One-sector shift identity: H2 X == X H1 entrywise, exactly.
  const Matrix lhs = b.H2 * b.X;
  const Matrix rhs = b.X * b.H1;
  REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sigma3 splits the doubled space by sector") {
  const Matrix s3 = sigma3_matrix(3);
  REQUIRE(s3.rows() == 6);
  for (Index m = 0; m < 3; ++m) {
    REQUIRE(s3(m, m) == Complex(1.0, 0.0));
    REQUIRE(s3(3 + m, 3 + m) == Complex(-1.0, 0.0));
  }
  REQUIRE(s3.cwiseAbs().sum() == 6.0);
}

TEST_CASE("spectral_function maps diagonals and rejects everything else") {
  const auto s = build_spectrum(ShapeInvariantModel::harmonic(2.0), 4);
  const auto b = build_operators(s, JCParams(0.1, 0.0));

  const Matrix root = spectral_function(
      b.H1, [](Complex z) { return std::sqrt(z); });
  for (Index m = 0; m < 4; ++m)
    REQUIRE(root(m, m).real() == Catch::Approx(std::sqrt(s.energy(m))));

  try {
    spectral_function(b.X, [](Complex z) { return z; });
    FAIL("non-diagonal input must throw");
  } catch (const error& e) {
    REQUIRE(e.code() == errc::not_diagonal);
  }

  REQUIRE_THROWS_AS(
      spectral_function(Matrix::Zero(2, 3), [](Complex z) { return z; }),
      error);
}

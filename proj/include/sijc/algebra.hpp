#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include <sijc/types.hpp>

namespace sijc {

/// Ladder descriptor. A field system enters only through its sequence of
/// positive level gaps R_k, so three constructions cover everything the
/// library computes with:
///   harmonic(omega):        R_k = hbar * omega for all k
///   self_similar(r1, q):    R_k = r1 * q^(k-1), geometric gaps
///   explicit_remainders(v): R_k = v[k-1], finite user-supplied list
struct ShapeInvariantModel {
  enum class Kind { harmonic, self_similar, explicit_list };

  Kind kind = Kind::harmonic;
  double omega = 0.0;
  double hbar = 1.0;
  double r1 = 0.0;
  double q = 0.0;
  std::vector<double> remainders;

  static ShapeInvariantModel harmonic(double omega, double hbar = 1.0) {
    if (!(omega > 0.0))
      throw error(errc::invalid_frequency, "harmonic model requires omega > 0");
    if (!(hbar > 0.0))
      throw error(errc::validation_error, "hbar must be positive");
    ShapeInvariantModel m;
    m.kind = Kind::harmonic;
    m.omega = omega;
    m.hbar = hbar;
    return m;
  }

  static ShapeInvariantModel self_similar(double r1, double q) {
    if (!(r1 > 0.0))
      throw error(errc::non_positive_remainder,
                  "self-similar model requires r1 > 0", 1);
    if (!(q > 0.0))
      throw error(errc::validation_error,
                  "self-similar model requires q > 0");
    ShapeInvariantModel m;
    m.kind = Kind::self_similar;
    m.r1 = r1;
    m.q = q;
    return m;
  }

  static ShapeInvariantModel explicit_remainders(std::vector<double> v) {
    ShapeInvariantModel m;
    m.kind = Kind::explicit_list;
    m.remainders = std::move(v);
    return m;
  }

  /// Gap R_k above level k-1, k >= 1. Validity of the value itself is
  /// checked by build_spectrum so the error can carry the ladder index.
  double remainder(Index k) const {
    switch (kind) {
      case Kind::harmonic:
        return hbar * omega;
      case Kind::self_similar:
        return r1 * std::pow(q, static_cast<double>(k - 1));
      case Kind::explicit_list:
        if (k < 1 || k > static_cast<Index>(remainders.size()))
          throw error(errc::validation_error,
                      "explicit remainder list shorter than requested ladder",
                      static_cast<long>(k));
        return remainders[static_cast<std::size_t>(k - 1)];
    }
    throw error(errc::validation_error, "corrupt model kind");
  }
};

/// Cumulative level energies of a truncated ladder.
/// Invariants: energies[0] == 0 exactly, energies strictly increasing.
struct LadderSpectrum {
  std::vector<double> energies;  // size dim
  Index dim = 0;

  double energy(Index m) const { return energies[static_cast<std::size_t>(m)]; }
};

inline LadderSpectrum build_spectrum(const ShapeInvariantModel& model,
                                     Index dim) {
  if (dim < 2)
    throw error(errc::dimension_too_small,
                "ladder needs at least two levels", static_cast<long>(dim));
  LadderSpectrum s;
  s.dim = dim;
  s.energies.resize(static_cast<std::size_t>(dim));
  s.energies[0] = 0.0;
  for (Index k = 1; k < dim; ++k) {
    const double rk = model.remainder(k);
    if (!(rk > 0.0))
      throw error(errc::non_positive_remainder,
                  "level gap must be positive", static_cast<long>(k));
    s.energies[static_cast<std::size_t>(k)] =
        s.energies[static_cast<std::size_t>(k - 1)] + rk;
  }
  for (Index k = 1; k < dim; ++k)
    if (!(s.energies[static_cast<std::size_t>(k)] >
          s.energies[static_cast<std::size_t>(k - 1)]))
      throw error(errc::degenerate_ladder,
                  "cumulative energies failed to increase",
                  static_cast<long>(k));
  return s;
}

/// Coupling strength, detuning energy scale and derived constants.
///   beta  = hbar * delta / alpha   (detuning in units of the coupling)
///   gamma = 4 * alpha^2 * beta / hbar^2
struct JCParams {
  double alpha = 0.0;
  double delta = 0.0;
  double hbar = 1.0;

  JCParams() = default;
  JCParams(double alpha_, double delta_, double hbar_ = 1.0)
      : alpha(alpha_), delta(delta_), hbar(hbar_) {
    if (!(alpha > 0.0))
      throw error(errc::validation_error, "alpha must be positive");
    if (!(hbar > 0.0))
      throw error(errc::validation_error, "hbar must be positive");
  }

  double beta() const { return hbar * delta / alpha; }
  double gamma() const { return 4.0 * alpha * alpha * beta() / (hbar * hbar); }
};

/// All operators of the coupled model over one truncated ladder.
///
/// Basis layout of the doubled space: excited sector rows 0..N-1 (e_m),
/// ground sector rows N..2N-1 (g_m). Ladder operators are stored as NxN
/// blocks; sector-crossing maps reuse the same NxN indexing with rows in
/// the target sector.
///
/// Structure kept exact by construction:
///   H1 = diag(E_0..E_{N-1})            ground-sector diagonal
///   H2 = diag(E_1..E_{N-1}, 0)          excited-sector diagonal; the edge
///                                       zero is the truncated product value
///   X(m, m+1) = E_{m+1}                 coupling amplitudes
///   S_i = [[0, X], [X, 0]]
///   H_int = alpha * [[beta I, X], [X, -beta I]]
///   H_o = diag(H2, H1),  H_total = H_o + H_int
struct OperatorBundle {
  Index N = 0;
  LadderSpectrum spectrum;
  JCParams params;

  Matrix Bplus;        // (m+1, m) = sqrt(E_{m+1})
  Matrix Bminus;       // adjoint of Bplus
  Matrix H1;           // diag(E_m)
  Matrix H2;           // diag(E_1..E_{N-1}, 0)
  Matrix Qdagger;      // (m+1, m) = 1, unit raising
  Matrix sqrtTBminus;  // (m, m+1) = E_{m+1}^{1/4}, positive amplitude root
  Matrix X;            // (m, m+1) = E_{m+1}

  Matrix S_i;      // 2N x 2N
  Matrix H_int;    // 2N x 2N
  Matrix H_o;      // 2N x 2N
  Matrix H_total;  // 2N x 2N

  Index pair_count() const { return N - 1; }
  double energy(Index m) const { return spectrum.energy(m); }

  Index e(Index m) const { return idx_e(m, N); }
  Index g(Index m) const { return idx_g(m, N); }
};

/// sigma_3 on the doubled space: +1 on the excited sector, -1 on ground.
inline Matrix sigma3_matrix(Index N) {
  Matrix s = Matrix::Zero(2 * N, 2 * N);
  for (Index m = 0; m < N; ++m) {
    s(m, m) = 1.0;
    s(N + m, N + m) = -1.0;
  }
  return s;
}

inline OperatorBundle build_operators(const LadderSpectrum& spectrum,
                                      const JCParams& params) {
  OperatorBundle b;
  b.N = spectrum.dim;
  b.spectrum = spectrum;
  b.params = params;
  const Index N = b.N;

  b.Bplus = Matrix::Zero(N, N);
  b.Qdagger = Matrix::Zero(N, N);
  b.sqrtTBminus = Matrix::Zero(N, N);
  b.X = Matrix::Zero(N, N);
  b.H1 = Matrix::Zero(N, N);
  b.H2 = Matrix::Zero(N, N);

  for (Index m = 0; m < N; ++m) b.H1(m, m) = spectrum.energy(m);
  for (Index m = 0; m + 1 < N; ++m) {
    const double Em1 = spectrum.energy(m + 1);
    b.Bplus(m + 1, m) = std::sqrt(Em1);
    b.Qdagger(m + 1, m) = 1.0;
    b.sqrtTBminus(m, m + 1) = std::pow(Em1, 0.25);
    b.X(m, m + 1) = Em1;
    b.H2(m, m) = Em1;  // edge entry (N-1, N-1) stays 0
  }
  b.Bminus = b.Bplus.adjoint();

  const double alpha = params.alpha;
  const double beta = params.beta();

  b.S_i = Matrix::Zero(2 * N, 2 * N);
  b.S_i.block(0, N, N, N) = b.X;
  b.S_i.block(N, 0, N, N) = b.X.adjoint();

  b.H_int = alpha * b.S_i;
  for (Index m = 0; m < N; ++m) {
    b.H_int(m, m) += alpha * beta;
    b.H_int(N + m, N + m) -= alpha * beta;
  }

  b.H_o = Matrix::Zero(2 * N, 2 * N);
  b.H_o.block(0, 0, N, N) = b.H2;
  b.H_o.block(N, N, N, N) = b.H1;

  b.H_total = b.H_o + b.H_int;
  return b;
}

/// Apply a scalar function to a diagonal matrix. Any nonzero off-diagonal
/// entry is a caller bug, not something to average away.
inline Matrix spectral_function(const Matrix& D,
                                const std::function<Complex(Complex)>& f) {
  if (D.rows() != D.cols())
    throw error(errc::shape_mismatch, "spectral_function needs a square matrix");
  Matrix out = Matrix::Zero(D.rows(), D.cols());
  for (Index i = 0; i < D.rows(); ++i)
    for (Index j = 0; j < D.cols(); ++j)
      if (i != j && D(i, j) != Complex(0.0, 0.0))
        throw error(errc::not_diagonal,
                    "spectral_function applied to a non-diagonal matrix");
  for (Index i = 0; i < D.rows(); ++i) out(i, i) = f(D(i, i));
  return out;
}

}  // namespace sijc

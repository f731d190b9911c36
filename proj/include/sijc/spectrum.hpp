#pragma once

#include <cmath>
#include <vector>

#include <sijc/algebra.hpp>
#include <sijc/types.hpp>

namespace sijc {

enum class Branch { plus, minus };

/// Eigendata of one coupled pair {e_m, g_{m+1}}.
///
/// With E the pair's ladder energy and beta the scaled detuning:
///   lambda^+- = +- alpha * sqrt(E^2 + beta^2)      coupling-block values
///   energy^+- = E +- alpha * sqrt(E^2 + beta^2)    full-Hamiltonian values
///   rho^+-    = (sqrt(E^2 + beta^2) -+ beta) / E   amplitude ratios
/// Amplitudes: the +/- state carries c_lower on e_m and +-c_upper on
/// g_{m+1}. c_upper of one branch is stored as the exact bit pattern of
/// c_lower of the other, which makes the two states orthogonal to the last
/// bit (rho^+ rho^- = 1 analytically).
struct DressedPair {
  Index m = 0;
  double pair_energy = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  double c_lower_plus = 0.0;
  double c_upper_plus = 0.0;
  double c_lower_minus = 0.0;
  double c_upper_minus = 0.0;
};

inline DressedPair dressed_pair(const OperatorBundle& b, Index m) {
  if (m < 0 || m + 1 >= b.N)
    throw error(errc::block_out_of_range,
                "coupled pair index must satisfy 0 <= m <= N-2",
                static_cast<long>(m));
  DressedPair d;
  d.m = m;
  const double E = b.energy(m + 1);
  const double beta = b.params.beta();
  const double alpha = b.params.alpha;
  d.pair_energy = E;

  if (beta == 0.0) {
    // Resonant branch kept exact: values collapse to (1 +- alpha) E and
    // both amplitudes to 1/sqrt(2), with no root of a computed square.
    d.lambda_plus = alpha * E;
    d.lambda_minus = -alpha * E;
    d.energy_plus = (1.0 + alpha) * E;
    d.energy_minus = (1.0 - alpha) * E;
    d.c_lower_plus = d.c_upper_plus = M_SQRT1_2;
    d.c_lower_minus = d.c_upper_minus = M_SQRT1_2;
    return d;
  }

  const double w = std::hypot(E, beta);
  d.lambda_plus = alpha * w;
  d.lambda_minus = -alpha * w;
  d.energy_plus = E + alpha * w;
  d.energy_minus = E - alpha * w;

  // Each ratio in its cancellation-free form.
  const double rho_plus = (beta >= 0.0) ? E / (w + beta) : (w - beta) / E;
  const double rho_minus = (beta >= 0.0) ? (w + beta) / E : E / (w - beta);
  d.c_lower_plus = 1.0 / std::sqrt(1.0 + rho_plus * rho_plus);
  d.c_lower_minus = 1.0 / std::sqrt(1.0 + rho_minus * rho_minus);
  d.c_upper_plus = d.c_lower_minus;
  d.c_upper_minus = d.c_lower_plus;
  return d;
}

/// Normalized eigenvector of H_total on the doubled space for one branch
/// of one coupled pair. Real amplitudes by construction.
inline Vector dressed_state(const OperatorBundle& b, Index m, Branch branch) {
  const DressedPair d = dressed_pair(b, m);
  Vector v = Vector::Zero(2 * b.N);
  if (branch == Branch::plus) {
    v(b.e(m)) = d.c_lower_plus;
    v(b.g(m + 1)) = d.c_upper_plus;
  } else {
    v(b.e(m)) = d.c_lower_minus;
    v(b.g(m + 1)) = -d.c_upper_minus;
  }
  return v;
}

struct EigenPair {
  double energy = 0.0;
  Vector state;
};

/// The two levels the coupling never mixes. g_0 sits at -hbar*delta, the
/// truncation edge e_{N-1} at +hbar*delta; both read off H_total directly
/// so truncation conventions cannot drift away from the matrix.
inline EigenPair ground_singlet(const OperatorBundle& b) {
  EigenPair p;
  p.state = Vector::Zero(2 * b.N);
  p.state(b.g(0)) = 1.0;
  p.energy = b.H_total(b.g(0), b.g(0)).real();
  return p;
}

inline EigenPair edge_singlet(const OperatorBundle& b) {
  EigenPair p;
  p.state = Vector::Zero(2 * b.N);
  p.state(b.e(b.N - 1)) = 1.0;
  p.energy = b.H_total(b.e(b.N - 1), b.e(b.N - 1)).real();
  return p;
}

/// Complete eigensystem of H_total assembled from closed forms: both
/// branches of every coupled pair plus the two singlets, 2N pairs total.
inline std::vector<EigenPair> dressed_spectrum(const OperatorBundle& b) {
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(2 * b.N));
  for (Index m = 0; m + 1 < b.N; ++m) {
    const DressedPair d = dressed_pair(b, m);
    out.push_back({d.energy_minus, dressed_state(b, m, Branch::minus)});
    out.push_back({d.energy_plus, dressed_state(b, m, Branch::plus)});
  }
  out.push_back(ground_singlet(b));
  out.push_back(edge_singlet(b));
  return out;
}

/// Harmonic-field eigendata in the mode/atom frequency parametrization,
/// hbar = 1 convention. Serves as an independent cross-check of the
/// generic pair formulas when the ladder is harmonic:
///   delta_m   = (omega - omega0) / (alpha * omega * (m+1))
///   gamma^+-  = sqrt(1 + delta_m^2) -+ delta_m
///   energy^+- = (m+1) omega +- sqrt(alpha^2 omega^2 (m+1)^2 +
///                                   (omega - omega0)^2)
struct HOLimitPair {
  double delta_m = 0.0;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
};

inline HOLimitPair ho_limit_eigensystem(double omega, double omega0,
                                        double alpha, Index m) {
  if (!(omega > 0.0))
    throw error(errc::invalid_frequency, "mode frequency must be positive");
  if (!(alpha > 0.0))
    throw error(errc::validation_error, "alpha must be positive");
  if (m < 0)
    throw error(errc::block_out_of_range, "pair index must be nonnegative",
                static_cast<long>(m));
  HOLimitPair h;
  const double n1 = static_cast<double>(m + 1);
  const double detune = omega - omega0;
  h.delta_m = detune / (alpha * omega * n1);
  const double root = std::hypot(1.0, h.delta_m);
  // Same cancellation-free ratio forms as the generic pair.
  h.gamma_plus = (h.delta_m >= 0.0) ? 1.0 / (root + h.delta_m)
                                    : root - h.delta_m;
  h.gamma_minus = (h.delta_m >= 0.0) ? root + h.delta_m
                                     : 1.0 / (root - h.delta_m);
  h.energy_plus = n1 * omega + std::hypot(alpha * omega * n1, detune);
  h.energy_minus = n1 * omega - std::hypot(alpha * omega * n1, detune);
  return h;
}

}  // namespace sijc

// Resonant population transfer for a single excitation: the inversion
// expectation of the bare level g_1 oscillates at the pair's flip rate.
#include <cstdio>

#include <sijc/evolution.hpp>
#include <sijc/inversion.hpp>

int main() {
  using namespace sijc;
  const auto model = ShapeInvariantModel::harmonic(1.0);
  const auto spec = build_spectrum(model, 12);
  const auto bundle = build_operators(spec, JCParams(0.2, 0.0));
  const auto freqs = build_frequencies(bundle);
  const auto nu = build_nu(bundle);
  const Matrix sigma0 = sigma3_matrix(bundle.N);

  Vector psi = Vector::Zero(2 * bundle.N);
  psi(bundle.g(1)) = 1.0;

  std::printf("# flip rate nu = %.6f\n", nu.nu1(0));
  std::printf("%12s %14s\n", "t", "W(t)");
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.5 * i;
    const Sigma3Result r = sigma3_of_t(bundle, freqs, nu, t, sigma0);
    const double w = inversion_expectation(r.value, psi).value;
    std::printf("%12.4f %14.9f\n", t, w);
  }
  return 0;
}

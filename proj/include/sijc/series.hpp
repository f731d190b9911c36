#pragma once

#include <cfloat>
#include <cmath>

#include <sijc/types.hpp>

namespace sijc {

/// Trig-product integral family: F_xy(t; x, w) = int_0^t X(x s) Y(w s) ds
/// with X, Y in {cos, sin} picked by the kind tag. Everything the series
/// backend integrates reduces to these four scalars.
enum class FKind { cc, cs, sc, ss };

/// value plus a rigorous accuracy estimate. bound covers the truncated
/// series tail and accumulated roundoff; callers flag results whose bound
/// exceeds their tolerance instead of silently trusting them.
struct SeriesResult {
  double value = 0.0;
  double bound = 0.0;
  Index panels = 0;
};

namespace detail {

struct RawF {
  double value = 0.0;     // sum of kept terms
  double abs_sum = 0.0;   // sum of |term|, drives the roundoff estimate
  double frontier = 0.0;  // first omitted diagonal, drives the tail bound
};

// Double Taylor sum of F_xy(h; x, w) truncated at total index m + n <= M.
// Only called with |x| h <= 2 and |w| h <= 2, where the diagonal frontier
// decays superexponentially and M ~ 30 is far past convergence.
inline RawF raw_f(FKind kind, double h, double x, double w, int M) {
  const int a = (kind == FKind::sc || kind == FKind::ss) ? 1 : 0;
  const int b = (kind == FKind::cs || kind == FKind::ss) ? 1 : 0;
  const double xh = x * h;
  const double wh = w * h;

  // P[m] = (-1)^m (xh)^(2m+a) / (2m+a)!, same for Q with (wh, b).
  std::vector<double> P(static_cast<std::size_t>(M + 2));
  std::vector<double> Q(static_cast<std::size_t>(M + 2));
  P[0] = a ? xh : 1.0;
  Q[0] = b ? wh : 1.0;
  for (int m = 0; m <= M; ++m) {
    const double dm = 2.0 * m + a;
    P[static_cast<std::size_t>(m + 1)] =
        -P[static_cast<std::size_t>(m)] * xh * xh / ((dm + 1.0) * (dm + 2.0));
    const double dn = 2.0 * m + b;
    Q[static_cast<std::size_t>(m + 1)] =
        -Q[static_cast<std::size_t>(m)] * wh * wh / ((dn + 1.0) * (dn + 2.0));
  }

  RawF r;
  double comp = 0.0;  // Kahan correction
  for (int m = 0; m <= M; ++m)
    for (int n = 0; m + n <= M; ++n) {
      const double term = P[static_cast<std::size_t>(m)] *
                          Q[static_cast<std::size_t>(n)] * h /
                          (2.0 * m + 2.0 * n + a + b + 1.0);
      r.abs_sum += std::abs(term);
      const double y = term - comp;
      const double s = r.value + y;
      comp = (s - r.value) - y;
      r.value = s;
    }
  for (int m = 0; m <= M + 1; ++m) {
    const int n = M + 1 - m;
    r.frontier += std::abs(P[static_cast<std::size_t>(m)] *
                           Q[static_cast<std::size_t>(n)] * h /
                           (2.0 * m + 2.0 * n + a + b + 1.0));
  }
  return r;
}

inline bool odd_in_t(FKind kind) {
  return kind == FKind::cc || kind == FKind::ss;
}

}  // namespace detail

/// Series evaluation of F_xy(t; x, w) with guaranteed-small per-panel
/// arguments. [0, |t|] is split so that max(|x|, |w|) * h <= 2 on each
/// panel, the integrand is shifted to the panel origin with trig addition
/// and each panel reduces to four small-argument Taylor sums.
///
/// order is the retained total Taylor order per panel (m + n <= order / 2).
/// Arguments with |x t| or |w t| beyond 40 are refused rather than allowed
/// to burn the budget.
inline SeriesResult f_kernel(FKind kind, double t, double x, double w,
                             int order = 60) {
  if (order < 8)
    throw error(errc::validation_error, "series order too small to be useful");
  const double T = std::abs(t);
  if (std::abs(x) * T > 40.0 || std::abs(w) * T > 40.0)
    throw error(errc::convergence_budget_exceeded,
                "series arguments exceed the |arg * t| <= 40 budget");

  const double amax = std::max(std::abs(x), std::abs(w));
  const Index panels = std::max<Index>(1, static_cast<Index>(
      std::ceil(amax * T / 2.0)));
  const double h = T / static_cast<double>(panels);
  const int M = order / 2;

  const int a = (kind == FKind::sc || kind == FKind::ss) ? 1 : 0;
  const int b = (kind == FKind::cs || kind == FKind::ss) ? 1 : 0;

  double value = 0.0, comp = 0.0;
  double abs_accum = 0.0, frontier = 0.0;
  for (Index p = 0; p < panels; ++p) {
    const double a0 = h * static_cast<double>(p);
    // X(x(a0+u)) = cx * X-part(xu) -+ sx * other-part(xu); coefficient
    // pairs below implement cos/sin addition for each factor.
    const double cxa = std::cos(x * a0), sxa = std::sin(x * a0);
    const double cwa = std::cos(w * a0), swa = std::sin(w * a0);
    const double coef_x[2] = {a ? sxa : cxa, a ? cxa : -sxa};  // {C, S} parts
    const double coef_w[2] = {b ? swa : cwa, b ? cwa : -swa};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const FKind sub = (i == 0)
                              ? (j == 0 ? FKind::cc : FKind::cs)
                              : (j == 0 ? FKind::sc : FKind::ss);
        const detail::RawF rf = detail::raw_f(sub, h, x, w, M);
        const double coef = coef_x[i] * coef_w[j];
        const double term = coef * rf.value;
        abs_accum += std::abs(coef) * rf.abs_sum;
        frontier += std::abs(coef) * rf.frontier;
        const double y = term - comp;
        const double s = value + y;
        comp = (s - value) - y;
        value = s;
      }
  }

  SeriesResult r;
  r.panels = panels;
  r.value = (t < 0.0 && detail::odd_in_t(kind)) ? -value : value;
  r.bound = 2.0 * frontier + 8.0 * DBL_EPSILON * abs_accum;
  return r;
}

/// Sum/difference combinations G_xy^s(t; p, q, r) =
/// F_xy(t; p - q, r) + s * F_xy(t; p + q, r), s = +-1. The particular
/// solutions consume the kernels in exactly this paired form.
inline SeriesResult aux_g(FKind kind, int sign, double t, double p, double q,
                          double r, int order = 60) {
  if (sign != 1 && sign != -1)
    throw error(errc::validation_error, "aux_g sign must be +1 or -1");
  const SeriesResult lo = f_kernel(kind, t, p - q, r, order);
  const SeriesResult hi = f_kernel(kind, t, p + q, r, order);
  SeriesResult out;
  out.value = lo.value + sign * hi.value;
  out.bound = lo.bound + hi.bound;
  out.panels = std::max(lo.panels, hi.panels);
  return out;
}

}  // namespace sijc

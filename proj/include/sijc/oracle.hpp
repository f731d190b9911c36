#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include <sijc/algebra.hpp>
#include <sijc/types.hpp>

namespace sijc {

struct ComparisonReport {
  double max_abs = 0.0;
  double max_rel = 0.0;
  Index row = -1;
  Index col = -1;
  double time = 0.0;
  bool pass = true;
};

/// Entrywise comparison. pass holds iff max_abs <= tol. max_rel is relative
/// to the largest magnitude in B and is reported, not gated on.
inline ComparisonReport compare(const Matrix& A, const Matrix& B, double tol,
                                double time = 0.0) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw error(errc::shape_mismatch, "compare needs equal shapes");
  ComparisonReport r;
  r.time = time;
  double scale = 0.0;
  for (Index i = 0; i < B.rows(); ++i)
    for (Index j = 0; j < B.cols(); ++j)
      scale = std::max(scale, std::abs(B(i, j)));
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) {
      const double d = std::abs(A(i, j) - B(i, j));
      if (d > r.max_abs) {
        r.max_abs = d;
        r.row = i;
        r.col = j;
      }
    }
  r.max_rel = scale > 0.0 ? r.max_abs / scale : r.max_abs;
  r.pass = r.max_abs <= tol;
  return r;
}

inline ComparisonReport compare_on(const Matrix& A, const Matrix& B,
                                   const std::vector<Index>& idx, double tol,
                                   double time = 0.0) {
  return compare(select(A, idx, idx), select(B, idx, idx), tol, time);
}

inline ComparisonReport worst_of(const ComparisonReport& a,
                                 const ComparisonReport& b) {
  ComparisonReport r = (b.max_abs > a.max_abs) ? b : a;
  r.pass = a.pass && b.pass;
  r.max_rel = std::max(a.max_rel, b.max_rel);
  return r;
}

/// exp(-i H t / hbar) by dense Hermitian diagonalization. The reference
/// propagator every structured construction is checked against.
inline Matrix exact_propagator(const Matrix& H, double t, double hbar = 1.0) {
  if (H.rows() != H.cols())
    throw error(errc::shape_mismatch, "propagator needs a square matrix");
  double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw error(errc::not_hermitian, "propagator input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  if (es.info() != Eigen::Success)
    throw error(errc::no_convergence, "eigendecomposition failed");
  const Index n = H.rows();
  Vector phase(n);
  for (Index k = 0; k < n; ++k)
    phase(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * t / hbar));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

/// Heisenberg-picture inversion operator U(t)^dag sigma_3 U(t) for the
/// given generator. Used as the dynamics oracle.
inline Matrix heisenberg_sigma3(const Matrix& H, double t, double hbar = 1.0) {
  const Index twoN = H.rows();
  if (twoN % 2 != 0)
    throw error(errc::shape_mismatch, "doubled space must have even dimension");
  const Matrix U = exact_propagator(H, t, hbar);
  return U.adjoint() * sigma3_matrix(twoN / 2) * U;
}

namespace detail {

/// Nodes and weights of 16-point Gauss-Legendre on [-1, 1], computed once
/// by Newton iteration on the Legendre recurrence.
inline const std::pair<std::vector<double>, std::vector<double>>&
gauss_legendre_16() {
  static const auto table = [] {
    constexpr int n = 16;
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      x[static_cast<std::size_t>(i)] = t;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return std::make_pair(x, w);
  }();
  return table;
}

}  // namespace detail

/// Adaptive composite 16-point Gauss-Legendre quadrature of a matrix-valued
/// integrand over [a, b]. Panel count doubles until two successive composite
/// values agree entrywise within tol. Throws no_convergence past 2^16 panels.
inline Matrix integrate_matrix_function(
    const std::function<Matrix(double)>& f, double a, double b, double tol) {
  if (a == b) {
    Matrix probe = f(a);
    return Matrix::Zero(probe.rows(), probe.cols());
  }
  const auto& [xs, ws] = detail::gauss_legendre_16();
  auto composite = [&](Index panels) {
    Matrix acc;
    const double h = (b - a) / static_cast<double>(panels);
    for (Index p = 0; p < panels; ++p) {
      const double lo = a + h * static_cast<double>(p);
      const double mid = lo + 0.5 * h;
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const Matrix fv = f(mid + 0.5 * h * xs[k]);
        if (acc.size() == 0) acc = Matrix::Zero(fv.rows(), fv.cols());
        acc += (0.5 * h * ws[k]) * fv;
      }
    }
    return acc;
  };
  Matrix prev = composite(1);
  for (Index panels = 2; panels <= (Index{1} << 16); panels *= 2) {
    Matrix cur = composite(panels);
    const double diff = (cur - prev).cwiseAbs().maxCoeff();
    if (diff <= tol) return cur;
    prev.swap(cur);
  }
  throw error(errc::no_convergence,
              "quadrature failed to settle within the panel budget");
}

}  // namespace sijc

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sijc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Failure categories surfaced by the library. Each maps 1:1 onto a
/// documented precondition or convergence guard.
enum class errc {
  non_positive_remainder,
  dimension_too_small,
  block_out_of_range,
  degenerate_ladder,
  invalid_frequency,
  not_diagonal,
  not_resonant,
  convergence_budget_exceeded,
  backend_domain_error,
  not_hermitian,
  no_convergence,
  shape_mismatch,
  non_normalized_state,
  parse_error,
  unknown_key,
  validation_error,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::non_positive_remainder: return "NonPositiveRemainder";
    case errc::dimension_too_small: return "DimensionTooSmall";
    case errc::block_out_of_range: return "BlockOutOfRange";
    case errc::degenerate_ladder: return "DegenerateLadder";
    case errc::invalid_frequency: return "InvalidFrequency";
    case errc::not_diagonal: return "NotDiagonal";
    case errc::not_resonant: return "NotResonant";
    case errc::convergence_budget_exceeded: return "ConvergenceBudgetExceeded";
    case errc::backend_domain_error: return "BackendDomainError";
    case errc::not_hermitian: return "NotHermitian";
    case errc::no_convergence: return "NoConvergence";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::non_normalized_state: return "NonNormalizedState";
    case errc::parse_error: return "ParseError";
    case errc::unknown_key: return "UnknownKey";
    case errc::validation_error: return "ValidationError";
  }
  return "UnknownError";
}

/// Library exception. `index()` carries the offending ladder index or key
/// position where one exists, -1 otherwise.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what, long index = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index) {}

  errc code() const noexcept { return code_; }
  long index() const noexcept { return index_; }

 private:
  errc code_;
  long index_;
};

// Basis layout of the doubled space: excited sector first, ground sector
// second. e_m = row m, g_m = row N + m, for ladder dimension N.
inline Index idx_e(Index m, Index /*N*/) { return m; }
inline Index idx_g(Index m, Index N) { return N + m; }

/// Indices of the coupled-pair subspace span{e_m, g_{m+1} : m <= N-2}.
/// Excludes the truncation edge e_{N-1} and the uncoupled singlet g_0,
/// the two levels on which block identities are not meaningful.
inline std::vector<Index> coupled_interior_indices(Index N) {
  std::vector<Index> idx;
  idx.reserve(2 * (N - 1));
  for (Index m = 0; m + 1 < N; ++m) idx.push_back(idx_e(m, N));
  for (Index m = 1; m < N; ++m) idx.push_back(idx_g(m, N));
  return idx;
}

/// Interior of a single-sector ladder operator: indices 0..N-2.
inline std::vector<Index> ladder_interior_indices(Index N) {
  std::vector<Index> idx;
  idx.reserve(N - 1);
  for (Index m = 0; m + 1 < N; ++m) idx.push_back(m);
  return idx;
}

/// Submatrix selection by explicit row/column index lists.
inline Matrix select(const Matrix& A, const std::vector<Index>& rows,
                     const std::vector<Index>& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j) out(i, j) = A(rows[i], cols[j]);
  return out;
}

/// Largest singular value; the operator norm used by all defect reports.
inline double operator_norm(const Matrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  return A.jacobiSvd().singularValues()(0);
}

}  // namespace sijc

#ifndef PAULI2D_EIGEN_SOLVERS_HPP
#define PAULI2D_EIGEN_SOLVERS_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <vector>

namespace pauli2d {

template <typename Scalar>
struct EigenPairs {
    Eigen::VectorXd values;                                       // ascending
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors; // columns
    Eigen::VectorXd residuals;                                     // ||Av - lv||/||v||
};

/// k algebraically smallest eigenpairs of a dense self-adjoint matrix.
/// Verifies self-adjointness to 1e-12 relative (ContractViolation otherwise).
template <typename Scalar>
EigenPairs<Scalar>
lowest_eigenpairs(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a, int k,
                  double tol = 1e-10);

/// k algebraically smallest eigenpairs of a sparse self-adjoint matrix.
/// Dense path up to dimension 4000, shift-invert Lanczos with seeded
/// restarts above. `sigma` must lie strictly below the spectrum when given;
/// NaN selects a Gershgorin-based shift.
template <typename Scalar>
EigenPairs<Scalar> lowest_eigenpairs(const Eigen::SparseMatrix<Scalar>& a, int k,
                                     double tol = 1e-9, std::uint64_t seed = 1,
                                     double sigma = std::numeric_limits<double>::quiet_NaN());

/// Shift-invert Lanczos without the dense fallback (used directly by the
/// planar solver where a good shift is known).
template <typename Scalar>
EigenPairs<Scalar> shift_invert_lowest(const Eigen::SparseMatrix<Scalar>& a, int k,
                                       double tol, std::uint64_t seed, double sigma);

/// Symmetric tridiagonal matrix (diag size n, off size n-1).
struct TridiagonalMatrix {
    Eigen::VectorXd diag;
    Eigen::VectorXd off;
    int n() const { return static_cast<int>(diag.size()); }
};

/// Number of eigenvalues strictly below x (Sturm count).
int sturm_count_below(const TridiagonalMatrix& t, double x);

/// All eigenvalues < bound, ascending, by Sturm bisection.
std::vector<double> tridiag_eigenvalues_below(const TridiagonalMatrix& t, double bound);

/// k smallest eigenvalues, ascending.
std::vector<double> tridiag_smallest(const TridiagonalMatrix& t, int k);

/// Eigenvector for an isolated eigenvalue by inverse iteration.
Eigen::VectorXd tridiag_eigenvector(const TridiagonalMatrix& t, double lambda,
                                    std::uint64_t seed = 1);

} // namespace pauli2d

#endif

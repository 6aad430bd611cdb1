#ifndef PAULI2D_SPECTRAL_RESULT_HPP
#define PAULI2D_SPECTRAL_RESULT_HPP

#include <Eigen/Dense>
#include <vector>

namespace pauli2d {

/// Eigen-solve output shared by the radial and planar solvers.
struct SpectralResult {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXcd eigenvectors; // columns (real solvers fill real parts)
    Eigen::VectorXd residuals;
    Eigen::VectorXd boundary_leak; // mass in the outer 10% of the domain
    std::vector<bool> leak_flagged;
    int negative_count = 0;

    /// Shared counting rule: E < -max(1e-10, 10*residual).
    void count_negatives();
};

inline void SpectralResult::count_negatives()
{
    negative_count = 0;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        const double thresh = std::max(1e-10, 10.0 * residuals[i]);
        if (eigenvalues[i] < -thresh) ++negative_count;
    }
}

} // namespace pauli2d

#endif

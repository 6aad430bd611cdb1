#ifndef PAULI2D_PLANAR_OPERATOR_HPP
#define PAULI2D_PLANAR_OPERATOR_HPP

#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <string>

#include "pauli2d/field_profile.hpp"
#include "pauli2d/gauge.hpp"
#include "pauli2d/spectral_result.hpp"

namespace pauli2d {

/// Uniform n x n site grid on [-half_width, half_width]^2 with Dirichlet
/// walls outside.
struct PlanarGrid {
    int n = 0;
    double h = 0.0;
    double half_width = 0.0;
    double x(int i) const { return -half_width + (i + 0.5) * h; }
    double y(int j) const { return -half_width + (j + 0.5) * h; }
    int idx(int i, int j) const { return j * n + i; }
    int sites() const { return n * n; }
};

PlanarGrid make_planar_grid(double half_width, int n);

/// Per-edge phases e^{-i lambda int A dl} (midpoint rule along each edge).
struct LinkSet {
    PlanarGrid grid;
    std::vector<std::complex<double>> ux; // (i,j) -> (i+1,j), valid i < n-1
    std::vector<std::complex<double>> uy; // (i,j) -> (i,j+1), valid j < n-1
};

LinkSet build_links(const Gauge& gauge, const PlanarGrid& grid, double lambda);

/// Product of link phases around the plaquette with lower-left site (i,j).
std::complex<double> plaquette_phase(const LinkSet& links, int i, int j);

struct PlanarOperator {
    PlanarGrid grid;
    double g = 2.0;
    double lambda = 1.0;
    int spin = -1; // +1 or -1
    LinkSet links;
    std::vector<double> spin_diag;
    Eigen::SparseMatrix<std::complex<double>> matrix;
    double shift_lower_bound = 0.0; // strictly below the spectrum
};

/// Pauli operator (-i grad - lambda A)^2 + spin (g/2) lambda B with the
/// link-variable kinetic part. Grid extent must be at least 4x the support
/// radius (std::domain_error otherwise).
PlanarOperator assemble_pauli(const FieldProfile& profile, double g, double lambda, int spin,
                              double half_width, int n);

/// k lowest eigenpairs (k <= 20).
SpectralResult lowest_spectrum(const PlanarOperator& op, int k, double tol = 1e-8,
                               std::uint64_t seed = 1);

/// <psi,H psi>/<psi,psi>.
double quadratic_form(const PlanarOperator& op, const Eigen::VectorXcd& psi);

/// Gauge-transformed copy: links conjugated by site phases e^{i chi}.
PlanarOperator apply_random_gauge(const PlanarOperator& op, std::uint64_t seed);

struct RealReductionResult {
    double full = 0.0;
    double reduced = 0.0;
    double gap = 0.0;
};

/// Energy form of the gauge-coupled operator vs -Lap + lambda^2 A^2 +
/// spin (g lambda/2) B on a real trial function; the gap vanishes under
/// refinement. Complex input raises ContractViolation.
RealReductionResult real_reduction_check(const FieldProfile& profile, double g, double lambda,
                                         int spin, const PlanarGrid& grid,
                                         const Eigen::VectorXcd& psi);

/// CSV dump (header "nx,ny,h", row-major values).
void dump_grid_csv(const std::string& path, const PlanarGrid& grid,
                   const Eigen::VectorXd& values);

} // namespace pauli2d

#endif

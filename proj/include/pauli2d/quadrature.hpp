#ifndef PAULI2D_QUADRATURE_HPP
#define PAULI2D_QUADRATURE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace pauli2d {

/// Nodes, positive weights and per-node cell sizes for 1D or 2D integration.
/// For dim == 1 a node's first coordinate is the radius and the second is 0;
/// cell_sizes hold lengths. For dim == 2 cell_sizes hold areas (used by the
/// log-kernel self-term).
struct QuadratureGrid {
    int dim = 2;
    std::vector<std::array<double, 2>> nodes;
    std::vector<double> weights;
    std::vector<double> cell_sizes;

    std::size_t size() const { return nodes.size(); }
    /// Throws ContractViolation when weights are not strictly positive or
    /// array lengths disagree.
    void validate() const;
};

/// Uniform square cells of spacing h whose centers satisfy `keep`; weights
/// are h^2.
QuadratureGrid cartesian_cells(double half_width, double h,
                               const std::function<bool(double, double)>& keep);

/// Cells covering the disk |x| <= radius.
QuadratureGrid disk_cells(double radius, double h);

/// Exact average of ln|x-y| over a disk of the given area centered at x:
/// ln(r_eq) - 1/2 with r_eq = sqrt(area/pi). Diagonal entry for log-kernel
/// quadrature.
double log_selfterm(double cell_area);

/// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
/// Splits at the supplied breakpoints first. Throws ConvergenceError if the
/// subdivision budget is exhausted before reaching
/// abs_tol + rel_tol*|integral|.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 0.0,
                 const std::vector<double>& breakpoints = {});

/// Single non-adaptive K15 panel (table construction on panels known to be
/// smooth).
double integrate_panel(const std::function<double(double)>& f, double a, double b);

/// Integral of f over [a, inf) for integrands with eventual decay: doubling
/// panels are added until their contribution is negligible against the total
/// or the panel count runs out (then ConvergenceError).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol = 1e-10,
                             const std::vector<double>& breakpoints = {});

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;
    double derivative(double x) const;
    bool empty() const { return x_.empty(); }
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    std::vector<double> x_, y_, m_; // m_: second derivatives
};

} // namespace pauli2d

#endif

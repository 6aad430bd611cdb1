#ifndef PAULI2D_GAUGE_HPP
#define PAULI2D_GAUGE_HPP

#include <array>
#include <vector>

#include "pauli2d/field_profile.hpp"
#include "pauli2d/quadrature.hpp"

namespace pauli2d {

/// Flux in units of 2*pi together with the integer decomposition used by the
/// zero-mode count: F = N + eps with eps in (0,1] for F > 0 (so N = [F]
/// except at integer flux), N = 0 and eps = 0 for F = 0.
struct FluxData {
    double f = 0.0;
    int n_zero_modes = 0; // N above
    double eps_frac = 0.0;
    int floor_f = 0;      // [F], controls the trial-span size 1+[F]
    bool sign_flipped = false;
};

FluxData flux(const FieldProfile& profile);

/// Exact phi/A for one rotationally symmetric component about its center.
/// phi solves the radial Poisson problem (r phi')' = r B with the exterior
/// matching phi(r) = F ln r beyond the support.
class RadialGauge {
public:
    explicit RadialGauge(const RadialComponent& c);
    double flux() const { return flux_; }
    double cumulative(double r) const; // int_0^r B(s) s ds
    double a(double r) const;          // cumulative / r
    double phi(double r) const;        // compact components only
    double support() const { return support_; }

private:
    RadialComponent comp_;
    double flux_ = 0.0;
    double support_ = 0.0;
    bool compact_ = true;
    CubicSpline cum_spline_;  // used when no closed-form cumulative
    CubicSpline phi_spline_;  // phi on [0, support]
};

/// Grid-free gauge data for a profile: phi, A = (-d2 phi, d1 phi) at any
/// point. Exact for component-based profiles; kernel sums for sampled ones.
class Gauge {
public:
    explicit Gauge(const FieldProfile& p);
    const FieldProfile& profile() const { return profile_; }
    bool radial() const { return profile_.radial(); }

    double phi(double x, double y) const;
    std::array<double, 2> a(double x, double y) const;
    double phi_radial(double r) const; // radial profiles only
    double a_radial(double r) const;   // radial profiles only
    double total_flux() const;

    /// Points with |x| beyond this radius raise ExtrapolationError from
    /// consumers that honor it (infinite in the analytic paths).
    double eval_radius() const { return eval_radius_; }
    void restrict_eval_radius(double r) { eval_radius_ = r; }

private:
    FieldProfile profile_;
    std::vector<RadialGauge> comps_;
    double eval_radius_;
};

/// phi evaluated on a grid: the radial Poisson path for rotationally
/// symmetric profiles, log-kernel quadrature with the self-term correction
/// otherwise.
struct GaugeGrid {
    QuadratureGrid grid;
    std::vector<double> phi;
};

GaugeGrid scalar_potential(const FieldProfile& p, const QuadratureGrid& grid);
/// Force the log-kernel path regardless of profile kind (validation aid).
GaugeGrid scalar_potential_planar_path(const FieldProfile& p, const QuadratureGrid& grid);
/// Log-kernel phi at arbitrary points from a source cell grid; self-term on
/// the containing cell, 5x5 subcell refinement for nearby cells.
std::vector<double> log_kernel_phi(const FieldProfile& p, const QuadratureGrid& source,
                                   const std::vector<std::array<double, 2>>& points);

/// A(r) in the symmetric gauge; KindMismatchError for non-radial profiles.
double vector_potential_radial(const FieldProfile& p, double r);

struct DecayCheckResult {
    double c1 = 0.0;
    double c2 = 0.0;
    double delta = 0.0;
    bool satisfied = false;
};

/// Fits |B| <= C1 <x>^{-2-delta} and the smoothed-field envelope at the
/// probe radii; satisfied iff the field envelope holds with positive delta.
DecayCheckResult decay_check(const FieldProfile& p, const std::vector<double>& probe_radii);

/// int A^2 d2x (radial: 2 pi int A^2 r dr); DivergenceError when the flux is
/// nonzero (A ~ F/r tail).
double a_squared_integral(const FieldProfile& p);

/// -(1/2pi) int int B(x) ln|x-y| B(y); computed from B alone (no reuse of
/// the A/phi chain), via the angular reduction for component profiles and
/// the log-kernel cell sum for sampled ones.
double log_pair_integral(const FieldProfile& p);

} // namespace pauli2d

#endif

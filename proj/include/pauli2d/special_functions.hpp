#ifndef PAULI2D_SPECIAL_FUNCTIONS_HPP
#define PAULI2D_SPECIAL_FUNCTIONS_HPP

namespace pauli2d {

/// Euler-Mascheroni constant, 20 digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Macdonald function K_order(x) for order 0 or 1.
///
/// Chebyshev-series implementation in the FNLIB style: log + I_nu series for
/// x <= 2, exponentially scaled series on (2,8] and (8,inf). Relative error
/// below 1e-14 across [1e-8, 700]; underflows smoothly to 0 for very large x.
/// Throws std::domain_error for x <= 0 and std::invalid_argument for other
/// orders.
double macdonald(int order, double x);

/// K0(x), K1(x) shorthands.
double macdonald_k0(double x);
double macdonald_k1(double x);

/// Exponentially scaled e^x K_order(x); valid for all x > 0 without
/// underflow.
double macdonald_scaled(int order, double x);

/// Residual |K1'(x) + K0(x) + K1(x)/x| with K1' taken by central finite
/// difference. Self-test of the implementation; exact identity in the limit.
double macdonald_derivative_identity_check(double x);

/// Modified Bessel I0, I1 (needed by the small-argument K series; exposed
/// because tests use them).
double bessel_i0(double x);
double bessel_i1(double x);

/// Complete elliptic integral of the first kind K(m), parameter m = k^2 in
/// [0,1). Computed by the arithmetic-geometric mean.
double elliptic_k(double m);

} // namespace pauli2d

#endif

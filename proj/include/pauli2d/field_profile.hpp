#ifndef PAULI2D_FIELD_PROFILE_HPP
#define PAULI2D_FIELD_PROFILE_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace pauli2d {

enum class ProfileKind {
    RadialClosedForm,
    RadialPiecewiseConstant,
    PlanarSampled,
    PlanarClosedForm
};

/// One rotationally symmetric constituent of a field, centered anywhere in
/// the plane. Closed-form profiles are unions of these; superpositions of
/// displaced components give non-symmetric fields whose gauge data is still
/// exact.
struct RadialComponent {
    std::array<double, 2> center{0.0, 0.0};
    std::function<double(double)> b;          // B(r) about the center
    std::function<double(double)> cumulative; // int_0^r B(s) s ds; empty -> quadrature
    double support = std::numeric_limits<double>::infinity();
    std::vector<double> breakpoints;          // kinks/jumps of b
};

/// Piecewise-constant B values on a uniform cell grid (cell centers at
/// (x0 + i*spacing, y0 + j*spacing)).
struct SampledField {
    int nx = 0, ny = 0;
    double spacing = 0.0;
    double x0 = 0.0, y0 = 0.0;
    std::vector<double> values; // row-major, index j*nx + i

    double value_at(double x, double y) const;
    double support_radius() const;
};

struct FieldProfile {
    ProfileKind kind = ProfileKind::RadialClosedForm;
    std::string name;
    double support_radius = std::numeric_limits<double>::infinity();
    double decay_exponent = 0.0; // delta for non-compact fields
    bool sign_flipped = false;   // set when the F >= 0 convention flipped B
    std::vector<RadialComponent> components;
    SampledField sampled;

    bool compact() const { return std::isfinite(support_radius); }
    /// Rotationally symmetric about the origin?
    bool radial() const;
    /// B(r) for radial profiles; KindMismatchError otherwise.
    double b_radial(double r) const;
    /// B at a point, any kind.
    double b_at(double x, double y) const;
    /// Union of radial kink locations (radial profiles).
    std::vector<double> radial_breakpoints() const;
};

// Built-in profile library. Every builder applies the F >= 0 sign
// convention and records the flip.
FieldProfile uniform_disk(double b0 = 1.0, double radius = 1.0);
/// B = b_inner on [0,r1), and the unique constant on [r1,r2) giving F = 0.
FieldProfile zero_flux_annulus(double b_inner = 1.0, double r1 = 1.0, double r2 = 2.0);
/// Field carried by a thin annular shell.
FieldProfile current_shell(double b0 = 2.0, double r1 = 0.85, double r2 = 1.15);
FieldProfile truncated_gaussian(double b0 = 1.0, double sigma = 0.8, double rcut = 2.4);
/// Two displaced truncated Gaussian bumps of opposite sign; the negative
/// amplitude is solved so the total flux vanishes exactly. Not rotationally
/// symmetric.
FieldProfile two_bump_asym(double amp_plus = 1.0, double sigma_plus = 0.6,
                           double cut_plus = 1.8, double sigma_minus = 0.85,
                           double cut_minus = 2.55);
/// B = b0 (1+r^2)^{-p}; non-compact, decay exponent 2p-2.
FieldProfile radial_powerlaw(double b0 = 1.0, double p = 2.0);

/// Sum of two profiles (component concatenation); not available for sampled
/// fields mixed with anything else.
FieldProfile superpose(const FieldProfile& a, const FieldProfile& b);

/// Scale the field strength pointwise (used for the lambda coupling).
FieldProfile scale_field(const FieldProfile& p, double factor);

/// Sampled field from a CSV stream: header "nx,ny,spacing" then nx*ny
/// row-major values. The grid is centered on the origin.
FieldProfile sampled_from_csv(const std::string& path);
void write_sampled_csv(const std::string& path, const SampledField& f);
/// Sample any profile onto a uniform grid (testing aid).
SampledField sample_profile(const FieldProfile& p, int n, double half_width);

/// Build a profile from "profile.*" keys of a key-value config.
FieldProfile profile_from_kv(const std::map<std::string, std::string>& kv);

struct BuiltinInfo {
    std::string name;
    std::string parameters; // human-readable schema
    bool symmetric;
    double default_flux;    // F of the default-parameter instance
};
std::vector<BuiltinInfo> builtin_catalog();

} // namespace pauli2d

#endif

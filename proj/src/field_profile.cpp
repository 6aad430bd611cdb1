#include "pauli2d/field_profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pauli2d/errors.hpp"
#include "pauli2d/quadrature.hpp"

namespace pauli2d {

namespace {

double component_flux(const RadialComponent& c)
{
    if (c.cumulative) {
        if (std::isfinite(c.support)) return c.cumulative(c.support);
        // cumulative given in closed form; take the limit numerically
        double prev = 0.0;
        for (double r = 10.0;; r *= 4.0) {
            const double cur = c.cumulative(r);
            if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
            prev = cur;
            if (r > 1e12)
                throw IntegrabilityError("flux: cumulative flux does not settle (field not integrable)");
        }
    }
    auto f = [&c](double r) { return c.b(r) * r; };
    if (std::isfinite(c.support))
        return integrate(f, 0.0, c.support, 1e-11, 0.0, c.breakpoints);
    try {
        return integrate_to_infinity(f, 0.0, 1e-11, c.breakpoints);
    } catch (const ConvergenceError&) {
        throw IntegrabilityError("flux: field is not integrable");
    }
}

double profile_raw_flux(const FieldProfile& p)
{
    if (p.kind == ProfileKind::PlanarSampled) {
        double s = 0.0;
        const double w = p.sampled.spacing * p.sampled.spacing;
        for (double v : p.sampled.values) s += v * w;
        return s / (2.0 * M_PI);
    }
    double s = 0.0;
    for (const auto& c : p.components) s += component_flux(c);
    return s; // components are already in flux units (int B r dr = 2pi-normalized)
}

// Apply the F >= 0 convention: if the mean field points down, flip B.
void apply_sign_convention(FieldProfile& p)
{
    double f;
    try {
        f = profile_raw_flux(p);
    } catch (const IntegrabilityError&) {
        return; // leave non-integrable fields alone; flux() will report
    }
    if (f >= -1e-14) return;
    p.sign_flipped = true;
    if (p.kind == ProfileKind::PlanarSampled) {
        for (double& v : p.sampled.values) v = -v;
        return;
    }
    for (auto& c : p.components) {
        auto b_old = c.b;
        c.b = [b_old](double r) { return -b_old(r); };
        if (c.cumulative) {
            auto cum_old = c.cumulative;
            c.cumulative = [cum_old](double r) { return -cum_old(r); };
        }
    }
}

RadialComponent piecewise_component(std::vector<double> edges, std::vector<double> values)
{
    // edges: r_0 = 0 < r_1 < ... < r_m; values: B on [r_{k}, r_{k+1})
    RadialComponent c;
    c.support = edges.back();
    c.breakpoints.assign(edges.begin() + 1, edges.end() - 1);
    c.b = [edges, values](double r) {
        if (r < 0.0 || r >= edges.back()) return 0.0;
        for (std::size_t k = 0; k + 1 < edges.size(); ++k)
            if (r < edges[k + 1]) return values[k];
        return 0.0;
    };
    c.cumulative = [edges, values](double r) {
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
            const double lo = edges[k];
            const double hi = std::min(r, edges[k + 1]);
            if (hi <= lo) break;
            acc += values[k] * 0.5 * (hi * hi - lo * lo);
        }
        return acc;
    };
    return c;
}

} // namespace

double SampledField::value_at(double x, double y) const
{
    const int i = static_cast<int>(std::floor((x - x0) / spacing + 0.5));
    const int j = static_cast<int>(std::floor((y - y0) / spacing + 0.5));
    if (i < 0 || i >= nx || j < 0 || j >= ny) return 0.0;
    return values[static_cast<std::size_t>(j) * nx + i];
}

double SampledField::support_radius() const
{
    double r2max = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (values[static_cast<std::size_t>(j) * nx + i] != 0.0) {
                const double x = x0 + i * spacing, y = y0 + j * spacing;
                r2max = std::max(r2max, x * x + y * y);
            }
    return std::sqrt(r2max) + 0.71 * spacing;
}

bool FieldProfile::radial() const
{
    if (kind == ProfileKind::PlanarSampled) return false;
    return components.size() == 1 && components[0].center[0] == 0.0 &&
           components[0].center[1] == 0.0;
}

double FieldProfile::b_radial(double r) const
{
    if (!radial())
        throw KindMismatchError("b_radial: profile '" + name + "' is not rotationally symmetric");
    return components[0].b(r);
}

double FieldProfile::b_at(double x, double y) const
{
    if (kind == ProfileKind::PlanarSampled) return sampled.value_at(x, y);
    double s = 0.0;
    for (const auto& c : components) {
        const double dx = x - c.center[0], dy = y - c.center[1];
        s += c.b(std::sqrt(dx * dx + dy * dy));
    }
    return s;
}

std::vector<double> FieldProfile::radial_breakpoints() const
{
    if (!radial()) return {};
    auto bp = components[0].breakpoints;
    if (std::isfinite(components[0].support)) bp.push_back(components[0].support);
    std::sort(bp.begin(), bp.end());
    return bp;
}

FieldProfile uniform_disk(double b0, double radius)
{
    if (!(radius > 0.0)) throw std::domain_error("uniform_disk: radius must be positive");
    FieldProfile p;
    p.kind = ProfileKind::RadialPiecewiseConstant;
    p.name = "uniform-disk";
    p.support_radius = radius;
    p.components.push_back(piecewise_component({0.0, radius}, {b0}));
    apply_sign_convention(p);
    return p;
}

FieldProfile zero_flux_annulus(double b_inner, double r1, double r2)
{
    if (!(0.0 < r1 && r1 < r2))
        throw std::domain_error("zero_flux_annulus: need 0 < r1 < r2");
    const double b_outer = -b_inner * r1 * r1 / (r2 * r2 - r1 * r1);
    FieldProfile p;
    p.kind = ProfileKind::RadialPiecewiseConstant;
    p.name = "zero-flux-annulus";
    p.support_radius = r2;
    p.components.push_back(piecewise_component({0.0, r1, r2}, {b_inner, b_outer}));
    apply_sign_convention(p);
    return p;
}

FieldProfile current_shell(double b0, double r1, double r2)
{
    if (!(0.0 < r1 && r1 < r2))
        throw std::domain_error("current_shell: need 0 < r1 < r2");
    FieldProfile p;
    p.kind = ProfileKind::RadialPiecewiseConstant;
    p.name = "current-shell";
    p.support_radius = r2;
    p.components.push_back(piecewise_component({0.0, r1, r2}, {0.0, b0}));
    apply_sign_convention(p);
    return p;
}

namespace {

RadialComponent gaussian_component(double amp, double sigma, double rcut)
{
    RadialComponent c;
    c.support = rcut;
    c.breakpoints = {rcut};
    c.b = [amp, sigma, rcut](double r) {
        return (r < rcut) ? amp * std::exp(-r * r / (2.0 * sigma * sigma)) : 0.0;
    };
    c.cumulative = [amp, sigma, rcut](double r) {
        const double rr = std::min(r, rcut);
        return -amp * sigma * sigma * std::expm1(-rr * rr / (2.0 * sigma * sigma));
    };
    return c;
}

} // namespace

FieldProfile truncated_gaussian(double b0, double sigma, double rcut)
{
    if (!(sigma > 0.0) || !(rcut > 0.0))
        throw std::domain_error("truncated_gaussian: sigma and rcut must be positive");
    FieldProfile p;
    p.kind = ProfileKind::RadialClosedForm;
    p.name = "truncated-gaussian";
    p.support_radius = rcut;
    p.components.push_back(gaussian_component(b0, sigma, rcut));
    apply_sign_convention(p);
    return p;
}

FieldProfile two_bump_asym(double amp_plus, double sigma_plus, double cut_plus,
                           double sigma_minus, double cut_minus)
{
    FieldProfile p;
    p.kind = ProfileKind::PlanarClosedForm;
    p.name = "two-bump-asym";
    const std::array<double, 2> center_plus{0.9, 0.0};
    const std::array<double, 2> center_minus{-1.1, 0.2};
    // solve the negative amplitude for exactly zero total flux
    const double flux_plus =
        amp_plus * sigma_plus * sigma_plus *
        (1.0 - std::exp(-cut_plus * cut_plus / (2.0 * sigma_plus * sigma_plus)));
    const double denom =
        sigma_minus * sigma_minus *
        (1.0 - std::exp(-cut_minus * cut_minus / (2.0 * sigma_minus * sigma_minus)));
    const double amp_minus = -flux_plus / denom;

    RadialComponent plus = gaussian_component(amp_plus, sigma_plus, cut_plus);
    plus.center = center_plus;
    RadialComponent minus = gaussian_component(amp_minus, sigma_minus, cut_minus);
    minus.center = center_minus;
    p.components = {plus, minus};
    const double r_plus = std::hypot(center_plus[0], center_plus[1]) + cut_plus;
    const double r_minus = std::hypot(center_minus[0], center_minus[1]) + cut_minus;
    p.support_radius = std::max(r_plus, r_minus);
    return p;
}

FieldProfile radial_powerlaw(double b0, double p_exp)
{
    if (!(p_exp > 0.0)) throw std::domain_error("radial_powerlaw: p must be positive");
    FieldProfile p;
    p.kind = ProfileKind::RadialClosedForm;
    p.name = "radial-powerlaw";
    p.support_radius = std::numeric_limits<double>::infinity();
    p.decay_exponent = 2.0 * p_exp - 2.0;
    RadialComponent c;
    c.b = [b0, p_exp](double r) { return b0 * std::pow(1.0 + r * r, -p_exp); };
    if (p_exp == 2.0)
        c.cumulative = [b0](double r) { return 0.5 * b0 * r * r / (1.0 + r * r); };
    else if (p_exp == 1.0)
        c.cumulative = [b0](double r) { return 0.5 * b0 * std::log1p(r * r); };
    p.components.push_back(std::move(c));
    apply_sign_convention(p);
    return p;
}

FieldProfile superpose(const FieldProfile& a, const FieldProfile& b)
{
    if (a.kind == ProfileKind::PlanarSampled || b.kind == ProfileKind::PlanarSampled)
        throw KindMismatchError("superpose: sampled fields cannot be superposed");
    FieldProfile p;
    p.kind = ProfileKind::PlanarClosedForm;
    p.name = a.name + "+" + b.name;
    p.components = a.components;
    p.components.insert(p.components.end(), b.components.begin(), b.components.end());
    p.support_radius = std::max(a.support_radius, b.support_radius);
    p.decay_exponent = std::min(a.decay_exponent, b.decay_exponent);
    apply_sign_convention(p);
    return p;
}

FieldProfile scale_field(const FieldProfile& p, double factor)
{
    FieldProfile q = p;
    q.name = p.name + "*" + std::to_string(factor);
    if (q.kind == ProfileKind::PlanarSampled) {
        for (double& v : q.sampled.values) v *= factor;
        return q;
    }
    for (auto& c : q.components) {
        auto b_old = c.b;
        c.b = [b_old, factor](double r) { return factor * b_old(r); };
        if (c.cumulative) {
            auto cum_old = c.cumulative;
            c.cumulative = [cum_old, factor](double r) { return factor * cum_old(r); };
        }
    }
    return q;
}

FieldProfile sampled_from_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("sampled_from_csv: cannot open '" + path + "'");
    std::string header;
    std::getline(in, header);
    for (char& ch : header)
        if (ch == ',') ch = ' ';
    std::istringstream hs(header);
    SampledField f;
    if (!(hs >> f.nx >> f.ny >> f.spacing) || f.nx < 1 || f.ny < 1 || !(f.spacing > 0.0))
        throw UsageError("sampled_from_csv: header must be 'nx,ny,spacing'");
    f.values.reserve(static_cast<std::size_t>(f.nx) * f.ny);
    std::string token;
    while (f.values.size() < static_cast<std::size_t>(f.nx) * f.ny && in >> token) {
        std::replace(token.begin(), token.end(), ',', ' ');
        std::istringstream ts(token);
        double v;
        while (ts >> v) f.values.push_back(v);
    }
    if (f.values.size() != static_cast<std::size_t>(f.nx) * f.ny)
        throw UsageError("sampled_from_csv: expected " + std::to_string(f.nx * f.ny) +
                         " values");
    f.x0 = -0.5 * (f.nx - 1) * f.spacing;
    f.y0 = -0.5 * (f.ny - 1) * f.spacing;
    FieldProfile p;
    p.kind = ProfileKind::PlanarSampled;
    p.name = "sampled:" + path;
    p.sampled = std::move(f);
    p.support_radius = p.sampled.support_radius();
    apply_sign_convention(p);
    return p;
}

void write_sampled_csv(const std::string& path, const SampledField& f)
{
    std::ofstream out(path);
    if (!out) throw UsageError("write_sampled_csv: cannot open '" + path + "'");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d,%d,%.12g\n", f.nx, f.ny, f.spacing);
    out << buf;
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            std::snprintf(buf, sizeof buf, "%.12g", f.values[static_cast<std::size_t>(j) * f.nx + i]);
            out << buf << (i + 1 < f.nx ? "," : "\n");
        }
    }
}

SampledField sample_profile(const FieldProfile& p, int n, double half_width)
{
    SampledField f;
    f.nx = f.ny = n;
    f.spacing = 2.0 * half_width / n;
    f.x0 = -half_width + 0.5 * f.spacing;
    f.y0 = f.x0;
    f.values.resize(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            f.values[static_cast<std::size_t>(j) * n + i] =
                p.b_at(f.x0 + i * f.spacing, f.y0 + j * f.spacing);
    return f;
}

namespace {

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key,
              double fallback)
{
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size())
        throw UsageError("config: value of '" + key + "' is not a number");
    return v;
}

} // namespace

FieldProfile profile_from_kv(const std::map<std::string, std::string>& kv)
{
    auto it = kv.find("profile.kind");
    if (it == kv.end()) throw UsageError("config: missing 'profile.kind'");
    const std::string& kind = it->second;
    if (kind == "uniform-disk")
        return uniform_disk(kv_num(kv, "profile.b0", 1.0), kv_num(kv, "profile.radius", 1.0));
    if (kind == "zero-flux-annulus")
        return zero_flux_annulus(kv_num(kv, "profile.b0", 1.0), kv_num(kv, "profile.r1", 1.0),
                                 kv_num(kv, "profile.r2", 2.0));
    if (kind == "current-shell")
        return current_shell(kv_num(kv, "profile.b0", 2.0), kv_num(kv, "profile.r1", 0.85),
                             kv_num(kv, "profile.r2", 1.15));
    if (kind == "truncated-gaussian")
        return truncated_gaussian(kv_num(kv, "profile.b0", 1.0),
                                  kv_num(kv, "profile.sigma", 0.8),
                                  kv_num(kv, "profile.rcut", 2.4));
    if (kind == "two-bump-asym")
        return two_bump_asym(kv_num(kv, "profile.amp", 1.0),
                             kv_num(kv, "profile.sigma_plus", 0.6),
                             kv_num(kv, "profile.cut_plus", 1.8),
                             kv_num(kv, "profile.sigma_minus", 0.85),
                             kv_num(kv, "profile.cut_minus", 2.55));
    if (kind == "radial-powerlaw")
        return radial_powerlaw(kv_num(kv, "profile.b0", 1.0), kv_num(kv, "profile.p", 2.0));
    if (kind == "file") {
        auto f = kv.find("profile.file");
        if (f == kv.end()) throw UsageError("config: profile.kind=file needs 'profile.file'");
        return sampled_from_csv(f->second);
    }
    throw UsageError("config: unknown profile.kind '" + kind + "'");
}

std::vector<BuiltinInfo> builtin_catalog()
{
    // default_flux values are filled by gauge-level code in the CLI; kept 0
    // here to avoid a dependency cycle. The scenario layer overwrites them.
    return {
        {"uniform-disk", "b0 (default 1), radius (default 1)", true, 0.0},
        {"zero-flux-annulus", "b0 (default 1), r1 (default 1), r2 (default 2)", true, 0.0},
        {"current-shell", "b0 (default 2), r1 (default 0.85), r2 (default 1.15)", true, 0.0},
        {"truncated-gaussian", "b0 (default 1), sigma (default 0.8), rcut (default 2.4)", true,
         0.0},
        {"two-bump-asym",
         "amp (default 1), sigma_plus (0.6), cut_plus (1.8), sigma_minus (0.85), cut_minus "
         "(2.55)",
         false, 0.0},
        {"radial-powerlaw", "b0 (default 1), p (default 2); non-compact", true, 0.0},
    };
}

} // namespace pauli2d

#include "pauli2d/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "pauli2d/errors.hpp"

namespace pauli2d {

void QuadratureGrid::validate() const
{
    if (nodes.size() != weights.size() || nodes.size() != cell_sizes.size())
        throw ContractViolation("QuadratureGrid: array lengths disagree");
    if (dim != 1 && dim != 2)
        throw ContractViolation("QuadratureGrid: dim must be 1 or 2");
    for (double w : weights)
        if (!(w > 0.0))
            throw ContractViolation("QuadratureGrid: weights must be strictly positive");
}

QuadratureGrid cartesian_cells(double half_width, double h,
                               const std::function<bool(double, double)>& keep)
{
    if (!(half_width > 0.0) || !(h > 0.0))
        throw std::domain_error("cartesian_cells: half_width and h must be positive");
    QuadratureGrid g;
    g.dim = 2;
    const int n = static_cast<int>(std::ceil(2.0 * half_width / h));
    const double x0 = -0.5 * n * h + 0.5 * h;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double x = x0 + i * h;
            const double y = x0 + j * h;
            if (!keep || keep(x, y)) {
                g.nodes.push_back({x, y});
                g.weights.push_back(h * h);
                g.cell_sizes.push_back(h * h);
            }
        }
    }
    return g;
}

QuadratureGrid disk_cells(double radius, double h)
{
    return cartesian_cells(radius, h, [radius](double x, double y) {
        return x * x + y * y <= radius * radius;
    });
}

double log_selfterm(double cell_area)
{
    if (!(cell_area > 0.0))
        throw std::domain_error("log_selfterm: cell area must be positive");
    const double r_eq = std::sqrt(cell_area / M_PI);
    return std::log(r_eq) - 0.5;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1] (symmetric halves).
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000
};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714
};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327
};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - hw * kXgk[i]);
        fv[14 - i] = f(c + hw * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    resk *= hw;
    resg *= hw;
    return {resk, std::abs(resk - resg)};
}

struct Interval {
    double error;
    double value;
    double a;
    double b;
    bool operator<(const Interval& o) const { return error < o.error; }
};

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, const std::vector<double>& breakpoints)
{
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, rel_tol, abs_tol, breakpoints);

    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    std::priority_queue<Interval> heap;
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const PanelResult r = gk15(f, cuts[i], cuts[i + 1]);
        heap.push({r.error, r.value, cuts[i], cuts[i + 1]});
        total += r.value;
        err += r.error;
    }

    const int max_panels = 4000;
    int panels = static_cast<int>(cuts.size()) - 1;
    while (err > abs_tol + rel_tol * std::abs(total) && panels < max_panels) {
        const Interval worst = heap.top();
        heap.pop();
        total -= worst.value;
        err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval no longer splittable; keep its estimate
            total += worst.value;
            err += worst.error;
            break;
        }
        for (const auto& half : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            const PanelResult r = gk15(f, half.first, half.second);
            heap.push({r.error, r.value, half.first, half.second});
            total += r.value;
            err += r.error;
        }
        ++panels;
    }
    // accept a machine-noise floor: integrand rounding can keep the GK
    // estimate above an aggressive relative request
    if (err > abs_tol + rel_tol * std::abs(total) && err > 5e-12 * std::abs(total))
        throw ConvergenceError("integrate: adaptive quadrature budget exhausted", err);
    return total;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b)
{
    return gk15(f, a, b).value;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol, const std::vector<double>& breakpoints)
{
    // Doubling panels; stop once two consecutive panels contribute less than
    // rel_tol relative to the accumulated value.
    double left = a;
    double width = std::max(1.0, std::abs(a));
    double total = 0.0;
    int quiet = 0;
    for (int p = 0; p < 220; ++p) {
        const double right = left + width;
        const double piece = integrate(f, left, right, rel_tol * 0.1, 0.0, breakpoints);
        total += piece;
        if (std::abs(piece) <= rel_tol * std::abs(total) + 1e-300) {
            if (++quiet >= 2) return total;
        } else {
            quiet = 0;
        }
        left = right;
        width *= 2.0;
    }
    throw ConvergenceError("integrate_to_infinity: tail did not become negligible", total);
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y))
{
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ContractViolation("CubicSpline: need >= 2 points with matching arrays");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i + 1] > x_[i]))
            throw ContractViolation("CubicSpline: abscissae must be strictly increasing");
    m_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
        const double p = sig * m_[i - 1] + 2.0;
        m_[i] = (sig - 1.0) / p;
        u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
               (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
        u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t k = n - 1; k-- > 0;)
        m_[k] = m_[k] * m_[k + 1] + u[k];
}

double CubicSpline::operator()(double x) const
{
    const std::size_t n = x_.size();
    if (x <= x_.front()) x = x_.front();
    if (x >= x_.back()) x = x_.back();
    std::size_t hi = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
    if (hi == 0) hi = 1;
    if (hi >= n) hi = n - 1;
    const std::size_t lo = hi - 1;
    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - x) / h;
    const double b = (x - x_[lo]) / h;
    return a * y_[lo] + b * y_[hi] +
           ((a * a * a - a) * m_[lo] + (b * b * b - b) * m_[hi]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const
{
    const std::size_t n = x_.size();
    if (x <= x_.front()) x = x_.front();
    if (x >= x_.back()) x = x_.back();
    std::size_t hi = std::upper_bound(x_.begin(), x_.end(), x) - x_.begin();
    if (hi == 0) hi = 1;
    if (hi >= n) hi = n - 1;
    const std::size_t lo = hi - 1;
    const double h = x_[hi] - x_[lo];
    const double a = (x_[hi] - x) / h;
    const double b = (x - x_[lo]) / h;
    return (y_[hi] - y_[lo]) / h +
           ((3.0 * b * b - 1.0) * m_[hi] - (3.0 * a * a - 1.0) * m_[lo]) * h / 6.0;
}

} // namespace pauli2d

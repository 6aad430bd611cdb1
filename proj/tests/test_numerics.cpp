#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <random>

#include "pauli2d/eigen_solvers.hpp"
#include "pauli2d/errors.hpp"
#include "pauli2d/quadrature.hpp"
#include "pauli2d/special_functions.hpp"

using namespace pauli2d;

namespace {

// Reference values computed beforehand with 25-digit arithmetic from the
// integral representation K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt.
struct Checkpoint {
    double x;
    double k0;
    double k1;
};

const Checkpoint kCheckpoints[] = {
    {1e-8, 18.5366122596107784, 99999999.9999999048},
    {1e-6, 13.9314420736264194, 999999.999992784279},
    {1e-4, 9.32627191345027492, 9999.99950868640496},
    {0.01, 4.72124473016109497, 99.9738941182962476},
    {0.1, 2.42706902470201661, 9.85384478087060613},
    {0.5, 0.924419071227665862, 1.65644112000330089},
    {1.0, 0.421024438240708333, 0.601907230197234575},
    {2.0, 0.113893872749533436, 0.139865881816522427},
    {5.0, 0.00369109833404259427, 0.00404461344545216421},
    {10.0, 1.77800623161676518e-5, 1.86487734538255846e-5},
    {20.0, 5.74123781533652429e-10, 5.88305796955703818e-10},
    {50.0, 3.41016774978949551e-23, 3.44410222671755561e-23},
    {100.0, 4.65662822917590202e-45, 4.67985373563690929e-45},
    {200.0, 1.22568197977653345e-88, 1.22874237347298581e-88},
    {400.0, 1.199780043200976e-175, 1.20127883326103257e-175},
    {700.0, 4.66977643168537688e-306, 4.67311079670796611e-306},
};

} // namespace

TEST_CASE("macdonald matches integral-representation checkpoints to 1e-12")
{
    for (const auto& c : kCheckpoints) {
        CHECK(std::abs(macdonald(0, c.x) - c.k0) <= 1e-12 * c.k0);
        CHECK(std::abs(macdonald(1, c.x) - c.k1) <= 1e-12 * c.k1);
    }
}

TEST_CASE("macdonald domain and argument errors")
{
    CHECK_THROWS_AS(macdonald(0, 0.0), std::domain_error);
    CHECK_THROWS_AS(macdonald(1, -1.0), std::domain_error);
    CHECK_THROWS_AS(macdonald(2, 1.0), std::invalid_argument);
    // underflow-consistent zero for huge arguments
    CHECK(macdonald(0, 2000.0) == 0.0);
    // decay envelope: K1(x) < 2 e^{-x} for x >= 50
    for (double x : {50.0, 120.0, 300.0})
        CHECK(macdonald(1, x) < 2.0 * std::exp(-x));
}

TEST_CASE("macdonald small-argument logarithmic form")
{
    const double x = 1e-6;
    const double expected = -std::log(0.5 * x) - kEulerGamma;
    CHECK(std::abs(macdonald(0, x) - expected) <= 1e-6 * expected);
}

TEST_CASE("macdonald strictly positive and decreasing")
{
    double prev0 = std::numeric_limits<double>::infinity();
    double prev1 = prev0;
    for (double x = 0.05; x < 30.0; x *= 1.37) {
        const double v0 = macdonald(0, x);
        const double v1 = macdonald(1, x);
        CHECK(v0 > 0.0);
        CHECK(v1 > 0.0);
        CHECK(v0 < prev0);
        CHECK(v1 < prev1);
        prev0 = v0;
        prev1 = v1;
    }
}

TEST_CASE("derivative identity residuals")
{
    CHECK(macdonald_derivative_identity_check(1.0) < 1e-6);
    CHECK(macdonald_derivative_identity_check(0.1) < 1e-5);
    CHECK(macdonald_derivative_identity_check(10.0) < 1e-8);
    for (double x : {0.1, 1.0, 10.0})
        CHECK(macdonald_derivative_identity_check(x) < 1e-5);
    CHECK_THROWS_AS(macdonald_derivative_identity_check(-2.0), std::domain_error);
}

TEST_CASE("log_selfterm closed forms")
{
    CHECK(log_selfterm(M_PI) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(log_selfterm(4.0 * M_PI) == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-14));
    CHECK_THROWS_AS(log_selfterm(0.0), std::domain_error);
    CHECK_THROWS_AS(log_selfterm(-1.0), std::domain_error);
}

TEST_CASE("log-kernel quadrature with self-term converges on the unit disk")
{
    // Oracle: int_D int_D ln|x-y| d2x d2y over the unit disk. The inner
    // integral is the disk potential 2*pi*phi(r) with phi = r^2/4 - 1/4, so
    // the double integral equals pi^2 * int_0^1 (r^2-1) r dr * 2 = -pi^2/4.
    // (Cross-checked by Monte Carlo before the build: -2.472 +/- 0.005.)
    const double oracle = -M_PI * M_PI / 4.0;
    double prev_err = std::numeric_limits<double>::infinity();
    for (double h : {0.2, 0.1, 0.05}) {
        const QuadratureGrid g = disk_cells(1.0, h);
        double total = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = 0; j < g.size(); ++j) {
                double lnr;
                if (i == j) {
                    lnr = log_selfterm(g.cell_sizes[i]);
                } else {
                    const double dx = g.nodes[i][0] - g.nodes[j][0];
                    const double dy = g.nodes[i][1] - g.nodes[j][1];
                    lnr = 0.5 * std::log(dx * dx + dy * dy);
                }
                total += g.weights[i] * g.weights[j] * lnr;
            }
        }
        const double err = std::abs(total - oracle);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 0.02); // h = 0.05: boundary-cell error dominates
}

TEST_CASE("adaptive quadrature basics")
{
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    // kinked integrand handled via breakpoint
    const double v = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-12, 0.0,
                               {0.3});
    CHECK(v == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-12));
    // semi-infinite decaying tail
    const double w = integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1e-12);
    CHECK(w == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("gauss-legendre integrates polynomials exactly")
{
    std::vector<double> x, w;
    gauss_legendre(8, x, w);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += w[i] * std::pow(x[i], 10);
    CHECK(s == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("quadrature grid validation")
{
    QuadratureGrid g = disk_cells(1.0, 0.3);
    CHECK_NOTHROW(g.validate());
    // weights sum approximates the disk area on refinement
    double area = 0.0;
    for (double w : g.weights) area += w;
    CHECK(std::abs(area - M_PI) < 0.3);
    g.weights[0] = 0.0;
    CHECK_THROWS_AS(g.validate(), ContractViolation);
}

TEST_CASE("dense lowest_eigenpairs on closed-form matrices")
{
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 1, 0;
    auto p = lowest_eigenpairs<double>(m, 2);
    CHECK(p.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(p.values[1] == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(5, 5);
    auto q = lowest_eigenpairs<double>(id, 1);
    CHECK(q.values[0] == doctest::Approx(1.0).epsilon(1e-13));

    Eigen::MatrixXd bad(2, 2);
    bad << 0, 1, 2, 0;
    CHECK_THROWS_AS(lowest_eigenpairs<double>(bad, 1), ContractViolation);
}

TEST_CASE("discrete Dirichlet Laplacian eigenvalue approaches pi^2/L^2")
{
    // Oracle: closed-form eigenvalues of the tridiagonal Toeplitz matrix,
    // lambda_k = (4/h^2) sin^2(k pi h / (2 L)), L = (n+1) h.
    const double length = 1.0;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (int n : {40, 80, 160}) {
        const double h = length / (n + 1);
        TridiagonalMatrix t;
        t.diag = Eigen::VectorXd::Constant(n, 2.0 / (h * h));
        t.off = Eigen::VectorXd::Constant(n - 1, -1.0 / (h * h));
        const double lam = tridiag_smallest(t, 1)[0];
        const double closed = 4.0 / (h * h) * std::pow(std::sin(M_PI * h / (2.0 * length)), 2);
        CHECK(lam == doctest::Approx(closed).epsilon(1e-11));
        const double gap = std::abs(lam - M_PI * M_PI / (length * length));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-2);
}

TEST_CASE("sturm counting and eigenvectors")
{
    const int n = 200;
    TridiagonalMatrix t;
    t.diag = Eigen::VectorXd::Constant(n, 2.0);
    t.off = Eigen::VectorXd::Constant(n - 1, -1.0);
    // spectrum of this Toeplitz matrix lies in (0,4)
    CHECK(sturm_count_below(t, 0.0) == 0);
    CHECK(sturm_count_below(t, 4.001) == n);
    auto evs = tridiag_smallest(t, 3);
    CHECK(evs[0] < evs[1]);
    CHECK(evs[1] < evs[2]);
    const Eigen::VectorXd v = tridiag_eigenvector(t, evs[0]);
    Eigen::VectorXd tv(n);
    for (int i = 0; i < n; ++i) {
        tv[i] = t.diag[i] * v[i];
        if (i > 0) tv[i] += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) tv[i] += t.off[i] * v[i + 1];
    }
    CHECK((tv - evs[0] * v).norm() < 1e-9);
}

TEST_CASE("sparse path agrees with dense oracle and is deterministic")
{
    // random sparse symmetric matrix, dense-solvable size
    const int n = 300;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < n; ++i) {
        trips.emplace_back(i, i, 2.0 + u(rng));
        if (i + 1 < n) {
            const double o = u(rng);
            trips.emplace_back(i, i + 1, o);
            trips.emplace_back(i + 1, i, o);
        }
        const int j = (i * 7 + 13) % n;
        if (j > i + 1) {
            const double o = 0.3 * u(rng);
            trips.emplace_back(i, j, o);
            trips.emplace_back(j, i, o);
        }
    }
    Eigen::SparseMatrix<double> s(n, n);
    s.setFromTriplets(trips.begin(), trips.end());

    auto dense_pairs = lowest_eigenpairs<double>(Eigen::MatrixXd(s), 4);
    auto iter_pairs = shift_invert_lowest<double>(s, 4, 1e-10, 5, dense_pairs.values[0] - 1.0);
    for (int i = 0; i < 4; ++i)
        CHECK(iter_pairs.values[i] == doctest::Approx(dense_pairs.values[i]).epsilon(1e-9));

    auto again = shift_invert_lowest<double>(s, 4, 1e-10, 5, dense_pairs.values[0] - 1.0);
    for (int i = 0; i < 4; ++i)
        CHECK(again.values[i] == iter_pairs.values[i]);

    // ascending order and orthonormal vectors
    for (int i = 0; i + 1 < 4; ++i) CHECK(iter_pairs.values[i] <= iter_pairs.values[i + 1]);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j)
            CHECK(std::abs(iter_pairs.vectors.col(i).dot(iter_pairs.vectors.col(j))) < 1e-8);
}

TEST_CASE("elliptic K by AGM")
{
    CHECK(elliptic_k(0.0) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    // K(0.5) = 1.8540746773013719... (standard value)
    CHECK(elliptic_k(0.5) == doctest::Approx(1.854074677301372).epsilon(1e-12));
}

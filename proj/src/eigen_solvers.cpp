#include "pauli2d/eigen_solvers.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>

#include "pauli2d/errors.hpp"

namespace pauli2d {

namespace {

template <typename Scalar>
void check_selfadjoint_dense(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a)
{
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double gap = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (gap > 1e-12 * scale)
        throw ContractViolation("lowest_eigenpairs: matrix is not self-adjoint");
}

template <typename Scalar>
void check_selfadjoint_sparse(const Eigen::SparseMatrix<Scalar>& a)
{
    Eigen::SparseMatrix<Scalar> d = a - Eigen::SparseMatrix<Scalar>(a.adjoint());
    double gap = 0.0, scale = 1.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(d, k); it; ++it)
            gap = std::max(gap, std::abs(it.value()));
    for (int k = 0; k < a.outerSize(); ++k)
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(a, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    if (gap > 1e-12 * scale)
        throw ContractViolation("lowest_eigenpairs: sparse matrix is not self-adjoint");
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> seeded_start(int n, std::uint64_t seed);

template <>
Eigen::Matrix<double, Eigen::Dynamic, 1> seeded_start<double>(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    v.normalize();
    return v;
}

template <>
Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>
seeded_start<std::complex<double>>(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = std::complex<double>(dist(rng), dist(rng));
    v.normalize();
    return v;
}

template <typename Scalar>
std::pair<double, double> gershgorin(const Eigen::SparseMatrix<Scalar>& a)
{
    const int n = static_cast<int>(a.rows());
    std::vector<double> diag(n, 0.0), radius(n, 0.0);
    for (int k = 0; k < a.outerSize(); ++k)
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(a, k); it; ++it) {
            if (it.row() == it.col())
                diag[it.row()] = std::real(it.value());
            else
                radius[it.row()] += std::abs(it.value());
        }
    double lo = diag[0] - radius[0], hi = diag[0] + radius[0];
    for (int i = 1; i < n; ++i) {
        lo = std::min(lo, diag[i] - radius[i]);
        hi = std::max(hi, diag[i] + radius[i]);
    }
    return {lo, hi};
}

} // namespace

template <typename Scalar>
EigenPairs<Scalar>
lowest_eigenpairs(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a, int k,
                  double tol)
{
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n)
        throw ContractViolation("lowest_eigenpairs: need 1 <= k <= dim");
    check_selfadjoint_dense(a);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(a);
    if (es.info() != Eigen::Success)
        throw ConvergenceError("lowest_eigenpairs: dense eigen-solver failed", 0.0);

    EigenPairs<Scalar> out;
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    out.residuals.resize(k);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    for (int i = 0; i < k; ++i) {
        const auto v = out.vectors.col(i);
        out.residuals[i] = (a * v - Scalar(out.values[i]) * v).norm() / v.norm();
        if (out.residuals[i] > std::max(tol * scale, 1e-10 * scale * n))
            throw ConvergenceError("lowest_eigenpairs: residual above tolerance",
                                   out.residuals[i]);
    }
    return out;
}

template <typename Scalar>
EigenPairs<Scalar> shift_invert_lowest(const Eigen::SparseMatrix<Scalar>& a, int k, double tol,
                                       std::uint64_t seed, double sigma)
{
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n)
        throw ContractViolation("shift_invert_lowest: need 1 <= k <= dim");

    Eigen::SparseMatrix<Scalar> id(n, n);
    id.setIdentity();

    double best_residual = std::numeric_limits<double>::infinity();
    EigenPairs<Scalar> best;

    for (int attempt = 0; attempt < 3; ++attempt) {
        Eigen::SparseMatrix<Scalar> shifted = a - Scalar(sigma) * id;
        shifted.makeCompressed();
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<Scalar>> fact(shifted);
        if (fact.info() != Eigen::Success) {
            auto [glo, ghi] = gershgorin(a);
            sigma = glo - 0.01 * std::max(1.0, ghi - glo);
            continue;
        }

        const int m_max = std::min(n, std::max(3 * k + 40, 70));
        Matrix basis(n, m_max);
        std::vector<double> alpha, beta;
        basis.col(0) = seeded_start<Scalar>(n, seed + 7919 * attempt);

        int m = 0;
        for (int j = 0; j < m_max; ++j) {
            Vector w = fact.solve(basis.col(j));
            alpha.push_back(std::real(basis.col(j).dot(w)));
            // full reorthogonalization, two passes
            for (int pass = 0; pass < 2; ++pass)
                for (int i = 0; i <= j; ++i)
                    w -= basis.col(i) * (basis.col(i).dot(w));
            const double bj = w.norm();
            m = j + 1;
            if (bj < 1e-13 || j + 1 == m_max) break;
            beta.push_back(bj);
            basis.col(j + 1) = w / bj;
        }

        Eigen::MatrixXd td = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            td(i, i) = alpha[i];
            if (i + 1 < m) td(i, i + 1) = td(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(td);
        const int kk = std::min(k, m);

        EigenPairs<Scalar> out;
        out.values.resize(kk);
        out.vectors.resize(n, kk);
        out.residuals.resize(kk);
        // largest theta of (A - sigma)^{-1} are the smallest eigenvalues of A
        for (int i = 0; i < kk; ++i) {
            const int idx = m - 1 - i;
            const double theta = es.eigenvalues()[idx];
            out.values[i] = sigma + 1.0 / theta;
            Vector ritz = basis.leftCols(m) * es.eigenvectors().col(idx).cast<Scalar>();
            ritz.normalize();
            out.vectors.col(i) = ritz;
        }
        // reorder ascending
        std::vector<int> order(kk);
        for (int i = 0; i < kk; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int p, int q) { return out.values[p] < out.values[q]; });
        EigenPairs<Scalar> sorted;
        sorted.values.resize(kk);
        sorted.vectors.resize(n, kk);
        sorted.residuals.resize(kk);
        for (int i = 0; i < kk; ++i) {
            sorted.values[i] = out.values[order[i]];
            sorted.vectors.col(i) = out.vectors.col(order[i]);
        }
        double worst = 0.0;
        for (int i = 0; i < kk; ++i) {
            sorted.residuals[i] =
                (a * sorted.vectors.col(i) - Scalar(sorted.values[i]) * sorted.vectors.col(i))
                    .norm();
            worst = std::max(worst, sorted.residuals[i]);
        }
        const double scale = std::max(1.0, std::abs(sorted.values[kk - 1]));
        if (worst <= tol * scale && kk == k) return sorted;
        if (worst < best_residual && kk == k) {
            best_residual = worst;
            best = sorted;
        }
        // restart with the shift just below the found cluster
        sigma =
            sorted.values[0] - 0.05 * std::max(1.0, std::abs(sorted.values[kk - 1] - sorted.values[0]));
    }
    if (best.values.size() == 0)
        throw ConvergenceError("shift_invert_lowest: no factorization succeeded",
                               best_residual);
    if (best_residual > 1e-5 * std::max(1.0, std::abs(best.values[0])))
        throw ConvergenceError("shift_invert_lowest: Lanczos did not converge", best_residual);
    return best;
}

template <typename Scalar>
EigenPairs<Scalar> lowest_eigenpairs(const Eigen::SparseMatrix<Scalar>& a, int k, double tol,
                                     std::uint64_t seed, double sigma)
{
    const int n = static_cast<int>(a.rows());
    if (k < 1 || k > n)
        throw ContractViolation("lowest_eigenpairs: need 1 <= k <= dim");
    check_selfadjoint_sparse(a);
    if (n <= 4000) {
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense(a);
        return lowest_eigenpairs<Scalar>(dense, k, std::max(tol, 1e-10));
    }
    if (std::isnan(sigma)) {
        auto [glo, ghi] = gershgorin(a);
        sigma = glo - 0.01 * std::max(1.0, ghi - glo);
    }
    return shift_invert_lowest(a, k, tol, seed, sigma);
}

template EigenPairs<double>
lowest_eigenpairs(const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&, int, double);
template EigenPairs<std::complex<double>> lowest_eigenpairs(
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>&, int, double);
template EigenPairs<double> lowest_eigenpairs(const Eigen::SparseMatrix<double>&, int, double,
                                              std::uint64_t, double);
template EigenPairs<std::complex<double>>
lowest_eigenpairs(const Eigen::SparseMatrix<std::complex<double>>&, int, double, std::uint64_t,
                  double);
template EigenPairs<double> shift_invert_lowest(const Eigen::SparseMatrix<double>&, int, double,
                                                std::uint64_t, double);
template EigenPairs<std::complex<double>>
shift_invert_lowest(const Eigen::SparseMatrix<std::complex<double>>&, int, double, std::uint64_t,
                    double);

int sturm_count_below(const TridiagonalMatrix& t, double x)
{
    const int n = t.n();
    int count = 0;
    double d = 1.0;
    const double tiny = 1e-300;
    for (int i = 0; i < n; ++i) {
        const double offsq = (i > 0) ? t.off[i - 1] * t.off[i - 1] : 0.0;
        d = t.diag[i] - x - (i > 0 ? offsq / d : 0.0);
        if (d == 0.0) d = tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

namespace {

std::pair<double, double> tridiag_bounds(const TridiagonalMatrix& t)
{
    const int n = t.n();
    double lo = t.diag[0], hi = t.diag[0];
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < n) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    return {lo, hi};
}

double tridiag_eigenvalue_by_index(const TridiagonalMatrix& t, int index, double lo, double hi)
{
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(t, mid) > index)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> tridiag_eigenvalues_below(const TridiagonalMatrix& t, double bound)
{
    auto [lo, hi] = tridiag_bounds(t);
    (void)hi;
    const int count = sturm_count_below(t, bound);
    std::vector<double> ev(count);
    for (int j = 0; j < count; ++j)
        ev[j] = tridiag_eigenvalue_by_index(t, j, lo, bound);
    return ev;
}

std::vector<double> tridiag_smallest(const TridiagonalMatrix& t, int k)
{
    if (k < 1 || k > t.n())
        throw ContractViolation("tridiag_smallest: need 1 <= k <= n");
    auto [lo, hi] = tridiag_bounds(t);
    std::vector<double> ev(k);
    for (int j = 0; j < k; ++j)
        ev[j] = tridiag_eigenvalue_by_index(t, j, lo, hi);
    return ev;
}

Eigen::VectorXd tridiag_eigenvector(const TridiagonalMatrix& t, double lambda, std::uint64_t seed)
{
    const int n = t.n();
    auto [lo, hi] = tridiag_bounds(t);
    const double scale = std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    const double shift = lambda + 1e-13 * scale;

    Eigen::SparseMatrix<double> m(n, n);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(3 * n);
    for (int i = 0; i < n; ++i) {
        trips.emplace_back(i, i, t.diag[i] - shift);
        if (i + 1 < n) {
            trips.emplace_back(i, i + 1, t.off[i]);
            trips.emplace_back(i + 1, i, t.off[i]);
        }
    }
    m.setFromTriplets(trips.begin(), trips.end());
    m.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(m);
    if (lu.info() != Eigen::Success)
        throw ConvergenceError("tridiag_eigenvector: factorization failed", 0.0);

    Eigen::VectorXd x = seeded_start<double>(n, seed);
    for (int iter = 0; iter < 4; ++iter) {
        Eigen::VectorXd y = lu.solve(x);
        const double norm = y.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) break;
        x = y / norm;
    }
    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
    if (x[imax] < 0.0) x = -x;
    return x;
}

} // namespace pauli2d

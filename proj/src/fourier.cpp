#include "hyperspec/fourier.hpp"

#include <cassert>
#include <cmath>

namespace hyperspec {

cplx FourierSeries::eval(double phi) const {
    cplx s{0.0, 0.0};
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        const double k = kmin + i;
        s += c[i] * std::polar(1.0, k * phi);
    }
    return s;
}

double FourierSeries::max_abs() const {
    double m = 0.0;
    for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
}

FourierSeries FourierSeries::trimmed(double rel_tol) const {
    const double thr = rel_tol * max_abs();
    int first = -1, last = -1;
    for (int i = 0; i < static_cast<int>(c.size()); ++i) {
        if (std::abs(c[i]) > thr) {
            if (first < 0) first = i;
            last = i;
        }
    }
    if (first < 0) return {0, {cplx{0.0, 0.0}}};
    return {kmin + first, std::vector<cplx>(c.begin() + first, c.begin() + last + 1)};
}

FourierSeries fourier_transform(const std::vector<cplx>& values) {
    const int m = static_cast<int>(values.size());
    assert(m >= 1);
    const int kmin = -(m / 2);
    FourierSeries s{kmin, std::vector<cplx>(m)};
    for (int ki = 0; ki < m; ++ki) {
        const double k = kmin + ki;
        cplx acc{0.0, 0.0};
        for (int j = 0; j < m; ++j) {
            const double phi = -M_PI + 2.0 * M_PI * j / m;
            acc += values[j] * std::polar(1.0, -k * phi);
        }
        s.c[ki] = acc / static_cast<double>(m);
    }
    return s;
}

std::vector<cplx> fourier_synthesis(const FourierSeries& s, int m) {
    std::vector<cplx> v(m);
    for (int j = 0; j < m; ++j) v[j] = s.eval(-M_PI + 2.0 * M_PI * j / m);
    return v;
}

BandedOperator toeplitz_mult(const FourierSeries& a, int n) {
    const int dim = 2 * n + 1;
    const int bw = std::max(std::abs(a.kmin), std::abs(a.kmax()));
    BandedOperator op(dim, dim, bw, bw);
    for (int i = 0; i < dim; ++i) {
        const int ki = i - n;
        for (int j = std::max(0, i - bw); j <= std::min(dim - 1, i + bw); ++j) {
            const int kj = j - n;
            cplx v = a.coeff(ki - kj);
            if (v != cplx{0.0, 0.0}) op.set(i, j, v);
        }
    }
    return op;
}

BandedOperator fourier_diff(int order, int n) {
    assert(order == 1 || order == 2);
    const int dim = 2 * n + 1;
    BandedOperator op(dim, dim, 0, 0);
    for (int i = 0; i < dim; ++i) {
        const double k = i - n;
        cplx ik{0.0, k};
        op.set(i, i, order == 1 ? ik : ik * ik);
    }
    return op;
}

Eigen::MatrixXcd periodic_system_matrix(const FourierSeries& a2, const FourierSeries& a1,
                                        const FourierSeries& a0, int n) {
    const int dim = 2 * n + 1;
    auto lop = banded_add(cplx{1.0, 0.0},
                          banded_add(cplx{1.0, 0.0}, banded_mul(toeplitz_mult(a2, n), fourier_diff(2, n)),
                                     cplx{1.0, 0.0}, banded_mul(toeplitz_mult(a1, n), fourier_diff(1, n))),
                          cplx{1.0, 0.0}, toeplitz_mult(a0, n));
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    // top row: y(pi) = sum (-1)^k y_k; remaining rows drop the last operator row
    for (int j = 0; j < dim; ++j) m(0, j) = ((j - n) % 2 == 0) ? 1.0 : -1.0;
    for (int i = 1; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = lop.get(i - 1, j);
    return m;
}

FourierSeries solve_periodic(const FourierSeries& a2, const FourierSeries& a1,
                             const FourierSeries& a0, cplx boundary_value, int n) {
    const int dim = 2 * n + 1;
    Eigen::MatrixXcd m = periodic_system_matrix(a2, a1, a0, n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    rhs(0) = boundary_value;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(1e-13);
    Eigen::VectorXcd x;
    if (qr.rank() == dim) {
        x = qr.solve(rhs);
    } else {
        // eigenfunction case: the operator has periodic null directions. Pin
        // the truncation-artifact mode by restoring the dropped operator row
        // (output index n) and take the minimum-norm consistent solution.
        auto lop = banded_add(cplx{1.0, 0.0},
                              banded_add(cplx{1.0, 0.0}, banded_mul(toeplitz_mult(a2, n), fourier_diff(2, n)),
                                         cplx{1.0, 0.0}, banded_mul(toeplitz_mult(a1, n), fourier_diff(1, n))),
                              cplx{1.0, 0.0}, toeplitz_mult(a0, n));
        Eigen::MatrixXcd aug(dim + 1, dim);
        aug.topRows(dim) = m;
        for (int j = 0; j < dim; ++j) aug(dim, j) = lop.get(dim - 1, j);
        Eigen::VectorXcd augrhs = Eigen::VectorXcd::Zero(dim + 1);
        augrhs(0) = boundary_value;
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(aug);
        cod.setThreshold(1e-13);
        x = cod.solve(augrhs);
        if (!x.allFinite() || (aug * x - augrhs).norm() > 1e-8 * (augrhs.norm() + 1.0))
            throw SolverError("periodic system is singular");
    }
    FourierSeries s{-n, std::vector<cplx>(dim)};
    for (int i = 0; i < dim; ++i) s.c[i] = x(i);
    return s;
}

} // namespace hyperspec

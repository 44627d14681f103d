#ifndef HYPERSPEC_FOURIER_HPP
#define HYPERSPEC_FOURIER_HPP

#include <vector>

#include "hyperspec/cheb.hpp"
#include "hyperspec/types.hpp"

namespace hyperspec {

/// Truncated complex Fourier expansion sum_k c_k e^{i k phi} on [-pi, pi),
/// over a contiguous wavenumber range [kmin, kmax].
struct FourierSeries {
    int kmin = 0;
    std::vector<cplx> c;

    int kmax() const { return kmin + static_cast<int>(c.size()) - 1; }
    cplx coeff(int k) const {
        int i = k - kmin;
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : cplx{0.0, 0.0};
    }
    cplx eval(double phi) const;
    double max_abs() const;

    /// Sub-series with leading/trailing coefficients below rel_tol * max
    /// magnitude dropped.
    FourierSeries trimmed(double rel_tol) const;

    static FourierSeries symmetric(int kmax_abs) {
        return {-kmax_abs, std::vector<cplx>(2 * kmax_abs + 1, cplx{0.0, 0.0})};
    }
};

/// DFT of values at the m equispaced points phi_j = -pi + 2*pi*j/m; index
/// range [-m/2, m/2-1] for even m, symmetric for odd m. Exact for
/// band-limited data.
FourierSeries fourier_transform(const std::vector<cplx>& values);

/// Values of the series at the m equispaced points phi_j = -pi + 2*pi*j/m.
std::vector<cplx> fourier_synthesis(const FourierSeries& s, int m);

/// Toeplitz multiplication operator for a band-limited a(phi), acting on
/// coefficients with index range [-n, n] (matrix rows/cols 0..2n <-> k-n).
BandedOperator toeplitz_mult(const FourierSeries& a, int n);

/// Diagonal differentiation (i k)^order on the index range [-n, n].
BandedOperator fourier_diff(int order, int n);

/// Solve a2 y'' + a1 y' + a0 y = 0 periodically with the single dense
/// condition sum_k (-1)^k y_k = boundary_value replacing the top row.
FourierSeries solve_periodic(const FourierSeries& a2, const FourierSeries& a1,
                             const FourierSeries& a0, cplx boundary_value, int n);

/// Dense matrix of the periodic system (diagnostics: conditioning studies).
Eigen::MatrixXcd periodic_system_matrix(const FourierSeries& a2, const FourierSeries& a1,
                                        const FourierSeries& a0, int n);

} // namespace hyperspec

#endif

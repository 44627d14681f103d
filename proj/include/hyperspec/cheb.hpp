#ifndef HYPERSPEC_CHEB_HPP
#define HYPERSPEC_CHEB_HPP

#include <vector>

#include <Eigen/Dense>

#include "hyperspec/types.hpp"

namespace hyperspec {

/// Truncated Chebyshev expansion sum_j c_j T_j(l) on an interval [lo,hi],
/// where l is the affine image of x in [-1,1]. Coefficients are complex;
/// immutable value type.
class ChebSeries {
public:
    ChebSeries() = default;
    explicit ChebSeries(std::vector<cplx> coeffs, Interval iv = {})
        : c_(std::move(coeffs)), iv_(iv) {}
    ChebSeries(std::initializer_list<cplx> coeffs, Interval iv = {}) : c_(coeffs), iv_(iv) {}

    const std::vector<cplx>& coeffs() const { return c_; }
    const Interval& interval() const { return iv_; }
    int size() const { return static_cast<int>(c_.size()); }

    /// Clenshaw evaluation at a point of the interval (complex x allowed,
    /// used for continuation diagnostics).
    cplx eval(double x) const { return eval_unit(iv_.to_unit(x)); }
    cplx eval(cplx x) const { return eval_unit(iv_.to_unit(x)); }

    /// Evaluation directly in the mapped variable l in [-1,1].
    cplx eval_unit(cplx ell) const;

    /// d/dx at an endpoint, end = +1 or -1, using T'_j(1) = j^2 and
    /// T'_j(-1) = (-1)^{j+1} j^2 with the chain-rule factor of the map.
    cplx endpoint_derivative(int end) const;

    /// Series of d/dx (coefficient recurrence), same interval.
    ChebSeries derivative() const;

    /// Largest magnitude coefficient.
    double max_abs() const;

    /// Number of leading coefficients above rel_tol * max_abs().
    int effective_length(double rel_tol) const;

    /// Copy with trailing coefficients below rel_tol * max_abs() dropped.
    ChebSeries trimmed(double rel_tol) const;

private:
    std::vector<cplx> c_;
    Interval iv_;
};

/// Chebyshev points of the second kind, cos(j*pi/(n-1)), j = 0..n-1
/// (descending from +1 to -1); n = 1 gives {1}.
std::vector<double> cheb_points(int n);

/// Values at cheb_points(n) -> coefficients (direct O(n^2) summation).
std::vector<cplx> cheb_transform(const std::vector<cplx>& values);

/// Coefficients -> values at cheb_points(n).
std::vector<cplx> cheb_synthesis(const std::vector<cplx>& coeffs, int n);

/// Expansion in ultraspherical (Gegenbauer) polynomials C_j^(lambda),
/// lambda in {1,2}; carrier for differentiated series.
struct UltraSeries {
    std::vector<cplx> c;
    int lambda = 1;
    Interval iv = {};

    cplx eval_unit(double ell) const;
};

/// Banded matrix with an optional list of dense rows (almost-banded form).
/// Entries outside the declared band and dense rows are exactly zero.
class BandedOperator {
public:
    struct DenseRow {
        int row;
        std::vector<cplx> vals; // length = cols
    };

    BandedOperator(int rows, int cols, int kl, int ku);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }

    bool in_band(int i, int j) const {
        return i - j <= kl_ && j - i <= ku_;
    }

    cplx get(int i, int j) const;
    void set(int i, int j, cplx v);
    void add(int i, int j, cplx v);

    void attach_dense_row(int i, std::vector<cplx> vals);
    const std::vector<DenseRow>& dense_rows() const { return dense_rows_; }

    std::vector<cplx> apply(const std::vector<cplx>& x) const;
    Eigen::MatrixXcd dense() const;

    /// Top-left window [0,r) x [0,c) of a pure-banded operator.
    BandedOperator window(int r, int c) const;

    /// Window dropping the first c0 columns: entries (i, j) = this(i, j + c0).
    BandedOperator shift_cols(int c0) const;

private:
    int rows_, cols_, kl_, ku_;
    std::vector<cplx> data_; // column-major, ldab = kl+ku+1
    std::vector<DenseRow> dense_rows_;

    int idx(int i, int j) const { return j * (kl_ + ku_ + 1) + (ku_ + i - j); }
};

/// alpha*A + beta*B (pure banded operands).
BandedOperator banded_add(cplx alpha, const BandedOperator& a, cplx beta, const BandedOperator& b);
/// A*B (pure banded operands), bands add.
BandedOperator banded_mul(const BandedOperator& a, const BandedOperator& b);

/// Ultraspherical differentiation: order 1 maps T-coefficients to C^(1)
/// coefficients of the derivative, order 2 to C^(2) of the second derivative.
BandedOperator diff_operator(int order, int rows, int cols);

/// Basis conversion: step 0 is T -> C^(1), step 1 is C^(1) -> C^(2).
BandedOperator conversion_operator(int step, int rows, int cols);

/// Multiplication by a(l) acting on T-coefficients (Toeplitz plus almost
/// Hankel form); a given by its Chebyshev coefficients.
BandedOperator mult_operator_T(const std::vector<cplx>& a, int rows, int cols);

/// Multiplication by a(l) acting on C^(lambda) coefficients, built from the
/// Gegenbauer three-term product recurrence; a given by Chebyshev coefficients.
BandedOperator mult_operator_C(int lambda, const std::vector<cplx>& a, int rows, int cols);

} // namespace hyperspec

#endif

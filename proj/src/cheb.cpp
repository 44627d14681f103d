#include "hyperspec/cheb.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace hyperspec {

cplx ChebSeries::eval_unit(cplx ell) const {
    if (c_.empty()) return {0.0, 0.0};
    // Clenshaw backward recurrence
    cplx b1{0.0, 0.0}, b2{0.0, 0.0};
    const cplx two_ell = 2.0 * ell;
    for (int j = static_cast<int>(c_.size()) - 1; j >= 1; --j) {
        cplx b0 = c_[j] + two_ell * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c_[0] + ell * b1 - b2;
}

cplx ChebSeries::endpoint_derivative(int end) const {
    assert(end == 1 || end == -1);
    cplx s{0.0, 0.0};
    for (int j = 1; j < size(); ++j) {
        double tp = static_cast<double>(j) * j; // T'_j(1) = j^2
        if (end == -1 && j % 2 == 0) tp = -tp;  // T'_j(-1) = (-1)^{j+1} j^2
        s += c_[j] * tp;
    }
    return s / iv_.half_width();
}

ChebSeries ChebSeries::derivative() const {
    const int n = size();
    if (n <= 1) return ChebSeries({}, iv_);
    std::vector<cplx> d(n - 1, cplx{0.0, 0.0});
    // d_{k-1} = d_{k+1} + 2k c_k, downward; then halve d_0
    for (int k = n - 1; k >= 1; --k) {
        cplx dk = (k + 1 < n - 1 ? d[k + 1] : cplx{0.0, 0.0}) + 2.0 * static_cast<double>(k) * c_[k];
        d[k - 1] = dk;
    }
    d[0] *= 0.5;
    const double scale = 1.0 / iv_.half_width();
    for (auto& v : d) v *= scale;
    return ChebSeries(std::move(d), iv_);
}

double ChebSeries::max_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

int ChebSeries::effective_length(double rel_tol) const {
    if (c_.empty()) return 0;
    const double thr = rel_tol * max_abs();
    int last = -1;
    for (int j = 0; j < size(); ++j)
        if (std::abs(c_[j]) > thr) last = j;
    return last + 1 < 1 ? 1 : last + 1;
}

ChebSeries ChebSeries::trimmed(double rel_tol) const {
    int len = effective_length(rel_tol);
    return ChebSeries(std::vector<cplx>(c_.begin(), c_.begin() + len), iv_);
}

std::vector<double> cheb_points(int n) {
    assert(n >= 1);
    if (n == 1) return {1.0};
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = std::cos(M_PI * j / (n - 1));
    return x;
}

std::vector<cplx> cheb_transform(const std::vector<cplx>& values) {
    const int n = static_cast<int>(values.size());
    assert(n >= 1);
    if (n == 1) return {values[0]};
    // DCT-I normalization: c_k = (2/(n-1)) sum'' v_j cos(pi j k/(n-1)),
    // with first/last terms halved, and c_0, c_{n-1} halved afterwards.
    std::vector<cplx> c(n);
    const int m = n - 1;
    for (int k = 0; k < n; ++k) {
        cplx s = 0.5 * (values[0] + (k % 2 == 0 ? values[m] : -values[m]));
        for (int j = 1; j < m; ++j)
            s += values[j] * std::cos(M_PI * j * k / m);
        c[k] = s * (2.0 / m);
    }
    c[0] *= 0.5;
    c[m] *= 0.5;
    return c;
}

std::vector<cplx> cheb_synthesis(const std::vector<cplx>& coeffs, int n) {
    ChebSeries s(coeffs);
    auto x = cheb_points(n);
    std::vector<cplx> v(n);
    for (int j = 0; j < n; ++j) v[j] = s.eval_unit(cplx(x[j], 0.0));
    return v;
}

cplx UltraSeries::eval_unit(double ell) const {
    // forward three-term recurrence for C_j^(lambda)
    cplx s{0.0, 0.0};
    double pjm1 = 1.0;                 // C_0
    double pj = 2.0 * lambda * ell;    // C_1
    if (!c.empty()) s += c[0] * pjm1;
    if (c.size() > 1) s += c[1] * pj;
    for (int j = 1; j + 1 < static_cast<int>(c.size()); ++j) {
        double pjp1 = (2.0 * (j + lambda) * ell * pj - (j + 2 * lambda - 1) * pjm1) / (j + 1);
        s += c[j + 1] * pjp1;
        pjm1 = pj;
        pj = pjp1;
    }
    return s;
}

BandedOperator::BandedOperator(int rows, int cols, int kl, int ku)
    : rows_(rows), cols_(cols), kl_(kl), ku_(ku),
      data_(static_cast<size_t>(cols) * (kl + ku + 1), cplx{0.0, 0.0}) {
    assert(rows >= 0 && cols >= 0 && kl >= 0 && ku >= 0);
}

cplx BandedOperator::get(int i, int j) const {
    for (const auto& dr : dense_rows_)
        if (dr.row == i) return dr.vals[j];
    if (!in_band(i, j)) return {0.0, 0.0};
    return data_[idx(i, j)];
}

void BandedOperator::set(int i, int j, cplx v) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    assert(in_band(i, j));
    data_[idx(i, j)] = v;
}

void BandedOperator::add(int i, int j, cplx v) {
    assert(in_band(i, j));
    data_[idx(i, j)] += v;
}

void BandedOperator::attach_dense_row(int i, std::vector<cplx> vals) {
    assert(static_cast<int>(vals.size()) == cols_);
    dense_rows_.push_back({i, std::move(vals)});
}

std::vector<cplx> BandedOperator::apply(const std::vector<cplx>& x) const {
    assert(static_cast<int>(x.size()) == cols_);
    std::vector<cplx> y(rows_, cplx{0.0, 0.0});
    for (int i = 0; i < rows_; ++i) {
        const int j0 = std::max(0, i - kl_);
        const int j1 = std::min(cols_ - 1, i + ku_);
        cplx s{0.0, 0.0};
        for (int j = j0; j <= j1; ++j) s += data_[idx(i, j)] * x[j];
        y[i] = s;
    }
    for (const auto& dr : dense_rows_) {
        cplx s{0.0, 0.0};
        for (int j = 0; j < cols_; ++j) s += dr.vals[j] * x[j];
        y[dr.row] = s;
    }
    return y;
}

Eigen::MatrixXcd BandedOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows_, cols_);
    for (int i = 0; i < rows_; ++i) {
        const int j0 = std::max(0, i - kl_);
        const int j1 = std::min(cols_ - 1, i + ku_);
        for (int j = j0; j <= j1; ++j) m(i, j) = data_[idx(i, j)];
    }
    for (const auto& dr : dense_rows_)
        for (int j = 0; j < cols_; ++j) m(dr.row, j) = dr.vals[j];
    return m;
}

BandedOperator BandedOperator::window(int r, int c) const {
    assert(dense_rows_.empty());
    assert(r <= rows_ && c <= cols_);
    BandedOperator w(r, c, kl_, ku_);
    for (int i = 0; i < r; ++i) {
        const int j0 = std::max(0, i - kl_);
        const int j1 = std::min(c - 1, i + ku_);
        for (int j = j0; j <= j1; ++j) w.set(i, j, data_[idx(i, j)]);
    }
    return w;
}

BandedOperator BandedOperator::shift_cols(int c0) const {
    assert(dense_rows_.empty());
    const int c = cols_ - c0;
    // entry (i, j') = this(i, j' + c0): band offsets shift by c0
    BandedOperator w(rows_, c, kl_ + c0, std::max(ku_ - c0, 0));
    for (int i = 0; i < rows_; ++i) {
        const int j0 = std::max(0, i - kl_);
        const int j1 = std::min(cols_ - 1, i + ku_);
        for (int j = std::max(j0, c0); j <= j1; ++j)
            w.set(i, j - c0, data_[idx(i, j)]);
    }
    return w;
}

BandedOperator banded_add(cplx alpha, const BandedOperator& a, cplx beta, const BandedOperator& b) {
    assert(a.rows() == b.rows() && a.cols() == b.cols());
    assert(a.dense_rows().empty() && b.dense_rows().empty());
    BandedOperator r(a.rows(), a.cols(), std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
    for (int i = 0; i < r.rows(); ++i) {
        const int j0 = std::max(0, i - r.lower());
        const int j1 = std::min(r.cols() - 1, i + r.upper());
        for (int j = j0; j <= j1; ++j) {
            cplx v = alpha * a.get(i, j) + beta * b.get(i, j);
            r.set(i, j, v);
        }
    }
    return r;
}

BandedOperator banded_mul(const BandedOperator& a, const BandedOperator& b) {
    assert(a.cols() == b.rows());
    assert(a.dense_rows().empty() && b.dense_rows().empty());
    BandedOperator r(a.rows(), b.cols(), a.lower() + b.lower(), a.upper() + b.upper());
    for (int i = 0; i < r.rows(); ++i) {
        const int k0 = std::max(0, i - a.lower());
        const int k1 = std::min(a.cols() - 1, i + a.upper());
        const int j0 = std::max(0, i - r.lower());
        const int j1 = std::min(r.cols() - 1, i + r.upper());
        for (int j = j0; j <= j1; ++j) {
            cplx s{0.0, 0.0};
            const int kk0 = std::max(k0, j - b.upper());
            const int kk1 = std::min(k1, j + b.lower());
            for (int k = kk0; k <= kk1; ++k) s += a.get(i, k) * b.get(k, j);
            r.set(i, j, s);
        }
    }
    return r;
}

BandedOperator diff_operator(int order, int rows, int cols) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("diff_operator: order must be 1 or 2");
    BandedOperator d(rows, cols, 0, order);
    if (order == 1) {
        for (int j = 0; j < rows && j + 1 < cols; ++j)
            d.set(j, j + 1, cplx(j + 1.0, 0.0));
    } else {
        for (int j = 0; j < rows && j + 2 < cols; ++j)
            d.set(j, j + 2, cplx(2.0 * (j + 2.0), 0.0));
    }
    return d;
}

BandedOperator conversion_operator(int step, int rows, int cols) {
    assert(step == 0 || step == 1);
    BandedOperator s(rows, cols, 0, 2);
    for (int j = 0; j < std::min(rows, cols); ++j) {
        double diag, super;
        if (step == 0) { // T -> C^(1)
            diag = (j == 0) ? 1.0 : 0.5;
            super = -0.5;
        } else {         // C^(1) -> C^(2)
            diag = 1.0 / (j + 1.0);
            super = -1.0 / (j + 3.0);
        }
        s.set(j, j, cplx(diag, 0.0));
        if (j + 2 < cols) s.set(j, j + 2, cplx(super, 0.0));
    }
    return s;
}

BandedOperator mult_operator_T(const std::vector<cplx>& a, int rows, int cols) {
    const int m = static_cast<int>(a.size());
    const int bw = std::max(m - 1, 0);
    BandedOperator op(rows, cols, bw, bw);
    auto coef = [&](int k) -> cplx { return (k >= 0 && k < m) ? a[k] : cplx{0.0, 0.0}; };
    for (int i = 0; i < rows; ++i) {
        const int j0 = std::max(0, i - bw);
        const int j1 = std::min(cols - 1, i + bw);
        for (int j = j0; j <= j1; ++j) {
            cplx v = coef(std::abs(i - j)); // Toeplitz part, diagonal is 2 a_0
            if (i == j) v += coef(0);
            if (i >= 1) v += coef(i + j);   // almost-Hankel part, first row zero
            op.set(i, j, 0.5 * v);
        }
    }
    return op;
}

namespace {

// x * C_j^(lambda) = ((j+1) C_{j+1} + (j+2l-1) C_{j-1}) / (2(j+l))
BandedOperator gegenbauer_jacobi(int lambda, int n) {
    BandedOperator j(n, n, 1, 1);
    for (int i = 0; i < n; ++i) {
        if (i >= 1) {
            // from x*C_{i-1}: coefficient of C_i is i/(2(i-1+l))
            j.set(i, i - 1, cplx(i / (2.0 * (i - 1.0 + lambda)), 0.0));
        }
        if (i + 1 < n) {
            // from x*C_{i+1}: coefficient of C_i is (i+2l)/(2(i+1+l))
            j.set(i, i + 1, cplx((i + 2.0 * lambda) / (2.0 * (i + 1.0 + lambda)), 0.0));
        }
    }
    return j;
}

// convert Chebyshev coefficients to C^(lambda) coefficients
std::vector<cplx> to_ultra(int lambda, const std::vector<cplx>& aT) {
    const int n = static_cast<int>(aT.size());
    auto s0 = conversion_operator(0, n, n);
    auto v = s0.apply(aT);
    if (lambda == 2) {
        auto s1 = conversion_operator(1, n, n);
        v = s1.apply(v);
    }
    return v;
}

} // namespace

BandedOperator mult_operator_C(int lambda, const std::vector<cplx>& a, int rows, int cols) {
    assert(lambda == 1 || lambda == 2);
    const int m = static_cast<int>(a.size());
    const int n = std::max(rows, cols);
    const int pad = n + m + 2;
    auto alpha = to_ultra(lambda, a);

    // M = sum_p alpha_p C_p(J), accumulated with the Gegenbauer recurrence
    // C_{p+1}(J) = (2(p+l)/(p+1)) J C_p(J) - ((p+2l-1)/(p+1)) C_{p-1}(J).
    auto jac = gegenbauer_jacobi(lambda, pad);
    BandedOperator acc(pad, pad, 0, 0);
    BandedOperator pm1(pad, pad, 0, 0); // C_0(J) = I
    for (int i = 0; i < pad; ++i) pm1.set(i, i, cplx(1.0, 0.0));
    if (m > 0)
        acc = banded_add(alpha[0], pm1, cplx{0.0, 0.0}, pm1);
    if (m > 1) {
        BandedOperator p = banded_add(cplx(2.0 * lambda, 0.0), jac, cplx{0.0, 0.0}, jac); // C_1(J) = 2l J
        acc = banded_add(cplx(1.0, 0.0), acc, alpha[1], p);
        for (int deg = 1; deg + 1 < m; ++deg) {
            BandedOperator jp = banded_mul(jac, p);
            BandedOperator pnext = banded_add(cplx(2.0 * (deg + lambda) / (deg + 1.0), 0.0), jp,
                                              cplx(-(deg + 2.0 * lambda - 1.0) / (deg + 1.0), 0.0), pm1);
            pm1 = p;
            p = pnext;
            acc = banded_add(cplx(1.0, 0.0), acc, alpha[deg + 1], p);
        }
    }
    // crop to requested window with bandwidth m-1
    const int bw = std::max(m - 1, 0);
    BandedOperator out(rows, cols, bw, bw);
    for (int i = 0; i < rows; ++i) {
        const int j0 = std::max(0, i - bw);
        const int j1 = std::min(cols - 1, i + bw);
        for (int j = j0; j <= j1; ++j) out.set(i, j, acc.get(i, j));
    }
    return out;
}

} // namespace hyperspec

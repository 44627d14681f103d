#ifndef HYPERSPEC_ORACLE_HPP
#define HYPERSPEC_ORACLE_HPP

#include <mpfr.h>

#include <string>
#include <vector>

#include "hyperspec/types.hpp"

namespace hyperspec {

/// Arbitrary-precision real (MPFR), RAII.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = 128) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    BigFloat(double x, mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_add); }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_sub); }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_mul); }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return bin(a, b, mpfr_div); }
    BigFloat operator-() const { BigFloat r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    friend BigFloat sqrt(const BigFloat& a) { return un(a, mpfr_sqrt); }
    friend BigFloat log(const BigFloat& a) { return un(a, mpfr_log); }
    friend BigFloat exp(const BigFloat& a) { return un(a, mpfr_exp); }
    friend BigFloat sin(const BigFloat& a) { return un(a, mpfr_sin); }
    friend BigFloat cos(const BigFloat& a) { return un(a, mpfr_cos); }
    friend BigFloat abs(const BigFloat& a) { return un(a, mpfr_abs); }
    friend BigFloat atan2(const BigFloat& y, const BigFloat& x) { return bin(y, x, mpfr_atan2); }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }

    /// floor(log2 |x|) + 1; a large negative sentinel for x = 0.
    long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }

private:
    mpfr_t v_;
    using mpfr_bin = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using mpfr_un = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    static BigFloat bin(const BigFloat& a, const BigFloat& b, mpfr_bin f) {
        BigFloat r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat un(const BigFloat& a, mpfr_un f) {
        BigFloat r(a.prec());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
};

/// Arbitrary-precision complex built on BigFloat, with the operations the
/// series oracle needs (mul/div/abs/log/exp/pow).
class BigComplex {
public:
    BigComplex() = default;
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
    BigComplex(cplx z, mpfr_prec_t bits) : re_(z.real(), bits), im_(z.imag(), bits) {}

    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }
    cplx to_cplx() const { return {re_.to_double(), im_.to_double()}; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
        return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
    }

    friend BigFloat abs(const BigComplex& a) { return sqrt(a.re_ * a.re_ + a.im_ * a.im_); }
    friend BigComplex log(const BigComplex& a) {
        BigFloat half(0.5, a.re_.prec());
        return {half * log(a.re_ * a.re_ + a.im_ * a.im_), atan2(a.im_, a.re_)};
    }
    friend BigComplex exp(const BigComplex& a) {
        BigFloat m = exp(a.re_);
        return {m * cos(a.im_), m * sin(a.im_)};
    }
    friend BigComplex pow(const BigComplex& base, const BigComplex& e) {
        return exp(e * log(base));
    }

    long max_exponent() const { return std::max(re_.exponent(), im_.exponent()); }

private:
    BigFloat re_, im_;
};

struct HypParams; // real_line.hpp

/// Gauss hypergeometric series reference at the requested decimal precision.
/// Direct Maclaurin summation for |z| <= 0.7, Pfaff-transformed summation for
/// Re z < 1/2; throws OracleError outside those regions, on non-convergence,
/// or for c at a non-positive integer. Working precision is raised
/// automatically when the summation cancels catastrophically.
BigComplex series_2f1_big(cplx a, cplx b, cplx c, cplx z, int digits);
cplx series_2f1(cplx a, cplx b, cplx c, cplx z, int digits = 40);
/// The Pfaff-transformed route alone (Re z < 1/2); the direct route and this
/// one are cross-checked against each other where both converge.
BigComplex series_2f1_pfaff_big(cplx a, cplx b, cplx c, cplx z, int digits);
/// True where the summation also converges within a practical term budget
/// (callers use this to decide when a reference value is available).
bool oracle_region(cplx z);

/// Principal-branch (1-z)^(1/3), the closed form of the test example.
cplx closed_form_test(cplx z);
BigComplex closed_form_test_big(cplx z, int digits);

/// One row of the reference tables.
struct TableRow {
    cplx a, b, c, z;
    cplx f;
    double df;   // reported relative deviation
    int n;       // reported coefficient count; 0 when not reported
    int table;   // 1 = real z, 2 = complex z
    std::string f_re_str;
    std::string f_im_str;
};

/// All 19 reference rows, values at the printed precision.
const std::vector<TableRow>& table_reference();

/// Parse rows from a CSV file in the shipped format
/// (a_re,...,z_im,F_re,F_im,dF,n,source_table; header line allowed).
std::vector<TableRow> load_table_csv(const std::string& path);

/// Half unit in the last printed place of a decimal literal.
double printed_half_ulp(const std::string& printed);

} // namespace hyperspec

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperspec/fourier.hpp"
#include "testutil.hpp"

using namespace hyperspec;

namespace {

std::vector<cplx> unit_range(int k, int n) {
    // coefficient vector over [-n, n] with a one at wavenumber k
    std::vector<cplx> e(2 * n + 1, cplx{0, 0});
    e[k + n] = {1, 0};
    return e;
}

} // namespace

TEST_CASE("toeplitz multiplication operators") {
    const int n = 6;
    FourierSeries one{0, {{1, 0}}};
    auto ident = toeplitz_mult(one, n);
    auto x = testutil::random_coeffs(2 * n + 1);
    auto ix = ident.apply(x);
    for (int i = 0; i <= 2 * n; ++i) CHECK(std::abs(ix[i] - x[i]) < 1e-15);

    FourierSeries eip{1, {{1, 0}}}; // e^{i phi}
    auto shift = toeplitz_mult(eip, n);
    auto s = shift.apply(unit_range(0, n));
    CHECK(std::abs(s[1 + n] - cplx{1, 0}) < 1e-15);
    for (int k = -n; k <= n; ++k)
        if (k != 1) CHECK(std::abs(s[k + n]) < 1e-15);

    FourierSeries twocos{-1, {{1, 0}, {0, 0}, {1, 0}}}; // 2 cos(phi)
    auto tc = toeplitz_mult(twocos, n).apply(unit_range(0, n));
    CHECK(std::abs(tc[-1 + n] - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(tc[1 + n] - cplx{1, 0}) < 1e-15);
}

TEST_CASE("diagonal differentiation") {
    const int n = 4;
    auto d1 = fourier_diff(1, n);
    auto d2 = fourier_diff(2, n);
    auto e1 = d1.apply(unit_range(1, n));
    CHECK(std::abs(e1[1 + n] - cplx{0, 1}) < 1e-15);
    auto e2 = d2.apply(unit_range(2, n));
    CHECK(std::abs(e2[2 + n] - cplx{-4, 0}) < 1e-15);
    auto e0 = d1.apply(unit_range(0, n));
    for (auto& v : e0) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("transforms") {
    std::vector<cplx> ones(9, cplx{1, 0});
    auto c = fourier_transform(ones);
    CHECK(std::abs(c.coeff(0) - cplx{1, 0}) < 1e-14);
    for (int k = c.kmin; k <= c.kmax(); ++k)
        if (k != 0) CHECK(std::abs(c.coeff(k)) < 1e-14);

    const int m = 16;
    std::vector<cplx> cosv(m), e2v(m);
    for (int j = 0; j < m; ++j) {
        double phi = -M_PI + 2 * M_PI * j / m;
        cosv[j] = {std::cos(phi), 0.0};
        e2v[j] = std::polar(1.0, 2 * phi);
    }
    auto cc = fourier_transform(cosv);
    CHECK(std::abs(cc.coeff(1) - cplx{0.5, 0}) < 1e-14);
    CHECK(std::abs(cc.coeff(-1) - cplx{0.5, 0}) < 1e-14);
    auto ce = fourier_transform(e2v);
    CHECK(std::abs(ce.coeff(2) - cplx{1, 0}) < 1e-14);

    // round trip for random band-limited data, larger K
    const int kk = 200;
    FourierSeries s{-kk, testutil::random_coeffs(2 * kk + 1)};
    auto vals = fourier_synthesis(s, 2 * kk + 1);
    auto back = fourier_transform(vals);
    double err = 0;
    for (int k = -kk; k <= kk; ++k) err = std::max(err, std::abs(back.coeff(k) - s.coeff(k)));
    CHECK(err < 1e-13);
}

TEST_CASE("toeplitz multiplication equals pointwise multiplication") {
    const int kk = 30, m = 4;
    FourierSeries a{-m, testutil::random_coeffs(2 * m + 1)};
    FourierSeries y{-kk, testutil::random_coeffs(2 * kk + 1)};

    auto op = toeplitz_mult(a, kk + m);
    std::vector<cplx> ypad(2 * (kk + m) + 1, cplx{0, 0});
    for (int k = -kk; k <= kk; ++k) ypad[k + kk + m] = y.coeff(k);
    auto prod = op.apply(ypad);

    const int grid = 2 * (kk + m) + 1;
    auto av = fourier_synthesis(a, grid);
    auto yv = fourier_synthesis(y, grid);
    for (int i = 0; i < grid; ++i) av[i] *= yv[i];
    auto ref = fourier_transform(av);
    double err = 0;
    for (int k = -(kk + m); k <= kk + m; ++k)
        err = std::max(err, std::abs(prod[k + kk + m] - ref.coeff(k)));
    CHECK(err < 1e-12);
}

TEST_CASE("periodic solve recovers the cosine eigenfunction") {
    FourierSeries one{0, {{1, 0}}};
    auto sol = solve_periodic(one, FourierSeries{0, {}}, one, {-1.0, 0.0}, 8);
    CHECK(std::abs(sol.coeff(1) - cplx{0.5, 0}) < 1e-12);
    CHECK(std::abs(sol.coeff(-1) - cplx{0.5, 0}) < 1e-12);
    for (int k = -8; k <= 8; ++k)
        if (std::abs(k) != 1) CHECK(std::abs(sol.coeff(k)) < 1e-12);
    CHECK(std::abs(sol.eval(0.0) - cplx{1, 0}) < 1e-12);
}

TEST_CASE("periodic solve of a nondegenerate problem") {
    // y'' + 4.3 y = 0 has no periodic eigenfunction; only y = 0 solves it
    // periodically, so the single boundary row forces the zero solution
    // unless the value is nonzero, in which case the system is inconsistent.
    FourierSeries one{0, {{1, 0}}};
    FourierSeries c{0, {{4.3, 0}}};
    auto sol = solve_periodic(one, FourierSeries{0, {}}, c, {0.0, 0.0}, 8);
    for (int k = -8; k <= 8; ++k) CHECK(std::abs(sol.coeff(k)) < 1e-12);
}

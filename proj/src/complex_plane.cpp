#include "hyperspec/complex_plane.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace hyperspec {

namespace {

cplx polyval(const std::vector<cplx>& p, cplx x) {
    cplx v{0.0, 0.0};
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * x + p[i];
    return v;
}

cplx principal_pow(cplx base, cplx e) {
    if (base == cplx{0.0, 0.0}) {
        if (e == cplx{0.0, 0.0}) return {1.0, 0.0};
        if (e.real() > 0.0) return {0.0, 0.0};
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return std::pow(base, e);
}

int parity_of(int k) { return ((k % 2) + 2) % 2; }

} // namespace

DomainGeometry domain_geometry(double A) {
    if (!(A > 0.5 && A < 1.0))
        throw std::invalid_argument("domain_geometry: A must satisfy 1/2 < A < 1");
    const double root = std::sqrt(1.0 - 1.0 / (4.0 * A * A));
    const double B = 1.0 / ((A + 1.0) * root);
    const double R = 1.0 / (1.0 + A); // equivalently B*root; exact form of 1-A = 2-1/R
    return {A, B, R};
}

cplx Curve::point(double phi) const {
    const double al = 0.5 * (a + b), be = 0.5 * (a - b);
    return center + al * std::polar(1.0, phi) + be * std::polar(1.0, -phi);
}

cplx Curve::tangent(double phi) const {
    const double al = 0.5 * (a + b), be = 0.5 * (a - b);
    return cplx{0.0, 1.0} * (al * std::polar(1.0, phi) - be * std::polar(1.0, -phi));
}

PhiOde phi_ode(const PolyOde& form, const Curve& curve) {
    const int m = 64;
    std::vector<cplx> v2(m), v1(m), v0(m);
    for (int j = 0; j < m; ++j) {
        const double phi = -M_PI + 2.0 * M_PI * j / m;
        const cplx xi = curve.point(phi);
        const cplx xp = curve.tangent(phi);
        const cplx p = polyval(form.p2, xi);
        const cplx q = polyval(form.p1, xi);
        const cplx r = polyval(form.p0, xi);
        v2[j] = xp * p;
        v1[j] = p * (xi - curve.center) + q * xp * xp;
        v0[j] = r * xp * xp * xp;
    }
    PhiOde out;
    out.a2 = fourier_transform(v2).trimmed(1e-14);
    out.a1 = fourier_transform(v1).trimmed(1e-14);
    out.a0 = fourier_transform(v0).trimmed(1e-14);
    return out;
}

OdeSpec phi_ode_spec(const PolyOde& form, const Curve& curve, cplx boundary_value) {
    PhiOde tr = phi_ode(form, curve);
    const int np = 72; // enough for the entire trig coefficients at machine precision
    auto pts = cheb_points(np);
    std::vector<cplx> v2(np), v1(np), v0(np);
    for (int j = 0; j < np; ++j) {
        const double phi = M_PI * pts[j];
        v2[j] = tr.a2.eval(phi);
        v1[j] = tr.a1.eval(phi) * M_PI;
        v0[j] = tr.a0.eval(phi) * M_PI * M_PI;
    }
    OdeSpec spec;
    const Interval iv{-M_PI, M_PI};
    spec.a2 = ChebSeries(cheb_transform(v2), iv);
    spec.a1 = ChebSeries(cheb_transform(v1), iv);
    spec.a0 = ChebSeries(cheb_transform(v0), iv);
    spec.interval = iv;
    spec.constraints = {{-1.0, boundary_value}, {1.0, boundary_value}};
    return spec;
}

BoundarySolution solve_on_boundary(const PolyOde& form, const Curve& curve, cplx boundary_value,
                                   double tol, int n_max) {
    auto spec = phi_ode_spec(form, curve, boundary_value);
    auto [series, report] = solve_adaptive(spec, tol, n_max);

    const int m = 1024;
    ChebSeries for_values = series.trimmed(1e-16);
    std::vector<cplx> vals(m);
    for (int j = 0; j < m; ++j) {
        const double phi = -M_PI + 2.0 * M_PI * j / m;
        vals[j] = for_values.eval(phi);
    }
    FourierSeries full = fourier_transform(vals);
    // retain |gamma_k| above machine threshold, measured against the rounding
    // plateau of the synthesis (estimated from the outermost wavenumbers)
    double plateau = 0.0;
    const int edge = m / 10;
    for (int i = 0; i < edge; ++i) {
        plateau = std::max(plateau, std::abs(full.c[i]));
        plateau = std::max(plateau, std::abs(full.c[m - 1 - i]));
    }
    const double floor_rel = 2.220446049250313e-16 * full.max_abs();
    BoundarySolution out;
    out.gamma = full.trimmed(std::max(3.0 * plateau, floor_rel) / std::max(full.max_abs(), 1e-300));
    out.us_solution = std::move(series);
    out.report = report;
    return out;
}

cplx ChebFourierField::eval(double r, double phi) const {
    cplx s{0.0, 0.0};
    const int nk = static_cast<int>(x_.cols());
    const int n = static_cast<int>(x_.rows());
    for (int col = 0; col < nk; ++col) {
        // Clenshaw in r for this column
        cplx b1{0.0, 0.0}, b2{0.0, 0.0};
        for (int j = n - 1; j >= 1; --j) {
            cplx b0 = x_(j, col) + 2.0 * r * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        cplx colval = x_(0, col) + r * b1 - b2;
        s += colval * std::polar(1.0, (kmin_ + col) * phi);
    }
    return s;
}

cplx ChebFourierField::boundary_coeff(int k) const {
    const int col = k - kmin_;
    if (col < 0 || col >= x_.cols()) return {0.0, 0.0};
    return x_.col(col).sum();
}

LaplaceModeOps laplace_mode_operators(int j, double a, double b, int n) {
    const int pad = n + 8;
    auto t0 = banded_mul(conversion_operator(1, pad, pad), conversion_operator(0, pad, pad));
    auto t1 = banded_mul(conversion_operator(1, pad, pad),
                         banded_mul(mult_operator_C(1, {{0.0, 0.0}, {1.0, 0.0}}, pad, pad),
                                    diff_operator(1, pad, pad)));
    auto t2 = banded_mul(mult_operator_C(2, {{0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}}, pad, pad),
                         diff_operator(2, pad, pad));
    const double wl = 0.25 * (1.0 / (a * a) - 1.0 / (b * b));
    const double wm = 0.5 * (1.0 / (a * a) + 1.0 / (b * b));
    const double dj = j;
    auto comb = [&](double c2, double c1, double c0) {
        return banded_add(cplx{1.0, 0.0}, banded_add(cplx{c2, 0.0}, t2, cplx{c1, 0.0}, t1),
                          cplx{c0, 0.0}, t0)
            .window(n, n);
    };
    LaplaceModeOps ops{
        // source mode j contributing to the equation of mode j-2
        comb(wl, wl * (2.0 * dj - 1.0), wl * dj * (dj - 2.0)),
        // own equation
        comb(wm, wm, -wm * dj * dj),
        // contribution to the equation of mode j+2
        comb(wl, -wl * (1.0 + 2.0 * dj), wl * dj * (dj + 2.0)),
    };
    return ops;
}

namespace {

// reduced (parity-split) dense block of a banded operator: the first n2-1
// C^(2) rows j' = p+2u below a top row that is either the boundary condition
// (diagonal block: T_j(1) = 1 over the reduced indices) or zero (coupling
// blocks)
Eigen::MatrixXcd reduced_block(const BandedOperator& op, int p, int n2, bool boundary_row) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n2, n2);
    for (int u = 0; u + 1 < n2; ++u)
        for (int v = 0; v < n2; ++v) m(u + 1, v) = op.get(p + 2 * u, p + 2 * v);
    if (boundary_row)
        for (int v = 0; v < n2; ++v) m(0, v) = cplx{1.0, 0.0};
    return m;
}

} // namespace

ChebFourierField laplace_solve(const FourierSeries& boundary, double a, double b, int n,
                               bool force_coupled) {
    if (n < 8) throw std::invalid_argument("laplace_solve: n >= 8 required");
    if (n % 2) ++n;
    const int n2 = n / 2;
    const int kmin = boundary.kmin, kmax = boundary.kmax();
    const int nk = kmax - kmin + 1;
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, nk);

    const bool disk = std::abs(a - b) < 1e-14 && !force_coupled;

    for (int p = 0; p < 2; ++p) {
        std::vector<int> modes;
        for (int k = kmin; k <= kmax; ++k)
            if (parity_of(k) == p) modes.push_back(k);
        if (modes.empty()) continue;

        if (disk) {
            // decoupled: one almost-banded (tridiagonal plus dense top row)
            // system per mode
            for (int k : modes) {
                auto ops = laplace_mode_operators(k, a, b, n);
                BandedOperator sys(n2, n2, 1, 1);
                for (int i = 1; i < n2; ++i) {
                    const int u = i - 1;
                    for (int v = std::max(0, i - 1); v <= std::min(n2 - 1, i + 1); ++v)
                        sys.set(i, v, ops.diag.get(p + 2 * u, p + 2 * v));
                }
                sys.attach_dense_row(0, std::vector<cplx>(n2, cplx{1.0, 0.0}));
                std::vector<cplx> rhs(n2, cplx{0.0, 0.0});
                rhs[0] = boundary.coeff(k);
                auto sol = solve_almost_banded(sys, rhs, true);
                for (int v = 0; v < n2; ++v) x(p + 2 * v, k - kmin) = sol[v];
            }
            continue;
        }

        // coupled: block tridiagonal over the parity chain, dense blocks
        const int nb = static_cast<int>(modes.size());
        std::vector<Eigen::MatrixXcd> diag(nb), sub(nb), sup(nb);
        std::vector<Eigen::VectorXcd> rhs(nb);
        for (int i = 0; i < nb; ++i) {
            const int k = modes[i];
            auto own = laplace_mode_operators(k, a, b, n);
            diag[i] = reduced_block(own.diag, p, n2, true);
            rhs[i] = Eigen::VectorXcd::Zero(n2);
            rhs[i](0) = boundary.coeff(k);
            if (i > 0) {
                auto src = laplace_mode_operators(k - 2, a, b, n);
                sub[i] = reduced_block(src.to_plus2, p, n2, false); // u_{k-2} term
            }
            if (i + 1 < nb) {
                auto src = laplace_mode_operators(k + 2, a, b, n);
                sup[i] = reduced_block(src.to_minus2, p, n2, false); // u_{k+2} term
            }
        }
        // block Thomas sweep
        std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lus(nb);
        lus[0] = Eigen::PartialPivLU<Eigen::MatrixXcd>(diag[0]);
        for (int i = 1; i < nb; ++i) {
            Eigen::MatrixXcd w = lus[i - 1].solve(sup[i - 1]);
            diag[i] -= sub[i] * w;
            rhs[i] -= sub[i] * lus[i - 1].solve(rhs[i - 1]);
            sup[i - 1] = std::move(w); // store D^{-1} C for the back sweep
            lus[i] = Eigen::PartialPivLU<Eigen::MatrixXcd>(diag[i]);
        }
        std::vector<Eigen::VectorXcd> sol(nb);
        sol[nb - 1] = lus[nb - 1].solve(rhs[nb - 1]);
        if (!sol[nb - 1].allFinite()) throw SolverError("laplace_solve: block system is singular");
        for (int i = nb - 2; i >= 0; --i) {
            sol[i] = lus[i].solve(rhs[i]) - sup[i] * sol[i + 1];
            if (!sol[i].allFinite()) throw SolverError("laplace_solve: block system is singular");
        }
        for (int i = 0; i < nb; ++i)
            for (int v = 0; v < n2; ++v) x(p + 2 * v, modes[i] - kmin) = sol[i](v);
    }
    return ChebFourierField(kmin, std::move(x));
}

std::pair<double, double> invert_elliptic(cplx z, cplx center, double a, double b) {
    const cplx w = z - center;
    const double u = w.real() / a;
    const double v = w.imag() / b;
    return {std::hypot(u, v), std::atan2(v, u)};
}

ComplexRepresentation::ComplexRepresentation(HypRepresentation real_rep, DomainGeometry geom,
                                             std::array<ChebFourierField, 5> fields, double guard)
    : real_(std::move(real_rep)), geom_(geom), fields_(std::move(fields)), guard_(guard) {}

bool ComplexRepresentation::in_domain(cplx z, Domain d) const {
    const double tol = 1e-12;
    switch (d) {
    case Domain::I: {
        const double u = z.real() / geom_.A, v = z.imag() / geom_.B;
        return u * u + v * v <= 1.0 + tol;
    }
    case Domain::II: {
        const double u = (1.0 - z.real()) / geom_.A, v = z.imag() / geom_.B;
        return u * u + v * v <= 1.0 + tol;
    }
    case Domain::III:
        return std::abs(z - cplx{0.5, 0.0}) >= geom_.R * (1.0 - tol);
    }
    return false;
}

Domain ComplexRepresentation::domain_of(cplx z) const {
    if (in_domain(z, Domain::I)) return Domain::I;
    if (in_domain(z, Domain::II)) return Domain::II;
    if (in_domain(z, Domain::III)) return Domain::III;
    throw std::logic_error("domain selection failed: the three domains cover the sphere");
}

cplx ComplexRepresentation::eval(cplx z) const { return eval_in_domain(z, domain_of(z)); }

cplx ComplexRepresentation::eval_in_domain(cplx z, Domain d) const {
    const auto& p = real_.params();
    const auto& k = real_.constants();
    const bool on_axis = (z.imag() == 0.0);
    switch (d) {
    case Domain::I: {
        auto [r, phi] = invert_elliptic(z, {0.0, 0.0}, geom_.A, geom_.B);
        return fields_[0].eval(std::min(r, 1.0), phi);
    }
    case Domain::II: {
        const cplx kappa = p.c - p.a - p.b;
        if (std::abs(z - cplx{1.0, 0.0}) < guard_ && kappa.real() <= 0.0)
            throw EvalDomainError("evaluation within the guard radius of the singular point z = 1");
        cplx t = cplx{1.0, 0.0} - z;
        if (on_axis) t = cplx{t.real(), 0.0}; // upper-side limit on the real axis
        auto [r, phi] = invert_elliptic(t, {0.0, 0.0}, geom_.A, geom_.B);
        r = std::min(r, 1.0);
        return k.alpha * fields_[1].eval(r, phi) +
               k.beta * principal_pow(t, kappa) * fields_[2].eval(r, phi);
    }
    case Domain::III: {
        cplx s = -1.0 / (z - cplx{0.5, 0.0});
        if (on_axis) s = cplx{s.real(), -0.0}; // z - i0 limit on the axis
        const double rs = 1.0 / geom_.R; // disk radius in the s-plane
        auto [r, phi] = invert_elliptic(s, {0.0, 0.0}, rs, rs);
        r = std::min(r, 1.0);
        return k.gamma * principal_pow(s, p.a) * fields_[3].eval(r, phi) +
               k.delta * principal_pow(s, p.b) * fields_[4].eval(r, phi);
    }
    }
    return {};
}

std::vector<std::pair<Domain, cplx>> ComplexRepresentation::eval_all(cplx z) const {
    std::vector<std::pair<Domain, cplx>> out;
    for (Domain d : {Domain::I, Domain::II, Domain::III})
        if (in_domain(z, d)) out.emplace_back(d, eval_in_domain(z, d));
    return out;
}

ComplexRepresentation build_complex(const HypParams& p, const BuildOptions& opt) {
    HypRepresentation real_rep = build_real(p, opt);
    DomainGeometry geom = domain_geometry(opt.A);

    const double ws = 1.0 / geom.R; // = 1 + A, the s-plane disk radius
    auto forms = kummer_forms(p, geom.A, ws);
    std::array<ChebSeries, 5> ext;
    for (int i = 0; i < 5; ++i) ext[i] = solve_adaptive(forms[i], opt.tol, opt.n_max).first;

    auto polys = kummer_poly_forms(p);
    const Curve ellipse{cplx{0.0, 0.0}, geom.A, geom.B};
    const Curve circle{cplx{0.0, 0.0}, ws, ws};

    std::array<cplx, 5> bv = {ext[0].eval(-geom.A), ext[1].eval(-geom.A), ext[2].eval(-geom.A),
                              ext[3].eval(-ws), ext[4].eval(-ws)};
    std::array<ChebFourierField, 5> fields;
    for (int i = 0; i < 5; ++i) {
        const Curve& curve = (i < 3) ? ellipse : circle;
        auto bnd = solve_on_boundary(polys[i], curve, bv[i], opt.tol, opt.n_max);
        fields[i] = laplace_solve(bnd.gamma, curve.a, curve.b, opt.laplace_n);
    }
    return ComplexRepresentation(std::move(real_rep), geom, std::move(fields), opt.guard);
}

} // namespace hyperspec

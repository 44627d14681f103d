#include "hyperspec/real_line.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace hyperspec {

namespace {

double dist_to_integers(cplx w) {
    double k = std::round(w.real());
    return std::hypot(w.real() - k, w.imag());
}

constexpr double kExactTol = 1e-13;

// principal power with explicit small-base handling
cplx principal_pow(cplx base, cplx e) {
    if (base == cplx{0.0, 0.0}) {
        if (e == cplx{0.0, 0.0}) return {1.0, 0.0};
        if (e.real() > 0.0) return {0.0, 0.0};
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return std::pow(base, e);
}

} // namespace

GenericnessReport genericness_check(const HypParams& p, double epsilon) {
    GenericnessReport r;
    r.dist_c = dist_to_integers(p.c);
    r.dist_cab = dist_to_integers(p.c - p.a - p.b);
    r.dist_ba = dist_to_integers(p.b - p.a);

    if (r.dist_cab < kExactTol)
        r.violations.push_back("c-a-b is an integer: the two solutions at z=1 are not independent");
    else if (r.dist_cab < epsilon)
        r.warnings.push_back("c-a-b is within epsilon of an integer; accuracy may degrade");

    if (r.dist_ba < kExactTol)
        r.violations.push_back("b-a is an integer: the two solutions at infinity are not independent");
    else if (r.dist_ba < epsilon)
        r.warnings.push_back("b-a is within epsilon of an integer; accuracy may degrade");

    if (r.dist_c < kExactTol) {
        double k = std::round(p.c.real());
        if (k <= 0.0 && std::abs(p.c.imag()) < kExactTol)
            r.violations.push_back("c is a non-positive integer: F(a,b,c,z) is undefined");
        else
            r.warnings.push_back("c is an integer (only the second solution at z=0 degenerates, "
                                 "which is not constructed)");
    } else if (r.dist_c < epsilon) {
        r.warnings.push_back("c is within epsilon of an integer; accuracy may degrade");
    }
    return r;
}

std::array<PolyOde, 5> kummer_poly_forms(const HypParams& p) {
    const cplx a = p.a, b = p.b, c = p.c;
    const cplx one{1.0, 0.0};
    std::array<PolyOde, 5> f;
    // x(1-x) y'' + (c-(1+a+b)x) y' - ab y = 0
    f[0] = {{{0, 0}, one, -one}, {c, -(one + a + b)}, {-a * b}};
    // t(1-t) u'' + (a+b+1-c-(1+a+b)t) u' - ab u = 0
    f[1] = {{{0, 0}, one, -one}, {a + b + one - c, -(one + a + b)}, {-a * b}};
    // t(1-t) u~'' + (c-a-b+1-(2c-a-b+1)t) u~' - (b-c)(a-c) u~ = 0
    f[2] = {{{0, 0}, one, -one},
            {c - a - b + one, -(2.0 * c - a - b + one)},
            {-(b - c) * (a - c)}};
    // (s/4)(s-2)(s+2) v'' + ((a+1)s^2/2 + (c-(a+b+1)/2)s + b-a-1) v'
    //   + a(c-(a+b+1)/2 + (s/4)(a+1)) v = 0
    const cplx q = c - (a + b + one) / 2.0;
    f[3] = {{{0, 0}, -one, {0, 0}, one / 4.0},
            {b - a - one, q, (a + one) / 2.0},
            {a * q, a * (a + one) / 4.0}};
    f[4] = {{{0, 0}, -one, {0, 0}, one / 4.0},
            {a - b - one, q, (b + one) / 2.0},
            {b * q, b * (b + one) / 4.0}};
    return f;
}

std::array<OdeSpec, 5> kummer_forms(const HypParams& p, double wx, double ws) {
    auto polys = kummer_poly_forms(p);
    std::array<OdeSpec, 5> specs;
    const std::vector<Constraint> at_origin = {{0.0, cplx{1.0, 0.0}}};
    for (int i = 0; i < 5; ++i) {
        const double w = (i < 3) ? wx : ws;
        specs[i] = make_ode_spec(polys[i], Interval{-w, w}, at_origin);
    }
    return specs;
}

LocalSolutionSet solve_locals(const std::array<OdeSpec, 5>& forms, double tol, int n_max) {
    LocalSolutionSet out;
    for (int i = 0; i < 5; ++i) {
        auto [series, rep] = solve_adaptive(forms[i], tol, n_max);
        const cplx at0 = series.eval(0.0);
        // roundoff floor scales with the coefficient magnitude
        if (std::abs(at0 - cplx{1.0, 0.0}) > 1e-12 * (1.0 + series.max_abs()))
            throw SolverError("local solution " + std::to_string(i) +
                              " violates its normalization at the origin");
        out.sol[i] = std::move(series);
        out.report[i] = rep;
    }
    return out;
}

namespace {

std::pair<cplx, cplx> solve_2x2(cplx m00, cplx m01, cplx m10, cplx m11, cplx r0, cplx r1,
                                const char* what) {
    const cplx det = m00 * m11 - m01 * m10;
    const double scale = std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
    if (std::abs(det) < 1e-13 * scale * scale)
        throw SolverError(std::string(what) +
                          ": matching system is singular (parameters near a degenerate case)");
    return {(r0 * m11 - r1 * m01) / det, (m00 * r1 - m10 * r0) / det};
}

} // namespace

std::pair<cplx, cplx> match_II(const LocalSolutionSet& locals, const HypParams& p) {
    const auto& yI = locals.sol[0];
    const auto& u = locals.sol[1];
    const auto& ut = locals.sol[2];
    assert(std::abs(yI.interval().hi - 0.5) < 1e-14 && "matching expects the standard intervals");

    const cplx kappa = p.c - p.a - p.b;
    const double h = 0.5; // t at the matching point
    const cplx hk = std::pow(cplx{h, 0.0}, kappa);
    const cplx hk1 = std::pow(cplx{h, 0.0}, kappa - cplx{1.0, 0.0});

    const cplx u_v = u.eval(h), ut_v = ut.eval(h);
    const cplx u_d = u.endpoint_derivative(+1), ut_d = ut.endpoint_derivative(+1);

    // value and x-derivative continuity; dt/dx = -1
    return solve_2x2(u_v, hk * ut_v,
                     -u_d, -(kappa * hk1 * ut_v + hk * ut_d),
                     yI.eval(0.5), yI.endpoint_derivative(+1), "match_II");
}

std::pair<cplx, cplx> match_III(const LocalSolutionSet& locals, const HypParams& p) {
    const auto& yI = locals.sol[0];
    const auto& v = locals.sol[3];
    const auto& vt = locals.sol[4];
    assert(std::abs(v.interval().hi - 1.0) < 1e-14 && "matching expects the standard intervals");

    const cplx v_v = v.eval(1.0), vt_v = vt.eval(1.0);
    const cplx v_d = v.endpoint_derivative(+1), vt_d = vt.endpoint_derivative(+1);

    // at s = 1 the powers s^a, s^b are 1; ds/dx = 1 at x = -1/2
    return solve_2x2(v_v, vt_v,
                     p.a * v_v + v_d, p.b * vt_v + vt_d,
                     yI.eval(-0.5), yI.endpoint_derivative(-1), "match_III");
}

HypRepresentation::HypRepresentation(HypParams p, LocalSolutionSet locals, ConnectionConstants k,
                                     GenericnessReport g, double guard)
    : params_(p), locals_(std::move(locals)), consts_(k), generic_(std::move(g)), guard_(guard) {
    for (int i = 0; i < 5; ++i) {
        d1_[i] = locals_.sol[i].derivative();
        d2_[i] = d1_[i].derivative();
    }
}

Domain HypRepresentation::domain_of(double x) const {
    if (std::abs(x) <= 0.5) return Domain::I;
    if (x > 0.5 && x <= 1.5) return Domain::II;
    return Domain::III;
}

void HypRepresentation::check_guard(double x) const {
    if (std::abs(x - 1.0) < guard_ && (params_.c - params_.a - params_.b).real() <= 0.0)
        throw EvalDomainError("evaluation within the guard radius of the singular point x = 1");
}

cplx HypRepresentation::eval(double x) const { return eval_in_domain(x, domain_of(x)); }

cplx HypRepresentation::eval_in_domain(double x, Domain d) const {
    switch (d) {
    case Domain::I:
        return locals_.sol[0].eval(x);
    case Domain::II: {
        check_guard(x);
        const double t = 1.0 - x;
        const cplx tc{t, 0.0};
        const cplx kappa = params_.c - params_.a - params_.b;
        return consts_.alpha * locals_.sol[1].eval(t) +
               consts_.beta * principal_pow(tc, kappa) * locals_.sol[2].eval(t);
    }
    case Domain::III: {
        // the real axis is evaluated as the limit from below in z; under
        // s = -1/(z - 1/2) that is the lower side of the s-cut
        const double s = -1.0 / (x - 0.5);
        const cplx sc{s, -0.0};
        return consts_.gamma * principal_pow(sc, params_.a) * locals_.sol[3].eval(s) +
               consts_.delta * principal_pow(sc, params_.b) * locals_.sol[4].eval(s);
    }
    }
    return {};
}

cplx HypRepresentation::eval_derivative(double x) const {
    return eval_derivative_in_domain(x, domain_of(x));
}

cplx HypRepresentation::eval_derivative_in_domain(double x, Domain d) const {
    const cplx a = params_.a, b = params_.b;
    switch (d) {
    case Domain::I:
        return d1_[0].eval(x);
    case Domain::II: {
        check_guard(x);
        const double t = 1.0 - x;
        const cplx tc{t, 0.0};
        const cplx kappa = params_.c - a - b;
        const cplx one{1.0, 0.0};
        cplx dt = consts_.alpha * d1_[1].eval(t) +
                  consts_.beta * (kappa * principal_pow(tc, kappa - one) * locals_.sol[2].eval(t) +
                                  principal_pow(tc, kappa) * d1_[2].eval(t));
        return -dt; // dt/dx = -1
    }
    case Domain::III: {
        const double s = -1.0 / (x - 0.5);
        const cplx sc{s, -0.0};
        const cplx one{1.0, 0.0};
        cplx ds = consts_.gamma * (a * principal_pow(sc, a - one) * locals_.sol[3].eval(s) +
                                   principal_pow(sc, a) * d1_[3].eval(s)) +
                  consts_.delta * (b * principal_pow(sc, b - one) * locals_.sol[4].eval(s) +
                                   principal_pow(sc, b) * d1_[4].eval(s));
        return ds * sc * sc; // ds/dx = s^2
    }
    }
    return {};
}

std::array<cplx, 3> HypRepresentation::eval_jet(double x) const {
    const Domain d = domain_of(x);
    const cplx a = params_.a, b = params_.b;
    const cplx one{1.0, 0.0};
    switch (d) {
    case Domain::I:
        return {locals_.sol[0].eval(x), d1_[0].eval(x), d2_[0].eval(x)};
    case Domain::II: {
        check_guard(x);
        const double t = 1.0 - x;
        const cplx tc{t, 0.0};
        const cplx k = params_.c - a - b;
        const cplx u = locals_.sol[1].eval(t), up = d1_[1].eval(t), upp = d2_[1].eval(t);
        const cplx w = locals_.sol[2].eval(t), wp = d1_[2].eval(t), wpp = d2_[2].eval(t);
        const cplx pk = principal_pow(tc, k), pk1 = principal_pow(tc, k - one),
                   pk2 = principal_pow(tc, k - 2.0 * one);
        cplx f = consts_.alpha * u + consts_.beta * pk * w;
        cplx ft = consts_.alpha * up + consts_.beta * (k * pk1 * w + pk * wp);
        cplx ftt = consts_.alpha * upp +
                   consts_.beta * (k * (k - one) * pk2 * w + 2.0 * k * pk1 * wp + pk * wpp);
        return {f, -ft, ftt}; // d/dx = -d/dt
    }
    case Domain::III: {
        const double s = -1.0 / (x - 0.5);
        const cplx sc{s, -0.0};
        const cplx v = locals_.sol[3].eval(s), vp = d1_[3].eval(s), vpp = d2_[3].eval(s);
        const cplx w = locals_.sol[4].eval(s), wp = d1_[4].eval(s), wpp = d2_[4].eval(s);
        auto term = [&](cplx e, cplx g, cplx gp, cplx gpp, cplx coef) {
            cplx y = coef * principal_pow(sc, e) * g;
            cplx ys = coef * (e * principal_pow(sc, e - one) * g + principal_pow(sc, e) * gp);
            cplx yss = coef * (e * (e - one) * principal_pow(sc, e - 2.0 * one) * g +
                               2.0 * e * principal_pow(sc, e - one) * gp +
                               principal_pow(sc, e) * gpp);
            return std::array<cplx, 3>{y, ys, yss};
        };
        auto t1 = term(a, v, vp, vpp, consts_.gamma);
        auto t2 = term(b, w, wp, wpp, consts_.delta);
        const cplx y = t1[0] + t2[0];
        const cplx ys = t1[1] + t2[1];
        const cplx yss = t1[2] + t2[2];
        // dF/dx = s^2 y', d2F/dx2 = 2 s^3 y' + s^4 y''
        return {y, sc * sc * ys, 2.0 * sc * sc * sc * ys + sc * sc * sc * sc * yss};
    }
    }
    return {};
}

HypRepresentation build_real(const HypParams& p, const BuildOptions& opt) {
    auto generic = genericness_check(p, opt.eps_generic);
    if (generic.hard_fail()) {
        std::string msg = "degenerate parameters:";
        for (const auto& v : generic.violations) msg += " " + v + ";";
        throw GenericnessError(msg);
    }
    auto forms = kummer_forms(p);
    auto locals = solve_locals(forms, opt.tol, opt.n_max);
    ConnectionConstants consts;
    std::tie(consts.alpha, consts.beta) = match_II(locals, p);
    std::tie(consts.gamma, consts.delta) = match_III(locals, p);
    return HypRepresentation(p, std::move(locals), consts, std::move(generic), opt.guard);
}

} // namespace hyperspec

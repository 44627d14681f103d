#include "hyperspec/ode.hpp"

#include <algorithm>
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

std::vector<cplx> trimmed_coeffs(const ChebSeries& s, double rel = 1e-15) {
    auto t = s.trimmed(rel);
    if (t.coeffs().empty()) return {cplx{0.0, 0.0}};
    return t.coeffs();
}

// Banded LU with partial pivoting; row-major band storage with kl extra
// superdiagonals of fill.
class BandedLU {
public:
    BandedLU(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku), w_(2 * kl + ku + 1),
                                      f_(static_cast<size_t>(n) * w_, cplx{0.0, 0.0}), piv_(n) {}

    cplx& at(int i, int j) { return f_[static_cast<size_t>(i) * w_ + (j - i + kl_)]; }
    cplx at(int i, int j) const { return f_[static_cast<size_t>(i) * w_ + (j - i + kl_)]; }
    bool stored(int i, int j) const { return j - i >= -kl_ && j - i <= kl_ + ku_; }

    // returns false on a (near-)zero pivot
    bool factor() {
        double scale = 0.0;
        for (const auto& v : f_) scale = std::max(scale, std::abs(v));
        const double tiny = std::max(scale * 1e-20, 1e-290);
        for (int j = 0; j < n_; ++j) {
            const int ilast = std::min(n_ - 1, j + kl_);
            int p = j;
            double pmax = std::abs(at(j, j));
            for (int i = j + 1; i <= ilast; ++i) {
                double v = std::abs(at(i, j));
                if (v > pmax) { pmax = v; p = i; }
            }
            piv_[j] = p;
            if (pmax <= tiny) return false;
            if (p != j) {
                const int jmax = std::min(n_ - 1, j + kl_ + ku_);
                for (int t = j; t <= jmax; ++t) std::swap(at(j, t), at(p, t));
            }
            const int jmax = std::min(n_ - 1, j + kl_ + ku_);
            for (int i = j + 1; i <= ilast; ++i) {
                cplx m = at(i, j) / at(j, j);
                at(i, j) = m;
                for (int t = j + 1; t <= jmax; ++t) at(i, t) -= m * at(j, t);
            }
        }
        return true;
    }

    void solve(std::vector<cplx>& b) const {
        for (int j = 0; j < n_; ++j) {
            if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
            const int ilast = std::min(n_ - 1, j + kl_);
            for (int i = j + 1; i <= ilast; ++i) b[i] -= at(i, j) * b[j];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            const int jmax = std::min(n_ - 1, i + kl_ + ku_);
            cplx s = b[i];
            for (int t = i + 1; t <= jmax; ++t) s -= at(i, t) * b[t];
            b[i] = s / at(i, i);
        }
    }

private:
    int n_, kl_, ku_, w_;
    std::vector<cplx> f_;
    std::vector<int> piv_;
};

std::vector<cplx> solve_dense(const BandedOperator& a, const std::vector<cplx>& rhs) {
    Eigen::MatrixXcd m = a.dense();
    Eigen::VectorXcd b(m.rows());
    for (int i = 0; i < m.rows(); ++i) b(i) = rhs[i];
    // LU with partial pivoting tracks the solution far better than the
    // pessimistic condition bound on these systems; rank-revealing QR is the
    // fallback for (near-)singular matrices
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    Eigen::VectorXcd x = lu.solve(b);
    if (x.allFinite()) {
        const double resid = (m * x - b).norm();
        if (resid <= 1e-8 * (b.norm() + m.norm() * x.norm())) {
            return {x.data(), x.data() + x.size()};
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(1e-14);
    if (qr.rank() < m.cols())
        throw SolverError("linear system is singular or severely rank-deficient",
                          condition_estimate(m));
    x = qr.solve(b);
    return {x.data(), x.data() + x.size()};
}

std::vector<cplx> solve_bordered(const BandedOperator& a, const std::vector<cplx>& rhs) {
    const int n = a.rows();
    const int k = static_cast<int>(a.dense_rows().size());
    const int nb = n - k;
    const int kl = a.lower(), ku = a.upper();

    // banded block: rows k..n-1, columns split at k
    BandedLU lu(nb, kl, ku);
    for (int r = 0; r < nb; ++r) {
        const int i = r + k;
        const int j0 = std::max(k, i - kl);
        const int j1 = std::min(n - 1, i + ku);
        for (int j = j0; j <= j1; ++j)
            if (lu.stored(r, j - k)) lu.at(r, j - k) = a.get(i, j);
    }
    if (!lu.factor()) throw SolverError("banded block is singular");

    auto lu_solve = [&](std::vector<cplx> v) {
        lu.solve(v);
        return v;
    };

    std::vector<cplx> g(rhs.begin() + k, rhs.end());
    auto yg = lu_solve(std::move(g));

    std::vector<std::vector<cplx>> ycols(k);
    for (int c = 0; c < k; ++c) {
        std::vector<cplx> col(nb, cplx{0.0, 0.0});
        for (int r = 0; r < nb; ++r) {
            const int i = r + k;
            if (i - c <= kl && c - i <= ku) col[r] = a.get(i, c);
        }
        ycols[c] = lu_solve(std::move(col));
    }

    // Schur complement of the dense constraint rows
    Eigen::MatrixXcd s(k, k);
    Eigen::VectorXcd r1(k);
    for (int i = 0; i < k; ++i) {
        const auto& row = a.dense_rows()[i].vals;
        for (int c = 0; c < k; ++c) {
            cplx v = row[c];
            for (int t = 0; t < nb; ++t) v -= row[k + t] * ycols[c][t];
            s(i, c) = v;
        }
        cplx v = rhs[i];
        for (int t = 0; t < nb; ++t) v -= row[k + t] * yg[t];
        r1(i) = v;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(s);
    qr.setThreshold(1e-14);
    if (qr.rank() < k)
        throw SolverError("constraint block is singular (solutions not independent)");
    Eigen::VectorXcd x1 = qr.solve(r1);

    std::vector<cplx> x(n);
    for (int c = 0; c < k; ++c) x[c] = x1(c);
    for (int t = 0; t < nb; ++t) {
        cplx v = yg[t];
        for (int c = 0; c < k; ++c) v -= x1(c) * ycols[c][t];
        x[k + t] = v;
    }
    return x;
}

double inf_norm(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

std::vector<cplx> residual(const BandedOperator& a, const std::vector<cplx>& x,
                           const std::vector<cplx>& rhs) {
    auto ax = a.apply(x);
    for (size_t i = 0; i < ax.size(); ++i) ax[i] = rhs[i] - ax[i];
    return ax;
}

} // namespace

OdeSpec make_ode_spec(const PolyOde& form, Interval iv, const std::vector<Constraint>& constraints_x) {
    const size_t deg = std::max({form.p2.size(), form.p1.size(), form.p0.size()});
    const int np = static_cast<int>(deg) + 1;
    auto pts = cheb_points(np);
    const double h2 = iv.half_width();
    std::vector<cplx> v2(np), v1(np), v0(np);
    for (int j = 0; j < np; ++j) {
        cplx x{iv.from_unit(pts[j]), 0.0};
        v2[j] = polyval(form.p2, x);
        v1[j] = polyval(form.p1, x) * h2;
        v0[j] = polyval(form.p0, x) * h2 * h2;
    }
    OdeSpec spec;
    spec.a2 = ChebSeries(cheb_transform(v2), iv);
    spec.a1 = ChebSeries(cheb_transform(v1), iv);
    spec.a0 = ChebSeries(cheb_transform(v0), iv);
    spec.interval = iv;
    for (const auto& c : constraints_x) spec.constraints.push_back({iv.to_unit(c.loc), c.target});
    return spec;
}

AssembledSystem assemble(const OdeSpec& spec, int n) {
    const int k = static_cast<int>(spec.constraints.size());
    if (k < 1) throw std::invalid_argument("assemble: at least one constraint required");
    if (n <= k) throw std::invalid_argument("assemble: n must exceed the number of constraints");

    auto a2 = trimmed_coeffs(spec.a2);
    auto a1 = trimmed_coeffs(spec.a1);
    auto a0 = trimmed_coeffs(spec.a0);
    const int m = static_cast<int>(std::max({a2.size(), a1.size(), a0.size()}));
    const int pad = n + m + 8;

    auto d1 = diff_operator(1, pad, pad);
    auto d2 = diff_operator(2, pad, pad);
    auto s0 = conversion_operator(0, pad, pad);
    auto s1 = conversion_operator(1, pad, pad);
    auto m2 = mult_operator_C(2, a2, pad, pad);
    auto m1 = mult_operator_C(1, a1, pad, pad);
    auto m0 = mult_operator_T(a0, pad, pad);

    auto lop = banded_add(cplx{1.0, 0.0}, banded_mul(m2, d2), cplx{1.0, 0.0},
                          banded_add(cplx{1.0, 0.0}, banded_mul(s1, banded_mul(m1, d1)),
                                     cplx{1.0, 0.0}, banded_mul(s1, banded_mul(s0, m0))));

    const int bl = lop.lower(), bu = lop.upper();
    BandedOperator a(n, n, bl + k, std::max(bu - k, 0));
    for (int r = 0; r + k < n; ++r) {
        const int j0 = std::max(0, r - bl);
        const int j1 = std::min(n - 1, r + bu);
        for (int j = j0; j <= j1; ++j) a.set(r + k, j, lop.get(r, j));
    }

    std::vector<cplx> rhs(n, cplx{0.0, 0.0});
    if (spec.rhs.size() > 0) {
        // forcing enters in the C^(2) basis, truncated like the operator rows
        std::vector<cplx> f = spec.rhs.coeffs();
        f.resize(pad, cplx{0.0, 0.0});
        auto fc2 = banded_mul(s1, s0).apply(f);
        for (int r = 0; r + k < n; ++r) rhs[r + k] = fc2[r];
    }
    for (int i = 0; i < k; ++i) {
        const double l0 = spec.constraints[i].loc;
        std::vector<cplx> row(n);
        double tjm1 = 1.0, tj = l0;
        for (int j = 0; j < n; ++j) {
            if (j == 0) row[j] = cplx{1.0, 0.0};
            else if (j == 1) row[j] = cplx{l0, 0.0};
            else {
                double t = 2.0 * l0 * tj - tjm1;
                tjm1 = tj;
                tj = t;
                row[j] = cplx{t, 0.0};
            }
        }
        a.attach_dense_row(i, std::move(row));
        rhs[i] = spec.constraints[i].target;
    }
    return {std::move(a), std::move(rhs)};
}

std::vector<cplx> solve_almost_banded(const BandedOperator& a, const std::vector<cplx>& rhs,
                                      bool force_banded) {
    assert(a.rows() == a.cols());
    assert(static_cast<int>(rhs.size()) == a.rows());
    const int k = static_cast<int>(a.dense_rows().size());
    for (int i = 0; i < k; ++i)
        assert(a.dense_rows()[i].row == i && "dense rows must occupy the top of the matrix");

    std::vector<cplx> x;
    bool banded_path = force_banded || a.rows() > 256;
    if (banded_path) {
        try {
            x = solve_bordered(a, rhs);
        } catch (const SolverError&) {
            banded_path = false;
        }
    }
    if (!banded_path) x = solve_dense(a, rhs);

    // one step of iterative refinement
    auto res = residual(a, x, rhs);
    const double scale = inf_norm(rhs) + 1.0;
    if (inf_norm(res) > 1e-15 * scale) {
        std::vector<cplx> dx;
        try {
            dx = banded_path ? solve_bordered(a, res) : solve_dense(a, res);
            for (size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
        } catch (const SolverError&) {
            // keep the unrefined solution; the caller checks the residual
        }
    }
    return x;
}

std::pair<ChebSeries, SolveReport> solve(const OdeSpec& spec, int n) {
    auto sys = assemble(spec, n);
    auto x = solve_almost_banded(sys.matrix, sys.rhs);

    auto res = residual(sys.matrix, x, sys.rhs);
    const double rel = inf_norm(res) / (inf_norm(sys.rhs) + 1e-300);
    double xnorm = inf_norm(x);
    const double backward = inf_norm(res) / (inf_norm(sys.rhs) + xnorm + 1e-300);
    if (backward > 1e-11)
        throw SolverError("linear solve failed the residual check (relative residual " +
                          std::to_string(rel) + ")", condition_estimate(sys.matrix));

    ChebSeries series(std::move(x), spec.interval);
    SolveReport rep;
    rep.n_used = n;
    rep.n_effective = series.effective_length(1e-15);
    double mx = series.max_abs();
    double tail = 0.0;
    for (int j = std::max(0, n - 5); j < n; ++j)
        tail = std::max(tail, std::abs(series.coeffs()[j]));
    rep.tail_magnitude = mx > 0 ? tail / mx : 0.0;
    return {std::move(series), rep};
}

std::pair<ChebSeries, SolveReport> solve_adaptive(const OdeSpec& spec, double tol, int n_max) {
    if (!(tol > 0)) throw std::invalid_argument("solve_adaptive: tol must be positive");
    double last_tail = std::numeric_limits<double>::infinity();
    std::string last_err;
    for (int n = 16; n <= n_max; n *= 2) {
        std::pair<ChebSeries, SolveReport> sol;
        try {
            sol = solve(spec, n);
        } catch (const SolverError& e) {
            last_err = e.what();
            continue;
        }
        last_tail = sol.second.tail_magnitude;
        if (last_tail <= tol) {
            // keep all n coefficients: endpoint derivatives weight c_j by j^2,
            // so trimming at tol*max would cost ~n^2*tol there
            SolveReport rep = sol.second;
            rep.n_effective = sol.first.effective_length(std::max(tol, 1e-16));
            return {std::move(sol.first), rep};
        }
    }
    throw SolverError("solve_adaptive: no convergence up to n_max (tail " +
                      std::to_string(last_tail) +
                      (last_err.empty() ? "" : ", last error: " + last_err) + ")");
}

Eigen::MatrixXcd collocation_matrix(const OdeSpec& spec, int n) {
    if (n < 3) throw std::invalid_argument("collocation_matrix: n >= 3 required");
    auto x = cheb_points(n);
    const int nn = n - 1;
    Eigen::MatrixXd d(n, n);
    auto cfac = [&](int i) { return (i == 0 || i == nn) ? 2.0 : 1.0; };
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            d(i, j) = (cfac(i) / cfac(j)) * sign / (x[i] - x[j]);
            rowsum += d(i, j);
        }
        d(i, i) = -rowsum;
    }
    Eigen::MatrixXd d2 = d * d;

    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
        cplx c2 = spec.a2.eval_unit(cplx(x[i], 0.0));
        cplx c1 = spec.a1.eval_unit(cplx(x[i], 0.0));
        cplx c0 = spec.a0.eval_unit(cplx(x[i], 0.0));
        for (int j = 0; j < n; ++j)
            a(i, j) = c2 * d2(i, j) + c1 * d(i, j) + (i == j ? c0 : cplx{0.0, 0.0});
    }
    for (const auto& c : spec.constraints) {
        int best = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(x[j] - c.loc) < std::abs(x[best] - c.loc)) best = j;
        if (std::abs(x[best] - c.loc) > 1e-9)
            throw std::invalid_argument("collocation_matrix: constraint location is not a grid point");
        a.row(best).setZero();
        a(best, best) = cplx{1.0, 0.0};
    }
    return a;
}

std::vector<cplx> collocation_solve(const OdeSpec& spec, int n) {
    auto a = collocation_matrix(spec, n);
    auto x = cheb_points(n);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    for (const auto& c : spec.constraints) {
        int best = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(x[j] - c.loc) < std::abs(x[best] - c.loc)) best = j;
        rhs(best) = c.target;
    }
    Eigen::VectorXcd sol = a.partialPivLu().solve(rhs);
    return {sol.data(), sol.data() + sol.size()};
}

double condition_estimate(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0) return 1.0;
    if (m.rows() != m.cols()) throw std::invalid_argument("condition_estimate: square matrix required");
    auto norm1 = [](const Eigen::MatrixXcd& a) {
        double best = 0.0;
        for (int j = 0; j < a.cols(); ++j) best = std::max(best, a.col(j).cwiseAbs().sum());
        return best;
    };
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    Eigen::MatrixXcd inv = lu.inverse();
    if (!inv.allFinite()) return std::numeric_limits<double>::infinity();
    return norm1(m) * norm1(inv);
}

double condition_estimate(const BandedOperator& m) { return condition_estimate(m.dense()); }

double condition_number_2(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0) return 1.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0)) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

double condition_number_2(const BandedOperator& m) { return condition_number_2(m.dense()); }

} // namespace hyperspec

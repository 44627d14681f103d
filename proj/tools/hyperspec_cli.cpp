// command-line surface: evaluate points, check the reference tables, sweep
// grids, and emit convergence/conditioning data

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hyperspec/complex_plane.hpp"
#include "hyperspec/oracle.hpp"
#include "hyperspec/real_line.hpp"

using namespace hyperspec;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitFile = 66;
constexpr int kExitGenericness = 2;
constexpr int kExitSolver = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_real_part(const std::string& s) {
    if (s.empty()) throw UsageError("empty numeric literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        double num = std::stod(s.substr(0, slash));
        double den = std::stod(s.substr(slash + 1));
        if (den == 0.0) throw UsageError("zero denominator in '" + s + "'");
        return num / den;
    }
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("trailing characters in '" + s + "'");
    return v;
}

// literals of the form "x", "yi", "x+yi", "x-yi"; x and y decimal or p/q
cplx parse_complex(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw UsageError("empty complex literal");
    try {
        if (s.back() == 'i' || s.back() == 'I') {
            std::string body = s.substr(0, s.size() - 1);
            // split into real and imaginary parts at the last +/- that is not
            // an exponent sign and not leading
            for (size_t pos = body.size(); pos-- > 1;) {
                char ch = body[pos];
                if ((ch == '+' || ch == '-') && body[pos - 1] != 'e' && body[pos - 1] != 'E' &&
                    body[pos - 1] != '/') {
                    std::string im = body.substr(pos);
                    if (im == "+" || im == "-") im += "1";
                    return {parse_real_part(body.substr(0, pos)), parse_real_part(im)};
                }
            }
            if (body.empty() || body == "+") return {0.0, 1.0};
            if (body == "-") return {0.0, -1.0};
            return {0.0, parse_real_part(body)};
        }
        return {parse_real_part(s), 0.0};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("malformed complex literal '" + s + "'");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* domain_name(Domain d) {
    switch (d) {
    case Domain::I: return "I";
    case Domain::II: return "II";
    case Domain::III: return "III";
    }
    return "?";
}

struct CommonOpts {
    std::string a_str, b_str, c_str;
    double A = 0.6;
    double tol = 1e-15;
    int n_max = 512;
    double eps_generic = 1e-6;
    double guard = 1e-6;
    std::string format = "csv";
    std::string out;

    HypParams params() const {
        return {parse_complex(a_str), parse_complex(b_str), parse_complex(c_str)};
    }
    BuildOptions build_options() const {
        BuildOptions o;
        o.A = A;
        o.tol = tol;
        o.n_max = n_max;
        o.eps_generic = eps_generic;
        o.guard = guard;
        return o;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool params_required) {
    auto* a = cmd->add_option("--a", o.a_str, "parameter a (complex literal, e.g. -1/3 or 2+8i)");
    auto* b = cmd->add_option("--b", o.b_str, "parameter b");
    auto* c = cmd->add_option("--c", o.c_str, "parameter c");
    if (params_required) {
        a->required();
        b->required();
        c->required();
    }
    cmd->add_option("--A", o.A, "ellipse semi-axis, 1/2 < A < 1")->default_val(0.6);
    cmd->add_option("--tol", o.tol, "adaptive tolerance")->default_val(1e-15);
    cmd->add_option("--n-max", o.n_max, "maximum coefficient count")->default_val(512);
    cmd->add_option("--eps-generic", o.eps_generic, "genericness warning threshold")
        ->default_val(1e-6);
    cmd->add_option("--guard", o.guard, "guard radius around the singular point x=1")
        ->default_val(1e-6);
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    cmd->add_option("--out", o.out, "write output to a file instead of stdout");
}

std::ostream& open_sink(const CommonOpts& o, std::ofstream& file) {
    if (o.out.empty()) return std::cout;
    file.open(o.out);
    if (!file) throw std::system_error(ENOENT, std::generic_category(), "cannot open " + o.out);
    return file;
}

int thread_cap() {
    if (const char* env = std::getenv("HYPERSPEC_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <typename Fn>
void parallel_for(int n, Fn&& fn) {
    const int workers = std::min(thread_cap(), std::max(n, 1));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::optional<cplx> reference_value(const HypParams& p, cplx z) {
    if (!oracle_region(z)) return std::nullopt;
    try {
        return series_2f1(p.a, p.b, p.c, z, 30);
    } catch (const OracleError&) {
        return std::nullopt;
    }
}

// ---- eval -------------------------------------------------------------

struct EvalRecord {
    cplx z, f;
    std::string domain;
    std::optional<double> df;
    bool ok = true;
    std::string note; // branch note for points on the cut, or the error text
};

int run_eval(const CommonOpts& opts, const std::vector<std::string>& z_args, bool verbose) {
    std::vector<cplx> zs;
    for (const auto& arg : z_args) {
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ',')) zs.push_back(parse_complex(item));
    }
    if (zs.empty()) throw UsageError("at least one --z is required");

    const HypParams p = opts.params();
    const BuildOptions bopt = opts.build_options();
    HypRepresentation real_rep = build_real(p, bopt);
    for (const auto& w : real_rep.genericness().warnings) std::cerr << "warning: " << w << "\n";

    bool any_complex = false;
    for (cplx z : zs)
        if (z.imag() != 0.0) any_complex = true;
    std::optional<ComplexRepresentation> crep;
    if (any_complex) crep.emplace(build_complex(p, bopt));

    std::vector<EvalRecord> recs(zs.size());
    for (size_t i = 0; i < zs.size(); ++i) {
        EvalRecord& r = recs[i];
        r.z = zs[i];
        try {
            if (r.z.imag() == 0.0) {
                r.f = real_rep.eval(r.z.real());
                r.domain = domain_name(real_rep.domain_of(r.z.real()));
                if (r.z.real() > 1.0) r.note = "on the cut [1,inf): z - i0 limit";
            } else {
                r.f = crep->eval(r.z);
                r.domain = domain_name(crep->domain_of(r.z));
            }
            if (auto ref = reference_value(p, r.z))
                r.df = std::abs(r.f - *ref) / std::abs(*ref);
        } catch (const EvalDomainError& e) {
            r.ok = false;
            r.note = e.what();
        }
    }

    std::ofstream file;
    std::ostream& os = open_sink(opts, file);
    if (opts.format == "json") {
        json doc;
        doc["a"] = {p.a.real(), p.a.imag()};
        doc["b"] = {p.b.real(), p.b.imag()};
        doc["c"] = {p.c.real(), p.c.imag()};
        doc["points"] = json::array();
        for (const auto& r : recs) {
            json pt;
            pt["z"] = {r.z.real(), r.z.imag()};
            if (r.ok) {
                pt["F"] = {r.f.real(), r.f.imag()};
                pt["domain"] = r.domain;
                if (r.df) pt["dF"] = *r.df;
                if (!r.note.empty()) pt["note"] = r.note;
            } else {
                pt["error"] = r.note;
            }
            if (verbose && r.z.imag() != 0.0) {
                json alts = json::array();
                for (auto& [d, v] : crep->eval_all(r.z)) {
                    alts.push_back({{"domain", domain_name(d)}, {"F", {v.real(), v.imag()}}});
                }
                pt["all_domains"] = alts;
            }
            doc["points"].push_back(std::move(pt));
        }
        os << doc.dump(2) << "\n";
    } else {
        os << "z_re,z_im,F_re,F_im,domain,dF,note\n";
        for (const auto& r : recs) {
            if (!r.ok) {
                os << fmt(r.z.real()) << "," << fmt(r.z.imag()) << ",nan,nan,-,," << r.note
                   << "\n";
                continue;
            }
            os << fmt(r.z.real()) << "," << fmt(r.z.imag()) << "," << fmt(r.f.real()) << ","
               << fmt(r.f.imag()) << "," << r.domain << "," << (r.df ? fmt(*r.df) : "") << ","
               << r.note << "\n";
        }
    }
    return 0;
}

// ---- table ------------------------------------------------------------

int run_table(const CommonOpts& opts, const std::string& file_arg) {
    std::string path = file_arg;
    if (path.empty()) {
        if (const char* env = std::getenv("HYPERSPEC_TABLE")) path = env;
        else path = "data/table_reference.csv";
    }
    std::vector<TableRow> rows;
    try {
        rows = load_table_csv(path);
    } catch (const OracleError& e) {
        std::cerr << e.what() << "\n";
        return kExitFile;
    }

    std::ofstream file;
    std::ostream& os = open_sink(opts, file);
    if (rows.empty()) {
        os << "0 rows\n";
        return 0;
    }

    int pass = 0;
    os << "table,a,b,c,z_re,z_im,F_re,F_im,dF,tol,reference,pass\n";
    // representations are reused across rows sharing a parameter triple
    std::vector<std::pair<HypParams, std::optional<ComplexRepresentation>>> cache;
    std::vector<std::pair<HypParams, std::optional<HypRepresentation>>> rcache;
    for (const auto& row : rows) {
        const HypParams p{row.a, row.b, row.c};
        cplx f;
        BuildOptions bopt = opts.build_options();
        if (row.z.imag() == 0.0) {
            HypRepresentation* rep = nullptr;
            for (auto& [q, r] : rcache)
                if (q.a == p.a && q.b == p.b && q.c == p.c) rep = &*r;
            if (!rep) {
                rcache.emplace_back(p, build_real(p, bopt));
                rep = &*rcache.back().second;
            }
            f = rep->eval(row.z.real());
        } else {
            ComplexRepresentation* rep = nullptr;
            for (auto& [q, r] : cache)
                if (q.a == p.a && q.b == p.b && q.c == p.c) rep = &*r;
            if (!rep) {
                cache.emplace_back(p, build_complex(p, bopt));
                rep = &*cache.back().second;
            }
            f = rep->eval(row.z);
        }

        double df, tol;
        const char* ref_kind;
        if (auto ref = reference_value(p, row.z)) {
            df = std::abs(f - *ref) / std::abs(*ref);
            tol = std::max(1e-12, 1e3 * row.df);
            ref_kind = "oracle";
        } else {
            df = std::abs(f - row.f) / std::abs(row.f);
            // full printed ulp per component: the tables truncate digits
            tol = 2.0 * (printed_half_ulp(row.f_re_str) + printed_half_ulp(row.f_im_str)) /
                      std::abs(row.f) +
                  1e3 * row.df;
            ref_kind = "printed";
        }
        const bool ok = df <= tol;
        pass += ok;
        os << row.table << "," << fmt(row.a.real()) << (row.a.imag() >= 0 ? "+" : "")
           << fmt(row.a.imag()) << "i," << fmt(row.b.real()) << (row.b.imag() >= 0 ? "+" : "")
           << fmt(row.b.imag()) << "i," << fmt(row.c.real()) << (row.c.imag() >= 0 ? "+" : "")
           << fmt(row.c.imag()) << "i," << fmt(row.z.real()) << "," << fmt(row.z.imag()) << ","
           << fmt(f.real()) << "," << fmt(f.imag()) << "," << fmt(df) << "," << fmt(tol) << ","
           << ref_kind << "," << (ok ? "yes" : "no") << "\n";
    }
    os << "# " << pass << "/" << rows.size() << " rows pass\n";
    return pass == static_cast<int>(rows.size()) ? 0 : 1;
}

// ---- grid -------------------------------------------------------------

bool is_test_example(const HypParams& p) {
    return std::abs(p.a - cplx{-1.0 / 3.0, 0}) < 1e-15 && std::abs(p.b - cplx{0.5, 0}) < 1e-15 &&
           std::abs(p.c - cplx{0.5, 0}) < 1e-15;
}

int run_grid(const CommonOpts& opts, const std::string& region, int resolution, double xmin,
             double xmax, double remin, double remax, double immin, double immax) {
    if (resolution < 1 || resolution > 2000) throw UsageError("resolution must be in [1, 2000]");
    const HypParams p = opts.params();
    const BuildOptions bopt = opts.build_options();
    const bool test_example = is_test_example(p);

    std::ofstream file;
    std::ostream& os = open_sink(opts, file);
    os << "# hyperspec grid region=" << region << " resolution=" << resolution << "\n";

    if (region == "real-line") {
        HypRepresentation rep = build_real(p, bopt);
        std::vector<std::string> lines(resolution);
        parallel_for(resolution, [&](int i) {
            double x = resolution == 1 ? xmin : xmin + (xmax - xmin) * i / (resolution - 1.0);
            std::string line = fmt(x) + ",";
            try {
                cplx f = rep.eval(x);
                line += fmt(f.real()) + "," + fmt(f.imag()) + "," +
                        domain_name(rep.domain_of(x));
                if (test_example) {
                    cplx ref = closed_form_test({x, 0.0});
                    line += "," + fmt(std::abs(f - ref) / std::abs(ref));
                }
            } catch (const EvalDomainError&) {
                line += "nan,nan,-";
                if (test_example) line += ",";
            }
            lines[i] = std::move(line);
        });
        os << "x,F_re,F_im,domain" << (test_example ? ",rel_err" : "") << "\n";
        for (auto& l : lines) os << l << "\n";
        return 0;
    }

    ComplexRepresentation rep = build_complex(p, bopt);
    if (region == "complex-rect") {
        const int n = resolution;
        std::vector<std::string> lines(n * n);
        parallel_for(n * n, [&](int idx) {
            int i = idx / n, j = idx % n;
            double re = n == 1 ? remin : remin + (remax - remin) * j / (n - 1.0);
            double im = n == 1 ? immin : immin + (immax - immin) * i / (n - 1.0);
            cplx z{re, im};
            std::string line = fmt(re) + "," + fmt(im) + ",";
            try {
                cplx f = rep.eval(z);
                line += fmt(f.real()) + "," + fmt(f.imag()) + "," + domain_name(rep.domain_of(z));
                if (test_example) {
                    cplx ref = closed_form_test(z);
                    line += "," + fmt(std::abs(f - ref) / std::abs(ref));
                }
            } catch (const EvalDomainError&) {
                line += "nan,nan,-";
                if (test_example) line += ",";
            }
            lines[idx] = std::move(line);
        });
        os << "z_re,z_im,F_re,F_im,domain" << (test_example ? ",rel_err" : "") << "\n";
        for (auto& l : lines) os << l << "\n";
        return 0;
    }

    if (region != "sphere") throw UsageError("unknown region '" + region + "'");
    // per-domain (r, phi) grids covering the Riemann sphere
    os << "domain,r,phi,z_re,z_im,F_re,F_im" << (test_example ? ",rel_err" : "") << "\n";
    const auto geom = rep.geometry();
    for (Domain d : {Domain::I, Domain::II, Domain::III}) {
        const int n = resolution;
        std::vector<std::string> lines(n * n);
        parallel_for(n * n, [&](int idx) {
            int i = idx / n, j = idx % n;
            double r = n == 1 ? 0.0 : i / (n - 1.0);
            double phi = -M_PI + 2 * M_PI * j / n;
            // map the local (r, phi) to the z-plane
            cplx z;
            double ea = geom.A, eb = geom.B;
            if (d == Domain::III) ea = eb = 1.0 / geom.R;
            cplx w = 0.5 * (ea + eb) * r * std::polar(1.0, phi) +
                     0.5 * (ea - eb) * r * std::polar(1.0, -phi);
            if (d == Domain::I) z = w;
            else if (d == Domain::II) z = cplx{1.0, 0.0} - w;
            else z = (std::abs(w) < 1e-300) ? cplx{std::numeric_limits<double>::infinity(), 0}
                                            : cplx{0.5, 0.0} - 1.0 / w;
            std::string line = std::string(domain_name(d)) + "," + fmt(r) + "," + fmt(phi) + "," +
                               fmt(z.real()) + "," + fmt(z.imag()) + ",";
            try {
                cplx f = rep.eval_in_domain(z, d);
                line += fmt(f.real()) + "," + fmt(f.imag());
                if (test_example && std::isfinite(z.real())) {
                    cplx ref = closed_form_test(z);
                    // absolute error where the reference vanishes (z = 1)
                    double den = std::abs(ref) > 0 ? std::abs(ref) : 1.0;
                    line += "," + fmt(std::abs(f - ref) / den);
                }
            } catch (const EvalDomainError&) {
                line += "nan,nan";
                if (test_example) line += ",";
            }
            lines[idx] = std::move(line);
        });
        for (auto& l : lines) os << l << "\n";
    }
    return 0;
}

// ---- bench ------------------------------------------------------------

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const int n = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int run_bench(const CommonOpts& opts, const std::string& study, const std::string& method,
              std::vector<int> ns) {
    HypParams p = opts.params();
    auto forms = kummer_forms(p);
    auto& spec = forms[0];

    std::ofstream file;
    std::ostream& os = open_sink(opts, file);
    os << "# hyperspec bench study=" << study << "\n";

    if (study == "convergence") {
        if (ns.empty()) ns = {16, 20, 24, 28, 32, 40};
        os << "method,n,max_err\n";
        const bool test_example = is_test_example(p);
        std::vector<double> xs, ys;
        for (int n : ns) {
            auto [sol, rep] = solve(spec, n);
            double err = 0;
            for (int i = 0; i <= 100; ++i) {
                double x = -0.5 + i / 100.0;
                cplx ref = test_example ? closed_form_test({x, 0.0})
                                        : series_2f1(p.a, p.b, p.c, {x, 0.0});
                err = std::max(err, std::abs(sol.eval(x) - ref) / std::abs(ref));
            }
            os << "us," << n << "," << fmt(err) << "\n";
            if (err > 1e-15) {
                xs.push_back(n);
                ys.push_back(std::log(err));
            }
        }
        if (xs.size() >= 2)
            os << "# fit us: log(err) slope per coefficient = " << fmt(fit_slope(xs, ys)) << "\n";
        return 0;
    }

    if (study != "conditioning") throw UsageError("unknown study '" + study + "'");
    os << "method,n,kappa1,kappa2\n";
    auto fit_loglog = [&](const std::vector<int>& nn, const std::vector<double>& kk) {
        std::vector<double> xs, ys;
        for (size_t i = 0; i < nn.size(); ++i) {
            xs.push_back(std::log(static_cast<double>(nn[i])));
            ys.push_back(std::log(kk[i]));
        }
        return fit_slope(xs, ys);
    };

    // the polynomial growth rates are fitted on the 2-norm, the exponential
    // rate of the periodic system on the 1-norm
    if (ns.empty()) ns = {40, 80, 160, 320};
    if (method == "us" || method == "all") {
        std::vector<double> ks;
        for (int n : ns) {
            auto m = assemble(spec, n).matrix;
            double k2 = condition_number_2(m);
            ks.push_back(k2);
            os << "us," << n << "," << fmt(condition_estimate(m)) << "," << fmt(k2) << "\n";
        }
        os << "# fit us: kappa2 ~ n^" << fmt(fit_loglog(ns, ks)) << "\n";
    }
    if (method == "ps" || method == "all") {
        std::vector<double> ks;
        std::vector<int> odd;
        for (int n : ns) odd.push_back(n % 2 ? n : n + 1); // keep l=0 on the grid
        for (int n : odd) {
            auto m = collocation_matrix(spec, n);
            double k2 = condition_number_2(m);
            ks.push_back(k2);
            os << "ps," << n << "," << fmt(condition_estimate(m)) << "," << fmt(k2) << "\n";
        }
        os << "# fit ps: kappa2 ~ n^" << fmt(fit_loglog(odd, ks)) << "\n";
    }
    if (method == "fourier" || method == "all") {
        auto geom = domain_geometry(opts.A);
        auto ode = phi_ode(kummer_poly_forms(p)[0], Curve{cplx{0, 0}, geom.A, geom.B});
        std::vector<double> xs, ys;
        std::vector<int> fns = {15, 30, 45, 60, 75};
        for (int n : fns) {
            auto m = periodic_system_matrix(ode.a2, ode.a1, ode.a0, n);
            double k1 = condition_estimate(m);
            const int bigN = 2 * n + 1;
            os << "fourier," << bigN << "," << fmt(k1) << "," << fmt(condition_number_2(m)) << "\n";
            xs.push_back(bigN);
            ys.push_back(std::log(k1));
        }
        os << "# fit fourier: kappa1 ~ exp(" << fmt(fit_slope(xs, ys)) << " N)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multidomain spectral evaluation of the Gauss hypergeometric function"};
    app.require_subcommand(1);

    CommonOpts eval_opts, table_opts, grid_opts, bench_opts;
    std::vector<std::string> z_args;
    bool verbose = false;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate F(a,b,c,z) at one or more points");
    add_common(eval_cmd, eval_opts, true);
    eval_cmd->add_option("--z", z_args, "evaluation points (repeatable, comma lists allowed)")
        ->required();
    eval_cmd->add_flag("--verbose", verbose, "also report values from every covering domain");

    std::string table_file;
    auto* table_cmd = app.add_subcommand("table", "recompute the reference tables and report dF");
    add_common(table_cmd, table_opts, false);
    table_cmd->add_option("--file", table_file, "table CSV (defaults to the shipped data file)");

    std::string region = "real-line";
    int resolution = 100;
    double xmin = -10, xmax = 10, remin = -2, remax = 2, immin = -2, immax = 2;
    auto* grid_cmd = app.add_subcommand("grid", "evaluate on a grid and stream records");
    add_common(grid_cmd, grid_opts, true);
    grid_cmd->add_option("--region", region, "real-line | complex-rect | sphere")
        ->check(CLI::IsMember({"real-line", "complex-rect", "sphere"}));
    grid_cmd->add_option("--resolution", resolution, "points per axis (<= 2000)");
    grid_cmd->add_option("--xmin", xmin);
    grid_cmd->add_option("--xmax", xmax);
    grid_cmd->add_option("--re-min", remin);
    grid_cmd->add_option("--re-max", remax);
    grid_cmd->add_option("--im-min", immin);
    grid_cmd->add_option("--im-max", immax);

    std::string study = "conditioning", method = "all", n_list;
    auto* bench_cmd = app.add_subcommand("bench", "convergence and conditioning studies");
    add_common(bench_cmd, bench_opts, true);
    bench_cmd->add_option("--study", study, "convergence | conditioning")
        ->check(CLI::IsMember({"convergence", "conditioning"}));
    bench_cmd->add_option("--method", method, "us | ps | fourier | all")
        ->check(CLI::IsMember({"us", "ps", "fourier", "all"}));
    bench_cmd->add_option("--n-list", n_list, "comma-separated coefficient counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(eval_opts, z_args, verbose);
        if (table_cmd->parsed()) return run_table(table_opts, table_file);
        if (grid_cmd->parsed()) {
            return run_grid(grid_opts, region, resolution, xmin, xmax, remin, remax, immin, immax);
        }
        if (bench_cmd->parsed()) {
            std::vector<int> ns;
            std::stringstream ss(n_list);
            std::string item;
            while (std::getline(ss, item, ',')) ns.push_back(std::atoi(item.c_str()));
            return run_bench(bench_opts, study, method, ns);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GenericnessError& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitGenericness;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::system_error& e) {
        std::cerr << e.what() << "\n";
        return kExitFile;
    }
    return 0;
}

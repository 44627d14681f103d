#ifndef HYPERSPEC_REAL_LINE_HPP
#define HYPERSPEC_REAL_LINE_HPP

#include <array>
#include <string>
#include <vector>

#include "hyperspec/ode.hpp"
#include "hyperspec/types.hpp"

namespace hyperspec {

struct HypParams {
    cplx a, b, c;
};

struct GenericnessReport {
    double dist_c = 0;    // distance of c to the nearest integer (in C)
    double dist_cab = 0;  // distance of c-a-b
    double dist_ba = 0;   // distance of b-a
    std::vector<std::string> violations; // exact degeneracies (reject)
    std::vector<std::string> warnings;   // within-epsilon cases (proceed)
    bool hard_fail() const { return !violations.empty(); }
};

/// Distances of c, c-a-b, b-a to the integers. Exact c-a-b or b-a integers
/// are hard failures (the local solution pairs degenerate); c at a
/// non-positive integer is a hard failure (F undefined). Integer c > 0 only
/// warns: the second solution at z=0 is never constructed here.
GenericnessReport genericness_check(const HypParams& p, double epsilon = 1e-6);

enum class Domain { I, II, III };

/// The five PSL(2,C)-equivalent forms of the hypergeometric equation in
/// their local variables (x; t = 1-x twice; s = -1/(x-1/2) twice).
std::array<PolyOde, 5> kummer_poly_forms(const HypParams& p);

/// The forms as solvable specs: index 0 on [-wx,wx] in x, 1-2 on [-wx,wx]
/// in t, 3-4 on [-ws,ws] in s, each with the single constraint y(0) = 1.
std::array<OdeSpec, 5> kummer_forms(const HypParams& p, double wx = 0.5, double ws = 1.0);

struct LocalSolutionSet {
    std::array<ChebSeries, 5> sol;     // y_I, u, u~, v, v~
    std::array<SolveReport, 5> report;
};

LocalSolutionSet solve_locals(const std::array<OdeSpec, 5>& forms, double tol = 1e-15,
                              int n_max = 512);

struct ConnectionConstants {
    cplx alpha{0, 0}, beta{0, 0};  // domain II
    cplx gamma{0, 0}, delta{0, 0}; // domain III
};

/// C^1 matching at x = 1/2 <-> t = 1/2 (dt/dx = -1); locals must live on the
/// standard intervals so the matching point is a Chebyshev endpoint.
std::pair<cplx, cplx> match_II(const LocalSolutionSet& locals, const HypParams& p);
/// C^1 matching at x = -1/2 <-> s = 1 (ds/dx = 1 there).
std::pair<cplx, cplx> match_III(const LocalSolutionSet& locals, const HypParams& p);

struct BuildOptions {
    double A = 0.6;            // ellipse real semi-axis
    double tol = 1e-15;
    int n_max = 512;
    double eps_generic = 1e-6;
    double guard = 1e-6;       // evaluation guard radius around x = 1
    int laplace_n = 64;        // radial Chebyshev coefficients per Fourier mode
};

/// The assembled function on the compactified real line: five local
/// solutions, connection constants, branch conventions. Immutable.
class HypRepresentation {
public:
    HypRepresentation(HypParams p, LocalSolutionSet locals, ConnectionConstants k,
                      GenericnessReport g, double guard);

    const HypParams& params() const { return params_; }
    const LocalSolutionSet& locals() const { return locals_; }
    const ConnectionConstants& constants() const { return consts_; }
    const GenericnessReport& genericness() const { return generic_; }
    std::array<cplx, 4> exponents() const {
        return {cplx{0.0, 0.0}, params_.c - params_.a - params_.b, params_.a, params_.b};
    }

    Domain domain_of(double x) const;
    cplx eval(double x) const;
    cplx eval_derivative(double x) const;
    /// (F, F', F'') in x; used for ODE-residual diagnostics.
    std::array<cplx, 3> eval_jet(double x) const;
    /// Evaluate through a specific domain's representation (overlap and
    /// one-sided checks).
    cplx eval_in_domain(double x, Domain d) const;
    cplx eval_derivative_in_domain(double x, Domain d) const;

private:
    HypParams params_;
    LocalSolutionSet locals_;
    std::array<ChebSeries, 5> d1_, d2_; // derivative series of the locals
    ConnectionConstants consts_;
    GenericnessReport generic_;
    double guard_;

    void check_guard(double x) const;
};

HypRepresentation build_real(const HypParams& p, const BuildOptions& opt = {});

} // namespace hyperspec

#endif

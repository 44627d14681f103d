#ifndef HYPERSPEC_ODE_HPP
#define HYPERSPEC_ODE_HPP

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperspec/cheb.hpp"
#include "hyperspec/types.hpp"

namespace hyperspec {

/// Functional constraint on the solution: value at a point l0 of the mapped
/// variable in [-1,1] (endpoints included).
struct Constraint {
    double loc;
    cplx target;
};

/// Second-order linear ODE a2(l) y'' + a1(l) y' + a0(l) y = f(l) in the
/// mapped variable l in [-1,1], with 1 or 2 value constraints. The interval
/// records the original variable range so returned solutions evaluate in it.
/// An empty rhs means f = 0.
struct OdeSpec {
    ChebSeries a2, a1, a0;
    ChebSeries rhs;
    Interval interval = {};
    std::vector<Constraint> constraints;
};

/// Polynomial-coefficient ODE p2(x) y'' + p1(x) y' + p0(x) y = 0 in its own
/// variable (monomial coefficients, lowest degree first).
struct PolyOde {
    std::vector<cplx> p2, p1, p0;
};

/// Map a PolyOde on [lo,hi] to the l variable (chain-rule scaling absorbed
/// into the coefficients); constraint locations given in the x variable.
OdeSpec make_ode_spec(const PolyOde& form, Interval iv, const std::vector<Constraint>& constraints_x);

struct SolveReport {
    int n_used = 0;
    int n_effective = 0;       // trimmed length at the solve tolerance
    double tail_magnitude = 0; // max of the last 5 coefficients / max coefficient
    std::optional<double> condition_estimate;
};

struct AssembledSystem {
    BandedOperator matrix;
    std::vector<cplx> rhs;
};

/// Constraint rows stacked over the truncated coefficient-space operator
/// M2[a2] D2 + S1 M1[a1] D1 + S1 S0 M0[a0].
AssembledSystem assemble(const OdeSpec& spec, int n);

/// Solve the n x n system; relative linear-system residual <= 1e-12 or throws.
std::pair<ChebSeries, SolveReport> solve(const OdeSpec& spec, int n);

/// Double n from 16 until the last 5 coefficients fall below tol * max|c|.
std::pair<ChebSeries, SolveReport> solve_adaptive(const OdeSpec& spec, double tol = 1e-15,
                                                  int n_max = 512);

/// Dense Chebyshev collocation discretization at n second-kind points with
/// constraint rows replacing the rows at the nearest grid points.
Eigen::MatrixXcd collocation_matrix(const OdeSpec& spec, int n);
/// Solution values on the collocation grid.
std::vector<cplx> collocation_solve(const OdeSpec& spec, int n);

/// 1-norm condition number (exact, via LU inverse); +inf when singular.
double condition_estimate(const Eigen::MatrixXcd& m);
double condition_estimate(const BandedOperator& m);

/// 2-norm condition number (SVD); the conditioning growth studies fit this
/// one.
double condition_number_2(const Eigen::MatrixXcd& m);
double condition_number_2(const BandedOperator& m);

/// Solve an almost-banded system (banded LU plus bordered elimination of the
/// dense rows; dense QR fallback for small systems unless force_banded).
/// Dense rows must occupy the top of the matrix.
std::vector<cplx> solve_almost_banded(const BandedOperator& a, const std::vector<cplx>& rhs,
                                      bool force_banded = false);

} // namespace hyperspec

#endif

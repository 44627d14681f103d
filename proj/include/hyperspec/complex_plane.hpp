#ifndef HYPERSPEC_COMPLEX_PLANE_HPP
#define HYPERSPEC_COMPLEX_PLANE_HPP

#include <array>
#include <vector>

#include "hyperspec/fourier.hpp"
#include "hyperspec/real_line.hpp"

namespace hyperspec {

/// Domain geometry on the Riemann sphere: ellipses of semi-axes A (real) and
/// B (imaginary) around 0 and 1, and the circle of radius R around 1/2 whose
/// exterior maps to the disk of radius 1/R in the s-plane. B is fixed by
/// equalizing the shortest boundary-to-singularity distances.
struct DomainGeometry {
    double A, B, R;
};

DomainGeometry domain_geometry(double A);

/// Closed curve xi(phi) = center + ((a+b)/2) e^{i phi} + ((a-b)/2) e^{-i phi}
/// (ellipse of semi-axes a, b; circle when a = b).
struct Curve {
    cplx center{0.0, 0.0};
    double a = 1.0;
    double b = 1.0;

    cplx point(double phi) const;
    cplx tangent(double phi) const; // d xi / d phi
};

/// Trigonometric-coefficient ODE a2(phi) y_pp + a1(phi) y_p + a0(phi) y = 0.
struct PhiOde {
    FourierSeries a2, a1, a0;
};

/// Restrict p y'' + q y' + r y = 0 to the curve as an ODE in phi:
/// (xi_phi p) y_pp + (p (xi - center) + q xi_phi^2) y_p + (r xi_phi^3) y = 0.
PhiOde phi_ode(const PolyOde& form, const Curve& curve);

struct BoundarySolution {
    FourierSeries gamma;    // Fourier coefficients, trimmed at machine threshold
    ChebSeries us_solution; // the US-in-phi solution (l = phi/pi)
    SolveReport report;
};

/// Solve the phi-ODE on [-pi, pi] by the US method with the two endpoint
/// conditions y(-pi) = y(pi) = boundary_value, then return the Fourier
/// coefficients of the boundary trace.
BoundarySolution solve_on_boundary(const PolyOde& form, const Curve& curve, cplx boundary_value,
                                   double tol = 1e-15, int n_max = 512);

/// OdeSpec of the US-in-phi problem (exposed for conditioning studies).
OdeSpec phi_ode_spec(const PolyOde& form, const Curve& curve, cplx boundary_value);

/// Harmonic field on an ellipse/disk interior in doubled-radius coordinates
/// xi = center + ((a+b)/2) r e^{i phi} + ((a-b)/2) r e^{-i phi}, r in [-1,1]:
/// coefficients X_{j,k} of sum X_{j,k} T_j(r) e^{i k phi}. Column parity
/// matches the wavenumber (X_{j,k} = 0 for j+k odd).
class ChebFourierField {
public:
    ChebFourierField() = default;
    ChebFourierField(int kmin, Eigen::MatrixXcd x) : kmin_(kmin), x_(std::move(x)) {}

    int kmin() const { return kmin_; }
    int kmax() const { return kmin_ + static_cast<int>(x_.cols()) - 1; }
    int radial_size() const { return static_cast<int>(x_.rows()); }
    const Eigen::MatrixXcd& coeffs() const { return x_; }

    cplx eval(double r, double phi) const;
    /// Fourier coefficient of the trace at r = 1 (column sum).
    cplx boundary_coeff(int k) const;

private:
    int kmin_ = 0;
    Eigen::MatrixXcd x_;
};

/// Solve the Laplace equation in the doubled-radius elliptic coordinates with
/// boundary data u_k(1) = gamma_k, as two parity-separated block-tridiagonal
/// systems; on a disk (a == b) the modes decouple and each is solved as an
/// almost-banded system in O(n) per mode (force_coupled runs the general
/// machinery regardless, for cross-checks).
ChebFourierField laplace_solve(const FourierSeries& boundary, double a, double b, int n,
                               bool force_coupled = false);

/// Coefficient-space operators of the coupled radial system: contribution of
/// source mode j to the equations of modes j-2 / j / j+2 (diagnostics and
/// residual checks). Pure banded, in the C^(2) row basis.
struct LaplaceModeOps {
    BandedOperator to_minus2, diag, to_plus2;
};
LaplaceModeOps laplace_mode_operators(int j, double a, double b, int n);

/// The full function on the Riemann sphere: real-line representation plus the
/// five harmonic continuations.
class ComplexRepresentation {
public:
    ComplexRepresentation(HypRepresentation real_rep, DomainGeometry geom,
                          std::array<ChebFourierField, 5> fields, double guard);

    const HypRepresentation& real_representation() const { return real_; }
    const DomainGeometry& geometry() const { return geom_; }
    /// fields: y_I on domain I; u, u~ on domain II; v, v~ on domain III.
    const ChebFourierField& field(int i) const { return fields_[i]; }

    Domain domain_of(cplx z) const;
    bool in_domain(cplx z, Domain d) const;
    cplx eval(cplx z) const;
    cplx eval_in_domain(cplx z, Domain d) const;
    /// values for every domain containing z (verbose diagnostics)
    std::vector<std::pair<Domain, cplx>> eval_all(cplx z) const;

private:
    HypRepresentation real_;
    DomainGeometry geom_;
    std::array<ChebFourierField, 5> fields_;
    double guard_;
};

ComplexRepresentation build_complex(const HypParams& p, const BuildOptions& opt = {});

/// Elliptic-coordinate inversion for a curve centered at `center`:
/// r = |(Re w / a, Im w / b)|, phi = arg of that point, w = z - center.
std::pair<double, double> invert_elliptic(cplx z, cplx center, double a, double b);

} // namespace hyperspec

#endif

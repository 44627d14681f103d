#ifndef HYPERSPEC_TYPES_HPP
#define HYPERSPEC_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace hyperspec {

using cplx = std::complex<double>;

struct Interval {
    double lo = -1.0;
    double hi = 1.0;

    double half_width() const { return 0.5 * (hi - lo); }
    double mid() const { return 0.5 * (hi + lo); }
    // affine map interval -> [-1,1]
    double to_unit(double x) const { return (2.0 * x - lo - hi) / (hi - lo); }
    cplx to_unit(cplx x) const { return (2.0 * x - lo - hi) / (hi - lo); }
    double from_unit(double ell) const { return 0.5 * (lo * (1.0 - ell) + hi * (1.0 + ell)); }
};

class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg, double cond = 0.0)
        : std::runtime_error(msg), condition(cond) {}
    double condition;
};

class GenericnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EvalDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hyperspec

#endif

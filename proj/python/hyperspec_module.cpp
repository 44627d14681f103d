#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "hyperspec/complex_plane.hpp"
#include "hyperspec/oracle.hpp"
#include "hyperspec/real_line.hpp"

namespace py = pybind11;
using namespace hyperspec;

namespace {

const char* domain_name(Domain d) {
    switch (d) {
    case Domain::I: return "I";
    case Domain::II: return "II";
    case Domain::III: return "III";
    }
    return "?";
}

// lazily builds the real-line and complex-plane representations
class Hyp2F1 {
public:
    Hyp2F1(cplx a, cplx b, cplx c, double A, double tol, int n_max, double eps_generic,
           double guard)
        : params_{a, b, c} {
        opt_.A = A;
        opt_.tol = tol;
        opt_.n_max = n_max;
        opt_.eps_generic = eps_generic;
        opt_.guard = guard;
    }

    cplx eval(cplx z) {
        if (z.imag() == 0.0) return real().eval(z.real());
        return complex_rep().eval(z);
    }

    std::vector<cplx> eval_many(const std::vector<cplx>& zs) {
        std::vector<cplx> out;
        out.reserve(zs.size());
        for (cplx z : zs) out.push_back(eval(z));
        return out;
    }

    std::string domain_of(cplx z) {
        if (z.imag() == 0.0) return domain_name(real().domain_of(z.real()));
        return domain_name(complex_rep().domain_of(z));
    }

    py::tuple constants() {
        const auto& k = real().constants();
        return py::make_tuple(k.alpha, k.beta, k.gamma, k.delta);
    }

    py::dict genericness() {
        auto rep = genericness_check(params_, opt_.eps_generic);
        py::dict d;
        d["dist_c"] = rep.dist_c;
        d["dist_c_minus_a_minus_b"] = rep.dist_cab;
        d["dist_b_minus_a"] = rep.dist_ba;
        d["violations"] = rep.violations;
        d["warnings"] = rep.warnings;
        return d;
    }

    std::vector<int> resolution_used() {
        std::vector<int> out;
        for (const auto& r : real().locals().report) out.push_back(r.n_effective);
        return out;
    }

private:
    HypParams params_;
    BuildOptions opt_;
    std::optional<HypRepresentation> real_;
    std::optional<ComplexRepresentation> complex_;

    HypRepresentation& real() {
        if (!real_) real_.emplace(build_real(params_, opt_));
        return *real_;
    }
    ComplexRepresentation& complex_rep() {
        if (!complex_) complex_.emplace(build_complex(params_, opt_));
        return *complex_;
    }
};

} // namespace

PYBIND11_MODULE(_hyperspec, m) {
    m.doc() = "multidomain spectral evaluation of the Gauss hypergeometric function";

    py::register_exception<GenericnessError>(m, "GenericnessError", PyExc_ValueError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<EvalDomainError>(m, "EvalDomainError", PyExc_ValueError);
    py::register_exception<OracleError>(m, "OracleError", PyExc_ValueError);

    py::class_<Hyp2F1>(m, "Hyp2F1")
        .def(py::init<cplx, cplx, cplx, double, double, int, double, double>(), py::arg("a"),
             py::arg("b"), py::arg("c"), py::arg("A") = 0.6, py::arg("tol") = 1e-15,
             py::arg("n_max") = 512, py::arg("eps_generic") = 1e-6, py::arg("guard") = 1e-6)
        .def("__call__", &Hyp2F1::eval, py::arg("z"))
        .def("eval", &Hyp2F1::eval, py::arg("z"))
        .def("eval_many", &Hyp2F1::eval_many, py::arg("zs"))
        .def("domain_of", &Hyp2F1::domain_of, py::arg("z"))
        .def("constants", &Hyp2F1::constants,
             "connection constants (alpha, beta, gamma, delta)")
        .def("genericness", &Hyp2F1::genericness)
        .def("resolution_used", &Hyp2F1::resolution_used,
             "effective coefficient counts of the five local solves");

    m.def("series_2f1", &series_2f1, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("z"),
          py::arg("digits") = 40,
          "high-precision series reference (|z| <= 0.7 or Re z < 1/2)");
    m.def("closed_form_test", &closed_form_test, py::arg("z"),
          "principal-branch (1-z)^(1/3)");
    m.def(
        "geometry",
        [](double A) {
            auto g = domain_geometry(A);
            return py::make_tuple(g.A, g.B, g.R);
        },
        py::arg("A") = 0.6, "(A, B, R) of the domain decomposition");
    m.def("table_reference", []() {
        py::list out;
        for (const auto& r : table_reference()) {
            py::dict d;
            d["a"] = r.a;
            d["b"] = r.b;
            d["c"] = r.c;
            d["z"] = r.z;
            d["F"] = r.f;
            d["dF"] = r.df;
            d["n"] = r.n;
            d["table"] = r.table;
            out.append(std::move(d));
        }
        return out;
    });
}

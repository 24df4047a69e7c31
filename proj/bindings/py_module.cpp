#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwx/engine.hpp"
#include "fwx/errors.hpp"
#include "fwx/eval.hpp"
#include "fwx/params.hpp"

namespace py = pybind11;

namespace {

fwx::ParameterSet make_params(std::vector<fwx::cplx> a, std::vector<double> A,
                              std::vector<fwx::cplx> b, std::vector<double> B)
{
    if (A.empty()) A.assign(a.size(), 1.0);
    if (B.empty()) B.assign(b.size(), 1.0);
    return fwx::ParameterSet(std::move(a), std::move(A), std::move(b), std::move(B));
}

py::dict result_dict(const fwx::EvalResult& r)
{
    py::dict d;
    d["value"] = r.value;
    d["representation"] = fwx::rep_name(r.representation);
    d["terms_used"] = r.terms_used;
    d["err_estimate"] = r.err_estimate;
    if (!r.warning.empty()) d["warning"] = r.warning;
    return d;
}

fwx::EvalResult eval_dispatch(const fwx::ParameterSet& ps, const fwx::cplx& z,
                              const std::string& rep, double tol, long max_terms,
                              std::optional<double> sigma)
{
    if (rep == "auto") return fwx::eval_auto(ps, z, tol, max_terms, sigma);
    if (rep == "maclaurin") return fwx::eval_maclaurin(ps, z, tol, max_terms);
    if (rep == "residue") return fwx::eval_residue_series(ps, z, tol, max_terms);
    if (rep == "singular")
        return fwx::eval_singular_expansion(ps, z / ps.rho(), sigma, tol, max_terms);
    if (rep == "at-rho") return fwx::eval_at_rho(ps, sigma, tol, max_terms);
    throw fwx::ParseError("unknown representation '" + rep +
                          "' (expected auto, maclaurin, residue, singular, or at-rho)");
}

std::vector<fwx::cplx> coeffs_impl(const fwx::ParameterSet& ps, const std::string& which,
                                   int count, std::optional<double> sigma_req, double theta,
                                   double tol, long max_terms)
{
    if (count < 1) throw fwx::IndexError("count must be positive");
    double sigma = fwx::choose_sigma(ps, sigma_req);
    auto eng = fwx::engine_for(ps);
    long first = (which == "q") ? 1 : 0;
    std::vector<fwx::cplx> out;
    out.reserve(std::size_t(count));
    for (long idx = first; idx < first + count; ++idx) {
        fwx::mp_cplx v;
        if (which == "q")
            v = eng->q_m(sigma, int(idx));
        else if (which == "l")
            v = eng->l_r(sigma, int(idx));
        else if (which == "ltheta")
            v = eng->l_r_theta(sigma, theta, int(idx));
        else if (which == "v")
            v = eng->v_n(sigma, theta, int(idx));
        else if (which == "R")
            v = eng->coeff_R(sigma, int(idx));
        else if (which == "W")
            v = eng->coeff_W(sigma, int(idx), tol, max_terms);
        else
            throw fwx::ParseError("unknown coefficient family '" + which +
                                  "' (expected q, l, ltheta, v, R, or W)");
        out.push_back(fwx::to_cplx(v));
    }
    return out;
}

std::string params_repr(const fwx::ParameterSet& ps)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "Params(p=%zu, q=%zu, rho=%.6g, mu=%.6g%+.6gj)", ps.p(),
                  ps.q(), ps.rho(), ps.mu().real(), ps.mu().imag());
    return buf;
}

} // namespace

PYBIND11_MODULE(pyfwx, m)
{
    m.doc() = "Fox-Wright psi function in the boundary-balanced case: series evaluation, "
              "singular expansion, and branch-cut data.";

    auto base = py::register_exception<fwx::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<fwx::PoleError>(m, "PoleError", base.ptr());
    py::register_exception<fwx::DeltaError>(m, "DeltaError", base.ptr());
    py::register_exception<fwx::DomainError>(m, "DomainError", base.ptr());
    py::register_exception<fwx::ShapeError>(m, "ShapeError", base.ptr());
    py::register_exception<fwx::SigmaError>(m, "SigmaError", base.ptr());
    py::register_exception<fwx::ScaleError>(m, "ScaleError", base.ptr());
    py::register_exception<fwx::IntegerMuError>(m, "IntegerMuError", base.ptr());
    py::register_exception<fwx::PoleCollisionError>(m, "PoleCollisionError", base.ptr());
    py::register_exception<fwx::ToleranceError>(m, "ToleranceError", base.ptr());
    py::register_exception<fwx::CutError>(m, "CutError", base.ptr());
    py::register_exception<fwx::IndexError>(m, "IndexError", base.ptr());
    py::register_exception<fwx::ParseError>(m, "ParseError", base.ptr());

    m.attr("default_tol") = fwx::default_tol;
    m.attr("default_max_terms") = py::int_(fwx::default_max_terms);
    m.attr("__version__") = "1.0.0";

    py::class_<fwx::ParameterSet>(m, "Params",
                                  "Validated parameter set (a, A, b, B) with sum(B) - sum(A) "
                                  "= -1; exposes the derived constants rho, mu, nu, alpha.")
        .def(py::init(&make_params), py::arg("a"), py::arg("A") = std::vector<double>{},
             py::arg("b") = std::vector<fwx::cplx>{}, py::arg("B") = std::vector<double>{},
             "Omitted or empty scale lists default to all ones.")
        .def_property_readonly("a", [](const fwx::ParameterSet& p) { return p.a(); })
        .def_property_readonly("A", [](const fwx::ParameterSet& p) { return p.A(); })
        .def_property_readonly("b", [](const fwx::ParameterSet& p) { return p.b(); })
        .def_property_readonly("B", [](const fwx::ParameterSet& p) { return p.B(); })
        .def_property_readonly("p", &fwx::ParameterSet::p)
        .def_property_readonly("q", &fwx::ParameterSet::q)
        .def_property_readonly("rho", &fwx::ParameterSet::rho,
                               "Radius of convergence of the power series at the origin.")
        .def_property_readonly("mu", &fwx::ParameterSet::mu,
                               "Exponent of the algebraic singularity at z = rho.")
        .def_property_readonly("nu", &fwx::ParameterSet::nu,
                               "Leading singular amplitude.")
        .def_property_readonly("alpha", &fwx::ParameterSet::alpha,
                               "min Re(a_k / A_k); must be positive.")
        .def_property_readonly("all_real", &fwx::ParameterSet::all_real)
        .def_property_readonly("mu_is_integer", &fwx::ParameterSet::mu_is_integer)
        .def("__repr__", &params_repr);

    m.def(
        "eval",
        [](const fwx::ParameterSet& ps, const fwx::cplx& z, const std::string& rep, double tol,
           long max_terms, std::optional<double> sigma) {
            fwx::EvalResult r;
            {
                py::gil_scoped_release release;
                r = eval_dispatch(ps, z, rep, tol, max_terms, sigma);
            }
            return result_dict(r);
        },
        py::arg("params"), py::arg("z"), py::arg("rep") = "auto",
        py::arg("tol") = fwx::default_tol, py::arg("max_terms") = fwx::default_max_terms,
        py::arg("sigma") = py::none(),
        "Evaluate the function at z (unscaled argument). rep selects the representation: "
        "auto, maclaurin, residue, singular, or at-rho (z is ignored for at-rho). Returns a "
        "dict with value, representation, terms_used, err_estimate, and warning when one "
        "was raised.");

    m.def(
        "at_rho",
        [](const fwx::ParameterSet& ps, std::optional<double> sigma, double tol,
           long max_terms) {
            fwx::EvalResult r;
            {
                py::gil_scoped_release release;
                r = fwx::eval_at_rho(ps, sigma, tol, max_terms);
            }
            return result_dict(r);
        },
        py::arg("params"), py::arg("sigma") = py::none(), py::arg("tol") = fwx::default_tol,
        py::arg("max_terms") = fwx::default_max_terms,
        "Value exactly at z = rho (requires Re mu > 0).");

    m.def(
        "cut",
        [](const fwx::ParameterSet& ps, double x, double tol, long max_terms) {
            fwx::CutValues cv;
            {
                py::gil_scoped_release release;
                cv = fwx::cut_values(ps, x, tol, max_terms);
            }
            py::dict d;
            d["x"] = cv.x;
            d["jump"] = cv.jump;
            d["average"] = cv.average;
            return d;
        },
        py::arg("params"), py::arg("x"), py::arg("tol") = fwx::default_tol,
        py::arg("max_terms") = fwx::default_max_terms,
        "Jump and two-sided average across the branch cut at x > rho (real parameters "
        "only). The jump is purely imaginary and the average purely real.");

    m.def(
        "coeffs",
        [](const fwx::ParameterSet& ps, const std::string& which, int count,
           std::optional<double> sigma, double theta, double tol, long max_terms) {
            py::gil_scoped_release release;
            return coeffs_impl(ps, which, count, sigma, theta, tol, max_terms);
        },
        py::arg("params"), py::arg("which"), py::arg("count") = 16,
        py::arg("sigma") = py::none(), py::arg("theta") = 0.0,
        py::arg("tol") = fwx::default_tol, py::arg("max_terms") = fwx::default_max_terms,
        "Expansion coefficient family as a list of complex numbers. which is one of q, l, "
        "ltheta, v, R, W; the q sequence starts at index 1, the others at 0.");

    m.def(
        "w_radius",
        [](const fwx::ParameterSet& ps, std::optional<double> sigma, int terms) {
            double sig = fwx::choose_sigma(ps, sigma);
            auto eng = fwx::engine_for(ps);
            py::gil_scoped_release release;
            return eng->w_radius_estimate(sig, terms);
        },
        py::arg("params"), py::arg("sigma") = py::none(), py::arg("terms") = 60,
        "Root-test estimate of the convergence radius of the regular part of the singular "
        "expansion.");

    m.def("parse_complex", &fwx::parse_complex_literal, py::arg("text"),
          "Parse a complex literal such as '1.5', '-2+0.3i', or '0.7-0.2i'.");
}

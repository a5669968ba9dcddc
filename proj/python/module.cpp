#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nblab/arith.hpp"
#include "nblab/bd.hpp"
#include "nblab/extremal.hpp"
#include "nblab/kappa.hpp"
#include "nblab/lfun.hpp"
#include "nblab/ortho.hpp"

namespace py = pybind11;
using namespace nblab;

PYBIND11_MODULE(_nblab, m) {
    m.doc() = "Nyman-Beurling / Baez-Duarte numerical laboratory";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<ConditioningError>(m, "ConditioningError", PyExc_ArithmeticError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    // arith
    m.def("mobius", &mobius, py::arg("k"));
    m.def("totient", &totient, py::arg("q"));
    py::class_<CharacterTable>(m, "CharacterTable")
        .def_property_readonly("modulus", &CharacterTable::modulus)
        .def_property_readonly("is_principal", &CharacterTable::is_principal)
        .def("__call__", &CharacterTable::operator(), py::arg("k"))
        .def("values", &CharacterTable::values)
        .def("conjugate", &CharacterTable::conjugate)
        .def("__eq__", [](const CharacterTable& a, const CharacterTable& b) { return a == b; });
    m.def("characters_mod", &characters_mod, py::arg("q"), py::arg("size_limit") = 1'000'000);
    m.def("weighted_prefix", &weighted_prefix, py::arg("chi"), py::arg("p"), py::arg("m"));

    // lfun
    m.def(
        "hurwitz_zeta",
        [](cplx s, double a) { return hurwitz_zeta(s, a); },
        py::arg("s"), py::arg("a"));
    m.def(
        "zeta", [](cplx s) { return zeta_eval(s); }, py::arg("s"));
    m.def(
        "l_eval", [](const CharacterTable& chi, cplx s) { return l_eval(chi, s); },
        py::arg("chi"), py::arg("s"));
    m.def("inv_l_partial", &inv_l_partial, py::arg("chi"), py::arg("n"), py::arg("s"));
    py::class_<DirichletPoly>(m, "DirichletPoly")
        .def(py::init<std::vector<cplx>>())
        .def_property_readonly("coeffs", &DirichletPoly::coeffs)
        .def("eval", &DirichletPoly::eval, py::arg("s"));
    m.def("mollifier_vn", &mollifier_vn, py::arg("n"));

    // kappa
    py::class_<KappaSpec>(m, "KappaSpec")
        .def(py::init<CharacterTable, double>(), py::arg("chi"), py::arg("p"))
        .def_property_readonly("alpha", &KappaSpec::alpha)
        .def_property_readonly("beta", &KappaSpec::beta)
        .def_property_readonly("p", &KappaSpec::p)
        .def("kappa", &KappaSpec::kappa, py::arg("x"))
        .def("prefix", &KappaSpec::prefix, py::arg("m"))
        .def("sup_abs", &KappaSpec::sup_abs, py::arg("X"))
        .def("lambda_segments",
             [](const KappaSpec& spec, std::uint64_t k, double eps) {
                 py::list out;
                 for (const Segment& s : spec.lambda_segments(k, eps))
                     out.append(py::make_tuple(s.x_lo, s.x_hi, s.power_coeff, s.const_coeff));
                 return out;
             },
             py::arg("k"), py::arg("eps"));

    // bd
    py::class_<GramSystem>(m, "GramSystem")
        .def_readonly("n", &GramSystem::n)
        .def_readonly("G", &GramSystem::G)
        .def_readonly("v", &GramSystem::v)
        .def_readonly("tail_bound", &GramSystem::tail_bound);
    m.def(
        "build_gram",
        [](const KappaSpec& spec, std::size_t n, double eps_override) {
            EpsPolicy policy;
            if (eps_override > 0) policy.eps_override = eps_override;
            return build_gram(spec, n, policy);
        },
        py::arg("spec"), py::arg("n"), py::arg("eps_override") = 0.0);
    m.def(
        "bd_distance",
        [](const KappaSpec& spec, std::size_t n, double eps_override) {
            BdOptions opts;
            if (eps_override > 0) opts.eps.eps_override = eps_override;
            BdResult r = bd_distance(spec, n, opts);
            return py::make_tuple(r.d2, r.cond_estimate, r.tail_bound);
        },
        py::arg("spec"), py::arg("n"), py::arg("eps_override") = 0.0,
        "returns (d2, cond_estimate, tail_bound)");
    m.def(
        "freq_objective",
        [](const CharacterTable& chi, double p, const DirichletPoly& A, double T) {
            FreqObjective r = freq_objective(chi, p, A, T);
            return py::make_tuple(r.value, r.tail_report);
        },
        py::arg("chi"), py::arg("p"), py::arg("A"), py::arg("T"));
    m.def(
        "plancherel_check",
        [](const CharacterTable& chi, double p, const std::vector<cplx>& b, double T) {
            PlancherelResult r = plancherel_check(chi, p, b, T);
            return py::make_tuple(r.time_value, r.freq_value, r.discrepancy);
        },
        py::arg("chi"), py::arg("p"), py::arg("b"), py::arg("T") = 500.0,
        "returns (time_value, freq_value, discrepancy)");

    // ortho
    m.def("psi_eval", &psi_eval, py::arg("p"), py::arg("k"), py::arg("t"));
    m.def("monomial_inner", &monomial_inner, py::arg("p"), py::arg("j"), py::arg("k"));
    m.def("kernel_eval", &kernel_eval, py::arg("p"), py::arg("n"), py::arg("u"), py::arg("v"));
    py::class_<KernelMatrix>(m, "KernelMatrix")
        .def_readonly("m", &KernelMatrix::m)
        .def_readonly("nodes", &KernelMatrix::nodes)
        .def_readonly("n", &KernelMatrix::n)
        .def_readonly("H", &KernelMatrix::H)
        .def_readonly("cond_estimate", &KernelMatrix::cond_estimate)
        .def_readonly("underdetermined", &KernelMatrix::underdetermined);
    m.def(
        "kernel_matrix",
        [](double p, std::uint64_t n, const std::vector<double>& nodes) {
            return kernel_matrix(p, n, nodes);
        },
        py::arg("p"), py::arg("n"), py::arg("nodes"));

    // extremal
    py::class_<ExtremalSolution>(m, "ExtremalSolution")
        .def_readonly("p", &ExtremalSolution::p)
        .def_readonly("n", &ExtremalSolution::n)
        .def_readonly("nodes", &ExtremalSolution::nodes)
        .def_readonly("psi_coeffs", &ExtremalSolution::psi_coeffs)
        .def_readonly("mono_coeffs", &ExtremalSolution::mono_coeffs)
        .def_readonly("d2", &ExtremalSolution::d2)
        .def_readonly("predicted", &ExtremalSolution::predicted)
        .def_readonly("residuals", &ExtremalSolution::residuals)
        .def_readonly("cond_estimate", &ExtremalSolution::cond_estimate)
        .def("eval_at", &ExtremalSolution::eval_at, py::arg("t"));
    m.def(
        "solve_problem2",
        [](double p, std::uint64_t n, const std::vector<double>& nodes) {
            return solve_problem2(p, n, nodes);
        },
        py::arg("p"), py::arg("n"), py::arg("nodes"));
    m.def(
        "min_norm_oracle",
        [](double p, std::uint64_t n, const std::vector<double>& nodes) {
            return min_norm_oracle(p, n, nodes);
        },
        py::arg("p"), py::arg("n"), py::arg("nodes"));
    m.def(
        "asymptotic_table",
        [](double p, const std::vector<double>& nodes, const std::vector<std::uint64_t>& ns) {
            AsymptoticTable t = asymptotic_table(p, nodes, ns);
            py::list rows;
            for (const auto& r : t.rows)
                rows.append(py::make_tuple(r.n, r.d2, r.d2_logn, r.ratio));
            return py::make_tuple(rows, t.target_sum, t.fit_slope, t.fit_intercept);
        },
        py::arg("p"), py::arg("nodes"), py::arg("n_list"),
        "returns (rows, target_sum, fit_slope, fit_intercept)");
    m.def("zeta_zeros", &zeta_zeros, py::arg("k1"), py::arg("k2"));
}

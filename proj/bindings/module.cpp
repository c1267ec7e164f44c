#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "degenlab/coefficient.hpp"
#include "degenlab/errors.hpp"
#include "degenlab/inequalities.hpp"
#include "degenlab/nemytskii.hpp"
#include "degenlab/norms.hpp"
#include "degenlab/solver.hpp"

namespace py = pybind11;
using namespace degenlab;

namespace {

// The mesh type is immutable after creation, so exposing it to Python
// through a non-const holder is safe.
std::shared_ptr<Mesh> unconst(MeshPtr mesh) { return std::const_pointer_cast<Mesh>(mesh); }

std::vector<std::vector<double>> slices_of(const SpaceTimeFunction& u) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(u.num_slices()));
    for (int n = 0; n < u.num_slices(); ++n) {
        const auto s = u.slice(n);
        out.emplace_back(s.begin(), s.end());
    }
    return out;
}

SpaceTimeFunction spacetime_from(const TimeGrid& tg, MeshPtr mesh,
                                 const std::vector<std::vector<double>>& slices) {
    if (static_cast<int>(slices.size()) != tg.steps + 1) {
        throw ShapeError("expected steps + 1 slices");
    }
    SpaceTimeFunction u(tg, std::move(mesh));
    for (int n = 0; n <= tg.steps; ++n) u.set_slice(n, slices[static_cast<std::size_t>(n)]);
    return u;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical laboratory for a semilinear degenerate reaction-diffusion problem";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<DiffusionCoefficient>(m, "DiffusionCoefficient")
        .def_static("power_law", &DiffusionCoefficient::power_law, py::arg("gamma"))
        .def_static("tabulated", &DiffusionCoefficient::tabulated, py::arg("nodes"),
                    py::arg("values"))
        .def_static("constant_one", &DiffusionCoefficient::constant_one)
        .def("__call__", &DiffusionCoefficient::operator())
        .def("vanishes_at_boundary", &DiffusionCoefficient::vanishes_at_boundary)
        .def("__repr__", &DiffusionCoefficient::describe);

    m.def("eval_a", &eval_a, py::arg("coeff"), py::arg("x"));
    m.def("xi_a", &xi_a, py::arg("coeff"), py::arg("x"), py::arg("rel_tol") = 1e-12);

    py::enum_<Degeneracy>(m, "Degeneracy")
        .value("WEAKLY_DEGENERATE", Degeneracy::WeaklyDegenerate)
        .value("STRONGLY_DEGENERATE", Degeneracy::StronglyDegenerate)
        .value("NON_DEGENERATE", Degeneracy::NonDegenerate);

    py::class_<DegeneracyReport>(m, "DegeneracyReport")
        .def_readonly("classification", &DegeneracyReport::classification)
        .def_readonly("reciprocal_integral", &DegeneracyReport::reciprocal_integral)
        .def_readonly("k_constant", &DegeneracyReport::k_constant)
        .def_readonly("satisfies_A4", &DegeneracyReport::satisfies_A4)
        .def_readonly("refinement_values", &DegeneracyReport::refinement_values);

    m.def("classify", &classify, py::arg("coeff"), py::arg("refinement_levels") = 12);

    py::enum_<ConditionStatus>(m, "ConditionStatus")
        .value("HOLDS", ConditionStatus::Holds)
        .value("FAILS", ConditionStatus::Fails)
        .value("INDETERMINATE", ConditionStatus::Indeterminate);

    py::class_<A5SDCheck>(m, "A5SDCheck")
        .def_readonly("status", &A5SDCheck::status)
        .def_readonly("q_theta", &A5SDCheck::q_theta)
        .def_readonly("xi_lq_norm", &A5SDCheck::xi_lq_norm);

    m.def("check_A5_SD", &check_A5_SD, py::arg("coeff"), py::arg("theta"),
          py::arg("refinement_levels") = 12);

    py::class_<Mesh, std::shared_ptr<Mesh>>(m, "Mesh")
        .def_property_readonly("nodes",
                               [](const Mesh& mesh) {
                                   return std::vector<double>(mesh.nodes().begin(),
                                                              mesh.nodes().end());
                               })
        .def_property_readonly("weights",
                               [](const Mesh& mesh) {
                                   return std::vector<double>(mesh.weights().begin(),
                                                              mesh.weights().end());
                               })
        .def_property_readonly("num_cells", &Mesh::num_cells);

    m.def(
        "make_mesh",
        [](int n, double g) { return unconst(make_mesh(n, g)); },
        py::arg("num_cells"), py::arg("grading_exponent") = 1.0);

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init([](std::shared_ptr<Mesh> mesh, std::vector<double> values) {
                 return GridFunction(std::move(mesh), std::move(values));
             }),
             py::arg("mesh"), py::arg("values"))
        .def_readonly("values", &GridFunction::values)
        .def_property_readonly("mesh", [](const GridFunction& u) { return unconst(u.mesh); });

    py::class_<TimeGrid>(m, "TimeGrid")
        .def(py::init<double, int>(), py::arg("horizon"), py::arg("steps"))
        .def_readonly("horizon", &TimeGrid::horizon)
        .def_readonly("steps", &TimeGrid::steps);

    py::class_<SpaceTimeFunction>(m, "SpaceTimeFunction")
        .def(py::init([](const TimeGrid& tg, std::shared_ptr<Mesh> mesh,
                         const std::vector<std::vector<double>>& slices) {
                 return spacetime_from(tg, std::move(mesh), slices);
             }),
             py::arg("time_grid"), py::arg("mesh"), py::arg("slices"))
        .def_property_readonly("slices", &slices_of)
        .def_readonly("time", &SpaceTimeFunction::time);

    m.def("quad_integral",
          [](const GridFunction& u) { return quad_integral(u); });
    m.def("midpoint_derivative", &midpoint_derivative);

    m.def("lp_norm", &lp_norm, py::arg("u"), py::arg("p"));
    m.def("linf_norm", &linf_norm);
    m.def("seminorm_1a", &seminorm_1a);
    m.def("norm_1a", &norm_1a);
    m.def("norm_2a", &norm_2a);
    m.def("b_norm", &b_norm);
    m.def("h_norm", &h_norm);
    m.def("lp_qt_norm", &lp_qt_norm);

    m.def("gn_alpha", &gn_alpha, py::arg("q"));
    m.def("gn_beta", &gn_beta, py::arg("p"), py::arg("q"));

    py::class_<InequalityTrial>(m, "InequalityTrial")
        .def_readonly("lemma", &InequalityTrial::lemma)
        .def_readonly("lhs", &InequalityTrial::lhs)
        .def_readonly("rhs_factor", &InequalityTrial::rhs_factor)
        .def_readonly("ratio", &InequalityTrial::ratio)
        .def_readonly("flag", &InequalityTrial::flag)
        .def_readonly("explicit_constant", &InequalityTrial::explicit_constant);

    py::class_<CoefficientProfile>(m, "CoefficientProfile")
        .def_static("analyze", &CoefficientProfile::analyze, py::arg("coeff"),
                    py::arg("levels") = 12)
        .def_readonly("k", &CoefficientProfile::k)
        .def_readonly("classification", &CoefficientProfile::classification);

    m.def("check_sob1", &check_sob1);
    m.def("check_gn_linf", &check_gn_linf);
    m.def("check_gn_lp", &check_gn_lp);
    m.def("check_sob2", &check_sob2);
    m.def("check_sob3", &check_sob3);

    py::class_<SpaceTimeField>(m, "SpaceTimeField")
        .def_static("constant", &SpaceTimeField::constant)
        .def_static("separable", &SpaceTimeField::separable, py::arg("time_poly"),
                    py::arg("space_poly"))
        .def("__call__", &SpaceTimeField::operator());

    py::class_<NemytskiiModel>(m, "NemytskiiModel")
        .def_static("zero", &NemytskiiModel::zero)
        .def_static("pure_power", &NemytskiiModel::pure_power, py::arg("g0"), py::arg("theta"),
                    py::arg("sign"))
        .def_static("paper_example", &NemytskiiModel::paper_example, py::arg("theta"),
                    py::arg("c"))
        .def("__call__", &NemytskiiModel::operator())
        .def_property_readonly("theta", &NemytskiiModel::theta)
        .def_property_readonly("growth_g0", &NemytskiiModel::growth_g0)
        .def_property_readonly("declared_nu", &NemytskiiModel::declared_nu)
        .def("__repr__", &NemytskiiModel::describe);

    m.def("eval_f", &eval_f);
    m.def("apply_phi", &apply_phi);

    py::class_<A3BoundCheck>(m, "A3BoundCheck")
        .def_readonly("bound", &A3BoundCheck::bound)
        .def_readonly("worst_margin", &A3BoundCheck::worst_margin)
        .def_readonly("holds", &A3BoundCheck::holds);

    py::class_<A3Report>(m, "A3Report")
        .def_readonly("bounds", &A3Report::bounds)
        .def_readonly("conforming", &A3Report::conforming)
        .def_readonly("samples", &A3Report::samples);

    m.def("validate_A3", &validate_A3, py::arg("model"), py::arg("sample_budget"),
          py::arg("horizon") = 1.0, py::arg("seed") = 0, py::arg("box_radius") = 10.0);
    m.def("lipschitz_ratio", &lipschitz_ratio);

    py::class_<RobinBC>(m, "RobinBC")
        .def(py::init([](double b0, double b1, double g0, double g1) {
                 RobinBC bc{b0, b1, g0, g1};
                 bc.validate();
                 return bc;
             }),
             py::arg("beta0"), py::arg("beta1"), py::arg("gamma0"), py::arg("gamma1"));

    py::class_<BoundaryMode>(m, "BoundaryMode")
        .def_static("weighted_neumann", &BoundaryMode::weighted_neumann)
        .def_static("robin", &BoundaryMode::robin_bc, py::arg("bc"));

    py::class_<InitialDatum>(m, "InitialDatum")
        .def_static("legendre", &InitialDatum::legendre, py::arg("degree"))
        .def_static("sign", &InitialDatum::sign)
        .def_static("polynomial", &InitialDatum::polynomial, py::arg("coeffs"))
        .def_static("nodal", &InitialDatum::nodal, py::arg("nodes"), py::arg("values"))
        .def("__call__", &InitialDatum::operator());

    py::enum_<RegularityClaim>(m, "RegularityClaim")
        .value("H1A", RegularityClaim::H1a)
        .value("L2_ONLY", RegularityClaim::L2Only);

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def(py::init([](const DiffusionCoefficient& coeff, const BoundaryMode& bc,
                         const SpaceTimeField& alpha, const NemytskiiModel& model, double horizon,
                         const InitialDatum& u0, RegularityClaim claim) {
                 ProblemSpec spec;
                 spec.coeff = coeff;
                 spec.bc = bc;
                 spec.alpha = alpha;
                 spec.model = model;
                 spec.horizon = horizon;
                 spec.u0 = u0;
                 spec.claim = claim;
                 return spec;
             }),
             py::arg("coeff"), py::arg("bc"), py::arg("alpha"), py::arg("model"),
             py::arg("horizon"), py::arg("u0"), py::arg("claim") = RegularityClaim::H1a);

    py::class_<SolveParams>(m, "SolveParams")
        .def(py::init([](int n, int mm, double grading, double picard_tol, int picard_max) {
                 SolveParams p;
                 p.n = n;
                 p.m = mm;
                 p.grading = grading;
                 p.picard_tol = picard_tol;
                 p.picard_max = picard_max;
                 return p;
             }),
             py::arg("n") = 256, py::arg("m") = 512, py::arg("grading") = 0.0,
             py::arg("picard_tol") = 1e-10, py::arg("picard_max") = 50);

    py::class_<SolveResult>(m, "SolveResult")
        .def_property_readonly("solution",
                               [](const SolveResult& r) { return slices_of(r.solution); })
        .def_property_readonly("mesh",
                               [](const SolveResult& r) { return unconst(r.solution.mesh); })
        .def_readonly("b_norm", &SolveResult::b_norm)
        .def_readonly("h_norm", &SolveResult::h_norm)
        .def_readonly("converged", &SolveResult::converged)
        .def_readonly("picard_iterations", &SolveResult::picard_iterations)
        .def_readonly("min_value", &SolveResult::min_value)
        .def_readonly("max_boundary_residual", &SolveResult::max_boundary_residual);

    m.def("solve_strict", &solve_strict, py::arg("spec"), py::arg("params"));

    py::class_<StabilityCertificate>(m, "StabilityCertificate")
        .def_readonly("gap_b", &StabilityCertificate::gap_b)
        .def_readonly("datum_gap_l2", &StabilityCertificate::datum_gap_l2)
        .def_readonly("bound", &StabilityCertificate::bound)
        .def_readonly("holds", &StabilityCertificate::holds);

    py::class_<StrongSolveResult>(m, "StrongSolveResult")
        .def_readonly("levels", &StrongSolveResult::levels)
        .def_readonly("initial_data_errors", &StrongSolveResult::initial_data_errors)
        .def_readonly("cauchy_gaps", &StrongSolveResult::cauchy_gaps)
        .def_readonly("certificates", &StrongSolveResult::certificates)
        .def_readonly("stability_constant", &StrongSolveResult::stability_constant)
        .def_readonly("certified", &StrongSolveResult::certified);

    m.def(
        "solve_strong",
        [](const ProblemSpec& spec, const SolveParams& params, const std::vector<int>& levels,
           double slack) { return solve_strong(spec, params, levels, slack); },
        py::arg("spec"), py::arg("params"), py::arg("levels"),
        py::arg("certificate_slack") = 0.05);

    m.def(
        "stability_gap",
        [](const ProblemSpec& spec, const InitialDatum& u0, const InitialDatum& v0,
           const SolveParams& params) { return stability_gap(spec, u0, v0, params); },
        py::arg("spec"), py::arg("u0"), py::arg("v0"), py::arg("params"));

    m.attr("__version__") = "0.1.0";
}

import math

import pytest

import degenlab as dl


def test_coefficient_and_classification():
    a = dl.DiffusionCoefficient.power_law(0.5)
    assert a(0.6) == pytest.approx(0.8, abs=1e-14)
    assert a(1.0) == 0.0
    report = dl.classify(a)
    assert report.classification == dl.Degeneracy.WEAKLY_DEGENERATE
    assert report.k_constant == pytest.approx(math.sqrt(math.pi), abs=1e-4)

    sd = dl.classify(dl.DiffusionCoefficient.power_law(1.5))
    assert sd.classification == dl.Degeneracy.STRONGLY_DEGENERATE
    assert math.isinf(sd.reciprocal_integral)


def test_xi_and_admissibility():
    a = dl.DiffusionCoefficient.power_law(0.5)
    assert dl.xi_a(a, 0.9) == pytest.approx(math.asin(0.9), rel=1e-8)
    check = dl.check_A5_SD(dl.DiffusionCoefficient.power_law(1.0), 2.0)
    assert check.q_theta == 3.0
    assert check.status == dl.ConditionStatus.HOLDS


def test_mesh_and_quadrature():
    mesh = dl.make_mesh(64, 2.0)
    assert sum(mesh.weights) == pytest.approx(2.0, abs=1e-13)
    one = dl.GridFunction(mesh, [1.0] * (mesh.num_cells + 1))
    assert dl.quad_integral(one) == pytest.approx(2.0, abs=1e-13)
    assert dl.lp_norm(one, 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-13)


def test_interpolation_exponents():
    assert dl.gn_alpha(1.0) == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert dl.gn_beta(5.0, 1.0) == pytest.approx(0.4, abs=1e-15)
    with pytest.raises(ValueError):
        dl.gn_beta(2.0, 1.0)


def test_inequality_checker():
    profile = dl.CoefficientProfile.analyze(dl.DiffusionCoefficient.power_law(0.5))
    mesh = dl.make_mesh(128, 2.0)
    u = dl.GridFunction(mesh, [1.0 - x * x for x in mesh.nodes])
    trial = dl.check_sob1(profile, u, 3.0)
    assert trial.flag
    assert trial.ratio * trial.rhs_factor == pytest.approx(trial.lhs, rel=1e-10)


def test_nonlinearity_validation():
    model = dl.NemytskiiModel.pure_power(1.0, 3.0, -1)
    assert dl.eval_f(model, 0.0, 0.0, 2.0) == pytest.approx(-8.0)
    report = dl.validate_A3(model, 5000, seed=7)
    assert report.conforming
    source = dl.validate_A3(dl.NemytskiiModel.pure_power(1.0, 3.0, +1), 5000, seed=7)
    assert not source.conforming


def test_strict_solve_legendre():
    spec = dl.ProblemSpec(
        coeff=dl.DiffusionCoefficient.power_law(1.0),
        bc=dl.BoundaryMode.weighted_neumann(),
        alpha=dl.SpaceTimeField.constant(0.0),
        model=dl.NemytskiiModel.zero(),
        horizon=0.25,
        u0=dl.InitialDatum.legendre(2),
    )
    result = dl.solve_strict(spec, dl.SolveParams(n=64, m=256))
    assert result.converged
    final = result.solution[-1]
    nodes = result.mesh.nodes
    decay = math.exp(-6.0 * 0.25)
    worst = max(
        abs(v - decay * 0.5 * (3.0 * x * x - 1.0)) for v, x in zip(final, nodes)
    )
    assert worst < 5e-3


def test_strong_solve_certificates():
    spec = dl.ProblemSpec(
        coeff=dl.DiffusionCoefficient.power_law(0.5),
        bc=dl.BoundaryMode.robin(dl.RobinBC(1.0, -1.0, 1.0, 1.0)),
        alpha=dl.SpaceTimeField.constant(0.5),
        model=dl.NemytskiiModel.paper_example(2.0, dl.SpaceTimeField.constant(0.5)),
        horizon=0.5,
        u0=dl.InitialDatum.sign(),
        claim=dl.RegularityClaim.L2_ONLY,
    )
    result = dl.solve_strong(spec, dl.SolveParams(n=64, m=64), [4, 8, 16])
    assert result.certified
    errs = result.initial_data_errors
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_invalid_configuration_raises():
    with pytest.raises(ValueError):
        dl.RobinBC(0.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        dl.DiffusionCoefficient.power_law(-1.0)


def test_version():
    assert dl.__version__ == "0.1.0"

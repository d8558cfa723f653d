import numpy as np
import pytest

from cswenodg import (ConfigError, ErrorReport, build_uniform_1d, build_uniform_2d, convergence_study, error_norms,
                      observed_orders, project_function)


def test_polynomial_projection_has_no_error():
    sol = project_function(lambda x: (1 + x - 0.3 * x ** 2)[None], build_uniform_1d(-1, 2, 7), 2)
    l1, linf = error_norms(sol, lambda x, t: (1 + x - 0.3 * x ** 2)[None], 0.0)
    assert l1 <= 1e-12 and linf <= 1e-12


def test_2d_polynomial_projection_has_no_error():
    f = lambda x, y: (x * y - y ** 2 + 2)[None]
    sol = project_function(f, build_uniform_2d((0, 1), (0, 2), 4, 3), 2)
    l1, linf = error_norms(sol, lambda x, y, t: f(x, y), 0.0)
    assert l1 <= 1e-12 and linf <= 1e-12


def test_l1_is_mean_absolute_error():
    mesh = build_uniform_1d(0, 4, 8)
    sol = project_function(lambda x: np.zeros((1,) + np.shape(x)), mesh, 1)
    l1, linf = error_norms(sol, lambda x, t: np.full((1,) + np.shape(x), 0.5), 0.0)
    assert l1 == pytest.approx(0.5) and linf == pytest.approx(0.5)
    raw, _ = error_norms(sol, lambda x, t: np.full((1,) + np.shape(x), 0.5), 0.0, normalize=False)
    assert raw == pytest.approx(2.0)


def test_selects_variable():
    mesh = build_uniform_1d(0, 1, 4)
    sol = project_function(lambda x: np.stack([0 * x, 1 + 0 * x]), mesh, 1)
    oracle = lambda x, t: np.stack([0 * x, 0 * x])
    assert error_norms(sol, oracle, 0.0, var=0)[0] == pytest.approx(0.0)
    assert error_norms(sol, oracle, 0.0, var=1)[0] == pytest.approx(1.0)


def test_missing_oracle():
    sol = project_function(lambda x: x[None], build_uniform_1d(0, 1, 4), 1)
    with pytest.raises(ConfigError):
        error_norms(sol, None, 0.0)


def test_observed_orders():
    out = observed_orders([1.0, 0.25, 0.0625])
    assert out[0] is None and out[1:] == pytest.approx([2.0, 2.0])
    assert np.isnan(observed_orders([1.0, 0.0])[1])
    assert observed_orders([3.0]) == [None]


def test_report_layout():
    rep = ErrorReport()
    rep.add(20, 1e-2, 2e-2)
    rep.add(40, 2.5e-3, 1e-2)
    assert rep.l1_order[1] == pytest.approx(2.0) and rep.linf_order[1] == pytest.approx(1.0)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "K,L1,L1_order,Linf,Linf_order"
    assert lines[1] == "20,1.000000e-02,,2.000000e-02,"
    assert lines[2].startswith("40,2.500000e-03,2.0000,")
    table = rep.format_table().splitlines()
    assert len(table) == 3 and "order" in table[0]
    square = ErrorReport()
    square.add((20, 20), 1.0, 1.0)
    assert square.to_csv().splitlines()[1].startswith("20x20,")


def test_table1_unlimited_p1_magnitude():
    rep = convergence_study("burgers1d", 1, "none", [40])
    assert rep.l1_order == [None]
    assert 1.31e-3 / 2 <= rep.l1[0] <= 1.31e-3 * 2


def test_burgers_p2_orders_near_three():
    rep = convergence_study("burgers1d", 2, "cswen", [20, 40, 80])
    assert all(2.5 <= o <= 3.3 for o in rep.l1_order[1:])
    assert rep.meta["limiter"] == "cswen" and rep.meta["mesh"] == "perturbed"
    assert rep.meta["cfl"] == 0.18


def test_burgers2d_p3_fourth_order():
    rep = convergence_study("burgers2d", 3, "cswen", [10, 20])
    assert rep.l1_order[1] == pytest.approx(4.0, abs=0.4)

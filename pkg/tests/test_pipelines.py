import math

import pytest

from rexlab.constructions import ContractError
from rexlab.pipelines import pipeline_c4, pipeline_k2t, pipeline_k33, pipeline_kst
from rexlab.regularize import InfeasibleError
from rexlab.verify import check_regular, max_codegree


def assert_certified(res, n):
    G = res.graph
    assert G.n == n
    assert check_regular(G) == res.degree
    s, t = res.forbidden
    assert max_codegree(G, s) <= t - 1
    assert G.loop_count == 0


@pytest.mark.parametrize("n,deg", [(60, 3), (71, 2), (100, 5), (200, 7)])
def test_c4_examples(n, deg):
    res = pipeline_c4(n)
    assert res.degree == deg
    assert_certified(res, n)


@pytest.mark.parametrize("n", range(20, 90, 7))
def test_c4_sweep(n):
    try:
        res = pipeline_c4(n)
    except InfeasibleError as exc:
        assert exc.constraints
        return
    assert_certified(res, n)


def test_c4_too_small():
    with pytest.raises(InfeasibleError):
        pipeline_c4(5)


@pytest.mark.parametrize("n,t,deg", [(100, 2, 7)])
def test_k2t_even(n, t, deg):
    res = pipeline_k2t(n, t)
    assert res.degree == deg
    assert_certified(res, n)
    assert res.target_bound == pytest.approx(math.sqrt(t * n / 4))


def test_k2t_odd_uses_h_star():
    res = pipeline_k2t(415, 2)
    assert res.degree == 12 and res.edge_count == 2490
    assert any(step["step"] == "h_star" for step in res.construction_log)
    assert_certified(res, 415)


def test_k2t_infeasible():
    with pytest.raises(InfeasibleError):
        pipeline_k2t(21, 2)
    with pytest.raises(ValueError):
        pipeline_k2t(21, 3)


def test_k33():
    res = pipeline_k33(179)
    assert (res.degree, res.edge_count) == (6, 537)
    assert_certified(res, 179)
    assert pipeline_k33(27).degree == 6
    with pytest.raises(InfeasibleError):
        pipeline_k33(30)


def test_kst():
    res = pipeline_kst(81, 3, 7)
    assert (res.degree, res.edge_count) == (12, 486)
    assert_certified(res, 81)
    assert res.target_bound == pytest.approx(27 ** (2 / 3))


@pytest.mark.parametrize("n", [179, 27])
def test_kst_infeasible(n):
    with pytest.raises(InfeasibleError) as exc:
        pipeline_kst(n, 3, 7)
    assert exc.value.to_dict()["constraints"]


def test_kst_argument_checks():
    with pytest.raises(ValueError):
        pipeline_kst(81, 2, 7)
    with pytest.raises(ValueError):
        pipeline_kst(81, 3, 6)


def test_result_serialises():
    d = pipeline_c4(60).to_dict()
    assert d["n"] == 60 and d["degree"] == 3 and d["forbidden"] == [2, 2]
    assert d["construction_log"][0]["step"] == "bipartite_sum"


def test_contract_error_is_runtime_error():
    assert issubclass(ContractError, RuntimeError)

from fractions import Fraction

import pytest

from graphmoments import InputError
from graphmoments.targets import (NAMED_KERNELS, RandomWeightedGraph,
                                  StepGraphon, WeightedGraph, coin_node,
                                  constant_target, grid_graphon,
                                  target_from_json)

F = Fraction


def test_weighted_graph_validation():
    with pytest.raises(InputError):
        WeightedGraph([], [])
    with pytest.raises(InputError):
        WeightedGraph([0], [[1]])
    with pytest.raises(InputError):
        WeightedGraph([1, -1], [[0, 0], [0, 0]])
    with pytest.raises(InputError):
        WeightedGraph([1, 1], [[0, 1]])
    with pytest.raises(InputError):
        WeightedGraph([1, 1], [[0, 1], [2, 0]])  # asymmetric


def test_weighted_graph_basics():
    h = WeightedGraph([1, 3], [["1/2", 0], [0, "-1/3"]])
    assert h.q == 2
    assert h.total_weight() == 4
    assert h.max_abs_edge() == F(1, 2)
    norm = h.normalize()
    assert norm.alpha == [F(1, 4), F(3, 4)]
    assert norm.beta == h.beta
    assert h.beta[0][0] == F(1, 2)  # accepts "p/q" strings


def test_power_table_layout():
    h = WeightedGraph([1], [[F(1, 2)]])
    assert h.power_table(3) == [F(1), F(1, 2), F(1, 4), F(1, 8)]


def test_constant_target():
    h = constant_target("1/2")
    assert h.q == 1 and h.beta[0][0] == F(1, 2) and h.alpha == [F(1)]


def test_weighted_json_round_trip():
    h = WeightedGraph([1, 2], [["1/2", "-1/3"], ["-1/3", 1]])
    assert WeightedGraph.from_json(h.to_json()) == h
    with pytest.raises(InputError):
        WeightedGraph.from_json({"alpha": [1]})


def test_rw_validation():
    with pytest.raises(InputError):
        RandomWeightedGraph([1], [[()]])  # empty distribution
    with pytest.raises(InputError):
        RandomWeightedGraph([1], [[((0, "1/2"), (1, "1/3"))]])  # sums to 5/6
    with pytest.raises(InputError):
        RandomWeightedGraph([1], [[((0, "1/2"), (0, "1/2"))]])  # repeated value
    with pytest.raises(InputError):
        RandomWeightedGraph([1], [[((0, 1), (1, 0))]])  # zero probability
    with pytest.raises(InputError):
        RandomWeightedGraph(
            [1, 1],
            [[((1, 1),), ((0, 1),)],
             [((1, 1),), ((1, 1),)]])  # asymmetric


def test_coin_moments():
    coin = coin_node()
    assert coin.q == 1 and coin.p() == 2 and coin.is_proper()
    assert coin.moment(0, 0, 0) == 1
    for m in range(1, 6):
        assert coin.moment(0, 0, m) == F(1, 2)
    assert coin.moment_table(2) == [F(1), F(1, 2), F(1, 2)]


def test_rw_from_weighted_is_degenerate():
    w = WeightedGraph([1, 2], [["1/2", "-1/3"], ["-1/3", 1]])
    h = RandomWeightedGraph.from_weighted(w)
    assert h.p() == 1 and not h.is_proper()
    assert h.expectation_graph() == w
    # degenerate moments are plain powers
    assert h.moment(0, 1, 3) == F(-1, 3) ** 3


def test_rw_expectation_and_max():
    h = RandomWeightedGraph(
        [1], [[((F(-2), F(1, 4)), (F(2), F(3, 4)))]])
    assert h.expectation_graph().beta[0][0] == F(1)
    assert h.max_abs_value() == 2
    assert h.moment(0, 0, 2) == 4


def test_rw_json_round_trip():
    coin = coin_node()
    again = RandomWeightedGraph.from_json(coin.to_json())
    assert again.alpha == coin.alpha and again.dist == coin.dist


def test_step_graphon_validation():
    with pytest.raises(InputError):
        StepGraphon([], [])
    with pytest.raises(InputError):
        StepGraphon(["1/2", "1/3"], [[0, 0], [0, 0]])  # sums to 5/6
    with pytest.raises(InputError):
        StepGraphon([1], [[0]], mode="complex")
    with pytest.raises(InputError):
        StepGraphon(["1/2", "1/2"], [[0, 1], [2, 0]])  # asymmetric
    with pytest.raises(InputError):
        StepGraphon([1], [[1]], d="1/2")  # bound below max value


def test_step_graphon_accessors():
    w = StepGraphon(["1/2", "1/2"], [["1/2", 0], [0, "-1/2"]])
    assert w.steps == 2
    assert w.mode == "exact"
    assert w.d == F(1, 2)
    assert w.value_support() == {F(1, 2), F(0), F(-1, 2)}
    assert w.breakpoints() == [F(0), F(1, 2), F(1)]
    h = w.as_weighted()
    assert isinstance(h, WeightedGraph)
    assert h.alpha == [F(1, 2), F(1, 2)] and h.beta == w.values


def test_weighted_to_step_graphon_normalizes():
    h = WeightedGraph([1, 3], [[1, 0], [0, 1]])
    w = h.to_step_graphon()
    assert w.measures == [F(1, 4), F(3, 4)]
    assert w.values == h.beta


def test_to_float_and_float_mode():
    w = StepGraphon(["1/3", "2/3"], [[1, "1/2"], ["1/2", 0]]).to_float()
    assert w.mode == "float"
    assert w.measures == [pytest.approx(1 / 3), pytest.approx(2 / 3)]
    assert w.to_float() is w
    with pytest.raises(InputError):
        w.as_weighted()


def test_grid_graphon_is_symmetric_uniform():
    w = grid_graphon(NAMED_KERNELS["xy"], 8)
    assert w.mode == "float"
    assert w.steps == 8
    assert all(m == pytest.approx(1 / 8) for m in w.measures)
    for i in range(8):
        for j in range(8):
            assert w.values[i][j] == w.values[j][i]
    # cell centers: value at (i,j) is ((i+.5)/8)((j+.5)/8)
    assert w.values[0][0] == pytest.approx((0.5 / 8) ** 2)
    with pytest.raises(InputError):
        grid_graphon(NAMED_KERNELS["xy"], 0)


def test_graphon_json_round_trip():
    w = StepGraphon(["1/2", "1/2"], [["1/2", "-1/4"], ["-1/4", 0]], d=2)
    again = StepGraphon.from_json(w.to_json())
    assert again.measures == w.measures
    assert again.values == w.values
    assert again.d == w.d
    fl = w.to_float()
    again_f = StepGraphon.from_json(fl.to_json())
    assert again_f.mode == "float" and again_f.values == fl.values


def test_target_from_json_dispatch():
    w = WeightedGraph([1], [["1/2"]])
    assert isinstance(target_from_json(w.to_json()), WeightedGraph)
    assert isinstance(target_from_json(coin_node().to_json()), RandomWeightedGraph)
    g = StepGraphon([1], [[0]])
    assert isinstance(target_from_json(g.to_json()), StepGraphon)
    with pytest.raises(InputError):
        target_from_json({"foo": 1})
    with pytest.raises(InputError):
        target_from_json([1, 2])

import json

import pytest
from hypothesis import given, settings, strategies as st

from compident.families import catenary, cycle, fin, mammillary, wing
from compident.model import (ModelError, ModelSpec, ParameterSpace, VarId,
                             compartmental_matrix, dumps_model, inductive_ordering,
                             is_inductive_ordering, is_inductively_strongly_connected,
                             is_strongly_connected, load_model, loads_model, save_model,
                             validate)


def test_cycle4_is_valid():
    validate(cycle(4))


def test_self_loop_rejected():
    with pytest.raises(ModelError, match="self-loop"):
        validate(ModelSpec(3, ((1, 2), (2, 2)), (1,), (1,)))


def test_no_output_rejected():
    with pytest.raises(ModelError, match="no output"):
        validate(ModelSpec(2, ((1, 2), (2, 1)), (1,), ()))


def test_every_problem_is_reported():
    bad = ModelSpec(3, ((1, 2), (1, 2), (1, 5)), (1,), (), (7,))
    with pytest.raises(ModelError) as info:
        validate(bad)
    msg = str(info.value)
    for piece in ("duplicate edges", "(1,5)", "leak compartment 7", "no output"):
        assert piece in msg


def test_parameter_order_edges_then_leaks():
    ps = ParameterSpace(cycle(4, leaks=(2,)))
    assert ps.names == ("k_{2,1}", "k_{3,2}", "k_{4,3}", "k_{1,4}", "k_{0,2}")
    assert ps.index(VarId.leak(2)) == 4
    assert str(VarId.edge(4, 1)) == "k_{1,4}"


def test_compartmental_matrix_cycle4():
    m = cycle(4, outputs=(3,))
    ps = ParameterSpace(m)
    k21, k32, k43, k14 = ps.ring.gens()
    Z = ps.ring.zero()
    assert compartmental_matrix(m, ps) == [
        [-k21, Z, Z, k14],
        [k21, -k32, Z, Z],
        [Z, k32, -k43, Z],
        [Z, Z, k43, -k14],
    ]


def test_compartmental_matrix_single_leak():
    m = ModelSpec(1, (), (1,), (1,), (1,))
    ps = ParameterSpace(m)
    assert compartmental_matrix(m, ps) == [[-ps.leak(1)]]


@pytest.mark.parametrize("m", [cycle(5), catenary(4), mammillary(4), fin(5), wing(5)])
def test_columns_sum_to_zero_without_leaks(m):
    A = compartmental_matrix(m)
    for j in range(m.n):
        assert sum((A[i][j] for i in range(m.n)), A[0][0].ring.zero()).is_zero()


def test_column_sum_is_minus_leak():
    m = catenary(4, leaks=(1, 3))
    ps = ParameterSpace(m)
    A = compartmental_matrix(m, ps)
    for j in range(1, 5):
        total = sum((A[i][j - 1] for i in range(4)), ps.ring.zero())
        assert total == (-ps.leak(j) if j in m.leaks else ps.ring.zero())


def test_strong_connectivity():
    assert is_strongly_connected(cycle(5))
    assert is_strongly_connected(catenary(4))
    assert not is_strongly_connected(ModelSpec(3, ((1, 2), (2, 3)), (1,), (1,)))


@pytest.mark.parametrize("n", range(3, 8))
def test_fin_and_wing_orderings(n):
    assert is_inductive_ordering(fin(n), list(range(1, n + 1)))
    assert is_inductive_ordering(wing(n), [1] + list(range(n, 1, -1)))
    assert is_inductively_strongly_connected(fin(n))
    assert is_inductively_strongly_connected(wing(n))


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_not_inductively_strongly_connected(n):
    assert is_strongly_connected(cycle(n))
    assert not is_inductively_strongly_connected(cycle(n))


def test_found_ordering_is_valid():
    m = catenary(6)
    order = inductive_ordering(m)
    assert order[0] == 1 and is_inductive_ordering(m, order)


def test_ordering_search_limit():
    with pytest.raises(ModelError, match="limit exceeded"):
        inductive_ordering(catenary(5), limit=4)


def test_json_round_trip(tmp_path):
    m = wing(5, inputs=(1, 2), outputs=(3,), leaks=(4,))
    assert loads_model(dumps_model(m)) == m
    path = tmp_path / "m.json"
    save_model(m, path)
    assert load_model(path) == m


def test_json_optional_keys():
    m = loads_model('{"n": 2, "edges": [[1, 2], [2, 1]], "out": [2]}')
    assert m.inputs == () and m.leaks == ()


@pytest.mark.parametrize("text, fragment", [
    ('{"n": 2, "edges": [], "out": [1], "colour": 1}', "unknown keys"),
    ('{"n": 2, "edges": []}', "missing keys"),
    ('{"n": 2, "edges": [[1]], "out": [1]}', "not a [from, to] pair"),
    ('{"n": 2, "edges": [], "out": [true]}', "list of integers"),
    ('{"n": 2,\n "edges": [,]}', "line 2"),
])
def test_json_errors(text, fragment):
    with pytest.raises(ModelError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        loads_model(text)


@st.composite
def models(draw):
    n = draw(st.integers(1, 6))
    pairs = st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda e: e[0] != e[1])
    subset = st.sets(st.integers(1, n))
    edges = draw(st.sets(pairs, max_size=3 * n)) if n > 1 else set()
    outputs = draw(st.sets(st.integers(1, n), min_size=1))
    return ModelSpec(n, tuple(edges), tuple(draw(subset)), tuple(outputs), tuple(draw(subset)))


@settings(max_examples=200, derandomize=True, deadline=None)
@given(models())
def test_round_trip_and_column_sums_property(m):
    assert loads_model(dumps_model(m)) == m
    assert json.loads(dumps_model(m))["n"] == m.n
    ps = ParameterSpace(m)
    assert len(ps) == m.num_parameters
    A = compartmental_matrix(m, ps)
    for j in range(1, m.n + 1):
        total = sum((A[i][j - 1] for i in range(m.n)), ps.ring.zero())
        assert total == (-ps.leak(j) if j in m.leaks else ps.ring.zero())

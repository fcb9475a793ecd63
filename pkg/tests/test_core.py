import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uaforge.core import (
    AlgebraError,
    ArityError,
    Apply,
    FiniteAlgebra,
    NotClosedError,
    NotCongruenceError,
    Signature,
    SizeGuardError,
    UnassignedVariableError,
    UnknownSymbolError,
    Variable,
    algebra_from_dict,
    algebra_to_dict,
    all_subuniverses,
    direct_product,
    dumps_algebra,
    eval_term,
    is_closed_subset,
    load_algebra,
    loads_algebra,
    make_algebra,
    quotient,
    quotient_map,
    reduct,
    save_algebra,
    sg_closure,
    subalgebra,
    term_variables,
)
from uaforge.partitions import Partition

SIG = Signature((("f", 2), ("g", 1), ("c", 0)))


@st.composite
def small_algebras(draw, max_size=4):
    size = draw(st.integers(1, max_size))
    elem = st.integers(0, size - 1)
    tables = {
        "f": tuple(draw(st.lists(elem, min_size=size * size, max_size=size * size))),
        "g": tuple(draw(st.lists(elem, min_size=size, max_size=size))),
        "c": (draw(elem),),
    }
    return make_algebra("rand", SIG, size, tables)


def two_chain():
    sig = Signature((("meet", 2), ("one", 0)))
    return make_algebra(
        "c2", sig, 2, {"meet": (0, 0, 0, 1), "one": (1,)}, ("0", "1")
    )


def test_signature_basics():
    assert SIG.arity("f") == 2 and SIG.arity("c") == 0
    assert "g" in SIG and "h" not in SIG
    assert SIG.names() == ("f", "g", "c")
    assert SIG.constants() == ("c",)
    ext = SIG.extended((("h", 3),))
    assert ext.arity("h") == 3 and "f" in ext
    assert SIG.restricted(("g",)).names() == ("g",)
    with pytest.raises(UnknownSymbolError):
        SIG.arity("nope")
    with pytest.raises(AlgebraError):
        Signature((("f", 2), ("f", 1)))  # duplicate symbol
    with pytest.raises(AlgebraError):
        Signature((("f", -1),))


def test_algebra_validation():
    with pytest.raises(AlgebraError):
        make_algebra("bad", SIG, 2, {"f": (0,) * 3, "g": (0, 0), "c": (0,)})
    with pytest.raises(AlgebraError):
        make_algebra("bad", SIG, 2, {"f": (0,) * 4, "g": (0, 2), "c": (0,)})
    with pytest.raises(AlgebraError):
        make_algebra("bad", SIG, 2, {"f": (0,) * 4, "g": (0, 0), "c": (0,)},
                     element_names=("x",))
    with pytest.raises(AlgebraError):
        make_algebra("bad", SIG, 0, {"f": (), "g": (), "c": ()})


def test_op_and_names():
    alg = two_chain()
    assert alg.op("meet", 1, 0) == 0
    assert alg.const("one") == 1
    assert alg.element_name(1) == "1"
    assert alg.index_of("0") == 0
    with pytest.raises(AlgebraError):
        alg.index_of("z")
    with pytest.raises(ArityError):
        alg.op("meet", 0)
    with pytest.raises(UnknownSymbolError):
        alg.op("join", 0, 1)
    assert not alg.is_trivial


def test_eval_term():
    alg = two_chain()
    t = Apply("meet", (Variable(0), Apply("one", ())))
    assert term_variables(t) == frozenset({0})
    assert eval_term(alg, t, {0: 1}) == 1
    assert eval_term(alg, t, [0]) == 0
    with pytest.raises(UnassignedVariableError):
        eval_term(alg, t, {})
    with pytest.raises(UnassignedVariableError):
        eval_term(alg, t, [None])


@given(small_algebras())
@settings(max_examples=60)
def test_sg_closure_is_a_closure_operator(alg):
    base = sg_closure(alg)
    assert is_closed_subset(alg, base.elements)
    again = sg_closure(alg, base.elements)
    assert again.elements == base.elements  # idempotent
    bigger = sg_closure(alg, range(alg.size))
    assert set(base.elements) <= set(bigger.elements)


@given(small_algebras())
@settings(max_examples=30)
def test_all_subuniverses_matches_powerset_oracle(alg):
    brute = sorted(
        tuple(s)
        for r in range(alg.size + 1)
        for s in itertools.combinations(range(alg.size), r)
        if is_closed_subset(alg, s)
    )
    got = sorted(r.elements for r in all_subuniverses(alg))
    assert got == brute


def test_is_closed_subset_definition():
    alg = two_chain()
    assert is_closed_subset(alg, (1,))
    assert not is_closed_subset(alg, (0,))  # missing the constant
    assert is_closed_subset(alg, (0, 1))


def test_subalgebra_reindexes():
    sig = Signature((("g", 1),))
    alg = make_algebra("a", sig, 4, {"g": (0, 3, 1, 3)}, ("p", "q", "r", "s"))
    sub, embed = subalgebra(alg, (1, 3))
    assert embed == (1, 3)
    assert sub.size == 2
    assert sub.tables["g"] == (1, 1)  # g(q)=s, g(s)=s in local indices
    assert sub.element_names == ("q", "s")
    with pytest.raises(NotClosedError):
        subalgebra(alg, (2,))


def test_direct_product_componentwise():
    alg = two_chain()
    prod = direct_product([alg, alg])
    assert prod.size == 4
    # row-major: index = first_coord * 2 + second_coord
    for a in itertools.product(range(2), repeat=2):
        for b in itertools.product(range(2), repeat=2):
            want = alg.op("meet", a[0], b[0]) * 2 + alg.op("meet", a[1], b[1])
            assert prod.op("meet", a[0] * 2 + a[1], b[0] * 2 + b[1]) == want
    assert prod.element_name(1) == "(0,1)"
    empty = direct_product([], signature=alg.signature)
    assert empty.size == 1 and empty.tables["meet"] == (0,)
    with pytest.raises(AlgebraError):
        direct_product([])
    other = make_algebra("o", SIG, 1, {"f": (0,), "g": (0,), "c": (0,)})
    with pytest.raises(AlgebraError):
        direct_product([alg, other])


def test_quotient_by_identity_and_full():
    alg = two_chain()
    same = quotient(alg, Partition.identity(2))
    assert same.size == 2 and same.tables == alg.tables
    one = quotient(alg, Partition.full(2))
    assert one.size == 1 and one.is_trivial
    assert one.element_names == ("0|1",)
    assert quotient_map(alg, Partition.full(2)) == (0, 0)


def test_quotient_rejects_non_congruence():
    sig = Signature((("g", 1),))
    alg = make_algebra("a", sig, 3, {"g": (1, 2, 0)})
    with pytest.raises(NotCongruenceError) as exc:
        quotient(alg, Partition.from_pairs(3, [(0, 1)]))
    assert "g" in str(exc.value)


def test_quotient_map_is_compatible():
    sig = Signature((("g", 1),))
    alg = make_algebra("a", sig, 4, {"g": (1, 0, 3, 2)})
    theta = Partition.from_pairs(4, [(0, 2), (1, 3)])
    q = quotient(alg, theta)
    qmap = quotient_map(alg, theta)
    for x in range(4):
        assert qmap[alg.op("g", x)] == q.op("g", qmap[x])


def test_reduct():
    alg = two_chain()
    red = reduct(alg, ("meet",))
    assert red.signature.names() == ("meet",)
    assert red.tables == {"meet": alg.tables["meet"]}
    with pytest.raises(UnknownSymbolError):
        reduct(alg, ("join",))


def test_json_round_trip(tmp_path):
    alg = two_chain()
    text = dumps_algebra(alg)
    assert text == dumps_algebra(alg)  # byte-stable
    assert text.endswith("\n")
    back = loads_algebra(text)
    assert back == alg
    data = algebra_to_dict(alg)
    assert json.loads(text) == data
    assert algebra_from_dict(data) == alg
    path = tmp_path / "alg.json"
    save_algebra(alg, path)
    assert load_algebra(path) == alg


def test_json_schema_errors():
    with pytest.raises(AlgebraError):
        algebra_from_dict({"name": "x", "size": 2})
    with pytest.raises(AlgebraError):
        algebra_from_dict(
            {"name": "x", "size": 2,
             "operations": [{"symbol": "f", "arity": 1, "table": [0, 9]}]}
        )


def test_size_guard():
    sig = Signature((("c", 0),))
    big = FiniteAlgebra("big", sig, 30, {"c": (0,)}, None)
    with pytest.raises(SizeGuardError):
        all_subuniverses(big)

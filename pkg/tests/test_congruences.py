import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from uaforge import catalog
from uaforge.congruences import (
    congruence_lattice,
    is_congruence,
    is_fsi,
    is_si,
    is_simple,
    monolith,
    principal_congruence,
    quotient_is_fsi,
    quotient_is_si,
)
from uaforge.core import Signature, direct_product, make_algebra, quotient, subalgebra
from uaforge.partitions import Partition

SIG = Signature((("f", 2), ("g", 1)))


def all_partitions(n):
    """Every partition of {0..n-1}, via restricted-growth strings."""
    def grow(prefix, maxblock):
        if len(prefix) == n:
            yield Partition.from_pairs(
                n, [(i, j) for i in range(n) for j in range(i) if prefix[i] == prefix[j]]
            )
            return
        for b in range(maxblock + 2):
            yield from grow(prefix + [b], max(maxblock, b))
    yield from grow([0], 0)


def is_cong_brute(alg, part):
    """Compatibility straight from the definition: every componentwise-related
    pair of argument tuples lands in the same block."""
    n = alg.size
    for sym, arity in alg.signature.symbols:
        if arity == 0:
            continue
        for args1 in itertools.product(range(n), repeat=arity):
            for args2 in itertools.product(range(n), repeat=arity):
                if all(part.same(a, b) for a, b in zip(args1, args2)):
                    if not part.same(alg.op(sym, *args1), alg.op(sym, *args2)):
                        return False
    return True


@st.composite
def small_algebras(draw, max_size=4):
    size = draw(st.integers(2, max_size))
    elem = st.integers(0, size - 1)
    tables = {
        "f": tuple(draw(st.lists(elem, min_size=size * size, max_size=size * size))),
        "g": tuple(draw(st.lists(elem, min_size=size, max_size=size))),
    }
    return make_algebra("rand", SIG, size, tables)


@given(small_algebras(), st.data())
@settings(max_examples=60)
def test_is_congruence_matches_definition(alg, data):
    n = alg.size
    k = data.draw(st.integers(0, 3))
    pairs = [
        (data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1)))
        for _ in range(k)
    ]
    part = Partition.from_pairs(n, pairs)
    assert is_congruence(alg, part) == is_cong_brute(alg, part)


@given(small_algebras(), st.data())
@settings(max_examples=40)
def test_principal_congruence_is_least(alg, data):
    n = alg.size
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1))
    theta = principal_congruence(alg, a, b)
    assert theta.same(a, b)
    assert is_congruence(alg, theta)
    # least among all congruences containing the pair
    for part in all_partitions(n):
        if part.same(a, b) and is_congruence(alg, part):
            assert theta.leq(part)


def test_congruence_lattice_matches_brute_enumeration():
    for alg in (catalog.build("sec2.A-minus-a4"), catalog.build("sec2.A")):
        brute = sorted(
            (p.rep for p in all_partitions(alg.size) if is_congruence(alg, p))
        )
        lat = congruence_lattice(alg)
        assert sorted(c.rep for c in lat.congruences) == brute
        # ordering contract: coarser (fewer blocks) first, identity first overall
        blocks = [c.num_blocks for c in lat.congruences]
        assert lat.congruences[0] == Partition.identity(alg.size)
        assert blocks[1:] == sorted(blocks[1:], reverse=True)
        # leq matrix agrees with partition refinement
        for i, p in enumerate(lat.congruences):
            for j, q in enumerate(lat.congruences):
                assert lat.leq[i][j] == p.leq(q)


def count_filters(alg):
    """Nonempty, meet-closed, upward-closed subsets of a lattice reduct."""
    n = alg.size
    le = [[alg.op("meet", a, b) == a for b in range(n)] for a in range(n)]
    count = 0
    for mask in range(1, 2 ** n):
        s = [i for i in range(n) if mask >> i & 1]
        inside = set(s)
        meet_ok = all(alg.op("meet", a, b) in inside for a in s for b in s)
        up_ok = all(b in inside for a in s for b in range(n) if le[a][b])
        if meet_ok and up_ok:
            count += 1
    return count


def test_heyting_congruences_biject_with_filters():
    a3 = catalog.build("An?n=3")
    lat = congruence_lattice(a3)
    assert len(lat) == count_filters(a3) == 9


def test_sec2_lattices():
    a = catalog.build("sec2.A")
    lat = congruence_lattice(a)
    assert len(lat) == 2
    assert is_simple(a)
    assert monolith(lat) == Partition.full(8)

    am = catalog.build("sec2.A-minus-a4")
    lam = congruence_lattice(am)
    theta = catalog.build("sec2.theta")
    assert [c.num_blocks for c in lam.congruences] == [7, 6, 1]
    assert theta in list(lam)
    assert monolith(lam) == theta
    assert is_si(am) and is_fsi(am) and not is_simple(am)


def test_monolith_absent_in_product():
    a0 = catalog.build("An?n=0")
    prod = direct_product([a0, a0])
    lat = congruence_lattice(prod)
    assert monolith(lat) is None
    assert not is_si(prod)


def test_trivial_algebra_is_not_si_or_fsi():
    t = catalog.trivial_algebra(SIG.restricted(("g",)))
    one = make_algebra("one", Signature((("g", 1),)), 1, {"g": (0,)})
    for alg in (t, one):
        assert not is_simple(alg)
        assert not is_si(alg)
        assert not is_fsi(alg)


def test_quotient_interval_tests_match_direct_computation():
    # quotient_is_fsi/si on the interval above theta must agree with
    # classifying the quotient algebra itself
    am = catalog.build("sec2.A-minus-a4")
    lam = congruence_lattice(am)
    for theta in lam:
        q = quotient(am, theta)
        assert quotient_is_fsi(lam, theta) == is_fsi(q)
        assert quotient_is_si(lam, theta) == is_si(q)

    b3 = catalog.build("Bn?n=3")
    from uaforge.core import all_subuniverses

    for sub_res in all_subuniverses(b3):
        sub, _ = subalgebra(b3, sub_res.elements)
        lat = congruence_lattice(sub)
        for theta in lat:
            q = quotient(sub, theta)
            assert quotient_is_fsi(lat, theta) == is_fsi(q)
            assert quotient_is_si(lat, theta) == is_si(q)


def test_lattice_index_and_accessors():
    am = catalog.build("sec2.A-minus-a4")
    lat = congruence_lattice(am)
    assert lat.identity == Partition.identity(7)
    assert lat.full == Partition.full(7)
    assert lat.index(lat.identity) == 0
    theta = catalog.build("sec2.theta")
    assert lat.congruences[lat.index(theta)] == theta

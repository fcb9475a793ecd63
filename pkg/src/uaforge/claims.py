"""Claim registry: every finitely checkable statement behind the catalog.

Each claim binds an id to an executable check over the built-in algebras.
S2.* claims concern the eight-element chain family and are fixed-size; S3.*
claims concern the An/Bn family and take the atom count n as a parameter
(default 3, n = 4 behind the deep flag; the size guard rules out n >= 5).

run_claim/run_all produce ClaimResult records carrying pass/fail, a short
evidence string phrased with catalog element names, and wall time.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations, product

from . import catalog
from .analysis import (
    atom_permutation_automorphism,
    automorphisms,
    check_amalgamation,
    check_epic_subalgebras,
    embeddings,
    endomorphisms,
    hs_classify,
    is_chain,
    is_group_under_composition,
    is_homomorphism,
    is_isomorphic,
    lattice_leq,
)
from .congruences import (
    congruence_lattice,
    is_congruence,
    is_simple,
    is_si,
    monolith,
    principal_congruence,
)
from .core import AlgebraError, all_subuniverses, quotient, reduct, sg_closure, subalgebra
from .logic import (
    check_functional,
    eval_exists_decomposed,
    eval_formula,
    induced_partial_function,
    is_pp,
)
from .partitions import Partition


@dataclass
class ClaimResult:
    id: str
    statement: str
    status: str  # pass | fail | skipped
    evidence: str
    elapsed_ms: int

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "statement": self.statement,
            "status": self.status,
            "evidence": self.evidence,
            "elapsed_ms": self.elapsed_ms,
        }


class Workspace:
    """Shared cache for objects that several claims need (per run)."""

    def __init__(self):
        self._store: dict = {}

    def get(self, key, thunk):
        if key not in self._store:
            self._store[key] = thunk()
        return self._store[key]

    # the catalog memoizes the algebras themselves; these wrap the derived data
    def an(self, n):
        return catalog.build(f"An?n={n}")

    def bn(self, n):
        return catalog.build(f"Bn?n={n}")

    def phi(self, k, n):
        return catalog.build(f"phi?k={k}&n={n}")[0]

    def phi_cache(self, k, n) -> dict:
        return self.get(("phi-cache", k, n), dict)

    def fkn(self, k, n):
        return self.get(
            ("fkn", k, n),
            lambda: induced_partial_function(
                self.an(n), self.phi(k, n), 1, cache=self.phi_cache(k, n)
            ),
        )

    def phi_relation(self, k, n) -> frozenset:
        def scan():
            alg, f, cache = self.an(n), self.phi(k, n), self.phi_cache(k, n)
            return frozenset(
                (a, b)
                for a in range(alg.size)
                for b in range(alg.size)
                if eval_exists_decomposed(alg, f, {0: a, 1: b}, cache)
            )

        return self.get(("phi-rel", k, n), scan)

    def aut_bn(self, n):
        return self.get(("aut-bn", n), lambda: automorphisms(self.bn(n)))

    def end_bn(self, n):
        return self.get(("end-bn", n), lambda: endomorphisms(self.bn(n)))

    def bn_subalgebras(self, n):
        def build():
            big = self.bn(n)
            return [(s, subalgebra(big, s)) for s in all_subuniverses(big)]

        return self.get(("bn-subs", n), build)

    def bn_sub_reps(self, n):
        def build():
            reps = []
            for _s, (sub, _e) in self.bn_subalgebras(n):
                if not any(is_isomorphic(sub, r) for r in reps):
                    reps.append(sub)
            return reps

        return self.get(("bn-reps", n), build)

    def hs_an(self, n):
        return self.get(("hs-an", n), lambda: hs_classify(self.an(n)))

    def hs_bn(self, n):
        return self.get(("hs-bn", n), lambda: hs_classify(self.bn(n)))


_REGISTRY: dict[str, tuple[str, object]] = {}


def _claim(claim_id: str, statement: str):
    def wrap(fn):
        _REGISTRY[claim_id] = (statement, fn)
        return fn

    return wrap


def registered_ids() -> list[str]:
    return list(_REGISTRY)


def _names(alg, elems) -> str:
    return "{" + ",".join(alg.element_name(e) for e in elems) + "}"


# ---------------------------------------------------------------------------
# chain-family claims


@_claim("S2.SG-EMPTY", "constants of sec2.A generate exactly the universe minus a4")
def _sg_empty(ws, n):
    A = catalog.build("sec2.A")
    got = sg_closure(A).elements
    want = (0, 1, 2, 3, 5, 6, 7)
    return got == want, f"Sg(empty) = {_names(A, got)}"


@_claim("S2.SUBALGS", "sec2.A has exactly two subuniverses: itself and the one minus a4")
def _subalgs(ws, n):
    A = catalog.build("sec2.A")
    subs = [s.elements for s in all_subuniverses(A)]
    want = [(0, 1, 2, 3, 5, 6, 7), tuple(range(8))]
    return subs == want, f"{len(subs)} subuniverses, sizes {[len(s) for s in subs]}"


@_claim("S2.THETA-CONG", "gluing a6 with 1 is a congruence of sec2.A-minus-a4 but collapses sec2.A")
def _theta_cong(ws, n):
    A = catalog.build("sec2.A")
    Am = catalog.build("sec2.A-minus-a4")
    theta = catalog.build("sec2.theta")
    ok = (
        is_congruence(Am, theta)
        and principal_congruence(Am, 5, 6) == theta
        and theta.blocks() == ((0,), (1,), (2,), (3,), (4,), (5, 6))
        and principal_congruence(A, 6, 7) == Partition.full(8)
    )
    return ok, "Cg(a6,1) on sec2.A-minus-a4 glues only {a6,1}; on sec2.A it is the full relation"


@_claim("S2.SIMPLE-A", "sec2.A is simple")
def _simple_a(ws, n):
    A = catalog.build("sec2.A")
    lat = congruence_lattice(A)
    return is_simple(A, lat), f"|Con(sec2.A)| = {len(lat)}"


@_claim("S2.CON-A4", "nontrivial quotients of sec2.A-minus-a4 are itself and sec2.B only")
def _con_a4(ws, n):
    Am = catalog.build("sec2.A-minus-a4")
    B = catalog.build("sec2.B")
    lat = congruence_lattice(Am)
    if len(lat) != 3:
        return False, f"|Con| = {len(lat)}, expected 3"
    kinds = []
    for theta in lat:
        q = quotient(Am, theta)
        if q.is_trivial:
            kinds.append("trivial")
        elif is_isomorphic(q, Am):
            kinds.append("itself")
        elif is_isomorphic(q, B):
            kinds.append("sec2.B")
        else:
            return False, f"unexpected quotient of size {q.size}"
    return sorted(kinds) == ["itself", "sec2.B", "trivial"], (
        "quotients by the 3 congruences: " + ", ".join(kinds)
    )


@_claim("S2.CHAIN-SI", "sec2.A-minus-a4 is subdirectly irreducible with monolith gluing a6 and 1")
def _chain_si(ws, n):
    A = catalog.build("sec2.A")
    Am = catalog.build("sec2.A-minus-a4")
    lat = congruence_lattice(Am)
    theta = catalog.build("sec2.theta")
    ok = is_si(Am, lat) and monolith(lat) == theta and is_si(A)
    return ok, "monolith of sec2.A-minus-a4 = Cg(a6,1); sec2.A is simple hence SI"


@_claim("S2.SI-LIST", "the SI quotients of subalgebras of sec2.A are sec2.A, sec2.A-minus-a4, sec2.B")
def _si_list(ws, n):
    A = catalog.build("sec2.A")
    hs = hs_classify(A)
    reps = [hs.representatives[c] for c in hs.si_classes()]
    targets = [A, catalog.build("sec2.A-minus-a4"), catalog.build("sec2.B")]
    ok = len(reps) == 3 and all(
        sum(1 for r in reps if is_isomorphic(r, t)) == 1 for t in targets
    )
    return ok, f"{len(reps)} SI classes, sizes {sorted(r.size for r in reps)}"


@_claim("S2.PHI-FUNC", "the witness formula is pp and functional on sec2.A, sec2.A-minus-a4, sec2.B")
def _phi_func(ws, n):
    phi, _ = catalog.build("sec2.phi")
    algs = [catalog.build(c) for c in ("sec2.A", "sec2.A-minus-a4", "sec2.B")]
    ok = is_pp(phi) and check_functional(algs, phi, 1)
    return ok, "pp shape confirmed; at most one output per argument on all three algebras"


@_claim("S2.PHI-TABLE", "induced function: a3 at 0 and a1 elsewhere on sec2.A; on the subalgebra 0 has no output")
def _phi_table(ws, n):
    phi, _ = catalog.build("sec2.phi")
    A = catalog.build("sec2.A")
    Am = catalog.build("sec2.A-minus-a4")
    B = catalog.build("sec2.B")
    tA = induced_partial_function(A, phi, 1)
    tAm = induced_partial_function(Am, phi, 1)
    tB = induced_partial_function(B, phi, 1)
    okA = tA.is_total_on(A.size) and tA.value((0,)) == 3 and all(
        tA.value((a,)) == 1 for a in range(1, 8)
    )
    okAm = sorted(x for (x,) in tAm.domain) == list(range(1, 7)) and all(
        tAm.value((a,)) == 1 for a in range(1, 7)
    )
    okB = tB.is_total_on(B.size) and tB.value((0,)) == 5 and all(
        tB.value((a,)) == 1 for a in range(1, 6)
    )
    return okA and okAm and okB, (
        "sec2.A: f(0)=a3, f(a)=a1 otherwise; sec2.A-minus-a4: 0 outside the domain, "
        "value a1 elsewhere; sec2.B: f(0)=a6|1, value a1 otherwise"
    )


@_claim("S2.H-FAIL", "the implicit-operation quasi-identity holds in sec2.C but fails in its quotient")
def _h_fail(ws, n):
    phi, _ = catalog.build("sec2.phi")
    C = catalog.build("sec2.C")
    Cq = catalog.build("sec2.C-mod-theta")
    for alg in (C, Cq):
        if "gf" not in alg.signature:
            return False, "expansion operation missing"
    holds_in_C = all(
        not eval_formula(C, phi, {0: a, 1: b}) or C.op("gf", a) == b
        for a in range(C.size)
        for b in range(C.size)
    )
    failures = [
        (a, b)
        for a in range(Cq.size)
        for b in range(Cq.size)
        if eval_formula(Cq, phi, {0: a, 1: b}) and Cq.op("gf", a) != b
    ]
    ok = holds_in_C and failures == [(0, 5)] and Cq.op("gf", 0) == 3
    ev = (
        "holds at all 49 pairs of sec2.C; in the quotient gf(0)="
        f"{Cq.element_name(Cq.op('gf', 0))} but the formula relates 0 to "
        f"{Cq.element_name(5)}"
    )
    return ok, ev


# ---------------------------------------------------------------------------
# powerset-family claims


@_claim("S3.HEYTING", "the lattice reducts satisfy Heyting residuation")
def _heyting(ws, n):
    chain = catalog.heyting_reduct(catalog.build("sec2.A"))
    An = ws.an(n)
    checked = 0
    for alg in (chain, An):
        for a, b, c in product(range(alg.size), repeat=3):
            lhs = lattice_leq(alg, alg.op("meet", a, c), b)
            rhs = lattice_leq(alg, c, alg.op("imp", a, b))
            if lhs != rhs:
                return False, f"residuation fails at ({a},{b},{c}) in {alg.name}"
            checked += 1
    if not is_chain(chain):
        return False, "the sec2 reduct is not a chain"
    if not all(lattice_leq(chain, a, a + 1) for a in range(7)):
        return False, "chain order broken"
    return True, f"residuation at {checked} triples; sec2 reduct is the 8-chain"


@_claim("S3.EQ1-8", "the eight arithmetic facts of the powerset-with-top algebras hold")
def _eq18(ws, n):
    An = ws.an(n)
    size, zero, one = An.size, An.const("zero"), An.const("one")

    def neg(a):
        return An.op("imp", a, zero)

    e = zero
    for p in catalog.atoms_of(An):
        e = An.op("join", e, p)
    for a, b in product(range(size), repeat=2):
        if (An.op("join", a, b) == one) != (a == one or b == one):
            return False, f"(1) fails at ({a},{b})"
        if lattice_leq(An, a, b) != (An.op("imp", a, b) == one):
            return False, f"(7) fails at ({a},{b})"
        if lattice_leq(An, a, b) and not lattice_leq(An, neg(neg(a)), neg(neg(b))):
            return False, f"(8) fails at ({a},{b})"
        if (An.op("meet", neg(a), neg(b)) == one) != (a == zero and b == zero):
            return False, f"(6) fails at ({a},{b})"
    for a in range(size):
        if (a != zero and lattice_leq(An, a, e)) != (An.op("join", a, neg(a)) == e):
            return False, f"(2) fails at {a}"
        # (3) as displayed reads "a in {0,e,1}" but fails at a=0; the correct
        # right-to-left class is {e,1}, which is what the arguments rely on
        if (neg(neg(a)) == one) != (a in (e, one)):
            return False, f"(3) fails at {a}"
        if (a != e or a == zero) != (neg(neg(a)) == a):
            return False, f"(3b) fails at {a}"
        if (An.op("meet", neg(a), neg(a)) == one) != (a == zero):
            return False, f"(6) fails at {a}"
    # (4) and (5) quantify over subalgebras
    for s in all_subuniverses(An):
        sub, _ = subalgebra(An, s)
        ats = catalog.atoms_of(sub)
        top = sub.const("one")
        for a in range(sub.size):
            if a != top:
                join = sub.const("zero")
                for p in catalog.atoms_below(sub, a):
                    join = sub.op("join", join, p)
                if join != a:
                    return False, f"(4) fails at {sub.element_name(a)} in {_names(sub, s.elements)}"
            for b in ats:
                below_a = lattice_leq(sub, b, a)
                below_na = lattice_leq(sub, b, sub.op("imp", a, sub.const("zero")))
                if below_a == below_na:
                    return False, f"(5) fails at atom {sub.element_name(b)}"
    return True, (
        f"facts (1)-(8) verified on A{n} and, for the atom facts, on its "
        f"{len(all_subuniverses(An))} subalgebras; (3) holds in the corrected "
        "form: double negation is 1 exactly on {e,1}"
    )


@_claim("S3.PHI-CHAR", "the defining formulas relate a to exactly the value picked by its atom count")
def _phi_char(ws, n):
    An = ws.an(n)
    checked = 0
    for k in range(1, n):
        want = frozenset(
            (a, catalog.expected_phi_value(An, k, a)) for a in range(An.size)
        )
        got = ws.phi_relation(k, n)
        if got != want:
            diff = sorted(got ^ want)[:3]
            return False, f"k={k}: relation differs at {diff}"
        checked += An.size * An.size
    return True, (
        f"all {checked} pairs match for k=1..{n - 1}: output 1 when a is 0, e, 1 "
        f"or has at most k atoms, output e otherwise"
    )


@_claim("S3.FKN", "each defining formula induces a total function matching the atom-count table")
def _fkn(ws, n):
    An = ws.an(n)
    Bn = ws.bn(n)
    for k in range(1, n):
        t = ws.fkn(k, n)
        if not t.is_total_on(An.size):
            return False, f"k={k}: not total"
        for a in range(An.size):
            if t.value((a,)) != catalog.expected_phi_value(An, k, a):
                return False, f"k={k}: wrong value at {An.element_name(a)}"
            if Bn.op(f"lf{k}", a) != t.value((a,)):
                return False, f"k={k}: expansion table disagrees at {An.element_name(a)}"
    return True, f"lf1..lf{n - 1} total on A{n}; expansion tables agree"


@_claim("S3.FSI-AN", "the FSI quotients of subalgebras of An are A0..An, one class each")
def _fsi_an(ws, n):
    hs = ws.hs_an(n)
    reps = [hs.representatives[c] for c in hs.fsi_classes()]
    if len(reps) != n + 1:
        return False, f"{len(reps)} FSI classes, expected {n + 1}"
    for j in range(n + 1):
        target = catalog.build(f"An?n={j}")
        if sum(1 for r in reps if is_isomorphic(r, target)) != 1:
            return False, f"A{j} not matched exactly once"
    return True, f"FSI classes have sizes {sorted(r.size for r in reps)} = 2^j+1 for j=0..{n}"


@_claim("S3.CON-PRES", "every subalgebra of Bn has the same congruences as its Heyting reduct")
def _con_pres(ws, n):
    count = 0
    for _s, (sub, _e) in ws.bn_subalgebras(n):
        full = set(congruence_lattice(sub).congruences)
        red = set(congruence_lattice(catalog.heyting_reduct(sub)).congruences)
        if full != red:
            return False, f"congruences differ on {sub.name}"
        count += 1
    return True, f"lattices coincide on all {count} subalgebras"


@_claim("S3.FSI-BN", "the FSI quotients of subalgebras of Bn are exactly its subalgebras")
def _fsi_bn(ws, n):
    hs = ws.hs_bn(n)
    fsi_reps = [hs.representatives[c] for c in hs.fsi_classes()]
    sub_reps = ws.bn_sub_reps(n)
    if len(fsi_reps) != len(sub_reps):
        return False, f"{len(fsi_reps)} FSI classes vs {len(sub_reps)} subalgebra classes"
    ok = all(
        sum(1 for r in fsi_reps if is_isomorphic(r, t)) == 1 for t in sub_reps
    )
    return ok, f"{len(fsi_reps)} classes on both sides, sizes {sorted(r.size for r in sub_reps)}"


@_claim("S3.AUT-SIGMA", "every atom permutation induces an automorphism of An and Bn; there are n! in total")
def _aut_sigma(ws, n):
    An, Bn = ws.an(n), ws.bn(n)
    ats = catalog.atoms_of(An)
    maps_an, maps_bn = set(), set()
    for perm in permutations(ats):
        sigma = dict(zip(ats, perm))
        m1, ok1 = atom_permutation_automorphism(An, sigma)
        m2, ok2 = atom_permutation_automorphism(Bn, sigma)
        if not (ok1 and ok2):
            return False, f"permutation {sigma} did not induce an automorphism"
        maps_an.add(m1)
        maps_bn.add(m2)
    aut = ws.aut_bn(n)
    ok = (
        len(maps_an) == len(maps_bn) == len(aut) == len(automorphisms(An))
        and maps_bn == set(aut.maps)
        and is_group_under_composition(aut.maps)
    )
    return ok, f"{len(maps_bn)} atom permutations = the whole automorphism group, closed under composition"


@_claim("S3.AUT-FIX", "any element outside a subalgebra (except e) is moved by an automorphism fixing the subalgebra")
def _aut_fix(ws, n):
    Bn = ws.bn(n)
    aut = ws.aut_bn(n)
    e = Bn.index_of("e")
    checked = 0
    for s, (_sub, _e) in ws.bn_subalgebras(n):
        inside = set(s.elements)
        for b in range(Bn.size):
            if b in inside or b == e:
                continue
            if not any(
                all(h[a] == a for a in inside) and h[b] != b for h in aut
            ):
                return False, f"no automorphism fixes {_names(Bn, s.elements)} and moves {Bn.element_name(b)}"
            checked += 1
    return True, f"{checked} (subalgebra, element) instances witnessed"


@_claim("S3.AUT-RIGID", "any two embeddings of a subalgebra into Bn differ by an automorphism of Bn")
def _aut_rigid(ws, n):
    Bn = ws.bn(n)
    aut = ws.aut_bn(n)
    pairs = 0
    for _s, (sub, _e) in ws.bn_subalgebras(n):
        embs = embeddings(sub, Bn)
        for g in embs:
            for h in embs:
                if not any(
                    all(g[x] == i[h[x]] for x in range(sub.size)) for i in aut
                ):
                    return False, f"embeddings of {sub.name} not related by any automorphism"
                pairs += 1
    return True, f"{pairs} embedding pairs rigid"


@_claim("S3.AMALG", "every span of embeddings among the subalgebra classes of Bn (plus trivial) amalgamates")
def _amalg(ws, n):
    members = list(ws.bn_sub_reps(n)) + [catalog.trivial_algebra(ws.bn(n).signature)]
    ok, reports = check_amalgamation(members)
    return ok, f"{len(reports)} spans amalgamated inside the member list"


@_claim("S3.EPIC", "no proper subalgebra of a subalgebra of Bn is epic: an endomorphism pins it and moves the rest")
def _epic(ws, n):
    ok, witnesses = check_epic_subalgebras(ws.bn(n))
    return ok, f"{len(witnesses)} proper inclusions separated by endomorphism pairs"


@_claim("S3.NONEQ", "the subalgebra generated by an atom breaks equational axiomatizability of the expansion")
def _noneq(ws, n):
    Bn = ws.bn(n)
    atom = catalog.atoms_of(Bn)[0]
    sg = sg_closure(Bn, [atom])
    C, embed = subalgebra(Bn, sg)
    zero, one = C.const("zero"), C.const("one")
    a = list(embed).index(atom)
    na = C.op("imp", a, zero)
    e = C.index_of("e")
    if set(range(C.size)) != {zero, a, na, e, one}:
        return False, f"generated universe is {_names(Bn, sg.elements)}"
    if C.op("lf1", a) != one or C.op("lf1", na) != e:
        return False, "lf1 values differ from the expected 1 and e"
    swap = list(range(C.size))
    swap[a], swap[na] = na, a
    CH = catalog.heyting_reduct(C)
    ok = (
        is_homomorphism(CH, CH, swap)
        and not is_homomorphism(C, C, swap)
        and is_isomorphic(CH, catalog.build("An?n=2"))
    )
    return ok, (
        f"Sg(atom) = {_names(Bn, sg.elements)}; lf1(atom)=1, lf1(complement)=e; "
        "swapping them is a reduct automorphism but no expansion homomorphism"
    )


# ---------------------------------------------------------------------------
# running


def _parse_claim_id(claim_id: str, default_n: int) -> tuple[str, int]:
    base, _, query = claim_id.partition("?")
    n = default_n
    if query:
        for piece in query.split("&"):
            key, _, val = piece.partition("=")
            if key != "n":
                raise AlgebraError(f"unknown claim parameter {key!r}")
            try:
                n = int(val)
            except ValueError:
                raise AlgebraError(f"claim parameter n needs an integer, got {val!r}") from None
    return base, n


def run_claim(claim_id: str, n: int = 3, workspace: Workspace | None = None) -> ClaimResult:
    base, n = _parse_claim_id(claim_id, n)
    if base not in _REGISTRY:
        raise AlgebraError(f"unknown claim id {claim_id!r}")
    statement, fn = _REGISTRY[base]
    ws = workspace if workspace is not None else Workspace()
    start = time.perf_counter()
    try:
        passed, evidence = fn(ws, n)
        status = "pass" if passed else "fail"
    except AlgebraError as exc:
        status, evidence = "fail", f"error: {exc}"
    elapsed = int((time.perf_counter() - start) * 1000)
    return ClaimResult(base, statement, status, evidence, elapsed)


def run_all(prefix: str | None = None, n: int = 3, workspace: Workspace | None = None) -> list[ClaimResult]:
    ws = workspace if workspace is not None else Workspace()
    out = []
    for claim_id in _REGISTRY:
        if prefix and not claim_id.startswith(prefix):
            continue
        out.append(run_claim(claim_id, n=n, workspace=ws))
    return out


def report_dict(results) -> dict:
    return {
        "claims": [r.to_dict() for r in results],
        "summary": {
            "pass": sum(1 for r in results if r.status == "pass"),
            "fail": sum(1 for r in results if r.status == "fail"),
        },
    }

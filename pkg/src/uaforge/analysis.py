"""Homomorphisms, isomorphism, HS classification, amalgamation.

The hom search binds images element by element with full constraint
propagation: every time an element's image is fixed, all operation
applications among currently-mapped elements are propagated, which forces the
images of everything the mapped set generates.  Branching only happens on a
greedily chosen generating set, so e.g. automorphisms of the powerset-style
algebras branch only over atom images.  Every map that survives the search is
re-checked against the full tables independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .congruences import (
    CongruenceLattice,
    congruence_lattice,
    quotient_is_fsi,
    quotient_is_si,
)
from .core import (
    AlgebraError,
    FiniteAlgebra,
    SIZE_GUARD,
    SizeGuardError,
    all_subuniverses,
    quotient,
    subalgebra,
)
from .partitions import Partition


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, mapping) -> bool:
    """Full-table commutation check; mapping is indexable by A's elements."""
    if A.signature != B.signature:
        return False
    if len(mapping) != A.size:
        return False
    for sym, arity in A.signature.symbols:
        for args in product(range(A.size), repeat=arity):
            if mapping[A.op(sym, *args)] != B.op(sym, *(mapping[a] for a in args)):
                return False
    return True


@dataclass(frozen=True)
class HomSet:
    source: str
    target: str
    maps: tuple[tuple[int, ...], ...]
    kind: str  # all | injective | bijective

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)


def _guard(*algs):
    for a in algs:
        if a.size > SIZE_GUARD:
            raise SizeGuardError(
                f"universe of size {a.size} exceeds the enumeration guard {SIZE_GUARD}"
            )


def homs(A: FiniteAlgebra, B: FiniteAlgebra, kind: str = "all", first_only=False) -> HomSet:
    """All homomorphisms A -> B, in deterministic order.

    kind restricts to injective or bijective maps (pruned during search, not
    post-filtered).
    """
    if kind not in ("all", "injective", "bijective"):
        raise AlgebraError(f"unknown hom kind {kind!r}")
    _guard(A, B)
    if A.signature != B.signature:
        raise AlgebraError("homomorphisms need a common signature")
    injective = kind in ("injective", "bijective")
    out: list[tuple[int, ...]] = []
    if (injective and A.size > B.size) or (kind == "bijective" and A.size != B.size):
        return HomSet(A.name, B.name, (), kind)

    nonconst = [(sym, ar) for sym, ar in A.signature.symbols if ar > 0]

    def propagate(img, queue) -> bool:
        # force images of everything the mapped set generates; fail on clash
        while queue:
            e = queue.pop()
            mapped = [x for x in range(A.size) if img[x] is not None]
            for sym, ar in nonconst:
                for args in product(mapped, repeat=ar):
                    if e not in args:
                        continue
                    r = A.op(sym, *args)
                    rv = B.op(sym, *(img[a] for a in args))
                    if img[r] is None:
                        if injective and any(
                            img[x] == rv for x in mapped if x != r
                        ):
                            return False
                        img[r] = rv
                        queue.append(r)
                    elif img[r] != rv:
                        return False
        return True

    def search(img):
        if first_only and out:
            return
        try:
            e = img.index(None)
        except ValueError:
            if is_homomorphism(A, B, img):
                out.append(tuple(img))
            return
        used = {v for v in img if v is not None}
        for v in range(B.size):
            if injective and v in used:
                continue
            img2 = list(img)
            img2[e] = v
            if propagate(img2, [e]):
                search(img2)

    img0: list = [None] * A.size
    queue0 = []
    ok = True
    for sym in A.signature.constants():
        e, v = A.tables[sym][0], B.tables[sym][0]
        if img0[e] is None:
            if injective and any(
                img0[x] == v for x in range(A.size) if img0[x] is not None and x != e
            ):
                ok = False
                break
            img0[e] = v
            queue0.append(e)
        elif img0[e] != v:
            ok = False
            break
    if ok and propagate(img0, queue0):
        search(img0)
    return HomSet(A.name, B.name, tuple(out), kind)


def endomorphisms(A: FiniteAlgebra) -> HomSet:
    return homs(A, A, "all")


def automorphisms(A: FiniteAlgebra) -> HomSet:
    return homs(A, A, "bijective")


def embeddings(A: FiniteAlgebra, B: FiniteAlgebra) -> HomSet:
    return homs(A, B, "injective")


def compose(f, g) -> tuple[int, ...]:
    """(f o g)(x) = f(g(x))."""
    return tuple(f[g[x]] for x in range(len(g)))


def inverse(f) -> tuple[int, ...]:
    inv = [0] * len(f)
    for x, v in enumerate(f):
        inv[v] = x
    return tuple(inv)


def is_group_under_composition(maps) -> bool:
    """Closure, identity, inverses for a finite set of bijections."""
    pool = {tuple(m) for m in maps}
    n = len(next(iter(pool))) if pool else 0
    if tuple(range(n)) not in pool:
        return False
    for f in pool:
        if tuple(inverse(f)) not in pool:
            return False
        for g in pool:
            if compose(f, g) not in pool:
                return False
    return True


# ---------------------------------------------------------------------------
# isomorphism


def _element_profile(alg: FiniteAlgebra, x: int):
    prof = []
    for sym, arity in alg.signature.symbols:
        table = alg.tables[sym]
        if arity == 0:
            prof.append(table[0] == x)
        elif arity == 1:
            prof.append((table[x] == x, sum(1 for v in table if v == x)))
        elif arity == 2:
            prof.append(
                (alg.op(sym, x, x) == x, sum(1 for v in table if v == x))
            )
        else:
            prof.append(sum(1 for v in table if v == x))
    return tuple(prof)


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra, witness=False):
    """Isomorphism test; with witness=True returns (bool, map or None)."""
    result: tuple[int, ...] | None = None
    if A.size == B.size and A.signature == B.signature:
        profs_a = sorted(_element_profile(A, x) for x in range(A.size))
        profs_b = sorted(_element_profile(B, x) for x in range(B.size))
        if profs_a == profs_b:
            found = homs(A, B, "bijective", first_only=True)
            if found.maps:
                result = found.maps[0]
    if witness:
        return (result is not None, result)
    return result is not None


# ---------------------------------------------------------------------------
# HS classification


@dataclass(frozen=True)
class HSEntry:
    subuniverse: tuple[int, ...]
    congruence: Partition
    size: int
    fsi: bool
    si: bool
    iso_class: int


@dataclass(frozen=True)
class HSClassification:
    algebra: str
    entries: tuple[HSEntry, ...]
    representatives: tuple[FiniteAlgebra, ...]

    def fsi_classes(self) -> list[int]:
        return sorted({e.iso_class for e in self.entries if e.fsi})

    def si_classes(self) -> list[int]:
        return sorted({e.iso_class for e in self.entries if e.si})


def hs_classify(A: FiniteAlgebra) -> HSClassification:
    """Classify every quotient of every subalgebra of A.

    FSI/SI status is decided inside the subalgebra's congruence lattice: the
    congruences of a quotient sub/theta correspond to the lattice interval
    above theta, so no quotient lattices are recomputed.
    """
    _guard(A)
    entries: list[HSEntry] = []
    reps: list[FiniteAlgebra] = []
    for s in all_subuniverses(A):
        sub, _embed = subalgebra(A, s)
        lat = congruence_lattice(sub)
        for theta in lat:
            q = quotient(sub, theta)
            cls = None
            for i, rep in enumerate(reps):
                if is_isomorphic(q, rep):
                    cls = i
                    break
            if cls is None:
                reps.append(q)
                cls = len(reps) - 1
            entries.append(
                HSEntry(
                    subuniverse=s.elements,
                    congruence=theta,
                    size=q.size,
                    fsi=quotient_is_fsi(lat, theta),
                    si=quotient_is_si(lat, theta),
                    iso_class=cls,
                )
            )
    return HSClassification(A.name, tuple(entries), tuple(reps))


# ---------------------------------------------------------------------------
# amalgamation


@dataclass(frozen=True)
class Span:
    apex: str
    left: str
    right: str
    f: tuple[int, ...]
    g: tuple[int, ...]


@dataclass(frozen=True)
class Amalgam:
    target: str
    p: tuple[int, ...]
    q: tuple[int, ...]


@dataclass(frozen=True)
class SpanReport:
    span: Span
    amalgam: Amalgam | None

    @property
    def ok(self) -> bool:
        return self.amalgam is not None


def check_amalgamation(members, targets=None) -> tuple[bool, list[SpanReport]]:
    """Try to amalgamate every span of embeddings among the given algebras.

    For each span f: A -> B, g: A -> C the search looks for a target D and
    embeddings p: B -> D, q: C -> D with p o f = q o g.  Targets default to
    the members themselves.
    """
    members = list(members)
    targets = list(targets) if targets is not None else members
    emb_cache: dict[tuple[int, int], HomSet] = {}

    def emb(X, Y):
        key = (id(X), id(Y))
        if key not in emb_cache:
            emb_cache[key] = embeddings(X, Y)
        return emb_cache[key]

    reports: list[SpanReport] = []
    all_ok = True
    for apex in members:
        for left in members:
            for f in emb(apex, left):
                for right in members:
                    for g in emb(apex, right):
                        span = Span(apex.name, left.name, right.name, f, g)
                        amalgam = None
                        for target in targets:
                            for p in emb(left, target):
                                for q in emb(right, target):
                                    if all(
                                        p[f[a]] == q[g[a]] for a in range(apex.size)
                                    ):
                                        amalgam = Amalgam(target.name, p, q)
                                        break
                                if amalgam:
                                    break
                            if amalgam:
                                break
                        if amalgam is None:
                            all_ok = False
                        reports.append(SpanReport(span, amalgam))
    return all_ok, reports


# ---------------------------------------------------------------------------
# epic subalgebras


@dataclass(frozen=True)
class EpicWitness:
    subalgebra: tuple[int, ...]  # C, as elements of the big algebra
    inner: tuple[int, ...]  # A, proper subuniverse of C
    endo: tuple[int, ...] | None  # fixes A pointwise, moves some element of C
    moved: int | None

    @property
    def ok(self) -> bool:
        return self.endo is not None


def check_epic_subalgebras(big: FiniteAlgebra) -> tuple[bool, list[EpicWitness]]:
    """No proper subalgebra is epic: two endomorphisms agree on it, differ beyond.

    For every proper subuniverse A of every subalgebra C of big, find an
    endomorphism of big that is the identity on A but moves some element of
    C - A (the second endomorphism of the pair is the identity map).
    """
    _guard(big)
    ends = endomorphisms(big)
    witnesses: list[EpicWitness] = []
    all_ok = True
    for s in all_subuniverses(big):
        sub, embed = subalgebra(big, s)
        for t in all_subuniverses(sub):
            inner = tuple(embed[i] for i in t.elements)
            if len(inner) == len(s.elements):
                continue  # not proper
            found = None
            moved = None
            for h in ends:
                if all(h[a] == a for a in inner):
                    movers = [b for b in s.elements if h[b] != b]
                    if movers:
                        found, moved = h, movers[0]
                        break
            if found is None:
                all_ok = False
            witnesses.append(EpicWitness(s.elements, inner, found, moved))
    return all_ok, witnesses


def serialize_reports(reports) -> list[dict]:
    """Report rows as JSON objects {check, instance, witness?, status}."""
    out = []
    for r in reports:
        if isinstance(r, SpanReport):
            row = {
                "check": "amalgamation",
                "instance": {
                    "apex": r.span.apex,
                    "left": r.span.left,
                    "right": r.span.right,
                    "f": list(r.span.f),
                    "g": list(r.span.g),
                },
            }
            if r.amalgam is not None:
                row["witness"] = {
                    "target": r.amalgam.target,
                    "p": list(r.amalgam.p),
                    "q": list(r.amalgam.q),
                }
        elif isinstance(r, EpicWitness):
            row = {
                "check": "epic-subalgebra",
                "instance": {
                    "subalgebra": list(r.subalgebra),
                    "inner": list(r.inner),
                },
            }
            if r.endo is not None:
                row["witness"] = {"endo": list(r.endo), "moved": r.moved}
        else:
            raise AlgebraError(f"no JSON report form for {type(r).__name__}")
        row["status"] = "pass" if r.ok else "fail"
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# order helpers and atom permutations


def lattice_leq(alg: FiniteAlgebra, a: int, b: int) -> bool:
    return alg.op("meet", a, b) == a


def is_chain(alg: FiniteAlgebra) -> bool:
    return all(
        lattice_leq(alg, a, b) or lattice_leq(alg, b, a)
        for a in range(alg.size)
        for b in range(alg.size)
    )


def second_largest(alg: FiniteAlgebra) -> int | None:
    """The unique maximum of the order with the top removed, if one exists."""
    top = alg.const("one")
    rest = [a for a in range(alg.size) if a != top]
    maxima = [a for a in rest if all(not lattice_leq(alg, a, b) for b in rest if b != a)]
    if len(maxima) == 1:
        return maxima[0]
    return None


def atom_permutation_automorphism(alg: FiniteAlgebra, sigma) -> tuple[tuple[int, ...], bool]:
    """Map induced by a permutation of the atoms, and whether it verified.

    sigma maps atom -> atom (a dict over the atoms).  Every element except
    the top is sent to the join of the images of the atoms below it; the top
    is fixed.  Returns (map, ok) where ok reports the independent
    automorphism check rather than asserting it.
    """
    from .catalog import atoms_below  # local import to avoid a module cycle

    top = alg.const("one")
    zero = alg.const("zero")
    out = []
    for a in range(alg.size):
        if a == top:
            out.append(top)
            continue
        img = zero
        for p in atoms_below(alg, a):
            img = alg.op("join", img, sigma[p])
        out.append(img)
    mapping = tuple(out)
    ok = (
        sorted(mapping) == list(range(alg.size))
        and is_homomorphism(alg, alg, mapping)
    )
    return mapping, ok

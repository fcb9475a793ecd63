"""Finite algebras as dense operation tables.

An algebra lives on the universe {0..size-1}.  Each operation of arity r is a
flat row-major tuple of length size**r: the entry for arguments (x1,..,xr)
sits at index x1*size**(r-1) + ... + xr.  Everything downstream (closure,
quotients, products, homomorphism search) works on these tables directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .partitions import Partition

# enumeration guard: routines that walk the subset/endomorphism search space
# refuse universes larger than this
SIZE_GUARD = 24


class AlgebraError(ValueError):
    pass


class UnknownSymbolError(AlgebraError):
    pass


class ArityError(AlgebraError):
    pass


class SizeGuardError(AlgebraError):
    pass


class NotClosedError(AlgebraError):
    pass


class NotCongruenceError(AlgebraError):
    pass


class UnassignedVariableError(AlgebraError):
    pass


@dataclass(frozen=True)
class Signature:
    """Ordered list of (symbol, arity) pairs with unique symbols."""

    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        seen = set()
        for name, arity in self.symbols:
            if name in seen:
                raise AlgebraError(f"duplicate symbol {name!r}")
            if arity < 0:
                raise AlgebraError(f"negative arity for {name!r}")
            seen.add(name)

    def arity(self, name: str) -> int:
        for sym, arity in self.symbols:
            if sym == name:
                return arity
        raise UnknownSymbolError(f"unknown operation symbol {name!r}")

    def __contains__(self, name: str) -> bool:
        return any(sym == name for sym, _ in self.symbols)

    def names(self) -> tuple[str, ...]:
        return tuple(sym for sym, _ in self.symbols)

    def constants(self) -> tuple[str, ...]:
        return tuple(sym for sym, arity in self.symbols if arity == 0)

    def extended(self, extra: tuple[tuple[str, int], ...]) -> "Signature":
        return Signature(self.symbols + tuple(extra))

    def restricted(self, names) -> "Signature":
        keep = set(names)
        return Signature(tuple(p for p in self.symbols if p[0] in keep))


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Variable:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise AlgebraError("variable index must be non-negative")


@dataclass(frozen=True)
class Apply:
    symbol: str
    args: tuple = ()


Term = Variable | Apply


def term_variables(t: Term) -> frozenset[int]:
    if isinstance(t, Variable):
        return frozenset((t.index,))
    out: frozenset[int] = frozenset()
    for a in t.args:
        out |= term_variables(a)
    return out


# ---------------------------------------------------------------------------
# algebras


@dataclass(frozen=True, eq=True)
class FiniteAlgebra:
    name: str
    signature: Signature
    size: int
    tables: dict[str, tuple[int, ...]]
    element_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise AlgebraError("universe must be non-empty")
        names = set(self.signature.names())
        if set(self.tables) != names:
            raise AlgebraError(
                f"tables {sorted(self.tables)} do not match signature {sorted(names)}"
            )
        for sym, arity in self.signature.symbols:
            table = self.tables[sym]
            if len(table) != self.size**arity:
                raise AlgebraError(
                    f"table for {sym!r} has length {len(table)}, expected {self.size ** arity}"
                )
            for v in table:
                if not 0 <= v < self.size:
                    raise AlgebraError(f"table entry {v} for {sym!r} out of range")
        if self.element_names is not None and len(self.element_names) != self.size:
            raise AlgebraError("element_names length does not match size")

    # cached numpy copies of the tables, used by the vectorized evaluator
    @cached_property
    def np_tables(self) -> dict[str, np.ndarray]:
        return {sym: np.asarray(tab, dtype=np.int64) for sym, tab in self.tables.items()}

    def op(self, symbol: str, *args: int) -> int:
        arity = self.signature.arity(symbol)
        if len(args) != arity:
            raise ArityError(f"{symbol!r} expects {arity} arguments, got {len(args)}")
        k = 0
        for a in args:
            k = k * self.size + a
        return self.tables[symbol][k]

    def const(self, symbol: str) -> int:
        return self.op(symbol)

    def element_name(self, i: int) -> str:
        if self.element_names is not None:
            return self.element_names[i]
        return str(i)

    def index_of(self, name: str) -> int:
        if self.element_names is None:
            raise AlgebraError(f"algebra {self.name!r} has no element names")
        try:
            return self.element_names.index(name)
        except ValueError:
            raise AlgebraError(f"no element named {name!r} in {self.name!r}") from None

    @property
    def is_trivial(self) -> bool:
        return self.size == 1


def make_algebra(name, signature, size, tables, element_names=None) -> FiniteAlgebra:
    """Normalize table containers to tuples and build the algebra."""
    tabs = {sym: tuple(tab) for sym, tab in tables.items()}
    names = tuple(element_names) if element_names is not None else None
    return FiniteAlgebra(name, signature, size, tabs, names)


def eval_term(alg: FiniteAlgebra, t: Term, env) -> int:
    """Evaluate a term under env (mapping or sequence from variable index to element)."""
    if isinstance(t, Variable):
        try:
            v = env[t.index]
        except (KeyError, IndexError):
            raise UnassignedVariableError(f"variable v{t.index} unassigned") from None
        if v is None:
            raise UnassignedVariableError(f"variable v{t.index} unassigned")
        return v
    arity = alg.signature.arity(t.symbol)
    if len(t.args) != arity:
        raise ArityError(f"{t.symbol!r} expects {arity} arguments, got {len(t.args)}")
    k = 0
    for a in t.args:
        k = k * alg.size + eval_term(alg, a, env)
    return alg.tables[t.symbol][k]


# ---------------------------------------------------------------------------
# subuniverses


@dataclass(frozen=True)
class SubuniverseResult:
    elements: tuple[int, ...]
    closed: bool = True


def sg_closure(alg: FiniteAlgebra, generators=()) -> SubuniverseResult:
    """Subuniverse generated by the given elements (constants always included)."""
    size = alg.size
    member = [False] * size
    for g in generators:
        if not 0 <= g < size:
            raise AlgebraError(f"generator {g} out of range for size {size}")
        member[g] = True
    for sym in alg.signature.constants():
        member[alg.tables[sym][0]] = True
    # iterate to a fixpoint; universes are small so the rescan is cheap
    changed = True
    while changed:
        changed = False
        current = [i for i in range(size) if member[i]]
        for sym, arity in alg.signature.symbols:
            if arity == 0:
                continue
            table = alg.tables[sym]
            for args in product(current, repeat=arity):
                k = 0
                for a in args:
                    k = k * size + a
                v = table[k]
                if not member[v]:
                    member[v] = True
                    changed = True
    return SubuniverseResult(tuple(i for i in range(size) if member[i]))


def is_closed_subset(alg: FiniteAlgebra, elements) -> bool:
    elems = sorted(set(elements))
    inside = set(elems)
    for sym in alg.signature.constants():
        if alg.tables[sym][0] not in inside:
            return False
    for sym, arity in alg.signature.symbols:
        if arity == 0:
            continue
        table = alg.tables[sym]
        size = alg.size
        for args in product(elems, repeat=arity):
            k = 0
            for a in args:
                k = k * size + a
            if table[k] not in inside:
                return False
    return True


def subalgebra(alg: FiniteAlgebra, elements) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Induced algebra on a closed subset.

    Returns (sub, embed) where embed[i] is the parent index of the i-th
    element of the subalgebra; the subuniverse is re-indexed in ascending
    parent order.
    """
    if isinstance(elements, SubuniverseResult):
        elems = list(elements.elements)
    else:
        elems = sorted(set(elements))
    if not is_closed_subset(alg, elems):
        raise NotClosedError(f"{elems} is not a subuniverse of {alg.name!r}")
    old_to_new = {e: i for i, e in enumerate(elems)}
    k = len(elems)
    tables = {}
    for sym, arity in alg.signature.symbols:
        table = []
        for args in product(elems, repeat=arity):
            table.append(old_to_new[alg.op(sym, *args)])
        tables[sym] = tuple(table)
    names = None
    if alg.element_names is not None:
        names = tuple(alg.element_names[e] for e in elems)
    sub = FiniteAlgebra(
        f"{alg.name}.sub({','.join(map(str, elems))})",
        alg.signature,
        k,
        tables,
        names,
    )
    return sub, tuple(elems)


def all_subuniverses(alg: FiniteAlgebra) -> list[SubuniverseResult]:
    """Every subuniverse, found by closing one-point extensions of Sg(empty).

    Any subuniverse T contains Sg(empty); from a known S properly inside T,
    closing S + {x} for x in T-S stays inside T and grows, so induction on
    size reaches T.  Results are sorted by (size, elements).
    """
    if alg.size > SIZE_GUARD:
        raise SizeGuardError(
            f"universe of size {alg.size} exceeds the enumeration guard {SIZE_GUARD}"
        )
    base = frozenset(sg_closure(alg).elements)
    known = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for s in frontier:
            for x in range(alg.size):
                if x in s:
                    continue
                bigger = frozenset(sg_closure(alg, sorted(s | {x})).elements)
                if bigger not in known:
                    known.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    ordered = sorted(known, key=lambda s: (len(s), sorted(s)))
    return [SubuniverseResult(tuple(sorted(s))) for s in ordered]


# ---------------------------------------------------------------------------
# products and quotients


def direct_product(algs, signature: Signature | None = None, name=None) -> FiniteAlgebra:
    """Direct product with row-major element indexing over the factors.

    The empty product needs an explicit signature and is the one-element
    algebra over it.
    """
    algs = list(algs)
    if not algs:
        if signature is None:
            raise AlgebraError("empty product needs an explicit signature")
        tables = {sym: (0,) * (1**arity) for sym, arity in signature.symbols}
        return FiniteAlgebra(name or "prod()", signature, 1, tables, ("()",))
    sig = algs[0].signature
    for a in algs[1:]:
        if a.signature != sig:
            raise AlgebraError("product factors must share a signature")
    if signature is not None and signature != sig:
        raise AlgebraError("explicit signature disagrees with the factors")
    sizes = [a.size for a in algs]
    total = 1
    for s in sizes:
        total *= s
        if total > 10**6:
            raise SizeGuardError("product universe too large")

    def decode(idx):
        coords = []
        for s in reversed(sizes):
            coords.append(idx % s)
            idx //= s
        return tuple(reversed(coords))

    def encode(coords):
        idx = 0
        for c, s in zip(coords, sizes):
            idx = idx * s + c
        return idx

    tables = {}
    for sym, arity in sig.symbols:
        table = []
        for args in product(range(total), repeat=arity):
            arg_coords = [decode(a) for a in args]
            res = tuple(
                algs[f].op(sym, *(ac[f] for ac in arg_coords)) for f in range(len(algs))
            )
            table.append(encode(res))
        tables[sym] = tuple(table)
    enames = None
    if all(a.element_names is not None for a in algs):
        enames = tuple(
            "(" + ",".join(algs[f].element_name(decode(i)[f]) for f in range(len(algs))) + ")"
            for i in range(total)
        )
    pname = name or "x".join(a.name for a in algs)
    return FiniteAlgebra(pname, sig, total, tables, enames)


def quotient(alg: FiniteAlgebra, part: Partition, name=None) -> FiniteAlgebra:
    """Quotient by a congruence; blocks are ordered by least representative.

    Raises NotCongruenceError when some operation is not well defined on the
    blocks, reporting the offending operation.
    """
    if part.size != alg.size:
        raise AlgebraError("partition size does not match the algebra")
    blocks = part.blocks()
    block_index = {b[0]: i for i, b in enumerate(blocks)}
    cls = [block_index[part.rep[x]] for x in range(alg.size)]
    k = len(blocks)
    size = alg.size
    tables = {}
    for sym, arity in alg.signature.symbols:
        table = [None] * (k**arity)
        # fill from every representative tuple and verify consistency
        for args in product(range(size), repeat=arity):
            idx = 0
            for a in args:
                idx = idx * k + cls[a]
            v = cls[alg.op(sym, *args)]
            if table[idx] is None:
                table[idx] = v
            elif table[idx] != v:
                raise NotCongruenceError(
                    f"partition is not compatible with operation {sym!r}"
                )
        tables[sym] = tuple(table)
    enames = None
    if alg.element_names is not None:
        enames = tuple("|".join(alg.element_name(x) for x in b) for b in blocks)
    qname = name or f"{alg.name}/theta"
    return FiniteAlgebra(qname, alg.signature, k, tables, enames)


def quotient_map(alg: FiniteAlgebra, part: Partition) -> tuple[int, ...]:
    """The canonical surjection onto quotient(alg, part), as an index map."""
    blocks = part.blocks()
    block_index = {b[0]: i for i, b in enumerate(blocks)}
    return tuple(block_index[part.rep[x]] for x in range(alg.size))


def reduct(alg: FiniteAlgebra, symbols, name=None) -> FiniteAlgebra:
    """Same universe, signature restricted to the listed symbols."""
    keep = [s for s in alg.signature.names() if s in set(symbols)]
    missing = set(symbols) - set(keep)
    if missing:
        raise UnknownSymbolError(f"symbols {sorted(missing)} not in {alg.name!r}")
    sig = alg.signature.restricted(keep)
    tables = {sym: alg.tables[sym] for sym in keep}
    return FiniteAlgebra(name or f"{alg.name}|reduct", sig, alg.size, tables, alg.element_names)


# ---------------------------------------------------------------------------
# JSON serialization


def algebra_to_dict(alg: FiniteAlgebra) -> dict:
    out: dict = {
        "name": alg.name,
        "size": alg.size,
        "operations": [
            {"symbol": sym, "arity": arity, "table": list(alg.tables[sym])}
            for sym, arity in alg.signature.symbols
        ],
    }
    if alg.element_names is not None:
        out["elements"] = list(alg.element_names)
    return out


def dumps_algebra(alg: FiniteAlgebra) -> str:
    return json.dumps(algebra_to_dict(alg), sort_keys=True, indent=2) + "\n"


def save_algebra(alg: FiniteAlgebra, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_algebra(alg))


def algebra_from_dict(data: dict) -> FiniteAlgebra:
    try:
        name = data["name"]
        size = data["size"]
        ops = data["operations"]
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra document: missing {exc}") from None
    if not isinstance(size, int):
        raise AlgebraError("size must be an integer")
    symbols = []
    tables = {}
    for entry in ops:
        try:
            sym, arity, table = entry["symbol"], entry["arity"], entry["table"]
        except (KeyError, TypeError) as exc:
            raise AlgebraError(f"malformed operation entry: missing {exc}") from None
        symbols.append((sym, arity))
        tables[sym] = tuple(table)
    element_names = data.get("elements")
    return make_algebra(name, Signature(tuple(symbols)), size, tables, element_names)


def loads_algebra(text: str) -> FiniteAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"invalid JSON: {exc}") from None
    return algebra_from_dict(data)


def load_algebra(path) -> FiniteAlgebra:
    with open(path) as fh:
        return loads_algebra(fh.read())

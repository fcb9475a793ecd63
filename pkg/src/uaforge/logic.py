"""First-order formulas over finite table algebras.

Formulas use integer-indexed variables.  The ASCII surface syntax is

    formula := quant | impl
    quant   := ("exists" | "forall") ident+ "." formula
    impl    := disj ("->" impl)?
    disj    := conj ("\\/" conj)*
    conj    := neg ("/\\" neg)*
    neg     := "!" neg | atom
    atom    := term "=" term | "(" formula ")"
    term    := ident | ident "(" term ("," term)* ")"

with precedence ! > /\\ > \\/ > ->, right-associative ->, and quantifier
bodies extending as far right as possible.  Identifiers are resolved against
the algebra's operation symbols first; anything else is a variable.  Free
variables are numbered 0,1,.. in order of first use, bound variables follow
in binder order.

Two evaluation routes are provided: a plain recursive evaluator, and a
decomposed evaluator for existentially quantified conjunctions that splits
the bound variables into connected components of the co-occurrence graph,
enumerates components as vectorized batches, and caches component results
keyed by the frame of values shared with the outside.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

import numpy as np

from .core import (
    AlgebraError,
    Apply,
    ArityError,
    FiniteAlgebra,
    Signature,
    Term,
    UnassignedVariableError,
    Variable,
    eval_term,
)

# ---------------------------------------------------------------------------
# formula AST


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    vars: tuple[int, ...]
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    vars: tuple[int, ...]
    body: "Formula"


Formula = Eq | And | Or | Implies | Not | Exists | Forall


def _term_vars_ordered(t: Term, out: list[int]) -> None:
    if isinstance(t, Variable):
        out.append(t.index)
    else:
        for a in t.args:
            _term_vars_ordered(a, out)


def _formula_vars_ordered(f: Formula, out: list[int]) -> None:
    if isinstance(f, Eq):
        _term_vars_ordered(f.lhs, out)
        _term_vars_ordered(f.rhs, out)
    elif isinstance(f, (And, Or)):
        for p in f.parts:
            _formula_vars_ordered(p, out)
    elif isinstance(f, Implies):
        _formula_vars_ordered(f.left, out)
        _formula_vars_ordered(f.right, out)
    elif isinstance(f, Not):
        _formula_vars_ordered(f.body, out)
    elif isinstance(f, (Exists, Forall)):
        out.extend(f.vars)
        _formula_vars_ordered(f.body, out)
    else:
        raise TypeError(f"not a formula: {f!r}")


# formula objects are immutable; pin them so id-keyed memoization stays valid
_VARS_CACHE: dict[int, tuple[Formula, frozenset[int]]] = {}


def formula_variables(f: Formula) -> frozenset[int]:
    hit = _VARS_CACHE.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]
    out: list[int] = []
    _formula_vars_ordered(f, out)
    fs = frozenset(out)
    _VARS_CACHE[id(f)] = (f, fs)
    return fs


def free_variables(f: Formula) -> frozenset[int]:
    if isinstance(f, Eq):
        from .core import term_variables

        return term_variables(f.lhs) | term_variables(f.rhs)
    if isinstance(f, (And, Or)):
        out: frozenset[int] = frozenset()
        for p in f.parts:
            out |= free_variables(p)
        return out
    if isinstance(f, Implies):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body) - frozenset(f.vars)
    raise TypeError(f"not a formula: {f!r}")


def is_pp(f: Formula) -> bool:
    """Positive primitive: equations combined with conjunction and exists only."""
    if isinstance(f, Eq):
        return True
    if isinstance(f, And):
        return all(is_pp(p) for p in f.parts)
    if isinstance(f, Exists):
        return is_pp(f.body)
    return False


def _has_quantifier(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return True
    if isinstance(f, (And, Or)):
        return any(_has_quantifier(p) for p in f.parts)
    if isinstance(f, Implies):
        return _has_quantifier(f.left) or _has_quantifier(f.right)
    if isinstance(f, Not):
        return _has_quantifier(f.body)
    return False


def _flatten_and(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        out: list[Formula] = []
        for p in f.parts:
            out.extend(_flatten_and(p))
        return out
    return [f]


# ---------------------------------------------------------------------------
# plain evaluation


def _normalize_env(env) -> dict[int, int]:
    if env is None:
        return {}
    if isinstance(env, dict):
        return {k: v for k, v in env.items() if v is not None}
    return {i: v for i, v in enumerate(env) if v is not None}


def _eval(alg: FiniteAlgebra, f: Formula, env: dict[int, int]) -> bool:
    if isinstance(f, Eq):
        return eval_term(alg, f.lhs, env) == eval_term(alg, f.rhs, env)
    if isinstance(f, And):
        return all(_eval(alg, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(_eval(alg, p, env) for p in f.parts)
    if isinstance(f, Implies):
        return (not _eval(alg, f.left, env)) or _eval(alg, f.right, env)
    if isinstance(f, Not):
        return not _eval(alg, f.body, env)
    if isinstance(f, (Exists, Forall)):
        return _eval_quant(alg, f.vars, f.body, env, isinstance(f, Exists))
    raise TypeError(f"not a formula: {f!r}")


_MISSING = object()


def _eval_quant(alg, vars, body, env, existential):
    if not vars:
        return _eval(alg, body, env)
    v, rest = vars[0], vars[1:]
    saved = env.get(v, _MISSING)
    try:
        for val in range(alg.size):
            env[v] = val
            if _eval_quant(alg, rest, body, env, existential) == existential:
                return existential
        return not existential
    finally:
        if saved is _MISSING:
            env.pop(v, None)
        else:
            env[v] = saved


def eval_formula(alg: FiniteAlgebra, f: Formula, env=None) -> bool:
    """Reference evaluator: quantifiers are nested loops over the universe."""
    return _eval(alg, f, _normalize_env(env))


# ---------------------------------------------------------------------------
# vectorized evaluation of quantifier-free formulas


def eval_term_batch(alg: FiniteAlgebra, t: Term, env):
    """Evaluate a term where env values may be numpy arrays (broadcast together)."""
    if isinstance(t, Variable):
        try:
            return env[t.index]
        except KeyError:
            raise UnassignedVariableError(f"variable v{t.index} unassigned") from None
    arity = alg.signature.arity(t.symbol)
    if len(t.args) != arity:
        raise ArityError(f"{t.symbol!r} expects {arity} arguments, got {len(t.args)}")
    if arity == 0:
        return int(alg.tables[t.symbol][0])
    k = eval_term_batch(alg, t.args[0], env)
    for a in t.args[1:]:
        k = k * alg.size + eval_term_batch(alg, a, env)
    table = alg.np_tables[t.symbol]
    if isinstance(k, (int, np.integer)):
        return int(table[k])
    return table[k]


def eval_formula_batch(alg: FiniteAlgebra, f: Formula, env):
    """Quantifier-free formulas only; returns a bool or a boolean array."""
    if isinstance(f, Eq):
        l = eval_term_batch(alg, f.lhs, env)
        r = eval_term_batch(alg, f.rhs, env)
        return l == r
    if isinstance(f, And):
        out = True
        for p in f.parts:
            out = np.logical_and(out, eval_formula_batch(alg, p, env))
        return out
    if isinstance(f, Or):
        out = False
        for p in f.parts:
            out = np.logical_or(out, eval_formula_batch(alg, p, env))
        return out
    if isinstance(f, Implies):
        l = eval_formula_batch(alg, f.left, env)
        r = eval_formula_batch(alg, f.right, env)
        return np.logical_or(np.logical_not(l), r)
    if isinstance(f, Not):
        return np.logical_not(eval_formula_batch(alg, f.body, env))
    raise AlgebraError("batch evaluation requires a quantifier-free formula")


# ---------------------------------------------------------------------------
# decomposed evaluation of existential conjunctions

BATCH_LIMIT = 1 << 20


def eval_exists_decomposed(alg: FiniteAlgebra, f: Formula, env=None, cache=None) -> bool:
    """Equivalent to eval_formula, fast on exists-over-conjunction formulas.

    Free variables act as constants.  Bound variables are split into
    connected components of the conjunct co-occurrence graph; components are
    enumerated as vectorized batches when small enough, otherwise conditioned
    on one variable at a time (in order of first occurrence), re-splitting
    after every assignment.  A caller-supplied cache dict memoizes component
    results; a cache must only be reused with the same algebra and formula.

    Falls back to the reference evaluator when the shape does not fit.
    """
    env = _normalize_env(env)
    if not isinstance(f, Exists):
        return _eval(alg, f, env)
    conjuncts = _flatten_and(f.body)
    if any(_has_quantifier(c) for c in conjuncts):
        return _eval(alg, f, env)
    for v in f.vars:
        env.pop(v, None)
    order: dict[int, int] = {}
    bound = set(f.vars)
    walk: list[int] = []
    for c in conjuncts:
        _formula_vars_ordered(c, walk)
    for v in walk:
        if v in bound and v not in order:
            order[v] = len(order)
    # bound variables that never occur impose no constraint
    if cache is None:
        cache = {}
    return _solve(alg, conjuncts, frozenset(order), env, order, cache)


def _solve(alg, conjuncts, unassigned, env, order, cache):
    pending: list[tuple[Formula, frozenset[int]]] = []
    for c in conjuncts:
        ub = formula_variables(c) & unassigned
        if not ub:
            if not _eval(alg, c, env):
                return False
        else:
            pending.append((c, ub))
    if not pending:
        return True
    # connected components of the co-occurrence graph on unassigned variables
    parent: dict[int, int] = {}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for _c, ub in pending:
        it = iter(ub)
        first = next(it)
        parent.setdefault(first, first)
        r0 = find(first)
        for v in it:
            parent.setdefault(v, v)
            rv = find(v)
            if rv != r0:
                parent[rv] = r0
    comps: dict[int, tuple[list[Formula], set[int]]] = {}
    for c, ub in pending:
        root = find(next(iter(ub)))
        entry = comps.setdefault(root, ([], set()))
        entry[0].append(c)
        entry[1].update(ub)
    for conjs, comp_vars in comps.values():
        if not _solve_component(alg, conjs, frozenset(comp_vars), env, order, cache):
            return False
    return True


def _component_key(conjs, comp_vars, env):
    fixed = set()
    for c in conjs:
        fixed |= formula_variables(c)
    fixed -= comp_vars
    try:
        frame = tuple((v, env[v]) for v in sorted(fixed))
    except KeyError as exc:
        raise UnassignedVariableError(f"variable v{exc.args[0]} unassigned") from None
    return (tuple(id(c) for c in conjs), frame)


def _unary_domain(alg, c, v, env):
    batch_env = dict(env)
    batch_env[v] = np.arange(alg.size)
    mask = eval_formula_batch(alg, c, batch_env)
    return frozenset(int(x) for x in np.nonzero(mask)[0])


def _solve_component(alg, conjs, comp_vars, env, order, cache):
    key = _component_key(conjs, comp_vars, env)
    hit = cache.get(key)
    if hit is not None:
        return hit
    result = _solve_component_inner(alg, conjs, comp_vars, env, order, cache)
    cache[key] = result
    return result


def _solve_component_inner(alg, conjs, comp_vars, env, order, cache):
    size = alg.size
    domains: dict[int, frozenset[int] | None] = {v: None for v in comp_vars}
    residual: list[Formula] = []
    for c in conjs:
        ub = formula_variables(c) & comp_vars
        if len(ub) == 1:
            (v,) = ub
            dom = _unary_domain(alg, c, v, env)
            domains[v] = dom if domains[v] is None else domains[v] & dom
            if not domains[v]:
                return False
        else:
            residual.append(c)
    full = frozenset(range(size))
    for v in comp_vars:
        if domains[v] is None:
            domains[v] = full
    forced = [(v, next(iter(dom))) for v, dom in domains.items() if len(dom) == 1]
    if forced:
        for v, val in forced:
            env[v] = val
        try:
            return _solve(alg, conjs, comp_vars - {v for v, _ in forced}, env, order, cache)
        finally:
            for v, _ in forced:
                del env[v]
    total = 1
    for dom in domains.values():
        total *= len(dom)
    if total <= BATCH_LIMIT:
        if not residual:
            return True
        ordered_vars = sorted(comp_vars, key=order.get)
        grids = np.meshgrid(
            *(np.fromiter(sorted(domains[v]), dtype=np.int64) for v in ordered_vars),
            indexing="ij",
        )
        batch_env = dict(env)
        for v, g in zip(ordered_vars, grids):
            batch_env[v] = g.ravel()
        mask = True
        for c in residual:
            mask = np.logical_and(mask, eval_formula_batch(alg, c, batch_env))
            if mask is False:
                return False
        return bool(np.any(mask))
    # condition on the earliest-occurring variable and re-split
    v = min(comp_vars, key=order.get)
    rest = comp_vars - {v}
    for val in sorted(domains[v]):
        env[v] = val
        try:
            if _solve(alg, conjs, rest, env, order, cache):
                return True
        finally:
            del env[v]
    return False


# ---------------------------------------------------------------------------
# definable functions


@dataclass(frozen=True)
class PartialFunctionTable:
    algebra: str
    arity: int
    domain: frozenset
    values: dict

    def value(self, args) -> int:
        return self.values[tuple(args)]

    def is_total_on(self, size: int) -> bool:
        return len(self.domain) == size**self.arity


class FunctionalityError(AlgebraError):
    # note: "arguments", not "args" -- BaseException.args is the message tuple
    def __init__(self, algebra_name, arguments, first, second):
        super().__init__(
            f"formula is not functional on {algebra_name!r}: arguments {arguments} "
            f"admit outputs {first} and {second}"
        )
        self.algebra_name = algebra_name
        self.arguments = arguments
        self.first = first
        self.second = second


class TotalityError(AlgebraError):
    def __init__(self, algebra_name, arguments):
        super().__init__(
            f"formula is not total on {algebra_name!r}: arguments {arguments} "
            "have no output"
        )
        self.algebra_name = algebra_name
        self.arguments = arguments


def induced_partial_function(
    alg: FiniteAlgebra, f: Formula, arity: int, var_order=None, cache=None
) -> PartialFunctionTable:
    """Partial function defined by f(x1..xn, y) with y the last variable.

    var_order lists the variable indices playing the roles (x1..xn, y); it
    defaults to (0..arity).  Raises FunctionalityError on the first argument
    tuple (in lexicographic order) with two distinct outputs.  cache is an
    optional evaluation cache shared across calls with the same (alg, f).
    """
    if arity < 0:
        raise ArityError("arity must be non-negative")
    var_order = tuple(var_order) if var_order is not None else tuple(range(arity + 1))
    if len(var_order) != arity + 1:
        raise ArityError(f"var_order needs {arity + 1} entries, got {len(var_order)}")
    yvar = var_order[-1]
    if cache is None:
        cache = {}
    domain = set()
    values = {}
    for args in product(range(alg.size), repeat=arity):
        env = dict(zip(var_order[:arity], args))
        found = None
        for b in range(alg.size):
            env[yvar] = b
            if eval_exists_decomposed(alg, f, env, cache):
                if found is not None:
                    raise FunctionalityError(alg.name, args, found, b)
                found = b
        if found is not None:
            domain.add(args)
            values[args] = found
    return PartialFunctionTable(alg.name, arity, frozenset(domain), values)


def check_functional(algs, f: Formula, arity: int, var_order=None) -> bool:
    """True iff every argument tuple has at most one output on every algebra."""
    for alg in algs:
        try:
            induced_partial_function(alg, f, arity, var_order)
        except FunctionalityError:
            return False
    return True


# ---------------------------------------------------------------------------
# parsing

_RESERVED = ("exists", "forall")

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<arrow>->)"
    r"|(?P<and>/\\)"
    r"|(?P<or>\\/)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[()=.,!])"
)


class ParseError(AlgebraError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(src: str):
    pos = 0
    out = []
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if m.lastgroup == "ws":
            pos = m.end()
            continue
        kind = m.lastgroup
        text = m.group()
        if kind == "arrow":
            out.append(("->", text, pos))
        elif kind == "and":
            out.append(("/\\", text, pos))
        elif kind == "or":
            out.append(("\\/", text, pos))
        elif kind == "punct":
            out.append((text, text, pos))
        else:
            out.append(("ident", text, pos))
        pos = m.end()
    out.append(("eof", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, sig: Signature):
        self.src = src
        self.sig = sig
        self.tokens = _tokenize(src)
        self.i = 0
        self.scopes: list[dict[str, int]] = []
        self.free: dict[str, int] = {}
        self.bound_order: list[int] = []
        self.entities = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def _fresh(self):
        self.entities += 1
        return self.entities - 1

    # grammar

    def formula(self) -> Formula:
        kind, text, _pos = self.peek()
        if kind == "ident" and text in _RESERVED:
            return self.quantified()
        return self.implication()

    def quantified(self) -> Formula:
        kind, kw, pos = self.advance()
        placeholders = []
        scope: dict[str, int] = {}
        while True:
            k, name, p = self.peek()
            if k != "ident":
                break
            if name in _RESERVED:
                raise ParseError(f"{name!r} is a reserved word", p)
            if name in self.sig:
                raise ParseError(f"cannot bind operation symbol {name!r}", p)
            self.advance()
            ph = self._fresh()
            scope[name] = ph
            self.bound_order.append(ph)
            placeholders.append(ph)
        if not placeholders:
            raise ParseError(f"{kw!r} needs at least one variable", pos)
        self.expect(".")
        self.scopes.append(scope)
        body = self.formula()
        self.scopes.pop()
        cls = Exists if kw == "exists" else Forall
        return cls(tuple(placeholders), body)

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.peek()[0] == "\\/":
            self.advance()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.negation()]
        while self.peek()[0] == "/\\":
            self.advance()
            parts.append(self.negation())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def negation(self) -> Formula:
        if self.peek()[0] == "!":
            self.advance()
            return Not(self.negation())
        return self.atom()

    def atom(self) -> Formula:
        if self.peek()[0] == "(":
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        lhs = self.term()
        self.expect("=")
        return Eq(lhs, self.term())

    def term(self) -> Term:
        kind, name, pos = self.advance()
        if kind != "ident":
            raise ParseError(f"expected a term, found {name or 'end of input'!r}", pos)
        if name in _RESERVED:
            raise ParseError(f"{name!r} is a reserved word", pos)
        if name in self.sig:
            arity = self.sig.arity(name)
            if self.peek()[0] == "(":
                args = self._args()
                if len(args) != arity:
                    raise ParseError(
                        f"{name!r} expects {arity} arguments, got {len(args)}", pos
                    )
                return Apply(name, tuple(args))
            if arity != 0:
                raise ParseError(f"{name!r} expects {arity} arguments, got 0", pos)
            return Apply(name, ())
        if self.peek()[0] == "(":
            # sugar: neg(t) stands for imp(t, zero) when those symbols exist
            if name == "neg" and "imp" in self.sig and "zero" in self.sig:
                args = self._args()
                if len(args) != 1:
                    raise ParseError(f"'neg' expects 1 argument, got {len(args)}", pos)
                return Apply("imp", (args[0], Apply("zero", ())))
            raise ParseError(f"unknown operation symbol {name!r}", pos)
        return Variable(self._resolve(name))

    def _args(self) -> list[Term]:
        self.expect("(")
        args = [self.term()]
        while self.peek()[0] == ",":
            self.advance()
            args.append(self.term())
        self.expect(")")
        return args

    def _resolve(self, name: str) -> int:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        if name not in self.free:
            self.free[name] = self._fresh()
        return self.free[name]

    def parse(self):
        f = self.formula()
        kind, text, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {text!r} after formula", pos)
        # renumber: free variables by first use, then bound by binder order
        final: dict[int, int] = {}
        for ph in self.free.values():
            final[ph] = len(final)
        names = {v: k for k, v in self.free.items()}
        free_map = {names[ph]: final[ph] for ph in self.free.values()}
        for ph in self.bound_order:
            final[ph] = len(final)
        return _renumber(f, final), free_map


def _renumber(f: Formula, final: dict[int, int]) -> Formula:
    def term(t: Term) -> Term:
        if isinstance(t, Variable):
            return Variable(final[t.index])
        return Apply(t.symbol, tuple(term(a) for a in t.args))

    if isinstance(f, Eq):
        return Eq(term(f.lhs), term(f.rhs))
    if isinstance(f, And):
        return And(tuple(_renumber(p, final) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(_renumber(p, final) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(_renumber(f.left, final), _renumber(f.right, final))
    if isinstance(f, Not):
        return Not(_renumber(f.body, final))
    if isinstance(f, (Exists, Forall)):
        cls = type(f)
        return cls(tuple(final[v] for v in f.vars), _renumber(f.body, final))
    raise TypeError(f"not a formula: {f!r}")


def parse_formula_named(src: str, sig: Signature) -> tuple[Formula, dict[str, int]]:
    """Parse and also report the name -> index mapping of the free variables."""
    return _Parser(src, sig).parse()


def parse_formula(src: str, sig: Signature) -> Formula:
    return parse_formula_named(src, sig)[0]


# ---------------------------------------------------------------------------
# printing

_LEVEL_QUANT, _LEVEL_IMPL, _LEVEL_DISJ, _LEVEL_CONJ, _LEVEL_NEG = 0, 1, 2, 3, 4


def format_term(t: Term, names=None) -> str:
    def name(i):
        if names is not None and i in names:
            return names[i]
        return f"v{i}"

    if isinstance(t, Variable):
        return name(t.index)
    if not t.args:
        return t.symbol
    return f"{t.symbol}({', '.join(format_term(a, names) for a in t.args)})"


def format_formula(f: Formula, names=None) -> str:
    """Render back into the surface syntax (re-parseable)."""

    def name(i):
        if names is not None and i in names:
            return names[i]
        return f"v{i}"

    def go(f, min_level):
        if isinstance(f, Eq):
            return f"{format_term(f.lhs, names)} = {format_term(f.rhs, names)}"
        if isinstance(f, Not):
            s = "!" + go(f.body, _LEVEL_NEG)
            level = _LEVEL_NEG
        elif isinstance(f, And):
            s = " /\\ ".join(go(p, _LEVEL_NEG) for p in f.parts)
            level = _LEVEL_CONJ
        elif isinstance(f, Or):
            s = " \\/ ".join(go(p, _LEVEL_CONJ) for p in f.parts)
            level = _LEVEL_DISJ
        elif isinstance(f, Implies):
            s = f"{go(f.left, _LEVEL_DISJ)} -> {go(f.right, _LEVEL_IMPL)}"
            level = _LEVEL_IMPL
        elif isinstance(f, (Exists, Forall)):
            kw = "exists" if isinstance(f, Exists) else "forall"
            s = f"{kw} {' '.join(name(v) for v in f.vars)} . {go(f.body, _LEVEL_QUANT)}"
            level = _LEVEL_QUANT
        else:
            raise TypeError(f"not a formula: {f!r}")
        if level < min_level:
            return f"({s})"
        return s

    return go(f, _LEVEL_QUANT)

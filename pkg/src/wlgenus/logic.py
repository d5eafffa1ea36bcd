"""Counting logic over arc-coloured graphs.

Formulas are built from ``x = y``, ``E(x, y)`` and ``R_c(x, y)`` with
negation, disjunction and counting quantifiers ``exists^{>=p} x``. All other
connectives are helper functions that expand into these nodes.

Text form is an s-expression, e.g. ``(geq 2 x (and (E x y) (not (= x y))))``.
``and`` is printed for the pattern ``not (or (not a) (not b))`` so that
printing and parsing are inverse to each other.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from wlgenus.graph import ColouredGraph
from wlgenus.wl import atomic_type


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_sexpr(self)


@dataclass(frozen=True, slots=True)
class Eq(Formula):
    x: str
    y: str


@dataclass(frozen=True, slots=True)
class Edge(Formula):
    x: str
    y: str


@dataclass(frozen=True, slots=True)
class Rel(Formula):
    colour: str
    x: str
    y: str


@dataclass(frozen=True, slots=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Count(Formula):
    """``exists^{>=p} var . sub``"""

    p: int
    var: str
    sub: Formula

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("counting threshold must be at least 1")


class UnboundVariableError(KeyError):
    pass


class UnknownColourError(KeyError):
    pass


# -- derived connectives -------------------------------------------------------


def And(a: Formula, b: Formula) -> Formula:
    return Not(Or(Not(a), Not(b)))


def Implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


def Exists(x: str, f: Formula) -> Formula:
    return Count(1, x, f)


def Forall(x: str, f: Formula) -> Formula:
    return Not(Count(1, x, Not(f)))


def FewerThan(p: int, x: str, f: Formula) -> Formula:
    return Not(Count(p, x, f))


def ExactlyN(p: int, x: str, f: Formula) -> Formula:
    if p == 0:
        return Not(Count(1, x, f))
    return And(Count(p, x, f), Not(Count(p + 1, x, f)))


def true_(x: str = "x") -> Formula:
    return Forall(x, Eq(x, x))


def false_(x: str = "x") -> Formula:
    return Not(true_(x))


def conjunction(parts: Sequence[Formula]) -> Formula:
    out = parts[0]
    for f in parts[1:]:
        out = And(out, f)
    return out


# -- syntax ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def free_vars(f: Formula) -> frozenset:
    if isinstance(f, (Eq, Edge, Rel)):
        return frozenset((f.x, f.y))
    if isinstance(f, Not):
        return free_vars(f.sub)
    if isinstance(f, Or):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Count):
        return free_vars(f.sub) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula):
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.sub)
    elif isinstance(f, Or):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Count):
        yield from subformulas(f.sub)


def variables(f: Formula) -> frozenset:
    out = set()
    for g in subformulas(f):
        if isinstance(g, (Eq, Edge, Rel)):
            out.update((g.x, g.y))
        elif isinstance(g, Count):
            out.add(g.var)
    return frozenset(out)


def width(f: Formula) -> int:
    """Largest number of free variables of a subformula."""
    return max(len(free_vars(g)) for g in subformulas(f))


def _and_parts(f: Formula):
    if isinstance(f, Not) and isinstance(f.sub, Or) and isinstance(f.sub.left, Not) and isinstance(f.sub.right, Not):
        return f.sub.left.sub, f.sub.right.sub
    return None


def to_sexpr(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"(= {f.x} {f.y})"
    if isinstance(f, Edge):
        return f"(E {f.x} {f.y})"
    if isinstance(f, Rel):
        return f"(R {_quote(f.colour)} {f.x} {f.y})"
    if isinstance(f, Not):
        parts = _and_parts(f)
        if parts is not None:
            return f"(and {to_sexpr(parts[0])} {to_sexpr(parts[1])})"
        return f"(not {to_sexpr(f.sub)})"
    if isinstance(f, Or):
        return f"(or {to_sexpr(f.left)} {to_sexpr(f.right)})"
    if isinstance(f, Count):
        return f"(geq {f.p} {f.var} {to_sexpr(f.sub)})"
    raise TypeError(f"not a formula: {f!r}")


_BARE = re.compile(r"^[A-Za-z0-9_.:+\-]+$")


def _quote(s: str) -> str:
    return s if _BARE.match(s) else '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


_TOKEN = re.compile(r'\s*(?:(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()"]+))')


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot tokenise at {pos}: {text[pos:pos + 20]!r}")
        pos = m.end()
        if m.group(1):
            yield "("
        elif m.group(2):
            yield ")"
        elif m.group(3) is not None:
            yield ("str", re.sub(r"\\(.)", r"\1", m.group(3)))
        else:
            yield ("sym", m.group(4))


def parse(text: str) -> Formula:
    toks = list(_tokens(text)) + [None]
    pos = 0

    def atom():
        nonlocal pos
        t = toks[pos]
        if t is None:
            raise ValueError("unexpected end of input")
        if t in ("(", ")"):
            raise ValueError("expected an atom")
        pos += 1
        return t[1]

    def expr() -> Formula:
        nonlocal pos
        if toks[pos] != "(":
            raise ValueError("expected '('")
        pos += 1
        op = atom()
        if op == "=":
            out: Formula = Eq(atom(), atom())
        elif op == "E":
            out = Edge(atom(), atom())
        elif op == "R":
            c = atom()
            out = Rel(c, atom(), atom())
        elif op == "not":
            out = Not(expr())
        elif op == "or":
            a = expr()
            out = Or(a, expr())
        elif op == "and":
            a = expr()
            out = And(a, expr())
        elif op == "geq":
            p = int(atom())
            x = atom()
            out = Count(p, x, expr())
        elif op == "exists":
            x = atom()
            out = Exists(x, expr())
        elif op == "forall":
            x = atom()
            out = Forall(x, expr())
        else:
            raise ValueError(f"unknown operator {op!r}")
        if toks[pos] != ")":
            raise ValueError("expected ')'")
        pos += 1
        return out

    f = expr()
    if pos != len(toks) - 1:
        raise ValueError("trailing input")
    return f


# -- semantics -------------------------------------------------------------------


def _check_colours(G: ColouredGraph, phi: Formula, universe) -> None:
    universe = G.colour_universe() if universe is None else universe
    for g in subformulas(phi):
        if isinstance(g, Rel) and g.colour not in universe:
            raise UnknownColourError(g.colour)


def eval_formula(G: ColouredGraph, phi: Formula, nu: Mapping[str, int], universe=None) -> bool:
    """Does (G, nu) satisfy phi?

    Plain structural recursion; results are cached per call, keyed on the
    subformula and the values of its free variables.
    """
    missing = free_vars(phi) - set(nu)
    if missing:
        raise UnboundVariableError(sorted(missing))
    _check_colours(G, phi, universe)
    cache: dict = {}

    def ev(f: Formula, env: dict) -> bool:
        key = (f, tuple(sorted((x, env[x]) for x in free_vars(f))))
        hit = cache.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Eq):
            r = env[f.x] == env[f.y]
        elif isinstance(f, Edge):
            r = G.adjacent(env[f.x], env[f.y])
        elif isinstance(f, Rel):
            u, v = env[f.x], env[f.y]
            r = (u == v or G.adjacent(u, v)) and G.chi(u, v) == f.colour
        elif isinstance(f, Not):
            r = not ev(f.sub, env)
        elif isinstance(f, Or):
            r = ev(f.left, env) or ev(f.right, env)
        else:
            hits = 0
            saved = env.get(f.var)
            r = False
            for v in range(G.n):
                env[f.var] = v
                if ev(f.sub, env):
                    hits += 1
                    if hits >= f.p:
                        r = True
                        break
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
        cache[key] = r
        return r

    return ev(phi, dict(nu))


# public name used throughout the package
eval = eval_formula  # noqa: A001


def evaluate_table(G: ColouredGraph, phi: Formula, order: Sequence[str], universe=None) -> np.ndarray:
    """Truth values of phi for all assignments to ``order`` at once.

    Returns a boolean array of shape ``(n,) * len(order)``; every variable of
    phi must be listed in ``order``.
    """
    _check_colours(G, phi, universe)
    if not variables(phi) <= set(order):
        raise UnboundVariableError(sorted(variables(phi) - set(order)))
    n = G.n
    d = len(order)
    axis = {x: i for i, x in enumerate(order)}
    A = np.zeros((n, n), dtype=bool)
    for u, v in G.edges:
        A[u, v] = A[v, u] = True

    def pair(M, x, y):
        if x == y:
            out = np.diagonal(M).copy()
            shape = [1] * d
            shape[axis[x]] = n
            return out.reshape(shape)
        shape = [1] * d
        shape[axis[x]] = n
        shape[axis[y]] = n
        if axis[x] > axis[y]:
            M = M.T
        return M.reshape(shape)

    colour_mats: dict = {}

    def colour_matrix(c):
        if c not in colour_mats:
            M = np.zeros((n, n), dtype=bool)
            for v in range(n):
                M[v, v] = G.vertex_colours[v] == c
            for u, v in G.arcs():
                M[u, v] = G.chi(u, v) == c
            colour_mats[c] = M
        return colour_mats[c]

    eye = np.eye(n, dtype=bool)
    memo: dict = {}

    def ev(f):
        if f in memo:
            return memo[f]
        if isinstance(f, Eq):
            r = pair(eye, f.x, f.y)
        elif isinstance(f, Edge):
            r = pair(A, f.x, f.y)
        elif isinstance(f, Rel):
            r = pair(colour_matrix(f.colour), f.x, f.y)
        elif isinstance(f, Not):
            r = ~ev(f.sub)
        elif isinstance(f, Or):
            r = ev(f.left) | ev(f.right)
        else:
            sub = np.broadcast_to(ev(f.sub), (n,) * d)
            r = np.expand_dims(sub.sum(axis=axis[f.var]) >= f.p, axis[f.var])
        memo[f] = r
        return r

    return np.broadcast_to(ev(phi), (n,) * d)


# -- the distance formulas -------------------------------------------------------


def dist_formula(k: int, x: str = "x", x2: str = "x'", pool: Sequence[str] = ("y", "x")) -> Formula:
    """dist_{<=k}(x, x2): a walk of length at most k joins x and x2.

    Uses three variable names in total by alternating the bound variable
    between ``pool[0]`` and ``pool[1]``; the width is 3 for every k >= 1.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    names = [pool[0], pool[1]] if x != pool[0] else [pool[1], pool[0]]

    def build(j: int, start: str, depth: int) -> Formula:
        if j == 0:
            return Eq(start, x2)
        y = names[depth % 2] if names[depth % 2] != start else names[(depth + 1) % 2]
        return Or(Eq(start, x2), Exists(y, And(Edge(start, y), build(j - 1, y, depth + 1))))

    return build(k, x, 0)


def dist_exact_formula(k: int, x: str = "x", x2: str = "x'") -> Formula:
    if k == 0:
        return dist_formula(0, x, x2)
    return And(dist_formula(k, x, x2), Not(dist_formula(k - 1, x, x2)))


def conn_formula(n: int) -> Formula:
    """Sentence saying that a graph of order at most n is connected."""
    return Forall("x", Forall("x'", dist_formula(max(n - 1, 0))))


# -- random formulas -------------------------------------------------------------


def sample_formulas(k: int, depth: int, seed: int, colour_universe=(), count: int = 100, names=None) -> list[Formula]:
    """Reproducible random formulas over at most k variable names (so width <= k).

    With ``depth == 1`` only atoms and negated atoms are produced.
    """
    if k < 2 or depth < 1:
        raise ValueError("need k >= 2 and depth >= 1")
    rng = random.Random(seed)
    names = list(names) if names is not None else [f"x{i}" for i in range(1, k + 1)]
    names = names[:k]
    colours = sorted(str(c) for c in colour_universe if isinstance(c, str))

    def atom_() -> Formula:
        x, y = rng.choice(names), rng.choice(names)
        kind = rng.randrange(3 if colours else 2)
        if kind == 0:
            return Eq(x, y)
        if kind == 1:
            return Edge(x, y)
        return Rel(rng.choice(colours), x, y)

    def gen(d: int) -> Formula:
        if d <= 1:
            a = atom_()
            return Not(a) if rng.random() < 0.5 else a
        r = rng.random()
        if r < 0.15:
            return atom_()
        if r < 0.3:
            return Not(gen(d - 1))
        if r < 0.5:
            return Or(gen(d - 1), gen(d - 1))
        if r < 0.65:
            return And(gen(d - 1), gen(d - 1))
        return Count(rng.randint(1, 3), rng.choice(names), gen(d - 1))

    out = [gen(depth) for _ in range(count)]
    assert all(width(f) <= k for f in out)
    return out


# -- bijective pebble game ---------------------------------------------------------


def _has_perfect_matching(allowed: np.ndarray) -> bool:
    n = allowed.shape[0]
    if not allowed.any(axis=0).all() or not allowed.any(axis=1).all():
        return False
    match_r = [-1] * n
    rows = [np.flatnonzero(allowed[i]).tolist() for i in range(n)]

    def augment(i, seen):
        for j in rows[i]:
            if not seen[j]:
                seen[j] = True
                if match_r[j] < 0 or augment(match_r[j], seen):
                    match_r[j] = i
                    return True
        return False

    return all(augment(i, [False] * n) for i in range(n))


def _atp_codes(G: ColouredGraph, arity: int, table: dict) -> np.ndarray:
    out = np.empty((G.n,) * arity, dtype=np.int64)
    for t in product(range(G.n), repeat=arity):
        out[t] = table.setdefault(atomic_type(G, t), len(table))
    return out


def duplicator_winning_positions(G: ColouredGraph, H: ColouredGraph, k: int) -> np.ndarray:
    """Greatest fixpoint of Duplicator's winning k-pebble positions in the bijective (k+1)-pebble game.

    ``W[u_1..u_k, v_1..v_k]`` is True when Duplicator wins from the position
    with pebble pairs on (u_i, v_i). Requires |G| = |H|.
    """
    if G.n != H.n:
        raise ValueError("orders differ")
    n = G.n
    table: dict = {}
    pg, ph = _atp_codes(G, k, table), _atp_codes(H, k, table)
    qg, qh = _atp_codes(G, k + 1, table), _atp_codes(H, k + 1, table)
    W = pg.reshape((n,) * k + (1,) * k) == ph.reshape((1,) * k + (n,) * k)
    # placing the extra pebble on (w, w') must keep a partial isomorphism
    P = qg.reshape((n,) * (k + 1) + (1,) * (k + 1)) == qh.reshape((1,) * (k + 1) + (n,) * (k + 1))
    # axes of P: u_1..u_k, w, v_1..v_k, w'; move to u.., v.., w, w'
    P = np.moveaxis(P, k, 2 * k)
    while True:
        A = P.copy()
        for i in range(k):
            # W[u with u_i := w, v with v_i := w'] as an array over u.., v.., w, w'
            T = np.moveaxis(W, [i, k + i], [2 * k - 2, 2 * k - 1])
            T = np.expand_dims(np.expand_dims(T, i), k + i)
            A &= T
        Wn = W.copy()
        flatW = Wn.reshape(-1)
        flatA = A.reshape(-1, n, n)
        for idx in np.flatnonzero(flatW):
            if not _has_perfect_matching(flatA[idx]):
                flatW[idx] = False
        if (Wn == W).all():
            return W
        W = Wn


def bijective_pebble_game(G: ColouredGraph, H: ColouredGraph, k: int, start_G: Sequence[int] = (), start_H: Sequence[int] = ()) -> bool:
    """Does Duplicator win the bijective (k+1)-pebble game from the given position?

    Start tuples shorter than k are padded by repeating their last vertex; the
    empty position asks for a bijection all of whose pairs are winning.
    """
    if len(start_G) != len(start_H):
        raise ValueError("start tuples differ in arity")
    m = len(start_G)
    if m > k + 1:
        raise ValueError("more pebble pairs than pebbles")
    if k < 1:
        raise ValueError("k must be at least 1")
    if G.n != H.n:
        return False
    W = duplicator_winning_positions(G, H, k)
    n = G.n
    if m == 0:
        diag = np.array([[W[(a,) * k + (b,) * k] for b in range(n)] for a in range(n)])
        return _has_perfect_matching(diag)
    if m <= k:
        u = tuple(start_G) + (start_G[-1],) * (k - m)
        v = tuple(start_H) + (start_H[-1],) * (k - m)
        return bool(W[u + v])
    if atomic_type(G, start_G) != atomic_type(H, start_H):
        return False
    for i in range(k + 1):
        u = tuple(start_G[:i]) + tuple(start_G[i + 1:])
        v = tuple(start_H[:i]) + tuple(start_H[i + 1:])
        if not W[u + v]:
            return False
    return True

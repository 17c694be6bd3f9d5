"""Linear term trees over a signature: the free symmetric operad.

A term of arity n is a planar tree of symbols whose leaves carry a bijective
labeling by {1..n} (each variable used exactly once). Substitution grafts a
term onto each leaf, shifting the grafted labels into contiguous blocks
ordered by the *label* of the replaced leaf, not by its planar position; the
symmetric action relabels leaves. Together these make the terms of a fixed
signature a symmetric operad, and evaluation into any effective operad a
morphism -- both facts are pinned by the law suites rather than assumed.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Sequence, Union

from .errors import ArityMismatchError, LinearityError, TermSyntaxError, UnassignedSymbolError
from .operads import EffectiveOperad
from .perms import Permutation


@dataclass(frozen=True)
class Symbol:
    name: str
    arity: int

    def __str__(self) -> str:
        return f"{self.name}/{self.arity}"


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Node:
    symbol: Symbol
    children: tuple["Term", ...]

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) != self.symbol.arity:
            raise ArityMismatchError(
                f"symbol {self.symbol} applied to {len(self.children)} children")


Term = Union[Leaf, Node]


def arity(t: Term) -> int:
    """Number of leaves."""
    if isinstance(t, Leaf):
        return 1
    return sum(arity(c) for c in t.children)


def node_count(t: Term) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + sum(node_count(c) for c in t.children)


def leaf_labels(t: Term) -> tuple[int, ...]:
    """Leaf labels in planar (left-to-right) order."""
    if isinstance(t, Leaf):
        return (t.label,)
    out: tuple[int, ...] = ()
    for c in t.children:
        out += leaf_labels(c)
    return out


def is_linear(t: Term) -> bool:
    labels = leaf_labels(t)
    return sorted(labels) == list(range(1, len(labels) + 1))


def require_linear(t: Term) -> None:
    labels = leaf_labels(t)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise LinearityError(
            f"leaf labels {sorted(labels)} are not a bijection onto 1..{len(labels)}",
            labels)


def symbols_of(t: Term) -> set[Symbol]:
    if isinstance(t, Leaf):
        return set()
    out = {t.symbol}
    for c in t.children:
        out |= symbols_of(c)
    return out


def unit_term() -> Term:
    """The operadic unit: the bare leaf x1."""
    return Leaf(1)


def _shift(t: Term, offset: int) -> Term:
    if offset == 0:
        return t
    if isinstance(t, Leaf):
        return Leaf(t.label + offset)
    return Node(t.symbol, tuple(_shift(c, offset) for c in t.children))


def graft(t: Term, replacements: Mapping[int, Term]) -> Term:
    """Replace each leaf by ``replacements[label]`` verbatim, no label shifting.

    Low-level: the result is linear only if the replacements' labels happen to
    tile {1..n}. :func:`compose_terms` is the arity-safe wrapper.
    """
    if isinstance(t, Leaf):
        return replacements[t.label]
    return Node(t.symbol, tuple(graft(c, replacements) for c in t.children))


def compose_terms(f: Term, gs: Sequence[Term]) -> Term:
    """Operadic substitution: graft ``gs[i-1]`` onto the leaf of ``f`` labeled i.

    The grafted copy of ``gs[i-1]`` has its labels shifted by
    ``arity(gs[0]) + .. + arity(gs[i-2])``, so argument blocks are ordered by
    leaf label.
    """
    gs = tuple(gs)
    require_linear(f)
    for g in gs:
        require_linear(g)
    n = arity(f)
    if len(gs) != n:
        raise ArityMismatchError(f"arity {n} term composed with {len(gs)} arguments")
    replacements = {}
    offset = 0
    for i, g in enumerate(gs, start=1):
        replacements[i] = _shift(g, offset)
        offset += arity(g)
    out = graft(f, replacements)
    assert is_linear(out)
    return out


def act_term(sigma: Permutation, t: Term) -> Term:
    """Relabel each leaf j as sigma(j); the left action of S_n on arity-n terms."""
    require_linear(t)
    if sigma.degree != arity(t):
        raise ArityMismatchError(f"degree {sigma.degree} action on arity {arity(t)} term")

    def relabel(u: Term) -> Term:
        if isinstance(u, Leaf):
            return Leaf(sigma(u.label))
        return Node(u.symbol, tuple(relabel(c) for c in u.children))

    out = relabel(t)
    assert is_linear(out)
    return out


# ---------------------------------------------------------------------------
# Enumeration

def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _structure_key(t: Term):
    if isinstance(t, Leaf):
        return (0,)
    return (1, t.symbol.name, t.symbol.arity, tuple(_structure_key(c) for c in t.children))


@lru_cache(maxsize=None)
def _shapes(symbols: tuple[Symbol, ...], n: int, nodes: int) -> tuple[Term, ...]:
    """Planar shapes with exactly ``nodes`` symbol nodes and leaves labeled by
    planar position 1..n."""
    if nodes == 0:
        return (Leaf(1),) if n == 1 else ()
    found = []
    for sym in sorted(symbols, key=lambda s: (s.name, s.arity)):
        m = sym.arity
        for arities in _compositions(n, m):
            for budgets in _compositions(nodes - 1, m):
                child_pools = [_shapes(symbols, arities[j], budgets[j]) for j in range(m)]
                for children in itertools.product(*child_pools):
                    shifted, offset = [], 0
                    for j, c in enumerate(children):
                        shifted.append(_shift(c, offset))
                        offset += arities[j]
                    found.append(Node(sym, tuple(shifted)))
    return tuple(found)


def enumerate_terms(symbols: Sequence[Symbol], n: int, max_nodes: int) -> Iterator[Term]:
    """All linear terms of arity n with at most ``max_nodes`` symbol nodes.

    Deterministic order: node count first, then shapes lexicographically by
    (root symbol name, children recursively), then leaf labelings in
    lexicographic order of the label word. Section choice depends on this
    order staying fixed.
    """
    symbols = tuple(symbols)
    for nodes in range(max_nodes + 1):
        for shape in sorted(_shapes(symbols, n, nodes), key=_structure_key):
            for word in itertools.permutations(range(1, n + 1)):
                yield act_term(Permutation(word), shape)


def random_term(rng: random.Random, symbols: Sequence[Symbol], n: int,
                max_nodes: int = 8) -> Term:
    """A random linear term of arity n, with roughly ``max_nodes`` nodes.

    Needs a nullary symbol to realize arity 0 (and to pad splits wider than
    the label count), and a symbol of arity >= 2 to realize arity >= 2.
    """
    symbols = tuple(symbols)
    nullary = [s for s in symbols if s.arity == 0]
    positive = [s for s in symbols if s.arity > 0]

    def build(labels: tuple[int, ...], budget: int, fuel: int) -> Term:
        L = len(labels)
        if L == 0:
            if not nullary:
                raise ArityMismatchError("no nullary symbol to realize arity 0")
            return Node(rng.choice(nullary), ())
        if L == 1 and (budget <= 0 or not positive or rng.random() < 0.5):
            return Leaf(labels[0])
        if L == 1:
            splitters = [s for s in positive if s.arity == 1 or nullary]
            if not splitters:
                return Leaf(labels[0])
        else:
            splitters = [s for s in positive if s.arity >= 2 and (nullary or s.arity <= L)]
            if not splitters:
                raise ArityMismatchError(f"signature cannot split {L} labels")
        sym = rng.choice(splitters)
        m = sym.arity
        shuffled = list(labels)
        rng.shuffle(shuffled)
        # Partition the labels into m ordered parts. Out of fuel, spread them
        # one per part so every branch strictly shrinks and recursion ends.
        if fuel <= 0 or (2 <= m <= L and budget <= 0):
            cuts = list(range(1, min(m, L))) + [L] * (m - min(m, L))
        elif 2 <= m <= L and not nullary:
            cuts = sorted(rng.sample(range(1, L), m - 1))
        else:
            cuts = sorted(rng.randint(0, L) for _ in range(m - 1))
        parts, prev = [], 0
        for cut in list(cuts) + [L]:
            parts.append(tuple(shuffled[prev:cut]))
            prev = cut
        parts = parts[:m]
        share = max(0, (budget - 1) // m)
        return Node(sym, tuple(build(part, share, fuel - 1) for part in parts))

    if n == 0 and not nullary:
        raise ArityMismatchError("no nullary symbol to realize arity 0")
    t = build(tuple(range(1, n + 1)), max_nodes, max_nodes + 2 * n + 4)
    require_linear(t)
    return t


# ---------------------------------------------------------------------------
# Evaluation

def eval_term(assign: Mapping[Symbol, object], t: Term, P: EffectiveOperad):
    """The free extension of ``assign``: evaluate a linear term in ``P``.

    Structurally: evaluate the underlying planar shape (leaves become the
    unit, nodes compose), then act by the permutation that restores the
    term's leaf labels. Evaluation is a symmetric operad morphism from the
    terms to ``P``; the suite checks this rather than trusting the formula.
    """
    require_linear(t)

    def shape_eval(u: Term):
        if isinstance(u, Leaf):
            return P.unit
        try:
            head = assign[u.symbol]
        except KeyError:
            raise UnassignedSymbolError(f"symbol {u.symbol} has no assignment") from None
        if P.arity_of(head) != u.symbol.arity:
            raise ArityMismatchError(
                f"assignment for {u.symbol} has arity {P.arity_of(head)}")
        return P.compose(head, tuple(shape_eval(c) for c in u.children))

    return P.act(Permutation(leaf_labels(t)), shape_eval(t))


def free_operad(symbols: Sequence[Symbol], depth_cap: int = 3,
                name: str | None = None) -> EffectiveOperad:
    """The terms over ``symbols`` packaged as an effective operad.

    Carriers enumerate terms with at most ``depth_cap`` nodes; composition and
    action may leave that range, which is fine for law checking.
    """
    symbols = tuple(symbols)
    return EffectiveOperad(
        name=name or "free(" + ",".join(str(s) for s in symbols) + ")",
        unit=unit_term(),
        arity_of=arity,
        compose_raw=lambda f, gs: compose_terms(f, gs),
        act_raw=lambda sigma, t: act_term(sigma, t),
        carrier_raw=lambda n: tuple(enumerate_terms(symbols, n, depth_cap)),
    )


# ---------------------------------------------------------------------------
# Text form

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|\(|\)|,)")
_LEAF = re.compile(r"x([0-9]+)$")


def format_term(t: Term) -> str:
    """One-line text form: leaves are ``xN``, nodes ``name(child, ..)``."""
    if isinstance(t, Leaf):
        return f"x{t.label}"
    return f"{t.symbol.name}(" + ", ".join(format_term(c) for c in t.children) + ")"


class _Parser:
    def __init__(self, text: str, symbols: Mapping[str, Symbol] | None):
        self.text = text
        self.pos = 0
        self.symbols = symbols

    def error(self, message: str):
        raise TermSyntaxError(message, self.pos)

    def next_token(self) -> str | None:
        match = _TOKEN.match(self.text, self.pos)
        if match is None:
            rest = self.text[self.pos:].strip()
            if rest:
                self.error(f"unexpected character {rest[0]!r}")
            return None
        self.pos = match.end()
        return match.group(1)

    def peek(self) -> str | None:
        match = _TOKEN.match(self.text, self.pos)
        return match.group(1) if match else None

    def parse(self) -> Term:
        t = self.term()
        if self.peek() is not None or self.text[self.pos:].strip():
            self.error("trailing input after term")
        return t

    def term(self) -> Term:
        tok = self.next_token()
        if tok is None:
            self.error("expected a term")
        if tok in {"(", ")", ","}:
            self.error(f"expected a term, found {tok!r}")
        leaf = _LEAF.match(tok)
        if leaf and self.peek() != "(":
            return Leaf(int(leaf.group(1)))
        if self.next_token() != "(":
            self.error(f"expected '(' after symbol {tok!r}")
        children: list[Term] = []
        if self.peek() == ")":
            self.next_token()
        else:
            while True:
                children.append(self.term())
                sep = self.next_token()
                if sep == ")":
                    break
                if sep != ",":
                    self.error("expected ',' or ')'")
        if self.symbols is not None:
            sym = self.symbols.get(tok)
            if sym is None or sym.arity != len(children):
                self.error(f"unknown symbol {tok}/{len(children)}")
        else:
            sym = Symbol(tok, len(children))
        return Node(sym, tuple(children))


def parse_term(src: str, symbols: Sequence[Symbol] | None = None) -> Term:
    """Parse the text form; raises :class:`TermSyntaxError` with a position or
    :class:`LinearityError` when the leaf labels are not a bijection.

    With ``symbols`` given, node names must match a declared symbol of the
    same arity; otherwise arities are inferred from the child count.
    """
    table = None
    if symbols is not None:
        table = {s.name: s for s in symbols}
    t = _Parser(src, table).parse()
    require_linear(t)
    return t


def symbols_to_json(symbols: Sequence[Symbol]) -> dict:
    return {"symbols": [{"name": s.name, "arity": s.arity} for s in symbols]}


def symbols_from_json(doc: dict) -> tuple[Symbol, ...]:
    return tuple(Symbol(entry["name"], entry["arity"]) for entry in doc["symbols"])

"""Decidable symmetric operads.

An :class:`EffectiveOperad` is an oracle presentation: elements with decidable
equality, a computable composition, a unit, and left symmetric-group actions,
with carriers enumerable arity by arity (possibly up to a cap). The module
ships the terminal operad and endomorphism operads of finite sets, plus
executable checkers for the operad axioms and for morphisms.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterator, Sequence

from .errors import ArityMismatchError, OperadError
from .perms import Permutation, all_permutations, block_permutation, direct_sum, identity
from .report import CheckItem, Report

Element = Any


@dataclass(frozen=True)
class EffectiveOperad:
    """A symmetric operad with computable structure maps.

    ``carrier_raw(n)`` enumerates the arity-n elements (up to ``arity_cap``
    when one is declared); equality of elements is plain ``==`` and elements
    must be hashable. All structure maps are pure; instances are immutable
    and safe to share between threads.
    """

    name: str
    unit: Element
    arity_of: Callable[[Element], int]
    compose_raw: Callable[[Element, tuple[Element, ...]], Element]
    act_raw: Callable[[Permutation, Element], Element]
    carrier_raw: Callable[[int], Sequence[Element]] | None = None
    arity_cap: int | None = None

    def carrier(self, n: int) -> tuple[Element, ...]:
        if self.carrier_raw is None:
            raise OperadError(f"operad {self.name} has no enumerable carriers")
        if self.arity_cap is not None and n > self.arity_cap:
            raise OperadError(f"operad {self.name} enumerable only up to arity {self.arity_cap}")
        return tuple(self.carrier_raw(n))

    def compose(self, p: Element, qs: Sequence[Element]) -> Element:
        qs = tuple(qs)
        if self.arity_of(p) != len(qs):
            raise ArityMismatchError(
                f"{self.name}: arity {self.arity_of(p)} element composed with {len(qs)} arguments")
        out = self.compose_raw(p, qs)
        assert self.arity_of(out) == sum(self.arity_of(q) for q in qs)
        return out

    def act(self, sigma: Permutation, p: Element) -> Element:
        if sigma.degree != self.arity_of(p):
            raise ArityMismatchError(
                f"{self.name}: degree {sigma.degree} action on arity {self.arity_of(p)} element")
        out = self.act_raw(sigma, p)
        assert self.arity_of(out) == self.arity_of(p)
        return out


# ---------------------------------------------------------------------------
# Built-in instances


@dataclass(frozen=True)
class Star:
    """The unique arity-n element of the terminal operad."""

    arity: int

    def __str__(self) -> str:
        return f"*{self.arity}"


def terminal_operad() -> EffectiveOperad:
    """The terminal symmetric operad: one element per arity."""
    return EffectiveOperad(
        name="terminal",
        unit=Star(1),
        arity_of=lambda p: p.arity,
        compose_raw=lambda p, qs: Star(sum(q.arity for q in qs)),
        act_raw=lambda sigma, p: p,
        carrier_raw=lambda n: (Star(n),),
    )


@dataclass(frozen=True)
class TableFun:
    """A function base^arity -> base stored as a full value table.

    ``table`` lists the value at every argument tuple, argument tuples in
    lexicographic order of base indices. Equality is extensional.
    """

    base: tuple
    arity: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != len(self.base) ** self.arity:
            raise ValueError("table size does not match base^arity")

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self.base)}

    def __call__(self, *args):
        if len(args) != self.arity:
            raise ArityMismatchError(f"expected {self.arity} arguments, got {len(args)}")
        pos = 0
        for a in args:
            pos = pos * len(self.base) + self._index[a]
        return self.table[pos]

    @classmethod
    def from_callable(cls, base: Sequence, arity: int, fn: Callable) -> "TableFun":
        base = tuple(base)
        table = tuple(fn(*args) for args in itertools.product(base, repeat=arity))
        return cls(base, arity, table)

    def __str__(self) -> str:
        return f"fun/{self.arity}{list(self.table)}"


def _end_compose(f: TableFun, gs: tuple[TableFun, ...]) -> TableFun:
    def composite(*args):
        vals = []
        pos = 0
        for g in gs:
            vals.append(g(*args[pos:pos + g.arity]))
            pos += g.arity
        return f(*vals)

    return TableFun.from_callable(f.base, sum(g.arity for g in gs), composite)


def _end_act(sigma: Permutation, f: TableFun) -> TableFun:
    return TableFun.from_callable(
        f.base, f.arity, lambda *args: f(*(args[sigma(i) - 1] for i in range(1, f.arity + 1))))


def end_operad(base: Sequence) -> EffectiveOperad:
    """The endomorphism operad of a finite set: carrier(n) = all base^n -> base.

    The left action is pinned to ``act(s, f)(a_1..a_n) = f(a_s(1), .., a_s(n))``;
    this is the direction that satisfies the left-action law under this
    package's composition convention.
    """
    from functools import lru_cache

    base = tuple(base)

    def carrier(n: int):
        for table in itertools.product(base, repeat=len(base) ** n):
            yield TableFun(base, n, table)

    # Axiom sweeps recompute the same small tables constantly; memoize.
    compose_cached = lru_cache(maxsize=200_000)(_end_compose)
    act_cached = lru_cache(maxsize=200_000)(lambda s, f: _end_act(s, f))

    return EffectiveOperad(
        name=f"End({list(base)})",
        unit=TableFun.from_callable(base, 1, lambda a: a),
        arity_of=lambda f: f.arity,
        compose_raw=compose_cached,
        act_raw=act_cached,
        carrier_raw=lambda n: tuple(carrier(n)),
    )


# ---------------------------------------------------------------------------
# Morphisms and algebras


@dataclass(frozen=True)
class OperadMorphism:
    """An arity-indexed map of operads; the checker verifies the squares."""

    name: str
    source: EffectiveOperad
    target: EffectiveOperad
    map_raw: Callable[[int, Element], Element]

    def map(self, n: int, p: Element) -> Element:
        if self.source.arity_of(p) != n:
            raise ArityMismatchError(f"{self.name}: element is not of arity {n}")
        return self.map_raw(n, p)


def identity_morphism(P: EffectiveOperad) -> OperadMorphism:
    return OperadMorphism(f"id[{P.name}]", P, P, lambda n, p: p)


def morphism_to_terminal(P: EffectiveOperad) -> OperadMorphism:
    """The unique arity-wise map into the terminal operad."""
    return OperadMorphism(f"!{P.name}", P, terminal_operad(), lambda n, p: Star(n))


@dataclass(frozen=True)
class FiniteAlgebra:
    """An operad action on a finite set: h(p, args) with args over ``carrier``."""

    operad: EffectiveOperad
    carrier: tuple
    action: Callable[[Element, tuple], Any]


def algebra_as_morphism(alg: FiniteAlgebra) -> OperadMorphism:
    """Repackage the action as a morphism into End(carrier).

    Running :func:`check_morphism` on the result is exactly the check of the
    algebra axioms.
    """
    end = end_operad(alg.carrier)

    def to_table(n: int, p: Element) -> TableFun:
        return TableFun.from_callable(alg.carrier, n, lambda *args: alg.action(p, args))

    return OperadMorphism(f"algebra[{len(alg.carrier)}]", alg.operad, end, to_table)


# ---------------------------------------------------------------------------
# Axiom checking


@dataclass(frozen=True)
class AxiomBudget:
    """Bounds for the axiom checkers.

    The law families are schemas over all arities, so checking is always
    relative to a budget: an exhaustive pass over carriers of arity at most
    ``arity_cap`` (with composites pruned to ``result_cap``), plus
    ``random_cases`` seeded random instances drawn with arities up to
    ``random_arity_cap``.
    """

    arity_cap: int = 2
    result_cap: int = 4
    random_cases: int = 0
    random_arity_cap: int = 4
    seed: int = 0


def _pools(P: EffectiveOperad, arity_cap: int) -> dict[int, tuple[Element, ...]]:
    cap = arity_cap
    if P.arity_cap is not None:
        cap = min(cap, P.arity_cap)
    return {n: P.carrier(n) for n in range(cap + 1)}


def _element_tuples(pools: dict[int, tuple], count: int, total_cap: int) -> Iterator[tuple]:
    """All tuples of ``count`` elements with total arity at most ``total_cap``."""
    if count == 0:
        yield ()
        return
    for k, pool in pools.items():
        if k > total_cap:
            continue
        for head in pool:
            for tail in _element_tuples(pools, count - 1, total_cap - k):
                yield (head,) + tail


def _random_element(rng: random.Random, pools: dict[int, tuple], max_arity: int):
    arities = [n for n, pool in pools.items() if pool and n <= max_arity]
    n = rng.choice(arities)
    return rng.choice(pools[n])


class _LawChecker:
    def __init__(self):
        self.items: list[CheckItem] = []

    def run(self, law: str, instances: Iterator[tuple[bool, str]]):
        checked = 0
        for ok, witness in instances:
            checked += 1
            if not ok:
                self.items.append(CheckItem(law, False, checked, witness))
                return
        self.items.append(CheckItem(law, True, checked))


def check_operad_axioms(P: EffectiveOperad, budget: AxiomBudget = AxiomBudget()) -> Report:
    """Check units, associativity, the left-action law, and both equivariance
    squares, within the budget. Failures are report entries with a witness."""
    from .perms import compose as pcompose

    pools = _pools(P, budget.arity_cap)
    checker = _LawChecker()

    def elements(law: str):
        for pool in pools.values():
            yield from pool
        rng = random.Random(f"{budget.seed}:{law}")
        for _ in range(budget.random_cases):
            yield _random_element(rng, pools, budget.random_arity_cap)

    def unit_instances():
        for p in elements("unit"):
            n = P.arity_of(p)
            left = P.compose(P.unit, (p,))
            right = P.compose(p, (P.unit,) * n)
            yield left == p, None if left == p else f"1 . {p} = {left}"
            yield right == p, None if right == p else f"{p} . (1,..,1) = {right}"

    checker.run("unit laws", unit_instances())

    def assoc_case(f, gs, hss):
        inner = tuple(P.compose(g, hs) for g, hs in zip(gs, hss))
        lhs = P.compose(f, inner)
        flat = tuple(h for hs in hss for h in hs)
        rhs = P.compose(P.compose(f, gs), flat)
        ok = lhs == rhs
        return ok, None if ok else f"f={f} g*={list(gs)} h**={[list(h) for h in hss]}"

    def assoc_instances():
        for f in elements("assoc"):
            n = P.arity_of(f)
            if n > budget.result_cap:
                continue
            for gs in _element_tuples(pools, n, budget.result_cap):
                k_total = sum(P.arity_of(g) for g in gs)
                for flat_h in _element_tuples(pools, k_total, budget.result_cap):
                    hss, pos = [], 0
                    for g in gs:
                        k = P.arity_of(g)
                        hss.append(flat_h[pos:pos + k])
                        pos += k
                    yield assoc_case(f, gs, tuple(hss))
        rng = random.Random(f"{budget.seed}:assoc-random")
        for _ in range(budget.random_cases):
            f = _random_element(rng, pools, budget.random_arity_cap)
            gs = tuple(_random_element(rng, pools, budget.random_arity_cap)
                       for _ in range(P.arity_of(f)))
            hss = tuple(tuple(_random_element(rng, pools, budget.random_arity_cap)
                              for _ in range(P.arity_of(g))) for g in gs)
            yield assoc_case(f, gs, hss)

    checker.run("associativity", assoc_instances())

    def action_group_instances():
        for p in elements("action"):
            n = P.arity_of(p)
            ok = P.act(identity(n), p) == p
            yield ok, None if ok else f"id . {p}"
            for s in all_permutations(n):
                for t in all_permutations(n):
                    lhs = P.act(pcompose(s, t), p)
                    rhs = P.act(s, P.act(t, p))
                    ok = lhs == rhs
                    yield ok, None if ok else f"(s t).p vs s.(t.p) at s={s} t={t} p={p}"

    checker.run("left action", action_group_instances())

    def equivariance_outer():
        for f in elements("equi-outer"):
            n = P.arity_of(f)
            if n > budget.result_cap:
                continue
            for s in all_permutations(n):
                for gs in _element_tuples(pools, n, budget.result_cap):
                    lhs = P.compose(P.act(s, f), gs)
                    gs_p = tuple(gs[s(i) - 1] for i in range(1, len(gs) + 1))
                    ks_p = [P.arity_of(g) for g in gs_p]
                    rhs = P.act(block_permutation(s, ks_p), P.compose(f, gs_p))
                    ok = lhs == rhs
                    yield ok, None if ok else f"s={s} f={f} g*={list(gs)}"

    checker.run("equivariance (outer)", equivariance_outer())

    def equivariance_inner():
        for f in elements("equi-inner"):
            n = P.arity_of(f)
            if n > budget.result_cap:
                continue
            for gs in _element_tuples(pools, n, budget.result_cap):
                tau_space = [list(all_permutations(P.arity_of(g))) for g in gs]
                for taus in itertools.product(*tau_space):
                    lhs = P.compose(f, tuple(P.act(t, g) for t, g in zip(taus, gs)))
                    rhs = P.act(direct_sum(taus), P.compose(f, gs))
                    ok = lhs == rhs
                    yield ok, None if ok else f"f={f} taus={[str(t) for t in taus]} g*={list(gs)}"

    checker.run("equivariance (inner)", equivariance_inner())

    return Report(f"operad axioms for {P.name}", tuple(checker.items))


def check_morphism(m: OperadMorphism, budget: AxiomBudget = AxiomBudget()) -> Report:
    """Check unit preservation, the composition square, and the action square."""
    pools = _pools(m.source, budget.arity_cap)
    checker = _LawChecker()

    unit_img = m.map(1, m.source.unit)
    checker.items.append(CheckItem(
        "unit preservation", unit_img == m.target.unit, 1,
        None if unit_img == m.target.unit else f"f(1) = {unit_img}"))

    def elements(law: str):
        for pool in pools.values():
            yield from pool
        rng = random.Random(f"{budget.seed}:{law}")
        for _ in range(budget.random_cases):
            yield _random_element(rng, pools, budget.random_arity_cap)

    def composition_square():
        for f in elements("compose"):
            n = m.source.arity_of(f)
            if n > budget.result_cap:
                continue
            for gs in _element_tuples(pools, n, budget.result_cap):
                total = sum(m.source.arity_of(g) for g in gs)
                lhs = m.map(total, m.source.compose(f, gs))
                rhs = m.target.compose(
                    m.map(n, f), tuple(m.map(m.source.arity_of(g), g) for g in gs))
                ok = lhs == rhs
                yield ok, None if ok else f"f={f} g*={list(gs)}"

    checker.run("composition square", composition_square())

    def action_square():
        for p in elements("action"):
            n = m.source.arity_of(p)
            for s in all_permutations(n):
                lhs = m.map(n, m.source.act(s, p))
                rhs = m.target.act(s, m.map(n, p))
                ok = lhs == rhs
                yield ok, None if ok else f"s={s} p={p}"

    checker.run("action square", action_square())

    return Report(f"morphism {m.name}", tuple(checker.items))


# ---------------------------------------------------------------------------
# JSON interchange for finite operads

def operad_to_json(P: EffectiveOperad, arity_cap: int) -> dict:
    """Serialize carriers and structure tables up to ``arity_cap``.

    Elements are referred to by generated names; composition tables are
    nested arrays indexed by (operation, argument..) carrier positions in
    lexicographic order, one table per arity profile.
    """
    carriers = [P.carrier(n) for n in range(arity_cap + 1)]
    names: dict[Any, str] = {}
    for n, pool in enumerate(carriers):
        for i, p in enumerate(pool):
            names.setdefault(p, f"p{n}.{i}")

    def profile_table(n: int, ks: tuple[int, ...]):
        def for_args(f, picked, remaining):
            if not remaining:
                return names[P.compose(f, picked)]
            return [for_args(f, picked + (g,), remaining[1:]) for g in carriers[remaining[0]]]

        return [for_args(f, (), ks) for f in carriers[n]]

    compositions = []
    for n in range(arity_cap + 1):
        for ks in itertools.product(range(arity_cap + 1), repeat=n):
            if sum(ks) > arity_cap:
                continue
            compositions.append({
                "arity": n,
                "argument_arities": list(ks),
                "table": profile_table(n, tuple(ks)),
            })

    actions = []
    for n in range(arity_cap + 1):
        for s in all_permutations(n):
            actions.append({
                "degree": n,
                "permutation": list(s.images),
                "table": [names[P.act(s, p)] for p in carriers[n]],
            })

    return {
        "name": P.name,
        "arity_cap": arity_cap,
        "carriers": [[names[p] for p in pool] for pool in carriers],
        "unit": names[P.unit],
        "composition": compositions,
        "actions": actions,
    }


@dataclass(frozen=True)
class NamedElement:
    """An element of a deserialized operad, identified by name."""

    name: str
    arity: int

    def __str__(self) -> str:
        return self.name


def operad_from_json(doc: dict) -> EffectiveOperad:
    """Rebuild a finite operad from :func:`operad_to_json` output."""
    cap = doc["arity_cap"]
    carriers = [tuple(NamedElement(name, n) for name in pool)
                for n, pool in enumerate(doc["carriers"])]
    by_name = {p.name: p for pool in carriers for p in pool}
    index = {p: i for pool in carriers for i, p in enumerate(pool)}

    compose_table: dict[tuple, NamedElement] = {}
    for entry in doc["composition"]:
        n, ks = entry["arity"], tuple(entry["argument_arities"])

        def walk(node, f, picked):
            if len(picked) == len(ks):
                compose_table[(f,) + tuple(picked)] = by_name[node]
                return
            k = ks[len(picked)]
            for g, sub in zip(carriers[k], node):
                walk(sub, f, picked + [g])

        for f, node in zip(carriers[n], entry["table"]):
            walk(node, f, [])

    act_table: dict[tuple, NamedElement] = {}
    for entry in doc["actions"]:
        images = tuple(entry["permutation"])
        for p, out in zip(carriers[entry["degree"]], entry["table"]):
            act_table[(images, p)] = by_name[out]

    def compose_raw(f, gs):
        try:
            return compose_table[(f,) + tuple(gs)]
        except KeyError:
            raise OperadError(
                f"composition outside serialized tables (cap {cap}): {f} . {list(gs)}") from None

    def act_raw(sigma, p):
        try:
            return act_table[(sigma.images, p)]
        except KeyError:
            raise OperadError(f"action outside serialized tables: {sigma} . {p}") from None

    return EffectiveOperad(
        name=doc.get("name", "json-operad"),
        unit=by_name[doc["unit"]],
        arity_of=lambda p: p.arity,
        compose_raw=compose_raw,
        act_raw=act_raw,
        carrier_raw=lambda n: carriers[n],
        arity_cap=cap,
    )

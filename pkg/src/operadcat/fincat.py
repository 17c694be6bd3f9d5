"""Finite categories and symmetric monoidal structure on them.

Everything here is desk-scale: categories are given by explicit hom sets and
composition tables (validated exhaustively at construction), functors of
several arguments are lazy callables that may be partial (a tensor can be
undefined past a size cap, as in the bounded permutation groupoid), and all
diagram checks quantify over the instances whose every intermediate stays
defined, reporting how many were checked.

The two translations live here as well: ``smc_to_qalgebra`` turns a symmetric
monoidal structure into an action of the term trees over {e, dot} (objects of
terms act by evaluating with the tensor, arrows act by the canonical map
obtained from rewriting both ends to a right-combed, unit-free normal form),
and ``qalgebra_to_smc`` reads the structure back off the six defining
terms/arrows. Round-trip checkers compare the results componentwise.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .categorify import CanonicalArrow
from .errors import ArityMismatchError, OperadError, UnassignedSymbolError
from .perms import Permutation
from .report import CheckItem, Report
from .signatures import DOT_SYMBOL, E_SYMBOL
from .terms import Leaf, Node, Term, arity, format_term

Obj = Any


@dataclass(frozen=True)
class Arrow:
    src: Obj
    dst: Obj
    name: Any

    def __str__(self) -> str:
        return f"{self.name}:{self.src}->{self.dst}"


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category: explicit arrows, identities, composition table.

    ``comp[(g, f)]`` is g-after-f, defined exactly for ``f.dst == g.src``.
    Use :meth:`build` to validate the laws once at construction.
    """

    name: str
    objects: tuple
    arrows: tuple[Arrow, ...]
    identities: Mapping[Obj, Arrow]
    comp: Mapping[tuple[Arrow, Arrow], Arrow]

    @classmethod
    def build(cls, name: str, objects: Sequence, arrows: Sequence[Arrow],
              identities: Mapping[Obj, Arrow],
              comp: Mapping[tuple[Arrow, Arrow], Arrow]) -> "FinCategory":
        cat = cls(name, tuple(objects), tuple(arrows), dict(identities), dict(comp))
        cat._validate()
        return cat

    def _validate(self) -> None:
        arrow_set = set(self.arrows)
        for a in self.objects:
            ident = self.identities.get(a)
            if ident is None or ident.src != a or ident.dst != a:
                raise OperadError(f"{self.name}: object {a} lacks an identity arrow")
        for f in self.arrows:
            if f.src not in self.objects or f.dst not in self.objects:
                raise OperadError(f"{self.name}: arrow {f} has unknown endpoints")
        for g in self.arrows:
            for f in self.arrows:
                if f.dst != g.src:
                    if (g, f) in self.comp:
                        raise OperadError(f"{self.name}: spurious composite {g} . {f}")
                    continue
                gf = self.comp.get((g, f))
                if gf is None or gf not in arrow_set or gf.src != f.src or gf.dst != g.dst:
                    raise OperadError(f"{self.name}: bad composite {g} . {f} = {gf}")
        for f in self.arrows:
            if self.comp[(f, self.identities[f.src])] != f or \
               self.comp[(self.identities[f.dst], f)] != f:
                raise OperadError(f"{self.name}: identity laws fail at {f}")
        for h in self.arrows:
            for g in self.arrows:
                if g.dst != h.src:
                    continue
                for f in self.arrows:
                    if f.dst != g.src:
                        continue
                    if self.comp[(self.comp[(h, g)], f)] != self.comp[(h, self.comp[(g, f)])]:
                        raise OperadError(
                            f"{self.name}: associativity fails at {h} . {g} . {f}")

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        return self.comp[(g, f)]

    def identity(self, a: Obj) -> Arrow:
        return self.identities[a]

    def hom(self, a: Obj, b: Obj) -> tuple[Arrow, ...]:
        return self._hom.get((a, b), ())

    @cached_property
    def _hom(self) -> dict:
        table: dict[tuple, list] = {}
        for f in self.arrows:
            table.setdefault((f.src, f.dst), []).append(f)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def _inverses(self) -> dict:
        table = {}
        for f in self.arrows:
            for g in self.hom(f.dst, f.src):
                if self.comp[(g, f)] == self.identities[f.src] and \
                   self.comp[(f, g)] == self.identities[f.dst]:
                    table[f] = g
                    break
        return table

    def inverse(self, f: Arrow) -> Arrow | None:
        return self._inverses.get(f)


@dataclass(frozen=True, eq=False)
class MultiFunctor:
    """A (possibly partial) functor cat^arity -> cat, given by lazy callables
    returning None where undefined."""

    cat: FinCategory
    arity: int
    obj_fn: Callable[[tuple], Obj | None]
    arr_fn: Callable[[tuple], Arrow | None]

    def obj(self, objs: Sequence) -> Obj | None:
        objs = tuple(objs)
        if len(objs) != self.arity:
            raise ArityMismatchError(f"functor of arity {self.arity} given {len(objs)} objects")
        return self.obj_fn(objs)

    def arr(self, arrows: Sequence) -> Arrow | None:
        arrows = tuple(arrows)
        if len(arrows) != self.arity:
            raise ArityMismatchError(f"functor of arity {self.arity} given {len(arrows)} arrows")
        return self.arr_fn(arrows)

    @classmethod
    def from_tables(cls, cat: FinCategory, arity: int, obj_table: Mapping,
                    arr_table: Mapping) -> "MultiFunctor":
        return cls(cat, arity, lambda o: obj_table.get(o), lambda a: arr_table.get(a))


def projection_functor(cat: FinCategory, arity: int, index: int) -> MultiFunctor:
    return MultiFunctor(cat, arity, lambda o: o[index - 1], lambda a: a[index - 1])


def compose_functors(outer: MultiFunctor, inners: Sequence[MultiFunctor]) -> MultiFunctor:
    """Operadic composition of functors: feed consecutive argument blocks."""
    inners = tuple(inners)
    if len(inners) != outer.arity:
        raise ArityMismatchError("wrong number of inner functors")
    total = sum(g.arity for g in inners)

    def split(values):
        parts, pos = [], 0
        for g in inners:
            parts.append(tuple(values[pos:pos + g.arity]))
            pos += g.arity
        return parts

    def obj_fn(objs):
        mids = [g.obj(part) for g, part in zip(inners, split(objs))]
        if any(m is None for m in mids):
            return None
        return outer.obj(tuple(mids))

    def arr_fn(arrows):
        mids = [g.arr(part) for g, part in zip(inners, split(arrows))]
        if any(m is None for m in mids):
            return None
        return outer.arr(tuple(mids))

    return MultiFunctor(outer.cat, total, obj_fn, arr_fn)


def act_functor(sigma: Permutation, F: MultiFunctor) -> MultiFunctor:
    """The left symmetric action: read argument sigma(i) in slot i."""
    if sigma.degree != F.arity:
        raise ArityMismatchError("degree does not match functor arity")

    def permute(values):
        return tuple(values[sigma(i) - 1] for i in range(1, F.arity + 1))

    return MultiFunctor(F.cat, F.arity,
                        lambda o: F.obj(permute(o)), lambda a: F.arr(permute(a)))


@dataclass(frozen=True, eq=False)
class NatTrans:
    """Components indexed by object tuples, defined where present."""

    source: MultiFunctor
    target: MultiFunctor
    components: Mapping[tuple, Arrow]

    @property
    def arity(self) -> int:
        return self.source.arity


def operadic_compose_nats(cat: FinCategory, outer: NatTrans,
                          inners: Sequence[NatTrans]) -> NatTrans:
    """Compose component families the way the functors compose."""
    inners = tuple(inners)
    source = compose_functors(outer.source, tuple(nt.source for nt in inners))
    target = compose_functors(outer.target, tuple(nt.target for nt in inners))
    components = {}
    for objs in itertools.product(cat.objects, repeat=source.arity):
        pos = 0
        ok = True
        mids, comps = [], []
        for nt in inners:
            block = objs[pos:pos + nt.arity]
            pos += nt.arity
            comp = nt.components.get(block)
            mid = nt.target.obj(block)
            if comp is None or mid is None:
                ok = False
                break
            comps.append(comp)
            mids.append(mid)
        if not ok:
            continue
        outer_comp = outer.components.get(tuple(mids))
        routed = outer.source.arr(tuple(comps))
        if outer_comp is None or routed is None:
            continue
        components[objs] = cat.compose(outer_comp, routed)
    return NatTrans(source, target, components)


def act_nat(sigma: Permutation, nt: NatTrans) -> NatTrans:
    components = {}
    for objs in itertools.product(nt.source.cat.objects, repeat=nt.arity):
        permuted = tuple(objs[sigma(i) - 1] for i in range(1, nt.arity + 1))
        comp = nt.components.get(permuted)
        if comp is not None:
            components[objs] = comp
    return NatTrans(act_functor(sigma, nt.source), act_functor(sigma, nt.target), components)


# ---------------------------------------------------------------------------
# Symmetric monoidal structure


@dataclass(frozen=True, eq=False)
class SMCStructure:
    """A tensor, unit object, and the four structure families.

    Component dicts are keyed by object tuples: ``assoc[(A,B,C)]`` is the
    arrow A@(B@C) -> (A@B)@C, ``left_unit[(A,)]``: I@A -> A,
    ``right_unit[(A,)]``: A@I -> A, and ``swap[(A,B)]``: B@A -> A@B. A family
    may simply omit tuples where the bounded tensor is undefined.
    """

    name: str
    cat: FinCategory
    tensor: MultiFunctor
    unit: Obj
    assoc: Mapping[tuple, Arrow]
    left_unit: Mapping[tuple, Arrow]
    right_unit: Mapping[tuple, Arrow]
    swap: Mapping[tuple, Arrow]


def _leaf(i: int) -> Term:
    return Leaf(i)


def _dot(a: Term, b: Term) -> Term:
    return Node(DOT_SYMBOL, (a, b))


def _e() -> Term:
    return Node(E_SYMBOL, ())


PAIR_TERM = _dot(_leaf(1), _leaf(2))
ASSOC_SOURCE = _dot(_leaf(1), _dot(_leaf(2), _leaf(3)))
ASSOC_TARGET = _dot(_dot(_leaf(1), _leaf(2)), _leaf(3))
LEFT_UNIT_SOURCE = _dot(_e(), _leaf(1))
RIGHT_UNIT_SOURCE = _dot(_leaf(1), _e())
SWAP_SOURCE = _dot(_leaf(2), _leaf(1))


def term_functor(smc: SMCStructure, t: Term, ambient: int | None = None) -> MultiFunctor:
    """Evaluate a term over {e, dot} to a functor; leaf j reads argument j."""
    n = arity(t) if ambient is None else ambient
    obj_memo: dict[tuple, Obj | None] = {}
    arr_memo: dict[tuple, Arrow | None] = {}

    def eval_with(values, on_leaf, on_unit, on_pair, u: Term):
        if isinstance(u, Leaf):
            return on_leaf(values, u.label)
        if u.symbol == E_SYMBOL:
            return on_unit()
        if u.symbol == DOT_SYMBOL:
            a = eval_with(values, on_leaf, on_unit, on_pair, u.children[0])
            if a is None:
                return None
            b = eval_with(values, on_leaf, on_unit, on_pair, u.children[1])
            if b is None:
                return None
            return on_pair((a, b))
        raise UnassignedSymbolError(f"term functor only knows e and dot, got {u.symbol}")

    def obj_fn(objs):
        if objs not in obj_memo:
            obj_memo[objs] = eval_with(
                objs, lambda vs, j: vs[j - 1], lambda: smc.unit, smc.tensor.obj, t)
        return obj_memo[objs]

    def arr_fn(arrows):
        if arrows not in arr_memo:
            arr_memo[arrows] = eval_with(
                arrows, lambda vs, j: vs[j - 1],
                lambda: smc.cat.identity(smc.unit), smc.tensor.arr, t)
        return arr_memo[arrows]

    return MultiFunctor(smc.cat, n, obj_fn, arr_fn)


def _right_comb(labels: Sequence[int]) -> Term:
    if not labels:
        return _e()
    if len(labels) == 1:
        return _leaf(labels[0])
    return _dot(_leaf(labels[0]), _right_comb(labels[1:]))


def _term_labels(t: Term) -> tuple[int, ...]:
    if isinstance(t, Leaf):
        return (t.label,)
    out: tuple[int, ...] = ()
    for c in t.children:
        out += _term_labels(c)
    return out


class _Normalizer:
    """Rewrites a term to the right-combed, unit-free, label-ordered normal
    form, tracking the canonical natural transformation componentwise.

    Internal terms may carry arbitrary distinct labels below the ambient
    arity; components are built per ambient object tuple and dropped wherever
    the bounded tensor leaves an intermediate undefined.
    """

    def __init__(self, smc: SMCStructure, ambient: int):
        self.smc = smc
        self.ambient = ambient
        self.tuples = list(itertools.product(smc.cat.objects, repeat=ambient))
        self._values: dict[Term, list] = {}

    # -- object vectors -----------------------------------------------------

    def values(self, t: Term) -> list:
        """The object of t at every ambient tuple (None where undefined)."""
        if t in self._values:
            return self._values[t]
        if isinstance(t, Leaf):
            vec = [objs[t.label - 1] for objs in self.tuples]
        elif t.symbol == E_SYMBOL:
            vec = [self.smc.unit] * len(self.tuples)
        else:
            va, vb = self.values(t.children[0]), self.values(t.children[1])
            vec = [None if a is None or b is None else self.smc.tensor.obj((a, b))
                   for a, b in zip(va, vb)]
        self._values[t] = vec
        return vec

    # -- tracked transformations --------------------------------------------

    def ident(self, t: Term) -> "_Tracked":
        comps = {}
        for i, value in enumerate(self.values(t)):
            if value is not None:
                comps[i] = self.smc.cat.identity(value)
        return _Tracked(t, t, comps)

    def vert(self, second: "_Tracked", first: "_Tracked") -> "_Tracked":
        assert first.target == second.source
        comps = {}
        for i, f in first.comps.items():
            g = second.comps.get(i)
            if g is not None:
                comps[i] = self.smc.cat.compose(g, f)
        return _Tracked(first.source, second.target, comps)

    def tensor_pair(self, left: "_Tracked", right: "_Tracked") -> "_Tracked":
        comps = {}
        for i, f in left.comps.items():
            g = right.comps.get(i)
            if g is None:
                continue
            out = self.smc.tensor.arr((f, g))
            if out is not None:
                comps[i] = out
        return _Tracked(_dot(left.source, right.source),
                        _dot(left.target, right.target), comps)

    def family(self, source: Term, target: Term, table: Mapping,
               key_terms: Sequence[Term], inverse: bool = False) -> "_Tracked":
        """A structure-map instance: look up ``table`` at the objects of
        ``key_terms``, optionally inverted."""
        key_vectors = [self.values(k) for k in key_terms]
        comps = {}
        for i in range(len(self.tuples)):
            key = tuple(vec[i] for vec in key_vectors)
            if any(v is None for v in key):
                continue
            comp = table.get(key)
            if comp is None:
                continue
            if inverse:
                comp = self.smc.cat.inverse(comp)
                if comp is None:
                    continue
            comps[i] = comp
        return _Tracked(source, target, comps)

    # -- the normal-form rewrite ---------------------------------------------

    def canonical(self, t: Term) -> "_Tracked":
        if isinstance(t, Leaf) or t.symbol == E_SYMBOL:
            return self.ident(t)
        left, right = t.children
        u1, u2 = self.canonical(left), self.canonical(right)
        theta = self.tensor_pair(u1, u2)
        mu = self.merge(tuple(sorted(_term_labels(left))),
                        tuple(sorted(_term_labels(right))))
        return self.vert(mu, theta)

    def merge(self, left: tuple[int, ...], right: tuple[int, ...]) -> "_Tracked":
        """dot(rc(left), rc(right)) -> rc(left u right)."""
        lt, rt = _right_comb(left), _right_comb(right)
        if not left:
            # left unit: e . X -> X
            return self.family(_dot(lt, rt), rt, self.smc.left_unit, (rt,))
        if not right:
            return self.family(_dot(lt, rt), lt, self.smc.right_unit, (lt,))
        if len(left) == 1:
            return self.insert(left[0], right)
        head, rest = left[0], left[1:]
        rest_t = _right_comb(rest)
        # (x_h . rc(rest)) . rc(right) -> x_h . (rc(rest) . rc(right))
        step1 = self.family(
            _dot(_dot(_leaf(head), rest_t), rt), _dot(_leaf(head), _dot(rest_t, rt)),
            self.smc.assoc, (_leaf(head), rest_t, rt), inverse=True)
        inner = self.merge(rest, right)
        step2 = self.tensor_pair(self.ident(_leaf(head)), inner)
        merged = tuple(sorted(rest + right))
        if head < merged[0]:
            return self.vert(step2, step1)
        step3 = self.insert(head, merged)
        return self.vert(step3, self.vert(step2, step1))

    def insert(self, j: int, labels: tuple[int, ...]) -> "_Tracked":
        """x_j . rc(labels) -> rc(labels u {j}), labels nonempty and sorted."""
        lt = _right_comb(labels)
        if j < labels[0]:
            return self.ident(_dot(_leaf(j), lt))
        head, rest = labels[0], labels[1:]
        if not rest:
            # x_j . x_h -> x_h . x_j via the symmetry component at (h, j)
            return self.family(
                _dot(_leaf(j), _leaf(head)), _dot(_leaf(head), _leaf(j)),
                self.smc.swap, (_leaf(head), _leaf(j)))
        rest_t = _right_comb(rest)
        # x_j . (x_h . rc(rest)) -> (x_j . x_h) . rc(rest)
        step1 = self.family(
            _dot(_leaf(j), _dot(_leaf(head), rest_t)),
            _dot(_dot(_leaf(j), _leaf(head)), rest_t),
            self.smc.assoc, (_leaf(j), _leaf(head), rest_t))
        # (x_j . x_h) . rc(rest) -> (x_h . x_j) . rc(rest)
        swap = self.family(
            _dot(_leaf(j), _leaf(head)), _dot(_leaf(head), _leaf(j)),
            self.smc.swap, (_leaf(head), _leaf(j)))
        step2 = self.tensor_pair(swap, self.ident(rest_t))
        # (x_h . x_j) . rc(rest) -> x_h . (x_j . rc(rest))
        step3 = self.family(
            step2.target, _dot(_leaf(head), _dot(_leaf(j), rest_t)),
            self.smc.assoc, (_leaf(head), _leaf(j), rest_t), inverse=True)
        step4 = self.tensor_pair(self.ident(_leaf(head)), self.insert(j, rest))
        return self.vert(step4, self.vert(step3, self.vert(step2, step1)))

    def as_nat(self, tracked: "_Tracked") -> NatTrans:
        components = {self.tuples[i]: comp for i, comp in tracked.comps.items()}
        return NatTrans(term_functor(self.smc, tracked.source, self.ambient),
                        term_functor(self.smc, tracked.target, self.ambient),
                        components)


@dataclass(frozen=True)
class _Tracked:
    """A component family between two term functors, indexed by tuple position."""

    source: Term
    target: Term
    comps: dict


def canonical_nat(smc: SMCStructure, t: Term) -> NatTrans:
    """The canonical map from a term's functor to its normal form's functor."""
    norm = _Normalizer(smc, arity(t))
    return norm.as_nat(norm.canonical(t))


# ---------------------------------------------------------------------------
# Axiom checking


def _object_tuples(cat: FinCategory, n: int) -> Iterator[tuple]:
    return itertools.product(cat.objects, repeat=n)


def _arrow_tuples(cat: FinCategory, n: int, limit: int, seed: int) -> Iterator[tuple]:
    total = len(cat.arrows) ** n
    if total <= limit:
        yield from itertools.product(cat.arrows, repeat=n)
        return
    rng = random.Random(f"{seed}:arrow-tuples:{n}")
    for _ in range(limit):
        yield tuple(rng.choice(cat.arrows) for _ in range(n))


def _check_naturality(smc: SMCStructure, family: Mapping, source_term: Term,
                      target_term: Term, limit: int, seed: int):
    cat = smc.cat
    n = arity(source_term)
    F = term_functor(smc, source_term, n)
    G = term_functor(smc, target_term, n)
    checked = 0
    for fs in _arrow_tuples(cat, n, limit, seed):
        srcs = tuple(f.src for f in fs)
        dsts = tuple(f.dst for f in fs)
        c_src, c_dst = family.get(srcs), family.get(dsts)
        Ff, Gf = F.arr(fs), G.arr(fs)
        if None in (c_src, c_dst, Ff, Gf):
            continue
        checked += 1
        if cat.compose(Gf, c_src) != cat.compose(c_dst, Ff):
            return checked, f"naturality fails at arrows {[str(f) for f in fs]}"
    return checked, None


def _component_shapes(smc: SMCStructure, family: Mapping, source_term: Term,
                      target_term: Term):
    n = arity(source_term)
    F = term_functor(smc, source_term, n)
    G = term_functor(smc, target_term, n)
    checked = 0
    for objs, comp in family.items():
        checked += 1
        want_src, want_dst = F.obj(objs), G.obj(objs)
        if comp.src != want_src or comp.dst != want_dst:
            return checked, (f"component at {objs} is {comp}, expected "
                             f"{want_src} -> {want_dst}")
        if smc.cat.inverse(comp) is None:
            return checked, f"component at {objs} is not invertible"
    return checked, None


def check_smc_axioms(smc: SMCStructure, arrow_limit: int = 500_000,
                     seed: int = 0) -> Report:
    """Functoriality of the tensor, shapes/naturality/invertibility of the
    four families, pentagon, triangle, hexagon, and the symmetry involution.

    Object-indexed diagrams are checked exhaustively over all defined
    instances; arrow-indexed checks fall back to a seeded sample past
    ``arrow_limit``.
    """
    cat = smc.cat
    items = []

    def add(law, checked, witness):
        items.append(CheckItem(law, witness is None, checked, witness))

    checked, witness = 0, None
    for a, b in _object_tuples(cat, 2):
        out = smc.tensor.obj((a, b))
        if out is None:
            continue
        checked += 1
        got = smc.tensor.arr((cat.identity(a), cat.identity(b)))
        if got != cat.identity(out):
            witness = f"tensor of identities at ({a}, {b}) is {got}"
            break
    add("tensor preserves identities", checked, witness)

    composable = [(g, f) for g in cat.arrows for f in cat.arrows if f.dst == g.src]
    checked, witness = 0, None
    pair_stream: Iterable = itertools.product(composable, composable)
    if len(composable) ** 2 > arrow_limit:
        rng = random.Random(f"{seed}:tensor-composition")
        pair_stream = ((rng.choice(composable), rng.choice(composable))
                       for _ in range(arrow_limit))
    for (g1, f1), (g2, f2) in pair_stream:
        lhs_inner = smc.tensor.arr((cat.compose(g1, f1), cat.compose(g2, f2)))
        top = smc.tensor.arr((f1, f2))
        bottom = smc.tensor.arr((g1, g2))
        if lhs_inner is None or top is None or bottom is None:
            continue
        checked += 1
        if lhs_inner != cat.compose(bottom, top):
            witness = f"tensor of composites differs at ({g1} . {f1}, {g2} . {f2})"
            break
    add("tensor preserves composition", checked, witness)

    families = [
        ("associator", smc.assoc, ASSOC_SOURCE, ASSOC_TARGET),
        ("left unitor", smc.left_unit, LEFT_UNIT_SOURCE, _leaf(1)),
        ("right unitor", smc.right_unit, RIGHT_UNIT_SOURCE, _leaf(1)),
        ("symmetry", smc.swap, SWAP_SOURCE, PAIR_TERM),
    ]
    for label, family, src_term, tgt_term in families:
        add(f"{label} shapes and invertibility",
            *_component_shapes(smc, family, src_term, tgt_term))
        add(f"{label} naturality",
            *_check_naturality(smc, family, src_term, tgt_term, arrow_limit, seed))

    def tensor_id_left(obj, comp):
        return smc.tensor.arr((cat.identity(obj), comp))

    def tensor_id_right(comp, obj):
        return smc.tensor.arr((comp, cat.identity(obj)))

    checked, witness = 0, None
    for A, B, C, D in _object_tuples(cat, 4):
        a1 = smc.assoc.get((A, B, smc.tensor.obj((C, D)))) \
            if smc.tensor.obj((C, D)) is not None else None
        a2 = None
        ab = smc.tensor.obj((A, B))
        if ab is not None:
            a2 = smc.assoc.get((ab, C, D))
        inner = smc.assoc.get((B, C, D))
        bc = smc.tensor.obj((B, C))
        a3 = smc.assoc.get((A, bc, D)) if bc is not None else None
        a4 = smc.assoc.get((A, B, C))
        if None in (a1, a2, inner, a3, a4):
            continue
        left_leg = tensor_id_left(A, inner)
        right_leg = tensor_id_right(a4, D)
        if left_leg is None or right_leg is None:
            continue
        checked += 1
        path1 = cat.compose(a2, a1)
        path2 = cat.compose(right_leg, cat.compose(a3, left_leg))
        if path1 != path2:
            witness = f"pentagon fails at ({A}, {B}, {C}, {D})"
            break
    add("pentagon", checked, witness)

    checked, witness = 0, None
    for A, B in _object_tuples(cat, 2):
        a = smc.assoc.get((A, smc.unit, B))
        rho = smc.right_unit.get((A,))
        lam = smc.left_unit.get((B,))
        if None in (a, rho, lam):
            continue
        left_leg = tensor_id_right(rho, B)
        right_leg = tensor_id_left(A, lam)
        if left_leg is None or right_leg is None:
            continue
        checked += 1
        if cat.compose(left_leg, a) != right_leg:
            witness = f"triangle fails at ({A}, {B})"
            break
    add("triangle", checked, witness)

    def assoc_inv(key):
        comp = smc.assoc.get(key)
        return None if comp is None else cat.inverse(comp)

    checked, witness = 0, None
    for A, B, C in _object_tuples(cat, 3):
        bc = smc.tensor.obj((B, C))
        if bc is None:
            continue
        a1 = assoc_inv((A, B, C))
        c1 = smc.swap.get((bc, A))
        a2 = assoc_inv((B, C, A))
        c2 = smc.swap.get((B, A))
        a3 = assoc_inv((B, A, C))
        c3 = smc.swap.get((C, A))
        if None in (a1, c1, a2, c2, a3, c3):
            continue
        first = tensor_id_right(c2, C)
        last = tensor_id_left(B, c3)
        if first is None or last is None:
            continue
        checked += 1
        lhs = cat.compose(a2, cat.compose(c1, a1))
        rhs = cat.compose(last, cat.compose(a3, first))
        if lhs != rhs:
            witness = f"hexagon fails at ({A}, {B}, {C})"
            break
    add("hexagon", checked, witness)

    checked, witness = 0, None
    for A, B in _object_tuples(cat, 2):
        ab = smc.tensor.obj((A, B))
        c1 = smc.swap.get((B, A))
        c2 = smc.swap.get((A, B))
        if None in (ab, c1, c2):
            continue
        checked += 1
        if cat.compose(c2, c1) != cat.identity(ab):
            witness = f"symmetry involution fails at ({A}, {B})"
            break
    add("symmetry involution", checked, witness)

    return Report(f"monoidal axioms for {smc.name}", tuple(items))


# ---------------------------------------------------------------------------
# The two translations


@dataclass(frozen=True, eq=False)
class QAlgebraOnCat:
    """An action of the term trees over {e, dot} on a finite category."""

    cat: FinCategory
    object_action: Callable[[Term], MultiFunctor]
    arrow_action: Callable[[CanonicalArrow], NatTrans]


def smc_to_qalgebra(smc: SMCStructure) -> QAlgebraOnCat:
    """Terms act by evaluation with the tensor; arrows act by the canonical
    map between the two normal-form rewrites."""
    cache: dict[tuple[Term, int], Any] = {}

    def tracked(t: Term):
        key = (t, arity(t))
        if key not in cache:
            norm = _Normalizer(smc, arity(t))
            cache[key] = (norm, norm.canonical(t))
        return cache[key]

    def object_action(t: Term) -> MultiFunctor:
        return term_functor(smc, t, arity(t))

    def arrow_action(delta: CanonicalArrow) -> NatTrans:
        t1, t2 = delta.source, delta.target
        if arity(t1) != arity(t2):
            raise ArityMismatchError("arrow endpoints have different arities")
        norm1, fwd = tracked(t1)
        norm2, back = tracked(t2)
        cat = smc.cat
        components = {}
        for i, f in fwd.comps.items():
            g = back.comps.get(i)
            if g is None:
                continue
            g_inv = cat.inverse(g)
            if g_inv is None:
                continue
            components[norm1.tuples[i]] = cat.compose(g_inv, f)
        return NatTrans(object_action(t1), object_action(t2), components)

    return QAlgebraOnCat(smc.cat, object_action, arrow_action)


def qalgebra_to_smc(alg: QAlgebraOnCat, name: str | None = None) -> SMCStructure:
    """Read the monoidal structure off the six defining terms and arrows."""
    tensor = alg.object_action(PAIR_TERM)
    unit = alg.object_action(_e()).obj(())
    if unit is None:
        raise OperadError("the nullary term does not act on the empty tuple")

    def components(src: Term, tgt: Term) -> dict:
        return dict(alg.arrow_action(CanonicalArrow(src, tgt)).components)

    return SMCStructure(
        name=name or "extracted",
        cat=alg.cat,
        tensor=tensor,
        unit=unit,
        assoc=components(ASSOC_SOURCE, ASSOC_TARGET),
        left_unit=components(LEFT_UNIT_SOURCE, _leaf(1)),
        right_unit=components(RIGHT_UNIT_SOURCE, _leaf(1)),
        swap=components(SWAP_SOURCE, PAIR_TERM),
    )


def functors_agree(F: MultiFunctor, G: MultiFunctor, cat: FinCategory,
                   arrow_limit: int = 2000, seed: int = 0) -> str | None:
    """Pointwise comparison: all object tuples, bounded arrow tuples."""
    if F.arity != G.arity:
        return f"arities differ: {F.arity} vs {G.arity}"
    for objs in _object_tuples(cat, F.arity):
        if F.obj(objs) != G.obj(objs):
            return f"objects differ at {objs}: {F.obj(objs)} vs {G.obj(objs)}"
    for fs in _arrow_tuples(cat, F.arity, arrow_limit, seed):
        if F.arr(fs) != G.arr(fs):
            return f"arrows differ at {[str(f) for f in fs]}"
    return None


def roundtrip_smc(smc: SMCStructure) -> Report:
    """Extract-after-act: the reconstructed structure must equal the input
    componentwise."""
    back = qalgebra_to_smc(smc_to_qalgebra(smc), name=f"{smc.name}-roundtrip")
    items = []

    witness = functors_agree(smc.tensor, back.tensor, smc.cat)
    items.append(CheckItem("tensor", witness is None,
                           len(smc.cat.objects) ** 2, witness))
    items.append(CheckItem("unit object", smc.unit == back.unit, 1,
                           None if smc.unit == back.unit
                           else f"{smc.unit} vs {back.unit}"))
    for label, mine, theirs in [
        ("associator", smc.assoc, back.assoc),
        ("left unitor", smc.left_unit, back.left_unit),
        ("right unitor", smc.right_unit, back.right_unit),
        ("symmetry", smc.swap, back.swap),
    ]:
        same = dict(mine) == dict(theirs)
        witness = None
        if not same:
            keys = set(mine) | set(theirs)
            bad = next(k for k in keys if dict(mine).get(k) != dict(theirs).get(k))
            witness = (f"component at {bad}: {dict(mine).get(bad)} vs "
                       f"{dict(theirs).get(bad)}")
        items.append(CheckItem(label, same, len(dict(mine)), witness))
    return Report(f"structure round-trip on {smc.name}", tuple(items))


def roundtrip_qalgebra(alg: QAlgebraOnCat, sample_terms: Sequence[Term],
                       max_pairs: int = 40, arrow_limit: int = 400,
                       seed: int = 0) -> Report:
    """Act-after-extract: both actions must agree on the sampled terms and on
    canonical arrows between sampled equal-arity pairs."""
    back = smc_to_qalgebra(qalgebra_to_smc(alg))
    items = []

    checked, witness = 0, None
    for t in sample_terms:
        diff = functors_agree(alg.object_action(t), back.object_action(t),
                              alg.cat, arrow_limit, seed)
        checked += 1
        if diff is not None:
            witness = f"object action differs on {format_term(t)}: {diff}"
            break
    items.append(CheckItem("object actions", checked > 0 and witness is None,
                           checked, witness))

    by_arity: dict[int, list[Term]] = {}
    for t in sample_terms:
        by_arity.setdefault(arity(t), []).append(t)
    rng = random.Random(f"{seed}:pairs")
    pairs = []
    for pool in by_arity.values():
        everything = [(t1, t2) for t1 in pool for t2 in pool]
        rng.shuffle(everything)
        pairs.extend(everything[:max_pairs])

    checked, witness = 0, None
    for t1, t2 in pairs:
        delta = CanonicalArrow(t1, t2)
        mine = alg.arrow_action(delta)
        theirs = back.arrow_action(delta)
        checked += 1
        if dict(mine.components) != dict(theirs.components):
            keys = set(mine.components) | set(theirs.components)
            bad = next(k for k in keys
                       if dict(mine.components).get(k) != dict(theirs.components).get(k))
            witness = (f"arrow action differs on {format_term(t1)} -> "
                       f"{format_term(t2)} at {bad}")
            break
    items.append(CheckItem("arrow actions", checked > 0 and witness is None,
                           checked, witness))
    return Report("algebra round-trip", tuple(items))


# ---------------------------------------------------------------------------
# JSON interchange


def fincat_to_json(cat: FinCategory) -> dict:
    objs = {a: f"o{i}" for i, a in enumerate(cat.objects)}
    arrs = {f: f"a{i}" for i, f in enumerate(cat.arrows)}
    return {
        "name": cat.name,
        "objects": list(objs.values()),
        "arrows": [{"name": arrs[f], "src": objs[f.src], "dst": objs[f.dst]}
                   for f in cat.arrows],
        "identities": [[objs[a], arrs[cat.identities[a]]] for a in cat.objects],
        "composition": [[arrs[g], arrs[f], arrs[cat.comp[(g, f)]]]
                        for (g, f) in cat.comp],
    }


def fincat_from_json(doc: dict) -> FinCategory:
    arrows = {entry["name"]: Arrow(entry["src"], entry["dst"], entry["name"])
              for entry in doc["arrows"]}
    identities = {obj: arrows[name] for obj, name in doc["identities"]}
    comp = {(arrows[g], arrows[f]): arrows[gf] for g, f, gf in doc["composition"]}
    return FinCategory.build(doc.get("name", "json-category"),
                             tuple(doc["objects"]), tuple(arrows.values()),
                             identities, comp)


def smc_to_json(smc: SMCStructure) -> dict:
    cat = smc.cat
    objs = {a: f"o{i}" for i, a in enumerate(cat.objects)}
    arrs = {f: f"a{i}" for i, f in enumerate(cat.arrows)}
    tensor_objs = []
    tensor_arrs = []
    for a, b in _object_tuples(cat, 2):
        out = smc.tensor.obj((a, b))
        if out is not None:
            tensor_objs.append([objs[a], objs[b], objs[out]])
    for f, g in itertools.product(cat.arrows, repeat=2):
        out = smc.tensor.arr((f, g))
        if out is not None:
            tensor_arrs.append([arrs[f], arrs[g], arrs[out]])

    def dump_family(family: Mapping) -> list:
        return [[[objs[x] for x in key], arrs[comp]] for key, comp in family.items()]

    return {
        "name": smc.name,
        "category": fincat_to_json(cat),
        "tensor": {"objects": tensor_objs, "arrows": tensor_arrs},
        "unit": objs[smc.unit],
        "associator": dump_family(smc.assoc),
        "left_unitor": dump_family(smc.left_unit),
        "right_unitor": dump_family(smc.right_unit),
        "symmetry": dump_family(smc.swap),
    }


def smc_from_json(doc: dict) -> SMCStructure:
    cat = fincat_from_json(doc["category"])
    arrows = {f.name: f for f in cat.arrows}
    obj_table = {(a, b): out for a, b, out in doc["tensor"]["objects"]}
    arr_table = {(arrows[f], arrows[g]): arrows[out]
                 for f, g, out in doc["tensor"]["arrows"]}

    def load_family(entries: list) -> dict:
        return {tuple(key): arrows[comp] for key, comp in entries}

    return SMCStructure(
        name=doc.get("name", "json-smc"),
        cat=cat,
        tensor=MultiFunctor.from_tables(cat, 2, obj_table, arr_table),
        unit=doc["unit"],
        assoc=load_family(doc["associator"]),
        left_unit=load_family(doc["left_unitor"]),
        right_unit=load_family(doc["right_unitor"]),
        swap=load_family(doc["symmetry"]),
    )

"""Categorified operads with subsingleton hom-sets.

Given a signature for an operad P, the categorified operad Q has the linear
terms over the signature as arity-n objects and exactly one (invertible)
arrow between two terms when they evaluate to the same element of P. Q is
kept intensional: object structure is term substitution and relabeling, hom
queries evaluate on demand, nothing is materialized.

The unbiased categorification (one generator per element of P) plays the role
of a reference point: every categorification of the same P maps into it by
relabeling nodes (``to_unbiased_term``) and back by expanding generators
through a chosen section (``from_unbiased_term``), and the two trips land an
isomorphism away from where they started. ``verify_pseudo_inverse`` checks
exactly that on a budget, and ``check_equivalence`` combines it with a
skeleton comparison.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator

from .errors import ArityMismatchError, ForkConditionError, OperadError, OracleMismatchError
from .operads import EffectiveOperad
from .perms import Permutation, all_permutations
from .report import CheckItem, Report, merge_reports
from .signatures import (SectionChoice, Signature, choose_section, generator_lookup,
                         unbiased_signature)
from .terms import (Leaf, Node, Term, act_term, arity, compose_terms,
                    enumerate_terms, format_term, graft, random_term, unit_term)


@dataclass(frozen=True)
class CategorifiedOperad:
    """Objects: linear terms over ``sig``; homs: singleton iff evals agree."""

    sig: Signature

    @property
    def oracle(self) -> EffectiveOperad:
        return self.sig.target

    def eval(self, t: Term):
        return self.sig.eval(t)

    def objects(self, n: int, depth_cap: int) -> Iterator[Term]:
        return enumerate_terms(self.sig.symbols, n, depth_cap)


@dataclass(frozen=True)
class CanonicalArrow:
    """The unique arrow between two equal-evaluation terms; no further data."""

    source: Term
    target: Term

    def inverse(self) -> "CanonicalArrow":
        return CanonicalArrow(self.target, self.source)


def categorify(sig: Signature) -> CategorifiedOperad:
    return CategorifiedOperad(sig)


def unbiased_categorification(P: EffectiveOperad, arity_cap: int) -> CategorifiedOperad:
    """The categorification over the one-generator-per-element signature."""
    return categorify(unbiased_signature(P, arity_cap))


def hom_exists(Q: CategorifiedOperad, t1: Term, t2: Term) -> CanonicalArrow | None:
    """The canonical arrow t1 -> t2, or None when the evaluations differ.

    Terms of different arities are not comparable at all; that case raises
    :class:`ArityMismatchError` instead of returning None.
    """
    if arity(t1) != arity(t2):
        raise ArityMismatchError(
            f"not comparable: arity {arity(t1)} vs {arity(t2)}")
    if Q.eval(t1) == Q.eval(t2):
        return CanonicalArrow(t1, t2)
    return None


def to_unbiased_term(Q: CategorifiedOperad, wk: CategorifiedOperad, t: Term) -> Term:
    """Replace each node symbol by the unbiased generator of its image.

    The object map of the comparison morphism into the unbiased
    categorification; leaves are untouched, so evaluation is preserved.
    """
    lookup = generator_lookup(wk.sig)

    def walk(u: Term) -> Term:
        if isinstance(u, Leaf):
            return u
        p = Q.sig.assign[u.symbol]
        try:
            gen = lookup[p]
        except KeyError:
            raise OperadError(
                f"element {p} (arity {u.symbol.arity}) outside the unbiased "
                f"signature's arity cap") from None
        return Node(gen, tuple(walk(c) for c in u.children))

    return walk(t)


def from_unbiased_term(wk: CategorifiedOperad, Q: CategorifiedOperad,
                       section: SectionChoice, t: Term) -> Term:
    """Expand each unbiased generator through the section's representing term.

    Bottom-up: a node for the element p becomes the section term for p with
    the rewritten children grafted onto its leaves. Evaluation is preserved
    because the section is a right inverse of evaluation.
    """
    assign = wk.sig.assign

    def walk(u: Term) -> Term:
        if isinstance(u, Leaf):
            return u
        p = assign[u.symbol]
        rep = section.term_for(u.symbol.arity, p)
        rewritten = {i: walk(c) for i, c in enumerate(u.children, start=1)}
        return graft(rep, rewritten)

    return walk(t)


def _sampled_objects(Q: CategorifiedOperad, arity_cap: int, depth_cap: int,
                     samples: int, seed: int, tag: str) -> Iterator[Term]:
    for n in range(arity_cap + 1):
        yield from Q.objects(n, depth_cap)
    rng = random.Random(f"{seed}:{tag}")
    nullary = any(s.arity == 0 for s in Q.sig.symbols)
    for _ in range(samples):
        n = rng.randint(0 if nullary else 1, max(arity_cap, 1))
        yield random_term(rng, Q.sig.symbols, n, max_nodes=depth_cap + 2)


def verify_pseudo_inverse(Q: CategorifiedOperad, wk: CategorifiedOperad,
                          section: SectionChoice, arity_cap: int, depth_cap: int,
                          samples: int = 0, seed: int = 0) -> Report:
    """Check both round trips land an arrow away from the identity.

    For terms t over Q's signature: there is an arrow between the expansion of
    the relabeling of t and t itself; symmetrically for terms over the
    unbiased signature. Failures carry the offending term.
    """
    items = []

    def run(direction: str, source: CategorifiedOperad, trip: Callable[[Term], Term]):
        checked = 0
        for t in _sampled_objects(source, arity_cap, depth_cap, samples, seed, direction):
            checked += 1
            back = trip(t)
            if hom_exists(source, back, t) is None:
                items.append(CheckItem(
                    direction, False, checked,
                    f"{format_term(t)} round-trips to {format_term(back)} "
                    f"with a different evaluation"))
                return
        items.append(CheckItem(direction, True, checked))

    run("expand . relabel ~ id on Q",
        Q, lambda t: from_unbiased_term(wk, Q, section, to_unbiased_term(Q, wk, t)))
    run("relabel . expand ~ id on unbiased",
        wk, lambda t: to_unbiased_term(Q, wk, from_unbiased_term(wk, Q, section, t)))
    return Report(f"pseudo-inverse comparison: {Q.sig.name} vs {wk.sig.name}",
                  tuple(items))


# ---------------------------------------------------------------------------
# Transformations


@dataclass(frozen=True)
class TransformationData:
    """Components of a transformation between two object maps into a
    subsingleton-hom categorified operad.

    By default the component at p is the canonical arrow left(p) -> right(p);
    ``overrides`` lets tests redirect individual components.
    """

    source: CategorifiedOperad
    target: CategorifiedOperad
    left: Callable[[Term], Term]
    right: Callable[[Term], Term]
    overrides: dict | None = None

    def component(self, p: Term) -> CanonicalArrow:
        if self.overrides and p in self.overrides:
            return self.overrides[p]
        return CanonicalArrow(self.left(p), self.right(p))


def fork_isomorphism(source: CategorifiedOperad, target: CategorifiedOperad,
                     left: Callable[[Term], Term], right: Callable[[Term], Term],
                     objects: Iterable[Term]) -> TransformationData:
    """Build the componentwise isomorphism between two maps equalized by
    evaluation.

    Requires eval(left(p)) == eval(right(p)) on every given object; the first
    violation raises :class:`ForkConditionError` with that object. Each
    component is then the unique arrow left(p) -> right(p), invertible by
    construction.
    """
    for p in objects:
        lv = target.eval(left(p))
        rv = target.eval(right(p))
        if lv != rv:
            raise ForkConditionError(
                f"evaluation splits at {format_term(p)}: {lv} vs {rv}", witness=p)
    return TransformationData(source, target, left, right)


def check_transformation(tau: TransformationData, arity_cap: int, depth_cap: int,
                         samples: int = 0, seed: int = 0) -> Report:
    """Check the transformation equations on a budget.

    In a subsingleton-hom target, parallel arrows are equal as soon as they
    exist, so each equation reduces to: components exist (endpoint
    evaluations agree) and endpoints match the pasted composites -- for the
    composition square, the unit component, and the symmetry square.
    """
    Q, target = tau.source, tau.target
    items = []

    def valid(comp: CanonicalArrow, want_src: Term, want_tgt: Term) -> str | None:
        if comp.source != want_src or comp.target != want_tgt:
            return (f"component endpoints {format_term(comp.source)} -> "
                    f"{format_term(comp.target)} do not match the pasting")
        if target.eval(comp.source) != target.eval(comp.target):
            return (f"no arrow {format_term(comp.source)} -> "
                    f"{format_term(comp.target)}: evaluations differ")
        return None

    def component_instances():
        for p in _sampled_objects(Q, arity_cap, depth_cap, samples, seed, "components"):
            bad = valid(tau.component(p), tau.left(p), tau.right(p))
            yield bad is None, bad and f"at {format_term(p)}: {bad}"

    _run_into(items, "components are arrows", component_instances())

    def composition_instances():
        pools = {n: list(Q.objects(n, depth_cap)) for n in range(arity_cap + 1)}
        nonempty = [n for n, pool in pools.items() if pool]
        rng = random.Random(f"{seed}:transformation-composition")
        for n, pool in pools.items():
            for f in pool:
                for _ in range(2):
                    gs = tuple(rng.choice(pools[rng.choice(nonempty)])
                               for _ in range(n))
                    composite = compose_terms(f, gs)
                    comp = tau.component(composite)
                    want_src = compose_terms(tau.left(f), tuple(tau.left(g) for g in gs))
                    want_tgt = compose_terms(tau.right(f), tuple(tau.right(g) for g in gs))
                    bad = valid(comp, want_src, want_tgt)
                    yield bad is None, bad and (
                        f"at {format_term(f)} . {[format_term(g) for g in gs]}: {bad}")

    _run_into(items, "composition square", composition_instances())

    unit = unit_term()
    bad = valid(tau.component(unit), unit, unit)
    items.append(CheckItem("unit component", bad is None, 1, bad))

    def symmetry_instances():
        for p in _sampled_objects(Q, arity_cap, depth_cap, samples, seed, "symmetry"):
            for sigma in all_permutations(arity(p)):
                acted = act_term(sigma, p)
                comp = tau.component(acted)
                bad = valid(comp, act_term(sigma, tau.left(p)), act_term(sigma, tau.right(p)))
                yield bad is None, bad and f"at {sigma} . {format_term(p)}: {bad}"

    _run_into(items, "symmetry square", symmetry_instances())

    return Report("transformation equations", tuple(items))


def _run_into(items: list, law: str, instances) -> int:
    checked = 0
    for ok, witness in instances:
        checked += 1
        if not ok:
            items.append(CheckItem(law, False, checked, witness))
            return checked
    items.append(CheckItem(law, True, checked))
    return checked


# ---------------------------------------------------------------------------
# Equivalence at budget


def _same_oracle(P1: EffectiveOperad, P2: EffectiveOperad, arity_cap: int) -> None:
    if P1 is P2:
        return
    for n in range(arity_cap + 1):
        left, right = set(P1.carrier(n)), set(P2.carrier(n))
        if left != right:
            witness = next(iter(left.symmetric_difference(right)))
            raise OracleMismatchError(
                f"target operads differ at arity {n}: e.g. {witness}", witness=witness)


def check_equivalence(Q1: CategorifiedOperad, Q2: CategorifiedOperad,
                      arity_cap: int, depth_cap: int, seed: int = 0) -> Report:
    """Levelwise equivalence of two categorifications of the same operad.

    Verifies the two oracles agree on carriers up to the budget (raising
    :class:`OracleMismatchError` otherwise), that the evaluation images of the
    enumerated objects coincide arity by arity (skeletons biject), and that
    both pseudo-inverse comparisons through the unbiased categorification
    pass.
    """
    _same_oracle(Q1.oracle, Q2.oracle, arity_cap)

    items = []
    for n in range(arity_cap + 1):
        img1 = {Q1.eval(t) for t in Q1.objects(n, depth_cap)}
        img2 = {Q2.eval(t) for t in Q2.objects(n, depth_cap)}
        ok = img1 == img2
        witness = None
        if not ok:
            witness = f"images differ, e.g. {next(iter(img1 ^ img2))}"
        items.append(CheckItem(f"skeletons agree at arity {n}", ok,
                               len(img1 | img2), witness))

    wk = unbiased_categorification(Q1.oracle, arity_cap)
    reports = [Report("skeletons", tuple(items))]
    for Q in (Q1, Q2):
        section = choose_section(Q.sig, arity_cap, depth_cap)
        reports.append(verify_pseudo_inverse(Q, wk, section, arity_cap, depth_cap,
                                             samples=25, seed=seed))
    merged = merge_reports(
        f"equivalence of {Q1.sig.name} and {Q2.sig.name}", reports)
    verdict = ("equivalent at budget "
               f"(arity <= {arity_cap}, depth <= {depth_cap})"
               if merged.passed else "not shown equivalent at budget")
    return Report(merged.title, merged.items, verdict=verdict)

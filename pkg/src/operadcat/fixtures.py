"""Named built-in operads, signatures, and monoidal structures.

These back the CLI's ``--operad``, ``--sig`` and ``--smc`` names and give the
test suite shared, deterministic inputs.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import OperadError
from .fincat import Arrow, FinCategory, MultiFunctor, SMCStructure
from .operads import EffectiveOperad, end_operad, terminal_operad
from .perms import Permutation, all_permutations, block_permutation, compose, direct_sum
from .signatures import (DOT_SYMBOL, E_SYMBOL, GeneratedSuboperad, Signature,
                         generated_suboperad, standard_comm_signature,
                         unbiased_signature)
from .terms import Symbol


@lru_cache(maxsize=None)
def xor_generated() -> GeneratedSuboperad:
    """The sub-operad of End({0,1}) generated by xor and the constant 0."""
    return generated_suboperad(
        (0, 1), {"xor": (2, lambda a, b: a ^ b), "zero": (0, lambda: 0)},
        arity_cap=3, depth_cap=4, name="xor-gen")


@lru_cache(maxsize=None)
def andor_generated() -> GeneratedSuboperad:
    """The sub-operad of End({0,1}) generated by AND and OR (no constants)."""
    return generated_suboperad(
        (0, 1), {"and": (2, lambda a, b: a & b), "or": (2, lambda a, b: a | b)},
        arity_cap=3, depth_cap=4, name="andor-gen")


@lru_cache(maxsize=None)
def ternary_comm_signature() -> Signature:
    """The standard commutative signature extended with a ternary generator."""
    P = terminal_operad()
    t3 = Symbol("t3", 3)
    symbols = (E_SYMBOL, DOT_SYMBOL, t3)
    assign = {s: P.carrier(s.arity)[0] for s in symbols}
    return Signature("ternary-comm", symbols, P, assign)


@lru_cache(maxsize=None)
def dot_only_signature() -> Signature:
    """Only the binary generator; cannot reach arity 0."""
    P = terminal_operad()
    assign = {DOT_SYMBOL: P.carrier(2)[0]}
    return Signature("dot-only", (DOT_SYMBOL,), P, assign)


# ---------------------------------------------------------------------------
# Monoidal fixtures


@lru_cache(maxsize=None)
def z3_discrete_smc() -> SMCStructure:
    """The discrete category on Z/3 with addition as tensor; every structure
    map is an identity."""
    objects = (0, 1, 2)
    identities = {a: Arrow(a, a, f"id{a}") for a in objects}
    arrows = tuple(identities[a] for a in objects)
    comp = {(identities[a], identities[a]): identities[a] for a in objects}
    cat = FinCategory.build("z3-discrete", objects, arrows, identities, comp)

    obj_table = {(a, b): (a + b) % 3 for a in objects for b in objects}
    arr_table = {(identities[a], identities[b]): identities[(a + b) % 3]
                 for a in objects for b in objects}
    tensor = MultiFunctor.from_tables(cat, 2, obj_table, arr_table)

    def ident_family(keys):
        table = {}
        for key in keys:
            value = key[0]
            for extra in key[1:]:
                value = (value + extra) % 3
            table[key] = identities[value]
        return table

    triples = list(itertools.product(objects, repeat=3))
    pairs = list(itertools.product(objects, repeat=2))
    singles = [(a,) for a in objects]
    return SMCStructure(
        name="z3-discrete",
        cat=cat,
        tensor=tensor,
        unit=0,
        assoc=ident_family(triples),
        left_unit=ident_family(singles),
        right_unit=ident_family(singles),
        swap=ident_family(pairs),
    )


@lru_cache(maxsize=None)
def perm_groupoid_smc(size_cap: int = 4) -> SMCStructure:
    """Disjoint symmetric groups as a groupoid; tensor is size addition with
    block juxtaposition on arrows, bounded by ``size_cap``.

    The symmetry component at (A, B) is the block transposition moving the
    leading B-block past the A-block. Structure maps outside the cap are
    simply absent; the axiom checker skips those instances.
    """
    objects = tuple(range(size_cap + 1))
    arrows = tuple(Arrow(n, n, perm)
                   for n in objects for perm in all_permutations(n))
    by_perm = {(f.src, f.name): f for f in arrows}
    identities = {n: by_perm[(n, Permutation(tuple(range(1, n + 1))))] for n in objects}
    comp = {}
    for g in arrows:
        for f in arrows:
            if f.dst == g.src:
                comp[(g, f)] = by_perm[(f.src, compose(g.name, f.name))]
    cat = FinCategory.build(f"perm-groupoid-{size_cap}", objects, arrows,
                            identities, comp)

    obj_table = {(a, b): a + b for a in objects for b in objects if a + b <= size_cap}
    arr_table = {}
    for f in arrows:
        for g in arrows:
            if f.src + g.src <= size_cap:
                arr_table[(f, g)] = by_perm[(f.src + g.src, direct_sum([f.name, g.name]))]
    tensor = MultiFunctor.from_tables(cat, 2, obj_table, arr_table)

    swap_two = Permutation((2, 1))
    assoc = {(a, b, c): identities[a + b + c]
             for a in objects for b in objects for c in objects
             if a + b + c <= size_cap}
    left_unit = {(a,): identities[a] for a in objects}
    right_unit = {(a,): identities[a] for a in objects}
    swap = {(a, b): by_perm[(a + b, block_permutation(swap_two, (b, a)))]
            for a in objects for b in objects if a + b <= size_cap}
    return SMCStructure(
        name=f"perm-groupoid-{size_cap}",
        cat=cat,
        tensor=tensor,
        unit=0,
        assoc=assoc,
        left_unit=left_unit,
        right_unit=right_unit,
        swap=swap,
    )


@lru_cache(maxsize=None)
def z2_hexagon_smc() -> SMCStructure:
    """One object, arrows Z/2 under addition, symmetry the nontrivial arrow.

    Satisfies everything except the hexagon: around it one side crosses the
    symmetry twice and cancels, the other crosses once.
    """
    star = "*"
    zero = Arrow(star, star, 0)
    one = Arrow(star, star, 1)
    comp = {(a, b): (zero if (a.name + b.name) % 2 == 0 else one)
            for a in (zero, one) for b in (zero, one)}
    cat = FinCategory.build("z2-hexagon", (star,), (zero, one), {star: zero}, comp)

    obj_table = {(star, star): star}
    arr_table = {(a, b): (zero if (a.name + b.name) % 2 == 0 else one)
                 for a in (zero, one) for b in (zero, one)}
    tensor = MultiFunctor.from_tables(cat, 2, obj_table, arr_table)
    return SMCStructure(
        name="z2-hexagon",
        cat=cat,
        tensor=tensor,
        unit=star,
        assoc={(star, star, star): zero},
        left_unit={(star,): zero},
        right_unit={(star,): zero},
        swap={(star, star): one},
    )


# ---------------------------------------------------------------------------
# Name registries for the CLI


def builtin_operad(name: str) -> EffectiveOperad:
    table = {
        "terminal": terminal_operad,
        "end2": lambda: end_operad((0, 1)),
        "xor-gen": lambda: xor_generated().operad,
        "andor-gen": lambda: andor_generated().operad,
    }
    if name not in table:
        raise OperadError(f"unknown operad {name!r}; builtins: {sorted(table)}")
    return table[name]()


def builtin_signature(name: str, operad: EffectiveOperad,
                      arity_cap: int = 3) -> Signature:
    table = {
        "std-comm": standard_comm_signature,
        "ternary-comm": ternary_comm_signature,
        "dot-only": dot_only_signature,
        "xor-gen": lambda: xor_generated().signature,
        "andor-gen": lambda: andor_generated().signature,
        "unbiased": lambda: unbiased_signature(operad, arity_cap),
    }
    if name not in table:
        raise OperadError(f"unknown signature {name!r}; builtins: {sorted(table)}")
    return table[name]()


def builtin_smc(name: str) -> SMCStructure:
    table = {
        "z3-discrete": z3_discrete_smc,
        "perm-groupoid-4": perm_groupoid_smc,
        "z2-hexagon": z2_hexagon_smc,
    }
    if name not in table:
        raise OperadError(f"unknown monoidal structure {name!r}; builtins: {sorted(table)}")
    return table[name]()

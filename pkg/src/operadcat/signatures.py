"""Signatures: generators assigned to elements of a target operad.

A signature induces an evaluation morphism from the terms over its symbols
into the target operad. Surjectivity (the signature actually generating the
target) is only semi-decidable, so coverage is always reported relative to an
explicit arity/depth budget, and a gap at budget is never read as a proof of
non-surjectivity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Mapping, NamedTuple, Sequence

from .errors import ArityMismatchError, CoverageError
from .operads import (EffectiveOperad, OperadMorphism, TableFun, end_operad,
                      terminal_operad)
from .report import CheckItem, Report
from .terms import (Symbol, Term, arity, enumerate_terms, eval_term, format_term,
                    free_operad, node_count)

E_SYMBOL = Symbol("e", 0)
DOT_SYMBOL = Symbol("dot", 2)


@dataclass(frozen=True)
class Signature:
    """Generator symbols plus their images in the target operad."""

    name: str
    symbols: tuple[Symbol, ...]
    target: EffectiveOperad
    assign: Mapping[Symbol, Any]

    def __post_init__(self):
        for s in self.symbols:
            p = self.assign[s]
            if self.target.arity_of(p) != s.arity:
                raise ArityMismatchError(
                    f"{self.name}: {s} assigned an arity-{self.target.arity_of(p)} element")

    def symbols_of_arity(self, n: int) -> tuple[Symbol, ...]:
        return tuple(s for s in self.symbols if s.arity == n)

    def eval(self, t: Term):
        return eval_term(self.assign, t, self.target)

    def eval_morphism(self, depth_cap: int = 3) -> OperadMorphism:
        """Evaluation packaged as a morphism from the term operad, for the
        morphism checker."""
        return OperadMorphism(
            f"eval[{self.name}]",
            free_operad(self.symbols, depth_cap),
            self.target,
            lambda n, t: self.eval(t),
        )


def standard_comm_signature() -> Signature:
    """A nullary ``e`` and a binary ``dot`` over the terminal operad."""
    P = terminal_operad()
    symbols = (E_SYMBOL, DOT_SYMBOL)
    assign = {s: P.carrier(s.arity)[0] for s in symbols}
    return Signature("std-comm", symbols, P, assign)


def unbiased_signature(P: EffectiveOperad, arity_cap: int) -> Signature:
    """One generator per element of ``P`` up to ``arity_cap``, assigned to
    itself. Generator names are ``u<n>`` when the carrier is a singleton,
    ``u<n>_<i>`` otherwise."""
    symbols: list[Symbol] = []
    assign: dict[Symbol, Any] = {}
    for n in range(arity_cap + 1):
        pool = P.carrier(n)
        for i, p in enumerate(pool):
            name = f"u{n}" if len(pool) == 1 else f"u{n}_{i}"
            sym = Symbol(name, n)
            symbols.append(sym)
            assign[sym] = p
    return Signature(f"unbiased[{P.name};{arity_cap}]", tuple(symbols), P, assign)


def generator_lookup(sig: Signature) -> dict[Any, Symbol]:
    """Inverse of the assignment, for signatures whose generators are named
    one-per-element (e.g. the unbiased one)."""
    return {sig.assign[s]: s for s in sig.symbols}


# ---------------------------------------------------------------------------
# Coverage


@dataclass(frozen=True)
class ArityCoverage:
    arity: int
    carrier_size: int
    covered: int
    missing: tuple

    @property
    def complete(self) -> bool:
        return self.covered == self.carrier_size


@dataclass(frozen=True)
class CoverageReport:
    signature: str
    arity_cap: int
    depth_cap: int
    per_arity: tuple[ArityCoverage, ...]

    @property
    def covered(self) -> bool:
        return all(c.complete for c in self.per_arity)

    @property
    def verdict(self) -> str:
        if self.covered:
            return f"surjective up to budget (arity <= {self.arity_cap}, depth <= {self.depth_cap})"
        gaps = [c.arity for c in self.per_arity if not c.complete]
        return f"not covered at budget: gaps at arities {gaps}"

    def to_report(self) -> Report:
        items = tuple(
            CheckItem(
                f"arity {c.arity} coverage", c.complete, c.carrier_size,
                None if c.complete else f"{len(c.missing)} uncovered, e.g. {c.missing[0]}")
            for c in self.per_arity)
        return Report(f"coverage of {self.signature}", items, verdict=self.verdict)


def check_surjective_up_to(sig: Signature, arity_cap: int, depth_cap: int) -> CoverageReport:
    """Which carrier elements are hit by terms within the budget."""
    per_arity = []
    for n in range(arity_cap + 1):
        pool = sig.target.carrier(n)
        images = set()
        for t in enumerate_terms(sig.symbols, n, depth_cap):
            images.add(sig.eval(t))
        missing = tuple(p for p in pool if p not in images)
        per_arity.append(ArityCoverage(n, len(pool), len(pool) - len(missing), missing))
    return CoverageReport(sig.name, arity_cap, depth_cap, tuple(per_arity))


@dataclass(frozen=True)
class SectionChoice:
    """A representing term for each covered element: eval(term_for(n, p)) == p.

    Representatives are the first hits in the fixed enumeration order, so a
    section is reproducible across runs.
    """

    signature: Signature
    arity_cap: int
    depth_cap: int
    table: Mapping[tuple[int, Any], Term]

    def __post_init__(self):
        for (n, p), t in self.table.items():
            if arity(t) != n:
                raise ArityMismatchError(
                    f"section term {format_term(t)} has arity {arity(t)}, not {n}")
            if self.signature.eval(t) != p:
                raise CoverageError(
                    f"section term {format_term(t)} evaluates to "
                    f"{self.signature.eval(t)}, not {p}")

    def term_for(self, n: int, p: Any) -> Term:
        try:
            return self.table[(n, p)]
        except KeyError:
            raise CoverageError(f"element {p} (arity {n}) not covered by section") from None


def choose_section(sig: Signature, arity_cap: int, depth_cap: int) -> SectionChoice:
    """Pick the first preimage of every carrier element within the budget.

    Raises :class:`CoverageError` if some element is unreachable at this
    budget (the same gap :func:`check_surjective_up_to` would report).
    """
    table: dict[tuple[int, Any], Term] = {}
    for n in range(arity_cap + 1):
        pool = sig.target.carrier(n)
        remaining = set(pool)
        for t in enumerate_terms(sig.symbols, n, depth_cap):
            if not remaining:
                break
            p = sig.eval(t)
            if p in remaining:
                table[(n, p)] = t
                remaining.discard(p)
        if remaining:
            sample = next(iter(remaining))
            raise CoverageError(
                f"{sig.name}: arity-{n} element {sample} not covered at "
                f"depth {depth_cap}")
    return SectionChoice(sig, arity_cap, depth_cap, table)


# ---------------------------------------------------------------------------
# Generated sub-operads of End(A)


class GeneratedSuboperad(NamedTuple):
    operad: EffectiveOperad
    signature: Signature
    arity_cap: int
    depth_cap: int
    new_at_last_depth: int

    @property
    def stabilized(self) -> bool:
        return self.new_at_last_depth == 0


def generated_suboperad(base: Sequence, gens: Mapping[str, tuple[int, Callable]],
                        arity_cap: int = 3, depth_cap: int = 4,
                        name: str | None = None) -> GeneratedSuboperad:
    """Saturate the images in End(base) of all linear terms over ``gens``.

    Carriers are computed arity by arity up to ``arity_cap``, enumerating
    terms by node count up to ``depth_cap``; ``new_at_last_depth`` reports
    whether the final increment still added elements, as a stabilization
    hint. The returned signature is surjective onto the computed carriers by
    construction.
    """
    end = end_operad(base)
    symbols = tuple(Symbol(gname, gar) for gname, (gar, _) in sorted(gens.items()))
    assign = {
        Symbol(gname, gar): TableFun.from_callable(tuple(base), gar, fn)
        for gname, (gar, fn) in gens.items()
    }

    carriers: dict[int, tuple] = {}
    new_last = 0
    for n in range(arity_cap + 1):
        seen: dict[Any, None] = {}
        fresh_at = [0] * (depth_cap + 1)
        for t in enumerate_terms(symbols, n, depth_cap):
            img = eval_term(assign, t, end)
            if img not in seen:
                seen[img] = None
                fresh_at[node_count(t)] += 1
        carriers[n] = tuple(seen)
        new_last += fresh_at[depth_cap]

    sub_name = name or "gen(" + ",".join(sorted(gens)) + ")"
    operad = EffectiveOperad(
        name=sub_name,
        unit=end.unit,
        arity_of=end.arity_of,
        compose_raw=end.compose_raw,
        act_raw=end.act_raw,
        carrier_raw=lambda n: carriers[n],
        arity_cap=arity_cap,
    )
    signature = Signature(sub_name, symbols, operad, assign)
    return GeneratedSuboperad(operad, signature, arity_cap, depth_cap, new_last)


# ---------------------------------------------------------------------------
# JSON interchange

def signature_to_json(sig: Signature) -> dict:
    """Symbols plus assignment targets, by index into the carrier listings."""
    entries = []
    for s in sig.symbols:
        pool = sig.target.carrier(s.arity)
        entries.append({"name": s.name, "arity": s.arity,
                        "target": pool.index(sig.assign[s])})
    return {"name": sig.name, "symbols": entries}


def signature_from_json(doc: dict, target: EffectiveOperad) -> Signature:
    symbols = []
    assign = {}
    for entry in doc["symbols"]:
        sym = Symbol(entry["name"], entry["arity"])
        symbols.append(sym)
        assign[sym] = target.carrier(sym.arity)[entry["target"]]
    return Signature(doc.get("name", "json-signature"), tuple(symbols), target, assign)

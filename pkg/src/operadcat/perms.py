"""Finite permutations in one-line image notation, plus block permutations.

Conventions, fixed once for the whole package:

- A permutation of degree n acts on {1, .., n}; ``images[i-1]`` is the image
  of ``i``. The textual form is the image list, e.g. ``[2,3,1]``.
- ``compose(s, t)`` applies ``t`` first, then ``s``, so that
  ``compose(s, t)(i) == s(t(i))``.
- Every group action in this package is a *left* action: acting by
  ``compose(s, t)`` is the same as acting by ``t``, then by ``s``. The
  action-law tests in the suite pin this convention.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DegreeMismatchError


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the tuple of images.

    >>> Permutation((2, 3, 1))(1)
    2
    >>> Permutation((2, 3, 1)).degree
    3
    """

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {list(self.images)}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.images) + "]"


def identity(n: int) -> Permutation:
    """The identity of S_n.

    >>> identity(3).images
    (1, 2, 3)
    >>> identity(0).images
    ()
    """
    return Permutation(tuple(range(1, n + 1)))


def compose(s: Permutation, t: Permutation) -> Permutation:
    """Apply ``t``, then ``s``.

    >>> compose(Permutation((2, 1)), Permutation((2, 1))).images
    (1, 2)
    >>> compose(Permutation((2, 3, 1)), Permutation((2, 3, 1))).images
    (3, 1, 2)
    """
    if s.degree != t.degree:
        raise DegreeMismatchError(f"cannot compose degrees {s.degree} and {t.degree}")
    return Permutation(tuple(s.images[v - 1] for v in t.images))


def invert(s: Permutation) -> Permutation:
    """The inverse permutation.

    >>> invert(Permutation((2, 3, 1))).images
    (3, 1, 2)
    """
    inv = [0] * s.degree
    for i, v in enumerate(s.images):
        inv[v - 1] = i + 1
    return Permutation(tuple(inv))


def block_permutation(s: Permutation, blocks: Sequence[int]) -> Permutation:
    """Permute n contiguous blocks of sizes ``blocks`` as ``s`` permutes {1..n}.

    Block i occupies positions ``sum(blocks[:i-1])+1 ..`` in the source and is
    moved, order preserved, to slot ``s(i)`` of the target layout.

    >>> block_permutation(identity(2), [3, 2]).images
    (1, 2, 3, 4, 5)
    >>> block_permutation(Permutation((2, 1)), [1, 1]).images
    (2, 1)
    >>> block_permutation(Permutation((2, 1)), [2, 1]).images
    (2, 3, 1)
    """
    n = s.degree
    if len(blocks) != n:
        raise DegreeMismatchError(f"{n} blocks expected, got {len(blocks)}")
    inv = invert(s)
    target_offset = [0] * (n + 1)
    cum = 0
    for pos in range(1, n + 1):
        b = inv(pos)
        target_offset[b] = cum
        cum += blocks[b - 1]
    images = [0] * sum(blocks)
    src = 0
    for b in range(1, n + 1):
        for j in range(1, blocks[b - 1] + 1):
            images[src + j - 1] = target_offset[b] + j
        src += blocks[b - 1]
    return Permutation(tuple(images))


def direct_sum(parts: Iterable[Permutation]) -> Permutation:
    """Act with each part inside its own contiguous block.

    >>> direct_sum([Permutation((2, 1)), identity(1)]).images
    (2, 1, 3)
    """
    images: list[int] = []
    offset = 0
    for p in parts:
        images.extend(offset + v for v in p.images)
        offset += p.degree
    return Permutation(tuple(images))


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order of image tuples."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)


def parse_permutation(text: str) -> Permutation:
    """Read the one-line form produced by ``str``, e.g. ``[2,3,1]``."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    if not body.strip():
        return identity(0)
    return Permutation(tuple(int(part) for part in body.split(",")))

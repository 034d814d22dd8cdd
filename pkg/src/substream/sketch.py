"""Seeded permutation hashing and mergeable bottom-h sketches.

A sketch keeps the h smallest permuted members of a set of edge positions.
Sketches built under one permutation merge by taking the h smallest of both
value lists, which samples the union and yields an unbiased Jaccard-distance
estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ParameterError

DEFAULT_H = 8


@dataclass(frozen=True)
class PermutationHash:
    """Deterministic bijection on [0, m), materialized as a lookup table."""

    seed: int
    m: int
    table: np.ndarray = field(repr=False, compare=False)

    def __call__(self, value: int) -> int:
        return int(self.table[value])


def make_permutation(seed: int, m: int) -> PermutationHash:
    """Seeded permutation of [0, m); PCG64 drives the shuffle."""
    if m < 1:
        raise ParameterError(f"permutation domain must be >= 1, got {m}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return PermutationHash(seed, m, rng.permutation(m).astype(np.int64))


@dataclass(frozen=True)
class BottomHSketch:
    """At most h distinct permuted values, kept smallest-first."""

    h: int
    values: tuple[int, ...] = ()
    domain: int | None = None

    def __post_init__(self) -> None:
        if len(self.values) > self.h:
            raise ParameterError("sketch holds more than h values")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ParameterError("sketch values must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)


@dataclass(frozen=True)
class SketchAccumulator:
    """Pairing of a permutation and a capacity, fed during reachability scans."""

    permutation: PermutationHash
    h: int = DEFAULT_H


def sketch_of(perm: PermutationHash, members, h: int = DEFAULT_H) -> BottomHSketch:
    """Sketch of a full set of positions: the h smallest permuted members."""
    arr = np.asarray(members if not isinstance(members, set) else sorted(members), dtype=np.int64)
    vals = np.unique(perm.table[arr])[:h]
    return BottomHSketch(h, tuple(int(x) for x in vals), perm.m)


def sketch_insert(sk: BottomHSketch, hashed_value: int) -> BottomHSketch:
    """Offer one permuted value; kept only if it is among the h smallest so far."""
    if hashed_value in sk.values:
        return sk
    if len(sk.values) < sk.h:
        return BottomHSketch(sk.h, tuple(sorted(sk.values + (hashed_value,))), sk.domain)
    if hashed_value >= sk.values[-1]:
        return sk
    vals = sorted(sk.values + (hashed_value,))[: sk.h]
    return BottomHSketch(sk.h, tuple(vals), sk.domain)


def _check_compatible(a: BottomHSketch, b: BottomHSketch) -> None:
    if a.h != b.h:
        raise ParameterError(f"sketch capacity mismatch: {a.h} != {b.h}")
    if a.domain is not None and b.domain is not None and a.domain != b.domain:
        raise ParameterError(f"sketch domain mismatch: {a.domain} != {b.domain}")


def sketch_union(a: BottomHSketch, b: BottomHSketch) -> BottomHSketch:
    """Sketch of the union: h smallest over both value lists, deduplicated."""
    _check_compatible(a, b)
    merged = _kernels.bottom_h_merge(a.as_array(), b.as_array(), a.h)
    return BottomHSketch(a.h, tuple(int(x) for x in merged), a.domain or b.domain)


def jaccard_estimate(a: BottomHSketch, b: BottomHSketch) -> float:
    """Estimated Jaccard distance 1 - |s(A∪B) ∩ s(A) ∩ s(B)| / |s(A∪B)|.

    Two empty sketches are defined as maximally distant (1.0).
    """
    _check_compatible(a, b)
    return float(
        _kernels.jaccard_pair(a.as_array(), len(a.values), b.as_array(), len(b.values), a.h)
    )

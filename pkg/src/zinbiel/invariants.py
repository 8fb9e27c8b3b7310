"""Isomorphism invariants: left operators, Jordan types, characteristic
sequence, natural gradation and a combined fingerprint."""

from __future__ import annotations

import itertools
import os
import random
from math import gcd, lcm
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Sequence

from .algebra import (
    Algebra,
    apply_basis_change,
    center,
    left_annihilator,
    nilindex,
    power_filtration,
    right_annihilator,
)
from .linalg import (
    DimensionMismatch,
    NotNilpotent,
    QMatrix,
    Subspace,
    in_span,
    rank_sequence,
    span_reduce,
    vec,
)


class Degenerate(ValueError):
    """``L = L^2``, so no element lies outside the square."""


def left_operator_matrix(A: Algebra, x: Sequence) -> QMatrix:
    """Matrix of ``y -> x o y``; column ``j`` is ``x o e_j``."""
    if len(x) != A.dim:
        raise DimensionMismatch(f"vector of length {len(x)} in an algebra of dimension {A.dim}")
    cols = [A.multiply(x, A.basis_vector(j)) for j in range(1, A.dim + 1)]
    return QMatrix.from_columns(cols, rows=A.dim)


def blocks_from_ranks(ranks: Sequence[int]) -> tuple:
    """Jordan block sizes of a nilpotent map from ``[rank N^0, rank N^1, ..., 0]``."""
    # at_least[k] = number of blocks of size >= k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    blocks = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        blocks.extend([k] * exact)
    return tuple(blocks)


def jordan_block_sizes(N: QMatrix) -> tuple:
    """Descending Jordan block sizes of a nilpotent matrix."""
    return blocks_from_ranks(rank_sequence(N))


def _lcm_denominator(values) -> int:
    d = 1
    for c in values:
        d = lcm(d, Fraction(c).denominator)
    return d


def _int_echelon(vectors) -> list[list[int]]:
    """Fraction-free echelon basis of the integer span of ``vectors``."""
    pivots: dict[int, list[int]] = {}
    for v in vectors:
        v = list(v)
        while True:
            lead = next((k for k, a in enumerate(v) if a), None)
            if lead is None:
                break
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for a in v:
                    g = gcd(g, a)
                pivots[lead] = [a // g for a in v]
                break
            a, b = piv[lead], v[lead]
            v = [a * x - b * y for x, y in zip(v, piv)]
    return [pivots[k] for k in sorted(pivots)]


class _LeftOperators:
    """Integer matrices of ``L_{e_i}`` scaled to a common denominator.

    ``C(x)`` only depends on ``x`` up to a nonzero scalar, so every candidate is
    scaled to an integer vector and the whole Jordan computation stays in ``int``.
    """

    def __init__(self, A: Algebra):
        n = A.dim
        D = _lcm_denominator(c for _, terms in A.items() for _, c in terms)
        mats = [[[0] * n for _ in range(n)] for _ in range(n)]
        for (i, j), terms in A.items():
            for k, c in terms:
                mats[i - 1][k - 1][j - 1] = int(c * D)
        self.n = n
        self.mats = mats

    def ranks(self, x: Sequence) -> list[int]:
        n = self.n
        d = _lcm_denominator(x)
        xi = [int(Fraction(a) * d) for a in x]
        N = [[0] * n for _ in range(n)]
        for i, a in enumerate(xi):
            if a:
                for r, row in enumerate(self.mats[i]):
                    if any(row):
                        Nr = N[r]
                        for c, val in enumerate(row):
                            if val:
                                Nr[c] += a * val
        ranks = [n]
        current = [[N[r][c] for r in range(n)] for c in range(n)]  # columns span Im N
        for _ in range(n):
            basis = _int_echelon(current)
            ranks.append(len(basis))
            if not basis:
                return ranks
            current = [[sum(a * b for a, b in zip(row, v)) for row in N] for v in basis]
        raise NotNilpotent("left operator is not nilpotent")


def element_sequence(A: Algebra, x: Sequence, _ops: _LeftOperators | None = None) -> tuple:
    """``C(x)``: descending Jordan block sizes of ``L_x``."""
    x = vec(x)
    if len(x) != A.dim:
        raise DimensionMismatch(f"vector of length {len(x)} in an algebra of dimension {A.dim}")
    return blocks_from_ranks((_ops or _LeftOperators(A)).ranks(x))


@dataclass(frozen=True)
class SamplerConfig:
    support: int = 2
    samples: int = 64
    seed: int = 0xC0FFEE

    @classmethod
    def from_env(cls, **kw) -> "SamplerConfig":
        """Honour ``ZINBIEL_SEED`` (decimal or 0x-hex) over any explicit seed."""
        env = os.environ.get("ZINBIEL_SEED")
        if env:
            kw["seed"] = int(env, 0)
        return cls(**kw)


@dataclass(frozen=True)
class CharSeq:
    blocks: tuple
    witness: tuple
    heuristic: bool


def complement_basis(A: Algebra, sub: Subspace) -> list[tuple]:
    """Standard basis vectors completing ``sub`` to the whole space, lowest index first."""
    chosen = []
    span = sub
    for i in range(1, A.dim + 1):
        e = A.basis_vector(i)
        if e not in span:
            chosen.append(e)
            span = span_reduce(span.basis + (e,), A.dim)
    return chosen


def _random_vector(rng: random.Random, n: int) -> tuple:
    return tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(n))


def characteristic_sequence(A: Algebra, sampler: SamplerConfig | None = None) -> CharSeq:
    """Lexicographically largest ``C(x)`` found over ``x`` outside ``L^2``.

    Candidates are the complement basis of ``L^2``, every signed combination of
    up to ``sampler.support`` of those vectors (first sign fixed, since ``C(-x)
    = C(x)``), and ``sampler.samples`` seeded random rational vectors.  The
    result is flagged heuristic unless the complement of ``L^2`` is
    one-dimensional.  Ties keep the earliest candidate.
    """
    sampler = sampler or SamplerConfig()
    n = A.dim
    filt = power_filtration(A)
    if not filt[-1].is_zero():
        raise NotNilpotent("characteristic sequence needs a nilpotent algebra")
    square = filt[1] if len(filt) > 1 else Subspace(n, ())
    if square.is_full():
        raise Degenerate("L = L^2")
    comp = complement_basis(A, square)

    def candidates():
        yield from comp
        for size in range(2, min(sampler.support, len(comp)) + 1):
            for combo in itertools.combinations(comp, size):
                for signs in itertools.product((1, -1), repeat=size - 1):
                    coeffs = (1,) + signs
                    yield tuple(sum(c * v[t] for c, v in zip(coeffs, combo)) for t in range(n))
        rng = random.Random(sampler.seed)
        for _ in range(sampler.samples):
            v = _random_vector(rng, n)
            if v not in square:
                yield v

    ops = _LeftOperators(A)
    best, witness = None, None
    for x in candidates():
        c = element_sequence(A, x, ops)
        if best is None or c > best:
            best, witness = c, x
    return CharSeq(best, witness, heuristic=len(comp) != 1)


# -- natural gradation --------------------------------------------------------


@dataclass(frozen=True)
class Gradation:
    layers: tuple  # Subspace per layer, spanned by the adapted representatives
    adapted_basis: QMatrix  # columns: representatives, layer 1 first
    layer_sizes: tuple
    graded_algebra: Algebra
    compatible: bool  # L^i o L^j lies in L^{i+j} for every pair of layers

    @property
    def dims(self) -> list[int]:
        return list(self.layer_sizes)

    def layer_slices(self) -> list[range]:
        out, start = [], 0
        for d in self.layer_sizes:
            out.append(range(start, start + d))
            start += d
        return out


def natural_gradation(A: Algebra) -> Gradation:
    """Build ``gr(L) = L^1/L^2 + L^2/L^3 + ...``.

    Representatives come from the canonical bases of the filtration terms,
    chosen bottom-up so each layer extends the basis already fixed for the
    deeper terms.  The graded product of a layer-``i`` and a layer-``j``
    representative is the layer-``(i+j)`` part of their product in ``A``.
    """
    n = A.dim
    filt = power_filtration(A)
    if not filt[-1].is_zero():
        raise NotNilpotent("natural gradation needs a nilpotent algebra")
    s = len(filt) - 1
    per_layer: list[list[tuple]] = [[] for _ in range(s)]
    span = Subspace(n, ())
    for i in range(s - 1, -1, -1):
        for v in filt[i].basis:
            if v not in span:
                per_layer[i].append(v)
                span = span_reduce(span.basis + (v,), n)
    columns = [v for layer in per_layer for v in layer]
    sizes = tuple(len(layer) for layer in per_layer)
    P = QMatrix.from_columns(columns, rows=n)
    Pinv = P.inverse()
    layer_of = [i for i, d in enumerate(sizes) for _ in range(d)]

    labels = []
    for v in columns:
        nz = [k for k, a in enumerate(v) if a]
        labels.append(A.labels[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else f"b{len(labels) + 1}")

    products = {}
    compatible = True
    for a, u in enumerate(columns):
        for b, w in enumerate(columns):
            target = layer_of[a] + layer_of[b] + 1  # 0-based layer index of i+j
            coords = Pinv @ A.multiply(u, w)
            terms = {}
            for k, c in enumerate(coords):
                if not c:
                    continue
                if layer_of[k] < target:
                    compatible = False
                elif layer_of[k] == target:
                    terms[k + 1] = c
            if terms:
                products[(a + 1, b + 1)] = terms
    graded = Algebra(n, products, labels)
    layers = tuple(span_reduce(layer, n) if layer else Subspace(n, ()) for layer in per_layer)
    return Gradation(layers, P, sizes, graded, compatible)


def filtration_degree(A: Algebra, v: Sequence) -> int:
    """Largest ``i`` with ``v`` in ``L^i`` (``v`` nonzero)."""
    v = vec(v)
    if not any(v):
        raise ValueError("the zero vector has no filtration degree")
    deg = 0
    for i, term in enumerate(power_filtration(A), start=1):
        if in_span(v, term) is None:
            break
        deg = i
    return deg


# -- fingerprint ----------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    nilindex: int
    filtration_dims: tuple
    gradation_dims: tuple
    char_seq: tuple
    right_ann_dim: int
    left_ann_dim: int
    center_dim: int

    def differences(self, other: "Fingerprint") -> list[str]:
        return [f.name for f in fields(self) if getattr(self, f.name) != getattr(other, f.name)]

    def to_dict(self) -> dict:
        return {f.name: (list(v) if isinstance(v := getattr(self, f.name), tuple) else v) for f in fields(self)}


def fingerprint(A: Algebra, sampler: SamplerConfig | None = None) -> Fingerprint:
    filt = power_filtration(A)
    if not filt[-1].is_zero():
        raise NotNilpotent("fingerprint needs a nilpotent algebra")
    dims = tuple(t.dim for t in filt)
    grad = tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))
    return Fingerprint(
        dim=A.dim,
        nilindex=nilindex(A),
        filtration_dims=dims,
        gradation_dims=grad,
        char_seq=characteristic_sequence(A, sampler).blocks,
        right_ann_dim=right_annihilator(A).dim,
        left_ann_dim=left_annihilator(A).dim,
        center_dim=center(A).dim,
    )


def same_fingerprint(A: Algebra, B: Algebra, sampler: SamplerConfig | None = None) -> bool:
    """False certifies ``A`` and ``B`` are not isomorphic; True proves nothing."""
    return fingerprint(A, sampler) == fingerprint(B, sampler)


def random_invertible(n: int, rng: random.Random, bound: int = 3) -> QMatrix:
    """Random invertible rational matrix with small entries (rejection sampled)."""
    while True:
        P = QMatrix.from_rows(
            [[Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)]
        )
        try:
            P.inverse()
        except ArithmeticError:
            continue
        return P


def transported(A: Algebra, rng: random.Random) -> Algebra:
    return apply_basis_change(A, random_invertible(A.dim, rng))

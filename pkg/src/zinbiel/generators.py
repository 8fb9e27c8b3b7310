"""Constructors for the null-filiform, split and p-filiform families.

Basis order is always ``e1 .. e_{n-p}`` followed by ``f1 .. fp``; the
``f``-vectors are grouped into gradation layers of sizes ``s_1, .., s_{n-p}``
so that layer ``t`` holds ``f_{S_{t-1}+1} .. f_{S_t}`` with ``S_t`` the partial
sums of ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .algebra import Algebra


class OutOfRange(ValueError):
    pass


class InvalidParams(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def binomial(i: int, j: int) -> Fraction:
    """``C_i^j = i! / (j! (i-j)!)``."""
    if not 0 <= j <= i:
        raise OutOfRange(f"binomial needs 0 <= j <= i, got i={i}, j={j}")
    return Fraction(comb(i, j))


def _nf_products(m: int) -> dict:
    return {
        (i, j): {i + j: binomial(i + j - 1, j)}
        for i in range(1, m)
        for j in range(1, m - i + 1)
    }


def make_null_filiform(n: int) -> Algebra:
    """``NF_n``: ``e_i o e_j = C^j_{i+j-1} e_{i+j}`` for ``i + j <= n``."""
    if n < 1:
        raise OutOfRange(f"dimension must be positive, got {n}")
    return Algebra(n, _nf_products(n))


def derive_chain_products(k: int) -> Algebra:
    """Rebuild ``NF_k`` from ``e_1 o e_i = e_{i+1}`` and ``e_i o e_1 = i e_{i+1}``.

    Column ``j+1`` of the table is filled from column ``j`` with
    ``e_i o e_{j+1} = i/(j+1) * c(i+1, j) e_{i+j+1}``, where ``c(i+1, j)`` is the
    already derived coefficient of ``e_{i+1} o e_j``.  No closed form is used,
    so this serves as an independent check of :func:`make_null_filiform`.
    """
    if k < 2:
        raise OutOfRange(f"need k >= 2, got {k}")
    coeff: dict[tuple[int, int], Fraction] = {}
    for i in range(1, k):
        coeff[(1, i)] = Fraction(1)
        coeff[(i, 1)] = Fraction(i)
    for j in range(1, k):
        for i in range(2, k - j):
            # e_i o e_{j+1} = (e_i o e_1) o e_j - e_i o (e_j o e_1)
            #              = i e_{i+1} o e_j - j e_i o e_{j+1}
            coeff[(i, j + 1)] = Fraction(i, j + 1) * coeff[(i + 1, j)]
    products = {(i, j): {i + j: c} for (i, j), c in coeff.items() if i + j <= k}
    return Algebra(k, products)


def _split_labels(m: int, p: int) -> list[str]:
    return [f"e{i}" for i in range(1, m + 1)] + [f"f{i}" for i in range(1, p + 1)]


def make_split(n: int, p: int) -> Algebra:
    """``NF_{n-p}`` plus ``p`` central basis vectors with all products zero."""
    if not 1 <= p < n:
        raise OutOfRange(f"need 1 <= p < n, got n={n}, p={p}")
    m = n - p
    return Algebra(n, _nf_products(m), _split_labels(m, p))


@dataclass(frozen=True)
class FamilyParams:
    n: int
    p: int
    s: tuple
    r: int = 0
    alpha: int = 0

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))

    @property
    def m(self) -> int:
        """Length of the long Jordan chain, ``n - p``."""
        return self.n - self.p

    def partial_sums(self) -> list[int]:
        out = [0]
        for x in self.s:
            out.append(out[-1] + x)
        return out

    def to_dict(self) -> dict:
        return {"n": self.n, "p": self.p, "s": list(self.s), "r": self.r, "alpha": self.alpha}

    @classmethod
    def from_dict(cls, d) -> "FamilyParams":
        try:
            return cls(int(d["n"]), int(d["p"]), tuple(int(x) for x in d["s"]),
                       int(d.get("r", 0)), int(d.get("alpha", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidParams([f"malformed parameters: {exc}"]) from None


def validate_params(P: FamilyParams) -> list[str]:
    """Every violated constraint on ``P``; an empty list means the parameters are usable."""
    problems = []
    n, p, s = P.n, P.p, P.s
    if not 0 < p < n:
        problems.append(f"need 0 < p < n, got n={n}, p={p}")
    m = n - p
    if m < 4:
        problems.append(f"n-p = {m} < 4")
    if len(s) != m:
        problems.append(f"s has {len(s)} entries, expected n-p = {m}")
    if any(x < 0 for x in s):
        problems.append("s has negative entries")
    if sum(s) != p:
        problems.append(f"sum of s is {sum(s)}, expected p = {p}")
    if any(a < b for a, b in zip(s, s[1:])):
        problems.append("s is not descending")
    if s and s[0] >= p:
        problems.append(f"s_1 = {s[0]} must be < p = {p}")
    for k, x in enumerate(s):
        if x == 0 and sum(s[:k]) != p:
            problems.append(f"s_{k + 1} = 0 before the f-vectors are exhausted")
            break
    if P.alpha not in (0, 1):
        problems.append(f"alpha must be 0 or 1, got {P.alpha}")
    if P.r < 0:
        problems.append(f"r must be non-negative, got {P.r}")
    if len(s) >= 2 and P.r > max(s[-2], 1):
        problems.append(f"r = {P.r} exceeds max(s_(n-p-1), 1) = {max(s[-2], 1)}")
    if P.alpha == 0 and P.r != 0:
        problems.append("alpha = 0 requires r = 0")
    return problems


def exceeds_proof_bound(P: FamilyParams) -> bool:
    """True when ``r`` lies above ``s_{n-p-2}``, the tighter of the two bounds on ``r``."""
    return len(P.s) >= 3 and P.r > P.s[-3]


def gamma(P: FamilyParams, i: int, j: int) -> int:
    """Antisymmetric coefficient pattern: ``alpha`` on the first ``r - 1`` superdiagonal entries."""
    if j == i + 1 and 1 <= i <= P.r - 1:
        return P.alpha
    if i == j + 1 and 1 <= j <= P.r - 1:
        return -P.alpha
    return 0


def make_family(P: FamilyParams) -> Algebra:
    """Naturally graded p-filiform algebra ``M^alpha(s_1, .., s_{n-p}, r)``.

    Index conventions (``f^{(t)}_i = f_{S_{t-1}+i}``, ``1 <= i <= s_t``):

    * ``e_i o e_j = C^j_{i+j-1} e_{i+j}``;
    * ``f^{(t)}_i o e_j = 1/j! f^{(t+j)}_i`` whenever the target exists;
    * ``f^{(t)}_i o f^{(u)}_j = gamma_ij (t+u-1)! e_{t+u}`` for ``t + u <= n - p``;
    * every ``e o f`` product is zero.

    Targets outside the basis (no ``f^{(t+j)}_i`` because ``s_{t+j} < i``, or
    an ``e``-index above ``n - p``) are dropped.
    """
    problems = validate_params(P)
    if problems:
        raise InvalidParams(problems)
    m, p = P.m, P.p
    S = P.partial_sums()
    products = _nf_products(m)

    def f(layer: int, i: int) -> int:
        """Basis index (1-based) of ``f^{(layer)}_i``."""
        return m + S[layer - 1] + i

    for t in range(1, m + 1):
        for i in range(1, P.s[t - 1] + 1):
            for j in range(1, m - t + 1):
                if i <= P.s[t + j - 1]:
                    products[(f(t, i), j)] = {f(t + j, i): Fraction(1, factorial(j))}
    if P.alpha:
        for t in range(1, m + 1):
            for u in range(1, m + 1 - t):
                for i in range(1, P.s[t - 1] + 1):
                    for j in range(1, P.s[u - 1] + 1):
                        g = gamma(P, i, j)
                        if g:
                            products[(f(t, i), f(u, j))] = {t + u: g * factorial(t + u - 1)}
    return Algebra(P.n, products, _split_labels(m, p))


def descending_compositions(p: int, parts: int):
    """All weakly decreasing tuples of ``parts`` non-negative integers summing to ``p``."""
    def rec(remaining, k, cap):
        if k == 0:
            if remaining == 0:
                yield ()
            return
        for x in range(min(remaining, cap), -1, -1):
            if x * k < remaining:
                break
            for rest in rec(remaining - x, k - 1, x):
                yield (x,) + rest
    yield from rec(p, parts, p)


def family_grid(max_n: int = 16, chain_lengths=(4, 5, 6)):
    """Every valid :class:`FamilyParams` with ``n <= max_n`` and ``n - p`` in ``chain_lengths``."""
    for m in chain_lengths:
        for p in range(1, max_n - m + 1):
            for s in descending_compositions(p, m):
                base = FamilyParams(m + p, p, s)
                if validate_params(base):
                    continue
                yield base
                for r in range(0, s[-2] + 1):
                    P = FamilyParams(m + p, p, s, r, 1)
                    if not validate_params(P):
                        yield P

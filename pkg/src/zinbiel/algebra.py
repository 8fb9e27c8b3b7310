"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` of dimension ``n`` stores the products of basis vectors,
``e_i o e_j = sum_k c[i][j][k] e_k``, sparsely and with 1-based indices.  The
module also provides identity checks (Zinbiel, Leibniz), the left-normed power
filtration, annihilators, the center, basis changes and the JSON file format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    DimensionMismatch,
    NotNilpotent,
    QMatrix,
    Singular,
    Subspace,
    full_space,
    kernel_basis,
    q,
    span_reduce,
    unit_vector,
)


class AlgebraFormatError(ValueError):
    """Malformed algebra data (bad indices, zero coefficients, unparsable JSON)."""


class Algebra:
    """Immutable structure-constant table.

    ``products`` maps ``(i, j)`` to ``{k: coeff}``; indices are 1-based and
    absent pairs multiply to zero.  Zero coefficients are dropped on input.
    """

    __slots__ = ("dim", "labels", "_table", "_key", "_cache")

    def __init__(
        self,
        dim: int,
        products: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        labels: Sequence[str] | None = None,
    ):
        if not isinstance(dim, int) or dim < 1:
            raise AlgebraFormatError(f"dimension must be a positive integer, got {dim!r}")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), terms in (products or {}).items():
            for idx in (i, j):
                if not 1 <= idx <= dim:
                    raise AlgebraFormatError(f"index {idx} outside 1..{dim}")
            row = {}
            for k, c in terms.items():
                if not 1 <= k <= dim:
                    raise AlgebraFormatError(f"index {k} outside 1..{dim}")
                c = q(c)
                if c:
                    row[k] = c
            if row:
                table[(i, j)] = row
        if labels is None:
            labels = [f"e{i}" for i in range(1, dim + 1)]
        if len(labels) != dim:
            raise AlgebraFormatError(f"{len(labels)} labels for dimension {dim}")
        self.dim = dim
        self.labels = tuple(labels)
        self._table = table
        self._key = tuple(
            (ij, tuple(sorted(table[ij].items()))) for ij in sorted(table)
        )
        self._cache: dict = {}

    # -- access -------------------------------------------------------------

    def product(self, i: int, j: int) -> dict[int, Fraction]:
        """``e_i o e_j`` as ``{k: coeff}`` (1-based, a fresh dict)."""
        return dict(self._table.get((i, j), {}))

    def items(self):
        """Nonzero products as ``((i, j), ((k, c), ...))`` in sorted order."""
        return self._key

    @property
    def table(self) -> tuple:
        return self._key

    def nonzero_pairs(self) -> list[tuple[int, int]]:
        return [ij for ij, _ in self._key]

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.labels == other.labels and self._key == other._key

    def __hash__(self):
        return hash((self.dim, self.labels, self._key))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, products={len(self._key)})"

    def basis_vector(self, i: int) -> tuple:
        """Coordinate vector of the 1-based basis element ``i``."""
        return unit_vector(self.dim, i - 1)

    def index(self, label: str) -> int:
        return self.labels.index(label) + 1

    def relabel(self, labels: Sequence[str]) -> "Algebra":
        return Algebra(self.dim, self._table, labels)

    # -- arithmetic ---------------------------------------------------------

    def _mul_sparse(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        table = self._table
        for i, a in x.items():
            for j, b in y.items():
                terms = table.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms.items():
                        out[k] = out.get(k, 0) + ab * c
        return {k: c for k, c in out.items() if c}

    def to_vector(self, x: Mapping[int, Fraction]) -> tuple:
        v = [Fraction(0)] * self.dim
        for k, c in x.items():
            v[k - 1] = Fraction(c)
        return tuple(v)

    def _sparse(self, x: Sequence) -> dict[int, Fraction]:
        if len(x) != self.dim:
            raise DimensionMismatch(f"vector of length {len(x)} in an algebra of dimension {self.dim}")
        return {i + 1: q(a) for i, a in enumerate(x) if a}

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        return self.to_vector(self._mul_sparse(self._sparse(x), self._sparse(y)))


def multiply(A: Algebra, x: Sequence, y: Sequence) -> tuple:
    """Bilinear product ``x o y`` of coordinate vectors."""
    return A.multiply(x, y)


# -- identities ------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    law: str
    violations: tuple  # ((i, j, k), residual vector), sorted by (i, j, k)

    @property
    def holds(self) -> bool:
        return not self.violations

    def __len__(self):
        return len(self.violations)


def _sub_into(acc: dict, terms: Mapping[int, Fraction], sign: int) -> None:
    for k, c in terms.items():
        acc[k] = acc.get(k, 0) + sign * c


def _zinbiel_sparse(A: Algebra, x, y, z) -> dict[int, Fraction]:
    m = A._mul_sparse
    res: dict[int, Fraction] = {}
    _sub_into(res, m(m(x, y), z), 1)
    _sub_into(res, m(x, m(y, z)), -1)
    _sub_into(res, m(x, m(z, y)), -1)
    return {k: c for k, c in res.items() if c}


def _leibniz_sparse(A: Algebra, x, y, z) -> dict[int, Fraction]:
    m = A._mul_sparse
    res: dict[int, Fraction] = {}
    _sub_into(res, m(x, m(y, z)), 1)
    _sub_into(res, m(m(x, y), z), -1)
    _sub_into(res, m(m(x, z), y), 1)
    return {k: c for k, c in res.items() if c}


def zinbiel_residual(A: Algebra, x: Sequence, y: Sequence, z: Sequence) -> tuple:
    """``(x o y) o z - x o (y o z) - x o (z o y)``; zero exactly when the identity holds."""
    return A.to_vector(_zinbiel_sparse(A, A._sparse(x), A._sparse(y), A._sparse(z)))


def leibniz_residual(A: Algebra, x: Sequence, y: Sequence, z: Sequence) -> tuple:
    """``[x,[y,z]] - [[x,y],z] + [[x,z],y]`` with the bracket read as the table's product."""
    return A.to_vector(_leibniz_sparse(A, A._sparse(x), A._sparse(y), A._sparse(z)))


def _scan(A: Algebra, law: str, fn) -> IdentityReport:
    n = A.dim
    basis = [{i: Fraction(1)} for i in range(1, n + 1)]
    violations = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = fn(A, basis[i], basis[j], basis[k])
                if r:
                    violations.append(((i + 1, j + 1, k + 1), A.to_vector(r)))
    return IdentityReport(law, tuple(violations))


def check_zinbiel(A: Algebra) -> IdentityReport:
    """Evaluate the Zinbiel identity on all ``n^3`` basis triples.

    By trilinearity an empty report means the identity holds on the whole algebra.
    """
    return _scan(A, "zinbiel", _zinbiel_sparse)


def check_leibniz(A: Algebra) -> IdentityReport:
    return _scan(A, "leibniz", _leibniz_sparse)


# -- filtration and annihilators -------------------------------------------


def _products_span(A: Algebra, left: Iterable[Sequence], right: Iterable[Sequence]) -> Subspace:
    right = [A._sparse(v) for v in right]
    out = []
    for x in left:
        xs = A._sparse(x)
        for v in right:
            p = A._mul_sparse(xs, v)
            if p:
                out.append(A.to_vector(p))
    return span_reduce(out, A.dim)


def power_filtration(A: Algebra) -> list[Subspace]:
    """``[L^1, L^2, ...]`` with ``L^{k+1} = L o L^k``.

    Ends with the zero subspace for nilpotent algebras; otherwise ends at the
    last new term, which then reproduces itself.
    """
    cached = A._cache.get("filtration")
    if cached is not None:
        return list(cached)
    n = A.dim
    full = full_space(n)
    terms = [full]
    while not terms[-1].is_zero():
        nxt = _products_span(A, full.basis, terms[-1].basis)
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    A._cache["filtration"] = tuple(terms)
    return terms


def nilindex(A: Algebra) -> int:
    """Smallest ``s`` with ``L^s != 0`` and ``L^{s+1} = 0``; raises NotNilpotent otherwise."""
    terms = power_filtration(A)
    if not terms[-1].is_zero():
        raise NotNilpotent(f"power filtration stabilises at dimension {terms[-1].dim}")
    return len(terms) - 1


def _annihilator_rows(A: Algebra, side: str) -> list[list[Fraction]]:
    # one row per (fixed basis y, output coordinate k), columns indexed by x
    n = A.dim
    rows = {}
    for (i, j), terms in A._table.items():
        x, y = (i, j) if side == "right" else (j, i)
        for k, c in terms.items():
            rows.setdefault((y, k), [Fraction(0)] * n)[x - 1] += c
    return list(rows.values())


def _kernel_of_rows(n: int, rows: list) -> Subspace:
    if not rows:
        return full_space(n)
    return kernel_basis(QMatrix(len(rows), n, tuple(tuple(r) for r in rows)))


def right_annihilator(A: Algebra) -> Subspace:
    """``{x : x o y = 0 for all y}``."""
    return _kernel_of_rows(A.dim, _annihilator_rows(A, "right"))


def left_annihilator(A: Algebra) -> Subspace:
    """``{x : y o x = 0 for all y}``."""
    return _kernel_of_rows(A.dim, _annihilator_rows(A, "left"))


def center(A: Algebra) -> Subspace:
    return _kernel_of_rows(A.dim, _annihilator_rows(A, "right") + _annihilator_rows(A, "left"))


# -- basis change -----------------------------------------------------------


def apply_basis_change(A: Algebra, P: QMatrix) -> Algebra:
    """Rewrite ``A`` in the basis whose vectors are the columns of ``P``."""
    n = A.dim
    if P.rows != n or P.cols != n:
        raise DimensionMismatch(f"{P.rows}x{P.cols} basis change for dimension {n}")
    try:
        Pinv = P.inverse()
    except Singular:
        raise Singular("basis change matrix is not invertible") from None
    cols = [A._sparse(P.column(j)) for j in range(n)]
    products = {}
    for i in range(n):
        for j in range(n):
            p = A._mul_sparse(cols[i], cols[j])
            if p:
                coords = Pinv @ A.to_vector(p)
                products[(i + 1, j + 1)] = {k + 1: c for k, c in enumerate(coords) if c}
    return Algebra(n, products, A.labels)


# -- JSON -------------------------------------------------------------------


def _qstr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_dict(A: Algebra) -> dict:
    return {
        "dim": A.dim,
        "labels": list(A.labels),
        "products": [
            {"i": i, "j": j, "terms": [{"k": k, "q": _qstr(c)} for k, c in terms]}
            for (i, j), terms in A.items()
        ],
    }


def to_json(A: Algebra) -> str:
    """Canonical JSON: sorted keys, products sorted by ``(i, j)``, terms by ``k``."""
    return json.dumps(to_dict(A), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def from_dict(data: Mapping) -> Algebra:
    try:
        dim = data["dim"]
        labels = data.get("labels")
        entries = data.get("products", [])
    except (TypeError, KeyError, AttributeError) as exc:
        raise AlgebraFormatError(f"missing field: {exc}") from None
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise AlgebraFormatError(f"'dim' must be an integer, got {dim!r}")
    products: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in entries:
        try:
            i, j = entry["i"], entry["j"]
            terms = entry["terms"]
        except (TypeError, KeyError) as exc:
            raise AlgebraFormatError(f"malformed product entry {entry!r}: missing {exc}") from None
        if (i, j) in products:
            raise AlgebraFormatError(f"duplicate product entry ({i},{j})")
        row: dict[int, Fraction] = {}
        for t in terms:
            try:
                k, c = t["k"], Fraction(str(t["q"]))
            except (TypeError, KeyError, ValueError, ZeroDivisionError) as exc:
                raise AlgebraFormatError(f"malformed term {t!r} in ({i},{j}): {exc}") from None
            if k in row:
                raise AlgebraFormatError(f"duplicate target {k} in ({i},{j})")
            if c == 0:
                raise AlgebraFormatError(f"zero coefficient for target {k} in ({i},{j})")
            row[k] = c
        products[(i, j)] = row
    return Algebra(dim, products, labels)


def from_json(text: str) -> Algebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def load(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return from_json(fh.read())


def dump(A: Algebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json(A))


def format_table(A: Algebra) -> str:
    """Human multiplication table, one nonzero product per line, e.g. ``f1∘e2 = 1/2 f7``."""
    lines = []
    for (i, j), terms in A.items():
        rhs = []
        for k, c in terms:
            coeff = "" if c == 1 else ("-" if c == -1 else _qstr(c) + " ")
            rhs.append(f"{coeff}{A.labels[k - 1]}")
        expr = " + ".join(rhs).replace("+ -", "- ")
        lines.append(f"{A.labels[i - 1]}∘{A.labels[j - 1]} = {expr}")
    return "\n".join(lines)

"""Exact linear algebra over the rationals.

Vectors are plain tuples of :class:`fractions.Fraction`; matrices are
:class:`QMatrix` values (row-major, immutable).  Subspaces are stored by the
nonzero rows of their reduced row-echelon form, which is unique, so two
:class:`Subspace` objects compare equal exactly when they span the same space.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
QVector = tuple  # tuple[Fraction, ...]

_Number = Union[int, Fraction, str]


class DimensionMismatch(ValueError):
    """Operands live in spaces of different dimension."""


class NotNilpotent(ArithmeticError):
    """An operator or algebra expected to be nilpotent is not."""


class Singular(ArithmeticError):
    """A matrix expected to be invertible is not."""


def q(x: _Number) -> Fraction:
    """Coerce ``x`` (int, Fraction or a literal such as ``"-3/4"``) to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(entries: Iterable[_Number]) -> QVector:
    return tuple(q(x) for x in entries)


def zero_vector(n: int) -> QVector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> QVector:
    """The ``i``-th standard basis vector of length ``n`` (0-based ``i``)."""
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def is_zero_vector(v: Sequence[Fraction]) -> bool:
    return not any(v)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> QVector:
    if len(u) != len(v):
        raise DimensionMismatch(f"lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def scale(c: Fraction, v: Sequence[Fraction]) -> QVector:
    return tuple(c * a for a in v)


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> QVector:
    if len(u) != len(v):
        raise DimensionMismatch(f"lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[_Number]], cols: int | None = None) -> "QMatrix":
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[_Number]], rows: int | None = None) -> "QMatrix":
        if rows is None:
            rows = len(columns[0])
        return cls.from_rows(
            ([columns[j][i] for j in range(len(columns))] for i in range(rows)), cols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> QVector:
        return self.entries[i]

    def column(self, j: int) -> QVector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                       tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            cols_b = [other.column(j) for j in range(other.cols)]
            out = []
            for r in self.entries:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append(tuple(sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols_b))
            return QMatrix(self.rows, other.cols, tuple(out))
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ vector of length {len(v)}")
        nzv = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nzv), Fraction(0)) for r in self.entries)

    def __pow__(self, k: int) -> "QMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        out = QMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def inverse(self) -> "QMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = QMatrix.from_rows(
            [list(self.entries[i]) + list(unit_vector(n, i)) for i in range(n)], cols=2 * n
        )
        R, pivots, rank_ = _rref_rows(aug, limit=n)
        if rank_ < n or pivots[:n] != list(range(n)):
            raise Singular("matrix is not invertible")
        return QMatrix(n, n, tuple(tuple(R[i][n:]) for i in range(n)))


def _rref_rows(M: QMatrix, limit: int | None = None):
    """Row-reduce ``M``; pivots are only searched in the first ``limit`` columns."""
    rows = [list(r) for r in M.entries]
    ncols = M.cols if limit is None else limit
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        if prow == len(rows):
            break
        found = next((i for i in range(prow, len(rows)) if rows[i][col]), None)
        if found is None:
            continue
        rows[prow], rows[found] = rows[found], rows[prow]
        piv = rows[prow]
        inv = 1 / piv[col]
        if inv != 1:
            piv = [a * inv for a in piv]
            rows[prow] = piv
        nz = [k for k in range(col, M.cols) if piv[k]]
        for i, r in enumerate(rows):
            if i != prow and r[col]:
                c = r[col]
                for k in nz:
                    r[k] -= c * piv[k]
        pivots.append(col)
        prow += 1
    return rows, pivots, len(pivots)


def rref(M: QMatrix) -> tuple[QMatrix, list[int], int]:
    """Reduced row-echelon form of ``M`` with its pivot columns and rank."""
    rows, pivots, rank_ = _rref_rows(M)
    return QMatrix(M.rows, M.cols, tuple(tuple(r) for r in rows)), pivots, rank_


def rank(M: QMatrix) -> int:
    return _rref_rows(M)[2]


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held in canonical (RREF) form."""

    ambient_dim: int
    basis: tuple  # tuple of QVector, nonzero RREF rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def __contains__(self, v) -> bool:
        return in_span(v, self) is not None

    def __le__(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(b in other for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return span_reduce(self.basis + other.basis, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersection(self, other)

    def matrix(self) -> QMatrix:
        return QMatrix(self.dim, self.ambient_dim, self.basis)


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(unit_vector(n, i) for i in range(n)))


def span_reduce(vs: Iterable[Sequence[_Number]], ambient_dim: int | None = None) -> Subspace:
    """Canonical subspace spanned by ``vs``."""
    rows = [vec(v) for v in vs]
    if ambient_dim is None:
        if not rows:
            raise DimensionMismatch("ambient dimension needed for an empty spanning set")
        ambient_dim = len(rows[0])
    for r in rows:
        if len(r) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(r)} in Q^{ambient_dim}")
    if not rows:
        return zero_subspace(ambient_dim)
    R, _, k = _rref_rows(QMatrix(len(rows), ambient_dim, tuple(rows)))
    return Subspace(ambient_dim, tuple(tuple(r) for r in R[:k]))


def in_span(v: Sequence[_Number], S: Subspace) -> QVector | None:
    """Coordinates of ``v`` on the canonical basis of ``S``, or None if ``v`` is not in ``S``."""
    v = vec(v)
    if len(v) != S.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in Q^{S.ambient_dim}")
    # RREF basis: coordinate i is the entry of v at pivot i
    residual = list(v)
    coords = []
    for b in S.basis:
        p = next(k for k, a in enumerate(b) if a)
        c = residual[p]
        coords.append(c)
        if c:
            for k in range(p, len(b)):
                if b[k]:
                    residual[k] -= c * b[k]
    if any(residual):
        return None
    return tuple(coords)


def kernel_basis(M: QMatrix) -> Subspace:
    """Canonical basis of ``{v : M v = 0}``."""
    R, pivots, _ = _rref_rows(M)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    gens = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        gens.append(v)
    return span_reduce(gens, M.cols)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.is_zero() or b.is_zero():
        return zero_subspace(a.ambient_dim)
    # x = sum u_i a_i = sum w_j b_j  <=>  (u, w) in ker [A^T | -B^T]
    n = a.ambient_dim
    cols = list(a.basis) + [scale(Fraction(-1), w) for w in b.basis]
    K = kernel_basis(QMatrix.from_columns(cols, rows=n))
    vs = []
    for kv in K.basis:
        x = [Fraction(0)] * n
        for c, u in zip(kv[: a.dim], a.basis):
            if c:
                for t in range(n):
                    x[t] += c * u[t]
        vs.append(x)
    return span_reduce(vs, n)


def rank_sequence(N: QMatrix) -> list[int]:
    """``[rank N^0, rank N^1, ...]`` stopping at the first zero power.

    Raises :class:`NotNilpotent` if ``N^dim`` is nonzero.
    """
    if N.rows != N.cols:
        raise DimensionMismatch("rank sequence of a non-square matrix")
    n = N.rows
    seq = [n]
    P = N
    for _ in range(n):
        r = rank(P)
        seq.append(r)
        if r == 0:
            return seq
        P = P @ N
    raise NotNilpotent(f"N^{n} is nonzero")


@dataclass(frozen=True)
class Feasible:
    particular: QVector
    kernel: Subspace


@dataclass(frozen=True)
class Infeasible:
    """``row`` is the RREF row ``[0 ... 0 | rhs]`` with ``rhs != 0``.

    ``multipliers`` combine the original equations into that row, so
    ``multipliers @ A == 0`` and ``multipliers @ b == rhs``.
    """

    row: QVector
    rhs: Fraction
    multipliers: QVector


def solve_affine(A: QMatrix, b: Sequence[_Number]) -> Feasible | Infeasible:
    """Solve ``A x = b`` exactly."""
    b = vec(b)
    if len(b) != A.rows:
        raise DimensionMismatch(f"{A.rows} equations but {len(b)} right-hand sides")
    m, n = A.rows, A.cols
    aug = QMatrix(
        m,
        n + 1 + m,
        tuple(tuple(A.entries[i]) + (b[i],) + unit_vector(m, i) for i in range(m)),
    )
    rows, pivots, k = _rref_rows(aug, limit=n + 1)
    if n in pivots:
        i = pivots.index(n)
        r = rows[i]
        return Infeasible(row=tuple(r[: n + 1]), rhs=r[n], multipliers=tuple(r[n + 1:]))
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = rows[i][n]
    K = kernel_basis(A)
    return Feasible(particular=tuple(x), kernel=K)

"""Structure constants as unknowns: extracting and solving affine constraints.

A partially specified multiplication table is an :class:`AffineTensor` whose
entries are affine expressions in named unknowns.  Evaluating the Zinbiel
residual on a basis triple gives one affine expression per coordinate; when no
product of two unknowns arises these are linear equations, and an inconsistent
system is an exact proof that no algebra fits the template.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Algebra
from .generators import OutOfRange
from .linalg import Feasible, Infeasible, QMatrix, q, solve_affine


class QuadraticTerm(ArithmeticError):
    """A product of two non-constant affine expressions was requested."""


def _name_key(name: str):
    parts = name.split("_")
    if parts[0] == "u" and all(p.isdigit() for p in parts[1:]):
        return (0, tuple(int(p) for p in parts[1:]), name)
    return (1, (), name)


class AffineScalar:
    """``constant + sum coeff * unknown`` with exact rational coefficients."""

    __slots__ = ("constant", "terms")

    def __init__(self, constant=0, terms: Mapping[str, object] | None = None):
        self.constant = q(constant)
        self.terms = {k: q(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def unknown(cls, name: str) -> "AffineScalar":
        return cls(0, {name: 1})

    def is_constant(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        return not self.terms and not self.constant

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: "AffineScalar") -> "AffineScalar":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return AffineScalar(self.constant + other.constant, terms)

    def __neg__(self) -> "AffineScalar":
        return AffineScalar(-self.constant, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "AffineScalar") -> "AffineScalar":
        return self + (-other)

    def scale(self, c: Fraction) -> "AffineScalar":
        return AffineScalar(c * self.constant, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "AffineScalar") -> "AffineScalar":
        if self.is_zero() or other.is_zero():
            return AffineScalar()
        if self.is_constant():
            return other.scale(self.constant)
        if other.is_constant():
            return self.scale(other.constant)
        raise QuadraticTerm(f"({self}) * ({other})")

    def substitute(self, values: Mapping[str, Fraction]) -> Fraction:
        return self.constant + sum((c * values[k] for k, c in self.terms.items()), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, AffineScalar):
            return NotImplemented
        return self.constant == other.constant and self.terms == other.terms

    def __hash__(self):
        return hash((self.constant, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        parts = [f"{c}*{k}" for k, c in sorted(self.terms.items(), key=lambda kv: _name_key(kv[0]))]
        if self.constant or not parts:
            parts.insert(0, str(self.constant))
        return " + ".join(parts)


AffineVector = dict  # {k (1-based): AffineScalar}, zero entries omitted


class AffineTensor:
    """Multiplication table with affine entries.

    ``tensor[(i, j)]`` is ``{k: AffineScalar}``; absent pairs are known zeros.
    ``aliases`` attaches display names to generated unknowns.
    """

    def __init__(self, dim: int, tensor=None, labels: Sequence[str] | None = None,
                 aliases: Mapping[str, str] | None = None):
        self.dim = dim
        self.tensor: dict[tuple[int, int], dict[int, AffineScalar]] = {}
        for ij, terms in (tensor or {}).items():
            row = {k: v for k, v in terms.items() if not v.is_zero()}
            if row:
                self.tensor[ij] = row
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(1, dim + 1))
        self.aliases = dict(aliases or {})

    @classmethod
    def from_algebra(cls, A: Algebra) -> "AffineTensor":
        tensor = {ij: {k: AffineScalar(c) for k, c in terms} for ij, terms in A.items()}
        return cls(A.dim, tensor, A.labels)

    def is_known(self, i: int, j: int) -> bool:
        return all(v.is_constant() for v in self.tensor.get((i, j), {}).values())

    def unknowns(self) -> list[str]:
        names = {name for row in self.tensor.values() for v in row.values() for name in v.terms}
        return sorted(names, key=_name_key)

    def with_unknown_products(self, pairs: Iterable[tuple[int, int]]) -> "AffineTensor":
        """Copy where each listed product becomes a vector of fresh unknowns ``u_i_j_k``."""
        tensor = {ij: dict(row) for ij, row in self.tensor.items()}
        for i, j in pairs:
            tensor[(i, j)] = {
                k: AffineScalar.unknown(f"u_{i}_{j}_{k}") for k in range(1, self.dim + 1)
            }
        return AffineTensor(self.dim, tensor, self.labels, self.aliases)

    def display(self, name: str) -> str:
        return self.aliases.get(name, name)

    # -- evaluation --------------------------------------------------------

    def multiply(self, x: AffineVector, y: AffineVector) -> AffineVector:
        out: dict[int, AffineScalar] = {}
        for i, a in x.items():
            for j, b in y.items():
                row = self.tensor.get((i, j))
                if not row:
                    continue
                ab = a * b
                if ab.is_zero():
                    continue
                for k, c in row.items():
                    term = ab * c
                    out[k] = out[k] + term if k in out else term
        return {k: v for k, v in out.items() if not v.is_zero()}

    def basis(self, i: int) -> AffineVector:
        return {i: AffineScalar(1)}

    def zinbiel_residual(self, i: int, j: int, k: int) -> AffineVector:
        """``(e_i o e_j) o e_k - e_i o (e_j o e_k) - e_i o (e_k o e_j)``.

        Raises :class:`QuadraticTerm` if the expansion is not affine.
        """
        x, y, z = self.basis(i), self.basis(j), self.basis(k)
        m = self.multiply
        res: dict[int, AffineScalar] = {}
        for sign, vecs in ((1, m(m(x, y), z)), (-1, m(x, m(y, z))), (-1, m(x, m(z, y)))):
            for t, v in vecs.items():
                v = v if sign > 0 else -v
                res[t] = res[t] + v if t in res else v
        return {t: v for t, v in res.items() if not v.is_zero()}


@dataclass
class ConstraintSystem:
    """Linear equations ``rows @ unknowns = rhs`` with their provenance."""

    rows: QMatrix
    rhs: tuple
    skipped: list
    unknowns: list
    origins: list = field(default_factory=list)  # (triple, coordinate index) per row

    def __iter__(self):
        # unpacks as (rows, rhs, skipped)
        return iter((self.rows, self.rhs, self.skipped))


def residual_constraints(T: AffineTensor, triples: Sequence[tuple[int, int, int]]) -> ConstraintSystem:
    """One equation per nonzero coordinate of each affine Zinbiel residual.

    Columns follow ``T.unknowns()``; triples whose expansion multiplies two
    unknowns are listed in ``skipped`` and contribute no equations.
    """
    unknowns = T.unknowns()
    col = {name: c for c, name in enumerate(unknowns)}
    rows, rhs, origins, skipped = [], [], [], []
    for triple in triples:
        try:
            res = T.zinbiel_residual(*triple)
        except QuadraticTerm:
            skipped.append(tuple(triple))
            continue
        for coord in sorted(res):
            expr = res[coord]
            row = [Fraction(0)] * len(unknowns)
            for name, c in expr.terms.items():
                row[col[name]] = c
            rows.append(tuple(row))
            rhs.append(-expr.constant)
            origins.append((tuple(triple), coord))
    return ConstraintSystem(QMatrix(len(rows), len(unknowns), tuple(rows)), tuple(rhs),
                            skipped, unknowns, origins)


# -- second-type impossibility -----------------------------------------------------


def make_second_type_template(n: int, p: int) -> AffineTensor:
    """Second-type law on ``e1..e_{n-p}, f1..fp`` with ``e2 o e1`` left open.

    ``e1`` acts as ``e1 o e1 = 0``, ``e1 o e_i = e_{i+1}``, ``e1 o e_{n-p} = f1``,
    ``e1 o f_j = 0``.  The coefficients of ``e2 o e1`` on ``e3 .. e_{n-p}`` and
    ``f1 .. fp`` are unknowns (aliases ``alpha``, ``gamma4..``, ``beta1..``).
    Every other product is a known zero until replaced by the caller.
    """
    m = n - p
    if m < 2 or p < 1:
        raise OutOfRange(f"second-type template needs n-p >= 2 and p >= 1, got n={n}, p={p}")
    one = AffineScalar(1)
    tensor: dict[tuple[int, int], dict[int, AffineScalar]] = {}
    for i in range(2, m):
        tensor[(1, i)] = {i + 1: one}
    tensor[(1, m)] = {m + 1: one}
    aliases = {}
    e2e1 = {}
    for k in range(3, n + 1):
        name = f"u_2_1_{k}"
        e2e1[k] = AffineScalar.unknown(name)
        if k == 3:
            aliases[name] = "alpha"
        elif k <= m:
            aliases[name] = f"gamma{k}"
        else:
            aliases[name] = f"beta{k - m}"
    tensor[(2, 1)] = e2e1
    labels = [f"e{i}" for i in range(1, m + 1)] + [f"f{i}" for i in range(1, p + 1)]
    return AffineTensor(n, tensor, labels, aliases)


@dataclass(frozen=True)
class InfeasibilityCertificate:
    n: int
    p: int
    triples_used: tuple
    skipped_count: int
    rhs: Fraction
    combination: tuple  # ((triple, coordinate label, multiplier), ...)
    forced_coordinate: str

    def to_dict(self) -> dict:
        return {
            "status": "infeasible",
            "n": self.n,
            "p": self.p,
            "row": {
                "coefficients": {},
                "rhs": _qstr(self.rhs),
                "forced_coordinate": self.forced_coordinate,
                "combination": [
                    {"triple": list(t), "coordinate": c, "multiplier": _qstr(mult)}
                    for t, c, mult in self.combination
                ],
            },
            "triples_used": [list(t) for t in self.triples_used],
            "skipped_count": self.skipped_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class Inconclusive:
    n: int
    p: int
    triples_used: tuple
    skipped_count: int

    def to_dict(self) -> dict:
        return {"status": "inconclusive", "n": self.n, "p": self.p,
                "triples_used": [list(t) for t in self.triples_used],
                "skipped_count": self.skipped_count}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _qstr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def proof_schedule(n: int) -> list[tuple[int, int, int]]:
    """Triples replayed first: the three steps of the contradiction, then every
    remaining triple with ``e1`` in one of the first two slots."""
    head = [(1, 1, 2), (1, 2, 1), (1, 1, 3)]
    rest = [(a, b, c) for a in range(1, n + 1) for b in range(1, n + 1) for c in range(1, n + 1)
            if 1 in (a, b) and (a, b, c) not in head]
    return head + rest


def open_template(n: int, p: int) -> AffineTensor:
    """Second-type template in which every product not fixed by ``e1 o -`` is unknown."""
    T = make_second_type_template(n, p)
    pairs = [(i, j) for i in range(2, n + 1) for j in range(1, n + 1) if (i, j) != (2, 1)]
    return T.with_unknown_products(pairs)


def prove_second_type_impossible(n: int, p: int):
    """Exhibit a rational combination of Zinbiel equations reading ``0 = c != 0``.

    Only the ``e1``-row of the second-type law and the shape of ``e2 o e1`` are
    assumed; all other products are unknowns.  Triples are added in stages
    (the three-step schedule, then the rest of :func:`proof_schedule`, then all
    other affine triples) and the system is re-solved after each stage.
    Returns :class:`InfeasibilityCertificate` or :class:`Inconclusive`.
    """
    m = n - p
    if p < 1 or m < 4:
        raise OutOfRange(f"impossibility needs n-p >= 4 and p >= 1, got n={n}, p={p}")
    T = open_template(n, p)
    schedule = proof_schedule(n)
    in_schedule = set(schedule)
    others = [(a, b, c) for a in range(1, n + 1) for b in range(1, n + 1) for c in range(1, n + 1)
              if (a, b, c) not in in_schedule]
    stages = [schedule[:3], schedule[:], schedule + others]
    system = None
    for triples in stages:
        system = residual_constraints(T, triples)
        used = [t for t in triples if t not in set(system.skipped)]
        cols = sorted({c for r in system.rows.entries for c, a in enumerate(r) if a})
        A = QMatrix(system.rows.rows, len(cols), tuple(tuple(r[c] for c in cols) for r in system.rows.entries))
        result = solve_affine(A, system.rhs)
        if isinstance(result, Infeasible):
            combo = []
            for idx, mult in enumerate(result.multipliers):
                if mult:
                    triple, coord = system.origins[idx]
                    combo.append((triple, T.labels[coord - 1], mult))
            last = max(combo, key=lambda item: used.index(item[0]))
            return InfeasibilityCertificate(
                n=n, p=p, triples_used=tuple(used), skipped_count=len(system.skipped),
                rhs=result.rhs, combination=tuple(combo), forced_coordinate=last[1],
            )
    return Inconclusive(n=n, p=p, triples_used=tuple(t for t in stages[-1] if t not in set(system.skipped)),
                        skipped_count=len(system.skipped))


def check_certificate(cert: InfeasibilityCertificate) -> bool:
    """Recompute the combination from scratch and confirm it reads ``0 = rhs`` with ``rhs != 0``."""
    T = open_template(cert.n, cert.p)
    total = AffineScalar()
    for triple, label, mult in cert.combination:
        res = T.zinbiel_residual(*triple)
        coord = T.labels.index(label) + 1
        total = total + res.get(coord, AffineScalar()).scale(mult)
    # each equation is  expr = 0, i.e. terms = -constant
    return total.is_constant() and total.constant != 0 and -total.constant == cert.rhs

from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
import sympy

from zinbiel.generators import family_grid, make_family
from zinbiel.linalg import QMatrix


def to_sympy(M: QMatrix) -> sympy.Matrix:
    return sympy.Matrix(M.rows, M.cols, lambda i, j: sympy.Rational(M[i, j].numerator, M[i, j].denominator))


def sympy_rank_sequence(M: QMatrix) -> list[int]:
    """Ranks of N^0, N^1, ... via sympy powers, stopping at the first zero."""
    N = to_sympy(M)
    out, P = [N.rows], sympy.eye(N.rows)
    while out[-1]:
        P = P * N
        out.append(P.rank())
    return out


def sympy_jordan_blocks(M: QMatrix) -> tuple:
    _, J = to_sympy(M).jordan_form()
    sizes, run = [], 1
    for i in range(J.rows - 1):
        if J[i, i + 1] == 1:
            run += 1
        else:
            sizes.append(run)
            run = 1
    sizes.append(run)
    return tuple(sorted(sizes, reverse=True))


def nf_oracle(n: int):
    """Null-filiform products straight from the binomial law, as plain dicts."""
    return {
        (i, j): {i + j: Fraction(comb(i + j - 1, j))}
        for i in range(1, n + 1) for j in range(1, n + 1) if i + j <= n
    }


def brute_zinbiel_violations(n: int, table: dict) -> list:
    """Independent triple scan over a dict table ``{(i, j): {k: c}}``."""
    def mul(x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for k, c in table.get((a, b), {}).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return {k: v for k, v in out.items() if v}

    bad = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                x, y, z = {i: 1}, {j: 1}, {k: 1}
                lhs = mul(mul(x, y), z)
                rhs = mul(x, mul(y, z))
                for t, c in mul(x, mul(z, y)).items():
                    rhs[t] = rhs.get(t, 0) + c
                if {t: c for t, c in lhs.items() if c} != {t: c for t, c in rhs.items() if c}:
                    bad.append((i, j, k))
    return bad


@pytest.fixture(scope="session")
def grid():
    return [(P, make_family(P)) for P in family_grid()]


ACCEPTANCE_LINES: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

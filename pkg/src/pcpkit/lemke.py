"""Lemke's complementary pivoting for linear complementarity problems.

Solves: find z >= 0 with w = Mz + q >= 0 and <z, w> = 0.  The covering
vector is all ones and ties in the ratio test are broken
lexicographically (the inverse-basis columns carried in the tableau act
as the perturbation), which rules out cycling on any data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError, PivotBudgetError

COMPLEMENTARITY_TOL = 1e-9


@dataclass(frozen=True)
class LcpResult:
    """Outcome of a Lemke run.

    ``status`` is one of ``"solution"``, ``"trivial"`` (q >= 0, z = 0) or
    ``"ray"`` (secondary ray termination, no conclusion about solvability
    in general).  ``z`` and ``w`` are set unless the run ended on a ray.
    """

    status: str
    z: np.ndarray | None
    w: np.ndarray | None
    pivots: int

    @property
    def solved(self) -> bool:
        return self.status in ("solution", "trivial")


def _lexico_ratio_row(tableau: np.ndarray, column: np.ndarray, eligible: np.ndarray,
                      n: int) -> int:
    """Row index winning the lexicographic minimum ratio test.

    Compares (rhs_i, B^-1 row_i) / column_i lexicographically over the
    eligible rows; the carried inverse-basis columns are the first n
    columns of the tableau.
    """
    rows = np.flatnonzero(eligible)
    # ratio vectors: rhs first, then the inverse-basis block
    ratios = np.column_stack(
        [tableau[rows, -1] / column[rows], tableau[rows, :n] / column[rows, None]]
    )
    best = rows[0]
    best_ratio = ratios[0]
    for k in range(1, len(rows)):
        r = ratios[k]
        for a, b in zip(r, best_ratio):
            if a < b:
                best, best_ratio = rows[k], r
                break
            if a > b:
                break
    return int(best)


def lemke_lcp(M, q, max_pivots: int = 10_000) -> LcpResult:
    """Solve LCP(M, q) by Lemke's method with the all-ones covering vector.

    Returns a trivial solution z = 0 when q >= 0.  Otherwise pivots until
    the artificial variable leaves the basis (solution) or the entering
    column has no positive entry (ray termination).  Exceeding the pivot
    budget raises :class:`PivotBudgetError`; lexicographic tie-breaking
    makes this unreachable on non-degenerate data.
    """
    M = np.asarray(M, dtype=float)
    q = np.asarray(q, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InputError(f"M must be square, got shape {M.shape}")
    n = M.shape[0]
    if q.shape != (n,):
        raise InputError(f"q has shape {q.shape}, expected ({n},)")

    if np.all(q >= 0.0):
        z = np.zeros(n)
        return LcpResult(status="trivial", z=z, w=q.copy(), pivots=0)

    # Tableau for w - Mz - z0*e = q with basis columns carried in place:
    # columns [w_1..w_n | z_1..z_n | z0 | rhs].
    tableau = np.hstack([np.eye(n), -M, -np.ones((n, 1)), q[:, None]])
    basis = list(range(n))  # column index of the basic variable per row
    z0_col = 2 * n

    # z0 enters; the most negative rhs row leaves so the rhs turns nonnegative.
    leaving_row = int(np.argmin(q))
    entering = z0_col

    pivots = 0
    while True:
        pivots += 1
        if pivots > max_pivots:
            raise PivotBudgetError(f"exceeded {max_pivots} pivots")

        # pivot: make `entering` basic in `leaving_row`
        pivot_value = tableau[leaving_row, entering]
        tableau[leaving_row] /= pivot_value
        for i in range(n):
            if i != leaving_row and tableau[i, entering] != 0.0:
                tableau[i] -= tableau[i, entering] * tableau[leaving_row]
        left_variable = basis[leaving_row]
        basis[leaving_row] = entering

        if left_variable == z0_col:
            break  # artificial variable left: complementary solution found

        # drive in the complement of whatever just left the basis
        entering = left_variable + n if left_variable < n else left_variable - n

        column = tableau[:, entering]
        eligible = column > 1e-12
        if not np.any(eligible):
            return LcpResult(status="ray", z=None, w=None, pivots=pivots)
        leaving_row = _lexico_ratio_row(tableau, column, eligible, n)

    z = np.zeros(n)
    w = np.zeros(n)
    for row, variable in enumerate(basis):
        value = tableau[row, -1]
        if variable < n:
            w[variable] = value
        elif variable < 2 * n:
            z[variable - n] = value
    # internal sanity: complementary basic solutions satisfy the system
    residual = M @ z + q - w
    gap = abs(float(z @ w))
    if gap > COMPLEMENTARITY_TOL or np.linalg.norm(residual) > 1e-7 * (
        1.0 + np.linalg.norm(q)
    ):
        raise PivotBudgetError(
            f"pivoting finished with inconsistent basis (gap {gap:.2e})"
        )
    return LcpResult(status="solution", z=z, w=w, pivots=pivots)

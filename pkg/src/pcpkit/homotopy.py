"""Continuation solvers for the natural map's existence homotopies.

Two deformations are tracked, both ending at the natural residual m:

* the reference homotopy  H(x, t) = (1 - t)(x - x_ref) + t m(x),
  starting at the exact root x_ref of H(., 0);
* the leading-term homotopy  H(x, t) = min{(1-t) f_inf(x) + t f(x),
  (1-t) g_inf(x) + t g(x)}, starting at x = 0, the unique root of
  min{f_inf, g_inf} whenever the leading pair has only the trivial
  complementary solution.

The corrector is an active-branch semismooth Newton step: each component
of the min picks the branch with the smaller value (ties pick the f
side) and contributes that branch's gradient row to the generalized
Jacobian.  Tracking failure is recorded as evidence, never as a
certificate of nonexistence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .enumeration import JACOBIAN_CONDITION_LIMIT, SolveConfig
from .exceptions import InputError
from .residuals import PcpInstance, natural_map

CORRECTOR_TOL = 1e-8
DIVERGENCE_NORM = 1e6
STEP_INITIAL = 0.05
STEP_FLOOR = 1e-12
MAX_STEP_ATTEMPTS = 20_000
CORRECTOR_ITERS = 25


@dataclass(frozen=True)
class Checkpoint:
    t: float
    x: np.ndarray
    residual: float

    def to_dict(self) -> dict:
        return {"t": self.t, "x": [float(v) for v in self.x], "residual": self.residual}


@dataclass(frozen=True)
class HomotopyTrace:
    """Accepted checkpoints plus the terminal outcome of one tracked path.

    ``outcome`` is ``"converged"`` (t reached 1 and the natural residual
    came under ``newton_tol``), ``"diverged"`` (the path left the ball of
    radius 1e6) or ``"stalled"`` (step size hit the floor first).
    """

    checkpoints: tuple[Checkpoint, ...]
    outcome: str
    point: np.ndarray | None
    final_t: float
    max_point_norm: float
    message: str = ""

    @property
    def converged(self) -> bool:
        return self.outcome == "converged"

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "point": None if self.point is None else [float(v) for v in self.point],
            "final_t": self.final_t,
            "max_point_norm": self.max_point_norm,
            "message": self.message,
            "checkpoints": [c.to_dict() for c in self.checkpoints],
        }


class _Diverged(Exception):
    def __init__(self, x: np.ndarray):
        self.x = x


HFun = Callable[[np.ndarray, float], np.ndarray]
JFun = Callable[[np.ndarray, float], np.ndarray]


def _correct(h: HFun, jac: JFun, x: np.ndarray, t: float, tol: float,
             max_iters: int) -> tuple[np.ndarray, float, int] | None:
    """Semismooth Newton on H(., t); None signals corrector failure."""
    x = x.copy()
    value = h(x, t)
    norm = float(np.linalg.norm(value))
    for iteration in range(1, max_iters + 1):
        if norm <= tol:
            return x, norm, iteration - 1
        if np.linalg.norm(x) > DIVERGENCE_NORM:
            raise _Diverged(x)
        j = jac(x, t)
        if not (np.isfinite(j).all() and np.isfinite(value).all()):
            return None
        with np.errstate(all="ignore"):
            condition = np.linalg.cond(j)
        if not np.isfinite(condition) or condition > JACOBIAN_CONDITION_LIMIT:
            return None
        step = np.linalg.solve(j, -value)
        scale = 1.0
        improved = False
        for _ in range(31):
            trial = x + scale * step
            trial_value = h(trial, t)
            trial_norm = float(np.linalg.norm(trial_value))
            if np.isfinite(trial_norm) and trial_norm < norm:
                x, value, norm = trial, trial_value, trial_norm
                improved = True
                break
            scale *= 0.5
        if not improved:
            return None
    return (x, norm, max_iters) if norm <= tol else None


def _track(h: HFun, jac: JFun, x0: np.ndarray, cfg: SolveConfig,
           final_residual: Callable[[np.ndarray], float]) -> HomotopyTrace:
    x = np.asarray(x0, dtype=float).copy()
    checkpoints = [Checkpoint(0.0, x.copy(), float(np.linalg.norm(h(x, 0.0))))]
    max_norm = float(np.linalg.norm(x))
    t = 0.0
    step = STEP_INITIAL

    def finish(outcome: str, point=None, message: str = "") -> HomotopyTrace:
        return HomotopyTrace(
            checkpoints=tuple(checkpoints),
            outcome=outcome,
            point=point,
            final_t=t,
            max_point_norm=max_norm,
            message=message,
        )

    for _attempt in range(MAX_STEP_ATTEMPTS):
        if t >= 1.0:
            break
        t_next = min(1.0, t + step)
        try:
            result = _correct(h, jac, x, t_next, CORRECTOR_TOL, CORRECTOR_ITERS)
        except _Diverged as diverged:
            max_norm = max(max_norm, float(np.linalg.norm(diverged.x)))
            return finish(
                "diverged",
                message=f"path norm exceeded {DIVERGENCE_NORM:.0e}",
            )
        if result is None:
            step *= 0.5
            if step < STEP_FLOOR:
                return finish("stalled", message="step size hit the floor")
            continue
        x, residual, iterations = result
        t = t_next
        max_norm = max(max_norm, float(np.linalg.norm(x)))
        checkpoints.append(Checkpoint(t, x.copy(), residual))
        if iterations <= 3:
            step *= 2.0
    else:
        return finish("stalled", message="step attempt budget exhausted")

    # polish the endpoint down to the certification tolerance
    try:
        polished = _correct(h, jac, x, 1.0, cfg.newton_tol, cfg.max_newton_iters)
    except _Diverged as diverged:
        max_norm = max(max_norm, float(np.linalg.norm(diverged.x)))
        return finish("diverged", message=f"endpoint polish left the {DIVERGENCE_NORM:.0e} ball")
    if polished is None:
        return finish("stalled", message="endpoint polish failed")
    x, _, _ = polished
    max_norm = max(max_norm, float(np.linalg.norm(x)))
    residual = final_residual(x)
    # the polish refines the t = 1 checkpoint in place (t stays strictly increasing)
    if checkpoints and checkpoints[-1].t == 1.0:
        checkpoints[-1] = Checkpoint(1.0, x.copy(), residual)
    else:
        checkpoints.append(Checkpoint(1.0, x.copy(), residual))
    if residual <= cfg.newton_tol:
        return finish("converged", point=x.copy())
    return finish("stalled", message="endpoint residual above newton_tol")


def _branch_mask(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """True where the first branch is taken (ties go to the first map)."""
    return a <= b


def track_natural_homotopy(
    inst: PcpInstance, x_ref, cfg: SolveConfig | None = None
) -> HomotopyTrace:
    """Track (1 - t)(x - x_ref) + t m(x) from its exact root at t = 0.

    Convergence of the path is evidence for solvability under the
    reference-point boundedness hypothesis; divergence is evidence
    against the hypothesis, not a proof of nonexistence.
    """
    cfg = cfg or SolveConfig()
    reference = np.asarray(x_ref, dtype=float)
    if reference.shape != (inst.n,):
        raise InputError(f"x_ref has shape {reference.shape}, expected ({inst.n},)")
    eye = np.eye(inst.n)

    def h(x: np.ndarray, t: float) -> np.ndarray:
        return (1.0 - t) * (x - reference) + t * natural_map(inst, x)

    def jac(x: np.ndarray, t: float) -> np.ndarray:
        fx = inst.f.evaluate(x)
        gx = inst.g.evaluate(x)
        take_f = _branch_mask(fx, gx)
        branch = np.where(take_f[:, None], inst.f.jacobian(x), inst.g.jacobian(x))
        return (1.0 - t) * eye + t * branch

    def final_residual(x: np.ndarray) -> float:
        return float(np.linalg.norm(natural_map(inst, x)))

    return _track(h, jac, reference, cfg, final_residual)


def track_leading_homotopy(
    inst: PcpInstance, cfg: SolveConfig | None = None
) -> HomotopyTrace:
    """Deform the leading-pair min map into the natural map, from x = 0.

    The start is the trivial root of min{f_inf, g_inf}; under the
    leading-pair regularity hypothesis the zero paths stay bounded and
    the endpoint solves the full problem.  Lower-order perturbations of
    the instance leave the t = 0 system unchanged.
    """
    cfg = cfg or SolveConfig()
    lead = inst.leading_pair

    def h(x: np.ndarray, t: float) -> np.ndarray:
        f_t = (1.0 - t) * lead.f.evaluate(x) + t * inst.f.evaluate(x)
        g_t = (1.0 - t) * lead.g.evaluate(x) + t * inst.g.evaluate(x)
        return np.minimum(f_t, g_t)

    def jac(x: np.ndarray, t: float) -> np.ndarray:
        f_t = (1.0 - t) * lead.f.evaluate(x) + t * inst.f.evaluate(x)
        g_t = (1.0 - t) * lead.g.evaluate(x) + t * inst.g.evaluate(x)
        take_f = _branch_mask(f_t, g_t)
        jac_f = (1.0 - t) * lead.f.jacobian(x) + t * inst.f.jacobian(x)
        jac_g = (1.0 - t) * lead.g.jacobian(x) + t * inst.g.jacobian(x)
        return np.where(take_f[:, None], jac_f, jac_g)

    def final_residual(x: np.ndarray) -> float:
        return float(np.linalg.norm(natural_map(inst, x)))

    return _track(h, jac, np.zeros(inst.n), cfg, final_residual)

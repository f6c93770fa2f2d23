"""Solution-set enumeration by index-set decomposition.

Every solution of the complementarity problem satisfies, for some index
set I, the square polynomial system {f_i = 0 on I, g_j = 0 off I}.  The
enumerator therefore sweeps all 2^n subsets, solves each square system
by multi-start damped Newton from a low-discrepancy start cloud, filters
the roots by sign feasibility, deduplicates, and certifies the
survivors.  Roots outside the start box can be missed; reports carry the
box so the completeness claim stays honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import qmc

from .exceptions import CertificationError, ComplexityGuardError, InputError
from .polynomials import Polynomial
from .residuals import (
    MAX_SUBSET_DIMENSION,
    PcpInstance,
    min_phi,
    natural_map,
)

JACOBIAN_CONDITION_LIMIT = 1e14
MAX_BACKTRACK_HALVINGS = 30
NON_ISOLATED_CLUSTER_SIZE = 100


@dataclass(frozen=True)
class SolveConfig:
    """Tolerances and budgets for enumeration and path tracking."""

    newton_tol: float = 1e-10
    max_newton_iters: int = 100
    starts_per_subsystem: int = 200
    start_box_radius: float = 10.0
    dedupe_radius: float = 1e-6
    feasibility_tol: float = 1e-8
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("newton_tol", "start_box_radius", "dedupe_radius", "feasibility_tol"):
            if getattr(self, name) <= 0:
                raise InputError(f"{name} must be positive")
        if self.max_newton_iters < 1 or self.starts_per_subsystem < 1:
            raise InputError("iteration and start counts must be >= 1")
        if self.dedupe_radius <= self.newton_tol:
            raise InputError("dedupe_radius must exceed newton_tol")

    def to_dict(self) -> dict:
        return {
            "newton_tol": self.newton_tol,
            "max_newton_iters": self.max_newton_iters,
            "starts_per_subsystem": self.starts_per_subsystem,
            "start_box_radius": self.start_box_radius,
            "dedupe_radius": self.dedupe_radius,
            "feasibility_tol": self.feasibility_tol,
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class SolutionCertificate:
    """A certified solution point with its local diagnostics.

    ``active_set`` is the graded-lex smallest index set witnessing
    min_phi; ``min_abs_det_jac`` is the minimum over all index sets of
    |det Jac_I| at the point, the degeneracy statistic tied to
    unbounded solution sets.
    """

    point: np.ndarray
    active_set: tuple[int, ...]
    residual_norm: float
    strict_complementarity: bool
    min_abs_det_jac: float

    def to_dict(self) -> dict:
        return {
            "point": [float(v) for v in self.point],
            "active_set": list(self.active_set),
            "residual_norm": self.residual_norm,
            "strict_complementarity": self.strict_complementarity,
            "min_abs_det_jac": self.min_abs_det_jac,
        }


@dataclass(frozen=True)
class SolutionSet:
    """Certified, deduplicated solutions found by the enumerator."""

    certificates: tuple[SolutionCertificate, ...]
    config: SolveConfig
    completeness_claim: bool
    warnings: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.certificates)

    @property
    def points(self) -> np.ndarray:
        if not self.certificates:
            return np.zeros((0, 0))
        return np.array([c.point for c in self.certificates])

    def to_dict(self) -> dict:
        return {
            "solutions": [c.to_dict() for c in self.certificates],
            "count": len(self.certificates),
            "completeness_claim": self.completeness_claim,
            "warnings": list(self.warnings),
            "config": self.config.to_dict(),
        }


# ----------------------------------------------------------------------
# square subsystem machinery


def _subsystem_components(inst: PcpInstance, index_set: frozenset[int]) -> tuple[Polynomial, ...]:
    return tuple(
        inst.f.components[i] if i in index_set else inst.g.components[i]
        for i in range(inst.n)
    )


def _system_values(components: Sequence[Polynomial], pts: np.ndarray) -> np.ndarray:
    values = np.empty((pts.shape[0], len(components)))
    for i, component in enumerate(components):
        values[:, i] = component.evaluate(pts)
    return values


def _system_jacobians(components: Sequence[Polynomial], pts: np.ndarray) -> np.ndarray:
    n = len(components)
    jac = np.empty((pts.shape[0], n, n))
    for i, component in enumerate(components):
        for j, part in enumerate(component.gradient):
            jac[:, i, j] = part.evaluate(pts)
    return jac


def _damped_newton_batch(
    components: Sequence[Polynomial],
    starts: np.ndarray,
    tol: float,
    max_iters: int,
) -> np.ndarray:
    """Run damped Newton from every start at once; return converged points.

    Starts whose Jacobian condition estimate exceeds the limit, or whose
    backtracking line search cannot decrease the residual, are abandoned.
    """
    pts = np.array(starts, dtype=float)
    values = _system_values(components, pts)
    norms = np.linalg.norm(values, axis=1)
    alive = np.isfinite(norms)
    # drive well below tol so certification at tol has slack
    target = tol * 1e-2

    for _ in range(max_iters):
        working = np.flatnonzero(alive & (norms > target))
        if working.size == 0:
            break
        jac = _system_jacobians(components, pts[working])
        finite = np.isfinite(jac).all(axis=(1, 2)) & np.isfinite(values[working]).all(axis=1)
        with np.errstate(all="ignore"):
            cond = np.full(len(working), np.inf)
            if finite.any():
                cond[finite] = np.linalg.cond(jac[finite])
        good = finite & (cond < JACOBIAN_CONDITION_LIMIT)
        alive[working[~good]] = False
        working = working[good]
        if working.size == 0:
            continue
        steps = np.linalg.solve(jac[good], -values[working][..., None])[..., 0]

        # vectorized backtracking: halve the step until the residual drops
        pending = np.arange(working.size)
        scale = np.ones(working.size)
        progressed = np.zeros(working.size, dtype=bool)
        for _halving in range(MAX_BACKTRACK_HALVINGS + 1):
            rows = working[pending]
            trial = pts[rows] + scale[pending, None] * steps[pending]
            trial_values = _system_values(components, trial)
            with np.errstate(invalid="ignore"):
                trial_norms = np.linalg.norm(trial_values, axis=1)
            better = np.isfinite(trial_norms) & (trial_norms < norms[rows])
            accepted = rows[better]
            pts[accepted] = trial[better]
            values[accepted] = trial_values[better]
            norms[accepted] = trial_norms[better]
            progressed[pending[better]] = True
            pending = pending[~better]
            if pending.size == 0:
                break
            scale[pending] *= 0.5
        alive[working[~progressed]] = False

    converged = alive & (norms <= tol)
    return pts[converged]


def _dedupe_points(
    points: np.ndarray, priorities: np.ndarray, radius: float
) -> tuple[np.ndarray, int]:
    """Merge points within ``radius``; keep the smallest priority per cluster.

    Ties in priority fall back to lexicographic order of coordinates.
    Returns the representatives and the largest merged cluster size.
    """
    if len(points) == 0:
        return points, 0
    order = sorted(
        range(len(points)), key=lambda k: (priorities[k], tuple(points[k]))
    )
    kept: list[int] = []
    cluster_sizes: list[int] = []
    for k in order:
        assigned = False
        for slot, rep in enumerate(kept):
            if np.linalg.norm(points[k] - points[rep]) <= radius:
                cluster_sizes[slot] += 1
                assigned = True
                break
        if not assigned:
            kept.append(k)
            cluster_sizes.append(1)
    representatives = np.array([points[k] for k in kept])
    return representatives, (max(cluster_sizes) if cluster_sizes else 0)


def _subsystem_starts(
    inst: PcpInstance, index_set: frozenset[int], cfg: SolveConfig, x_ref
) -> np.ndarray:
    """Low-discrepancy start cloud in the start box, plus origin and x_ref.

    The Halton engine is seeded from (rng_seed, subset) only, so the
    first k starts are a prefix of the first 2k: growing the budget never
    loses previously found roots.
    """
    mask = sum(1 << i for i in index_set)
    seed = np.random.SeedSequence(entropy=[cfg.rng_seed, mask])
    engine = qmc.Halton(d=inst.n, scramble=True, seed=np.random.default_rng(seed))
    cloud = (2.0 * engine.random(cfg.starts_per_subsystem) - 1.0) * cfg.start_box_radius
    extra = [np.zeros(inst.n)]
    if x_ref is not None:
        extra.append(np.asarray(x_ref, dtype=float))
    return np.vstack([cloud, *extra])


def solve_subsystem(
    inst: PcpInstance,
    index_set: Iterable[int],
    cfg: SolveConfig | None = None,
    x_ref=None,
) -> np.ndarray:
    """Roots of the square system {f_i = 0 on I, g_j = 0 off I}.

    Multi-start damped Newton; returns deduplicated roots with subsystem
    residual below ``newton_tol``, sorted lexicographically.  An empty
    array means no root was found (which is not a certificate of
    emptiness).
    """
    cfg = cfg or SolveConfig()
    idx = frozenset(int(i) for i in index_set)
    for i in idx:
        if not 0 <= i < inst.n:
            raise InputError(f"index {i} out of range for dimension {inst.n}")
    components = _subsystem_components(inst, idx)
    starts = _subsystem_starts(inst, idx, cfg, x_ref)
    roots = _damped_newton_batch(components, starts, cfg.newton_tol, cfg.max_newton_iters)
    if len(roots) == 0:
        return np.zeros((0, inst.n))
    residuals = np.linalg.norm(_system_values(components, roots), axis=1)
    unique, _ = _dedupe_points(roots, residuals, cfg.dedupe_radius)
    order = np.lexsort(unique.T[::-1])
    return unique[order]


def enumerate_solutions(
    inst: PcpInstance, cfg: SolveConfig | None = None, x_ref=None
) -> SolutionSet:
    """Sweep all 2^n index subsets and certify the feasible roots found."""
    cfg = cfg or SolveConfig()
    n = inst.n
    if n > MAX_SUBSET_DIMENSION:
        raise ComplexityGuardError(
            f"enumeration over 2^{n} subsets refused (cap {MAX_SUBSET_DIMENSION})"
        )

    candidates = []
    for mask in range(1 << n):
        index_set = frozenset(i for i in range(n) if mask & (1 << i))
        roots = solve_subsystem(inst, index_set, cfg, x_ref)
        if len(roots):
            candidates.append(roots)

    warnings: list[str] = []
    certificates: list[SolutionCertificate] = []
    if candidates:
        points = np.vstack(candidates)
        fx = inst.f.evaluate(points)
        gx = inst.g.evaluate(points)
        feasible = np.all(fx >= -cfg.feasibility_tol, axis=1) & np.all(
            gx >= -cfg.feasibility_tol, axis=1
        )
        points = points[feasible]
        if len(points):
            residuals = np.linalg.norm(np.minimum(fx, gx)[feasible], axis=1)
            points, largest_cluster = _dedupe_points(points, residuals, cfg.dedupe_radius)
            if largest_cluster > NON_ISOLATED_CLUSTER_SIZE:
                warnings.append(
                    "non-isolated solutions suspected: a dedupe cluster merged "
                    f"{largest_cluster} points"
                )
            for point in points:
                try:
                    certificates.append(certify_solution(inst, point, cfg))
                except CertificationError:
                    continue
        certificates.sort(key=lambda c: tuple(c.point))

    completeness = not warnings
    return SolutionSet(
        certificates=tuple(certificates),
        config=cfg,
        completeness_claim=completeness,
        warnings=tuple(warnings),
    )


def min_abs_subsystem_determinant(inst: PcpInstance, x) -> float:
    """min over all index sets I of |det Jac_I(x)| with rows f_i on I, g_i off I."""
    n = inst.n
    if n > MAX_SUBSET_DIMENSION:
        raise ComplexityGuardError(
            f"determinant scan over 2^{n} subsets refused (cap {MAX_SUBSET_DIMENSION})"
        )
    jac_f = inst.f.jacobian(x)
    jac_g = inst.g.jacobian(x)
    best = np.inf
    rows = np.empty_like(jac_f)
    for mask in range(1 << n):
        for i in range(n):
            rows[i] = jac_f[i] if mask & (1 << i) else jac_g[i]
        best = min(best, abs(float(np.linalg.det(rows))))
    return best


def certify_solution(
    inst: PcpInstance, x, cfg: SolveConfig | None = None
) -> SolutionCertificate:
    """Accept ``x`` iff its natural-residual norm is within ``newton_tol``.

    The certificate records the active index set, strict complementarity
    (min_i f_i + g_i above the feasibility tolerance) and the Jacobian
    degeneracy statistic.  Rejection raises :class:`CertificationError`
    carrying the residual norm.
    """
    cfg = cfg or SolveConfig()
    point = np.asarray(x, dtype=float)
    if point.shape != (inst.n,):
        raise InputError(f"point has shape {point.shape}, expected ({inst.n},)")
    residual = natural_map(inst, point)
    residual_norm = float(np.linalg.norm(residual))
    if residual_norm > cfg.newton_tol:
        raise CertificationError(
            f"natural residual {residual_norm:.3e} exceeds {cfg.newton_tol:.3e}",
            residual_norm=residual_norm,
        )
    _, active = min_phi(inst, point)
    fx = inst.f.evaluate(point)
    gx = inst.g.evaluate(point)
    strict = bool(np.min(fx + gx) > cfg.feasibility_tol)
    return SolutionCertificate(
        point=point.copy(),
        active_set=active,
        residual_norm=residual_norm,
        strict_complementarity=strict,
        min_abs_det_jac=min_abs_subsystem_determinant(inst, point),
    )


def distance_to_solutions(sols: SolutionSet, x) -> float | np.ndarray:
    """Euclidean distance from x to the listed points; exactly 1 when empty.

    Batch aware: a (m, n) input yields a (m,) vector of distances.
    """
    pts = np.asarray(x, dtype=float)
    single = pts.ndim == 1
    if len(sols) == 0:
        return 1.0 if single else np.ones(pts.shape[0])
    solutions = sols.points
    if single:
        return float(np.min(np.linalg.norm(solutions - pts[None, :], axis=1)))
    deltas = pts[:, None, :] - solutions[None, :, :]
    return np.min(np.linalg.norm(deltas, axis=2), axis=1)

"""Sampling probes for the asymptotic hypotheses behind solvability.

Each probe checks a universally quantified hypothesis by seeded sampling
(plus local refinement where it pays off) and returns a
:class:`ProbeReport`.  A passing verdict is explicitly *evidence*, never
proof; a counterexample verdict carries a witness that has been
re-evaluated against the probed predicate before being reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .enumeration import SolutionSet, min_abs_subsystem_determinant
from .exceptions import DegenerateInputError, EmptyRegionError, InputError
from .residuals import PcpInstance, natural_map

R0_TOL = 1e-8
DEGENERACY_TOL = 1e-8
COERCIVITY_VANISH_TOL = 1e-10
# fitted growth exponents at or below this are flagged as "no coercive growth"
GROWTH_FLAG_THRESHOLD = 0.25
P_FUNCTION_POSITIVE_TOL = 1e-9
MAX_REJECTIONS = 10**6


@dataclass(frozen=True)
class ProbeReport:
    """Outcome of one hypothesis probe.

    ``verdict`` is ``"evidence-pass"`` or ``"counterexample"``; in the
    latter case ``witness`` holds the violating point(s) and the
    re-evaluated violating value.  ``statistics`` carries probe-specific
    summaries (minima, fitted exponents, flags) and ``config`` echoes
    everything needed to reproduce the run.
    """

    probe: str
    verdict: str
    witness: dict | None
    samples_used: int
    statistics: dict
    config: dict

    @property
    def passed(self) -> bool:
        return self.verdict == "evidence-pass"

    def to_dict(self) -> dict:
        return {
            "probe": self.probe,
            "verdict": self.verdict,
            "witness": self.witness,
            "samples_used": self.samples_used,
            "statistics": self.statistics,
            "config": self.config,
        }


def _unit_sphere(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    points = rng.standard_normal((count, n))
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    tiny = norms[:, 0] < 1e-12
    if np.any(tiny):
        points[tiny] = np.eye(n)[0]
        norms[tiny] = 1.0
    return points / norms


def _min_map(pair: PcpInstance, x) -> np.ndarray:
    return np.minimum(pair.f.evaluate(x), pair.g.evaluate(x))


def _min_map_norms(pair: PcpInstance, pts: np.ndarray) -> np.ndarray:
    return np.linalg.norm(_min_map(pair, pts), axis=1)


def _refine_on_sphere(
    pair: PcpInstance, start: np.ndarray, radius: float, iters: int
) -> np.ndarray:
    """Projected gradient descent for ||min{f, g}||^2 on the radius sphere."""
    x = start * (radius / np.linalg.norm(start))
    value = float(np.linalg.norm(_min_map(pair, x)) ** 2)
    step = 0.1 * radius
    for _ in range(iters):
        fx = pair.f.evaluate(x)
        gx = pair.g.evaluate(x)
        take_f = fx <= gx
        branch_jac = np.where(take_f[:, None], pair.f.jacobian(x), pair.g.jacobian(x))
        gradient = 2.0 * branch_jac.T @ np.minimum(fx, gx)
        # tangential component only: stay on the sphere
        gradient -= (gradient @ x) / (radius * radius) * x
        norm = np.linalg.norm(gradient)
        if norm < 1e-16:
            break
        direction = gradient / norm
        improved = False
        while step > 1e-14 * radius:
            trial = x - step * direction
            trial *= radius / np.linalg.norm(trial)
            trial_value = float(np.linalg.norm(_min_map(pair, trial)) ** 2)
            if trial_value < value:
                x, value = trial, trial_value
                step *= 1.5
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return x


def _leading_for(inst: PcpInstance, componentwise: bool) -> PcpInstance:
    if componentwise:
        return inst.componentwise_leading_pair
    return inst.leading_pair


def r0_test(
    inst: PcpInstance,
    samples: int = 2048,
    refine_iters: int = 200,
    seed: int = 0,
    componentwise: bool = False,
    tol: float = R0_TOL,
) -> ProbeReport:
    """Probe whether the leading pair admits only the trivial solution.

    Minimizes ||min{f_inf, g_inf}|| over the unit sphere: seeded sampling
    followed by projected gradient refinement of the best candidates.  A
    sphere point with residual norm at most ``tol`` and feasible signs is
    a counterexample witness (it scales to a nonzero solution ray of the
    leading pair); otherwise the attained minimum is the pass evidence.

    The verdict is invariant under positive rescaling of either map.
    """
    if samples < 1:
        raise InputError("samples must be >= 1")
    pair = _leading_for(inst, componentwise)
    if pair.f.is_zero or pair.g.is_zero:
        raise DegenerateInputError("leading pair contains the zero map")
    rng = np.random.default_rng(seed)
    n = inst.n

    points = _unit_sphere(rng, samples, n)
    norms = _min_map_norms(pair, points)
    order = np.argsort(norms)
    candidates = points[order[: min(16, samples)]]

    best_point = points[order[0]]
    best_norm = float(norms[order[0]])
    for candidate in candidates:
        refined = _refine_on_sphere(pair, candidate, 1.0, refine_iters)
        refined_norm = float(np.linalg.norm(_min_map(pair, refined)))
        if refined_norm < best_norm:
            best_point, best_norm = refined, refined_norm

    config = {
        "samples": samples,
        "refine_iters": refine_iters,
        "seed": seed,
        "componentwise": componentwise,
        "tol": tol,
    }
    statistics = {
        "min_residual_on_sphere": best_norm,
        "max_sampled_residual": float(norms.max()),
    }
    f_at_best = pair.f.evaluate(best_point)
    g_at_best = pair.g.evaluate(best_point)
    feasible = bool(np.all(f_at_best >= -tol) and np.all(g_at_best >= -tol))
    if best_norm <= tol and feasible:
        # the witness re-evaluates below tol by construction
        witness = {
            "point": [float(v) for v in best_point],
            "residual_norm": best_norm,
            "note": "scales to a nonzero solution ray of the leading pair",
        }
        return ProbeReport("r0", "counterexample", witness, samples, statistics, config)
    return ProbeReport("r0", "evidence-pass", None, samples, statistics, config)


def r0_shifted_pair_probe(
    inst: PcpInstance,
    shift=None,
    samples: int = 2048,
    refine_iters: int = 200,
    seed: int = 0,
    componentwise: bool = False,
    radii: Sequence[float] = (0.25, 0.5, 1.0, 2.0, 4.0),
) -> ProbeReport:
    """Combined check: leading pair alone and with a positive shift of g.

    Runs the trivial-solution probe on (f_inf, g_inf) and then scans
    spheres of several radii for nonzero solutions of the inhomogeneous
    pair (f_inf, g_inf + d), d > 0 (default all ones).  The shifted
    condition is not scale invariant, hence the multi-radius scan.
    """
    base = r0_test(inst, samples, refine_iters, seed, componentwise)
    pair = _leading_for(inst, componentwise)
    d = np.ones(inst.n) if shift is None else np.asarray(shift, dtype=float)
    if d.shape != (inst.n,) or np.any(d <= 0):
        raise InputError("shift must be a strictly positive vector of length n")
    shifted = PcpInstance(pair.f, pair.g.plus_constant(d))

    rng = np.random.default_rng(seed + 1)
    best_norm = np.inf
    best_point = None
    total = 0
    for radius in radii:
        points = _unit_sphere(rng, samples, inst.n) * radius
        total += samples
        norms = _min_map_norms(shifted, points)
        k = int(np.argmin(norms))
        refined = _refine_on_sphere(shifted, points[k], radius, refine_iters)
        refined_norm = float(np.linalg.norm(_min_map(shifted, refined)))
        if refined_norm < best_norm:
            best_norm, best_point = refined_norm, refined

    config = {
        "samples": samples,
        "refine_iters": refine_iters,
        "seed": seed,
        "componentwise": componentwise,
        "shift": [float(v) for v in d],
        "radii": [float(r) for r in radii],
    }
    statistics = {
        "base_verdict": base.verdict,
        "base_min_residual": base.statistics["min_residual_on_sphere"],
        "shifted_min_residual": best_norm,
    }
    if not base.passed:
        return ProbeReport(
            "r0-shifted-pair", "counterexample", base.witness, samples + total,
            statistics, config,
        )
    if best_norm <= R0_TOL:
        witness = {
            "point": [float(v) for v in best_point],
            "residual_norm": best_norm,
            "note": "nonzero solution of the positively shifted leading pair",
        }
        return ProbeReport(
            "r0-shifted-pair", "counterexample", witness, samples + total,
            statistics, config,
        )
    return ProbeReport(
        "r0-shifted-pair", "evidence-pass", None, samples + total, statistics, config
    )


def coercivity_probe(
    inst: PcpInstance,
    radii: Sequence[float],
    samples_per_radius: int = 512,
    seed: int = 0,
    refine_iters: int = 60,
) -> ProbeReport:
    """Estimate the growth of the sphere minimum of the natural residual.

    For each radius R the probe estimates phi(R) = min over the sphere of
    ||m(x)|| (sampling plus light refinement) and fits log phi against
    log R, reporting the fitted constant and exponent.  A radius where
    phi collapses below 1e-10 is a counterexample (the residual nearly
    vanishes far out); a fitted exponent at or below the growth-flag
    threshold marks the absence of coercive growth.
    """
    radii = [float(r) for r in radii]
    if len(radii) < 2:
        raise InputError("need at least two radii")
    if any(r <= 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise InputError("radii must be positive and strictly increasing")
    rng = np.random.default_rng(seed)
    n = inst.n

    phi = []
    witness = None
    for radius in radii:
        points = _unit_sphere(rng, samples_per_radius, n) * radius
        norms = np.linalg.norm(natural_map(inst, points), axis=1)
        k = int(np.argmin(norms))
        refined = _refine_on_sphere(inst, points[k], radius, refine_iters)
        refined_norm = float(np.linalg.norm(natural_map(inst, refined)))
        value = min(float(norms[k]), refined_norm)
        best_point = refined if refined_norm <= norms[k] else points[k]
        phi.append(value)
        if value <= COERCIVITY_VANISH_TOL and witness is None:
            witness = {
                "radius": radius,
                "point": [float(v) for v in best_point],
                "residual_norm": value,
            }

    log_r = np.log(np.asarray(radii))
    safe_phi = np.maximum(phi, 1e-300)
    slope, intercept = np.polyfit(log_r, np.log(safe_phi), deg=1)
    fitted_c = float(np.exp(intercept))
    fitted_alpha = float(slope)

    config = {
        "radii": radii,
        "samples_per_radius": samples_per_radius,
        "seed": seed,
        "refine_iters": refine_iters,
    }
    statistics = {
        "phi_by_radius": [float(v) for v in phi],
        "fitted_c": fitted_c,
        "fitted_alpha": fitted_alpha,
        "no_coercive_growth": bool(fitted_alpha <= GROWTH_FLAG_THRESHOLD),
    }
    samples_used = samples_per_radius * len(radii)
    if witness is not None:
        return ProbeReport(
            "coercivity", "counterexample", witness, samples_used, statistics, config
        )
    return ProbeReport(
        "coercivity", "evidence-pass", None, samples_used, statistics, config
    )


def xref_boundedness_probe(
    inst: PcpInstance,
    x_ref,
    radius: float,
    samples: int = 2048,
    use_leading: bool = False,
    seed: int = 0,
) -> ProbeReport:
    """Check <x - x_ref, m(x)> > 0 on a sampled sphere of the given radius.

    With ``use_leading`` the leading-pair min map replaces m.  Any sample
    with a nonpositive pairing is a counterexample witness.
    """
    if radius <= 0:
        raise InputError("radius must be positive")
    reference = np.asarray(x_ref, dtype=float)
    if reference.shape != (inst.n,):
        raise InputError(f"x_ref has shape {reference.shape}, expected ({inst.n},)")
    pair = _leading_for(inst, componentwise=False) if use_leading else inst
    rng = np.random.default_rng(seed)

    points = _unit_sphere(rng, samples, inst.n) * radius
    values = np.einsum("ij,ij->i", points - reference[None, :], _min_map(pair, points))
    worst = int(np.argmin(values))

    config = {
        "x_ref": [float(v) for v in reference],
        "radius": float(radius),
        "samples": samples,
        "use_leading": use_leading,
        "seed": seed,
    }
    statistics = {
        "min_pairing": float(values[worst]),
        "max_pairing": float(values.max()),
    }
    if values[worst] <= 0.0:
        point = points[worst]
        # re-evaluate the witness against the predicate before reporting
        pairing = float((point - reference) @ _min_map(pair, point))
        witness = {"point": [float(v) for v in point], "pairing": pairing}
        return ProbeReport(
            "xref-boundedness", "counterexample", witness, samples, statistics, config
        )
    return ProbeReport(
        "xref-boundedness", "evidence-pass", None, samples, statistics, config
    )


def karamardian_coercivity_probe(
    inst: PcpInstance,
    c: float,
    samples: int = 10_000,
    seed: int = 0,
    radius_factor: float = 10.0,
) -> ProbeReport:
    """Check <x, m(x) - m(0)> >= c||x||^2 outside the ball ||x|| <= ||m(0)||/c.

    Samples log-spaced radii in (||m(0)||/c, radius_factor * max(1, .)]
    with random directions.  A sample violating the inequality beyond the
    relative float guard is a counterexample witness.
    """
    if c <= 0:
        raise InputError("c must be positive")
    if samples < 1:
        raise InputError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = inst.n
    m0 = natural_map(inst, np.zeros(n))
    inner_radius = float(np.linalg.norm(m0)) / c
    low = inner_radius * (1.0 + 1e-9) if inner_radius > 0 else 1e-6
    high = max(1.0, inner_radius) * radius_factor

    directions = _unit_sphere(rng, samples, n)
    radii = np.exp(rng.uniform(np.log(low), np.log(high), size=samples))
    points = directions * radii[:, None]
    margins = (
        np.einsum("ij,ij->i", points, natural_map(inst, points) - m0[None, :])
        - c * radii**2
    )
    guard = 1e-9 * np.maximum(1.0, c * radii**2)
    worst = int(np.argmin(margins + guard))

    config = {
        "c": float(c),
        "samples": samples,
        "seed": seed,
        "radius_factor": float(radius_factor),
        "inner_radius": inner_radius,
    }
    statistics = {
        "min_margin": float(margins[worst]),
        "max_margin": float(margins.max()),
    }
    if margins[worst] < -guard[worst]:
        point = points[worst]
        margin = float(point @ (natural_map(inst, point) - m0) - c * (point @ point))
        witness = {"point": [float(v) for v in point], "margin": margin}
        return ProbeReport(
            "karamardian-coercivity", "counterexample", witness, samples,
            statistics, config,
        )
    return ProbeReport(
        "karamardian-coercivity", "evidence-pass", None, samples, statistics, config
    )


def jacobian_degeneracy_scan(
    inst: PcpInstance, sols: SolutionSet, threshold: float = DEGENERACY_TOL
) -> ProbeReport:
    """Scan solutions for a vanishing index-set Jacobian determinant.

    A solution where min_I |det Jac_I| falls at or below the threshold is
    degeneracy evidence (the necessary condition for an unbounded
    solution set fires there) and is reported as a counterexample to
    nondegeneracy.
    """
    values = []
    flagged = []
    for certificate in sols.certificates:
        value = min_abs_subsystem_determinant(inst, certificate.point)
        values.append(value)
        if value <= threshold:
            flagged.append(
                {
                    "point": [float(v) for v in certificate.point],
                    "min_abs_det_jac": value,
                }
            )
    config = {"threshold": threshold, "solutions": len(sols)}
    statistics = {
        "min_abs_det_by_solution": values,
        "flagged_count": len(flagged),
    }
    if flagged:
        return ProbeReport(
            "jacobian-degeneracy", "counterexample", {"flagged": flagged},
            len(sols), statistics, config,
        )
    return ProbeReport(
        "jacobian-degeneracy", "evidence-pass", None, len(sols), statistics, config
    )


def _feasible_region_samples(
    inst: PcpInstance, region: np.ndarray, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Rejection-sample points of the region with f >= 0 and g >= 0."""
    low = region[:, 0]
    span = region[:, 1] - region[:, 0]
    accepted: list[np.ndarray] = []
    total = 0
    rejected = 0
    batch = max(256, count)
    while total < count:
        draw = low + span * rng.random((batch, inst.n))
        fx = inst.f.evaluate(draw)
        gx = inst.g.evaluate(draw)
        keep = np.all(fx >= 0.0, axis=1) & np.all(gx >= 0.0, axis=1)
        kept = draw[keep]
        rejected += batch - len(kept)
        if rejected > MAX_REJECTIONS:
            raise EmptyRegionError(
                f"no feasible region samples after {MAX_REJECTIONS} rejections"
            )
        if len(kept):
            accepted.append(kept)
            total += len(kept)
    return np.vstack(accepted)[:count]


def _as_region(region, n: int) -> np.ndarray:
    box = np.asarray(region, dtype=float)
    if box.shape != (n, 2):
        raise InputError(f"region must have shape ({n}, 2), got {box.shape}")
    if np.any(box[:, 1] <= box[:, 0]):
        raise InputError("region bounds must satisfy low < high")
    return box


def p_function_probe(
    inst: PcpInstance,
    region,
    pairs: int = 1000,
    seed: int = 0,
    solutions: SolutionSet | None = None,
) -> ProbeReport:
    """Probe the pairwise sign condition behind uniqueness of solutions.

    Samples pairs (x, y) of distinct feasible points (f >= 0, g >= 0) of
    the region and checks that some index i has
    (f_i(x) - f_i(y))(g_i(x) - g_i(y)) > 0 beyond the float guard.  A
    pair with no such index is a counterexample: two solutions could then
    coexist.  When a solution set with at least two points inside the
    feasible region is supplied, those exact pairs are re-tested first;
    at solution pairs every product is nonpositive, so they must trip the
    probe.
    """
    if pairs < 1:
        raise InputError("pairs must be >= 1")
    box = _as_region(region, inst.n)
    rng = np.random.default_rng(seed)

    def pair_products(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (inst.f.evaluate(x) - inst.f.evaluate(y)) * (
            inst.g.evaluate(x) - inst.g.evaluate(y)
        )

    config = {
        "region": [[float(a), float(b)] for a, b in box],
        "pairs": pairs,
        "seed": seed,
        "positive_tol": P_FUNCTION_POSITIVE_TOL,
    }

    # consistency pass: known solutions inside the feasible region
    if solutions is not None and len(solutions) >= 2:
        inside = []
        for certificate in solutions.certificates:
            point = certificate.point
            in_box = np.all(point >= box[:, 0]) and np.all(point <= box[:, 1])
            feasible = np.all(inst.f.evaluate(point) >= -1e-9) and np.all(
                inst.g.evaluate(point) >= -1e-9
            )
            if in_box and feasible:
                inside.append(point)
        for a in range(len(inside)):
            for b in range(a + 1, len(inside)):
                products = pair_products(inside[a], inside[b])
                if np.max(products) <= P_FUNCTION_POSITIVE_TOL:
                    witness = {
                        "x": [float(v) for v in inside[a]],
                        "y": [float(v) for v in inside[b]],
                        "max_product": float(np.max(products)),
                        "note": "solution pair",
                    }
                    statistics = {"checked_pairs": 0, "solution_pairs": True}
                    return ProbeReport(
                        "p-function", "counterexample", witness, 0, statistics, config
                    )

    xs = _feasible_region_samples(inst, box, pairs, rng)
    ys = _feasible_region_samples(inst, box, pairs, rng)
    identical = np.all(xs == ys, axis=1)
    if np.any(identical):
        ys[identical] = _feasible_region_samples(inst, box, int(identical.sum()), rng)

    products = (inst.f.evaluate(xs) - inst.f.evaluate(ys)) * (
        inst.g.evaluate(xs) - inst.g.evaluate(ys)
    )
    max_products = np.max(products, axis=1)
    failing = np.flatnonzero(max_products <= P_FUNCTION_POSITIVE_TOL)

    statistics = {
        "checked_pairs": pairs,
        "min_of_max_products": float(max_products.min()),
    }
    if failing.size:
        k = int(failing[0])
        witness = {
            "x": [float(v) for v in xs[k]],
            "y": [float(v) for v in ys[k]],
            "max_product": float(max_products[k]),
        }
        return ProbeReport(
            "p-function", "counterexample", witness, 2 * pairs, statistics, config
        )
    return ProbeReport(
        "p-function", "evidence-pass", None, 2 * pairs, statistics, config
    )

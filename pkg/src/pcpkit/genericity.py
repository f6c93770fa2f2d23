"""Random instances and Monte Carlo validation of the generic picture.

Generic instances have finitely many solutions (at most (2d)^n), each
strictly complementary, a leading pair with only the trivial solution,
and a global Lipschitz error bound.  None of this is provable by
sampling, so the lab draws seeded random instances, runs the full
pipeline on each, and aggregates pass rates; every failing trial records
enough seed material to reproduce it in isolation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bounds import verify_global_bound
from .enumeration import SolveConfig, enumerate_solutions
from .exceptions import InputError, PcpError
from .lemke import lemke_lcp
from .polynomials import Exponents, PolyMap, Polynomial
from .probes import r0_test
from .residuals import PcpInstance

# pass threshold for the per-trial global Lipschitz constant; generic
# desk-scale instances sit orders of magnitude above it
LIPSCHITZ_C_MIN = 1e-3
LIPSCHITZ_RADII = (1.25, 2.5, 5.0, 10.0, 20.0)


def monomials_up_to(n: int, degree: int) -> list[Exponents]:
    """All exponent vectors with total degree <= degree, graded-lex order."""
    if n < 1 or degree < 0:
        raise InputError("need n >= 1 and degree >= 0")
    found = []
    for total in range(degree + 1):
        for combo in itertools.product(range(total + 1), repeat=n):
            if sum(combo) == total:
                found.append(combo)
    return found


def random_polynomial(n: int, degree: int, rng: np.random.Generator) -> Polynomial:
    """Every coefficient with |kappa| <= degree drawn i.i.d. standard normal."""
    terms = {kappa: float(rng.standard_normal()) for kappa in monomials_up_to(n, degree)}
    return Polynomial(n, terms)


def random_instance(
    n: int,
    degrees_f: Sequence[int],
    degrees_g: Sequence[int],
    seed,
) -> PcpInstance:
    """Draw a dense-support random instance, deterministic under the seed.

    ``seed`` may be anything accepted by ``numpy.random.default_rng``
    (an int or a SeedSequence).  Coefficients are consumed in a fixed
    order (f components first, graded-lex within each), so equal seeds
    give identical instances.
    """
    degrees_f = tuple(int(d) for d in degrees_f)
    degrees_g = tuple(int(d) for d in degrees_g)
    if len(degrees_f) != n or len(degrees_g) != n:
        raise InputError("one degree per component is required")
    if any(d < 1 for d in degrees_f + degrees_g):
        raise InputError("degrees must be >= 1")
    rng = np.random.default_rng(seed)
    f = PolyMap(tuple(random_polynomial(n, d, rng) for d in degrees_f))
    g = PolyMap(tuple(random_polynomial(n, d, rng) for d in degrees_g))
    return PcpInstance(f, g)


@dataclass(frozen=True)
class TrialRecord:
    """One Monte Carlo trial; ``spawn_index`` with the master seed reproduces it."""

    spawn_index: int
    solution_count: int
    strict_ok: bool
    r0_ok: bool
    lipschitz_ok: bool
    lipschitz_c: float
    lemke_status: str | None = None
    lemke_agrees: bool | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "spawn_index": self.spawn_index,
            "solution_count": self.solution_count,
            "strict_ok": self.strict_ok,
            "r0_ok": self.r0_ok,
            "lipschitz_ok": self.lipschitz_ok,
            "lipschitz_c": self.lipschitz_c,
            "lemke_status": self.lemke_status,
            "lemke_agrees": self.lemke_agrees,
            "error": self.error,
        }


@dataclass(frozen=True)
class TrialSummary:
    """Aggregated Monte Carlo results with reproduction seeds."""

    n: int
    degrees: tuple[int, ...]
    trials: int
    master_seed: int
    cardinality_bound: int
    counts: tuple[int, ...]
    max_count: int
    strict_rate: float
    r0_rate: float
    lipschitz_rate: float
    records: tuple[TrialRecord, ...]
    failures: tuple[dict, ...]
    skipped: int

    def to_dict(self, include_records: bool = True) -> dict:
        payload = {
            "n": self.n,
            "degrees": list(self.degrees),
            "trials": self.trials,
            "master_seed": self.master_seed,
            "cardinality_bound": self.cardinality_bound,
            "counts": list(self.counts),
            "max_count": self.max_count,
            "strict_rate": self.strict_rate,
            "r0_rate": self.r0_rate,
            "lipschitz_rate": self.lipschitz_rate,
            "failures": list(self.failures),
            "skipped": self.skipped,
        }
        if include_records:
            payload["records"] = [r.to_dict() for r in self.records]
        return payload

    def csv_rows(self) -> list[dict]:
        return [r.to_dict() for r in self.records]


def trial_seed(master_seed: int, spawn_index: int) -> np.random.SeedSequence:
    """The per-trial seed; pure function of (master seed, index)."""
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(spawn_index,))


def trial_instance(
    n: int, degrees: Sequence[int], master_seed: int, spawn_index: int
) -> PcpInstance:
    """Reproduce the instance of one trial in isolation.

    Affine trials (all degrees 1) substitute the identity for f and use
    the random draw for g only, matching the LCP oracle setting.
    """
    degrees = tuple(int(d) for d in degrees)
    seed = trial_seed(master_seed, spawn_index)
    if all(d == 1 for d in degrees):
        rng = np.random.default_rng(seed)
        g = PolyMap(tuple(random_polynomial(n, 1, rng) for _ in range(n)))
        return PcpInstance(PolyMap.identity(n), g)
    return random_instance(n, degrees, degrees, seed)


def _affine_lcp_data(inst: PcpInstance) -> tuple[np.ndarray, np.ndarray]:
    """Extract (M, q) from an affine g via exact evaluation."""
    n = inst.n
    q = inst.g.evaluate(np.zeros(n))
    M = inst.g.jacobian(np.zeros(n))
    return M, q


def genericity_trial(
    n: int,
    degrees: Sequence[int],
    trials: int,
    seed: int,
    cfg: SolveConfig | None = None,
    lipschitz_c_min: float = LIPSCHITZ_C_MIN,
    bound_samples: int = 400,
    r0_samples: int = 512,
    r0_refine_iters: int = 80,
) -> TrialSummary:
    """Run the generic-claims pipeline over ``trials`` random instances.

    Per trial: enumerate the solutions and compare the count against
    (2d)^n; check strict complementarity at every solution; probe the
    componentwise leading pair for nonzero solutions; verify the global
    Lipschitz bound (exponent 1) over sphere shells spanning the
    radius-20 ball, passing when the certified constant stays above
    ``lipschitz_c_min``.  Affine trials additionally cross-check
    solvability against complementary pivoting.  Identical arguments
    give identical summaries; per-trial seeds are spawned from the
    master seed by index, so execution order cannot matter.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != n or any(d < 1 for d in degrees):
        raise InputError("need one positive degree per component")
    if trials < 1:
        raise InputError("trials must be >= 1")
    cfg = cfg or SolveConfig()
    d = max(degrees)
    bound = (2 * d) ** n
    affine = all(deg == 1 for deg in degrees)

    records: list[TrialRecord] = []
    failures: list[dict] = []
    skipped = 0

    for index in range(trials):
        inst = trial_instance(n, degrees, seed, index)
        try:
            sols = enumerate_solutions(inst, cfg)
        except PcpError as error:
            skipped += 1
            failures.append(
                {"spawn_index": index, "stage": "enumerate", "error": str(error)}
            )
            continue

        count = len(sols)
        strict_ok = all(c.strict_complementarity for c in sols.certificates)

        try:
            r0_report = r0_test(
                inst,
                samples=r0_samples,
                refine_iters=r0_refine_iters,
                seed=index,
                componentwise=True,
            )
            r0_ok = r0_report.passed
        except PcpError as error:
            r0_ok = False
            failures.append({"spawn_index": index, "stage": "r0", "error": str(error)})

        bound_report = verify_global_bound(
            inst, sols, LIPSCHITZ_RADII, bound_samples, alpha=1, seed=index
        )
        lipschitz_c = bound_report.c_best
        lipschitz_ok = bool(lipschitz_c >= lipschitz_c_min)

        lemke_status = None
        lemke_agrees = None
        if affine:
            M, q = _affine_lcp_data(inst)
            try:
                result = lemke_lcp(M, q)
                lemke_status = result.status
                if result.solved:
                    if count == 0:
                        lemke_agrees = False
                    else:
                        gaps = np.linalg.norm(sols.points - result.z[None, :], axis=1)
                        lemke_agrees = bool(np.min(gaps) <= 1e-6)
            except PcpError as error:
                lemke_status = "budget-error"
                failures.append(
                    {"spawn_index": index, "stage": "lemke", "error": str(error)}
                )

        record = TrialRecord(
            spawn_index=index,
            solution_count=count,
            strict_ok=strict_ok,
            r0_ok=r0_ok,
            lipschitz_ok=lipschitz_ok,
            lipschitz_c=lipschitz_c,
            lemke_status=lemke_status,
            lemke_agrees=lemke_agrees,
        )
        records.append(record)
        if count > bound or not strict_ok or not r0_ok or not lipschitz_ok \
                or lemke_agrees is False:
            failures.append(
                {
                    "spawn_index": index,
                    "stage": "checks",
                    "count": count,
                    "strict_ok": strict_ok,
                    "r0_ok": r0_ok,
                    "lipschitz_ok": lipschitz_ok,
                    "lemke_agrees": lemke_agrees,
                }
            )

    counts = tuple(r.solution_count for r in records)
    completed = len(records)

    def rate(flags) -> float:
        return float(sum(flags) / completed) if completed else 0.0

    return TrialSummary(
        n=n,
        degrees=degrees,
        trials=trials,
        master_seed=seed,
        cardinality_bound=bound,
        counts=counts,
        max_count=max(counts) if counts else 0,
        strict_rate=rate(r.strict_ok for r in records),
        r0_rate=rate(r.r0_ok for r in records),
        lipschitz_rate=rate(r.lipschitz_ok for r in records),
        records=tuple(records),
        failures=tuple(failures),
        skipped=skipped,
    )

"""Randomized numeric audits of the region characterization.

Each suite replays one load-bearing fact as a bulk numeric check:

* ``necessity``   — eigenvalues of random family members satisfy the three
  region constraints (the Monte-Carlo heart of the library);
* ``karamata``    — grid search over the feasible angle set never beats the
  tight-regime closed-form maximum, which two closed forms agree on;
* ``convexity``   — the closed-form second derivative of F matches a central
  difference and stays positive;
* ``identities``  — six exact algebraic identities hold to relative 1e-10;
* ``regime``      — sampling G <= 0 always lands in the tight regime, with
  b^2 > 3a^2 whenever a > 0;
* ``roundtrip``   — realizing random strict-interior targets returns
  certificates that survive the independent eigenvalue check.

Reproducibility contract: trials are split into fixed-size blocks; block j
of a run with seed s draws from the counter-based Philox generator keyed
(s, j).  The partition is independent of the worker count, partial reports
merge by concatenation in block order plus a max of worst violations, and
so a report is bit-for-bit reproducible (elapsed time aside) across runs
and across ``workers`` settings.  Rejection samplers draw sequentially
inside their block and carry a consecutive-rejection budget; exhaustion is
an error, never a hang.

Each suite accepts one named ``mutant`` that corrupts its formula or
sampler; the self-test asserts the suite catches it.  Violations are
normalized so that a positive value is a failure: suites with homogeneous
relative checks report the raw relative residual against their tolerance,
the rest report the excess over per-check tolerances against zero.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _backend, angles, realize
from .errors import Cycle4Error, DomainError, RegimeError, SamplerExhausted
from .matrix import eigenvalues
from .region import SpectralPoint, eval_g, s_roots

BLOCK = 8192
REJECT_BUDGET = 10 ** 6
SUITE_NAMES = ("necessity", "karamata", "convexity", "identities", "regime", "roundtrip")


@dataclass(frozen=True)
class SuiteTolerances:
    """Every audit tolerance in one place.

    necessity_* are slacks on the three constraints 0 <= a <= 1,
    a + |b| <= 1 and G >= 0; solver_residual bounds the quartic residual
    of any root the necessity sweep inspects.  karamata_grid bounds how
    far the grid may exceed the closed-form maximum, karamata_vertex the
    gap at the maximizing vertex, karamata_consistency the relative
    disagreement of the two closed forms.  convexity_rel is the allowed
    relative finite-difference mismatch of the second derivative,
    identity_rel the relative residual of the six identities, and the
    roundtrip_* are the certificate invariants.
    """

    necessity_a: float = 1e-9
    necessity_edge: float = 1e-8
    necessity_g: float = 1e-8
    solver_residual: float = 1e-10
    karamata_grid: float = 1e-8
    karamata_vertex: float = 1e-10
    karamata_consistency: float = 1e-10
    convexity_rel: float = 1e-4
    convexity_fd_step: float = 1e-5
    # Probe angles stay this far below M: the fourth derivative grows like
    # (M-u)^-4 there, so closer in, the central difference's own truncation
    # (~ h^2 / (M-u)^2 relative) would swamp the tolerance being tested.
    convexity_top_inset: float = 2.5e-3
    identity_rel: float = 1e-10
    roundtrip_eig: float = 1e-8
    roundtrip_psi: float = 1e-10


TOLS = SuiteTolerances()

_IDENTITY_CHECKS = (
    "factorization",
    "discriminant_factored",
    "square_comparison_256a6",
    "tan_triple_angle",
    "alpha_imag_identity",
    "g_r_form",
)


@dataclass
class AuditReport:
    """Outcome of one suite run; deterministic given (suite, trials, seed)."""

    suite: str
    trials: int
    seed: int
    tolerance: float
    worst_violation: float
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "worst_violation": self.worst_violation,
            "failures": self.failures,
            "elapsed": self.elapsed,
        }


def _stream(seed: int, block: int) -> np.random.Generator:
    key = np.array([np.uint64(seed), np.uint64(block)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _blocks(trials: int):
    out = []
    lo = 0
    idx = 0
    while lo < trials:
        size = min(BLOCK, trials - lo)
        out.append((idx, lo, size))
        idx += 1
        lo += size
    return out


def _run_blocked(suite, trials, seed, tolerance, workers, block_fn) -> AuditReport:
    """Run block_fn(index, lo, size) over the fixed partition and merge.

    block_fn returns (worst, failures).  Merging takes the max of worsts
    and concatenates failures in block order, so the result does not
    depend on the worker count.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    t0 = time.perf_counter()
    parts = _blocks(trials)
    if workers <= 1:
        results = [block_fn(*p) for p in parts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: block_fn(*p), parts))
    worst = -math.inf
    failures = []
    for w, fails in results:
        worst = max(worst, w)
        failures.extend(fails)
    return AuditReport(
        suite=suite,
        trials=trials,
        seed=seed,
        tolerance=tolerance,
        worst_violation=worst,
        failures=failures,
        elapsed=time.perf_counter() - t0,
    )


def _check_mutant(mutant, allowed):
    if mutant is not None and mutant not in allowed:
        raise DomainError(f"unknown mutant {mutant!r}; expected one of {allowed}")


def mc_necessity(trials: int, seed: int, workers: int = 1, mutant: str | None = None) -> AuditReport:
    """Monte-Carlo check of the three necessity constraints.

    Samples parameters uniformly in [0, 1-1e-6]^4 and asserts, for every
    nonreal eigenvalue, a in [-tol, 1+tol], a + |b| <= 1 + tol and
    G(a, |b|) >= -tol.  Violations are data, not exceptions.
    """
    _check_mutant(mutant, ("g_minus_0.1",))
    g_offset = -0.1 if mutant == "g_minus_0.1" else 0.0
    kern = _backend.kernels()

    def block_fn(idx, lo, size):
        rng = _stream(seed, idx)
        params = rng.random((size, 4)) * (1.0 - 1e-6)
        viol, aa, bb = kern.necessity_block(
            params,
            1e-10,
            TOLS.necessity_a,
            TOLS.necessity_edge,
            TOLS.necessity_g,
            TOLS.solver_residual,
            g_offset,
        )
        worst = float(viol.max()) if size else -math.inf
        fails = []
        for i in np.nonzero(viol > 0.0)[0]:
            fails.append(
                {
                    "trial": int(lo + i),
                    "check": "necessity",
                    "input": [float(v) for v in params[i]],
                    "root": [float(aa[i]), float(bb[i])],
                    "violation": float(viol[i]),
                }
            )
        return worst, fails

    return _run_blocked("necessity", trials, seed, 0.0, workers, block_fn)


def karamata_oracle(p: SpectralPoint, grid_n: int = 40, mutant: str | None = None) -> AuditReport:
    """Grid search of Psi over the feasible set for one tight frame.

    Enumerates grid_n^3 angle triples over [m, U], completes each with the
    sum constraint, and asserts no feasible vector beats the closed-form
    maximum by more than the grid tolerance, the maximizing vertex is
    attained to the vertex tolerance, and the two closed forms agree.
    """
    _check_mutant(mutant, ("max_minus_1e-6",))
    if grid_n < 20:
        raise DomainError("grid_n must be >= 20")
    f = build_frame_checked(p)
    if not f.tight:
        raise RegimeError(f"karamata oracle requires the tight regime at (a={p.a}, b={p.b})")
    t0 = time.perf_counter()
    closed = angles.max_psi_tight(f)
    closed_log = angles.max_psi_tight_log_form(f)
    offset = -1e-6 if mutant == "max_minus_1e-6" else 0.0
    kern = _backend.kernels()
    excess, vertex_gap, count = kern.karamata_scan(f.x, f.y, f.m, f.M, f.U, grid_n, closed, offset)
    consistency = abs(closed - closed_log) / max(1.0, abs(closed), abs(closed_log))
    worst = max(
        excess - TOLS.karamata_grid,
        vertex_gap - TOLS.karamata_vertex,
        consistency - TOLS.karamata_consistency,
    )
    failures = []
    if worst > 0.0:
        failures.append(
            {
                "trial": 0,
                "check": "karamata",
                "input": [p.a, p.b],
                "grid_excess": float(excess),
                "vertex_gap": float(vertex_gap),
                "closed_form_rel": float(consistency),
                "violation": float(worst),
            }
        )
    return AuditReport(
        suite="karamata",
        trials=int(count),
        seed=0,
        tolerance=0.0,
        worst_violation=float(worst),
        failures=failures,
        elapsed=time.perf_counter() - t0,
    )


def build_frame_checked(p: SpectralPoint) -> angles.AngleFrame:
    return angles.build_frame(p.upper())


def karamata_suite(
    trials: int,
    seed: int,
    workers: int = 1,
    grid_n: int = 40,
    mutant: str | None = None,
) -> AuditReport:
    """karamata_oracle over random tight frames; trials counts frames.

    Frames are rejection-sampled from the box [0,1) x (0,1] with a small
    regime margin (3m + M > 2*pi + 1e-3) that keeps t(U) away from the
    underflow zone where the closed forms lose their common precision.
    """
    _check_mutant(mutant, ("max_minus_1e-6",))

    def block_fn(idx, lo, size):
        rng = _stream(seed, idx)
        worst = -math.inf
        fails = []
        for i in range(size):
            a, b = _rejection_sample(
                rng,
                lambda g: (g.random(), g.random()),
                lambda ab: ab[1] > 1e-6
                and 3.0 * math.atan2(ab[1], ab[0]) + math.atan2(ab[1], ab[0] - 1.0) > angles.TWO_PI + 1e-3,
            )
            sub = karamata_oracle(SpectralPoint(a, b), grid_n=grid_n, mutant=mutant)
            worst = max(worst, sub.worst_violation)
            for rec in sub.failures:
                rec = dict(rec)
                rec["trial"] = lo + i
                fails.append(rec)
        return worst, fails

    report = _run_blocked("karamata", trials, seed, 0.0, workers, block_fn)
    return report


def convexity_oracle(trials: int, seed: int, workers: int = 1, mutant: str | None = None) -> AuditReport:
    """Closed-form F'' vs central second difference on random frames.

    Frames draw a in [0, 0.99], b in [0.01, 2]; the probe angle is uniform
    in (m + h, M - top_inset), the window on which the central difference
    is numerically comparable.  A trial fails if the relative mismatch
    exceeds the tolerance or the closed form is not strictly positive.
    """
    _check_mutant(mutant, ("drop_sin2",))
    drop = mutant == "drop_sin2"
    kern = _backend.kernels()
    h = TOLS.convexity_fd_step

    def block_fn(idx, lo, size):
        rng = _stream(seed, idx)
        samples = rng.random((size, 3))
        rel, f2 = kern.convexity_block(samples, h, h, TOLS.convexity_top_inset, drop)
        excess = np.maximum(rel - TOLS.convexity_rel, -f2)
        worst = float(excess.max()) if size else -math.inf
        fails = []
        for i in np.nonzero(excess > 0.0)[0]:
            fails.append(
                {
                    "trial": int(lo + i),
                    "check": "convexity",
                    "input": [float(v) for v in samples[i]],
                    "rel_error": float(rel[i]),
                    "f_second": float(f2[i]),
                    "violation": float(excess[i]),
                }
            )
        return worst, fails

    return _run_blocked("convexity", trials, seed, 0.0, workers, block_fn)


def identity_suite(trials: int, seed: int, workers: int = 1, mutant: str | None = None) -> AuditReport:
    """Randomized checks of the six exact identities, each to relative 1e-10."""
    _check_mutant(mutant, ("break_factorization",))
    broken = mutant == "break_factorization"
    kern = _backend.kernels()

    def block_fn(idx, lo, size):
        rng = _stream(seed, idx)
        samples = rng.random((size, 10))
        viol, which = kern.identities_block(samples, broken)
        worst = float(viol.max()) if size else -math.inf
        fails = []
        for i in np.nonzero(viol > TOLS.identity_rel)[0]:
            fails.append(
                {
                    "trial": int(lo + i),
                    "check": _IDENTITY_CHECKS[int(which[i])],
                    "input": [float(v) for v in samples[i]],
                    "violation": float(viol[i]),
                }
            )
        return worst, fails

    return _run_blocked("identities", trials, seed, TOLS.identity_rel, workers, block_fn)


def _rejection_sample(rng, draw: Callable, accept: Callable, budget: int = REJECT_BUDGET):
    """Draw until accepted; SamplerExhausted after `budget` consecutive misses."""
    misses = 0
    while True:
        x = draw(rng)
        if accept(x):
            return x
        misses += 1
        if misses >= budget:
            raise SamplerExhausted(f"rejection sampler missed {budget} times in a row")


def regime_lemma_oracle(trials: int, seed: int, workers: int = 1, mutant: str | None = None) -> AuditReport:
    """Sampled points with G <= 0 must sit in the tight regime.

    Draws a uniform in [0, 1/6) and b^2 between the two roots of G in
    s = b^2, so G <= 0 holds by construction (float-noise escapes are
    rejected, not failed).  Asserts 3m + M > 2*pi strictly, and
    b^2 > 3a^2 whenever a > 0.
    """
    _check_mutant(mutant, ("sample_below_band",))
    below = mutant == "sample_below_band"

    def draw(rng):
        a = rng.random() / 6.0
        sm, sp = s_roots(a)
        frac = rng.random()
        s = (0.25 + 0.25 * frac) * sm if below else sm + frac * (sp - sm)
        return a, s

    def accept(pair):
        a, s = pair
        if s <= 0.0:
            return False
        if below:
            return True
        return eval_g(a, math.sqrt(s)) <= 0.0

    def block_fn(idx, lo, size):
        rng = _stream(seed, idx)
        worst = -math.inf
        fails = []
        for i in range(size):
            a, s = _rejection_sample(rng, draw, accept)
            b = math.sqrt(s)
            m = math.atan2(b, a)
            mm = math.atan2(b, a - 1.0)
            v = angles.TWO_PI - (3.0 * m + mm)
            if a > 0.0:
                v = max(v, 3.0 * a * a - s)
            worst = max(worst, v)
            if v >= 0.0:
                fails.append(
                    {
                        "trial": lo + i,
                        "check": "regime",
                        "input": [float(a), float(b)],
                        "violation": float(v),
                    }
                )
        return worst, fails

    return _run_blocked("regime", trials, seed, 0.0, workers, block_fn)


def roundtrip_oracle(trials: int, seed: int, workers: int = 1, mutant: str | None = None) -> AuditReport:
    """Realize random strict-interior targets and audit the certificates.

    Targets are rejection-sampled with the completeness margins
    (a + b < 1 - 1e-3, G > 1e-3) and b >= 0.01, the resolution below which
    realizations would need gaps finer than the parameter domain carries.
    """
    _check_mutant(mutant, ("offset_target",))
    offset = 1e-6 if mutant == "offset_target" else 0.0

    def draw(rng):
        return rng.random(), 0.01 + 0.98 * rng.random()

    def accept(ab):
        a, b = ab
        return a + b < 1.0 - 1e-3 and eval_g(a, b) > 1e-3

    def block_fn(idx, lo, size):
        rng = _stream(seed, idx)
        worst = -math.inf
        fails = []
        for i in range(size):
            a, b = _rejection_sample(rng, draw, accept)
            record = {"trial": lo + i, "check": "roundtrip", "input": [float(a), float(b)]}
            try:
                cert = realize.realize(SpectralPoint(a, b))
            except Cycle4Error as exc:
                record["check"] = "realize_error"
                record["error"] = f"{type(exc).__name__}: {exc}"
                record["violation"] = 1e300
                fails.append(record)
                worst = max(worst, 1e300)
                continue
            v = cert.eig_residual - TOLS.roundtrip_eig
            if cert.method is realize.Method.INTERIOR_IVT:
                v = max(v, cert.psi_residual - TOLS.roundtrip_psi)
                v = max(v, abs(sum(cert.angles.as_tuple()) - angles.TWO_PI) - 1e-12)
            for t in cert.gaps.as_tuple():
                v = max(v, t - 1.0 - 1e-12, -t)
            for q in cert.params.as_tuple():
                v = max(v, q - 1.0, -q)
            if offset:
                _, dist = eigenvalues(cert.params).nearest(complex(a + offset, b))
                v = max(v, dist - TOLS.roundtrip_eig)
            worst = max(worst, v)
            if v > 0.0:
                record["violation"] = float(v)
                fails.append(record)
        return worst, fails

    return _run_blocked("roundtrip", trials, seed, 0.0, workers, block_fn)


_SUITE_FNS = {
    "necessity": mc_necessity,
    "karamata": karamata_suite,
    "convexity": convexity_oracle,
    "identities": identity_suite,
    "regime": regime_lemma_oracle,
    "roundtrip": roundtrip_oracle,
}


def run_suite(name: str, trials: int, seed: int, workers: int = 1, grid_n: int = 40) -> AuditReport:
    """Run one named suite (CLI entry point)."""
    if name not in _SUITE_FNS:
        raise DomainError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    if name == "karamata":
        return karamata_suite(trials, seed, workers=workers, grid_n=grid_n)
    return _SUITE_FNS[name](trials, seed, workers=workers)

"""Parameter deformation with machine-checked certificates.

Given parameters p and a size n, produce deformed parameters p' that
differ from p by integers, induce the same box order on the relevant
coordinate grid, and whose attached stability vector is generic.  The
construction follows a fixed candidate schedule and every candidate is
verified outright, so correctness never rests on an asymptotic
"sufficiently large" argument.  A successful run returns a Certificate;
an exhausted schedule raises with diagnostics of the last failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .boxorder import Params, box_equiv, box_less
from .combinatorics import Box, relevant_boxes
from .loci import (
    IndexMode,
    Stability,
    aspherical_witnesses,
    genericity_witness,
    is_spherical,
    theta_of_p,
)
from .mporder import OrderInstance, relation_p
from .scalars import KappaMode, format_rational

ASSUMED_LEMMAS = (
    "the box-matching order on multipartitions is contained in the "
    "c-function preorder of the given parameters",
    "for the deformed parameters, the c-function preorder is contained in "
    "the geometric order attached to the emitted stability vector",
)


class DeformationError(Exception):
    """Raised when no candidate in the schedule passes verification."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class DeformPlan:
    """The data of one deformation candidate.

    M is the kappa multiplier in rational mode (None in formal mode);
    kappa_shift is the additive shift in formal mode (None in rational
    mode); m is strictly increasing and subtracted componentwise.
    """

    m: tuple[int, ...]
    M: int | None = None
    kappa_shift: int | None = None

    def __post_init__(self) -> None:
        if any(a >= b for a, b in zip(self.m, self.m[1:])):
            raise ValueError("m must be strictly increasing")

    def to_json(self) -> dict:
        return {"M": self.M, "m": list(self.m), "kappa_shift": self.kappa_shift}


@dataclass(frozen=True)
class PreservationViolation:
    b1: Box
    b2: Box
    predicate: str  # "equiv" | "less"
    before: bool
    after: bool

    def to_json(self) -> dict:
        return {
            "b1": list(self.b1),
            "b2": list(self.b2),
            "predicate": self.predicate,
            "before": self.before,
            "after": self.after,
        }


def s_coordinates(p: Params) -> list[tuple[Fraction, Fraction]]:
    """Coordinates s_i with h_i = kappa*s_i - i/ell.

    Each entry is (constant part, coefficient of 1/kappa).  In rational
    mode the value collapses into the constant part.
    """
    out = []
    for i, entry in enumerate(p.h):
        inv_part = entry.a + Fraction(i, p.ell)
        if p.mode.is_rational:
            if p.mode.value == 0:
                raise ValueError("kappa must be nonzero")
            out.append((inv_part / p.mode.value, Fraction(0)))
        else:
            out.append((entry.b, inv_part))
    return out


def index_classes(p: Params) -> list[list[int]]:
    """Partition of the component indices by s_i - s_j in (1/kappa)*Z."""
    coords = s_coordinates(p)
    classes: list[list[int]] = []
    reps: list[tuple[Fraction, Fraction]] = []
    for i, (const, inv) in enumerate(coords):
        for idx, (rep_const, rep_inv) in enumerate(reps):
            if p.mode.is_rational:
                related = ((const - rep_const) * p.mode.value).denominator == 1
            else:
                related = const == rep_const and (inv - rep_inv).denominator == 1
            if related:
                classes[idx].append(i)
                break
        else:
            reps.append((const, inv))
            classes.append([i])
    return classes


def verify_preservation(p: Params, p2: Params, n: int) -> PreservationViolation | None:
    """Check box_equiv and box_less agree under p and p2 on the full grid.

    Runs over every ordered pair of relevant_boxes(ell, n); returns the
    first disagreement, or None.
    """
    if p.ell != p2.ell:
        raise ValueError("parameter vectors have different lengths")
    grid = relevant_boxes(p.ell, n)
    for b1 in grid:
        for b2 in grid:
            before, after = box_equiv(p, b1, b2), box_equiv(p2, b1, b2)
            if before != after:
                return PreservationViolation(b1, b2, "equiv", before, after)
            before, after = box_less(p, b1, b2), box_less(p2, b1, b2)
            if before != after:
                return PreservationViolation(b1, b2, "less", before, after)
    return None


def _integral_difference_failure(p: Params, p2: Params) -> dict | None:
    """Componentwise p2 - p must be an integer tuple (kappa slot included)."""
    if p.mode.is_rational:
        kappa_diff = p2.mode.value - p.mode.value
        if kappa_diff.denominator != 1:
            return {"slot": "kappa", "difference": format_rational(kappa_diff)}
    for i in range(p.ell):
        if p.mode.is_rational:
            diff = p2.h[i].a - p.h[i].a
            integral = diff.denominator == 1
            shown = format_rational(diff)
        else:
            scalar_diff = p2.h[i] - p.h[i]
            integral = scalar_diff.in_integers_plus(0)
            shown = f"{format_rational(scalar_diff.a)}+{format_rational(scalar_diff.b)}k"
        if not integral:
            return {"slot": f"h_{i}", "difference": shown}
    return None


def _candidate_failure(
    p: Params, p2: Params, n: int, index_mode: IndexMode
) -> dict | None:
    failure = _integral_difference_failure(p, p2)
    if failure is not None:
        return {"check": "integral_difference", **failure}
    violation = verify_preservation(p, p2, n)
    if violation is not None:
        return {"check": "box_order_preserved", **violation.to_json()}
    witness = genericity_witness(theta_of_p(p2), n, index_mode)
    if witness is not None:
        return {"check": "theta_generic", "witness": witness.to_json()}
    return None


def _rational_schedule(retry_bound: int):
    """Diagonal sweep over (t, g): multiplier steps and m-gap scalings.

    Both knobs genuinely matter: growing t rescales kappa, growing g
    widens the m-gaps, and some parameters need gaps comparable to M.
    """
    total = 2
    emitted = 0
    while emitted < retry_bound:
        for t in range(1, total):
            yield t, total - t
            emitted += 1
            if emitted >= retry_bound:
                return
        total += 1


def _gap_vector(ell: int, gap: int) -> list[int]:
    # Consecutive differences gap, gap+1, ... stay pairwise distinct, so
    # a zero h-vector still deforms to pairwise distinct theta entries.
    return [gap * i + i * (i - 1) // 2 for i in range(ell)]


def deform_rational(
    p: Params,
    n: int,
    index_mode: IndexMode = IndexMode.LITERAL,
    retry_bound: int = 64,
) -> tuple[Params, DeformPlan]:
    """Deform rational-kappa parameters: kappa' = M*kappa, h' = h - integers.

    M runs over 1 + t*D where D clears the denominators of kappa and of
    every kappa*s_i, so all differences are integral by construction.
    The last m entry absorbs a remainder so that the sum-zero
    renormalization shift is itself an integer.
    """
    if not p.mode.is_rational:
        raise ValueError("parameters are not in rational mode")
    kappa = p.mode.value
    if kappa == 0:
        raise ValueError("kappa must be nonzero")
    base = [p.h[i].a + Fraction(i, p.ell) for i in range(p.ell)]
    D = lcm(kappa.denominator, *(value.denominator for value in base))
    attempts = 0
    last: dict | None = None
    for t, gap in _rational_schedule(retry_bound):
        attempts += 1
        M = 1 + t * D
        m = _gap_vector(p.ell, gap)
        delta = [(M - 1) * base[i] - m[i] for i in range(p.ell)]
        remainder = int(sum(delta)) % p.ell
        m[-1] += remainder
        delta[-1] -= remainder
        plan = DeformPlan(m=tuple(m), M=M)
        p2 = Params.build(
            KappaMode.rational(M * kappa),
            [p.h[i].a + delta[i] for i in range(p.ell)],
        )
        failure = _candidate_failure(p, p2, n, index_mode)
        if failure is None:
            return p2, plan
        last = {"plan": plan.to_json(), "failure": failure}
    raise DeformationError(
        "no deformation candidate passed verification",
        {"mode": "rational", "candidates_tried": attempts, "last": last},
    )


def deform_formal(
    p: Params,
    n: int,
    index_mode: IndexMode = IndexMode.LITERAL,
    retry_bound: int = 64,
) -> tuple[Params, DeformPlan]:
    """Deform formal-kappa parameters: kappa' = kappa, h' = h - m.

    The kappa shift is pinned to zero, so the component classes (s_i
    related when s_i - s_j is in (1/kappa)*Z) are carried over verbatim
    and only the integer vector m varies over the schedule.
    """
    if p.mode.is_rational:
        raise ValueError("parameters are not in formal mode")
    attempts = 0
    last: dict | None = None
    for gap in range(1, retry_bound + 1):
        attempts += 1
        m = _gap_vector(p.ell, gap)
        remainder = (-sum(m)) % p.ell
        m[-1] += remainder
        plan = DeformPlan(m=tuple(m), kappa_shift=0)
        p2 = Params(p.mode, tuple(p.h[i] - m[i] for i in range(p.ell)))
        failure = _candidate_failure(p, p2, n, index_mode)
        if failure is None:
            return p2, plan
        last = {"plan": plan.to_json(), "failure": failure}
    raise DeformationError(
        "no deformation candidate passed verification",
        {
            "mode": "formal",
            "candidates_tried": attempts,
            "index_classes": index_classes(p),
            "last": last,
        },
    )


@dataclass(frozen=True)
class CheckResult:
    """One named certificate check; passed is None for informational entries."""

    name: str
    passed: bool | None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class LocalizeOptions:
    index_mode: IndexMode = IndexMode.LITERAL
    tiebreak: bool = False
    oracle_bound: int = 6
    retry_bound: int = 64
    workers: int = 1


@dataclass(frozen=True)
class Certificate:
    """Verified record of one deformation run.

    Every check with a boolean outcome has passed; informational entries
    carry passed = None.  The two standing assumptions that cannot be
    checked mechanically are listed verbatim in assumed_lemmas.
    """

    p: Params
    p_prime: Params
    theta: Stability
    plan: DeformPlan
    checks: tuple[CheckResult, ...]
    assumed_lemmas: tuple[str, str] = ASSUMED_LEMMAS
    conventions: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if any(check.passed is False for check in self.checks):
            raise ValueError("certificates cannot carry failed checks")
        if len(self.assumed_lemmas) != 2:
            raise ValueError("exactly two assumed lemmas are recorded")

    def to_json(self) -> dict:
        return {
            "p": self.p.to_json(),
            "p_prime": self.p_prime.to_json(),
            "theta": self.theta.to_json(),
            "plan": self.plan.to_json(),
            "checks": [check.to_json() for check in self.checks],
            "assumed_lemmas": list(self.assumed_lemmas),
            "conventions": dict(self.conventions),
        }


def localize(p: Params, n: int, options: LocalizeOptions | None = None) -> Certificate:
    """Produce a generic stability vector for p with a verified certificate.

    Deforms p per its kappa mode, reads theta off the deformed
    parameters, and re-runs every check independently of the retry loop.
    """
    if options is None:
        options = LocalizeOptions()
    if n < 1:
        raise ValueError("need n >= 1")
    if p.mode.is_rational and p.mode.value == 0:
        raise ValueError("kappa must be nonzero")
    deform = deform_rational if p.mode.is_rational else deform_formal
    p2, plan = deform(p, n, options.index_mode, options.retry_bound)
    theta = theta_of_p(p2)

    checks = []
    integral_failure = _integral_difference_failure(p, p2)
    checks.append(
        CheckResult("integral_difference", integral_failure is None, integral_failure or {})
    )
    violation = verify_preservation(p, p2, n)
    checks.append(
        CheckResult(
            "box_order_preserved",
            violation is None,
            {"n": n} if violation is None else violation.to_json(),
        )
    )
    witness = genericity_witness(theta, n, options.index_mode)
    checks.append(
        CheckResult(
            "theta_generic",
            witness is None,
            {"index_mode": options.index_mode.value}
            if witness is None
            else {"index_mode": options.index_mode.value, "witness": witness.to_json()},
        )
    )
    if n <= options.oracle_bound:
        rel_before = relation_p(OrderInstance(p, n, options.tiebreak), options.workers)
        rel_after = relation_p(OrderInstance(p2, n, options.tiebreak), options.workers)
        checks.append(
            CheckResult(
                "order_relation_equal",
                rel_before.matrix == rel_after.matrix,
                {"n": n},
            )
        )
    else:
        checks.append(
            CheckResult(
                "order_relation_equal", None, {"skipped": f"n > {options.oracle_bound}"}
            )
        )
    spherical = is_spherical(p, n)
    checks.append(
        CheckResult(
            "spherical",
            None,
            {
                "spherical": spherical,
                "witnesses": [w.to_json() for w in aspherical_witnesses(p, n)],
            },
        )
    )

    if any(check.passed is False for check in checks):
        failed = [check.name for check in checks if check.passed is False]
        raise DeformationError(
            "verification failed after deformation",
            {"failed_checks": failed, "plan": plan.to_json()},
        )

    return Certificate(
        p=p,
        p_prime=p2,
        theta=theta,
        plan=plan,
        checks=tuple(checks),
        conventions={
            "h_normalization": "sum-zero",
            "p_prime_first_slot": "kappa-prime",
            "genericity_index_mode": options.index_mode.value,
        },
    )

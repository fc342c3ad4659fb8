"""Positive weight sequences and their classical growth conditions.

A sequence alpha(0), alpha(1), ... with alpha(n) > 0 is stored on the
log scale.  The module generates the two stock families (power-of-
factorial weights and Bell numbers of a given order), evaluates the two
exponential generating functions

    G_alpha(r)   = sum alpha(n)/n! r^n
    G_1/alpha(r) = sum 1/(n! alpha(n)) r^n,

checks the named conditions (A1), (A2), (A2~), (B1), (B1~), (B2),
(B2~), (B3), (C1), (C2), (C3) with finite-evidence verdicts, and fits
equivalence constants K1 c1^n a(n) <= b(n) <= K2 c2^n a(n) between two
sequences.

Bell numbers of order k are b_k(n) = n! [r^n] exp_k(r)/exp_k(0) for the
iterated exponential exp_1(r) = e^r, exp_{j+1}(r) = exp(exp_j(r)).  The
normalized iterates N_j = exp_j/exp_j(0) satisfy N_{j+1} =
exp(c_j (N_j - 1)) with c_j = exp_j(0), so the series is built by k-1
truncated exponential compositions.  Orders 1 and 2 (where c_1 = 1) use
exact rational arithmetic; higher orders run the same chain in 60-digit
decimals because c_2 = e, c_3 = e^e, ... are irrational.
"""

from __future__ import annotations

import decimal
import json
import math
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Sequence, Union

from .numerics import (
    LOG_ZERO,
    LogScalar,
    NoDecayCertificate,
    SeriesSum,
    default_rel_tol,
    log_sum_exp_series,
)

SEQ_SCHEMA = "growthcalc.seq/1"

CONDITIONS = ("A1", "A2", "A2t", "B1", "B1t", "B2", "B2t", "B3", "C1", "C2", "C3")

GEN_BELL_MAX_N = 200


def _log_factorials(n_max: int) -> list[float]:
    out = [0.0]
    for n in range(1, n_max + 1):
        out.append(out[-1] + math.log(n))
    return out


def _log_fraction(x: Fraction) -> float:
    if x <= 0:
        raise ValueError("log of nonpositive rational")
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class PositiveSequence:
    """A finite prefix alpha(0..N) of a positive sequence, log scale.

    ``exact`` carries the same values as exact rationals when the
    generator can produce them (Bell numbers), enabling exact condition
    checks.
    """

    family: str
    params: dict
    log_alpha: tuple[float, ...]
    exact: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        if not self.log_alpha:
            raise ValueError("sequence must have at least alpha(0)")
        if self.exact is not None and len(self.exact) != len(self.log_alpha):
            raise ValueError("exact values must align with log_alpha")

    def __len__(self) -> int:
        return len(self.log_alpha)

    @property
    def n_max(self) -> int:
        return len(self.log_alpha) - 1

    def to_json_dict(self) -> dict:
        return {
            "schema": SEQ_SCHEMA,
            "family": self.family,
            "params": self.params,
            "N": self.n_max,
            "log_alpha": list(self.log_alpha),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PositiveSequence":
        if data.get("schema") != SEQ_SCHEMA:
            raise ValueError(f"not a {SEQ_SCHEMA} document")
        log_alpha = tuple(float(x) for x in data["log_alpha"])
        if len(log_alpha) != int(data["N"]) + 1:
            raise ValueError("N does not match log_alpha length")
        return cls(str(data["family"]), dict(data.get("params", {})), log_alpha)

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path: str) -> "PositiveSequence":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def gen_power_factorial(beta: float, n_max: int) -> PositiveSequence:
    """alpha(n) = (n!)**beta for 0 <= beta < 1."""
    if not 0.0 <= beta < 1.0:
        raise ValueError("power-factorial weights need 0 <= beta < 1")
    lf = _log_factorials(n_max)
    log_alpha = tuple(beta * lf[n] for n in range(n_max + 1))
    exact = None
    if beta == 0.0:
        exact = tuple(Fraction(1) for _ in range(n_max + 1))
    return PositiveSequence("power-factorial", {"beta": beta}, log_alpha, exact)


def _series_exp(a: Sequence[Fraction]) -> list[Fraction]:
    """Taylor coefficients of exp(A) for a series A with A(0) = 0.

    Uses the derivative recurrence n b_n = sum_{j=1..n} j a_j b_{n-j}.
    """
    if a[0] != 0:
        raise ValueError("series must have zero constant term")
    n_max = len(a) - 1
    b = [Fraction(1)] + [Fraction(0)] * n_max
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(1, n + 1):
            if a[j]:
                acc += j * a[j] * b[n - j]
        b[n] = acc / n
    return b


def _decimal_series_exp(mult: Decimal, gamma: Sequence[Decimal]) -> list[Decimal]:
    """Taylor coefficients of exp(mult * (G - 1)) for a series G with G(0) = 1."""
    n_max = len(gamma) - 1
    b = [Decimal(0)] * (n_max + 1)
    b[0] = Decimal(1)
    for n in range(1, n_max + 1):
        acc = Decimal(0)
        for j in range(1, n + 1):
            acc += j * mult * gamma[j] * b[n - j]
        b[n] = acc / n
    return b


def gen_bell(order: int, n_max: int) -> PositiveSequence:
    """Bell numbers of the given order, normalized so that b(0) = 1.

    b(n) = n! [r^n] exp_k(r)/exp_k(0) for the k-fold iterated
    exponential.  order=1 gives b(n) = 1 (EGF e^r), order=2 the
    classical Bell numbers 1, 1, 2, 5, 15, 52, ...; from order 3 on the
    values are polynomials in e, e^e, ... with integer coefficients
    (b(1) = e, b(2) = e^2 + 2e at order 3) and the chain runs in
    60-digit decimal arithmetic instead of exact rationals.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if not 0 <= n_max <= GEN_BELL_MAX_N:
        raise ValueError(f"n_max must be in [0, {GEN_BELL_MAX_N}]")
    if order <= 2:
        # stage multiplier exp_1(0) = 1: exact rationals
        coeffs = [Fraction(1, math.factorial(n)) for n in range(n_max + 1)]
        if order == 2:
            coeffs = _series_exp([Fraction(0)] + coeffs[1:])
        exact = tuple(c * math.factorial(n) for n, c in enumerate(coeffs))
        log_alpha = tuple(_log_fraction(v) for v in exact)
        return PositiveSequence("bell-order-k", {"k": order}, log_alpha, exact)
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        gamma = [Decimal(1) / Decimal(math.factorial(n)) for n in range(n_max + 1)]
        mult = Decimal(1)
        for _ in range(order - 1):
            gamma = _decimal_series_exp(mult, gamma)
            mult = mult.exp()
        log_alpha = tuple(
            float(gamma[n].ln() + Decimal(math.factorial(n)).ln())
            for n in range(n_max + 1)
        )
    return PositiveSequence("bell-order-k", {"k": order}, log_alpha)


def from_legendre(u, n_max: int) -> PositiveSequence:
    """Weights alpha(n) = 1/(n! ell_u(n)) built from a transform profile."""
    from . import legendre  # deferred: legendre depends on growthfn

    lf = _log_factorials(n_max)
    log_alpha = tuple(
        -lf[n] - legendre.ell(u, float(n)).log_ell.log for n in range(n_max + 1)
    )
    return PositiveSequence("from-legendre", {"source": getattr(u, "name", "?")}, log_alpha)


def _suffix_max_ratios(log_terms: Sequence[float]) -> list[float]:
    """suffix_max[n] bounds every stored term ratio a_{m+1}/a_m for m >= n."""
    n = len(log_terms)
    out = [math.inf] * n
    running = -math.inf
    for m in range(n - 2, -1, -1):
        if log_terms[m] == LOG_ZERO:
            ratio = math.inf if log_terms[m + 1] > LOG_ZERO else 0.0
        else:
            ratio = math.exp(min(log_terms[m + 1] - log_terms[m], 700.0))
        running = max(running, ratio)
        out[m] = running
    return out


def sum_stored_series(log_terms: Sequence[float], rel_tol: Optional[float] = None) -> SeriesSum:
    """Certified sum of a stored, eventually log-concave positive series.

    The tail certificate at index n is the largest stored term ratio
    from n on; with eventually nonincreasing ratios (log-concave decay,
    which the generating function preconditions assert) this also bounds
    the unstored tail.  Raises NoDecayCertificate when the stored terms
    end before the bound certifies convergence.
    """
    suffix = _suffix_max_ratios(log_terms)

    def cert(n: int) -> Optional[float]:
        if n >= len(log_terms) - 1:
            # past the last stored gap the assumed nonincreasing ratios
            # are bounded by the final observed one
            if len(log_terms) < 2:
                return None
            q = suffix[len(log_terms) - 2]
        else:
            q = suffix[n]
        return q if q < 1.0 else None

    return log_sum_exp_series(iter(log_terms), rel_tol=rel_tol, tail_certificate=cert)


def egf(
    seq: PositiveSequence,
    log_r: float,
    variant: str = "alpha",
    rel_tol: Optional[float] = None,
) -> SeriesSum:
    """Evaluate G_alpha (variant="alpha") or G_1/alpha (variant="inverse").

    Input and output are on the log scale.  Needs enough stored terms
    for the tail at r to be certified, else NoDecayCertificate.
    """
    lf = _log_factorials(seq.n_max)
    la = seq.log_alpha
    if variant == "alpha":
        log_c = [la[n] - lf[n] for n in range(len(la))]
    elif variant == "inverse":
        log_c = [-la[n] - lf[n] for n in range(len(la))]
    else:
        raise ValueError("variant must be 'alpha' or 'inverse'")
    if log_r == LOG_ZERO:
        return SeriesSum(LogScalar(log_c[0]), 1)
    terms = [log_c[n] + n * log_r for n in range(len(log_c))]
    return sum_stored_series(terms, rel_tol=rel_tol)


# --------------------------------------------------------------------------
# condition checks


@dataclass(frozen=True)
class ConditionVerdict:
    """Finite-evidence verdict for one named condition.

    status is "holds-up-to-N", "fails-at-index", or "inconclusive";
    witness carries the fitted constants or the failing index and
    margin.  A verdict never claims more than the checked range shows.
    """

    condition: str
    status: str
    n_checked: int
    witness: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds-up-to-N"


_SLACK = 1e-12


def _second_diff_check(values: Sequence[float], want: str) -> tuple[Optional[int], float]:
    """Log-concavity/convexity scan; returns (first failing n, worst margin)."""
    worst = -math.inf
    fail_at = None
    for n in range(len(values) - 2):
        d2 = values[n] + values[n + 2] - 2.0 * values[n + 1]
        margin = d2 if want == "concave" else -d2
        scale = max(1.0, abs(values[n]), abs(values[n + 1]), abs(values[n + 2]))
        if margin > worst:
            worst = margin
        if margin > _SLACK * scale and fail_at is None:
            fail_at = n
    return fail_at, worst


def _exact_second_diff_check(vals: Sequence[Fraction], want: str) -> Optional[int]:
    for n in range(len(vals) - 2):
        lhs = vals[n] * vals[n + 2]
        rhs = vals[n + 1] * vals[n + 1]
        bad = lhs > rhs if want == "concave" else lhs < rhs
        if bad:
            return n
    return None


def _trend_is_rising(values: Sequence[float], rel: float = 0.05, abs_floor: float = 1e-6) -> bool:
    """True when a quantity is still climbing materially near the end."""
    n = len(values)
    if n < 8:
        return False
    a, b, c = values[n // 4], values[n // 2], values[-1]
    return (c - b) > max(abs_floor, rel * max(1.0, abs(b))) and (b - a) > abs_floor


def check_condition(
    seq: PositiveSequence,
    condition: str,
    search_cap: Optional[int] = None,
) -> ConditionVerdict:
    """Check one named condition on the stored range of the sequence.

    Limit-type conditions report finite evidence only: the computed
    quantity either behaves monotonically toward the claimed limit over
    the tail (holds-up-to-N), breaks an inequality at a specific index
    (fails-at-index), or trends the wrong way near the end of the range
    (inconclusive).  Constant-type conditions (A1, C1, C2, C3) report
    the smallest constant that works on the range and go inconclusive
    when that constant is still climbing at the end of the range.
    """
    if condition not in CONDITIONS:
        raise ValueError(f"unknown condition {condition!r}; pick from {CONDITIONS}")
    N = seq.n_max if search_cap is None else min(seq.n_max, search_cap)
    la = seq.log_alpha[: N + 1]
    lf = _log_factorials(N)

    if condition == "A1":
        if abs(la[0]) > 1e-12:
            return ConditionVerdict("A1", "fails-at-index", N, {"index": 0}, "alpha(0) != 1")
        if N == 0:
            return ConditionVerdict("A1", "holds-up-to-N", N, {"sigma": 1.0, "inf_value": 1.0})
        s = [-la[n] / n for n in range(1, N + 1)]
        log_sigma = max(0.0, max(s))
        if _trend_is_rising(s):
            return ConditionVerdict(
                "A1", "inconclusive", N, {"sigma_so_far": math.exp(log_sigma)},
                "required sigma still growing at the end of the range",
            )
        inf_log = min(la[n] + n * log_sigma for n in range(N + 1))
        return ConditionVerdict(
            "A1", "holds-up-to-N", N,
            {"sigma": math.exp(log_sigma), "inf_value": math.exp(inf_log)},
        )

    if condition in ("A2", "A2t"):
        if N < 2:
            return ConditionVerdict(condition, "inconclusive", N, {}, "range too short")
        if condition == "A2":
            q = [(la[n] - lf[n]) / n for n in range(1, N + 1)]
        else:
            q = [(-la[n] - lf[n]) / n for n in range(1, N + 1)]
        tail = q[len(q) // 2 :]
        decreasing = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
        witness = {"root_at_N": math.exp(q[-1]), "root_at_mid": math.exp(q[len(q) // 2])}
        if decreasing:
            return ConditionVerdict(condition, "holds-up-to-N", N, witness)
        return ConditionVerdict(
            condition, "inconclusive", N, witness,
            "n-th roots not decreasing over the tail of the range",
        )

    if condition in ("B2", "B2t", "B3"):
        want = "concave" if condition in ("B2", "B2t") else "convex"
        if seq.exact is not None:
            if condition == "B2":
                vals = [seq.exact[n] / math.factorial(n) for n in range(N + 1)]
            elif condition == "B2t":
                vals = [Fraction(1) / (seq.exact[n] * math.factorial(n)) for n in range(N + 1)]
            else:
                vals = list(seq.exact[: N + 1])
            bad = _exact_second_diff_check(vals, want)
            if bad is None:
                return ConditionVerdict(condition, "holds-up-to-N", N, {"exact": True})
            return ConditionVerdict(
                condition, "fails-at-index", N, {"index": bad, "exact": True}
            )
        if condition == "B2":
            vals_f = [la[n] - lf[n] for n in range(N + 1)]
        elif condition == "B2t":
            vals_f = [-la[n] - lf[n] for n in range(N + 1)]
        else:
            vals_f = list(la)
        bad, worst = _second_diff_check(vals_f, want)
        if bad is None:
            return ConditionVerdict(condition, "holds-up-to-N", N, {"worst_margin": worst})
        return ConditionVerdict(
            condition, "fails-at-index", N, {"index": bad, "margin": worst}
        )

    if condition in ("C1", "C2", "C3"):
        if condition == "C1":
            def best_for(limit):
                return max(
                    (la[n] - la[m]) / m
                    for m in range(1, limit + 1)
                    for n in range(0, m + 1)
                )
        elif condition == "C2":
            def best_for(limit):
                return max(
                    (la[n + m] - la[n] - la[m]) / (n + m)
                    for n in range(0, limit + 1)
                    for m in range(0, limit + 1 - n)
                    if n + m >= 1
                )
        else:
            def best_for(limit):
                return max(
                    (la[n] + la[m] - la[n + m]) / (n + m)
                    for n in range(0, limit + 1)
                    for m in range(0, limit + 1 - n)
                    if n + m >= 1
                )

        if N < 1:
            return ConditionVerdict(condition, "inconclusive", N, {}, "range too short")
        log_c = best_for(N)
        key = {"C1": "c1", "C2": "c2", "C3": "c3"}[condition]
        if N >= 8:
            prefix = [best_for(N // 4), best_for(N // 2), log_c]
            if _trend_is_rising(prefix):
                return ConditionVerdict(
                    condition, "inconclusive", N,
                    {key + "_so_far": math.exp(log_c)},
                    "fitted constant still growing at the end of the range",
                )
        return ConditionVerdict(condition, "holds-up-to-N", N, {key: math.exp(log_c)})

    # B1 / B1t need the generating function and its transform
    from . import growthfn, legendre  # deferred to avoid an import cycle

    variant = "alpha" if condition == "B1" else "inverse"
    if variant == "alpha":
        log_c = [la[n] - lf[n] for n in range(N + 1)]
        sign = +1.0
    else:
        log_c = [-la[n] - lf[n] for n in range(N + 1)]
        sign = -1.0
    fn = growthfn.from_series(log_c, name=f"egf-{variant}")
    n_hi = max(2, (2 * N) // 3)  # keep clear of the stored truncation
    q = []
    for n in range(1, n_hi + 1):
        try:
            log_m = legendre.ell(fn, float(n)).log_ell.log
        except NoDecayCertificate:
            # the truncated series can no longer certify its tail at the
            # radii this index probes; stop at the evidence we have
            break
        q.append((lf[n] + sign * la[n] + log_m) / n)
    n_hi = len(q)
    if n_hi < 4:
        return ConditionVerdict(
            condition, "inconclusive", n_hi, {},
            "stored series too short to probe the transform",
        )
    running_sup = []
    cur = -math.inf
    for val in q:
        cur = max(cur, val)
        running_sup.append(cur)
    witness = {"limsup_bound": math.exp(running_sup[-1]), "n_used": n_hi}
    if _trend_is_rising(running_sup, rel=0.02):
        return ConditionVerdict(
            condition, "inconclusive", n_hi, witness,
            "running sup of the n-th roots still growing near the truncation",
        )
    return ConditionVerdict(condition, "holds-up-to-N", n_hi, witness)


# --------------------------------------------------------------------------
# sequence equivalence


@dataclass(frozen=True)
class SequenceEquivalenceWitness:
    """Constants with K1 c1^n a(n) <= b(n) <= K2 c2^n a(n) on the range."""

    K1: float
    c1: float
    K2: float
    c2: float
    n_checked: int

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class EquivalenceCounterexample:
    """Evidence that per-index log ratios drift without bound."""

    index: int
    log_ratio: float
    drift: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return False


def seq_equivalent(
    a: PositiveSequence,
    b: PositiveSequence,
) -> Union[SequenceEquivalenceWitness, EquivalenceCounterexample]:
    """Fit equivalence constants between two sequences, or reject.

    The geometric rates c1, c2 come from the envelope of the per-index
    slopes (1/n) log(b(n)/a(n)) over the tail half of the range; K1, K2
    are then the minimal prefactors making the bounds hold everywhere.
    Rejection is evidence-based: if the slope is still drifting by a
    constant per doubling of n at the end of the range, the log ratio
    grows without bound and no constants can exist.
    """
    N = min(a.n_max, b.n_max)
    if N < 1:
        raise ValueError("need at least indices 0 and 1")
    d = [b.log_alpha[n] - a.log_alpha[n] for n in range(N + 1)]
    s = [d[n] / n for n in range(1, N + 1)]

    if N >= 8:
        q1, q2, q3 = s[len(s) // 4], s[len(s) // 2], s[-1]
        drift_late, drift_early = q3 - q2, q2 - q1
        if abs(drift_late) > 0.25 and abs(drift_early) > 0.25 and drift_late * drift_early > 0:
            return EquivalenceCounterexample(
                index=N,
                log_ratio=d[N],
                drift=drift_late,
                detail="per-index slope of log(b/a) still drifting at the range end",
            )

    tail = s[len(s) // 2 :] if len(s) >= 2 else s
    log_c2 = max(tail)
    log_c1 = min(tail)
    log_K2 = max(d[n] - n * log_c2 for n in range(N + 1))
    log_K1 = min(d[n] - n * log_c1 for n in range(N + 1))
    return SequenceEquivalenceWitness(
        K1=math.exp(log_K1),
        c1=math.exp(log_c1),
        K2=math.exp(log_K2),
        c2=math.exp(log_c2),
        n_checked=N,
    )

"""Log-domain arithmetic and robust 1-D search kernels.

Everything downstream stores magnitudes as natural logarithms so that
quantities like n**(2n) or exp(r**2) at r = 1e3 never leave IEEE range.
This module owns that convention: a :class:`LogScalar` is a magnitude,
``-inf`` encodes exact zero, and the optimizers/series summers work on
plain floats that are understood to live on the log scale.

Design rules baked in here:

* series summation is streaming log-sum-exp with a running maximum and a
  certified geometric tail bound (no uncertified truncation),
* 1-D minimization is bracket expansion by step doubling from a seed,
  then golden-section to an absolute width of 1e-12, capped at 300
  golden iterations,
* searches that run off the representable range (|x| > 700 by default)
  either return a converged boundary limit, flagged, or raise
  :class:`NotBracketable`.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional, Union

LOG_ZERO = float("-inf")

RANGE_CAP = 700.0
GOLDEN_WIDTH = 1e-12
GOLDEN_MAX_ITER = 300
SERIES_INDEX_CAP = 10 ** 6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = 1.0 - _INV_PHI


class GrowthCalcError(Exception):
    """Base class for kernel failures."""


class NoDecayCertificate(GrowthCalcError):
    """A series summation could not certify a convergent tail."""


class NotBracketable(GrowthCalcError):
    """A 1-D search escaped the representable range without converging."""


class TargetOutOfRange(GrowthCalcError):
    """bisect_monotone could not bracket the requested target value."""


class PreconditionViolated(GrowthCalcError):
    """A documented caller-side precondition failed a cheap runtime check."""


_DEFAULT_REL_TOL = float(os.environ.get("GROWTHCALC_TOL", "1e-9"))


def default_rel_tol() -> float:
    """Library-wide relative tolerance (env var GROWTHCALC_TOL overrides)."""
    return _DEFAULT_REL_TOL


def set_default_rel_tol(value: float) -> None:
    global _DEFAULT_REL_TOL
    if not value > 0.0:
        raise ValueError("tolerance must be positive")
    _DEFAULT_REL_TOL = float(value)


def logaddexp(a: float, b: float) -> float:
    """log(e**a + e**b) without leaving the log scale."""
    if a == LOG_ZERO:
        return b
    if b == LOG_ZERO:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))


def safe_exp(x: float) -> float:
    """exp(x) that saturates to inf instead of raising OverflowError."""
    if x > 709.0:
        return math.inf
    return math.exp(x)


@dataclass(frozen=True, slots=True, order=True)
class LogScalar:
    """A nonnegative magnitude stored as its natural log.

    Ordering compares the stored logs, which is exactly the ordering of
    the magnitudes.  ``+`` adds magnitudes (log-sum-exp), ``*`` and ``/``
    multiply and divide them, ``**`` raises to a real power.
    """

    log: float

    @classmethod
    def from_value(cls, value: float) -> "LogScalar":
        if value < 0.0:
            raise ValueError("LogScalar encodes nonnegative magnitudes")
        return cls(math.log(value)) if value > 0.0 else cls(LOG_ZERO)

    @classmethod
    def from_log(cls, log: float) -> "LogScalar":
        return cls(float(log))

    @classmethod
    def zero(cls) -> "LogScalar":
        return cls(LOG_ZERO)

    @classmethod
    def one(cls) -> "LogScalar":
        return cls(0.0)

    @property
    def value(self) -> float:
        """The magnitude itself; overflows to inf past IEEE range."""
        return safe_exp(self.log)

    @property
    def is_zero(self) -> bool:
        return self.log == LOG_ZERO

    def __add__(self, other: "LogScalar") -> "LogScalar":
        return LogScalar(logaddexp(self.log, other.log))

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        if self.is_zero or other.is_zero:
            return LogScalar(LOG_ZERO)
        return LogScalar(self.log + other.log)

    def __truediv__(self, other: "LogScalar") -> "LogScalar":
        if other.is_zero:
            raise ZeroDivisionError("division by LogScalar zero")
        if self.is_zero:
            return LogScalar(LOG_ZERO)
        return LogScalar(self.log - other.log)

    def __pow__(self, k: float) -> "LogScalar":
        if self.is_zero:
            if k == 0.0:
                return LogScalar(0.0)  # 0**0 == 1 convention
            if k < 0.0:
                raise ZeroDivisionError("negative power of zero")
            return LogScalar(LOG_ZERO)
        return LogScalar(k * self.log)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"LogScalar(log={self.log!r})"


LogLike = Union[float, LogScalar]


def _as_log(term: LogLike) -> float:
    if isinstance(term, LogScalar):
        return term.log
    return float(term)


class SeriesSum(NamedTuple):
    """Certified series value plus the truncation index actually used."""

    value: LogScalar
    terms_used: int


def log_sum_exp_series(
    terms: Iterable[LogLike],
    rel_tol: Optional[float] = None,
    tail_certificate: Optional[Callable[[int], Optional[float]]] = None,
    index_cap: int = SERIES_INDEX_CAP,
) -> SeriesSum:
    """Sum a nonnegative series given by log-scale terms.

    ``tail_certificate(n)`` must return a bound q on every term ratio
    a_{m+1}/a_m for m >= n (magnitude scale), or None if no bound is
    known yet at index n.  Once q < 1 is available the tail after term n
    is at most a_n * q/(1-q); summation stops as soon as that bound drops
    below rel_tol times the running sum.

    A finite iterable with ``tail_certificate=None`` is summed exactly
    (the caller asserts the stream is the whole series).  If a
    certificate is supplied but never certifies convergence before the
    stream or ``index_cap`` runs out, :class:`NoDecayCertificate` is
    raised: the series gave no evidence of decay.
    """
    if rel_tol is None:
        rel_tol = default_rel_tol()
    log_tol = math.log(rel_tol)
    log_sum = LOG_ZERO
    n = -1
    for n, term in enumerate(terms):
        if n > index_cap:
            raise NoDecayCertificate(
                f"series passed index cap {index_cap} without a certified tail"
            )
        t = _as_log(term)
        log_sum = logaddexp(log_sum, t)
        if tail_certificate is None:
            continue
        q = tail_certificate(n)
        if q is None or not 0.0 <= q < 1.0:
            continue
        if t == LOG_ZERO:
            return SeriesSum(LogScalar(log_sum), n + 1)
        log_tail = t + math.log(q) - math.log1p(-q) if q > 0.0 else LOG_ZERO
        if log_sum > LOG_ZERO and log_tail <= log_tol + log_sum:
            return SeriesSum(LogScalar(log_sum), n + 1)
    if tail_certificate is not None:
        raise NoDecayCertificate(
            f"series ended at index {n} before its tail was certified"
        )
    return SeriesSum(LogScalar(log_sum), n + 1)


class Bracket(NamedTuple):
    """An interval certified to contain a minimizer.

    ``inner`` is an interior point with f(inner) <= min(f_lo, f_hi),
    which is what certifies the bracket.
    """

    lo: float
    hi: float
    f_lo: float
    f_hi: float
    inner: float
    f_inner: float


class OptResult(NamedTuple):
    """Result of a 1-D search.  ``boundary`` is None for an interior
    optimum, else "lo"/"hi" naming the side where the optimum sits."""

    x: float
    fx: float
    boundary: Optional[str]


def _golden_min(
    f: Callable[[float], float],
    a: float,
    b: float,
    width: float = GOLDEN_WIDTH,
    max_iter: int = GOLDEN_MAX_ITER,
) -> tuple[float, float]:
    """Golden-section minimization on [a, b] for a unimodal f."""
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    best_x, best_f = (x1, f1) if f1 <= f2 else (x2, f2)
    for _ in range(max_iter):
        if (b - a) <= width:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
        if f1 < best_f:
            best_x, best_f = x1, f1
        if f2 < best_f:
            best_x, best_f = x2, f2
    return best_x, best_f


def _boundary_converged(f_prev: float, f_last: float) -> bool:
    # the march reached the range cap; decide between a finite limit
    # (values flattened out) and genuine escape to -inf
    if math.isinf(f_last):
        return False
    return abs(f_last - f_prev) <= 1e-8 * (1.0 + abs(f_last))


def bracket_minimum(
    f: Callable[[float], float],
    seed: float,
    lo: Optional[float] = None,
    hi: Optional[float] = None,
    step: float = 1.0,
) -> Union[Bracket, OptResult]:
    """Expand from ``seed`` by step doubling until a minimum is bracketed.

    ``lo``/``hi`` are attainable domain clamps: if the descent runs into
    one, the clamped point is returned as a boundary OptResult.  Without
    clamps the search is capped at +-RANGE_CAP; hitting the cap returns a
    flagged boundary value when f has flattened out there and raises
    :class:`NotBracketable` when it is still falling.
    """
    cap_lo = -RANGE_CAP if lo is None else lo
    cap_hi = RANGE_CAP if hi is None else hi
    lo_is_cap = lo is None
    hi_is_cap = hi is None
    x0 = min(max(seed, cap_lo), cap_hi)
    f0 = f(x0)

    xr = min(x0 + step, cap_hi)
    xl = max(x0 - step, cap_lo)
    fr = f(xr) if xr > x0 else math.inf
    fl = f(xl) if xl < x0 else math.inf

    if f0 <= fr and f0 <= fl:
        a, b = (xl if xl < x0 else x0 - step), (xr if xr > x0 else x0 + step)
        return Bracket(a, b, fl, fr, x0, f0)

    if fr < fl:
        direction, x_prev, f_prev, x_cur, f_cur = 1.0, x0, f0, xr, fr
        cap, cap_is_range = cap_hi, hi_is_cap
    else:
        direction, x_prev, f_prev, x_cur, f_cur = -1.0, x0, f0, xl, fl
        cap, cap_is_range = cap_lo, lo_is_cap

    while True:
        step *= 2.0
        x_next = x_cur + direction * step
        at_cap = False
        if direction > 0 and x_next >= cap:
            x_next, at_cap = cap, True
        elif direction < 0 and x_next <= cap:
            x_next, at_cap = cap, True
        f_next = f(x_next) if x_next != x_cur else f_cur
        if f_next >= f_cur:
            a, b = (x_prev, x_next) if direction > 0 else (x_next, x_prev)
            fa, fb = (f_prev, f_next) if direction > 0 else (f_next, f_prev)
            return Bracket(a, b, fa, fb, x_cur, f_cur)
        if at_cap:
            side = "hi" if direction > 0 else "lo"
            if not cap_is_range:
                # attainable domain edge: the minimum sits on it
                return OptResult(x_next, f_next, side)
            if _boundary_converged(f_cur, f_next):
                return OptResult(x_next, f_next, side)
            raise NotBracketable(
                f"descent still active at range cap x={x_next:+.6g} "
                f"(f went {f_cur:.6g} -> {f_next:.6g})"
            )
        x_prev, f_prev, x_cur, f_cur = x_cur, f_cur, x_next, f_next


def minimize_convex_1d(
    f: Callable[[float], float],
    seed: float,
    rel_tol: Optional[float] = None,
    lo: Optional[float] = None,
    hi: Optional[float] = None,
    step: float = 1.0,
) -> OptResult:
    """Minimize a convex (or unimodal) function of one variable.

    Returns the interior minimizer found by bracketing plus golden
    section, or a flagged boundary result when the infimum is attained
    at a domain clamp or approached at the numeric range cap.
    """
    del rel_tol  # golden section runs to fixed absolute width
    got = bracket_minimum(f, seed, lo=lo, hi=hi, step=step)
    if isinstance(got, OptResult):
        return got
    x, fx = _golden_min(f, got.lo, got.hi)
    if got.f_inner < fx:
        x, fx = got.inner, got.f_inner
    return OptResult(x, fx, None)


def maximize_concave_1d(
    f: Callable[[float], float],
    seed: float,
    rel_tol: Optional[float] = None,
    lo: Optional[float] = None,
    hi: Optional[float] = None,
    step: float = 1.0,
) -> OptResult:
    """Maximize a concave (or unimodal) function; see minimize_convex_1d.

    Supports a domain clamp such as lo=0.0 for searches over t >= 0.
    """
    res = minimize_convex_1d(lambda x: -f(x), seed, rel_tol, lo=lo, hi=hi, step=step)
    return OptResult(res.x, -res.fx, res.boundary)


def bisect_monotone(
    g: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_expand: int = 60,
) -> float:
    """Solve g(x) = target for nondecreasing g by bisection.

    The initial interval is expanded outward by doubling while the
    target lies outside g([lo, hi]); :class:`TargetOutOfRange` is raised
    if expansion passes the range cap without capturing the target.
    """
    if hi <= lo:
        raise ValueError("need lo < hi")
    g_lo, g_hi = g(lo), g(hi)
    width = hi - lo
    expansions = 0
    while g_lo > target:
        lo -= width
        width *= 2.0
        expansions += 1
        if lo < -RANGE_CAP or expansions > max_expand:
            raise TargetOutOfRange(f"target {target} below g on the search range")
        g_lo = g(lo)
    width = hi - lo
    while g_hi < target:
        hi += width
        width *= 2.0
        expansions += 1
        if hi > RANGE_CAP or expansions > max_expand:
            raise TargetOutOfRange(f"target {target} above g on the search range")
        g_hi = g(hi)
    for _ in range(200):
        if (hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        if g(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def geometric_grid(lo: float, hi: float, points: int) -> list[float]:
    """Geometrically spaced grid including both endpoints."""
    if not (lo > 0.0 and hi > lo and points >= 2):
        raise ValueError("need 0 < lo < hi and points >= 2")
    la, lb = math.log(lo), math.log(hi)
    return [math.exp(la + (lb - la) * i / (points - 1)) for i in range(points)]

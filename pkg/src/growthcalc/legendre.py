"""Legendre-transform calculus on growth functions.

For a growth function u the module computes the transform
ell_u(t) = inf_{r>0} u(r)/r^t, the inverse theta_f(r) = sup_t f(t) r^t,
the L-series sum ell_u(n) r^n, the sharp series with coefficients
1/(ell_u(n) n!^2), and the dual function u*(r) = sup_s e^{2 sqrt(rs)}/u(s).

Every search runs in logarithmic coordinates: ell minimizes
phi(x) - t x over x = log r, theta maximizes over log t, and the dual
maximizes over log sqrt(s).  The substitutions are monotone, so the
objectives stay unimodal wherever the originals are convex/concave, and
the searched variable stays representable even when the linear-scale
optimizer runs to 1e12.  Escapes past the numeric range raise
NotBracketable; dual_function converts that escape into the value
+infinity, which is what the supremum actually is there.

verify_suite packages the quantitative statements of the calculus as
named report generators.  Reports serialize with sorted keys so the
same arguments always produce the same bytes.
"""

from __future__ import annotations

import json
import math
import weakref
from dataclasses import dataclass
from typing import Callable, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from .growthfn import GrowthFunction, from_phi, make_growth_function
from .numerics import (
    LOG_ZERO,
    RANGE_CAP,
    LogScalar,
    NoDecayCertificate,
    NotBracketable,
    PreconditionViolated,
    _golden_min,
    geometric_grid,
    maximize_concave_1d,
    minimize_convex_1d,
    safe_exp,
)
from .sequences import sum_stored_series

__all__ = [
    "FunctionEquivalenceCounterexample",
    "FunctionEquivalenceWitness",
    "LegendrePoint",
    "LegendreProfile",
    "LogConcaveProfile",
    "SuiteReport",
    "TauBounds",
    "admissibility_report",
    "dual",
    "dual_function",
    "ell",
    "ell_profile",
    "function_equivalent",
    "inverse_legendre",
    "l_function",
    "l_growth_function",
    "l_sharp",
    "l_sharp_growth_function",
    "suite_tags",
    "tau_bounds",
    "theta_function",
    "verify_suite",
]

LOG2 = math.log(2.0)


class LegendrePoint(NamedTuple):
    """One transform value: log ell_u(t), the minimizer rho(t), and a
    boundary flag when the infimum sat on a domain edge."""

    log_ell: LogScalar
    rho: float
    boundary: Optional[str]


class TauBounds(NamedTuple):
    """One-sided logarithmic slopes r u'(r)/u(r) at a point."""

    tau_minus: float
    tau_plus: float


# --------------------------------------------------------------------------
# the transform


_SCAN_POINTS = 4096


def _scan_minimize(g: Callable[[float], float], x_lo: float, x_hi: float):
    """Global scan + golden refinement for a possibly multi-basin g."""
    xs = np.linspace(x_lo, x_hi, _SCAN_POINTS)
    vals = np.array([g(float(x)) for x in xs])
    finite = np.isfinite(vals)
    fin_idx = np.flatnonzero(finite)
    if fin_idx.size == 0:
        raise PreconditionViolated("objective has no finite values on the scan range")
    j_lo, j_hi = int(fin_idx[0]), int(fin_idx[-1])
    best_x, best_f = math.nan, math.inf
    last = len(xs) - 1
    for i in fin_idx:
        left_up = i == 0 or not finite[i - 1] or vals[i] <= vals[i - 1]
        right_up = i == last or not finite[i + 1] or vals[i] <= vals[i + 1]
        if not (left_up and right_up):
            continue
        a = float(xs[max(i - 1, 0)])
        b = float(xs[min(i + 1, last)])
        x, fx = _golden_min(g, a, b)
        if fx < best_f:
            best_x, best_f = x, fx
    spacing = float(xs[1] - xs[0])
    scale = 1.0 + abs(best_f)
    if best_x <= xs[j_lo] + spacing:
        inner = float(vals[min(j_lo + 1, j_hi)])
        if abs(float(vals[j_lo]) - inner) <= 1e-8 * scale:
            return best_x, best_f, "lo"
        if j_lo == 0 and x_lo <= -RANGE_CAP + 1e-9:
            raise NotBracketable(
                "scan minimum still descending at the left range cap"
            )
        return best_x, best_f, "lo"
    if best_x >= xs[j_hi] - spacing:
        inner = float(vals[max(j_hi - 1, j_lo)])
        if abs(float(vals[j_hi]) - inner) <= 1e-8 * scale:
            return best_x, best_f, "hi"
        if j_hi == last and x_hi >= RANGE_CAP - 1e-9:
            raise NotBracketable(
                "scan minimum still descending at the right range cap"
            )
        # the evaluator stopped being finite here: an attained edge
        return best_x, best_f, "hi"
    return best_x, best_f, None


def _ell_at(u: GrowthFunction, t: float, seed_x: float = 0.0) -> LegendrePoint:
    if t < 0:
        raise ValueError("the transform needs t >= 0")
    if u.in_c_plus_log is False:
        raise PreconditionViolated(
            f"{u.name} is flagged outside the admissible growth class"
        )
    if t == 0.0 and u.increasing and u.defined_at_zero:
        # the infimum of an increasing u is its value at r = 0
        return LegendrePoint(LogScalar(u.log_u0), 0.0, "lo")

    def g(x: float) -> float:
        return u.phi_at(x) - t * x

    if u.log_exp_convex:
        res = minimize_convex_1d(g, seed_x, step=1.0)
        x, fx, boundary = res.x, res.fx, res.boundary
    else:
        x, fx, boundary = _scan_minimize(g, -RANGE_CAP, min(u.x_max, RANGE_CAP))
    rho = 0.0 if (boundary == "lo" and x <= -RANGE_CAP + 1e-9) else math.exp(x)
    return LegendrePoint(LogScalar(fx), rho, boundary)


_PROFILE_CACHE: "weakref.WeakKeyDictionary[GrowthFunction, list]" = (
    weakref.WeakKeyDictionary()
)


def _integer_profile(u: GrowthFunction, n_max: int) -> list[LegendrePoint]:
    """Transform values at integer t, grown on demand and cached per
    function instance; each new point warm-starts at the previous
    minimizer (rho is increasing in t)."""
    pts = _PROFILE_CACHE.get(u)
    if pts is None:
        pts = []
        _PROFILE_CACHE[u] = pts
    while len(pts) <= n_max:
        n = len(pts)
        seed = 0.0
        if pts and pts[-1].rho > 0.0 and math.isfinite(pts[-1].rho):
            seed = math.log(pts[-1].rho)
        pts.append(_ell_at(u, float(n), seed))
    return pts[: n_max + 1]


def ell(u: GrowthFunction, t: float) -> LegendrePoint:
    """The transform at one point: minimize phi(x) - t x over x = log r.

    Returns the log of the infimum, the minimizer rho(t) = e^x, and a
    flag when the infimum was attained or approached on a boundary.
    Integer t values are cached per function, since the series builders
    walk them densely.
    """
    t = float(t)
    if t < 0:
        raise ValueError("the transform needs t >= 0")
    # only small integers go through the cached walk: every float >= 2^52
    # is integral, and a search probing t ~ 1e15 must not build the
    # profile below it point by point
    if t.is_integer() and t <= _SERIES_CAP:
        return _integer_profile(u, int(t))[int(t)]
    return _ell_at(u, t)


def tau_bounds(u: GrowthFunction, r: float) -> TauBounds:
    """One-sided slopes of phi at x = log r by Richardson-refined
    difference quotients; for convex phi these bracket the transform's
    active t interval at r."""
    if r <= 0:
        raise ValueError("tau bounds need r > 0")
    if u.log_exp_convex is False:
        raise PreconditionViolated(f"{u.name} is flagged non-convex in (log, exp)")
    x = math.log(r)
    h = 1e-4

    def left(hh: float) -> float:
        return (u.phi_at(x) - u.phi_at(x - hh)) / hh

    def right(hh: float) -> float:
        return (u.phi_at(x + hh) - u.phi_at(x)) / hh

    tm = 2.0 * left(h / 2.0) - left(h)
    tp = 2.0 * right(h / 2.0) - right(h)
    if tm > tp:
        # smooth point: the one-sided slopes agree and the extrapolation
        # noise decided the order; restore it
        tm, tp = tp, tm
    return TauBounds(tm, tp)


@dataclass(frozen=True)
class LegendreProfile:
    """Transform values along a t grid, with the recorded minimizers."""

    t_grid: tuple[float, ...]
    log_ell: tuple[float, ...]
    rho: tuple[float, ...]
    boundary_flags: tuple[Optional[str], ...]

    @classmethod
    def from_function(cls, u: GrowthFunction, t_grid: Sequence[float]) -> "LegendreProfile":
        ts = [float(t) for t in t_grid]
        if any(t < 0 for t in ts) or any(b < a for a, b in zip(ts, ts[1:])):
            raise ValueError("t grid must be nondecreasing and nonnegative")
        pts = []
        seed = 0.0
        for t in ts:
            p = _ell_at(u, t, seed)
            if p.rho > 0.0 and math.isfinite(p.rho):
                seed = math.log(p.rho)
            pts.append(p)
        return cls(
            tuple(ts),
            tuple(p.log_ell.log for p in pts),
            tuple(p.rho for p in pts),
            tuple(p.boundary for p in pts),
        )

    def log_concavity_violation(self) -> float:
        """Largest scaled amount by which log ell dips below a chord;
        nonpositive curvature keeps this at roundoff level."""
        worst = 0.0
        for i in range(1, len(self.t_grid) - 1):
            t0, t1, t2 = self.t_grid[i - 1], self.t_grid[i], self.t_grid[i + 1]
            f0, f1, f2 = self.log_ell[i - 1], self.log_ell[i], self.log_ell[i + 1]
            if t2 <= t0:
                continue
            lam = (t2 - t1) / (t2 - t0)
            chord = lam * f0 + (1.0 - lam) * f2
            scale = max(1.0, abs(f0), abs(f1), abs(f2))
            worst = max(worst, (chord - f1) / scale)
        return worst

    def root_decay_values(self) -> list[tuple[float, float]]:
        """(t, log ell / t) pairs over the positive part of the grid."""
        return [
            (t, v / t) for t, v in zip(self.t_grid, self.log_ell) if t > 0.0
        ]

    def root_decay_decreasing(self) -> bool:
        """Whether (1/t) log ell is nonincreasing over the tail half."""
        roots = [v for _, v in self.root_decay_values()]
        tail = roots[len(roots) // 2 :]
        return all(b <= a + 1e-9 for a, b in zip(tail, tail[1:]))


# --------------------------------------------------------------------------
# the inverse transform


@dataclass(frozen=True)
class LogConcaveProfile:
    """A positive profile t >= 0 -> f(t) given through log f, with a
    caller-asserted index t0 beyond which f is decreasing."""

    log_f: Callable[[float], float]
    t0: float = 1.0
    name: str = "profile"


def admissibility_report(
    f: LogConcaveProfile,
    t_hi: float = 200.0,
    points: int = 201,
    tol: float = 1e-8,
) -> dict:
    """Finite-evidence check of the three inverse-transform conditions:
    the t-th root heads to zero, f decreases beyond t0, and log f is
    concave on the grid.  The thresholds (final root value <= -1, a
    drop of at least 0.2 over the tail) are engineering choices; a
    profile that decays too gently to clear them reads as inadmissible
    even if its limit is genuinely zero."""
    ts = np.linspace(0.0, t_hi, points)
    vals = [float(f.log_f(float(t))) for t in ts]

    root_idx = [i for i, t in enumerate(ts) if t >= max(f.t0, 1.0)]
    roots = [vals[i] / float(ts[i]) for i in root_idx]
    half = roots[len(roots) // 2 :]
    root_decreasing = all(b <= a + 1e-12 for a, b in zip(half, half[1:]))
    drop = half[0] - half[-1] if len(half) >= 2 else 0.0
    decays = bool(root_decreasing and roots and roots[-1] <= -1.0 and drop >= 0.2)

    dec_idx = [i for i, t in enumerate(ts) if t >= f.t0]
    decreasing = all(
        vals[j] <= vals[i] + tol * max(1.0, abs(vals[i]))
        for i, j in zip(dec_idx, dec_idx[1:])
    )

    worst = 0.0
    for i in range(1, len(ts) - 1):
        chord = 0.5 * (vals[i - 1] + vals[i + 1])
        scale = max(1.0, abs(vals[i - 1]), abs(vals[i]), abs(vals[i + 1]))
        worst = max(worst, (chord - vals[i]) / scale)

    return {
        "decays": decays,
        "decreasing_beyond_t0": bool(decreasing),
        "log_concave": bool(worst <= tol),
        "final_root": roots[-1] if roots else math.nan,
        "root_drop": drop,
        "concavity_violation": worst,
        "t_hi": t_hi,
    }


def ell_profile(u: GrowthFunction, name: Optional[str] = None) -> LogConcaveProfile:
    """The transform of u as an inverse-transform input, with t0
    detected from the integer profile (the last index where the values
    still rise)."""
    pts = _integer_profile(u, 60)
    logs = [p.log_ell.log for p in pts]
    t0 = 0
    for i in range(1, len(logs)):
        if logs[i] > logs[i - 1] + 1e-12:
            t0 = i
    return LogConcaveProfile(
        log_f=lambda t: ell(u, t).log_ell.log,
        t0=float(t0),
        name=name or f"ell[{u.name}]",
    )


def _sup_log_f_rt(f: LogConcaveProfile, log_r: float, lf0: Optional[float] = None) -> float:
    """sup over t >= 0 of log f(t) + t log r, searched in tau = log t."""
    if lf0 is None:
        lf0 = float(f.log_f(0.0))

    def H(tau: float) -> float:
        t = safe_exp(tau)
        return float(f.log_f(t)) + t * log_r

    res = maximize_concave_1d(H, seed=max(0.0, log_r), step=1.0)
    return max(res.fx, lf0)


def inverse_legendre(f: LogConcaveProfile, r: float) -> LogScalar:
    """sup_{t>=0} f(t) r^t in the log domain.

    The maximand is concave in t for admissible f and stays unimodal
    under the log-t substitution, so golden section applies; a supremum
    still rising at the range cap raises NotBracketable, which signals
    that f decays too slowly for this r.
    """
    if r < 0:
        raise ValueError("the inverse transform needs r >= 0")
    lf0 = float(f.log_f(0.0))
    if r == 0.0:
        return LogScalar(lf0)  # 0^0 = 1: only the t = 0 term survives
    return LogScalar(_sup_log_f_rt(f, math.log(r), lf0))


def theta_function(
    f: LogConcaveProfile, name: Optional[str] = None, check: bool = True
) -> GrowthFunction:
    """The inverse transform of f packaged as a growth function.

    A supremum of the affine maps x -> log f(t) + t x is convex in x and
    nondecreasing (t >= 0), which fixes the hint flags.
    """
    if check:
        rep = admissibility_report(f)
        if not (rep["decays"] and rep["decreasing_beyond_t0"] and rep["log_concave"]):
            raise PreconditionViolated(
                f"profile {f.name} failed admissibility: {rep}"
            )
    lf0 = float(f.log_f(0.0))
    return from_phi(
        lambda x: _sup_log_f_rt(f, x, lf0),
        name=name or f"theta[{f.name}]",
        family="theta",
        params={"base": f.name},
        log_u0=lf0,
        increasing=True,
        log_exp_convex=True,
        in_c_plus_log=True,
    )


# --------------------------------------------------------------------------
# series built on the integer profile

_SERIES_START = 64
_SERIES_CAP = 4096

_SERIES_N_HINT: "weakref.WeakKeyDictionary[GrowthFunction, dict]" = (
    weakref.WeakKeyDictionary()
)


def _series_from_profile(
    u: GrowthFunction,
    log_r: float,
    coeff: Callable[[int, float], float],
    rel_tol: Optional[float],
    cap: int = _SERIES_CAP,
    tag: str = "l",
) -> LogScalar:
    """Sum coeff(n, log ell_u(n)) r^n with a certified tail, doubling
    the stored profile until the term ratios certify convergence."""
    hints = _SERIES_N_HINT.setdefault(u, {})
    n = max(_SERIES_START, hints.get(tag, 0))
    while True:
        pts = _integer_profile(u, n)
        terms = [coeff(k, p.log_ell.log) + k * log_r for k, p in enumerate(pts)]
        try:
            out = sum_stored_series(terms, rel_tol=rel_tol).value
        except NoDecayCertificate:
            if n >= cap:
                raise NoDecayCertificate(
                    f"series for {u.name} at log r = {log_r:.6g} showed no "
                    f"certified decay within {cap} terms"
                )
            n = min(2 * n, cap)
            continue
        hints[tag] = max(hints.get(tag, 0), n)
        return out


def l_function(u: GrowthFunction, log_r: float, rel_tol: Optional[float] = None) -> LogScalar:
    """The series sum_n ell_u(n) r^n, argument given as log r.

    The tail certificate is the trailing term ratio: the integer
    transform values are log-concave, so their ratios only fall.
    """
    log_r = float(log_r)
    if log_r == LOG_ZERO:
        return _integer_profile(u, 0)[0].log_ell
    return _series_from_profile(u, log_r, lambda n, le: le, rel_tol, tag="l")


def l_sharp(u: GrowthFunction, log_r: float, rel_tol: Optional[float] = None) -> LogScalar:
    """The series sum_n r^n / (ell_u(n) n!^2), argument given as log r."""
    log_r = float(log_r)
    if log_r == LOG_ZERO:
        return LogScalar(-_integer_profile(u, 0)[0].log_ell.log)
    return _series_from_profile(
        u,
        log_r,
        lambda n, le: -le - 2.0 * math.lgamma(n + 1.0),
        rel_tol,
        tag="sharp",
    )


def l_growth_function(
    u: GrowthFunction,
    rel_tol: Optional[float] = None,
    name: Optional[str] = None,
    terms_cap: int = 512,
) -> GrowthFunction:
    """The L-series of u wrapped as a growth function.

    Evaluation certifies its own tail, so arguments far past the stored
    horizon raise NoDecayCertificate instead of returning a truncation.
    """
    p0 = ell(u, 0.0)

    def phi(x: float) -> float:
        return _series_from_profile(u, x, lambda n, le: le, rel_tol, cap=terms_cap, tag="l").log

    return from_phi(
        phi,
        name=name or f"L[{u.name}]",
        family="l-function",
        params={"base": u.name},
        log_u0=p0.log_ell.log,
        increasing=True,
        log_exp_convex=True,
    )


def l_sharp_growth_function(
    u: GrowthFunction,
    rel_tol: Optional[float] = None,
    name: Optional[str] = None,
    terms_cap: int = 512,
) -> GrowthFunction:
    """The sharp series of u wrapped as a growth function."""
    p0 = ell(u, 0.0)

    def phi(x: float) -> float:
        return _series_from_profile(
            u, x, lambda n, le: -le - 2.0 * math.lgamma(n + 1.0), rel_tol,
            cap=terms_cap, tag="sharp",
        ).log

    return from_phi(
        phi,
        name=name or f"Lsharp[{u.name}]",
        family="l-sharp",
        params={"base": u.name},
        log_u0=-p0.log_ell.log,
        increasing=True,
        log_exp_convex=True,
    )


# --------------------------------------------------------------------------
# the dual function


def _dual_point(u: GrowthFunction, log_r: float) -> tuple[float, float, Optional[str]]:
    """log of sup_{s>0} e^{2 sqrt(rs)}/u(s), searched in w = log sqrt(s).

    Returns (log value, maximizer s, boundary flag).  The maximand
    2 sqrt(r) y - log u(y^2) is concave in y = sqrt(s) whenever u is
    (log, x^2)-convex, and stays unimodal under the log substitution.
    """
    if u.in_c_plus_log is False:
        raise PreconditionViolated(
            f"{u.name} is flagged outside the admissible growth class"
        )
    if log_r == LOG_ZERO:
        p = ell(u, 0.0)
        return (-p.log_ell.log, 0.0, p.boundary)
    sq = safe_exp(0.5 * log_r)

    def G(w: float) -> float:
        p = u.phi_at(2.0 * w)
        if not math.isfinite(p):
            # log u overflowed the double range: the denominator wins
            return -math.inf
        return 2.0 * sq * safe_exp(w) - p

    seed = 0.5 * log_r
    step = 1.0
    while not math.isfinite(G(seed)) and seed > -RANGE_CAP:
        seed -= step
        step *= 2.0
    if not math.isfinite(G(seed)):
        raise PreconditionViolated(f"no representable region for the dual of {u.name}")
    res = maximize_concave_1d(G, seed, step=1.0)
    if res.boundary == "lo" and res.x <= -RANGE_CAP + 1e-9:
        s_star = 0.0
    else:
        s_star = safe_exp(2.0 * res.x)
    return (res.fx, s_star, res.boundary)


def dual(u: GrowthFunction, r: float) -> LogScalar:
    """log u*(r) where u*(r) = sup_{s>0} e^{2 sqrt(rs)}/u(s).

    Raises NotBracketable when the supremum escapes the numeric range,
    which is the finite-evidence signal that u grows too slowly in
    sqrt(r) for the dual to be finite at this r.
    """
    if r < 0:
        raise ValueError("the dual needs r >= 0")
    log_r = LOG_ZERO if r == 0.0 else math.log(r)
    return LogScalar(_dual_point(u, log_r)[0])


def dual_function(u: GrowthFunction, name: Optional[str] = None) -> GrowthFunction:
    """The dual of u as a growth function, with escaping suprema mapped
    to +infinity.

    The dual is always increasing and (log, x^2)-convex -- its log at
    squared argument is a supremum of affine maps -- so the hint flags
    are unconditional.
    """
    p0 = ell(u, 0.0)

    def phi(x: float) -> float:
        try:
            return _dual_point(u, x)[0]
        except NotBracketable:
            return math.inf

    return from_phi(
        phi,
        name=name or f"dual[{u.name}]",
        family="dual",
        params={"base": u.name},
        log_u0=-p0.log_ell.log,
        increasing=True,
        log_exp_convex=True,
        log_x2_convex=True,
        in_c_plus_log=True,
    )


# --------------------------------------------------------------------------
# equivalence of functions


@dataclass(frozen=True)
class FunctionEquivalenceWitness:
    """Envelope constants with c1 u(a1 r) <= v(r) <= c2 u(a2 r) at every
    checked grid point; max_residual = log(c2/c1)."""

    c1: float
    a1: float
    c2: float
    a2: float
    checked_range: tuple[float, float]
    max_residual: float

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class FunctionEquivalenceCounterexample:
    """Evidence that no constants in the search box can work: the
    centered residual keeps growing across the tail of the range."""

    r: float
    spread: float
    searched_a: tuple[float, float]
    detail: str = ""

    @property
    def ok(self) -> bool:
        return False


_A_BOX = (2.0 ** -20, 2.0 ** 20)


def function_equivalent(
    u: GrowthFunction,
    v: GrowthFunction,
    r_range: tuple[float, float],
    points: int = 96,
    a_points: int = 64,
    refinements: int = 2,
) -> Union[FunctionEquivalenceWitness, FunctionEquivalenceCounterexample]:
    """Fit c1 u(a r) <= v(r) <= c2 u(a r) over the range, or reject.

    The shift a is searched on a log grid over the box [2^-20, 2^20],
    refined around the best cell and polished by golden section; the
    constants are then the exact envelope of log v(r) - log u(a r) on
    the grid, so the witness inequalities hold at every checked point by
    construction.  r = 0 joins the grid explicitly when both functions
    are defined there.  Rejection is evidence-based: if, at the best a,
    the centered residual still grows quarter over quarter at the range
    end, no constants can absorb it.
    """
    r_min, r_max = float(r_range[0]), float(r_range[1])
    if not (0.0 <= r_min < r_max):
        raise ValueError("need 0 <= r_min < r_max")
    lo = r_min if r_min > 0.0 else max(r_max * 1e-9, 1e-12)
    grid = geometric_grid(lo, r_max, points)
    include_zero = r_min == 0.0 and u.defined_at_zero and v.defined_at_zero
    d_zero = (v.log_at(0.0) - u.log_at(0.0)) if include_zero else None

    def _eval(fn: Callable[[float], float], arg: float) -> Optional[float]:
        try:
            val = fn(arg)
        except (NoDecayCertificate, NotBracketable, PreconditionViolated):
            return None
        return val if math.isfinite(val) else None

    log_v = [_eval(v.log_at, r) for r in grid]
    need = max(8, points // 2)

    def residuals(a: float) -> list[Optional[float]]:
        log_a = math.log(a)
        out = []
        for r, lv in zip(grid, log_v):
            if lv is None:
                out.append(None)
                continue
            lu = _eval(u.phi_at, math.log(r) + log_a)
            out.append(None if lu is None else lv - lu)
        return out

    def spread(res: list[Optional[float]]) -> float:
        vals = [d for d in res if d is not None]
        if d_zero is not None:
            vals.append(d_zero)
        if len(vals) < need:
            return math.inf
        return max(vals) - min(vals)

    la_lo, la_hi = math.log(_A_BOX[0]), math.log(_A_BOX[1])
    best_la, best_spread = 0.0, math.inf
    for _ in range(refinements + 1):
        las = np.linspace(la_lo, la_hi, a_points)
        for la in las:
            s = spread(residuals(math.exp(float(la))))
            if s < best_spread:
                best_la, best_spread = float(la), s
        half_cell = (la_hi - la_lo) / (a_points - 1)
        la_lo, la_hi = best_la - half_cell, best_la + half_cell
    if math.isfinite(best_spread):
        la, _ = _golden_min(
            lambda la: spread(residuals(math.exp(la))), la_lo, la_hi, width=1e-9
        )
        if spread(residuals(math.exp(la))) <= best_spread:
            best_la = la

    best_a = math.exp(best_la)
    res = residuals(best_a)
    finite = [(r, d) for r, d in zip(grid, res) if d is not None]
    if len(finite) < need:
        raise PreconditionViolated(
            f"{v.name} vs {u.name}: too few evaluable grid points on the range"
        )
    all_d = [d for _, d in finite] + ([d_zero] if d_zero is not None else [])
    med = sorted(all_d)[len(all_d) // 2]

    quarter = len(res) // 4
    q_spans = []
    for q in range(4):
        chunk = [
            abs(d - med)
            for d in res[q * quarter : (q + 1) * quarter if q < 3 else len(res)]
            if d is not None
        ]
        q_spans.append(max(chunk) if chunk else 0.0)
    if q_spans[3] > q_spans[2] + 2.0 and q_spans[2] > q_spans[1] + 2.0:
        tail = [(r, d) for r, d in finite if d is not None][-max(quarter, 1):]
        worst_r = max(tail, key=lambda rd: abs(rd[1] - med))[0]
        return FunctionEquivalenceCounterexample(
            r=worst_r,
            spread=max(all_d) - min(all_d),
            searched_a=_A_BOX,
            detail="centered residual keeps growing across the range tail",
        )
    return FunctionEquivalenceWitness(
        c1=math.exp(min(all_d)),
        a1=best_a,
        c2=math.exp(max(all_d)),
        a2=best_a,
        checked_range=(r_min, r_max),
        max_residual=max(all_d) - min(all_d),
    )


# --------------------------------------------------------------------------
# verification suites


_TOL_IDENTITY = 1e-7
_TOL_INEQ = 1e-9


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one named verification suite.

    ``rows`` retains the per-point comparisons (coordinate, lhs, rhs,
    slack, all log scale; slack is the margin, negative on violation)
    for tabular export; the JSON dict stays summary-sized.
    """

    suite: str
    params: dict
    grid: dict
    max_violation: float
    witness: dict
    verdict: str
    rows: tuple = ()

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "grid": self.grid,
            "max_violation": self.max_violation,
            "witness": self.witness,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _report(suite, params, grid, max_violation, witness, tol, rows=()) -> SuiteReport:
    verdict = "pass" if max_violation <= tol else "fail"
    return SuiteReport(
        suite, params, grid, float(max_violation), witness, verdict, tuple(rows)
    )


def _suite_u(params: Mapping, default_family: str, default_params: Mapping) -> GrowthFunction:
    family = params.get("family", default_family)
    kw = dict(default_params) if family == default_family else {}
    for key in ("beta", "a", "p"):
        if key in params:
            kw[key] = params[key]
    if "order" in params:
        kw["k"] = params["order"]
    return make_growth_function(family, kw)


def _xlogx(n: float) -> float:
    return 0.0 if n == 0 else n * math.log(n)


def _suite_a4(params: dict) -> SuiteReport:
    n_max = int(params.get("n_max", 50))
    tol = float(params.get("tol", _TOL_INEQ))
    worst, wit, rows = -math.inf, {}, []
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            lhs = _xlogx(n + m)
            rhs = _xlogx(n) + _xlogx(m) + (n + m) * LOG2
            v = lhs - rhs
            rows.append({"x": f"{n}:{m}", "lhs": lhs, "rhs": rhs, "slack": -v})
            if v > worst:
                worst, wit = v, {"n": n, "m": m, "slack": -v}
    return _report(
        "a4", {"n_max": n_max, "tol": tol}, {"n_max": n_max}, worst, wit, tol, rows
    )


def _suite_stirling(params: dict) -> SuiteReport:
    n_max = int(params.get("n_max", 100))
    tol = float(params.get("tol", _TOL_INEQ))
    worst, wit, rows = -math.inf, {}, []
    for n in range(n_max + 1):
        mid = n - _xlogx(n)  # log (e/n)^n with 0^0 = 1
        lg = math.lgamma(n + 1.0)
        sides = (
            ("lower", -lg, mid),
            ("upper", mid, 1.0 + 0.5 * n * LOG2 - lg),
        )
        for side, lhs, rhs in sides:
            v = lhs - rhs
            rows.append({"x": f"{n}/{side}", "lhs": lhs, "rhs": rhs, "slack": -v})
            if v > worst:
                worst, wit = v, {"n": n, "side": side, "slack": -v}
    return _report(
        "stirling", {"n_max": n_max, "tol": tol}, {"n_max": n_max}, worst, wit, tol,
        rows,
    )


def _suite_lem_a1(params: dict) -> SuiteReport:
    u = _suite_u(params, "ks", {"beta": 0.5})
    k = float(params.get("k", 2.0))
    n_max = int(params.get("n_max", 25))
    tol = float(params.get("tol", _TOL_INEQ))
    logs = [p.log_ell.log for p in _integer_profile(u, 2 * n_max)]
    worst, wit, rows = -math.inf, {}, []
    for n in range(n_max + 1):
        for m in range(n_max + 1):
            sides = (
                ("doubling-upper", logs[n] + logs[m],
                 logs[0] + k * (n + m) * LOG2 + logs[n + m]),
                ("superadditive", logs[0] + logs[n + m], logs[n] + logs[m]),
            )
            for side, lhs, rhs in sides:
                v = lhs - rhs
                rows.append(
                    {"x": f"{n}:{m}/{side}", "lhs": lhs, "rhs": rhs, "slack": -v}
                )
                if v > worst:
                    worst, wit = v, {"n": n, "m": m, "side": side, "slack": -v}
    return _report(
        "lem-a1",
        {"family": u.family, "name": u.name, "k": k, "n_max": n_max, "tol": tol},
        {"n_max": n_max},
        worst,
        wit,
        tol,
        rows,
    )


def _geom_grid_params(params: dict, lo: float, hi: float, points: int):
    lo = float(params.get("r_min", lo))
    hi = float(params.get("r_max", hi))
    points = int(params.get("points", points))
    return geometric_grid(lo, hi, points), {"r_min": lo, "r_max": hi, "points": points}


def _suite_lem_a2(params: dict) -> SuiteReport:
    u = _suite_u(params, "ks", {"beta": 0.5})
    k = float(params.get("k", 2.0))
    tol = float(params.get("tol", _TOL_INEQ))
    grid, gdesc = _geom_grid_params(params, 1e-3, 100.0, 21)
    logs = [p.log_ell.log for p in _integer_profile(u, 1)]
    shift = k * LOG2
    worst, wit, rows = -math.inf, {}, []
    for r in grid:
        log_r = math.log(r)
        lhs = log_r + l_function(u, log_r).log
        rhs = logs[0] - logs[1] + l_function(u, log_r + shift).log
        v = lhs - rhs
        rows.append({"x": r, "lhs": lhs, "rhs": rhs, "slack": -v})
        if v > worst:
            worst, wit = v, {"r": r, "slack": -v}
    return _report(
        "lem-a2",
        {"family": u.family, "name": u.name, "k": k, "tol": tol},
        gdesc,
        worst,
        wit,
        tol,
        rows,
    )


def _suite_thm31_upper(params: dict) -> SuiteReport:
    u = _suite_u(params, "ks", {"beta": 0.5})
    tol = float(params.get("tol", _TOL_INEQ))
    a_list = [float(params["a"])] if "a" in params else [2.0, math.e, 4.0]
    grid, gdesc = _geom_grid_params(params, 1e-3, 50.0, 25)
    worst, wit, rows = -math.inf, {}, []
    for a in a_list:
        const = math.log(math.e * a / math.log(a))
        for r in [0.0] + grid:
            lhs = l_function(u, LOG_ZERO if r == 0.0 else math.log(r)).log
            rhs = const + u.log_at(a * r)
            v = lhs - rhs
            rows.append({"x": f"{r}/a={a}", "lhs": lhs, "rhs": rhs, "slack": -v})
            if v > worst:
                worst, wit = v, {"r": r, "a": a, "slack": -v}
    return _report(
        "thm31-upper",
        {"family": u.family, "name": u.name, "a": a_list, "tol": tol},
        gdesc,
        worst,
        wit,
        tol,
        rows,
    )


def _detect_n0(logs: Sequence[float]) -> int:
    """Smallest integer from which the stored transform values only
    fall; recorded in reports because no a-priori bound exists for it."""
    n0 = 0
    for i in range(1, len(logs)):
        if logs[i] > logs[i - 1] + 1e-12:
            n0 = i
    return n0


def _suite_thm31_lower(params: dict) -> SuiteReport:
    u = _suite_u(params, "ks", {"beta": 0.5})
    k = float(params.get("k", 2.0))
    tol = float(params.get("tol", _TOL_INEQ))
    grid, gdesc = _geom_grid_params(params, 1e-3, 50.0, 25)
    logs = [p.log_ell.log for p in _integer_profile(u, 60)]
    n0 = _detect_n0(logs)
    log_u1 = u.log_at(1.0)
    log_c = max(log_u1 - logs[0], logs[0] - logs[1], log_u1 - logs[n0 + 1])
    shift = k * LOG2
    worst, wit, rows = -math.inf, {}, []
    for r in [0.0] + grid:
        log_arg = shift if r == 0.0 else math.log(r) + shift
        lhs = u.log_at(r)
        rhs = log_c + l_function(u, LOG_ZERO if r == 0.0 else log_arg).log
        v = lhs - rhs
        rows.append({"x": r, "lhs": lhs, "rhs": rhs, "slack": -v})
        if v > worst:
            worst, wit = v, {"r": r, "slack": -v}
    wit.update({"n0": n0, "C": math.exp(log_c)})
    return _report(
        "thm31-lower",
        {"family": u.family, "name": u.name, "k": k, "tol": tol},
        gdesc,
        worst,
        wit,
        tol,
        rows,
    )


def _suite_thm42(params: dict) -> SuiteReport:
    u = _suite_u(params, "exp", {})
    if u.log_x2_convex is False:
        raise PreconditionViolated(f"{u.name} is flagged non-convex in (log, x^2)")
    t_max = int(params.get("t_max", 30))
    tol = float(params.get("tol", _TOL_IDENTITY))
    us = dual_function(u)
    worst, wit, rows = -math.inf, {}, []
    ts = list(range(t_max + 1))
    for t in ts:
        lhs = ell(us, float(t)).log_ell.log
        rhs = 2.0 * t - ell(u, float(t)).log_ell.log - 2.0 * _xlogx(float(t))
        v = abs(lhs - rhs)
        rows.append({"x": t, "lhs": lhs, "rhs": rhs, "slack": -v})
        if v > worst:
            worst, wit = v, {"t": t, "lhs": lhs, "rhs": rhs}
    return _report(
        "thm42",
        {"family": u.family, "name": u.name, "t_max": t_max, "tol": tol},
        {"t": ts},
        worst,
        wit,
        tol,
        rows,
    )


def _suite_thm43(params: dict) -> SuiteReport:
    u = _suite_u(params, "exp", {})
    r_max = float(params.get("r_max", 4.0))
    points = int(params.get("points", 48))
    a = l_growth_function(dual_function(u))
    b = l_sharp_growth_function(u)
    res = function_equivalent(a, b, (0.0, r_max), points=points)
    if res.ok:
        witness = {
            "c1": res.c1,
            "a1": res.a1,
            "c2": res.c2,
            "a2": res.a2,
            "max_residual": res.max_residual,
        }
        violation = 0.0
    else:
        witness = {"r": res.r, "spread": res.spread, "detail": res.detail}
        violation = res.spread
    return _report(
        "thm43",
        {"family": u.family, "name": u.name, "r_max": r_max},
        {"r_min": 0.0, "r_max": r_max, "points": points},
        violation,
        witness,
        0.0,
    )


def _suite_involution(params: dict) -> SuiteReport:
    u = _suite_u(params, "ks", {"beta": 1.0})
    tol = float(params.get("tol", 1e-6))
    grid, gdesc = _geom_grid_params(params, 1.0, 1e4, 40)
    uss = dual_function(dual_function(u))
    worst, wit, rows = -math.inf, {}, []
    for r in grid:
        lhs, rhs = uss.log_at(r), u.log_at(r)
        v = abs(lhs - rhs)
        rows.append({"x": r, "lhs": lhs, "rhs": rhs, "slack": -v})
        if v > worst:
            worst, wit = v, {"r": r, "deviation": v}
    return _report(
        "involution",
        {"family": u.family, "name": u.name, "tol": tol},
        gdesc,
        worst,
        wit,
        tol,
        rows,
    )


def _log_power_factorial_sum(p: float, log_r: float, rel_tol: float = 1e-12) -> float:
    """log of sum_n r^n / n!^p, summed with a certified tail."""
    n = 256
    while True:
        terms = [k * log_r - p * math.lgamma(k + 1.0) for k in range(n + 1)]
        try:
            return sum_stored_series(terms, rel_tol=rel_tol).value.log
        except NoDecayCertificate:
            if n >= (1 << 15):
                raise
            n *= 2


def _suite_ks_sandwich(params: dict) -> SuiteReport:
    beta = float(params.get("beta", 0.5))
    if not 0.0 <= beta < 1.0:
        raise ValueError("the sandwich needs 0 <= beta < 1")
    tol = float(params.get("tol", _TOL_INEQ))
    grid, gdesc = _geom_grid_params(params, 1e-2, 50.0, 33)
    worst, wit, rows = -math.inf, {}, []
    for r in grid:
        log_r = math.log(r)
        g_minus = _log_power_factorial_sum(1.0 - beta, log_r)
        g_plus = _log_power_factorial_sum(1.0 + beta, log_r)
        pw_minus = r ** (1.0 / (1.0 - beta))
        pw_plus = r ** (1.0 / (1.0 + beta))
        checks = (
            ("minus-lower", (1.0 - beta) * pw_minus, g_minus),
            (
                "minus-upper",
                g_minus,
                beta * LOG2 + (1.0 - beta) * 2.0 ** (beta / (1.0 - beta)) * pw_minus,
            ),
            (
                "plus-lower",
                -beta * LOG2 + (1.0 + beta) * 2.0 ** (-beta / (1.0 + beta)) * pw_plus,
                g_plus,
            ),
            ("plus-upper", g_plus, (1.0 + beta) * pw_plus),
        )
        for side, lhs, rhs in checks:
            v = lhs - rhs
            rows.append({"x": f"{r}/{side}", "lhs": lhs, "rhs": rhs, "slack": -v})
            if v > worst:
                worst, wit = v, {"r": r, "side": side, "slack": -v}
    return _report(
        "ks-sandwich", {"beta": beta, "tol": tol}, gdesc, worst, wit, tol, rows
    )


def _suite_lem35(params: dict) -> SuiteReport:
    from .growthfn import classify_convexity

    if "family" in params:
        cases = [(_suite_u(params, params["family"], {}), int(params.get("k", 2)))]
    else:
        cases = [
            (make_growth_function("exp", {}), 2),
            (make_growth_function("ks", {"beta": 0.5}), 2),
            (make_growth_function("power-exp", {"a": 3.0}), 2),
        ]
    t_lo, t_hi, points = 0.25, 25.0, 60
    tol = 1e-8
    results = []
    disagreements = 0
    for u, k in cases:
        direct = classify_convexity(u, "log-xk-convex", k=k).passes
        ts = np.linspace(t_lo, t_hi, points)
        vals = [ell(u, float(t)).log_ell.log + k * float(t) * math.log(float(t)) for t in ts]
        worst = -math.inf
        for i in range(1, points - 1):
            scale = max(1.0, abs(vals[i - 1]), abs(vals[i]), abs(vals[i + 1]))
            worst = max(worst, (2.0 * vals[i] - vals[i - 1] - vals[i + 1]) / scale)
        through_ell = worst <= tol
        agree = direct == through_ell
        disagreements += 0 if agree else 1
        results.append(
            {
                "name": u.name,
                "k": k,
                "xk_convex": direct,
                "transform_weighted_log_convex": through_ell,
                "agree": agree,
            }
        )
    rows = [
        {
            "x": c["name"],
            "lhs": float(c["xk_convex"]),
            "rhs": float(c["transform_weighted_log_convex"]),
            "slack": 0.0 if c["agree"] else -1.0,
        }
        for c in results
    ]
    return _report(
        "lem35",
        {"cases": [c["name"] for c in results]},
        {"t_lo": t_lo, "t_hi": t_hi, "points": points},
        float(disagreements),
        {"cases": results},
        0.0,
        rows,
    )


_SUITES = {
    "a4": _suite_a4,
    "stirling": _suite_stirling,
    "lem-a1": _suite_lem_a1,
    "lem-a2": _suite_lem_a2,
    "thm31-upper": _suite_thm31_upper,
    "thm31-lower": _suite_thm31_lower,
    "thm42": _suite_thm42,
    "thm43": _suite_thm43,
    "involution": _suite_involution,
    "ks-sandwich": _suite_ks_sandwich,
    "lem35": _suite_lem35,
}


def suite_tags() -> list[str]:
    """The registered verification suites, sorted."""
    return sorted(_SUITES)


def verify_suite(suite: str, params: Optional[Mapping] = None) -> SuiteReport:
    """Run one named verification suite and return its report.

    Each suite evaluates both sides of its target statement at every
    grid point; the report carries the largest log-scale violation, the
    tightest-slack witness, and a pass/fail verdict.  Violations are
    findings, not exceptions.
    """
    try:
        fn = _SUITES[suite]
    except KeyError:
        raise ValueError(
            f"unknown suite {suite!r}; known suites: {', '.join(suite_tags())}"
        ) from None
    return fn(dict(params or {}))

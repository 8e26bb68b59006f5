"""Gevrey synthesis and classification from Fourier decay.

A field belongs to the Roumieu class gamma_s when its coefficients decay
like K exp(-B <xi>^(1/s)) for some B > 0, and to the Beurling class when
such a bound holds for every B > 0.  At a finite catalog truncation both
conditions are always formally satisfiable, so the classifiers below are
margin-based: they compare local decay slopes of log ||f_hat|| against
<xi>^(1/s) across the lower, middle, and upper thirds of the spectrum.
A genuinely Roumieu field shows a stable positive slope; a Beurling
field shows a growing slope; anything slower shows a collapsing slope.

The space-side test bounds ||(-L)^k f||_inf through the l1 dual norm in
log-domain and inspects the normalized radius rho_k, which stabilizes
near A = (2/B)^s exactly on Gevrey-s fields and drifts upward otherwise.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import DomainError, InsufficientDataError
from .fourier import CoefficientField, hs_norm

HS_FLOOR = 1e-290
S_GRID = np.round(np.arange(0.2, 5.0 + 1e-9, 0.01), 10)
B_MIN = 1e-3
ROUMIEU_SLOPE_RATIO = 0.85
BEURLING_SLOPE_RATIO = 1.05
RHO_WINDOW_FACTOR = 1.35
BEURLING_RHO_LOG_SLOPE = -0.25
SATURATION_FRACTION = 0.95
MIN_USABLE_K = 6


@dataclass(frozen=True)
class DecayModel:
    """Fitted decay shape ||f_hat|| ~ K exp(-B <xi>^(1/s))."""

    s: float
    B: float
    K: float
    r2: float
    support: int


@dataclass(frozen=True)
class GevreyVerdict:
    mode: str
    s: float
    passed: bool
    margin: float
    model: object = None
    witness_label: tuple = None
    flags: tuple = ()
    extras: dict = field(default_factory=dict, compare=False)


def synthesize_gevrey(catalog, s, B, profile="diagonal", seed=0):
    """Field with ||f_hat(xi)||_HS = exp(-B <xi>^(1/s)) exactly per class.

    Classes whose target norm underflows double precision are omitted
    (they would round to the zero matrix anyway).
    """
    if s <= 0 or B <= 0:
        raise DomainError("s and B must be positive")
    if profile not in ("diagonal", "dense", "random_phase"):
        raise DomainError("unknown profile %r" % (profile,))
    rng = np.random.default_rng(seed)
    out = CoefficientField(catalog)
    for rep in catalog:
        log_hs = -B * rep.bracket ** (1.0 / s)
        if log_hs < math.log(HS_FLOOR):
            continue
        hs = math.exp(log_hs)
        d = rep.dim
        if profile == "diagonal":
            mat = (hs / math.sqrt(d)) * np.eye(d, dtype=complex)
        elif profile == "dense":
            mat = np.full((d, d), hs / d, dtype=complex)
        else:
            mat = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            mat *= hs / np.linalg.norm(mat)
        out[rep.label] = mat
    return out


def bracket_profile(coeffs):
    """Per-bracket max of the HS norms over nonzero classes.

    Returns (brackets, log_norms, labels) sorted by ascending bracket,
    with labels recording which class attained each maximum.  Classes
    with norm at or below the underflow floor are dropped.
    """
    best = {}
    for i, rep in enumerate(coeffs.catalog):
        if rep.label not in coeffs.blocks:
            continue
        hs = hs_norm(coeffs.blocks[rep.label])
        if hs <= HS_FLOOR:
            continue
        key = rep.bracket
        if key not in best or hs > best[key][0]:
            best[key] = (hs, rep.label)
    brackets = np.array(sorted(best))
    logs = np.array([math.log(best[b][0]) for b in brackets])
    labels = [best[b][1] for b in brackets]
    return brackets, logs, labels


def _ls_line(x, y):
    """Least-squares slope/intercept plus the r-squared of the fit."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xm, ym = x.mean(), y.mean()
    sxx = float(((x - xm) ** 2).sum())
    if sxx == 0.0:
        return 0.0, ym, 0.0
    slope = float(((x - xm) * (y - ym)).sum()) / sxx
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    sst = float(((y - ym) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / sst if sst > 0 else 1.0
    return slope, intercept, r2


def fit_decay(coeffs):
    """Best (s, B, K) over a fixed s-grid by least squares in log-domain.

    For each s the model log||f_hat|| = log K - B <xi>^(1/s) is fitted on
    the per-bracket maxima; the s maximizing r-squared wins, smallest s
    on ties within 1e-12.
    """
    brackets, logs, _ = bracket_profile(coeffs)
    if len(brackets) < 3:
        raise InsufficientDataError(
            "need >= 3 nonzero brackets to fit, have %d" % len(brackets)
        )
    r2s = np.empty(len(S_GRID))
    fits = []
    for i, s in enumerate(S_GRID):
        x = brackets ** (1.0 / s)
        slope, intercept, r2 = _ls_line(x, logs)
        r2s[i] = r2
        fits.append((slope, intercept))
    best = r2s.max()
    idx = int(np.nonzero(r2s >= best - 1e-12)[0][0])
    slope, intercept = fits[idx]
    return DecayModel(
        s=float(S_GRID[idx]),
        B=-slope,
        K=math.exp(intercept),
        r2=float(r2s[idx]),
        support=len(brackets),
    )


def pinned_model(coeffs, s):
    """DecayModel with s pinned, B and K refitted on the full profile."""
    brackets, logs, _ = bracket_profile(coeffs)
    if len(brackets) < 3:
        raise InsufficientDataError("need >= 3 nonzero brackets")
    slope, intercept, r2 = _ls_line(brackets ** (1.0 / s), logs)
    return DecayModel(s=float(s), B=-slope, K=math.exp(intercept), r2=r2, support=len(brackets))


def _degenerate_verdict(coeffs, s, mode):
    """Zero or trivial-only fields pass vacuously at every s."""
    labels = coeffs.labels()
    nonzero = [
        l for l in labels if hs_norm(coeffs.blocks[l]) > HS_FLOOR
    ]
    if not nonzero:
        return GevreyVerdict(mode=mode, s=s, passed=True, margin=math.inf,
                             flags=("zero_field",))
    if all(coeffs.catalog.lookup(l).lambda_sq == 0.0 for l in nonzero):
        return GevreyVerdict(mode=mode, s=s, passed=True, margin=math.inf,
                             flags=("constant_function",))
    return None


def _thirds(n):
    lo = n // 3
    hi = 2 * n // 3
    return slice(0, lo), slice(lo, hi), slice(hi, n)


def fourier_side_test(coeffs, s, mode):
    """Membership verdict from the decay of log||f_hat|| vs <xi>^(1/s).

    Decay slopes are fitted on the lower, middle, and upper thirds of the
    bracket range.  Roumieu passes when the upper slope stays positive
    and does not collapse relative to the middle one; Beurling requires
    the slope to strictly grow toward the tail.
    """
    if s <= 0:
        raise DomainError("s must be positive")
    mode = _norm_mode(mode)
    degenerate = _degenerate_verdict(coeffs, s, mode)
    if degenerate is not None:
        return degenerate
    flags = () if s >= 1 else ("s_below_duality_range",)
    brackets, logs, labels = bracket_profile(coeffs)
    x = brackets ** (1.0 / s)
    try:
        model = pinned_model(coeffs, s)
    except InsufficientDataError:
        model = None
    if len(x) < 9:
        # Too little spectrum for tertile slopes; fall back to one fit.
        if model is None:
            return GevreyVerdict(mode=mode, s=s, passed=False, margin=-math.inf,
                                 witness_label=labels[-1],
                                 flags=flags + ("insufficient_data",))
        passed = model.B >= B_MIN if mode == "roumieu" else False
        margin = model.B - B_MIN if mode == "roumieu" else -math.inf
        return GevreyVerdict(mode=mode, s=s, passed=passed, margin=margin,
                             model=model, witness_label=None,
                             flags=flags + ("short_spectrum",))
    lo_sl, mid_sl, top_sl = _thirds(len(x))
    b_lo = -_ls_line(x[lo_sl], logs[lo_sl])[0]
    slope_mid, icpt_mid, _ = _ls_line(x[mid_sl], logs[mid_sl])
    b_mid = -slope_mid
    b_top = -_ls_line(x[top_sl], logs[top_sl])[0]
    # witness: tail class exceeding the extrapolated middle-third decay most
    excess = logs[top_sl] - (slope_mid * x[top_sl] + icpt_mid)
    witness = labels[top_sl][int(np.argmax(excess))] if mode == "roumieu" else (
        labels[top_sl][int(np.argmin(excess))]
    )
    extras = {"b_lower": b_lo, "b_middle": b_mid, "b_top": b_top}
    if mode == "roumieu":
        margins = [b_top / B_MIN - 1.0]
        if b_mid > 0:
            margins.append(b_top / (ROUMIEU_SLOPE_RATIO * b_mid) - 1.0)
        margin = min(margins)
    else:
        floor = max(b_mid, b_lo, B_MIN)
        margin = b_top / (BEURLING_SLOPE_RATIO * floor) - 1.0
    passed = margin >= 0.0
    return GevreyVerdict(
        mode=mode, s=s, passed=passed, margin=margin, model=model,
        witness_label=None if passed else witness, flags=flags, extras=extras,
    )


def space_side_test(coeffs, s, k_max=16, mode="roumieu"):
    """Membership verdict from sup-norm bounds of Laplacian powers.

    u_k = log l1-bound of ||(-L)^k f||_inf, computed by log-sum-exp;
    rho_k = exp((u_k - s log (2k)!)/(2k)) estimates the Gevrey radius A.
    Roumieu passes when rho_k stays within a fixed window of its early
    median; Beurling requires a decreasing trend.  Values of k dominated
    by the truncation edge are excluded; if too few remain the spectrum
    cannot support the factorial scale and the verdict fails.
    """
    if s <= 0:
        raise DomainError("s must be positive")
    if k_max > 200:
        from .errors import ResourceError

        raise ResourceError("k_max > 200 exceeds the factorial-scale budget")
    if k_max < 3:
        raise DomainError("k_max must be >= 3")
    mode = _norm_mode(mode)
    degenerate = _degenerate_verdict(coeffs, s, mode)
    if degenerate is not None:
        return degenerate
    flags = () if s >= 1 else ("s_below_duality_range",)
    cat = coeffs.catalog
    data = [
        (rep, hs_norm(coeffs.blocks[rep.label]))
        for rep in cat
        if rep.label in coeffs.blocks and rep.lambda_sq > 0.0
    ]
    data = [(rep, hs) for rep, hs in data if hs > HS_FLOOR]
    base = np.array([1.5 * math.log(r.dim) + math.log(hs) for r, hs in data])
    log_abs = np.array([0.5 * math.log(r.lambda_sq) for r, _ in data])
    brackets = np.array([r.bracket for r, _ in data])
    edge = SATURATION_FRACTION * brackets.max()
    ks = np.arange(1, k_max + 1)
    u = np.empty(len(ks))
    rho = np.empty(len(ks))
    usable = np.zeros(len(ks), dtype=bool)
    argmaxes = []
    for i, k in enumerate(ks):
        terms = base + 2.0 * k * log_abs
        u[i] = float(logsumexp(terms))
        peak = int(np.argmax(terms))
        argmaxes.append(data[peak][0].label)
        rho[i] = math.exp((u[i] - s * gammaln(2.0 * k + 1.0)) / (2.0 * k))
        usable[i] = brackets[peak] < edge
    extras = {"k": ks, "u": u, "rho": rho, "usable": usable}
    if int(usable.sum()) < MIN_USABLE_K:
        return GevreyVerdict(
            mode=mode, s=s, passed=False, margin=-math.inf,
            witness_label=argmaxes[-1], flags=flags + ("saturated_spectrum",),
            extras=extras,
        )
    half = k_max // 2
    early = rho[(ks >= 2) & (ks <= half) & usable]
    late = rho[(ks >= half) & usable]
    if len(early) == 0 or len(late) == 0:
        return GevreyVerdict(
            mode=mode, s=s, passed=False, margin=-math.inf,
            witness_label=argmaxes[-1], flags=flags + ("saturated_spectrum",),
            extras=extras,
        )
    if mode == "roumieu":
        margin = RHO_WINDOW_FACTOR * float(np.median(early)) / float(late.max()) - 1.0
    else:
        # Beurling-true fields have log rho_k falling like -delta log k;
        # a plateau (boundary Roumieu) flattens out, so fit the late
        # window only, where the small-k transient has decayed.
        late_mask = (ks >= half) & usable
        slope = _ls_line(np.log(2.0 * ks[late_mask]), np.log(rho[late_mask]))[0]
        margin = (BEURLING_RHO_LOG_SLOPE - slope) / abs(BEURLING_RHO_LOG_SLOPE)
        extras["rho_log_slope"] = slope
    passed = margin >= 0.0
    return GevreyVerdict(
        mode=mode, s=s, passed=passed, margin=margin,
        witness_label=None if passed else argmaxes[-1], flags=flags,
        extras=extras,
    )


def cross_check(coeffs, s, mode, k_max=16):
    """Run both sides and report whether their verdicts agree."""
    fv = fourier_side_test(coeffs, s, mode)
    sv = space_side_test(coeffs, s, k_max=k_max, mode=mode)
    return {
        "fourier": fv,
        "space": sv,
        "agree": fv.passed == sv.passed,
        "s": s,
        "mode": _norm_mode(mode),
    }


def infimum_decay_bound(r, s):
    """Closed form of inf over x > 0 of x^(sx) r^(-x), namely e^(-(s/e) r^(1/s))."""
    if r <= 0 or s <= 0:
        raise DomainError("r and s must be positive")
    return math.exp(-(s / math.e) * r ** (1.0 / s))


def infimum_decay_grid(r, s, points=200001):
    """Dense-grid minimization of x^(sx) r^(-x); oracle for the closed form."""
    x_hi = 10.0 * max(1.0, r ** (1.0 / s))
    x = np.linspace(x_hi / points, x_hi, points)
    vals = s * x * np.log(x) - x * math.log(r)
    return math.exp(float(vals.min()))


def _norm_mode(mode):
    m = str(mode).lower()
    if m in ("r", "roumieu"):
        return "roumieu"
    if m in ("b", "beurling"):
        return "beurling"
    raise DomainError("mode must be Roumieu or Beurling, got %r" % (mode,))

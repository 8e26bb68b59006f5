"""Ultradistributions as growth sequences, the duality pairing, and
perfectness round-trips.

A sequence v = (v_xi) is dual to the Roumieu class gamma_s when its
growth is beaten by e^{B <xi>^(1/s)} for EVERY B > 0, and dual to the
Beurling class when some B works.  As in the decay classifiers, finite
truncation makes both statements formally true, so the tests compare
growth slopes of log ||v_xi|| against x = <xi>^(1/s) across spectrum
thirds: Roumieu-dual requires the tail slope to decay toward zero,
Beurling-dual only that it stops increasing.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import DomainError, IllPairedError
from .fourier import CoefficientField, hs_norm
from .gevrey import (
    GevreyVerdict,
    HS_FLOOR,
    _degenerate_verdict,
    _ls_line,
    _norm_mode,
    _thirds,
    bracket_profile,
)
from .quadrature import tree_sum

GROWTH_EPS = 1e-3
ROUMIEU_DUAL_RATIO = 0.95
BEURLING_DUAL_RATIO = 1.05
PAIR_TAIL_REL = 1e-8
SERIES_TAIL_REL = 1e-6
CONTINUITY_K_CAP = 60


def growth_sequence(catalog, s, B, profile="diagonal", seed=0):
    """Sequence with ||v_xi||_HS = exp(+B <xi>^(1/s)) per class.

    Raises a domain error if any norm would overflow double precision;
    pick a smaller catalog cutoff in that case.
    """
    if s <= 0 or B <= 0:
        raise DomainError("s and B must be positive")
    rng = np.random.default_rng(seed)
    out = CoefficientField(catalog)
    for rep in catalog:
        log_hs = B * rep.bracket ** (1.0 / s)
        if log_hs > 700.0:
            raise DomainError(
                "growth e^%.1f overflows at bracket %.1f; reduce the cutoff"
                % (log_hs, rep.bracket)
            )
        hs = math.exp(log_hs)
        d = rep.dim
        if profile == "diagonal":
            mat = (hs / math.sqrt(d)) * np.eye(d, dtype=complex)
        elif profile == "dense":
            mat = np.full((d, d), hs / d, dtype=complex)
        elif profile == "random_phase":
            mat = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            mat *= hs / np.linalg.norm(mat)
        else:
            raise DomainError("unknown profile %r" % (profile,))
        out[rep.label] = mat
    return out


def delta_sequence(catalog):
    """Coefficients of the delta distribution at the unit: identity blocks."""
    out = CoefficientField(catalog)
    for rep in catalog:
        out[rep.label] = np.eye(rep.dim, dtype=complex)
    return out


def ultra_membership_test(seq, s, mode):
    """Dual-space membership verdict from growth slopes.

    Requires s >= 1: the duality theory is stated for s >= 1 only.
    """
    if s < 1:
        raise DomainError("dual tests require s >= 1 (duality range restriction)")
    mode = _norm_mode(mode)
    degenerate = _degenerate_verdict(seq, s, mode)
    if degenerate is not None:
        return degenerate
    brackets, logs, labels = bracket_profile(seq)
    x = brackets ** (1.0 / s)
    if len(x) < 9:
        slope = _ls_line(x, logs)[0] if len(x) >= 2 else 0.0
        passed = slope <= GROWTH_EPS if mode == "roumieu" else True
        return GevreyVerdict(mode=mode, s=s, passed=passed,
                             margin=GROWTH_EPS - slope,
                             flags=("short_spectrum",))
    lo_sl, mid_sl, top_sl = _thirds(len(x))
    g_lo = _ls_line(x[lo_sl], logs[lo_sl])[0]
    slope_mid, icpt_mid, _ = _ls_line(x[mid_sl], logs[mid_sl])
    g_mid = slope_mid
    g_top = _ls_line(x[top_sl], logs[top_sl])[0]
    extras = {"g_lower": g_lo, "g_middle": g_mid, "g_top": g_top}
    if mode == "roumieu":
        # tail growth slope must decay: beaten by every exponential
        ceiling = max(ROUMIEU_DUAL_RATIO * g_mid, GROWTH_EPS)
    else:
        # one exponential suffices: the slope must merely stop growing
        ceiling = BEURLING_DUAL_RATIO * max(g_mid, GROWTH_EPS)
    margin = ceiling - g_top
    passed = margin >= 0.0
    excess = logs[top_sl] - (slope_mid * x[top_sl] + icpt_mid)
    witness = labels[top_sl][int(np.argmax(excess))]
    return GevreyVerdict(
        mode=mode, s=s, passed=passed, margin=margin,
        witness_label=None if passed else witness, extras=extras,
    )


def alpha_dual_series_probe(seq, s, B):
    """Partial sums of sum_xi e^{-B <xi>^(1/s)} ||v_xi||_HS in catalog order."""
    if B <= 0:
        raise DomainError("B must be positive")
    terms = []
    for rep in seq.catalog:
        if rep.label not in seq.blocks:
            continue
        hs = hs_norm(seq.blocks[rep.label])
        if hs <= 0.0:
            terms.append(0.0)
            continue
        terms.append(math.exp(math.log(hs) - B * rep.bracket ** (1.0 / s)))
    return np.cumsum(terms)


@dataclass(frozen=True)
class PairingDiagnostic:
    total_abs: float
    tail_abs: float
    tail_fraction: float
    tail_bracket: float


def _pairing_terms(seq, coeffs):
    labels = [
        r.label
        for r in seq.catalog
        if r.label in seq.blocks or r.label in coeffs.blocks
    ]
    terms = np.array(
        [
            seq.catalog.lookup(l).dim * np.trace(coeffs[l] @ seq[l])
            for l in labels
        ],
        dtype=complex,
    )
    brackets = np.array([seq.catalog.lookup(l).bracket for l in labels])
    return terms, brackets


def pairing_diagnostic(seq, coeffs):
    """Cauchy check over the last decade of brackets."""
    terms, brackets = _pairing_terms(seq, coeffs)
    if len(terms) == 0:
        return PairingDiagnostic(0.0, 0.0, 0.0, 0.0)
    mags = np.abs(terms)
    total = float(mags.sum())
    cut = brackets.max() / 10.0
    tail = float(mags[brackets >= cut].sum())
    frac = tail / total if total > 0 else 0.0
    return PairingDiagnostic(total, tail, frac, cut)


def pair(seq, coeffs):
    """Duality pairing sum_xi d_xi Tr(phi_hat(xi) v_xi).

    Refuses with an ill-paired error when the last decade of brackets
    still carries more than a 1e-8 relative share of the absolute mass.
    """
    diag = pairing_diagnostic(seq, coeffs)
    if diag.tail_fraction > PAIR_TAIL_REL:
        raise IllPairedError(
            "pairing tail fraction %.3e over brackets >= %.1f exceeds %.0e"
            % (diag.tail_fraction, diag.tail_bracket, PAIR_TAIL_REL),
            diagnostic=diag.__dict__,
        )
    terms, _ = _pairing_terms(seq, coeffs)
    return complex(tree_sum(terms)) if len(terms) else 0.0 + 0.0j


def _seminorm_log(coeffs, epsilon, s, k_cap):
    """log of sup_k eps^k (k!)^(-s) * l1-bound of ||(-L)^(k/2) phi||_inf."""
    data = [
        (rep, hs_norm(coeffs.blocks[rep.label]))
        for rep in coeffs.catalog
        if rep.label in coeffs.blocks
    ]
    data = [(r, hs) for r, hs in data if hs > HS_FLOOR]
    if not data:
        return -math.inf
    base = np.array([1.5 * math.log(r.dim) + math.log(hs) for r, hs in data])
    log_abs = np.array(
        [0.5 * math.log(r.lambda_sq) if r.lambda_sq > 0 else -math.inf for r, _ in data]
    )
    best = -math.inf
    for k in range(k_cap + 1):
        if k == 0:
            nk = float(logsumexp(base))
        else:
            terms = base + k * log_abs
            finite = terms[np.isfinite(terms)]
            if len(finite) == 0:
                continue
            nk = float(logsumexp(finite))
        best = max(best, k * math.log(epsilon) - s * gammaln(k + 1.0) + nk)
    return best


def continuity_modulus(seq, s, epsilon_grid, battery, k_cap=CONTINUITY_K_CAP):
    """Smallest constants C_eps with |v(phi)| <= C_eps * seminorm_eps(phi).

    The sup over derivative orders is capped at k_cap (reported); the
    battery is a caller-supplied list of coefficient fields.
    """
    rows = []
    for eps in epsilon_grid:
        if eps <= 0:
            raise DomainError("epsilon must be positive")
        worst = 0.0
        for phi in battery:
            value = abs(pair(seq, phi))
            if value == 0.0:
                continue
            denom_log = _seminorm_log(phi, eps, s, k_cap)
            worst = max(worst, math.exp(math.log(value) - denom_log))
        rows.append((float(eps), worst))
    return {"curve": rows, "k_cap": k_cap}


def perfectness_roundtrip(coeffs, s, b_grid=(0.25, 0.5), points=None):
    """Second-dual membership plus re-synthesis identity.

    Checks that sum_xi e^{B' <xi>^(1/s)} ||w_xi|| is Cauchy (last-decade
    tail below 1e-6 relative) for every B' in the grid, then re-sums the
    inversion series independently at the given points and compares with
    inverse_transform.
    """
    from .fourier import inverse_transform
    from .quadrature import identity_element

    brackets, logs, _ = bracket_profile(coeffs)
    series = {}
    all_converge = True
    for bp in b_grid:
        log_terms = logs + bp * brackets ** (1.0 / s)
        mags = np.exp(log_terms)
        total = float(mags.sum())
        cut = brackets.max() / 10.0
        tail = float(mags[brackets >= cut].sum())
        frac = tail / total if total > 0 else 0.0
        series[bp] = {"total": total, "tail_fraction": frac,
                      "converged": frac <= SERIES_TAIL_REL}
        all_converge = all_converge and frac <= SERIES_TAIL_REL
    if points is None:
        points = [identity_element(coeffs.catalog.spec)]
    direct = inverse_transform(coeffs, points)
    resynth = np.zeros(len(points), dtype=complex)
    from .quadrature import rep_matrix

    for i, x in enumerate(points):
        acc = []
        for label in coeffs.labels():
            rep = coeffs.catalog.lookup(label)
            xi = rep_matrix(coeffs.catalog.spec, rep, x)
            acc.append(rep.dim * np.trace(coeffs.blocks[label] @ xi))
        resynth[i] = tree_sum(np.array(acc, dtype=complex)) if acc else 0.0
    mismatch = float(np.abs(direct - resynth).max()) if len(points) else 0.0
    return {
        "series": series,
        "converged": all_converge,
        "resynthesis_mismatch": mismatch,
        "passed": all_converge and mismatch <= 1e-10,
    }

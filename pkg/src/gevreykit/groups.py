"""Unitary dual catalogs for the supported compact groups.

Supported families: the torus T^n (any n >= 1), SU(2), and SO(3).
Each irreducible representation is recorded with an integer label, its
matrix dimension, its Laplace eigenvalue lambda^2, and the weight
bracket = sqrt(1 + lambda^2) used everywhere for decay estimates.

Label conventions:
  torus  : the frequency vector k in Z^n.
  su2    : twice the spin, an integer ell >= 0, dimension ell + 1.
  so3    : the integer spin l >= 0, dimension 2l + 1.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError

FAMILIES = ("torus", "su2", "so3")


@dataclass(frozen=True)
class RepInfo:
    """One equivalence class of irreducible unitary representations."""

    label: tuple
    dim: int
    lambda_sq: float

    @property
    def bracket(self):
        return math.sqrt(1.0 + self.lambda_sq)

    @property
    def eigenvalue(self):
        """The first-order weight |xi| = sqrt(lambda^2)."""
        return math.sqrt(self.lambda_sq)


@dataclass(frozen=True)
class GroupSpec:
    """Identifies a group: family name plus torus dimension when relevant."""

    family: str
    torus_dim: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError("unknown group family: %r" % (self.family,))
        if self.family == "torus" and self.torus_dim < 1:
            raise ConfigurationError("torus dimension must be >= 1")

    @property
    def manifold_dim(self):
        if self.family == "torus":
            return self.torus_dim
        return 3

    @property
    def rank(self):
        if self.family == "torus":
            return self.torus_dim
        return 1

    @property
    def min_nonzero_lambda_sq(self):
        """lambda_1^2, the smallest nonzero Laplace eigenvalue."""
        if self.family == "torus":
            return 1.0
        if self.family == "su2":
            return 0.75
        return 2.0


def _torus_reps(spec, cutoff):
    # bracket <= cutoff means |k|^2 <= cutoff^2 - 1
    radius_sq = cutoff * cutoff - 1.0
    if radius_sq < 0.0:
        return []
    kmax = int(math.floor(math.sqrt(radius_sq)))
    reps = []
    for k in itertools.product(range(-kmax, kmax + 1), repeat=spec.torus_dim):
        nrm = float(sum(c * c for c in k))
        if nrm <= radius_sq:
            reps.append(RepInfo(label=tuple(k), dim=1, lambda_sq=nrm))
    return reps


def _su2_reps(cutoff):
    reps = []
    ell = 0
    while True:
        lam_sq = (ell / 2.0) * (ell / 2.0 + 1.0)
        if 1.0 + lam_sq > cutoff * cutoff:
            break
        reps.append(RepInfo(label=(ell,), dim=ell + 1, lambda_sq=lam_sq))
        ell += 1
    return reps


def _so3_reps(cutoff):
    reps = []
    l = 0
    while True:
        lam_sq = float(l * (l + 1))
        if 1.0 + lam_sq > cutoff * cutoff:
            break
        reps.append(RepInfo(label=(l,), dim=2 * l + 1, lambda_sq=lam_sq))
        l += 1
    return reps


@dataclass(frozen=True)
class DualCatalog:
    """Immutable, deterministically ordered slice of the unitary dual.

    Contains every class with bracket <= cutoff, sorted by ascending
    bracket with lexicographic label order breaking ties.  The trivial
    representation is always entry 0.
    """

    spec: GroupSpec
    cutoff: float
    reps: tuple
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {r.label: i for i, r in enumerate(self.reps)}
        )

    def __len__(self):
        return len(self.reps)

    def __iter__(self):
        return iter(self.reps)

    def __getitem__(self, i):
        return self.reps[i]

    def lookup(self, label):
        label = tuple(label)
        if label not in self._index:
            raise DomainError("label %r not in catalog" % (label,))
        return self.reps[self._index[label]]

    def position(self, label):
        label = tuple(label)
        if label not in self._index:
            raise DomainError("label %r not in catalog" % (label,))
        return self._index[label]

    def contains(self, label):
        return tuple(label) in self._index

    @property
    def brackets(self):
        return np.array([r.bracket for r in self.reps])

    @property
    def dims(self):
        return np.array([r.dim for r in self.reps], dtype=int)


def enumerate_dual(spec, cutoff):
    """Catalog every irreducible class with bracket weight <= cutoff."""
    if cutoff < 1.0:
        raise DomainError("cutoff must be >= 1 so the trivial class is included")
    if spec.family == "torus":
        reps = _torus_reps(spec, cutoff)
    elif spec.family == "su2":
        reps = _su2_reps(cutoff)
    else:
        reps = _so3_reps(cutoff)
    reps.sort(key=lambda r: (r.bracket, r.label))
    return DualCatalog(spec=spec, cutoff=float(cutoff), reps=tuple(reps))


def weyl_dimension_report(catalog):
    """Check d_xi <= C * bracket^((dim - rank)/2) over the catalog.

    Returns the exponent, the smallest admissible constant observed, and
    the per-representation ratios.
    """
    spec = catalog.spec
    exponent = 0.5 * (spec.manifold_dim - spec.rank)
    brackets = catalog.brackets
    dims = catalog.dims.astype(float)
    ratios = dims / brackets**exponent
    return {
        "exponent": exponent,
        "constant": float(ratios.max()) if len(ratios) else 0.0,
        "ratios": ratios,
    }


def series_convergence_probe(catalog, t):
    """Partial sums of sum_xi d_xi^2 * bracket^(-2t) in catalog order.

    The full series converges exactly when 2t > dim(G).  Returns the
    per-rep terms, running partial sums, and the relative size of the
    final increment, which a caller inspects for Cauchy decay.
    """
    br = catalog.brackets
    d = catalog.dims.astype(float)
    terms = d * d * br ** (-2.0 * t)
    sums = np.cumsum(terms)
    total = float(sums[-1])
    last_rel = float(terms[-1] / total) if total > 0 else 0.0
    return {"terms": terms, "partial_sums": sums, "last_relative_increment": last_rel}


def exp_dominance_check(catalog):
    """Verify |xi| <= bracket <= c * |xi| with c = sqrt(1 + 1/lambda_1^2).

    Only nontrivial classes enter the upper bound.  Returns the worst
    slack on each side (nonnegative means the inequality holds).
    """
    c = math.sqrt(1.0 + 1.0 / catalog.spec.min_nonzero_lambda_sq)
    lower = math.inf
    upper = math.inf
    for r in catalog.reps:
        if r.lambda_sq == 0.0:
            continue
        lower = min(lower, r.bracket - r.eigenvalue)
        upper = min(upper, c * r.eigenvalue - r.bracket)
    return {"constant": c, "lower_slack": lower, "upper_slack": upper}

"""Forward/inverse Fourier transform on the group and the dual norms.

Coefficient fields hold one complex d x d matrix per catalog class; the
forward transform computes f_hat(xi) = integral of f(x) xi(x)* dx and the
inversion formula is f(x) = sum_xi d_xi Tr(xi(x) f_hat(xi)).

Grid transforms exploit the product structure of the Euler grid: the
alpha and gamma phases are applied once for all classes, the little-d
contraction once per class.
"""

import math

import numpy as np

from .errors import ContractViolation, DomainError
from .parallel import rep_map
from .quadrature import band_for_catalog, tree_sum, rep_matrix, wigner_d_cached


class CoefficientField:
    """Finite map from catalog classes to coefficient matrices.

    Missing labels mean the zero matrix.  Two fields are compatible only
    when built on the same catalog; cross-catalog arithmetic is refused
    rather than zero-padded.
    """

    def __init__(self, catalog, blocks=None):
        self.catalog = catalog
        self.blocks = {}
        if blocks:
            for label, mat in blocks.items():
                self[label] = mat

    def __setitem__(self, label, mat):
        rep = self.catalog.lookup(label)
        mat = np.asarray(mat, dtype=complex)
        if mat.shape != (rep.dim, rep.dim):
            raise ContractViolation(
                "matrix for %r must be %dx%d, got %r"
                % (tuple(label), rep.dim, rep.dim, mat.shape)
            )
        self.blocks[tuple(label)] = mat

    def __getitem__(self, label):
        rep = self.catalog.lookup(label)
        label = tuple(label)
        if label in self.blocks:
            return self.blocks[label]
        return np.zeros((rep.dim, rep.dim), dtype=complex)

    def __contains__(self, label):
        return tuple(label) in self.blocks

    def labels(self):
        """Labels with stored blocks, in catalog order."""
        return [r.label for r in self.catalog if r.label in self.blocks]

    def copy(self):
        return CoefficientField(
            self.catalog, {k: v.copy() for k, v in self.blocks.items()}
        )

    def scaled(self, c):
        return CoefficientField(
            self.catalog, {k: c * v for k, v in self.blocks.items()}
        )

    def add(self, other, a=1.0, b=1.0):
        _require_same_catalog(self, other)
        out = CoefficientField(self.catalog)
        for label in set(self.blocks) | set(other.blocks):
            out[label] = a * self[label] + b * other[label]
        return out

    def hs_norms(self):
        """Hilbert-Schmidt norm per catalog class, in catalog order."""
        out = np.zeros(len(self.catalog))
        for i, rep in enumerate(self.catalog):
            if rep.label in self.blocks:
                out[i] = np.linalg.norm(self.blocks[rep.label])
        return out


def _require_same_catalog(a, b):
    if a.catalog is not b.catalog and (
        a.catalog.spec != b.catalog.spec
        or [r.label for r in a.catalog] != [r.label for r in b.catalog]
    ):
        raise ContractViolation("coefficient fields live on different catalogs")


def _check_band(grid, catalog):
    need = band_for_catalog(catalog)
    if grid.spec != catalog.spec:
        raise ContractViolation("grid group %r differs from catalog group %r"
                                % (grid.spec, catalog.spec))
    if grid.band < need:
        raise ContractViolation(
            "grid band %d does not cover catalog band %d" % (grid.band, need)
        )


def _phase_table(grid, two_band):
    """exp(+i m alpha) and exp(+i n gamma) for 2m, 2n in [-two_band, two_band]."""
    two_m = np.arange(-two_band, two_band + 1)
    ea = np.exp(0.5j * np.outer(two_m, grid.alpha))
    eg = np.exp(0.5j * np.outer(two_m, grid.gamma))
    return ea, eg


def _two_j_of(spec, rep):
    return rep.label[0] if spec.family == "su2" else 2 * rep.label[0]


def forward_transform(grid, samples, catalog):
    """Fourier coefficients of grid samples against every catalog class."""
    _check_band(grid, catalog)
    samples = np.asarray(samples, dtype=complex)
    if samples.shape != grid.shape:
        raise ContractViolation(
            "sample shape %r does not match grid shape %r" % (samples.shape, grid.shape)
        )
    spec = catalog.spec
    out = CoefficientField(catalog)
    if spec.family == "torus":
        n = len(grid.alpha)
        spectrum = np.fft.fftn(samples) / samples.size
        for rep in catalog:
            idx = tuple(k % n for k in rep.label)
            out[rep.label] = np.array([[spectrum[idx]]])
        return out
    two_band = 2 * grid.band if spec.family == "so3" else grid.band
    ea, eg = _phase_table(grid, two_band)
    # t1[m, b, g] = mean over alpha of e^{i m alpha} f;  t2 adds the gamma mean
    t1 = np.einsum("ma,abg->mbg", ea, samples) / len(grid.alpha)
    t2 = np.einsum("ng,mbg->mbn", eg, t1) / len(grid.gamma)
    dstack = wigner_d_cached(two_band, grid.beta)
    wb = 0.5 * grid.beta_weights

    def one_rep(rep):
        two_j = _two_j_of(spec, rep)
        sel = two_band + two_j - 2 * np.arange(two_j + 1)
        block = np.einsum(
            "bmn,mbn->mn", wb[:, None, None] * dstack[two_j], t2[sel][:, :, sel]
        )
        # xi(x)* is the conjugate transpose, so entry (m,n) of f_hat pairs
        # with the conjugate of coefficient (n,m)
        return block.T

    for rep, block in zip(catalog, rep_map(one_rep, catalog)):
        out[rep.label] = block
    return out


def inverse_on_grid(coeffs, grid):
    """Synthesize the inversion series on every node of the grid."""
    _check_band(grid, coeffs.catalog)
    spec = coeffs.catalog.spec
    if spec.family == "torus":
        n = len(grid.alpha)
        spectrum = np.zeros(grid.shape, dtype=complex)
        for label in coeffs.labels():
            idx = tuple(k % n for k in label)
            spectrum[idx] += coeffs.blocks[label][0, 0]
        return np.fft.ifftn(spectrum) * spectrum.size
    two_band = 2 * grid.band if spec.family == "so3" else grid.band
    ea, eg = _phase_table(grid, two_band)
    dstack = wigner_d_cached(two_band, grid.beta)
    nb = len(grid.beta)
    acc = np.zeros((2 * two_band + 1, nb, 2 * two_band + 1), dtype=complex)
    for label in coeffs.labels():
        rep = coeffs.catalog.lookup(label)
        two_j = _two_j_of(spec, rep)
        sel = two_band + two_j - 2 * np.arange(two_j + 1)
        # Tr(xi(x) f_hat) pairs entry (m,n) of xi with entry (n,m) of f_hat
        contrib = rep.dim * np.einsum(
            "bmn,nm->mbn", dstack[two_j], coeffs.blocks[label]
        )
        acc[np.ix_(sel, range(nb), sel)] += contrib
    return np.einsum("ma,mbn,ng->abg", np.conj(ea), acc, np.conj(eg))


def inverse_transform(coeffs, points):
    """Evaluate the inversion series at a list of group elements."""
    spec = coeffs.catalog.spec
    values = np.zeros(len(points), dtype=complex)
    labels = coeffs.labels()
    for i, x in enumerate(points):
        terms = np.empty(len(labels), dtype=complex)
        for j, label in enumerate(labels):
            rep = coeffs.catalog.lookup(label)
            xi = rep_matrix(spec, rep, x)
            terms[j] = rep.dim * np.trace(xi @ coeffs.blocks[label])
        values[i] = tree_sum(terms) if len(terms) else 0.0
    return values


def plancherel_inner(f, g):
    """Plancherel inner product sum_xi d_xi Tr(f_hat g_hat*)."""
    _require_same_catalog(f, g)
    labels = [r.label for r in f.catalog if r.label in f.blocks or r.label in g.blocks]
    terms = np.array(
        [
            f.catalog.lookup(l).dim * np.trace(f[l] @ g[l].conj().T)
            for l in labels
        ],
        dtype=complex,
    )
    return tree_sum(terms) if len(terms) else 0.0 + 0.0j


def plancherel_norm(coeffs):
    """(sum_xi d_xi ||f_hat(xi)||_HS^2)^(1/2), fixed reduction order."""
    dims = coeffs.catalog.dims.astype(float)
    hs = coeffs.hs_norms()
    return math.sqrt(float(tree_sum(dims * hs * hs)))


def lp_norm(coeffs, p):
    """Norm in l^p of the dual with the dimension weight d^(p(2/p - 1/2)).

    p = infinity uses sup over classes of d^(-1/2) ||f_hat||_HS.
    """
    if p != math.inf and p < 1:
        raise DomainError("p must be >= 1 or infinity")
    dims = coeffs.catalog.dims.astype(float)
    hs = coeffs.hs_norms()
    if p == math.inf:
        vals = hs / np.sqrt(dims)
        return float(vals.max()) if len(vals) else 0.0
    weights = dims ** (p * (2.0 / p - 0.5))
    return float(tree_sum(weights * hs**p)) ** (1.0 / p)


def hausdorff_young_gap(grid, samples, coeffs):
    """Both sides of the two Hausdorff-Young inequalities.

    Returns ((||f_hat||_{l inf}, ||f||_{L1}),
             (max |F^{-1} coeffs| on the grid, ||coeffs||_{l1})).
    The caller asserts first <= second in each pair.
    """
    samples = np.asarray(samples, dtype=complex)
    l1_f = float(tree_sum(np.abs(samples) * grid.weights()).real)
    linf_dual = lp_norm(coeffs, math.inf)
    synth = inverse_on_grid(coeffs, grid)
    sup_f = float(np.abs(synth).max())
    l1_dual = lp_norm(coeffs, 1)
    return (linf_dual, l1_f), (sup_f, l1_dual)


# ---------------------------------------------------------------------------
# Matrix norms on a single coefficient block


def matrix_lp_norm(a, p):
    """Entrywise l^p norm of a matrix; p=2 is the Hilbert-Schmidt norm."""
    a = np.asarray(a)
    if p == math.inf:
        return float(np.abs(a).max())
    if p < 1:
        raise DomainError("p must be >= 1 or infinity")
    return float(np.sum(np.abs(a) ** p) ** (1.0 / p))


def hs_norm(a):
    """Hilbert-Schmidt norm, scaled so huge entries do not overflow."""
    a = np.asarray(a)
    peak = float(np.abs(a).max()) if a.size else 0.0
    if peak == 0.0 or not math.isfinite(peak):
        return peak
    return peak * float(np.linalg.norm(a / peak))


def operator_norm(a):
    """Largest singular value."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[0])


def matrix_norm_slacks(a, p, q):
    """Slack of the two entrywise norm comparisons for p < q.

    Checks ||a||_p <= d^(2(1/p - 1/q)) ||a||_q and
           ||a||_q <= d^(2/q) ||a||_p, returning both right-minus-left
    differences (nonnegative means the inequality holds).
    """
    a = np.asarray(a)
    d = a.shape[0]
    inv_p = 0.0 if p == math.inf else 1.0 / p
    inv_q = 0.0 if q == math.inf else 1.0 / q
    if not inv_p > inv_q:
        raise DomainError("need p < q")
    np_ = matrix_lp_norm(a, p)
    nq = matrix_lp_norm(a, q)
    first = d ** (2.0 * (inv_p - inv_q)) * nq - np_
    second = d ** (2.0 * inv_q) * np_ - nq
    return first, second

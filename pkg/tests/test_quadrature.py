import math

import numpy as np
import pytest
from scipy.linalg import expm

from gevreykit.calculus import _angular_momentum
from gevreykit.groups import GroupSpec, enumerate_dual
from gevreykit.quadrature import (
    build_grid,
    compose_euler,
    euler_to_so3,
    euler_to_su2,
    haar_integrate,
    identity_element,
    random_element,
    rep_matrix,
    sample_function,
    so3_to_euler,
    su2_to_euler,
    tree_sum,
    wigner_d_matrix,
)


def test_tree_sum_matches_fsum():
    rng = np.random.default_rng(1)
    for n in (1, 2, 7, 1000):
        v = rng.standard_normal(n) * 10.0 ** rng.integers(-8, 8, n)
        exact = math.fsum(v)
        assert tree_sum(v) == pytest.approx(exact, rel=1e-14, abs=1e-300)


def test_wigner_d_matches_matrix_exponential():
    rng = np.random.default_rng(2)
    for two_j in range(9):
        _, jy, _ = _angular_momentum(two_j)
        for beta in rng.uniform(0.0, math.pi, 3):
            oracle = expm(-1j * beta * jy)
            assert np.abs(wigner_d_matrix(two_j, np.array([beta]))[0] - oracle).max() < 1e-12


def test_rep_matrix_matches_exponential_factorization():
    rng = np.random.default_rng(3)
    spec = GroupSpec("su2")
    cat = enumerate_dual(spec, 4.0)
    for _ in range(5):
        a, b, g = random_element(spec, rng)
        for rep in cat:
            two_j = rep.label[0]
            _, jy, jz = _angular_momentum(two_j)
            oracle = expm(-1j * a * jz) @ expm(-1j * b * jy) @ expm(-1j * g * jz)
            assert np.abs(rep_matrix(spec, rep, (a, b, g)) - oracle).max() < 1e-12


def test_rep_matrices_unitary():
    rng = np.random.default_rng(4)
    for fam in ("su2", "so3"):
        spec = GroupSpec(fam)
        cat = enumerate_dual(spec, 6.0)
        for _ in range(5):
            x = random_element(spec, rng)
            for rep in cat:
                u = rep_matrix(spec, rep, x)
                assert np.abs(u @ u.conj().T - np.eye(rep.dim)).max() < 1e-12


def test_homomorphism_under_composition():
    rng = np.random.default_rng(5)
    for fam, label in (("su2", (3,)), ("so3", (2,))):
        spec = GroupSpec(fam)
        rep = enumerate_dual(spec, 10.0).lookup(label)
        for _ in range(20):
            g1 = random_element(spec, rng)
            g2 = random_element(spec, rng)
            lhs = rep_matrix(spec, rep, compose_euler(spec, g1, g2))
            rhs = rep_matrix(spec, rep, g1) @ rep_matrix(spec, rep, g2)
            assert np.abs(lhs - rhs).max() < 1e-10


def test_euler_round_trips():
    rng = np.random.default_rng(6)
    for _ in range(50):
        g = random_element(GroupSpec("su2"), rng)
        u = euler_to_su2(g)
        assert np.abs(euler_to_su2(su2_to_euler(u)) - u).max() < 1e-12
        h = random_element(GroupSpec("so3"), rng)
        r = euler_to_so3(h)
        assert np.abs(euler_to_so3(so3_to_euler(r)) - r).max() < 1e-12


def test_so3_matrices_are_rotations():
    rng = np.random.default_rng(7)
    for _ in range(10):
        r = euler_to_so3(random_element(GroupSpec("so3"), rng))
        assert np.abs(r @ r.T - np.eye(3)).max() < 1e-12
        assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)


def test_identity_element_is_neutral():
    for fam in ("su2", "so3"):
        spec = GroupSpec(fam)
        e = identity_element(spec)
        rep = enumerate_dual(spec, 5.0)[-1]
        assert np.abs(rep_matrix(spec, rep, e) - np.eye(rep.dim)).max() < 1e-14


def test_grid_node_counts():
    g = build_grid(GroupSpec("su2"), 6)
    assert (len(g.alpha), len(g.beta), len(g.gamma)) == (14, 7, 28)
    t = build_grid(GroupSpec("torus", 2), 5)
    assert t.shape == (11, 11)


def test_grid_weights_normalized():
    for spec, band in ((GroupSpec("torus", 2), 4), (GroupSpec("su2"), 8),
                       (GroupSpec("so3"), 8)):
        grid = build_grid(spec, band)
        ones = np.ones(grid.shape)
        assert haar_integrate(grid, ones) == pytest.approx(1.0, abs=1e-13)


def test_grid_kills_nonconstant_coefficients():
    spec = GroupSpec("so3")
    cat = enumerate_dual(spec, 8.0)
    grid = build_grid(spec, 7)
    rep = cat.lookup((3,))
    vals = sample_function(
        grid, lambda a, b, g: np.vectorize(
            lambda x, y, z: rep_matrix(spec, rep, (x, y, z))[0, 2]
        )(a, b, g)
    )
    assert abs(haar_integrate(grid, vals)) < 1e-13

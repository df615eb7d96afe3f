import cmath
import math
import random

import numpy as np
import pytest

from enumtc.errors import InvalidInput, NumericFailure
from enumtc.numroots import (
    aberth_roots,
    chordal_distance,
    cluster_points,
    damped_newton,
    normalize_projective,
    poly_derivative,
    poly_eval,
    polyeig,
    projective_binary_roots,
)


def match_multisets(found, expected, tol):
    # Greedy nearest matching; fine when expected points are separated.
    left = list(expected)
    for z in found:
        best = min(range(len(left)), key=lambda i: abs(left[i] - z))
        assert abs(left[best] - z) < tol
        left.pop(best)
    assert not left


def test_poly_eval_and_derivative():
    cs = [2, 0, 1]  # 2 + t^2
    assert poly_eval(cs, 3) == 11
    assert poly_derivative(cs) == [0, 2]


def test_cubic_roots():
    # (t-1)(t-2)(t-3) = -6 + 11 t - 6 t^2 + t^3
    roots = aberth_roots([-6, 11, -6, 1])
    match_multisets(roots, [1, 2, 3], 1e-10)


def test_zero_roots_split_off():
    # t^2 (t - 5)
    roots = aberth_roots([0, 0, -5, 1])
    match_multisets(roots, [0, 0, 5], 1e-10)


def test_degree_one_and_invalid():
    assert aberth_roots([3, -1]) == [3.0]
    with pytest.raises(InvalidInput):
        aberth_roots([7])
    with pytest.raises(InvalidInput):
        aberth_roots([0, 0])


def test_random_roots_recovered():
    rng = random.Random(7001)
    for _ in range(100):
        deg = rng.randrange(2, 9)
        roots = []
        while len(roots) < deg:
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if all(abs(z - w) > 0.3 for w in roots):
                roots.append(z)
        coeffs = np.array([1 + 0j])
        for r in roots:
            coeffs = np.convolve(coeffs, np.array([-r, 1 + 0j]))
        found = aberth_roots(list(coeffs))
        match_multisets(found, roots, 1e-7)
        match_multisets(found, list(np.roots(list(reversed(coeffs)))), 1e-6)


def test_binary_form_roots():
    # s^3 t - s t^3 = s t (s - t)(s + t)
    roots = projective_binary_roots([0j, 1 + 0j, 0j, -1 + 0j, 0j], 4)
    assert roots[0] == (1 + 0j, 0j)
    assert roots[1] == (0j, 1 + 0j)
    finite = sorted(roots[2:], key=lambda st: st[1].real)
    assert abs(finite[0][1] + 1) < 1e-10
    assert abs(finite[1][1] - 1) < 1e-10
    with pytest.raises(InvalidInput):
        projective_binary_roots([0j, 0j], 1)
    with pytest.raises(InvalidInput):
        projective_binary_roots([1 + 0j], 2)


def test_normalize_projective():
    v = normalize_projective((3j, 1 + 0j))
    assert v[0] == 1
    assert abs(v[1] - (-1j / 3)) < 1e-15
    # scaling invariance
    w = normalize_projective((3j * (2 - 1j), (1 + 0j) * (2 - 1j)))
    assert max(abs(a - b) for a, b in zip(v, w)) < 1e-15
    with pytest.raises(InvalidInput):
        normalize_projective((0j, 0j))


def test_chordal_distance():
    assert chordal_distance((1, 0), (0, 1)) == 1.0
    assert chordal_distance((1, 0), (2, 0)) < 1e-15
    assert chordal_distance((1, 0), (1j, 0)) < 1e-15
    d = chordal_distance((1, 1), (1, 0))
    assert abs(d - math.sin(math.pi / 4)) < 1e-12


def test_cluster_points_merges_and_is_idempotent():
    pts = [(1 + 0j, 0j), (1 + 0j, 1e-9 + 0j), (0j, 1 + 0j),
           (1 + 0j, 1 + 0j)]
    clusters = cluster_points(pts, 1e-6)
    assert [ms for _, ms in clusters] == [[0, 1], [2], [3]]
    reps = [rep for rep, _ in clusters]
    again = cluster_points(reps, 1e-6)
    assert [ms for _, ms in again] == [[0], [1], [2]]


def test_cluster_points_chains_transitively():
    pts = [(1 + 0j,), (1.4 + 0j,), (1.8 + 0j,)]
    clusters = cluster_points(pts, 0.5, dist=lambda u, v: abs(u[0] - v[0]))
    assert len(clusters) == 1
    assert clusters[0][1] == [0, 1, 2]


def test_polyeig_scalar_and_singular_lead():
    vals = polyeig([np.array([[-2.0]]), np.array([[1.0]])])
    assert len(vals) == 1 and abs(vals[0] - 2) < 1e-12
    # det(M(a)) = (a^2 - 1)(a - 3); the a^2 block has singular lead,
    # so one generalized eigenvalue is infinite and gets dropped.
    M0 = np.array([[-1.0, 0.0], [0.0, -3.0]])
    M1 = np.array([[0.0, 0.0], [0.0, 1.0]])
    M2 = np.array([[1.0, 0.0], [0.0, 0.0]])
    vals = polyeig([M0, M1, M2])
    match_multisets(vals, [1, -1, 3], 1e-10)


def test_polyeig_trims_zero_lead():
    vals = polyeig([np.array([[-5.0]]), np.array([[1.0]]),
                    np.array([[0.0]])])
    assert len(vals) == 1 and abs(vals[0] - 5) < 1e-12
    assert polyeig([np.array([[1.0]])]) == []
    with pytest.raises(InvalidInput):
        polyeig([np.eye(2), np.eye(3)])


def test_damped_newton_square_system():
    def fun(z):
        x, y = z
        return np.array([x * x + y * y - 5, x * y - 2])

    def jac(z):
        x, y = z
        return np.array([[2 * x, 2 * y], [y, x]])

    z, res = damped_newton(fun, jac, np.array([2.2, 0.8]), tol=1e-12)
    assert res < 1e-12
    assert abs(z[0] - 2) < 1e-8 and abs(z[1] - 1) < 1e-8


def test_damped_newton_reports_stall():
    def fun(z):
        return np.array([z[0] * 0 + 1.0])

    def jac(z):
        return np.array([[1.0]])

    with pytest.raises(NumericFailure):
        damped_newton(fun, jac, np.array([0.0]), tol=1e-12, max_iter=5)


def test_aberth_against_roots_of_unity():
    n = 12
    coeffs = [-1 + 0j] + [0j] * (n - 1) + [1 + 0j]
    found = aberth_roots(coeffs)
    expected = [cmath.exp(2j * cmath.pi * k / n) for k in range(n)]
    match_multisets(found, expected, 1e-9)

"""Numeric root extraction and refinement.

Simultaneous (Aberth) iteration for univariate complex roots,
projective root lists for binary forms, chordal-metric clustering,
finite eigenvalues of matrix polynomials via a companion pencil, and a
damped Newton corrector.  Everything here consumes plain complex
numbers; exact coefficients are embedded upstream, so structural zeros
arrive as exact 0j.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
import scipy.linalg

from .errors import InvalidInput, NumericFailure


def poly_eval(coeffs, z):
    """Horner evaluation; coefficients low to high."""
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def poly_derivative(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _eval_with_floor(coeffs, z):
    """Horner value plus the roundoff floor sum(|c_k| |z|^k) * eps."""
    acc = 0j
    mag = 0.0
    az = abs(z)
    for c in reversed(coeffs):
        acc = acc * z + c
        mag = mag * az + abs(c)
    return acc, 8.0 * 2.220446049250313e-16 * mag


def aberth_roots(coeffs, tol: float = 1e-13, max_iter: int = 200):
    """All complex roots of a univariate polynomial, low-to-high coeffs.

    Exact zero leading (low-order) coefficients contribute roots at 0;
    the remaining roots come from simultaneous iteration.  Convergence
    failure raises NumericFailure.
    """
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        raise InvalidInput("need degree >= 1 to extract roots")
    zeros_at_origin = 0
    while cs[0] == 0:
        cs.pop(0)
        zeros_at_origin += 1
    degree = len(cs) - 1
    roots = [0j] * zeros_at_origin
    if degree == 0:
        return roots
    if degree == 1:
        return roots + [-cs[0] / cs[1]]
    lead = cs[-1]
    radius = 1.0 + max(abs(c / lead) for c in cs[:-1])
    # Slightly irrational angular offset avoids symmetric stalls.
    start = [radius * cmath.exp(2j * math.pi * (k + 0.357) / degree)
             for k in range(degree)]
    der = poly_derivative(cs)
    z = list(start)
    for _ in range(max_iter):
        moved = 0.0
        for i in range(degree):
            pi, floor = _eval_with_floor(cs, z[i])
            if abs(pi) <= floor:
                # backward-stable root: |p(z)| is below evaluation noise,
                # which is the plateau multiple roots converge onto
                continue
            di = poly_eval(der, z[i])
            if di == 0:
                z[i] = z[i] * (1 + 1e-8) + 1e-8
                moved = math.inf
                continue
            ratio = pi / di
            s = 0j
            for j in range(degree):
                if j != i:
                    s += 1.0 / (z[i] - z[j])
            denom = 1.0 - ratio * s
            step = ratio if denom == 0 else ratio / denom
            z[i] = z[i] - step
            moved = max(moved, abs(step) / (1.0 + abs(z[i])))
        if moved < tol:
            return roots + z
    raise NumericFailure(f"root iteration stalled after {max_iter} rounds")


def projective_binary_roots(coeffs, degree: int, tol: float = 1e-13):
    """The `degree` projective roots of a binary form.

    coeffs[i] multiplies s^(degree-i) t^i.  Roots are (s, t) pairs
    normalized by normalize_projective; (1, 0) appears with the
    multiplicity of the t factor, (0, 1) with that of the s factor.
    """
    if len(coeffs) != degree + 1:
        raise InvalidInput("coefficient list does not match the degree")
    support = [i for i, c in enumerate(coeffs) if c != 0]
    if not support:
        raise InvalidInput("the zero form has no root list")
    mu, top = support[0], support[-1]
    nu = degree - top
    roots = [(1 + 0j, 0j)] * mu + [(0j, 1 + 0j)] * nu
    middle = coeffs[mu:top + 1]
    if len(middle) > 1:
        for t in aberth_roots(middle, tol=tol):
            roots.append(normalize_projective((1 + 0j, t)))
    return roots


def normalize_projective(vec):
    """Scale so the first largest-modulus coordinate equals exactly 1."""
    best = max(range(len(vec)), key=lambda i: abs(vec[i]))
    pivot = vec[best]
    if pivot == 0:
        raise InvalidInput("cannot normalize the zero vector")
    out = tuple(c / pivot for c in vec)
    return out[:best] + (1 + 0j,) + out[best + 1:]


def chordal_distance(u, v) -> float:
    """sin of the angle between the lines spanned by u and v.

    Computed as |u wedge v| / (|u| |v|); unlike the 1 - cos^2 form
    this keeps full precision at small angles.
    """
    nu = math.sqrt(sum(abs(c) ** 2 for c in u))
    nv = math.sqrt(sum(abs(c) ** 2 for c in v))
    if nu == 0 or nv == 0:
        raise InvalidInput("zero vector has no projective distance")
    wedge = 0.0
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            wedge += abs(u[i] * v[j] - u[j] * v[i]) ** 2
    return min(1.0, math.sqrt(wedge) / (nu * nv))


def cluster_points(points, radius: float, dist=chordal_distance):
    """Union-find merge of points closer than radius.

    Returns (representative, member_indices) pairs, representative
    being the member list's first point; order follows first members.
    """
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            ri, rj = find(i), find(j)
            if ri != rj and dist(points[i], points[j]) < radius:
                parent[rj] = ri
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in sorted(groups.values(), key=lambda ms: ms[0]):
        out.append((points[members[0]], members))
    return out


def polyeig(mats, drop_infinite: float = 1e-10):
    """Finite eigenvalues of M(a) = sum mats[k] a^k via a companion pencil.

    mats are square numpy arrays of one size.  Generalized eigenvalues
    with |beta| <= drop_infinite * |alpha| count as infinite and are
    dropped.
    """
    mats = [np.asarray(m, dtype=complex) for m in mats]
    while len(mats) > 1 and not mats[-1].any():
        mats.pop()
    size = mats[0].shape[0]
    if any(m.shape != (size, size) for m in mats):
        raise InvalidInput("matrix polynomial entries must share one square size")
    d = len(mats) - 1
    if d == 0:
        return []
    big = size * d
    A = np.zeros((big, big), dtype=complex)
    B = np.eye(big, dtype=complex)
    for k in range(d - 1):
        A[k * size:(k + 1) * size, (k + 1) * size:(k + 2) * size] = np.eye(size)
    for k in range(d):
        A[(d - 1) * size:, k * size:(k + 1) * size] = -mats[k]
    B[(d - 1) * size:, (d - 1) * size:] = mats[d]
    alpha, beta = scipy.linalg.eig(A, B, right=False, homogeneous_eigvals=True)
    out = []
    for a, b in zip(alpha, beta):
        if abs(b) > drop_infinite * max(1.0, abs(a)):
            out.append(complex(a / b))
    return out


def damped_newton(fun, jac, z0, tol: float = 1e-13, max_iter: int = 80,
                  floor=None):
    """Newton with step halving on complex square systems.

    fun maps a numpy vector to the residual vector, jac to the Jacobian
    matrix.  Returns (solution, residual_norm).  Stalling above tol
    raises NumericFailure, except that a stall at residual <= floor is
    accepted; pass floor to drive tol below evaluation noise safely.
    """
    z = np.asarray(z0, dtype=complex)
    r = np.asarray(fun(z), dtype=complex)
    best = np.linalg.norm(r)
    for _ in range(max_iter):
        if best < tol:
            return z, float(best)
        J = np.asarray(jac(z), dtype=complex)
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        scale = 1.0
        for _ in range(25):
            trial = z + scale * step
            rt = np.asarray(fun(trial), dtype=complex)
            nt = np.linalg.norm(rt)
            if nt < best:
                z, r, best = trial, rt, nt
                break
            scale *= 0.5
        else:
            break
    if best < tol or (floor is not None and best <= floor):
        return z, float(best)
    raise NumericFailure(f"refinement stalled at residual {best:.3e}")

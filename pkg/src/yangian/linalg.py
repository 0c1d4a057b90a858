"""Dense complex linear algebra for the small (<= 9x9) matrices used here.

Matrices are plain ``numpy`` complex128 arrays; products and Kronecker
products use numpy directly. Inversion, characteristic polynomials, polynomial
roots and Hermitian spectra are written out by hand with the methods named in
each docstring so that every result can be cross-checked against an
independent library routine in the tests.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, SingularMatrix, WrongShape

IDENTITY_TOL = 1e-12
ROOT_TOL = 1e-8
HERMITIAN_TOL = 1e-10
SINGULAR_TOL = 1e-12
JACOBI_TOL = 1e-14

_EPS = np.finfo(float).eps


def as_matrix(a) -> np.ndarray:
    """Coerce to a square, finite complex128 array."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise WrongShape(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise WrongShape("matrix has non-finite entries")
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def unit_matrix(n: int, i: int, j: int) -> np.ndarray:
    """e_ij with zero-based indices."""
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = 1.0
    return m


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b


def kron(a, b) -> np.ndarray:
    # row-major basis: |i> (x) |j>  ->  i * dim(b) + j
    return np.kron(as_matrix(a), as_matrix(b))


def commutator(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b - b @ a


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a), "fro"))


def inverse(a, singular_tol: float = SINGULAR_TOL) -> np.ndarray:
    """Gauss-Jordan elimination with partial pivoting."""
    m = as_matrix(a).copy()
    n = m.shape[0]
    inv = identity(n)
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(m[col:, col])))
        if abs(m[pivot, col]) <= singular_tol:
            raise SingularMatrix(f"pivot {abs(m[pivot, col]):.3e} in column {col} below {singular_tol:g}")
        if pivot != col:
            m[[col, pivot]] = m[[pivot, col]]
            inv[[col, pivot]] = inv[[pivot, col]]
        scale = m[col, col]
        m[col] /= scale
        inv[col] /= scale
        for row in range(n):
            if row != col and m[row, col] != 0:
                factor = m[row, col]
                m[row] -= factor * m[col]
                inv[row] -= factor * inv[col]
    return inv


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial, coefficients in ascending degree order."""

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = [complex(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs or (len(coeffs) == 1 and coeffs[0] == 0):
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def magnitude_bound(self, x: complex) -> float:
        """sum |c_i| max(1, |x|)^i, the scale against which residuals are judged."""
        r = max(1.0, abs(x))
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * r + abs(c)
        return acc

    def derivative(self, order: int = 1) -> "Polynomial":
        if order > self.degree:
            raise ValueError(f"derivative of order {order} vanishes for degree {self.degree}")
        coeffs = list(self.coefficients)
        for _ in range(order):
            coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        return Polynomial(tuple(coeffs))

    @classmethod
    def from_roots(cls, roots) -> "Polynomial":
        coeffs = [1 + 0j]
        for r in roots:
            shifted = [0j] + coeffs
            for i, c in enumerate(coeffs):
                shifted[i] -= r * c
            coeffs = shifted
        return cls(tuple(coeffs))


def char_poly(a) -> Polynomial:
    """det(xE - a) by the Faddeev-LeVerrier recursion."""
    a = as_matrix(a)
    n = a.shape[0]
    coeffs = [0j] * (n + 1)
    coeffs[n] = 1 + 0j
    m = np.zeros_like(a)
    eye = identity(n)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(a @ m) / k
    return Polynomial(tuple(coeffs))


def _polish_multiple(p: Polynomial, z: complex, m: int) -> complex:
    # an m-fold root of p is a simple root of its (m-1)-th derivative
    d0, d1 = p.derivative(m - 1), p.derivative(m)
    for _ in range(50):
        slope = d1(z)
        if slope == 0:
            break
        step = d0(z) / slope
        z -= step
        if abs(step) <= 4 * _EPS * (1.0 + abs(z)):
            break
    return z


def _merge_clusters(p: Polynomial, roots: list[complex]) -> list[complex]:
    # A root of multiplicity m splits into an m-cluster of radius ~eps**(1/m).
    # Each cluster is collapsed onto a polished multiple root, but only when that
    # point is at least as good a root as the members; distinct close roots fail
    # this test and are left alone.
    scale = 1.0 + max(abs(z) for z in roots)
    radius = 1e-3 * scale
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(roots[i] - roots[j]) < radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    out = list(roots)
    for members in groups.values():
        if len(members) < 2:
            continue
        m = len(members)
        diameter = max(abs(roots[i] - roots[j]) for i in members for j in members)
        if diameter > 4 * (8 * _EPS) ** (1.0 / m) * scale:
            continue
        mean = sum(roots[i] for i in members) / m
        centre = _polish_multiple(p, mean, m)
        if abs(centre - mean) > radius:
            continue
        worst = max(abs(p(roots[i])) for i in members)
        floor = 16 * _EPS * p.magnitude_bound(centre)
        if abs(p(centre)) <= 10 * max(worst, floor):
            for i in members:
                out[i] = centre
    return out


def poly_roots(p: Polynomial, root_tol: float = ROOT_TOL, max_iter: int = 500) -> list[complex]:
    """All roots with multiplicity by Durand-Kerner (Weierstrass) iteration."""
    if not isinstance(p, Polynomial):
        p = Polynomial(tuple(p))
    n = p.degree
    if n < 1:
        raise ValueError("polynomial of degree >= 1 required")
    lead = p.coefficients[-1]
    monic = Polynomial(tuple(c / lead for c in p.coefficients))
    radius = 1.0 + max(abs(c) for c in monic.coefficients[:-1])
    z = [radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]

    for _ in range(max_iter):
        biggest_step = 0.0
        for k in range(n):
            denom = 1 + 0j
            for j in range(n):
                if j != k:
                    denom *= z[k] - z[j]
            if denom == 0:
                denom = complex(_EPS, _EPS)
            step = monic(z[k]) / denom
            z[k] -= step
            biggest_step = max(biggest_step, abs(step) / (1.0 + abs(z[k])))
        at_roundoff = all(abs(monic(zk)) <= 4 * _EPS * monic.magnitude_bound(zk) for zk in z)
        if biggest_step < 1e-15 or at_roundoff:
            break

    for zk in z:
        if abs(monic(zk)) > root_tol * monic.magnitude_bound(zk):
            raise NoConvergence(f"Durand-Kerner residual {abs(monic(zk)):.3e} at {zk} after {max_iter} iterations")
    return _merge_clusters(monic, z)


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    a = as_matrix(a)
    return frobenius(a - a.conj().T) <= tol


def hermitian_eigenvalues(a, tol: float = JACOBI_TOL, max_sweeps: int = 100) -> list[float]:
    """Ascending real eigenvalues by cyclic complex Jacobi rotations."""
    a = as_matrix(a)
    if not is_hermitian(a):
        raise NotHermitian(f"anti-Hermitian part has norm {frobenius(a - a.conj().T):.3e}")
    m = 0.5 * (a + a.conj().T)
    n = m.shape[0]
    target = tol * max(1.0, frobenius(m))

    def off_norm():
        return frobenius(m - np.diag(np.diag(m)))

    for _ in range(max_sweeps):
        if off_norm() < target:
            return sorted(float(x) for x in np.real(np.diag(m)))
        for p_ in range(n - 1):
            for q in range(p_ + 1, n):
                apq = m[p_, q]
                mag = abs(apq)
                if mag < 1e-200:
                    continue
                phase = apq / mag
                theta = 0.5 * math.atan2(2 * mag, (m[q, q] - m[p_, p_]).real)
                c, s = math.cos(theta), math.sin(theta)
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p_, q]
                m[:, idx] = m[:, idx] @ g
                m[idx, :] = g.conj().T @ m[idx, :]
                m[p_, q] = m[q, p_] = 0.0
                m[p_, p_] = m[p_, p_].real
                m[q, q] = m[q, q].real
    if off_norm() < target:
        return sorted(float(x) for x in np.real(np.diag(m)))
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

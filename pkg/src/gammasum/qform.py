"""Gaussian quadratic forms z' C z reduced to gamma sums.

With z ~ N(0, Sigma) and C symmetric positive definite, diagonalizing
M = Sigma^(1/2) C Sigma^(1/2) = V diag(mu) V' turns the form into
sum_j mu_j W_j^2 with independent standard normals W_j, i.e. a sum of
Gamma(1/2) variables scaled by 2 mu_j. The CDF at x is therefore the
gamma-sum CDF with shapes (1/2, ..., 1/2) and scales mu evaluated at
x/2 (scales folded as mu, argument halved).

Eigenvalues come from a cyclic Jacobi iteration written here: the one
linear-algebra kernel the reduction actually depends on, kept
independent of the LAPACK path used by the Monte Carlo cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import GammaSumParams, QuadratureConfig, cdf
from .errors import (
    ConvergenceError,
    DomainError,
    GammaSumError,
    NotPositiveDefiniteError,
)

_JACOBI_SWEEPS = 100
_POSDEF_REL = 1e-14


class SymMatrix:
    """A validated symmetric matrix.

    Accepts any square array whose asymmetry |A - A'| is at most
    1e-12 * max|A| entrywise, stores the symmetrized (A + A')/2, and
    freezes the buffer. Use .entries for the ndarray and .dim for the
    order."""

    __slots__ = ("dim", "entries")

    def __init__(self, entries):
        a = np.asarray(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"matrix must be square, got shape {a.shape}")
        if a.size == 0:
            raise DomainError("matrix must be nonempty")
        if not np.isfinite(a).all():
            raise DomainError("matrix entries must be finite")
        scale = float(np.abs(a).max())
        if scale > 0.0 and float(np.abs(a - a.T).max()) > 1e-12 * scale:
            raise DomainError("matrix is not symmetric to relative 1e-12")
        sym = 0.5 * (a + a.T)
        sym.setflags(write=False)
        self.dim = a.shape[0]
        self.entries = sym

    def __repr__(self):
        return f"SymMatrix(dim={self.dim})"


def _as_sym(mat):
    return mat if isinstance(mat, SymMatrix) else SymMatrix(mat)


@dataclass(eq=False)
class EigenDecomp:
    """Eigenvalues (ascending) and the matching orthonormal column vectors."""

    values: np.ndarray
    vectors: np.ndarray


def jacobi_eigen(mat):
    """Full eigendecomposition of a SymMatrix by cyclic Jacobi rotations.

    Sweeps the strict upper triangle, zeroing each pivot with the
    standard stable rotation, until the off-diagonal Frobenius norm is
    at most 1e-14 times the Frobenius norm of the input. Converges
    quadratically; 100 sweeps is far beyond any symmetric matrix of the
    sizes this library handles, so hitting the cap signals corrupted
    input and raises ConvergenceError.
    """
    mat = _as_sym(mat)
    a = mat.entries.copy()
    n = mat.dim
    v = np.eye(n)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return EigenDecomp(np.zeros(n), v)
    for sweep in range(_JACOBI_SWEEPS + 1):
        off = math.sqrt(2.0 * float((np.triu(a, 1) ** 2).sum()))
        if off <= 1e-14 * norm:
            break
        if sweep == _JACOBI_SWEEPS:
            raise ConvergenceError("jacobi iteration exceeded the sweep limit")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0)
                    )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    order = np.argsort(np.diag(a), kind="stable")
    return EigenDecomp(np.diag(a)[order].copy(), v[:, order].copy())


def _check_posdef(values, dim, what):
    wmax = float(values.max()) if values.size else 0.0
    if wmax <= 0.0 or float(values.min()) <= dim * _POSDEF_REL * wmax:
        raise NotPositiveDefiniteError(
            f"{what} is not positive definite (eigenvalue floor "
            f"{dim * _POSDEF_REL * wmax:.3g})"
        )


def sym_sqrt(mat):
    """Symmetric positive definite square root V sqrt(w) V'."""
    mat = _as_sym(mat)
    dec = jacobi_eigen(mat)
    _check_posdef(dec.values, mat.dim, "matrix")
    root = (dec.vectors * np.sqrt(dec.values)) @ dec.vectors.T
    return SymMatrix(0.5 * (root + root.T))


def qform_eigenvalues(sigma, c):
    """Ascending eigenvalues mu of Sigma^(1/2) C Sigma^(1/2).

    These are the scale weights of the chi-square mixture; both inputs
    must be symmetric positive definite."""
    sigma = _as_sym(sigma)
    c = _as_sym(c)
    if sigma.dim != c.dim:
        raise DomainError(
            f"dimension mismatch: sigma is {sigma.dim}, c is {c.dim}"
        )
    s = sym_sqrt(sigma).entries
    m = s @ c.entries @ s
    dec = jacobi_eigen(SymMatrix(0.5 * (m + m.T)))
    _check_posdef(dec.values, sigma.dim, "sigma^(1/2) c sigma^(1/2)")
    return dec.values


def qform_cdf(sigma, c, x, cfg=None):
    """P{z' C z <= x} for z ~ N(0, Sigma).

    Reduces to the gamma-sum CDF with shapes (1/2,)*dim and scales mu
    at the point x/2, after verifying the determinant identity
    prod(mu) = det(Sigma) det(C) to relative 1e-6 as a corruption guard
    on the eigenvalue path."""
    sigma = _as_sym(sigma)
    c = _as_sym(c)
    mu = qform_eigenvalues(sigma, c)
    det_direct = float(np.linalg.det(sigma.entries) * np.linalg.det(c.entries))
    det_mu = float(np.prod(mu))
    if abs(det_mu - det_direct) > 1e-6 * abs(det_direct):
        raise GammaSumError(
            "eigenvalue product disagrees with det(sigma) det(c): "
            f"{det_mu:.12g} vs {det_direct:.12g}"
        )
    cfg = QuadratureConfig() if cfg is None else cfg
    params = GammaSumParams((0.5,) * sigma.dim, tuple(mu))
    return cdf(params, 0.5 * x, cfg)

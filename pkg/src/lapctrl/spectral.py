"""Symmetric eigendecomposition and closed-form spectra of special graphs.

The solver is a cyclic Jacobi iteration: unconditionally stable on dense
symmetric matrices and fully deterministic (fixed sweep order, fixed sign
convention), which keeps every downstream artifact reproducible byte for
byte. Alongside it live the closed forms this package leans on: the integer
antiregular spectrum, an all-integer antiregular eigenvector construction,
and the cosine eigenvectors of a path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph_core import _as_degseq, gen_antiregular, laplacian

__all__ = [
    "ConvergenceError",
    "EigDecomp",
    "Eigenspace",
    "eig_sym",
    "eigenspaces",
    "default_gtol",
    "antiregular_spectrum",
    "antiregular_modal",
    "path_modal",
    "check_majorization",
]

_SWEEP_CAP = 100
_OFFDIAG_STOP = 1e-12   # times the Frobenius norm of the input
_MAJORIZATION_TOL = 1e-8  # times the sequence length


class ConvergenceError(RuntimeError):
    """The Jacobi sweep cap was reached before the off-diagonal mass died."""


@dataclass(frozen=True)
class EigDecomp:
    """Eigenvalues in ascending order; column j of modal pairs with values[j]."""

    values: np.ndarray
    modal: np.ndarray


@dataclass(frozen=True)
class Eigenspace:
    """One eigenvalue cluster with an orthonormal basis of its eigenspace."""

    value: float
    basis: np.ndarray

    @property
    def multiplicity(self) -> int:
        return self.basis.shape[1]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _fix_signs(v: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (lowest index on ties)
    is positive."""
    v = v.copy()
    for j in range(v.shape[1]):
        lead = int(np.argmax(np.abs(v[:, j])))
        if v[lead, j] < 0:
            v[:, j] = -v[:, j]
    return v


def eig_sym(m, rtol: float = 1e-8) -> EigDecomp:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    The input must be exactly symmetric. Convergence is declared when the
    off-diagonal Frobenius mass drops below 1e-12 times the Frobenius norm
    of the input; hitting the sweep cap first raises ConvergenceError, as
    does a residual above rtol * the max row sum of |m|.
    """
    raw = np.asarray(m)
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {raw.shape}")
    if not (raw == raw.T).all():
        raise ValueError("matrix is not symmetric")
    if rtol <= 0:
        raise ValueError("rtol must be positive")

    n = raw.shape[0]
    a = raw.astype(float).copy()
    v = np.eye(n)
    stop = _OFFDIAG_STOP * float(np.linalg.norm(a))

    sweeps = 0
    while _offdiag_norm(a) > stop:
        if sweeps >= _SWEEP_CAP:
            raise ConvergenceError(
                f"no convergence after {_SWEEP_CAP} sweeps "
                f"(off-diagonal mass {_offdiag_norm(a):.3e}, target {stop:.3e})")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        sweeps += 1

    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    values = values[order]
    modal = _fix_signs(v[:, order])

    scale = float(np.max(np.sum(np.abs(raw.astype(float)), axis=1))) if n else 0.0
    residual = float(np.max(np.abs(raw.astype(float) @ modal - modal * values)))
    if residual > rtol * max(scale, 1e-300):
        raise ConvergenceError(f"eigen-residual {residual:.3e} above rtol*scale")
    return EigDecomp(values=values, modal=modal)


def default_gtol(values: np.ndarray) -> float:
    """Eigenvalue grouping tolerance: 1e-7 * max(1, largest |value|)."""
    peak = float(np.max(np.abs(values))) if len(values) else 0.0
    return 1e-7 * max(1.0, peak)


def eigenspaces(dec: EigDecomp, gtol: float | None = None) -> list[Eigenspace]:
    """Cluster a decomposition into eigenspaces by adjacent-gap grouping.

    Values whose consecutive gaps are <= gtol share a cluster; each cluster's
    basis is re-orthonormalized with modified Gram-Schmidt.
    """
    if gtol is None:
        gtol = default_gtol(dec.values)
    spaces: list[Eigenspace] = []
    k = len(dec.values)
    lo = 0
    while lo < k:
        hi = lo + 1
        while hi < k and dec.values[hi] - dec.values[hi - 1] <= gtol:
            hi += 1
        basis = dec.modal[:, lo:hi].astype(float).copy()
        for j in range(basis.shape[1]):
            for i in range(j):
                basis[:, j] -= (basis[:, i] @ basis[:, j]) * basis[:, i]
            basis[:, j] /= np.linalg.norm(basis[:, j])
        spaces.append(Eigenspace(value=float(np.mean(dec.values[lo:hi])), basis=basis))
        lo = hi
    return spaces


def antiregular_spectrum(k: int) -> list[int]:
    """Laplacian eigenvalues of the antiregular graph on k vertices.

    The spectrum is {0, 1, ..., k} with ceil(k/2) removed: k integers.
    """
    if k < 2:
        raise ValueError("antiregular graphs need at least two vertices")
    gap = (k + 1) // 2
    return [x for x in range(k + 1) if x != gap]


def antiregular_modal(k: int) -> np.ndarray:
    """Integer eigenvector matrix of the antiregular graph on k vertices.

    Column j pairs with antiregular_spectrum(k)[j], so columns run from the
    all-ones kernel vector up to the eigenvector for eigenvalue k. Built
    entirely in integer arithmetic: start from the Laplacian, replace each
    strictly upper-triangular entry x by -1-x, reset the diagonal so every
    column sums to zero, drop the single zero column this produces, and
    prepend the all-ones column (the sign of that column is free; we take
    +1). Before the reordering the surviving columns pair with the leading
    entries of the conjugate degree sequence, largest eigenvalue first.
    """
    t1 = laplacian(gen_antiregular(k))
    upper = np.triu(np.ones((k, k), dtype=bool), 1)
    t2 = np.where(upper, -1 - t1, t1)
    t3 = t2.copy()
    np.fill_diagonal(t3, -(t2.sum(axis=0) - np.diag(t2)))
    zero_cols = np.flatnonzero(~t3.any(axis=0))
    if len(zero_cols) != 1:
        raise RuntimeError(
            f"antiregular eigenvector table for k={k}: expected exactly one "
            f"zero column, found {len(zero_cols)} at {zero_cols.tolist()}")
    z = int(zero_cols[0])
    kept = np.delete(t3, z, axis=1)
    return np.concatenate([np.ones((k, 1), dtype=np.int64), kept[:, ::-1]], axis=1)


def path_modal(k: int) -> np.ndarray:
    """Cosine eigenvectors of the k-vertex path Laplacian, one per column.

    Column i holds cos((i-1)(2j-1)pi/(2k)) at entry j and pairs with the
    i-th smallest eigenvalue; column 1 is the all-ones vector.
    """
    if k < 1:
        raise ValueError("path needs at least one vertex")
    i = np.arange(1, k + 1)[None, :]
    j = np.arange(1, k + 1)[:, None]
    return np.cos((i - 1) * (2 * j - 1) * np.pi / (2 * k))


def check_majorization(values, dstar) -> bool:
    """Spectrum majorization: partial sums of the eigenvalues, largest first,
    never exceed the partial sums of the conjugate degree sequence.

    Comparisons allow slack 1e-8 times the length; a genuine violation on an
    actual graph would mean a solver bug, not a property failure.
    """
    values = np.asarray(values, dtype=float)
    dstar = _as_degseq(dstar)
    if values.ndim != 1 or len(values) != len(dstar):
        raise ValueError("spectrum and conjugate sequence lengths differ")
    k = len(dstar)
    lhs = np.cumsum(np.sort(values)[::-1])
    rhs = np.cumsum(np.fromiter(dstar, dtype=float, count=k))
    return bool(np.all(lhs <= rhs + _MAJORIZATION_TOL * k))

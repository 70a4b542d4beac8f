"""Self-adjoint complex matrices: spectra, functional calculus, min/max pairs.

Sizes of interest are tiny (2 to 4); the 2x2 path uses the closed
trigonometric form so that the sphere geometry downstream is exact, larger
sizes go through LAPACK.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, DomainError, InvalidInput, NotHermitian

__all__ = [
    "HermitianMatrix",
    "SpectralDecomp",
    "Classification",
    "spectral",
    "func_calc",
    "lattice_ops",
    "classify",
    "operator_norm",
    "matrix_abs",
    "matrix_sqrt",
    "projection_decomposition",
]

HERMITICITY_TOL = 1e-12
CLUSTER_TOL = 1e-10


class HermitianMatrix:
    """A square complex matrix equal to its conjugate transpose.

    Input within 1e-12 of self-adjoint is symmetrized, anything further
    off is rejected.
    """

    def __init__(self, entries):
        m = np.asarray(entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidInput(f"matrix must be square, got shape {m.shape}")
        gap = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
        if gap > HERMITICITY_TOL:
            raise NotHermitian(f"matrix is {gap:.2e} away from self-adjoint")
        m = (m + m.conj().T) / 2.0
        m.setflags(write=False)
        self.mat = m

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def __add__(self, other):
        return HermitianMatrix(self.mat + _raw(other))

    def __sub__(self, other):
        return HermitianMatrix(self.mat - _raw(other))

    def __rmul__(self, scalar: float):
        return HermitianMatrix(float(scalar) * self.mat)

    def __repr__(self):
        return f"HermitianMatrix({self.mat.tolist()!r})"

    def allclose(self, other, tol: float = 1e-9) -> bool:
        return bool(np.max(np.abs(self.mat - _raw(other))) <= tol)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "re": self.mat.real.tolist(),
            "im": self.mat.imag.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "HermitianMatrix":
        return cls(complex_matrix_from_json(data))

    @classmethod
    def diag(cls, values) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))


def complex_matrix_from_json(data: dict) -> np.ndarray:
    """Parse {"n":..,"re":[[..]],"im":[[..]]} into a complex array."""
    if "re" not in data:
        raise InvalidInput('matrix JSON needs a "re" key')
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise DimensionMismatch("re and im parts must share a shape")
    return re + 1j * im


def _raw(a) -> np.ndarray:
    return a.mat if isinstance(a, HermitianMatrix) else np.asarray(a, dtype=complex)


def _as_hermitian(a) -> HermitianMatrix:
    return a if isinstance(a, HermitianMatrix) else HermitianMatrix(a)


@dataclass(frozen=True)
class SpectralDecomp:
    """Ascending eigenvalues with aligned orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def to_json(self) -> dict:
        return {
            "eigenvalues": self.eigenvalues.tolist(),
            "eigenvectors_re": self.eigenvectors.real.tolist(),
            "eigenvectors_im": self.eigenvectors.imag.tolist(),
        }


def _spectral2(m: np.ndarray) -> SpectralDecomp:
    # Closed form on the Pauli coordinates: eigenvalues c +- r, eigenvectors
    # from the polar angles of the traceless part.
    c = (m[0, 0].real + m[1, 1].real) / 2.0
    v1, v2 = m[1, 0].real, m[1, 0].imag
    v3 = (m[0, 0].real - m[1, 1].real) / 2.0
    r = float(np.sqrt(v1 * v1 + v2 * v2 + v3 * v3))
    if r == 0.0:
        return SpectralDecomp(np.array([c, c]), np.eye(2, dtype=complex))
    theta = float(np.arccos(np.clip(v3 / r, -1.0, 1.0)))
    phi = float(np.arctan2(v2, v1))
    co, si = np.cos(theta / 2.0), np.sin(theta / 2.0)
    plus = np.array([co, np.exp(1j * phi) * si])
    minus = np.array([-np.exp(-1j * phi) * si, co])
    vecs = np.column_stack([minus, plus])
    return SpectralDecomp(np.array([c - r, c + r]), vecs)


def spectral(a) -> SpectralDecomp:
    """Eigendecomposition with eigenvalues ascending."""
    a = _as_hermitian(a)
    if a.n == 2:
        return _spectral2(a.mat)
    vals, vecs = np.linalg.eigh(a.mat)
    return SpectralDecomp(np.asarray(vals, dtype=float), vecs)


def _clusters(values: np.ndarray, tol: float = CLUSTER_TOL) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups and v - values[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def func_calc(a, f: Callable[[float], float]) -> HermitianMatrix:
    """Apply a real scalar function through the spectrum.

    Eigenvalues within 1e-10 are treated as one spectral point; the result
    depends only on the spectral projectors, so the eigenvector ambiguity
    inside a degenerate cluster is immaterial.
    """
    a = _as_hermitian(a)
    dec = spectral(a)
    out = np.zeros((a.n, a.n), dtype=complex)
    for group in _clusters(dec.eigenvalues):
        lam = float(np.mean(dec.eigenvalues[group]))
        try:
            val = f(lam)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise DomainError(f"function undefined at eigenvalue {lam!r}: {exc}") from exc
        val = float(val)
        if not np.isfinite(val):
            raise DomainError(f"function not finite at eigenvalue {lam!r}")
        vecs = dec.eigenvectors[:, group]
        out += val * (vecs @ vecs.conj().T)
    return HermitianMatrix(out)


def matrix_abs(a) -> HermitianMatrix:
    return func_calc(a, abs)


def matrix_sqrt(a) -> HermitianMatrix:
    def root(x: float) -> float:
        if x < -CLUSTER_TOL:
            raise ValueError("negative spectral point")
        return float(np.sqrt(max(x, 0.0)))

    return func_calc(a, root)


def lattice_ops(a, b) -> tuple[HermitianMatrix, HermitianMatrix]:
    """The pair ((a+b)/2 + |a-b|/2, (a+b)/2 - |a-b|/2), sharing one |a-b|.

    Genuine lattice join/meet only when a and b commute; still well defined
    and order-theoretically meaningful in general.
    """
    a, b = _as_hermitian(a), _as_hermitian(b)
    if a.n != b.n:
        raise DimensionMismatch(f"sizes differ: {a.n} vs {b.n}")
    mid = (a.mat + b.mat) / 2.0
    half_gap = matrix_abs(a - b).mat / 2.0
    return HermitianMatrix(mid + half_gap), HermitianMatrix(mid - half_gap)


@dataclass(frozen=True)
class Classification:
    norm: float
    positive: bool
    positive_invertible: bool

    def to_json(self) -> dict:
        return {
            "norm": self.norm,
            "positive": self.positive,
            "positive_invertible": self.positive_invertible,
        }


def classify(a) -> Classification:
    """Operator norm and spectral positivity flags."""
    dec = spectral(_as_hermitian(a))
    low = float(dec.eigenvalues[0])
    return Classification(
        norm=float(np.max(np.abs(dec.eigenvalues))),
        positive=low >= -1e-12,
        positive_invertible=low > 1e-12,
    )


def operator_norm(a) -> float:
    return classify(a).norm


def projection_decomposition(a, tol: float = 1e-12) -> list[tuple[float, HermitianMatrix]]:
    """Positive span over spectral projections of a positive matrix.

    With ascending spectral levels v_1 < v_2 < ..., the matrix equals
    v_1 * P(>=1) + sum_k (v_k - v_{k-1}) * P(>=k) where P(>=k) projects on
    the eigenspaces at or above level k; P(>=1) is the identity and its
    term is dropped when v_1 is zero.
    """
    a = _as_hermitian(a)
    dec = spectral(a)
    if dec.eigenvalues[0] < -tol:
        raise InvalidInput("matrix must be positive semidefinite")
    groups = _clusters(dec.eigenvalues)
    terms: list[tuple[float, HermitianMatrix]] = []
    prev = 0.0
    for k, group in enumerate(groups):
        lam = float(np.mean(dec.eigenvalues[group]))
        coeff = lam - prev
        tail = [i for g in groups[k:] for i in g]
        vecs = dec.eigenvectors[:, tail]
        proj = HermitianMatrix(vecs @ vecs.conj().T)
        if k > 0 or coeff > tol:
            terms.append((coeff, proj))
        prev = lam
    return terms

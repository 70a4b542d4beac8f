"""Order structures on 2x2 complex matrices via Bloch-sphere geometry.

Hermitian 2x2 matrices are coordinatized as c*s0 + v.s with the Pauli
basis; a membership cone is cut out by a closed, geodesically convex
region of the unit sphere of traceless matrices plus the full multiples
of the identity.  Pure states map to the sphere through the Hopf
fibration, and the induced state order is a dual-cone test on Bloch
vectors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, nnls

from .errors import (
    DimensionMismatch,
    InvalidInput,
    NotARotation,
    NotNormal,
    NotNormalized,
)
from .hermitian import HermitianMatrix, spectral

__all__ = [
    "GEOM_TOL",
    "SIGMA",
    "PauliCoords",
    "pauli_coords",
    "matrix_from_pauli",
    "hopf",
    "SphericalRegion",
    "region_contains",
    "cone_contains",
    "iso_membership",
    "PureStatePoint",
    "DensityState",
    "pure_state_order",
    "state_order",
    "fubini_study",
    "transition_probability",
    "TransversalityResult",
    "transversality",
    "join_coeffs",
    "join_coeffs_from_difference",
    "M2CoboundedWitness",
    "cobounded_witness",
    "rotation_preserves",
]

GEOM_TOL = 1e-9

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class PauliCoords:
    """Coefficients (c, v) of a hermitian 2x2 matrix c*s0 + v.s."""

    c: float
    v: np.ndarray

    def to_matrix(self) -> HermitianMatrix:
        return matrix_from_pauli(self.c, self.v)


def pauli_coords(a) -> PauliCoords:
    m = a.mat if isinstance(a, HermitianMatrix) else HermitianMatrix(a).mat
    if m.shape != (2, 2):
        raise DimensionMismatch(f"need a 2x2 matrix, got {m.shape}")
    c = float((m[0, 0].real + m[1, 1].real) / 2.0)
    v = np.array(
        [m[1, 0].real, m[1, 0].imag, (m[0, 0].real - m[1, 1].real) / 2.0]
    )
    return PauliCoords(c, v)


def matrix_from_pauli(c: float, v) -> HermitianMatrix:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise DimensionMismatch(f"coefficient vector must have 3 entries, got {v.shape}")
    m = c * SIGMA[0] + v[0] * SIGMA[1] + v[1] * SIGMA[2] + v[2] * SIGMA[3]
    return HermitianMatrix(m)


def pauli_vparts_many(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batch (c, v) extraction from an (N, 2, 2) complex stack."""
    c = (mats[:, 0, 0].real + mats[:, 1, 1].real) / 2.0
    v = np.stack(
        [
            mats[:, 1, 0].real,
            mats[:, 1, 0].imag,
            (mats[:, 0, 0].real - mats[:, 1, 1].real) / 2.0,
        ],
        axis=1,
    )
    return c, v


def hopf(xi) -> np.ndarray:
    """Bloch image (2Re(x1~ x2), 2Im(x1~ x2), |x1|^2 - |x2|^2) of a unit spinor."""
    xi = np.asarray(xi, dtype=complex).reshape(-1)
    if xi.shape != (2,):
        raise DimensionMismatch(f"state vector must have 2 entries, got {xi.shape}")
    nrm = float(np.linalg.norm(xi))
    if abs(nrm - 1.0) > 1e-9:
        raise NotNormalized(f"state vector has norm {nrm!r}")
    xi = xi / nrm
    cross = np.conj(xi[0]) * xi[1]
    return np.array([2.0 * cross.real, 2.0 * cross.imag, abs(xi[0]) ** 2 - abs(xi[1]) ** 2])


def _unit(v, what: str, tol: float = 1e-6) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise DimensionMismatch(f"{what} must have 3 entries, got {v.shape}")
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > tol:
        raise InvalidInput(f"{what} must be unit length, got norm {nrm!r}")
    return v / nrm


def _angle(u, w) -> float:
    return float(np.arccos(np.clip(float(np.dot(u, w)), -1.0, 1.0)))


class SphericalRegion:
    """A closed, geodesically convex sphere region with nonempty interior.

    Kinds: the full sphere; a cap of angular radius in (0, pi/2] around a
    unit center (angles measured on the sphere itself); or the geodesic
    hull of unit vertices lying strictly inside an open half-sphere.
    The induced cone of nonnegative multiples is full dimensional.
    """

    kind: str

    def __init__(self, kind: str, center=None, radius: float | None = None, vertices=None):
        self.kind = kind
        self.center = None
        self.radius = None
        self.vertices = None
        self._extreme = None
        self._facets = None
        if kind == "full":
            return
        if kind == "cap":
            self.center = _unit(center, "cap center", tol=1e-12)
            radius = float(radius)
            if not 0.0 < radius <= np.pi / 2.0 + 1e-9:
                raise InvalidInput(f"cap radius must be in (0, pi/2], got {radius!r}")
            self.radius = min(radius, np.pi / 2.0)
            self.center.setflags(write=False)
            return
        if kind == "hull":
            verts = np.asarray(vertices, dtype=float)
            if verts.ndim != 2 or verts.shape[1] != 3 or verts.shape[0] < 3:
                raise InvalidInput("hull needs at least 3 unit vertices of dimension 3")
            norms = np.linalg.norm(verts, axis=1)
            if np.max(np.abs(norms - 1.0)) > 1e-9:
                raise InvalidInput("hull vertices must be unit length")
            verts = verts / norms[:, None]
            if np.linalg.matrix_rank(verts, tol=1e-9) < 3:
                raise InvalidInput("hull cone must be full dimensional")
            res = linprog(
                c=[0.0, 0.0, 0.0],
                A_ub=-verts,
                b_ub=-np.ones(verts.shape[0]),
                bounds=[(None, None)] * 3,
                method="highs",
            )
            if not res.success:
                raise InvalidInput("hull vertices must lie strictly inside an open half-sphere")
            self.vertices = verts
            self._extreme = _extreme_rays(verts)
            self._facets = _facet_normals(self._extreme)
            self.vertices.setflags(write=False)
            self._extreme.setflags(write=False)
            self._facets.setflags(write=False)
            return
        raise InvalidInput(f"unknown region kind {kind!r}")

    # Constructors ---------------------------------------------------------

    @classmethod
    def full(cls) -> "SphericalRegion":
        return cls("full")

    @classmethod
    def cap(cls, center, radius: float) -> "SphericalRegion":
        return cls("cap", center=center, radius=radius)

    @classmethod
    def hull(cls, vertices) -> "SphericalRegion":
        return cls("hull", vertices=vertices)

    @classmethod
    def from_json(cls, data: dict) -> "SphericalRegion":
        kind = data.get("kind")
        if kind == "full":
            return cls.full()
        if kind == "cap":
            return cls.cap(data["center"], data["radius"])
        if kind == "hull":
            return cls.hull(data["vertices"])
        raise InvalidInput(f"unknown region kind {kind!r}")

    def to_json(self) -> dict:
        if self.kind == "full":
            return {"kind": "full"}
        if self.kind == "cap":
            return {"kind": "cap", "center": self.center.tolist(), "radius": self.radius}
        return {"kind": "hull", "vertices": self.vertices.tolist()}

    @property
    def extreme_vertices(self) -> np.ndarray:
        if self.kind != "hull":
            raise InvalidInput("extreme vertices are defined for hull regions only")
        return self._extreme

    def __repr__(self):
        if self.kind == "cap":
            return f"SphericalRegion.cap({self.center.tolist()}, {self.radius})"
        if self.kind == "hull":
            return f"SphericalRegion.hull({len(self._extreme)} extreme vertices)"
        return "SphericalRegion.full()"

    # Membership -----------------------------------------------------------

    def contains(self, u, tol: float = GEOM_TOL) -> bool:
        """Membership of a unit vector in the sphere region."""
        u = _unit(u, "query point")
        if self.kind == "full":
            return True
        if self.kind == "cap":
            return _angle(u, self.center) <= self.radius + tol
        coeffs, resid = nnls(self._extreme.T, u)
        del coeffs
        return resid <= tol

    def contains_many(self, pts: np.ndarray, tol: float = GEOM_TOL) -> np.ndarray:
        """Vectorized membership for unit rows; hulls use facet normals."""
        pts = np.asarray(pts, dtype=float)
        if self.kind == "full":
            return np.ones(pts.shape[0], dtype=bool)
        if self.kind == "cap":
            ang = np.arccos(np.clip(pts @ self.center, -1.0, 1.0))
            return ang <= self.radius + tol
        return (pts @ self._facets.T).min(axis=1) >= -tol

    def cone_contains(self, v, tol: float = GEOM_TOL) -> bool:
        v = np.asarray(v, dtype=float).reshape(-1)
        if v.shape != (3,):
            raise DimensionMismatch(f"vector must have 3 entries, got {v.shape}")
        nrm = float(np.linalg.norm(v))
        if nrm <= tol:
            return True
        return self.contains(v / nrm, tol=tol)

    def cone_contains_many(self, vs: np.ndarray, tol: float = GEOM_TOL) -> np.ndarray:
        vs = np.asarray(vs, dtype=float)
        norms = np.linalg.norm(vs, axis=1)
        out = norms <= tol
        big = ~out
        if big.any():
            out[big] = self.contains_many(vs[big] / norms[big, None], tol=tol)
        return out

    # Dual cone ------------------------------------------------------------

    def dual_contains(self, d, tol: float = GEOM_TOL) -> bool:
        """Membership of d in the dual cone {d : d.k >= 0 for all k in region}.

        Caps use the complementary-angle closed form, hulls only need the
        extreme vertices, and the full sphere dualizes to the origin.
        """
        d = np.asarray(d, dtype=float).reshape(-1)
        nrm = float(np.linalg.norm(d))
        if nrm <= tol:
            return True
        if self.kind == "full":
            return False
        if self.kind == "cap":
            return _angle(d / nrm, self.center) <= np.pi / 2.0 - self.radius + tol
        return bool((self._extreme @ d >= -tol * nrm).all())

    def dual_contains_many(self, ds: np.ndarray, tol: float = GEOM_TOL) -> np.ndarray:
        ds = np.asarray(ds, dtype=float)
        norms = np.linalg.norm(ds, axis=1)
        zero = norms <= tol
        if self.kind == "full":
            return zero
        if self.kind == "cap":
            with np.errstate(invalid="ignore"):
                cosang = np.where(norms > 0, ds @ self.center / np.where(norms > 0, norms, 1.0), 1.0)
            ang = np.arccos(np.clip(cosang, -1.0, 1.0))
            return zero | (ang <= np.pi / 2.0 - self.radius + tol)
        slack = (ds @ self._extreme.T).min(axis=1)
        return zero | (slack >= -tol * np.maximum(norms, 1.0))


def _extreme_rays(verts: np.ndarray) -> np.ndarray:
    """Deduplicate, then keep the vertices not in the cone of the others."""
    uniq: list[np.ndarray] = []
    for v in verts:
        if not any(np.linalg.norm(v - u) <= 1e-9 for u in uniq):
            uniq.append(v)
    rays = np.array(uniq)
    if rays.shape[0] <= 3:
        return rays
    keep = []
    for i in range(rays.shape[0]):
        others = np.delete(rays, i, axis=0)
        _, resid = nnls(others.T, rays[i])
        if resid > 1e-9:
            keep.append(i)
    return rays[keep] if len(keep) >= 3 else rays


def _facet_normals(rays: np.ndarray) -> np.ndarray:
    """Inward facet normals of a pointed, full-dimensional 3d cone."""
    inside = rays.mean(axis=0)
    inside /= np.linalg.norm(inside)
    normals: list[np.ndarray] = []
    k = rays.shape[0]
    for i in range(k):
        for j in range(i + 1, k):
            nvec = np.cross(rays[i], rays[j])
            nn = np.linalg.norm(nvec)
            if nn <= 1e-12:
                continue
            nvec = nvec / nn
            side = float(nvec @ inside)
            if abs(side) <= 1e-12:
                continue
            if side < 0:
                nvec = -nvec
            if (rays @ nvec >= -1e-12).all():
                if not any(np.linalg.norm(nvec - m) <= 1e-9 for m in normals):
                    normals.append(nvec)
    if not normals:
        raise InvalidInput("hull cone has no facets; vertices are degenerate")
    return np.array(normals)


def region_contains(region: SphericalRegion, u, tol: float = GEOM_TOL) -> bool:
    return region.contains(u, tol=tol)


def cone_contains(region: SphericalRegion, v, tol: float = GEOM_TOL) -> bool:
    return region.cone_contains(v, tol=tol)


def iso_membership(region: SphericalRegion, a, tol: float = GEOM_TOL) -> bool:
    """Cone membership of a hermitian 2x2 matrix; the identity part is free."""
    coords = pauli_coords(a)
    return region.cone_contains(coords.v, tol=tol)


# --------------------------------------------------------------------------
# States


class PureStatePoint:
    """A projective qubit state, carried as its unit Bloch vector."""

    def __init__(self, bloch, xi=None):
        self.bloch = _unit(bloch, "Bloch vector", tol=1e-9)
        self.bloch.setflags(write=False)
        self.xi = None if xi is None else np.asarray(xi, dtype=complex)

    @classmethod
    def from_xi(cls, xi) -> "PureStatePoint":
        xi = np.asarray(xi, dtype=complex).reshape(-1)
        return cls(hopf(xi), xi=xi)

    @classmethod
    def from_bloch(cls, bloch) -> "PureStatePoint":
        return cls(bloch)

    @classmethod
    def from_json(cls, data: dict) -> "PureStatePoint":
        if "xi" in data:
            pairs = np.asarray(data["xi"], dtype=float)
            return cls.from_xi(pairs[:, 0] + 1j * pairs[:, 1])
        if "bloch" in data:
            return cls.from_bloch(data["bloch"])
        raise InvalidInput('state JSON needs "xi" or "bloch"')

    def to_json(self) -> dict:
        return {"bloch": self.bloch.tolist()}


class DensityState:
    """A 2x2 density matrix, carried as its Bloch vector of length <= 1."""

    def __init__(self, bloch):
        b = np.asarray(bloch, dtype=float).reshape(-1)
        if b.shape != (3,):
            raise DimensionMismatch(f"Bloch vector must have 3 entries, got {b.shape}")
        if np.linalg.norm(b) > 1.0 + 1e-12:
            raise InvalidInput("density Bloch vector must have norm <= 1")
        b.setflags(write=False)
        self.bloch = b

    def to_matrix(self) -> HermitianMatrix:
        return matrix_from_pauli(0.5, self.bloch / 2.0)

    @classmethod
    def from_matrix(cls, rho) -> "DensityState":
        coords = pauli_coords(rho)
        if abs(2.0 * coords.c - 1.0) > 1e-9:
            raise InvalidInput("density matrix must have unit trace")
        return cls(2.0 * coords.v)

    @classmethod
    def from_json(cls, data: dict) -> "DensityState":
        if "bloch" in data:
            return cls(data["bloch"])
        raise InvalidInput('density state JSON needs "bloch"')

    def to_json(self) -> dict:
        return {"bloch": self.bloch.tolist()}


def _bloch_relation(region: SphericalRegion, b1, b2, tol: float = GEOM_TOL) -> str:
    d = np.asarray(b2, dtype=float) - np.asarray(b1, dtype=float)
    if float(np.linalg.norm(d)) <= tol:
        return "equal"
    if region.dual_contains(d, tol=tol):
        return "less"
    if region.dual_contains(-d, tol=tol):
        return "greater"
    return "incomparable"


def pure_state_order(region: SphericalRegion, p: PureStatePoint, q: PureStatePoint, tol: float = GEOM_TOL) -> str:
    """Relation of two pure states under the region's cone.

    p is below q exactly when every region point pairs no higher with p
    than with q, which is the dual-cone test on the Bloch difference.
    """
    return _bloch_relation(region, p.bloch, q.bloch, tol=tol)


def state_order(region: SphericalRegion, rho: DensityState, sigma: DensityState, tol: float = GEOM_TOL) -> str:
    """Relation of two density states; restricts to pure_state_order on the sphere."""
    return _bloch_relation(region, rho.bloch, sigma.bloch, tol=tol)


def fubini_study(p: PureStatePoint, q: PureStatePoint) -> float:
    """Projective distance arccos(b1.b2)/2 in [0, pi/2]; pole to equator is pi/4."""
    return _angle(p.bloch, q.bloch) / 2.0


def transition_probability(p: PureStatePoint, q: PureStatePoint) -> float:
    """Squared overlap |<xi|eta>|^2 = cos^2 of the projective distance."""
    return float(np.cos(fubini_study(p, q)) ** 2)


# --------------------------------------------------------------------------
# Transversality and join coefficients


@dataclass(frozen=True)
class TransversalityResult:
    classification: str
    eigenvalues: tuple[complex, complex]
    axis: np.ndarray | None

    def to_json(self) -> dict:
        out: dict = {"classification": self.classification}
        out["eigenvalues"] = [[z.real, z.imag] for z in self.eigenvalues]
        if self.axis is not None:
            out["axis"] = self.axis.tolist()
        return out


def transversality(region: SphericalRegion, n, tol: float = GEOM_TOL) -> TransversalityResult:
    """Classify a normal 2x2 matrix against the region's cone.

    Diagonalize n with eigenvector columns ordered by descending
    eigenvalue (real part first, then imaginary part) and send the first
    column through the Hopf map to an axis u.  Membership of u alone means
    the second eigenvalue sits below the first, of -u alone the reverse,
    of both an incomparable two-point spectrum, of neither no transverse
    commutative subalgebra.  A one-point spectrum (within 1e-10) is
    reported as scalar rather than forced into one of the four cases.
    """
    n = np.asarray(n, dtype=complex)
    if n.shape != (2, 2):
        raise DimensionMismatch(f"need a 2x2 matrix, got {n.shape}")
    comm = n @ n.conj().T - n.conj().T @ n
    if np.max(np.abs(comm)) > 1e-9:
        raise NotNormal(f"matrix is {np.max(np.abs(comm)):.2e} away from normal")
    h_re = HermitianMatrix((n + n.conj().T) / 2.0)
    h_im = HermitianMatrix((n - n.conj().T) / 2.0j)
    dec_re = spectral(h_re)
    dec_im = spectral(h_im)
    if dec_re.eigenvalues[1] - dec_re.eigenvalues[0] > 1e-12:
        basis = dec_re.eigenvectors
    else:
        basis = dec_im.eigenvectors
    lams = [complex(basis[:, k].conj() @ n @ basis[:, k]) for k in range(2)]
    if abs(lams[0] - lams[1]) <= 1e-10:
        return TransversalityResult("scalar", (lams[0], lams[1]), None)
    order = sorted(range(2), key=lambda k: (-lams[k].real, -lams[k].imag))
    lam1, lam2 = lams[order[0]], lams[order[1]]
    xi = basis[:, order[0]]
    u = hopf(xi / np.linalg.norm(xi))
    in_plus = region.contains(u, tol=tol)
    in_minus = region.contains(-u, tol=tol)
    if in_plus and in_minus:
        tag = "incomparable_spectrum"
    elif in_plus:
        tag = "lambda2_below_lambda1"
    elif in_minus:
        tag = "lambda1_below_lambda2"
    else:
        tag = "not_transverse"
    return TransversalityResult(tag, (lam1, lam2), u)


def join_coeffs_from_difference(t: float, r: float) -> tuple[float, float]:
    """Join coefficients from the difference's halved trace t and traceless length r."""
    if r <= 1e-12:
        if abs(t) <= 1e-12:
            return 0.5, 0.0
        return (1.0, 0.0) if t > 0 else (0.0, 0.0)
    hi, lo = abs(t + r), abs(t - r)
    alpha = 0.5 + (hi - lo) / (4.0 * r)
    beta = (hi + lo) / 4.0 - t * (hi - lo) / (4.0 * r)
    return float(alpha), float(beta)


def join_coeffs(a, b) -> tuple[float, float]:
    """Coefficients with join(a, b) = alpha*a + (1-alpha)*b + beta*s0.

    Closed form from the difference d = a - b: with t the halved trace of
    d and r the length of its traceless part,
        alpha = 1/2 + (|t+r| - |t-r|) / (4r),
        beta  = (|t+r| + |t-r|) / 4 - t * (|t+r| - |t-r|) / (4r),
    guaranteeing alpha in [0, 1] and beta >= 0.  Comparable pairs (r = 0)
    degenerate to (1, 0) or (0, 0); equal matrices return (1/2, 0) by
    convention.
    """
    da = pauli_coords(a)
    db = pauli_coords(b)
    t = da.c - db.c
    r = float(np.linalg.norm(da.v - db.v))
    return join_coeffs_from_difference(t, r)


@dataclass(frozen=True)
class M2CoboundedWitness:
    a: HermitianMatrix
    b: HermitianMatrix
    k1: np.ndarray
    k2: np.ndarray
    norm_a: float
    norm_b: float
    norm_sum: float

    @property
    def slack(self) -> float:
        return self.norm_a + self.norm_b - self.norm_sum

    def to_json(self) -> dict:
        return {
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "k1": self.k1.tolist(),
            "k2": self.k2.tolist(),
            "norm_a": self.norm_a,
            "norm_b": self.norm_b,
            "norm_sum": self.norm_sum,
            "slack": self.slack,
        }


def _orthogonal_to(u: np.ndarray) -> np.ndarray:
    pick = np.zeros(3)
    pick[int(np.argmin(np.abs(u)))] = 1.0
    w = np.cross(u, pick)
    return w / np.linalg.norm(w)


def cobounded_witness(region: SphericalRegion) -> M2CoboundedWitness | None:
    """Two positive cone members breaking norm additivity.

    With distinct unit region points k1 and k2, the matrices s0 + k1.s and
    s0 + k2.s each have norm 2 while their sum has norm 2 + |k1 + k2| < 4.
    Any valid region has interior, so such a pair always exists.
    """
    if region.kind == "full":
        k1, k2 = np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, -1.0])
    elif region.kind == "cap":
        w = _orthogonal_to(region.center)
        k1 = np.cos(region.radius) * region.center + np.sin(region.radius) * w
        k2 = np.cos(region.radius) * region.center - np.sin(region.radius) * w
    else:
        rays = region.extreme_vertices
        gram = rays @ rays.T
        np.fill_diagonal(gram, np.inf)
        i, j = np.unravel_index(int(np.argmin(gram)), gram.shape)
        k1, k2 = rays[i], rays[j]
    if np.linalg.norm(k1 - k2) <= 1e-12:
        return None
    a = matrix_from_pauli(1.0, k1)
    b = matrix_from_pauli(1.0, k2)
    norm_sum = 2.0 + float(np.linalg.norm(k1 + k2))
    return M2CoboundedWitness(a, b, k1, k2, 2.0, 2.0, norm_sum)


def rotation_preserves(region: SphericalRegion, rot, tol: float = GEOM_TOL) -> bool:
    """Whether a rotation maps the region onto itself.

    Caps require the center to be fixed, hulls that the extreme vertices
    are permuted; the full sphere accepts every rotation.
    """
    rot = np.asarray(rot, dtype=float)
    if rot.shape != (3, 3):
        raise DimensionMismatch(f"rotation must be 3x3, got {rot.shape}")
    if np.max(np.abs(rot @ rot.T - np.eye(3))) > 1e-9 or abs(np.linalg.det(rot) - 1.0) > 1e-9:
        raise NotARotation("matrix is not orthogonal with determinant one")
    if region.kind == "full":
        return True
    if region.kind == "cap":
        return float(np.linalg.norm(rot @ region.center - region.center)) <= tol
    rays = region.extreme_vertices
    moved = rays @ rot.T
    used = [False] * rays.shape[0]
    for m in moved:
        hit = None
        for idx in range(rays.shape[0]):
            if not used[idx] and np.linalg.norm(m - rays[idx]) <= tol:
                hit = idx
                break
        if hit is None:
            return False
        used[hit] = True
    return True

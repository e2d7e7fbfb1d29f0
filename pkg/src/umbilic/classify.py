"""Point-wise surface classification: umbilical direction, pseudo/ortho
umbilicity, subgeodesic directions, trapping tags.

Every "= 0" test is a threshold ``tol * scale**p`` where ``p`` is the
polynomial degree of the tested quantity in the Weingarten operators and
``scale = 1 + |A_l| + |A_k|`` is taken in the un-boosted null frame, so that
verdicts do not depend on the boost gauge.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NotOrthoUmbilical
from .extrinsic import ExtrinsicState, WeingartenPair, shear2, sym_eig2
from .frames import NormalFrame

TAU_CLS = {"analytic": 1e-7, "fd": 1e-3}
SCAN_POINTS = 10_000
SQRT2 = np.sqrt(2.0)


def scale_of(pair: WeingartenPair) -> float:
    return 1.0 + float(np.linalg.norm(pair.A_l) + np.linalg.norm(pair.A_k))


def trace_free(a: np.ndarray) -> np.ndarray:
    return a - 0.5 * np.trace(a) * np.eye(2)


def commutator(pair: WeingartenPair) -> tuple[np.ndarray, float]:
    """[A_l, A_k] and its Frobenius norm."""
    c = pair.A_l @ pair.A_k - pair.A_k @ pair.A_l
    return c, float(np.linalg.norm(c))


def wedge_null(p: tuple[float, float], q: tuple[float, float]) -> float:
    """Coefficient of l^k in P^Q for P = p0 l + p1 k, Q = q0 l + q1 k.

    Invariant under boosts, so it is a frame-independent measure of parallelism.
    """
    return float(p[0] * q[1] - p[1] * q[0])


def umbilic_residual(pair: WeingartenPair, a: float, b: float) -> float:
    """|A_N - g(H, N)/2 1| for N = a l + b k, i.e. the trace-free part of A_N."""
    return float(np.linalg.norm(trace_free(pair.along(a, b))))


@dataclass(frozen=True)
class EigenRecord:
    lam: np.ndarray  # eigenvalues of A_k in the common basis
    nu: np.ndarray  # eigenvalues of A_l in the common basis
    basis: np.ndarray | None  # columns are the common eigenvectors
    reference: str  # which operator fixed the basis


@dataclass(frozen=True)
class UmbilicalResult:
    status: str  # TotallyUmbilical | UniqueDirection | None
    commutator_norm: float
    discriminant: float  # g(H,H) - 2 tr B
    causal_character: str | None
    null_coords: tuple[float, float] | None
    N_umb: np.ndarray | None
    eigen: EigenRecord | None
    scale: float
    tol: float

    @property
    def exists(self) -> bool:
        return self.status != "None"


def _causal(value: float, thresh: float) -> str:
    if value < -thresh:
        return "Timelike"
    if value > thresh:
        return "Spacelike"
    return "Null"


def umbilical_direction(pair: WeingartenPair, frame: NormalFrame | None = None,
                        tol: float = TAU_CLS["analytic"], scale: float | None = None) -> UmbilicalResult:
    """Unique normal direction along which A_N is proportional to the identity.

    Non-commuting operators admit none. Commuting operators are diagonalized in
    the common eigenbasis of whichever has the larger eigenvalue spread and
    N_umb = (lam1 - lam2) l - (nu1 - nu2) k.
    """
    s = scale_of(pair) if scale is None else scale
    _, cnorm = commutator(pair)
    trB = -2.0 * float(np.trace(pair.A_k @ pair.A_l))
    gHH = -2.0 * float(np.trace(pair.A_l) * np.trace(pair.A_k))
    disc = gHH - 2.0 * trB
    if cnorm >= tol * s * s:
        return UmbilicalResult("None", cnorm, disc, None, None, None, None, s, tol)

    spread_l, spread_k = shear2(pair.A_l), shear2(pair.A_k)
    ref = "A_l" if spread_l >= spread_k else "A_k"
    _, V = (pair.eig_l if ref == "A_l" else pair.eig_k)
    lam = np.einsum("ia,ij,ja->a", V, pair.A_k, V)
    nu = np.einsum("ia,ij,ja->a", V, pair.A_l, V)
    dlam, dnu = float(lam[0] - lam[1]), float(nu[0] - nu[1])
    eigen = EigenRecord(lam, nu, V, ref)
    if max(abs(dlam), abs(dnu)) < tol * s:
        return UmbilicalResult("TotallyUmbilical", cnorm, disc, None, None, None, eigen, s, tol)
    coords = (dlam, -dnu)
    vec = frame.from_null(*coords) if frame is not None else None
    return UmbilicalResult("UniqueDirection", cnorm, disc, _causal(disc, tol * s * s),
                           coords, vec, eigen, s, tol)


# ------------------------------------------------------------------ scan oracle


@dataclass(frozen=True)
class ScanResult:
    thetas: np.ndarray
    residuals: np.ndarray
    minima: list  # [(theta, residual, (a, b))] refined local minima, one per projective class

    def passing(self, thresh: float) -> list:
        return [m for m in self.minima if m[1] < thresh]


def _circle_coords(theta):
    c, s = np.cos(theta), np.sin(theta)
    return (c + s) / SQRT2, (c - s) / SQRT2


def scan_normal_circle(pair: WeingartenPair, n: int = SCAN_POINTS, refine: bool = True) -> ScanResult:
    """Brute-force umbilic residual over N = cos(t) u + sin(t) n, t in [0, pi).

    Independent of the eigenvalue formula: only linearity of N -> A_N is used.
    Local minima on the periodic grid are polished with a bounded scalar
    minimizer.
    """
    thetas = np.arange(n) * (np.pi / n)
    a, b = _circle_coords(thetas)
    Tl, Tk = trace_free(pair.A_l), trace_free(pair.A_k)
    T = a[:, None, None] * Tl + b[:, None, None] * Tk
    res = np.sqrt(np.einsum("nij,nij->n", T, T))
    left, right = np.roll(res, 1), np.roll(res, -1)
    idx = np.flatnonzero((res <= left) & (res <= right))
    step = np.pi / n

    def f(t):
        return umbilic_residual(pair, *_circle_coords(t))

    minima = []
    for i in idx:
        t0, r0 = thetas[i], res[i]
        if refine:
            # optimize the offset, not the angle: the bounded method's tolerance scales with |x|
            opt = minimize_scalar(lambda d: f(t0 + d), bounds=(-step, step), method="bounded",
                                  options={"xatol": 1e-14})
            if opt.fun < r0:
                t0, r0 = float(t0 + opt.x), float(opt.fun)
        t0 = float(np.mod(t0, np.pi))
        if any(min(abs(t0 - m[0]), np.pi - abs(t0 - m[0])) < 1e-6 for m in minima):
            continue
        minima.append((t0, float(r0), _circle_coords(t0)))
    return ScanResult(thetas, res, minima)


def circle_min_residual(pair: WeingartenPair) -> float:
    """Closed-form minimum of the scan: smallest singular value of [T_u, T_n]."""
    T = np.stack([trace_free(pair.A_u).ravel(), trace_free(pair.A_n).ravel()], axis=1)
    return float(np.linalg.svd(T, compute_uv=False)[-1])


# ----------------------------------------------------------------- point flags


@dataclass(frozen=True)
class PointClassification:
    minimal: bool
    totally_geodesic: bool
    totally_umbilical: bool
    pseudo_umbilical: bool | None  # None: not applicable at minimal points
    ortho_umbilical: bool | None
    subgeodesic_along: tuple[float, float] | None  # null coordinates of N
    subgeodesic_vector: np.ndarray | None
    dim_first_normal: int
    H_causal: str  # Zero | Timelike | Null | Spacelike
    H_orientation: str  # Future | Past | N/A
    expansion_signs: tuple[int, int]  # signs of tr A_l, tr A_k
    tags: tuple[str, ...]
    umbilical: UmbilicalResult
    joint: str
    # the three equivalent pseudo-umbilical tests, recorded separately
    ortho_via_weingarten: bool
    ortho_via_wedge: bool
    subgeodesic_exists: bool
    residuals: dict = field(default_factory=dict)

    def as_flags(self) -> dict:
        return {
            "minimal": self.minimal,
            "totally_geodesic": self.totally_geodesic,
            "totally_umbilical": self.totally_umbilical,
            "pseudo_umbilical": self.pseudo_umbilical,
            "ortho_umbilical": self.ortho_umbilical,
            "dim_first_normal": self.dim_first_normal,
            "H_causal": self.H_causal,
            "H_orientation": self.H_orientation,
            "umbilical_status": self.umbilical.status,
            "causal_character": self.umbilical.causal_character,
            "joint": self.joint,
        }


def _sign(x: float, thresh: float) -> int:
    return 0 if abs(x) < thresh else int(np.sign(x))


def _ii_samples(pair: WeingartenPair, n_dirs: int = 12) -> np.ndarray:
    """Null coordinates (a, b) of II(e_i, e_j) and of II(X, X) over sampled unit X."""
    a = -pair.A_k
    b = -pair.A_l
    out = [(a[0, 0], b[0, 0]), (a[0, 1], b[0, 1]), (a[1, 1], b[1, 1])]
    for t in np.arange(n_dirs) * np.pi / n_dirs:
        X = np.array([np.cos(t), np.sin(t)])
        out.append((X @ a @ X, X @ b @ X))
    return np.array(out)


def classify_pair(pair: WeingartenPair, tol: float = TAU_CLS["analytic"],
                  frame: NormalFrame | None = None, reference: WeingartenPair | None = None) -> PointClassification:
    """Classify one point from its null Weingarten pair.

    ``reference`` is the same pair in the un-boosted frame; it fixes the
    scale and the expansion thresholds. Defaults to ``pair``.
    """
    ref = pair if reference is None else reference
    s = scale_of(ref)
    t1, t2, t4 = tol * s, tol * s * s, tol * s**4
    tl, tk = float(np.trace(ref.A_l)), float(np.trace(ref.A_k))
    sl, sk = _sign(tl, t1), _sign(tk, t1)

    minimal = sl == 0 and sk == 0
    ii_max = float(max(np.abs(ref.A_l).max(), np.abs(ref.A_k).max()))
    totally_geodesic = ii_max < t1
    totally_umbilical = bool(max(np.sqrt(shear2(ref.A_l)), np.sqrt(shear2(ref.A_k))) < t1)

    # Casorati operator and pseudo-umbilicity
    B = -(pair.A_k @ pair.A_l + pair.A_l @ pair.A_k)
    B_tf = float(np.linalg.norm(trace_free(B)))
    B_disc = shear2(B)
    pseudo = None if minimal else bool(B_tf < t2)

    # ortho-umbilicity three ways
    A_star_H = -np.trace(pair.A_k) * pair.A_l + np.trace(pair.A_l) * pair.A_k
    a_star = float(np.linalg.norm(A_star_H))
    Hc = (-np.trace(pair.A_k), -np.trace(pair.A_l))
    samples = _ii_samples(pair)
    wedge_H = max(abs(wedge_null(p, Hc)) for p in samples)
    wedge_II = max(abs(wedge_null(p, q)) for p in samples for q in samples)
    ortho_A = bool(a_star < t2)
    ortho_wedge = bool(wedge_H < t2)
    sub_exists = bool(wedge_II < t2)
    ortho = None if minimal else ortho_A

    ref_samples = _ii_samples(ref)
    if totally_geodesic:
        dim = 0
    else:
        dim = 1 if sub_exists else 2
    sub_dir = sub_vec = None
    if dim == 1:
        i = int(np.argmax(np.hypot(ref_samples[:, 0], ref_samples[:, 1])))
        p = samples[i]
        sub_dir = (float(p[0]), float(p[1]))
        if frame is not None:
            sub_vec = frame.from_null(*sub_dir)

    # causal class and orientation of H = -tr(A_k) l - tr(A_l) k
    if minimal:
        Hcls, orient = "Zero", "N/A"
    elif sl == 0 or sk == 0:
        Hcls = "Null"
        orient = "Future" if (sl + sk) < 0 else "Past"
    elif sl == sk:
        Hcls = "Timelike"
        orient = "Future" if sl < 0 else "Past"
    else:
        Hcls, orient = "Spacelike", "N/A"

    tags = []
    if sl == 0 or sk == 0:
        tags.append("MOTS-point")
    if Hcls == "Null":
        tags += ["marginally-trapped-point", "null-star-point"]
    if Hcls in ("Null", "Timelike"):
        tags.append("weakly-trapped-point")
    if Hcls == "Timelike":
        tags.append("trapped-point")

    umb = umbilical_direction(pair, frame, tol, scale=s)
    joint = _joint(pair, ref, pseudo, ortho, tol, s)
    residuals = {
        "commutator": umb.commutator_norm,
        "A_starH": a_star,
        "wedge_II_H": wedge_H,
        "wedge_II_II": wedge_II,
        "B_tracefree": B_tf,
        "B_discriminant": B_disc,
        "scale": s,
    }
    return PointClassification(
        minimal, totally_geodesic, totally_umbilical, pseudo, ortho, sub_dir, sub_vec, dim,
        Hcls, orient, (sl, sk), tuple(tags), umb, joint, ortho_A, ortho_wedge, sub_exists, residuals)


def classify_point(state: ExtrinsicState, tol: float | None = None) -> PointClassification:
    tol = TAU_CLS[state.path] if tol is None else tol
    return classify_pair(state.pair, tol, state.frame, state.canonical_pair)


# ------------------------------------------------------- ortho-umbilical shape


@dataclass(frozen=True)
class OrthoKappa:
    kappa: np.ndarray
    det: float
    trace_residual: float
    trB_residual: float  # tr B - g(H,H)(1 - 2 det kappa)
    B_residual: float  # |B - g(H,H) kappa^2|


def ortho_kappa(pair: WeingartenPair, tol: float = TAU_CLS["analytic"],
                reference: WeingartenPair | None = None) -> OrthoKappa:
    """Unit-trace operator kappa with II = kappa(.,.) H at an ortho-umbilical point."""
    cls = classify_pair(pair, tol, reference=reference)
    if cls.minimal or not cls.ortho_umbilical:
        raise NotOrthoUmbilical("point is minimal or not ortho-umbilical")
    tl, tk = np.trace(pair.A_l), np.trace(pair.A_k)
    A1, t1 = (pair.A_l, tl) if abs(tl) >= abs(tk) else (pair.A_k, tk)
    kappa = A1 / t1
    det = float(np.linalg.det(kappa))
    gHH = -2.0 * float(tl * tk)
    B = -(pair.A_k @ pair.A_l + pair.A_l @ pair.A_k)
    return OrthoKappa(kappa, det, abs(float(np.trace(kappa)) - 1.0),
                      abs(float(np.trace(B)) - gHH * (1.0 - 2.0 * det)),
                      float(np.linalg.norm(B - gHH * kappa @ kappa)))


def _joint(pair, ref, pseudo, ortho, tol, s) -> str:
    if not (pseudo and ortho):
        return "NotBoth"
    tl, tk = np.trace(ref.A_l), np.trace(ref.A_k)
    A1, t1 = (ref.A_l, tl) if abs(tl) >= abs(tk) else (ref.A_k, tk)
    kappa = A1 / t1
    if np.linalg.norm(2.0 * kappa - np.eye(2)) < tol:
        return "TotallyUmbilicalCase"
    B = -(pair.A_k @ pair.A_l + pair.A_l @ pair.A_k)
    gHH = -2.0 * float(tl * tk)
    if abs(gHH) < tol * s * s and np.linalg.norm(B) < tol * s * s:
        return "NullHSubgeodesicMOTSCase"
    return "NotBoth"


def pseudo_ortho_joint_check(state_or_pair, tol: float | None = None) -> str:
    """TotallyUmbilicalCase, NullHSubgeodesicMOTSCase, or NotBoth."""
    if isinstance(state_or_pair, ExtrinsicState):
        return classify_point(state_or_pair, tol).joint
    return classify_pair(state_or_pair, TAU_CLS["analytic"] if tol is None else tol).joint

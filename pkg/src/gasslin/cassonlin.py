"""SU(2) fixed-point enumeration and the multivariable Casson-Lin count.

A colored braid acts on tuples of SU(2) elements by conjugation swaps.
Restricting to tuples whose strand traces are 2cos(alpha_{c_i}) and
quotienting by conjugation, the irreducible fixed classes of a (c,c)-
braid form a finite signed set; h is the sum of the signs.

Everything here is numerical: a Levenberg-Marquardt multistart finds
fixed tuples on the product of 2-spheres, trace fingerprints merge
conjugate solutions, and the sign of each class is the orientation of
diagonal-plus-graph tangent frames against the ambient level-set
inside the conjugation quotient.  The global orientation chain is
pinned by one calibration constant certified against the trefoil.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .alexander import casson_lin_defined, potential
from .braids import ColoredBraidWord
from .errors import (
    InternalMismatch,
    NonTransverse,
    NotDefinedHere,
    PreconditionViolated,
)
from .laurent import TorusPoint

RESIDUAL_TOL = 1e-10
FINGERPRINT_TOL = 1e-6
ABELIAN_TOL = 1e-6
CONDITION_LIMIT = 1e8
DEFAULT_RESTARTS = 200
SATURATION_BATCHES = 3
MAX_BATCHES = 12

# Global sign aligning the frame-determinant convention below with the
# normalization h(trefoil, pi/2) = -sigma(-1)/2 = +1.  Certified by the
# calibration test; all other sign statements are relative to it.
ORIENTATION_CALIBRATION = -1

_QI = np.array([0.0, 1.0, 0.0, 0.0])
_QJ = np.array([0.0, 0.0, 1.0, 0.0])
_QK = np.array([0.0, 0.0, 0.0, 1.0])

qmul = kernels.qmul
qconj = kernels.qconj


class SU2Elem:
    """A unit quaternion with matrix and polar views."""

    __slots__ = ("q",)

    def __init__(self, q: Sequence[float]):
        arr = np.asarray(q, dtype=np.float64)
        if arr.shape != (4,):
            raise ValueError("expected 4 components")
        if abs(np.dot(arr, arr) - 1.0) > 1e-12:
            raise ValueError("not a unit quaternion")
        self.q = arr

    @classmethod
    def from_polar(cls, theta: float, axis: Sequence[float]) -> "SU2Elem":
        ax = np.asarray(axis, dtype=np.float64)
        ax = ax / np.linalg.norm(ax)
        return cls(np.concatenate([[math.cos(theta)], math.sin(theta) * ax]))

    @property
    def matrix(self) -> np.ndarray:
        a, b, c, d = self.q
        return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])

    @property
    def trace(self) -> float:
        return 2.0 * float(self.q[0])

    @property
    def polar(self) -> Tuple[float, np.ndarray]:
        w = float(np.clip(self.q[0], -1.0, 1.0))
        s = math.sqrt(max(0.0, 1.0 - w * w))
        if s < 1e-12:
            raise ValueError("polar form undefined at trace +-2")
        return math.acos(w), self.q[1:] / s

    def __mul__(self, other: "SU2Elem") -> "SU2Elem":
        return SU2Elem(qmul(self.q, other.q))


def strand_angles(b: ColoredBraidWord, alphas: Sequence[float]) -> np.ndarray:
    if len(alphas) != b.mu:
        raise PreconditionViolated(
            "expected %d angles, got %d" % (b.mu, len(alphas))
        )
    for a in alphas:
        if not 0.0 < float(a) < math.pi:
            raise PreconditionViolated("angles must lie strictly inside (0, pi)")
    return np.array([float(alphas[c - 1]) for c in b.colors])


def rep_from_axes(thetas: np.ndarray, Q: np.ndarray) -> np.ndarray:
    X = np.empty((len(thetas), 4))
    X[:, 0] = np.cos(thetas)
    X[:, 1:] = np.sin(thetas)[:, None] * Q
    return X


@dataclass
class RepPoint:
    """Tuple of SU(2) elements with per-strand target traces."""

    X: np.ndarray
    thetas: np.ndarray
    tolerance: float = 1e-9

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64)
        self.thetas = np.asarray(self.thetas, dtype=np.float64)
        if self.trace_defect() > self.tolerance:
            raise PreconditionViolated(
                "traces off the target spheres by %.3e" % self.trace_defect()
            )

    def trace_defect(self) -> float:
        return float(np.max(np.abs(self.X[:, 0] - np.cos(self.thetas))))

    def axes(self) -> np.ndarray:
        return self.X[:, 1:] / np.sin(self.thetas)[:, None]


def _hat_word(b: ColoredBraidWord) -> tuple:
    # The action sends X to the tuple of values of the rewritten generators.
    # Rewrites compose right to left, so the kernel (which applies letter
    # transforms sequentially) must receive the word reversed; otherwise the
    # result is the action of the reversed braid.
    return tuple(reversed(b.word))


def braid_act_su2(X: np.ndarray, b: ColoredBraidWord) -> np.ndarray:
    """Right action of the braid word on an (n, 4) quaternion array."""
    arr = X.X if isinstance(X, RepPoint) else np.asarray(X, dtype=np.float64)
    return kernels.apply_word(_hat_word(b), arr)


def abelian_rep(
    alphas: Sequence[float],
    colors: Sequence[int],
    eps: Optional[Sequence[int]] = None,
) -> np.ndarray:
    """The diagonal tuple with X_i = exp(eps_{c_i} * i * alpha_{c_i})."""
    mu = max(colors)
    if eps is None:
        eps = [1] * mu
    if len(eps) != mu or any(e not in (1, -1) for e in eps):
        raise PreconditionViolated("eps must be a +-1 vector, one entry per color")
    X = np.zeros((len(colors), 4))
    for i, c in enumerate(colors):
        a = float(alphas[c - 1])
        X[i, 0] = math.cos(a)
        X[i, 1] = eps[c - 1] * math.sin(a)
    return X


def is_abelian(X: np.ndarray, tol: float = ABELIAN_TOL) -> bool:
    arr = X.X if isinstance(X, RepPoint) else np.asarray(X, dtype=np.float64)
    n = arr.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            comm = qmul(arr[i], arr[j]) - qmul(arr[j], arr[i])
            if np.linalg.norm(comm) >= tol:
                return False
    return True


def distance_to_abelian(X: np.ndarray, thetas: np.ndarray) -> float:
    """Euclidean distance in quaternion n-space to the nearest common-axis
    tuple with the same strand angles."""
    arr = np.asarray(X, dtype=np.float64)
    w = np.sin(thetas)
    Q = arr[:, 1:] / w[:, None]
    n = arr.shape[0]
    total = 2.0 * float(np.sum(w ** 2))
    best = math.inf
    for deltas in product((1.0, -1.0), repeat=n):
        M = np.sum((w ** 2 * np.array(deltas))[:, None] * Q, axis=0)
        d2 = total - 2.0 * float(np.linalg.norm(M))
        best = min(best, max(0.0, d2))
    return math.sqrt(best)


def _perp_frame(q3: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Deterministic orthonormal pair (u, v) with (q3, u, v) right-handed."""
    a = int(np.argmin(np.abs(q3)))
    u = np.cross(np.eye(3)[a], q3)
    u = u / np.linalg.norm(u)
    v = np.cross(q3, u)
    return u, v


def _det4(c0, c1, c2, c3) -> float:
    return float(np.linalg.det(np.column_stack([c0, c1, c2, c3])))


def _oriented_sphere_frame(Xq: np.ndarray, theta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Positively oriented tangent frame of the trace sphere at Xq.

    The sphere {tr = 2cos(theta)} bounds the region {tr > 2cos(theta)};
    its orientation is the boundary orientation with SU(2) carrying the
    left-invariant (i, j, k) orientation.
    """
    s = math.sin(theta)
    q3 = Xq[1:] / s
    u3, v3 = _perp_frame(q3)
    u = np.concatenate([[0.0], u3])
    v = np.concatenate([[0.0], v3])
    nu = math.cos(theta) * Xq - np.array([1.0, 0.0, 0.0, 0.0])
    d_frame = _det4(nu, u, v, Xq)
    d_ref = _det4(qmul(Xq, _QI), qmul(Xq, _QJ), qmul(Xq, _QK), Xq)
    if d_frame * d_ref < 0:
        u, v = v, u
    return u, v


def _sphere_frames(X: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """(2n, 4) array of oriented tangent frame vectors, two per strand."""
    n = X.shape[0]
    frames = np.zeros((2 * n, 4))
    for i in range(n):
        u, v = _oriented_sphere_frame(X[i], float(thetas[i]))
        frames[2 * i] = u
        frames[2 * i + 1] = v
    return frames


def _residual(word, X: np.ndarray) -> np.ndarray:
    XB = kernels.apply_word(word, X)
    return (XB[:, 1:] - X[:, 1:]).ravel()


def _newton_solve(word, thetas: np.ndarray, Q0: np.ndarray, max_iter: int = 80):
    """Levenberg-Marquardt on the product of axis spheres.

    Returns (Q, final residual inf-norm, converged flag).
    """
    n = len(thetas)
    Q = Q0.copy()
    lam = 1e-3
    X = rep_from_axes(thetas, Q)
    r = _residual(word, X)
    rnorm = np.linalg.norm(r)
    for it in range(max_iter):
        if np.max(np.abs(r)) < 1e-13:
            break
        # quadratic convergence kicks in within a few steps near a root;
        # a start still far off after this many steps will not land
        if it == 25 and rnorm > 1e-6:
            break
        frames = _sphere_frames(X, thetas)
        dX = np.zeros((n, 2 * n, 4))
        for l in range(2 * n):
            dX[l // 2, l] = frames[l]
        _, dout = kernels.apply_word_jac(word, X, dX)
        J = np.empty((3 * n, 2 * n))
        for l in range(2 * n):
            col = dout[:, l, 1:].copy()
            col[l // 2] -= frames[l][1:]
            J[:, l] = col.ravel()
        A = J.T @ J
        g = J.T @ r
        improved = False
        for _ in range(8):
            try:
                delta = np.linalg.solve(A + lam * np.eye(2 * n), -g)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            Qn = Q + (frames[:, 1:].reshape(n, 2, 3) * delta.reshape(n, 2, 1)).sum(axis=1)
            Qn = Qn / np.linalg.norm(Qn, axis=1)[:, None]
            Xn = rep_from_axes(thetas, Qn)
            rn = _residual(word, Xn)
            if np.linalg.norm(rn) < rnorm:
                Q, X, r = Qn, Xn, rn
                rnorm = np.linalg.norm(rn)
                lam = max(lam / 3.0, 1e-12)
                improved = True
                break
            lam *= 10.0
        if not improved:
            break
    res = float(np.max(np.abs(_residual(word, rep_from_axes(thetas, Q)))))
    return Q, res, res < RESIDUAL_TOL


def _fingerprint(X: np.ndarray) -> np.ndarray:
    n = X.shape[0]
    vals = []
    for i, j in combinations(range(n), 2):
        vals.append(2.0 * qmul(X[i], X[j])[0])
    for i, j, k in combinations(range(n), 3):
        vals.append(2.0 * qmul(qmul(X[i], X[j]), X[k])[0])
        vals.append(2.0 * qmul(qmul(X[i], X[k]), X[j])[0])
    prod = X[0]
    for i in range(1, n):
        prod = qmul(prod, X[i])
    vals.append(2.0 * prod[0])
    return np.array(vals)


def _rotation_to(src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Unit quaternion whose conjugation rotates unit vector src to dst."""
    c = float(np.dot(src, dst))
    axis = np.cross(src, dst)
    norm = np.linalg.norm(axis)
    if norm < 1e-12:
        if c > 0:
            return np.array([1.0, 0.0, 0.0, 0.0])
        axis = _perp_frame(src)[0]
        return np.concatenate([[0.0], axis])
    angle = math.atan2(norm, c)
    axis = axis / norm
    return np.concatenate([[math.cos(angle / 2.0)], math.sin(angle / 2.0) * axis])


def _conjugate_tuple(X: np.ndarray, g: np.ndarray) -> np.ndarray:
    gc = qconj(g)
    return np.array([qmul(qmul(g, x), gc) for x in X])


def canonicalize(X: np.ndarray, thetas: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Conjugate so the first axis is (1,0,0) and the first strand whose
    matrix off-diagonal entry is nonzero has it rotated to positive real."""
    arr = np.asarray(X, dtype=np.float64)
    q1 = arr[0, 1:] / np.sin(thetas[0])
    g = _rotation_to(q1, np.array([1.0, 0.0, 0.0]))
    out = _conjugate_tuple(arr, g)
    pivot = None
    for m in range(1, arr.shape[0]):
        if math.hypot(out[m, 2], out[m, 3]) > tol:
            pivot = m
            break
    if pivot is None:
        raise PreconditionViolated("tuple is abelian, no canonical form")
    phi = math.atan2(out[pivot, 3], out[pivot, 2])
    # conjugation by exp(-phi/2 * i) rotates every (c, d) pair by -phi
    g2 = np.array([math.cos(phi / 2.0), -math.sin(phi / 2.0), 0.0, 0.0])
    out = _conjugate_tuple(out, g2)
    return out


@dataclass
class RepClass:
    """Canonical representative of an irreducible fixed conjugacy class."""

    rep: np.ndarray
    thetas: np.ndarray
    fingerprint: np.ndarray
    residual: float
    cond: float
    margin: float
    abelian_gap: float

    def trace_of(self, indices: Sequence[int]) -> float:
        prod = self.rep[indices[0]]
        for i in indices[1:]:
            prod = qmul(prod, self.rep[i])
        return 2.0 * float(prod[0])


@dataclass
class ClassRecord:
    rep_class: RepClass
    sign: int
    residual: float
    cond: float


@dataclass
class FixedPointResult:
    classes: List[ClassRecord]
    h: int
    diagnostics: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.h != sum(rec.sign for rec in self.classes):
            raise InternalMismatch("h does not match the sum of signs")


def _graph_differential(word, X: np.ndarray, frames: np.ndarray) -> np.ndarray:
    """Differential of the braid action in the oriented sphere frames."""
    n = X.shape[0]
    dX = np.zeros((n, 2 * n, 4))
    for l in range(2 * n):
        dX[l // 2, l] = frames[l]
    _, dout = kernels.apply_word_jac(word, X, dX)
    D = np.empty((2 * n, 2 * n))
    for m in range(2 * n):
        D[m] = dout[m // 2, :, :] @ frames[m]
    return D


def _transversality(word, X: np.ndarray, thetas: np.ndarray):
    """(cond, margin) of the linearized fixed-point equation modulo the
    conjugation orbit; raises NonTransverse past the condition limit."""
    n = X.shape[0]
    frames = _sphere_frames(X, thetas)
    D = _graph_differential(word, X, frames)
    s = np.linalg.svd(D - np.eye(2 * n), compute_uv=False)
    k = 2 * n - 3
    margin = float(s[k - 1]) if k >= 1 else math.inf
    cond = float(s[0] / s[k - 1]) if k >= 1 and s[k - 1] > 0 else math.inf
    if cond > CONDITION_LIMIT:
        raise NonTransverse(
            "linearization condition %.2e exceeds %.0e; perturb alpha by ~1e-3"
            % (cond, CONDITION_LIMIT)
        )
    return cond, margin


def find_fixed_classes(
    b: ColoredBraidWord,
    alphas: Sequence[float],
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_batches: int = MAX_BATCHES,
) -> Tuple[List[RepClass], Dict[str, object]]:
    """Multistart enumeration of irreducible fixed classes.

    Stops once three consecutive batches of starts add no new class;
    completeness is heuristic and the saturation state is reported.
    """
    if not b.is_cc():
        raise PreconditionViolated("the braid must preserve its coloring")
    if not casson_lin_defined(b, alphas):
        raise NotDefinedHere(
            "Alexander polynomial vanishes on S(alpha); the count is undefined"
        )
    thetas = strand_angles(b, alphas)
    word = _hat_word(b)
    n = b.n
    rng = np.random.default_rng(seed)
    classes: List[RepClass] = []
    collisions = 0
    batches = 0
    quiet = 0
    total_starts = 0
    while batches < max_batches and quiet < SATURATION_BATCHES:
        new_found = 0
        for _ in range(restarts):
            total_starts += 1
            Q0 = rng.standard_normal((n, 3))
            Q0 = Q0 / np.linalg.norm(Q0, axis=1)[:, None]
            Q, res, ok = _newton_solve(word, thetas, Q0)
            if not ok:
                continue
            X = rep_from_axes(thetas, Q)
            if is_abelian(X):
                continue
            fp = _fingerprint(X)
            known = False
            for cl in classes:
                if np.max(np.abs(cl.fingerprint - fp)) < FINGERPRINT_TOL:
                    known = True
                    collisions += 1
                    break
            if known:
                continue
            cond, margin = _transversality(word, X, thetas)
            classes.append(
                RepClass(
                    rep=canonicalize(X, thetas),
                    thetas=thetas.copy(),
                    fingerprint=fp,
                    residual=res,
                    cond=cond,
                    margin=margin,
                    abelian_gap=distance_to_abelian(X, thetas),
                )
            )
            new_found += 1
        batches += 1
        quiet = quiet + 1 if new_found == 0 else 0
    diagnostics = {
        "seed": seed,
        "restarts_per_batch": restarts,
        "batches": batches,
        "total_starts": total_starts,
        "saturated": quiet >= SATURATION_BATCHES,
        "collisions": collisions,
        "backend": kernels.BACKEND,
    }
    return classes, diagnostics


def intersection_sign(
    cls: RepClass,
    b: ColoredBraidWord,
    alphas: Sequence[float],
    orientation: str = "standard",
) -> int:
    """Local sign of the diagonal against the braid graph at the class.

    All frames live in the product of trace spheres sitting inside
    quaternion 2n-space; the comparison happens in the tangent space of
    the level set {prod(X) = prod(Y)} with the conjugation orbit
    quotiented out, orbit directions listed first.
    """
    if orientation not in ("standard", "reversed"):
        raise ValueError("orientation must be standard or reversed")
    thetas = strand_angles(b, alphas)
    X = cls.rep
    n = b.n
    frames = _sphere_frames(X, thetas)

    # Differential of f(X, Y) = prod(X) * prod(Y)^{-1} on the 4n product
    # frame directions, expressed in the (i, j, k) basis at 1.
    pref = [np.array([1.0, 0.0, 0.0, 0.0])]
    for i in range(n):
        pref.append(qmul(pref[-1], X[i]))
    suff = [np.array([1.0, 0.0, 0.0, 0.0])]
    for i in range(n - 1, -1, -1):
        suff.insert(0, qmul(X[i], suff[0]))
    P = pref[-1]
    Pc = qconj(P)
    Mf = np.empty((3, 4 * n))
    for l in range(2 * n):
        i = l // 2
        df = qmul(qmul(pref[i], frames[l]), qmul(suff[i + 1], Pc))
        if abs(df[0]) > 1e-7:
            raise InternalMismatch("level-set differential left su(2)")
        Mf[:, l] = df[1:]
        Mf[:, 2 * n + l] = -df[1:]

    U, S, Vt = np.linalg.svd(Mf)
    if S[-1] < 1e-8:
        raise NonTransverse("product map is not a submersion at this class")
    K = Vt[3:].T
    W, *_ = np.linalg.lstsq(Mf, np.eye(3), rcond=None)
    if np.linalg.det(np.column_stack([K, W])) < 0:
        K[:, 0] = -K[:, 0]

    # conjugation orbit, both in ambient coordinates and in the slice
    omega = np.empty((2 * n, 3))
    zK = np.empty((4 * n - 3, 3))
    for col, xi in enumerate((_QI, _QJ, _QK)):
        w = np.array([qmul(xi, X[i]) - qmul(X[i], xi) for i in range(n)])
        for l in range(2 * n):
            omega[l, col] = float(np.dot(w[l // 2], frames[l]))
        z = np.concatenate([omega[:, col], omega[:, col]])
        zK[:, col] = K.T @ z
        if abs(np.linalg.norm(zK[:, col]) - np.linalg.norm(z)) > 1e-6 * (
            1.0 + np.linalg.norm(z)
        ):
            raise InternalMismatch("orbit direction fell outside the level set")

    D = _graph_differential(_hat_word(b), X, frames)
    if np.max(np.abs((D - np.eye(2 * n)) @ omega)) > 1e-6:
        raise InternalMismatch("orbit directions are not fixed by the linearization")

    Uo, So, Vot = np.linalg.svd(omega)
    Lq = Uo[:, 3:]
    if np.linalg.det(np.column_stack([omega, Lq])) < 0:
        Lq[:, -1] = -Lq[:, -1]

    lam_cols = np.vstack([Lq, Lq])
    gam_cols = np.vstack([Lq, D @ Lq])
    F = np.column_stack([zK, K.T @ lam_cols, K.T @ gam_cols])
    det = np.linalg.det(F)
    if abs(det) < 1e-12:
        raise NonTransverse("degenerate intersection frame")
    sign = 1 if det > 0 else -1
    if orientation == "reversed":
        sign = -sign
    return ORIENTATION_CALIBRATION * sign


def casson_lin(
    b: ColoredBraidWord,
    alphas: Sequence[float],
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    max_batches: int = MAX_BATCHES,
) -> FixedPointResult:
    """Signed count of irreducible SU(2) fixed classes of the braid."""
    classes, diagnostics = find_fixed_classes(
        b, alphas, seed=seed, restarts=restarts, max_batches=max_batches
    )
    records = []
    for cl in classes:
        sign = intersection_sign(cl, b, alphas)
        records.append(ClassRecord(cl, sign, cl.residual, cl.cond))
    diagnostics["margin_min"] = min((c.margin for c in classes), default=math.inf)
    diagnostics["orientation"] = "boundary-of-trace-supergraph, orbit-first quotient"
    diagnostics["calibration"] = ORIENTATION_CALIBRATION
    return FixedPointResult(records, sum(r.sign for r in records), diagnostics)


def long_differential_check(
    b: ColoredBraidWord,
    alphas: Sequence[float],
    eps: Sequence[int],
    step: float = 1e-5,
) -> dict:
    """Finite-difference linearization at the diagonal tuple, split into
    the circle-direction block and the complex block.

    The first must be the permutation matrix of the braid (the colored
    Gassner matrix at all variables 1) and the second the colored
    Gassner matrix at omega_eps = (exp(2 i eps_k alpha_k)).  Tangent
    vectors are right-translated to the Lie algebra and the off-circle
    plane is read as the conjugate complex coordinate; with the naive
    left-translated unconjugated reading the block comes out conjugated
    and rescaled by strand-dependent phases instead.
    """
    from .gassner import gassner_unreduced

    if not b.is_cc():
        raise PreconditionViolated("the braid must preserve its coloring")
    thetas = strand_angles(b, alphas)
    n = b.n
    X0 = abelian_rep(alphas, b.colors, eps)
    word = _hat_word(b)

    J = np.empty((3 * n, 3 * n))
    basis = (_QI, _QJ, _QK)
    for m in range(n):
        for a, xi in enumerate(basis):
            plus = X0.copy()
            minus = X0.copy()
            rot = np.concatenate([[math.cos(step)], math.sin(step) * xi[1:]])
            plus[m] = qmul(rot, X0[m])
            minus[m] = qmul(qconj(rot), X0[m])
            diff = (kernels.apply_word(word, plus) - kernels.apply_word(word, minus)) / (
                2.0 * step
            )
            for l in range(n):
                out = qmul(diff[l], qconj(X0[l]))
                J[3 * l : 3 * l + 3, 3 * m + a] = out[1:]

    P = np.array([[J[3 * l, 3 * m] for m in range(n)] for l in range(n)])
    C = np.empty((n, n), dtype=np.complex128)
    conform = 0.0
    for l in range(n):
        for m in range(n):
            R = J[3 * l + 1 : 3 * l + 3, 3 * m + 1 : 3 * m + 3]
            C[l, m] = R[0, 0] + 1j * R[1, 0]
            conform = max(
                conform, abs(R[1, 1] - R[0, 0]), abs(R[1, 0] + R[0, 1])
            )
    offblock = 0.0
    for l in range(n):
        for m in range(n):
            offblock = max(
                offblock,
                float(np.max(np.abs(J[3 * l, 3 * m + 1 : 3 * m + 3]))),
                float(np.max(np.abs(J[3 * l + 1 : 3 * l + 3, 3 * m : 3 * m + 1]))),
            )

    B = gassner_unreduced(b, route="block")
    ones = TorusPoint([1.0] * b.mu, tolerance=1e-6)
    P_ref = B.evaluate(ones).real
    omega_eps = TorusPoint.from_sqrts(
        [np.exp(1j * eps[k] * float(alphas[k])) for k in range(b.mu)]
    )
    C_ref = B.evaluate(omega_eps)

    perm_err = float(np.max(np.abs(P - P_ref))) / (1.0 + float(np.max(np.abs(P_ref))))
    gassner_err = float(np.max(np.abs(C - C_ref))) / (1.0 + float(np.max(np.abs(C_ref))))
    return {
        "braid": {"strands": b.n, "colors": list(b.colors), "word": list(b.word)},
        "alphas": [float(a) for a in alphas],
        "eps": [int(e) for e in eps],
        "perm_rel_err": perm_err,
        "gassner_rel_err": gassner_err,
        "conjugate_linearity_defect": float(conform),
        "circle_offblock": float(offblock),
        "pass": perm_err < 1e-6 and gassner_err < 1e-6,
    }


def _potential_ratio(pot_plus, pot, z: TorusPoint) -> complex:
    if (pot_plus.denominator is None) != (pot.denominator is None):
        raise PreconditionViolated("potential representations do not match")
    if pot_plus.denominator is None:
        num = pot_plus.evaluate_at_sqrt(z)
        den = pot.evaluate_at_sqrt(z)
    else:
        num = pot_plus.numerator.evaluate(z)
        den = pot.numerator.evaluate(z)
    if abs(den) < 1e-9 * (1.0 + abs(num)):
        raise PreconditionViolated("potential of the base link vanishes at a test point")
    return num / den


def crossing_delta(
    b: ColoredBraidWord,
    alphas: Sequence[float],
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> dict:
    """Predicted and observed jump of h under one negative-to-positive
    crossing change, realized by prepending a full positive twist of the
    first two strands.

    The prediction counts sign changes of the potential ratio over the
    half family of evaluation points with eps_j = +1 for the color j of
    the changed strands, using the coherent roots exp(i eps_k alpha_k).
    """
    if b.n < 2:
        raise PreconditionViolated("need at least two strands")
    if b.colors[0] != b.colors[1]:
        raise PreconditionViolated("the first two strands must share a color")
    j = b.colors[0]
    mu = b.mu
    aj = float(alphas[j - 1])
    if abs(np.exp(4 * 1j * aj) - 1.0) < 1e-9:
        raise PreconditionViolated("omega_j is a fourth root of unity (alpha_j = pi/2)")
    total = sum(float(alphas[c - 1]) for c in b.colors)
    if abs(np.exp(2 * 1j * total) - 1.0) < 1e-9:
        raise PreconditionViolated("product of the strand coordinates equals 1")

    b_plus = ColoredBraidWord(b.n, b.colors, (1, 1) + tuple(b.word))
    pot = potential(b)
    pot_plus = potential(b_plus)

    points = []
    for eps in product((1, -1), repeat=mu):
        if eps[j - 1] != 1:
            continue
        sqrts = [np.exp(1j * eps[k] * float(alphas[k])) for k in range(mu)]
        points.append((eps, TorusPoint.from_sqrts(sqrts)))

    ratios = []
    predicted = 0
    for eps, z in points:
        ratio = _potential_ratio(pot_plus, pot, z)
        if abs(ratio.imag) > 1e-9 * (1.0 + abs(ratio)):
            raise PreconditionViolated(
                "potential ratio is not real at eps=%s (imag %.3e)" % (eps, ratio.imag)
            )
        if abs(ratio.real) < 1e-12:
            raise PreconditionViolated("potential ratio vanishes at eps=%s" % (eps,))
        ratios.append(ratio.real)
        if ratio.real < 0:
            predicted += 1

    res_plus = casson_lin(b_plus, alphas, seed=seed, restarts=restarts)
    res = casson_lin(b, alphas, seed=seed, restarts=restarts)
    observed = res_plus.h - res.h
    return {
        "predicted": predicted,
        "observed": observed,
        "ratios": ratios,
        "h_plus": res_plus.h,
        "h_base": res.h,
        "match": predicted == observed,
    }

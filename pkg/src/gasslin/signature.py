"""Multivariable signatures and nullities from generalized Seifert matrices.

A C-complex for a mu-colored link yields one integer matrix A^eps per
sign vector eps in {+1,-1}^mu, subject to A^{-eps} = (A^eps)^T.  The
Hermitian form at omega in the punctured torus is

    H(omega) = sum_eps prod_i (1 - conj(omega_i)^{eps_i}) * A^eps

and sigma, eta are its signature and nullity.  The matrices are input
data: this module ships a few hand-derived systems (Hopf link, trefoil,
the clasped torus-link family) and validates everything it loads, but
it does not build C-complexes from diagrams.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import (
    InternalMismatch,
    NotInTorusStar,
    NotSquare,
    NullityPositive,
    PreconditionViolated,
    UnexpectedDelta,
)
from .laurent import TorusPoint

HERMITIAN_TOL = 1e-12
RELATIVE_EIG_TOL = 1e-8


def _eps_keys(mu: int) -> List[str]:
    return ["".join(s) for s in product("+-", repeat=mu)]


def _flip(key: str) -> str:
    return "".join("-" if ch == "+" else "+" for ch in key)


@dataclass(frozen=True)
class SeifertSystem:
    """A full set of generalized Seifert matrices for a colored link."""

    mu: int
    size: int
    matrices: Dict[str, np.ndarray]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mu < 1:
            raise PreconditionViolated("need at least one color")
        keys = set(_eps_keys(self.mu))
        if set(self.matrices) != keys:
            raise PreconditionViolated(
                "expected matrices for all %d sign vectors, got keys %s"
                % (len(keys), sorted(self.matrices))
            )
        fixed = {}
        for key, mat in self.matrices.items():
            arr = np.asarray(mat, dtype=np.int64)
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            if arr.shape != (self.size, self.size):
                raise NotSquare(
                    "matrix %s has shape %s, expected (%d, %d)"
                    % (key, arr.shape, self.size, self.size)
                )
            fixed[key] = arr
        object.__setattr__(self, "matrices", fixed)
        for key in keys:
            if not np.array_equal(fixed[_flip(key)], fixed[key].T):
                raise PreconditionViolated(
                    "matrix for %s is not the transpose of the one for %s"
                    % (_flip(key), key)
                )

    @classmethod
    def from_json(cls, obj: dict) -> "SeifertSystem":
        return cls(
            mu=int(obj["mu"]),
            size=int(obj["size"]),
            matrices={k: np.array(v, dtype=np.int64) for k, v in obj["matrices"].items()},
            meta=dict(obj.get("meta", {})),
        )

    @classmethod
    def from_file(cls, path) -> "SeifertSystem":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "size": self.size,
            "matrices": {k: v.tolist() for k, v in sorted(self.matrices.items())},
            "meta": self.meta,
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1)
            fh.write("\n")


@dataclass(frozen=True)
class SignaturePoint:
    """Classified spectrum of H(omega) at one torus point."""

    omega: Tuple[complex, ...]
    sigma: int
    eta: int
    gap: float
    tau: float
    eigenvalues: Tuple[float, ...]

    def __post_init__(self):
        size = len(self.eigenvalues)
        if self.sigma + self.eta > size or (size - self.eta - abs(self.sigma)) % 2:
            raise InternalMismatch("inconsistent eigenvalue classification")


def hermitian_form(system: SeifertSystem, z: TorusPoint) -> np.ndarray:
    if len(z.omegas) != system.mu:
        raise PreconditionViolated(
            "point has %d coordinates, system expects %d" % (len(z.omegas), system.mu)
        )
    if not z.in_T_star():
        raise NotInTorusStar("the form degenerates when a coordinate equals 1")
    H = np.zeros((system.size, system.size), dtype=np.complex128)
    for key, mat in system.matrices.items():
        coeff = 1.0 + 0.0j
        for i, ch in enumerate(key):
            e = 1 if ch == "+" else -1
            coeff *= 1.0 - np.conj(z.omegas[i]) ** e
        H += coeff * mat
    dev = np.max(np.abs(H - H.conj().T)) if system.size else 0.0
    if dev > HERMITIAN_TOL * (1.0 + np.max(np.abs(H), initial=0.0)):
        raise InternalMismatch("assembled form is not Hermitian (dev=%.3e)" % dev)
    return H


def signature_nullity(system: SeifertSystem, z: TorusPoint) -> SignaturePoint:
    H = hermitian_form(system, z)
    if system.size == 0:
        return SignaturePoint(tuple(z.omegas), 0, 0, float("inf"), 0.0, ())
    eigs = np.linalg.eigvalsh(H)
    tau = RELATIVE_EIG_TOL * (1.0 + float(np.max(np.abs(eigs))))
    pos = int(np.sum(eigs > tau))
    neg = int(np.sum(eigs < -tau))
    eta = int(np.sum(np.abs(eigs) <= tau))
    nonzero = np.abs(eigs[np.abs(eigs) > tau])
    gap = float(np.min(nonzero)) if nonzero.size else float("inf")
    return SignaturePoint(tuple(z.omegas), pos - neg, eta, gap, tau, tuple(float(x) for x in eigs))


def conway_sign(b, z: TorusPoint) -> int:
    """Sign of i^nu * potential(omega^{1/2}), using the upper-branch roots.

    Raises PreconditionViolated when the value vanishes or fails to be
    real, since the parity congruence is then inapplicable.
    """
    from .alexander import potential

    pot = potential(b)
    info = b.closure()
    nu = len(info.components)
    val = (1j**nu) * pot.evaluate_at_sqrt(z)
    scale = 1.0 + abs(val)
    if abs(val.imag) > 1e-9 * scale:
        raise PreconditionViolated(
            "i^nu * potential at omega^{1/2} is not real (%.3e)" % val.imag
        )
    if abs(val.real) <= 1e-9 * scale:
        raise PreconditionViolated("potential vanishes at this point")
    return 1 if val.real > 0 else -1


def parity_check(system: SeifertSystem, b, z: TorusPoint) -> bool:
    """Mod-4 congruence tying sigma to nu, total linking and the Conway sign.

    The system and the braid must describe the same colored link; that
    correspondence is the caller's responsibility.
    """
    point = signature_nullity(system, z)
    if point.eta != 0:
        raise PreconditionViolated("nullity positive, congruence inapplicable")
    info = b.closure()
    nu = len(info.components)
    lk_total = info.total_linking()
    s = conway_sign(b, z)
    return (point.sigma - (nu + lk_total - s)) % 4 == 0


def _diagonal_decrement_index(s_plus: SeifertSystem, s: SeifertSystem) -> Optional[int]:
    """Index p when every matrix of s_plus is the matching matrix of s with
    entry (p, p) reduced by 1; None when the systems do not have that shape."""
    if s_plus.mu != s.mu or s_plus.size != s.size:
        return None
    index = None
    for key in _eps_keys(s.mu):
        diff = s_plus.matrices[key] - s.matrices[key]
        nz = np.argwhere(diff != 0)
        if nz.shape[0] != 1:
            return None
        p, q = int(nz[0][0]), int(nz[0][1])
        if p != q or diff[p, q] != -1:
            return None
        if index is None:
            index = p
        elif index != p:
            return None
    return index


def crossing_change_delta(s_plus: SeifertSystem, s: SeifertSystem, z: TorusPoint) -> int:
    """sigma(s_plus) - sigma(s) at z, checked against the one-crossing bound."""
    point_plus = signature_nullity(s_plus, z)
    point = signature_nullity(s, z)
    if point_plus.eta != 0 or point.eta != 0:
        raise PreconditionViolated("crossing-change comparison needs nullity 0 on both sides")
    delta = point_plus.sigma - point.sigma
    if _diagonal_decrement_index(s_plus, s) is not None and delta not in (0, -2):
        raise UnexpectedDelta(
            "diagonal-decrement pair produced sigma jump %d, expected 0 or -2" % delta
        )
    return delta


def theorem63_rhs(system: SeifertSystem, z: TorusPoint) -> Fraction:
    """-(sigma(w1, w2) + sigma(w1, w2^{-1})) / 2 as an exact rational."""
    if system.mu != 2:
        raise PreconditionViolated("two-variable statement, got mu=%d" % system.mu)
    flipped = z.replace(1, np.conj(z.omegas[1]))
    first = signature_nullity(system, z)
    second = signature_nullity(system, flipped)
    if first.eta != 0 or second.eta != 0:
        raise NullityPositive(
            "nullity (%d, %d) at the two evaluation points" % (first.eta, second.eta)
        )
    return Fraction(-(first.sigma + second.sigma), 2)


def _torus_V(m: int) -> np.ndarray:
    """Seifert matrix of the (2, 2m+1) torus knot on the genus-m surface."""
    V = -np.eye(2 * m, dtype=np.int64)
    for i in range(2 * m - 1):
        V[i, i + 1] = 1
    return V


def _builtin_objects() -> Dict[str, SeifertSystem]:
    systems: Dict[str, SeifertSystem] = {}
    systems["unknot"] = SeifertSystem(
        mu=1, size=0, matrices={"+": [], "-": []},
        meta={"name": "unknot", "components": 1, "linking_total": 0},
    )
    systems["hopf"] = SeifertSystem(
        mu=2, size=0,
        matrices={k: [] for k in _eps_keys(2)},
        meta={"name": "hopf", "components": 2, "linking_total": 1,
              "braid": {"strands": 2, "colors": [1, 2], "word": [1, 1]}},
    )
    systems["hopf_onevar"] = SeifertSystem(
        mu=1, size=1, matrices={"+": [[-1]], "-": [[-1]]},
        meta={"name": "hopf_onevar", "components": 2, "linking_total": 1,
              "note": "annulus Seifert matrix of the positive Hopf link"},
    )
    systems["trefoil"] = SeifertSystem(
        mu=1, size=2,
        matrices={"+": _torus_V(1), "-": _torus_V(1).T},
        meta={"name": "trefoil", "components": 1, "linking_total": 0,
              "braid": {"strands": 2, "colors": [1, 1], "word": [1, 1, 1]}},
    )
    for m in (1, 2):
        V = _torus_V(m)
        word = [1] * (2 * m + 1) + [2, 2]
        systems["clasp_m%d" % m] = SeifertSystem(
            mu=2, size=2 * m,
            matrices={"++": V, "+-": V, "-+": V.T, "--": V.T},
            meta={"name": "clasp_m%d" % m, "components": 2, "linking_total": 1,
                  "braid": {"strands": 3, "colors": [1, 1, 2], "word": word},
                  "note": "(2,%d) torus knot clasped to an unknot; all H_1 "
                          "generators lie on the genus-%d piece" % (2 * m + 1, m)},
        )
        W = np.zeros((2 * m + 1, 2 * m + 1), dtype=np.int64)
        W[: 2 * m, : 2 * m] = V
        W[2 * m, 2 * m] = -1
        systems["clasp_m%d_onevar" % m] = SeifertSystem(
            mu=1, size=2 * m + 1, matrices={"+": W, "-": W.T},
            meta={"name": "clasp_m%d_onevar" % m, "components": 2, "linking_total": 1,
                  "note": "same link with every component colored 1; the clasp "
                          "contributes the extra [-1] block"},
        )
    return systems


_BUILTINS = None


def builtin_names() -> List[str]:
    return sorted(_builtin_cache())


def _builtin_cache() -> Dict[str, SeifertSystem]:
    global _BUILTINS
    if _BUILTINS is None:
        _BUILTINS = _builtin_objects()
    return _BUILTINS


def builtin_system(name: str) -> SeifertSystem:
    cache = _builtin_cache()
    if name not in cache:
        raise KeyError("no builtin Seifert system %r, have %s" % (name, sorted(cache)))
    return cache[name]


def load_system(source: str) -> SeifertSystem:
    """Load from a JSON file path, or fall back to a builtin name."""
    cache = _builtin_cache()
    if source in cache:
        return cache[source]
    return SeifertSystem.from_file(source)

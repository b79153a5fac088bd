"""Pure numpy implementation of the SU(2) braid-action kernels.

Quaternions are float64 arrays with layout (w, x, y, z); SU(2) elements
are unit quaternions.  The braid letter s with i = |s| - 1 acts on a
tuple X of n quaternions by

    s > 0:  (X_i, X_{i+1}) -> (X_i X_{i+1} X_i^{-1}, X_i)
    s < 0:  (X_i, X_{i+1}) -> (X_{i+1}, X_{i+1}^{-1} X_i X_{i+1})

applied in word order.  apply_word_jac additionally pushes an arbitrary
set of tangent channels through the same product rule; inverses are
conjugates because the inputs are unit quaternions.

This module and the compiled extension expose the same functions and
must agree to rounding error; the package selects whichever is
available at import time.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def qmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Quaternion product, broadcasting over leading axes."""
    aw, av = a[..., :1], a[..., 1:]
    bw, bv = b[..., :1], b[..., 1:]
    w = aw * bw - np.sum(av * bv, axis=-1, keepdims=True)
    v = aw * bv + bw * av + np.cross(av, bv)
    return np.concatenate([w, v], axis=-1)


def qconj(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[..., 1:] *= -1.0
    return out


def apply_word(word, X: np.ndarray) -> np.ndarray:
    """Apply a braid word to an (n, 4) array of unit quaternions."""
    X = np.array(X, dtype=np.float64, copy=True)
    for s in word:
        i = abs(int(s)) - 1
        a = X[i].copy()
        b = X[i + 1].copy()
        if s > 0:
            X[i] = qmul(qmul(a, b), qconj(a))
            X[i + 1] = a
        else:
            X[i] = b
            X[i + 1] = qmul(qmul(qconj(b), a), b)
    return X


def apply_word_jac(word, X: np.ndarray, dX: np.ndarray):
    """Apply a braid word to values and tangent channels.

    X has shape (n, 4) and dX has shape (n, C, 4); returns the final
    values and the pushed-forward channels.
    """
    X = np.array(X, dtype=np.float64, copy=True)
    dX = np.array(dX, dtype=np.float64, copy=True)
    for s in word:
        i = abs(int(s)) - 1
        a = X[i].copy()
        b = X[i + 1].copy()
        da = dX[i].copy()
        db = dX[i + 1].copy()
        if s > 0:
            ac = qconj(a)
            ab = qmul(a, b)
            X[i] = qmul(ab, ac)
            X[i + 1] = a
            dX[i] = (
                qmul(qmul(da, b[None, :]), ac[None, :])
                + qmul(qmul(a[None, :], db), ac[None, :])
                + qmul(ab[None, :], qconj(da))
            )
            dX[i + 1] = da
        else:
            bc = qconj(b)
            ba = qmul(bc, a)
            X[i] = b
            X[i + 1] = qmul(ba, b)
            dX[i] = db
            dX[i + 1] = (
                qmul(qmul(qconj(db), a[None, :]), b[None, :])
                + qmul(qmul(bc[None, :], da), b[None, :])
                + qmul(ba[None, :], db)
            )
    return X, dX

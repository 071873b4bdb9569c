"""Reduced atomic density matrices.

Product-basis ordering used throughout the package (``e`` first)::

    0 |eee>  1 |eeg>  2 |ege>  3 |gee>  4 |egg>  5 |geg>  6 |gge>  7 |ggg>

Atom slots are read left to right as ``a``, ``b``, ``c``. Two-qubit
matrices use ``|ee>, |eg>, |ge>, |gg>`` and one-qubit matrices ``|e>, |g>``.
"""

import math
import warnings

import numpy as np

PRODUCT_LABELS = ("eee", "eeg", "ege", "gee", "egg", "geg", "gge", "ggg")

# position in the product ordering -> position in the binary tensor ordering (e=0, g=1)
_TO_TENSOR = np.array([int(lbl.replace("e", "0").replace("g", "1"), 2) for lbl in PRODUCT_LABELS])

#: columns are the atomic parts of the symmetric Dicke states
DICKE_ISOMETRY = np.zeros((8, 4))
DICKE_ISOMETRY[0, 0] = 1.0
DICKE_ISOMETRY[[1, 2, 3], 1] = 1 / math.sqrt(3)
DICKE_ISOMETRY[[4, 5, 6], 2] = 1 / math.sqrt(3)
DICKE_ISOMETRY[7, 3] = 1.0

LEAK_TOL = 1e-10


def atomic_density_sym(psi, leak_tol=LEAK_TOL):
    """4x4 atomic density matrix in the symmetric Dicke basis.

    The field is traced out by pairing amplitudes with equal photon number:
    ``X_i^(n)`` carries ``n + i`` photons (0-based ``i``), so it pairs with
    ``X_j^(m)`` where ``m = n + i - j``. The result is scaled to unit trace.
    """
    x = psi.x
    size = x.shape[0]
    rho = np.zeros((4, 4), dtype=complex)
    leaked = 0.0
    for i in range(4):
        for j in range(4):
            s = i - j
            if s >= 0:
                lo, hi = 0, size - s
            else:
                lo, hi = -s, size
            rho[i, j] = np.dot(x[lo:hi, i], x[lo + s : hi + s, j].conj())
            if s > 0:
                # partners above the cutoff were truncated to zero
                leaked += float(np.sum(np.abs(x[hi:, i]) ** 2))
    if leaked > leak_tol:
        warnings.warn(f"photon-number matching dropped amplitude mass {leaked:.3e}", RuntimeWarning)
    rho = 0.5 * (rho + rho.conj().T)
    # renormalise away the discarded coherent-state tail
    return rho / np.trace(rho).real


def embed_symmetric(rho4):
    """Map a symmetric-sector 4x4 density matrix onto the 8-dim product basis."""
    rho4 = np.asarray(rho4, dtype=complex)
    if rho4.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    return DICKE_ISOMETRY @ rho4 @ DICKE_ISOMETRY.T


def to_tensor_order(rho8):
    """Reorder an 8x8 product-basis matrix into binary tensor order (a, b, c)."""
    rho8 = np.asarray(rho8)
    out = np.empty_like(rho8)
    out[np.ix_(_TO_TENSOR, _TO_TENSOR)] = rho8
    return out


def from_tensor_order(rho8):
    rho8 = np.asarray(rho8)
    return rho8[np.ix_(_TO_TENSOR, _TO_TENSOR)]


def permute_atoms(rho8, perm):
    """Relabel atom slots: slot ``k`` of the result is slot ``perm[k]`` of the input."""
    t = to_tensor_order(rho8).reshape((2,) * 6)
    axes = list(perm) + [3 + p for p in perm]
    return from_tensor_order(t.transpose(axes).reshape(8, 8))


def trace_out_one(rho8):
    """Trace out atom ``c``; result in ``|ee>, |eg>, |ge>, |gg>``."""
    t = to_tensor_order(np.asarray(rho8, dtype=complex)).reshape(4, 2, 4, 2)
    return np.einsum("ikjk->ij", t)


def trace_out_two(rho8):
    """Trace out atoms ``b`` and ``c``; result in ``|e>, |g>``."""
    t = to_tensor_order(np.asarray(rho8, dtype=complex)).reshape(2, 4, 2, 4)
    return np.einsum("ikjk->ij", t)


def trace_out_last_qubit(rho4):
    """Partial trace of a two-qubit matrix over its second qubit."""
    t = np.asarray(rho4, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("ikjk->ij", t)


def purity(rho):
    """``Tr(rho^2)`` for a Hermitian density matrix."""
    rho = np.asarray(rho, dtype=complex)
    # Tr(rho^2) = sum_ij |rho_ij|^2 when rho is Hermitian
    return float(np.sum(np.abs(rho) ** 2))

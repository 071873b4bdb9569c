"""Entanglement measures for the atoms and the atom-field partitions.

Two-qubit matrices are in the ``|ee>, |eg>, |ge>, |gg>`` basis and 8x8
matrices in the product ordering of :mod:`tcm3.reduced_states`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    PSD_CLIP,
    NotPSDError,
    hermitian_eigenvalues,
    hermitian_eigh,
    matrix_sqrt_psd,
)
from .reduced_states import (
    embed_symmetric,
    purity,
    to_tensor_order,
    trace_out_one,
    trace_out_two,
)

_SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class EntanglementSample:
    tau: float
    i_f_abc: float
    i_fc_ab: float
    i_fcb_a: float
    c_ab: float
    n_a_bc: float
    n_ab: float
    n_abc: float


def i_concurrence_from_purity(p):
    """Pure-state I-concurrence ``sqrt(2 (1 - p))`` of a bipartition.

    ``p`` is the purity of either reduced state.
    """
    if not 0 < p <= 1 + 1e-9:
        raise ValueError(f"purity must lie in (0, 1], got {p!r}")
    return math.sqrt(max(0.0, 2.0 * (1.0 - p)))


def i_max(d1, d2):
    """Largest pure-state I-concurrence for a ``d1 x d2`` system."""
    m = min(d1, d2)
    if m < 2:
        raise ValueError("both dimensions must be at least 2")
    if math.isinf(m):
        return math.sqrt(2.0)
    return math.sqrt(2.0 * (m - 1) / m)


def spin_flip(rho):
    rho = np.asarray(rho, dtype=complex)
    return _YY @ rho.conj() @ _YY


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix.

    The lambdas (square roots of the eigenvalues of ``rho rho~``) are
    taken as the singular values of ``X^T (sy x sy) X`` with
    ``rho = X X^dag``. This keeps small lambdas accurate to machine
    precision, where square-rooting eigenvalues of ``rho rho~`` would
    lose half the digits.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("concurrence needs a 4x4 two-qubit matrix")
    w, v = hermitian_eigh(rho)
    if w[-1] < -PSD_CLIP:
        raise NotPSDError(f"density matrix has eigenvalue {w[-1]:.3e}")
    x = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(x.T @ _YY @ x, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_via_root(rho):
    """Concurrence from the spectrum of ``sqrt(rho) rho~ sqrt(rho)``.

    Slower and less precise near zero than :func:`concurrence`; kept as
    an independent route for cross-checks.
    """
    root = matrix_sqrt_psd(rho)
    lam = np.sqrt(np.clip(hermitian_eigenvalues(root @ spin_flip(rho) @ root), 0.0, None))
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def partial_transpose(rho, dims):
    """Transpose the first factor of a ``dA x dB`` bipartite matrix."""
    da, db = dims
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (da * db, da * db):
        raise ValueError(f"matrix of shape {rho.shape} does not match dims {dims}")
    return rho.reshape(da, db, da, db).transpose(2, 1, 0, 3).reshape(da * db, da * db)


def negativity(rho, dims):
    """Twice the absolute sum of negative eigenvalues of the partial transpose.

    ``rho`` must be in tensor order with the transposed factor first; for
    the 8x8 product-basis matrices use :func:`negativity_a_bc`.
    """
    w = hermitian_eigenvalues(partial_transpose(rho, dims))
    return float(2.0 * abs(np.sum(w[w < 0])))


def negativity_a_bc(rho8):
    """Negativity of atom ``a`` against the pair ``bc``."""
    return negativity(to_tensor_order(rho8), (2, 4))


def residual_negativity(rho8):
    """``(N_a-bc, N_a-b, N_abc)`` with ``N_abc = N_a-bc - 2 N_a-b``.

    Uses ``N_a-b = N_a-c``, which holds for atom-exchange symmetric states.
    """
    n_a_bc = negativity_a_bc(rho8)
    n_ab = negativity(trace_out_one(rho8), (2, 2))
    return n_a_bc, n_ab, n_a_bc - 2.0 * n_ab


def _three_qubit_reductions(pure3):
    """rho_ab, rho_ac and rho_a from an 8-vector in product ordering."""
    psi = np.asarray(pure3, dtype=complex)
    rho8 = np.outer(psi, psi.conj())
    t = to_tensor_order(rho8).reshape((2,) * 6)
    rho_ab = np.einsum("abkdek->abde", t).reshape(4, 4)
    rho_ac = np.einsum("akcdkf->acdf", t).reshape(4, 4)
    rho_a = trace_out_two(rho8)
    return rho_ab, rho_ac, rho_a


def tangle_decomposition(pure3):
    """``(tau_a(bc), tau_ab, tau_ac, tau_abc)`` of a pure three-qubit state.

    Input is an 8-vector in the package's product ordering. ``tau_a(bc)``
    is the squared I-concurrence between ``a`` and the pair; the pairwise
    tangles are squared concurrences; the remainder is the three-tangle.
    """
    psi = np.asarray(pure3, dtype=complex)
    if psi.shape != (8,):
        raise ValueError("expected an 8-component state vector")
    if abs(np.vdot(psi, psi).real - 1.0) > 1e-9:
        raise ValueError("state vector is not normalised")
    rho_ab, rho_ac, rho_a = _three_qubit_reductions(psi)
    tau_a_bc = 2.0 * (1.0 - purity(rho_a))
    tau_ab = concurrence(rho_ab) ** 2
    tau_ac = concurrence(rho_ac) ** 2
    return tau_a_bc, tau_ab, tau_ac, tau_a_bc - tau_ab - tau_ac


def entanglement_sample(tau, rho4, rho8=None):
    """All measures at one time, given the symmetric-sector density matrix."""
    if rho8 is None:
        rho8 = embed_symmetric(rho4)
    rho_ab = trace_out_one(rho8)
    rho_a = trace_out_two(rho8)
    n_a_bc, n_ab, n_abc = residual_negativity(rho8)
    return EntanglementSample(
        tau=float(tau),
        i_f_abc=i_concurrence_from_purity(purity(rho4)),
        i_fc_ab=i_concurrence_from_purity(purity(rho_ab)),
        i_fcb_a=i_concurrence_from_purity(purity(rho_a)),
        c_ab=concurrence(rho_ab),
        n_a_bc=n_a_bc,
        n_ab=n_ab,
        n_abc=n_abc,
    )


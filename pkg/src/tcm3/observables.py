"""Atomic inversions, return probability and revival-time estimates."""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class InversionSample:
    tau: float
    w_total: float
    w_single: float
    p_ini: float


def _populations(psi):
    # summed over blocks, one entry per Dicke level
    return np.sum(np.abs(psi.x) ** 2, axis=0)


def total_inversion(psi):
    """``sum_n |X1|^2 - |X4|^2``: the |eee>/|ggg> population difference.

    This is not ``<sum_k sigma_z^(k)>``; see :func:`full_sz_expectation`.
    """
    p = _populations(psi)
    return float(p[0] - p[3])


def single_atom_inversion(psi):
    """``<sigma_z>`` of one atom (all atoms agree by symmetry)."""
    p = _populations(psi)
    return float(p[0] + p[1] / 3.0 - p[2] / 3.0 - p[3])


def full_sz_expectation(psi):
    """``<sigma_z^(a) + sigma_z^(b) + sigma_z^(c)>``."""
    p = _populations(psi)
    return float(3.0 * p[0] + p[1] - p[2] - 3.0 * p[3])


def _check_same_truncation(psi0, psi):
    if psi0.x.shape != psi.x.shape:
        raise ValueError(
            f"wavefunctions have different truncations ({psi0.n_max} vs {psi.n_max})"
        )


def initial_population(psi0, psi):
    """Probability of finding each excitation block in its initial state.

    ``sum_n |<X_n(0)|X_n(tau)>|^2 / <X_n(0)|X_n(0)>``, the expectation of
    the projector onto the normalised initial block vectors. Unlike the
    full overlap it does not dephase with the photon-number spread, and
    its long-time mean approaches the sum of squared spectral weights of
    the initial atomic state (5/16 for |eee>, 5/8 for GHZ).
    """
    _check_same_truncation(psi0, psi)
    norms = psi0.block_norms()
    overlaps = np.sum(psi0.x.conj() * psi.x, axis=1)
    live = norms > 0
    return float(np.sum(np.abs(overlaps[live]) ** 2 / norms[live]))


def state_overlap_probability(psi0, psi):
    """Full-state return probability ``|<psi0|psi>|^2``."""
    _check_same_truncation(psi0, psi)
    return float(abs(np.vdot(psi0.x, psi.x)) ** 2)


def inversion_sample(psi0, psi):
    return InversionSample(psi.tau, total_inversion(psi), single_atom_inversion(psi),
                           initial_population(psi0, psi))


# Dicke-basis coupling matrix of block n, divided by sqrt(n), for n >> 1.
_LARGE_N_COUPLING = np.array(
    [[0, math.sqrt(3), 0, 0],
     [math.sqrt(3), 0, 2, 0],
     [0, 2, 0, math.sqrt(3)],
     [0, 0, math.sqrt(3), 0]]
)
_KIND_COEFFS = {
    "eee": [1, 0, 0, 0],
    "ghz": [1 / math.sqrt(2), 0, 0, 1 / math.sqrt(2)],
    "w": [0, 1, 0, 0],
}
_QUANTITY_WEIGHTS = {
    "w_total": np.array([1, 0, 0, -1]),
    "w_single": np.array([1, 1 / 3, -1 / 3, -1]),
}


def harmonic_content(initial_kind, quantity, tol=1e-9):
    """Cosine harmonics of a block summand in the large-photon-number limit.

    For ``n >> 1`` the block frequencies approach ``3 sqrt(n)`` and
    ``sqrt(n)``, so each summand is a sum of ``cos(k sqrt(n) tau)`` terms
    with ``k`` in {2, 4, 6}. Returns ``{k: amplitude}`` for the nonzero
    time-dependent terms, plus the constant part under key ``0``.
    """
    c = np.asarray(_KIND_COEFFS[initial_kind], dtype=complex)
    w, v = np.linalg.eigh(_LARGE_N_COUPLING)
    freqs = np.rint(w).astype(int)  # -3, -1, 1, 3
    a = v.T @ c  # weights of the eigencomponents
    harmonics = {}
    if quantity == "p_ini":
        # |sum_k |a_k|^2 e^{-i w_k x}|^2
        p = np.abs(a) ** 2
        for k in range(4):
            for l in range(4):
                d = abs(freqs[k] - freqs[l])
                harmonics[d] = harmonics.get(d, 0.0) + p[k] * p[l]
    elif quantity in _QUANTITY_WEIGHTS:
        # sum_i w_i |sum_k v_ik a_k e^{-i w_k x}|^2
        obs = v.T @ np.diag(_QUANTITY_WEIGHTS[quantity]) @ v
        for k in range(4):
            for l in range(4):
                d = abs(freqs[k] - freqs[l])
                term = (a[k].conjugate() * obs[k, l] * a[l]).real
                harmonics[d] = harmonics.get(d, 0.0) + term
    else:
        raise ValueError(f"unknown quantity {quantity!r}")
    return {k: h for k, h in sorted(harmonics.items()) if k == 0 or abs(h) > tol}


def predicted_revivals(initial_kind, quantity, nbar):
    """Revival times up to ``2 pi sqrt(nbar)`` with relative strengths.

    A ``cos(k sqrt(n) tau)`` summand rephases across neighbouring photon
    numbers when ``k tau / (2 sqrt(nbar))`` is a multiple of ``2 pi``,
    i.e. at ``tau = 4 pi j sqrt(nbar) / k``. Contributions landing on the
    same time add; weights are normalised so the largest is 1. An empty
    list means the quantity has no time dependence at this order.
    """
    if nbar < 25:
        raise ValueError("the large-photon-number estimate needs nbar >= 25")
    if initial_kind not in _KIND_COEFFS:
        raise ValueError(f"unknown initial state kind {initial_kind!r}")
    harmonics = harmonic_content(initial_kind, quantity)
    # times as exact multiples of pi sqrt(nbar) / 3 keyed by integer numerator
    weights = {}
    for k, amp in harmonics.items():
        if k == 0:
            continue
        j = 1
        while 12 * j <= 6 * k:  # 4 pi j / k <= 2 pi
            key = 12 * j // k  # numerator over pi/3
            weights[key] = weights.get(key, 0.0) + abs(amp)
            j += 1
    if not weights:
        return []
    top = max(weights.values())
    root = math.sqrt(nbar)
    return [(key * math.pi * root / 3.0, w / top) for key, w in sorted(weights.items())]

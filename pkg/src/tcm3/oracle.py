"""Brute-force references for checking the closed-form dynamics.

Nothing here shares code with :mod:`tcm3.dynamics`: the block Hamiltonians
are assembled by applying ``a S+ + a^dag S-`` to explicit product states,
and time evolution is plain fixed-step RK4 (with an eigendecomposition
route as a second reference).
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import hermitian_eigh
from .reduced_states import PRODUCT_LABELS

# excited count of each product label, which fixes its photon number in the block
_EXCITED = [lbl.count("e") for lbl in PRODUCT_LABELS]

#: atomic parts of |D1>..|D8> as columns, in product ordering
DICKE_BASIS = np.zeros((8, 8))
_s3, _s6, _s2 = 1 / math.sqrt(3), 1 / math.sqrt(6), 1 / math.sqrt(2)
_idx = {lbl: k for k, lbl in enumerate(PRODUCT_LABELS)}
for col, terms in enumerate([
    {"eee": 1.0},
    {"eeg": _s3, "ege": _s3, "gee": _s3},
    {"egg": _s3, "geg": _s3, "gge": _s3},
    {"ggg": 1.0},
    {"gee": 2 * _s6, "ege": -_s6, "eeg": -_s6},
    {"eeg": _s2, "ege": -_s2},
    {"geg": _s6, "gge": _s6, "egg": -2 * _s6},
    {"gge": _s2, "geg": -_s2},
]):
    for lbl, amp in terms.items():
        DICKE_BASIS[_idx[lbl], col] = amp
del col, terms, lbl, amp


@dataclass(frozen=True)
class BlockHamiltonian:
    n: int
    h4: np.ndarray = field(repr=False)
    h8: np.ndarray = field(repr=False)


def _photons(n, k):
    # |eee; n>, |..; n+1>, |..; n+2>, |ggg; n+3>
    return n + 3 - _EXCITED[k]


def block_hamiltonian(n):
    """Interaction Hamiltonian (units of g) of the excitation block ``n``."""
    if n < 0:
        raise ValueError("block index must be non-negative")
    h8 = np.zeros((8, 8))
    for src, dst in itertools.product(range(8), repeat=2):
        a, b = PRODUCT_LABELS[src], PRODUCT_LABELS[dst]
        diff = [k for k in range(3) if a[k] != b[k]]
        if len(diff) != 1:
            continue
        k = diff[0]
        m = _photons(n, src)
        if a[k] == "g":
            # a sigma_+^(k): absorb a photon
            h8[dst, src] += math.sqrt(m)
        else:
            # a^dag sigma_-^(k): emit a photon
            h8[dst, src] += math.sqrt(m + 1)
    h4 = DICKE_BASIS[:, :4].T @ h8 @ DICKE_BASIS[:, :4]
    return BlockHamiltonian(int(n), h4, h8)


def symmetric_projector():
    v = DICKE_BASIS[:, :4]
    return v @ v.T


def max_dt(n):
    """Largest RK4 step considered safe for block ``n``."""
    return 1e-3 / math.sqrt(n + 3)


def integrate_block(h, x0, tau, dt):
    """Integrate ``dx/dtau = -i h x`` from 0 to ``tau`` with classical RK4.

    ``h`` may be a single ``(d, d)`` matrix or a stack ``(B, d, d)``; in
    the stacked form ``x0`` is ``(B, d)`` and ``tau`` is a length-``B``
    array. All members take the same number of steps, each with its own
    step ``tau_b / steps`` no larger than ``dt``.
    """
    h = np.asarray(h, dtype=complex)
    x = np.array(x0, dtype=complex)
    single = h.ndim == 2
    if single:
        h, x = h[None], x[None]
    tau = np.broadcast_to(np.asarray(tau, dtype=float), (h.shape[0],))
    steps = max(1, int(math.ceil(np.max(np.abs(tau)) / dt)))
    step = (tau / steps)[:, None]
    a = -1j * h

    def rhs(v):
        return np.einsum("bij,bj->bi", a, v)

    for _ in range(steps):
        k1 = rhs(x)
        k2 = rhs(x + 0.5 * step * k1)
        k3 = rhs(x + 0.5 * step * k2)
        k4 = rhs(x + step * k3)
        x = x + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return x[0] if single else x


def exact_propagator(h, tau):
    """``exp(-i h tau)`` through the Hermitian eigendecomposition."""
    w, v = hermitian_eigh(h)
    return (v * np.exp(-1j * w * tau)) @ v.conj().T

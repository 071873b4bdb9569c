"""Closed-form evolution of the symmetric Dicke sector.

The Hilbert space splits into blocks of fixed excitation number. Block
``n`` of the symmetric sector is spanned by

    |D1> = |eee; n>,   |D2> = |W; n+1>,   |D3> = |W-bar; n+2>,   |D4> = |ggg; n+3>

and the interaction Hamiltonian (in units of the coupling ``g``) is the
real tridiagonal matrix with off-diagonals ``sqrt(3(n+1))``,
``2 sqrt(n+2)`` and ``sqrt(3(n+3))``. Its squared eigenfrequencies come
in a pair ``mu1 > mu2``, and every entry of ``exp(-i H tau)`` is a two-term
partial-fraction combination of ``cos(sqrt(mu) tau)`` or
``sin(sqrt(mu) tau)``. Time is the scaled time ``tau = g t``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

#: amplitudes are carried this many blocks past the coherent-state cutoff
TRUNCATION_PAD = 5
DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class RabiBlockParams:
    n: int
    gamma: float
    beta: float
    eta: float
    delta: float
    mu1: float
    mu2: float


def _rabi_arrays(n):
    n = np.asarray(n, dtype=float)
    gamma = np.sqrt(n + 1.0)
    beta = np.sqrt(n + 2.0)
    eta = np.sqrt(n + 3.0)
    delta = 4.0 * beta**2 + 3.0 * gamma**2 + 3.0 * eta**2
    disc = np.sqrt(delta**2 - 36.0 * eta**2 * gamma**2)
    mu1 = 0.5 * (delta + disc)
    mu2 = 0.5 * (delta - disc)
    return gamma, beta, eta, delta, mu1, mu2


def rabi_params(n):
    """Squared Rabi frequencies of block ``n``; ``mu1`` is the larger root."""
    if n < 0:
        raise ValueError("block index must be non-negative")
    gamma, beta, eta, delta, mu1, mu2 = (float(a) for a in _rabi_arrays(n))
    return RabiBlockParams(int(n), gamma, beta, eta, delta, mu1, mu2)


def evolution_matrices(ns, tau):
    """Stack of 4x4 evolution matrices, one per block index in ``ns``.

    Returns a complex array of shape ``(len(ns), 4, 4)``.
    """
    ns = np.atleast_1d(np.asarray(ns))
    if np.any(ns < 0):
        raise ValueError("block indices must be non-negative")
    tau = float(tau)
    if not math.isfinite(tau):
        raise ValueError("tau must be finite")

    g, b, e, _, mu1, mu2 = _rabi_arrays(ns)
    d12 = mu1 - mu2
    assert np.all(d12 > 1e-6), "degenerate Rabi frequencies"
    d21 = -d12
    s1, s2 = np.sqrt(mu1), np.sqrt(mu2)
    c1, c2 = np.cos(s1 * tau), np.cos(s2 * tau)
    n1, n2 = np.sin(s1 * tau), np.sin(s2 * tau)
    b2, g2, e2 = b * b, g * g, e * e
    r3 = math.sqrt(3.0)

    u = np.empty((ns.size, 4, 4), dtype=complex)
    u[:, 0, 0] = (mu1 - 4 * b2 - 3 * e2) / d12 * c1 + (mu2 - 4 * b2 - 3 * e2) / d21 * c2
    u[:, 0, 1] = -1j * r3 * g * ((mu1 - 3 * e2) / (s1 * d12) * n1 + (mu2 - 3 * e2) / (s2 * d21) * n2)
    u[:, 0, 2] = 2 * r3 * b * g * (c1 / d12 + c2 / d21)
    u[:, 0, 3] = -6j * b * g * e * (n1 / (s1 * d12) + n2 / (s2 * d21))
    u[:, 1, 1] = (mu1 - 3 * e2) / d12 * c1 + (mu2 - 3 * e2) / d21 * c2
    u[:, 1, 2] = -2j * b * (s1 / d12 * n1 + s2 / d21 * n2)
    u[:, 1, 3] = 2 * r3 * b * e * (c1 / d12 + c2 / d21)
    u[:, 2, 2] = (mu1 - 3 * g2) / d12 * c1 + (mu2 - 3 * g2) / d21 * c2
    u[:, 2, 3] = -1j * r3 * e * ((mu1 - 3 * g2) / (s1 * d12) * n1 + (mu2 - 3 * g2) / (s2 * d21) * n2)
    u[:, 3, 3] = (mu1 - 4 * b2 - 3 * g2) / d12 * c1 + (mu2 - 4 * b2 - 3 * g2) / d21 * c2
    # the block Hamiltonian is real symmetric, so U is symmetric
    for i in range(4):
        for j in range(i):
            u[:, i, j] = u[:, j, i]
    return u


@dataclass(frozen=True)
class EvolutionBlock:
    n: int
    tau: float
    u: np.ndarray = field(repr=False)


def evolution_block(n, tau):
    return EvolutionBlock(int(n), float(tau), evolution_matrices([n], tau)[0])


@dataclass(frozen=True)
class AtomicInitState:
    """Symmetric three-atom state ``c_e|eee> + c_w1|W> + c_w2|W-bar> + c_g|ggg>``."""

    c_e: complex = 0.0
    c_w1: complex = 0.0
    c_w2: complex = 0.0
    c_g: complex = 0.0

    def __post_init__(self):
        norm = sum(abs(c) ** 2 for c in self.coefficients)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"atomic coefficients are not normalised (sum |c|^2 = {norm!r})")

    @property
    def coefficients(self):
        return np.array([self.c_e, self.c_w1, self.c_w2, self.c_g], dtype=complex)

    @classmethod
    def preset(cls, name):
        try:
            return PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


PRESETS = {
    "eee": AtomicInitState(c_e=1.0),
    "ghz": AtomicInitState(c_e=1 / math.sqrt(2), c_g=1 / math.sqrt(2)),
    "w": AtomicInitState(c_w1=1.0),
}


@dataclass(frozen=True)
class CoherentField:
    alpha0: complex
    n_max: int
    q: np.ndarray = field(repr=False)
    tail_mass: float = 0.0

    @property
    def nbar(self):
        return abs(self.alpha0) ** 2


def coherent_amplitudes(alpha0, tail_tol=DEFAULT_TAIL_TOL, pad=0):
    """Fock amplitudes of the coherent state ``|alpha0>``.

    ``n_max`` is the smallest cutoff whose discarded Poisson tail is below
    ``tail_tol``. ``pad`` extra (tiny but nonzero) amplitudes are kept past
    the cutoff; ``n_max`` counts them.
    """
    if not 0 < tail_tol <= 1e-6:
        raise ValueError("tail_tol must lie in (0, 1e-6]")
    alpha0 = complex(alpha0)
    nbar = abs(alpha0) ** 2
    if nbar > 1400:
        raise ValueError("mean photon number too large for the direct recurrence (max 1400)")

    # generous upper bound; the Poisson tail beyond it is far below any tolerance
    hi = int(math.ceil(nbar + 15.0 * math.sqrt(nbar) + 60))
    q = np.empty(hi + 1, dtype=complex)
    q[0] = math.exp(-0.5 * nbar)
    for k in range(hi):
        q[k + 1] = q[k] * alpha0 / math.sqrt(k + 1.0)

    p = np.abs(q) ** 2
    # tail[k] = sum_{j > k} p_j, accumulated from the small end for accuracy
    tail = np.concatenate([np.cumsum(p[::-1])[::-1][1:], [0.0]])
    cutoff = int(np.argmax(tail < tail_tol))
    n_max = min(cutoff + pad, hi)
    return CoherentField(alpha0, n_max, q[: n_max + 1].copy(), float(tail[n_max]))


@dataclass(frozen=True)
class SymmetricWavefunction:
    """Amplitudes ``x[n, i]`` of ``|D_{i+1}>`` in block ``n`` at scaled time ``tau``."""

    tau: float
    x: np.ndarray = field(repr=False)

    def __post_init__(self):
        x = np.array(self.x, dtype=complex)
        if x.ndim != 2 or x.shape[1] != 4:
            raise ValueError(f"amplitudes must have shape (n_max + 1, 4), got {x.shape}")
        x.flags.writeable = False
        object.__setattr__(self, "x", x)

    @property
    def n_max(self):
        return self.x.shape[0] - 1

    def block_norms(self):
        return np.sum(np.abs(self.x) ** 2, axis=1)

    def norm(self):
        return float(np.sum(self.block_norms()))

    def excitation_number(self):
        """Expectation of ``a^dag a + S_z``; block ``n`` carries ``n + 3/2``."""
        n = np.arange(self.x.shape[0])
        return float(np.sum((n + 1.5) * self.block_norms()))


def initial_amplitudes(atoms, field):
    """Product of an atomic Dicke superposition and a coherent field.

    ``X_i^(n) = c_i q_{n+i-1}``; Fock amplitudes past the field cutoff are 0.
    """
    if not isinstance(atoms, AtomicInitState):
        raise TypeError("atoms must be an AtomicInitState")
    q = np.concatenate([field.q, np.zeros(3, dtype=complex)])
    size = field.n_max + 1
    x = np.empty((size, 4), dtype=complex)
    for i, c in enumerate(atoms.coefficients):
        x[:, i] = c * q[i : i + size]
    return SymmetricWavefunction(0.0, x)


def evolve(psi, tau):
    """Propagate ``psi`` to absolute scaled time ``tau``, block by block."""
    u = evolution_matrices(np.arange(psi.x.shape[0]), float(tau) - psi.tau)
    return SymmetricWavefunction(float(tau), np.einsum("nij,nj->ni", u, psi.x))

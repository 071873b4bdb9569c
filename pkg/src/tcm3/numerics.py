"""Small numeric kernel shared by the rest of the package.

Everything here works on plain ``numpy`` arrays. Matrices are at most
16x16 in this package, so the Hermitian routines favour robustness over
speed.
"""

import numpy as np

#: absolute tolerance for the Hermiticity check
HERMITIAN_TOL = 1e-10
#: eigenvalues above ``-PSD_CLIP`` are treated as zero in PSD routines
PSD_CLIP = 1e-10


class NotHermitianError(ValueError):
    pass


class NotPSDError(ValueError):
    pass


def check_hermitian(m, tol=HERMITIAN_TOL):
    """Return ``m`` as a complex square array, raising if it is not Hermitian."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotHermitianError("matrix has non-finite entries")
    defect = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if defect > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max |m - m^H| = {defect:.3e})")
    return m


def hermitian_eigh(m):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, v)`` with ``m @ v[:, k] == w[k] * v[:, k]``.
    """
    m = check_hermitian(m)
    # symmetrise away the sub-tolerance anti-Hermitian part
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w[::-1], v[:, ::-1]


def hermitian_eigenvalues(m):
    """All eigenvalues of a Hermitian matrix as a descending real array."""
    m = check_hermitian(m)
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))[::-1]


def matrix_sqrt_psd(m, clip=PSD_CLIP):
    """Principal square root of a Hermitian positive semi-definite matrix.

    Eigenvalues in ``[-clip, 0)`` are set to zero; anything more negative
    raises :class:`NotPSDError`.
    """
    w, v = hermitian_eigh(m)
    if w.size and w[-1] < -clip:
        raise NotPSDError(f"matrix is not positive semi-definite (min eigenvalue {w[-1]:.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    r = (v * root) @ v.conj().T
    return 0.5 * (r + r.conj().T)


def coherent_coefficient_series(beta, offset, amplitudes):
    r"""Evaluate :math:`e^{-|\beta|^2/2}\sum_n (\beta^*)^{n+k} c_n / \sqrt{(n+k)!}`.

    Parameters
    ----------
    beta : complex or array_like of complex
        Point(s) in the coherent-state plane. Arrays are evaluated
        elementwise and the result has the same shape.
    offset : int
        Fock-index shift ``k`` applied to every amplitude.
    amplitudes : array_like of complex
        Coefficients ``c_0 ... c_N``.

    Returns
    -------
    complex or ndarray
        The series value(s).

    Notes
    -----
    The coefficients ``d_j = e^{-|beta|^2/2} (beta^*)^j / sqrt(j!)`` are
    advanced with ``d_{j+1} = d_j * beta^* / sqrt(j + 1)``. Their modulus
    never exceeds one, so no factorial or large power is formed.
    """
    if offset < 0:
        raise ValueError("offset must be non-negative")
    scalar = np.isscalar(beta)
    b = np.asarray(beta, dtype=complex)
    bc = b.conj()
    c = np.asarray(amplitudes, dtype=complex).ravel()

    d = np.exp(-0.5 * (b.real**2 + b.imag**2)).astype(complex)
    for j in range(offset):
        d = d * bc / np.sqrt(j + 1.0)
    total = np.zeros_like(d)
    j = offset
    for cn in c:
        if cn != 0:
            total = total + d * cn
        d = d * bc / np.sqrt(j + 1.0)
        j += 1
    return complex(total) if scalar else total

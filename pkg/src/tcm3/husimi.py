"""Husimi Q-function of the cavity field.

With the atoms traced out, ``Q(beta) = (1/pi) sum_i |S_i(beta)|^2`` where
``S_i`` is the coherent-state projection of the field amplitudes that
accompany Dicke level ``i``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .numerics import coherent_coefficient_series

DEFAULT_WINDOW = (-15.0, 15.0, -15.0, 15.0)
DEFAULT_RESOLUTION = (201, 201)


@dataclass(frozen=True)
class QGrid:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    values: np.ndarray = field(repr=False)  # shape (nx, ny), values[ix, iy]
    tau: float = 0.0

    @property
    def resolution(self):
        return self.values.shape

    @property
    def re_axis(self):
        return np.linspace(self.re_min, self.re_max, self.values.shape[0])

    @property
    def im_axis(self):
        return np.linspace(self.im_min, self.im_max, self.values.shape[1])

    def integral(self):
        """Riemann-sum estimate of the Q mass inside the window."""
        nx, ny = self.values.shape
        dx = (self.re_max - self.re_min) / (nx - 1)
        dy = (self.im_max - self.im_min) / (ny - 1)
        return float(self.values.sum() * dx * dy)

    def argmax(self):
        """``(re, im)`` of the largest grid value."""
        ix, iy = np.unravel_index(np.argmax(self.values), self.values.shape)
        return float(self.re_axis[ix]), float(self.im_axis[iy])


def q_values(psi, beta):
    """Q-function at an array of points ``beta`` (any shape)."""
    beta = np.asarray(beta, dtype=complex)
    total = np.zeros(beta.shape)
    for i in range(4):
        s = coherent_coefficient_series(beta, i, psi.x[:, i])
        total += np.abs(s) ** 2
    return total / math.pi


def q_value(psi, beta):
    return float(q_values(psi, np.array([complex(beta)]))[0])


def default_window(nbar, margin=5.0):
    r = math.sqrt(nbar) + margin
    return (-r, r, -r, r)


def q_grid(psi, window=DEFAULT_WINDOW, resolution=DEFAULT_RESOLUTION):
    re_min, re_max, im_min, im_max = (float(v) for v in window)
    nx, ny = resolution
    if nx < 2 or ny < 2:
        raise ValueError("grid resolution must be at least 2x2")
    if not (re_max > re_min and im_max > im_min):
        raise ValueError("empty grid window")
    re = np.linspace(re_min, re_max, nx)
    im = np.linspace(im_min, im_max, ny)
    beta = re[:, None] + 1j * im[None, :]
    return QGrid(re_min, re_max, im_min, im_max, q_values(psi, beta), tau=psi.tau)


def peak_census(grid, floor):
    """Strict local maxima (8-neighbour) above ``floor``, tallest first.

    Returns a list of ``((re, im), height)``.
    """
    if floor <= 0:
        raise ValueError("floor must be positive")
    v = grid.values
    padded = np.pad(v, 1, constant_values=-np.inf)
    nx, ny = v.shape
    is_peak = v > floor
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            if dx == 0 and dy == 0:
                continue
            neighbour = padded[1 + dx : 1 + dx + nx, 1 + dy : 1 + dy + ny]
            is_peak &= v > neighbour
    re, im = grid.re_axis, grid.im_axis
    peaks = [((float(re[i]), float(im[j])), float(v[i, j])) for i, j in zip(*np.nonzero(is_peak))]
    peaks.sort(key=lambda p: -p[1])
    return peaks

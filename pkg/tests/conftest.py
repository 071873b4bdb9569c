import math

import numpy as np
import pytest

from tcm3.dynamics import PRESETS, coherent_amplitudes, initial_amplitudes, TRUNCATION_PAD

NBAR = 100
ALPHA0 = math.sqrt(NBAR)


@pytest.fixture(scope="session")
def field100():
    return coherent_amplitudes(ALPHA0, pad=TRUNCATION_PAD)


@pytest.fixture(scope="session")
def initial_states(field100):
    return {k: initial_amplitudes(PRESETS[k], field100) for k in PRESETS}


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, n, rank=None):
    rank = rank or n
    a = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_pure(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


# product-basis states used across the suites (ordering eee, eeg, ege, gee, egg, geg, gge, ggg)
GHZ8 = np.zeros(8, dtype=complex)
GHZ8[[0, 7]] = 1 / math.sqrt(2)
W8 = np.zeros(8, dtype=complex)
W8[[1, 2, 3]] = 1 / math.sqrt(3)
EEE8 = np.zeros(8, dtype=complex)
EEE8[0] = 1.0


def projector(v):
    return np.outer(v, np.conj(v))


# -- acceptance verdicts ----------------------------------------------------

ACCEPTANCE_VERDICTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)

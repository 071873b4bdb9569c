import itertools
import math
import warnings

import numpy as np
import pytest

from tcm3.dynamics import PRESETS, SymmetricWavefunction, coherent_amplitudes, evolve, initial_amplitudes
from tcm3.reduced_states import (
    DICKE_ISOMETRY,
    PRODUCT_LABELS,
    atomic_density_sym,
    embed_symmetric,
    from_tensor_order,
    permute_atoms,
    purity,
    to_tensor_order,
    trace_out_last_qubit,
    trace_out_one,
    trace_out_two,
)

from conftest import EEE8, GHZ8, W8, projector, random_density


def test_dicke_isometry_orthonormal():
    np.testing.assert_allclose(DICKE_ISOMETRY.T @ DICKE_ISOMETRY, np.eye(4), atol=1e-15)


def test_tensor_order_round_trip(rng):
    rho = random_density(rng, 8)
    np.testing.assert_array_equal(from_tensor_order(to_tensor_order(rho)), rho)
    # |egg> sits at binary index 0b011
    t = to_tensor_order(projector(np.eye(8)[PRODUCT_LABELS.index("egg")]))
    assert t[3, 3] == 1


def test_ghz_reductions():
    rho8 = projector(GHZ8)
    np.testing.assert_allclose(trace_out_two(rho8), np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(trace_out_one(rho8), np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


def test_w_reductions():
    rho8 = projector(W8)
    # two of the three atoms are excited in every branch
    np.testing.assert_allclose(trace_out_two(rho8), np.diag([2 / 3, 1 / 3]), atol=1e-15)
    expected = np.zeros((4, 4))
    expected[1, 1] = expected[2, 2] = expected[1, 2] = expected[2, 1] = 1 / 3
    expected[0, 0] = 1 / 3
    np.testing.assert_allclose(trace_out_one(rho8), expected, atol=1e-15)


def test_eee_reductions():
    rho8 = projector(EEE8)
    np.testing.assert_allclose(trace_out_two(rho8), np.diag([1, 0]), atol=0)
    np.testing.assert_allclose(trace_out_one(rho8), np.diag([1, 0, 0, 0]), atol=0)


def test_partial_traces_compose(rng):
    rho8 = random_density(rng, 8)
    np.testing.assert_allclose(trace_out_last_qubit(trace_out_one(rho8)), trace_out_two(rho8), atol=1e-14)
    assert np.trace(trace_out_one(rho8)).real == pytest.approx(1.0)


def test_permutation_relabels_slots(rng):
    rho8 = random_density(rng, 8)
    # swapping a and c then tracing out c is the same as tracing out a
    swapped = permute_atoms(rho8, (2, 1, 0))
    t = to_tensor_order(rho8).reshape(2, 4, 2, 4)
    direct = np.einsum("kikj->ij", t)
    bc = trace_out_one(swapped)  # slots (c, b) of the original
    # reorder (c, b) into (b, c)
    np.testing.assert_allclose(bc.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4), direct, atol=1e-14)


@pytest.mark.parametrize("perm", list(itertools.permutations(range(3))))
def test_symmetric_states_invariant_under_permutation(rng, perm):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho4 = a @ a.conj().T
    rho8 = embed_symmetric(rho4 / np.trace(rho4))
    np.testing.assert_allclose(permute_atoms(rho8, perm), rho8, atol=1e-14)


def test_purity_matches_trace_of_square(rng):
    rho = random_density(rng, 4, rank=2)
    assert purity(rho) == pytest.approx(np.trace(rho @ rho).real, abs=1e-14)
    assert purity(projector(GHZ8)) == pytest.approx(1.0)


def test_density_of_initial_states(initial_states):
    g = atomic_density_sym(initial_states["ghz"])
    assert g[0, 3].real == pytest.approx(0.5, abs=1e-12)
    assert g[0, 0].real == pytest.approx(0.5, abs=1e-12)
    w = atomic_density_sym(initial_states["w"])
    np.testing.assert_allclose(w, np.diag([0, 1, 0, 0]), atol=1e-12)
    np.testing.assert_allclose(trace_out_two(embed_symmetric(w)), np.diag([2 / 3, 1 / 3]), atol=1e-12)


def test_density_matches_explicit_field_trace(initial_states):
    """Compare with the atoms-times-field vector built in a Fock space."""
    psi = evolve(initial_states["ghz"], 4.2)
    size = psi.n_max + 1
    dim = size + 3
    full = np.zeros((4, dim), dtype=complex)  # rows: Dicke level, cols: photon number
    for n in range(size):
        for i in range(4):
            full[i, n + i] += psi.x[n, i]
    ref = full @ full.conj().T
    ref /= np.trace(ref).real
    np.testing.assert_allclose(atomic_density_sym(psi), ref, atol=1e-13)


@pytest.mark.parametrize("kind", ["eee", "ghz", "w"])
@pytest.mark.parametrize("tau", [0.0, 9.0, 31.4, 62.8])
def test_density_is_a_state(initial_states, kind, tau):
    rho = atomic_density_sym(evolve(initial_states[kind], tau))
    assert np.allclose(rho, rho.conj().T, atol=0)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
    assert np.linalg.eigvalsh(rho).min() > -1e-12
    # purity via the 4x4 equals purity of the embedded 8x8
    assert purity(rho) == pytest.approx(purity(embed_symmetric(rho)), abs=1e-13)


def test_truncation_leak_warns():
    x = np.zeros((4, 4), dtype=complex)
    x[3, 0] = 1.0  # |eee; 3> pairs with |W; 5> which lies past the cutoff
    x[3, 1] = 0.5
    psi = SymmetricWavefunction(0.0, x / np.linalg.norm(x))
    with pytest.warns(RuntimeWarning):
        atomic_density_sym(psi)
    field = coherent_amplitudes(5.0, pad=5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        atomic_density_sym(initial_amplitudes(PRESETS["ghz"], field))

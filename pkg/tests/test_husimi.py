import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tcm3.dynamics import evolve
from tcm3.husimi import DEFAULT_WINDOW, QGrid, default_window, peak_census, q_grid, q_value, q_values

T1 = math.pi * 10 / 3


def test_center_value(initial_states):
    assert q_value(initial_states["eee"], 10.0) == pytest.approx(1 / math.pi, abs=1e-12)


def test_gaussian_falloff(initial_states):
    psi = initial_states["eee"]
    # the overlap with |beta> is a Poisson-weighted sum around n = |alpha beta|,
    # so points further out feel the Fock cutoff slightly more
    for beta in (10 + 3j, 10 - 3j, 7.0):
        assert q_value(psi, beta) == pytest.approx(math.exp(-9) / math.pi, rel=1e-9)
    assert q_value(psi, 13.0) == pytest.approx(math.exp(-9) / math.pi, rel=1e-4)
    assert q_value(psi, 10 + 3j) == pytest.approx(3.93e-5, abs=1e-7)


def test_vectorised_matches_pointwise(initial_states):
    psi = evolve(initial_states["ghz"], 7.0)
    pts = np.array([[1 + 1j, 9.5], [-3j, 8 - 4j]])
    np.testing.assert_allclose(q_values(psi, pts), [[q_value(psi, b) for b in row] for row in pts], rtol=1e-13)


@settings(max_examples=40, deadline=None)
@given(re=st.floats(-16, 16), im=st.floats(-16, 16), tau=st.floats(0, 70))
def test_q_bounded(initial_states, re, im, tau):
    q = q_value(evolve(initial_states["w"], tau), complex(re, im))
    assert 0 <= q <= 1 / math.pi + 1e-12


def test_grid_at_start(initial_states):
    g = q_grid(initial_states["eee"])
    assert g.resolution == (201, 201)
    assert g.argmax() == pytest.approx((10.05, 0.0))
    assert g.values.max() == pytest.approx(1 / math.pi, rel=0.02)
    assert g.integral() == pytest.approx(1.0, abs=1e-3)
    assert len(peak_census(g, 0.05 * g.values.max())) == 1


def test_grid_orientation(initial_states):
    g = q_grid(initial_states["eee"], window=(5, 15, -2, 2), resolution=(11, 5))
    # values[ix, iy]: first axis real part, second imaginary part
    assert g.values[5, 2] == pytest.approx(1 / math.pi)
    assert g.re_axis[5] == 10 and g.im_axis[2] == 0


def test_grid_validation(initial_states):
    with pytest.raises(ValueError):
        q_grid(initial_states["eee"], resolution=(1, 10))
    with pytest.raises(ValueError):
        q_grid(initial_states["eee"], window=(1, 0, -1, 1))
    assert default_window(100) == (-15, 15, -15, 15)
    assert DEFAULT_WINDOW == default_window(100)


@pytest.mark.parametrize("kind", ["eee", "ghz", "w"])
def test_grid_normalised_along_evolution(initial_states, kind):
    for tau in (0.0, 20.9, 45.0):
        g = q_grid(evolve(initial_states[kind], tau), window=(-16, 16, -16, 16), resolution=(121, 121))
        assert g.integral() == pytest.approx(1.0, abs=1e-3)
        assert g.values.min() >= 0


def test_maximum_moves_continuously(initial_states):
    psi0 = initial_states["ghz"]
    diag = math.hypot(30, 30)
    prev = None
    for tau in np.arange(0.0, 4.01, 0.2):
        g = q_grid(evolve(psi0, tau), resolution=(121, 121))
        here = np.array(g.argmax())
        if prev is not None:
            assert np.linalg.norm(here - prev) < diag / 10
        prev = here


def test_eee_splits_into_four(initial_states):
    g = q_grid(evolve(initial_states["eee"], T1))
    peaks = peak_census(g, 0.05 * g.values.max())
    assert len(peaks) == 4
    big, small = peaks[:2], peaks[2:]
    angle = lambda p: abs(math.atan2(p[0][1], p[0][0]))
    # the two tall peaks have rotated less than the two short ones
    assert max(angle(p) for p in big) < min(angle(p) for p in small)
    assert big[0][0][1] == pytest.approx(-big[1][0][1])


def test_ghz_splits_into_two(initial_states):
    g = q_grid(evolve(initial_states["ghz"], T1))
    peaks = peak_census(g, 0.05 * g.values.max())
    assert len(peaks) == 2
    (p_big, _), (p_small, _) = peaks
    assert abs(math.atan2(p_big[1], p_big[0])) < abs(math.atan2(p_small[1], p_small[0]))


def test_eee_cat_at_half_revival(initial_states):
    g = q_grid(evolve(initial_states["eee"], 3 * T1))
    peaks = peak_census(g, 0.05 * g.values.max())
    assert len(peaks) >= 2
    (a, _), (b, _) = peaks[:2]
    assert math.dist(a, b) > 10


def test_ghz_single_peak_at_half_revival(initial_states):
    """The two GHZ components meet again in one lobe at tau = pi sqrt(nbar)."""
    g = q_grid(evolve(initial_states["ghz"], 3 * T1))
    peaks = peak_census(g, 0.05 * g.values.max())
    assert len(peaks) == 1
    assert math.hypot(*peaks[0][0]) == pytest.approx(10.0, abs=0.5)


def test_peak_census_ordering_and_floor():
    v = np.zeros((5, 5))
    v[1, 1], v[3, 3], v[1, 3] = 0.2, 0.5, 0.01
    g = QGrid(0, 4, 0, 4, v)
    peaks = peak_census(g, 0.05)
    assert [h for _, h in peaks] == [0.5, 0.2]
    assert peaks[0][0] == (3.0, 3.0)
    with pytest.raises(ValueError):
        peak_census(g, 0.0)
    # a plateau has no strict maximum
    assert peak_census(QGrid(0, 1, 0, 1, np.ones((3, 3))), 0.5) == []

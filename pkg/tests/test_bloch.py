import math

import numpy as np
import pytest

from openqnet import (
    DynClass,
    NetworkParams,
    ParameterError,
    SingularIntervalError,
    SubsystemSelector,
    Verdict,
    affine_map,
    axial_positivity_band,
    ball_membership,
    classify,
    evolve_bloch,
    materialize_density,
    physical_bloch_z,
    reduced_state,
)

N5 = NetworkParams(5, 1.0)
C1 = DynClass.CONTAINS_EXCITED
C0 = DynClass.EXCLUDES_EXCITED
HALF = math.pi / 5
FULL = 2 * math.pi / 5


def test_identity_map():
    bmap = affine_map(N5, C1, 0.9, 0.9)
    assert bmap.transverse_scale == pytest.approx(1.0)
    assert bmap.rotation_angle == pytest.approx(0.0)
    assert bmap.z_scale == pytest.approx(1.0)
    assert bmap.z_shift == pytest.approx(0.0)


def test_contracting_map_elements():
    bmap = affine_map(N5, C1, 0.0, HALF)
    assert bmap.transverse_scale == pytest.approx(0.6, abs=1e-13)
    assert bmap.z_scale == pytest.approx(0.36, abs=1e-13)
    assert bmap.z_shift == pytest.approx(0.64, abs=1e-13)


def test_expanding_map_elements():
    bmap = affine_map(N5, C1, HALF, FULL)
    assert bmap.transverse_scale == pytest.approx(5 / 3, abs=1e-13)
    assert bmap.z_scale == pytest.approx(25 / 9, abs=1e-13)
    assert bmap.z_shift == pytest.approx(-16 / 9, abs=1e-13)


def test_evolve_examples():
    bmap = affine_map(N5, C1, HALF, FULL)
    image = evolve_bloch(bmap, np.array([0.0, 0.0, 0.28]))
    assert np.allclose(image, [0.0, 0.0, -1.0], atol=1e-12)

    bmap0 = affine_map(N5, C0, 0.0, HALF)
    image = evolve_bloch(bmap0, np.array([0.0, 0.0, 1.0]))
    assert np.allclose(image, [0.0, 0.0, 0.68], atol=1e-13)


def test_fixed_points():
    rng = np.random.default_rng(31)
    for _ in range(50):
        t1, t2 = rng.uniform(0, N5.period, size=2)
        north = evolve_bloch(affine_map(N5, C1, t1, t2), np.array([0.0, 0.0, 1.0]))
        assert np.abs(north - [0.0, 0.0, 1.0]).max() <= 1e-12
        south = evolve_bloch(affine_map(N5, C0, t1, t2), np.array([0.0, 0.0, -1.0]))
        assert np.abs(south - [0.0, 0.0, -1.0]).max() <= 1e-12


def test_axial_band_examples():
    identity = affine_map(N5, C1, 0.4, 0.4)
    assert axial_positivity_band(identity) == pytest.approx((-1.0, 1.0))

    expanding = affine_map(N5, C1, HALF, FULL)
    lo, hi = axial_positivity_band(expanding)
    assert lo == pytest.approx(0.28, abs=1e-12)
    assert hi == pytest.approx(1.0, abs=1e-12)


def test_contracting_maps_preserve_full_interval():
    # Forward-dispersal windows in the first half-period are contracting.
    for tau1, tau2 in [(0.0, 0.2), (0.1, 0.45), (0.3, 0.5)]:
        for cls in (C0, C1):
            bmap = affine_map(N5, cls, tau1 * N5.period, tau2 * N5.period)
            lo, hi = axial_positivity_band(bmap)
            assert lo == pytest.approx(-1.0, abs=1e-12)
            assert hi == pytest.approx(1.0, abs=1e-12)


def test_band_full_iff_cp():
    rng = np.random.default_rng(43)
    for _ in range(200):
        cls = C1 if rng.random() < 0.5 else C0
        t1, t2 = rng.uniform(0, N5.period, size=2)
        band = axial_positivity_band(affine_map(N5, cls, t1, t2))
        full = band is not None and abs(band[0] + 1) <= 1e-9 and abs(band[1] - 1) <= 1e-9
        verdict = classify(N5, SubsystemSelector(1, cls), t1, t2)
        assert full == (verdict.verdict is Verdict.POSITIVE_AND_CP)


def test_band_contains_fixed_point():
    rng = np.random.default_rng(47)
    for _ in range(100):
        cls = C1 if rng.random() < 0.5 else C0
        t1, t2 = rng.uniform(0, N5.period, size=2)
        lo, hi = axial_positivity_band(affine_map(N5, cls, t1, t2))
        pole = 1.0 if cls is C1 else -1.0
        assert lo - 1e-12 <= pole <= hi + 1e-12


def test_ball_membership():
    identity = affine_map(N5, C1, 0.4, 0.4)
    assert ball_membership(identity, np.array([0.3, -0.2, 0.5]))

    expanding = affine_map(N5, C1, HALF, FULL)
    assert ball_membership(expanding, np.array([0.0, 0.0, 0.28]))  # image norm exactly 1
    assert not ball_membership(expanding, np.array([0.5, 0.0, 0.28]))
    with pytest.raises(ParameterError):
        ball_membership(identity, np.array([1.0, 1.0, 1.0]))


def test_never_visited_band():
    # 61 points puts tau = 0.5 and 1.0 on the grid, where the band's lower
    # edge attains its supremum 0.28.
    taus = np.linspace(0.0, 1.0, 61)
    lo_max = -1.0
    for tau1 in taus:
        for tau2 in taus:
            lo, hi = axial_positivity_band(
                affine_map(N5, C1, tau1 * N5.period, tau2 * N5.period)
            )
            lo_max = max(lo_max, lo)
            assert hi == pytest.approx(1.0, abs=1e-12)
    orbit_max = max(
        physical_bloch_z(N5, C1, tau * N5.period) for tau in np.linspace(0, 1, 600)
    )
    # States with b_z in (0.28, 1] lie inside every propagator's positivity
    # domain, yet the physical orbit never climbs above 0.28.
    assert lo_max == pytest.approx(0.28, abs=1e-12)
    assert orbit_max <= 0.28 + 1e-12


def test_orbit_consistency_with_states():
    rng = np.random.default_rng(53)
    for cls in (C0, C1):
        sel = SubsystemSelector(1, cls)
        for _ in range(40):
            t1, t2 = rng.uniform(0, N5.period, size=2)
            bmap = affine_map(N5, cls, t1, t2)
            z1 = physical_bloch_z(N5, cls, t1)
            image = evolve_bloch(bmap, np.array([0.0, 0.0, z1]))
            rho2 = materialize_density(reduced_state(N5, sel, t2))
            z2 = float((rho2[0, 0] - rho2[1, 1]).real)
            assert abs(image[2] - z2) <= 1e-10
            assert abs(physical_bloch_z(N5, cls, t2) - z2) <= 1e-12


def test_two_qubit_anchor_singularity():
    params = NetworkParams(2, 1.0)
    with pytest.raises(SingularIntervalError):
        affine_map(params, C1, math.pi / 2, 2.0)
    # Away from odd half-periods the N=2 map is fine.
    bmap = affine_map(params, C1, 0.3, 1.1)
    assert math.isfinite(bmap.z_scale)

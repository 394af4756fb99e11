import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fluxhalf import integrand as ig
from fluxhalf.errors import InvalidDomain
from fluxhalf.modes import INF, Field, Medium, dielectric_kz, evanescent_kappa_max, mode_intensity


def substitution_oracle(kp, kz, n, z, field):
    """Brace terms written out one by one from the printed integrands."""
    k = math.hypot(kp, kz)
    kdz = math.sqrt((n * n - 1) * kp * kp + n * n * kz * kz)
    rte = (kz - kdz) / (kz + kdz)
    rtm = (n * n * kz - kdz) / (n * n * kz + kdz)
    cos2 = math.cos(2 * kz * z)
    brace = 2 + rte**2 + rtm**2
    if field == "E":
        brace += 2 * rte * cos2 + 2 * (2 * kp * kp / (k * k) - 1) * rtm * cos2
    else:
        brace += 2 * (kp * kp - kz * kz) / (k * k) * rte * cos2 + 2 * rtm * cos2
    brace += kz / kdz * ((2 * kdz / (kdz + kz)) ** 2 + (2 * n * kdz / (kdz + n * n * kz)) ** 2)
    return kp * k * brace


def test_electric_traveling_vacuum():
    for kp, kz, z in [(0.3, 2.0, 0.0), (1.5, 0.2, 3.1)]:
        assert ig.electric_traveling(kp, kz, 1.0, z) == pytest.approx(4 * kp * math.hypot(kp, kz), rel=1e-14)
        assert ig.magnetic_traveling(kp, kz, 1.0, z) == pytest.approx(4 * kp * math.hypot(kp, kz), rel=1e-14)


def test_electric_traveling_dielectric_example():
    value = ig.electric_traveling(3.0, 4.0, 2.0, 0.0)
    assert value == pytest.approx(substitution_oracle(3.0, 4.0, 2.0, 0.0, "E"), rel=1e-13)
    assert value == pytest.approx(45.60, abs=5e-3)


def test_magnetic_traveling_dielectric_example():
    e = ig.electric_traveling(3.0, 4.0, 2.0, 0.0)
    b = ig.magnetic_traveling(3.0, 4.0, 2.0, 0.0)
    assert b == pytest.approx(substitution_oracle(3.0, 4.0, 2.0, 0.0, "B"), rel=1e-13)
    # only the two interference terms differ
    kp, kz, k = 3.0, 4.0, 5.0
    kdz = math.sqrt(91)
    rte, rtm = (kz - kdz) / (kz + kdz), (4 * kz - kdz) / (4 * kz + kdz)
    tilt = (kp * kp - kz * kz) / (k * k)
    diff = kp * k * (2 * rte + 2 * tilt * rtm - 2 * tilt * rte - 2 * rtm)
    assert e - b == pytest.approx(diff, rel=1e-12)


@pytest.mark.parametrize("field", ["E", "B"])
def test_substitution_oracle_random(rng, field):
    for _ in range(200):
        kp, kz = rng.uniform(0.01, 5, 2)
        n, z = rng.uniform(1, 30), rng.uniform(0, 3)
        spec = ig.IntegrandSpec(field, Medium(n, 1.0), z)
        assert ig.traveling(kp, kz, spec) == pytest.approx(substitution_oracle(kp, kz, n, z, field), rel=1e-12)


def test_conductor_pointwise_limit_of_dielectric(rng):
    # |r_te + 1| <= 2c/n and |r_tm - 1| <= 2/(n c) with c = k_z/k, so the
    # deviation is O(1/n) with a direction-dependent constant.
    n = 1e6
    for _ in range(500):
        kp, kz = rng.uniform(0.01, 5, 2)
        k = math.hypot(kp, kz)
        c = kz / k
        z = rng.uniform(0, 2)
        for field in ("E", "B"):
            spec = ig.IntegrandSpec(field, Medium(n, 1.0), z)
            lim = ig.conductor_limit(kp, kz, z, field)
            dev = abs(ig.traveling(kp, kz, spec) - lim)
            assert dev <= kp * k * (4 * c + 4 / c) / n * (1 + 1e-6)
            if 0.3 <= c <= 0.8:
                assert dev / lim <= 10 / n


def test_conductor_limit_matches_brace_form(rng):
    kp, kz, z = rng.uniform(0.1, 3, 3)
    k = math.hypot(kp, kz)
    c = math.cos(2 * kz * z)
    assert ig.conductor_limit(kp, kz, z, "E") == pytest.approx(kp * k * (4 - 4 * kz**2 / k**2 * c), rel=1e-13)
    assert ig.conductor_limit(kp, kz, z, "B") == pytest.approx(kp * k * (4 + 4 * kz**2 / k**2 * c), rel=1e-13)


def test_conductor_limit_examples():
    kp, kz = 0.6, 1.1
    k = math.hypot(kp, kz)
    assert ig.conductor_limit(kp, kz, 0.0, "E") == pytest.approx(4 * kp**3 / k, rel=1e-15)
    assert ig.conductor_limit(kp, kz, 0.0, "B") == pytest.approx(4 * kp / k * (kp**2 + 2 * kz**2), rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-3, 1e2), st.floats(1e-3, 1e2), st.floats(0, 50))
def test_conductor_duality(kp, kz, z):
    total = ig.conductor_limit(kp, kz, z, "E") + ig.conductor_limit(kp, kz, z, "B")
    assert total == pytest.approx(8 * kp * math.hypot(kp, kz), rel=1e-13)


def test_evanescent_example_frequency_convention():
    n = math.sqrt(2)
    value = ig.electric_evanescent(1.0, 0.5, n, 0.0, evanescent_k="frequency")
    # k_dz = 1/sqrt(2), bracket = 16/3, k = sqrt(0.75)
    oracle = 1.0 * math.sqrt(0.75) * (0.5 / math.sqrt(0.5)) * 16 / 3
    assert value == pytest.approx(oracle, rel=1e-13)
    assert value == pytest.approx(3.266, abs=5e-4)


def test_evanescent_example_euclidean_convention():
    n = math.sqrt(2)
    oracle = 1.0 * math.sqrt(1.25) * (0.5 / math.sqrt(0.5)) * 16 / 3
    assert ig.electric_evanescent(1.0, 0.5, n, 0.0) == pytest.approx(oracle, rel=1e-13)
    assert ig.magnetic_evanescent(1.0, 0.5, n, 0.0) == ig.electric_evanescent(1.0, 0.5, n, 0.0)


def test_evanescent_vanishes_at_edges():
    assert ig.electric_evanescent(1.0, 0.3, 1.0, 0.0) == 0.0
    n = 1.8
    kmax = evanescent_kappa_max(1.0, n)
    assert ig.electric_evanescent(1.0, kmax * (1 - 1e-12), n, 0.0) < 1e-4
    with pytest.raises(InvalidDomain):
        ig.electric_evanescent(1.0, kmax, n, 0.0)
    with pytest.raises(InvalidDomain):
        ig.electric_evanescent(1.0, -0.1, n, 0.0)


def test_evanescent_decays_with_index():
    kp, kappa, z = 1.0, 0.4, 0.2
    prev = None
    for n in (1e2, 1e3, 1e4, 1e5):
        v = ig.electric_evanescent(kp, kappa, n, z)
        if prev is not None:
            assert v <= prev * 10 ** -0.9
        prev = v
    assert v * 1e5 < 50


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-3, 1e2), st.floats(1e-3, 1e2), st.floats(1.0, 1e3), st.floats(0, 10))
def test_unrenormalized_positive(kp, kz, n, z):
    spec_e = ig.IntegrandSpec("E", Medium(n, 1.0), z)
    spec_b = ig.IntegrandSpec("B", Medium(n, 1.0), z)
    assert ig.traveling(kp, kz, spec_e) >= 0
    assert ig.traveling(kp, kz, spec_b) >= 0
    kappa = 0.5 * evanescent_kappa_max(kp, n)
    assert ig.evanescent(kp, kappa, spec_e) >= 0


def test_cross_check_against_mode_intensities(rng):
    worst = 0.0
    for _ in range(1000):
        n = rng.uniform(1, 20)
        kp, kz = rng.uniform(0.01, 5, 2)
        z = rng.uniform(0, 4)
        jac = n * n * kz / dielectric_kz(kp, kz, n)
        for field in (Field.ELECTRIC, Field.MAGNETIC):
            modes = sum(mode_intensity("R", p, kp, kz, z, n, field) for p in ("TE", "TM"))
            modes += jac * sum(mode_intensity("L", p, kp, kz, z, n, field) for p in ("TE", "TM"))
            expect = kp * math.hypot(kp, kz) * modes
            got = ig.traveling(kp, kz, ig.IntegrandSpec(field, Medium(n, 1.0), z))
            worst = max(worst, abs(got - expect) / abs(expect))
    assert worst <= 1e-10


def test_renormalized_examples(rng):
    spec = ig.IntegrandSpec("E", Medium(1.0, 1.0), 0.4, renormalized=True)
    assert ig.renormalized_integrand(0.3, 0.8, spec) == 0.0
    kp, kz = 0.7, 1.2
    k = math.hypot(kp, kz)
    cspec = ig.IntegrandSpec("E", Medium(INF, 1.0), 0.0, renormalized=True)
    assert ig.renormalized_integrand(kp, kz, cspec) == pytest.approx(-4 * kp * kz**2 / k, rel=1e-15)
    for _ in range(50):
        kp, kz, z = rng.uniform(0.05, 3, 3)
        e = ig.renormalized_integrand(kp, kz, ig.IntegrandSpec("E", Medium(INF, 1.0), z, True))
        b = ig.renormalized_integrand(kp, kz, ig.IntegrandSpec("B", Medium(INF, 1.0), z, True))
        assert b == -e


def test_renormalized_equals_literal_subtraction(rng):
    for _ in range(300):
        kp, kz = rng.uniform(0.01, 5, 2)
        n, z = rng.uniform(1, 40), rng.uniform(0, 3)
        for field in "EB":
            renorm = ig.renormalized_integrand(kp, kz, ig.IntegrandSpec(field, Medium(n, 1.0), z, True))
            raw = ig.traveling(kp, kz, ig.IntegrandSpec(field, Medium(n, 1.0), z))
            vac = ig.traveling(kp, kz, ig.IntegrandSpec(field, Medium(1.0, 1.0), z))
            assert renorm == pytest.approx(raw - vac, abs=1e-13 * vac)


def test_renormalized_evanescent_unchanged():
    spec = ig.IntegrandSpec("E", Medium(3.0, 1.0), 0.2, renormalized=True)
    assert ig.renormalized_integrand(1.0, 0.3, spec, "evanescent") == ig.electric_evanescent(1.0, 0.3, 3.0, 0.2)


def test_profiles_match_pointwise(rng):
    for _ in range(100):
        n = rng.uniform(1.01, 50)
        c = rng.uniform(0.01, 0.99)
        s = math.sqrt(1 - c * c)
        steady, inter = ig.traveling_profile(c, n, "E")
        assert steady == pytest.approx(4.0, rel=1e-13)
        z = rng.uniform(0, 2)
        expect = ig.electric_traveling(s, c, n, z)
        assert s * (steady + inter * math.cos(2 * c * z)) == pytest.approx(expect, rel=1e-12)

        phi = rng.uniform(0.01, 1.5)
        for conv in ig.EVANESCENT_CONVENTIONS:
            w, jac, bracket, rho = ig.evanescent_profile(phi, n, conv)
            point = ig.electric_evanescent(1.0, w, n, 0.0, conv)
            assert rho * bracket == pytest.approx(point, rel=1e-10)


def test_input_validation():
    with pytest.raises(InvalidDomain):
        ig.electric_traveling(1.0, 1.0, INF, 0.0)
    with pytest.raises(InvalidDomain):
        ig.electric_traveling(1.0, 1.0, 2.0, -0.1)
    with pytest.raises(InvalidDomain):
        ig.IntegrandSpec("E", Medium(2.0, 1.0), -1.0)
    with pytest.raises(InvalidDomain):
        ig.IntegrandSpec("E", Medium(2.0, 1.0), 1.0, evanescent_k="other")
    assert np.isfinite(ig.electric_traveling(1.0, 1.0, 2.0, 0.0))

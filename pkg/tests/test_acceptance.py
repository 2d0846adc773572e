"""Acceptance checks; the terminal summary prints one pass/fail line per criterion."""

import csv
import io
import math
import time

import numpy as np
import pytest

from cavityspec import cli, models, observables as obs, specfun, tables
from cavityspec.models import RobinParam

DIRICHLET = RobinParam.dirichlet()
TOL = tables.TOLERANCE
PROPERTIES = "property suites"


def zero_mode(m, R):
    return models.free_spectrum(R, RobinParam(-abs(m) / R), m, 1)[0]


def box_ground(row):
    return models.sho_spectrum(row.size, RobinParam(row.gamma), "even", 1)[0]


def disc_ground(row):
    return models.iso_spectrum(row.size, RobinParam(row.gamma), 0, 1)[0]


@pytest.mark.criterion(1, "box table reproduction")
class TestBoxTable:
    @pytest.mark.parametrize("row", tables.BOX_ROWS, ids=lambda r: f"L{r.size:g}")
    def test_row(self, row):
        st = box_ground(row)
        assert abs(st.spectral - row.nu) <= TOL
        assert abs(st.energy - row.energy) <= TOL

    def test_runtime(self):
        start = time.perf_counter()
        for row in tables.BOX_ROWS:
            box_ground(row)
        assert time.perf_counter() - start <= 2.0


@pytest.mark.criterion(2, "disc table reproduction")
class TestDiscTable:
    @pytest.mark.parametrize("row", tables.DISC_ROWS, ids=lambda r: f"R{r.size:g}")
    def test_row(self, row):
        st = disc_ground(row)
        assert abs(st.spectral - row.nu) <= TOL
        assert abs(st.energy - row.energy) <= TOL

    def test_runtime(self):
        start = time.perf_counter()
        for row in tables.DISC_ROWS:
            disc_ground(row)
        assert time.perf_counter() - start <= 2.0


@pytest.mark.criterion(3, "Dirichlet disc equals Bessel zeros")
@pytest.mark.parametrize("m", [0, 1, -1])
def test_dirichlet_disc_bessel_zeros(m, bessel_zeros):
    got = models.free_spectrum(1.0, DIRICHLET, m, 4).spectral
    want = bessel_zeros[abs(m)][:4]
    assert np.max(np.abs(np.asarray(got) - want)) <= 1e-9


@pytest.mark.criterion(4, "spectrum shift at the zero-mode gamma")
@pytest.mark.parametrize("m", [0, 1, 2])
def test_spectrum_shift_identity(m):
    R = 1.0
    spec = models.free_spectrum(R, RobinParam(-abs(m) / R), m, 5)
    assert spec[0].zero_mode
    shifted = [s.spectral for s in spec if not s.zero_mode][:4]
    dirichlet = models.free_spectrum(R, DIRICHLET, abs(m) + 1, 4).spectral
    assert np.max(np.abs(np.asarray(shifted) - dirichlet)) <= 1e-9


@pytest.mark.criterion(5, "bound-state asymptote")
@pytest.mark.parametrize("R", [1.0, 2.0])
@pytest.mark.parametrize("k", [50.0, 100.0])
def test_bound_state_asymptote(k, R):
    gamma = -k / R
    spec = models.free_spectrum(R, RobinParam(gamma), 0, 2)
    bound = [s for s in spec if s.negative_energy]
    assert len(bound) == 1
    e = models.absolute_energy(bound[0])
    scale = gamma * gamma / 2.0
    assert abs(e + scale) / scale <= 1.5 / (abs(gamma) * R)


@pytest.mark.criterion(6, "uncertainty bound saturation")
class TestSaturation:
    @pytest.mark.parametrize("R", [0.7, 1.0, 2.0])
    def test_constant_zero_mode(self, R):
        rep = obs.uncertainty_check(zero_mode(0, R))
        assert abs(rep.lhs - rep.rhs) <= 1e-9

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_higher_zero_modes_strict(self, m):
        rep = obs.uncertainty_check(zero_mode(m, 1.0))
        assert rep.rhs < 0.0
        assert rep.lhs > rep.rhs


@pytest.mark.criterion(7, "infinite-volume recovery")
class TestInfiniteVolume:
    def test_deep_box(self):
        even = models.sho_spectrum(12.0, DIRICHLET, "even", 2).energies
        odd = models.sho_spectrum(12.0, DIRICHLET, "odd", 2).energies
        got = np.sort(np.concatenate([even, odd]))
        assert np.max(np.abs(got - (np.arange(4) + 0.5))) <= 1e-6

    def test_wide_disc(self):
        got = models.iso_spectrum(8.0, DIRICHLET, 0, 3).energies
        assert np.max(np.abs(got - (2.0 * np.arange(3) + 1.0))) <= 1e-6


@pytest.mark.criterion(8, "special radii")
@pytest.mark.parametrize(
    "m,nu,gamma_of_R,radii",
    [
        (1, 1, lambda R: 0.0, lambda: [models.special_radius_nu_eq_m(1, 0.0)]),
        (0, 0, lambda R: 2.0, lambda: [models.special_radius_nu_eq_m(0, 2.0)]),
        (0, 2, lambda R: 0.0, lambda: models.special_radius_nu_eq_m_plus_2(0, "neumann")),
        (1, 3, lambda R: R, lambda: models.special_radius_nu_eq_m_plus_2(1, "gamma_eq_R")),
    ],
    ids=["m1_neumann", "m0_gamma2", "m0_neumann_nu2", "m1_gamma_eq_R"],
)
def test_special_radii(m, nu, gamma_of_R, radii):
    found = radii()
    assert found
    for R in found:
        assert models.iso_scaled_residual(float(nu), m, R, RobinParam(gamma_of_R(R))) <= 1e-10


@pytest.mark.criterion(9, PROPERTIES)
class TestPropertySpotChecks:
    """Short re-checks; the full suites live in the unit test modules under the same criterion."""

    def test_mirror_in_m(self):
        for model, size in (("disc_iso", 2.0), ("disc_free", 1.0)):
            a = models.spectrum(model, size, RobinParam(-0.4), 2, 3).spectral
            b = models.spectrum(model, size, RobinParam(-0.4), -2, 3).spectral
            np.testing.assert_array_equal(a, b)

    def test_bessel_recurrence(self):
        x = np.linspace(0.5, 20.0, 40)
        r = specfun.bessel_j(1, x) + specfun.bessel_j(3, x) - (4.0 / x) * specfun.bessel_j(2, x)
        assert np.max(np.abs(r)) <= 1e-9

    def test_hermite_reduction(self):
        x = np.linspace(-2.0, 2.0, 9)
        for xi in x:
            want = 2.0 ** (-1.0) * math.exp(-xi * xi / 2) * (4 * xi * xi - 2)
            assert specfun.pcf_d(2.0, math.sqrt(2.0) * xi) == pytest.approx(want, abs=1e-10)


def resonance_row(capsys, *argv):
    code = cli.main(["resonance", *argv])
    out, _ = capsys.readouterr()
    assert code == 0
    return next(csv.DictReader(io.StringIO(out)))


@pytest.mark.criterion(10, "figure-level checks")
class TestFigureLevel:
    def test_box_min_gap_location(self, capsys):
        row = resonance_row(capsys, "--model", "sho1d", "--L", "1.25", "--parity", "even")
        assert -0.1 < float(row["gamma_star"]) < 0.0

    def test_disc_degeneracy_lifted(self):
        one_s = models.iso_spectrum(2.5, DIRICHLET, 0, 2)[1].energy
        zero_d = models.iso_spectrum(2.5, DIRICHLET, 2, 1)[0].energy
        assert abs(one_s - zero_d) > 1e-3

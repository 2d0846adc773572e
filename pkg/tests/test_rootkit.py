import math

import numpy as np
import pytest

from cavityspec import models, specfun
from cavityspec.errors import AccuracyError, BranchLostError, DataError, DomainError
from cavityspec.models import RobinParam
from cavityspec.rootkit import (
    Bracket,
    Branch,
    RootConfig,
    continue_branch,
    dedupe,
    find_roots,
    find_sign_changes,
    min_gap,
    refine,
    refine_all,
)


class TestTypes:
    def test_bracket_invariants(self):
        Bracket(0.0, 1.0, -1.0, 2.0)
        with pytest.raises(DomainError):
            Bracket(1.0, 0.0, -1.0, 1.0)
        with pytest.raises(DomainError):
            Bracket(0.0, 1.0, 1.0, 2.0)
        with pytest.raises(DomainError):
            Bracket(0.0, 1.0, -1.0, math.inf)

    @pytest.mark.parametrize(
        "kwargs", [{"grid_step": 0.0}, {"tol_x": 1e-5}, {"tol_x": 0.0}, {"max_bisections": 59}]
    )
    def test_root_config_invariants(self, kwargs):
        with pytest.raises(DomainError):
            RootConfig(**kwargs)

    def test_branch_lengths(self):
        with pytest.raises(DataError):
            Branch([0.0, 1.0], [1.0])


class TestSignChanges:
    def test_sine(self):
        brackets = find_sign_changes(math.sin, (0.1, 7.0), 0.05)
        assert len(brackets) == 2
        assert brackets[0].lo < math.pi < brackets[0].hi
        assert brackets[1].lo < 2 * math.pi < brackets[1].hi
        assert brackets[0].lo < brackets[1].lo

    def test_tangent_root_is_missed(self):
        assert find_sign_changes(lambda x: x * x, (-1.0, 1.0), 0.05) == []

    def test_non_finite_points_skipped_and_reported(self):
        skipped = []
        f = lambda x: math.nan if abs(x - 0.5) < 0.06 else x - 1.5
        brackets = find_sign_changes(f, (0.0, 3.0), 0.1, skipped=skipped)
        assert len(brackets) == 1 and brackets[0].lo < 1.5 <= brackets[0].hi
        assert skipped and all(abs(x - 0.5) < 0.06 for x in skipped)

    def test_sho_dirichlet_even_levels(self, model_roots):
        want = model_roots["sho_even_dirichlet_L5"]
        f = lambda nu: models.sho_residual(nu, 5.0, RobinParam.dirichlet(), "even")
        brackets = find_sign_changes(f, (-1.0, 8.0), 0.02, vectorized=True)
        assert len(brackets) == len(want) == 3
        for br, nu in zip(brackets, want):
            assert br.lo <= nu <= br.hi

    def test_vectorized_and_scalar_agree(self):
        f = lambda nu: models.sho_residual(nu, 3.0, RobinParam(-0.7), "odd")
        a = find_sign_changes(f, (-5.0, 12.0), 0.02, vectorized=True)
        b = find_sign_changes(f, (-5.0, 12.0), 0.02, vectorized=False)
        assert [(x.lo, x.hi) for x in a] == [(x.lo, x.hi) for x in b]


class TestRefine:
    def test_sine(self):
        br = find_sign_changes(math.sin, (3.0, 3.5), 0.5)[0]
        root = refine(math.sin, br, RootConfig(tol_x=1e-13))
        assert root == pytest.approx(math.pi, abs=1e-12)
        assert abs(math.sin(root)) <= min(abs(br.f_lo), abs(br.f_hi))

    def test_bessel_zero(self):
        f = lambda x: specfun.bessel_j(0, x)
        root = refine(f, Bracket(2.0, 3.0, f(2.0), f(3.0)))
        assert root == pytest.approx(2.404825557695773, abs=1e-10)

    def test_sho_box_resonance(self):
        f = lambda nu: models.sho_residual(nu, 5.0, RobinParam(-1.8735), "even", form="literal")
        root = refine(f, Bracket(-0.2, 0.0, f(-0.2), f(0.0)))
        assert root == pytest.approx(-0.0962, abs=1e-3)

    def test_exhaustion_carries_bracket(self):
        with pytest.raises(AccuracyError) as info:
            refine(lambda x: x - 0.3, Bracket(0.0, 1e12, -0.3, 1e12), RootConfig(tol_x=1e-10, max_bisections=60))
        assert info.value.bracket is not None
        assert info.value.bracket.lo < 0.3 < info.value.bracket.hi

    def test_refine_all_matches_scalar(self):
        f = np.cos
        brackets = find_sign_changes(f, (0.0, 10.0), 0.1, vectorized=True)
        vec = refine_all(f, brackets)
        one = [refine(f, b) for b in brackets]
        np.testing.assert_allclose(vec, one, atol=2e-10)
        np.testing.assert_allclose(vec, [math.pi / 2, 3 * math.pi / 2, 5 * math.pi / 2], atol=1e-10)

    def test_roots_sorted_and_deduplicated(self):
        roots = find_roots(lambda x: math.sin(3 * x), (0.05, 6.0))
        assert np.all(np.diff(roots) > 2e-10)
        np.testing.assert_array_equal(dedupe([1.0, 1.0 + 1e-11, 2.0], 1e-10), [1.0, 2.0])


class TestContinuation:
    @pytest.mark.criterion(9, "property suites")
    def test_free_disc_branch_monotone_from_zero_mode(self):
        grid = np.tan(np.linspace(0.0, 1.5, 41))
        family = models.residual_family("disc_free", 1.0, 0)
        branch = continue_branch(family, grid, 0.0, search_interval=(0.0, 20.0))
        energies = branch.roots**2
        assert np.all(np.diff(energies) >= -1e-9)
        end = models.free_spectrum(1.0, RobinParam(float(grid[-1])), 0, 1)[0].spectral
        assert branch.roots[-1] == pytest.approx(end, abs=1e-9)

    def test_dirichlet_endpoint(self):
        family = models.residual_family("sho1d", 5.0, "even")
        u = np.linspace(0.0, 1.569, 40)
        grid = np.tan(u) / 2.5
        seed = models.sho_spectrum(5.0, RobinParam(float(grid[0])), "even", 1)[0].spectral
        branch = continue_branch(family, grid, seed, search_interval=(-5.0, 20.0))
        dirichlet = models.sho_spectrum(5.0, RobinParam.dirichlet(), "even", 1)[0].spectral
        assert abs(branch.roots[-1] - dirichlet) <= 1e-3
        assert np.all(np.diff(branch.roots) >= -1e-9)
        assert branch.jumps == []

    def test_branch_loss_reports_partial(self):
        # The root runs off the interval at gamma = 2.
        family = lambda g, x: x - g
        with pytest.raises(BranchLostError) as info:
            continue_branch(family, [0.0, 1.0, 2.0], 0.0, search_interval=(-1.0, 1.5))
        assert info.value.index == 2
        np.testing.assert_allclose(info.value.partial.roots, [0.0, 1.0], atol=1e-9)

    def test_jump_flagged(self):
        family = lambda g, x: x - (0.0 if g < 2.5 else 5.0)
        branch = continue_branch(family, [0.0, 1.0, 2.0, 3.0], 0.0)
        assert branch.jumps == [3]

    def test_energy_map(self):
        branch = continue_branch(lambda g, x: x - g, [0.0, 0.5, 1.0], 0.0, energy_map=lambda r: r + 0.5)
        np.testing.assert_allclose(branch.energies, [0.5, 1.0, 1.5], atol=1e-9)


class TestMinGap:
    def test_parallel_branches_tie_to_start(self):
        grid = np.linspace(-1.0, 1.0, 11)
        a = Branch(grid, grid.copy())
        b = Branch(grid, grid + 2.0)
        g_star, gap = min_gap(a, b)
        assert g_star == -1.0 and gap == pytest.approx(2.0)

    def test_refines_between_grid_points(self):
        grid = np.linspace(-1.0, 1.0, 9)
        gap = lambda g: 0.1 + (g - 0.13) ** 2
        a = Branch(grid, np.zeros_like(grid))
        b = Branch(grid, np.array([gap(g) for g in grid]))
        g_star, width = min_gap(a, b, gap)
        assert g_star == pytest.approx(0.13, abs=1e-6)
        assert width == pytest.approx(0.1, abs=1e-10)

    def test_crossing_is_data_error(self):
        grid = np.linspace(0.0, 1.0, 5)
        with pytest.raises(DataError, match="cross"):
            min_gap(Branch(grid, grid), Branch(grid, 1.0 - grid))

    def test_grids_must_match(self):
        with pytest.raises(DataError):
            min_gap(Branch([0.0, 1.0], [0.0, 0.0]), Branch([0.0, 2.0], [1.0, 1.0]))

import numpy as np
import pytest

from modop import (
    DimensionUnsupported,
    GridMismatch,
    SampledFunction,
    UniformGrid,
    Weight,
    ZeroWindow,
    amalgam_norm,
    bessel_potential,
    constant_symbol,
    default_window,
    forward_ft,
    lp_norm,
    modulation_norm,
    sjostrand_norm,
    sobolev_norm,
    stft,
    translate,
)
from modop.analysis import phase_space_window
from modop.exponents import from_p

import oracles
from conftest import make_bandlimited, rel_err, unit_gaussian

TWO = from_p(2)


def test_stft_matches_direct_quadrature(tiny_grid):
    f = make_bandlimited(tiny_grid, seed=4, modes=3)
    g = unit_gaussian(tiny_grid)
    got = stft(f, g)
    want = oracles.direct_stft(f.values, g.values, tiny_grid)
    assert rel_err(got.values, want) <= 1e-12


def test_stft_at_origin_is_window_energy(default_grid):
    g = unit_gaussian(default_grid)
    v = stft(g, g)
    n = default_grid.points_per_axis
    assert abs(v.values[n // 2, n // 2] - 1.0) <= 1e-10


def test_stft_gaussian_closed_form(default_grid):
    g = unit_gaussian(default_grid)
    v = stft(g, g)
    x = np.asarray(v.x_axis_points)
    xi = np.asarray(v.xi_axis_points)
    want = oracles.gauss_stft_magnitude(x[:, None], xi[None, :])
    window = (np.abs(x) <= 3.0)[:, None] & (np.abs(xi) <= 3.0)[None, :]
    err = np.abs(np.abs(v.values) - want)[window]
    assert (err / want[window]).max() <= 1e-6


def test_stft_translation_covariance(default_grid):
    f = make_bandlimited(default_grid, seed=6)
    g = unit_gaussian(default_grid)
    a = 1.0
    shift = round(a / default_grid.spacing)
    lhs = np.abs(stft(translate(f, a), g).values)
    rhs = np.roll(np.abs(stft(f, g).values), shift, axis=0)
    assert rel_err(lhs, rhs) <= 1e-12


def test_stft_errors(default_grid, tiny_grid):
    f = make_bandlimited(default_grid, seed=0)
    with pytest.raises(GridMismatch):
        stft(f, unit_gaussian(tiny_grid))
    zero = SampledFunction(default_grid, np.zeros(default_grid.points_per_axis, complex))
    with pytest.raises(ZeroWindow):
        stft(f, zero)


def test_lp_norm_single_cell(default_grid):
    n = default_grid.points_per_axis
    values = np.zeros(n, dtype=complex)
    values[10] = 1.0
    f = SampledFunction(default_grid, values)
    for p in (1.0, 4.0 / 3.0, 2.0, 4.0):
        assert abs(lp_norm(f, from_p(p)) - default_grid.spacing ** (1.0 / p)) <= 1e-14
    assert lp_norm(f, from_p("inf")) == 1.0


def test_lp_norm_sup_of_unimodular(default_grid):
    x = default_grid.axis_points()
    f = SampledFunction(default_grid, np.exp(1j * x**2))
    assert abs(lp_norm(f, from_p("inf")) - 1.0) <= 1e-14


def test_sobolev_norm_reduces_to_lp(default_grid):
    f = make_bandlimited(default_grid, seed=12)
    for p in (1.0, 2.0):
        assert abs(sobolev_norm(f, from_p(p), 0.0) - lp_norm(f, from_p(p))) <= 1e-12


def test_sobolev_norm_on_pure_mode(default_grid):
    x = default_grid.axis_points()
    xi_k = 5.0 / default_grid.extent
    mode = SampledFunction(default_grid, np.exp(2j * np.pi * xi_k * x))
    s = 1.7
    want = (1.0 + xi_k**2) ** (s / 2.0) * lp_norm(mode, TWO)
    assert abs(sobolev_norm(mode, TWO, s) - want) <= 1e-10 * want


def test_sobolev_monotone_in_s_at_p2(default_grid):
    for seed in range(5):
        f = make_bandlimited(default_grid, seed)
        norms = [sobolev_norm(f, TWO, s) for s in (0.0, 0.5, 1.0, 2.0)]
        assert all(a <= b * (1 + 1e-12) for a, b in zip(norms, norms[1:]))


def test_modulation_norm_unweighted_matches_default(default_grid):
    f = make_bandlimited(default_grid, seed=3)
    a = modulation_norm(f, TWO, TWO)
    b = modulation_norm(f, TWO, TWO, weight=Weight(0.0, 0.0))
    assert abs(a - b) <= 1e-12 * a


def test_modulation_isometry(bandlimited_suite):
    for f in bandlimited_suite:
        m = modulation_norm(f, TWO, TWO)
        l2 = lp_norm(f, TWO)
        assert abs(m - l2) <= 1e-4 * l2


def test_modulation_of_zero(default_grid):
    zero = SampledFunction(default_grid, np.zeros(default_grid.points_per_axis, complex))
    assert modulation_norm(zero, TWO, TWO) == 0.0


def test_amalgam_isometry(bandlimited_suite):
    for f in bandlimited_suite:
        w = amalgam_norm(f, TWO, TWO, 0.0)
        l2 = lp_norm(f, TWO)
        assert abs(w - l2) <= 1e-4 * l2


def test_amalgam_weight_monotone(default_grid):
    f = make_bandlimited(default_grid, seed=8)
    p, q = from_p(2), from_p(4)
    assert amalgam_norm(f, p, q, 1.0) >= amalgam_norm(f, p, q, 0.5)
    assert amalgam_norm(f, p, q, 0.5) >= amalgam_norm(f, p, q, 0.0)


def test_amalgam_bessel_lift_two_sided(default_grid):
    # <D>^{-s} maps the s=0 space onto the weighted one; on a fixed lattice
    # that is a two-sided norm equivalence, so the ratios stay in a band
    p, q, s = from_p(4), from_p(2), 0.8
    ratios = []
    for seed in range(10):
        f = make_bandlimited(default_grid, seed)
        lifted = amalgam_norm(bessel_potential(f, -s), p, q, s)
        base = amalgam_norm(f, p, q, 0.0)
        ratios.append(lifted / base)
    ratios = np.array(ratios)
    assert ratios.max() / ratios.min() <= 10.0


def test_amalgam_mixed_norm_monotonicity(default_grid):
    # growing either exponent can only shrink the finite-lattice norm up to
    # a window constant; measured as a bounded ratio band over a suite
    ladder = [(from_p(1), from_p(1)), (from_p(2), from_p(2)), (from_p(4), from_p(4)),
              (from_p("inf"), from_p("inf"))]
    for (p1, q1), (p2, q2) in zip(ladder, ladder[1:]):
        ratios = []
        for seed in range(10):
            f = make_bandlimited(default_grid, seed)
            ratios.append(amalgam_norm(f, p2, q2, 0.0) / amalgam_norm(f, p1, q1, 0.0))
        assert max(ratios) <= 10.0


def test_fourier_amalgam_modulation_identity():
    # hat(f) measured in M^{p,q} against f in W^{q,p}; on the self-dual grid
    # the two lattices coincide and the ratio is 1 to rounding
    grid = UniformGrid(1, 256, 16.0)
    pairs = [(from_p(1), from_p(2)), (from_p(2), from_p(4)), (from_p(4), from_p(1)),
             (from_p("inf"), from_p(2)), (from_p(2), from_p(2))]
    for p, q in pairs:
        ratios = []
        for seed in range(20):
            f = make_bandlimited(grid, seed)
            m = modulation_norm(forward_ft(f), p, q)
            w = amalgam_norm(f, q, p, 0.0)
            ratios.append(m / w)
        ratios = np.array(ratios)
        spread = ratios.max() / ratios.min() - 1.0
        assert spread <= 5e-2, (str(p), str(q), spread)


def test_norm_homogeneity_and_definiteness(default_grid):
    f = make_bandlimited(default_grid, seed=14)
    scaled = SampledFunction(default_grid, 3.5 * f.values)
    for norm in (
        lambda g: lp_norm(g, from_p(4)),
        lambda g: sobolev_norm(g, TWO, 0.7),
        lambda g: modulation_norm(g, from_p(2), from_p(4)),
        lambda g: amalgam_norm(g, from_p(4), from_p(2), 0.3),
    ):
        assert abs(norm(scaled) - 3.5 * norm(f)) <= 1e-8 * norm(scaled)
        assert norm(f) > 0.0


def test_sjostrand_constant_is_window_transform_l1():
    grid = UniformGrid(1, 128, 8.0)
    sigma = constant_symbol(grid)
    got = sjostrand_norm(sigma, 0.0)
    # ||Phi_hat||_{L^1} for the product Gaussian window, by direct quadrature
    xi = grid.axis_frequencies()
    x = grid.axis_points()
    hat1 = np.abs(oracles.direct_forward_ft(2.0**0.25 * np.exp(-np.pi * x**2) + 0j, grid))
    # second factor lives on the dual axis; its transform comes out on x
    g2 = 2.0**0.25 * np.exp(-np.pi * xi**2)
    omega = grid.axis_points()
    hat2 = np.abs(grid.dual_spacing * np.exp(-2j * np.pi * np.outer(omega, xi)) @ g2)
    want = (grid.dual_spacing * hat1.sum()) * (grid.spacing * hat2.sum())
    assert abs(got - want) <= 1e-4 * want


def test_sjostrand_shift_invariance():
    grid = UniformGrid(1, 64, 8.0)
    const = constant_symbol(grid)
    x = grid.axis_points()[:, None]
    xi = grid.axis_frequencies()[None, :]
    plane = const.with_values(np.exp(2j * np.pi * (x * 1.0 + xi * 2.0)))
    a = sjostrand_norm(const, 0.0)
    b = sjostrand_norm(plane, 0.0)
    assert abs(a - b) <= 1e-8 * a


def test_sjostrand_triangle_inequality():
    grid = UniformGrid(1, 64, 8.0)
    x = grid.axis_points()[:, None]
    xi = grid.axis_frequencies()[None, :]
    base = constant_symbol(grid)
    s1 = base.with_values(np.exp(-np.pi * (x**2 + xi**2)) + 0j)
    s2 = base.with_values(np.exp(2j * np.pi * x * xi) * np.exp(-np.pi * xi**2))
    both = base.with_values(s1.values + s2.values)
    assert sjostrand_norm(both) <= (sjostrand_norm(s1) + sjostrand_norm(s2)) * (1 + 1e-10)


def test_sjostrand_dense_agrees_with_factored():
    grid = UniformGrid(1, 32, 4.0)
    sigma = constant_symbol(grid).with_values(
        np.tile((1.0 + grid.axis_frequencies() ** 2) ** -0.5 + 0j, (32, 1))
    )
    fast = sjostrand_norm(sigma, 0.0)
    dense = sjostrand_norm(sigma, 0.0, window=phase_space_window(grid))
    assert abs(fast - dense) <= 1e-10 * fast


def test_sjostrand_rejects_higher_dimensions():
    grid = UniformGrid(2, 8, 4.0)
    values = np.zeros((64, 64), dtype=complex)
    values[0, 0] = 1.0
    from modop import PhaseSpaceSymbol

    sigma = PhaseSpaceSymbol(grid, values, "kn")
    with pytest.raises(DimensionUnsupported):
        sjostrand_norm(sigma)


def test_default_window_is_normalized(default_grid):
    g = default_window(default_grid)
    assert abs(lp_norm(g, TWO) - 1.0) <= 1e-10

"""Short-time Fourier transform and the norm zoo built on it.

The discrete STFT of f against a window g, both sampled on one grid, is

    V_g f(x_i, xi_k) = forward_ft( f . conj(translate(g, x_i)) )(xi_k)

evaluated for every lattice translate x_i (optionally strided) and
every dual-lattice frequency xi_k.  On the full lattice this map is a
tight frame: with quadrature measures h^d (space) and (1/L)^d
(frequency),

    h^d (1/L)^d sum |V_g f|^2  =  ||f||_2^2 ||g||_2^2

holds exactly, which is what makes the p=q=2 modulation and amalgam
norms collapse to the L^2 norm for a unit-norm window.

Norms implemented here: lp_norm, sobolev_norm (Bessel multiplier then
lp_norm), modulation_norm (inner exponent p over x, outer q over xi,
weight <x>^s1 <xi>^s2), amalgam_norm (inner exponent q over omega with
weight <omega>^s, outer p over y), and sjostrand_norm (the M^{infty,1}
norm of a phase-space symbol: sup over phase-space translates, L^1 over
the dual variable).
"""

import numpy as np

from .errors import DimensionUnsupported, TooLarge, ZeroWindow
from .exponents import ExponentValue, power_mean
from .grid import (
    SampledFunction,
    ft_along,
    require_same_grid,
)

_SJOSTRAND_DENSE_LIMIT = 256


class Weight:
    """The polynomial weight nu_{s1,s2}(x, xi) = <x>^s1 <xi>^s2."""

    __slots__ = ("s1", "s2")

    def __init__(self, s1=0.0, s2=0.0):
        object.__setattr__(self, "s1", float(s1))
        object.__setattr__(self, "s2", float(s2))

    def __setattr__(self, name, value):
        raise AttributeError("Weight is immutable")

    def __repr__(self):
        return f"Weight(s1={self.s1}, s2={self.s2})"

    def on_array(self, tfa):
        """Evaluate on the (x, xi) lattice of a TimeFrequencyArray."""
        d = tfa.dim
        x2 = sum(np.square(a) for a in np.meshgrid(*([tfa.x_axis_points] * d), indexing="ij"))
        xi2 = sum(np.square(a) for a in np.meshgrid(*([tfa.xi_axis_points] * d), indexing="ij"))
        wx = (1.0 + x2) ** (self.s1 / 2.0)
        wxi = (1.0 + xi2) ** (self.s2 / 2.0)
        return wx.reshape(wx.shape + (1,) * d) * wxi.reshape((1,) * d + wxi.shape)


class TimeFrequencyArray:
    """STFT values on an (x, xi) product lattice with quadrature data.

    values has shape (x points per axis,)*d + (N,)*d; the x lattice has
    step h*stride and the xi lattice is the grid's dual lattice.
    """

    __slots__ = ("dim", "x_axis_points", "xi_axis_points", "x_step", "xi_step", "values")

    def __init__(self, dim, x_axis_points, xi_axis_points, values):
        if not np.all(np.isfinite(values)):
            raise ValueError("time-frequency values must be finite")
        expected = (len(x_axis_points),) * dim + (len(xi_axis_points),) * dim
        if values.shape != expected:
            raise ValueError(f"values shape {values.shape}, expected {expected}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "x_axis_points", np.asarray(x_axis_points, dtype=float))
        object.__setattr__(self, "xi_axis_points", np.asarray(xi_axis_points, dtype=float))
        object.__setattr__(self, "x_step", float(x_axis_points[1] - x_axis_points[0]))
        object.__setattr__(self, "xi_step", float(xi_axis_points[1] - xi_axis_points[0]))
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("TimeFrequencyArray is immutable")

    @property
    def x_cell(self):
        return self.x_step**self.dim

    @property
    def xi_cell(self):
        return self.xi_step**self.dim

    @property
    def cell(self):
        return self.x_cell * self.xi_cell


def default_window(grid):
    """The L^2-normalized Gaussian 2^(d/4) exp(-pi |t|^2) on the grid."""
    mesh = grid.coordinate_arrays()
    values = 2.0 ** (grid.dim / 4.0) * np.exp(-np.pi * sum(a**2 for a in mesh))
    return SampledFunction(grid, values)


def _check_window(g):
    if not np.any(g.values):
        raise ZeroWindow("window is identically zero")


def _windowed_spectra(f, g, stride, conjugate_window):
    """Stack of forward transforms of f times (conjugated) window translates.

    Returns (x_axis_points, array) with the array shaped
    (x count,)*d + (N,)*d over the strided translation lattice.
    """
    grid = require_same_grid(f, g)
    _check_window(g)
    stride = int(stride)
    n = grid.points_per_axis
    if stride < 1 or n % stride != 0:
        raise ValueError(f"stride must be a positive divisor of {n}, got {stride}")
    count = n // stride
    x_axis = grid.axis_points()[::stride]

    window = np.conj(g.values) if conjugate_window else g.values

    if grid.dim == 1:
        # one gather builds every translate: translate by index offset m
        # maps sample j to window[(j - m) % n]
        offsets = np.arange(count) * stride - n // 2
        gather = (np.arange(n)[None, :] - offsets[:, None]) % n
        stack = f.values[None, :] * window[gather]
        spectra = ft_along(stack, 1, grid.spacing)
        return x_axis, spectra

    shifts_per_axis = [np.arange(count) * stride - n // 2] * grid.dim
    out_shape = (count,) * grid.dim + grid.shape
    spectra = np.empty(out_shape, dtype=complex)
    for index in np.ndindex(*(count,) * grid.dim):
        rolled = np.roll(window, [shifts_per_axis[ax][i] for ax, i in enumerate(index)], axis=tuple(range(grid.dim)))
        prod = f.values * rolled
        for axis in range(grid.dim):
            prod = ft_along(prod, axis, grid.spacing)
        spectra[index] = prod
    return x_axis, spectra


def stft(f, g, stride=1):
    """Short-time Fourier transform V_g f on the (strided) lattice."""
    grid = require_same_grid(f, g)
    x_axis, spectra = _windowed_spectra(f, g, stride, conjugate_window=True)
    return TimeFrequencyArray(grid.dim, x_axis, grid.axis_frequencies(), spectra)


def lp_norm(f, p):
    """Riemann-sum L^p norm: (h^d sum |f|^p)^(1/p), max |f| for p=inf."""
    return float(power_mean(np.abs(f.values), p, f.grid.cell))


def sobolev_norm(f, p, s):
    """L^p_s norm: lp_norm of <D>^s f.

    The Bessel multiplier is <xi>^s = (1 + |xi|^2)^(s/2), matching the
    bracket convention used everywhere else in the package.
    """
    from .grid import bessel_potential

    return lp_norm(bessel_potential(f, s), p)


def modulation_norm(f, p, q, weight=None, window=None, stride=1):
    """Modulation norm: L^p over x inside, L^q over xi outside.

    weight defaults to nu_{0,0}; window defaults to the normalized
    Gaussian.  Reported values depend on the window, as they must.
    """
    if window is None:
        window = default_window(f.grid)
    tfa = stft(f, window, stride)
    d = tfa.dim
    mags = np.abs(tfa.values)
    if weight is not None and (weight.s1 != 0.0 or weight.s2 != 0.0):
        mags = mags * weight.on_array(tfa)
    inner = power_mean(mags, p, tfa.x_cell, axis=tuple(range(d)))
    return float(power_mean(inner, q, tfa.xi_cell))


def amalgam_norm(f, p, q, s=0.0, window=None, stride=1):
    """Wiener amalgam norm: weighted L^q over omega inside, L^p over y outside."""
    if window is None:
        window = default_window(f.grid)
    grid = require_same_grid(f, window)
    x_axis, spectra = _windowed_spectra(f, window, stride, conjugate_window=False)
    tfa = TimeFrequencyArray(grid.dim, x_axis, grid.axis_frequencies(), spectra)
    d = tfa.dim
    mags = np.abs(tfa.values)
    if s != 0.0:
        omega2 = sum(np.square(a) for a in np.meshgrid(*([tfa.xi_axis_points] * d), indexing="ij"))
        mags = mags * ((1.0 + omega2) ** (s / 2.0)).reshape((1,) * d + omega2.shape)
    inner = power_mean(mags, q, tfa.xi_cell, axis=tuple(range(d, 2 * d)))
    return float(power_mean(inner, p, tfa.x_cell))


def phase_space_window(grid):
    """L^2(R^2)-normalized Gaussian on the (x, xi) product lattice, d=1."""
    x = grid.axis_points()
    xi = grid.axis_frequencies()
    return np.sqrt(2.0) * np.exp(-np.pi * (x[:, None] ** 2 + xi[None, :] ** 2))


def _sjostrand_axes(grid):
    """(spacings, dual axes) of the d=1 phase-space product lattice.

    Axis 0 holds x (step h, period L), axis 1 holds xi (step 1/L,
    period N/L).  The dual lattice of axis 0 steps by 1/L; the dual of
    axis 1 steps by L/N = h.
    """
    n = grid.points_per_axis
    spacings = (grid.spacing, grid.dual_spacing)
    zeta1 = (np.arange(n) - n // 2) * grid.dual_spacing
    zeta2 = (np.arange(n) - n // 2) * grid.spacing
    return spacings, (zeta1, zeta2)


def sjostrand_norm(symbol, s=0.0, window=None):
    """The (weighted) Sjostrand-class norm of a phase-space symbol.

    Computes the phase-space STFT V_Phi(sigma) over all lattice
    translates z, takes sup_z of |V| <z_xi>^s for each dual point zeta,
    and integrates the result over zeta (L^1, cell measure 1/N).

    For x-independent symbols under the default window the computation
    factors exactly into two one-dimensional transforms, which is what
    makes large-N multiplier symbols affordable; the dense path is kept
    for everything else and agrees with the factored one to roundoff.
    """
    grid = symbol.grid
    if grid.dim != 1:
        raise DimensionUnsupported("sjostrand_norm supports d=1 phase space only")
    n = grid.points_per_axis
    sigma = symbol.values
    spacings, _ = _sjostrand_axes(grid)
    # dual cells: axis-0 dual steps 1/L, axis-1 dual steps L/N = h; the
    # zeta quadrature measure is their product, 1/N.
    zeta_cell = grid.dual_spacing * grid.spacing

    x = grid.axis_points()
    xi = grid.axis_frequencies()
    zweight2 = (1.0 + xi**2) ** (s / 2.0)  # <z_xi>^s on the z lattice, axis 1

    separable = window is None
    if separable and np.all(sigma == sigma[:1, :]):
        # factored path: |V| = |F(conj(phi1))(zeta1)| * |V_{phi2} sigma0(z2, zeta2)|
        phi1 = 2.0**0.25 * np.exp(-np.pi * x**2)
        phi2 = 2.0**0.25 * np.exp(-np.pi * xi**2)
        first = np.abs(ft_along(np.conj(phi1), 0, grid.spacing))
        sigma0 = sigma[0]
        offsets = np.arange(n) - n // 2
        gather = (np.arange(n)[None, :] - offsets[:, None]) % n
        stack = sigma0[None, :] * np.conj(phi2[gather])
        v2 = ft_along(stack, 1, grid.dual_spacing)
        second = (np.abs(v2) * zweight2[:, None]).max(axis=0)
        return float(zeta_cell * np.sum(first[:, None] * second[None, :]))

    if n > _SJOSTRAND_DENSE_LIMIT:
        raise TooLarge(
            f"dense sjostrand_norm is limited to N <= {_SJOSTRAND_DENSE_LIMIT}; "
            "x-independent symbols with the default window use the factored path"
        )
    phi = phase_space_window(grid) if window is None else np.asarray(window, dtype=complex)
    if phi.shape != (n, n):
        raise ValueError(f"window shape {phi.shape}, expected {(n, n)}")
    if not np.any(phi):
        raise ZeroWindow("phase-space window is identically zero")

    offsets = np.arange(n) - n // 2
    gather = (np.arange(n)[None, :] - offsets[:, None]) % n
    best = np.zeros((n, n))
    for i1 in range(n):
        rolled1 = phi[gather[i1], :]  # window shifted by z1 along axis 0
        # all axis-1 shifts at once: stack[i2, a, b] = rolled1[a, (b - m2) % n]
        stack = np.conj(rolled1[:, gather].transpose(1, 0, 2)) * sigma[None, :, :]
        spec = ft_along(ft_along(stack, 1, spacings[0]), 2, spacings[1])
        weighted = np.abs(spec) * zweight2[:, None, None]
        np.maximum(best, weighted.max(axis=0), out=best)
    return float(zeta_cell * best.sum())


def exponent(p):
    """Coerce to ExponentValue (accepts numbers, 'inf', fractions, instances)."""
    return ExponentValue.from_p(p)

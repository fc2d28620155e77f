"""Kohn-Nirenberg and Weyl quantization on the periodic grid.

A phase-space symbol is sampled on the product of the spatial grid and
its dual lattice.  The Kohn-Nirenberg operator of a symbol sigma acts
by

    (Op f)(x_j) = (1/L)^d sum_k  e^{2 pi i x_j.xi_k} sigma(x_j, xi_k) f_hat(xi_k)

and the Weyl operator evaluates the symbol at periodic midpoints
(x+y)/2 instead of at x.  The two calculi are intertwined by a
Fourier multiplier on the symbol: writing sigma_hat(omega, u) for the
2d-dimensional transform of the symbol (omega dual to x, u dual to xi),

    (KN symbol)_hat(omega, u) = e^{+pi i omega.u} (Weyl symbol)_hat(omega, u)

which u_transform applies on the centered dual lattice.  Half-lattice
evaluations (the Weyl midpoints and the kernel shear below) are
resolved by trigonometric interpolation: a spectral phase shift on the
same centered lattice, exact for band-limited data and consistent with
the multiplier above, as the round-trip and oracle tests check.

Kernels: the Weyl symbol and the Schwartz kernel K determine each other
through the shear tau K(x, y) = K(x + y/2, x - y/2) followed by a
Fourier transform in y.  On the periodic grid the slice at fixed
difference t = x - y is an exact lattice gather, so the shear needs
interpolation only for the half-step t/2, again done spectrally.
"""

import numpy as np

from .errors import (
    DimensionUnsupported,
    FileFormatError,
    GridMismatch,
    TooLarge,
    WrongQuantization,
)
from .grid import SampledFunction, UniformGrid, forward_ft, ft_along, ift_along

KOHN_NIRENBERG = "kn"
WEYL = "weyl"

_MATRIX_LIMIT = 1024
_APPLY_LIMIT = 2048  # dense apply materializes a (count, count) stack


class PhaseSpaceSymbol:
    """Samples sigma(x_j, xi_k) with a quantization tag.

    values has shape (N^d, N^d): rows indexed by the flattened spatial
    lattice, columns by the flattened dual lattice.
    """

    __slots__ = ("grid", "values", "quantization")

    def __init__(self, grid, values, quantization):
        if quantization not in (KOHN_NIRENBERG, WEYL):
            raise WrongQuantization(f"unknown quantization tag {quantization!r}")
        count = grid.points_per_axis**grid.dim
        values = np.asarray(values, dtype=complex)
        if values.shape != (count, count):
            raise GridMismatch(f"symbol shape {values.shape}, expected {(count, count)}")
        if not np.all(np.isfinite(values)):
            raise ValueError("symbol values must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "quantization", quantization)

    def __setattr__(self, name, value):
        raise AttributeError("PhaseSpaceSymbol is immutable")

    def __repr__(self):
        return f"PhaseSpaceSymbol(grid={self.grid!r}, quantization={self.quantization!r})"

    @classmethod
    def from_callable(cls, grid, fn, quantization=KOHN_NIRENBERG):
        """Sample fn(x, xi) on the product lattice (d=1)."""
        if grid.dim != 1:
            raise DimensionUnsupported("from_callable builds d=1 symbols")
        x = grid.axis_points()[:, None]
        xi = grid.axis_frequencies()[None, :]
        return cls(grid, np.broadcast_to(np.asarray(fn(x, xi), dtype=complex), (grid.points_per_axis,) * 2), quantization)

    def with_values(self, values):
        return PhaseSpaceSymbol(self.grid, values, self.quantization)


class KernelRep:
    """A Schwartz kernel K(x, y) sampled on grid x grid (d=1)."""

    __slots__ = ("grid", "values")

    def __init__(self, grid, values):
        n = grid.points_per_axis**grid.dim
        values = np.asarray(values, dtype=complex)
        if values.shape != (n, n):
            raise GridMismatch(f"kernel shape {values.shape}, expected {(n, n)}")
        if not np.all(np.isfinite(values)):
            raise ValueError("kernel values must be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("KernelRep is immutable")


class OperatorMatrix:
    """Dense discretized operator with quadrature cell weights.

    entries maps raw samples to raw samples; domain_measure and
    codomain_measure are the L^p quadrature cells of the two sides
    (both h^d for operators produced by as_matrix).
    """

    __slots__ = ("entries", "domain_measure", "codomain_measure")

    def __init__(self, entries, domain_measure, codomain_measure):
        entries = np.asarray(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"entries must be square, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("matrix entries must be finite")
        if not (domain_measure > 0 and codomain_measure > 0):
            raise ValueError("quadrature measures must be positive")
        entries = entries.copy()
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "domain_measure", float(domain_measure))
        object.__setattr__(self, "codomain_measure", float(codomain_measure))

    def __setattr__(self, name, value):
        raise AttributeError("OperatorMatrix is immutable")

    @property
    def size(self):
        return self.entries.shape[0]


def _require_tag(symbol, tag):
    if symbol.quantization != tag:
        raise WrongQuantization(f"expected a {tag!r} symbol, got {symbol.quantization!r}")


def kn_apply(symbol, f):
    """Apply the Kohn-Nirenberg operator of the symbol to f."""
    _require_tag(symbol, KOHN_NIRENBERG)
    grid = symbol.grid
    if grid != f.grid:
        raise GridMismatch("symbol and function live on different grids")
    count = grid.points_per_axis**grid.dim
    if count > _APPLY_LIMIT:
        raise TooLarge(f"dense apply is limited to {_APPLY_LIMIT} grid points, got {count}")
    spectrum = forward_ft(f).values.ravel()
    weighted = symbol.values * spectrum[None, :]
    # per-row inverse transform, batched over rows; row r of the result
    # evaluated at its own grid point r is the operator output there
    stack = weighted.reshape((count,) + grid.shape)
    for axis in range(grid.dim):
        stack = ift_along(stack, 1 + axis, grid.spacing)
    out = stack.reshape(count, count)[np.arange(count), np.arange(count)]
    return SampledFunction(grid, out.reshape(grid.shape))


def weyl_apply(symbol, f):
    """Apply the Weyl operator of the symbol to f (via u_transform)."""
    _require_tag(symbol, WEYL)
    return kn_apply(u_transform(symbol, "to_KN"), f)


def _symbol_dual_mesh(grid):
    omega = grid.axis_frequencies()  # dual of the x axis, step 1/L
    u = grid.axis_points()  # dual of the xi axis, step L/N
    return omega[:, None], u[None, :]


def u_transform(symbol, direction):
    """Convert between Weyl and Kohn-Nirenberg symbols of one operator.

    direction is 'to_KN' (input must be Weyl) or 'to_Weyl' (input must
    be KN).  The conversion multiplies the symbol's 2d-dimensional
    transform by e^{+/- pi i omega u} on the centered dual lattice and
    flips the tag; the two directions are exact mutual inverses.
    """
    grid = symbol.grid
    if grid.dim != 1:
        raise DimensionUnsupported("u_transform supports d=1 symbols")
    if direction == "to_KN":
        _require_tag(symbol, WEYL)
        sign, new_tag = +1.0, KOHN_NIRENBERG
    elif direction == "to_Weyl":
        _require_tag(symbol, KOHN_NIRENBERG)
        sign, new_tag = -1.0, WEYL
    else:
        raise ValueError(f"direction must be 'to_KN' or 'to_Weyl', got {direction!r}")
    h = grid.spacing
    dual = grid.dual_spacing
    omega, u = _symbol_dual_mesh(grid)
    spectrum = ft_along(ft_along(symbol.values, 0, h), 1, dual)
    spectrum = spectrum * np.exp(sign * 1j * np.pi * omega * u)
    values = ift_along(ift_along(spectrum, 0, h), 1, dual)
    return PhaseSpaceSymbol(grid, values, new_tag)


def lift_symbol(symbol, s):
    """Multiply the symbol by the Bessel weight <xi>^s (tag preserved)."""
    if s == 0:
        return symbol
    grid = symbol.grid
    mesh = grid.frequency_arrays()
    weights = (1.0 + sum(a**2 for a in mesh)) ** (s / 2.0)
    return symbol.with_values(symbol.values * weights.ravel()[None, :])


def _centered_differences(n):
    """Wrapped index differences j - l in [-N/2, N/2) for all (j, l)."""
    j = np.arange(n)[:, None]
    l = np.arange(n)[None, :]
    return (j - l + n // 2) % n - n // 2


def _half_shift_rows(rows, shifts, spacing, extent):
    """Spectrally translate rows[i] by shifts[i] * spacing / 2.

    rows is (m, N) of periodic samples with the given spacing; the
    shift is exact trigonometric interpolation on the centered dual
    lattice, one half-step unit per count in `shifts`.
    """
    n = rows.shape[1]
    freqs = (np.arange(n) - n // 2) / extent
    spectra = ft_along(rows, 1, spacing)
    phase = np.exp(-2j * np.pi * freqs[None, :] * (shifts[:, None] * spacing / 2.0))
    return ift_along(spectra * phase, 1, spacing)


def weyl_to_kernel(symbol):
    """The Schwartz kernel of the Weyl operator of the symbol (d=1)."""
    _require_tag(symbol, WEYL)
    grid = symbol.grid
    if grid.dim != 1:
        raise DimensionUnsupported("kernel correspondence supports d=1")
    n = grid.points_per_axis
    h = grid.spacing
    # sheared kernel G(x, t) = K(x + t h/2, x + t h/2 - t h) for the
    # centered difference t; its y-transform is the symbol, so invert:
    sheared = ift_along(symbol.values, 1, h)  # G[x_idx, t_pos]
    t = np.arange(n) - n // 2
    # diagonal slices: D_t(u) = K(u, u - t h) = G(u - t h/2, t)
    slices = _half_shift_rows(sheared.T, t, h, grid.extent)  # (t_pos, u_idx)
    kernel = np.empty((n, n), dtype=complex)
    u = np.arange(n)
    for pos, diff in enumerate(t):
        kernel[u, (u - diff) % n] = slices[pos]
    return KernelRep(grid, kernel)


def kernel_to_weyl(kernel):
    """Invert weyl_to_kernel: Weyl symbol from a sampled kernel (d=1)."""
    grid = kernel.grid
    if grid.dim != 1:
        raise DimensionUnsupported("kernel correspondence supports d=1")
    n = grid.points_per_axis
    h = grid.spacing
    t = np.arange(n) - n // 2
    u = np.arange(n)
    slices = np.empty((n, n), dtype=complex)  # (t_pos, u_idx)
    for pos, diff in enumerate(t):
        slices[pos] = kernel.values[u, (u - diff) % n]
    sheared = _half_shift_rows(slices, -t, h, grid.extent).T  # G[x_idx, t_pos]
    values = ft_along(sheared, 1, h)
    return PhaseSpaceSymbol(grid, values, WEYL)


def as_matrix(symbol):
    """Dense matrix of the quantized operator, with quadrature weights.

    d=1 only, N <= 1024.  The matrix acts on raw samples; both measures
    are the grid cell h, so OperatorMatrix norms are L^p(h) -> L^p(h).
    """
    grid = symbol.grid
    if grid.dim != 1:
        raise DimensionUnsupported("as_matrix supports d=1 symbols")
    n = grid.points_per_axis
    if n > _MATRIX_LIMIT:
        raise TooLarge(f"as_matrix is limited to N <= {_MATRIX_LIMIT}, got {n}")
    if symbol.quantization == WEYL:
        symbol = u_transform(symbol, "to_KN")
    h = grid.spacing
    # A[j, j'] = (h/L) sum_k sigma[j, k] e^{2 pi i xi_k (x_j - x_j')}
    #          = D[j, (j - j') mod N] with D the alternating inverse DFT
    signs = (-1.0) ** np.arange(n)
    diff_table = (h / grid.extent) * n * np.fft.ifft(symbol.values, axis=1) * signs[None, :]
    j = np.arange(n)
    entries = diff_table[j[:, None], (j[:, None] - j[None, :]) % n]
    return OperatorMatrix(entries, h, h)


def write_pss(symbol, path):
    """Write a PhaseSpaceSymbol as a PSS v1 text file (x-major order)."""
    grid = symbol.grid
    with open(path, "w", encoding="ascii") as fh:
        fh.write("PSS 1\n")
        fh.write(
            f"dim={grid.dim} n={grid.points_per_axis} extent={grid.extent:.17g} "
            f"quant={symbol.quantization}\n"
        )
        for z in symbol.values.ravel():
            fh.write(f"{z.real:.17g} {z.imag:.17g}\n")


def read_pss(path):
    """Read a PSS v1 file back into a PhaseSpaceSymbol."""
    from .grid import _parse_header

    with open(path, "r", encoding="ascii") as fh:
        magic = fh.readline().strip()
        if magic != "PSS 1":
            raise FileFormatError(f"{path}: bad magic line {magic!r}, expected 'PSS 1'")
        header = _parse_header(fh.readline().strip(), ["dim", "n", "extent", "quant"], path)
        if header["quant"] not in (KOHN_NIRENBERG, WEYL):
            raise FileFormatError(f"{path}: quant must be 'kn' or 'weyl', got {header['quant']!r}")
        try:
            grid = UniformGrid(int(header["dim"]), int(header["n"]), float(header["extent"]))
        except ValueError as exc:
            raise FileFormatError(f"{path}: bad header values: {exc}") from exc
        count = grid.points_per_axis**grid.dim
        total = count * count
        values = np.empty(total, dtype=complex)
        for i in range(total):
            line = fh.readline()
            if not line:
                raise FileFormatError(f"{path}: expected {total} sample lines, got {i}")
            parts = line.split()
            if len(parts) != 2:
                raise FileFormatError(f"{path}: sample line {i + 3} must be 're im', got {line!r}")
            try:
                values[i] = complex(float(parts[0]), float(parts[1]))
            except ValueError as exc:
                raise FileFormatError(f"{path}: bad number on line {i + 3}: {line!r}") from exc
        if fh.readline().strip():
            raise FileFormatError(f"{path}: trailing content after {total} samples")
    return PhaseSpaceSymbol(grid, values.reshape(count, count), header["quant"])

"""Periodic pseudospectral grid, continuum-normalized Fourier transforms and norms.

The box is [-L, L)^n with N points per axis.  Discrete transforms are scaled
so that they approximate the symmetric continuum transform

    (F f)(xi) = (2pi)^{-n/2} * integral e^{-i x.xi} f(x) dx,

sampled on the wavenumber lattice xi_k = pi*k/L (fftfreq ordering).  With this
convention Plancherel holds exactly at the discrete level, which the rest of
the package relies on.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import czt

from .errors import GridMismatchError, UsageError

POSITION = "position"
FREQUENCY = "frequency"


@dataclass(frozen=True)
class GridSpec:
    """Spectral grid for dimension n in {1,2,3}.

    Parameters
    ----------
    n : int
        Space dimension.
    points_per_axis : int
        Grid points per axis; must be even.
    half_length : float
        Box half-length L; the domain is [-L, L)^n.
    """

    n: int
    points_per_axis: int
    half_length: float

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise UsageError(f"dimension must be 1, 2 or 3, got {self.n}")
        if self.points_per_axis <= 0 or self.points_per_axis % 2 != 0:
            raise UsageError("points_per_axis must be a positive even integer")
        if self.half_length <= 0:
            raise UsageError("half_length must be positive")

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.points_per_axis

    @property
    def dxi(self) -> float:
        return np.pi / self.half_length

    @property
    def shape(self) -> tuple:
        return (self.points_per_axis,) * self.n

    @property
    def size(self) -> int:
        return self.points_per_axis**self.n

    def axis(self) -> np.ndarray:
        """Position axis [-L, -L+dx, ..., L-dx]."""
        return -self.half_length + self.dx * np.arange(self.points_per_axis)

    def wavenumbers(self) -> np.ndarray:
        """Per-axis frequencies pi*k/L in fftfreq ordering."""
        return 2.0 * np.pi * np.fft.fftfreq(self.points_per_axis, d=self.dx)

    def position_mesh(self) -> tuple:
        return np.meshgrid(*([self.axis()] * self.n), indexing="ij")

    def frequency_mesh(self) -> tuple:
        return np.meshgrid(*([self.wavenumbers()] * self.n), indexing="ij")

    def radius2(self, space: str = POSITION) -> np.ndarray:
        mesh = self.position_mesh() if space == POSITION else self.frequency_mesh()
        return sum(c**2 for c in mesh)

    def points(self) -> np.ndarray:
        """All grid points as an (size, n) array."""
        mesh = self.position_mesh()
        return np.stack([c.ravel() for c in mesh], axis=-1)

    def _alternating(self) -> np.ndarray:
        """(-1)^k mask implementing the e^{i L xi_k} = (-1)^k phase per axis."""
        alt = 1.0 - 2.0 * (np.arange(self.points_per_axis) % 2)
        out = alt
        for _ in range(self.n - 1):
            out = np.multiply.outer(out, alt)
        return out


@dataclass(frozen=True)
class ComplexField:
    """Complex samples on a GridSpec at a time stamp, in position or frequency space."""

    grid: GridSpec
    values: np.ndarray
    time: float
    space: str = POSITION

    def __post_init__(self):
        if self.space not in (POSITION, FREQUENCY):
            raise UsageError(f"unknown space flag {self.space!r}")
        if self.values.shape != self.grid.shape:
            raise UsageError(
                f"values shape {self.values.shape} does not match grid {self.grid.shape}"
            )

    def with_values(self, values, time=None, space=None) -> "ComplexField":
        return replace(
            self,
            values=values,
            time=self.time if time is None else time,
            space=self.space if space is None else space,
        )

    def volume_element(self) -> float:
        d = self.grid.dx if self.space == POSITION else self.grid.dxi
        return d**self.grid.n


def field_from_function(grid: GridSpec, fn, time=0.0, space=POSITION) -> ComplexField:
    mesh = grid.position_mesh() if space == POSITION else grid.frequency_mesh()
    return ComplexField(grid, np.asarray(fn(*mesh), dtype=complex), time, space)


def zero_field(grid: GridSpec, time=0.0, space=POSITION) -> ComplexField:
    return ComplexField(grid, np.zeros(grid.shape, dtype=complex), time, space)


def fft_field(f: ComplexField) -> ComplexField:
    """Continuum-normalized forward transform; requires a position-space field."""
    if f.space != POSITION:
        raise UsageError("fft expects a position-space field")
    g = f.grid
    scale = (2.0 * np.pi) ** (-g.n / 2.0) * g.dx**g.n
    vals = scale * g._alternating() * np.fft.fftn(f.values)
    return ComplexField(g, vals, f.time, FREQUENCY)


def ifft_field(f: ComplexField) -> ComplexField:
    """Inverse of fft_field; requires a frequency-space field."""
    if f.space != FREQUENCY:
        raise UsageError("ifft expects a frequency-space field")
    g = f.grid
    scale = (2.0 * np.pi) ** (-g.n / 2.0) * g.dxi**g.n * g.points_per_axis**g.n
    vals = scale * np.fft.ifftn(f.values * g._alternating())
    return ComplexField(g, vals, f.time, POSITION)


def to_frequency(f: ComplexField) -> ComplexField:
    return f if f.space == FREQUENCY else fft_field(f)


def to_position(f: ComplexField) -> ComplexField:
    return f if f.space == POSITION else ifft_field(f)


def norm_lp(f: ComplexField, p) -> float:
    """Riemann-sum L^p norm in the field's own space; p = inf gives the grid max."""
    if p != np.inf and p < 1:
        raise UsageError(f"L^p norm requires p >= 1, got {p}")
    a = np.abs(f.values)
    if p == np.inf:
        return float(a.max())
    return float((np.sum(a**p) * f.volume_element()) ** (1.0 / p))


def norm_sobolev(f: ComplexField, gamma: float) -> float:
    """H^gamma norm in the field's own variable, via the <.>^gamma multiplier
    on the conjugate side."""
    if gamma < 0:
        raise UsageError("sobolev order must be >= 0")
    if f.space == POSITION:
        fhat = fft_field(f)
        w2 = 1.0 + fhat.grid.radius2(FREQUENCY)
        return float(
            np.sqrt(np.sum((w2**gamma) * np.abs(fhat.values) ** 2) * fhat.volume_element())
        )
    # For a frequency-space field the conjugate weight is the position radius.
    fpos = ifft_field(f)
    w2 = 1.0 + fpos.grid.radius2(POSITION)
    return float(
        np.sqrt(np.sum((w2**gamma) * np.abs(fpos.values) ** 2) * fpos.volume_element())
    )


def norm_weighted(f: ComplexField, gamma: float) -> float:
    """|| <x>^gamma f ||_{L^2} in the field's own space."""
    if gamma < 0:
        raise UsageError("weight order must be >= 0")
    w2 = 1.0 + f.grid.radius2(f.space)
    return float(np.sqrt(np.sum((w2**gamma) * np.abs(f.values) ** 2) * f.volume_element()))


def boundary_mass_fraction(f: ComplexField) -> float:
    """Fraction of the L^2 mass with max_i |x_i| > 0.9 L (position space)."""
    if f.space != POSITION:
        raise UsageError("boundary check expects a position-space field")
    g = f.grid
    mesh = g.position_mesh()
    near = np.maximum.reduce([np.abs(c) for c in mesh]) > 0.9 * g.half_length
    total = float(np.sum(np.abs(f.values) ** 2))
    if total == 0.0:
        return 0.0
    return float(np.sum(np.abs(f.values[near]) ** 2)) / total


# ----------------------------------------------------------------------------
# Band-limited resampling onto a rescaled uniform lattice.
# ----------------------------------------------------------------------------


def _czt_axis(arr, axis, n_src, d_src, a_src, d_tgt, a_tgt):
    """Evaluate the trigonometric interpolant of uniform samples along one axis.

    Samples live at s_m = a_src + m*d_src; outputs at y_j = a_tgt + j*d_tgt
    (same count).  Targets outside the periodic source cell are zeroed:
    fields here are negligible near their cell edges, so extension by zero is
    the faithful continuation (periodic wrap-around would alias compactly
    supported data back into the box).
    """
    N = n_src
    cell = N * d_src
    k = np.fft.fftfreq(N, d=1.0 / N)  # integer frequencies
    omega = 2.0 * np.pi * k / cell
    coeff_phase = np.exp(1j * omega * (a_tgt - a_src)) / N

    H = np.fft.fft(arr, axis=axis)
    shape = [1] * arr.ndim
    shape[axis] = N
    x = H * coeff_phase.reshape(shape)
    x = np.fft.fftshift(x, axes=axis)

    w = np.exp(2j * np.pi * d_tgt / cell)
    # scipy.signal.czt computes sum_m x_m * (a * w^{-j})^{-m} = sum_m x_m w^{j m}
    out = czt(x, m=N, w=w, a=1.0 + 0.0j, axis=axis)
    j = np.arange(N)
    out = out * np.exp(-1j * np.pi * j * d_tgt / d_src).reshape(shape)

    y = a_tgt + d_tgt * j
    inside = (y >= a_src) & (y < a_src + cell)
    if not inside.all():
        out = out * inside.reshape(shape)
    return out


def resample_scaled(f: ComplexField, t: float, mass_tolerance: float = 1e-8) -> np.ndarray:
    """Sample the band-limited interpolant of ``f`` at the points x/t of the
    position grid.  Works for position- or frequency-space sources; raises
    GridMismatchError when the rescaled window would drop non-negligible mass.
    """
    if t == 0:
        raise UsageError("resample requires t != 0")
    g = f.grid
    N = g.points_per_axis
    if f.space == POSITION:
        vals = f.values
        a_src, d_src = -g.half_length, g.dx
    else:
        vals = np.fft.fftshift(f.values)
        a_src, d_src = -np.pi / g.dx, g.dxi

    a_tgt, d_tgt = -g.half_length / t, g.dx / t

    # Mass of the source outside the window covered by the targets is lost.
    half_window = abs(g.half_length / t)
    axis_coords = a_src + d_src * np.arange(N)
    total = float(np.sum(np.abs(vals) ** 2))
    if total > 0.0:
        outside = np.abs(axis_coords) > half_window
        if outside.any():
            mask = np.zeros(g.shape, dtype=bool)
            for ax in range(g.n):
                shape = [1] * g.n
                shape[ax] = N
                mask |= outside.reshape(shape)
            lost = float(np.sum(np.abs(vals[mask]) ** 2)) / total
            if lost > mass_tolerance:
                raise GridMismatchError(
                    f"rescaled support does not fit the grid at t={t}: "
                    f"relative mass {lost:.3e} outside |x| <= {half_window:.3g}"
                )

    out = vals
    for ax in range(g.n):
        out = _czt_axis(out, ax, N, d_src, a_src, d_tgt, a_tgt)
    return out


# ----------------------------------------------------------------------------
# Serialization: binary container and CSV slices.
# ----------------------------------------------------------------------------

_MAGIC = b"NLSF"
_HEADER = struct.Struct("<4sBBIddB")


def save_field(f: ComplexField, path) -> None:
    """Write the binary container: header (n, N, L, t, space) + complex64 payload."""
    space_flag = 0 if f.space == POSITION else 1
    header = _HEADER.pack(
        _MAGIC, 1, f.grid.n, f.grid.points_per_axis, f.grid.half_length, f.time, space_flag
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(f.values.astype("<c8")).tobytes())


def load_field(path) -> ComplexField:
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        magic, _version, n, N, L, t, space_flag = _HEADER.unpack(raw)
        if magic != _MAGIC:
            raise UsageError(f"{path}: not a field container")
        grid = GridSpec(n, N, L)
        payload = fh.read(8 * grid.size)
    vals = np.frombuffer(payload, dtype="<c8").astype(complex).reshape(grid.shape)
    return ComplexField(grid, vals, t, POSITION if space_flag == 0 else FREQUENCY)


def field_to_csv(f: ComplexField, path) -> None:
    """Dump a 1-D slice (center line along the first axis for n >= 2)."""
    coord = f.grid.axis() if f.space == POSITION else np.sort(f.grid.wavenumbers())
    vals = f.values
    if f.space == FREQUENCY:
        vals = np.fft.fftshift(vals)
    if f.grid.n >= 2:
        center = (f.grid.points_per_axis // 2,) * (f.grid.n - 1)
        vals = vals[(slice(None),) + center]
    with open(path, "w") as fh:
        fh.write("coord,re,im\n")
        for c, v in zip(coord, vals):
            fh.write(f"{c!r},{v.real!r},{v.imag!r}\n")

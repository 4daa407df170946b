"""Closed-form spectral quantities of the operator -d2/dx2 + i*sgn(x).

Everything here is exact arithmetic on the two wave numbers

    k_plus  = sqrt(i - z),    k_minus = sqrt(-i - z),

taken with the principal branch of the square root (cut on (-inf, 0],
the cut itself mapping to the positive imaginary axis).  The essential
spectrum consists of the two rays [0, inf) + i and [0, inf) - i; the
resolvent kernel below is valid off those rays.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SpectrumError

DEFAULT_TOL_SPEC = 1e-12

# switch to a series for (e^w - 1)/w once |w| is this small
_SERIES_CUTOFF = 1e-6


def principal_sqrt(z: complex) -> complex:
    """Principal square root with a deterministic value on the cut.

    A negative real argument with imaginary part -0.0 would land on the
    lower side of the cut under cmath; we normalize so that the cut maps
    to the positive imaginary axis.
    """
    z = complex(z)
    if z.imag == 0.0:
        z = complex(z.real, 0.0)
    return cmath.sqrt(z)


def principal_sqrt_arr(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`principal_sqrt`."""
    z = np.asarray(z, dtype=complex)
    z = np.where(z.imag == 0.0, z.real + 0.0j, z)
    return np.sqrt(z)


@dataclass(frozen=True)
class WaveNumbers:
    k_plus: complex
    k_minus: complex
    z: complex


def wave_numbers(z: complex) -> WaveNumbers:
    """Both wave numbers at spectral parameter ``z``."""
    z = complex(z)
    return WaveNumbers(principal_sqrt(1j - z), principal_sqrt(-1j - z), z)


class Region(enum.Enum):
    D_PLUS = "D_PLUS"
    D_MINUS = "D_MINUS"
    U = "U"
    W = "W"
    SPECTRUM = "SPECTRUM"


def ray_distances(z: complex) -> tuple[float, float]:
    """Distances from ``z`` to the rays [0,inf)+i and [0,inf)-i."""
    z = complex(z)
    if z.real >= 0.0:
        return abs(z.imag - 1.0), abs(z.imag + 1.0)
    return math.hypot(z.real, z.imag - 1.0), math.hypot(z.real, z.imag + 1.0)


def spectrum_distance(z: complex) -> float:
    return min(ray_distances(z))


def in_half_strip(z: complex) -> bool:
    """Open half-strip S = [0,inf) + i(-1,1)."""
    z = complex(z)
    return z.real >= 0.0 and abs(z.imag) < 1.0


def classify_region(z: complex, tol_spec: float = DEFAULT_TOL_SPEC) -> Region:
    """Partition tag of the complex plane.

    The two disks |z -+ i| <= 3/2 are closed and win boundary ties over
    W and U; a point within ``tol_spec`` of either spectral ray is
    SPECTRUM regardless.
    """
    if tol_spec <= 0.0:
        raise DomainError("tol_spec must be positive")
    z = complex(z)
    if spectrum_distance(z) <= tol_spec:
        return Region.SPECTRUM
    in_plus = abs(z - 1j) <= 1.5
    in_minus = abs(z + 1j) <= 1.5
    if in_plus and in_minus:
        return Region.D_PLUS if z.imag >= 0.0 else Region.D_MINUS
    if in_plus:
        return Region.D_PLUS
    if in_minus:
        return Region.D_MINUS
    if in_half_strip(z):
        return Region.W
    return Region.U


def _check_off_spectrum(z: complex, tol_spec: float) -> None:
    """Reject ray points, except the endpoints +-i where the limit exists."""
    if spectrum_distance(z) <= tol_spec:
        if min(abs(z - 1j), abs(z + 1j)) <= tol_spec:
            return  # kernel stays bounded at the ray endpoints
        raise SpectrumError(f"z={z} lies on the essential spectrum")


def _half_exp_diff(k: complex, a: float, b: float) -> complex:
    """(e^{-k a} - e^{-k b}) / (2 k) for 0 <= a <= b, stable as k -> 0."""
    w = -k * (b - a)
    if abs(w) < _SERIES_CUTOFF:
        core = 0.5 * (b - a) * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)))
    else:
        core = -(cmath.exp(w) - 1.0) / (2.0 * k)
    if k.real * a > 745.0:  # e^{-k a} underflows; flush to exact zero
        return 0.0
    return cmath.exp(-k * a) * core


def resolvent_kernel(
    z: complex, x: float, y: float, tol_spec: float = DEFAULT_TOL_SPEC
) -> complex:
    """Resolvent kernel R_z(x, y) of -d2/dx2 + i*sgn(x).

    Raises SpectrumError on the spectral rays (the endpoints +-i are
    admitted with their finite limiting values).
    """
    z = complex(z)
    _check_off_spectrum(z, tol_spec)
    kp = principal_sqrt(1j - z)
    km = principal_sqrt(-1j - z)
    s = kp + km
    if x >= 0.0 and y >= 0.0:
        same, k = True, kp
    elif x <= 0.0 and y <= 0.0:
        same, k = True, km
    else:
        same = False
    if not same:
        e = -kp * abs(x) - km * abs(y) if x > 0.0 else -km * abs(x) - kp * abs(y)
        if -e.real > 745.0:
            return 0.0
        return cmath.exp(e) / s
    a, b = abs(x - y), abs(x) + abs(y)
    tail = 0.0 if k.real * b > 745.0 else cmath.exp(-k * b) / s
    return _half_exp_diff(k, a, b) + tail


def resolvent_kernel_grid(
    z: complex,
    x: np.ndarray,
    y: np.ndarray,
    tol_spec: float = DEFAULT_TOL_SPEC,
) -> np.ndarray:
    """Dense matrix R_z(x_i, y_j); vectorized version of the scalar kernel."""
    z = complex(z)
    _check_off_spectrum(z, tol_spec)
    x = np.asarray(x, dtype=float)[:, None]
    y = np.asarray(y, dtype=float)[None, :]
    kp = principal_sqrt(1j - z)
    km = principal_sqrt(-1j - z)
    s = kp + km

    pos = (x >= 0.0) & (y >= 0.0)
    neg = (x <= 0.0) & (y <= 0.0)
    k = np.where(pos, kp, km)  # same-sign decay rate (unused on mixed cells)

    a = np.abs(x - y)
    b = np.abs(x) + np.abs(y)
    w = -k * (b - a)
    small = np.abs(w) < _SERIES_CUTOFF
    with np.errstate(divide="ignore", invalid="ignore"):
        core = np.where(
            small,
            0.5 * (b - a) * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0))),
            -np.expm1(np.where(small, 0.0, w)) / (2.0 * k),
        )
    same_val = np.exp(-k * a) * core + np.exp(-k * b) / s

    e_mixed = np.where(x > 0.0, -kp * np.abs(x) - km * np.abs(y),
                       -km * np.abs(x) - kp * np.abs(y))
    mixed_val = np.exp(e_mixed) / s

    return np.where(pos | neg, same_val, mixed_val)


def dirichlet_kernel(
    z: complex, x: float, y: float, tol_spec: float = DEFAULT_TOL_SPEC
) -> complex:
    """Kernel of the resolvent of the decoupled Dirichlet realisation.

    Zero whenever x and y lie on opposite sides of the origin (the two
    half-lines do not communicate) and on the boundary x = 0 or y = 0.
    """
    z = complex(z)
    _check_off_spectrum(z, tol_spec)
    if x * y <= 0.0:
        if x == 0.0 or y == 0.0:
            return 0.0
        return 0.0
    k = principal_sqrt(1j - z) if x > 0.0 else principal_sqrt(-1j - z)
    return _half_exp_diff(k, abs(x - y), abs(x) + abs(y))


def dirichlet_kernel_grid(
    z: complex,
    x: np.ndarray,
    y: np.ndarray,
    tol_spec: float = DEFAULT_TOL_SPEC,
) -> np.ndarray:
    """Dense matrix of :func:`dirichlet_kernel`."""
    z = complex(z)
    _check_off_spectrum(z, tol_spec)
    x = np.asarray(x, dtype=float)[:, None]
    y = np.asarray(y, dtype=float)[None, :]
    kp = principal_sqrt(1j - z)
    km = principal_sqrt(-1j - z)
    k = np.where(x > 0.0, kp, km)
    a = np.abs(x - y)
    b = np.abs(x) + np.abs(y)
    w = -k * (b - a)
    small = np.abs(w) < _SERIES_CUTOFF
    with np.errstate(divide="ignore", invalid="ignore"):
        core = np.where(
            small,
            0.5 * (b - a) * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0))),
            -np.expm1(np.where(small, 0.0, w)) / (2.0 * k),
        )
    val = np.exp(-k * a) * core
    return np.where(x * y > 0.0, val, 0.0)


@dataclass(frozen=True)
class AsymptoticWaveNumbers:
    leading_plus: complex
    leading_minus: complex
    correction_plus: complex
    correction_minus: complex

    @property
    def k_plus(self) -> complex:
        return self.leading_plus + self.correction_plus

    @property
    def k_minus(self) -> complex:
        return self.leading_minus + self.correction_minus


def asymptotic_wave_numbers(z: complex) -> AsymptoticWaveNumbers:
    """Two-term large-Re z expansions of the wave numbers.

    k_plus  ~  i sqrt(tau) + (1 - delta) / (2 sqrt(tau)),
    k_minus ~ -i sqrt(tau) + (1 + delta) / (2 sqrt(tau)),

    with tau = Re z, delta = Im z; only meaningful for Re z > 0.
    """
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError("asymptotic expansion requires Re z > 0")
    tau, delta = z.real, z.imag
    rt = math.sqrt(tau)
    return AsymptoticWaveNumbers(
        leading_plus=1j * rt,
        leading_minus=-1j * rt,
        correction_plus=(1.0 - delta) / (2.0 * rt),
        correction_minus=(1.0 + delta) / (2.0 * rt),
    )

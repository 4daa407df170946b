"""Quadrature grids on symmetric intervals [-L, L].

Two builders: composite Gauss-Legendre (default for norm integrals) and
uniform trapezoid (used where nodes must line up with a finite-difference
grid).  Panel boundaries always include 0 so that the sign flip of the
potential and the support edges of perturbations fall between panels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class QuadratureGrid:
    nodes: np.ndarray
    weights: np.ndarray
    half_length: float

    def __post_init__(self):
        n = self.nodes
        if n.ndim != 1 or n.size < 2:
            raise ConfigError("grid needs at least two nodes")
        if not np.all(np.diff(n) > 0.0):
            raise ConfigError("nodes must be strictly increasing")
        if np.any(self.weights < 0.0):
            raise ConfigError("weights must be non-negative")

    @property
    def size(self) -> int:
        return self.nodes.size

    def norm(self, samples: np.ndarray) -> float:
        """Quadrature L2 norm of samples on the grid."""
        return math.sqrt(float(np.sum(self.weights * np.abs(samples) ** 2)))


@lru_cache(maxsize=None)
def _gl_rule(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    x, w = np.polynomial.legendre.leggauss(order)
    return tuple(x), tuple(w)


def gauss_legendre_grid(
    half_length: float,
    panel_width: float,
    order: int = 10,
    breakpoints: tuple[float, ...] = (),
) -> QuadratureGrid:
    """Composite Gauss-Legendre grid on [-L, L], symmetric about 0.

    ``breakpoints`` are extra panel boundaries (given as positive
    abscissae; they are mirrored) for kernels or potentials with kinks.
    """
    if half_length <= 0.0 or panel_width <= 0.0:
        raise ConfigError("half_length and panel_width must be positive")
    if order < 2:
        raise ConfigError("order must be at least 2")
    edges = {0.0, half_length}
    for b in breakpoints:
        b = abs(float(b))
        if 0.0 < b < half_length:
            edges.add(b)
    edges = sorted(edges)
    bounds = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        m = max(1, int(math.ceil((hi - lo) / panel_width)))
        bounds.append(np.linspace(lo, hi, m + 1))
    right = np.unique(np.concatenate(bounds))
    xr, wr = np.array(_gl_rule(order)[0]), np.array(_gl_rule(order)[1])
    mids = 0.5 * (right[:-1] + right[1:])
    half = 0.5 * np.diff(right)
    nodes_pos = (mids[:, None] + half[:, None] * xr[None, :]).ravel()
    weights_pos = (half[:, None] * wr[None, :]).ravel()
    nodes = np.concatenate([-nodes_pos[::-1], nodes_pos])
    weights = np.concatenate([weights_pos[::-1], weights_pos])
    return QuadratureGrid(nodes, weights, half_length)


def trapezoid_grid(half_length: float, n: int) -> QuadratureGrid:
    """Uniform trapezoid grid with n nodes including both endpoints."""
    if half_length <= 0.0:
        raise ConfigError("half_length must be positive")
    if n < 3 or n % 2 == 0:
        raise ConfigError("n must be odd and at least 3 (node at 0)")
    nodes = np.linspace(-half_length, half_length, n)
    h = nodes[1] - nodes[0]
    weights = np.full(n, h)
    weights[0] = weights[-1] = 0.5 * h
    return QuadratureGrid(nodes, weights, half_length)


def oscillation_panel_width(z: complex, points_per_wavelength: float = 20.0,
                            order: int = 10) -> float:
    """Panel width resolving the e^{+-i sqrt(Re z) x} oscillation.

    ``points_per_wavelength`` Gauss nodes per wavelength 2 pi / sqrt(Re z);
    capped at 1 for slowly varying kernels (Re z <= 1).
    """
    tau = max(complex(z).real, 1.0)
    wavelength = 2.0 * math.pi / math.sqrt(tau)
    return min(1.0, wavelength * order / points_per_wavelength)


def decay_half_length(z: complex, decay_tol: float = 1e-8,
                      min_half_length: float = 10.0) -> float:
    """Truncation so that e^{-Re k * L} < decay_tol.

    Uses the slow decay rate Re k ~ (1 - |Im z|) / (2 sqrt(Re z)) inside
    the half-strip; elsewhere the exact rates, which are O(1).
    """
    from .kernel import wave_numbers  # local import avoids a cycle

    kk = wave_numbers(z)
    rate = min(kk.k_plus.real, kk.k_minus.real)
    if rate <= 0.0:
        raise ConfigError(f"no decaying direction at z={z}")
    return max(min_half_length, -math.log(decay_tol) / rate)

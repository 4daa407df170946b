"""Birman-Schwinger machinery for perturbations of the signed-damping operator.

For a perturbation eps*V the Birman-Schwinger operator is
K_z = |V|^{1/2} R_z V_{1/2} with V_{1/2} = V / |V|^{1/2}; z is an
eigenvalue of the perturbed operator iff -1 is an eigenvalue of eps*K_z.
This module discretizes K_z by a symmetric Nystrom scheme on a
Gauss-Legendre grid covering the support of V, computes Hilbert-Schmidt
norms, the singular/regular decomposition K = L + M, locates eigenvalues
through the determinant of I + eps*K_z, and measures weak-coupling rates.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg as sla
import scipy.sparse.linalg as spla

from . import bounds
from .errors import (ConfigError, ConvergenceError, DomainError,
                     EigenvalueLost, ZeroCouplingError)
from .kernel import resolvent_kernel_grid
from .quadrature import QuadratureGrid, gauss_legendre_grid, \
    oscillation_panel_width


@dataclass(frozen=True)
class PotentialSpec:
    """A perturbing potential with the metadata the quadrature needs.

    func maps an array of points to (complex) potential values;
    half_length bounds the effective support [-L, L]; breakpoints are
    interior kinks/jumps the composite quadrature must not straddle;
    l1 is the exact L1 norm when known in closed form (else nan).
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    half_length: float
    breakpoints: tuple[float, ...] = ()
    l1: float = math.nan

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.func(np.asarray(x, dtype=float)),
                          dtype=complex)

    def l1_norm(self, grid: QuadratureGrid | None = None) -> float:
        if not math.isnan(self.l1):
            return self.l1
        if grid is None:
            grid = potential_grid(1.0, self)
        return float(np.sum(grid.weights * np.abs(self(grid.nodes))))


def gaussian(amplitude: float = -1.0, width: float = 1.0) -> PotentialSpec:
    """V(x) = amplitude * exp(-(x/width)^2)."""
    if width <= 0.0:
        raise ConfigError("width must be positive")

    def v(x):
        return amplitude * np.exp(-((x / width) ** 2))

    return PotentialSpec(name="gaussian", func=v,
                         half_length=8.0 * width,
                         l1=abs(amplitude) * width * math.sqrt(math.pi))


def box(amplitude: float, radius: float) -> PotentialSpec:
    """V(x) = amplitude on (-radius, radius), zero outside."""
    if radius <= 0.0:
        raise ConfigError("radius must be positive")

    def v(x):
        return amplitude * (np.abs(x) < radius)

    return PotentialSpec(name="box", func=v, half_length=radius,
                         l1=2.0 * abs(amplitude) * radius)


def delta_bump(alpha: float, radius: float = 2.5e-4) -> PotentialSpec:
    """Narrow box of integral -alpha, approximating the delta well.

    The point interaction with coupling alpha binds through the
    matching condition u'(0+) - u'(0-) = alpha u(0); its potential
    realization is the well of depth alpha/(2 radius).
    """
    if alpha == 0.0:
        raise ZeroCouplingError("delta coupling must be nonzero")
    return box(-alpha / (2.0 * radius), radius)


def step_well(a: float, b: float) -> PotentialSpec:
    """The real square well of depth b on (-a, a)."""
    return box(-b, a)


def sampled(func: Callable[[np.ndarray], np.ndarray], half_length: float,
            breakpoints: Sequence[float] = ()) -> PotentialSpec:
    """Wrap an arbitrary callable potential."""
    return PotentialSpec(name="sampled", func=func,
                         half_length=half_length,
                         breakpoints=tuple(breakpoints))


def potential_grid(z: complex, pot: PotentialSpec,
                   points_per_wavelength: float = 20.0,
                   min_panels: int = 4) -> QuadratureGrid:
    """Composite Gauss-Legendre grid over supp V resolving e^{i sqrt(Re z) x}."""
    panel = oscillation_panel_width(z, points_per_wavelength)
    panel = min(panel, pot.half_length / min_panels)
    interior = tuple(b for b in pot.breakpoints
                     if 0.0 < b < pot.half_length)
    return gauss_legendre_grid(pot.half_length, panel, breakpoints=interior)


def _half_powers(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(|V|^{1/2}, V_{1/2}) with the convention V_{1/2} = V / |V|^{1/2}."""
    mod = np.abs(v)
    root = np.sqrt(mod)
    signed = np.zeros_like(v)
    nz = mod > 0.0
    signed[nz] = v[nz] / root[nz]
    return root, signed


def assemble_k(z: complex, pot: PotentialSpec,
               grid: QuadratureGrid) -> np.ndarray:
    """Dense symmetric Nystrom matrix of the Birman-Schwinger operator."""
    v = pot(grid.nodes)
    root, signed = _half_powers(v)
    sw = np.sqrt(grid.weights)
    r = resolvent_kernel_grid(z, grid.nodes, grid.nodes)
    return (sw * root)[:, None] * r * (signed * sw)[None, :]


def k_matvec(z: complex, pot: PotentialSpec, grid: QuadratureGrid
             ) -> Callable[[np.ndarray], np.ndarray]:
    """Matrix-free application of the Nystrom matrix in O(n) per call."""
    v = pot(grid.nodes)
    root, signed = _half_powers(v)
    sw = np.sqrt(grid.weights)

    def apply(vec):
        f = np.zeros(grid.size, dtype=complex)
        np.divide(signed * np.asarray(vec, dtype=complex), sw, out=f,
                  where=sw > 0.0)
        return sw * root * bounds.apply_resolvent(z, grid, f)

    return apply


def hs_norm(z: complex, pot: PotentialSpec, grid: QuadratureGrid,
            chunk: int = 512) -> float:
    """Hilbert-Schmidt (Frobenius) norm of K_z, row-chunked."""
    v = pot(grid.nodes)
    root, signed = _half_powers(v)
    sw = np.sqrt(grid.weights)
    left = sw * root
    right = signed * sw
    total = 0.0
    for lo in range(0, grid.size, chunk):
        hi = min(lo + chunk, grid.size)
        r = resolvent_kernel_grid(z, grid.nodes[lo:hi], grid.nodes)
        block = left[lo:hi, None] * r * right[None, :]
        total += float(np.sum(np.abs(block) ** 2))
    return math.sqrt(total)


def l_matrix(z: complex, pot: PotentialSpec,
             grid: QuadratureGrid) -> np.ndarray:
    """Nystrom matrix of the rank-one singular part L_z.

    Kernel: sqrt(Re z) |V|^{1/2}(x) e^{-i sqrt(Re z)(x+y)} V_{1/2}(y).
    """
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError("singular part needs Re z > 0")
    kappa = math.sqrt(z.real)
    v = pot(grid.nodes)
    root, signed = _half_powers(v)
    sw = np.sqrt(grid.weights)
    phase = np.exp(-1j * kappa * grid.nodes)
    col = sw * root * phase
    row = phase * signed * sw
    return kappa * col[:, None] * row[None, :]


def l_hs_closed(z: complex, pot: PotentialSpec) -> float:
    """Exact Hilbert-Schmidt norm of L_z: sqrt(Re z) * ||V||_1."""
    z = complex(z)
    if z.real <= 0.0:
        raise DomainError("singular part needs Re z > 0")
    return math.sqrt(z.real) * pot.l1_norm()


def decomposition_diagnostics(z: complex, pot: PotentialSpec,
                              grid: QuadratureGrid | None = None) -> dict:
    """HS norms of K_z, L_z and the remainder M_z = K_z - L_z at z."""
    if grid is None:
        grid = potential_grid(z, pot)
    k = assemble_k(z, pot, grid)
    lmat = l_matrix(z, pot, grid)
    return {
        "k_hs": float(np.linalg.norm(k)),
        "l_hs": float(np.linalg.norm(lmat)),
        "l_hs_closed": l_hs_closed(z, pot),
        "m_hs": float(np.linalg.norm(k - lmat)),
        "n": grid.size,
    }


def hs_growth_rates(pot: PotentialSpec, re_values: Sequence[float],
                    im_value: float = 0.5) -> dict:
    """Log-log slopes of the HS norms of K, L, M along Re z.

    Fits ||.||_HS ~ C (Re z)^p by least squares over the given real
    parts at fixed imaginary part; returns the three exponents and the
    raw samples.
    """
    res = np.asarray(sorted(re_values), dtype=float)
    if res.size < 3:
        raise ConfigError("need at least three sample points for a rate")
    rows = [decomposition_diagnostics(r + 1j * im_value, pot) for r in res]
    out = {"re_values": res}
    for key in ("k_hs", "l_hs", "m_hs"):
        vals = np.array([row[key] for row in rows])
        out[key] = vals
        out[key + "_slope"] = float(
            np.polyfit(np.log(res), np.log(vals), 1)[0])
    return out


def spectral_radius(z: complex, eps: float, pot: PotentialSpec,
                    grid: QuadratureGrid | None = None,
                    dense_cutoff: int = 1200) -> float:
    """Spectral radius of eps * K_z (dense eig or Arnoldi, by size)."""
    if grid is None:
        grid = potential_grid(z, pot)
    if grid.size <= dense_cutoff:
        vals = sla.eigvals(assemble_k(z, pot, grid))
        return float(eps * np.max(np.abs(vals)))
    op = spla.LinearOperator((grid.size, grid.size),
                             matvec=k_matvec(z, pot, grid), dtype=complex)
    lam = spla.eigs(op, k=1, which="LM", return_eigenvectors=False,
                    maxiter=3000)
    return float(eps * abs(lam[0]))


def eigenvalue_distance(z: complex, eps: float, pot: PotentialSpec,
                        grid: QuadratureGrid | None = None) -> float:
    """min |lambda + 1| over the spectrum of eps * K_z.

    Near zero iff z is (close to) an eigenvalue of the perturbed
    operator; the caller chooses the detection threshold.
    """
    if grid is None:
        grid = potential_grid(z, pot)
    vals = sla.eigvals(eps * assemble_k(z, pot, grid))
    return float(np.min(np.abs(vals + 1.0)))


def _normalized_det(eps: float, pot: PotentialSpec, grid: QuadratureGrid):
    """Sign/log-magnitude factory for det(I + eps K_z) on a fixed grid."""

    def det_at(z: complex):
        a = np.eye(grid.size, dtype=complex) + eps * assemble_k(z, pot, grid)
        sign, logabs = np.linalg.slogdet(a)
        return sign, logabs

    return det_at


def find_eigenvalue(eps: float, pot: PotentialSpec, z0: complex,
                    grid: QuadratureGrid | None = None,
                    tol: float = 1e-10, max_iter: int = 60) -> complex:
    """Root of det(I + eps K_z) = 0 near z0 by the secant method.

    The determinant is renormalized by its magnitude at z0 so the secant
    updates work with O(1) numbers.  Raises if the iteration leaves the
    resolvent set's numerical comfort zone or fails to converge.
    """
    if eps == 0.0:
        raise ZeroCouplingError("coupling eps must be nonzero")
    if grid is None:
        # resolve oscillations somewhat beyond the starting guess
        grid = potential_grid(4.0 * abs(complex(z0).real) + 1.0, pot)
    det_at = _normalized_det(eps, pot, grid)
    _, ref_log = det_at(z0)

    def g(z: complex) -> complex:
        sign, logabs = det_at(z)
        return sign * cmath.exp(min(logabs - ref_log, 300.0))

    za = complex(z0)
    zb = za + (abs(za) + 1.0) * 1e-4 * (1.0 + 0.3j)
    ga, gb = g(za), g(zb)
    for _ in range(max_iter):
        denom = gb - ga
        if denom == 0.0:
            raise ConvergenceError("secant stalled: flat determinant")
        zc = zb - gb * (zb - za) / denom
        if abs(zc - zb) <= tol * max(1.0, abs(zb)):
            return zc
        za, ga = zb, gb
        zb = zc
        gb = g(zb)
    raise ConvergenceError(
        f"determinant root search did not converge from z0={z0}")


def find_eigenvalues(eps: float, pot: PotentialSpec,
                     seeds: Sequence[complex],
                     grid: QuadratureGrid | None = None,
                     tol: float = 1e-10,
                     dedupe: float = 1e-6) -> np.ndarray:
    """Distinct determinant roots found from a collection of seeds."""
    roots: list[complex] = []
    for z0 in seeds:
        try:
            z = find_eigenvalue(eps, pot, z0, grid=grid, tol=tol)
        except (ConvergenceError, DomainError):
            continue
        if all(abs(z - r) > dedupe * max(1.0, abs(r)) for r in roots):
            roots.append(z)
    return np.array(sorted(roots, key=lambda w: (w.real, w.imag)))


def weak_coupling_rate(pot: PotentialSpec,
                       eps_values: Sequence[float] = (0.5, 0.25, 0.125),
                       z0: complex | None = None) -> dict:
    """Divergence exponent of the eigenvalue as the coupling vanishes.

    Tracks the eigenvalue z(eps) of the operator perturbed by eps*V by
    continuation through the determinant root, then fits
    log Re z(eps) ~ p log eps.  For delta-like wells the eigenvalue
    escapes to +infinity like eps^{-2}, so p is close to -2.
    """
    eps_values = sorted(eps_values, reverse=True)
    if len(eps_values) < 3:
        raise ConfigError("need at least three couplings for a rate fit")
    if z0 is None:
        l1 = pot.l1_norm()
        if l1 == 0.0:
            raise ZeroCouplingError("potential integrates to zero")
        z0 = 1.0 / (eps_values[0] * l1) ** 2
    roots = []
    guess = complex(z0)
    for i, eps in enumerate(eps_values):
        try:
            z = find_eigenvalue(eps, pot, guess)
        except ConvergenceError as exc:
            raise EigenvalueLost(
                f"lost the eigenvalue branch at eps={eps}") from exc
        if z.real <= 0.0:
            raise EigenvalueLost(
                f"root left the right half-plane at eps={eps}: {z}")
        roots.append(z)
        if i + 1 < len(eps_values):
            ratio = (eps / eps_values[i + 1]) ** 2
            guess = z * ratio
    eps_arr = np.array(eps_values)
    z_arr = np.array(roots)
    slope = float(np.polyfit(np.log(eps_arr), np.log(z_arr.real), 1)[0])
    return {"eps": eps_arr, "eigenvalues": z_arr, "slope": slope}


def escape_scan(pot: PotentialSpec, eps: float,
                re_values: Sequence[float],
                im_value: float = 0.5) -> dict:
    """Max spectral radius of eps K_z over a sweep of real parts.

    If the maximum stays below one, -1 is never an eigenvalue of
    eps K_z along the sweep, certifying the absence of eigenvalues of
    the perturbed operator there.
    """
    res = np.asarray(sorted(re_values), dtype=float)
    radii = np.array([
        spectral_radius(r + 1j * im_value, eps, pot) for r in res])
    return {"re_values": res, "radii": radii,
            "max_radius": float(radii.max()),
            "escaped": bool(radii.max() < 1.0)}

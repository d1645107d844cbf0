"""Product quadrature on spheres, balls, and annuli in R^n.

The rules here are the workhorse for every volume integral in the package:
a Gauss-Jacobi ladder of polar angles builds sphere rules in any dimension
(the n=3 case degenerates to the classical Gauss x equal-angle product),
and ball integrals are done in polar coordinates so that the radial Jacobian
cancels the inverse-square singularities of the catalog maps.  When a
declared singular point sits strictly inside the ball, the polar center is
moved onto it and the per-direction radial limits are solved from the
quadratic ball constraint; this keeps fixed-order rules accurate without
ad-hoc cutoffs.

Every integral is evaluated at two resolutions and the difference is
reported as the error estimate.  Dimensions five and up fall back to seeded
Monte Carlo with radially stratified sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gamma, pi

import numpy as np


def sphere_area(n: int) -> float:
    """Surface measure of the unit sphere S^{n-1} in R^n."""
    return 2.0 * pi ** (n / 2.0) / gamma(n / 2.0)


def ball_volume(n: int) -> float:
    """Lebesgue volume of the unit ball in R^n."""
    return sphere_area(n) / n


@lru_cache(maxsize=None)
def gauss01(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on (0, 1)."""
    x, w = np.polynomial.legendre.leggauss(q)
    return (0.5 * (x + 1.0), 0.5 * w)


@lru_cache(maxsize=None)
def sphere_rule(n: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes and weights on S^{n-1}.

    Weights sum to the surface area.  Built recursively: the polar angle of
    S^{n-1} carries a Gauss-Jacobi rule for the weight (1-t^2)^{(n-3)/2} and
    the remaining factor is a rule on S^{n-2}.  The base circle rule uses
    half-step offset angles, so no node ever lies on a coordinate plane.
    """
    if n < 1:
        raise ValueError("sphere dimension needs n >= 1")
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if n == 2:
        k = 4 * max(1, int(np.ceil(q / 2)))
        phi = (np.arange(k) + 0.5) * (2.0 * pi / k)
        nodes = np.stack([np.cos(phi), np.sin(phi)], axis=1)
        return nodes, np.full(k, 2.0 * pi / k)
    from scipy.special import roots_jacobi

    a = (n - 3) / 2.0
    t, wt = roots_jacobi(q, a, a)
    sub_nodes, sub_w = sphere_rule(n - 1, q)
    s = np.sqrt(1.0 - t**2)
    nodes = np.concatenate(
        [
            np.repeat(t, len(sub_nodes))[:, None],
            (s[:, None, None] * sub_nodes[None, :, :]).reshape(-1, n - 1),
        ],
        axis=1,
    )
    w = (wt[:, None] * sub_w[None, :]).ravel()
    return nodes, w


def _radial_panels(lo: float, hi: float, breaks: tuple[float, ...], q: int):
    """GL nodes/weights on [lo, hi] split at the given interior breakpoints."""
    edges = [lo] + [b for b in sorted(breaks) if lo < b < hi] + [hi]
    u, wu = gauss01(q)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        nodes.append(a + (b - a) * u)
        weights.append((b - a) * wu)
    return np.concatenate(nodes), np.concatenate(weights)


@dataclass(frozen=True)
class Estimate:
    """An integral value with a two-resolution error estimate."""

    value: float
    error: float

    def __float__(self) -> float:
        return self.value


def _polar_fixed(fn, center, radius, n, q_rad, q_sph, breaks=()):
    """Polar quadrature over B_radius(center) with scalar radial limits."""
    omega, w_omega = sphere_rule(n, q_sph)
    tau, w_tau = _radial_panels(0.0, radius, tuple(b for b in breaks), q_rad)
    pts = center[None, None, :] + tau[:, None, None] * omega[None, :, :]
    vals = fn(pts.reshape(-1, n)).reshape(len(tau), len(omega))
    jac = tau**(n - 1)
    return float(np.einsum("i,i,ij,j->", w_tau, jac, vals, w_omega))


def _polar_around_point(fn, polar_center, center, radius, n, q_rad, q_sph, lo=0.0):
    """Polar quadrature around `polar_center` inside B_radius(center).

    Per direction the ball constraint |polar_center + tau*omega - center| <= radius
    gives tau in [tau_-, tau_+]; the lower limit is clamped to `lo` (used for
    annulus cutoffs around a singular point).
    """
    omega, w_omega = sphere_rule(n, q_sph)
    d = polar_center - center
    b = omega @ d
    disc = b**2 + radius**2 - float(d @ d)
    mask = disc > 0.0
    tau_hi = np.where(mask, -b + np.sqrt(np.maximum(disc, 0.0)), 0.0)
    tau_lo = np.maximum(np.where(mask, -b - np.sqrt(np.maximum(disc, 0.0)), 0.0), lo)
    span = np.maximum(tau_hi - tau_lo, 0.0)
    u, wu = gauss01(q_rad)
    tau = tau_lo[None, :] + span[None, :] * u[:, None]
    pts = polar_center[None, None, :] + tau[:, :, None] * omega[None, :, :]
    vals = fn(pts.reshape(-1, n)).reshape(q_rad, len(omega))
    jac = tau**(n - 1)
    return float(np.einsum("i,ij,ij,j,j->", wu, jac, vals, span, w_omega))


def _mc_ball(fn, center, radius, n, n_samples, seed, singular=None, lo=0.0):
    """Radially stratified Monte Carlo over B_radius(center).

    When a singular point sits inside the ball the sampling is polar around
    it with per-direction limits, mirroring the deterministic engine.
    """
    rng = np.random.default_rng(seed)
    strata = 16
    per = max(8, n_samples // strata)
    if singular is None:
        total = 0.0
        totsq = 0.0
        vol = ball_volume(n) * radius**n
        edges = np.linspace(0.0, 1.0, strata + 1) ** (1.0 / n) * radius
        for a, b in zip(edges[:-1], edges[1:]):
            u = rng.random(per)
            r = (a**n + u * (b**n - a**n)) ** (1.0 / n)
            d = rng.standard_normal((per, n))
            d /= np.linalg.norm(d, axis=1, keepdims=True)
            v = fn(center[None, :] + r[:, None] * d)
            shell_vol = ball_volume(n) * (b**n - a**n)
            total += shell_vol * float(np.mean(v))
            totsq += shell_vol**2 * float(np.var(v)) / per
        return total, 3.0 * np.sqrt(totsq) + 1e-14 * (1.0 + abs(total)), vol
    # polar around the singular point with direction-dependent limits
    d0 = singular - center
    m = max(64, n_samples // 64)
    dirs = rng.standard_normal((m, n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    b = dirs @ d0
    disc = b**2 + radius**2 - float(d0 @ d0)
    tau_hi = np.where(disc > 0, -b + np.sqrt(np.maximum(disc, 0.0)), 0.0)
    tau_lo = np.maximum(np.where(disc > 0, -b - np.sqrt(np.maximum(disc, 0.0)), 0.0), lo)
    span = np.maximum(tau_hi - tau_lo, 0.0)
    per = max(8, n_samples // m)
    u = rng.random((m, per))
    # per-direction radius sampled with density prop. to tau^{n-1}
    tau = (tau_lo[:, None] ** n + u * (tau_hi[:, None] ** n - tau_lo[:, None] ** n)) ** (1.0 / n)
    pts = singular[None, None, :] + tau[:, :, None] * dirs[:, None, :]
    vals = fn(pts.reshape(-1, n)).reshape(m, per)
    per_dir = (tau_hi**n - np.maximum(tau_lo, 0.0) ** n) / n * np.mean(vals, axis=1)
    area = sphere_area(n)
    total = area * float(np.mean(per_dir))
    err = 3.0 * area * float(np.std(per_dir)) / np.sqrt(m)
    return total, err + 1e-14 * (1.0 + abs(total)), None


def ball_integral(
    fn,
    center,
    radius: float,
    n: int,
    q_rad: int = 48,
    q_sph: int = 14,
    singular_points=(),
    inner_cutoff: float = 0.0,
    mc_threshold: int = 5,
    mc_samples: int = 200_000,
    seed: int = 0,
) -> Estimate:
    """Integrate fn over the ball B_radius(center) (minus inner cutoffs).

    fn maps an (N, n) array of points to N values.  `singular_points` are
    integrable point singularities of fn; one of them strictly inside the
    ball switches the polar center onto it.  `inner_cutoff` removes the ball
    of that radius around the interior singular point (for L^p sweeps).
    The error field is the difference between the full rule and a coarsened
    one (or three Monte Carlo standard errors).
    """
    center = np.asarray(center, dtype=float)
    inside = [
        np.asarray(s, dtype=float)
        for s in singular_points
        if np.linalg.norm(np.asarray(s, dtype=float) - center) < radius * (1.0 - 1e-9)
    ]
    if n >= mc_threshold:
        sing = inside[0] if inside else None
        val, err, _ = _mc_ball(fn, center, radius, n, mc_samples, seed, sing, inner_cutoff)
        return Estimate(val, err)
    if inside:
        s = inside[0]
        if np.linalg.norm(s - center) <= 1e-12 * max(1.0, radius):
            lo = inner_cutoff
            hi = radius
            coarse = _polar_shell(fn, center, lo, hi, n, max(4, q_rad // 2), max(4, q_sph // 2))
            fine = _polar_shell(fn, center, lo, hi, n, q_rad, q_sph)
        else:
            coarse = _polar_around_point(
                fn, s, center, radius, n, max(4, q_rad // 2), max(4, q_sph // 2), lo=inner_cutoff
            )
            fine = _polar_around_point(fn, s, center, radius, n, q_rad, q_sph, lo=inner_cutoff)
    else:
        breaks = tuple(
            float(np.linalg.norm(np.asarray(s, dtype=float) - center))
            for s in singular_points
            if radius < np.linalg.norm(np.asarray(s, dtype=float) - center) < 2.0 * radius
        )
        coarse = _polar_fixed(fn, center, radius, n, max(4, q_rad // 2), max(4, q_sph // 2), breaks)
        fine = _polar_fixed(fn, center, radius, n, q_rad, q_sph, breaks)
    err = abs(fine - coarse) + 1e-14 * (1.0 + abs(fine))
    return Estimate(fine, err)


def _polar_shell(fn, center, lo, hi, n, q_rad, q_sph):
    """Polar quadrature over the spherical shell lo <= |y - center| <= hi."""
    omega, w_omega = sphere_rule(n, q_sph)
    tau, w_tau = _radial_panels(lo, hi, (), q_rad)
    pts = center[None, None, :] + tau[:, None, None] * omega[None, :, :]
    vals = fn(pts.reshape(-1, n)).reshape(len(tau), len(omega))
    return float(np.einsum("i,i,ij,j->", w_tau, tau**(n - 1), vals, w_omega))


def shell_integral(fn, center, lo: float, hi: float, n: int, q_rad=32, q_sph=14) -> Estimate:
    """Integrate fn over the annulus lo <= |y - center| <= hi around `center`.

    Intended for integrands whose only singularity is at `center` itself.
    """
    center = np.asarray(center, dtype=float)
    fine = _polar_shell(fn, center, lo, hi, n, q_rad, q_sph)
    coarse = _polar_shell(fn, center, lo, hi, n, max(4, q_rad // 2), max(4, q_sph // 2))
    return Estimate(fine, abs(fine - coarse) + 1e-14 * (1.0 + abs(fine)))


def ball_rule(n: int, q_rad: int = 16, q_sph: int = 12):
    """Nodes/weights integrating over the unit ball of R^n (polar product)."""
    omega, w_omega = sphere_rule(n, q_sph)
    t, wt = gauss01(q_rad)
    nodes = (t[:, None, None] * omega[None, :, :]).reshape(-1, n)
    w = (wt * t**(n - 1))[:, None] * w_omega[None, :]
    return nodes, w.ravel()

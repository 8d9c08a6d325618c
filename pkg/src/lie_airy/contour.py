"""Integration cycles for Airy-type oscillatory integrals.

Two families of real n-cycles in C^n are provided:

* ``OddCycle``: a rigid shift ``xi -> xi + i t tau`` (Jacobian 1), used when the
  degree of the phase polynomial is odd.
* ``EvenCycle``: the piecewise-linear deformation
  ``xi_j -> xi_j + i s_j a(xi_j)`` with ``a(x) = sgn(x)`` for ``|x| > 1`` and
  ``a(x) = x`` otherwise, ``s_j = sigma * theta_j``; used for even degree.

On either cycle ``Im p`` grows like a power of ``|xi|``, so the integrand decays
super-exponentially.  ``estimate_majorant`` fits the two-term lower envelope
``leading * |xi|^e - correction * |xi|^(e-1)`` numerically and
``truncation_radius`` turns it into a cut-off radius for quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, special

from .checker import CheckReport, Verdict, classify_cached, sphere_samples
from .errors import DimensionError, NotAiryError, TruncationError, UnusableCycleError
from .poly import MultiPoly

THETA_MAX = 0.9
R_PROBE = 50.0
RADIUS_CAP = 1e4


@dataclass(frozen=True)
class OddCycle:
    """Shifted real subspace ``R^n + i t tau``."""

    tau: tuple[float, ...]
    t: float

    def __post_init__(self):
        tau = tuple(float(v) for v in np.atleast_1d(np.asarray(self.tau, dtype=float)))
        object.__setattr__(self, "tau", tau)
        if not np.isfinite(self.t) or self.t <= 0:
            raise ValueError(f"shift t must be positive, got {self.t}")
        if abs(np.linalg.norm(tau) - 1.0) > 1e-9:
            raise ValueError(f"tau must be a unit vector, |tau| = {np.linalg.norm(tau)}")

    kind = "odd"

    @property
    def ndim(self) -> int:
        return len(self.tau)

    def axis_map(self, j: int, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        xi = np.asarray(xi, dtype=float)
        return xi + 1j * self.t * self.tau[j], np.ones_like(xi, dtype=complex)

    def kinks(self, j: int) -> tuple[float, ...]:
        return ()

    def imag_bound(self, j: int) -> float:
        """sup |Im zeta_j| on the cycle."""
        return abs(self.t * self.tau[j])

    def to_dict(self) -> dict:
        return {"cycle_kind": "odd", "t": self.t, "tau": list(self.tau)}


@dataclass(frozen=True)
class EvenCycle:
    """Piecewise-linear deformation ``xi + i sigma a(xi) theta``."""

    theta: tuple[float, ...]
    sigma: float = 1.0

    def __post_init__(self):
        theta = tuple(float(v) for v in np.atleast_1d(np.asarray(self.theta, dtype=float)))
        object.__setattr__(self, "theta", theta)
        if not all(0.0 < v < 1.0 for v in theta):
            raise ValueError(f"theta entries must lie in (0, 1), got {theta}")
        if not 0.0 < self.sigma <= 1.0:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma}")

    kind = "even"

    @property
    def ndim(self) -> int:
        return len(self.theta)

    def axis_map(self, j: int, xi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        xi = np.asarray(xi, dtype=float)
        s = self.sigma * self.theta[j]
        inside = np.abs(xi) < 1.0
        a = np.where(inside, xi, np.sign(xi))
        return xi + 1j * s * a, 1.0 + 1j * s * inside

    def kinks(self, j: int) -> tuple[float, ...]:
        return (-1.0, 1.0)

    def imag_bound(self, j: int) -> float:
        return self.sigma * self.theta[j]

    def to_dict(self) -> dict:
        return {"cycle_kind": "even", "theta": list(self.theta), "sigma": self.sigma}


Cycle = Union[OddCycle, EvenCycle]


def map_points(cycle: Cycle, xi) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``map_point``: ``xi`` has shape ``(..., n)``."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape[-1] != cycle.ndim:
        raise DimensionError(f"point has {xi.shape[-1]} coordinates, cycle has {cycle.ndim}")
    zeta = np.empty(xi.shape, dtype=complex)
    jac = np.ones(xi.shape[:-1], dtype=complex)
    for j in range(cycle.ndim):
        z, b = cycle.axis_map(j, xi[..., j])
        zeta[..., j] = z
        jac = jac * b
    return zeta, jac


def map_point(cycle: Cycle, xi) -> tuple[np.ndarray, complex]:
    """Image of a real point on ``cycle`` and the Jacobian factor there."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    zeta, jac = map_points(cycle, xi)
    return zeta, complex(jac)


@dataclass(frozen=True)
class MajorantConstants:
    """Lower envelope ``Im p >= leading |xi|^e - correction |xi|^(e-1)`` for ``|xi| >= radius``."""

    kind: str
    leading: float
    correction: float
    exponent: int
    radius: float = 1.0
    ndim: int = 1

    def __post_init__(self):
        if not self.leading > 0:
            raise ValueError("leading coefficient must be positive")
        if self.correction < 0:
            raise ValueError("correction coefficient must be nonnegative")

    def envelope(self, r):
        r = np.asarray(r, dtype=float)
        return self.leading * r ** self.exponent - self.correction * r ** (self.exponent - 1)


def _probe_directions(n: int, count: int) -> np.ndarray:
    if n == 1:
        return np.array([[-1.0], [1.0]])
    return sphere_samples(n, count)


def estimate_majorant(
    p: MultiPoly,
    cycle: Cycle,
    r_probe: float = R_PROBE,
    n_radii: int = 160,
    directions: np.ndarray | None = None,
) -> MajorantConstants:
    """Fit the two-term lower envelope of ``Im p`` along ``cycle``.

    ``Im p(map(xi))`` is sampled on ``|xi|`` in ``[1, r_probe]`` along the given
    (or sampled) directions.  The leading coefficient is the smallest ratio
    ``Im p / |xi|^e`` at the probe radius; the correction absorbs every sample
    that falls below the pure power, so the envelope never exceeds a sample.
    """
    if p.nvars != cycle.ndim:
        raise DimensionError(f"polynomial has {p.nvars} variables, cycle has {cycle.ndim}")
    m = p.degree
    if m < 2:
        raise UnusableCycleError("phase degree must be at least 2")
    e = m - 1
    n = p.nvars
    if directions is None:
        directions = _probe_directions(n, 256 * n)
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    dirs = dirs / np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = np.geomspace(1.0, r_probe, n_radii)
    xi = radii[:, None, None] * dirs[None, :, :]
    zeta, _ = map_points(cycle, xi)
    v = np.imag(p(zeta))
    lead = float(np.min(v[-1] / r_probe ** e))
    if not lead > 0:
        raise UnusableCycleError(
            f"Im p does not grow along the cycle (leading coefficient {lead:.3g})"
        )
    gap = lead * radii[:, None] ** e - v
    corr = float(max(0.0, np.max(gap / radii[:, None] ** (e - 1))))
    # pad against rounding so the envelope stays below every sample
    corr = corr * (1 + 1e-12) + 1e-300
    return MajorantConstants(cycle.kind, lead, corr, e, 1.0, n)


def tail_bound(mc: MajorantConstants, polyweight: int, R: float) -> float:
    """Majorant integral of ``(1+|xi|)^r exp(-envelope)`` over ``|xi| > R``."""
    n = mc.ndim
    area = 2 * math.pi ** (n / 2) / special.gamma(n / 2)

    def g(rho):
        expo = -(mc.leading * rho ** mc.exponent - mc.correction * rho ** (mc.exponent - 1))
        if expo < -745:
            return 0.0
        if expo > 700:
            return math.inf
        return rho ** (n - 1) * (1 + rho) ** polyweight * math.exp(expo)

    # integrate until the integrand is negligible, in growing chunks
    total, a = 0.0, R
    step = max(1.0, R)
    for _ in range(200):
        b = a + step
        val, _ = integrate.quad(g, a, b, limit=200)
        if not np.isfinite(val):
            return math.inf
        total += val
        if g(b) == 0.0 or (val <= 1e-300 and b > R + 4 * step):
            break
        a, step = b, step * 2
    return area * total


def truncation_radius(
    mc: MajorantConstants,
    polyweight: int = 0,
    tol: float = 1e-12,
    cap: float = RADIUS_CAP,
    growth: float = 1.01,
) -> float:
    """Smallest radius on the grid ``radius * growth^k`` whose tail bound is below ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")

    def ok(k: int) -> bool:
        return tail_bound(mc, polyweight, mc.radius * growth ** k) < tol

    kmax = int(math.ceil(math.log(cap / mc.radius) / math.log(growth)))
    if ok(0):
        return mc.radius
    lo, hi = 0, 1
    while not ok(hi):
        lo = hi
        if hi >= kmax:
            raise TruncationError(f"tail bound above {tol:.3g} even at radius cap {cap:g}")
        hi = min(2 * hi, kmax)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return mc.radius * growth ** hi


def shift_parameter(x) -> float:
    """``min(1, 1/|x|)``, with ``|x| = 0`` giving 1."""
    nx = float(np.linalg.norm(np.atleast_1d(np.asarray(x, dtype=float))))
    return 1.0 if nx <= 1.0 else 1.0 / nx


def select_cycle(
    p: MultiPoly,
    x,
    report: CheckReport | None = None,
    theta_max: float = THETA_MAX,
) -> Cycle:
    """Cycle used to evaluate the Airy integral of ``p`` at ``x``.

    For a phase that only satisfies the growth condition after negation, the
    odd cycle is shifted against the witness direction; the even cycle is the
    one for ``-p`` and callers evaluate by conjugation.
    """
    if report is None:
        report = classify_cached(p)
    if not report.holds:
        raise NotAiryError(f"no growth condition established for {p}")
    t = shift_parameter(x)
    if p.degree % 2 == 1:
        tau = np.asarray(report.witness, dtype=float)
        if report.verdict is Verdict.HOLDS_BY_NEGATION:
            tau = -tau
        return OddCycle(tuple(tau), t)
    return EvenCycle((t * theta_max,) * p.nvars, 1.0)

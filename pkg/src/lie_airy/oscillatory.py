"""Airy-type oscillatory integrals ``A_p(x) = int exp(i(p(y) - x.y)) dy``.

The integral over ``R^n`` converges only conditionally; it is evaluated over a
deformed cycle on which the integrand decays super-exponentially, truncated at
a radius derived from a fitted majorant, and integrated with adaptive
Gauss-Kronrod panels.  Derivatives use the weight ``(-i zeta)^r`` under the
integral sign.  Quadratic phases use the closed Fresnel-Gaussian formula.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._parallel import ordered_map
from .checker import CheckReport, Verdict, classify_cached
from .contour import (
    Cycle,
    estimate_majorant,
    select_cycle,
    tail_bound,
    truncation_radius,
)
from .errors import DegreeError, DimensionError, NotAiryError
from .poly import MultiPoly
from .quadrature import adaptive_tensor_quad
from .reference import reference_ai, reference_ai_prime

__all__ = [
    "Measure",
    "QuadConfig",
    "EvalResult",
    "airy_1d",
    "airy_nd",
    "quadratic_airy",
    "growth_scan",
    "GrowthTable",
    "reference_ai",
    "reference_ai_prime",
]

MAX_DIM = 3
_COARSE = {1: 4001, 2: 257, 3: 49}


class Measure(str, enum.Enum):
    LEBESGUE = "lebesgue"
    SELF_DUAL = "self_dual"

    def factor(self, dim: int) -> float:
        """Multiplier applied to a Lebesgue integral over a ``dim``-dimensional space."""
        return 1.0 if self is Measure.LEBESGUE else (2 * math.pi) ** (-dim / 2)


@dataclass(frozen=True)
class QuadConfig:
    tol: float = 1e-10
    max_panels: int = 200_000
    radius_override: float | None = None
    measure: Measure = Measure.LEBESGUE

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_panels < 1:
            raise ValueError("max_panels must be at least 1")
        object.__setattr__(self, "measure", Measure(self.measure))


@dataclass
class EvalResult:
    value: complex
    err_estimate: float
    panels_used: int
    cycle: Cycle | None
    truncation_radius: float
    notes: str = ""
    parts: list["EvalResult"] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        out = {
            "value": [self.value.real, self.value.imag],
            "err_estimate": self.err_estimate,
            "panels_used": self.panels_used,
            "truncation_radius": self.truncation_radius,
        }
        if self.cycle is None:
            out["cycle_kind"] = "closed_form" if not self.parts else "product"
        else:
            d = self.cycle.to_dict()
            out.update(d)
        if self.notes:
            out["notes"] = self.notes
        return out


def _as_multi_index(r, n: int) -> tuple[int, ...]:
    if np.isscalar(r):
        if n != 1:
            raise DimensionError("scalar derivative order given for a multivariate phase")
        r = (r,)
    r = tuple(int(v) for v in r)
    if len(r) != n or any(v < 0 for v in r):
        raise ValueError(f"derivative multi-index {r} invalid for {n} variables")
    return r


def _scale(res: EvalResult, factor: float) -> EvalResult:
    return EvalResult(
        res.value * factor, res.err_estimate * abs(factor), res.panels_used,
        res.cycle, res.truncation_radius, res.notes, res.parts,
    )


# --------------------------------------------------------------------- quadratic
def _quadratic_parts(p: MultiPoly):
    n = p.nvars
    Q = np.zeros((n, n))
    b = np.zeros(n)
    c = 0.0
    for alpha, coef in p.terms.items():
        deg = sum(alpha)
        idx = [j for j, a in enumerate(alpha) for _ in range(a)]
        if deg == 0:
            c = float(coef)
        elif deg == 1:
            b[idx[0]] = float(coef)
        else:
            j, k = idx
            if j == k:
                Q[j, j] = float(coef)
            else:
                Q[j, k] = Q[k, j] = float(coef) / 2
    return Q, b, c


def quadratic_airy(p: MultiPoly, x, r=None) -> complex:
    """Closed form of the Lebesgue integral for a phase of degree 2.

    With ``p = y.Q.y + b.y + c`` and ``v = b - x``::

        A(x) = pi^(n/2) |det Q|^(-1/2) exp(i pi sig(Q)/4) exp(i(c - v.Q^-1.v/4))

    Derivatives come from ``d_j A = (d_j phi) A`` applied as a polynomial
    recursion, ``phi`` being the exponent above.
    """
    n = p.nvars
    if p.degree != 2:
        raise DegreeError("closed form needs a phase of degree exactly 2")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    r = _as_multi_index(0 if r is None and n == 1 else (r or (0,) * n), n)
    Q, b, c = _quadratic_parts(p)
    eig = np.linalg.eigvalsh(Q)
    if np.min(np.abs(eig)) <= 1e-14 * max(1.0, np.max(np.abs(eig))):
        raise DegreeError("quadratic part is degenerate; the integral is not a function")
    Qinv = np.linalg.inv(Q)
    sig = int(np.sum(np.sign(eig)))
    v = b - x
    base = (math.pi ** (n / 2) / math.sqrt(abs(np.prod(eig)))
            * np.exp(1j * math.pi * sig / 4)
            * np.exp(1j * (c - v @ Qinv @ v / 4)))
    if not any(r):
        return complex(base)
    # d_j phi = (i/2) [Q^-1 (b - x)]_j, a polynomial of degree 1 in x
    Qb = Qinv @ b
    dphi = []
    for j in range(n):
        terms = {(0,) * n: 0.5j * Qb[j]}
        for k in range(n):
            e = [0] * n
            e[k] = 1
            terms[tuple(e)] = terms.get(tuple(e), 0) - 0.5j * Qinv[j, k]
        dphi.append(MultiPoly(n, terms))
    P = MultiPoly.constant(n, 1)
    for j in range(n):
        for _ in range(r[j]):
            P = P.derivative(j) + dphi[j] * P
    return complex(base * complex(P.eval(list(x))))


# ------------------------------------------------------------------ quadrature
def _grid_points(axes: Sequence[np.ndarray]) -> np.ndarray:
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1)


def _initial_breaks(p, x, cycle, R, tol) -> list[np.ndarray]:
    """Per-axis breakpoints so each panel spans at most ~2 pi of phase where the integrand matters."""
    n = p.nvars
    M = _COARSE[n]
    g = np.linspace(-R, R, M)
    maps = [cycle.axis_map(j, g) for j in range(n)]
    Z = _grid_points([m[0] for m in maps])
    phase = 1j * p(Z)
    for j in range(n):
        shape = [1] * n
        shape[j] = M
        phase = phase - 1j * x[j] * maps[j][0].reshape(shape)
    with np.errstate(over="ignore", under="ignore"):
        weight = np.exp(np.real(phase))
    significant = weight > 1e-3 * tol / (2 * R) ** n
    grads = p.gradient()
    out = []
    for j in range(n):
        shape = [1] * n
        shape[j] = M
        rate = np.abs((grads[j](Z) - x[j]) * maps[j][1].reshape(shape))
        rate = np.where(significant, rate, 0.0)
        other = tuple(k for k in range(n) if k != j)
        rate_j = rate.max(axis=other) if other else rate
        cum = np.concatenate([[0.0], np.cumsum(0.5 * (rate_j[1:] + rate_j[:-1]) * np.diff(g))])
        marks = np.arange(2 * math.pi, cum[-1], 2 * math.pi)
        pts = np.interp(marks, cum, g) if len(marks) else np.empty(0)
        # cap panel width so flat regions still get resolved
        width = 2.0
        cap = np.linspace(-R, R, int(math.ceil(2 * R / width)) + 1)
        kinks = [k for k in cycle.kinks(j) if -R < k < R]
        b = np.unique(np.concatenate([pts, cap, kinks, [-R, R]]))
        keep = np.concatenate([[True], np.diff(b) > 1e-9 * max(1.0, R)])
        b = b[keep]
        b[0], b[-1] = -R, R
        for k in kinks:
            # a breakpoint must sit exactly on a kink
            b[np.argmin(np.abs(b - k))] = k
        out.append(np.unique(b))
    return out


def _cycle_quadrature(p: MultiPoly, x: np.ndarray, r: tuple[int, ...], cycle: Cycle,
                      cfg: QuadConfig) -> EvalResult:
    n = p.nvars
    mc = estimate_majorant(p, cycle)
    prefactor = 1.0
    for j in range(n):
        prefactor *= math.exp(abs(x[j]) * cycle.imag_bound(j)) * math.hypot(1.0, cycle.imag_bound(j) if cycle.kind == "even" else 0.0)
    tail_tol = 0.05 * cfg.tol / prefactor
    if cfg.radius_override is not None:
        R = float(cfg.radius_override)
    else:
        R = truncation_radius(mc, sum(r), tail_tol)
    R = max(R, 2.0)
    tail = prefactor * tail_bound(mc, sum(r), R)
    breaks = _initial_breaks(p, x, cycle, R, cfg.tol)

    def integrand(nodes: list[np.ndarray]) -> np.ndarray:
        factors = []
        zetas = []
        for j, xi in enumerate(nodes):
            z, jac = cycle.axis_map(j, xi)
            f = jac * np.exp(-1j * x[j] * z)
            if r[j]:
                f = f * (-1j * z) ** r[j]
            zetas.append(z)
            factors.append(f)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            F = np.exp(1j * p(_grid_points(zetas)))
            for j, f in enumerate(factors):
                shape = [1] * n
                shape[j] = len(f)
                F = F * f.reshape(shape)
        return F

    q = adaptive_tensor_quad(integrand, breaks, tol=0.9 * cfg.tol, max_cells=cfg.max_panels)
    notes = "roundoff-limited" if q.roundoff_limited else ""
    return EvalResult(q.value, q.err_estimate + tail, q.cells, cycle, R, notes)


# ------------------------------------------------------------------ public API
def airy_nd(
    p: MultiPoly,
    x,
    r=None,
    cfg: QuadConfig = QuadConfig(),
    cycle: Cycle | None = None,
    report: CheckReport | None = None,
) -> EvalResult:
    """``d^r A_p(x)`` for a phase in 1 to 3 variables.

    ``cycle`` forces a particular integration cycle (no separable splitting
    or negation is applied then); otherwise the cycle is chosen from the
    growth-condition report of ``p``.
    """
    n = p.nvars
    if n > MAX_DIM:
        raise DimensionError(f"quadrature supports at most {MAX_DIM} variables, got {n}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape != (n,):
        raise DimensionError(f"point has shape {x.shape}, expected ({n},)")
    r = _as_multi_index(0 if r is None and n == 1 else (r if r is not None else (0,) * n), n)
    if n > 1 and sum(r) > 4:
        raise ValueError("total derivative order above 4 is not supported in several variables")
    if p.degree < 2:
        raise DegreeError("phase must have degree at least 2")
    factor = cfg.measure.factor(n)
    # the Lebesgue integral is computed to cfg.tol and then scaled (factor <= 1),
    # so both measures share one discretisation
    base_cfg = QuadConfig(cfg.tol, cfg.max_panels, cfg.radius_override, Measure.LEBESGUE)
    if cycle is not None:
        return _scale(_cycle_quadrature(p, x, r, cycle, base_cfg), factor)
    return _scale(_airy_lebesgue(p, x, r, base_cfg, report), factor)


def _airy_lebesgue(p, x, r, cfg, report) -> EvalResult:
    if p.degree == 2:
        return EvalResult(quadratic_airy(p, x, r), 0.0, 0, None, 0.0, "closed form")
    blocks = p.partition_separable()
    if len(blocks) > 1:
        return _separable_product(p, blocks, x, r, cfg)
    if report is None:
        report = classify_cached(p)
    if not report.holds:
        raise NotAiryError(f"could not establish the growth condition for {p}")
    if p.degree % 2 == 0 and report.verdict is Verdict.HOLDS_BY_NEGATION:
        # A_p^(r)(x) = (-1)^|r| conj(A_{-p}^(r)(-x))
        res = _airy_lebesgue(-p, -x, r, cfg, None)
        sign = (-1) ** sum(r)
        return EvalResult(sign * res.value.conjugate(), res.err_estimate, res.panels_used,
                          res.cycle, res.truncation_radius, "conjugated from -p", res.parts)
    cycle = select_cycle(p, x, report)
    return _cycle_quadrature(p, x, r, cycle, cfg)


def _separable_product(p, blocks, x, r, cfg) -> EvalResult:
    parts_p = p.split_blocks(blocks)
    k = len(blocks)
    results = []
    for block, q in zip(blocks, parts_p):
        xb = x[list(block)]
        rb = tuple(r[j] for j in block)
        results.append(_airy_lebesgue(q, xb, rb, QuadConfig(cfg.tol / (2 * k), cfg.max_panels,
                                                              cfg.radius_override), None))
    value = 1 + 0j
    err = 0.0
    for res in results:
        # |ab - a'b'| <= |a| e_b + |b| e_a + e_a e_b
        err = abs(value) * res.err_estimate + abs(res.value) * err + err * res.err_estimate
        value = value * res.value
    return EvalResult(value, err, sum(res.panels_used for res in results), None,
                      max(res.truncation_radius for res in results), "separable product", results)


def airy_1d(p: MultiPoly, x: float, r: int = 0, cfg: QuadConfig = QuadConfig(),
            cycle: Cycle | None = None) -> EvalResult:
    """``d^r A_p(x)`` for a phase in one variable."""
    if p.nvars != 1:
        raise DimensionError(f"airy_1d needs a univariate phase, got {p.nvars} variables")
    return airy_nd(p, [float(x)], (int(r),), cfg, cycle)


# ------------------------------------------------------------------ growth scan
@dataclass
class GrowthTable:
    exponent: float
    rows: list[tuple[float, float, float]]
    constant: float

    def ratios(self) -> np.ndarray:
        return np.array([v / b for _, v, b in self.rows])

    def to_dict(self) -> dict:
        return {"exponent": self.exponent, "constant": self.constant,
                "rows": [list(row) for row in self.rows]}


def growth_scan(p: MultiPoly, r=0, xs: Sequence = (), cfg: QuadConfig = QuadConfig(tol=1e-8),
                workers: int | None = None) -> GrowthTable:
    """Tabulate ``|d^r A_p(x)|`` against ``(1+|x|)^((|r|+n)/(m-1))``.

    ``xs`` holds scalars (one variable) or points.  The returned constant is
    the largest observed ratio, so every row satisfies ``value <= C * bound``.
    """
    n = p.nvars
    rr = _as_multi_index(r, n) if not (np.isscalar(r) and n > 1) else (int(r),) + (0,) * (n - 1)
    m = p.degree
    expo = (sum(rr) + n) / (m - 1)
    pts = [np.atleast_1d(np.asarray(v, dtype=float)) for v in xs]

    def one(pt):
        res = airy_nd(p, pt, rr, cfg)
        nx = float(np.linalg.norm(pt))
        key = float(pt[0]) if n == 1 else nx
        return key, abs(res.value), (1 + nx) ** expo

    rows = ordered_map(one, pts, workers)
    C = max((v / b for _, v, b in rows), default=0.0)
    return GrowthTable(expo, rows, C)

"""Named verification suites, each returning a JSON-ready report with ``passed``."""

from __future__ import annotations

import math

import numpy as np

from . import cartan
from ._parallel import ordered_map
from .contour import OddCycle
from .oscillatory import QuadConfig, airy_1d, growth_scan
from .poly import parse_poly
from .spectral import MatrixAiryConfig, kontsevich_pde_residual

SCHEMA = "1"
CUBIC = parse_poly("y1^3/3")
PDE_POINTS = ((0.5, -0.7), (-2.0, 1.5), (-1.0, -3.0), (-3.0, 0.2), (-1.5, 0.5))


def _report(check: str, passed: bool, **fields) -> dict:
    return {"schema": SCHEMA, "check": check, "passed": bool(passed), **fields}


def ode_suite(points: int = 41, tol: float = 1e-8, threshold: float = 1e-5,
              workers: int | None = None) -> dict:
    """``sup |A'' + x A| / (1 + |A|)`` over a grid on [-5, 5] for the cubic phase."""
    cfg = QuadConfig(tol=tol)
    xs = np.linspace(-5.0, 5.0, points)

    def resid(x):
        a0 = airy_1d(CUBIC, x, 0, cfg).value
        a2 = airy_1d(CUBIC, x, 2, cfg).value
        return abs(a2 + x * a0) / (1 + abs(a0))

    res = ordered_map(resid, xs, workers)
    worst = float(max(res))
    return _report("ode", worst <= threshold, sup_residual=worst, threshold=threshold,
                   points=points, tol=tol)


def tinv_suite(xs=(2.0, 5.0, 10.0), t_alt: float = 0.3, tol: float = 1e-10) -> dict:
    """Values on two different shifted cycles agree within 10x their error estimates."""
    cfg = QuadConfig(tol=tol)
    rows = []
    ok = True
    for x in xs:
        a = airy_1d(CUBIC, x, 0, cfg)
        b = airy_1d(CUBIC, x, 0, cfg, cycle=OddCycle((1.0,), t_alt))
        diff = abs(a.value - b.value)
        bound = 10 * (a.err_estimate + b.err_estimate)
        ok &= diff <= bound
        rows.append({"x": x, "t_default": a.cycle.t, "t_alt": t_alt, "diff": diff, "bound": bound})
    return _report("tinv", ok, rows=rows)


def growth_suite(points: int = 50, tol: float = 1e-8, workers: int | None = None) -> dict:
    """Polynomial growth of ``d^r A`` for the cubic phase, ``r`` in {0, 1}.

    The constant is fitted on the first half of ``x`` in [1, 50] and must
    bound the held-out second half.
    """
    xs = np.linspace(1.0, 50.0, points)
    half = points // 2
    out = []
    ok = True
    for r in (0, 1):
        table = growth_scan(CUBIC, r, xs, QuadConfig(tol=tol), workers)
        ratios = table.ratios()
        C_fit = float(ratios[:half].max())
        held_ok = bool(np.all(ratios[half:] <= C_fit))
        ok &= held_ok and math.isfinite(table.constant)
        out.append({"r": r, "exponent": table.exponent, "constant": table.constant,
                    "constant_first_half": C_fit, "held_out_ok": held_ok})
    return _report("growth", ok, orders=out)


def pde_suite(n: int = 2, h: float = 1e-2, threshold: float = 1e-3) -> dict:
    """Residual of the matrix Airy PDE at well-separated spectra."""
    if n != 2:
        raise ValueError("pde suite uses n = 2")
    cfg = MatrixAiryConfig(2)
    rows = [{"y": list(y), "residual": kontsevich_pde_residual(cfg, y, h)} for y in PDE_POINTS]
    worst = max(r["residual"] for r in rows)
    return _report("pde", worst <= threshold, h=h, threshold=threshold, rows=rows)


def weyl_suite(n: int = 2) -> dict:
    return cartan.weyl_integration_check(n).to_dict()


def hciz_suite(n: int = 2, samples: int = 200_000, seed: int = 0,
               workers: int | None = None) -> dict:
    if n == 2:
        y, yp = (1.0, -1.0), (1.0, -1.0)
    else:
        y, yp = (1.0, 0.0, -1.0), (0.5, -0.2, 0.3)
    return cartan.hciz_check(n, y, yp, samples, seed, workers).to_dict()


def limit_suite(n: int = 2) -> dict:
    return cartan.limit_formula_check(n).to_dict()


def ftpi_suite(n: int = 2) -> dict:
    return cartan.gaussian_pi_ft_check(n).to_dict()


SUITES = {
    "ode": lambda a: ode_suite(workers=a.get("workers")),
    "tinv": lambda a: tinv_suite(),
    "growth": lambda a: growth_suite(workers=a.get("workers")),
    "pde": lambda a: pde_suite(a.get("n") or 2),
    "weyl": lambda a: weyl_suite(a.get("n") or 2),
    "hciz": lambda a: hciz_suite(a.get("n") or 2, a.get("samples") or 200_000,
                                 a.get("seed") or 0, a.get("workers")),
    "limit": lambda a: limit_suite(a.get("n") or 2),
    "ftpi": lambda a: ftpi_suite(a.get("n") or 2),
}


def run_suite(name: str, **kwargs) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](kwargs)

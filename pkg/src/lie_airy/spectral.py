"""Matrix Airy integrals on hermitian matrices via eigenvalue determinants.

For ``p(X) = c tr(X^m)`` on the hermitian n x n matrices the conjugation
invariant integral ``A(X) = int exp(i tr(p(Y) - XY)) dY`` depends only on the
eigenvalues ``y`` of ``X`` and reduces to one-variable integrals::

    pi(y) A(diag y) = (-1)^r (2 pi)^r det( A_q^(j-1)(y_i) ),   r = n(n-1)/2,

with ``q(t) = c t^m``, ``A_q`` the Lebesgue one-variable integral and
``pi(y) = prod_{k>l} (y_k - y_l)``.  "Lebesgue" on the matrix space means the
Euclidean measure of the inner product ``tr(XY)`` (each off-diagonal real
coordinate pair carries a factor 2 relative to ``dRe dIm``).  The self-dual
value is the Lebesgue value times ``(2 pi)^(-n^2/2)``.

Coincident eigenvalues are handled by the confluent limit: a cluster of size
``s`` at ``a`` contributes rows ``A^(j-1+i')(a)/i'!`` and the Vandermonde keeps
only inter-cluster factors ``(a_k - a_l)^(s_k s_l)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ._parallel import ordered_map
from .errors import CoincidenceError, DimensionError, NotHermitianError
from .oscillatory import Measure, QuadConfig, airy_1d
from .poly import MultiPoly


@dataclass(frozen=True)
class MatrixAiryConfig:
    n: int
    m: int = 3
    c: float | Fraction | None = None
    measure: Measure = Measure.LEBESGUE
    coincidence_tol: float = 1e-8
    quad: QuadConfig = field(default_factory=lambda: QuadConfig(tol=1e-10))
    workers: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("matrix size must be positive")
        if self.m < 3:
            raise ValueError("power m must be at least 3")
        if self.c is None:
            object.__setattr__(self, "c", Fraction(1, 3) if self.m == 3 else 1)
        if self.c == 0:
            raise ValueError("coefficient c must be nonzero")
        object.__setattr__(self, "measure", Measure(self.measure))

    @property
    def phase(self) -> MultiPoly:
        """The one-variable polynomial ``c t^m``."""
        return MultiPoly(1, {(self.m,): self.c})

    @property
    def r(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass
class MatrixAiryResult:
    value: complex
    err_estimate: float
    eigenvalues: tuple[float, ...]
    confluent_clusters: list[tuple[int, ...]]
    measure: Measure

    def to_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "err_estimate": self.err_estimate,
            "eigenvalues": list(self.eigenvalues),
            "confluent_clusters": [list(c) for c in self.confluent_clusters],
            "measure": self.measure.value,
        }


def vandermonde(y: Sequence[float]) -> float:
    """``prod_{k>l} (y_k - y_l)`` in the given order."""
    y = list(y)
    out = 1.0
    for k in range(len(y)):
        for l in range(k):
            out *= y[k] - y[l]
    return out


def one_dim_derivatives(cfg: MatrixAiryConfig, y: float, orders: Sequence[int] | int | None = None):
    """``[A_q^(j)(y) for j in orders]`` with ``q = c t^m`` in the configured measure.

    ``orders`` defaults to ``0..n-1``; an integer ``k`` means ``0..k-1``.
    Orders up to ``n+1`` are accepted (confluent rows need them).
    """
    if orders is None:
        orders = range(cfg.n)
    elif isinstance(orders, int):
        orders = range(orders)
    orders = list(orders)
    if orders and max(orders) > cfg.n + 1:
        raise ValueError(f"derivative order {max(orders)} exceeds n+1 = {cfg.n + 1}")
    q = cfg.phase
    qc = QuadConfig(cfg.quad.tol, cfg.quad.max_panels, cfg.quad.radius_override, cfg.measure)
    return np.array([airy_1d(q, y, j, qc).value for j in orders])


def cluster_eigenvalues(y: Sequence[float], tol: float) -> tuple[np.ndarray, list[list[int]]]:
    """Sort ``y`` and group consecutive entries closer than ``tol``.

    Returns the sort permutation and clusters as lists of positions in the
    sorted order.
    """
    y = np.asarray(y, dtype=float)
    order = np.argsort(y, kind="stable")
    ys = y[order]
    clusters = [[0]] if len(ys) else []
    for i in range(1, len(ys)):
        if ys[i] - ys[i - 1] < tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return order, clusters


def _cofactor_error(M: np.ndarray, E: np.ndarray) -> float:
    """First-order bound on the determinant error from entrywise errors ``E``."""
    n = M.shape[0]
    if n == 1:
        return float(E[0, 0])
    total = 0.0
    for i in range(n):
        for j in range(n):
            if E[i, j] == 0:
                continue
            minor = np.delete(np.delete(M, i, 0), j, 1)
            total += abs(np.linalg.det(minor)) * E[i, j]
    return float(total)


def determinant_ratio(
    entries: Callable[[float, int], tuple[complex, float]],
    y: Sequence[float],
    coincidence_tol: float = 1e-8,
) -> tuple[complex, float, list[list[int]], np.ndarray]:
    """``det(f^(j)(y_i)) / pi(y)`` with the confluent limit for close entries.

    ``entries(a, k)`` returns ``(f^(k)(a), error estimate)``.  Rows are built
    in ascending order of ``y`` so the result is permutation invariant.
    Returns ``(value, err, clusters, sort_order)``.
    """
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise ValueError("eigenvalues must be finite")
    n = len(y)
    order, clusters = cluster_eigenvalues(y, coincidence_tol)
    ys = y[order]
    centres = [float(np.mean(ys[c])) for c in clusters]
    tasks = []
    for a, c in zip(centres, clusters):
        for ip in range(len(c)):
            for j in range(n):
                tasks.append((a, j + ip, math.factorial(ip)))
    cache: dict[tuple[float, int], tuple[complex, float]] = {}
    for a, k, _ in tasks:
        cache.setdefault((a, k), None)
    keys = list(cache)
    vals = ordered_map(lambda key: entries(*key), keys)
    cache = dict(zip(keys, vals))
    M = np.empty((n, n), dtype=complex)
    E = np.zeros((n, n))
    for idx, (a, k, fact) in enumerate(tasks):
        v, e = cache[(a, k)]
        M[idx // n, idx % n] = v / fact
        E[idx // n, idx % n] = e / fact
    denom = 1.0
    for k in range(len(centres)):
        for l in range(k):
            denom *= (centres[k] - centres[l]) ** (len(clusters[k]) * len(clusters[l]))
    det = complex(np.linalg.det(M)) if n > 1 else complex(M[0, 0])
    err = _cofactor_error(M, E)
    return det / denom, err / abs(denom), clusters, order


def matrix_airy_details(cfg: MatrixAiryConfig, y: Sequence[float]) -> MatrixAiryResult:
    """Matrix Airy integral at ``diag(y)`` with diagnostics."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if len(y) != cfg.n:
        raise DimensionError(f"expected {cfg.n} eigenvalues, got {len(y)}")
    q = cfg.phase
    qc = QuadConfig(cfg.quad.tol, cfg.quad.max_panels, cfg.quad.radius_override, Measure.LEBESGUE)

    def entry(a, k):
        res = airy_1d(q, a, k, qc)
        return res.value, res.err_estimate

    ratio, err, clusters, order = determinant_ratio(entry, y, cfg.coincidence_tol)
    r = cfg.r
    # Lebesgue: (-1)^r (2 pi)^r det / pi ; self-dual divides by (2 pi)^(n^2/2)
    base = (-1) ** r * ratio
    if cfg.measure is Measure.LEBESGUE:
        scale = (2 * math.pi) ** r
    else:
        scale = (2 * math.pi) ** (-cfg.n / 2)
    confluent = [tuple(int(order[i]) for i in c) for c in clusters if len(c) > 1]
    return MatrixAiryResult(base * scale, err * scale, tuple(float(v) for v in np.sort(y)),
                            confluent, cfg.measure)


def matrix_airy_diag(cfg: MatrixAiryConfig, y: Sequence[float]) -> complex:
    """Matrix Airy integral at ``diag(y)``; ``y`` in any order."""
    if cfg.n == 1:
        qc = QuadConfig(cfg.quad.tol, cfg.quad.max_panels, cfg.quad.radius_override, cfg.measure)
        return airy_1d(cfg.phase, float(np.atleast_1d(y)[0]), 0, qc).value
    return matrix_airy_details(cfg, y).value


# ------------------------------------------------------------------ hermitian
def hermitian_eigenvalues(H, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues of a hermitian matrix (n x n array or n^2 flat entries)."""
    H = np.asarray(H, dtype=complex)
    if H.ndim == 1:
        n = int(round(math.sqrt(H.size)))
        if n * n != H.size:
            raise DimensionError(f"{H.size} entries do not form a square matrix")
        H = H.reshape(n, n)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DimensionError(f"matrix must be square, got shape {H.shape}")
    dev = float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0
    if dev > tol:
        raise NotHermitianError(f"matrix deviates from its adjoint by {dev:.3g}")
    return np.linalg.eigvalsh(0.5 * (H + H.conj().T))


def matrix_airy_hermitian(cfg: MatrixAiryConfig, H) -> complex:
    """Matrix Airy integral at a hermitian matrix ``H``."""
    y = hermitian_eigenvalues(H)
    if len(y) != cfg.n:
        raise DimensionError(f"matrix is {len(y)} x {len(y)}, config says n = {cfg.n}")
    return matrix_airy_diag(cfg, y)


# ------------------------------------------------------------------ PDE check
def kontsevich_pde_residual(cfg: MatrixAiryConfig, y: Sequence[float], h: float = 1e-2) -> float:
    """``|pi^-1 Delta_h(pi A)(y) + (sum y) A(y)|`` with a central-difference Laplacian.

    For ``c tr(Y^3)`` with ``c = 1/3`` the matrix Airy integral solves
    ``Delta A + tr(X) A = 0``; its radial part on the diagonal is
    ``pi^-1 Delta_y (pi A)``.
    """
    if cfg.m != 3:
        raise ValueError("the PDE check applies to cubic phases")
    y = np.atleast_1d(np.asarray(y, dtype=float))
    n = len(y)
    if n != cfg.n:
        raise DimensionError(f"expected {cfg.n} eigenvalues, got {n}")
    ys = np.sort(y)
    if n > 1 and np.min(np.diff(ys)) <= 10 * h:
        raise CoincidenceError("eigenvalue gaps must exceed 10 h for the stencil")
    points = [y]
    for k in range(n):
        for sgn in (1, -1):
            z = y.copy()
            z[k] += sgn * h
            points.append(z)
    vals = ordered_map(lambda z: vandermonde(z) * matrix_airy_diag(cfg, z), points, cfg.workers)
    centre = vals[0]
    lap = sum(vals[1:]) - 2 * n * centre
    lap /= h * h
    pi0 = vandermonde(y)
    A0 = centre / pi0
    return float(abs(lap / pi0 + np.sum(y) * A0))

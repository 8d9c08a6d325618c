"""Diagonal Cartan data of U(n) and numerical checks of orbital-integral identities.

Everything is realised on the hermitian matrices with the pairing
``(X, Y) = tr(XY)`` and the conjugation action ``X -> u X u*``.  The diagonal
subspace carries coordinates ``y``; the discriminant is
``pi(y) = prod_{l<k} (y_k - y_l)``; the Weyl group is the symmetric group.
The standard gaussian is ``E(y) = exp(-|y|^2/2)`` and the self-dual measure on
``R^n`` is ``(2 pi)^(-n/2) dy`` (Fourier kernel ``exp(-i k.y)``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from ._parallel import ordered_map
from .errors import CoincidenceError, DimensionError
from .poly import MultiPoly

SCHEMA = "1"


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of images."""
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class CartanData:
    """Positive roots and Weyl group of U(n) on the diagonal."""

    n: int
    positive_pairs: tuple[tuple[int, int], ...] = field(init=False)
    weyl: tuple[tuple[tuple[int, ...], int], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("n must be positive")
        pairs = tuple((l, k) for k in range(self.n) for l in range(k))
        object.__setattr__(self, "positive_pairs", tuple(sorted(pairs)))
        if self.n <= 8:
            perms = tuple((s, permutation_sign(s)) for s in itertools.permutations(range(self.n)))
        else:
            perms = ()
        object.__setattr__(self, "weyl", perms)

    @property
    def r(self) -> int:
        return len(self.positive_pairs)

    def pi_poly(self) -> MultiPoly:
        return discriminant_poly(self.n)


def pi_eval(cd: CartanData | int, y) -> float:
    """``prod_{l<k} (y_k - y_l)``; accepts a batch with the last axis of length n."""
    n = cd.n if isinstance(cd, CartanData) else int(cd)
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != n:
        raise DimensionError(f"expected {n} coordinates, got {y.shape[-1]}")
    out = np.ones(y.shape[:-1])
    for k in range(n):
        for l in range(k):
            out = out * (y[..., k] - y[..., l])
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def discriminant_poly(n: int) -> MultiPoly:
    """``pi`` as an exact integer polynomial."""
    out = MultiPoly.constant(n, 1)
    for k in range(n):
        for l in range(k):
            out = out * (MultiPoly.variable(n, k) - MultiPoly.variable(n, l))
    return out


def pi_norm_squared(n: int) -> int:
    """``(pi, pi) = (d(pi) pi)(0)`` by expansion into monomials.

    Uses ``(y^a, y^b) = a! delta_ab``; the result equals ``n! prod_{j<n} j!``.
    """
    if not 1 <= n <= 6:
        raise ValueError("pi_norm_squared supports 1 <= n <= 6")
    total = 0
    for alpha, c in discriminant_poly(n).terms.items():
        total += int(c) ** 2 * math.prod(math.factorial(a) for a in alpha)
    return total


# ---------------------------------------------------------------- Haar measure
def haar_sample(n: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-distributed unitary matrices, shape ``(n, n)`` or ``(size, n, n)``.

    QR of a complex gaussian matrix, with the columns rescaled by the phases of
    ``diag(R)`` so the distribution is exactly Haar.
    """
    shape = (n, n) if size is None else (size, n, n)
    Z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=-2, axis2=-1)
    ph = d / np.abs(d)
    return Q * ph[..., None, :]


def _chunk_moments(f, y, n, count, seed_seq):
    rng = np.random.default_rng(seed_seq)
    U = haar_sample(n, rng, count)
    X = (U * y[None, None, :]) @ np.conj(np.swapaxes(U, -1, -2))
    vals = np.asarray(f(X), dtype=complex)
    return vals.sum(), np.sum(np.abs(vals) ** 2)


def orbital_average(
    f: Callable[[np.ndarray], np.ndarray],
    y,
    n: int | None = None,
    samples: int = 10_000,
    seed: int = 0,
    chunk: int = 20_000,
    workers: int | None = None,
    return_stderr: bool = False,
):
    """Monte Carlo mean of ``f(u diag(y) u*)`` over Haar ``u``.

    ``f`` receives a stack of matrices ``(B, n, n)`` and returns ``B`` values.
    Samples are split into chunks seeded by ``SeedSequence(seed).spawn``; the
    chunking does not depend on ``workers`` so results are reproducible.
    """
    y = np.asarray(y, dtype=float)
    n = len(y) if n is None else n
    if len(y) != n:
        raise DimensionError(f"expected {n} eigenvalues, got {len(y)}")
    if samples < 1:
        raise ValueError("samples must be positive")
    counts = [min(chunk, samples - i) for i in range(0, samples, chunk)]
    seqs = np.random.SeedSequence(seed).spawn(len(counts))
    moments = ordered_map(lambda a: _chunk_moments(f, y, n, *a), list(zip(counts, seqs)), workers)
    s1 = sum(m[0] for m in moments)
    s2 = sum(m[1] for m in moments)
    mean = complex(s1 / samples)
    if samples > 1:
        var = max(0.0, (s2 - samples * abs(mean) ** 2) / (samples - 1))
        stderr = math.sqrt(var / samples)
    else:
        stderr = float("inf")
    return (mean, stderr) if return_stderr else mean


# ---------------------------------------------------------------- reports
@dataclass
class McReport:
    check: str
    n: int
    lhs: complex
    rhs: complex
    rel_err: float
    samples: int = 0
    seed: int | None = None
    stderr_estimate: float = 0.0
    passed: bool = False
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def num(z):
            z = complex(z)
            return z.real if z.imag == 0 else [z.real, z.imag]

        out = {
            "schema": SCHEMA,
            "check": self.check,
            "n": self.n,
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "rel_err": self.rel_err,
            "samples": self.samples,
            "seed": self.seed,
            "stderr_estimate": self.stderr_estimate,
            "passed": bool(self.passed),
        }
        out.update(self.extra)
        return out


def relative_error(lhs, rhs) -> float:
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300))


def _gaussian(y: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * np.sum(y * y, axis=-1))


def weyl_integration_check(n: int, points: int = 257, half_width: float = 8.0,
                           tol: float = 1e-6) -> McReport:
    """``int pi^2 E d_0H`` by trapezoid quadrature, against ``(pi, pi)``.

    The gaussian integrates to 1 in the self-dual measure, so the integration
    formula reduces to this moment identity.
    """
    if not 1 <= n <= 3:
        raise ValueError("weyl_integration_check supports n in {1, 2, 3}")
    g = np.linspace(-half_width, half_width, points)
    w = np.full(points, g[1] - g[0])
    w[[0, -1]] *= 0.5
    w1 = w * np.exp(-0.5 * g * g) / math.sqrt(2 * math.pi)
    total = 0.0
    if n == 1:
        total = float(w1.sum())
    else:
        rest = np.stack(np.meshgrid(*([g] * (n - 1)), indexing="ij"), axis=-1)
        wrest = w1
        for _ in range(n - 2):
            wrest = np.multiply.outer(wrest, w1)
        for i, y0 in enumerate(g):
            pts = np.concatenate([np.full(rest.shape[:-1] + (1,), y0), rest], axis=-1)
            total += w1[i] * float(np.sum(pi_eval(n, pts) ** 2 * wrest))
    rhs = pi_norm_squared(n)
    err = relative_error(total, rhs)
    return McReport("weyl_integration", n, total, rhs, err, passed=err <= tol,
                    extra={"points": points, "half_width": half_width})


def hciz_check(n: int, y, y_prime, samples: int = 200_000, seed: int = 0,
               workers: int | None = None, max_rel_err: float = 0.02) -> McReport:
    """Monte Carlo check of the exponential orbital-integral formula.

    ``pi(y) pi(y') E_u[exp tr(u diag(y) u* diag(y'))]`` against
    ``(pi, pi)/n! * sum_s sign(s) exp(sum_i y_{s(i)} y'_i)``.
    """
    if n not in (2, 3):
        raise ValueError("hciz_check supports n in {2, 3}")
    y = np.asarray(y, dtype=float)
    yp = np.asarray(y_prime, dtype=float)
    if y.shape != (n,) or yp.shape != (n,):
        raise DimensionError(f"both spectra need {n} entries")
    for v in (y, yp):
        if len(np.unique(v)) < n:
            raise CoincidenceError("spectra must have distinct entries")
    cd = CartanData(n)
    D2 = np.diag(yp)

    def f(X):
        return np.exp(np.real(np.einsum("bij,ji->b", X, D2)))

    # the Haar average is symmetric in y; sampling the sorted spectrum makes
    # a relabelling of y change only the sign carried by pi(y)
    mean, se = orbital_average(f, np.sort(y), n, samples, seed, workers=workers,
                               return_stderr=True)
    scale = pi_eval(cd, y) * pi_eval(cd, yp)
    lhs = scale * mean.real
    stderr = abs(scale) * se
    rhs = pi_norm_squared(n) / math.factorial(n) * sum(
        sgn * math.exp(sum(y[s[i]] * yp[i] for i in range(n))) for s, sgn in cd.weyl
    )
    err = relative_error(lhs, rhs)
    passed = abs(lhs - rhs) <= 3 * stderr and err <= max_rel_err
    return McReport("hciz", n, lhs, rhs, err, samples, seed, stderr, passed,
                    extra={"y": y.tolist(), "y_prime": yp.tolist()})


def apply_pi_operator(g: Callable[[np.ndarray], np.ndarray], n: int, y, h: float) -> float:
    """``prod_{l<k} (d_k - d_l) g`` at ``y`` by composed central differences."""
    cd = CartanData(n)
    if cd.r > 3:
        raise ValueError("composed stencil supports at most 3 factors (n <= 3)")
    y = np.asarray(y, dtype=float)
    dirs = []
    for l, k in cd.positive_pairs:
        d = np.zeros(n)
        d[k], d[l] = 1.0, -1.0
        dirs.append(d)
    pts, coefs = [], []
    for signs in itertools.product((1, -1), repeat=len(dirs)):
        shift = sum((s * h * d for s, d in zip(signs, dirs)), np.zeros(n))
        pts.append(y + shift)
        coefs.append(math.prod(signs) / (2 * h) ** len(dirs))
    vals = g(np.array(pts))
    return float(np.dot(coefs, vals))


def limit_formula_check(n: int, h: float = 1e-3, tol: float = 1e-3) -> McReport:
    """``(d(pi) phi_f)(0) = (pi, pi) f(0)`` for the invariant gaussian ``f``.

    The orbital average of an invariant function is the function itself, so
    ``phi_f = pi E`` on the diagonal.
    """
    if not 1 <= n <= 3:
        raise ValueError("limit_formula_check supports n in {1, 2, 3}")
    lhs = apply_pi_operator(lambda Y: pi_eval(n, Y) * _gaussian(Y), n, np.zeros(n), h)
    rhs = float(pi_norm_squared(n))
    err = relative_error(lhs, rhs)
    return McReport("limit_formula", n, lhs, rhs, err, passed=err <= tol, extra={"h": h})


def gaussian_pi_ft_check(n: int, grid: int | None = None, half_width: float = 8.0,
                         out_points: int = 25, out_half_width: float = 4.0,
                         h: float = 1e-3, tol: float = 1e-6, stencil_tol: float = 1e-4,
                         seed: int = 0) -> McReport:
    """Self-dual Fourier transform of ``pi E`` against ``(-i)^r pi E``.

    The transform is a tensor product of trapezoid-rule DFT matrices, applied
    axis by axis.  The report also carries the stencil check
    ``d(pi) E = (-1)^r pi E`` at a few sampled points.
    """
    if not 1 <= n <= 3:
        raise ValueError("gaussian_pi_ft_check supports n in {1, 2, 3}")
    grid = grid or (257 if n <= 2 else 129)
    g = np.linspace(-half_width, half_width, grid)
    w = np.full(grid, g[1] - g[0])
    w[[0, -1]] *= 0.5
    k = np.linspace(-out_half_width, out_half_width, out_points)
    F1 = np.exp(-1j * np.outer(k, g)) * w / math.sqrt(2 * math.pi)
    Y = np.stack(np.meshgrid(*([g] * n), indexing="ij"), axis=-1)
    vals = (pi_eval(n, Y) * _gaussian(Y)).astype(complex)
    for ax in range(n):
        vals = np.moveaxis(np.tensordot(F1, vals, axes=([1], [ax])), 0, ax)
    K = np.stack(np.meshgrid(*([k] * n), indexing="ij"), axis=-1)
    r = CartanData(n).r
    expected = (-1j) ** r * pi_eval(n, K) * _gaussian(K)
    sup_err = float(np.max(np.abs(vals - expected)))
    # a point with distinct coordinates, where pi does not vanish
    probe = tuple(out_points // 2 + off for off in (3, -2, 5)[:n])
    rng = np.random.default_rng(seed)
    stencil_err = 0.0
    for y in rng.uniform(-1.5, 1.5, size=(5, n)):
        lhs_s = apply_pi_operator(_gaussian, n, y, h)
        rhs_s = (-1) ** r * pi_eval(n, y) * math.exp(-0.5 * float(y @ y))
        stencil_err = max(stencil_err, abs(lhs_s - rhs_s))
    passed = sup_err <= tol and stencil_err <= stencil_tol
    return McReport("gaussian_pi_ft", n, complex(vals[probe]), complex(expected[probe]), sup_err,
                    passed=passed, extra={"stencil_err": stencil_err, "grid": grid})

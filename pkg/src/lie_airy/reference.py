"""Classical Airy function from its Maclaurin series, as an independent oracle.

The coefficients obey ``c[n+3] = c[n] / ((n+2)(n+3))`` (from ``Ai'' = x Ai``)
with ``c0 = 3^(-2/3)/Gamma(2/3)``, ``c1 = -3^(-1/3)/Gamma(1/3)``, ``c2 = 0``.
Summation runs in mpmath at 40 digits so the cancellation near ``|x| = 8``
(terms up to ~1e7) leaves well over 20 correct digits.
"""

from __future__ import annotations

import mpmath

WINDOW = 8.0
_DPS = 40


def airy_series(x: float, derivative: int = 0, tail_tol: float = 1e-25) -> tuple[float, float]:
    """``(Ai^(d)(x), remainder_bound)`` for ``d`` in {0, 1}, ``|x| <= 8``."""
    if derivative not in (0, 1):
        raise ValueError("derivative must be 0 or 1")
    if not abs(x) <= WINDOW:
        raise ValueError(f"series oracle restricted to |x| <= {WINDOW:g}, got {x}")
    with mpmath.workdps(_DPS):
        X = mpmath.mpf(x)
        c = [
            mpmath.power(3, mpmath.mpf(-2) / 3) / mpmath.gamma(mpmath.mpf(2) / 3),
            -mpmath.power(3, mpmath.mpf(-1) / 3) / mpmath.gamma(mpmath.mpf(1) / 3),
        ]
        total = mpmath.mpf(0)
        n = 0
        # two nonzero residue streams (n = 0 and 1 mod 3); advance them together
        terms = {0: c[0], 1: c[1]}
        while True:
            last = []
            for s in (0, 1):
                k = n + s
                coef = terms[s]
                if derivative == 0:
                    t = coef * X ** k
                else:
                    t = k * coef * X ** (k - 1) if k > 0 else mpmath.mpf(0)
                total += t
                last.append((k, abs(t)))
                terms[s] = coef / ((k + 2) * (k + 3))
            n += 3
            bound = mpmath.mpf(0)
            converging = True
            for k, a in last:
                # ratio of successive terms in one stream
                q = abs(X) ** 3 / ((k + 2) * (k + 3))
                if derivative == 1 and k > 1:
                    q *= mpmath.mpf(k + 3) / k
                elif derivative == 1:
                    q *= 4
                if q >= 0.5:
                    converging = False
                    break
                bound += a * q / (1 - q)
            if converging and bound < tail_tol:
                return float(total), float(bound)


def reference_ai(x: float) -> float:
    """Ai(x) for ``|x| <= 8`` from the Maclaurin series."""
    return airy_series(x, 0)[0]


def reference_ai_prime(x: float) -> float:
    """Ai'(x) for ``|x| <= 8`` from the Maclaurin series."""
    return airy_series(x, 1)[0]

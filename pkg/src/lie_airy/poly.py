"""Sparse multivariate polynomials with real (or exact rational) coefficients.

A :class:`MultiPoly` maps exponent tuples to nonzero coefficients.  Values are
immutable; every arithmetic operation returns a new polynomial.  Integer and
:class:`fractions.Fraction` coefficients stay exact under arithmetic, which the
Cartan machinery relies on for exact pairings.

Text format::

    1/3 * y1^3 - 2.5 * y1 * y2^2 + 7

Variables are ``y1 .. yN`` (a bare ``y`` means ``y1``); ``^`` or ``**`` raise to
non-negative integer powers and ``/`` divides by constants only.
"""

from __future__ import annotations

import math
import numbers
import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, PolynomialParseError

MAX_DEGREE = 32
MAX_NVARS = 8

Exponent = tuple


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables.

    Parameters
    ----------
    nvars : int
        Number of variables.
    terms : mapping
        ``{exponent_tuple: coefficient}``.  Zero coefficients are dropped and
        repeated keys are not possible, so the stored form is canonical.
    """

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], numbers.Number] | None = None):
        nvars = int(nvars)
        if nvars < 1:
            raise DimensionError("nvars must be positive")
        if nvars > MAX_NVARS:
            raise DimensionError(f"nvars={nvars} exceeds the supported maximum {MAX_NVARS}")
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars:
                raise DimensionError(f"exponent {alpha} does not have length {nvars}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            if sum(alpha) > MAX_DEGREE:
                raise ValueError(f"total degree of {alpha} exceeds {MAX_DEGREE}")
            if c != 0:
                clean[alpha] = c
        self._nvars = nvars
        self._terms = MappingProxyType(clean)
        self._hash = None

    # ------------------------------------------------------------------ basics
    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[tuple, numbers.Number]:
        return self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(a) for a in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, j: int) -> "MultiPoly":
        """The coordinate ``y_{j+1}`` (``j`` is 0-based)."""
        alpha = [0] * nvars
        alpha[j] = 1
        return cls(nvars, {tuple(alpha): 1})

    @classmethod
    def monomial(cls, coeff, exponents: Sequence[int]) -> "MultiPoly":
        return cls(len(exponents), {tuple(exponents): coeff})

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "MultiPoly":
        return parse_poly(text, nvars)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._nvars == other._nvars and dict(self._terms) == dict(other._terms)
        if isinstance(other, numbers.Number):
            return self == MultiPoly.constant(self._nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly.parse({format_poly(self)!r}, nvars={self._nvars})"

    def __str__(self):
        return format_poly(self)

    # -------------------------------------------------------------- arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other._nvars != self._nvars:
                raise DimensionError(f"nvars mismatch: {self._nvars} vs {other._nvars}")
            return other
        if isinstance(other, numbers.Number):
            return MultiPoly.constant(self._nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0) + c
        return MultiPoly(self._nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self._nvars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return MultiPoly(self._nvars, {a: c * other for a, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * d
        return MultiPoly(self._nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if other.degree > 0:
                raise ZeroDivisionError("division by a non-constant polynomial")
            other = other._terms.get((0,) * other._nvars, 0)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        if isinstance(other, int) and all(isinstance(c, (int, Fraction)) for c in self._terms.values()):
            other = Fraction(other)
        return MultiPoly(self._nvars, {a: c / other for a, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = MultiPoly.constant(self._nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ------------------------------------------------------------ evaluation
    def eval(self, z: Sequence[complex]) -> complex:
        """Value at a single point by exact term summation."""
        if len(z) != self._nvars:
            raise DimensionError(f"point has length {len(z)}, expected {self._nvars}")
        total = 0
        for alpha, c in self._terms.items():
            term = c
            for zj, a in zip(z, alpha):
                if a:
                    term = term * zj**a
            total = total + term
        return total

    def __call__(self, z) -> np.ndarray:
        """Vectorized evaluation; the last axis of ``z`` indexes the variables."""
        z = np.asarray(z)
        if z.shape[-1] != self._nvars:
            raise DimensionError(f"last axis has length {z.shape[-1]}, expected {self._nvars}")
        has_complex = any(isinstance(c, complex) for c in self._terms.values())
        dtype = np.result_type(z.dtype, np.complex128 if has_complex else np.float64)
        out = np.zeros(z.shape[:-1], dtype=dtype)
        if not self._terms:
            return out
        maxpow = [max(a[j] for a in self._terms) for j in range(self._nvars)]
        powers = []
        for j in range(self._nvars):
            zj = z[..., j].astype(dtype, copy=False)
            pw = [None, zj]
            for _ in range(2, maxpow[j] + 1):
                pw.append(pw[-1] * zj)
            powers.append(pw)
        for alpha, c in self._terms.items():
            term = None
            for j, a in enumerate(alpha):
                if a:
                    term = powers[j][a] if term is None else term * powers[j][a]
            c = complex(c) if isinstance(c, complex) else float(c)
            out += c if term is None else c * term
        return out

    # ---------------------------------------------------------------- calculus
    def derivative(self, j: int, order: int = 1) -> "MultiPoly":
        """Partial derivative with respect to the 0-based variable ``j``."""
        p = self
        for _ in range(order):
            out = {}
            for a, c in p._terms.items():
                if a[j]:
                    b = list(a)
                    b[j] -= 1
                    out[tuple(b)] = c * a[j]
            p = MultiPoly(self._nvars, out)
        return p

    def gradient(self) -> list["MultiPoly"]:
        return [self.derivative(j) for j in range(self._nvars)]

    def homogeneous_component(self, m: int) -> "MultiPoly":
        if m < 0:
            raise ValueError("degree must be non-negative")
        return MultiPoly(self._nvars, {a: c for a, c in self._terms.items() if sum(a) == m})

    def leading_form(self) -> "MultiPoly":
        """Homogeneous component of top degree."""
        return self.homogeneous_component(max(self.degree, 0))

    # -------------------------------------------------------------- structure
    def is_sign_change_invariant(self) -> bool:
        """True iff every monomial has only even exponents."""
        return all(a % 2 == 0 for alpha in self._terms for a in alpha)

    def partition_separable(self) -> list[tuple[int, ...]]:
        """Finest partition of the (0-based) variables into non-interacting blocks."""
        parent = list(range(self._nvars))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for alpha in self._terms:
            support = [j for j, a in enumerate(alpha) if a]
            for j in support[1:]:
                ri, rj = find(support[0]), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        blocks: dict[int, list[int]] = {}
        for j in range(self._nvars):
            blocks.setdefault(find(j), []).append(j)
        return sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])

    def restrict(self, block: Sequence[int], include_constant: bool = False) -> "MultiPoly":
        """Monomials supported inside ``block``, re-indexed to ``len(block)`` variables."""
        block = tuple(block)
        inside = set(block)
        out = {}
        for a, c in self._terms.items():
            if any(a[j] for j in range(self._nvars) if j not in inside):
                continue
            if sum(a) == 0 and not include_constant:
                continue
            out[tuple(a[j] for j in block)] = c
        return MultiPoly(len(block), out)

    def split_blocks(self, blocks: Sequence[Sequence[int]]) -> list["MultiPoly"]:
        """Restrict to each block; the constant term goes with the first block."""
        return [self.restrict(b, include_constant=(i == 0)) for i, b in enumerate(blocks)]


# ---------------------------------------------------------------------------
# free-function aliases
def homogeneous_component(p: MultiPoly, m: int) -> MultiPoly:
    return p.homogeneous_component(m)


def gradient(p: MultiPoly) -> list[MultiPoly]:
    return p.gradient()


def is_sign_change_invariant(p: MultiPoly) -> bool:
    return p.is_sign_change_invariant()


def partition_separable(p: MultiPoly) -> list[tuple[int, ...]]:
    return p.partition_separable()


def poly_eval(p: MultiPoly, z: Sequence[complex]) -> complex:
    return p.eval(z)


# ---------------------------------------------------------------------------
# text format
_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|\d+(?:[eE][-+]?\d+)?)"
    r"|(?P<var>y\d*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise PolynomialParseError(f"unexpected character {text[pos:pos + 1]!r} at position {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


def _var_index(tok: str) -> int:
    return 1 if tok == "y" else int(tok[1:])


class _Parser:
    def __init__(self, tokens, nvars):
        self.tokens = tokens
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.degree > 0:
                    raise PolynomialParseError("division by a non-constant expression")
                try:
                    value = value / rhs
                except ZeroDivisionError as exc:
                    raise PolynomialParseError(str(exc)) from None
        return value

    def unary(self):
        if self.peek()[1] in ("-", "+"):
            op = self.take()[1]
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            kind, tok = self.take()
            if kind != "num" or not tok.isdigit():
                raise PolynomialParseError(f"exponent must be a non-negative integer, got {tok!r}")
            base = base ** int(tok)
        return base

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            c = int(tok) if tok.isdigit() else float(tok)
            return MultiPoly.constant(self.nvars, c)
        if kind == "var":
            j = _var_index(tok)
            if j < 1 or j > self.nvars:
                raise PolynomialParseError(f"variable {tok} out of range for nvars={self.nvars}")
            return MultiPoly.variable(self.nvars, j - 1)
        if tok == "(":
            value = self.expr()
            if self.take()[1] != ")":
                raise PolynomialParseError("missing closing parenthesis")
            return value
        raise PolynomialParseError(f"unexpected token {tok!r}" if tok else "unexpected end of input")


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse the text format; ``nvars`` defaults to the largest variable index."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialParseError("empty polynomial")
    seen = [_var_index(t) for k, t in tokens if k == "var"]
    if nvars is None:
        nvars = max(seen, default=1)
    parser = _Parser(tokens, nvars)
    try:
        value = parser.expr()
    except (ValueError, DimensionError) as exc:
        if isinstance(exc, PolynomialParseError):
            raise
        raise PolynomialParseError(str(exc)) from None
    if parser.i != len(tokens):
        raise PolynomialParseError(f"trailing input at token {parser.peek()[1]!r}")
    return value


def _format_coeff(c) -> str:
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return str(c)
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, complex):
        raise ValueError("complex coefficients have no text form")
    c = float(c)
    if not math.isfinite(c):
        raise ValueError("non-finite coefficient")
    text = repr(c)
    return text


def _term_order(item):
    alpha, _ = item
    return (-sum(alpha), tuple(-a for a in alpha))


def format_poly(p: MultiPoly) -> str:
    """Print in the text format; ``parse_poly(format_poly(p), p.nvars) == p``."""
    if p.is_zero():
        return "0"
    parts = []
    for alpha, c in sorted(p.terms.items(), key=_term_order):
        negative = c < 0
        mag = -c if negative else c
        factors = [f"y{j + 1}" if a == 1 else f"y{j + 1}^{a}" for j, a in enumerate(alpha) if a]
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = " * ".join(factors)
        else:
            body = " * ".join([_format_coeff(mag)] + factors)
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


def from_terms(nvars: int, items: Iterable[tuple[Sequence[int], numbers.Number]]) -> MultiPoly:
    out: dict = {}
    for a, c in items:
        a = tuple(a)
        out[a] = out.get(a, 0) + c
    return MultiPoly(nvars, out)

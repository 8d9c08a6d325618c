"""Numerical verification of the sufficient conditions for the Airy property.

The conditions are infima of homogeneous polynomials over the unit sphere (or
its non-negative orthant).  They are decided by dense quasi-random sampling
followed by a short projected-gradient descent from the worst sample.  A
``Holds*`` verdict means "sufficient condition verified numerically", and
``Inconclusive`` never means the property fails.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.stats import norm, qmc

from .errors import DegreeError
from .poly import MultiPoly


class Verdict(str, enum.Enum):
    HOLDS_ODD = "HoldsOdd"
    HOLDS_EVEN = "HoldsEven"
    HOLDS_BY_NEGATION = "HoldsByNegation"
    INCONCLUSIVE = "Inconclusive"

    @property
    def holds(self) -> bool:
        return self is not Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class CheckConfig:
    """Sampling controls.

    ``samples=None`` uses ``4096 * 2**(n-1)`` sphere points.
    """

    samples: int | None = None
    refine_steps: int = 20
    margin: float = 1e-9
    extra_directions_per_dim: int = 64
    seed: int = 20240601

    def sample_count(self, n: int) -> int:
        return self.samples if self.samples is not None else 4096 * 2 ** (n - 1)


@dataclass
class ConditionMin:
    value: float
    location: tuple[float, ...]

    def to_dict(self):
        return {"value": self.value, "location": list(self.location)}


@dataclass
class CheckReport:
    verdict: Verdict
    witness: tuple[float, ...] | None = None
    min_values: dict[str, ConditionMin] = field(default_factory=dict)
    notes: str = ""
    # polynomial whose sphere minimum is recorded under the same name
    conditions: dict[str, MultiPoly] = field(default_factory=dict, repr=False)
    blocks: list[tuple[tuple[int, ...], "CheckReport"]] = field(default_factory=list, repr=False)

    @property
    def holds(self) -> bool:
        return self.verdict.holds

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else list(self.witness),
            "min_values": {k: v.to_dict() for k, v in self.min_values.items()},
            "notes": self.notes,
        }
        if self.blocks:
            out["blocks"] = [
                {"variables": list(b), **rep.to_dict()} for b, rep in self.blocks
            ]
        return out


# ---------------------------------------------------------------------------
# sphere sampling
@lru_cache(maxsize=32)
def _sphere_samples(n: int, count: int, seed: int) -> np.ndarray:
    if n == 1:
        return np.array([[-1.0], [1.0]])
    # scrambled Sobol needs a power-of-two count for balance
    m = max(1, int(np.ceil(np.log2(count))))
    u = qmc.Sobol(d=n, scramble=True, seed=seed).random_base2(m)[:count]
    u = np.clip(u, 1e-12, 1 - 1e-12)
    z = norm.ppf(u)
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    special = [np.eye(n), -np.eye(n)]
    special.append(np.array(list(itertools.product((-1.0, 1.0), repeat=n))) / np.sqrt(n))
    pts = np.vstack(special + [z])
    pts.setflags(write=False)
    return pts


def sphere_samples(n: int, count: int, seed: int = 20240601, positive: bool = False) -> np.ndarray:
    """Deterministic quasi-uniform points on S_n, or on S_n^+ when ``positive``."""
    pts = _sphere_samples(n, count, seed)
    if positive:
        pts = np.unique(np.abs(pts), axis=0)
    return pts


def _project(s: np.ndarray, positive: bool) -> np.ndarray:
    if positive:
        s = np.clip(s, 0.0, None)
    nrm = np.linalg.norm(s)
    if nrm == 0:
        return None
    return s / nrm


def sphere_minimum(f: MultiPoly, cfg: CheckConfig, positive: bool = False) -> ConditionMin:
    """Sampled minimum of ``f`` on the unit sphere, refined by projected descent."""
    n = f.nvars
    pts = sphere_samples(n, cfg.sample_count(n), cfg.seed, positive)
    vals = np.real(f(pts))
    k = int(np.argmin(vals))
    best_x, best_v = pts[k].copy(), float(vals[k])
    if n > 1 and cfg.refine_steps > 0:
        grad = f.gradient()
        step = 0.1
        x = best_x
        for _ in range(cfg.refine_steps):
            g = np.array([float(np.real(gj(x))) for gj in grad])
            g_tan = g - np.dot(g, x) * x
            gn = np.linalg.norm(g_tan)
            if gn < 1e-15:
                break
            moved = False
            while step > 1e-12:
                cand = _project(x - step * g_tan / gn, positive)
                if cand is not None:
                    v = float(np.real(f(cand)))
                    if v < best_v:
                        x, best_x, best_v = cand, cand, v
                        step *= 1.5
                        moved = True
                        break
                step *= 0.5
            if not moved:
                break
    # re-evaluate at the stored location so the pair is reproducible
    loc = tuple(float(v) for v in best_x)
    return ConditionMin(float(np.real(f.eval(loc))), loc)


# ---------------------------------------------------------------------------
# individual conditions
def _tau_directions(n: int, cfg: CheckConfig) -> tuple[np.ndarray, np.ndarray]:
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=n))) / np.sqrt(n)
    if n == 1:
        return signs, np.empty((0, 1))
    rng = np.random.default_rng(cfg.seed + 1)
    extra = rng.standard_normal((cfg.extra_directions_per_dim * n, n))
    extra /= np.linalg.norm(extra, axis=1, keepdims=True)
    return signs, extra


def _directional(grad: list[MultiPoly], tau) -> MultiPoly:
    out = MultiPoly(grad[0].nvars)
    for g, t in zip(grad, tau):
        if t != 0:
            out = out + g * float(t)
    return out


def check_airy_odd(p: MultiPoly, tau=None, cfg: CheckConfig = CheckConfig()) -> CheckReport:
    """Odd-degree condition: ``tau . grad p_m`` strictly positive on the sphere."""
    m = p.degree
    if m < 3 or m % 2 == 0:
        raise DegreeError(f"odd check needs odd degree >= 3, got {m}")
    n = p.nvars
    pm = p.homogeneous_component(m)
    grad = pm.gradient()
    name = "tau.grad(p_m)"

    if tau is not None:
        tau = np.asarray(tau, dtype=float)
        if tau.shape != (n,):
            raise ValueError(f"tau must have length {n}")
        tau = tau / np.linalg.norm(tau)
        cond = _directional(grad, tau)
        mv = sphere_minimum(cond, cfg)
        ok = mv.value > cfg.margin
        return CheckReport(
            Verdict.HOLDS_ODD if ok else Verdict.INCONCLUSIVE,
            witness=tuple(float(t) for t in tau) if ok else None,
            min_values={name: mv},
            notes="given direction" + ("" if ok else f"; minimum {mv.value:.3g} not above margin"),
            conditions={name: cond},
        )

    pts = sphere_samples(n, cfg.sample_count(n), cfg.seed)
    G = np.column_stack([np.real(g(pts)) for g in grad])
    signs, extra = _tau_directions(n, cfg)
    best = None
    for group, label in ((signs, "sign vector"), (extra, "sampled direction")):
        if len(group) == 0:
            continue
        coarse = (G @ group.T).min(axis=0)
        for idx in np.argsort(-coarse)[:4]:
            if coarse[idx] <= cfg.margin:
                break
            cond = _directional(grad, group[idx])
            mv = sphere_minimum(cond, cfg)
            if best is None or mv.value > best[1].value:
                best = (group[idx], mv, cond, label)
            if mv.value > cfg.margin:
                break
        if best is not None and best[1].value > cfg.margin:
            break
    if best is not None and best[1].value > cfg.margin:
        tau, mv, cond, label = best
        return CheckReport(
            Verdict.HOLDS_ODD,
            witness=tuple(float(t) for t in tau),
            min_values={name: mv},
            notes=f"witness found among {label}s",
            conditions={name: cond},
        )
    # report the best candidate seen (or the first sign vector) for diagnostics
    if best is None:
        cond = _directional(grad, signs[0])
        best = (signs[0], sphere_minimum(cond, cfg), cond, "sign vector")
    return CheckReport(
        Verdict.INCONCLUSIVE,
        min_values={name: best[1]},
        notes="no direction with a positive margin",
        conditions={name: best[2]},
    )


def check_airy_even(p: MultiPoly, cfg: CheckConfig = CheckConfig()) -> CheckReport:
    """Even-degree condition: elliptic positive ``p_m``, sign invariance, monotone orthant."""
    m = p.degree
    if m < 4 or m % 2:
        raise DegreeError(f"even check needs even degree >= 4, got {m}")
    pm = p.homogeneous_component(m)
    mins = {"p_m": sphere_minimum(pm, cfg)}
    conds = {"p_m": pm}
    for j, d in enumerate(pm.gradient()):
        key = f"d{j + 1} p_m on S+"
        conds[key] = d
        mins[key] = sphere_minimum(d, cfg, positive=True) if not d.is_zero() else ConditionMin(0.0, (1.0,) + (0.0,) * (p.nvars - 1))
    notes = []
    elliptic = mins["p_m"].value > cfg.margin
    if not elliptic:
        notes.append("p_m not strictly positive on the sphere")
    invariant = pm.is_sign_change_invariant()
    if not invariant:
        notes.append("p_m not invariant under sign changes")
    monotone = all(v.value >= -cfg.margin for k, v in mins.items() if k != "p_m")
    if not monotone:
        notes.append("some d_j p_m negative on S+")
    ok = elliptic and invariant and monotone
    return CheckReport(
        Verdict.HOLDS_EVEN if ok else Verdict.INCONCLUSIVE,
        min_values=mins,
        notes="; ".join(notes) if notes else "all even conditions verified",
        conditions=conds,
    )


# ---------------------------------------------------------------------------
# classification
def coefficient_form(p: MultiPoly) -> bool:
    """Exact coefficient test: non-negative top-degree coefficients, positive pure powers.

    For even degree the top form must also contain only even exponents.
    """
    m = p.degree
    pm = p.homogeneous_component(m)
    if any(c < 0 for c in pm.terms.values()):
        return False
    if m % 2 == 0 and not pm.is_sign_change_invariant():
        return False
    n = p.nvars
    for j in range(n):
        alpha = tuple(m if i == j else 0 for i in range(n))
        if not pm.terms.get(alpha, 0) > 0:
            return False
    return True


def _check_parity(p: MultiPoly, cfg: CheckConfig, tau=None) -> CheckReport:
    if p.degree % 2:
        return check_airy_odd(p, tau, cfg)
    return check_airy_even(p, cfg)


def _classify_block(p: MultiPoly, cfg: CheckConfig) -> CheckReport:
    m = p.degree
    if m <= 1:
        return CheckReport(Verdict.INCONCLUSIVE, notes="block is affine: the transform is not a function")
    if m == 2:
        pm = p.homogeneous_component(2)
        n = p.nvars
        Q = np.zeros((n, n))
        for a, c in pm.terms.items():
            idx = [j for j, e in enumerate(a) for _ in range(e)]
            i, k = idx
            if i == k:
                Q[i, i] += float(c)
            else:
                Q[i, k] += float(c) / 2
                Q[k, i] += float(c) / 2
        ok = abs(np.linalg.det(Q)) > 1e-12
        return CheckReport(
            Verdict.HOLDS_EVEN if ok else Verdict.INCONCLUSIVE,
            notes="nondegenerate quadratic block" if ok else "degenerate quadratic block",
        )
    ones = np.ones(p.nvars) / np.sqrt(p.nvars)
    for q, negated in ((p, False), (-p, True)):
        if coefficient_form(q):
            rep = _check_parity(q, cfg, ones if m % 2 else None)
            if rep.holds:
                rep.notes = "coefficient form recognized; " + rep.notes
                if negated:
                    rep.verdict = Verdict.HOLDS_BY_NEGATION
                    rep.notes = "-p satisfies the conditions; " + rep.notes
                return rep
    rep = _check_parity(p, cfg)
    if rep.holds:
        return rep
    neg = _check_parity(-p, cfg)
    if neg.holds:
        neg.verdict = Verdict.HOLDS_BY_NEGATION
        neg.notes = "-p satisfies the conditions; " + neg.notes
        return neg
    return rep


def classify(p: MultiPoly, cfg: CheckConfig = CheckConfig()) -> CheckReport:
    """Decide which sufficient condition (if any) ``p`` meets.

    Separable polynomials are split into variable blocks and each block is
    classified on its own; the whole holds only if every block does.
    """
    if p.degree < 3:
        raise DegreeError(f"classify needs degree >= 3, got {p.degree}")
    whole = _classify_block(p, cfg)
    blocks = p.partition_separable()
    if whole.holds or len(blocks) == 1:
        return whole
    parts = p.split_blocks(blocks)
    reports = [_classify_block(q, cfg) for q in parts]
    out = CheckReport(Verdict.INCONCLUSIVE, blocks=list(zip(blocks, reports)))
    for b, rep in zip(blocks, reports):
        tag = "block" + "".join(f" y{j + 1}" for j in b)
        for k, v in rep.min_values.items():
            loc = [0.0] * p.nvars
            for j, x in zip(b, v.location):
                loc[j] = x
            out.min_values[f"{tag}: {k}"] = ConditionMin(v.value, tuple(loc))
            cond = rep.conditions.get(k)
            if cond is not None:
                out.conditions[f"{tag}: {k}"] = _embed(cond, b, p.nvars)
    if not all(r.holds for r in reports):
        out.notes = "separable; some block is inconclusive"
        return out
    if all(r.verdict is Verdict.HOLDS_BY_NEGATION for r in reports):
        out.verdict = Verdict.HOLDS_BY_NEGATION
        out.notes = "separable; every block holds by negation"
        return out
    out.notes = "separable; every block holds"
    if p.degree % 2:
        out.verdict = Verdict.HOLDS_ODD
        w = np.zeros(p.nvars)
        for b, rep, q in zip(blocks, reports, parts):
            if rep.witness is not None:
                sign = -1.0 if rep.verdict is Verdict.HOLDS_BY_NEGATION else 1.0
                w[list(b)] = sign * np.asarray(rep.witness)
        out.witness = tuple(float(v) for v in w / np.linalg.norm(w))
    else:
        out.verdict = Verdict.HOLDS_EVEN
    return out


def _embed(q: MultiPoly, block, nvars: int) -> MultiPoly:
    out = {}
    for a, c in q.terms.items():
        full = [0] * nvars
        for j, e in zip(block, a):
            full[j] = e
        out[tuple(full)] = c
    return MultiPoly(nvars, out)


@lru_cache(maxsize=256)
def classify_cached(p: MultiPoly) -> CheckReport:
    return classify(p)

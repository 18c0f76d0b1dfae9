"""The norm ||z||_X = max_s |z1 e^{is} + conj(z4)| + |z2 e^{is} + conj(z3)| and its bounds.

The norm depends only on the magnitudes r_i and on |phi_z|.  In those
variables the objective is

    B(s) = sqrt(r1^2 + r4^2 + 2 r1 r4 cos(s - phi)) + sqrt(r2^2 + r3^2 + 2 r2 r3 cos s).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from .core import PAIRINGS, as_cvec4, phase_class, phase_difference, phases, two_two_partition

GRID_N = 4096
_SPLIT = 16
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0
_EPS = np.finfo(float).eps


class XBranch(str, enum.Enum):
    PHASE0 = "Phase0"
    ONE_ZERO = "OneZero"
    PHASE_PI = "PhasePi"
    TWO_TWO = "TwoTwo"
    NUMERIC = "Numeric"


@dataclass(frozen=True)
class XNormResult:
    value: float
    lo: float
    hi: float
    branch: XBranch
    maximizer_sigma: float
    region: Optional[int] = None  # Omega region index for PhasePi (0 = interior)

    @property
    def exact(self) -> bool:
        return self.branch is not XBranch.NUMERIC

    def to_dict(self) -> dict:
        out = {
            "value": self.value,
            "bracket": [self.lo, self.hi],
            "branch": self.branch.value,
            "maximizer_sigma": self.maximizer_sigma,
        }
        if self.region is not None:
            out["region"] = self.region
        return out


def lambda_big(a1: float, a2: float, a3: float, a4: float) -> float:
    """Lambda(a) = sqrt((a1a2+a3a4)(a1a3+a2a4)(a1a4+a2a3) / (a1a2a3a4)) for positive a."""
    a = np.array([a1, a2, a3, a4], dtype=float)
    if np.any(a <= 0):
        raise ValueError("Lambda requires positive arguments")
    return _lambda_expr(a)


def _lambda_expr(a: np.ndarray) -> float:
    num = (a[0] * a[1] + a[2] * a[3]) * (a[0] * a[2] + a[1] * a[3]) * (a[0] * a[3] + a[1] * a[2])
    return float(np.sqrt(num / (a[0] * a[1] * a[2] * a[3])))


def omega_region(r: np.ndarray) -> int:
    """Index i (1-based) with 1/r_i >= sum_{j != i} 1/r_j, or 0 if none; r > 0."""
    inv = 1.0 / r
    total = inv.sum()
    for i in range(4):
        if inv[i] >= total - inv[i]:
            return i + 1
    return 0


def phase_pi_value(r: np.ndarray) -> tuple[float, int]:
    """||z||_X for phi_z = pi and all r_i > 0."""
    k = omega_region(r)
    if k:
        return float(r.sum() - 2.0 * r[k - 1]), k
    return _lambda_expr(r), 0


def two_two_value(rr: float, ss: float, phi: float) -> float:
    """2 sqrt(r^2 + s^2 + 2 r s |cos(phi/2)|)."""
    return float(2.0 * np.sqrt(rr * rr + ss * ss + 2.0 * rr * ss * abs(np.cos(phi / 2.0))))


# ---------------------------------------------------------------------------
# Numeric maximization with a certified bracket


class _Profile:
    """B(s) and derivative data in reduced variables."""

    def __init__(self, r: np.ndarray, phi: float):
        r = [float(v) for v in r]
        self.A1 = r[0] ** 2 + r[3] ** 2
        self.p1 = r[0] * r[3]
        self.A2 = r[1] ** 2 + r[2] ** 2
        self.p2 = r[1] * r[2]
        self.phi = float(phi)
        self.lip = min(r[0], r[3]) + min(r[1], r[2])

    def value(self, s):
        g1 = np.sqrt(np.maximum(self.A1 + 2.0 * self.p1 * np.cos(s - self.phi), 0.0))
        g2 = np.sqrt(np.maximum(self.A2 + 2.0 * self.p2 * np.cos(s), 0.0))
        return g1 + g2

    def scalar(self, s: float) -> float:
        g1 = math.sqrt(max(self.A1 + 2.0 * self.p1 * math.cos(s - self.phi), 0.0))
        g2 = math.sqrt(max(self.A2 + 2.0 * self.p2 * math.cos(s), 0.0))
        return g1 + g2

    def upper(self, a, b, fa, fb, threshold=-np.inf):
        """Upper bounds for max B on cells [a, b], plus midpoints and midpoint values.

        The Taylor bound is computed only where the Lipschitz bound exceeds ``threshold``.
        """
        w = b - a
        ub = 0.5 * (fa + fb) + 0.5 * self.lip * w
        m = 0.5 * (a + b)
        fm = np.full_like(m, -np.inf)
        sel = np.nonzero(ub > threshold)[0]
        if sel.size == 0:
            return ub, m, fm
        a, b, m_s = a[sel], b[sel], m[sel]
        d = 0.5 * w[sel]
        fm_s = self.value(m_s)
        slope_sum = np.zeros_like(m_s)
        curv_sum = np.zeros_like(m_s)
        kink = np.zeros(m_s.shape, dtype=bool)
        for A, p, shift in ((self.A1, self.p1, self.phi), (self.A2, self.p2, 0.0)):
            if p == 0.0:
                continue
            x = m_s - shift
            g = np.sqrt(np.maximum(A + 2.0 * p * np.cos(x), 0.0))
            kink |= g <= 0
            with np.errstate(divide="ignore", invalid="ignore"):
                slope_sum += np.where(g > 0, -p * np.sin(x) / g, 0.0)
                mincos = _min_cos(a - shift, b - shift)
                gmin2 = A + 2.0 * p * mincos
                # B'' of this term is at most p * max(0, -cos x) / g on the cell
                curv_sum += np.where(gmin2 > 0, p * np.maximum(0.0, -mincos) / np.sqrt(np.maximum(gmin2, 0.0)), np.inf)
        u_tay = fm_s + np.abs(slope_sum) * d + 0.5 * curv_sum * d * d
        u_tay = np.where(kink, np.inf, u_tay)
        ub[sel] = np.minimum(ub[sel], u_tay)
        fm[sel] = fm_s
        return ub, m, fm


def _min_cos(x0, x1):
    """min of cos over [x0, x1] (elementwise, x1 - x0 < 2 pi)."""
    k = np.ceil((x0 - np.pi) / (2.0 * np.pi))
    contains_pi = (np.pi + 2.0 * np.pi * k) <= x1
    return np.where(contains_pi, -1.0, np.minimum(np.cos(x0), np.cos(x1)))


def _golden_max(f, a: float, b: float, width: float = 1e-12) -> tuple[float, float]:
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > width:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def _certified_max(r: np.ndarray, phi: float, tol: float, max_rounds: int = 80) -> tuple[float, float, float]:
    """(lo, hi, argmax) for max_s B(s) in reduced variables."""
    prof = _Profile(r, phi)
    h = 2.0 * np.pi / GRID_N
    grid = np.arange(GRID_N + 1) * h
    fg = prof.value(grid)
    j = int(np.argmax(fg[:-1]))
    s_best, f_best = grid[j], float(fg[j])
    s_g, f_g = _golden_max(prof.scalar, grid[j] - h, grid[j] + h)
    if f_g > f_best:
        s_best, f_best = s_g, f_g

    a, b = grid[:-1], grid[1:]
    fa, fb = fg[:-1], fg[1:]
    closed_max = -np.inf  # largest upper bound among cells already certified
    slack = 8.0 * _EPS * (r.sum() + 1e-300)
    for _ in range(max_rounds):
        ub, m, fm = prof.upper(a, b, fa, fb, f_best + tol)
        k = int(np.argmax(fm))
        if fm[k] > f_best:
            f_best, s_best = float(fm[k]), float(m[k])
        open_ = ub > f_best + tol
        if np.any(~open_):
            closed_max = max(closed_max, float(ub[~open_].max()))
        if not np.any(open_):
            break
        # split every open cell into _SPLIT equal subcells
        t = np.linspace(0.0, 1.0, _SPLIT + 1)
        pts = a[open_, None] + (b[open_] - a[open_])[:, None] * t[None, :]
        vals = prof.value(pts)
        vals[:, 0] = fa[open_]
        vals[:, -1] = fb[open_]
        a, b = pts[:, :-1].ravel(), pts[:, 1:].ravel()
        fa, fb = vals[:, :-1].ravel(), vals[:, 1:].ravel()
    else:
        ub, _, _ = prof.upper(a, b, fa, fb)
        closed_max = max(closed_max, float(ub.max()))
    hi = max(f_best, closed_max)
    return float(f_best), float(min(hi + slack, float(r.sum()))), float(s_best)


def _quick_argmax(r: np.ndarray, phi: float) -> float:
    prof = _Profile(r, phi)
    n = 256
    h = 2.0 * np.pi / n
    grid = np.arange(n) * h
    j = int(np.argmax(prof.value(grid)))
    s, _ = _golden_max(prof.scalar, grid[j] - h, grid[j] + h, width=1e-10)
    return s


def _to_original_sigma(z: np.ndarray, s_reduced: float) -> float:
    """Map a reduced-variable maximizer (computed with |phi|) back to the original sigma."""
    th = phases(z)
    x = -s_reduced if phase_difference(z) >= 0 else s_reduced
    return float(np.mod(x - th[1] - th[2], 2.0 * np.pi))


# ---------------------------------------------------------------------------


def x_norm(z: Any, tol: float = 1e-12) -> XNormResult:
    """||z||_X by closed form when available, else by certified maximization.

    ``tol`` bounds hi - lo on the Numeric branch (absolute; floored at
    1e-13 * ||z||_1).  Closed-form branches return lo = hi = value.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    zz = as_cvec4(z)
    r = np.abs(zz)
    phi = phase_difference(zz)
    aphi = abs(phi)
    l1 = float(r.sum())
    if l1 == 0.0:
        return XNormResult(0.0, 0.0, 0.0, XBranch.ONE_ZERO, 0.0)
    cls = phase_class(phi)
    if np.any(r == 0.0) or cls == 0:
        branch = XBranch.ONE_ZERO if np.any(r == 0.0) else XBranch.PHASE0
        return _exact(zz, r, aphi, l1, branch)
    if cls == 2:
        val, k = phase_pi_value(r)
        return _exact(zz, r, np.pi, val, XBranch.PHASE_PI, region=k)
    part = two_two_partition(r)
    if part is not None:
        (i, j), (p, q) = PAIRINGS[part]
        rr = 0.5 * (r[i] + r[j])
        ss = 0.5 * (r[p] + r[q])
        return _exact(zz, r, aphi, two_two_value(rr, ss, aphi), XBranch.TWO_TWO)
    scale = l1
    eff = max(tol, 1e-13 * scale)
    lo, hi, s = _certified_max(r / scale, aphi, eff / scale)
    lo *= scale
    hi *= scale
    lo = max(lo, float(r.max()))
    return XNormResult(lo, lo, max(hi, lo), XBranch.NUMERIC, _to_original_sigma(zz, s))


def _exact(zz, r, aphi, value, branch, region=None) -> XNormResult:
    value = float(value)
    s = _to_original_sigma(zz, _quick_argmax(r, aphi))
    return XNormResult(value, value, value, branch, s, region)


def x_norm_value(z: Any, tol: float = 1e-12) -> float:
    return x_norm(z, tol).value


def x_norm_lower_bounds(z: Any) -> list[tuple[str, float]]:
    """||z||_inf, the box norm (largest pair sum), ||z||_1 / sqrt 2, and sum - 2 min."""
    r = np.abs(as_cvec4(z))
    srt = np.sort(r)
    return [
        ("linf", float(srt[-1])),
        ("box", float(srt[-1] + srt[-2])),
        ("l1_over_sqrt2", float(r.sum() / np.sqrt(2.0))),
        ("sum_minus_2min", float(r.sum() - 2.0 * srt[0])),
    ]


def beta_profile(magnitudes: Sequence[float], phis: Sequence[float], tol: float = 1e-12) -> list[tuple[float, float]]:
    """beta(phi) = ||(s1 e^{i phi}, s2, s3, s4)||_X along a grid in [0, pi]."""
    s = np.asarray(magnitudes, dtype=float)
    if s.shape != (4,) or np.any(s < 0):
        raise ValueError("magnitudes must be 4 nonnegative reals")
    out = []
    for phi in phis:
        if not 0.0 <= phi <= np.pi:
            raise ValueError("phi grid must lie in [0, pi]")
        z = np.array([s[0] * np.exp(1j * phi), s[1], s[2], s[3]])
        out.append((float(phi), x_norm(z, tol).value))
    return out

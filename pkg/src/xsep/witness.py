"""X-shaped entanglement witnesses with their A(s,t) and B(u) quantities and the diagonal balancing maps.

A self-adjoint X-shaped W = X(s, t, u) that is not positive is a witness
exactly when A(s, t) >= B(u).  B is the norm ||.||_X; A is an infimum over
r > 0 which, in u = log r, is a sum of two convex terms
sqrt(alpha e^{-2u} + beta e^{2u} + gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional, Union

import numpy as np

from .core import XState, as_cvec4, as_real4, delta, embed, is_state
from .xnorm import x_norm

_U_LIMIT = 340.0  # e^{2u} stays finite for |u| below this


@dataclass(frozen=True, eq=False)
class Witness:
    """The self-adjoint matrix X(s, t, u) with s, t >= 0."""

    s: np.ndarray
    t: np.ndarray
    u: np.ndarray

    def __post_init__(self) -> None:
        s = as_real4(self.s, "s")
        t = as_real4(self.t, "t")
        if np.any(s < 0) or np.any(t < 0):
            raise ValueError("witness diagonals must be nonnegative")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "u", as_cvec4(self.u))

    def to_dense(self) -> np.ndarray:
        return embed(self.s, self.t, self.u)

    def __repr__(self) -> str:
        return f"Witness(s={self.s.tolist()}, t={self.t.tolist()}, u={self.u.tolist()})"


@dataclass(frozen=True)
class BalanceFactors:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite real, got {v!r}")


# ---------------------------------------------------------------------------
# A(s, t)


def _a_terms(s: np.ndarray, t: np.ndarray) -> list[tuple[float, float, float]]:
    return [
        (s[0] * s[3], t[0] * t[3], s[0] * t[0] + s[3] * t[3]),
        (s[1] * s[2], t[1] * t[2], s[1] * t[1] + s[2] * t[2]),
    ]


def _a_objective(terms, u: float) -> tuple[float, float]:
    """Value and derivative in u of sum sqrt(alpha e^{-2u} + beta e^{2u} + gamma)."""
    em, ep = math.exp(-2.0 * u), math.exp(2.0 * u)
    f = df = 0.0
    for al, be, ga in terms:
        v = math.sqrt(al * em + be * ep + ga)
        f += v
        if v > 0:
            df += (be * ep - al * em) / v
    return f, df


def _close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def a_bracket(s: Any, t: Any, tol: float = 1e-12) -> tuple[float, float, str]:
    """(lo, hi, method) for A(s, t); lo = hi on the closed-form routes."""
    s = as_real4(s, "s")
    t = as_real4(t, "t")
    if np.any(s < 0) or np.any(t < 0):
        raise ValueError("s and t must be nonnegative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if _close(s[0] * t[1] * t[2] * s[3], t[0] * s[1] * s[2] * t[3], 1e-12):
        v = float(np.sum(np.sqrt(s * t)))
        return v, v, "product_balance"
    st = s * t
    if np.allclose(st, st[0], rtol=1e-12, atol=0.0):
        v = 2.0 * (s[0] * t[1] * t[2] * s[3]) ** 0.25 + 2.0 * (t[0] * s[1] * s[2] * t[3]) ** 0.25
        return float(v), float(v), "uniform_products"
    return _a_numeric(_a_terms(s, t), tol)


def _a_numeric(terms, tol: float) -> tuple[float, float, str]:
    alpha = sum(al for al, _, _ in terms)
    beta = sum(be for _, be, _ in terms)
    if alpha == 0.0 or beta == 0.0:
        # monotone in u: the infimum is the limit, where only the gamma parts survive
        v = float(sum(math.sqrt(ga) for _, _, ga in terms))
        return v, v, "limit"
    # bracket a sign change of the (increasing) derivative
    mins = [0.25 * math.log(al / be) for al, be, _ in terms if al > 0 and be > 0]
    centre = float(np.clip(np.mean(mins), -_U_LIMIT, _U_LIMIT)) if mins else 0.0
    lo_u, hi_u, step = centre, centre, 1.0
    while _a_objective(terms, lo_u)[1] > 0 and lo_u > -_U_LIMIT:
        lo_u = max(lo_u - step, -_U_LIMIT)
        step *= 2.0
    step = 1.0
    while _a_objective(terms, hi_u)[1] < 0 and hi_u < _U_LIMIT:
        hi_u = min(hi_u + step, _U_LIMIT)
        step *= 2.0
    for _ in range(400):
        fl, dl = _a_objective(terms, lo_u)
        fh, dh = _a_objective(terms, hi_u)
        best = min(fl, fh)
        # tangent lines at both ends bound the convex function from below on the bracket
        if dl <= 0 <= dh and dh > dl:
            cross = (fh - fl - dh * hi_u + dl * lo_u) / (dl - dh)
            lower = fl + dl * (cross - lo_u)
        else:
            lower = best if dl >= 0 or dh <= 0 else -math.inf
        mid = 0.5 * (lo_u + hi_u)
        fm, dm = _a_objective(terms, mid)
        best = min(best, fm)
        if best - lower <= tol * max(1.0, best) or hi_u - lo_u < 1e-15 * max(1.0, abs(mid)):
            return float(max(min(lower, best), 0.0)), float(best), "numeric"
        if dm > 0:
            hi_u = mid
        elif dm < 0:
            lo_u = mid
        else:
            return float(fm), float(fm), "numeric"
    return float(max(min(lower, best), 0.0)), float(best), "numeric"


def a_value(s: Any, t: Any, tol: float = 1e-12) -> float:
    """A(s, t) = inf_r [sqrt((s1/r + t4 r)(s4/r + t1 r)) + sqrt((s2/r + t3 r)(s3/r + t2 r))]."""
    return a_bracket(s, t, tol)[1]


def b_value(u: Any) -> float:
    """B(u) = max_theta |u1 e^{i theta} + conj u4| + |u2 e^{i theta} + conj u3|, i.e. ||u||_X."""
    return x_norm(u).value


def c_value(z: Any) -> float:
    """C(z) = B(z1, z2, z3, conj z4)."""
    zz = as_cvec4(z)
    return b_value(np.array([zz[0], zz[1], zz[2], np.conj(zz[3])]))


def l_value(rho: XState, z: Any) -> float:
    """L(rho, z) = Re(z1 c1 + z2 c2 + z3 c3 + z4 conj c4)."""
    zz = as_cvec4(z)
    c = rho.c
    return float(np.real(zz[0] * c[0] + zz[1] * c[1] + zz[2] * c[2] + zz[3] * np.conj(c[3])))


def pair(rho: XState, w: Witness) -> float:
    """<rho, W> = tr(W rho^T) = sum a_i s_i + sum b_i t_i + 2 Re sum u_i c_i."""
    return float(np.dot(rho.a, w.s) + np.dot(rho.b, w.t) + 2.0 * np.real(np.dot(w.u, rho.c)))


def is_witness(w: Witness, tol: float = 1e-12) -> Optional[bool]:
    """True / False when decided, None when the A and B brackets straddle equality.

    Ties within ``tol`` (relative) count as A >= B, since the condition is non-strict.
    """
    if is_state(XState(w.s, w.t, w.u)):
        return False
    a_lo, a_hi, _ = a_bracket(w.s, w.t)
    b = x_norm(w.u)
    slack = tol * max(1.0, b.hi, a_hi)
    if a_lo >= b.hi - slack:
        return True
    if a_hi < b.lo - slack:
        return False
    return None


# ---------------------------------------------------------------------------
# Balancing


Diagonal = Union[XState, Witness]


def _diagonals(x: Diagonal) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(x, Witness):
        return x.s, x.t, x.u
    if isinstance(x, XState):
        return x.a, x.b, x.c
    raise TypeError(f"expected XState or Witness, got {type(x).__name__}")


def _rebuild(x: Diagonal, p: np.ndarray, q: np.ndarray, c: np.ndarray) -> Diagonal:
    return Witness(p, q, c) if isinstance(x, Witness) else XState(p, q, c)


def scale_conjugate(x: Diagonal, f: BalanceFactors) -> Diagonal:
    """Conjugate by the diagonal filter D_{alpha,beta,gamma}: c is unchanged and

    x' = (abg a1, ab/g a2, a/b g a3, a/(bg) a4), y' = the reciprocal factors times b.
    """
    p, q, c = _diagonals(x)
    al, be, ga = f.alpha, f.beta, f.gamma
    k = np.array([al * be * ga, al * be / ga, al * ga / be, al / (be * ga)])
    return _rebuild(x, k * p, q / k, c)


def _positive(vals, what: str) -> None:
    if any(not (v > 0) for v in vals):
        raise ValueError(f"{what}: the referenced entries must be positive")


def balance_sym(a: Any, b: Any, rtol: float = 1e-10) -> BalanceFactors:
    """Factors with x_i = y_i = sqrt(a_i b_i) after scale_conjugate (requires a1 b2 b3 a4 = b1 a2 a3 b4)."""
    a = as_real4(a, "a")
    b = as_real4(b, "b")
    _positive(np.concatenate([a, b]), "balance_sym")
    if not _close(a[0] * b[1] * b[2] * a[3], b[0] * a[1] * a[2] * b[3], rtol):
        raise ValueError("balance_sym needs a1 b2 b3 a4 = b1 a2 a3 b4")
    return BalanceFactors(
        (b[0] * b[3] / (a[0] * a[3])) ** 0.25,
        (b[0] * a[2] / (a[0] * b[2])) ** 0.25,
        (b[0] * a[1] / (a[0] * b[1])) ** 0.25,
    )


def balance_uni(a: Any, b: Any, rtol: float = 1e-10) -> BalanceFactors:
    """Factors making x1 = y2 = y3 = x4 and y1 = x2 = x3 = y4 (requires equal products a_i b_i)."""
    a = as_real4(a, "a")
    b = as_real4(b, "b")
    _positive(np.concatenate([a, b]), "balance_uni")
    ab = a * b
    if not all(_close(ab[0], v, rtol) for v in ab[1:]):
        raise ValueError("balance_uni needs a1 b1 = a2 b2 = a3 b3 = a4 b4")
    return BalanceFactors(
        (b[1] * b[2] / (a[0] * a[3])) ** 0.25,
        (b[1] * a[3] / (a[0] * b[2])) ** 0.25,
        (b[2] * a[3] / (a[0] * b[1])) ** 0.25,
    )


def symmetrize(x: Diagonal) -> Diagonal:
    """Replace both diagonals by their average (s + t)/2; the anti-diagonal is kept."""
    p, q, c = _diagonals(x)
    m = 0.5 * (p + q)
    return _rebuild(x, m, m.copy(), c)


def uniformize(x: Diagonal) -> Diagonal:
    """Average the families (s1, t2, t3, s4) and (t1, s2, s3, t4) separately."""
    p, q, c = _diagonals(x)
    f1 = 0.25 * (p[0] + q[1] + q[2] + p[3])
    f2 = 0.25 * (q[0] + p[1] + p[2] + q[3])
    return _rebuild(x, np.array([f1, f2, f2, f1]), np.array([f2, f1, f1, f2]), c)


def product_relations(x: Diagonal) -> tuple[np.ndarray, float, float]:
    """(x_i y_i, x1 y2 y3 x4, y1 x2 x3 y4): the quantities conserved by scale_conjugate."""
    p, q, _ = _diagonals(x)
    return p * q, float(p[0] * q[1] * q[2] * p[3]), float(q[0] * p[1] * p[2] * q[3])


def delta_of(x: Diagonal) -> float:
    p, q, c = _diagonals(x)
    return delta(XState(p, q, c))

"""Brute-force references for the test suite.

Nothing here calls the closed forms or the solvers of the main modules:
the norm oracle is a dense sigma-grid maximum, the dual-norm oracle is a
cutting-plane method over the primal unit ball with its own grid pricing,
and the PSD oracle is a dense eigensolve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import clarabel
import numpy as np
from scipy import sparse


@dataclass(frozen=True)
class OracleReport:
    value: float
    lo: float
    hi: float
    effort: dict = field(default_factory=dict)

    @property
    def bracket(self) -> tuple[float, float]:
        return self.lo, self.hi

    def contains(self, x: float, atol: float = 0.0) -> bool:
        return self.lo - atol <= x <= self.hi + atol


def _vec(z: Any) -> np.ndarray:
    arr = np.asarray(z, dtype=complex).reshape(-1)
    if arr.shape != (4,):
        raise ValueError("expected 4 complex entries")
    return arr


def _profile(z: np.ndarray, s: np.ndarray) -> np.ndarray:
    e = np.exp(1j * s)
    return np.abs(z[0] * e + np.conj(z[3])) + np.abs(z[1] * e + np.conj(z[2]))


def x_norm_oracle(z: Any, grid_n: int = 1 << 16) -> OracleReport:
    """max over grid_n uniform sigma of |z1 e^{i s} + conj z4| + |z2 e^{i s} + conj z3|.

    The bracket adds L h / 2 with L = |z1| + |z2| (a Lipschitz constant of the profile).
    """
    if grid_n < 16:
        raise ValueError("grid_n must be at least 16")
    zz = _vec(z)
    h = 2.0 * np.pi / grid_n
    best = float(_profile(zz, np.arange(grid_n) * h).max())
    lip = abs(zz[0]) + abs(zz[1])
    return OracleReport(best, best, best + 0.5 * lip * h, {"grid_n": grid_n})


def _golden(z: np.ndarray, a: float, b: float, iters: int = 50) -> tuple[float, float]:
    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    g = lambda x: float(_profile(z, np.array([x]))[0])  # noqa: E731
    x1, x2 = b - ratio * (b - a), a + ratio * (b - a)
    f1, f2 = g(x1), g(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + ratio * (b - a)
            f2 = g(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - ratio * (b - a)
            f1 = g(x1)
    return max((f1, x1), (f2, x2))


def _grid_peaks(z: np.ndarray, n: int, level: float, keep: int = 8) -> tuple[float, list[float]]:
    """Global grid maximum (golden-refined) and the highest grid local maxima above level."""
    h = 2.0 * np.pi / n
    s = np.arange(n) * h
    f = _profile(z, s)
    peaks = np.flatnonzero((f >= np.roll(f, 1)) & (f > np.roll(f, -1)))
    if peaks.size == 0:
        peaks = np.array([int(np.argmax(f))])
    peaks = peaks[np.argsort(f[peaks])[::-1][:keep]]
    best, where = -math.inf, []
    for i in peaks:
        fx, x = max((float(f[i]), float(s[i])), _golden(z, s[i] - h, s[i] + h))
        best = max(best, fx)
        if fx > level:
            where.append(x)
    return best, where


def _ball_relaxation(c: np.ndarray, sig: np.ndarray) -> tuple[float, np.ndarray]:
    """max Re<c, z> over z with |z1 e^{is}+conj z4| + |z2 e^{is}+conj z3| <= 1 at every cut s."""
    K = len(sig)
    n = 8 + 2 * K  # Re z (4), Im z (4), u_k, v_k
    q = np.zeros(n)
    q[:4] = -c.real
    q[4:8] = c.imag
    cs, sn = np.cos(sig), np.sin(sig)
    k = np.arange(K)
    col = lambda j: np.full(K, j)  # noqa: E731
    base = K + 6 * k
    rows = [k, k, base, base + 1, base + 1, base + 1, base + 2, base + 2, base + 2,
            base + 3, base + 4, base + 4, base + 4, base + 5, base + 5, base + 5]
    cols = [8 + k, 8 + K + k, 8 + k, col(0), col(4), col(3), col(0), col(4), col(7),
            8 + K + k, col(1), col(5), col(2), col(1), col(5), col(6)]
    one = np.ones(K)
    vals = [one, one, -one, -cs, sn, -one, -sn, -cs, one,
            -one, -cs, sn, -one, -sn, -cs, one]
    A = sparse.csc_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(7 * K, n))
    b = np.zeros(7 * K)
    b[:K] = 1.0
    cones = [clarabel.NonnegativeConeT(K)] + [clarabel.SecondOrderConeT(3)] * (2 * K)
    st = clarabel.DefaultSettings()
    st.verbose = False
    st.tol_gap_abs = 1e-11
    st.tol_gap_rel = 1e-11
    st.tol_feas = 1e-11
    sol = clarabel.DefaultSolver(sparse.csc_matrix((n, n)), q, A, b, cones, st).solve()
    x = np.asarray(sol.x)
    return -float(sol.obj_val), x[:4] + 1j * x[4:8]


def dual_norm_oracle(
    c: Any,
    starts: int = 256,
    seed: int = 0,
    tol: float = 1e-7,
    grid_n: int = 1 << 14,
    max_iter: int = 300,
) -> OracleReport:
    """max Re<c, z> / ||z||_X by cutting planes over the primal unit ball.

    ``starts`` uniformly spaced cuts, rotated by a random offset drawn from
    ``seed``, define the first relaxation; each round adds every grid local
    maximizer of the current z that violates the unit bound.  hi is the relaxation value, lo the best ratio found.
    """
    if starts < 1:
        raise ValueError("starts must be positive")
    cc = _vec(c)
    scale = float(np.abs(cc).max())
    effort = {"starts": starts, "seed": seed, "grid_n": grid_n}
    if scale == 0.0:
        return OracleReport(0.0, 0.0, 0.0, effort)
    cn = cc / scale
    rng = np.random.default_rng(seed)
    offset = rng.uniform(0.0, 2.0 * np.pi / starts)
    sig = list(offset + np.linspace(0.0, 2.0 * np.pi, starts, endpoint=False))
    lo, hi = 0.0, math.inf
    for it in range(max_iter):
        val, z = _ball_relaxation(cn, np.array(sig))
        hi = min(hi, val)
        nz, new = _grid_peaks(z, grid_n, 1.0 + 0.1 * tol)
        if nz > 0:
            lo = max(lo, float(np.real(np.dot(cn, z))) / nz)
        if hi - lo <= tol * max(1.0, hi) or not new:
            break
        sig.extend(new)
    effort["iterations"] = it + 1
    return OracleReport(lo * scale, lo * scale, max(hi, lo) * scale, effort)


def psd_oracle(m: Any, tol: float = 1e-10) -> bool:
    """All eigenvalues of the Hermitian matrix m are >= -tol (dense eigensolve)."""
    arr = np.asarray(m, dtype=complex)
    return bool(np.linalg.eigvalsh(0.5 * (arr + arr.conj().T)).min() >= -tol)

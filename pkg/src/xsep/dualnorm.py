"""The dual norm ||c||'_X = max_z Re<c, z> / ||z||_X, its closed forms and bounds."""

from __future__ import annotations

import cmath
import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import clarabel
import numpy as np
from scipy import sparse

from .core import PAIRINGS, PAIRING_NAMES, as_cvec4, phase_class, phase_difference, two_two_partition
from .xnorm import _golden_max, _lambda_expr, x_norm

RIGHT_TOL = 1e-12


class DualBranch(str, enum.Enum):
    TWO_ZEROS = "TwoZeros"
    ONE_ZERO = "OneZero"
    REAL_CASE = "RealCase"
    TWO_TWO = "TwoTwo"
    VK_SHORTCUT = "VkShortcut"
    NUMERIC = "Numeric"


@dataclass(frozen=True)
class CaseData:
    lambdas: tuple[float, float, float, float]  # lambda_5 .. lambda_8
    ts: tuple[float, float, float, float]  # t_1 .. t_4
    case: str  # "A", "B" or "C"


@dataclass(frozen=True)
class VkData:
    v: tuple[float, float, float, float]
    nonpositive: tuple[int, ...]  # 0-based indices k with v_k <= 0
    quadrangle: bool  # the magnitudes are side lengths of a quadrangle

    @property
    def shortcut(self) -> bool:
        return len(self.nonpositive) == 1


@dataclass(frozen=True)
class DualNormResult:
    """Value (closed form) or certified bracket [lo, hi] for ||c||'_X.

    ``certificate`` is a z with Re<c, z> / ||z||_X = lo; it is computed on
    first access when the branch has no closed-form maximizer.
    """

    value: float
    lo: float
    hi: float
    branch: DualBranch
    detail: Optional[str] = None
    c: Optional[np.ndarray] = field(default=None, repr=False)
    z: Optional[np.ndarray] = field(default=None, repr=False)
    tol: float = 1e-9

    @property
    def exact(self) -> bool:
        return self.branch is not DualBranch.NUMERIC

    @functools.cached_property
    def certificate(self) -> Optional[np.ndarray]:
        if self.z is not None:
            return self.z
        if self.c is None:
            return None
        return dual_norm_numeric(self.c, tol=self.tol)[2]

    def to_dict(self, with_certificate: bool = False) -> dict:
        out: dict[str, Any] = {
            "value": self.value,
            "bracket": [self.lo, self.hi],
            "branch": self.branch.value,
        }
        if self.detail is not None:
            out["detail"] = self.detail
        if with_certificate and self.certificate is not None:
            z = self.certificate
            out["certificate"] = [[float(v.real), float(v.imag)] for v in z]
        return out


# ---------------------------------------------------------------------------
# Closed forms


def real_case_data(c: Any) -> CaseData:
    """lambda_5..lambda_8, t_1..t_4 and the case A/B/C for a real 4-vector."""
    c1, c2, c3, c4 = (float(v) for v in np.real(np.asarray(c, dtype=complex)))
    lam = (
        2.0 * (c1 + c2 + c3 + c4),
        2.0 * (-c1 - c2 + c3 + c4),
        2.0 * (-c1 + c2 - c3 + c4),
        2.0 * (-c1 + c2 + c3 - c4),
    )
    s1, s2, s3, s4 = c1 * c1, c2 * c2, c3 * c3, c4 * c4
    ts = (
        c1 * (-s1 + s2 + s3 + s4) - 2.0 * c2 * c3 * c4,
        c2 * (s1 - s2 + s3 + s4) - 2.0 * c1 * c3 * c4,
        c3 * (s1 + s2 - s3 + s4) - 2.0 * c1 * c2 * c4,
        c4 * (s1 + s2 + s3 - s4) - 2.0 * c1 * c2 * c3,
    )
    prod = lam[0] * lam[1] * lam[2] * lam[3]
    if prod <= 0:
        case = "A"
    elif ts[0] * ts[3] * lam[1] * lam[2] >= 0 or ts[1] * ts[2] * lam[0] * lam[3] <= 0:
        case = "B"
    else:
        case = "C"
    return CaseData(lam, ts, case)


def dual_norm_real(c: Any) -> tuple[float, CaseData]:
    """||c||'_X for real c: ||c||_inf in cases A and B, Lambda(lambda_5..lambda_8)/8 in case C."""
    arr = np.asarray(c, dtype=complex)
    if np.any(np.abs(arr.imag) > 0):
        raise ValueError("dual_norm_real needs real entries")
    data = real_case_data(arr.real)
    if data.case in ("A", "B"):
        return float(np.max(np.abs(arr.real))), data
    # the product of the lambdas is positive, so Lambda(lambda) = Lambda(|lambda|)
    return _lambda_expr(np.abs(np.array(data.lambdas))) / 8.0, data


def triangle_class(x: float, y: float, z: float) -> str:
    """'none', 'obtuse', 'right' or 'acute' for three nonnegative lengths."""
    p, q, s = sorted((x, y, z))
    if p + q <= s:
        return "none"
    gap = p * p + q * q - s * s
    if abs(gap) <= RIGHT_TOL * s * s:
        return "right"
    return "acute" if gap > 0 else "obtuse"


def dual_norm_three(c: Any) -> tuple[float, str]:
    """||c||'_X when exactly one entry of c vanishes."""
    r = np.abs(as_cvec4(c))
    zeros = np.nonzero(r == 0.0)[0]
    if len(zeros) != 1:
        raise ValueError("dual_norm_three needs exactly one zero entry")
    x, y, z = (float(v) for v in np.delete(r, zeros[0]))
    cls = triangle_class(x, y, z)
    if cls != "acute":
        return max(x, y, z), cls
    heron = (x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z)
    return 2.0 * x * y * z / math.sqrt(heron), cls


def _t0(rr: float, ss: float, sin_half: float) -> float:
    d = rr * rr - ss * ss
    e = 2.0 * rr * ss * sin_half
    root = math.hypot(d, e)
    if d >= 0:
        return (d + root) / e
    return e / (root - d)


def two_two_formula(rr: float, ss: float, phi: float) -> tuple[float, Optional[float]]:
    """Dual norm of a vector with magnitudes (r, s) on a 2+2 partition and phase difference phi."""
    if rr <= 0 or ss <= 0:
        raise ValueError("two-two formula needs positive magnitudes")
    sin_half = abs(math.sin(phi / 2.0))
    if phase_class(phi) == 0 or sin_half == 0.0:
        return max(rr, ss), None
    t0 = _t0(rr, ss, sin_half)
    val = math.sqrt((rr * rr * t0 * t0 + 2.0 * rr * ss * t0 * sin_half + ss * ss) / (t0 * t0 + 1.0))
    return val, t0


def dual_norm_two_two(c: Any, partition: Optional[int] = None) -> tuple[float, Optional[float]]:
    """||c||'_X when |c_i1| = |c_i2| = r and |c_i3| = |c_i4| = s (partition index into PAIRINGS)."""
    cc = as_cvec4(c)
    r = np.abs(cc)
    if partition is None:
        partition = two_two_partition(r)
        if partition is None:
            raise ValueError("no 2+2 magnitude partition")
    (i, j), (p, q) = PAIRINGS[partition]
    rr, ss = 0.5 * (r[i] + r[j]), 0.5 * (r[p] + r[q])
    return two_two_formula(rr, ss, phase_difference(cc))


def vk_test(c: Any) -> VkData:
    """v_k = |c_k|(-2|c_k|^2 + sum |c_i|^2) + 2 prod_{i != k} |c_i| for nonzero entries."""
    r = np.abs(as_cvec4(c))
    if np.any(r == 0):
        raise ValueError("vk_test needs nonzero entries")
    sq = float(np.sum(r * r))
    prod = float(np.prod(r))
    v = tuple(float(r[k] * (sq - 2.0 * r[k] * r[k]) + 2.0 * prod / r[k]) for k in range(4))
    nonpos = tuple(k for k in range(4) if v[k] <= 0)
    quad = bool(2.0 * r.max() < r.sum())
    return VkData(v, nonpos, quad)


# ---------------------------------------------------------------------------
# Bounds


def _pair_means(r: np.ndarray) -> list[tuple[str, float, float]]:
    return [(name, 0.5 * (r[i] + r[j]), 0.5 * (r[p] + r[q])) for name, ((i, j), (p, q)) in zip(PAIRING_NAMES, PAIRINGS)]


def max_phase_bound(c: Any, n_theta: int = 64, n_psi: int = 32, rounds: int = 5) -> float:
    """max over (theta, psi) of (|c1 e^{i theta} + c3| + |c2 e^{i theta} + c4 e^{i psi}|) / (2 sqrt2 sqrt(1 + |cos(psi/2)|)).

    A coarse grid is followed by a few zoom rounds around the best point.
    Every evaluated pair is a feasible test vector, so the result is a valid
    lower bound whatever the grid resolution.
    """
    cc = as_cvec4(c)

    def ratio(th, ps):
        e = np.exp(1j * th)
        num = np.abs(cc[0] * e + cc[2]) + np.abs(cc[1] * e + cc[3] * np.exp(1j * ps))
        return num / (2.0 * np.sqrt(2.0) * np.sqrt(1.0 + np.abs(np.cos(ps / 2.0))))

    th = np.linspace(0.0, 2.0 * np.pi, n_theta, endpoint=False)
    ps = np.linspace(0.0, 2.0 * np.pi, n_psi, endpoint=False)
    h_th, h_ps = th[1] - th[0], ps[1] - ps[0]
    vals = ratio(th[:, None], ps[None, :])
    k = np.unravel_index(int(np.argmax(vals)), vals.shape)
    best, t0, p0 = float(vals[k]), th[k[0]], ps[k[1]]
    offs = np.linspace(-1.0, 1.0, 11)
    for _ in range(rounds):
        tt, pp = t0 + h_th * offs, p0 + h_ps * offs
        vals = ratio(tt[:, None], pp[None, :])
        k = np.unravel_index(int(np.argmax(vals)), vals.shape)
        if vals[k] > best:
            best, t0, p0 = float(vals[k]), tt[k[0]], pp[k[1]]
        h_th, h_ps = h_th / 4.0, h_ps / 4.0
    return best


def dual_lower_bounds(c: Any) -> list[tuple[str, float]]:
    """Lower bounds for ||c||'_X from the sup-norm, the 2+2 pair averages, and the phase sweep."""
    cc = as_cvec4(c)
    r = np.abs(cc)
    phi = phase_difference(cc)
    sin_half = abs(math.sin(phi / 2.0))
    cos_half = abs(math.cos(phi / 2.0))
    out = [("linf", float(r.max()))]
    for name, m1, m2 in _pair_means(r):
        if m1 > 0 and m2 > 0:
            out.append((f"pair_average[{name}]", two_two_formula(m1, m2, phi)[0]))
            out.append(
                (f"pair_sine[{name}]", math.sqrt(2.0) * m1 * m2 / math.hypot(m1, m2) * math.sqrt(1.0 + sin_half))
            )
            if sin_half > 0 and m1 > m2 * cos_half and m2 > m1 * cos_half:
                rad2 = (m1 * m1 + m2 * m2 - 2.0 * m1 * m2 * cos_half) / (sin_half * sin_half)
                out.append((f"circumradius[{name}]", math.sqrt(rad2)))
    flipped = cc * np.array([1, 1, 1, -1])
    out.append(("phase_pi", x_norm(flipped).lo / (2.0 * math.sqrt(2.0))))
    out.append(("max_phase", max_phase_bound(cc)))
    return out


def dual_upper_bounds(c: Any) -> list[tuple[str, float]]:
    """Upper bounds: |c_(2)| + |c_(4)|, sqrt2 ||c||_inf, ||c||_1, and the real sign-flip bound."""
    r = np.abs(as_cvec4(c))
    srt = np.sort(r)
    flip, _ = dual_norm_real(np.array([-r[0], r[1], r[2], r[3]]))
    return [
        ("second_plus_largest", float(srt[1] + srt[3])),
        ("sqrt2_linf", float(math.sqrt(2.0) * srt[3])),
        ("l1", float(r.sum())),
        ("real_flip", float(flip)),
    ]


# ---------------------------------------------------------------------------
# Numeric fallback: column generation on the decomposition form
#
#   min sum_k mu_k  s.t.  c = sum_k (a_k e^{i s_k}, b_k e^{i s_k}, conj b_k, conj a_k),
#                         |a_k| <= mu_k, |b_k| <= mu_k,
#
# whose value over all s equals ||c||'_X.  Any feasible decomposition gives an
# upper bound, and the multipliers of the equality rows give a vector z whose
# ratio Re<c, z> / ||z||_X is a lower bound.  Once the bracket is small the
# active cuts are merged into two clusters and the resulting square system is
# solved by Newton's method, which removes the slow tail of plain cut adding.

_SETTINGS = clarabel.DefaultSettings()
_SETTINGS.verbose = False
_SETTINGS.tol_gap_abs = 1e-12
_SETTINGS.tol_gap_rel = 1e-12
_SETTINGS.tol_feas = 1e-12
_SETTINGS.max_iter = 200

_POLISH_GAP = 1e-2
_CLUSTER_WIDTH = 0.2


@dataclass
class _Master:
    sig: np.ndarray
    mu: np.ndarray
    a: np.ndarray
    b: np.ndarray
    z: np.ndarray
    hi: float


def _solve_master(c: np.ndarray, sig: np.ndarray) -> _Master:
    K = len(sig)
    cs, sn = np.cos(sig), np.sin(sig)
    one, zero = np.ones(K), np.zeros(K)
    base = 8 + 6 * np.arange(K)
    # column blocks per cut: mu, Re a, Im a, Re b, Im b (nonzeros 2, 4, 4, 4, 4)
    ind = np.column_stack([
        base, base + 3,
        zero, zero + 1, zero + 6, base + 1,
        zero, zero + 1, zero + 7, base + 2,
        zero + 2, zero + 3, zero + 4, base + 4,
        zero + 2, zero + 3, zero + 5, base + 5,
    ]).astype(np.int64)
    dat = np.column_stack([
        -one, -one,
        cs, sn, one, -one,
        -sn, cs, -one, -one,
        cs, sn, one, -one,
        -sn, cs, -one, -one,
    ])
    indptr = np.concatenate([[0], np.cumsum(np.tile([2, 4, 4, 4, 4], K))])
    m, n = 8 + 6 * K, 5 * K
    A = sparse.csc_matrix((dat.ravel(), ind.ravel(), indptr), shape=(m, n))
    rhs = np.zeros(m)
    rhs[:8] = np.column_stack([c.real, c.imag]).ravel()
    q = np.zeros(n)
    q[0::5] = 1.0
    cones = [clarabel.ZeroConeT(8)] + [clarabel.SecondOrderConeT(3)] * (2 * K)
    sol = clarabel.DefaultSolver(sparse.csc_matrix((n, n)), q, A, rhs, cones, _SETTINGS).solve()
    x = np.asarray(sol.x)
    y = np.asarray(sol.z)[:8]
    a = x[1::5] + 1j * x[2::5]
    b = x[3::5] + 1j * x[4::5]
    hi = _decomposition_bound(c, sig, a, b)
    return _Master(sig, x[0::5], a, b, -(y[0::2] - 1j * y[1::2]), hi)


def _decomposition_bound(c: np.ndarray, sig: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """sum max(|a_k|, |b_k|) plus the l1 norm of what the decomposition misses."""
    e = np.exp(1j * sig)
    resid = c - np.array([np.sum(a * e), np.sum(b * e), np.sum(np.conj(b)), np.sum(np.conj(a))])
    return float(np.sum(np.maximum(np.abs(a), np.abs(b))) + np.sum(np.abs(resid)))


def _local_maxima(z: np.ndarray, n: int = 256) -> list[tuple[float, float]]:
    """(value, sigma) of the local maxima of N_sigma(z), largest first (uncertified)."""
    s = np.arange(n) * (2.0 * np.pi / n)
    e = np.exp(1j * s)
    f = np.abs(z[0] * e + np.conj(z[3])) + np.abs(z[1] * e + np.conj(z[2]))
    idx = np.nonzero((f >= np.roll(f, 1)) & (f >= np.roll(f, -1)))[0]
    z1, z2, w4, w3 = complex(z[0]), complex(z[1]), complex(z[3]).conjugate(), complex(z[2]).conjugate()

    def g(x: float) -> float:
        ex = complex(math.cos(x), math.sin(x))
        return abs(z1 * ex + w4) + abs(z2 * ex + w3)

    h = 2.0 * np.pi / n
    out = [_golden_max(g, s[i] - h, s[i] + h, 1e-10)[::-1] for i in idx]
    return sorted(out, reverse=True)


def _cut_vector(p: np.ndarray) -> np.ndarray:
    out = np.zeros(4, dtype=complex)
    for s, mu, al, be in p.reshape(-1, 4):
        out += mu * np.array([cmath.exp(1j * (s + al)), cmath.exp(1j * (s + be)), cmath.exp(-1j * be), cmath.exp(-1j * al)])
    return out


def _cut_jacobian(p: np.ndarray) -> np.ndarray:
    J = np.zeros((4, 8), dtype=complex)
    for k, (s, mu, al, be) in enumerate(p.reshape(-1, 4)):
        ea, eb = cmath.exp(1j * (s + al)), cmath.exp(1j * (s + be))
        ema, emb = cmath.exp(-1j * al), cmath.exp(-1j * be)
        J[:, 4 * k] = mu * np.array([1j * ea, 1j * eb, 0, 0])
        J[:, 4 * k + 1] = [ea, eb, emb, ema]
        J[:, 4 * k + 2] = mu * np.array([1j * ea, 0, 0, -1j * ema])
        J[:, 4 * k + 3] = mu * np.array([0, 1j * eb, -1j * emb, 0])
    return np.vstack([J.real, J.imag])


def _real_rows(coef: list[complex], coef_conj: list[complex]) -> tuple[np.ndarray, np.ndarray]:
    """Rows (Re, Im) of sum_j coef_j z_j + coef_conj_j conj(z_j) in the variables (Re z_1, Im z_1, ...)."""
    re, im = np.zeros(10), np.zeros(10)
    for j in range(4):
        u, v = coef[j] + coef_conj[j], 1j * (coef[j] - coef_conj[j])
        re[2 * j], re[2 * j + 1] = u.real, v.real
        im[2 * j], im[2 * j + 1] = u.imag, v.imag
    return re, im


def _polish(c: np.ndarray, mst: _Master) -> Optional[tuple[float, Optional[np.ndarray], np.ndarray]]:
    """Newton refinement of a two-cut decomposition with |a_k| = |b_k| = mu_k.

    Returns (upper bound, dual vector z or None, cut positions) or None when
    the master solution does not have the two-cluster shape.
    """
    mu, sig = mst.mu, mst.sig
    act = np.nonzero(mu > 1e-3 * mu.max())[0]
    clusters: list[list[int]] = []
    for i in act[np.argsort(-mu[act], kind="stable")]:
        for cl in clusters:
            if abs(math.remainder(sig[i] - sig[cl[0]], 2.0 * math.pi)) < _CLUSTER_WIDTH:
                cl.append(i)
                break
        else:
            clusters.append([i])
    if len(clusters) != 2:
        return None
    p = []
    for cl in clusters:
        idx = np.array(cl)
        w = mu[idx]
        off = np.array([math.remainder(sig[i] - sig[cl[0]], 2.0 * math.pi) for i in cl])
        s0 = sig[cl[0]] + float(np.sum(w * off) / w.sum())
        rot = np.exp(1j * (sig[idx] - s0))
        p += [s0, float(w.sum()), cmath.phase(np.sum(mst.a[idx] * rot)), cmath.phase(np.sum(mst.b[idx] * rot))]
    p = np.array(p)
    for _ in range(40):
        r = _cut_vector(p) - c
        F = np.concatenate([r.real, r.imag])
        if np.max(np.abs(F)) < 1e-15:
            break
        try:
            step = np.linalg.solve(_cut_jacobian(p), F)
        except np.linalg.LinAlgError:
            return None
        p = p - step
        if not np.all(np.isfinite(p)):
            return None
        if np.max(np.abs(step)) < 1e-15:
            break
    if p[1] <= 0 or p[5] <= 0:
        return None
    s_k, mu_k = p[0::4], p[1::4]
    a_k = mu_k * np.exp(1j * p[2::4])
    b_k = mu_k * np.exp(1j * p[3::4])
    hi = _decomposition_bound(c, s_k, a_k, b_k)

    # Multipliers: z1 e^{is} + conj z4 = t e^{-i alpha}, z2 e^{is} + conj z3 = (1 - t) e^{-i beta},
    # and sigma_k is a critical point of N_sigma(z).
    rows, rhs = [], []
    for k, (s, _, al, be) in enumerate(p.reshape(-1, 4)):
        e = cmath.exp(1j * s)
        re, im = _real_rows([e, 0, 0, 0], [0, 0, 0, 1])
        re[8 + k] -= math.cos(al)
        im[8 + k] += math.sin(al)
        rows += [re, im]
        rhs += [0.0, 0.0]
        re, im = _real_rows([0, e, 0, 0], [0, 0, 1, 0])
        re[8 + k] += math.cos(be)
        im[8 + k] -= math.sin(be)
        rows += [re, im]
        rhs += [math.cos(be), -math.sin(be)]
        re, _ = _real_rows([1j * e * cmath.exp(1j * al), 1j * e * cmath.exp(1j * be), 0, 0], [0, 0, 0, 0])
        rows.append(re)
        rhs.append(0.0)
    try:
        sol = np.linalg.solve(np.array(rows), np.array(rhs))
    except np.linalg.LinAlgError:
        return hi, None, s_k
    z = sol[0:8:2] + 1j * sol[1:8:2]
    return hi, (z if np.all(np.isfinite(z)) else None), s_k


def dual_norm_numeric(c: Any, starts: int = 8, tol: float = 1e-9, max_iter: int = 100) -> tuple[float, float, np.ndarray]:
    """Certified bracket (lo, hi) for ||c||'_X and a vector z attaining lo.

    ``starts`` uniformly spaced sigma-cuts seed the column generation; every
    round adds the local maximizers of N_sigma(z) that exceed 1.  ``hi`` comes
    from an explicit decomposition (plus the l1 norm of its residual) and is
    min-ed with dual_upper_bounds; ``lo`` uses the certified upper end of x_norm.
    """
    if starts < 1:
        raise ValueError("starts must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    cc = as_cvec4(c)
    scale = float(np.max(np.abs(cc)))
    if scale == 0.0:
        return 0.0, 0.0, np.array([1, 0, 0, 0], dtype=complex)
    cn = cc / scale
    rel_tol = tol / scale
    xtol = min(1e-12, 0.1 * rel_tol)
    z_best = _basis_certificate(cn)
    lo = 1.0
    hi = min(v for _, v in dual_upper_bounds(cn))

    def consider(z: Optional[np.ndarray]) -> None:
        nonlocal lo, z_best
        if z is None or not np.any(z):
            return
        val = float(np.real(np.dot(cn, z)))
        if val <= lo:
            return
        xr = x_norm(z, tol=xtol)
        if val / xr.hi > lo:
            lo = val / xr.hi
            z_best = z / xr.hi

    sig = list(np.linspace(0.0, 2.0 * np.pi, starts, endpoint=False))
    for _ in range(max_iter):
        if hi - lo <= rel_tol:
            break
        mst = _solve_master(cn, np.array(sig))
        hi = min(hi, mst.hi)
        if not np.all(np.isfinite(mst.z)):
            break
        peaks = _local_maxima(mst.z)
        val = float(np.real(np.dot(cn, mst.z)))
        estimate = val / peaks[0][0] if peaks and peaks[0][0] > 0 else 0.0
        if hi - estimate <= _POLISH_GAP:
            pol = _polish(cn, mst)
            if pol is not None:
                hi = min(hi, pol[0])
                consider(pol[1])
                if hi - lo <= rel_tol:
                    break
        if hi - estimate <= rel_tol:
            consider(mst.z)
            if hi - lo <= rel_tol:
                break
        new = [s for f, s in peaks if f > 1.0 + 1e-12]
        new = [s for s in new if all(abs(math.remainder(s - t, 2.0 * math.pi)) > 1e-13 for t in sig)]
        if not new:
            consider(mst.z)
            break  # no new cut available; report the bracket as it stands
        sig += new
    return lo * scale, max(hi, lo) * scale, z_best


# ---------------------------------------------------------------------------


def _basis_certificate(cc: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(cc)))
    z = np.zeros(4, dtype=complex)
    if cc[k] != 0:
        z[k] = np.conj(cc[k]) / abs(cc[k])
    else:
        z[k] = 1.0
    return z


def dual_norm(c: Any, tol: float = 1e-9, starts: int = 8) -> DualNormResult:
    """||c||'_X by the closed-form dispatch, falling back to the certified numeric solver."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    cc = as_cvec4(c)
    r = np.abs(cc)
    phi = phase_difference(cc)
    nzeros = int(np.sum(r == 0.0))
    linf = float(r.max())

    def exact(value, branch, detail=None, at_linf=False):
        z = _basis_certificate(cc) if at_linf else None
        return DualNormResult(float(value), float(value), float(value), branch, detail, cc, z, tol)

    if nzeros >= 2:
        return exact(linf, DualBranch.TWO_ZEROS, at_linf=True)
    if nzeros == 1:
        val, cls = dual_norm_three(cc)
        return exact(val, DualBranch.ONE_ZERO, cls, at_linf=cls != "acute")
    cls = phase_class(phi)
    if cls != 1:
        signed = np.array([-r[0] if cls == 2 else r[0], r[1], r[2], r[3]])
        val, data = dual_norm_real(signed)
        return exact(val, DualBranch.REAL_CASE, data.case, at_linf=data.case != "C")
    part = two_two_partition(r)
    if part is not None:
        val, t0 = dual_norm_two_two(cc, part)
        return exact(val, DualBranch.TWO_TWO, None if t0 is None else f"t0={float(t0)!r}")
    if vk_test(cc).shortcut:
        return exact(linf, DualBranch.VK_SHORTCUT, at_linf=True)
    lo, hi, z = dual_norm_numeric(cc, starts=starts, tol=tol)
    return DualNormResult(lo, lo, hi, DualBranch.NUMERIC, None, cc, z, tol)

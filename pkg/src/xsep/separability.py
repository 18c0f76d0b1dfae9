"""Separability verdicts for X-states plus region scans and product decompositions.

General 8x8 inputs only get a necessary test built from their X-shaped part.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .core import (
    NotAStateError,
    Verdict,
    VerdictKind,
    XState,
    as_cvec4,
    check_dense,
    delta,
    is_state,
    off_x_norm,
    xpart,
)
from .dualnorm import DualNormResult, dual_lower_bounds, dual_norm
from .witness import BalanceFactors, Witness, a_bracket, c_value, l_value
from .xnorm import x_norm

# ---------------------------------------------------------------------------
# Verdicts


def _entangled_certificate(c: np.ndarray, dn: DualNormResult) -> Optional[np.ndarray]:
    """Turn a dual-norm maximizer w into z with L(rho, z) = Re<c, w> and C(z) = ||w||_X."""
    w = dn.certificate
    if w is None:
        return None
    return np.array([w[0], w[1], w[2], np.conj(w[3])])


def classify(d: float, dn: DualNormResult, tol: float) -> VerdictKind:
    """The verdict rule, given Delta and the dual norm of c.

    Closed-form branches: Separable iff Delta >= value - tol * max(value, Delta).
    Numeric branch: Separable iff Delta >= hi, Entangled iff Delta < lo, otherwise Inconclusive.
    """
    if dn.exact:
        return VerdictKind.SEPARABLE if d >= dn.value - tol * max(dn.value, d) else VerdictKind.ENTANGLED
    if d >= dn.hi:
        return VerdictKind.SEPARABLE
    return VerdictKind.ENTANGLED if d < dn.lo else VerdictKind.INCONCLUSIVE


def decide_xstate(rho: XState, tol: float = 1e-9, starts: int = 8, certificate: bool = True) -> Verdict:
    """Decide separability of an X-state through Delta >= ||c||'_X (see ``classify``).

    Entangled verdicts carry z with C(z) Delta < L(rho, z) and the margin
    C(z) Delta - L(rho, z), unless ``certificate`` is False.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_state(rho):
        return Verdict(VerdictKind.NOT_A_STATE, notes={"reason": "X(a,b,c) is not positive semidefinite"})
    d = delta(rho)
    dn = dual_norm(rho.c, tol=tol, starts=starts)
    kind = classify(d, dn, tol)
    base = dict(delta=d, lo=dn.lo, hi=dn.hi, branch=_branch_label(dn))
    if kind is VerdictKind.ENTANGLED and certificate:
        z = _entangled_certificate(rho.c, dn)
        margin = None if z is None else c_value(z) * d - l_value(rho, z)
        return Verdict(kind, certificate=z, margin=margin, **base)
    return Verdict(kind, **base)


def _branch_label(dn: DualNormResult) -> str:
    return dn.branch.value if dn.detail is None else f"{dn.branch.value}({dn.detail})"


def necessary_check_general(m: Any, tol: float = 1e-9) -> Verdict:
    """Necessary test for a general three-qubit state: its X-part must satisfy Delta >= ||c||'_X.

    Returns Entangled or Inconclusive, never Separable.  For X-shaped input the
    exact verdict is added to the notes under "x_shaped_verdict".
    """
    arr = check_dense(m)
    scale = max(float(np.max(np.abs(arr))), 1e-300)
    if float(np.linalg.eigvalsh(arr).min()) < -tol * scale:
        return Verdict(VerdictKind.NOT_A_STATE, notes={"reason": "matrix has a negative eigenvalue"})
    # The X-part of a PSD matrix is PSD; clip rounding noise on the diagonal.
    x = xpart(arr)
    x = XState(np.maximum(x.a, 0.0), np.maximum(x.b, 0.0), x.c)
    d = delta(x)
    bounds = dual_lower_bounds(x.c)
    dn = dual_norm(x.c, tol=tol)
    best_name, best = max(bounds, key=lambda kv: kv[1])
    threshold = max(dn.lo, best)
    notes: dict = {"bound": best_name, "bound_value": best}
    if off_x_norm(arr) <= 1e-12 * scale:
        # X-shaped input: the criterion is exact, reported alongside the necessary test
        notes["x_shaped_verdict"] = classify(d, dn, tol).value
    base = dict(delta=d, lo=dn.lo, hi=dn.hi, branch=_branch_label(dn), notes=notes)
    if d < threshold - tol * max(1.0, threshold):
        z = _entangled_certificate(x.c, dn) if d < dn.lo else None
        margin = None if z is None else c_value(z) * d - l_value(x, z)
        return Verdict(VerdictKind.ENTANGLED, certificate=z, margin=margin, **base)
    return Verdict(VerdictKind.INCONCLUSIVE, **base)


def guhne_check(rho: XState, zs: Iterable[Any]) -> float:
    """min over the samples z of C(z) Delta - L(rho, z); nonnegative whenever rho is separable."""
    d = delta(rho)
    worst = math.inf
    for z in zs:
        worst = min(worst, c_value(z) * d - l_value(rho, z))
    return worst


# ---------------------------------------------------------------------------
# Region scans


class Family(str, enum.Enum):
    THETA_RS = "theta-rs"
    PQQQ = "pqqq"


THETA_RS_HEADER = ("theta", "r", "s", "delta", "dual_norm", "verdict")
PQQQ_HEADER = ("p", "q", "xnorm", "in_ball")


def theta_rs_state(theta: float, r: float, s: float) -> XState:
    """X(1, 1, (e^{i theta} r, r, s, s))."""
    return XState(np.ones(4), np.ones(4), np.array([np.exp(1j * theta) * r, r, s, s]))


def theta_rs_gap(theta: float, r: float, s: float) -> float:
    """Delta - ||c||'_X for the theta-r-s family (Delta = 1)."""
    return 1.0 - dual_norm(np.array([np.exp(1j * theta) * r, r, s, s])).value


def pqqq_gap(p: float, q: float) -> float:
    """1 - ||(p, q, q, q)||_X."""
    return 1.0 - x_norm(np.array([p, q, q, q], dtype=complex)).value


def region_grid(family: Family, grid: int, extent: Optional[float] = None) -> tuple[np.ndarray, np.ndarray]:
    if grid < 2:
        raise ValueError("grid resolution must be at least 2 per axis")
    family = Family(family)
    if family is Family.THETA_RS:
        ext = 1.2 if extent is None else extent
        g = np.linspace(0.0, ext, grid)
        return g, g.copy()
    ext = 1.5 if extent is None else extent
    g = np.linspace(-ext, ext, grid)
    return g, g.copy()


def region_scan(
    family: Family | str,
    grid: int = 200,
    theta: float = math.pi,
    extent: Optional[float] = None,
    tol: float = 1e-9,
) -> list[tuple]:
    """Rows of the selected family over a square grid, in row-major (first axis outer) order.

    theta-rs rows: (theta, r, s, delta, dual_norm, verdict) for X(1, 1, (e^{i theta} r, r, s, s)).
    pqqq rows: (p, q, ||(p,q,q,q)||_X, in_ball).
    """
    family = Family(family)
    xs, ys = region_grid(family, grid, extent)
    rows: list[tuple] = []
    if family is Family.THETA_RS:
        for r in xs:
            for s in ys:
                rho = theta_rs_state(theta, float(r), float(s))
                dn = dual_norm(rho.c, tol=tol)
                d = delta(rho)
                kind = classify(d, dn, tol) if is_state(rho) else VerdictKind.NOT_A_STATE
                rows.append((float(theta), float(r), float(s), d, dn.value, kind.value))
        return rows
    for p in xs:
        for q in ys:
            val = x_norm(np.array([p, q, q, q], dtype=complex)).value
            rows.append((float(p), float(q), val, bool(val <= 1.0)))
    return rows


def scan_gaps(family: Family | str, rows: Sequence[tuple], shape: tuple[int, int]) -> np.ndarray:
    """The gap grid (Delta - ||c||'_X, or 1 - ||.||_X) recovered from region_scan rows."""
    family = Family(family)
    col = (lambda row: row[3] - row[4]) if family is Family.THETA_RS else (lambda row: 1.0 - row[2])
    return np.array([col(row) for row in rows]).reshape(shape)


def _bisect(f, a: float, b: float, fa: float, width: float) -> float:
    while b - a > width:
        m = 0.5 * (a + b)
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def region_boundary(
    family: Family | str,
    xs: Sequence[float],
    ys: Sequence[float],
    theta: float = math.pi,
    width: float = 1e-10,
    values: Optional[np.ndarray] = None,
) -> list[tuple[float, float]]:
    """Boundary points from sign changes of the gap function along grid rows and columns.

    The gap is Delta - ||c||'_X for theta-rs and 1 - ||(p,q,q,q)||_X for pqqq; each
    sign change is refined by bisection to ``width``.  ``values`` may supply the
    gap on the grid (shape len(xs) x len(ys)), e.g. from ``scan_gaps``.
    """
    family = Family(family)
    if family is Family.THETA_RS:
        gap = lambda x, y: theta_rs_gap(theta, x, y)  # noqa: E731
    else:
        gap = pqqq_gap
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    vals = np.array([[gap(x, y) for y in ys] for x in xs]) if values is None else np.asarray(values)
    pts: list[tuple[float, float]] = []
    for i, x in enumerate(xs):
        for j in range(len(ys) - 1):
            if (vals[i, j] > 0) != (vals[i, j + 1] > 0):
                y = _bisect(lambda t: gap(x, t), ys[j], ys[j + 1], vals[i, j], width)
                pts.append((float(x), y))
    for j, y in enumerate(ys):
        for i in range(len(xs) - 1):
            if (vals[i, j] > 0) != (vals[i + 1, j] > 0):
                x = _bisect(lambda t: gap(t, y), xs[i], xs[i + 1], vals[i, j], width)
                pts.append((x, float(y)))
    return pts


# ---------------------------------------------------------------------------
# Product decompositions of the a-b-c family


def acin_state(a: float, b: float, c: float) -> XState:
    """X((1, a, b, c), (1, 1/a, 1/b, 1/c), (1, 0, 0, 0))."""
    if min(a, b, c) <= 0:
        raise ValueError("a, b, c must be positive")
    return XState(np.array([1.0, a, b, c]), np.array([1.0, 1.0 / a, 1.0 / b, 1.0 / c]), np.array([1, 0, 0, 0]))


@dataclass
class ProductDecomposition:
    """sum_j w_j |x_j><x_j| (x) |y_j><y_j| (x) |v_j><v_j| with unit 2-vectors."""

    terms: list[tuple[float, tuple[np.ndarray, np.ndarray, np.ndarray]]]

    def vectors(self) -> list[np.ndarray]:
        return [np.kron(np.kron(u, v), w) for _, (u, v, w) in self.terms]

    def reconstruct(self) -> np.ndarray:
        m = np.zeros((8, 8), dtype=complex)
        for (wt, _), vec in zip(self.terms, self.vectors()):
            m += wt * np.outer(vec, vec.conj())
        return m

    def error(self, target: Any) -> float:
        return float(np.max(np.abs(self.reconstruct() - np.asarray(target))))

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"weight": wt, "factors": [[[float(x.real), float(x.imag)] for x in f] for f in fs]}
                for wt, fs in self.terms
            ]
        }


def is_product_vector(v: Any, tol: float = 1e-12) -> bool:
    """All three 2 x 4 flattenings of a three-qubit vector have rank one."""
    t = np.asarray(v, dtype=complex).reshape(2, 2, 2)
    scale = float(np.linalg.norm(t))
    for k in range(3):
        mat = np.moveaxis(t, k, 0).reshape(2, 4)
        sv = np.linalg.svd(mat, compute_uv=False)
        if sv[1] > tol * max(scale, 1e-300):
            return False
    return True


def decompose_acin(a: float, b: float, c: float, rtol: float = 1e-10) -> ProductDecomposition:
    """Seven product terms for the a-b-c family when ab = c.

    The Fourier vectors (|0> + w^{4j}|1>)(|0> + w^{2j}|1>)(|0> + w^j|1>)/sqrt 7, w = e^{2 pi i / 7},
    sum to the a = b = c = 1 member; the local filter diag(1, c^{-1/2}) (x) diag(1, b^{1/2}) (x)
    diag(1, a^{1/2}) carries that identity to general (a, b, ab).
    """
    if min(a, b, c) <= 0:
        raise ValueError("a, b, c must be positive")
    if abs(a * b - c) > rtol * max(a * b, c):
        raise ValueError("decomposition needs ab = c")
    omega = np.exp(2j * np.pi / 7.0)
    filt = (np.array([1.0, c ** -0.5]), np.array([1.0, b ** 0.5]), np.array([1.0, a ** 0.5]))
    terms = []
    for j in range(7):
        factors, weight = [], 1.0 / 7.0
        for k, power in enumerate((4 * j, 2 * j, j)):
            v = filt[k] * np.array([1.0, omega ** power])
            n = float(np.linalg.norm(v))
            weight *= n * n
            factors.append(v / n)
        terms.append((weight, tuple(factors)))
    return ProductDecomposition(terms)


# ---------------------------------------------------------------------------
# Random sampling


def random_xstate(rng: np.random.Generator, fill: Optional[float] = None) -> XState:
    """Random X-state: diagonals uniform in (0, 1], |c_i| a uniform fraction of sqrt(a_i b_i)."""
    a = rng.uniform(1e-3, 1.0, 4)
    b = rng.uniform(1e-3, 1.0, 4)
    frac = rng.uniform(0.0, 1.0, 4) if fill is None else np.full(4, fill)
    c = frac * np.sqrt(a * b) * np.exp(1j * rng.uniform(-np.pi, np.pi, 4))
    return XState(a, b, c)


def random_product_mixture(rng: np.random.Generator, n_terms: int = 6) -> np.ndarray:
    """Dense convex mixture of random pure product states (separable by construction)."""
    m = np.zeros((8, 8), dtype=complex)
    weights = rng.dirichlet(np.ones(n_terms))
    for w in weights:
        vecs = [rng.standard_normal(2) + 1j * rng.standard_normal(2) for _ in range(3)]
        v = np.kron(np.kron(vecs[0], vecs[1]), vecs[2])
        v /= np.linalg.norm(v)
        m += w * np.outer(v, v.conj())
    return m


def random_separable_xstate(rng: np.random.Generator, n_terms: int = 6) -> XState:
    """X-part of a random product mixture; X-parts of separable states are separable."""
    x = xpart(random_product_mixture(rng, n_terms))
    return XState(np.maximum(x.a, 0.0), np.maximum(x.b, 0.0), x.c)


def random_witness(rng: np.random.Generator, tries: int = 100) -> Witness:
    """A random X-shaped witness with A(s,t) >= B(u) and X(s,t,u) not positive."""
    for _ in range(tries):
        s = rng.uniform(0.05, 1.0, 4)
        t = rng.uniform(0.05, 1.0, 4)
        direction = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        a_lo = a_bracket(s, t)[0]
        u = direction * (rng.uniform(0.5, 1.0) * a_lo / x_norm(direction).hi)
        if np.any(np.abs(u) ** 2 > s * t):
            return Witness(s, t, u)
    raise RuntimeError("failed to draw a witness")


def sample_statistics(n: int, seed: int = 0, tol: float = 1e-9, starts: int = 8) -> dict:
    """Verdict and branch counts over n random X-states."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.default_rng(seed)
    verdicts: dict[str, int] = {}
    branches: dict[str, int] = {}
    for _ in range(n):
        v = decide_xstate(random_xstate(rng), tol=tol, starts=starts)
        verdicts[v.kind.value] = verdicts.get(v.kind.value, 0) + 1
        if v.branch is not None:
            key = v.branch.split("(")[0]
            branches[key] = branches.get(key, 0) + 1
    return {"n": n, "seed": seed, "verdicts": dict(sorted(verdicts.items())), "branches": dict(sorted(branches.items()))}


__all__ = [
    "BalanceFactors",
    "Family",
    "NotAStateError",
    "ProductDecomposition",
    "acin_state",
    "classify",
    "as_cvec4",
    "decide_xstate",
    "decompose_acin",
    "guhne_check",
    "is_product_vector",
    "necessary_check_general",
    "random_product_mixture",
    "random_separable_xstate",
    "random_witness",
    "random_xstate",
    "region_boundary",
    "region_grid",
    "region_scan",
    "sample_statistics",
    "scan_gaps",
    "theta_rs_gap",
    "theta_rs_state",
]

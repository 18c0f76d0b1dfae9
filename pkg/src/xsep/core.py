"""Domain types and elementary operations for three-qubit X-states.

An X-state X(a, b, c) is the 8x8 matrix (basis |000>, |001>, ..., |111>)
whose diagonal is (a1, a2, a3, a4, b4, b3, b2, b1) and whose anti-diagonal
holds c1..c4 in the upper half and their conjugates in the lower half.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

# |phi| within this distance of 0 or pi is treated as exactly 0 or pi.
PHASE_TOL = 1e-12
HERMITIAN_TOL = 1e-12


class NotAStateError(ValueError):
    """Raised when an input cannot be a (positive) X-state."""


def as_cvec4(z: Any) -> np.ndarray:
    """Coerce ``z`` to a length-4 complex vector."""
    arr = np.asarray(z, dtype=complex).reshape(-1)
    if arr.shape != (4,):
        raise ValueError(f"expected 4 complex entries, got shape {np.shape(z)}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("entries must be finite")
    return arr


def as_real4(x: Any, name: str = "vector") -> np.ndarray:
    arr = np.asarray(x, dtype=float).reshape(-1)
    if arr.shape != (4,):
        raise ValueError(f"{name}: expected 4 real entries, got shape {np.shape(x)}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: entries must be finite")
    return arr


def wrap_angle(x: float) -> float:
    """Reduce an angle into (-pi, pi]."""
    r = float(x) - 2.0 * np.pi * np.ceil((float(x) - np.pi) / (2.0 * np.pi))
    if r <= -np.pi:
        r += 2.0 * np.pi
    return r


def phases(z: Any) -> np.ndarray:
    """Phases in (-pi, pi]; zero entries get phase 0."""
    return np.angle(as_cvec4(z))


def phase_difference(z: Any) -> float:
    """phi_z = (theta1 + theta4) - (theta2 + theta3) reduced into (-pi, pi]."""
    th = phases(z)
    return wrap_angle(th[0] + th[3] - th[1] - th[2])


def phase_class(phi: float) -> int:
    """0 if phi counts as 0, 2 if |phi| counts as pi, 1 otherwise."""
    a = abs(phi)
    if a <= PHASE_TOL:
        return 0
    if a >= np.pi - PHASE_TOL:
        return 2
    return 1


def reduced(z: Any) -> tuple[np.ndarray, float]:
    """Magnitudes and |phi|, the data both norms depend on."""
    zz = as_cvec4(z)
    return np.abs(zz), abs(phase_difference(zz))


# Pairings of the four indices (0-based), in the order {1,4}{2,3}, {1,2}{3,4}, {1,3}{2,4}.
PAIRINGS: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = (
    ((0, 3), (1, 2)),
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
)
PAIRING_NAMES = ("14|23", "12|34", "13|24")


def two_two_partition(r: np.ndarray, rtol: float = 1e-12) -> Optional[int]:
    """Index into PAIRINGS of a partition with equal magnitudes in each pair."""
    scale = float(np.max(r)) if len(r) else 0.0
    if scale == 0.0:
        return 0
    for k, ((i, j), (p, q)) in enumerate(PAIRINGS):
        if abs(r[i] - r[j]) <= rtol * scale and abs(r[p] - r[q]) <= rtol * scale:
            return k
    return None


# ---------------------------------------------------------------------------
# X-states


@dataclass(frozen=True, eq=False)
class XState:
    """X(a, b, c) with a, b real quadruples and c a complex quadruple."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", as_real4(self.a, "a"))
        object.__setattr__(self, "b", as_real4(self.b, "b"))
        object.__setattr__(self, "c", as_cvec4(self.c))

    def to_dense(self) -> np.ndarray:
        return embed(self.a, self.b, self.c)

    def allclose(self, other: "XState", atol: float = 1e-12) -> bool:
        return (
            np.allclose(self.a, other.a, atol=atol)
            and np.allclose(self.b, other.b, atol=atol)
            and np.allclose(self.c, other.c, atol=atol)
        )

    def __repr__(self) -> str:
        return f"XState(a={self.a.tolist()}, b={self.b.tolist()}, c={self.c.tolist()})"


def embed(a: Any, b: Any, c: Any) -> np.ndarray:
    """Dense 8x8 matrix of X(a, b, c)."""
    a = as_real4(a, "a")
    b = as_real4(b, "b")
    c = as_cvec4(c)
    m = np.zeros((8, 8), dtype=complex)
    m[np.arange(4), np.arange(4)] = a
    m[np.arange(4, 8), np.arange(4, 8)] = b[::-1]
    for i in range(4):
        m[i, 7 - i] = c[i]
        m[7 - i, i] = np.conj(c[i])
    return m


def check_dense(m: Any) -> np.ndarray:
    """Validate an 8x8 Hermitian matrix (tolerance 1e-12 relative to max entry)."""
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (8, 8):
        raise ValueError(f"expected an 8x8 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    scale = float(np.max(np.abs(arr))) if arr.size else 0.0
    if np.max(np.abs(arr - arr.conj().T)) > HERMITIAN_TOL * max(scale, 1e-300):
        raise ValueError("matrix is not Hermitian")
    return arr


def xpart(m: Any) -> XState:
    """The X-part: diagonal and anti-diagonal of a Hermitian 8x8 matrix."""
    arr = check_dense(m)
    d = np.real(np.diag(arr))
    c = np.array([arr[i, 7 - i] for i in range(4)])
    return XState(d[:4], d[4:][::-1], c)


def off_x_norm(m: Any) -> float:
    """Largest modulus among entries outside the X pattern."""
    arr = np.asarray(m, dtype=complex)
    mask = np.ones((8, 8), dtype=bool)
    mask[np.arange(8), np.arange(8)] = False
    mask[np.arange(8), 7 - np.arange(8)] = False
    return float(np.max(np.abs(arr[mask])))


def delta(x: XState) -> float:
    """Delta = min{sqrt(a_i b_i), (a1 b2 b3 a4)^(1/4), (b1 a2 a3 b4)^(1/4)}."""
    a, b = x.a, x.b
    if np.any(a < 0) or np.any(b < 0):
        raise NotAStateError("diagonal entries must be nonnegative")
    terms = np.concatenate(
        [
            np.sqrt(a * b),
            [np.sqrt(np.sqrt(a[0] * b[1] * b[2] * a[3])), np.sqrt(np.sqrt(b[0] * a[1] * a[2] * b[3]))],
        ]
    )
    return float(np.min(terms))


def is_state(x: XState) -> bool:
    """2x2 block positivity test: a, b >= 0 and |c_i| <= sqrt(a_i b_i)."""
    if np.any(x.a < 0) or np.any(x.b < 0):
        return False
    return bool(np.all(np.abs(x.c) ** 2 <= x.a * x.b))


@dataclass(frozen=True)
class ProductPhase:
    """Diagonal local unitary diag(1, e^{i tA}) (x) diag(1, e^{i tB}) (x) diag(1, e^{i tC})."""

    angles: tuple[float, float, float]

    def matrix(self) -> np.ndarray:
        out = np.ones((1, 1), dtype=complex)
        for t in self.angles:
            out = np.kron(out, np.diag([1.0, np.exp(1j * t)]))
        return out


def phase_normalize(x: XState) -> tuple[XState, ProductPhase]:
    """Return X(a, b, c') with c' = (|c1|, |c2|, |c3|, |c4| e^{i phi}) and P with P X P* = X(a,b,c')."""
    th = np.angle(x.c)
    phi = phase_difference(x.c)
    r = np.abs(x.c)
    c_new = np.array([r[0], r[1], r[2], r[3] * np.exp(1j * phi)])
    unitary = ProductPhase(
        (
            float((th[1] + th[2]) / 2),
            float((th[0] - th[2]) / 2),
            float((th[0] - th[1]) / 2),
        )
    )
    return XState(x.a.copy(), x.b.copy(), c_new), unitary


# ---------------------------------------------------------------------------
# Symmetries


class SymmetryOp(enum.Enum):
    """Symmetry operations on X-states; permutation members expose ``perm``."""

    P1234 = "<1234>"
    P1324 = "<1324>"
    P4231 = "<4231>"
    P4321 = "<4321>"
    P2143 = "<2143>"
    P2413 = "<2413>"
    P3142 = "<3142>"
    P3412 = "<3412>"
    GAMMA_A = "Gamma_A"
    GAMMA_B = "Gamma_B"
    GAMMA_C = "Gamma_C"
    SWAP_BC = "swap_BC"
    SWAP_AC = "swap_AC"
    SWAP_AB = "swap_AB"

    @property
    def perm(self) -> Optional[tuple[int, int, int, int]]:
        if self.value.startswith("<"):
            return tuple(int(ch) for ch in self.value[1:5])  # type: ignore[return-value]
        return None


PERMUTATIONS: tuple[tuple[int, int, int, int], ...] = tuple(
    op.perm for op in SymmetryOp if op.perm is not None  # type: ignore[misc]
)


def permute(z: Any, perm: Sequence[int]) -> np.ndarray:
    """z^sigma = (z_{sigma(1)}, ..., z_{sigma(4)}) for a 1-based permutation."""
    zz = np.asarray(z)
    return zz[[p - 1 for p in perm]]


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """The permutation with (z^q)^p = z^(compose(p, q))."""
    return tuple(q[p[i] - 1] for i in range(4))


def perm_parity(perm: Sequence[int]) -> int:
    p = [x - 1 for x in perm]
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


def apply_symmetry(x: XState, op: SymmetryOp) -> XState:
    """Image of X(a, b, c) under one of the symmetry operations.

    Permutations act on c; odd ones also reorder a and b by <1324>, matching
    their realization as a B-C swap followed by partial transposes.
    """
    a, b, c = x.a, x.b, x.c
    cc = np.conj(c)
    if op.perm is not None:
        if perm_parity(op.perm) < 0:
            a = a[[0, 2, 1, 3]]
            b = b[[0, 2, 1, 3]]
        return XState(a.copy(), b.copy(), permute(c, op.perm))
    if op is SymmetryOp.GAMMA_C:
        return XState(a.copy(), b.copy(), c[[1, 0, 3, 2]])
    if op is SymmetryOp.GAMMA_B:
        return XState(a.copy(), b.copy(), c[[2, 3, 0, 1]])
    if op is SymmetryOp.GAMMA_A:
        return XState(a.copy(), b.copy(), cc[[3, 2, 1, 0]])
    if op is SymmetryOp.SWAP_BC:
        return XState(a[[0, 2, 1, 3]], b[[0, 2, 1, 3]], c[[0, 2, 1, 3]])
    if op is SymmetryOp.SWAP_AC:
        return XState(
            np.array([a[0], b[3], a[2], b[1]]),
            np.array([b[0], a[3], b[2], a[1]]),
            np.array([c[0], cc[3], c[2], cc[1]]),
        )
    if op is SymmetryOp.SWAP_AB:
        return XState(
            np.array([a[0], a[1], b[3], b[2]]),
            np.array([b[0], b[1], a[3], a[2]]),
            np.array([c[0], c[1], cc[3], cc[2]]),
        )
    raise ValueError(f"unknown symmetry {op!r}")


# ---------------------------------------------------------------------------
# Verdicts


class VerdictKind(str, enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"
    NOT_A_STATE = "NotAState"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Verdict:
    """Outcome of a separability decision together with its evidence.

    ``certificate`` is a z with C(z) * delta < L(rho, z) when entangled.
    """

    kind: VerdictKind
    delta: Optional[float] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    branch: Optional[str] = None
    certificate: Optional[np.ndarray] = None
    margin: Optional[float] = None
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"verdict": self.kind.value}
        for key in ("delta", "lo", "hi", "branch", "margin"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.certificate is not None:
            out["certificate"] = [[float(v.real), float(v.imag)] for v in self.certificate]
        if self.notes:
            out["notes"] = self.notes
        return out


def norms(z: Iterable[complex]) -> tuple[float, float]:
    """(||z||_inf, ||z||_1)."""
    r = np.abs(np.asarray(list(z), dtype=complex))
    return float(r.max()), float(r.sum())

"""Small wave-mechanics checks: de Broglie, local wavelength, eigen-residuals,
Pauli commutators and the Robertson uncertainty bound on two-level states."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

from mpmath import mp, mpc, mpf

from .errors import (
    GridMismatch,
    NonOscillatory,
    NonPositiveInput,
    NotHermitian,
    NotNormalized,
    OutOfRange,
    SameAxis,
    ZeroFunction,
)
from .numeric import ConstantSet, Quantity, real


def de_broglie(p: Quantity, constants: ConstantSet) -> Quantity:
    """Wavelength h/p."""
    if p.magnitude <= 0:
        raise NonPositiveInput("momentum must be positive")
    (h,) = constants.require("h")
    return (h / p).labelled("wavelength")


# --------------------------------------------------------------------------
# sampled functions


@dataclass(frozen=True)
class SampledFunction:
    """Values of f on the uniform grid x_i = x0 + i h."""

    x0: mpf
    h: mpf
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "x0", real(self.x0))
        object.__setattr__(self, "h", real(self.h))
        object.__setattr__(self, "values", tuple(real(v) for v in self.values))
        if len(self.values) < 5:
            raise ValueError("need at least 5 grid points")
        if self.h <= 0:
            raise ValueError("grid step must be positive")

    @classmethod
    def sample(cls, f: Callable[[mpf], mpf], start, stop, h) -> "SampledFunction":
        start, h = real(start), real(h)
        count = int(mp.nint((real(stop) - start) / h)) + 1
        return cls(start, h, [f(start + i * h) for i in range(count)])

    def __len__(self):
        return len(self.values)

    def x(self, i: int) -> mpf:
        return self.x0 + i * self.h

    def index_of(self, x) -> int:
        return int(mp.nint((real(x) - self.x0) / self.h))

    def second_derivative(self, i: int) -> mpf:
        v = self.values
        return (v[i + 1] - 2 * v[i] + v[i - 1]) / self.h**2

    def aligned_with(self, other: "SampledFunction") -> bool:
        return len(self) == len(other) and self.x0 == other.x0 and self.h == other.h


def _tol(shift: int = 5) -> mpf:
    return mpf(10) ** -(mp.dps - shift)


def local_wavelength(f: SampledFunction, x) -> mpf:
    """lambda with lambda^2 = -4 pi^2 f / f'' at the grid node nearest x."""
    i = f.index_of(x)
    if not 1 <= i <= len(f) - 2:
        raise OutOfRange("x must be an interior grid point")
    scale = max(abs(v) for v in f.values)
    value = f.values[i]
    if scale == 0 or abs(value) <= _tol() * scale:
        raise ZeroFunction("f vanishes at x")
    curvature = f.second_derivative(i)
    if curvature == 0 or -value / curvature <= 0:
        raise NonOscillatory("f is not locally oscillatory at x")
    return 2 * mp.pi * mp.sqrt(-value / curvature)


def schrodinger_residual(
    psi: SampledFunction, E: Quantity, V: SampledFunction, m: Quantity, constants: ConstantSet
) -> mpf:
    """max |psi'' + (8 pi^2 m / h^2)(E - V) psi| / max |psi''| over interior nodes.

    Grid coordinates are read in cm and V values in erg, so the coefficient
    is formed from the cgs magnitudes of m, E and h.
    """
    if not psi.aligned_with(V):
        raise GridMismatch("psi and V must share a grid")
    (h,) = constants.require("h")
    coeff = 8 * mp.pi**2 * m.to("g") / h.to("g.cm2.s-1") ** 2
    energy = E.to("erg")
    worst = mpf(0)
    scale = mpf(0)
    for i in range(1, len(psi) - 1):
        d2 = psi.second_derivative(i)
        worst = max(worst, abs(d2 + coeff * (energy - V.values[i]) * psi.values[i]))
        scale = max(scale, abs(d2))
    if scale == 0:
        warnings.warn("residual of a function with vanishing second derivative", stacklevel=2)
        return mpf(0)
    return worst / scale


# --------------------------------------------------------------------------
# two-level algebra


@dataclass(frozen=True)
class C2Matrix:
    a: mpc
    b: mpc
    c: mpc
    d: mpc

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, mpc(getattr(self, name)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "C2Matrix":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __matmul__(self, o: "C2Matrix") -> "C2Matrix":
        return C2Matrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __add__(self, o):
        return C2Matrix(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o):
        return C2Matrix(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __mul__(self, s):
        s = mpc(s)
        return C2Matrix(self.a * s, self.b * s, self.c * s, self.d * s)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def dagger(self) -> "C2Matrix":
        return C2Matrix(mp.conj(self.a), mp.conj(self.c), mp.conj(self.b), mp.conj(self.d))

    def max_abs_diff(self, o: "C2Matrix") -> mpf:
        return max(abs(x - y) for x, y in zip(self.entries, o.entries))

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def is_hermitian(self, tol=None) -> bool:
        tol = _tol() if tol is None else tol
        scale = max([mpf(1)] + [abs(x) for x in self.entries])
        return self.max_abs_diff(self.dagger()) <= tol * scale

    def apply(self, s: "C2State") -> tuple[mpc, mpc]:
        return (self.a * s.up + self.b * s.down, self.c * s.up + self.d * s.down)


IDENTITY = C2Matrix(1, 0, 0, 1)
SIGMA = {
    "x": C2Matrix(0, 1, 1, 0),
    "y": C2Matrix(0, mpc(0, -1), mpc(0, 1), 0),
    "z": C2Matrix(1, 0, 0, -1),
}
_CYCLE = ("x", "y", "z")


def commutator(A: C2Matrix, B: C2Matrix) -> C2Matrix:
    return A @ B - B @ A


def pauli_commutator(i: str, j: str) -> C2Matrix:
    if i == j:
        raise SameAxis(f"[sigma_{i}, sigma_{i}] is trivially zero")
    return commutator(SIGMA[i], SIGMA[j])


def levi_civita_partner(i: str, j: str) -> tuple[str, int]:
    """The third axis k and the sign of (i j k) as a permutation of (x y z)."""
    if i == j:
        raise SameAxis("axes must differ")
    (k,) = set(_CYCLE) - {i, j}
    sign = 1 if (_CYCLE.index(j) - _CYCLE.index(i)) % 3 == 1 else -1
    return k, sign


def spin_matrix(axis: str, hbar=1) -> C2Matrix:
    return SIGMA[axis] * (real(hbar) / 2)


@dataclass(frozen=True)
class C2State:
    up: mpc
    down: mpc

    def __post_init__(self):
        object.__setattr__(self, "up", mpc(self.up))
        object.__setattr__(self, "down", mpc(self.down))

    @property
    def norm(self) -> mpf:
        return mp.sqrt(abs(self.up) ** 2 + abs(self.down) ** 2)

    def normalized(self) -> "C2State":
        n = self.norm
        return C2State(self.up / n, self.down / n)

    def expect(self, A: C2Matrix) -> mpc:
        u, d = A.apply(self)
        return mp.conj(self.up) * u + mp.conj(self.down) * d


def uncertainty_bound(state: C2State, A: C2Matrix, B: C2Matrix) -> tuple[mpf, mpf]:
    """(Delta A * Delta B, |<[A, B]>| / 2) on ``state``."""
    for M in (A, B):
        if not M.is_hermitian():
            raise NotHermitian("observable is not hermitian")
    if abs(state.norm - 1) > _tol():
        raise NotNormalized(f"state norm is {mp.nstr(state.norm, 10)}")

    def spread(M):
        mean = state.expect(M).real
        var = state.expect(M @ M).real - mean**2
        return mp.sqrt(max(var, mpf(0)))

    lhs = spread(A) * spread(B)
    rhs = abs(state.expect(commutator(A, B))) / 2
    return lhs, rhs

"""Modular group: exact integer matrices, reduction to the fundamental domain,
the region {Re z >= -1/2, |z+1| >= 1}, first-letter classification in the
free-product structure, and both forms of the multiplier symbol.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegeneracyError, DomainError
from .sl2 import HalfPlanePoint

_ITER_CAP = 100_000
_CIRCLE_TOL = 1e-12


@dataclass(frozen=True)
class IntMat2:
    """Integer (a b; c d) with a*d - b*c = 1 exactly."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"integer matrix {self.entries()} has determinant != 1")

    def __matmul__(self, other: "IntMat2") -> "IntMat2":
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inv(self) -> "IntMat2":
        return IntMat2(self.d, -self.b, -self.c, self.a)

    def neg(self) -> "IntMat2":
        return IntMat2(-self.a, -self.b, -self.c, -self.d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def canonical_sign(self) -> "IntMat2":
        """Resolve the +-gamma ambiguity: c > 0, or c = 0 and a > 0."""
        if self.c > 0 or (self.c == 0 and self.a > 0):
            return self
        return self.neg()

    def to_real(self):
        from .sl2 import RealMat2

        return RealMat2(float(self.a), float(self.b), float(self.c), float(self.d))


I2 = IntMat2(1, 0, 0, 1)
S_MAT = IntMat2(0, -1, 1, 0)
T_MAT = IntMat2(1, 1, 0, 1)
R_MAT = S_MAT @ T_MAT  # (0,-1;1,1), order 3 up to sign
R2_MAT = R_MAT @ R_MAT
S_INV = S_MAT.inv()  # (0,1;-1,0) = -S
R_INV = R_MAT.inv()  # (1,1;-1,0) = -R^2


def t_power(n: int) -> IntMat2:
    return IntMat2(1, n, 0, 1)


class Letter(enum.Enum):
    IDENTITY = "IDENTITY"
    S_PREFIX = "S_PREFIX"
    R_PREFIX = "R_PREFIX"


@dataclass(frozen=True)
class ReducedPoint:
    gamma: IntMat2
    z0: HalfPlanePoint


def reduce_to_fundamental_domain(z: HalfPlanePoint) -> ReducedPoint:
    """Write z = rho_gamma(z0) with z0 in the fundamental domain.

    Classical translate/invert loop. Boundary conventions: Re z0 in [-1/2, 1/2)
    (half-open, enforced by the floor-based translation) and on the unit circle
    the representative with Re <= 0 is preferred. gamma is sign-canonicalized.
    """
    x, y = z.x, z.y
    g = I2
    for _ in range(_ITER_CAP):
        n = int(math.floor(x + 0.5))
        if n != 0:
            x -= n
            g = g @ t_power(n)
        rr = x * x + y * y
        if rr < 1.0 - _CIRCLE_TOL:
            x, y = -x / rr, y / rr
            g = g @ S_INV
        else:
            break
    else:
        raise DegeneracyError("fundamental-domain reduction did not stabilize")
    rr = x * x + y * y
    if rr < 1.0 + _CIRCLE_TOL and x > 0.0:
        # on the circle boundary: flip to the Re <= 0 representative
        x, y = -x / rr, y / rr
        g = g @ S_INV
    return ReducedPoint(gamma=g.canonical_sign(), z0=HalfPlanePoint(x, y))


def in_region_A(z: HalfPlanePoint) -> bool:
    """Membership in {Re z >= -1/2} intersect {|z+1| >= 1}, tolerance 1e-12."""
    if z.x < -0.5 - 1e-12:
        return False
    dx = z.x + 1.0
    return dx * dx + z.y * z.y >= 1.0 - 1e-12


def _probe_in_region_A(gamma: IntMat2) -> bool:
    """Exact-integer membership test for rho_gamma(2i).

    rho_gamma(2i) = (N + 2i)/D with N = b*d + 4*a*c and D = d^2 + 4*c^2.
    Re >= -1/2 becomes 2N + D >= 0; |z+1| >= 1 becomes (N+D)^2 + 4 >= D^2,
    i.e. D <= 2 or |N+D| >= D. Both boundary equalities are impossible over
    the integers (parity resp. perfect-square obstructions), so the strict
    and non-strict comparisons coincide and the test is exact.
    """
    a, b, c, d = gamma.entries()
    n = b * d + 4 * a * c
    dd = d * d + 4 * c * c
    if 2 * n + dd < 0:
        return False
    return dd <= 2 or abs(n + dd) >= dd


def first_letter(gamma: IntMat2) -> Letter:
    """IDENTITY for +-I; else S_PREFIX iff rho_gamma(2i) lies in the region
    {Re >= -1/2, |z+1| >= 1}; else R_PREFIX.

    The probe 2i is interior to the fundamental domain, and every tile lies
    wholly inside the region or its complement, so the classification is
    unambiguous.
    """
    if gamma.b == 0 and gamma.c == 0:
        return Letter.IDENTITY
    return Letter.S_PREFIX if _probe_in_region_A(gamma) else Letter.R_PREFIX


def word_decompose(gamma: IntMat2) -> tuple[int, tuple[str, ...]]:
    """Reduced free-product word: gamma = sign * product of letters in
    {"S", "R", "R2"}, exact in integer arithmetic.

    Greedy strip: classify the leading letter geometrically, remove it with
    the exact inverse, repeat. An R-power is R^2 exactly when one R-strip
    leaves another leading R.
    """
    letters: list[str] = []
    g = gamma
    for _ in range(_ITER_CAP):
        fl = first_letter(g)
        if fl is Letter.IDENTITY:
            sign = 1 if g.a > 0 else -1
            return sign, tuple(letters)
        if fl is Letter.S_PREFIX:
            letters.append("S")
            g = S_INV @ g
        else:
            g = R_INV @ g
            if first_letter(g) is Letter.R_PREFIX:
                g = R_INV @ g
                letters.append("R2")
            else:
                letters.append("R")
    raise DegeneracyError("word decomposition exceeded the iteration cap")


def enumerate_elements(max_letters: int) -> list[IntMat2]:
    """All distinct products of at most max_letters factors from {S, R, R^2},
    deduplicated up to sign; includes the identity. Deterministic order."""
    if max_letters < 0:
        raise DomainError("need max_letters >= 0")
    letters = (S_MAT, R_MAT, R2_MAT)
    start = I2.canonical_sign()
    seen: dict[tuple[int, int, int, int], IntMat2] = {start.entries(): start}
    frontier = [start]
    for _ in range(max_letters):
        nxt: list[IntMat2] = []
        for g in frontier:
            for letter in letters:
                h = (g @ letter).canonical_sign()
                key = h.entries()
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
        if not nxt:
            break
        frontier = nxt
    return list(seen.values())


LETTER_MATRICES = {"S": S_MAT, "R": R_MAT, "R2": R2_MAT}


def word_compose(sign: int, word: tuple[str, ...]) -> IntMat2:
    """Exact product of the word letters times the sign; inverse of word_decompose."""
    g = I2
    for w in word:
        g = g @ LETTER_MATRICES[w]
    return g if sign == 1 else g.neg()


def symbol_m_word(gamma: IntMat2) -> float:
    """1 on words beginning with +-S or +-I, 0 on words beginning with +-R."""
    return 0.0 if first_letter(gamma) is Letter.R_PREFIX else 1.0


def symbol_m_sign(gamma: IntMat2) -> int:
    """sgn(a*c + b*d), exact."""
    v = gamma.a * gamma.c + gamma.b * gamma.d
    return (v > 0) - (v < 0)

"""Exact arithmetic: rationals, a real quadratic field Q(sqrt(d)), and
lattice linear algebra in Z^3.

Everything here is pure and exact; floats never enter any decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Scalar = Union[int, Fraction, "QuadNumber"]
Vec3 = Tuple[Scalar, Scalar, Scalar]

DEFAULT_DISCRIMINANT = 2


class DegenerateInput(ValueError):
    """Input violates a geometric precondition (zero/parallel vectors...)."""


class SearchExhausted(RuntimeError):
    """A bounded lattice search ran out of candidates."""


def _is_square_free(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class QuadNumber:
    """Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).

    d is a square-free integer >= 2, fixed per value; mixing discriminants
    raises TypeError.  Sign decisions compare a^2 against d*b^2 exactly.
    """

    rat: Fraction
    irr: Fraction
    d: int = DEFAULT_DISCRIMINANT

    def __post_init__(self):
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "irr", Fraction(self.irr))
        if not _is_square_free(self.d):
            raise ValueError(f"discriminant must be square-free >= 2, got {self.d}")

    def _coerce(self, other) -> "QuadNumber":
        if isinstance(other, QuadNumber):
            if other.d != self.d:
                raise TypeError(f"mixed discriminants {self.d} and {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNumber(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNumber(self.rat + o.rat, self.irr + o.irr, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.rat, -self.irr, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNumber(self.rat - o.rat, self.irr - o.irr, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadNumber(
            self.rat * o.rat + self.d * self.irr * o.irr,
            self.rat * o.irr + self.irr * o.rat,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadNumber":
        norm = self.rat * self.rat - self.d * self.irr * self.irr
        if norm == 0:
            raise ZeroDivisionError("zero has no inverse in Q(sqrt(d))")
        return QuadNumber(self.rat / norm, -self.irr / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def is_rational(self) -> bool:
        return self.irr == 0

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d) by case analysis; no floats."""
        a, b = self.rat, self.irr
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Mixed signs: compare a^2 with d*b^2 (equality impossible: sqrt(d)
        # irrational and a, b nonzero).
        lhs, rhs = a * a, self.d * b * b
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.rat == o.rat and self.irr == o.irr

    def __hash__(self):
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr, self.d))

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def __float__(self):
        # Presentation only (SVG coordinates); never used in decisions.
        return float(self.rat) + float(self.irr) * math.sqrt(self.d)

    def __repr__(self):
        return f"QuadNumber({self.rat} + {self.irr}*sqrt({self.d}))"


def quad(rat, irr=0, d: int = DEFAULT_DISCRIMINANT) -> QuadNumber:
    return QuadNumber(Fraction(rat), Fraction(irr), d)


def sign_of(x: Scalar) -> int:
    if isinstance(x, QuadNumber):
        return x.sign()
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Vectors in Z^3 (plain tuples), and over Q / Q(sqrt(d)).
# ---------------------------------------------------------------------------


def vec_add(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def vec_sub(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def vec_neg(u: Vec3) -> Vec3:
    return (-u[0], -u[1], -u[2])


def vec_scale(c: Scalar, u: Vec3) -> Vec3:
    return (c * u[0], c * u[1], c * u[2])


def dot(u: Vec3, v: Vec3):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Vec3, v: Vec3) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(u: Vec3, v: Vec3, w: Vec3):
    """Exact determinant of the 3x3 matrix with columns u, v, w."""
    return dot(cross(u, v), w)


def content(u: Sequence[int]) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    g = 0
    for x in u:
        g = math.gcd(g, abs(x))
    return g


def is_primitive(u: Sequence[int]) -> bool:
    return content(u) == 1


def primitive_part(u: Vec3) -> Vec3:
    """Divide an integer vector by the gcd of its coordinates, keeping sign."""
    g = content(u)
    if g == 0:
        raise DegenerateInput("zero vector has no primitive part")
    return (u[0] // g, u[1] // g, u[2] // g)


def cross_primitive(u: Vec3, v: Vec3) -> Vec3:
    """Primitive vector along u x v; error if u, v are parallel."""
    c = cross(u, v)
    if c == (0, 0, 0):
        raise DegenerateInput(f"parallel vectors {u}, {v}")
    return primitive_part(c)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_dot_one(v: Vec3) -> Vec3:
    """Integer w with v . w = 1, for primitive v (extended gcd over coords)."""
    g01, x, y = _xgcd(v[0], v[1])
    g, s, t = _xgcd(g01, v[2])
    if g != 1:
        raise DegenerateInput(f"vector {v} is not primitive")
    return (x * s, y * s, t)


def plane_lattice_basis(v0: Vec3) -> Tuple[Vec3, Vec3]:
    """Basis (u1, u2) of the rank-2 lattice Z^3 ∩ v0-perp, oriented so that
    det3(u1, u2, v0) > 0.  v0 must be primitive and nonzero.

    Hermite-style column reduction of the relation row (v0 . x = 0).
    """
    if v0 == (0, 0, 0):
        raise DegenerateInput("zero vector")
    if not is_primitive(v0):
        raise DegenerateInput(f"{v0} is not primitive")
    cols = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    vals = [v0[0], v0[1], v0[2]]
    while sum(1 for x in vals if x != 0) > 1:
        nz = [i for i, x in enumerate(vals) if x != 0]
        j = min(nz, key=lambda i: abs(vals[i]))
        i = next(i for i in nz if i != j)
        q = vals[i] // vals[j]
        vals[i] -= q * vals[j]
        cols[i] = vec_sub(cols[i], vec_scale(q, cols[j]))
    pivot = next(i for i, x in enumerate(vals) if x != 0)
    basis = [cols[i] for i in range(3) if i != pivot]
    u1, u2 = basis
    if det3(u1, u2, v0) < 0:
        u1, u2 = u2, u1
    return u1, u2


def lattice_complement(v0: Vec3) -> Vec3:
    """Integer m with v0 . m = 1; (u1, u2, m) is then a basis of Z^3."""
    return solve_dot_one(v0)


# ---------------------------------------------------------------------------
# Delzant witnesses.
# ---------------------------------------------------------------------------


def is_delzant_pair(n: Vec3, np: Vec3) -> bool:
    """True iff some integer l has det3(n, np, l) = 1 (pair extends to a
    Z-basis); equivalently the three 2x2 minors of (n, np) are coprime."""
    c = cross(n, np)
    return content(c) == 1


def delzant_witness(n: Vec3, np: Vec3) -> Optional[Vec3]:
    """Integer l with det3(n, np, l) = 1, canonicalized to the minimal-norm
    representative modulo the lattice spanned by n, np (ties: lexicographic).
    None when the pair is not Delzant."""
    if not (is_primitive(n) and is_primitive(np)):
        raise DegenerateInput("delzant_witness requires primitive inputs")
    c = cross(n, np)
    if c == (0, 0, 0):
        raise DegenerateInput(f"parallel normals {n}, {np}")
    if content(c) != 1:
        return None
    l0 = solve_dot_one(c)
    # Reduce l0 modulo span_Z(n, np): solve the real coefficients of l0 in
    # the (n, np, c)-frame and scan a small neighborhood of the rounding.
    denom = dot(c, c)
    a_num = det3(l0, np, c)
    b_num = det3(n, l0, c)
    a0 = round(Fraction(a_num, denom))
    b0 = round(Fraction(b_num, denom))
    best = None
    for da in range(-2, 3):
        for db in range(-2, 3):
            cand = vec_sub(l0, vec_add(vec_scale(a0 + da, n), vec_scale(b0 + db, np)))
            key = (dot(cand, cand), cand)
            if best is None or key < best[0]:
                best = (key, cand)
    l = best[1]
    assert det3(n, np, l) == 1
    return l


# ---------------------------------------------------------------------------
# 3x3 integer matrices (tuples of rows).
# ---------------------------------------------------------------------------

Mat3 = Tuple[Tuple[int, int, int], Tuple[int, int, int], Tuple[int, int, int]]


def mat_from_columns(c1: Vec3, c2: Vec3, c3: Vec3) -> Mat3:
    return tuple(zip(c1, c2, c3))


def mat_columns(m: Mat3) -> Tuple[Vec3, Vec3, Vec3]:
    return tuple(zip(*m))


def mat_det(m: Mat3):
    c1, c2, c3 = mat_columns(m)
    return det3(c1, c2, c3)


def mat_mul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_vec(a: Mat3, v: Vec3) -> Vec3:
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))


def mat_transpose(a: Mat3) -> Mat3:
    return tuple(zip(*a))


def mat_adjugate(m: Mat3) -> Mat3:
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            sub = [
                [m[r][c] for c in range(3) if c != j] for r in range(3) if r != i
            ]
            minor = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
            cof[i][j] = (-1) ** (i + j) * minor
    return tuple(tuple(cof[j][i] for j in range(3)) for i in range(3))


def mat_inverse_unimodular(m: Mat3) -> Mat3:
    d = mat_det(m)
    if d not in (1, -1):
        raise DegenerateInput(f"matrix determinant {d} is not +-1")
    adj = mat_adjugate(m)
    if d == 1:
        return adj
    return tuple(tuple(-x for x in row) for row in adj)


def is_unimodular(m: Mat3) -> bool:
    return mat_det(m) in (1, -1)


# ---------------------------------------------------------------------------
# Primes in arithmetic progressions (Dirichlet searches stay exact).
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for desk-scale integers (< 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class NoProgression(ValueError):
    """gcd(a, m) != 1: the progression contains at most one prime."""


def prime_in_progression(a: int, m: int, lower: int) -> int:
    """Smallest prime p >= lower with p ≡ a (mod m); requires gcd(a, m) = 1."""
    if m <= 0:
        raise ValueError("modulus must be positive")
    if math.gcd(a, m) != 1:
        raise NoProgression(f"gcd({a}, {m}) != 1")
    r = a % m
    p = max(lower, 2)
    p += (r - p) % m
    while not is_prime(p):
        p += m
    return p

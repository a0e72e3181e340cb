"""Dirichlet characters mod p and exact cyclotomic-integer arithmetic.

A character is a single exponent index k with chi(g) = zeta^k for the
context's canonical generator g, where zeta = exp(2 pi i/(p-1)). Values of
character sums live in CycInt: an integer coefficient vector over the
powers of zeta, added and multiplied exactly, with no canonical reduction
during accumulation. Equality and magnitude questions are settled by
abs_compare, which escalates double -> extended precision -> an exact
reduction by the cyclotomic polynomial, so strict inequalities are decided
soundly even at genuine ties.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import mpmath
import numpy as np

from .core_arith import PrimeContext
from .errors import IndexOutOfRange, OrderMismatch

# ---------------------------------------------------------------------------
# polynomial helpers for cyclotomic reduction


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Quotient of a by monic-leading b; remainder must vanish."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c, rem = divmod(a[i + len(b) - 1], lead)
        if rem:
            raise ArithmeticError("non-exact polynomial division")
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree.

    Built from the Moebius product over divisors of n: multiply the
    (x^d - 1) factors with mu(n/d) = 1, then exact-divide by those with
    mu(n/d) = -1.
    """
    num = [1]
    dens: list[int] = []
    for d in _divisors(n):
        mu = _moebius(n // d)
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _poly_mul(num, factor)
        elif mu == -1:
            dens.append(d)
    for d in dens:
        num = _poly_divexact(num, [-1] + [0] * (d - 1) + [1])
    return tuple(num)


def _reduce_mod_cyclotomic(coeffs: tuple[int, ...], order: int) -> tuple[int, ...]:
    phi = cyclotomic_coeffs(order)
    deg = len(phi) - 1
    r = list(coeffs)
    for i in range(len(r) - 1, deg - 1, -1):
        c = r[i]
        if c:
            base = i - deg
            for j in range(deg + 1):
                r[base + j] -= c * phi[j]
    return tuple(r[:deg])


def _cyclic_convolve(a: tuple[int, ...], b: tuple[int, ...], n: int) -> tuple[int, ...]:
    out = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[(i + j) % n] += ai * bj
    return tuple(out)


# ---------------------------------------------------------------------------
# exact values


@dataclass(frozen=True)
class UnityOrZero:
    """Exact value of chi(r): zero, or the root of unity zeta^exponent."""

    order: int
    exponent: int | None  # None encodes zero

    @classmethod
    def zero(cls, order: int) -> "UnityOrZero":
        return cls(order, None)

    @classmethod
    def root(cls, order: int, exponent: int) -> "UnityOrZero":
        return cls(order, exponent % order)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __mul__(self, other: "UnityOrZero") -> "UnityOrZero":
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")
        if self.exponent is None or other.exponent is None:
            return UnityOrZero.zero(self.order)
        return UnityOrZero.root(self.order, self.exponent + other.exponent)

    def conjugate(self) -> "UnityOrZero":
        if self.exponent is None:
            return self
        return UnityOrZero.root(self.order, -self.exponent)

    def value(self) -> complex:
        if self.exponent is None:
            return 0j
        return complex(np.exp(2j * np.pi * self.exponent / self.order))


_ROOT_CACHE: dict[int, np.ndarray] = {}


def _roots(order: int) -> np.ndarray:
    table = _ROOT_CACHE.get(order)
    if table is None:
        table = np.exp(2j * np.pi * np.arange(order) / order)
        _ROOT_CACHE[order] = table
    return table


@dataclass(frozen=True)
class CycInt:
    """Element of Z[zeta_order] as the coefficient vector of 1..zeta^{order-1}.

    The representation is deliberately non-canonical: sums accumulate by
    bumping coefficients and multiplication is plain cyclic convolution.
    Canonical form (reduction mod the cyclotomic polynomial) is computed
    only where equality must be decided.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.order:
            raise OrderMismatch(
                f"coefficient vector length {len(self.coeffs)} != order {self.order}"
            )

    @classmethod
    def zero(cls, order: int) -> "CycInt":
        return cls(order, (0,) * order)

    @classmethod
    def one(cls, order: int) -> "CycInt":
        return cls.from_exponent(order, 0)

    @classmethod
    def from_exponent(cls, order: int, e: int, weight: int = 1) -> "CycInt":
        c = [0] * order
        c[e % order] = weight
        return cls(order, tuple(c))

    @classmethod
    def from_int(cls, order: int, value: int) -> "CycInt":
        return cls.from_exponent(order, 0, value)

    @classmethod
    def from_unity(cls, u: UnityOrZero) -> "CycInt":
        if u.exponent is None:
            return cls.zero(u.order)
        return cls.from_exponent(u.order, u.exponent)

    def _check(self, other: "CycInt") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.order, _cyclic_convolve(self.coeffs, other.coeffs, self.order))

    def scale(self, m: int) -> "CycInt":
        return CycInt(self.order, tuple(m * a for a in self.coeffs))

    def shift(self, e: int) -> "CycInt":
        """Multiplication by zeta^e: a cyclic shift of the coefficients."""
        n = self.order
        e %= n
        return CycInt(n, self.coeffs[n - e :] + self.coeffs[: n - e])

    def conjugate(self) -> "CycInt":
        n = self.order
        return CycInt(n, tuple(self.coeffs[(-j) % n] for j in range(n)))

    def canonical(self) -> tuple[int, ...]:
        """Coefficients reduced mod the cyclotomic polynomial; unique."""
        return _reduce_mod_cyclotomic(self.coeffs, self.order)

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def equals(self, other: "CycInt") -> bool:
        self._check(other)
        return (self - other).is_zero()

    def coeff_l1(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def embed(self) -> complex:
        """Numeric value under zeta -> exp(2 pi i/order), double precision.

        Raises OverflowError when coefficients exceed float range; the
        comparison ladder catches that and escalates.
        """
        n = self.order
        roots = _roots(n)
        return complex(sum(float(c) * roots[j] for j, c in enumerate(self.coeffs) if c))

    def embed_mpc(self, bits: int) -> mpmath.mpc:
        with mpmath.workprec(bits):
            total = mpmath.mpc(0)
            n = self.order
            for j, c in enumerate(self.coeffs):
                if c:
                    total += c * mpmath.expjpi(mpmath.mpf(2 * j) / n)
            return total


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def cyc_sub(a: CycInt, b: CycInt) -> CycInt:
    return a - b


def cyc_shift_mul(a: CycInt, b: "CycInt | int") -> CycInt:
    """Multiply by another CycInt, or by zeta^e when b is an exponent."""
    if isinstance(b, CycInt):
        return a * b
    return a.shift(b)


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True, eq=False)
class Character:
    """Dirichlet character mod ctx.p with chi(g) = zeta_{p-1}^k."""

    ctx: PrimeContext
    k: int

    @property
    def order(self) -> int:
        return self.ctx.order

    @property
    def is_principal(self) -> bool:
        return self.k == 0

    @property
    def parity(self) -> str:
        """'even' when chi(-1) = 1, else 'odd'."""
        return "even" if self(self.ctx.p - 1).exponent == 0 else "odd"

    def __call__(self, r: int) -> UnityOrZero:
        p = self.ctx.p
        r %= p
        if r == 0:
            return UnityOrZero.zero(self.order)
        return UnityOrZero.root(self.order, self.k * self.ctx.dlog[r])

    @property
    def name(self) -> str:
        return f"p={self.ctx.p} k={self.k} (chi(g)=zeta^k, g={self.ctx.g})"

    @property
    def label(self) -> str:
        """Exponential-form label, e.g. chi(2)=e^{20pi i/36}."""
        return f"chi({self.ctx.g})=e^{{{2 * self.k}pi i/{self.order}}}"


def character(ctx: PrimeContext, k: int) -> Character:
    if not 0 <= k < ctx.order:
        raise IndexOutOfRange(f"k={k} outside [0, {ctx.order})")
    return Character(ctx, k)


def evaluate(chi: Character, r: int) -> UnityOrZero:
    return chi(r)


def conjugate(chi: Character) -> Character:
    return Character(chi.ctx, (-chi.k) % chi.order)


def group(ctx: PrimeContext) -> list[Character]:
    """All p-1 characters in index order, principal first."""
    return [Character(ctx, k) for k in range(ctx.order)]


# ---------------------------------------------------------------------------
# magnitude comparison with precision escalation


class Comparison(Enum):
    LESS = "Less"
    GREATER = "Greater"
    EQUAL = "Equal"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class PrecisionPolicy:
    """Escalation ladder for |embed| comparisons.

    Stage 53 is the native double path with `double_tol` as the relative
    gap below which it refuses to decide; higher entries are mpmath
    working precisions in bits. After the ladder is exhausted the
    comparison falls back to an exact cyclotomic norm test.
    """

    double_tol: float = 1e-9
    ladder: tuple[int, ...] = (53, 128, 256)

    @classmethod
    def from_env(cls) -> "PrecisionPolicy":
        raw = os.environ.get("PASCALCHAR_PRECISION")
        if not raw:
            return cls()
        bits = tuple(int(tok) for tok in raw.split(",") if tok.strip())
        if not bits:
            return cls()
        return cls(ladder=bits)


def _mp_abs_and_err(x: CycInt, bits: int) -> tuple[float, float]:
    # error bound: order terms, each rounded at 2^-bits relative, scaled by
    # the coefficient mass; generous constant keeps the bound rigorous.
    val = x.embed_mpc(bits)
    with mpmath.workprec(bits):
        mag = float(mpmath.fabs(val))
    err = float((x.coeff_l1() + 1) * x.order) * 2.0 ** (6 - bits)
    return mag, err


def abs_compare(a: CycInt, b: CycInt, policy: PrecisionPolicy | None = None) -> Comparison:
    """Compare |embed(a)| with |embed(b)|, escalating precision as needed.

    Returns EQUAL only on a proven tie (exact norm difference reduces to
    zero); UNDECIDED when a nonzero difference cannot be resolved at the
    top of the ladder.
    """
    if a.order != b.order:
        raise OrderMismatch(f"orders {a.order} and {b.order}")
    if policy is None:
        policy = PrecisionPolicy.from_env()

    for bits in policy.ladder:
        if bits <= 53:
            try:
                da, db = abs(a.embed()), abs(b.embed())
                # rounding floor: coefficient mass can exceed the embedded
                # value by many orders, cancelling double precision to noise
                floor = float((a.coeff_l1() + b.coeff_l1() + 2) * a.order) * 2.0**-48
            except OverflowError:
                continue
            if not (math.isfinite(da) and math.isfinite(db)):
                continue
            scale = max(1.0, da, db)
            if abs(da - db) > max(policy.double_tol * scale, floor):
                return Comparison.GREATER if da > db else Comparison.LESS
        else:
            da, ea = _mp_abs_and_err(a, bits)
            db, eb = _mp_abs_and_err(b, bits)
            if abs(da - db) > ea + eb:
                return Comparison.GREATER if da > db else Comparison.LESS

    diff = a * a.conjugate() - b * b.conjugate()
    if diff.is_zero():
        return Comparison.EQUAL
    bits = max(policy.ladder[-1], 64)
    val = diff.embed_mpc(bits)
    with mpmath.workprec(bits):
        real = float(mpmath.re(val))
    err = float((diff.coeff_l1() + 1) * diff.order) * 2.0 ** (6 - bits)
    if abs(real) > err:
        return Comparison.GREATER if real > 0 else Comparison.LESS
    return Comparison.UNDECIDED

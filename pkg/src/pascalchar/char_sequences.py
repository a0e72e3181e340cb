"""Character-twisted row sums over Pascal's triangle mod p.

T(n) sums chi over the entries of row n; phi(n) sums T over all rows
below n. Both are fully determined by the first p rows: T is a digitwise
product over the base-p digits of n, and phi obeys a two-term recursion
in the leading digit. Everything here stays exact (CycInt coefficient
vectors, arbitrary-size integers); numeric embeddings happen only at the
reporting edge or inside the guarded fast path of A_count_formula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import Character, CycInt, _cyclic_convolve, _roots, group
from .core_arith import ROW_ORACLE_LIMIT, PrimeContext, to_digits
from .errors import IndexOutOfRange, IntegralityViolation, LimitExceeded


@dataclass(frozen=True, eq=False)
class FundamentalTables:
    """Exact T and phi values over the first p rows for one character.

    T_table[b] = T(b) for 0 <= b < p; phi_table[m] = phi(m) for
    0 <= m <= p. These two vectors drive every larger evaluation.
    """

    chi: Character
    T_table: tuple[CycInt, ...]
    phi_table: tuple[CycInt, ...]

    @property
    def p(self) -> int:
        return self.chi.ctx.p

    @property
    def phi_p(self) -> CycInt:
        return self.phi_table[self.p]


def build_tables(chi: Character) -> FundamentalTables:
    ctx = chi.ctx
    p, n = ctx.p, max(ctx.order, 1)
    hist = ctx.row_dlog_hist
    # chi maps discrete log e to exponent (k*e) mod order; scatter the
    # per-row histograms along that index map, accumulating collisions.
    idx = (chi.k * np.arange(n)) % n
    coeff = np.zeros((p, n), dtype=np.int64)
    np.add.at(coeff, (slice(None), idx), hist)
    order = ctx.order
    T_table = tuple(CycInt(order, tuple(int(c) for c in coeff[b])) for b in range(p))
    prefix = np.zeros((p + 1, n), dtype=np.int64)
    np.cumsum(coeff, axis=0, out=prefix[1:])
    phi_table = tuple(CycInt(order, tuple(int(c) for c in prefix[m])) for m in range(p + 1))
    return FundamentalTables(chi, T_table, phi_table)


def T_chi(n: int, tables: FundamentalTables) -> CycInt:
    """Row sum at n: the product of T over the base-p digits of n."""
    if n < 0:
        raise IndexOutOfRange(f"n={n} negative")
    out = CycInt.one(tables.chi.order)
    for d in to_digits(n, tables.p).digits:
        out = out * tables.T_table[d]
    return out


def phi_chi(n: int, tables: FundamentalTables) -> CycInt:
    """Cumulative sum of T over rows 0..n-1, by the leading-digit recursion.

    Scanning digits most-significant first with state (Phi, T) equal to
    (phi(prefix), T(prefix)): appending digit d sends the prefix m to
    m*p + d, and phi(m*p + d) = phi(m)*phi(p) + T(m)*phi(d).
    """
    if n < 0:
        raise IndexOutOfRange(f"n={n} negative")
    phi_p = tables.phi_p
    acc = CycInt.zero(tables.chi.order)
    t = CycInt.one(tables.chi.order)
    for d in reversed(to_digits(n, tables.p).digits):
        acc = acc * phi_p + t * tables.phi_table[d]
        t = t * tables.T_table[d]
    return acc


@dataclass(frozen=True)
class CountVector:
    """Occurrence counts per residue 0..p-1 over rows 0..n-1."""

    counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, r: int) -> int:
        return self.counts[r]

    @property
    def total(self) -> int:
        return sum(self.counts)


def a_row(n: int, ctx: PrimeContext) -> CountVector:
    """Residue counts within the single row n, exactly.

    Nonzero entries factor through base-p digits, so their discrete-log
    distribution is the cyclic convolution of the per-digit histograms;
    the zero count is what remains of the n+1 entries.
    """
    if n < 0:
        raise IndexOutOfRange(f"n={n} negative")
    p = ctx.p
    n_exp = max(ctx.order, 1)
    digits = to_digits(n, p).digits
    hist = ctx.row_dlog_hist
    acc = tuple(int(c) for c in hist[digits[0]])
    nonzero = digits[0] + 1
    for d in digits[1:]:
        acc = _cyclic_convolve(acc, tuple(int(c) for c in hist[d]), n_exp)
        nonzero *= d + 1
    counts = [n + 1 - nonzero] + [0] * (p - 1)
    for r in range(1, p):
        counts[r] = acc[ctx.dlog[r] % n_exp]
    return CountVector(tuple(counts))


def A_count_bruteforce(n: int, ctx: PrimeContext, limit: int = ROW_ORACLE_LIMIT) -> CountVector:
    """Oracle: tally residues over rows 0..n-1 by the additive recurrence.

    Deliberately independent of a_row and of the character formula; used
    to cross-check both. Costs O(n^2) and refuses n beyond `limit`.
    """
    if n < 0:
        raise IndexOutOfRange(f"n={n} negative")
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds brute-force limit {limit}")
    p = ctx.p
    counts = np.zeros(p, dtype=np.int64)
    row = np.zeros(n + 1, dtype=np.int64)
    row[0] = 1
    for u in range(n):
        counts += np.bincount(row[: u + 1], minlength=p)
        row[1 : u + 2] += row[: u + 1].copy()
        row %= p
    return CountVector(tuple(int(c) for c in counts))


def _phi_all_characters(n: int, ctx: PrimeContext) -> list[CycInt]:
    return [phi_chi(n, build_tables(chi)) for chi in group(ctx)]


def _exact_count(phis: list[CycInt], ctx: PrimeContext, r: int) -> int:
    n_chars = ctx.order
    total = CycInt.zero(n_chars)
    e = ctx.dlog[r % ctx.p]
    for k, phi in enumerate(phis):
        total = total + phi.shift(-k * e)
    reduced = total.canonical()
    if any(reduced[1:]) or reduced[0] % n_chars or reduced[0] < 0:
        raise IntegralityViolation(
            f"character sum for r={r} does not reduce to a nonnegative multiple of {n_chars}"
        )
    return reduced[0] // n_chars


def A_count_formula(
    n: int,
    r: int,
    ctx: PrimeContext,
    guard: float = 1e-6,
    _phis: list[CycInt] | None = None,
) -> int:
    """Count occurrences of residue r in rows 0..n-1 via the character sum.

    A(r) = (1/(p-1)) * sum over all characters of conj(chi)(r) * phi(n).
    The double-precision path is accepted only when the imaginary part
    and the distance to the nearest integer both stay under `guard`;
    otherwise the same sum is redone in exact cyclotomic arithmetic.
    """
    p = ctx.p
    if not 1 <= r % p <= p - 1:
        raise IndexOutOfRange(f"r={r} is divisible by p={p}")
    phis = _phis if _phis is not None else _phi_all_characters(n, ctx)
    n_chars = ctx.order
    roots = _roots(max(n_chars, 1))
    e = ctx.dlog[r % p]
    try:
        # doubles are only trusted when their rounding floor (driven by the
        # coefficient mass, which can dwarf the embedded values) is under
        # the guard; otherwise the exact path decides
        floor = float(sum(phi.coeff_l1() for phi in phis) + n_chars + 1) * 2.0**-46
        if floor < guard:
            val = sum(
                roots[(-k * e) % n_chars] * phi.embed() for k, phi in enumerate(phis)
            ) / n_chars
            nearest = round(val.real)
            if abs(val.imag) < guard and abs(val.real - nearest) < guard and nearest >= 0:
                return int(nearest)
    except OverflowError:
        pass
    return _exact_count(phis, ctx, r)


def A_count_formula_all(n: int, ctx: PrimeContext, guard: float = 1e-6) -> CountVector:
    """Counts for every residue at once, sharing the per-character phi values.

    The zero count is recovered by conservation: rows 0..n-1 hold
    n(n+1)/2 entries in total.
    """
    p = ctx.p
    phis = _phi_all_characters(n, ctx)
    counts = [0] * p
    for r in range(1, p):
        counts[r] = A_count_formula(n, r, ctx, guard=guard, _phis=phis)
    counts[0] = n * (n + 1) // 2 - sum(counts[1:])
    return CountVector(tuple(counts))

"""Growth exponents, band maxima, and upper bounds for phi.

For a character with phi(p) != 0 the growth exponent is
theta = log_p(phi(p)); band maxima alpha_k track |phi(n)|/n^Re(theta)
over p-adic size bands, and psi(x) = phi(n)/n^theta extends to rationals
with p-power denominator through the exact scale invariance
psi(p*x) = psi(x). The bound report checks the quadratic trivial bound,
a square-root-saving bound assembled from per-column Weil inequalities,
and those column inequalities themselves.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .char_sequences import FundamentalTables, build_tables, phi_chi
from .characters import Character, Comparison, CycInt, PrecisionPolicy, abs_compare, character
from .classification import Verdict, classify
from .core_arith import is_prime, make_context
from .errors import LimitExceeded, NotPrime, NotRowDominant, UndefinedTheta, WeilViolation

ALPHA_WORK_LIMIT = 10**7
_SWEEP_CHUNK = 1 << 19


def _mpc_parts(x: CycInt, bits: int) -> tuple[float, float, float, int]:
    """(re, im, |value|, error exponent) of the embedding at `bits` precision.

    The error exponent bounds log2 of the absolute rounding error; callers
    accept the value once its magnitude clears that floor with room to
    spare, otherwise they escalate.
    """
    v = x.embed_mpc(bits)
    with mpmath.workprec(bits):
        mag = float(mpmath.fabs(v))
        re, im = float(v.real), float(v.imag)
    err_exp = (x.coeff_l1() + 1).bit_length() + x.order.bit_length() + 7 - bits
    return re, im, mag, err_exp


def _embed_value(x: CycInt) -> complex:
    """embed(x) at whatever precision the coefficient mass demands.

    Canonical coefficients of long products carry l1 mass far above the
    embedded modulus, so any fixed precision can cancel to pure noise;
    keep doubling the working precision until the magnitude separates
    from the rounding floor, or certify an exact zero.
    """
    l1 = x.coeff_l1()
    if l1 == 0:
        return 0j
    try:
        v = x.embed()
        if cmath.isfinite(v) and abs(v) > float((l1 + 1) * x.order) * 2.0**-48:
            return v
    except OverflowError:
        pass
    bits = max(128, l1.bit_length() + 64)
    for _ in range(12):
        re, im, mag, err_exp = _mpc_parts(x, bits)
        if mag > 0.0 and math.log2(mag) > err_exp + 6:
            return complex(re, im)
        if x.is_zero():
            return 0j
        bits *= 2
    return complex(re, im)


def _abs_embed(x: CycInt) -> float:
    return abs(_embed_value(x))


@dataclass(frozen=True)
class GrowthProfile:
    """Exponents governing |phi(n)| growth for one character.

    omega = -log_p(q) capped at 1; it is positive exactly when the
    character is row-regular (q < 1), and the sign is kept when q >= 1
    rather than clamped away, since a nonpositive omega is the signal
    that the decay argument fails.
    """

    p: int
    k: int
    theta: complex
    rho: float
    q: float
    omega: float
    abs_phi: float
    max_abs_T: float


def growth_profile(
    chi: Character,
    tables: FundamentalTables | None = None,
    policy: PrecisionPolicy | None = None,
) -> GrowthProfile:
    if tables is None:
        tables = build_tables(chi)
    p = chi.ctx.p
    phi_p = tables.phi_p
    if abs_compare(phi_p, CycInt.zero(phi_p.order), policy) is not Comparison.GREATER:
        raise UndefinedTheta(f"phi(p) for p={p}, k={chi.k} is zero or unresolvably small")
    val = phi_p.embed()
    lp = math.log(p)
    theta = cmath.log(val) / lp
    # exact zeros of T contribute -inf to the exponent max and can never
    # attain it, because T(0) = 1 keeps the max at least 0
    max_t = max(abs(t.embed()) for t in tables.T_table)
    abs_phi = abs(val)
    q = max_t / abs_phi
    return GrowthProfile(
        p=p,
        k=chi.k,
        theta=theta,
        rho=math.log(max_t) / lp,
        q=q,
        omega=min(1.0, -math.log(q) / lp),
        abs_phi=abs_phi,
        max_abs_T=max_t,
    )


# ---------------------------------------------------------------------------
# band sweeps


def _ratio_sweep_max(
    lo: int,
    hi: int,
    sigma: float,
    p: int,
    t_emb: np.ndarray,
    f_emb: np.ndarray,
) -> tuple[float, int]:
    """Max of |phi(n)|/n^sigma over lo <= n <= hi, with an argmax.

    Evaluates phi for a whole chunk of n at once: the digit recursion
    runs over digit positions (a fixed, small count) with elementwise
    complex vectors, so the cost is O(digits * chunk).
    """
    f_p = f_emb[p]
    ndigits = 1
    while p**ndigits <= hi:
        ndigits += 1
    best = -math.inf
    best_n = lo
    for start in range(lo, hi + 1, _SWEEP_CHUNK):
        ns = np.arange(start, min(start + _SWEEP_CHUNK - 1, hi) + 1, dtype=np.int64)
        acc = np.zeros(len(ns), dtype=np.complex128)
        t = np.ones(len(ns), dtype=np.complex128)
        for j in range(ndigits - 1, -1, -1):
            d = (ns // p**j) % p
            acc = acc * f_p + t * f_emb[d]
            t = t * t_emb[d]
        ratios = np.abs(acc) / ns.astype(np.float64) ** sigma
        i = int(np.argmax(ratios))
        if ratios[i] > best:
            best = float(ratios[i])
            best_n = int(ns[i])
    return best, best_n


def _embed_tables(tables: FundamentalTables) -> tuple[np.ndarray, np.ndarray]:
    t_emb = np.array([t.embed() for t in tables.T_table], dtype=np.complex128)
    f_emb = np.array([f.embed() for f in tables.phi_table], dtype=np.complex128)
    return t_emb, f_emb


@dataclass(frozen=True)
class AlphaSequence:
    """Band maxima alpha_k = max |phi(n)/n^theta| over p^{k-1} < n <= p^k."""

    p: int
    k: int
    re_theta: float
    alphas: tuple[float, ...]


def alpha_sequence(
    chi: Character,
    k_max: int,
    limit: int = ALPHA_WORK_LIMIT,
    tables: FundamentalTables | None = None,
) -> AlphaSequence:
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    p = chi.ctx.p
    if p**k_max > limit:
        raise LimitExceeded(f"p^k_max = {p**k_max} exceeds sweep limit {limit}")
    if tables is None:
        tables = build_tables(chi)
    sigma = growth_profile(chi, tables).theta.real
    t_emb, f_emb = _embed_tables(tables)
    alphas = []
    for k in range(1, k_max + 1):
        lo = p ** (k - 1) + 1
        hi = p**k
        alphas.append(_ratio_sweep_max(lo, hi, sigma, p, t_emb, f_emb)[0])
    return AlphaSequence(p=p, k=chi.k, re_theta=sigma, alphas=tuple(alphas))


def sup_ratio(
    chi: Character,
    exponent: float,
    n_max: int,
    limit: int = ALPHA_WORK_LIMIT,
    tables: FundamentalTables | None = None,
) -> tuple[float, int]:
    """Max of |phi(n)|/n^exponent over 1 < n <= n_max, with its argmax."""
    if n_max > limit:
        raise LimitExceeded(f"n_max = {n_max} exceeds sweep limit {limit}")
    if tables is None:
        tables = build_tables(chi)
    t_emb, f_emb = _embed_tables(tables)
    return _ratio_sweep_max(2, n_max, exponent, chi.ctx.p, t_emb, f_emb)


@dataclass(frozen=True)
class BoundedGrowthReport:
    """Sweep evidence that |phi(n)|/n^{rho+eps} stays bounded.

    hypothesis_ok records whether |phi(p)| <= p^{rho+eps}, the premise
    the decay argument needs; when it fails the sweep result is still
    reported but carries no weight.
    """

    p: int
    k: int
    eps: float
    rho: float
    hypothesis_ok: bool
    sup: float
    arg_n: int


def bounded_growth_check(
    chi: Character, eps: float = 0.05, n_max: int = 10**6
) -> BoundedGrowthReport:
    tables = build_tables(chi)
    profile = growth_profile(chi, tables)
    exponent = profile.rho + eps
    hypothesis_ok = profile.abs_phi <= chi.ctx.p**exponent
    sup, arg = sup_ratio(chi, exponent, n_max, limit=max(n_max, ALPHA_WORK_LIMIT), tables=tables)
    return BoundedGrowthReport(
        p=chi.ctx.p,
        k=chi.k,
        eps=eps,
        rho=profile.rho,
        hypothesis_ok=hypothesis_ok,
        sup=sup,
        arg_n=arg,
    )


# ---------------------------------------------------------------------------
# normalized limit function


def psi(
    x: "Fraction | int",
    chi: Character,
    tables: FundamentalTables | None = None,
) -> complex:
    """phi(n)/n^theta extended to positive rationals n/p^j.

    The scale invariance psi(p*x) = psi(x) is applied exactly: the
    p-power denominator is dropped and all factors of p are stripped
    from the numerator, so equal inputs up to p-powers evaluate phi at
    the same integer.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"x={x} must be positive")
    p = chi.ctx.p
    den = x.denominator
    while den % p == 0:
        den //= p
    if den != 1:
        raise ValueError(f"denominator of x={x} is not a power of p={p}")
    m = x.numerator
    while m % p == 0:
        m //= p
    if tables is None:
        tables = build_tables(chi)
    theta = growth_profile(chi, tables).theta
    if m == 1:
        return complex(1.0)
    val = _embed_value(phi_chi(m, tables))
    return val / cmath.exp(theta * math.log(m))


# ---------------------------------------------------------------------------
# unboundedness certificate for row-dominant characters


def row_dominant_witness(
    chi: Character,
    k_max: int,
    policy: PrecisionPolicy | None = None,
) -> list[tuple[int, int, float]]:
    """Certificate rows (k, n_k, ratio) exhibiting super-theta growth.

    n_k is the k-digit repdigit of the witness b. The ratio column is
    (|phi(n_k)| + |phi(n_k + 1)|) / (p^k)^{Re theta}: the two phi values
    differ by exactly T(b)^k, so their combined size, normalized at the
    theta rate, grows at least like (|T(b)|/|phi(p)|)^k > 1.
    """
    record = classify(chi, policy)
    if record.verdict is not Verdict.ROW_DOMINANT:
        raise NotRowDominant(
            f"p={record.p} k={record.k} classified {record.verdict.value}"
        )
    b = record.witness_b
    tables = build_tables(chi)
    sigma = growth_profile(chi, tables).theta.real
    p = chi.ctx.p
    phi_p, phi_b, t_b = tables.phi_p, tables.phi_table[b], tables.T_table[b]
    rows: list[tuple[int, int, float]] = []
    acc = CycInt.zero(chi.order)
    t = CycInt.one(chi.order)
    n_k = 0
    for k in range(1, k_max + 1):
        acc = acc * phi_p + t * phi_b
        t = t * t_b
        n_k = n_k * p + b
        ratio = (_abs_embed(acc) + _abs_embed(acc + t)) / p ** (k * sigma)
        rows.append((k, n_k, ratio))
    return rows


# ---------------------------------------------------------------------------
# bounds on |phi(p)|


@dataclass(frozen=True)
class BoundReport:
    """Trivial and square-root-saving bounds vs the observed maximum.

    weil = (weil_A + weil_B*sqrt(p))/2 with integer halves kept exact:
    with s = floor(sqrt(p)), weil_A = p^2 - 2ps + p + s^2 + s and
    weil_B = s^2 + s - 2.
    """

    p: int
    trivial: int
    weil_A: int
    weil_B: int
    weil: float
    weil_simple: float
    max_abs_phi: float
    columns_checked: int


def bound_report(p: int, weil_slack: float = 1e-7) -> BoundReport:
    """Evaluate all bounds at p and verify the per-column inequalities.

    For every nonprincipal character and every column 2 <= n <= floor(sqrt(p)),
    |sum over m < p of chi(C(m, n))| must be at most n*sqrt(p); a failure
    raises WeilViolation since it can only mean a computation bug.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p < 3:
        raise ValueError("bound report needs p >= 3")
    ctx = make_context(p)
    n_chars = ctx.order
    roots = ctx.roots
    base = np.arange(n_chars)
    totals = ctx.row_dlog_hist.sum(axis=0).astype(np.float64)
    max_abs_phi = 0.0
    for k in range(1, n_chars):
        max_abs_phi = max(max_abs_phi, abs(complex(roots[(k * base) % n_chars] @ totals)))
    s = math.isqrt(p)
    weil_A = p * p - 2 * p * s + p + s * s + s
    weil_B = s * s + s - 2
    rp = math.sqrt(p)
    weil = (weil_A + weil_B * rp) / 2.0
    weil_simple = (p * p - p * rp + 5 * p - rp) / 2.0
    columns = 0
    for col in range(2, s + 1):
        hist = np.zeros(n_chars, dtype=np.float64)
        for m in range(col, p):
            hist[ctx.dlog[ctx.fd_rows[m][col]]] += 1.0
        limit = col * rp + weil_slack * p
        for k in range(1, n_chars):
            val = abs(complex(roots[(k * base) % n_chars] @ hist))
            if val > limit:
                raise WeilViolation(
                    f"p={p} column {col} character k={k}: |sum|={val} > {col}*sqrt(p)"
                )
        columns += 1
    return BoundReport(
        p=p,
        trivial=p * (p + 1) // 2,
        weil_A=weil_A,
        weil_B=weil_B,
        weil=weil,
        weil_simple=weil_simple,
        max_abs_phi=max_abs_phi,
        columns_checked=columns,
    )


# ---------------------------------------------------------------------------
# aggregate exponent for counting asymptotics


@dataclass(frozen=True)
class VarthetaReport:
    """Both candidate aggregate exponents, not adjudicated.

    value is max over nonprincipal characters of Re(theta) joined with
    1 + eps; max_rho_plus_eps is the alternative built from the
    single-row exponent rho. Characters with phi(p) = 0 contribute
    nothing (effectively -inf).
    """

    p: int
    eps: float
    value: float
    max_re_theta: float
    max_rho_plus_eps: float
    skipped: int


def vartheta_report(p: int, eps: float, policy: PrecisionPolicy | None = None) -> VarthetaReport:
    if eps <= 0:
        raise ValueError("eps must be positive")
    ctx = make_context(p)
    re_thetas: list[float] = []
    rhos: list[float] = []
    skipped = 0
    for k in range(1, ctx.order):
        try:
            profile = growth_profile(character(ctx, k), policy=policy)
        except UndefinedTheta:
            skipped += 1
            continue
        re_thetas.append(profile.theta.real)
        rhos.append(profile.rho)
    max_re = max(re_thetas, default=-math.inf)
    max_rho = max(rhos, default=-math.inf)
    return VarthetaReport(
        p=p,
        eps=eps,
        value=max(max_re, 1.0 + eps),
        max_re_theta=max_re,
        max_rho_plus_eps=max_rho + eps,
        skipped=skipped,
    )


def vartheta(p: int, eps: float, policy: PrecisionPolicy | None = None) -> float:
    return vartheta_report(p, eps, policy).value


# ---------------------------------------------------------------------------
# convergence of the counting ratio


def convergence_ratio(
    p: int,
    r: int,
    k_max: int,
    scale: float = 1.0,
) -> list[tuple[int, int, int, int, float]]:
    """Rows (k, n, A, phi, ratio) with n = floor(scale * p^k).

    ratio = A_n(r)*(p-1)/phi_0(n) where phi_0 counts the nonzero entries
    of rows 0..n-1; it should drift toward 1 as n grows. scale = 1 walks
    the prime powers themselves; other scales probe between them.
    """
    from .char_sequences import A_count_formula

    ctx = make_context(p)
    tables0 = build_tables(character(ctx, 0))
    frac = Fraction(scale)
    out: list[tuple[int, int, int, int, float]] = []
    for k in range(0, k_max + 1):
        n = int(frac * p**k)
        if n < 1:
            continue
        a = A_count_formula(n, r, ctx)
        phi0 = phi_chi(n, tables0).coeffs[0]
        ratio = float(Fraction(a * (p - 1), phi0))
        out.append((k, n, a, phi0, ratio))
    return out


# ---------------------------------------------------------------------------
# CSV writers


def write_alpha_csv(seq: AlphaSequence, profile: GrowthProfile, path: str) -> None:
    """Rows k, alpha_k, step delta, and the geometric step bound.

    delta at row k is alpha_k - alpha_{k-1}; bound_delta is
    |phi(p)| * alpha_1 * q^{k-1}, the proven ceiling for that step.
    First row leaves both blank.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "alpha_k", "delta", "bound_delta"])
        for i, a in enumerate(seq.alphas):
            k = i + 1
            if i == 0:
                w.writerow([k, f"{a:.15g}", "", ""])
            else:
                delta = a - seq.alphas[i - 1]
                bound = profile.abs_phi * seq.alphas[0] * profile.q ** (k - 1)
                w.writerow([k, f"{a:.15g}", f"{delta:.15g}", f"{bound:.15g}"])


def write_convergence_csv(rows: list[tuple[int, int, int, int, float]], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "n", "A", "phi", "ratio"])
        for k, n, a, phi0, ratio in rows:
            w.writerow([k, n, a, phi0, f"{ratio:.15g}"])


def write_bound_csv(report: BoundReport, path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "trivial", "weil", "weil_simple", "max_abs_phi"])
        w.writerow(
            [
                report.p,
                report.trivial,
                f"{report.weil:.15g}",
                f"{report.weil_simple:.15g}",
                f"{report.max_abs_phi:.15g}",
            ]
        )

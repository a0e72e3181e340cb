"""Row-regular / row-dominant classification of characters.

A character is row-regular when every single-row sum |T(b)| over the
first p rows stays strictly below the block total |phi(p)|, row-dominant
when some row strictly beats the total, and on the boundary when the
best row exactly ties it. The scan runs a double-precision sweep over
all characters of every prime up to a bound, then re-derives every
near-tie exactly so no verdict rests on floating point alone.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .char_sequences import build_tables
from .characters import Character, Comparison, CycInt, PrecisionPolicy, abs_compare, character
from .core_arith import is_prime, make_context

# double-sweep prefilter: flag a character for exact classification when
# max |T(b)| comes within this relative margin of |phi(p)|. The sweep's
# rounding error is ~ p^2 * eps per accumulated sum, orders of magnitude
# below this margin for p up to 10^4.
PREFILTER_MARGIN = 1e-6


class Verdict(Enum):
    ROW_REGULAR = "RowRegular"
    ROW_DOMINANT = "RowDominant"
    BOUNDARY = "Boundary"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class ClassificationRecord:
    """Verdict plus the exact values that justify it."""

    p: int
    k: int
    label: str
    parity: str
    phi_p: CycInt
    phi_value: complex
    abs_phi: float
    max_T_b: int
    max_T: CycInt
    max_T_abs: float
    verdict: Verdict
    witness_b: int | None


def classify(chi: Character, policy: PrecisionPolicy | None = None) -> ClassificationRecord:
    """Compare every |T(b)| against |phi(p)| with escalation at near-ties.

    The verdict is RowDominant as soon as one b is proven strictly
    greater; Undecided only when no b is proven greater and at least one
    comparison exhausted the precision ladder.
    """
    tables = build_tables(chi)
    p = chi.ctx.p
    phi_p = tables.phi_p
    abs_T = [abs(t.embed()) for t in tables.T_table]
    max_T_b = int(np.argmax(abs_T))
    greater: list[int] = []
    equal: list[int] = []
    undecided: list[int] = []
    for b in range(p):
        comp = abs_compare(tables.T_table[b], phi_p, policy)
        if comp is Comparison.GREATER:
            greater.append(b)
        elif comp is Comparison.EQUAL:
            equal.append(b)
        elif comp is Comparison.UNDECIDED:
            undecided.append(b)
    if greater:
        verdict = Verdict.ROW_DOMINANT
        witness = max(greater, key=lambda b: abs_T[b])
    elif undecided:
        verdict = Verdict.UNDECIDED
        witness = None
    elif equal:
        verdict = Verdict.BOUNDARY
        witness = equal[0]
    else:
        verdict = Verdict.ROW_REGULAR
        witness = None
    return ClassificationRecord(
        p=p,
        k=chi.k,
        label=chi.label,
        parity=chi.parity,
        phi_p=phi_p,
        phi_value=phi_p.embed(),
        abs_phi=abs(phi_p.embed()),
        max_T_b=max_T_b,
        max_T=tables.T_table[max_T_b],
        max_T_abs=abs_T[max_T_b],
        verdict=verdict,
        witness_b=witness,
    )


def _scan_prime(p: int, policy: PrecisionPolicy | None) -> list[ClassificationRecord]:
    """All non-row-regular records for one prime, representative k only.

    Conjugate characters have conjugate T and phi values, hence identical
    magnitudes and verdicts, so only k <= (p-1)/2 is examined and the
    records come out ordered by k.
    """
    ctx = make_context(p)
    n = ctx.order
    if n < 2:
        return []
    hist_t = ctx.row_dlog_hist.T.astype(np.float64)  # (n, p)
    roots = ctx.roots
    base = np.arange(n)
    out: list[ClassificationRecord] = []
    for k in range(1, n // 2 + 1):
        idx = (k * base) % n
        coeff = np.zeros((n, p))
        np.add.at(coeff, idx, hist_t)
        t_vals = roots @ coeff
        abs_t = np.abs(t_vals)
        max_t = float(abs_t.max())
        abs_phi = float(abs(t_vals.sum()))
        margin = PREFILTER_MARGIN * max(1.0, abs_phi, max_t)
        if max_t >= abs_phi - margin:
            rec = classify(character(ctx, k), policy)
            if rec.verdict is not Verdict.ROW_REGULAR:
                out.append(rec)
    return out


def scan(
    p_max: int, jobs: int = 1, policy: PrecisionPolicy | None = None
) -> list[ClassificationRecord]:
    """Classify all characters for primes p <= p_max; keep non-row-regular.

    Output is deterministically ordered by (p, k) with one representative
    per conjugate pair (the smaller exponent index), independent of jobs.
    """
    primes = [p for p in range(2, p_max + 1) if is_prime(p)]
    if jobs <= 1:
        batches = [_scan_prime(p, policy) for p in primes]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(_scan_prime, primes, [policy] * len(primes)))
    return [rec for batch in batches for rec in batch]


def write_classification_csv(records: list[ClassificationRecord], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            [
                "p", "k", "paper_label", "parity", "re_phi", "im_phi",
                "abs_phi", "max_T_b", "max_T_abs", "verdict",
            ]
        )
        for r in records:
            w.writerow(
                [
                    r.p, r.k, r.label, r.parity,
                    f"{r.phi_value.real:.15g}", f"{r.phi_value.imag:.15g}",
                    f"{r.abs_phi:.15g}", r.max_T_b, f"{r.max_T_abs:.15g}",
                    r.verdict.value,
                ]
            )


def format_scan_table(records: list[ClassificationRecord]) -> str:
    """Two-column text table: prime | labels of its non-row-regular characters."""
    by_p: dict[int, list[ClassificationRecord]] = {}
    for r in records:
        by_p.setdefault(r.p, []).append(r)
    lines = [f"{'p':>5}  non-row-regular characters"]
    for p in sorted(by_p):
        labels = ", ".join(
            f"{r.label} [{r.verdict.value}]" for r in sorted(by_p[p], key=lambda r: r.k)
        )
        lines.append(f"{p:>5}  {labels}")
    if len(lines) == 1:
        lines.append("  (none)")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# scatter of normalized block totals


def fundamental_scatter(p_max: int) -> list[tuple[int, int, str, float, float]]:
    """One row (p, k, parity, re, im) of phi(p)/p per nonprincipal character."""
    rows: list[tuple[int, int, str, float, float]] = []
    for p in range(3, p_max + 1):
        if not is_prime(p):
            continue
        ctx = make_context(p)
        n = ctx.order
        totals = ctx.row_dlog_hist.sum(axis=0).astype(np.float64)  # counts per dlog
        roots = ctx.roots
        base = np.arange(n)
        for k in range(1, n):
            val = complex(roots[(k * base) % n] @ totals)
            parity = "even" if k % 2 == 0 else "odd"
            rows.append((p, k, parity, val.real / p, val.imag / p))
    return rows


def write_scatter_csv(rows: list[tuple[int, int, str, float, float]], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["p", "k", "parity", "re_phi_over_p", "im_phi_over_p"])
        for p, k, parity, re, im in rows:
            w.writerow([p, k, parity, f"{re:.15g}", f"{im:.15g}"])


# ---------------------------------------------------------------------------
# parity-cluster means


@dataclass(frozen=True)
class MeanReport:
    """Means of phi(p) over even and odd nonprincipal characters."""

    p: int
    mu_even: complex
    mu_odd: complex

    @property
    def ratio_even(self) -> float:
        return self.mu_even.real / self.p

    @property
    def ratio_odd(self) -> float:
        return self.mu_odd.real / self.p


def mean_report(p: int) -> MeanReport:
    ctx = make_context(p)
    n = ctx.order
    totals = ctx.row_dlog_hist.sum(axis=0).astype(np.float64)
    roots = ctx.roots
    base = np.arange(n)
    even: list[complex] = []
    odd: list[complex] = []
    for k in range(1, n):
        val = complex(roots[(k * base) % n] @ totals)
        (even if k % 2 == 0 else odd).append(val)
    mu_even = sum(even) / len(even) if even else 0j
    mu_odd = sum(odd) / len(odd) if odd else 0j
    return MeanReport(p=p, mu_even=mu_even, mu_odd=mu_odd)


def write_means_csv(reports: list[MeanReport], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(
            ["p", "re_mu_even", "im_mu_even", "re_mu_odd", "im_mu_odd", "ratio_even", "ratio_odd"]
        )
        for r in reports:
            w.writerow(
                [
                    r.p,
                    f"{r.mu_even.real:.15g}", f"{r.mu_even.imag:.15g}",
                    f"{r.mu_odd.real:.15g}", f"{r.mu_odd.imag:.15g}",
                    f"{r.ratio_even:.15g}", f"{r.ratio_odd:.15g}",
                ]
            )


def timed_scan(p_max: int, jobs: int = 1) -> tuple[list[ClassificationRecord], float]:
    start = time.perf_counter()
    records = scan(p_max, jobs=jobs)
    return records, time.perf_counter() - start

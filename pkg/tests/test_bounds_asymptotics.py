"""Growth exponents, band maxima, psi, witness certificates, and bounds."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath
import pytest

from pascalchar.bounds_asymptotics import (
    _abs_embed,
    _embed_value,
    alpha_sequence,
    bound_report,
    bounded_growth_check,
    convergence_ratio,
    growth_profile,
    psi,
    row_dominant_witness,
    sup_ratio,
    vartheta,
    vartheta_report,
)
from pascalchar.characters import CycInt, character
from pascalchar.core_arith import make_context
from pascalchar.errors import LimitExceeded, NotPrime, NotRowDominant

_37_12 = 37**12


def test_growth_profile_principal(contexts):
    # chi_0 gives T(b) = b+1 and phi(p) = p(p+1)/2, so q = 2/(p+1)
    for p in (3, 5, 7, 13):
        prof = growth_profile(character(contexts[p], 0))
        assert prof.abs_phi == pytest.approx(p * (p + 1) / 2, rel=1e-12)
        assert prof.q == pytest.approx(2 / (p + 1), rel=1e-12)
        assert prof.theta.imag == pytest.approx(0.0, abs=1e-12)
        assert prof.theta.real == pytest.approx(math.log(p * (p + 1) / 2) / math.log(p), rel=1e-12)
        assert prof.max_abs_T == pytest.approx(float(p), rel=1e-12)
        assert prof.rho == pytest.approx(1.0, rel=1e-12)
        assert 0 < prof.omega <= 1


def test_growth_profile_row_dominant_has_negative_omega(ctx37):
    prof = growth_profile(character(ctx37, 10))
    assert prof.q > 1
    assert prof.omega < 0
    assert prof.abs_phi == pytest.approx(33.876926902327896, rel=1e-12)
    assert prof.max_abs_T == pytest.approx(37.0, rel=1e-12)


def test_alpha_sequence_golden_and_invariants(contexts):
    seq = alpha_sequence(character(contexts[5], 1), 6)
    expected = [
        1.22668690829452,
        1.28504273988781,
        1.30199359405658,
        1.31510105431167,
        1.31510105431167,
        1.31574878822911,
    ]
    assert list(seq.alphas) == pytest.approx(expected, rel=1e-10)
    for a, b in zip(seq.alphas, seq.alphas[1:]):
        assert b >= a - 1e-12  # nondecreasing by definition of nested maxima


def test_alpha_sequence_steps_shrink_geometrically(contexts):
    for p, k in ((3, 1), (5, 2), (7, 3)):
        chi = character(contexts[p], k)
        prof = growth_profile(chi)
        seq = alpha_sequence(chi, 6)
        for i in range(1, len(seq.alphas)):
            delta = seq.alphas[i] - seq.alphas[i - 1]
            bound = prof.abs_phi * seq.alphas[0] * prof.q ** i
            assert delta <= bound + 1e-12


def test_alpha_sequence_limit_guard(contexts):
    with pytest.raises(LimitExceeded):
        alpha_sequence(character(contexts[7], 1), 12)
    with pytest.raises(ValueError):
        alpha_sequence(character(contexts[7], 1), 0)
    seq = alpha_sequence(character(contexts[7], 1), 9, limit=7**9)
    assert len(seq.alphas) == 9


def test_sup_ratio_consistent_with_alpha(contexts):
    chi = character(contexts[5], 1)
    prof = growth_profile(chi)
    seq = alpha_sequence(chi, 4)
    sup, arg = sup_ratio(chi, prof.theta.real, 5**4)
    assert sup == pytest.approx(max(seq.alphas), rel=1e-12)
    assert 2 <= arg <= 5**4


def test_psi_prime_powers_are_exactly_one(contexts):
    chi = character(contexts[5], 2)
    for x in (1, 5, 5**4, Fraction(1, 5), Fraction(1, 125)):
        assert psi(x, chi) == 1.0 + 0j


def test_psi_scale_invariance_exact(contexts):
    chi = character(contexts[7], 1)
    base = psi(11, chi)
    assert psi(Fraction(11, 7), chi) == base
    assert psi(11 * 7, chi) == base
    assert psi(11 * 7**3, chi) == base


def test_psi_rejects_bad_inputs(contexts):
    chi = character(contexts[5], 1)
    with pytest.raises(ValueError):
        psi(Fraction(1, 3), chi)
    with pytest.raises(ValueError):
        psi(0, chi)
    with pytest.raises(ValueError):
        psi(Fraction(-2, 5), chi)


def test_psi_continuity_probe(contexts):
    # approach x = 2 through x_b = 2 + p^-b; the gap should shrink
    chi = character(contexts[5], 1)
    target = psi(2, chi)
    gaps = []
    for b in (2, 4, 6):
        x = Fraction(2) + Fraction(1, 5**b)
        gaps.append(abs(psi(x, chi) - target))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_row_dominant_witness_golden(ctx37):
    rows = row_dominant_witness(character(ctx37, 10), 40)
    assert [k for k, _, _ in rows] == list(range(1, 41))
    n1 = rows[0][1]
    assert n1 == 36
    assert rows[1][1] == 36 * 37 + 36
    ratios = [r for _, _, r in rows]
    assert ratios[1] == pytest.approx(1.271398, abs=1e-5)
    assert ratios[39] == pytest.approx(35.971604, abs=1e-4)
    for a, b in zip(ratios, ratios[1:]):
        assert b > a  # strictly increasing certificate


def test_row_dominant_witness_closed_form(ctx37):
    # with b = p-1 the certificate collapses to 1 + |1 - w^k| for
    # w = T(b)/phi(p), since phi(n_k) = phi(p)^k - T(b)^k exactly
    from pascalchar.char_sequences import build_tables

    chi = character(ctx37, 10)
    tables = build_tables(chi)
    w = tables.T_table[36].embed() / tables.phi_p.embed()
    rows = row_dominant_witness(chi, 25)
    for k in (2, 12, 25):
        expected = 1.0 + abs(1.0 - w**k)
        assert rows[k - 1][2] == pytest.approx(expected, rel=1e-6)


def test_row_dominant_witness_rejects_row_regular(contexts):
    with pytest.raises(NotRowDominant):
        row_dominant_witness(character(contexts[5], 1), 5)


def test_embed_value_survives_catastrophic_cancellation(ctx37):
    # phi(p)^12 - 37^12 has coefficient mass ~1e34 but value ~5e18;
    # a double embed of the difference is pure rounding noise
    from pascalchar.char_sequences import build_tables

    tables = build_tables(character(ctx37, 10))
    diff = tables.phi_p
    for _ in range(11):
        diff = diff * tables.phi_p
    diff = diff + CycInt.from_int(36, -_37_12)
    got = _embed_value(diff)
    with mpmath.workprec(400):
        z = mpmath.expjpi(mpmath.mpf(2) / 36)
        acc = mpmath.mpc(0)
        for e, c in enumerate(diff.canonical()):
            acc += int(c) * z**e
        want = complex(float(acc.real), float(acc.imag))
    assert got.real == pytest.approx(want.real, rel=1e-9)
    assert got.imag == pytest.approx(want.imag, rel=1e-9)
    assert _abs_embed(diff) == pytest.approx(abs(want), rel=1e-9)


def test_embed_value_exact_zero(ctx37):
    x = CycInt.from_int(36, 5) + CycInt.from_int(36, -5)
    assert _embed_value(x) == 0j


def test_bound_report_golden_37():
    rep = bound_report(37)
    assert rep.trivial == 703
    assert (rep.weil_A, rep.weil_B) == (1004, 40)
    assert rep.weil == pytest.approx(623.655250605964, rel=1e-12)
    assert rep.weil_simple == pytest.approx(661.427511924334, rel=1e-12)
    assert rep.max_abs_phi == pytest.approx(143.815854480652, rel=1e-10)
    assert rep.columns_checked == 5
    assert rep.max_abs_phi < rep.weil < rep.weil_simple < rep.trivial


def test_bound_report_ordering_small_primes():
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 53):
        rep = bound_report(p)
        assert rep.max_abs_phi < rep.trivial
        # weil bound touches the max exactly at p=3, hence <=
        assert rep.max_abs_phi <= rep.weil + 1e-9
        assert rep.weil <= rep.trivial


def test_bound_report_p3_equality():
    rep = bound_report(3)
    assert rep.weil == pytest.approx(4.0, abs=1e-12)
    assert rep.max_abs_phi == pytest.approx(4.0, abs=1e-12)


def test_bound_report_rejects_bad_p():
    with pytest.raises(NotPrime):
        bound_report(35)
    with pytest.raises(ValueError):
        bound_report(2)


def test_vartheta_report_consistency():
    for p in (5, 7, 13, 37):
        rep = vartheta_report(p, 0.05)
        assert rep.value == max(rep.max_re_theta, 1.05)
        assert rep.value == vartheta(p, 0.05)
        assert rep.skipped >= 0
        assert rep.max_re_theta < 2.0  # theta is bounded by the trivial exponent
    with pytest.raises(ValueError):
        vartheta_report(5, 0.0)


def test_bounded_growth_check_fields(ctx37, contexts):
    # the premise |phi(p)| <= p^(rho+eps) holds exactly when the single-row
    # maximum dominates, i.e. for row-dominant characters
    rep = bounded_growth_check(character(ctx37, 10), eps=0.05, n_max=2 * 10**4)
    assert rep.p == 37 and rep.k == 10
    assert rep.hypothesis_ok
    assert rep.rho == pytest.approx(1.0, rel=1e-12)
    assert 0 < rep.sup < 10.0
    assert 2 <= rep.arg_n <= 2 * 10**4

    weak = bounded_growth_check(character(contexts[5], 1), eps=0.05, n_max=10**4)
    assert not weak.hypothesis_ok  # row-regular: |phi(p)| strictly beats max |T|


def test_convergence_ratio_exact_golden():
    rows = convergence_ratio(5, 2, 6)
    by_k = {k: (a, phi0, ratio) for k, _, a, phi0, ratio in rows}
    assert by_k[0] == (0, 1, 0.0)
    assert by_k[1][:2] == (1, 15)
    assert by_k[2][:2] == (28, 225)
    assert by_k[2][2] == pytest.approx(0.497777777777778, rel=1e-12)
    assert by_k[6][:2] == (2621588, 11390625)
    assert by_k[6][2] == pytest.approx(0.920612521262003, rel=1e-12)


def test_convergence_ratio_tightens():
    for p in (3, 5, 7):
        for scale in (1.0, 1.7):
            rows = convergence_ratio(p, 1, 8, scale=scale)
            final = rows[-1][4]
            early = rows[2][4]
            assert abs(final - 1.0) < abs(early - 1.0)

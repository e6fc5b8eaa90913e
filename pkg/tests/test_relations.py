"""Recursion identity, alpha coefficients, basis change, and certificates."""

import json
import random
from fractions import Fraction
from math import comb

import pytest

from pontcalc.cycles import Cycle, GroupPoint, RingContext, pontryagin, pushforward, star_power
from pontcalc.relations import (
    MembershipCertificate,
    NilpotentTerm,
    NotFoundWithinCaps,
    alpha_coefficients,
    augmentation_generator,
    check_recursion_identity,
    hypothesis_cycle,
    power_basis_change,
    power_basis_change_inverse,
    pushed_hypothesis,
    subset_sum_cycle,
    verify_certificate,
    verify_relation,
)


def test_recursion_identity_small_cases():
    for k in range(2, 6):
        for l in range(1, k):
            assert check_recursion_identity(k, l), (k, l)


def test_recursion_identity_k2_by_hand():
    # {x_2} * {x_2} = 2*gamma_2 + {2 x_2} with gamma_2 empty
    ctx = RingContext(rank=1, geom_dim=1, support_cap=100)
    g1 = subset_sum_cycle(1, [0], 1)
    assert subset_sum_cycle(1, [0], 2).is_zero()
    lhs = pontryagin(g1, g1, ctx)
    rhs = pontryagin(pushforward(g1, 2), subset_sum_cycle(1, [0], 0), ctx)
    assert lhs == rhs == Cycle.point(GroupPoint((2,)))


def test_recursion_identity_argument_checks():
    with pytest.raises(ValueError):
        check_recursion_identity(1, 1)
    with pytest.raises(ValueError):
        check_recursion_identity(3, 3)


def test_alpha_k2_rows():
    m = alpha_coefficients(2)
    assert m.row(0) == (1,)
    assert m.row(1) == (2, -1)
    assert m.row(2) == (1, -2, 1)
    assert m.zero_entries == ()


def test_alpha_row_sums_are_degrees():
    for k in range(2, 9):
        m = alpha_coefficients(k)
        for l in range(0, k):
            assert m.row_sum(l) == comb(k - 1, l), (k, l)
        assert m.row_sum(k) == 0


def test_alpha_entries_nonzero_and_match_oracle():
    # independent oracle: solving the recursion in closed form gives
    # alpha[l][i] = (-1)^i C(k, l-i), nonzero throughout
    for k in range(2, 9):
        m = alpha_coefficients(k)
        assert m.zero_entries == ()
        for l in range(0, k + 1):
            for i, c in enumerate(m.row(l)):
                assert c == Fraction((-1) ** i * comb(k, l - i)), (k, l, i)


def test_power_basis_change_examples():
    assert power_basis_change([1, -2, 1]) == [0, 0, 1]
    assert power_basis_change([1, 0, 0, 0]) == [1, 0, 0, 0]
    rng = random.Random(0)
    for _ in range(20):
        n = rng.randint(1, 11)
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]
        assert power_basis_change_inverse(power_basis_change(coeffs)) == coeffs
        assert power_basis_change(power_basis_change_inverse(coeffs)) == coeffs


def test_power_basis_change_matches_cycle_expansion():
    # u^{*j} expanded through cycles agrees with the inverse basis change
    ctx = RingContext(rank=1, geom_dim=1, support_cap=100)
    x = GroupPoint((1,))
    u = Cycle.point(x) - Cycle.unit(1)
    for j in range(5):
        beta = [Fraction(0)] * 5
        beta[j] = Fraction(1)
        coeffs = power_basis_change_inverse(beta)
        cyc = Cycle(1, {GroupPoint((i,)): coeffs[i] for i in range(5)})
        assert cyc == star_power(u, j, ctx)


def test_alpha_row_k_in_power_basis():
    for k in range(2, 9):
        m = alpha_coefficients(k)
        beta = power_basis_change(list(m.row(k)))
        assert beta[0] == 0
        assert beta[k] != 0


def test_hypothesis_cycles():
    h = hypothesis_cycle(3)
    assert h.degree() == 0
    assert h.coeff(GroupPoint.origin(3)) == -3
    ph = pushed_hypothesis(3, 2)
    assert ph.coeff(GroupPoint((2, 0, 0))) == 1
    assert ph.coeff(GroupPoint.origin(3)) == -3


def test_k2_certificate_matches_hand_expansion():
    # u^{*2} = (1/2)(m_2)_*h + ({x_1}/2 - {x_2}/2 - {0}) * h, checked by
    # direct convolution without the engine
    k = 2
    ctx = RingContext(rank=2, geom_dim=3, support_cap=100)
    x1, x2 = GroupPoint((1, 0)), GroupPoint((0, 1))
    u = Cycle.point(x1) - Cycle.unit(2)
    mult1 = Cycle(2, {x1: Fraction(1, 2), x2: Fraction(-1, 2), GroupPoint.origin(2): -1})
    lhs = star_power(u, 2, ctx)
    rhs = pushed_hypothesis(2, 2).scale(Fraction(1, 2)) + pontryagin(
        mult1, hypothesis_cycle(2), ctx
    )
    assert lhs == rhs

    cert = verify_relation(2, 3)
    assert verify_certificate(cert)
    assert cert.nilpotent_part == ()
    mults = {t.j: t.multiplier for t in cert.generators}
    assert mults[1] == mult1
    assert mults[2] == Cycle.unit(2).scale(Fraction(1, 2))


def test_newton_certificates_small_range():
    for k in (2, 3, 4):
        for g in (1, 2, 4):
            cert = verify_relation(k, g)
            assert verify_certificate(cert), (k, g)
            assert cert.nilpotent_part == ()
            assert cert.max_multiplier_height() <= k - 1
            assert max(cert.pushforward_indices()) <= k


def test_window_method_agrees():
    cert = verify_relation(2, 2, j_max=2, cap=2, method="window")
    assert verify_certificate(cert)


def test_window_uses_nilpotent_span_when_ideal_insufficient():
    # with j_max = 1 the pushforward ideal cannot reach u^{*3}, but for
    # g = 1 the cube is a nilpotency-span element
    cert = verify_relation(3, 1, j_max=1, cap=2, method="window")
    assert verify_certificate(cert)
    assert cert.nilpotent_part
    for term in cert.nilpotent_part:
        assert len(term.factors) == 2


def test_not_found_within_caps():
    with pytest.raises(NotFoundWithinCaps) as info:
        verify_relation(2, 3, j_max=1, cap=1, method="window")
    assert info.value.caps_tried == [1, 2]


def test_argument_validation():
    with pytest.raises(ValueError):
        verify_relation(1, 2)
    with pytest.raises(ValueError):
        verify_relation(2, 0)
    with pytest.raises(ValueError):
        verify_relation(2, 2, method="magic")


def test_certificate_json_round_trip_and_tampering():
    cert = verify_relation(3, 2)
    data = json.loads(json.dumps(cert.to_json_dict(), sort_keys=True))
    again = MembershipCertificate.from_json_dict(data)
    assert verify_certificate(again)
    assert again.target == cert.target

    tampered = json.loads(json.dumps(cert.to_json_dict()))
    tampered["generators"][0]["multiplier"]["terms"][0]["coeff"] = "9/7"
    assert not verify_certificate(MembershipCertificate.from_json_dict(tampered))

    wrong_gen = json.loads(json.dumps(cert.to_json_dict()))
    wrong_gen["generators"][0]["j"] = 5
    assert not verify_certificate(MembershipCertificate.from_json_dict(wrong_gen))


def test_trivial_nilpotent_certificate_k2_g1():
    # u^{*2} is itself a product of g+1 = 2 augmentation generators
    ctx = RingContext(rank=2, geom_dim=1, support_cap=100)
    u = augmentation_generator(2, 1)
    cert = MembershipCertificate(
        k=2,
        g=1,
        j_max=2,
        cap=2,
        target=star_power(u, 2, ctx),
        generators=(),
        nilpotent_part=(NilpotentTerm(factors=(1, 1), multiplier=Cycle.unit(2)),),
    )
    assert verify_certificate(cert)
    # wrong factor count must be rejected
    bad = MembershipCertificate(
        k=2,
        g=2,
        j_max=2,
        cap=2,
        target=star_power(u, 2, ctx),
        generators=(),
        nilpotent_part=(NilpotentTerm(factors=(1, 1), multiplier=Cycle.unit(2)),),
    )
    assert not verify_certificate(bad)

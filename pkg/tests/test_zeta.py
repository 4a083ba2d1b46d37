import random
from fractions import Fraction

import pytest

from arithdyn import zeta as zt
from arithdyn.counting import (
    CountSequence,
    HyperellipticCurve,
    PolySystem,
    count_sequence,
    hyperelliptic_count,
    hyperelliptic_sequence,
)
from arithdyn.errors import InputError, OrderNotConfirmedError
from arithdyn.roots import poly_eval, qpoly_divmod

EC_F5 = HyperellipticCurve.make("ec_f5", 5, [1, 1, 0, 1])
EC_F5_COUNTS = (9, 27, 108, 675, 3069, 15552, 78633, 389475)


# ---------------------------------------------------------------------------
# min_recurrence
# ---------------------------------------------------------------------------

def test_min_recurrence_p1_counts():
    assert zt.min_recurrence([3, 5, 9, 17]) == [2, -3, 1]


def test_min_recurrence_elliptic_padded():
    # (T-1)(T-5)(T^2+3T+5) expanded
    assert zt.min_recurrence(list(EC_F5_COUNTS)) == [25, -15, -8, -3, 1]


def test_min_recurrence_constant():
    assert zt.min_recurrence([7, 7, 7, 7]) == [-1, 1]


def test_min_recurrence_too_short():
    with pytest.raises(OrderNotConfirmedError) as exc:
        zt.min_recurrence(list(EC_F5_COUNTS[:5]))
    assert exc.value.tentative_order == 3


def test_min_recurrence_divides_generating_polynomial():
    """Minimality: the output divides the charpoly that generated the data."""
    rng = random.Random(4)
    for _ in range(25):
        roots = rng.sample([1, 2, 3, 5, -2, -1, 4], k=rng.randrange(2, 5))
        weights = [rng.randrange(-3, 4) for _ in roots]
        seq = [sum(w * r ** n for w, r in zip(weights, roots))
               for n in range(1, 13)]
        if all(v == 0 for v in seq):
            continue
        got = [Fraction(c) for c in zt.min_recurrence(seq)]
        gen = [Fraction(1)]
        for r in roots:  # multiply by (T - r): new[i] = old[i-1] - r*old[i]
            gen = [b - r * a for a, b in
                   zip(gen + [Fraction(0)], [Fraction(0)] + gen)]
        _, rem = qpoly_divmod(gen, got)
        assert rem == []


# ---------------------------------------------------------------------------
# power_sums
# ---------------------------------------------------------------------------

def test_power_sums_examples():
    assert zt.power_sums([2, -3, 1], 4) == [3, 5, 9, 17]
    assert zt.power_sums([5, 3, 1], 2) == [-3, -1]
    assert zt.power_sums([-1, 1], 5) == [1] * 5


def test_power_sums_nonmonic_and_errors():
    # roots of 2T - 1: p_n = (1/2)^n
    assert zt.power_sums([-1, 2], 3) == [Fraction(1, 2), Fraction(1, 4),
                                         Fraction(1, 8)]
    with pytest.raises(InputError):
        zt.power_sums([4], 3)


# ---------------------------------------------------------------------------
# zeta_from_counts
# ---------------------------------------------------------------------------

def test_zeta_p1_f5():
    z = zt.zeta_from_counts(CountSequence(5, (6, 26, 126, 626)))
    got = sorted((f.coeffs, f.side, f.weight) for f in z.factors)
    assert got == [((1, -5), "denominator", 2), ((1, -1), "denominator", 0)]


def test_zeta_p2_f3_weights():
    p2 = PolySystem.from_data("p2_f3", 3, "projective", 2, [])
    z = zt.zeta_from_counts(count_sequence(p2, 6))
    assert all(f.side == "denominator" for f in z.factors)
    assert sorted(f.weight for f in z.factors) == [0, 2, 4]


def test_zeta_elliptic_f5():
    z = zt.zeta_from_counts(CountSequence(5, EC_F5_COUNTS))
    nums = [f for f in z.factors if f.side == "numerator"]
    assert [f.coeffs for f in nums] == [(1, 3, 5)]
    assert nums[0].weight == 1
    assert z.genus_hint == 1
    assert "smoothness not verified" in z.caveats


def test_zeta_multiplicity_recovery():
    # product-of-lines shape: N_n = (q^n + 1)^2 needs (1 - qT) twice
    z = zt.zeta_from_counts(CountSequence(2, tuple((2 ** n + 1) ** 2
                                                   for n in range(1, 7))))
    got = sorted(f.coeffs for f in z.factors)
    assert got == [(1, -4), (1, -2), (1, -2), (1, -1)]
    assert zt.lefschetz_reconstruct(z, 3) == 81


def test_zeta_mixed_weight_surfaced():
    # minimal polynomial T^2 - 3T + 1 has moduli 2.618 and 0.382: no cluster
    z = zt.zeta_from_counts(CountSequence(2, (3, 7, 18, 47, 123, 322)))
    assert [f.weight for f in z.factors] == ["mixed"]
    assert any("no consistent weight" in c for c in z.caveats)
    assert zt.weil_check(z).status == "INDETERMINATE"


def test_zeta_betti_hint_forces_weight_but_weil_stays_honest():
    z = zt.zeta_from_counts(CountSequence(2, (3, 7, 18, 47, 123, 322)),
                            betti_hint={2: 2})
    assert [f.weight for f in z.factors] == [2]
    assert zt.weil_check(z).status == "FAIL"


def test_zeta_rejects_repeated_factor_counts():
    with pytest.raises(InputError, match="repeated"):
        zt.zeta_from_counts(CountSequence(2, (2, 8, 24, 64, 160, 384)))


def test_zeta_rejects_fractional_multiplicities():
    with pytest.raises(InputError, match="multiplicities"):
        zt.zeta_from_counts(CountSequence(3, (2, 5, 14, 41, 122, 365)))


# ---------------------------------------------------------------------------
# elliptic_zeta
# ---------------------------------------------------------------------------

def test_elliptic_zeta_f5():
    z = zt.elliptic_zeta(9, 5)
    nums = [f for f in z.factors if f.side == "numerator"]
    assert nums[0].coeffs == (1, 3, 5)
    assert z.genus_hint == 1 and not z.caveats


def test_elliptic_zeta_supersingular_shape():
    z = zt.elliptic_zeta(8, 7)
    assert (1, 0, 7) in [f.coeffs for f in z.factors]


def test_elliptic_zeta_n1_1_q2():
    z = zt.elliptic_zeta(1, 2)
    nums = [f for f in z.factors if f.side == "numerator"]
    assert nums[0].coeffs == (1, -2, 2)
    for e in zt.eigenvalue_data(z):
        if e.weight == 1:
            assert abs(e.modulus - 2 ** 0.5) < 1e-12


def test_elliptic_zeta_weil_violating_input_flagged():
    z = zt.elliptic_zeta(1, 25)  # a = 25 > 2*sqrt(q)
    assert "Weil-violating input" in z.caveats
    assert zt.weil_check(z).status == "FAIL"


# ---------------------------------------------------------------------------
# weil_check / functional equation
# ---------------------------------------------------------------------------

def test_weil_pass_elliptic():
    v = zt.weil_check(zt.elliptic_zeta(9, 5))
    assert v.status == "PASS"


def test_weil_pass_trivial_factor():
    z = zt.ZetaData(7, (zt.ZetaFactor((1, -1), "denominator", 0),))
    assert zt.weil_check(z).status == "PASS"


def test_weil_fail_fabricated_factor():
    z = zt.ZetaData(5, (zt.ZetaFactor((1, -3), "numerator", 1),))
    v = zt.weil_check(z)
    assert v.status == "FAIL"
    bad = v.witness["factors"][0]["witness"]
    assert abs(bad["modulus"] - 3) < 1e-9


def test_functional_equation_elliptic():
    assert zt.functional_equation_check([1, 3, 5], 5, 1).passed
    assert zt.functional_equation_check([1, 0, 7], 7, 1).passed


def test_functional_equation_fail_and_errors():
    assert zt.functional_equation_check([1, 1, 1], 5, 1).status == "FAIL"
    with pytest.raises(InputError, match="degree"):
        zt.functional_equation_check([1, 3, 5], 5, 2)


def test_functional_equation_sign_minus():
    # P = 1 - 2T^2 over q = 2: eigenvalues +-sqrt(2), closed under a -> q/a
    # only with the minus sign
    v = zt.functional_equation_check([1, 0, -2], 2, 1)
    assert v.passed and v.witness["sign"] == -1


# ---------------------------------------------------------------------------
# Lefschetz reconstruction and round trips
# ---------------------------------------------------------------------------

def test_lefschetz_examples():
    z1 = zt.zeta_from_counts(CountSequence(5, (6, 26, 126, 626)))
    assert zt.lefschetz_reconstruct(z1, 3) == 126
    z2 = zt.zeta_from_counts(CountSequence(5, EC_F5_COUNTS))
    assert zt.lefschetz_reconstruct(z2, 2) == 27
    p2 = PolySystem.from_data("p2_f3", 3, "projective", 2, [])
    z3 = zt.zeta_from_counts(count_sequence(p2, 6))
    assert zt.lefschetz_reconstruct(z3, 2) == 91


def test_lefschetz_rejects_mixed():
    z = zt.zeta_from_counts(CountSequence(2, (3, 7, 18, 47, 123, 322)))
    with pytest.raises(InputError):
        zt.lefschetz_reconstruct(z, 3)


@pytest.mark.parametrize("p,f,n_input,n_extra", [
    (3, [1, 1, 0, 1], 8, 2),
    (5, [1, 1, 0, 1], 8, 2),
    (7, [1, 1, 0, 1], 8, 0),  # 7^9 is past the table guard: no fresh count
    (3, [1, 0, 1, 0, 0, 1], 12, 2),
])
def test_roundtrip_with_predictive_terms(p, f, n_input, n_extra):
    """Reconstruction reproduces the input counts and predicts fresh ones
    beyond them, as far as the counting guards allow."""
    curve = HyperellipticCurve.make("c", p, f)
    cs = hyperelliptic_sequence(curve, n_input)
    z = zt.zeta_from_counts(cs)
    for n in range(1, n_input + 1):
        assert zt.lefschetz_reconstruct(z, n) == cs.counts[n - 1]
    for n in range(n_input + 1, n_input + 1 + n_extra):
        assert zt.lefschetz_reconstruct(z, n) == hyperelliptic_count(curve, n)


@pytest.mark.parametrize("p,dim,nmax,n_extra", [
    (5, 1, 4, 2), (3, 2, 6, 2), (2, 2, 6, 2),
    (2, 3, 8, 0),  # n = 9 would breach the candidate guard
])
def test_roundtrip_projective_spaces(p, dim, nmax, n_extra):
    from arithdyn.counting import count_points
    sys = PolySystem.from_data("ps", p, "projective", dim, [])
    cs = count_sequence(sys, nmax)
    z = zt.zeta_from_counts(cs)
    for n in range(1, nmax + 1):
        assert zt.lefschetz_reconstruct(z, n) == cs.counts[n - 1]
    for n in range(nmax + 1, nmax + 1 + n_extra):
        assert zt.lefschetz_reconstruct(z, n) == count_points(sys, n)


def test_functional_equation_for_all_bundled_curves():
    for p, f, g, nmax in [(3, [1, 1, 0, 1], 1, 8), (5, [1, 1, 0, 1], 1, 8),
                          (7, [1, 1, 0, 1], 1, 8),
                          (3, [1, 0, 1, 0, 0, 1], 2, 12)]:
        curve = HyperellipticCurve.make("c", p, f)
        z = zt.zeta_from_counts(hyperelliptic_sequence(curve, nmax))
        assert zt.weil_check(z).passed
        assert zt.functional_equation_check(zt.numerator_poly(z), p, g).passed


# ---------------------------------------------------------------------------
# Eigenvalue data and serialization
# ---------------------------------------------------------------------------

def test_eigenvalue_data_invariants():
    z = zt.zeta_from_counts(CountSequence(5, EC_F5_COUNTS))
    eigs = zt.eigenvalue_data(z)
    assert len(eigs) == 4
    for e in eigs:
        assert abs(abs(e.value) - e.modulus) <= 1e-12
        src = z.factors[e.source_factor]
        fc = [float(c) for c in src.reversed_coeffs()]
        assert abs(poly_eval(fc, e.value)) <= 1e-9 * max(
            sum(abs(c) for c in fc), 1.0)


def test_zeta_json_roundtrip(tmp_path):
    z = zt.zeta_from_counts(CountSequence(5, EC_F5_COUNTS))
    path = tmp_path / "z.json"
    zt.save_zeta_json(path, z)
    back = zt.load_zeta_json(path)
    assert back.q == z.q and back.factors == z.factors
    assert back.genus_hint == 1


def test_zeta_json_validation():
    with pytest.raises(InputError, match="constant term"):
        zt.zeta_from_json({"q": 5, "factors": [
            {"coeffs": [2, 1], "side": "numerator", "weight": 1}]})
    with pytest.raises(InputError, match="side"):
        zt.zeta_from_json({"q": 5, "factors": [
            {"coeffs": [1, 1], "side": "up", "weight": 1}]})

import cmath
import math
import random
from fractions import Fraction

import pytest

from arithdyn import corr, dyndeg as dd
from arithdyn.errors import DegenerateError, GuardError, InputError
from arithdyn.verdict import FAIL, PASS

PHI2 = (3 + math.sqrt(5)) / 2  # spectral radius of [[2,1],[1,1]]
GOLDEN_MU = cmath.exp(2j * math.pi * 0.618034)


def x2y_map():
    return corr.MonomialMap.make(2, [[2, 1, 0], [1, 1, 1], [0, 0, 3]])


# ---------------------------------------------------------------------------
# spectral_radius
# ---------------------------------------------------------------------------

def test_spectral_radius_examples():
    assert abs(dd.spectral_radius([[2, 1], [1, 1]]) - PHI2) < 1e-9
    assert abs(dd.spectral_radius([[1, 0], [0, 1]]) - 1.0) < 1e-12
    assert abs(dd.spectral_radius([[0, -1], [1, 0]]) - 1.0) < 1e-12


def test_spectral_radius_rejects_non_square():
    with pytest.raises(InputError, match="square"):
        dd.spectral_radius([[1, 2, 3], [4, 5, 6]])


# ---------------------------------------------------------------------------
# lambda_estimate
# ---------------------------------------------------------------------------

def test_lambda_estimate_cremona_exact_one():
    degs = corr.iterate_degrees(corr.cremona_map(), 12)
    val, trace = dd.lambda_estimate(degs)
    assert val == 1.0
    assert trace.final == 1.0
    assert trace.window == (10, 12)


def test_lambda_estimate_geometric_exact():
    val, trace = dd.lambda_estimate([7 ** n for n in range(1, 9)])
    assert val == 7.0
    assert trace.window == (7, 8)


def test_lambda_estimate_x2y_converges():
    degs = corr.iterate_degrees(x2y_map(), 12)
    val, trace = dd.lambda_estimate(degs)
    assert abs(val - PHI2) / PHI2 <= 0.02
    # the documented estimator applied to the reported window
    d = degs.degs
    assert val == pytest.approx((d[-1] / d[-5]) ** 0.25, rel=1e-12)
    assert trace.window == (8, 12)
    assert len(trace.estimates) == 12 and len(trace.ratios) == 11


def test_lambda_estimate_too_short():
    with pytest.raises(InputError, match="at least 6"):
        dd.lambda_estimate([2, 4, 8, 16, 32])


# ---------------------------------------------------------------------------
# lambda_monomial
# ---------------------------------------------------------------------------

def test_lambda_monomial_examples():
    A = [[2, 1], [1, 1]]
    assert dd.lambda_monomial(A, 0) == 1.0
    assert abs(dd.lambda_monomial(A, 1) - PHI2) < 1e-9
    assert dd.lambda_monomial(A, 2) == 1.0
    assert abs(dd.lambda_monomial([[2, 0], [0, 3]], 1) - 3.0) < 1e-12
    assert dd.lambda_monomial([[2, 0], [0, 3]], 2) == 6.0
    for p in range(3):
        assert abs(dd.lambda_monomial([[-1, 0], [0, -1]], p) - 1.0) < 1e-12


def test_lambda_monomial_rejects_singular_and_bad_p():
    with pytest.raises(InputError, match="singular"):
        dd.lambda_monomial([[1, 1], [1, 1]], 1)
    with pytest.raises(InputError, match="range"):
        dd.lambda_monomial([[2, 0], [0, 3]], 3)


def test_lambda_monomial_random_invariants():
    rng = random.Random(101)
    done = 0
    while done < 100:
        k = rng.randrange(1, 5)
        A = [[rng.randrange(-5, 6) for _ in range(k)] for _ in range(k)]
        try:
            lams = [dd.lambda_monomial(A, p) for p in range(k + 1)]
        except InputError:
            continue
        assert lams[0] == 1.0
        from arithdyn.ratlinalg import det, mat
        assert lams[k] == float(abs(det(mat(A))))
        for i in range(k - 1):
            assert lams[i] * lams[i + 2] <= lams[i + 1] ** 2 * (1 + 1e-9)
        done += 1


# ---------------------------------------------------------------------------
# chi and entropy
# ---------------------------------------------------------------------------

def test_chi_functorial_models():
    assert dd.chi(corr.frobenius_model(5, 2), 1) == 5.0
    ident = corr.identity_model(3)
    assert [dd.chi(ident, i) for i in range(4)] == [1.0] * 4


def test_chi_product_model_tensor_maxima():
    m = corr.product_model(corr.frobenius_model(2, 1),
                           corr.frobenius_model(3, 1))
    g_chis = [1.0, 2.0]
    h_chis = [1.0, 3.0]
    for p in range(3):
        lo, hi = max(0, p - 1), min(1, p)
        want = max(g_chis[i] * h_chis[p - i] for i in range(lo, hi + 1))
        assert dd.chi(m, p) == pytest.approx(want, rel=1e-12)


def test_chi_non_functorial_paths():
    lat_model = corr.GradedMatrixCorr.make(
        corr.frobenius_model(2, 1).lattice, [[[1]], [[2]]], False)
    with pytest.raises(InputError, match="per-iterate"):
        dd.chi(lat_model, 1)
    norms = [2 ** n for n in range(1, 13)]
    assert dd.chi(lat_model, 1, per_n_norms=norms) == pytest.approx(2.0)
    with pytest.raises(InputError, match="range"):
        dd.chi(lat_model, 3)


def test_algebraic_entropy():
    rep = dd.report_for_model(corr.frobenius_model(3, 2))
    assert rep.entropy == pytest.approx(2 * math.log(3), rel=1e-12)
    assert dd.algebraic_entropy(rep) == rep.entropy
    assert dd.report_for_model(corr.identity_model(2)).entropy == 0.0
    prod = dd.report_for_model(corr.product_model(
        corr.frobenius_model(2, 1), corr.frobenius_model(3, 1)))
    assert prod.entropy == pytest.approx(math.log(2) + math.log(3), rel=1e-12)


# ---------------------------------------------------------------------------
# property checks
# ---------------------------------------------------------------------------

def test_log_concavity_verdicts():
    assert dd.check_log_concavity([1, 5, 25, 125]).passed
    assert dd.check_log_concavity([1.0, PHI2, 1.0]).passed
    bad = dd.check_log_concavity([1, 1, 4])
    assert bad.status == FAIL
    assert bad.witness["violations"][0]["triple"] == [1.0, 1.0, 4.0]
    with pytest.raises(InputError, match="at least 3"):
        dd.check_log_concavity([1, 2])


def test_product_formula_verdicts():
    assert dd.check_product_formula([1, 5], [1, 5], [1, 5, 25]).passed
    assert dd.check_product_formula([1, 2], [1, 3], [1, 3, 6]).passed
    assert dd.check_product_formula([1], [1, 4, 9], [1, 4, 9]).passed
    bad = dd.check_product_formula([1, 2], [1, 3], [1, 3, 5])
    assert bad.status == FAIL
    with pytest.raises(InputError, match="degree count"):
        dd.check_product_formula([1, 2], [1, 3], [1, 3])


def test_dinh_verdicts():
    v = dd.check_dinh({0: 1.0, 2: 5.0, 4: 25.0}, [1, 5, 25])
    assert v.passed and v.witness["value"] == pytest.approx(1.0)
    assert dd.check_dinh([1.0, 1.0, 1.0], [1, 1]).passed
    bad = dd.check_dinh({2: 10.0}, [1, 2, 1])
    assert bad.status == FAIL
    assert bad.witness["violations"][0]["bound"] == pytest.approx(4.0)
    with pytest.raises(InputError, match="outside"):
        dd.check_dinh({7: 2.0}, [1, 2, 1])


def test_q4prime_verdicts():
    assert dd.check_q4prime({0: 1.0, 2: 3.0, 4: 9.0}, [1, 3, 9]).passed
    assert dd.check_q4prime({0: 1.0}, [1.0]).passed
    assert dd.check_q4prime({2: 7.0}, [1, 2]).status == FAIL


def test_suite_passes_on_bundled_models():
    for name, model in corr.bundled_functorial_models():
        rep = dd.report_for_model(model)
        for v in dd.property_suite(rep):
            assert v.passed, (name, v)
        assert rep.lambdas[0] == 1.0, name


def test_product_formula_on_bundled_products():
    g = dd.report_for_model(corr.frobenius_model(2, 1))
    h = dd.report_for_model(corr.frobenius_model(3, 2))
    f = dd.report_for_model(corr.product_model(
        corr.frobenius_model(2, 1), corr.frobenius_model(3, 2)))
    assert dd.check_product_formula(g.lambdas, h.lambdas, f.lambdas).passed


# ---------------------------------------------------------------------------
# trace limsup
# ---------------------------------------------------------------------------

def test_trace_limsup_fibonacci_like():
    est, best_n = dd.trace_limsup([[2, 1], [1, 1]], 60)
    assert abs(est - PHI2) / PHI2 <= 0.05
    assert 30 <= best_n <= 60


def test_trace_limsup_alternating_traces():
    est, best_n = dd.trace_limsup([[2, 0], [0, -2]], 500)
    assert best_n % 2 == 0
    assert abs(est - 2.0) / 2.0 <= 0.05


def test_trace_limsup_complex_spectrum():
    # companion matrix of T^2 - T + 9: eigenvalues of modulus 3
    est, _ = dd.trace_limsup([[0, -9], [1, 1]], 500)
    assert abs(est - 3.0) / 3.0 <= 0.05


def test_trace_limsup_guards():
    with pytest.raises(GuardError, match="500"):
        dd.trace_limsup([[2, 0], [0, 2]], 501)
    with pytest.raises(InputError, match="unit circle"):
        dd.trace_limsup([[1, 0], [0, 1]], 100)


def test_check_trace_limsup_witness():
    v = dd.check_trace_limsup([[2, 1], [1, 1]], 100)
    assert v.passed
    assert v.witness["reference"] == pytest.approx(PHI2)
    assert v.witness["tol"] == 0.05
    assert "best_n" in v.witness


def test_trace_limsup_never_exceeds_rank_scaled_bound():
    rng = random.Random(102)
    done = 0
    while done < 10:
        n = rng.randrange(2, 5)
        M = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)]
        sp = dd.spectral_radius(M)
        if sp < 1.2:
            continue
        est, _ = dd.trace_limsup(M, 80)
        assert est <= n ** (1 / 40) * sp * (1 + 1e-9)
        done += 1


# ---------------------------------------------------------------------------
# near-identity powers
# ---------------------------------------------------------------------------

def test_near_identity_trivial_unit():
    assert dd.near_identity_powers([1.0], 0.1, 10) == list(range(1, 11))


def test_near_identity_golden_rotation():
    ks = dd.near_identity_powers([GOLDEN_MU], 0.1, 200)
    assert 34 in ks and 55 in ks


def test_near_identity_fourth_root():
    ks = dd.near_identity_powers([1j], 0.1, 40)
    assert ks == [4 * m for m in range(1, 11)]


def test_near_identity_validation():
    with pytest.raises(InputError, match="not within"):
        dd.near_identity_powers([2.0], 0.1, 10)
    with pytest.raises(InputError, match="eps"):
        dd.near_identity_powers([1.0], 1.5, 10)
    with pytest.raises(InputError, match="k_max"):
        dd.near_identity_powers([1.0], 0.1, 0)


def test_near_identity_report_statuses():
    found = dd.near_identity_report([GOLDEN_MU], 0.1, 200)
    assert found["status"] == "found" and found["pigeonhole_bound"] == 80
    short = dd.near_identity_report([GOLDEN_MU], 0.1, 20)
    assert short["status"] == "bound not reached"
    assert short["ks"] == []


# ---------------------------------------------------------------------------
# norm-equivalence constants
# ---------------------------------------------------------------------------

def _std_basis(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def test_eq3_identity_pairing_constants():
    basis = _std_basis(3)
    ident = _std_basis(3)
    C1, C2 = dd.eq3_norm_constants(basis, basis, ident)
    assert C1 == Fraction(1, 9) and C2 == 1


def test_eq3_verify_examples():
    basis = _std_basis(3)
    ident = _std_basis(3)
    zero = [[0] * 3 for _ in range(3)]
    assert dd.eq3_verify(basis, basis, ident, zero)
    assert dd.eq3_verify(basis, basis, ident, ident)
    assert dd.eq3_verify(basis, basis, ident, [[7, -2, 0], [1, 1, 1],
                                               [0, 5, -3]])


def test_eq3_random_sandwich():
    rng = random.Random(103)
    pairings = [_std_basis(3), [[0, 1], [1, 0]], [[2, 1], [1, 1]]]
    for G in pairings:
        n = len(G)
        basis = _std_basis(n)
        for _ in range(30):
            F = [[Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
                  for _ in range(n)] for _ in range(n)]
            assert dd.eq3_verify(basis, basis, G, F)


def test_eq3_degenerate_pairing():
    with pytest.raises(DegenerateError, match="degenerate"):
        dd.eq3_norm_constants([[1, 0]], [[1, 0]], [[0, 1], [1, 0]])


# ---------------------------------------------------------------------------
# Frobenius-model cross-check
# ---------------------------------------------------------------------------

def test_weil_from_dyndeg_passes():
    v = dd.weil_from_dyndeg(5, 2)
    assert v.passed
    assert v.witness["lambdas"] == [1.0, 5.0, 25.0]
    assert v.witness["zeta_weights"] == [0, 2, 4]
    v = dd.weil_from_dyndeg(2, 1)
    assert v.passed
    assert sorted(v.witness["zeta_factors"]) == [[1, -2], [1, -1]]
    assert dd.weil_from_dyndeg(3, 3).passed


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def test_report_for_model_frobenius():
    rep = dd.report_for_model(corr.frobenius_model(3, 2))
    assert rep.lambdas == (1.0, 3.0, 9.0)
    assert rep.chis == ((0, 1.0), (2, 3.0), (4, 9.0))
    assert rep.lambda_1_estimate is None and rep.instability is None


def test_report_for_monomial_x2y():
    rep = dd.report_for_monomial(x2y_map(), n_max=12)
    assert rep.lambdas[0] == 1.0 and rep.lambdas[2] == 1.0
    assert abs(rep.lambdas[1] - PHI2) < 1e-9
    assert rep.instability is True  # deg(f^2) = 8 < 9 = deg(f)^2
    assert abs(rep.lambda_1_estimate - PHI2) / PHI2 <= 0.02
    assert rep.chi_map()[2] == rep.lambdas[1]


def test_report_for_monomial_cremona():
    rep = dd.report_for_monomial(corr.cremona_map(), n_max=12)
    assert rep.lambda_1_estimate == 1.0
    assert rep.instability is True
    assert all(abs(x - 1.0) < 1e-12 for x in rep.lambdas)


def test_report_for_monomial_stable_power_map():
    f = corr.MonomialMap.make(2, [[3, 0, 0], [0, 3, 0], [0, 0, 3]])
    rep = dd.report_for_monomial(f, n_max=8)
    assert rep.instability is False
    assert rep.lambda_1_estimate == 3.0


def test_report_make_rejects_chi_below_lambda():
    with pytest.raises(InputError, match="below lambda"):
        dd.DyndegReport.make([1.0, 5.0], [(0, 1.0), (2, 3.0)])


def test_property_suite_order():
    rep = dd.report_for_model(corr.frobenius_model(2, 2))
    names = [v.name for v in dd.property_suite(rep)]
    assert names == sorted(names) == ["dinh", "log_concavity", "q4prime"]


def test_report_json_and_csv():
    rep = dd.report_for_monomial(x2y_map(), n_max=12)
    checks = dd.property_suite(rep)
    assert len(checks) == 3
    data = dd.report_to_json(rep, checks)
    assert data["overall"] == PASS
    assert data["instability"] is True
    assert set(data["chis"]) == {"0", "2", "4"}
    tr = data["diagnostics"]["lambda_1_degree_growth"]
    assert tr["window"] == [8, 12] and len(tr["ratios"]) == 11
    csv_text = dd.summary_csv(checks)
    lines = csv_text.strip().split("\n")
    assert lines[0] == "quantity,value,reference,tolerance,verdict"
    assert len(lines) == 4
    assert all(line.endswith(PASS) for line in lines[1:])

import random
from fractions import Fraction

import pytest

from superchar import (
    DecompositionCertificate,
    InvalidCertificate,
    NSystem,
    check_ach3,
    find_uvdw_certificate,
    verify_artin_takagi,
    verify_heilbronn_stark,
    verify_uvdw,
)
from superchar.errors import SupercharError
from superchar.nsystems import _sind_sigma


def _rand_base(ns_blocks, rng, lo=-5, hi=5):
    return [rng.randint(lo, hi) for _ in range(ns_blocks)]


def _rand_fn(theory, rng):
    return theory.superclass_function(
        [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(theory.n_blocks)]
    )


def test_theta_top_known_values(s3_classical):
    ns = NSystem(s3_classical, [1, 1, 1])
    # blocks: identity, transpositions, 3-cycles
    assert [v.as_rational() for v in ns.theta_top.block_values()] == [
        3,
        0,
        Fraction(3, 2),
    ]


def test_base_recovery(s3_classical, s3_maximal, s4_classical):
    rng = random.Random(4)
    for fam in (s3_classical, s3_maximal, s4_classical):
        top = fam.top_theory
        base = _rand_base(top.n_blocks, rng)
        ns = NSystem(fam, base)
        for x in range(top.n_blocks):
            assert ns.n_top(top.sigma_function(x)) == base[x]


def test_ach1_linearity(s3_classical):
    rng = random.Random(5)
    ns = NSystem(s3_classical, _rand_base(3, rng))
    for sub in ns.family.subgroups:
        theory = ns.family.theory_for(sub)
        f1, f2 = _rand_fn(theory, rng), _rand_fn(theory, rng)
        both = theory.superclass_function(
            [a + b for a, b in zip(f1.block_values(), f2.block_values())]
        )
        assert ns.n_value(sub, both) == ns.n_value(sub, f1) + ns.n_value(sub, f2)


def test_ach2_superinduction_invariance(s3_classical, s3_maximal):
    rng = random.Random(6)
    for fam in (s3_classical, s3_maximal):
        ns = NSystem(fam, _rand_base(fam.top_theory.n_blocks, rng))
        for sub in fam.subgroups:
            theory = fam.theory_for(sub)
            for y in range(theory.n_blocks):
                lifted = _sind_sigma(fam, sub, y)
                assert ns.n_top(lifted) == ns.n_sigma(sub, y)
                assert ns.n_sigma(sub, y) == ns.n_value(sub, theory.sigma_function(y))


def test_artin_takagi_reports(s3_maximal):
    ns = NSystem(s3_maximal, [2, 3])
    report = verify_artin_takagi(ns)
    assert report.ok
    assert report.details["n_regular"] == "5"
    assert report.details["sum_of_base"] == "5"


def test_artin_takagi_random(s3_classical, s3_maximal, s4_classical):
    rng = random.Random(7)
    for fam in (s3_classical, s3_maximal, s4_classical):
        for _ in range(10):
            ns = NSystem(fam, _rand_base(fam.top_theory.n_blocks, rng))
            assert verify_artin_takagi(ns).ok


def test_heilbronn_stark_all_subgroups(s3_classical, s3_maximal):
    rng = random.Random(8)
    for fam in (s3_classical, s3_maximal):
        for _ in range(10):
            ns = NSystem(fam, _rand_base(fam.top_theory.n_blocks, rng))
            for sub in fam.subgroups:
                report = verify_heilbronn_stark(ns, sub)
                assert report.ok, report.violations


def test_ach3_nonnegative_bases_pass(s4_classical):
    rng = random.Random(9)
    for _ in range(5):
        ns = NSystem(s4_classical, _rand_base(5, rng, lo=0, hi=5))
        report = check_ach3(ns)
        assert report.ok


def test_ach3_flags_negative_and_warns_on_fractions(s3_classical):
    # a negative weight on the sign character makes n(G, sgn) < 0
    ns = NSystem(s3_classical, [0, -1, 0])
    report = check_ach3(ns)
    assert not report.ok
    assert any(v["n"] == "-1" for v in report.violations)
    # weight on the 2-dim character yields n(A3, chi) = 1/2: warned, not failed
    ns2 = NSystem(s3_classical, [0, 0, 1])
    report2 = check_ach3(ns2)
    assert report2.ok
    assert any(w["n"] == "1/2" for w in report2.warnings)


def test_certificate_search_s3(s3_classical):
    fam = s3_classical
    a3 = fam.subgroup_by_elements([0, 3, 4])
    search = find_uvdw_certificate(fam, a3)
    assert search.certificate is not None and not search.exhausted
    # Sind 1_{A3} - 1_G = sgn: a single term, the sign block on S3 itself
    ((hi, blocks),) = search.certificate.terms
    assert hi.order == 6 and blocks == (1,)

    whole = fam.subgroup_by_elements(range(6))
    assert find_uvdw_certificate(fam, whole).certificate.terms == ()


def test_certificate_search_needs_classical(s3_maximal):
    with pytest.raises(SupercharError):
        find_uvdw_certificate(s3_maximal, s3_maximal.subgroups[0])


def test_certificate_search_budget_exhaustion(s4_classical):
    sub = s4_classical.subgroups[0]  # trivial subgroup: hardest target
    search = find_uvdw_certificate(s4_classical, sub, budget=2)
    assert search.certificate is None
    assert search.exhausted
    assert search.nodes > 2


def test_verify_uvdw_known_case(s3_classical):
    fam = s3_classical
    a3 = fam.subgroup_by_elements([0, 3, 4])
    cert = find_uvdw_certificate(fam, a3).certificate
    ns = NSystem(fam, [1, 0, 2])
    report = verify_uvdw(ns, cert)
    assert report.ok
    assert report.details["eq1"] and report.details["eq2"]
    assert Fraction(report.details["n_H_trivial"]) >= Fraction(
        report.details["n_G_trivial"]
    )


def test_verify_uvdw_inequality_conditional_on_ach3(s3_classical):
    fam = s3_classical
    a3 = fam.subgroup_by_elements([0, 3, 4])
    cert = find_uvdw_certificate(fam, a3).certificate
    # base failing ACH3: the identities still hold, the inequality may not
    ns = NSystem(fam, [1, -3, 0])
    report = verify_uvdw(ns, cert)
    assert report.details["eq1"] and report.details["eq2"]
    assert not report.details["ach3_passes"]
    assert report.ok  # inequality not asserted without ACH3


def test_invalid_certificate_nonlinear_term(s3_classical):
    fam = s3_classical
    a3 = fam.subgroup_by_elements([0, 3, 4])
    whole = fam.subgroup_by_elements(range(6))
    bad = DecompositionCertificate(a3, ((whole, (2,)),))  # 2-dim block
    ns = NSystem(fam, [1, 0, 2])
    with pytest.raises(InvalidCertificate) as exc:
        verify_uvdw(ns, bad)
    assert "nonlinear" in str(exc.value)


def test_invalid_certificate_wrong_identity(s3_classical):
    fam = s3_classical
    a3 = fam.subgroup_by_elements([0, 3, 4])
    c2 = fam.subgroup_by_elements([0, 1])
    wrong = DecompositionCertificate(a3, ((c2, (1,)),))
    ns = NSystem(fam, [1, 0, 2])
    with pytest.raises(InvalidCertificate):
        verify_uvdw(ns, wrong)


def test_theta_is_superclass_function_for_all_subgroups(s4_classical):
    rng = random.Random(12)
    ns = NSystem(s4_classical, _rand_base(5, rng))
    for sub in s4_classical.subgroups[:8]:
        theta = ns.theta(sub)
        assert theta.theory == s4_classical.theory_for(sub)

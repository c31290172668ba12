import pytest

from quadselmer.config import Config
from quadselmer.errors import UsageError
from quadselmer.field import RATIONAL, make_field
from quadselmer.ideals import iter_prime_ideals
from quadselmer.symbols import PairingKind, PairingVerdict, SupplementaryVerdict, pairing_matrix, supplementary_check
from quadselmer.verify import Verdict, clp_rank, reciprocity_fuzz, scan, scan_range, verify_field


def test_q_sqrt10_report(cfg):
    rep = verify_field(10, cfg)
    assert rep.all_pass, rep.diagnostics
    assert rep.selmer_dims == {"sel": 3, "plus": 1, "four": 1, "four_plus": 1}
    assert (rep.h, rep.h_plus, rep.rho, rep.rho_plus) == (2, 2, 1, 1)
    assert rep.fundamental_unit == str(make_field(10).element(3, 1))
    # las tres bases de los subgrupos propios son la clase de 5
    for kind in ("plus", "four", "four_plus"):
        assert len(rep.selmer_bases[kind]) == 1
    assert len(rep.pairings) == 4
    assert rep.fuzz["passed"] == 10


def test_q_sqrt34_report(cfg):
    rep = verify_field(34, cfg)
    assert rep.all_pass, rep.diagnostics
    assert (rep.h, rep.h_plus) == (2, 4)
    assert rep.narrow_class_group == [4]
    assert rep.clp_rank == 0
    assert rep.u == 1


def test_rational_field_report(cfg):
    rep = verify_field(RATIONAL, cfg)
    assert rep.d == RATIONAL
    assert rep.all_pass, rep.diagnostics
    assert rep.selmer_dims["sel"] == 1
    assert rep.fundamental_unit is None
    assert all(rep.lagarias)


@pytest.mark.parametrize("d", [17, 73, 97])
def test_lagarias_conditions_hold(d, cfg):
    rep = verify_field(d, cfg)
    assert rep.checks["lagarias"] == "pass"
    assert rep.lagarias == [True] * 8


@pytest.mark.parametrize("d", [-5, -1, 3, 10, 34])
def test_lagarias_conditions_are_uniform(d, cfg):
    rep = verify_field(d, cfg)
    assert rep.lagarias_uniform


@pytest.mark.parametrize("d", [-21, -14, -5, 15, 79])
def test_field_reports_pass(d, cfg):
    rep = verify_field(d, cfg)
    assert not rep.has_fail, rep.diagnostics
    assert len(set(rep.rho_plus_triple)) == 1


@pytest.mark.parametrize("d,k", [(34, 0), (3, 0), (-5, 1), (10, 1), (15, 1)])
def test_clp_rank(d, k):
    assert clp_rank(make_field(d)) == k


def test_scan_small_range(cfg):
    res = scan(2, 3, cfg)
    assert [r.d for r in res.reports] == [2, 3]
    assert res.aggregate.fields == 2
    assert all(r.all_pass for r in res.reports)
    assert res.aggregate.failing == []
    assert res.aggregate.stopped_at is None


def test_scan_negative_range(cfg):
    res = scan(-2, -1, cfg)
    # d = −2 también es libre de cuadrados
    assert [r.d for r in res.reports] == [-2, -1]


def test_scan_range_skips_non_squarefree():
    assert scan_range(-2, -1) == [-2, -1]
    assert scan_range(8, 9) == []
    assert scan_range(0, 5) == [2, 3, 5]


def test_scan_empty_and_inverted(cfg):
    assert scan(8, 9, cfg).reports == []
    with pytest.raises(UsageError):
        scan(5, 2, cfg)


def test_fuzz_is_deterministic():
    F = make_field(10)
    a = reciprocity_fuzz(F, 20, 30, seed=7)
    b = reciprocity_fuzz(F, 20, 30, seed=7)
    assert a.to_dict() == b.to_dict()
    assert a.verdict is Verdict.PASS


@pytest.mark.parametrize("d", [653, 1913])
def test_fuzz_reaches_trials_for_large_real_fields(d):
    res = reciprocity_fuzz(make_field(d), 10, 50, seed=0)
    assert res.passed == 10
    assert res.failed == 0
    assert res.attempts < 10 * 2000


def test_verify_is_deterministic(cfg):
    assert verify_field(15, cfg).model_dump() == verify_field(15, cfg).model_dump()


# ======================================================
# barridos largos
# ======================================================
@pytest.mark.slow
def test_no_failures_up_to_300():
    res = scan(-300, 300, Config(fuzz_trials=5, supplementary_norm_bound=30), stop_on_fail=False)
    assert res.aggregate.failing == []
    for rep in res.reports:
        assert rep.checks["tsel"] == "pass"
        assert rep.checks["rho_plus_triple"] == "pass"


@pytest.mark.slow
@pytest.mark.parametrize("d", scan_range(-100, 100))
def test_pairings_perfect_up_to_100(d):
    F = make_field(d)
    for kind in PairingKind:
        assert pairing_matrix(F, kind).verdict is PairingVerdict.PERFECT


@pytest.mark.slow
@pytest.mark.parametrize("d", [2, -2, 5, -5, 10, -10, 3, 15, 34, -1])
def test_reciprocity_fuzz_500(d):
    res = reciprocity_fuzz(make_field(d), 500, 50, seed=0)
    assert res.failed == 0
    assert res.passed == 500


@pytest.mark.slow
@pytest.mark.parametrize("d", [-10, -5, -2, -1, 2, 3, 5, 10, 15, 34])
def test_supplementary_law_up_to_500(d):
    F = make_field(d)
    for P in iter_prime_ideals(F, 499):
        assert supplementary_check(F, P, 5000) is SupplementaryVerdict.VERIFIED

import pytest

import coxrig

PGL2 = "rank 3; m 1 3 = 3; m 2 3 = inf"


def test_classify_affine_triangle():
    report = coxrig.classify("rank 3; m 1 2 = 4; m 1 3 = 4")
    assert report["kind"] == "classification"
    assert [c["class"] for c in report["components"]] == ["Affine"]


def test_pgl2_splits_and_is_rigid():
    split = coxrig.split(PGL2)
    assert [n["generators"] for n in split["nodes"]] == [[1, 2], [1, 3]]
    assert [e["generators"] for e in split["edges"]] == [[1]]
    report = coxrig.rigidity(PGL2)
    assert report["overall"] == "TorsionRigid-by-Thm-1.6"
    assert report["edges"][0]["reason"] == "TrivialOut"


def test_counterexample_fails_hypothesis():
    report = coxrig.rigidity(coxrig.counterexample_system())
    assert report["overall"] == "HypothesisFails"
    assert report["edges"][0]["witness"]


def test_checklists_pass():
    for checklist in (coxrig.verify_counterexample(), coxrig.verify_dihedral()):
        assert all(item["passed"] or item["informational"] for item in checklist["items"])


def test_reduce_word():
    assert coxrig.reduce_word("rank 2; m 1 2 = 3", [1, 2, 1, 2]) == [2, 1]
    assert coxrig.reduce_word("rank 3; m 1 2 = 3; m 2 3 = 3; m 1 3 = 3", [1, 2, 1, 3, 2, 3, 1, 2, 1], budget=2) is None
    with pytest.raises(coxrig.IndexOutOfRange):
        coxrig.reduce_word(PGL2, [4])


def test_ball_counts():
    report = coxrig.ball(PGL2, radius=4)
    assert report["count_by_depth"] == [1, 2, 4, 4, 8]


def test_group_order_and_errors():
    assert coxrig.group_order(["(1 2)", "(1 2 3 4 5)"]) == 120
    with pytest.raises(coxrig.InvalidMatrix):
        coxrig.classify("rank 2; m 1 2 = 0")
    with pytest.raises(coxrig.CoxrigError):
        coxrig.classify("rank")


def test_run_cli_exit_codes():
    code, out, _ = coxrig.run_cli(["verify-dihedral"])
    assert code == 0 and '"kind": "checklist"' in out
    code, _, err = coxrig.run_cli(["classify", "--system", "rank 2; m 1 2 = 0"])
    assert code == 2 and err

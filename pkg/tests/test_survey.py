import pytest

from realcert.cartan import CartanContext
from realcert.drinfeld import DrinfeldPoly, Fundamental as F
from realcert.reality import Status, SurveyError, SurveyParams, survey
from realcert.reality.survey import canonical_key, count_polynomials


def test_rank_one_window():
    rep = survey(SurveyParams(1, 0, 4, 2))
    assert rep.enumerated == 20
    assert len(rep.entries) == 6
    assert rep.status_counts[Status.STRONGLY_REAL] == 6
    assert rep.candidates == []
    assert "6 classes" in rep.summary()


def test_canonical_key_mod_shift_and_mirror():
    ctx = CartanContext(3)
    a = DrinfeldPoly(ctx, (F(1, 0), F(2, 3)))
    assert canonical_key(a) == canonical_key(a.shifted(7))
    assert canonical_key(a) == canonical_key(a.dualize("kappa_star"))
    assert canonical_key(DrinfeldPoly.one(ctx)) == ()


def test_limit_and_window_errors():
    p = SurveyParams(3, 0, 20, 6, limit=100)
    assert count_polynomials(p) > 100
    with pytest.raises(SurveyError):
        survey(p)
    with pytest.raises(SurveyError):
        survey(SurveyParams(2, 3, 1, 2))


def test_rank_three_parity_window_finds_no_rds_graph():
    rep = survey(SurveyParams(3, 0, 6, 5, parity=True))
    assert len(rep.entries) == 1165
    hit = rep.find(DrinfeldPoly(CartanContext(3), (F(2, 0), F(1, 3), F(3, 3), F(2, 6), F(2, 6))))
    assert hit is not None and hit.index.status is Status.INCONCLUSIVE
    assert hit in rep.candidates


def test_nodes_restriction():
    rep = survey(SurveyParams(3, 0, 2, 2, nodes=(2,)))
    assert all(w.node == 2 for e in rep.entries for w in e.poly.weights)

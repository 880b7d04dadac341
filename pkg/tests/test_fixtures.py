import pytest

from rspace.fixtures import (
    TORIC_FIXTURES,
    WORKED_FIXTURES,
    Fixture,
    labelled_rsv,
    suite,
)


@pytest.mark.parametrize("fixture", WORKED_FIXTURES, ids=lambda f: f.name)
def test_worked_fixture(fixture):
    result = fixture.run(seed=0)
    assert result.passed, result.detail


def test_fixtures_self_describe():
    for fx in WORKED_FIXTURES + TORIC_FIXTURES:
        assert fx.provenance.split(":")[0] in ("reference", "derived")
        assert fx.tolerance >= 0


def test_suite_names():
    assert len(suite("paper")) == 6
    assert len(suite("all")) == len(WORKED_FIXTURES) + len(TORIC_FIXTURES)
    with pytest.raises(ValueError):
        suite("nope")


def test_failing_check_is_reported_not_raised():
    def boom(seed):
        raise RuntimeError("bad")

    result = Fixture("boom", "derived: none", 0.0, boom).run()
    assert not result.passed and "RuntimeError" in result.detail


def test_labelled_rsv_rejects_repeats():
    from rspace.fixtures import K00, Q3
    with pytest.raises(ValueError):
        labelled_rsv(Q3, 2, [((0, 1), [K00]), ((0, 1), [K00]), ((1, 2), [K00])])


def test_toric_fast_fixtures():
    for fx in TORIC_FIXTURES:
        if fx.name == "toric-l2-random-atom-search":
            continue
        result = fx.run(seed=0)
        assert result.passed, result.detail

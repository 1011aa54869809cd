import json

import pytest

from svlie.verify import SplitMix64, SUITES, render_text, run_suite


def test_splitmix_is_deterministic():
    a = SplitMix64(12345)
    b = SplitMix64(12345)
    assert [a.next() for _ in range(10)] == [b.next() for _ in range(10)]
    assert SplitMix64(1).next() != SplitMix64(2).next()


def test_unknown_suite_rejected():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("jacobi", radius=0)
    with pytest.raises(ValueError):
        run_suite("jacobi", cases=0)


@pytest.mark.parametrize(
    "suite,kwargs",
    [
        ("jacobi", dict(radius=3)),
        ("center", dict(radius=4)),
        ("derivations", dict(radius=3, seed=2, cases=8)),
        ("hom-vanishing", dict(radius=3)),
        ("group-law", dict(radius=3, seed=5, cases=10)),
    ],
)
def test_suites_pass(suite, kwargs):
    report = run_suite(suite, **kwargs)
    assert report["passed"]
    assert report["violations"] == 0
    assert report["suite"] == suite


def test_reports_are_byte_identical():
    first = run_suite("group-law", radius=3, seed=9, cases=6)
    second = run_suite("group-law", radius=3, seed=9, cases=6)
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    different = run_suite("group-law", radius=3, seed=10, cases=6)
    assert different["seed"] != first["seed"]


def test_verdict_table_contents():
    report = run_suite("lemma36-verdict", radius=3, seed=0, cases=10)
    assert report["passed"]
    verdicts = {r["name"]: r["verdict"] for r in report["relations"]}
    assert verdicts == {
        "w": "AGREE",
        "i": "AGREE",
        "u": "AGREE",
        "gamma": "AGREE",
        "alpha": "DISAGREE",
        "beta": "DISAGREE",
        "b": "AGREE",
        "c": "AGREE",
        "delta-product": "DISAGREE",
    }
    for relation in report["relations"]:
        if relation["verdict"] == "DISAGREE":
            witness = relation["witness"]
            assert witness is not None
            assert witness["printed"] != witness["oracle"]
        else:
            assert relation["witness"] is None


def test_render_text_mentions_verdicts():
    report = run_suite("lemma36-verdict", radius=3, seed=0, cases=5)
    text = render_text(report)
    assert "ok" in text and "DISAGREE" in text and text.endswith("PASS")


def test_all_suites_named():
    assert set(SUITES) == {
        "jacobi",
        "center",
        "derivations",
        "hom-vanishing",
        "group-law",
        "lemma36-verdict",
        "all",
    }

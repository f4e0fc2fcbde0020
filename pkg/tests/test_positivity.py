"""Positivity classification, reference comparison, and the rank-k(k+1) check."""

from functools import lru_cache

import pytest

from qhecke.classes import ClassSet
from qhecke.errors import IntegrityError
from qhecke.positivity import (
    Classification,
    ClassResult,
    classify,
    compare_positive_nonregular,
    square_ladder_verdict,
)
from qhecke.qpoly import QPoly, render
from qhecke.reference import (
    POSITIVE_NONREGULAR,
    coxeter_diag_trace,
    label_degree,
    parse_label,
)
from qhecke.rootsys import CoxeterType, ElementTable, RootDatum


@lru_cache(maxsize=None)
def classified(name):
    table = ElementTable(RootDatum(CoxeterType.parse(name)))
    return classify(table)


def test_parse_label_round_trip_and_degree():
    assert parse_label("Φ8Φ2^2") == {8: 1, 2: 2}
    assert parse_label("Φ12") == {12: 1}
    assert label_degree("Φ8Φ2^2") == 6
    assert label_degree("Φ6Φ2^2") == 4
    for bad in ("", "Φ0", "Φ2^0", "Φ2Φ2", "x", "Φ2^"):
        with pytest.raises(Exception):
            parse_label(bad)


def test_classify_g2_full():
    c = classified("G2")
    flags = [(r.record.label_str, r.positive) for r in c.results]
    assert flags == [
        ("Φ1^2", True),
        ("Φ2Φ1", False),
        ("Φ2Φ1", False),
        ("Φ6", True),
        ("Φ3", True),
        ("Φ2^2", True),
    ]
    assert c.positive_elliptic_nonregular == []
    assert c.positive_nonelliptic == []


def test_classify_b3_finds_one_nonregular_positive():
    c = classified("B3")
    labels = [r.record.label_str for r in c.positive_elliptic_nonregular]
    assert labels == ["Φ4Φ2"]
    assert c.positive_nonelliptic == []


def test_every_regular_class_positive_small():
    for name in ("A2", "A3", "B2", "B3", "G2", "D4"):
        for r in classified(name).results:
            if r.record.is_regular:
                assert r.positive


def test_coxeter_fixture_matches_computation():
    for name in ("A1", "A2", "A3", "B2", "B3", "G2", "D4"):
        c = classified(name)
        h = c.table.datum.coxeter_number
        fixture = coxeter_diag_trace(c.table.datum.ctype)
        # the Coxeter class is the regular class of order h
        cox = [r for r in c.results if r.record.is_regular and r.record.order == h]
        assert len(cox) == 1
        assert cox[0].nww == fixture, name
        assert cox[0].nww(1) == h


def test_classification_values_at_one_sum_to_class_equation():
    # sum over classes of |class| = |W|; also every diagonal value at q=1
    # equals the centralizer order (already enforced inside classify)
    for name in ("A2", "B2", "B3"):
        c = classified(name)
        assert sum(r.record.size for r in c.results) == c.table.size


def test_compare_reference_clean_and_anomalous():
    diff = compare_positive_nonregular("G2", [])
    assert diff.ok and not diff.anomalies
    # B5-style: anomalous entry matched by containment
    diff = compare_positive_nonregular("B5", ["Φ8Φ2", "Φ6Φ2^3", "Φ4^2Φ2"])
    assert diff.ok
    assert diff.anomalies == (("Φ6Φ2^2", "Φ6Φ2^3"),)
    assert set(diff.matched) == {"Φ8Φ2", "Φ4^2Φ2"}
    # missing entry is a failure
    diff = compare_positive_nonregular("B5", ["Φ8Φ2", "Φ6Φ2^3"])
    assert not diff.ok and diff.missing == ("Φ4^2Φ2",)
    # extra computed label is a failure
    diff = compare_positive_nonregular("B5", ["Φ8Φ2", "Φ6Φ2^3", "Φ4^2Φ2", "Φ10"])
    assert not diff.ok and diff.extra == ("Φ10",)
    # anomalous label with no containment match is reported missing
    diff = compare_positive_nonregular("B5", ["Φ8Φ2", "Φ4^2Φ2"])
    assert not diff.ok and "Φ6Φ2^2" in diff.missing


def test_compare_reference_known_omission():
    # the one class proven positive but absent from its row: reported as an
    # omission and not a failure, but only for its own type
    diff = compare_positive_nonregular(
        "B5", ["Φ8Φ2", "Φ6Φ2^3", "Φ4^2Φ2", "Φ6Φ4Φ2"]
    )
    assert diff.ok
    assert diff.omissions == ("Φ6Φ4Φ2",)
    assert not diff.extra
    diff = compare_positive_nonregular(
        "B6", ["Φ10Φ2^2", "Φ8Φ4", "Φ8Φ2^2", "Φ6Φ2^4", "Φ6Φ4Φ2"]
    )
    assert not diff.ok and diff.extra == ("Φ6Φ4Φ2",) and not diff.omissions


def test_compare_reference_duplicate_labels():
    diff = compare_positive_nonregular("E8", ["Φ18Φ6", "Φ18Φ2^2", "Φ9Φ3", "Φ14Φ2^2"])
    assert diff.ok
    diff = compare_positive_nonregular(
        "E8", ["Φ18Φ6", "Φ18Φ6", "Φ18Φ2^2", "Φ9Φ3", "Φ14Φ2^2"]
    )
    assert not diff.ok and diff.extra == ("Φ18Φ6",)


def test_square_ladder_b2_applicable_and_regular():
    v = square_ladder_verdict(classified("B2"))
    assert v.applicable and v.k == 1 and v.found
    assert v.label == "Φ4"
    assert v.positive and v.regular


def test_square_ladder_b3_not_applicable():
    v = square_ladder_verdict(classified("B3"))
    assert not v.applicable


def test_square_ladder_rejects_other_families():
    with pytest.raises(ValueError):
        square_ladder_verdict(classified("G2"))


def test_classify_checkpoint_provider_and_progress():
    table = ElementTable(RootDatum(CoxeterType.parse("B2")))
    cs = ClassSet(table)

    class Cp:
        def __init__(self):
            self.chunks = {}

        def get(self, idx):
            return self.chunks.get(idx)

        def put(self, idx, coeffs):
            self.chunks[idx] = coeffs

    cps = {}
    seen = []
    c1 = classify(
        table,
        cs,
        chunk_size=3,
        checkpoint_provider=lambda i, rec: cps.setdefault(i, Cp()),
        progress=lambda done, total: seen.append((done, total)),
    )
    assert seen == [(i + 1, len(cs.records)) for i in range(len(cs.records))]
    assert all(len(cp.chunks) == -(-table.size // 3) for cp in cps.values())
    # resuming from the filled checkpoints gives identical results
    c2 = classify(table, cs, chunk_size=3, checkpoint_provider=lambda i, rec: cps[i])
    assert [r.nww for r in c1.results] == [r.nww for r in c2.results]
    assert [r.nww for r in c1.results] == [r.nww for r in classify(table, cs).results]

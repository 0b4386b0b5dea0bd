import pytest

from oracles import closure_equal
from rewbench.catalog import get_entry
from rewbench.completion import (
    CONTAINMENT,
    SUFFIX_PREFIX,
    CompletionLimits,
    check_local_confluence,
    confluence_report_json,
    critical_pairs,
    knuth_bendix,
    overlaps,
)
from rewbench.core import (
    ZERO,
    Alphabet,
    Presentation,
    Rule,
    RewritingSystem,
    UnorientableRelationError,
    equal_in_monoid,
)


def test_catalog_systems_have_no_overlaps():
    for name in ("M1", "M2", "M3", "M4", "M5", "dehn-example"):
        system = get_entry(name).system
        assert overlaps(system) == []
        report = check_local_confluence(system)
        assert report.locally_confluent
        assert report.terminating
        assert report.critical_pair_count == 0
        assert report.unresolved == ()


def test_self_overlap_at_nonzero_offset():
    system = RewritingSystem(Alphabet("a", "a"), [Rule("aa", "a")])
    found = overlaps(system)
    assert len(found) == 1
    ov = found[0]
    assert (ov.rule1, ov.rule2, ov.kind, ov.offset, ov.word) == \
        (0, 0, SUFFIX_PREFIX, 1, "aaa")
    pairs = critical_pairs(system)
    assert len(pairs) == 1
    assert pairs[0].left == "aa" and pairs[0].right == "aa"
    assert pairs[0].joinable and pairs[0].witness == "a"


def test_containment_overlap_with_zero_is_unresolved():
    system = RewritingSystem(Alphabet("ab", "ab"),
                             [Rule("abb", ""), Rule("ab", ZERO)])
    found = overlaps(system)
    assert len(found) == 1
    ov = found[0]
    assert (ov.rule1, ov.rule2, ov.kind, ov.offset, ov.word) == \
        (0, 1, CONTAINMENT, 0, "abb")
    report = check_local_confluence(system)
    assert not report.locally_confluent
    assert report.critical_pair_count == 1
    pair = report.unresolved[0]
    assert pair.left == "" and pair.right is ZERO
    assert not pair.joinable and pair.witness is None


def test_suffix_prefix_reducts():
    system = RewritingSystem(Alphabet("ab", "ab"),
                             [Rule("ab", "a"), Rule("ba", "b")])
    words = {(ov.kind, ov.word) for ov in overlaps(system)}
    assert (SUFFIX_PREFIX, "aba") in words
    assert (SUFFIX_PREFIX, "bab") in words


def test_report_json_schema():
    report = check_local_confluence(get_entry("M2").system)
    assert confluence_report_json(report, get_entry("M2").system) == {
        "locallyConfluent": True,
        "terminating": True,
        "criticalPairCount": 0,
        "unresolved": [],
    }
    system = RewritingSystem(Alphabet("ab", "ab"),
                             [Rule("abb", ""), Rule("ab", ZERO)])
    obj = confluence_report_json(check_local_confluence(system), system)
    assert obj["unresolved"] == [{
        "rule1": 0, "rule2": 1, "overlapWord": "abb",
        "left": "1", "right": "0",
    }]


def test_knuth_bendix_on_already_complete_system():
    entry = get_entry("M2")
    outcome = knuth_bendix(entry.presentation, entry.precedence)
    assert outcome.completed
    assert outcome.steps == 0
    assert set(outcome.system.rules) == set(entry.system.rules)
    assert check_local_confluence(outcome.system).locally_confluent


def test_knuth_bendix_orients_commutation():
    p = Presentation(Alphabet("ab", "ab"), (("ab", "ba"),))
    outcome = knuth_bendix(p, "ba")
    assert outcome.completed
    assert outcome.system.rules == (Rule("ab", "ba"),)


def test_knuth_bendix_adds_rules():
    p = Presentation(Alphabet("ab", "ab"), (("ab", "a"), ("ba", "b")))
    outcome = knuth_bendix(p)
    assert outcome.completed
    assert set(outcome.system.rules) == {
        Rule("ab", "a"), Rule("ba", "b"), Rule("aa", "a"), Rule("bb", "b")}
    report = check_local_confluence(outcome.system)
    assert report.locally_confluent and report.terminating


def test_knuth_bendix_completed_system_matches_closure_oracle():
    p = Presentation(Alphabet("ab", "ab"), (("ab", "a"), ("ba", "b")))
    system = knuth_bendix(p).system
    words = [""] + [w + g for w in ("", "a", "b", "aa", "ab", "ba", "bb")
                    for g in "ab"]
    for u in words:
        for v in words:
            assert equal_in_monoid(system, u, v) == \
                closure_equal(p, u, v, max_len=8)


def test_knuth_bendix_is_deterministic():
    p = Presentation(Alphabet("ab", "ab"), (("ab", "a"), ("ba", "b")))
    first = knuth_bendix(p)
    second = knuth_bendix(p)
    assert first.system.rules == second.system.rules
    assert first.steps == second.steps


def test_knuth_bendix_hits_limits_on_braidlike_relation():
    p = Presentation(Alphabet("ab", "ab"), (("aba", "bab"),))
    outcome = knuth_bendix(p, limits=CompletionLimits(
        max_rules=8, max_word_len=16, max_steps=500))
    assert not outcome.completed
    assert outcome.reason


def test_knuth_bendix_detects_collapse_to_zero():
    p = Presentation(Alphabet("a", "a"), (("a", ""), ("a", ZERO)))
    with pytest.raises(UnorientableRelationError):
        knuth_bendix(p)

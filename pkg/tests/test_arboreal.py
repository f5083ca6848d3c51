"""Decomposition validator and construction loop: worked instances with
frozen shapes, tampering checks, the dichotomy property on random digraphs,
and haven queries."""
import json
import random

import pytest

from dirtw import (
    ArborealDecomposition,
    Digraph,
    LinkedSetCertificate,
    brute_force_balanced_separator,
    decompose,
    haven_eval,
    validate,
)

from util import (
    bidirected_clique,
    path_digraph,
    pendant_pairs_digraph,
    random_digraph,
)


def drawn_decomposition():
    # the hand decomposition of the pendant-pairs digraph: a chain
    # {a} -> {b,c} with guard {b,c}, then leaves {d,e} (guard {b}) and
    # {f,g} (guard {c})
    return ArborealDecomposition(
        0,
        {0: {"a"}, 1: {"b", "c"}, 2: {"d", "e"}, 3: {"f", "g"}},
        {(0, 1): {"b", "c"}, (1, 2): {"b"}, (1, 3): {"c"}},
    )


# ---------------------------------------------------------------- validator


def test_trivial_decomposition_is_valid_and_nice():
    D = pendant_pairs_digraph()
    dec = ArborealDecomposition(0, {0: set(D.vertices())}, {})
    report = validate(D, dec, nice=True)
    assert report.ok
    assert report.width == D.n - 1


def test_drawn_decomposition_valid_width_two():
    report = validate(pendant_pairs_digraph(), drawn_decomposition())
    assert report.ok
    assert report.width == 2


def test_drawn_decomposition_is_not_nice():
    # beyond the first arc, {d,e,f,g} splits into two strong components of
    # D minus {b,c}; and the bag {b,c} equals its own in-guard
    report = validate(pendant_pairs_digraph(), drawn_decomposition(), nice=True)
    assert not report.ok
    assert report.width == 2
    clauses = sorted(v.clause for v in report.violations)
    assert clauses == ["child-guard", "strong-component"]
    assert "(0, 1)" in report.violations[0].detail or "(0, 1)" in report.violations[1].detail


def test_weakened_guard_is_caught_with_witness():
    dec = drawn_decomposition()
    tampered = ArborealDecomposition(0, dec.bags, {**dec.guards, (0, 1): frozenset({"b"})})
    report = validate(pendant_pairs_digraph(), tampered)
    assert not report.ok
    guarded = [v for v in report.violations if v.clause == "guarded"]
    assert len(guarded) == 1
    assert "'a'" in guarded[0].detail  # the walk escapes through a


def test_partition_violations_are_reported():
    D = path_digraph(1, 2, 3)
    dec = ArborealDecomposition(0, {0: {1, 2}, 1: {2}}, {(0, 1): frozenset()})
    report = validate(D, dec)
    clauses = {v.clause for v in report.violations}
    assert "partition" in clauses  # 2 twice, 3 nowhere
    details = " | ".join(v.detail for v in report.violations)
    assert "in bags" in details and "in no bag" in details


def test_structural_violations_are_reported():
    D = path_digraph(1, 2)
    orphan = ArborealDecomposition(0, {0: {1}, 1: {2}}, {})
    assert any(v.clause == "arborescence" for v in validate(D, orphan).violations)
    two_parents = ArborealDecomposition(
        0, {0: {1}, 1: {2}, 2: set()}, {(0, 1): frozenset(), (0, 2): frozenset(), (1, 2): frozenset()})
    assert any("in-degree" in v.detail for v in validate(D, two_parents).violations)


# ------------------------------------------------------------ construction


def test_small_graph_stays_one_node():
    D = bidirected_clique(5)
    dec = decompose(D, 2)  # n = 5 <= 3k-1
    assert isinstance(dec, ArborealDecomposition)
    assert dec.nodes() == [0]
    assert validate(D, dec, nice=True).ok
    assert dec.width == 4


def test_dag_k1_gives_nice_width_at_most_one():
    D = path_digraph("a", "b", "c")
    dec = decompose(D, 1)
    assert isinstance(dec, ArborealDecomposition)
    report = validate(D, dec, nice=True)
    assert report.ok
    assert report.width <= 1


def test_random_dags_k1_all_nice():
    rng = random.Random(0xDA6)
    for _ in range(25):
        n = rng.randint(2, 30)
        D = Digraph()
        for v in range(n):
            D.add_vertex(v)
        for u in range(n):
            for w in range(u + 1, n):
                if rng.random() < 0.15:
                    D.add_edge(u, w)
        dec = decompose(D, 1)
        assert isinstance(dec, ArborealDecomposition)
        report = validate(D, dec, nice=True)
        assert report.ok and report.width <= 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bidirected_clique_three_k_forces_certificate(k):
    D = bidirected_clique(3 * k)
    cert = decompose(D, k)
    assert isinstance(cert, LinkedSetCertificate)
    assert len(cert.T) == 2 * k - 1
    assert cert.k == cert.r == k - 1
    if D.n <= 10:
        assert brute_force_balanced_separator(D, cert.T, k - 1, k - 1).linked


def test_six_clique_certificate_shape():
    cert = decompose(bidirected_clique(6), 2)
    assert isinstance(cert, LinkedSetCertificate)
    assert cert.T == frozenset({1, 2, 3})


def test_pendant_pairs_k2_decomposes_nicely():
    D = pendant_pairs_digraph()
    dec = decompose(D, 2)
    assert isinstance(dec, ArborealDecomposition)
    report = validate(D, dec, nice=True)
    assert report.ok
    assert report.width <= 4


def test_parameter_validation():
    with pytest.raises(ValueError):
        decompose(path_digraph(1, 2), 0)
    with pytest.raises(ValueError):
        decompose(path_digraph(1, 2), -1)
    with pytest.raises(ValueError):
        decompose(Digraph(), 3)


def test_decompose_is_deterministic():
    D = pendant_pairs_digraph()
    a = decompose(D, 2)
    b = decompose(D, 2)
    assert a.to_json() == b.to_json()


def test_dichotomy_on_random_digraphs():
    rng = random.Random(0x0DEC)
    outcomes = {"dec": 0, "cert": 0}
    for _ in range(60):
        n = rng.randint(1, 12)
        D = random_digraph(rng, n, rng.uniform(0.05, 0.6))
        k = rng.randint(1, 4)
        out = decompose(D, k)
        if isinstance(out, ArborealDecomposition):
            report = validate(D, out, nice=True)
            assert report.ok, report.violations
            assert report.width <= 3 * k - 2
            outcomes["dec"] += 1
        else:
            assert len(out.T) == 2 * k - 1
            assert brute_force_balanced_separator(D, out.T, k - 1, k - 1).linked
            outcomes["cert"] += 1
    assert outcomes["dec"] and outcomes["cert"]  # both arms exercised


def test_decomposition_json_round_trip():
    D = pendant_pairs_digraph()
    dec = decompose(D, 2)
    doc = dec.to_json()
    assert list(doc) == ["nodes", "arcs", "root"]
    again = ArborealDecomposition.from_json(json.loads(json.dumps(doc)))
    assert again.to_json() == doc
    assert validate(D, again, nice=True).ok


def test_certificate_json_round_trip():
    cert = LinkedSetCertificate(frozenset({"x", "y", "z"}), 1, 1)
    doc = cert.to_json()
    assert doc == {"T": ["x", "y", "z"], "k": 1, "r": 1}
    assert LinkedSetCertificate.from_json(json.loads(json.dumps(doc))) == cert
    with pytest.raises(ValueError):
        LinkedSetCertificate.from_json({"k": 1})


# -------------------------------------------------------------------- haven


def test_haven_whole_graph_at_empty_query():
    D = bidirected_clique(4)
    cert = LinkedSetCertificate(frozenset({1, 2, 3}), 1, 1)
    assert haven_eval(D, cert, set()) == frozenset({1, 2, 3, 4})


def test_haven_on_five_clique():
    D = bidirected_clique(5)
    cert = LinkedSetCertificate(frozenset(D.vertices()), 2, 2)
    assert haven_eval(D, cert, {1, 2}) == frozenset({3, 4, 5})


def test_haven_monotone_under_query_growth():
    D = bidirected_clique(5)
    cert = LinkedSetCertificate(frozenset(D.vertices()), 2, 2)
    assert haven_eval(D, cert, {1, 2}) <= haven_eval(D, cert, {1})


def test_haven_budget_enforced():
    D = bidirected_clique(5)
    cert = LinkedSetCertificate(frozenset(D.vertices()), 2, 2)
    with pytest.raises(ValueError):
        haven_eval(D, cert, {1, 2, 3})


def test_haven_rejects_corrupt_certificates():
    D = path_digraph("a", "b", "c")
    thin = LinkedSetCertificate(frozenset({"a", "b", "c"}), 1, 1)
    with pytest.raises(ValueError):
        haven_eval(D, thin, set())  # no component reaches r+1 terminals
    two_triangles = Digraph()
    for base in (0, 3):
        for i in range(3):
            two_triangles.add_bidirected(base + i, base + (i + 1) % 3)
    wide = LinkedSetCertificate(frozenset(range(6)), 1, 2)
    with pytest.raises(ValueError):
        haven_eval(two_triangles, wide, set())  # two qualifying components


def test_haven_nested_queries_on_pipeline_certificate():
    D = bidirected_clique(9)
    cert = decompose(D, 3)
    assert isinstance(cert, LinkedSetCertificate)
    rng = random.Random(0xA7EA)
    universe = sorted(D.vertices())
    for _ in range(100):
        big = rng.sample(universe, rng.randint(0, cert.k))
        small = rng.sample(big, rng.randint(0, len(big)))
        assert haven_eval(D, cert, set(big)) <= haven_eval(D, cert, set(small))

"""Stratum bookkeeping for the compactified configuration polytopes."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starprod import (
    FacetComposition,
    InputError,
    Stratum,
    dim,
    enumerate_strata,
    facet_compositions,
)

# interior strata count 1; each extra nesting level adds a codimension
SUPERCATALAN = {2: 1, 3: 3, 4: 11, 5: 45, 6: 197, 7: 903}
CATALAN = {2: 1, 3: 2, 4: 5, 5: 14, 6: 42, 7: 132}


def test_dimension_formula():
    assert dim(2) == 0
    assert dim(5) == 3
    with pytest.raises(InputError):
        dim(1)


def test_total_stratum_counts():
    for n, expected in SUPERCATALAN.items():
        total = sum(len(enumerate_strata(n, c)) for c in range(0, n - 1))
        assert total == expected


def test_top_codimension_counts_are_catalan():
    for n, expected in CATALAN.items():
        assert len(enumerate_strata(n, n - 2)) == expected


def test_codimension_one_counts():
    # facets: choose the inner block size and its slot
    for n in range(3, 8):
        assert len(enumerate_strata(n, 1)) == n * (n - 1) // 2 - 1
        assert len(facet_compositions(n)) == n * (n - 1) // 2 - 1


def test_alternating_count_sum():
    for n in range(2, 8):
        signed = sum((-1) ** c * len(enumerate_strata(n, c))
                     for c in range(0, n - 1))
        assert signed == (-1) ** n


def test_three_point_strata():
    assert len(enumerate_strata(3, 1)) == 2
    labels = [s.serialize() for s in enumerate_strata(3, 1)]
    assert labels == ["((1 2) 3)", "(1 (2 3))"]


def test_three_point_facet_notation():
    fcs = facet_compositions(3)
    assert [fc.notation for fc in fcs] == ["m2 o1 m2", "m2 o2 m2"]
    assert all(isinstance(fc, FacetComposition) for fc in fcs)
    assert fcs[0].stratum.serialize() == "((1 2) 3)"
    assert (fcs[0].outer, fcs[0].position, fcs[0].inner) == (2, 1, 2)


def test_serialization_round_trip_across_enumeration():
    for n in range(2, 6):
        for c in range(0, n - 1):
            for s in enumerate_strata(n, c):
                assert Stratum.parse(s.serialize()) == s


def test_codim_and_dimension_accessors():
    s = Stratum.parse("((1 2) 3)")
    assert s.leaves == 3
    assert s.codim == 1
    assert s.dimension == 0
    top = Stratum.parse("(1 2 3 4)")
    assert top.codim == 0
    assert top.dimension == 2


def test_contractions_merge_one_level():
    for n in range(3, 6):
        for c in range(1, n - 1):
            for s in enumerate_strata(n, c):
                children = s.contractions()
                assert children
                for child in children:
                    assert child.codim == s.codim - 1
                    assert child.leaves == s.leaves
    # the fully smoothed stratum has nothing left to contract
    assert Stratum.parse("(1 2 3)").contractions() == ()


def test_contractions_cover_the_coarser_layer():
    for n in range(3, 6):
        for c in range(1, n - 1):
            reached = set()
            for s in enumerate_strata(n, c):
                reached.update(t.serialize() for t in s.contractions())
            layer = {t.serialize() for t in enumerate_strata(n, c - 1)}
            assert reached == layer


def test_invalid_trees_rejected():
    with pytest.raises(InputError):
        Stratum.parse("(1)")
    with pytest.raises(InputError):
        Stratum.parse("(1 3)")
    with pytest.raises(InputError):
        Stratum.parse("((1 2))")
    with pytest.raises(InputError):
        Stratum.parse("(2 1)")
    with pytest.raises(InputError):
        Stratum.parse("(1 2")


def test_enumeration_bounds():
    with pytest.raises(InputError):
        enumerate_strata(1, 0)
    with pytest.raises(InputError):
        enumerate_strata(4, 3)
    with pytest.raises(InputError):
        facet_compositions(2)


@given(n=st.integers(min_value=3, max_value=6))
@settings(max_examples=10, deadline=None)
def test_facets_match_codim_one_strata(n):
    facet_trees = [fc.stratum.serialize() for fc in facet_compositions(n)]
    layer = [s.serialize() for s in enumerate_strata(n, 1)]
    assert sorted(facet_trees) == sorted(layer)

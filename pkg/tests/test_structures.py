"""Bundled bivector fixtures."""

import pytest

from starprod import (
    FIXTURE_NAMES,
    InputError,
    Multivector,
    all_fixtures,
    coeff_space,
    fixture,
    is_poisson,
    parse_poly,
)


def test_catalog_contents():
    assert FIXTURE_NAMES == ("canonical2d", "so3", "nonpoisson4d")
    assert set(all_fixtures()) == set(FIXTURE_NAMES)
    for name, alpha in all_fixtures().items():
        assert isinstance(alpha, Multivector)
        assert alpha.degree == 2
        assert fixture(name) == alpha


def test_unknown_fixture_lists_choices():
    with pytest.raises(InputError, match="canonical2d"):
        fixture("torus")


def test_canonical2d_components():
    c2 = fixture("canonical2d")
    assert c2.dim == 2
    assert c2.to_data()["components"] == {"1,2": "1"}


def test_so3_components_are_linear():
    so3 = fixture("so3")
    ring = coeff_space(3)
    assert so3.component(1, 2) == parse_poly("x3", ring)
    assert so3.component(2, 3) == parse_poly("x1", ring)
    assert so3.component(3, 1) == parse_poly("x2", ring)
    assert is_poisson(so3)


def test_nonpoisson4d_breaks_jacobi():
    np4 = fixture("nonpoisson4d")
    assert np4.dim == 4
    assert not is_poisson(np4)


def test_fixtures_are_cached():
    assert fixture("so3") is fixture("so3")

"""Catalog entries: structure, parameter validation, headline invariants."""

import pytest

from conftest import ALL_KEYS, built
from minmod import catalog
from minmod.sullivan import check_d_squared, check_minimality, dimension_formula


def test_all_entries_pass_structural_checks():
    for key, params in ALL_KEYS:
        af, cert = built(key, **params)
        assert check_d_squared(af.algebra), key
        assert check_minimality(af.algebra), key
        assert cert.replay(), key


def test_lemma_shape():
    af = catalog.build("lemma", i=0)
    assert [g.degree for g in af.generators] == [4, 6, 27, 29, 31, 77, 75]
    assert dimension_formula(af.algebra) == 231
    af = catalog.build("lemma", i=3)
    assert af.generators[-1].degree == 75 + 12
    assert dimension_formula(af.algebra) == 231 + 12


def test_chiral_shapes():
    af = catalog.build("chiral1", l1=4, l2=2)
    assert [g.degree for g in af.generators] == [2, 4, 11, 11, 17, 19]
    assert dimension_formula(af.algebra) == 54
    assert dimension_formula(catalog.build("chiral2", l=4).algebra) == 73
    assert dimension_formula(catalog.build("chiral3", l=5).algebra) == 47


def test_cp_and_sphere():
    af = catalog.build("cp", n=4)
    assert [g.degree for g in af.generators] == [2, 17]
    assert dimension_formula(af.algebra) == 16
    af = catalog.build("sphere", k=6)
    assert dimension_formula(af.algebra) == 6


def test_parameter_validation():
    with pytest.raises(ValueError):
        catalog.build("lemma", i=-1)
    with pytest.raises(ValueError):
        catalog.build("chiral1", l1=1, l2=2)
    with pytest.raises(ValueError):
        catalog.build("chiral3", l=4)
    with pytest.raises(ValueError):
        catalog.build("sphere", k=5)
    with pytest.raises(ValueError):
        catalog.build("lemma")  # missing i
    with pytest.raises(ValueError):
        catalog.build("lower-grading", i=1)  # unexpected parameter
    with pytest.raises(KeyError):
        catalog.build("nonesuch")


def test_describe_lists_every_entry():
    rows = catalog.describe()
    assert {r[0] for r in rows} == {e.key for e in catalog.ENTRIES}

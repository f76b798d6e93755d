import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqtriplets.checks import pairs_ideal_complex
from sqtriplets.io import (
    FormatError,
    complex_from_text,
    complex_to_text,
    module_from_text,
    module_to_text,
    triplet_from_text,
    triplet_to_text,
)
from sqtriplets.triplets import DegreeTriplet, enumerate_balanced

from conftest import random_free_complex, random_module


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_module_round_trip(seed, n):
    M = random_module(random.Random(seed), n)
    text = module_to_text(M)
    assert module_from_text(text) == M
    assert module_to_text(module_from_text(text)) == text


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_complex_round_trip(seed, n):
    F = random_free_complex(random.Random(seed), n)
    text = complex_to_text(F)
    assert complex_from_text(text) == F
    assert complex_to_text(complex_from_text(text)) == text


def test_complex_format_layout():
    text = complex_to_text(pairs_ideal_complex())
    F = complex_from_text(text)
    assert F == pairs_ideal_complex()
    assert '"generators"' in text and '"from": -1' in text


def test_rationals_in_files():
    text = '{"n": 1, "components": {"": 1, "1": 1}, "mult": {"1@": [["3/4"]]}}'
    M = module_from_text(text)
    assert '"3/4"' in module_to_text(M)


def test_bad_documents():
    with pytest.raises(FormatError):
        complex_from_text("not json")
    with pytest.raises(FormatError):
        complex_from_text('{"n": 2, "terms": [{"position": 0, "generators": [[1, 2]]}]}')
    with pytest.raises(FormatError):
        complex_from_text('{"n": 1, "terms": [{"position": 0, "generators": [[0]]}, '
                          '{"position": -1, "generators": [[1]]}], "diffs": [{"from": -1, "entries": [[1, 1]]}]}')


def test_triplet_text():
    T = triplet_from_text("n=3; A=0,2; B=0,2,3; C=1,2,3")
    assert T == DegreeTriplet(3, [0, 2], [0, 2, 3], [1, 2, 3])
    assert triplet_to_text(T) == "n=3; A=0,2; B=0,2,3; C=1,2,3"
    for T in enumerate_balanced(3):
        assert triplet_from_text(triplet_to_text(T)) == T
    with pytest.raises(FormatError):
        triplet_from_text("n=3; A=0,2")

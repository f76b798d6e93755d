import random

from hypothesis import given, settings
from hypothesis import strategies as st

from sqtriplets.degrees import all_degrees, mask, members, size
from sqtriplets.freecomplex import is_minimal, validate
from sqtriplets.sqmodule import (
    SqModule,
    alexander_dual_module,
    ell_complex,
    free_module,
    simple_module,
    squarefree_part_dim,
    standard_module,
    tor_betti,
)

from conftest import random_module


def test_standard_module_examples():
    M = standard_module(4, mask([1, 3, 4]), 0, mask([2]))
    assert {R for R, d in M.dims.items() if d} == {0, mask([2])}
    F = standard_module(3, 0, 0b111, 0)
    assert {R for R, d in F.dims.items() if d} == {0b111}
    Q = standard_module(2, mask([1]), mask([2]), 0)
    assert Q.dims[mask([2])] == 1 and Q.dims[0b11] == 0 and Q.dims[0] == 0
    assert M.validate() == [] and F.validate() == [] and Q.validate() == []


def test_alexander_dual_examples():
    n = 4
    D = alexander_dual_module(free_module(n, mask([1, 3, 4])))
    assert D == standard_module(n, mask([1, 3, 4]), 0, mask([2]))
    assert alexander_dual_module(free_module(3, 0b111)) == simple_module(3)


def test_alexander_dual_swaps_first_two_slots():
    from sqtriplets.checks import partitions

    for n in range(1, 4):
        for A, B, C in partitions(n):
            D = alexander_dual_module(standard_module(n, A, B, C))
            E = standard_module(n, B, A, C)
            assert D.dims == E.dims
            # ranks of the maps agree; bases are the single monomial generators
            assert D == E


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_alexander_dual_involution(seed, n):
    M = random_module(random.Random(seed), n)
    assert M.validate() == []
    assert alexander_dual_module(alexander_dual_module(M)) == M


def test_squarefree_part_dim():
    assert squarefree_part_dim(0, 2, 3) == 3
    assert squarefree_part_dim(0b11, 3, 4) == 2
    assert squarefree_part_dim(0b11, 1, 4) == 0


def test_tor_betti_examples():
    assert tor_betti(simple_module(2)) == {(0, 0): 1, (-1, 1): 1, (-1, 2): 1, (-2, 3): 1}
    T = tor_betti(standard_module(4, mask([1, 2, 4]), 0, mask([3])))
    by_deg = {}
    for (p, R), v in T.items():
        assert size(R) == -p
        by_deg[size(R)] = by_deg.get(size(R), 0) + v
    assert by_deg == {0: 1, 1: 3, 2: 3, 3: 1}
    assert {R for (_, R) in T if size(R) == 1} == {mask([1]), mask([2]), mask([4])}
    assert tor_betti(free_module(3, 0b101)) == {(0, 0b101): 1}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_tor0_is_generator_count(seed, n):
    M = random_module(random.Random(seed), n)
    tor0 = {R: v for (p, R), v in tor_betti(M).items() if p == 0}
    assert tor0 == M.generator_counts()


def test_ell_complex_examples():
    L = ell_complex(simple_module(3))
    assert L.terms == {0: [0b111]}
    S1 = standard_module(1, 0, 0, 1)  # S itself, n=1
    L = ell_complex(S1)
    assert L.terms == {0: [1], 1: [0]}
    assert L.d(0).to_lists() == [[1]]
    assert ell_complex(SqModule(2, {})).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_ell_complex_valid_and_minimal(seed, n):
    L = ell_complex(random_module(random.Random(seed), n))
    assert validate(L) == []
    assert is_minimal(L)


def test_validate_reports_noncommuting_square():
    from sqtriplets.exactcore import RatMatrix

    dims = {R: 1 for R in all_degrees(2)}
    one = RatMatrix.identity(1)
    mult = {(1, 0): one, (2, 0): one, (1, 2): one, (2, 1): one * 2}
    M = SqModule(2, dims, mult)
    assert M.validate() and "x_1 x_2" in M.validate()[0]
    assert members(3) == [1, 2]

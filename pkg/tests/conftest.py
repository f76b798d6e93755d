import random

import pytest
import sympy

from sqtriplets.degrees import contains
from sqtriplets.exactcore import EchelonSpace, RatMatrix, nullspace, solve
from sqtriplets.freecomplex import FreeSqComplex, evaluate_at
from sqtriplets.sqmodule import SqModule

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[k]
        line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(k, ok, title, detail=""):
        ACCEPTANCE[k] = (ok, title, detail)
        print(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else ""))

    return record


# independent oracle -----------------------------------------------------------

def sympy_rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.data]).rank()


def oracle_free_homology(F: FreeSqComplex) -> dict:
    table = {}
    for R in range(1 << F.n):
        bases, maps = evaluate_at(F, R)
        for p, ix in bases.items():
            h = len(ix)
            if p in maps:
                h -= sympy_rank(maps[p])
            if p - 1 in maps:
                h -= sympy_rank(maps[p - 1])
            if h:
                table[(p, R)] = h
    return table


def oracle_module_complex_homology(X) -> dict:
    table = {}
    for R in range(1 << X.n):
        for p, M in X.terms.items():
            d = M.dims[R]
            if d:
                h = d - sympy_rank(X.map_at(p, R)) - sympy_rank(X.map_at(p - 1, R))
                if h:
                    table[(p, R)] = h
    return table


# random objects -----------------------------------------------------------------

def _rand_q(rng, zero_bias=0.4):
    if rng.random() < zero_bias:
        return 0
    return rng.choice([1, -1, 2, -2, 3])


def random_quotient(rng, n, gens, relations):
    """Module data of (free module on gens) / (submodule generated by relations).

    relations are (degree D, vector over gens with degree inside D).
    """
    idx = {R: [i for i, g in enumerate(gens) if contains(R, g)] for R in range(1 << n)}
    info = {}
    for R in range(1 << n):
        ix = idx[R]
        pos = {g: k for k, g in enumerate(ix)}
        space = EchelonSpace(len(ix))
        sub = []
        for D, vec in relations:
            if contains(R, D):
                w = [0] * len(ix)
                for i, x in enumerate(vec):
                    if x:
                        w[pos[i]] = x
                if space.add(w):
                    sub.append(w)
        quot = []
        for k in range(len(ix)):
            e = [0] * len(ix)
            e[k] = 1
            if space.add(e):
                quot.append(e)
        info[R] = (ix, sub, quot)
    dims = {R: len(q) for R, (_, _, q) in info.items()}
    mult = {}
    for R, (ix, _, quot) in info.items():
        for v in range(1, n + 1):
            bit = 1 << (v - 1)
            if R & bit:
                continue
            ix2, sub2, quot2 = info[R | bit]
            m = RatMatrix(len(quot2), len(quot))
            if quot and quot2:
                pos2 = {g: k for k, g in enumerate(ix2)}
                basis = RatMatrix.from_columns(sub2 + quot2, len(ix2))
                for j, e in enumerate(quot):
                    w = [0] * len(ix2)
                    for k, g in enumerate(ix):
                        w[pos2[g]] = e[k]
                    c = solve(basis, w)
                    for i in range(len(quot2)):
                        m.data[i][j] = c[len(sub2) + i]
            mult[(v, R)] = m
    return SqModule(n, dims, mult)


def random_relations(rng, n, gens, count):
    out = []
    for _ in range(count):
        D = rng.randrange(1 << n)
        out.append((D, [_rand_q(rng) if contains(D, g) else 0 for g in gens]))
    return out


def random_module_data(rng, n, max_gens=2):
    gens = [rng.randrange(1 << n) for _ in range(rng.randint(1, max_gens))]
    return gens, random_relations(rng, n, gens, rng.randint(0, 3))


def random_module(rng, n):
    gens, rel = random_module_data(rng, n)
    return random_quotient(rng, n, gens, rel)


def random_free_complex(rng, n, length=3, max_rank=3):
    """Random valid free complex on positions 0..-(length-1), d^2 = 0 by construction."""
    terms = {}
    for k in range(length):
        terms[-k] = [rng.randrange(1 << n) for _ in range(rng.randint(1, max_rank))]
    diffs = {}
    for p in range(-1, -length, -1):
        src, tgt = terms[p], terms[p + 1]
        m = RatMatrix(len(tgt), len(src))
        for j, g in enumerate(src):
            if p + 1 in diffs:
                # choose the column inside ker d^{p+1} in degree g
                F = FreeSqComplex(n, {q: terms[q] for q in (p + 1, p + 2)}, {p + 1: diffs[p + 1]})
                bases, maps = evaluate_at(F, g)
                ix = bases.get(p + 1, [])
                ker = nullspace(maps[p + 1]) if p + 1 in maps else [
                    [int(a == b) for a in range(len(ix))] for b in range(len(ix))
                ]
                coeffs = [_rand_q(rng, 0.3) for _ in ker]
                for k, i in enumerate(ix):
                    m.data[i][j] = sum(c * z[k] for c, z in zip(coeffs, ker))
            else:
                for i, h in enumerate(tgt):
                    if contains(g, h):
                        m.data[i][j] = _rand_q(rng)
        diffs[p] = RatMatrix(m.rows, m.cols, m.data)
    return FreeSqComplex(n, terms, diffs)


@pytest.fixture
def rng():
    return random.Random(12345)

"""Resolutions of squarefree modules and complexes, and the functor AD.

``AD`` is the composite: dualize a free complex, replace each free term
S(-B) by the quotient S/(x_i : i in B) (the termwise Alexander dual), then
take a minimal free resolution of the resulting complex of modules.

Resolutions are built from the top position downwards.  With P the part
already constructed and pi: P -> X the comparison map, the mapping cone
C^p = P^{p+1} + X^p is made exact at p by adding free generators of P^p,
degree by degree in order of increasing size, one for each cycle not yet
reached by the boundaries.  Choosing only cycles independent of what lower
degrees already produce keeps the number of generators small; a final
:func:`minimalize` pass removes anything left over.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict

from .degrees import all_degrees, complement, contains, members, size
from .exactcore import EchelonSpace, RatMatrix, nullspace, rank
from .freecomplex import FreeSqComplex, dualize, homology_dims, minimalize
from .sqmodule import BettiTable, InvalidModuleError, SqModule

__all__ = [
    "SqModuleComplex",
    "resolve_module",
    "resolve_complex",
    "alexander_termwise",
    "ad",
    "ad_power",
    "ad_betti_shortcut",
    "module_complex_homology_dims",
]


class SqModuleComplex:
    """Bounded complex of squarefree modules.

    ``maps[p][R]`` is the matrix X^p_R -> X^{p+1}_R; missing entries are
    zero maps.
    """

    def __init__(self, n: int, terms: Dict[int, SqModule], maps: dict | None = None):
        self.n = n
        self.terms = {p: M for p, M in sorted(terms.items()) if not M.is_zero()}
        self.maps = {}
        for p, per in (maps or {}).items():
            if p not in self.terms or p + 1 not in self.terms:
                continue
            full = {}
            for R in range(1 << n):
                shape = (self.terms[p + 1].dims[R], self.terms[p].dims[R])
                m = per.get(R)
                if m is None:
                    m = RatMatrix(*shape)
                elif m.shape != shape:
                    raise InvalidModuleError(f"map at {p} in degree {members(R)} has shape {m.shape}, expected {shape}")
                full[R] = m
            self.maps[p] = full

    def positions(self) -> list:
        return sorted(self.terms)

    def term(self, p: int) -> SqModule:
        M = self.terms.get(p)
        return M if M is not None else SqModule(self.n, {})

    def map_at(self, p: int, R: int) -> RatMatrix:
        per = self.maps.get(p)
        if per is None:
            return RatMatrix(self.term(p + 1).dims[R], self.term(p).dims[R])
        return per[R]

    def validate(self) -> list:
        problems = []
        n = self.n
        for p, M in self.terms.items():
            problems += [f"position {p}: {msg}" for msg in M.validate()]
        for p, per in self.maps.items():
            src, tgt = self.terms[p], self.terms[p + 1]
            for R in range(1 << n):
                for v in range(1, n + 1):
                    bit = 1 << (v - 1)
                    if R & bit:
                        continue
                    if per[R | bit] @ src.mult[(v, R)] != tgt.mult[(v, R)] @ per[R]:
                        problems.append(f"map at {p} does not commute with x_{v} on degree {members(R)}")
                if p + 1 in self.maps and not (self.maps[p + 1][R] @ per[R]).is_zero():
                    problems.append(f"d^2 != 0 at {p} in degree {members(R)}")
        return problems

    def __repr__(self):
        return f"SqModuleComplex(n={self.n}, positions={self.positions()})"


def module_complex_homology_dims(X: SqModuleComplex) -> BettiTable:
    """dim H^p(X)_R straight from the degreewise ranks."""
    table = {}
    for R in range(1 << X.n):
        for p, M in X.terms.items():
            d = M.dims[R]
            if not d:
                continue
            h = d - rank(X.map_at(p, R)) - rank(X.map_at(p - 1, R))
            if h:
                table[(p, R)] = h
    return table


def _zero(k):
    return [Fraction(0)] * k


def resolve_complex(X: SqModuleComplex) -> FreeSqComplex:
    """Minimal free complex quasi-isomorphic to X."""
    n = X.n
    if not X.terms:
        return FreeSqComplex(n, {})
    lo, hi = min(X.terms), max(X.terms)
    degs = all_degrees(n)

    P_terms = {}  # p -> list of degree masks
    P_cols = {}   # p -> list of full-length columns of d_P (over P^{p+1})
    P_pi = {}     # p -> list of vectors in X^p_{deg g}

    def sub_idx(p, R):
        return [i for i, g in enumerate(P_terms.get(p, [])) if contains(R, g)]

    def pi_matrix(p, R, idx):
        # matrix of pi: P^p_R -> X^p_R
        M = X.term(p)
        cols = []
        for i in idx:
            g = P_terms[p][i]
            cols.append(M.mult_path(g, R, P_pi[p][i]))
        return RatMatrix.from_columns(cols, M.dims[R])

    p = hi
    floor = lo - n - 2
    while True:
        if p < floor:
            raise ArithmeticError("resolution did not terminate; input is not a valid complex")
        Xp, Xp1 = X.term(p), X.term(p + 1)
        P1 = P_terms.get(p + 1, [])
        gens, cols, pis = [], [], []
        kernels = {}
        for R in degs:
            idx1 = sub_idx(p + 1, R)
            idx2 = sub_idx(p + 2, R)
            a, b = len(idx1), Xp.dims[R]
            dim = a + b
            if not dim:
                kernels[R] = []
                continue
            rows2, rowsx = len(idx2), Xp1.dims[R]
            dC = RatMatrix(rows2 + rowsx, dim)
            if rows2 and a:
                dP = P_cols[p + 1]
                for jj, j in enumerate(idx1):
                    col = dP[j]
                    for ii, i in enumerate(idx2):
                        dC.data[ii][jj] = -col[i]
            if rowsx and a:
                pim = pi_matrix(p + 1, R, idx1)
                for i in range(rowsx):
                    dC.data[rows2 + i][:a] = pim.data[i]
            if rowsx and b:
                dX = X.map_at(p, R)
                for i in range(rowsx):
                    dC.data[rows2 + i][a:] = dX.data[i]
            Z = nullspace(dC)
            kernels[R] = Z
            if not Z:
                continue
            space = EchelonSpace(dim)
            pos1 = {j: k for k, j in enumerate(idx1)}
            for v in members(R):
                S = R & ~(1 << (v - 1))
                sidx = sub_idx(p + 1, S)
                mv = Xp.mult[(v, S)] if Xp.dims[S] and b else None
                for z in kernels[S]:
                    w = _zero(dim)
                    for k, j in enumerate(sidx):
                        w[pos1[j]] = z[k]
                    if mv is not None:
                        w[a:] = mv.apply(z[len(sidx):])
                    space.add(w)
            if b and X.term(p - 1).dims[R]:
                for c in X.map_at(p - 1, R).columns():
                    space.add(_zero(a) + c)
            for z in Z:
                if space.add(z):
                    y = _zero(len(P1))
                    for k, j in enumerate(idx1):
                        y[j] = -z[k]
                    gens.append(R)
                    cols.append(y)
                    pis.append(z[a:])
        if gens:
            P_terms[p] = gens
            P_cols[p] = cols
            P_pi[p] = pis
        elif p < lo:
            break
        p -= 1

    diffs = {}
    for q, cols in P_cols.items():
        if q + 1 in P_terms:
            diffs[q] = RatMatrix.from_columns(cols, len(P_terms[q + 1]))
    return minimalize(FreeSqComplex(n, P_terms, diffs))


def resolve_module(M: SqModule) -> FreeSqComplex:
    """Minimal free resolution of M, with M at position 0."""
    return resolve_complex(SqModuleComplex(M.n, {0: M}))


def alexander_termwise(F: FreeSqComplex) -> SqModuleComplex:
    """Replace S(-B) at position -p by S/(x_i : i in B) at position p.

    A basis of the new term in degree R is given by the generators whose
    degree misses R; multiplication drops the ones that start meeting the
    degree, and the differential is the transpose of the matching block of F.
    """
    n = F.n
    terms = {}
    bases = {}
    for q, gens in F.terms.items():
        p = -q
        basis = {R: [i for i, g in enumerate(gens) if not g & R] for R in range(1 << n)}
        bases[p] = basis
        dims = {R: len(b) for R, b in basis.items()}
        mult = {}
        for R in range(1 << n):
            for v in range(1, n + 1):
                bit = 1 << (v - 1)
                if R & bit:
                    continue
                src, tgt = basis[R], basis[R | bit]
                m = RatMatrix(len(tgt), len(src))
                where = {g: k for k, g in enumerate(tgt)}
                for j, g in enumerate(src):
                    if g in where:
                        m.data[where[g]][j] = Fraction(1)
                mult[(v, R)] = m
        terms[p] = SqModule(n, dims, mult)
    maps = {}
    for p in bases:
        if p + 1 not in bases:
            continue
        d = F.d(-p - 1)  # rows: generators at -p, cols: generators at -p-1
        maps[p] = {R: d.submatrix(bases[p][R], bases[p + 1][R]).transpose() for R in range(1 << n)}
    return SqModuleComplex(n, terms, maps)


def ad(F: FreeSqComplex) -> FreeSqComplex:
    return resolve_complex(alexander_termwise(dualize(F)))


def ad_power(F: FreeSqComplex, k: int) -> FreeSqComplex:
    for _ in range(k):
        F = ad(F)
    return F


def ad_betti_shortcut(F: FreeSqComplex) -> BettiTable:
    """Betti table of ad(F) read off the homology of F.

    Entry (i, R) is dim H^{i+|R|}(F) in degree R^c.
    """
    n = F.n
    out = {}
    for (p, R), h in homology_dims(F).items():
        Rc = complement(R, n)
        out[(p - size(Rc), Rc)] = h
    return out

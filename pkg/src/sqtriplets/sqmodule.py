"""Finite data of squarefree modules.

A squarefree module M over S = k[x_1..x_n] is determined by the vector
spaces M_R for R a subset of [n] and the multiplication maps
x_v: M_R -> M_{R+v} for v not in R.  :class:`SqModule` stores exactly that.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .degrees import all_degrees, alpha, complement, contains, members, size
from .exactcore import RatMatrix, binom, rank

__all__ = [
    "SqModule",
    "BettiTable",
    "InvalidModuleError",
    "standard_module",
    "alexander_dual_module",
    "squarefree_part_dim",
    "tor_betti",
    "ell_complex",
    "simple_module",
    "free_module",
]

# (position, degree mask) -> dimension; only nonzero entries are kept
BettiTable = Dict[Tuple[int, int], int]


class InvalidModuleError(ValueError):
    pass


class SqModule:
    """Squarefree module given by its pieces and multiplication maps.

    ``dims[R]`` is dim M_R for every R; ``mult[(v, R)]`` is the matrix of
    x_v: M_R -> M_{R+v}, of shape dim M_{R+v} x dim M_R.  Missing maps
    are filled in as zero matrices.
    """

    def __init__(self, n: int, dims: dict, mult: dict | None = None):
        self.n = n
        self.dims = {R: int(dims.get(R, 0)) for R in range(1 << n)}
        if any(d < 0 for d in self.dims.values()):
            raise InvalidModuleError("negative dimension")
        mult = mult or {}
        self.mult = {}
        for R in range(1 << n):
            for v in range(1, n + 1):
                bit = 1 << (v - 1)
                if R & bit:
                    continue
                rows, cols = self.dims[R | bit], self.dims[R]
                m = mult.get((v, R))
                if m is None:
                    m = RatMatrix(rows, cols)
                elif m.shape != (rows, cols):
                    raise InvalidModuleError(
                        f"x_{v} on degree {members(R)} has shape {m.shape}, expected {(rows, cols)}"
                    )
                self.mult[(v, R)] = m
        for key in mult:
            if key not in self.mult:
                raise InvalidModuleError(f"unexpected multiplication key {key}")

    def validate(self) -> list:
        """Commuting-square violations, as human readable strings."""
        problems = []
        n = self.n
        for R in range(1 << n):
            free = [v for v in range(1, n + 1) if not R & (1 << (v - 1))]
            for i, u in enumerate(free):
                for v in free[i + 1:]:
                    bu, bv = 1 << (u - 1), 1 << (v - 1)
                    left = self.mult[(u, R | bv)] @ self.mult[(v, R)]
                    right = self.mult[(v, R | bu)] @ self.mult[(u, R)]
                    if left != right:
                        problems.append(f"x_{u} x_{v} does not commute on degree {members(R)}")
        return problems

    def is_zero(self) -> bool:
        return not any(self.dims.values())

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def mult_path(self, source: int, target: int, vec):
        """Image of vec in M_source under multiplication by x^(target - source)."""
        if not contains(target, source):
            raise ValueError("target degree must contain source degree")
        cur = source
        out = list(vec)
        for v in members(target & ~source):
            out = self.mult[(v, cur)].apply(out)
            cur |= 1 << (v - 1)
        return out

    def generator_counts(self) -> dict:
        """dim of M_R modulo the images of all x_v M_{R-v}."""
        out = {}
        for R in range(1 << self.n):
            d = self.dims[R]
            if not d:
                continue
            imgs = [self.mult[(v, R & ~(1 << (v - 1)))] for v in members(R)]
            if imgs:
                cols = [c for m in imgs for c in m.columns()]
                r = rank(RatMatrix.from_columns(cols, d)) if cols else 0
            else:
                r = 0
            if d - r:
                out[R] = d - r
        return out

    def __eq__(self, other):
        if not isinstance(other, SqModule):
            return NotImplemented
        return self.n == other.n and self.dims == other.dims and self.mult == other.mult

    def __repr__(self):
        nz = {R: d for R, d in self.dims.items() if d}
        return f"SqModule(n={self.n}, dims={nz})"


def standard_module(n: int, A: int, B: int, C: int) -> SqModule:
    """(S / (x_i : i in A))(-B); the parts A, B, C must partition [n]."""
    full = (1 << n) - 1
    if A & B or A & C or B & C or (A | B | C) != full:
        raise InvalidModuleError("A, B, C must partition [n]")
    dims = {R: int(contains(R, B) and not R & A) for R in range(1 << n)}
    mult = {}
    for R in range(1 << n):
        for v in range(1, n + 1):
            bit = 1 << (v - 1)
            if not R & bit and dims[R] and dims[R | bit]:
                mult[(v, R)] = RatMatrix.identity(1)
    return SqModule(n, dims, mult)


def free_module(n: int, B: int) -> SqModule:
    """S(-B) as module data."""
    return standard_module(n, 0, B, complement(B, n))


def simple_module(n: int) -> SqModule:
    """The residue field k, sitting in degree 0."""
    return standard_module(n, (1 << n) - 1, 0, 0)


def alexander_dual_module(M: SqModule) -> SqModule:
    n = M.n
    dims = {R: M.dims[complement(R, n)] for R in range(1 << n)}
    mult = {}
    for R in range(1 << n):
        for v in range(1, n + 1):
            bit = 1 << (v - 1)
            if R & bit:
                continue
            src = complement(R | bit, n)
            mult[(v, R)] = M.mult[(v, src)].transpose()
    return SqModule(n, dims, mult)


def squarefree_part_dim(b: int, d: int, n: int) -> int:
    """Dimension of the degree-d squarefree part of S(-b)."""
    k = size(b)
    return binom(n - k, d - k)


def _koszul_pieces(M: SqModule, R: int):
    """Bases and differentials of the Koszul complex of M in degree R.

    Homological degree k has basis pairs (S, index) with S a k-subset of R
    and index running over a basis of M_{R-S}.
    """
    subs_by_k = {}
    for S in all_degrees(M.n):
        if contains(R, S):
            subs_by_k.setdefault(size(S), []).append(S)
    offsets = {}
    dims = {}
    for k, subs in subs_by_k.items():
        off = 0
        for S in subs:
            offsets[S] = off
            off += M.dims[R & ~S]
        dims[k] = off
    maps = {}
    for k in range(1, size(R) + 1):
        m = RatMatrix(dims.get(k - 1, 0), dims.get(k, 0))
        for S in subs_by_k.get(k, []):
            src_deg = R & ~S
            d_src = M.dims[src_deg]
            if not d_src:
                continue
            for j, s in enumerate(members(S)):
                sign = -1 if j % 2 else 1
                T = S & ~(1 << (s - 1))
                block = M.mult[(s, src_deg)]
                r0, c0 = offsets[T], offsets[S]
                for a in range(block.rows):
                    for b in range(block.cols):
                        x = block.data[a][b]
                        if x:
                            m.data[r0 + a][c0 + b] += sign * x
        maps[k] = m
    return dims, maps


def tor_betti(M: SqModule) -> BettiTable:
    """dim Tor_i(M, k)_R placed at position -i."""
    table = {}
    for R in range(1 << M.n):
        dims, maps = _koszul_pieces(M, R)
        top = size(R)
        ranks = {k: rank(maps[k]) for k in maps}
        for k in range(0, top + 1):
            d = dims.get(k, 0)
            if not d:
                continue
            h = d - ranks.get(k, 0) - ranks.get(k + 1, 0)
            if h:
                table[(-k, R)] = h
    return table


def ell_complex(M: SqModule):
    """The free complex L(M).

    Position i holds one copy of S(-R^c) for each basis vector of M_R with
    |R| = i; the differential sends the copy of m in M_R to
    sum over j not in R of (-1)^alpha(j, R) x_j (x_j m).
    """
    from .freecomplex import FreeSqComplex

    n = M.n
    terms = {}
    index = {}  # R -> offset of M_R's block within its position
    for R in all_degrees(n):
        d = M.dims[R]
        if not d:
            continue
        i = size(R)
        lst = terms.setdefault(i, [])
        index[R] = len(lst)
        lst.extend([complement(R, n)] * d)
    diffs = {}
    for i, gens in terms.items():
        if i + 1 not in terms:
            continue
        m = RatMatrix(len(terms[i + 1]), len(gens))
        for R, off in index.items():
            if size(R) != i:
                continue
            for j in range(1, n + 1):
                bit = 1 << (j - 1)
                if R & bit or not M.dims[R | bit]:
                    continue
                sign = -1 if alpha(j, R) % 2 else 1
                block = M.mult[(j, R)]
                r0 = index[R | bit]
                for a in range(block.rows):
                    for b in range(block.cols):
                        x = block.data[a][b]
                        if x:
                            m.data[r0 + a][off + b] += sign * x
        diffs[i] = m
    return FreeSqComplex(n, terms, diffs)

"""Bounded complexes of free squarefree modules.

Conventions
-----------
Complexes are cohomological: the differential at position p goes from F^p to
F^{p+1}.  A generator is a squarefree degree (bitmask) sitting at a
position.  ``diffs[p]`` is the scalar matrix of d^p with rows indexed by the
generators of F^{p+1} and columns by those of F^p.  A nonzero entry from a
generator of degree G to one of degree H requires H to be a subset of G and
stands for the scalar times the monomial x^(G - H).  With squarefree degrees
every composite of such entries again carries the monomial of the outer
degrees, so d o d = 0 is the same as the product of the scalar matrices
vanishing.

The minimal free resolution of a module occupies positions <= 0 with the
module itself at 0, so Tor_i lives at position -i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from .degrees import complement, contains, members, size
from .exactcore import EchelonSpace, RatMatrix, nullspace, rank, solve
from .sqmodule import BettiTable, SqModule

__all__ = [
    "FreeSqComplex",
    "NotMinimalError",
    "SinglyGradedProfile",
    "validate",
    "evaluate_at",
    "homology",
    "homology_dims",
    "dualize",
    "cohomology",
    "invariants",
    "minimalize",
    "is_minimal",
    "strands",
    "singly_graded_profile",
    "translate",
    "shift_table",
    "generator_table",
]


class NotMinimalError(ValueError):
    pass


class FreeSqComplex:
    """A bounded complex of free squarefree modules (see module docstring)."""

    def __init__(self, n: int, terms: Dict[int, List[int]], diffs: Dict[int, RatMatrix] | None = None):
        self.n = n
        full = (1 << n) - 1
        self.terms = {}
        for p in sorted(terms):
            gens = [int(g) for g in terms[p]]
            if any(g & ~full or g < 0 for g in gens):
                raise ValueError(f"generator degree outside [n] at position {p}")
            if gens:
                self.terms[int(p)] = gens
        self.diffs = {}
        for p, m in (diffs or {}).items():
            rows, cols = len(self.terms.get(p + 1, [])), len(self.terms.get(p, []))
            if m.shape != (rows, cols):
                raise ValueError(f"differential at {p} has shape {m.shape}, expected {(rows, cols)}")
            if rows and cols:
                self.diffs[p] = m

    def positions(self) -> list:
        return sorted(self.terms)

    def rank_at(self, p: int) -> int:
        return len(self.terms.get(p, []))

    def d(self, p: int) -> RatMatrix:
        m = self.diffs.get(p)
        if m is None:
            return RatMatrix(self.rank_at(p + 1), self.rank_at(p))
        return m

    def is_zero(self) -> bool:
        return not self.terms

    def generator_table(self) -> BettiTable:
        table = {}
        for p, gens in self.terms.items():
            for g in gens:
                table[(p, g)] = table.get((p, g), 0) + 1
        return table

    def copy(self) -> "FreeSqComplex":
        return FreeSqComplex(self.n, {p: g[:] for p, g in self.terms.items()},
                             {p: m.copy() for p, m in self.diffs.items()})

    def __eq__(self, other):
        if not isinstance(other, FreeSqComplex):
            return NotImplemented
        if self.n != other.n or self.terms != other.terms:
            return False
        keys = set(self.diffs) | set(other.diffs)
        return all(self.d(p) == other.d(p) for p in keys)

    def __repr__(self):
        parts = []
        for p in self.positions():
            parts.append(f"{p}:{[members(g) for g in self.terms[p]]}")
        return f"FreeSqComplex(n={self.n}, {', '.join(parts)})"


def generator_table(F: FreeSqComplex) -> BettiTable:
    return F.generator_table()


def validate(F: FreeSqComplex) -> list:
    """Diagnostics for homogeneity and d o d = 0; empty when F is valid."""
    problems = []
    for p, m in F.diffs.items():
        src, tgt = F.terms[p], F.terms[p + 1]
        for i, h in enumerate(tgt):
            for j, g in enumerate(src):
                if m.data[i][j] and not contains(g, h):
                    problems.append(
                        f"homogeneity: position {p} entry ({i},{j}) maps degree {members(g)} to {members(h)}"
                    )
    for p in F.diffs:
        if p + 1 not in F.diffs:
            continue
        prod = F.diffs[p + 1] @ F.diffs[p]
        for i, row in enumerate(prod.data):
            for j, x in enumerate(row):
                if x:
                    g = F.terms[p][j]
                    problems.append(
                        f"d^2 != 0: positions {p}->{p + 2} in multidegree {members(g)} (entry {i},{j})"
                    )
    return problems


def _restrict(F: FreeSqComplex, R: int):
    return {p: [i for i, g in enumerate(gens) if contains(R, g)] for p, gens in F.terms.items()}


def evaluate_at(F: FreeSqComplex, R: int):
    """The vector-space complex F_R.

    Returns ``(bases, maps)``: ``bases[p]`` lists the indices of the
    generators at p whose degree lies inside R and ``maps[p]`` is the matrix
    F^p_R -> F^{p+1}_R in those bases.
    """
    idx = _restrict(F, R)
    bases = {p: ix for p, ix in idx.items() if ix}
    maps = {}
    for p, ix in bases.items():
        tgt = bases.get(p + 1)
        if tgt:
            maps[p] = F.d(p).submatrix(tgt, ix)
    return bases, maps


def homology_dims(F: FreeSqComplex) -> BettiTable:
    """dim H^p(F)_R for all p, R, computed from ranks only."""
    table = {}
    for R in range(1 << F.n):
        bases, maps = evaluate_at(F, R)
        ranks = {p: rank(m) for p, m in maps.items()}
        for p, ix in bases.items():
            h = len(ix) - ranks.get(p, 0) - ranks.get(p - 1, 0)
            if h:
                table[(p, R)] = h
    return table


def homology(F: FreeSqComplex) -> Dict[int, SqModule]:
    """Homology modules H^p(F) as :class:`SqModule` data (nonzero ones only).

    In every degree R the homology basis is a set of cycles completing an
    echelon basis of the boundaries; multiplication maps are read off by
    writing x_v z in the basis (boundaries, chosen cycles) one degree up.
    """
    n = F.n
    out = {}
    for p in F.positions():
        info = {}
        for R in range(1 << n):
            ix = [i for i, g in enumerate(F.terms[p]) if contains(R, g)]
            if not ix:
                info[R] = (ix, [], [])
                continue
            tgt = [i for i, g in enumerate(F.terms.get(p + 1, [])) if contains(R, g)]
            src = [i for i, g in enumerate(F.terms.get(p - 1, [])) if contains(R, g)]
            kernel = nullspace(F.d(p).submatrix(tgt, ix))
            space = EchelonSpace(len(ix))
            boundaries = []
            if src:
                for col in F.d(p - 1).submatrix(ix, src).columns():
                    if space.add(col):
                        boundaries.append(col)
            lifts = [z for z in kernel if space.add(z)]
            info[R] = (ix, boundaries, lifts)
        dims = {R: len(info[R][2]) for R in info}
        if not any(dims.values()):
            continue
        mult = {}
        for R, (ix, _, lifts) in info.items():
            for v in range(1, n + 1):
                bit = 1 << (v - 1)
                if R & bit:
                    continue
                ix2, bnd2, lifts2 = info[R | bit]
                m = RatMatrix(len(lifts2), len(lifts))
                if lifts and lifts2:
                    pos = {g: k for k, g in enumerate(ix2)}
                    basis = RatMatrix.from_columns(bnd2 + lifts2, len(ix2))
                    for j, z in enumerate(lifts):
                        w = [Fraction(0)] * len(ix2)
                        for k, g in enumerate(ix):
                            w[pos[g]] = z[k]
                        c = solve(basis, w)
                        if c is None:
                            raise ArithmeticError("cycle left the cycle space; input is not a complex")
                        for i in range(len(lifts2)):
                            m.data[i][j] = c[len(bnd2) + i]
                mult[(v, R)] = m
        out[p] = SqModule(n, dims, mult)
    return out


def dualize(F: FreeSqComplex) -> FreeSqComplex:
    """Hom_S(F, S(-1)): degree G at p becomes G^c at -p.

    The differential leaving position -p-1 is (-1)^p times the transpose
    of d^p.
    """
    n = F.n
    terms = {-p: [complement(g, n) for g in gens] for p, gens in F.terms.items()}
    diffs = {}
    for p, m in F.diffs.items():
        sign = -1 if p % 2 else 1
        diffs[-p - 1] = m.transpose() * sign
    return FreeSqComplex(n, terms, diffs)


def cohomology(F: FreeSqComplex) -> BettiTable:
    """C^i_R(F) = dim H^{-i}(D F)_{R^c}."""
    n = F.n
    return {(-p, complement(R, n)): h for (p, R), h in homology_dims(dualize(F)).items()}


def is_minimal(F: FreeSqComplex) -> bool:
    for p, m in F.diffs.items():
        src, tgt = F.terms[p], F.terms[p + 1]
        for i, h in enumerate(tgt):
            row = m.data[i]
            for j, g in enumerate(src):
                if row[j] and g == h:
                    return False
    return True


def minimalize(F: FreeSqComplex) -> FreeSqComplex:
    """Cancel scalar entries between equal degrees until none remain.

    Pivots are taken at the lowest position first, then the first row, then
    the first column.  Each cancellation is the usual Gaussian elimination
    of a contractible summand, so the output is homotopy equivalent to F.
    """
    terms = {p: g[:] for p, g in F.terms.items()}
    diffs = {p: [row[:] for row in m.data] for p, m in F.diffs.items()}

    def find_pivot():
        for p in sorted(diffs):
            m = diffs[p]
            src, tgt = terms[p], terms[p + 1]
            for i, h in enumerate(tgt):
                row = m[i]
                for j, g in enumerate(src):
                    if row[j] and g == h:
                        return p, i, j
        return None

    while True:
        piv = find_pivot()
        if piv is None:
            break
        p, i, j = piv
        m = diffs[p]
        u = m[i][j]
        col = [m[r][j] for r in range(len(m))]
        prow = m[i]
        new = []
        for r, row in enumerate(m):
            if r == i:
                continue
            f = col[r]
            if f:
                f = f / u
                row = [x - f * y for x, y in zip(row, prow)]
            new.append(row[:j] + row[j + 1:])
        diffs[p] = new
        if p - 1 in diffs:
            diffs[p - 1].pop(j)
        if p + 1 in diffs:
            diffs[p + 1] = [row[:i] + row[i + 1:] for row in diffs[p + 1]]
        terms[p].pop(j)
        terms[p + 1].pop(i)
        for q in (p - 1, p, p + 1):
            if q in diffs and (not terms.get(q) or not terms.get(q + 1)):
                del diffs[q]
        for q in (p, p + 1):
            if not terms[q]:
                del terms[q]

    out_diffs = {p: RatMatrix(len(terms[p + 1]), len(terms[p]), m) for p, m in diffs.items()}
    return FreeSqComplex(F.n, terms, out_diffs)


def translate(F: FreeSqComplex, k: int) -> FreeSqComplex:
    """F[k], with (F[k])^q = F^{q+k} and differential scaled by (-1)^k."""
    sign = -1 if k % 2 else 1
    terms = {p - k: g[:] for p, g in F.terms.items()}
    diffs = {p - k: m * sign for p, m in F.diffs.items()}
    return FreeSqComplex(F.n, terms, diffs)


def shift_table(table: BettiTable, k: int) -> BettiTable:
    """The table of X[k] given the table of X."""
    return {(p - k, R): v for (p, R), v in table.items()}


def invariants(F: FreeSqComplex):
    """The (B, H, C) tables: Betti, homology and cohomology dimensions."""
    B = minimalize(F).generator_table()
    return B, homology_dims(F), cohomology(F)


def strands(F: FreeSqComplex) -> Dict[int, BettiTable]:
    """Split the generator table of a minimal complex into linear strands."""
    if not is_minimal(F):
        raise NotMinimalError("linear strands need a minimal complex")
    out = {}
    for (p, R), v in F.generator_table().items():
        out.setdefault(p + size(R), {})[(p, R)] = v
    return out


@dataclass
class SinglyGradedProfile:
    degrees: Dict[int, Dict[int, int]]  # position -> total degree -> rank
    positions: List[int] = field(default_factory=list)  # descending
    degree_sequence: List[int] = field(default_factory=list)
    betti: List[int] = field(default_factory=list)
    is_pure: bool = False
    is_linear: bool = False

    def describe(self) -> str:
        if not self.positions:
            return "0"
        parts = []
        for p in self.positions:
            parts.append(" + ".join(_term_str(d, r) for d, r in sorted(self.degrees[p].items())))
        return " <- ".join(parts)


def _term_str(d: int, r: int) -> str:
    base = "S" if d == 0 else f"S(-{d})"
    return base if r == 1 else f"{base}^{r}"


def singly_graded_profile(F: FreeSqComplex) -> SinglyGradedProfile:
    """Total-degree data of a minimal complex, read from the top position down.

    Pure means one degree per position, no gaps between positions and
    degrees strictly increasing as the position decreases; linear means
    pure with consecutive degrees.
    """
    if not is_minimal(F):
        raise NotMinimalError("purity is only meaningful for minimal complexes")
    degrees = {}
    for p, gens in F.terms.items():
        per = degrees.setdefault(p, {})
        for g in gens:
            per[size(g)] = per.get(size(g), 0) + 1
    positions = sorted(degrees, reverse=True)
    prof = SinglyGradedProfile(degrees=degrees, positions=positions)
    pure = all(len(degrees[p]) == 1 for p in positions)
    pure = pure and all(positions[k] - positions[k + 1] == 1 for k in range(len(positions) - 1))
    if pure:
        seq = [next(iter(degrees[p])) for p in positions]
        pure = all(seq[k] < seq[k + 1] for k in range(len(seq) - 1))
        if pure:
            prof.degree_sequence = seq
            prof.betti = [degrees[p][d] for p, d in zip(positions, seq)]
            prof.is_linear = all(seq[k + 1] - seq[k] == 1 for k in range(len(seq) - 1))
    prof.is_pure = pure
    return prof

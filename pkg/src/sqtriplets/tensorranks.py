"""Term ranks of the pinched tensor complex attached to a degree set.

The complement of A in [0, n] splits into maximal runs.  Each run, together
with two boundary pseudo-runs, gives a pinching weight (u_i, w_i): the run
covers [u_i + 1, u_i + w_i - 1].  The rank of the term of degree d is

    C(n, d) * prod_{d <= u_i} C(w_i - 1 + u_i - d, u_i - d)
            * prod_{d >= u_i + w_i} C(w_i - 1 + d - u_i - w_i, d - u_i - w_i)

i.e. exterior powers of an n-dimensional V against symmetric and divided
powers of the w_i-dimensional spaces W_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactcore import binom
from .triplets import DegreeTriplet, herzog_kuhl, solve_betti

__all__ = ["PinchingWeights", "pinching_weights", "term_rank", "construction_betti", "one_sided_triplet", "proportional"]


@dataclass(frozen=True)
class PinchingWeights:
    u: tuple
    w: tuple

    @property
    def r(self) -> int:
        return len(self.u) - 2

    def intervals(self) -> list:
        """The runs [u_i + 1, u_i + w_i - 1] (empty ones included)."""
        return [(ui + 1, ui + wi - 1) for ui, wi in zip(self.u, self.w)]


def pinching_weights(A, n: int) -> PinchingWeights:
    A = sorted(set(A))
    if not A:
        raise ValueError("degree set is empty")
    if A[0] < 0 or A[-1] > n:
        raise ValueError(f"degrees must lie in [0, {n}]")
    c, top = A[0], A[-1]
    b = n - top
    u, w = [-1], [c + 1]
    present = set(A)
    d = c
    while d <= top:
        if d in present:
            d += 1
            continue
        s = d
        while d not in present:
            d += 1
        u.append(s - 1)
        w.append(d - s + 1)
    u.append(top)
    w.append(b + 1)
    return PinchingWeights(tuple(u), tuple(w))


def term_rank(P: PinchingWeights, d: int, n: int) -> int:
    out = binom(n, d)
    for ui, wi in zip(P.u, P.w):
        if d <= ui:
            k = ui - d
            out *= binom(wi - 1 + k, k)
        elif d >= ui + wi:
            k = d - ui - wi
            out *= binom(wi - 1 + k, k)
        else:
            raise ValueError(f"{d} is a nondegree (inside run [{ui + 1}, {ui + wi - 1}])")
    return out


def one_sided_triplet(A, n: int) -> DegreeTriplet:
    """(A, [a, n-c], [b, n-a]) with a chosen so that the count identity holds."""
    A = sorted(set(A))
    c, b = A[0], n - A[-1]
    e_A = (A[-1] - A[0] + 1) - len(A)
    a = n - b - c - e_A
    if a < 0:
        raise ValueError("degree set has too many nondegrees for a one-sided triplet")
    return DegreeTriplet(n, A, range(a, n - c + 1), range(b, n - a + 1))


def proportional(x, y) -> bool:
    """True when the vectors are nonzero multiples of each other."""
    if len(x) != len(y) or not any(x) or not any(y):
        return False
    ratio = None
    for p, q in zip(x, y):
        if (p == 0) != (q == 0):
            return False
        if p:
            r = Fraction(p) / Fraction(q)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return True


def construction_betti(A, n: int):
    """Term ranks over A, and whether they match Herzog-Kuhl and the solver."""
    A = sorted(set(A))
    P = pinching_weights(A, n)
    ranks = [term_rank(P, d, n) for d in A]
    ok = proportional(ranks, herzog_kuhl(A))
    try:
        sol = solve_betti(one_sided_triplet(A, n))
        ok = ok and sol.nullity == 1 and proportional(ranks, sol.alpha)
    except ValueError:
        ok = False
    return ranks, ok

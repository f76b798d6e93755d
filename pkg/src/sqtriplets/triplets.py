"""Degree triplets and the linear systems for their Betti numbers.

A degree triplet (A, B, C) of type n lists the degrees of three pure free
complexes F, AD(F) and AD^2(F).  The corners a, b, c satisfy
A in [c, n-b], B in [a, n-c], C in [b, n-a], each set containing the
endpoints of its interval.  Bars denote reflection d -> n - d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .exactcore import RatMatrix, binom, nullspace, primitive_vector, transition_matrix

__all__ = [
    "DegreeTriplet",
    "TripletParams",
    "TripletError",
    "BalanceReport",
    "BettiSolution",
    "derive_params",
    "is_balanced",
    "enumerate_balanced",
    "rotate",
    "reduce",
    "reduce_to_nondegree_free",
    "reduced_system",
    "full_system",
    "solve_betti",
    "herzog_kuhl",
    "render_triangle",
]


class TripletError(ValueError):
    """A triplet failing the interval (1) or count (2) condition."""

    def __init__(self, condition: int, message: str):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class DegreeTriplet:
    n: int
    A: tuple
    B: tuple
    C: tuple

    def __post_init__(self):
        for name in "ABC":
            vals = tuple(sorted(set(int(x) for x in getattr(self, name))))
            if not vals:
                raise TripletError(1, f"{name} is empty")
            if vals[0] < 0 or vals[-1] > self.n:
                raise TripletError(1, f"{name} is not inside [0, {self.n}]")
            object.__setattr__(self, name, vals)

    def sort_key(self):
        return (self.n, self.A, self.B, self.C)


@dataclass(frozen=True)
class TripletParams:
    a: int
    b: int
    c: int
    e_A: int
    e_B: int
    e_C: int

    @property
    def e(self) -> int:
        return self.e_A + self.e_B + self.e_C


def _gaps(S, lo, hi):
    present = set(S)
    return [d for d in range(lo, hi + 1) if d not in present]


def derive_params(T: DegreeTriplet) -> TripletParams:
    n = T.n
    c, a, b = T.A[0], T.B[0], T.C[0]
    for name, S, top in (("A", T.A, n - b), ("B", T.B, n - c), ("C", T.C, n - a)):
        if S[-1] != top:
            raise TripletError(1, f"condition 1: max {name} = {S[-1]}, expected {top}")
    e_A = len(_gaps(T.A, c, n - b))
    e_B = len(_gaps(T.B, a, n - c))
    e_C = len(_gaps(T.C, b, n - a))
    total = a + b + c + e_A + e_B + e_C
    if total != n:
        raise TripletError(2, f"condition 2: {a}+{b}+{c}+{e_A + e_B + e_C} = {total} != {n}")
    return TripletParams(a, b, c, e_A, e_B, e_C)


@dataclass
class BalanceReport:
    balanced: bool
    condition: int | None = None
    corner: str | None = None
    v: int | None = None
    message: str = ""

    def __bool__(self):
        return self.balanced


def _balanced_at(X, Ybar, start, n):
    """First v in [start, n] where #([start,v] in X) <= #([start,v] not in Ybar)."""
    X, Ybar = set(X), set(Ybar)
    inside = outside = 0
    for v in range(start, n + 1):
        inside += v in X
        outside += v not in Ybar
        if inside <= outside:
            return v
    return None


def is_balanced(T: DegreeTriplet) -> BalanceReport:
    """Check all three balance conditions; failures are reported, not raised."""
    try:
        p = derive_params(T)
    except TripletError as err:
        return BalanceReport(False, err.condition, message=str(err))
    n = T.n
    bar = lambda S: [n - x for x in S]  # noqa: E731
    for corner, X, Y, start in (("c", T.A, T.B, p.c), ("a", T.B, T.C, p.a), ("b", T.C, T.A, p.b)):
        v = _balanced_at(X, bar(Y), start, n)
        if v is not None:
            return BalanceReport(False, 3, corner, v, f"condition 3 fails at corner {corner}, v={v}")
    return BalanceReport(True)


def enumerate_balanced(n: int) -> list:
    """All balanced triplets of type n, sorted by their sets."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = set()
    for a in range(n + 1):
        for b in range(n + 1 - a):
            for c in range(n + 1 - a - b):
                e = n - a - b - c
                sides = [(c, n - b), (a, n - c), (b, n - a)]
                if any(hi < lo for lo, hi in sides):
                    continue
                interiors = [list(range(lo + 1, hi)) for lo, hi in sides]
                for eA in range(min(e, len(interiors[0])) + 1):
                    for eB in range(min(e - eA, len(interiors[1])) + 1):
                        eC = e - eA - eB
                        if eC > len(interiors[2]):
                            continue
                        for gA in itertools.combinations(interiors[0], eA):
                            for gB in itertools.combinations(interiors[1], eB):
                                for gC in itertools.combinations(interiors[2], eC):
                                    sets = [
                                        [d for d in range(lo, hi + 1) if d not in g]
                                        for (lo, hi), g in zip(sides, (gA, gB, gC))
                                    ]
                                    T = DegreeTriplet(n, *sets)
                                    if is_balanced(T):
                                        out.add(T)
    return sorted(out, key=DegreeTriplet.sort_key)


def rotate(T: DegreeTriplet) -> DegreeTriplet:
    """(A, B, C) -> (B, C, A); corners move c -> a -> b -> c."""
    return DegreeTriplet(T.n, T.B, T.C, T.A)


def reduce(T: DegreeTriplet) -> DegreeTriplet:
    """Remove the first internal nondegree of side A.

    Raises :class:`TripletError` when A has none; rotate the triplet so that a
    side with a nondegree comes first.
    """
    p = derive_params(T)
    n, c = T.n, p.c
    gaps = _gaps(T.A, c, n - p.b)
    if not gaps:
        raise TripletError(0, "side A has no internal nondegree; rotate the triplet first")
    t = gaps[0] - c
    Bbar = sorted(n - x for x in T.B)
    s = next(x for x in Bbar if x > c) - c
    A2 = (set(T.A) | {c + t}) - set(range(c, c + s))
    Bbar2 = set(Bbar) - {c}
    return DegreeTriplet(n, sorted(A2), sorted(n - x for x in Bbar2), T.C)


def reduce_to_nondegree_free(T: DegreeTriplet, max_steps: int = 1000) -> list:
    """Reduce repeatedly, rotating when side A has no nondegree, until e = 0.

    Returns the whole chain starting with T.
    """
    chain = [T]
    for _ in range(max_steps):
        if derive_params(T).e == 0:
            return chain
        for _ in range(3):
            if derive_params(T).e_A:
                break
            T = rotate(T)
        T = reduce(T)
        chain.append(T)
    raise RuntimeError("reduction did not terminate")


def reduced_system(T: DegreeTriplet) -> RatMatrix:
    """Equations in the plain Betti numbers alpha_0..alpha_r of F.

    Rows, in order: one per nondegree v of [a, n-b] outside C-bar, one per
    nondegree u of B in [a, n-c], then one for each j < a.
    """
    p = derive_params(T)
    n = T.n
    A = T.A
    Cbar = {n - x for x in T.C}
    vs = [v for v in range(p.a, n - p.b + 1) if v not in Cbar]
    us = _gaps(T.B, p.a, n - p.c)
    sign = [(-1) ** k for k in range(len(A))]
    rows = []
    for v in vs:
        rows.append([s * binom(ak, v) for s, ak in zip(sign, A)])
    for u in us:
        rows.append([s * binom(n - ak, u) for s, ak in zip(sign, A)])
    for j in range(p.a):
        rows.append([s * binom(ak, j) for s, ak in zip(sign, A)])
    return RatMatrix(len(rows), len(A), rows)


def full_system(T: DegreeTriplet) -> RatMatrix:
    """The 3n+3 variable system in the sign-adjusted Betti numbers.

    Variables are (alpha-hat, beta-hat, gamma-hat), each indexed 0..n.
    """
    n = T.n
    m = n + 1
    M = transition_matrix(n)
    rows = []
    for block in range(2):
        for i in range(m):
            row = [Fraction(0)] * (3 * m)
            for j in range(m):
                row[block * m + j] = M.data[i][j]
            row[(block + 1) * m + i] = Fraction(-1)
            rows.append(row)
    for block, S in enumerate((T.A, T.B, T.C)):
        for d in range(m):
            if d not in S:
                row = [Fraction(0)] * (3 * m)
                row[block * m + d] = Fraction(1)
                rows.append(row)
    return RatMatrix(len(rows), 3 * m, rows)


@dataclass
class BettiSolution:
    nullity: int
    alpha_hat: list = field(default_factory=list)
    beta_hat: list = field(default_factory=list)
    gamma_hat: list = field(default_factory=list)
    alpha: list = field(default_factory=list)
    beta: list = field(default_factory=list)
    gamma: list = field(default_factory=list)
    positive: bool = False
    balanced: bool = True
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "nullity": self.nullity,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "positive": self.positive,
            "balanced": self.balanced,
        }


def _signed_support_ok(hat, S, n):
    """Off-support zeros, nonzero on S, and hat[s_i] * (-1)^(i+s_i) of one sign."""
    if any(hat[d] for d in range(n + 1) if d not in S):
        return False
    signs = set()
    for i, d in enumerate(S):
        x = hat[d] * (-1) ** (i + d)
        if x == 0:
            return False
        signs.add(x > 0)
    return len(signs) == 1


def solve_betti(T: DegreeTriplet) -> BettiSolution:
    """Betti numbers of a triplet realizing T, up to a common scalar.

    The reduced system is solved first; with a one-dimensional solution the
    sign-adjusted vectors are propagated through the transition matrix and the
    three Betti vectors are scaled jointly to a primitive integer vector.
    """
    report = is_balanced(T)
    if not report:
        raise TripletError(report.condition or 3, report.message)
    n = T.n
    red = reduced_system(T)
    ns = nullspace(red)
    sol = BettiSolution(nullity=len(ns))
    if len(ns) == 0:
        sol.notes.append("overdetermined: only the zero solution")
        return sol
    if len(ns) > 1:
        sol.notes.append(f"solution space has dimension {len(ns)}")
        return sol
    v = ns[0]
    if v[0] < 0:
        v = [-x for x in v]
    M = transition_matrix(n)
    ahat = [Fraction(0)] * (n + 1)
    for i, d in enumerate(T.A):
        ahat[d] = (-1) ** (i + d) * v[i]
    bhat = M.apply(ahat)
    chat = M.apply(bhat)
    scaled = primitive_vector(ahat + bhat + chat)
    # primitive_vector makes the first nonzero entry (alpha-hat at a_0) positive
    if (-1) ** T.A[0] < 0:
        scaled = [-x for x in scaled]
    m = n + 1
    sol.alpha_hat = [Fraction(x) for x in scaled[:m]]
    sol.beta_hat = [Fraction(x) for x in scaled[m:2 * m]]
    sol.gamma_hat = [Fraction(x) for x in scaled[2 * m:]]
    sol.alpha = [abs(int(sol.alpha_hat[d])) for d in T.A]
    sol.beta = [abs(int(sol.beta_hat[d])) for d in T.B]
    sol.gamma = [abs(int(sol.gamma_hat[d])) for d in T.C]
    checks = {
        "alpha": all(x > 0 for x in v),
        "beta": _signed_support_ok(sol.beta_hat, T.B, n),
        "gamma": _signed_support_ok(sol.gamma_hat, T.C, n),
    }
    for name, ok in checks.items():
        if not ok:
            sol.notes.append(f"{name} fails the support or sign pattern")
    sol.positive = all(checks.values())
    return sol


def herzog_kuhl(degrees) -> list:
    """Betti numbers of a pure resolution with the given degrees, made primitive."""
    d = list(degrees)
    if not d or any(x >= y for x, y in zip(d, d[1:])):
        raise ValueError("degrees must be a nonempty strictly increasing sequence")
    vals = []
    for i, di in enumerate(d):
        q = Fraction(1)
        for j, dj in enumerate(d):
            if j != i:
                q /= abs(dj - di)
        vals.append(q)
    return primitive_vector(vals)


FILLED, BLANK = "●", "○"


def _side(S, lo, hi):
    present = set(S)
    return [FILLED if d in present else BLANK for d in range(lo, hi + 1)]


def render_triangle(T: DegreeTriplet) -> str:
    """ASCII picture of the degree triangle followed by a per-side listing.

    Corner a is at the top, c bottom left and b bottom right.  Side A runs
    from c to b, side B from a to c and side C from b to a, each listing the
    degrees of its interval in increasing order.
    """
    p = derive_params(T)
    n = T.n
    sides = {
        "A": (_side(T.A, p.c, n - p.b), (2, 0), (2, 1)),  # c -> b
        "B": (_side(T.B, p.a, n - p.c), (0, 0), (2, 0)),  # a -> c
        "C": (_side(T.C, p.b, n - p.a), (2, 1), (0, 0)),  # b -> a
    }
    H = max(max(len(s[0]) for s in sides.values()) - 1, 1)
    corners = {(0, 0): (0, 2 * H), (2, 0): (2 * H, 0), (2, 1): (2 * H, 4 * H)}
    height, width = 2 * H + 1, 4 * H + 1
    canvas = [[" "] * width for _ in range(height)]
    for marks, start, end in sides.values():
        (r0, c0), (r1, c1) = corners[start], corners[end]
        steps = 4 * H
        for k in range(steps + 1):
            t = Fraction(k, steps)
            canvas[round(r0 + t * (r1 - r0))][round(c0 + t * (c1 - c0))] = "·"
    for marks, start, end in sides.values():
        (r0, c0), (r1, c1) = corners[start], corners[end]
        L = len(marks)
        for k, ch in enumerate(marks):
            t = Fraction(k, L - 1) if L > 1 else Fraction(0)
            r = round(r0 + t * (r1 - r0))
            col = round(c0 + t * (c1 - c0))
            canvas[r][col] = ch
    pad = len(str(max(p.a, p.b, p.c))) + 1
    lines = [" " * pad + f"{p.a}".center(width).rstrip()]
    for r, row in enumerate(canvas):
        left = f"{p.c} " if r == height - 1 else ""
        right = f" {p.b}" if r == height - 1 else ""
        lines.append(left.rjust(pad) + "".join(row) + right)
    text = "\n".join(line.rstrip() for line in lines)
    listing = [
        f"A [{p.c}..{n - p.b}] c->b: {''.join(sides['A'][0])}",
        f"B [{p.a}..{n - p.c}] a->c: {''.join(sides['B'][0])}",
        f"C [{p.b}..{n - p.a}] b->a: {''.join(sides['C'][0])}",
    ]
    return text + "\n" + "\n".join(listing)

"""Test complexes and invariant checks shared by the CLI and the test suite.

Every ``check_*`` function returns a list of failure messages; an empty list
means the property holds.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

from .degrees import complement, mask, members, size
from .exactcore import RatMatrix, rank, transition_matrix
from .freecomplex import (
    FreeSqComplex,
    cohomology,
    dualize,
    homology,
    homology_dims,
    invariants,
    is_minimal,
    minimalize,
    shift_table,
    singly_graded_profile,
    strands,
    translate,
    validate,
)
from .functors import ad, ad_betti_shortcut, resolve_module
from .sqmodule import ell_complex, standard_module
from .tensorranks import construction_betti, one_sided_triplet, proportional
from .triplets import (
    DegreeTriplet,
    derive_params,
    enumerate_balanced,
    full_system,
    herzog_kuhl,
    is_balanced,
    reduce_to_nondegree_free,
    reduced_system,
    solve_betti,
)


def pairs_ideal_complex() -> FreeSqComplex:
    """S <- S(-{12}) + S(-{13}) + S(-{23}) with differential (x1x2, x1x3, x2x3)."""
    gens = [mask([1, 2]), mask([1, 3]), mask([2, 3])]
    return FreeSqComplex(3, {0: [0], -1: gens}, {-1: RatMatrix.from_rows([[1, 1, 1]])})


def partitions(n: int):
    """All ordered partitions (A, B, C) of [n] as bitmasks."""
    for assign in itertools.product(range(3), repeat=n):
        parts = [0, 0, 0]
        for i, k in enumerate(assign):
            parts[k] |= 1 << i
        yield tuple(parts)


def _set_name(R):
    return "{" + ",".join(map(str, members(R))) + "}"


def koszul_class_suite(max_n: int) -> list:
    """Minimal resolutions of every S/(x_A)(-B) with (A, B, C) partitioning [n]."""
    out = []
    for n in range(1, max_n + 1):
        for A, B, C in partitions(n):
            name = f"n={n} S/{_set_name(A)}(-{_set_name(B)};{_set_name(C)})"
            out.append((name, resolve_module(standard_module(n, A, B, C))))
    return out


def test_suite(max_n: int) -> list:
    return koszul_class_suite(max_n) + [("pairs_ideal", pairs_ideal_complex())]


class Orbit:
    """F together with lazily computed ad(F), ad^2(F), ad^3(F)."""

    def __init__(self, F: FreeSqComplex):
        self.F = F
        self._ad = [F]

    def ad(self, k: int) -> FreeSqComplex:
        while len(self._ad) <= k:
            self._ad.append(ad(self._ad[-1]))
        return self._ad[k]


def check_cube(max_n: int) -> list:
    out = []
    for n in range(max_n + 1):
        M = transition_matrix(n)
        target = RatMatrix.identity(n + 1) * (-1) ** n
        if M @ M @ M != target:
            out.append(f"n={n}: A^3 != (-1)^n I")
    return out


def check_valid(F: FreeSqComplex) -> list:
    return [f"invalid: {p}" for p in validate(F)]


def check_shortcut(orb: Orbit) -> list:
    G = orb.ad(1)
    if G.generator_table() != ad_betti_shortcut(orb.F):
        return ["Betti table of ad(F) differs from the homology shortcut"]
    return []


def check_rotation(orb: Orbit) -> list:
    F, G = orb.F, orb.ad(1)
    n = F.n
    BF, HF, CF = invariants(F)
    BG, HG, CG = invariants(G)
    out = []
    for p in validate(G):
        out.append(f"ad(F) invalid: {p}")
    if not is_minimal(G):
        out.append("ad(F) is not minimal")
    expected_B = {(i - size(complement(R, n)), complement(R, n)): h for (i, R), h in HF.items()}
    if BG != expected_B:
        out.append("B(ad F) != rotated H(F)")
    if HG != CF:
        out.append("H(ad F) != C(F)")
    expected_C = {(i - size(complement(R, n)), complement(R, n)): b for (i, R), b in BF.items()}
    if CG != expected_C:
        out.append("C(ad F) != rotated B(F)")
    return out


def check_yanagawa(orb: Orbit) -> list:
    F = orb.F
    G3 = orb.ad(3)
    if invariants(G3) != invariants(translate(F, F.n)):
        return ["tables of ad^3(F) differ from those of F[n]"]
    return []


def check_strands(orb: Orbit) -> list:
    F, G = orb.F, orb.ad(1)
    n = F.n
    H = homology(F)
    got = strands(G)
    out = []
    for i in sorted(set(got) | set(H)):
        expected = {}
        if i in H:
            expected = shift_table(ell_complex(H[i]).generator_table(), n - i)
        if got.get(i, {}) != expected:
            out.append(f"strand {i} of ad(F) differs from L(H^{i}(F))[{n - i}]")
    return out


def check_dual_involution(F: FreeSqComplex) -> list:
    D = dualize(F)
    out = [f"dual invalid: {p}" for p in validate(D)]
    DD = dualize(D)
    if DD.terms != F.terms:
        out.append("double dual changes the generators")
    elif any(DD.d(p) != -F.d(p) for p in F.diffs):
        out.append("double dual differential is not -d")
    return out


def check_minimalize_homology(F: FreeSqComplex) -> list:
    M = minimalize(F)
    out = []
    if not is_minimal(M):
        out.append("minimalize left a unit entry")
    if homology_dims(M) != homology_dims(F):
        out.append("minimalize changed homology")
    return out


def check_initial_term(orb: Orbit) -> list:
    """Top term S(-a_0)^alpha at position t gives bottom term S(-(n-a_0))^alpha at -n+a_0+t."""
    F, G = orb.F, orb.ad(1)
    if F.is_zero() or G.is_zero():
        return []
    prof = singly_graded_profile(F)
    if not prof.is_pure:
        return []
    n = F.n
    t = prof.positions[0]
    a0, alpha = prof.degree_sequence[0], prof.betti[0]
    bottom = min(G.terms)
    degs = {size(g) for g in G.terms[bottom]}
    if bottom != -n + a0 + t or degs != {n - a0} or len(G.terms[bottom]) != alpha:
        return [f"bottom term of ad(F) is not S(-{n - a0})^{alpha} at {-n + a0 + t}"]
    return []


def check_cm_criterion(orb: Orbit) -> list:
    F = orb.F
    H = {p for p, _ in homology_dims(F)}
    C = {p for p, _ in cohomology(F)}
    single = len(H) == 1 and len(C) == 1
    linear = all(
        (not orb.ad(k).is_zero()) and singly_graded_profile(orb.ad(k)).is_linear for k in (1, 2)
    )
    if single != linear:
        return [f"ad/ad^2 linear = {linear} but single homology and cohomology = {single}"]
    return []


def realized_triplet(orb: Orbit):
    """The degree triplet of F, ad(F), ad^2(F) when all three are pure, else None."""
    seqs = []
    for k in range(3):
        G = orb.ad(k)
        if G.is_zero() or not is_minimal(G):
            return None
        prof = singly_graded_profile(G)
        if not prof.is_pure:
            return None
        seqs.append(prof.degree_sequence)
    return DegreeTriplet(orb.F.n, *seqs)


def check_realized_balanced(orb: Orbit) -> list:
    T = realized_triplet(orb)
    if T is None:
        return []
    n = T.n
    rep = is_balanced(T)
    if not rep:
        return [f"realized triplet {T} is not balanced: {rep.message}"]
    p = derive_params(T)
    if T.A[-1] != n - p.b or T.B[-1] != n - p.c or T.C[-1] != n - p.a:
        return [f"endpoint relations fail for {T}"]
    return []


def check_hexagon(n: int, A: int, B: int, C: int) -> list:
    """ad of the resolution of S/A(-B;C) against S/C(-A;B) translated by |A|."""
    G = ad(resolve_module(standard_module(n, A, B, C)))
    E = resolve_module(standard_module(n, C, A, B))
    if G.generator_table() != shift_table(E.generator_table(), size(A)):
        return [f"hexagon fails for n={n} A={members(A)} B={members(B)} C={members(C)}"]
    return []


COMPLEX_CHECKS = {
    "valid": lambda orb: check_valid(orb.F),
    "dual": lambda orb: check_dual_involution(orb.F),
    "minimalize": lambda orb: check_minimalize_homology(orb.F),
    "shortcut": check_shortcut,
    "rotation": check_rotation,
    "strands": check_strands,
    "yanagawa": check_yanagawa,
    "initial-term": check_initial_term,
    "cm-criterion": check_cm_criterion,
    "balanced": check_realized_balanced,
}

SUITES = {
    "rotation": ["valid", "shortcut", "rotation", "strands"],
    "yanagawa": ["valid", "yanagawa"],
    "all": list(COMPLEX_CHECKS),
}


def _run_one(item, names):
    name, F = item
    orb = Orbit(F)
    return [(name, check, COMPLEX_CHECKS[check](orb)) for check in names]


def run_complex_checks(suite: str, max_n: int, threads: int = 1) -> list:
    """Results as (complex name, check name, failures), in suite order."""
    names = SUITES[suite]
    items = test_suite(max_n)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        chunks = list(pool.map(lambda it: _run_one(it, names), items))
    return [r for chunk in chunks for r in chunk]


def triplet_record(T: DegreeTriplet) -> dict:
    """Solver data for one balanced triplet, used by the sweep."""
    p = derive_params(T)
    red = reduced_system(T)
    full = full_system(T)
    sol = solve_betti(T)
    return {
        "triplet": T,
        "r": len(T.A) - 1,
        "rows": red.rows,
        "cols": red.cols,
        "nullity": sol.nullity,
        "full_nullity": full.cols - rank(full),
        "full_rank": rank(full),
        "positive": sol.positive,
        "e": p.e,
        "solution": sol,
    }


def sweep(max_n: int, threads: int = 1) -> dict:
    """Solve every balanced triplet for n <= max_n; returns per-n records."""
    out = {}
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for n in range(1, max_n + 1):
            out[n] = list(pool.map(triplet_record, enumerate_balanced(n)))
    return out


def sweep_problems(records: dict) -> list:
    out = []
    for n, recs in records.items():
        for rec in recs:
            T = rec["triplet"]
            if rec["rows"] != rec["r"] or rec["cols"] != rec["r"] + 1:
                out.append(f"{T}: reduced system is {rec['rows']}x{rec['cols']}, r={rec['r']}")
            if rec["nullity"] != rec["full_nullity"]:
                out.append(f"{T}: nullity {rec['nullity']} vs full system {rec['full_nullity']}")
            if rec["nullity"] != 1:
                out.append(f"{T}: nullity {rec['nullity']}")
            elif not rec["positive"]:
                out.append(f"{T}: solution not positive")
    return out


def sweep_table(records: dict) -> str:
    lines = [f"{'n':>3} {'triplets':>9} {'nullity histogram':<22} {'nonpositive':>11} {'full rank 3n+2':>15}"]
    for n, recs in records.items():
        hist = Counter(rec["nullity"] for rec in recs)
        hist_s = ", ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
        nonpos = sum(1 for rec in recs if rec["nullity"] == 1 and not rec["positive"])
        full_ok = sum(1 for rec in recs if rec["full_rank"] == 3 * n + 2)
        lines.append(f"{n:>3} {len(recs):>9} {hist_s:<22} {nonpos:>11} {full_ok:>10}/{len(recs):<4}")
    return "\n".join(lines)


def one_sided_sets(n: int) -> list:
    """Degree sets A in [0, n] admitting a one-sided triplet of type n."""
    out = []
    for lo in range(n + 1):
        for hi in range(lo, n + 1):
            inner = list(range(lo + 1, hi))
            for k in range(len(inner) + 1):
                for gaps in itertools.combinations(inner, k):
                    A = [d for d in range(lo, hi + 1) if d not in gaps]
                    try:
                        T = one_sided_triplet(A, n)
                    except ValueError:
                        continue
                    if is_balanced(T):
                        out.append(A)
    return out


def check_concordance(A, n: int) -> list:
    ranks, ok = construction_betti(A, n)
    sol = solve_betti(one_sided_triplet(A, n))
    hk = herzog_kuhl(A)
    out = []
    if not ok or not all(x > 0 for x in ranks):
        out.append(f"A={A}, n={n}: construction ranks {ranks} not concordant")
    if not proportional(sol.alpha, hk):
        out.append(f"A={A}, n={n}: solver {sol.alpha} vs Herzog-Kuhl {hk}")
    return out


def check_reduce_chain(T: DegreeTriplet) -> list:
    chain = reduce_to_nondegree_free(T)
    out = []
    for prev, cur in zip(chain, chain[1:]):
        if not is_balanced(cur):
            out.append(f"reduction of {prev} gives unbalanced {cur}")
        elif derive_params(cur).e >= derive_params(prev).e:
            out.append(f"reduction of {prev} does not lower e")
    return out

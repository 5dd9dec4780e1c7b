"""Analytic criteria for pseudo-random array codes.

The central construction is the product polynomial ``vee(f1, f2)`` whose
roots are all pairwise products of roots of f1 and f2.  It is computed
by two independent routes that must agree:

(a) the characteristic polynomial (Berkowitz, division-free) of the
    Kronecker product of the two companion matrices;
(b) the least common multiple of Berlekamp-Massey minimal polynomials
    of bitwise products of shifted generator sequences.

The decision procedures are exact:

* ``setpoly_test``   -- does an irreducible f divide the set polynomial
  of the window positions?  Equivalently: are the powers of a root of f
  at those positions linearly independent over GF(2)?
* ``det_test``       -- determinant criterion over several quotient
  fields at once (works for products of irreducibles);
* ``trace_independence_test`` -- the dual basis form of det_test for a
  single irreducible polynomial;
* ``sufficient_conditions``   -- the divisibility/distinct-residue
  conditions that guarantee a PRA/PRAC (sufficient, not necessary).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .gf2field import FieldContext, bezout, crt_solve
from .gf2poly import (
    BinaryPolynomial,
    InternalCheckError,
    _bit_reverse,
    classify,
    enumerate_irreducible,
    is_irreducible,
    lcm as poly_lcm,
)
from .folding import CodeParams, fold_zero_factor
from .lfsr import berlekamp_massey, bitmul, generate, zero_factor
from .verify import VerdictReport, Witness, window_census

_TYPE_RANK = {"reducible": 0, "INP": 1, "primitive": 2}
# admissible (unordered input types) -> allowed product types
_TYPE_TABLE = {
    ("reducible", "reducible"): {"reducible"},
    ("reducible", "INP"): {"reducible"},
    ("reducible", "primitive"): {"reducible"},
    ("INP", "INP"): {"reducible", "INP"},
    ("INP", "primitive"): {"reducible", "INP"},
    ("primitive", "primitive"): {"INP"},
}


@dataclass(frozen=True)
class PositionSet:
    """Sequence positions of the upper-left n1 x n2 window, row-major."""

    params: CodeParams
    positions: tuple

    def __str__(self):
        return "{" + ", ".join(str(p) for p in sorted(self.positions)) + "}"


@dataclass(frozen=True)
class ConstructionRecord:
    """A classified product construction f1, f2 -> g = vee(f1, f2)."""

    f1: BinaryPolynomial
    f2: BinaryPolynomial
    g: BinaryPolynomial
    types: tuple
    params: CodeParams

    def to_kv(self):
        return {
            "f1": str(self.f1),
            "f1.type": self.types[0],
            "f2": str(self.f2),
            "f2.type": self.types[1],
            "g": str(self.g),
            "g.compact": self.g.compact(),
            "g.type": self.types[2],
            "params.r1": str(self.params.r1),
            "params.r2": str(self.params.r2),
            "params.n1": str(self.params.n1),
            "params.n2": str(self.params.n2),
        }


def _uniform_class(f, who):
    cls = classify(f)
    if not cls.is_uniform:
        raise ValueError(f"{who} must have a uniform exponent (got kind {cls.kind})")
    return cls


def _base_type(kind):
    return "reducible" if kind == "reducible-uniform" else kind


def _companion_rows(f):
    # rows of the companion matrix whose characteristic polynomial is f
    n = f.degree
    rows = []
    for i in range(n):
        r = 1 << (i - 1) if i else 0
        if f.bits >> i & 1:
            r |= 1 << (n - 1)
        rows.append(r)
    return rows


def _kronecker(a_rows, na, b_rows, nb):
    rows = []
    for ia in range(na):
        for ib in range(nb):
            r = 0
            arow = a_rows[ia]
            for ja in range(na):
                if arow >> ja & 1:
                    r |= b_rows[ib] << (ja * nb)
            rows.append(r)
    return rows


def _charpoly(rows, n):
    """Characteristic polynomial over GF(2) by the Berkowitz method."""
    vec = 1  # coefficient vector, leading coefficient at bit 0
    for m in range(1, n + 1):
        top = n - m
        a = rows[top] >> top & 1
        r_mask = (rows[top] >> (top + 1)) & ((1 << (m - 1)) - 1)
        c_mask = 0
        for i in range(m - 1):
            c_mask |= (rows[top + 1 + i] >> top & 1) << i
        sub = [(rows[top + 1 + i] >> (top + 1)) & ((1 << (m - 1)) - 1) for i in range(m - 1)]
        t = 1 | (a << 1)
        w = c_mask
        for s in range(2, m + 1):
            t |= ((r_mask & w).bit_count() & 1) << s
            if s < m:
                nw = 0
                for i in range(m - 1):
                    if (sub[i] & w).bit_count() & 1:
                        nw |= 1 << i
                w = nw
        prod = 0
        tt = t
        shift = 0
        while tt:
            if tt & 1:
                prod ^= vec << shift
            tt >>= 1
            shift += 1
        vec = prod & ((1 << (m + 1)) - 1)
    return BinaryPolynomial(_bit_reverse(vec, n + 1))


def _vee_by_matrix(f1, f2):
    a_rows = _companion_rows(f1)
    b_rows = _companion_rows(f2)
    rows = _kronecker(a_rows, f1.degree, b_rows, f2.degree)
    return _charpoly(rows, f1.degree * f2.degree)


def _impulse(f, length):
    seed = [0] * (f.degree - 1) + [1]
    return generate(f, seed, length)


def _vee_by_sequences(f1, f2, e1, e2):
    # lcm of minimal polynomials of products of shifted base sequences;
    # shifts 0..deg-1 of each base span all generated sequences
    target = f1.degree * f2.degree
    need = max(2 * target, 2)
    base1 = _impulse(f1, e1)
    base2 = _impulse(f2, e2)
    acc = BinaryPolynomial(1)
    for s in range(f1.degree):
        a = base1.rotate(s)
        for t in range(f2.degree):
            prod = bitmul(a, base2.rotate(t))
            acc = poly_lcm(acc, berlekamp_massey(prod.take(need)))
            if acc.degree == target:
                return acc
    raise InternalCheckError(
        f"sequence products spanned degree {acc.degree}, expected {target}"
    )


def vee(f1, f2):
    """Polynomial whose roots are products of roots of f1 and f2.

    Both inputs need uniform exponents and the exponents must be
    coprime.  Computed by two independent methods which must agree.
    """
    c1 = _uniform_class(f1, "f1")
    c2 = _uniform_class(f2, "f2")
    if math.gcd(c1.exponent, c2.exponent) != 1:
        raise ValueError(
            f"exponents {c1.exponent} and {c2.exponent} are not coprime"
        )
    by_matrix = _vee_by_matrix(f1, f2)
    by_sequences = _vee_by_sequences(f1, f2, c1.exponent, c2.exponent)
    if by_matrix != by_sequences:
        raise InternalCheckError(
            f"vee methods disagree: matrix {by_matrix}, sequences {by_sequences}"
        )
    return by_matrix


def window_positions(params):
    """CRT images of the upper-left n1 x n2 window cells, row-major."""
    pos = tuple(
        crt_solve(i, j, params.r1, params.r2)
        for i in range(params.n1)
        for j in range(params.n2)
    )
    if len(set(pos)) != len(pos):
        raise InternalCheckError("window positions collide")
    return PositionSet(params, pos)


def _rank_with_kernel(vectors):
    """(rank, kernel_combination) of GF(2) vectors; the combination is a
    bitmask over the input indices witnessing a dependency, or 0."""
    pivots = {}
    for idx, v in enumerate(vectors):
        combo = 1 << idx
        while v:
            lead = v.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = (v, combo)
                break
            pv, pc = pivots[lead]
            v ^= pv
            combo ^= pc
        else:
            return len(pivots), combo
    return len(pivots), 0


def setpoly_test(f, pos, exhaustive=False):
    """Does folding the sequences of irreducible f give a PRAC, by the
    set-polynomial divisibility criterion?

    Pass iff f does not divide the set polynomial of the positions,
    i.e. iff the powers of a root of f at those positions are linearly
    independent over GF(2).
    """
    if not is_irreducible(f):
        raise ValueError("the set-polynomial criterion needs an irreducible polynomial")
    positions = pos.positions
    if len(positions) != f.degree:
        raise ValueError(
            f"need {f.degree} positions for degree {f.degree}, got {len(positions)}"
        )
    ctx = FieldContext(f)
    alpha = ctx.alpha
    vectors = [(alpha**p).bits for p in positions]
    rank, combo = _rank_with_kernel(vectors)
    passed = rank == len(positions)
    witness = None
    detail = {"positions": sorted(positions), "rank": rank}
    if not passed:
        subset = sorted(
            (positions[i] for i in range(len(positions)) if combo >> i & 1),
            reverse=True,
        )
        terms = "+".join("x^%d" % p if p > 1 else ("x" if p == 1 else "1") for p in subset)
        witness = Witness(
            "set-polynomial", f"f divides the set-polynomial factor {terms}"
        )
        detail["dependent_positions"] = sorted(subset)
    if exhaustive:
        if len(positions) > 20:
            raise ValueError("exhaustive subset scan is capped at 20 positions")
        acc = 0
        hit = False
        gray = 0
        for m in range(1, 1 << len(positions)):
            gray_next = m ^ (m >> 1)
            acc ^= vectors[(gray ^ gray_next).bit_length() - 1]
            gray = gray_next
            if acc == 0:
                hit = True
                break
        if hit == passed:
            raise InternalCheckError("rank shortcut disagrees with the subset scan")
        detail["exhaustive_subsets"] = (1 << len(positions)) - 1
    return VerdictReport("set-polynomial", passed, pos.params, witness, detail)


def _root_powers(ctx, params, e):
    g, mu, nu = bezout(params.r1, params.r2)
    if g != 1:
        raise ValueError("r1 and r2 must be coprime")
    alpha = ctx.alpha
    beta = alpha ** ((nu * params.r2) % e)
    gamma = alpha ** ((mu * params.r1) % e)
    return alpha, beta, gamma


def det_test(factors, params):
    """Determinant criterion for folding the sequences of a product of
    distinct same-degree, same-exponent irreducible polynomials."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    if len(set(factors)) != len(factors):
        raise ValueError("factors must be distinct")
    n = factors[0].degree
    if n < 2:
        raise ValueError("factors must have degree at least 2")
    if any(p.degree != n for p in factors):
        raise ValueError("factors must share one degree")
    k = len(factors)
    if k * n != params.window_area:
        raise ValueError(
            f"k*n = {k * n} must equal n1*n2 = {params.window_area}"
        )
    e = params.r1 * params.r2
    contexts = []
    for p in factors:
        ctx = FieldContext(p)  # also checks irreducibility
        if ctx.alpha.order() != e:
            raise ValueError(f"factor {p} has exponent {ctx.alpha.order()}, need {e}")
        contexts.append(ctx)
    rows = _criterion_matrix(contexts, params, e)
    rank, combo = _rank_with_kernel(_transpose_bits(rows, k * n))
    passed = rank == k * n
    witness = None
    if not passed:
        cols = [i for i in range(k * n) if combo >> i & 1]
        witness = Witness(
            "determinant",
            "dependent columns (factor, power): "
            + " ".join(f"({c // n},{c % n})" for c in cols),
        )
    return VerdictReport(
        "determinant",
        passed,
        params,
        witness,
        {"matrix_size": k * n, "rank": rank, "factors": [str(p) for p in factors]},
    )


def _criterion_matrix(contexts, params, e):
    """Rows indexed by window cell (i, j); bit (u*n + v) of a row is the
    trace of alpha_u^v * beta_u^i * gamma_u^j in field u."""
    n = contexts[0].n
    per_field = []
    for ctx in contexts:
        alpha, beta, gamma = _root_powers(ctx, params, e)
        apow = [ctx.one]
        for _ in range(n - 1):
            apow.append(apow[-1] * alpha)
        bpow = [ctx.one]
        for _ in range(params.n1 - 1):
            bpow.append(bpow[-1] * beta)
        gpow = [ctx.one]
        for _ in range(params.n2 - 1):
            gpow.append(gpow[-1] * gamma)
        per_field.append((ctx, apow, bpow, gpow))
    rows = []
    for i in range(params.n1):
        for j in range(params.n2):
            row = 0
            for u, (ctx, apow, bpow, gpow) in enumerate(per_field):
                bg = bpow[i] * gpow[j]
                mask = ctx.trace_mask()
                for v in range(n):
                    if ((apow[v] * bg).bits & mask).bit_count() & 1:
                        row |= 1 << (u * n + v)
            rows.append(row)
    return rows


def _transpose_bits(rows, width):
    cols = [0] * width
    for i, r in enumerate(rows):
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= 1 << i
            r ^= low
    return cols


def trace_independence_test(f, params):
    """Dual form of the determinant criterion for one irreducible f:
    the window-cell root powers beta^i * gamma^j must be linearly
    independent over GF(2)."""
    if not is_irreducible(f):
        raise ValueError("the trace criterion needs an irreducible polynomial")
    n = f.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    if n != params.window_area:
        raise ValueError(f"degree {n} must equal n1*n2 = {params.window_area}")
    e = params.r1 * params.r2
    ctx = FieldContext(f)
    if ctx.alpha.order() != e:
        raise ValueError(f"{f} has exponent {ctx.alpha.order()}, need {e}")
    _, beta, gamma = _root_powers(ctx, params, e)
    vectors = []
    bp = ctx.one
    for _ in range(params.n1):
        gp = bp
        for _ in range(params.n2):
            vectors.append(gp.bits)
            gp = gp * gamma
        bp = bp * beta
    rank, combo = _rank_with_kernel(vectors)
    passed = rank == n
    witness = None
    if not passed:
        cells = [
            (i // params.n2, i % params.n2) for i in range(n) if combo >> i & 1
        ]
        witness = Witness(
            "determinant",
            "dependent window cells: " + " ".join(str(c) for c in cells),
        )
    return VerdictReport(
        "determinant",
        passed,
        params,
        witness,
        {"method": "trace-basis", "rank": rank},
    )


def sufficient_conditions(params):
    """Divisibility and distinct-residue conditions that guarantee the
    folded code is a PRA (when r1*r2 = 2^(n1*n2)-1) or a PRAC."""
    r1, r2, n1, n2 = params.r1, params.r2, params.n1, params.n2
    total = (1 << params.window_area) - 1
    residues = sorted({pow(2, i, r1) for i in range(n1)})
    checks = [
        ("gcd(r1,r2) = 1", math.gcd(r1, r2) == 1),
        (f"r1*r2 divides 2^{params.window_area}-1", total % (r1 * r2) == 0),
        (f"r1 divides 2^{n1}-1", ((1 << n1) - 1) % r1 == 0),
        (f"2^i mod r1 distinct for i < {n1}", len(residues) == n1),
    ]
    failed = [name for name, ok in checks if not ok]
    passed = not failed
    case = "PRA" if r1 * r2 == total else "PRAC"
    witness = None
    if failed:
        witness = Witness("sufficient-conditions", "violated: " + "; ".join(failed))
    return VerdictReport(
        "sufficient-conditions",
        passed,
        params,
        witness,
        {"case": case, "residues_mod_r1": residues},
    )


def classify_construction(f1, f2):
    """Classify (f1, f2, vee(f1, f2)) and enforce the admissible type
    combinations (the product is never primitive).

    Inputs must have degree at least 2: with a degree-1 input the
    product equals the other factor, and the type table does not apply.
    """
    if f1.degree < 2 or f2.degree < 2:
        raise ValueError("construction classification needs degrees >= 2")
    c1 = _uniform_class(f1, "f1")
    c2 = _uniform_class(f2, "f2")
    g = vee(f1, f2)
    cg = classify(g)
    t1, t2, tg = _base_type(c1.kind), _base_type(c2.kind), _base_type(cg.kind)
    if tg == "primitive":
        raise InternalCheckError("product polynomial classified as primitive")
    key = tuple(sorted((t1, t2), key=_TYPE_RANK.get))
    if tg not in _TYPE_TABLE[key]:
        raise InternalCheckError(f"type combination ({t1},{t2}) -> {tg} is not admissible")
    params = CodeParams(c1.exponent, c2.exponent, f1.degree, f2.degree)
    return ConstructionRecord(f1, f2, g, (t1, t2, tg), params)


_ZERO_FACTOR_DEGREE_CAP = 24


@dataclass(frozen=True)
class ConjectureEntry:
    k: int
    factors: tuple
    product: BinaryPolynomial
    verdict: VerdictReport
    census_agrees: bool | None


@dataclass(frozen=True)
class ConjectureSearchResult:
    in_range: bool
    entries: tuple
    counterexamples: tuple


def conjecture_search(n1, n2, r1, r2, kmax):
    """Fold products of k irreducible polynomials whose individual
    foldings are (r1,r2;n1,n2)-PRACs and test each product as an
    (r1,r2;n1,k*n2)-PRAC.

    ``in_range`` records whether n1 < r1 < 2*n1; out-of-range searches
    are allowed but their failures are expected to be possible.
    """
    in_range = n1 < r1 < 2 * n1
    candidates = enumerate_irreducible(n1 * n2, r1 * r2)
    entries = []
    passing = []
    for f in candidates:
        entry = _conjecture_entry(1, (f,), f, CodeParams(r1, r2, n1, n2))
        entries.append(entry)
        if entry.verdict.passed:
            passing.append(f)
    for k in range(2, kmax + 1):
        for combo in itertools.combinations(passing, k):
            product = combo[0]
            for f in combo[1:]:
                product = product * f
            entries.append(
                _conjecture_entry(k, combo, product, CodeParams(r1, r2, n1, k * n2))
            )
    counterexamples = tuple(
        e for e in entries if in_range and e.k >= 2 and not e.verdict.passed
    )
    return ConjectureSearchResult(in_range, tuple(entries), counterexamples)


def _conjecture_entry(k, combo, product, params):
    verdict = det_test(list(combo), params)
    agrees = None
    if (
        params.window_area <= 28
        and product.degree <= _ZERO_FACTOR_DEGREE_CAP
    ):
        arrays = fold_zero_factor(zero_factor(product), params.r1, params.r2)
        census = window_census(arrays, params.n1, params.n2, params)
        agrees = census.passed == verdict.passed
        if not agrees:
            raise InternalCheckError(
                f"determinant and census verdicts disagree for {product}"
            )
    return ConjectureEntry(k, combo, product, verdict, agrees)

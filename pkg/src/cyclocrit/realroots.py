"""Certified counting and isolation of the real roots of integer polynomials.

The primary isolation algorithm is Descartes-rule bisection (VCA): the root
bound is rationalized to a power of two, the positive range is mapped onto
(0, 1), and intervals are subdivided with exact integer Taylor shifts until
the sign-variation count of the Moebius-transformed polynomial is 0 or 1.
Multiplicities are recovered from the squarefree decomposition.  A signed
polynomial-remainder-sequence Sturm count serves as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigpoly import (
    IntPoly,
    Rat,
    poly_gcd,
    pseudo_rem,
    squarefree_decomposition,
)


class ZeroPolynomial(ValueError):
    """The zero polynomial has no meaningful root count."""


class EndpointRoot(ValueError):
    """A Sturm endpoint is a root; the caller must perturb it."""


@dataclass(frozen=True)
class RootInterval:
    """One isolated real root: either an exact point or an open interval
    carrying a certified sign change of the squarefree part."""

    lo: Rat
    hi: Rat
    multiplicity: int
    exact: bool
    sign_change: bool

    def contains_value(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class IsolationReport:
    """Isolation result with counts split by sign.

    ``n_*`` counts include multiplicity; ``distinct_*`` do not.  Intervals are
    pairwise disjoint and each contains exactly one distinct real root.
    """

    intervals: tuple[RootInterval, ...]
    n_total: int
    n_neg: int
    n_zero: int
    n_pos: int
    distinct_total: int
    distinct_neg: int
    distinct_zero: int
    distinct_pos: int
    all_simple: bool
    squarefree_part_degree: int


def sign_variations(p: IntPoly) -> int:
    """Number of sign changes in the nonzero coefficient sequence."""
    count = 0
    prev = 0
    for c in p.coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def cauchy_root_bound_pow2(p: IntPoly) -> int:
    """Exponent e such that every real root of p has absolute value < 2**e."""
    if p.degree < 1:
        raise ValueError("constant polynomial has no root bound")
    lead = abs(p.lead)
    m = max(abs(c) for c in p.coeffs[:-1]) if p.degree else 0
    if m == 0:
        return 1
    q = m // lead
    return max(1, (q + 1).bit_length())


def _shift1(coeffs: list) -> list:
    """In-place p(x+1) by Pascal accumulation (ascending coefficients)."""
    d = len(coeffs) - 1
    for j in range(d):
        for i in range(d - 1, j - 1, -1):
            coeffs[i] += coeffs[i + 1]
    return coeffs


def _strip_pow2_content(coeffs: list) -> list:
    t = None
    for c in coeffs:
        if c:
            k = (c & -c).bit_length() - 1
            t = k if t is None else min(t, k)
            if t == 0:
                return coeffs
    if t:
        return [c >> t for c in coeffs]
    return coeffs


def _variations(coeffs) -> int:
    count = 0
    prev = 0
    for c in coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _isolate_unit_interval(q: IntPoly, max_depth: int = 2000):
    """Yield roots of squarefree q in the open interval (0, 1).

    Results are ('interval', c, k) for one root in (c/2^k, (c+1)/2^k), or
    ('exact', c, k) for a root exactly at c/2^k.  Requires q(0) != 0.
    """
    stack = [(0, 0, list(q.coeffs))]
    while stack:
        c, k, f = stack.pop()
        if k > max_depth:
            raise RuntimeError("isolation depth exceeded; input may not be squarefree")
        v = _variations(f)
        if v == 0:
            continue
        if v == 1:
            # Exactly one positive real root; inside (0,1) iff the sign changes.
            s0 = 1 if f[0] > 0 else -1
            s1 = sum(f)
            if s0 * s1 < 0:
                yield ("interval", c, k)
            continue
        # Descartes test for (0,1): variations of (1+x)^d f(1/(1+x)).
        w = _variations(_shift1(list(reversed(f))))
        if w == 0:
            continue
        if w == 1:
            yield ("interval", c, k)
            continue
        d = len(f) - 1
        fl = _strip_pow2_content([ci << (d - i) for i, ci in enumerate(f)])
        fr = _shift1(list(fl))
        if fr[0] == 0:
            yield ("exact", 2 * c + 1, k + 1)
            fr = fr[1:]  # squarefree: the dyadic root is simple
        stack.append((2 * c, k + 1, fl))
        stack.append((2 * c + 1, k + 1, _strip_pow2_content(fr)))


def _isolate_positive(sf: IntPoly) -> list[tuple[Rat, Rat, bool]]:
    """Isolate the positive real roots of a squarefree polynomial.

    Returns (lo, hi, exact) triples with 0 < lo <= hi; exact means lo == hi.
    """
    if sf.degree < 1:
        return []
    e = cauchy_root_bound_pow2(sf)
    b = Rat(1 << e)
    scaled = IntPoly([c << (e * i) for i, c in enumerate(sf.coeffs)])
    out = []
    for kind, c, k in _isolate_unit_interval(scaled):
        if kind == "exact":
            r = Rat(c, 1 << k) * b
            out.append((r, r, True))
        else:
            out.append((Rat(c, 1 << k) * b, Rat(c + 1, 1 << k) * b, False))
    return out


def _mirror(p: IntPoly) -> IntPoly:
    return IntPoly([-c if i & 1 else c for i, c in enumerate(p.coeffs)])


def isolate_real_roots_sqf(sf: IntPoly) -> list[tuple[Rat, Rat, bool]]:
    """Disjoint isolating intervals for all real roots of a squarefree polynomial,
    sorted in increasing order."""
    if sf.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    k = 0
    coeffs = sf.coeffs
    while coeffs[k] == 0:
        k += 1
    core = IntPoly(coeffs[k:]) if k else sf
    roots: list[tuple[Rat, Rat, bool]] = []
    for lo, hi, exact in _isolate_positive(_mirror(core)):
        roots.append((-hi, -lo, exact))
    if k:
        roots.append((Rat(0), Rat(0), True))
    roots.extend(_isolate_positive(core))
    roots.sort(key=lambda t: (t[0], t[1]))
    return roots


def _refine_step(p: IntPoly, lo: Rat, hi: Rat) -> tuple[Rat, Rat, bool]:
    """One bisection step preserving the sign change of p on (lo, hi)."""
    mid = (lo + hi) / 2
    sm = p.sign_at(mid)
    if sm == 0:
        return mid, mid, True
    if p.sign_at(lo) * sm < 0:
        return lo, mid, False
    return mid, hi, False


def refine_root(p: IntPoly, interval: tuple[Rat, Rat], bits: int) -> tuple[Rat, Rat]:
    """Shrink an isolating interval to width <= 2**-bits by exact bisection.

    The interval must isolate a single simple root: either a degenerate point
    or an interval across which p changes sign.
    """
    lo, hi = Rat(interval[0]), Rat(interval[1])
    if lo == hi:
        return lo, hi
    if p.sign_at(lo) * p.sign_at(hi) >= 0:
        raise ValueError("interval does not carry a sign change of p")
    width = Rat(1, 1 << bits)
    while hi - lo > width:
        lo, hi, hit = _refine_step(p, lo, hi)
        if hit:
            break
    return lo, hi


def count_real_roots(p: IntPoly) -> IsolationReport:
    """Count and isolate all real roots of p, with multiplicity.

    Descartes-rule bisection runs on each squarefree factor from Yun's
    decomposition; factor intervals are refined until pairwise disjoint, so
    multiplicities transfer to the isolated roots directly.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if p.degree == 0:
        return IsolationReport((), 0, 0, 0, 0, 0, 0, 0, 0, True, 0)

    # Zero roots come from the monomial content.
    m0 = 0
    coeffs = p.coeffs
    while coeffs[m0] == 0:
        m0 += 1
    core = IntPoly(coeffs[m0:])

    factors = squarefree_decomposition(core) if core.degree > 0 else []
    sf_degree = sum(g.degree for g, _ in factors)

    tagged: list[list] = []  # [lo, hi, exact, mult, factor]
    for g, mult in factors:
        for lo, hi, exact in isolate_real_roots_sqf(g):
            tagged.append([lo, hi, exact, mult, g])

    tagged.sort(key=lambda t: (t[0], t[1]))
    # Disjointify across factors (roots of distinct coprime factors never
    # coincide, so refinement always separates overlapping intervals).
    changed = True
    while changed:
        changed = False
        for i in range(len(tagged) - 1):
            a, b = tagged[i], tagged[i + 1]
            if a[1] > b[0]:
                for t in (a, b):
                    if not t[2]:
                        t[0], t[1], hit = _refine_step(t[4], t[0], t[1])
                        t[2] = t[2] or hit
                changed = True
        if changed:
            tagged.sort(key=lambda t: (t[0], t[1]))

    intervals = []
    n_neg = n_pos = 0
    d_neg = d_pos = 0
    for lo, hi, exact, mult, g in tagged:
        intervals.append(RootInterval(lo, hi, mult, exact, sign_change=not exact))
        negative = (lo < 0) if exact else (hi <= 0)
        if negative:
            n_neg += mult
            d_neg += 1
        else:
            n_pos += mult
            d_pos += 1
    if m0:
        intervals.append(RootInterval(Rat(0), Rat(0), m0, True, False))
        intervals.sort(key=lambda r: (r.lo, r.hi))

    n_zero = m0
    d_zero = 1 if m0 else 0
    all_simple = all(r.multiplicity == 1 for r in intervals)
    return IsolationReport(
        intervals=tuple(intervals),
        n_total=n_neg + n_zero + n_pos,
        n_neg=n_neg,
        n_zero=n_zero,
        n_pos=n_pos,
        distinct_total=d_neg + d_zero + d_pos,
        distinct_neg=d_neg,
        distinct_zero=d_zero,
        distinct_pos=d_pos,
        all_simple=all_simple,
        squarefree_part_degree=sf_degree + (1 if m0 else 0),
    )


def is_simple_all(p: IntPoly) -> bool:
    """True iff every real root of p is simple (gcd(p, p') has no real roots)."""
    if p.is_zero:
        raise ZeroPolynomial("zero polynomial")
    if p.degree < 1:
        return True
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return True
    return count_real_roots(g).distinct_total == 0


# -- Sturm oracle ---------------------------------------------------------------


def _primitive_signed(p: IntPoly) -> IntPoly:
    """Divide out the positive integer content, preserving the sign."""
    c = p.content()
    if c <= 1:
        return p
    return IntPoly(k // c for k in p.coeffs)


def sturm_chain(p: IntPoly) -> list[IntPoly]:
    """Signed PRS equal (up to positive constant factors) to the Sturm sequence.

    Built with pseudo-remainders whose known scale factor lead**(delta+1) is
    sign-corrected, then stripped to primitive parts, so every element is a
    positive multiple of the classical Sturm chain entry.
    """
    chain = [p, p.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        f, g = chain[-2], chain[-1]
        delta = f.degree - g.degree
        r = pseudo_rem(f, g)
        if g.lead < 0 and delta & 1 == 0:
            # lead**(delta+1) < 0: pseudo_rem flipped the sign of the true remainder.
            r = -r
        if r.is_zero:
            break
        chain.append(_primitive_signed(-r))
    if chain[-1].is_zero:
        chain.pop()
    return chain


def _chain_variations(chain: list[IntPoly], x: Rat) -> int:
    signs = []
    num, den = int(x.numerator), int(x.denominator)
    for f in chain:
        v = f.eval_numer_at(num, den)
        s = (v > 0) - (v < 0)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: IntPoly, lo, hi) -> int:
    """Number of distinct real roots of p in (lo, hi], by Sturm's theorem."""
    if p.is_zero:
        raise ZeroPolynomial("zero polynomial")
    lo, hi = Rat(lo), Rat(hi)
    if lo >= hi:
        raise ValueError("empty interval")
    if p.sign_at(lo) == 0 or p.sign_at(hi) == 0:
        raise EndpointRoot("Sturm endpoint is a root; perturb the endpoints")
    chain = sturm_chain(p)
    return _chain_variations(chain, lo) - _chain_variations(chain, hi)


def sturm_count_all(p: IntPoly) -> int:
    """Distinct real roots of p over the whole line (Sturm between root bounds)."""
    if p.is_zero:
        raise ZeroPolynomial("zero polynomial")
    if p.degree < 1:
        return 0
    e = cauchy_root_bound_pow2(p)
    b = Rat(1 << e)
    return sturm_count(p, -b, b)

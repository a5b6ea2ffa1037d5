"""Exact dyadic numbers and interval arithmetic with outward rounding.

Internal plumbing for certified sign determination.  A dyadic value is a pair
``(m, e)`` meaning ``m * 2**e``; an interval is ``(lo, hi)`` of two dyadics
with ``lo <= hi``.  Individual operations are exact; interval results may be
widened by rounding the lower endpoint down and the upper endpoint up to a
bounded mantissa, so an enclosure proven to exclude zero is always a rigorous
sign certificate while mantissas stay small enough to be fast.
"""

from __future__ import annotations

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

from .bigpoly import IntPoly, Rat

Dyadic = tuple[int, int]
Interval = tuple[Dyadic, Dyadic]


def dy(m: int, e: int = 0) -> Dyadic:
    return (m, e)


def dy_normalize(d: Dyadic) -> Dyadic:
    m, e = d
    if m == 0:
        return (0, 0)
    t = (m & -m).bit_length() - 1
    return (m >> t, e + t) if t else d


def dy_from_rat(x: Rat, e: int, toward: int) -> Dyadic:
    """Dyadic with exponent e bounding x from below (toward<0) or above (toward>0)."""
    num, den = int(x.numerator), int(x.denominator)
    if e <= 0:
        num <<= -e
    else:
        den <<= e
    q, r = divmod(num, den)
    if toward > 0 and r:
        q += 1
    return (q, e)


def dy_to_rat(d: Dyadic) -> Rat:
    m, e = d
    return Rat(m, 1) * Rat(2) ** e if e >= 0 else Rat(m, 1 << -e)


def dy_cmp(a: Dyadic, b: Dyadic) -> int:
    (ma, ea), (mb, eb) = a, b
    if ea == eb:
        d = ma - mb
    elif ea < eb:
        d = ma - (mb << (eb - ea))
    else:
        d = (ma << (ea - eb)) - mb
    return (d > 0) - (d < 0)


def dy_add(a: Dyadic, b: Dyadic) -> Dyadic:
    (ma, ea), (mb, eb) = a, b
    if ea == eb:
        return (ma + mb, ea)
    if ea < eb:
        return (ma + (mb << (eb - ea)), ea)
    return ((ma << (ea - eb)) + mb, eb)


def dy_neg(a: Dyadic) -> Dyadic:
    return (-a[0], a[1])


def dy_sub(a: Dyadic, b: Dyadic) -> Dyadic:
    return dy_add(a, dy_neg(b))


def dy_mul(a: Dyadic, b: Dyadic) -> Dyadic:
    return (a[0] * b[0], a[1] + b[1])


def dy_mul_int(a: Dyadic, k: int) -> Dyadic:
    return (a[0] * k, a[1])


def dy_pow(a: Dyadic, k: int) -> Dyadic:
    return (a[0] ** k, a[1] * k)


def dy_sign(a: Dyadic) -> int:
    return (a[0] > 0) - (a[0] < 0)


def dy_half_sum(a: Dyadic, b: Dyadic) -> Dyadic:
    """Exact midpoint (a + b) / 2."""
    s = dy_add(a, b)
    return (s[0], s[1] - 1)


def dy_round_down(a: Dyadic, prec: int) -> Dyadic:
    m, e = a
    t = m.bit_length() - prec
    if t <= 0:
        return a
    return (m >> t, e + t)


def dy_round_up(a: Dyadic, prec: int) -> Dyadic:
    m, e = a
    t = m.bit_length() - prec
    if t <= 0:
        return a
    return (-((-m) >> t), e + t)


# -- intervals -----------------------------------------------------------------


def ivl_point(a: Dyadic) -> Interval:
    return (a, a)


def ivl_round(a: Interval, prec: int) -> Interval:
    """Outward rounding: lower endpoint down, upper endpoint up."""
    return (dy_round_down(a[0], prec), dy_round_up(a[1], prec))


def ivl(lo: Dyadic, hi: Dyadic) -> Interval:
    return (lo, hi)


def ivl_add(a: Interval, b: Interval) -> Interval:
    return (dy_add(a[0], b[0]), dy_add(a[1], b[1]))


def ivl_sub(a: Interval, b: Interval) -> Interval:
    return (dy_sub(a[0], b[1]), dy_sub(a[1], b[0]))


def ivl_neg(a: Interval) -> Interval:
    return (dy_neg(a[1]), dy_neg(a[0]))


def ivl_mul(a: Interval, b: Interval) -> Interval:
    (alo, ahi), (blo, bhi) = a, b
    cands = (dy_mul(alo, blo), dy_mul(alo, bhi), dy_mul(ahi, blo), dy_mul(ahi, bhi))
    lo = hi = cands[0]
    for c in cands[1:]:
        if dy_cmp(c, lo) < 0:
            lo = c
        elif dy_cmp(c, hi) > 0:
            hi = c
    return (lo, hi)


def ivl_sqr(a: Interval) -> Interval:
    (alo, ahi) = a
    s_lo, s_hi = dy_sign(alo), dy_sign(ahi)
    if s_lo >= 0:
        return (dy_mul(alo, alo), dy_mul(ahi, ahi))
    if s_hi <= 0:
        return (dy_mul(ahi, ahi), dy_mul(alo, alo))
    lo2, hi2 = dy_mul(alo, alo), dy_mul(ahi, ahi)
    return ((0, 0), lo2 if dy_cmp(lo2, hi2) > 0 else hi2)


def ivl_mul_int(a: Interval, k: int) -> Interval:
    if k >= 0:
        return (dy_mul_int(a[0], k), dy_mul_int(a[1], k))
    return (dy_mul_int(a[1], k), dy_mul_int(a[0], k))


def ivl_pow_odd(a: Interval, k: int) -> Interval:
    """a**k for odd k (monotone, exact endpoint powers)."""
    return (dy_pow(a[0], k), dy_pow(a[1], k))


def ivl_pow_even(a: Interval, k: int) -> Interval:
    (alo, ahi) = a
    plo, phi = dy_pow(alo, k), dy_pow(ahi, k)
    if dy_sign(alo) >= 0:
        return (plo, phi)
    if dy_sign(ahi) <= 0:
        return (phi, plo)
    return ((0, 0), plo if dy_cmp(plo, phi) > 0 else phi)


def ivl_sign(a: Interval) -> int:
    """1 / -1 when the interval certifies a sign, 0 when it straddles zero."""
    if dy_sign(a[0]) > 0:
        return 1
    if dy_sign(a[1]) < 0:
        return -1
    return 0


def ivl_width_le(a: Interval, m: int, e: int) -> bool:
    return dy_cmp(dy_sub(a[1], a[0]), (m, e)) <= 0


# -- polynomial evaluation -------------------------------------------------------


def poly_at_dyadic(p: IntPoly, x: Dyadic) -> Dyadic:
    """Exact value of an integer polynomial at a dyadic point."""
    m, e = x
    c = p.coeffs
    if not c:
        return (0, 0)
    if e >= 0:
        return (p.eval_int(int(m) << e), 0)
    d = len(c) - 1
    s = -e
    m = _mpz(m)
    v = _mpz(c[-1])
    for i in range(d - 1, -1, -1):
        v = v * m + (_mpz(c[i]) << (s * (d - i)))
    return (int(v), e * d)


def poly_range(p: IntPoly, x: Interval, prec: int = 0) -> Interval:
    """Interval Horner enclosure of p over x (outward-rounded when prec > 0)."""
    c = p.coeffs
    if not c:
        return ((0, 0), (0, 0))
    if prec:
        x = ivl_round(x, prec)
    acc: Interval = ((c[-1], 0), (c[-1], 0))
    for i in range(len(c) - 2, -1, -1):
        acc = ivl_mul(acc, x)
        ci = (c[i], 0)
        acc = (dy_add(acc[0], ci), dy_add(acc[1], ci))
        if prec:
            acc = ivl_round(acc, prec)
    return acc


def poly_range_mv(p: IntPoly, dp: IntPoly, x: Interval, prec: int = 0) -> Interval:
    """Mean-value-form enclosure: p(mid) + p'(x) * (x - mid).

    Quadratically tighter than plain interval Horner on narrow intervals;
    dp must be the derivative of p.
    """
    lo, hi = x
    if lo == hi:
        v = poly_at_dyadic(p, lo)
        return ivl_round((v, v), prec) if prec else (v, v)
    mid = dy_half_sum(lo, hi)
    center = poly_at_dyadic(p, mid)
    if prec:
        c_ivl = ivl_round((center, center), prec)
    else:
        c_ivl = (center, center)
    slope = poly_range(dp, x, prec)
    dev = (dy_sub(lo, mid), dy_sub(hi, mid))
    spread = ivl_mul(slope, dev)
    out = (dy_add(c_ivl[0], spread[0]), dy_add(c_ivl[1], spread[1]))
    return ivl_round(out, prec) if prec else out


def nth_root_enclosure(x: Rat, n: int, bits: int) -> tuple[Rat, Rat]:
    """Dyadic enclosure of x**(1/n) of width <= 2**-bits, for x > 0, n >= 1.

    Refined by bisection with exact rational power comparisons, so both bounds
    are certified.
    """
    if x <= 0:
        raise ValueError("nth_root_enclosure requires a positive argument")
    if n == 1:
        return (x, x)
    lo, hi = Rat(0), Rat(1)
    while hi**n < x:
        lo, hi = hi, hi * 2
    if lo**n > x:
        lo = Rat(0)
    # invariant: lo**n <= x <= hi**n
    width = Rat(1, 1 << bits)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid
    return (lo, hi)

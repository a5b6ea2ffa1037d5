"""Certified counting and isolation of the real critical points of Phi_n.

For a prime index the count is settled by a Descartes certificate on the
cleared-denominator form of the derivative.  For a composite squarefree odd
index n = m*p (p the largest prime factor), the real critical points of Phi_n
away from zero are exactly the nonzero real zeros of

    S(x) = p * N(x**p) * Delta(x) - N(x) * Delta(x**p),

where N = x * Phi_m' and Delta = Phi_m; indeed S(x) = x * Phi_n'(x) * Phi_m(x)**2,
an identity this module re-verifies exactly per instance.  Since Delta has no
real roots, sign information about S and the monotonicity witness

    T(x) = p**2 * x**(p-1) * E(x**p) * Delta(x)**2 - E(x) * Delta(x**p)**2,

with E = N'*Delta - N*Delta' (a positive multiple of the derivative of
p*D_m(x**p) - D_m(x)), comes from the low-degree pieces only.  Enclosures use
outward-rounded dyadic interval arithmetic, so every certificate is rigorous;
point signs fall back to exact evaluation when an enclosure straddles zero.
Each reported interval carries a monotonicity certificate (hence a simple
root), and the region pass also re-verifies that no real critical point lies
outside (-1, 1).

Even and non-squarefree indices are mapped onto their squarefree odd core by
the classical reduction identities Phi_n(x) = Phi_rad(x**(n/rad)) and
Phi_2m(x) = +-Phi_m(-x).
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

from .bigpoly import IntPoly, Rat
from .cyclotomic import GeneralIndex, phi_poly, totient
from .intervals import nth_root_enclosure
from .realroots import (
    IsolationReport,
    RootInterval,
    cauchy_root_bound_pow2,
    count_real_roots,
    sign_variations,
)

_MAX_DEPTH = 200


class CertificationError(RuntimeError):
    """The adaptive subdivision could not certify a region (depth exhausted)."""


class InvariantViolation(AssertionError):
    """A per-instance re-verification of a classical fact failed."""


@dataclass(frozen=True)
class CriticalPointReport:
    """Critical-point counts for Phi_n with certified isolating intervals."""

    n: int
    k: int
    primes: tuple[int, ...]
    method: str
    report: IsolationReport

    @property
    def N(self) -> int:
        return self.report.n_total

    @property
    def N_neg(self) -> int:
        return self.report.n_neg

    @property
    def N_zero(self) -> int:
        return self.report.n_zero

    @property
    def N_pos(self) -> int:
        return self.report.n_pos


# -- fast aligned interval Horner -------------------------------------------------
#
# Working values are triples (lom, him, e): the interval [lom, him] * 2**e.
# All x intervals passed in are positive (negative regions are canonicalized
# through mirrored coefficient lists), which reduces interval multiplication
# to a three-way sign split on the accumulator with two integer products.


def _round_out(lom: int, him: int, e: int, prec: int):
    t = max(lom.bit_length(), him.bit_length()) - prec
    if t <= 0:
        return lom, him, e
    return lom >> t, -((-him) >> t), e + t


def _range_pos(coeffs, xlm: int, xhm: int, xe: int, prec: int):
    """Enclosure of sum(coeffs[i] * X**i) over positive X = [xlm, xhm] * 2**xe."""
    lom = him = coeffs[-1]
    e = 0
    for c in reversed(coeffs[:-1]):
        if lom >= 0:
            lom *= xlm
            him *= xhm
        elif him <= 0:
            lom *= xhm
            him *= xlm
        else:
            lom *= xhm
            him *= xhm
        e += xe
        if e <= 0:
            cc = c << -e
            lom += cc
            him += cc
        else:
            lom = (lom << e) + c
            him = (him << e) + c
            e = 0
        t = max(lom.bit_length(), him.bit_length()) - prec
        if t > 0:
            lom >>= t
            him = -((-him) >> t)
            e += t
    return lom, him, e


def _mv_range_pos(coeffs, dcoeffs, xlm: int, xhm: int, xe: int, prec: int):
    """Mean-value-form enclosure over positive X: P(mid) +- halfwidth * max|P'(X)|."""
    if xlm == xhm:
        return _range_pos(coeffs, xlm, xhm, xe, prec)
    slo, shi, se = _range_pos(dcoeffs, xlm, xhm, xe, prec)
    bound = max(-slo, slo, -shi, shi)
    # mid and halfwidth at exponent xe - 1
    clo, chi, ce = _range_pos(coeffs, xlm + xhm, xlm + xhm, xe - 1, prec)
    sp = bound * (xhm - xlm)  # exponent se + xe - 1
    e = min(ce, se + xe - 1)
    lom = (clo << (ce - e)) - (sp << (se + xe - 1 - e))
    him = (chi << (ce - e)) + (sp << (se + xe - 1 - e))
    return _round_out(lom, him, e, prec)


def _imul(a, b):
    """Generic product of aligned triples."""
    alo, ahi, ae = a
    blo, bhi, be = b
    if alo >= 0:
        if blo >= 0:
            return alo * blo, ahi * bhi, ae + be
        if bhi <= 0:
            return ahi * blo, alo * bhi, ae + be
        return ahi * blo, ahi * bhi, ae + be
    if ahi <= 0:
        if blo >= 0:
            return alo * bhi, ahi * blo, ae + be
        if bhi <= 0:
            return ahi * bhi, alo * blo, ae + be
        return alo * bhi, alo * blo, ae + be
    if blo >= 0:
        return alo * bhi, ahi * bhi, ae + be
    if bhi <= 0:
        return ahi * blo, alo * blo, ae + be
    cands = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(cands), max(cands), ae + be


def _isub(a, b):
    alo, ahi, ae = a
    blo, bhi, be = b
    e = min(ae, be)
    return (alo << (ae - e)) - (bhi << (be - e)), (ahi << (ae - e)) - (blo << (be - e)), e


def _isign(a) -> int:
    if a[0] > 0:
        return 1
    if a[1] < 0:
        return -1
    return 0


class _Pieces:
    """One orientation (original or mirrored) of the N / Delta / E pieces."""

    __slots__ = ("N", "N1", "D", "D1", "E", "E1", "pN", "pD", "pE")

    def __init__(self, n_poly: IntPoly, d_poly: IntPoly, e_poly: IntPoly):
        self.pN, self.pD, self.pE = n_poly, d_poly, e_poly
        self.N = n_poly.coeffs
        self.N1 = n_poly.derivative().coeffs
        self.D = d_poly.coeffs
        self.D1 = d_poly.derivative().coeffs
        self.E = e_poly.coeffs
        self.E1 = e_poly.derivative().coeffs


def _mirror_poly(p: IntPoly) -> IntPoly:
    return IntPoly([-c if i & 1 else c for i, c in enumerate(p.coeffs)])


class _CompositeCertifier:
    """Sign certification engine for S and T over canonical positive regions.

    A region with ``mirror=True`` represents the reflection x -> -x; the
    mirrored coefficient lists absorb the sign so that every interval handled
    here is positive.
    """

    PREC = 96

    def __init__(self, m: int, p: int):
        self.m = m
        self.p = p
        delta = phi_poly(m)
        n_poly = delta.derivative().shift_index(1)  # x * Phi_m'
        e_poly = n_poly.derivative() * delta - n_poly * delta.derivative()
        self.plain = _Pieces(n_poly, delta, e_poly)
        self.mirrored = _Pieces(
            _mirror_poly(n_poly), _mirror_poly(delta), _mirror_poly(e_poly)
        )
        # S(-x) = p*Nm(u) Dm(x) - Nm(x) Dm(u) with u = x**p and mirrored pieces;
        # T(-x) = p^2 x^(p-1) Em(u) Dm(x)^2 - Em(x) Dm(u)^2 likewise.
        self._s_memo: dict = {}

    def pieces(self, mirror: bool) -> _Pieces:
        return self.mirrored if mirror else self.plain

    # -- point signs ------------------------------------------------------------

    def s_sign(self, x, mirror: bool) -> int:
        """Exact-in-outcome sign of S at the (canonical positive) dyadic x."""
        key = (x, mirror)
        cached = self._s_memo.get(key)
        if cached is not None:
            return cached
        pc = self.pieces(mirror)
        prec = self.PREC
        m, e = x
        um = int(_mpz(m) ** self.p)
        ue = e * self.p
        t = um.bit_length() - prec
        ulm, uhm = (um >> t, (um >> t) + 1) if t > 0 else (um, um)
        ue = ue + max(t, 0)
        nu = _mv_range_pos(pc.N, pc.N1, ulm, uhm, ue, prec)
        du = _mv_range_pos(pc.D, pc.D1, ulm, uhm, ue, prec)
        nx = _range_pos(pc.N, m, m, e, prec)
        dx = _range_pos(pc.D, m, m, e, prec)
        lhs = _imul(nu, dx)
        s = _isign(_isub((lhs[0] * self.p, lhs[1] * self.p, lhs[2]), _imul(nx, du)))
        if s == 0:
            s = self._s_sign_exact(x, mirror)
        self._s_memo[key] = s
        return s

    def _s_sign_exact(self, x, mirror: bool) -> int:
        pc = self.pieces(mirror)
        m, e = x
        um = _mpz(m) ** self.p
        ue = e * self.p
        nu, nue = _eval_exact(pc.N, um, ue)
        du, due = _eval_exact(pc.D, um, ue)
        nx, nxe = _eval_exact(pc.N, _mpz(m), e)
        dx, dxe = _eval_exact(pc.D, _mpz(m), e)
        le = nue + dxe
        re = nxe + due
        ee = min(le, re)
        v = ((self.p * nu * dx) << (le - ee)) - ((nx * du) << (re - ee))
        return (v > 0) - (v < 0)

    def t_sign(self, x, mirror: bool) -> int:
        s = _isign(self.t_range(x[0], x[0], x[1], mirror))
        if s:
            return s
        pc = self.pieces(mirror)
        m, e = x
        um = _mpz(m) ** self.p
        ue = e * self.p
        xpm = _mpz(m) ** (self.p - 1)
        xpe = e * (self.p - 1)
        eu, eue = _eval_exact(pc.E, um, ue)
        du, due = _eval_exact(pc.D, um, ue)
        ex, exe = _eval_exact(pc.E, _mpz(m), e)
        dx, dxe = _eval_exact(pc.D, _mpz(m), e)
        le = xpe + eue + 2 * dxe
        re = exe + 2 * due
        ee = min(le, re)
        v = ((self.p * self.p * xpm * eu * dx * dx) << (le - ee)) - (
            (ex * du * du) << (re - ee)
        )
        return (v > 0) - (v < 0)

    # -- interval ranges ----------------------------------------------------------

    def _u_range(self, xlm: int, xhm: int, xe: int):
        prec = self.PREC
        ulm = int(_mpz(xlm) ** self.p)
        uhm = int(_mpz(xhm) ** self.p)
        ue = xe * self.p
        t = max(ulm.bit_length(), uhm.bit_length()) - prec
        if t > 0:
            ulm >>= t
            uhm = (uhm >> t) + 1
            ue += t
        return ulm, uhm, ue

    def s_range(self, xlm: int, xhm: int, xe: int, mirror: bool):
        pc = self.pieces(mirror)
        prec = self.PREC
        ulm, uhm, ue = self._u_range(xlm, xhm, xe)
        nu = _mv_range_pos(pc.N, pc.N1, ulm, uhm, ue, prec)
        du = _mv_range_pos(pc.D, pc.D1, ulm, uhm, ue, prec)
        nx = _mv_range_pos(pc.N, pc.N1, xlm, xhm, xe, prec)
        dx = _mv_range_pos(pc.D, pc.D1, xlm, xhm, xe, prec)
        lhs = _imul(nu, dx)
        return _isub((lhs[0] * self.p, lhs[1] * self.p, lhs[2]), _imul(nx, du))

    def t_range(self, xlm: int, xhm: int, xe: int, mirror: bool):
        pc = self.pieces(mirror)
        prec = self.PREC
        ulm, uhm, ue = self._u_range(xlm, xhm, xe)
        xplm = int(_mpz(xlm) ** (self.p - 1))
        xphm = int(_mpz(xhm) ** (self.p - 1))
        xpe = xe * (self.p - 1)
        t = max(xplm.bit_length(), xphm.bit_length()) - prec
        if t > 0:
            xplm >>= t
            xphm = (xphm >> t) + 1
            xpe += t
        eu = _mv_range_pos(pc.E, pc.E1, ulm, uhm, ue, prec)
        du = _mv_range_pos(pc.D, pc.D1, ulm, uhm, ue, prec)
        ex = _mv_range_pos(pc.E, pc.E1, xlm, xhm, xe, prec)
        dx = _mv_range_pos(pc.D, pc.D1, xlm, xhm, xe, prec)
        lhs = _imul(_imul((xplm, xphm, xpe), eu), _imul(dx, dx))
        p2 = self.p * self.p
        rhs = _imul(ex, _imul(du, du))
        return _isub((lhs[0] * p2, lhs[1] * p2, lhs[2]), rhs)


def _eval_exact(coeffs, m, e: int):
    """Exact value of sum c_i (m 2^e)^i as (mantissa, exponent); e <= 0."""
    if e > 0:
        m = m << e
        e = 0
    d = len(coeffs) - 1
    s = -e
    v = _mpz(coeffs[-1])
    for i in range(d - 1, -1, -1):
        v = v * m + (_mpz(coeffs[i]) << (s * (d - i)))
    return v, e * d


def _align_pair(a, b):
    (ma, ea), (mb, eb) = a, b
    e = min(ea, eb)
    return ma << (ea - e), mb << (eb - e), e


def _dy_norm(m: int, e: int):
    if m == 0:
        return (0, 0)
    t = (m & -m).bit_length() - 1
    return (m >> t, e + t) if t else (m, e)


def _dy_mid(a, b):
    am, bm, e = _align_pair(a, b)
    return _dy_norm(am + bm, e - 1)


def _dy_rat(a) -> Rat:
    m, e = a
    return Rat(m) * Rat(2) ** e if e >= 0 else Rat(m, 1 << -e)


def _certify_region(cert: _CompositeCertifier, lo, hi, mirror: bool, allow_roots: bool):
    """Certify the closed canonical region [lo, hi] with 0 < lo < hi.

    Returns root records ('interval', lo, hi) / ('exact', x) in canonical
    coordinates, each certified by strict monotonicity of the proxy difference.
    """
    roots = []
    stack = [(lo, cert.s_sign(lo, mirror), hi, cert.s_sign(hi, mirror), 0)]
    while stack:
        a, sa, b, sb, depth = stack.pop()
        if depth > _MAX_DEPTH:
            raise CertificationError(
                f"cannot certify region [{_dy_rat(a)}, {_dy_rat(b)}]"
            )
        am, bm, e = _align_pair(a, b)
        if sa == sb and sa != 0:
            if _isign(cert.s_range(am, bm, e, mirror)) != 0:
                continue
        if _isign(cert.t_range(am, bm, e, mirror)) != 0:
            # Strictly monotone: at most one zero, present iff the signs differ.
            if sa * sb < 0:
                if not allow_roots:
                    raise InvariantViolation(
                        "certified a real critical point outside (-1, 1)"
                    )
                roots.append(("interval", a, b))
            continue
        mid = _dy_mid(a, b)
        sm = cert.s_sign(mid, mirror)
        if sm == 0:
            if not allow_roots:
                raise InvariantViolation(
                    "certified a real critical point outside (-1, 1)"
                )
            if cert.t_sign(mid, mirror) == 0:
                raise CertificationError(f"repeated real root at {_dy_rat(mid)}")
            roots.append(("exact", mid))
        stack.append((a, sa, mid, sm, depth + 1))
        stack.append((mid, sm, b, sb, depth + 1))
    return roots


def _refine_canonical(cert: _CompositeCertifier, a, b, mirror: bool, bits: int):
    """Dyadic bisection on the exact sign of S down to width 2**-bits."""
    sa = cert.s_sign(a, mirror)
    target = Rat(1, 1 << bits)
    while _dy_rat(b) - _dy_rat(a) > target:
        mid = _dy_mid(a, b)
        sm = cert.s_sign(mid, mirror)
        if sm == 0:
            return mid, mid
        if sm == sa:
            a = mid
        else:
            b = mid
    return a, b


def _composite_isolate(primes: tuple[int, ...], bits: int):
    """Isolate the real critical points of Phi_n for squarefree odd n, k >= 2."""
    p = primes[-1]
    m = 1
    for q in primes[:-1]:
        m *= q
    cert = _CompositeCertifier(m, p)

    # Foundation checks, all exact and per instance:
    # (1) Phi_m has no real roots, so Delta**2 > 0 and sign(S) = sign(x Phi_n').
    if count_real_roots(cert.plain.pD).distinct_total != 0:
        raise InvariantViolation(f"Phi_{m} unexpectedly has a real root")
    # (2) The structural identity S = x * Phi_n' * Phi_m**2, which also
    #     re-verifies the proxy recurrence for this (m, p) pair exactly.
    n = m * p
    phi_n = phi_poly(n)
    dphi_n = phi_n.derivative()
    n_poly, delta = cert.plain.pN, cert.plain.pD
    s_poly = p * (n_poly.compose_power(p) * delta) - (n_poly * delta.compose_power(p))
    if s_poly != dphi_n.shift_index(1) * delta * delta:
        raise InvariantViolation(f"proxy recurrence identity failed for n={n}")
    # (3) Phi_n' has no zero root (linear term of Phi_n is +-1).
    if abs(phi_n[1]) != 1:
        raise InvariantViolation(f"linear coefficient of Phi_{n} is not +-1")

    one = (1, 0)
    for mirror in (False, True):
        if cert.s_sign(one, mirror) == 0:
            raise InvariantViolation("Phi_n' vanishes at +-1")

    # Neighborhood of zero: S has a simple zero at x=0 and no other zero nearby;
    # certified by strict monotonicity on both sides.
    j = 8
    while True:
        delta_pt = (1, -j)
        if (
            _isign(cert.t_range(0, 1, -j, False)) != 0
            and _isign(cert.t_range(0, 1, -j, True)) != 0
        ):
            break
        j += 4
        if j > 400:
            raise CertificationError("cannot certify a zero-free neighborhood of 0")

    found = {
        False: _certify_region(cert, delta_pt, one, False, allow_roots=True),
        True: _certify_region(cert, delta_pt, one, True, allow_roots=True),
    }

    # Gauss-Lucas containment, re-verified: no real critical points outside.
    e = cauchy_root_bound_pow2(dphi_n)
    big = (1 << e, 0)
    _certify_region(cert, one, big, False, allow_roots=False)
    _certify_region(cert, one, big, True, allow_roots=False)

    intervals = []
    for mirror, recs in found.items():
        for rec in recs:
            if rec[0] == "exact":
                a = b = rec[1]
            else:
                a, b = _refine_canonical(cert, rec[1], rec[2], mirror, bits)
            ra, rb = _dy_rat(a), _dy_rat(b)
            if mirror:
                intervals.append((-rb, -ra, a == b))
            else:
                intervals.append((ra, rb, a == b))
    intervals.sort()
    return intervals


def _prime_report(p: int, bits: int) -> IsolationReport:
    """Exactly one simple negative critical point for a prime index.

    Certificate: Phi_p' has all-positive coefficients (no nonnegative real
    roots), and with g the cleared-denominator form (p-1)x^p - px^(p-1) + 1,
    the mirror g(-x) has exactly one coefficient sign variation, so g has
    exactly one negative root, simple, shared with Phi_p'.
    """
    dphi = phi_poly(p).derivative()
    if any(c <= 0 for c in dphi.coeffs):
        raise InvariantViolation("Phi_p' should have positive coefficients")
    g = IntPoly([1] + [0] * (p - 2) + [-p, p - 1])
    h = IntPoly([1] + [0] * (p - 2) + [-p, -(p - 1)])  # g(-x)
    if sign_variations(h) != 1:
        raise InvariantViolation("mirror of g must have exactly one sign variation")
    if dphi * IntPoly([1, -2, 1]) != g:
        raise InvariantViolation("g != Phi_p' * (x-1)^2")
    lo, hi = Rat(-1), Rat(0)
    width = Rat(1, 1 << bits)
    exact = False
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = g.sign_at(mid)
        if s == 0:
            lo = hi = mid
            exact = True
            break
        if s * g.sign_at(lo) < 0:
            hi = mid
        else:
            lo = mid
    iv = RootInterval(lo, hi, 1, exact, sign_change=not exact)
    return IsolationReport(
        intervals=(iv,),
        n_total=1,
        n_neg=1,
        n_zero=0,
        n_pos=0,
        distinct_total=1,
        distinct_neg=1,
        distinct_zero=0,
        distinct_pos=0,
        all_simple=True,
        squarefree_part_degree=p - 2,
    )


def _squarefree_odd_report(primes: tuple[int, ...], bits: int) -> IsolationReport:
    if len(primes) == 1:
        return _prime_report(primes[0], bits)
    triples = _composite_isolate(primes, bits)
    intervals = []
    n_neg = n_pos = 0
    for lo, hi, exact in triples:
        intervals.append(RootInterval(lo, hi, 1, exact, sign_change=not exact))
        if (lo < 0) if exact else (hi <= 0):
            n_neg += 1
        else:
            n_pos += 1
    k = len(primes)
    if (n_neg % 2 == 0) == (k % 2 == 1) or (n_pos % 2 == 1) == (k % 2 == 1):
        raise InvariantViolation(
            f"parity law violated for n={primes}: N-={n_neg}, N+={n_pos}"
        )
    return IsolationReport(
        intervals=tuple(intervals),
        n_total=n_neg + n_pos,
        n_neg=n_neg,
        n_zero=0,
        n_pos=n_pos,
        distinct_total=n_neg + n_pos,
        distinct_neg=n_neg,
        distinct_zero=0,
        distinct_pos=n_pos,
        all_simple=True,
        squarefree_part_degree=-1,  # complex squarefreeness not analyzed here
    )


def _map_even(report: IsolationReport) -> IsolationReport:
    """Critical points of Phi_2m from those of Phi_m (x -> -x)."""
    intervals = tuple(
        RootInterval(-r.hi, -r.lo, r.multiplicity, r.exact, r.sign_change)
        for r in reversed(report.intervals)
    )
    return IsolationReport(
        intervals=intervals,
        n_total=report.n_total,
        n_neg=report.n_pos,
        n_zero=report.n_zero,
        n_pos=report.n_neg,
        distinct_total=report.distinct_total,
        distinct_neg=report.distinct_pos,
        distinct_zero=report.distinct_zero,
        distinct_pos=report.distinct_neg,
        all_simple=report.all_simple,
        squarefree_part_degree=report.squarefree_part_degree,
    )


def _map_power(report: IsolationReport, e: int, bits: int) -> IsolationReport:
    """Critical points of Phi_n(x) = Phi_r(x**e) from those of Phi_r.

    Nonzero roots map through x = w**(1/e) (sign-aware); for even e only the
    positive roots of the base survive, each contributing a +- pair.  A zero
    root of multiplicity e-1 appears from the inner power rule.
    """
    if e == 1:
        return report

    def root_enclosure(lo: Rat, hi: Rat) -> tuple[Rat, Rat]:
        rl = nth_root_enclosure(lo, e, bits)[0] if lo > 0 else Rat(0)
        rh = nth_root_enclosure(hi, e, bits)[1]
        return rl, rh

    intervals: list[RootInterval] = []
    n_neg = n_pos = d_neg = d_pos = 0
    for r in report.intervals:
        if r.exact and r.lo == 0:
            continue  # the base has no zero root (|c1| = 1 checked upstream)
        negative = (r.lo < 0) if r.exact else (r.hi <= 0)
        if negative and e % 2 == 0:
            continue
        if negative:
            rl, rh = root_enclosure(-r.hi, -r.lo)
            intervals.append(RootInterval(-rh, -rl, r.multiplicity, r.exact, r.sign_change))
            n_neg += r.multiplicity
            d_neg += 1
        else:
            rl, rh = root_enclosure(r.lo, r.hi)
            intervals.append(RootInterval(rl, rh, r.multiplicity, r.exact, r.sign_change))
            n_pos += r.multiplicity
            d_pos += 1
            if e % 2 == 0:
                intervals.append(
                    RootInterval(-rh, -rl, r.multiplicity, r.exact, r.sign_change)
                )
                n_neg += r.multiplicity
                d_neg += 1
    intervals.append(RootInterval(Rat(0), Rat(0), e - 1, True, False))
    intervals.sort(key=lambda r: (r.lo, r.hi))
    return IsolationReport(
        intervals=tuple(intervals),
        n_total=n_neg + (e - 1) + n_pos,
        n_neg=n_neg,
        n_zero=e - 1,
        n_pos=n_pos,
        distinct_total=d_neg + 1 + d_pos,
        distinct_neg=d_neg,
        distinct_zero=1,
        distinct_pos=d_pos,
        all_simple=report.all_simple and e - 1 <= 1,
        squarefree_part_degree=-1,
    )


def critical_report(n: int, bits: int = 24) -> CriticalPointReport:
    """Count and isolate all real roots of Phi_n', for any n >= 2.

    Squarefree odd indices are handled directly; other indices go through the
    classical reductions (the ``method`` field records the path taken).
    """
    g = GeneralIndex.of(n)
    e = g.n // g.radical
    rad_primes = g.primes
    odd_primes = tuple(q for q in rad_primes if q != 2)

    if not odd_primes:
        # n = 2**a: Phi_n' is a monomial.
        half_deg = totient(g) - 1 if g.n > 2 else 0
        if g.n == 2:
            report = IsolationReport((), 0, 0, 0, 0, 0, 0, 0, 0, True, 0)
        else:
            iv = RootInterval(Rat(0), Rat(0), half_deg, True, False)
            report = IsolationReport(
                (iv,), half_deg, 0, half_deg, 0, 1, 0, 1, 0, half_deg <= 1, 1
            )
        return CriticalPointReport(n, 0, (), "power-of-two", report)

    base = _squarefree_odd_report(odd_primes, bits)
    method = "prime-descartes" if len(odd_primes) == 1 else "proxy-split"
    if 2 in rad_primes:
        base = _map_even(base)
        method += "+even"
    if e > 1:
        base = _map_power(base, e, bits)
        method += "+radical"
    return CriticalPointReport(n, len(odd_primes), odd_primes, method, base)


def refine_critical_points(n: int, bits: int) -> list[tuple[Rat, Rat]]:
    """Isolating intervals of Phi_n' refined to width <= 2**-bits."""
    rep = critical_report(n, bits=bits)
    return [(r.lo, r.hi) for r in rep.report.intervals]

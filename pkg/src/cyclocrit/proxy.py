"""Proxy-function machinery for critical-point analysis.

``proxy_d(n)`` is the scaled logarithmic derivative D(x) = x * Phi_n'(x) / Phi_n(x):
away from zero it has the same real roots, with the same simplicity, as
Phi_n'.  ``proxy_h(n, p)`` is H(x) = p * D(x**p).  They satisfy the exact
recurrence D_{np} = H - D (verified coefficientwise by
``check_dh_recurrence``), and the sign tables of their first three derivative
orders at x in {-1, 0, +1} drive the geometric analysis.

``find_narrow_h`` and ``check_well_configured`` evaluate the two predicate
bundles that force the critical-point recurrence N_{np} = 2 N_n + 1: a strip
height h whose band |D| <= h contains no critical value and comes with
curvature control, and seven inequalities separating the graphs of D and H.
All extremal subproblems reduce to real-root isolation of derivative
numerators plus exact evaluation at the isolated algebraic points; every
reported bound is taken from the conservative side of its enclosure, so a
"pass" verdict is always sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bigpoly import IntPoly, Rat, div_exact, poly_gcd, rat_abs, squarefree_part
from .cyclotomic import PrimeIndex, coprime, is_prime, phi_poly
from .intervals import dy_to_rat, nth_root_enclosure, poly_range
from .realroots import is_simple_all, isolate_real_roots_sqf


class IndexNotCoprime(ValueError):
    """The auxiliary prime divides the index."""


class SimplicityViolated(ValueError):
    """A repeated real critical point was detected; the predicates need simple roots."""


class NotNarrow(ValueError):
    """The supplied strip height fails the narrowness conditions."""


@dataclass(frozen=True)
class RatFun:
    """Quotient of integer polynomials in lowest terms, positive leading
    denominator coefficient."""

    num: IntPoly
    den: IntPoly

    @classmethod
    def of(cls, num: IntPoly, den: IntPoly, reduce: bool = True) -> "RatFun":
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if reduce and not num.is_zero:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = div_exact(num, g)
                den = div_exact(den, g)
        if den.lead < 0:
            num, den = -num, -den
        return cls(num, den)

    def derivative(self, reduce: bool = True) -> "RatFun":
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RatFun.of(num, self.den * self.den, reduce=reduce)

    def eval_rat(self, x) -> Rat:
        x = Rat(x)
        dv = self.den.eval_rat(x)
        if dv == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.eval_rat(x) / dv

    def sign_at(self, x) -> int:
        v = self.eval_rat(x)
        return (v > 0) - (v < 0)


def proxy_d(idx) -> RatFun:
    """D(x) = x * Phi_n'(x) / Phi_n(x) in lowest terms."""
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    phi = phi_poly(idx.n)
    num = phi.derivative().shift_index(1)
    # Reduction is a no-op (checked) since Phi_n is irreducible and does not
    # divide x * Phi_n'; the gcd still runs as a safety check.
    fun = RatFun.of(num, phi, reduce=True)
    if fun.num != num or fun.den != phi:
        raise AssertionError("x Phi_n' / Phi_n unexpectedly reducible")
    return fun


def proxy_h(idx, p: int) -> RatFun:
    """H(x) = p * D(x**p), as an explicit quotient with dilated pieces."""
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    if not is_prime(p) or p == 2:
        raise IndexNotCoprime(f"{p} must be an odd prime")
    if not coprime(idx.n, p):
        raise IndexNotCoprime(f"{p} divides {idx.n}")
    d = proxy_d(idx)
    return RatFun.of(
        d.num.compose_power(p).mul_scalar(p), d.den.compose_power(p), reduce=False
    )


def proxy_h_derivative(idx, p: int, order: int) -> RatFun:
    """Symbolic derivative of H through the chain rule, orders 0..2.

    H'(x)  = p**2 x**(p-1) D'(x**p)
    H''(x) = p**2 (p-1) x**(p-2) D'(x**p) + p**3 x**(2p-2) D''(x**p)

    The pieces D', D'' are exact reduced quotients of low degree, so no
    large-degree gcd is ever needed; the dilated results are exact.
    """
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    if order == 0:
        return proxy_h(idx, p)
    if not is_prime(p) or p == 2 or not coprime(idx.n, p):
        raise IndexNotCoprime(f"{p} must be an odd prime not dividing {idx.n}")
    d1 = proxy_d(idx).derivative()
    if order == 1:
        num = d1.num.compose_power(p).shift_index(p - 1).mul_scalar(p * p)
        return RatFun.of(num, d1.den.compose_power(p), reduce=False)
    if order == 2:
        d2 = d1.derivative()
        phi_p = phi_poly(idx.n).compose_power(p)
        r = d2.den.degree // phi_poly(idx.n).degree
        t1 = d1.num.compose_power(p).shift_index(p - 2).mul_scalar(p * p * (p - 1))
        t1 = t1 * phi_p ** (r - 2)
        t2 = d2.num.compose_power(p).shift_index(2 * p - 2).mul_scalar(p**3)
        return RatFun.of(t1 + t2, phi_p**r, reduce=False)
    raise ValueError("supported orders are 0, 1, 2")


def check_dh_recurrence(idx, p: int) -> bool:
    """Exact identity D_{np} = H_{n,p} - D_n, checked by cross-multiplication.

    No floating point anywhere: both sides are compared coefficientwise after
    clearing denominators.
    """
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    if not is_prime(p) or p == 2 or not coprime(idx.n, p):
        raise IndexNotCoprime(f"{p} must be an odd prime not dividing {idx.n}")
    left = proxy_d(PrimeIndex.of(idx.n * p))
    d = proxy_d(idx)
    h = proxy_h(idx, p)
    rhs_num = h.num * d.den - d.num * h.den
    rhs_den = h.den * d.den
    return left.num * rhs_den == rhs_num * left.den


_D_TABLE = {
    (0, -1): "+",
    (0, 0): "0",
    (0, 1): "+",
    (1, -1): "-",
    (1, 0): "k1",  # (-1)**(k+1)
    (1, 1): "+",
    (2, -1): "-",
    (2, 0): "k1",
    (2, 1): "-",
}

_H_TABLE = {
    (0, -1): "+",
    (0, 0): "0",
    (0, 1): "+",
    (1, -1): "-",
    (1, 0): "0",
    (1, 1): "+",
    (2, -1): "-",
    (2, 0): "0",
    (2, 1): "-",
}


def _expect_sign(code: str, k: int) -> int:
    if code == "+":
        return 1
    if code == "-":
        return -1
    if code == "0":
        return 0
    return 1 if (k + 1) % 2 == 0 else -1


def check_shapes_table(idx, p: int, collect: list | None = None) -> bool:
    """Signs of D, D', D'' and H, H', H'' at x in {-1, 0, +1}.

    True iff every entry matches the expected sign table exactly, including
    the parity-dependent entries.  Mismatches are appended to ``collect`` when
    provided; they are reported, never patched.
    """
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    k = idx.k
    d_funs = [proxy_d(idx)]
    d_funs.append(d_funs[0].derivative())
    d_funs.append(d_funs[1].derivative())
    h_funs = [proxy_h_derivative(idx, p, order) for order in range(3)]
    ok = True
    for order in range(3):
        for x in (-1, 0, 1):
            got = d_funs[order].sign_at(x)
            want = _expect_sign(_D_TABLE[(order, x)], k)
            if got != want:
                ok = False
                if collect is not None:
                    collect.append(("D", idx.n, p, order, x, want, got))
            got = h_funs[order].sign_at(x)
            want = _expect_sign(_H_TABLE[(order, x)], k)
            if got != want:
                ok = False
                if collect is not None:
                    collect.append(("H", idx.n, p, order, x, want, got))
    return ok


def check_graph_correspondence(idx, p: int, samples) -> bool:
    """Pointwise form of the graph correspondence: H(x) = p * D(x**p) exactly."""
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    h = proxy_h(idx, p)
    d = proxy_d(idx)
    for x in samples:
        x = Rat(x)
        if h.eval_rat(x) != p * d.eval_rat(x**p):
            return False
    return True


def predict_count_recurrence(idx) -> tuple[int, int, int]:
    """Closed-form prediction (N, N_neg, N_pos) = (2**k - 1, ...) obtained by
    unrolling N -> 2N + 1 with its parity-dependent sign split from
    (1, 1, 0) at k = 1."""
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    n_total, n_neg, n_pos = 1, 1, 0
    for k_prev in range(1, idx.k):
        odd = k_prev % 2 == 1
        n_pos = 2 * n_pos + (1 if odd else 0)
        n_neg = 2 * n_neg + (0 if odd else 1)
        n_total = 2 * n_total + 1
    return n_total, n_neg, n_pos


# -- algebraic points and certified extrema ---------------------------------------


@dataclass
class AlgPoint:
    """A real algebraic point: an isolating dyadic interval for one root of a
    defining polynomial, refinable on demand."""

    poly: IntPoly
    lo: Rat
    hi: Rat
    exact: bool

    def refine(self, steps: int = 1):
        for _ in range(steps):
            if self.exact or self.lo == self.hi:
                self.exact = True
                return
            mid = (self.lo + self.hi) / 2
            s = self.poly.sign_at(mid)
            if s == 0:
                self.lo = self.hi = mid
                self.exact = True
                return
            if s * self.poly.sign_at(self.lo) < 0:
                self.hi = mid
            else:
                self.lo = mid

    def abs_bounds(self) -> tuple[Rat, Rat]:
        a, b = rat_abs(self.lo), rat_abs(self.hi)
        if self.lo <= 0 <= self.hi:
            return Rat(0), max(a, b)
        return min(a, b), max(a, b)


def _dy(x: Rat):
    num, den = int(x.numerator), int(x.denominator)
    e = den.bit_length() - 1
    if den != 1 << e:
        raise ValueError("not a dyadic rational")
    return (num, -e)


def _ratfun_bounds(num: IntPoly, den: IntPoly, pt: AlgPoint, max_refine: int = 80):
    """Certified enclosure of num/den over the point's interval.

    Refines until the denominator enclosure is sign-definite (denominators
    used here are positive on the real line, so this always terminates).
    """
    for _ in range(max_refine):
        x = (_dy(pt.lo), _dy(pt.hi))
        nlo, nhi = poly_range(num, x)
        dlo, dhi = poly_range(den, x)
        dl, dh = dy_to_rat(dlo), dy_to_rat(dhi)
        if dl > 0 or dh < 0:
            nl, nh = dy_to_rat(nlo), dy_to_rat(nhi)
            cands = (nl / dl, nl / dh, nh / dl, nh / dh)
            return min(cands), max(cands)
        if pt.exact:
            raise ZeroDivisionError("denominator vanishes at an exact point")
        pt.refine()
    raise ArithmeticError("cannot certify denominator sign")


def _abs_value_bounds(num: IntPoly, den: IntPoly, pt: AlgPoint):
    lo, hi = _ratfun_bounds(num, den, pt)
    if lo >= 0:
        return lo, hi
    if hi <= 0:
        return -hi, -lo
    return Rat(0), max(-lo, hi)


def _roots_in_unit_interval(poly: IntPoly) -> list[AlgPoint]:
    """Isolated real roots of poly lying in [-1, 1], as refinable points."""
    sf = squarefree_part(poly)
    out = []
    for lo, hi, exact in isolate_real_roots_sqf(sf):
        pt = AlgPoint(sf, lo, hi, exact)
        while True:
            if pt.exact:
                if -1 <= pt.lo <= 1:
                    out.append(pt)
                break
            if pt.hi <= -1 or pt.lo >= 1:
                break
            if pt.lo >= -1 and pt.hi <= 1:
                out.append(pt)
                break
            # straddles an endpoint of [-1, 1]
            if pt.lo < -1 < pt.hi and sf.sign_at(-1) == 0:
                pt.lo = pt.hi = Rat(-1)
                pt.exact = True
                continue
            if pt.lo < 1 < pt.hi and sf.sign_at(1) == 0:
                pt.lo = pt.hi = Rat(1)
                pt.exact = True
                continue
            pt.refine()
    return out


@dataclass
class ConditionRecord:
    """Evidence for one predicate condition: verdict plus the certified bounds
    that decided it."""

    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class NarrowCertificate:
    """Evidence that a strip height is narrow for the index."""

    n: int
    h: Rat
    l_lo: Rat
    l_hi: Rat
    conditions: list[ConditionRecord]
    passed: bool


@dataclass
class WellConfiguredCertificate:
    """Per-condition evidence for the seven graph-separation inequalities."""

    n: int
    p: int
    h: Rat
    a_lo: Rat
    a_hi: Rat
    b_lo: Rat
    b_hi: Rat
    conditions: list[ConditionRecord]
    passed: bool

    def failing(self) -> list[str]:
        return [c.name for c in self.conditions if not c.passed]


class _ProxyAnalysis:
    """Shared exact data behind the predicates, computed once per index."""

    def __init__(self, idx: PrimeIndex):
        self.idx = idx
        self.n = idx.n
        self.k = idx.k
        self.D = proxy_d(idx)
        self.D1 = self.D.derivative()
        self.D2 = self.D1.derivative()
        self.D3 = self.D2.derivative()
        self.crit_pts = _roots_in_unit_interval(self.D1.num)
        self.infl_pts = _roots_in_unit_interval(self.D2.num)
        self.jerk_pts = _roots_in_unit_interval(self.D3.num)
        self.d_at_1 = self.D.eval_rat(1)
        self.d_at_m1 = self.D.eval_rat(-1)

    def crit_value_floor(self, max_refine: int = 200) -> Rat:
        """Certified positive lower bound on |D| over its interior critical points.

        Raises SimplicityViolated when a critical value cannot be separated
        from zero (which happens exactly at a repeated real critical point)."""
        floor = None
        for pt in self.crit_pts:
            for _ in range(max_refine):
                lo, _hi = _abs_value_bounds(self.D.num, self.D.den, pt)
                if lo > 0:
                    break
                if pt.exact:
                    raise SimplicityViolated(f"critical value vanishes at {pt.lo}")
                pt.refine()
            else:
                raise SimplicityViolated("cannot separate a critical value from zero")
            floor = lo if floor is None else min(floor, lo)
        return floor if floor is not None else min(self.d_at_1, self.d_at_m1)

    def max_abs_over_unit(self, fun: RatFun, pts: list[AlgPoint], tighten: int = 8) -> Rat:
        """Certified upper bound of |fun| over [-1, 1]: endpoint values plus
        enclosures at the interior extremal points."""
        best = max(rat_abs(fun.eval_rat(1)), rat_abs(fun.eval_rat(-1)))
        for pt in pts:
            pt.refine(tighten)
            _, hi = _abs_value_bounds(fun.num, fun.den, pt)
            best = max(best, hi)
        return best

    def level_points(self, h: Rat) -> list[AlgPoint]:
        """Solutions of |D| = h in [-1, 1]: roots of the cleared D -/+ h."""
        hn, hd = int(h.numerator), int(h.denominator)
        plus = self.D.num.mul_scalar(hd) - self.D.den.mul_scalar(hn)
        minus = self.D.num.mul_scalar(hd) + self.D.den.mul_scalar(hn)
        return _roots_in_unit_interval(plus) + _roots_in_unit_interval(minus)


_ANALYSIS_CACHE: dict[int, _ProxyAnalysis] = {}


def _get_analysis(idx: PrimeIndex) -> _ProxyAnalysis:
    a = _ANALYSIS_CACHE.get(idx.n)
    if a is None:
        a = _ProxyAnalysis(idx)
        _ANALYSIS_CACHE[idx.n] = a
    return a


def _level_radius(level_pts: list[AlgPoint], refine_bits: int = 48):
    """Certified enclosure [l_lo, l_hi] of the smallest |x| with |D(x)| = h."""
    if not level_pts:
        raise NotNarrow("the strip has no boundary points inside [-1, 1]")
    for pt in level_pts:
        while not pt.exact and pt.hi - pt.lo > Rat(1, 1 << refine_bits):
            pt.refine()
    bounds = [pt.abs_bounds() for pt in level_pts]
    l_lo = min(b[0] for b in bounds)
    l_hi = min(b[1] for b in bounds)
    if l_lo == 0:
        # a level point straddling zero can always be separated: D(0) = 0 < h
        for pt in level_pts:
            while pt.lo <= 0 <= pt.hi and not pt.exact:
                pt.refine()
        bounds = [pt.abs_bounds() for pt in level_pts]
        l_lo = min(b[0] for b in bounds)
        l_hi = min(b[1] for b in bounds)
    return l_lo, l_hi


def narrow_conditions(idx, h) -> NarrowCertificate:
    """Evaluate the four narrowness conditions for a given strip height."""
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    return _narrow_conditions(_get_analysis(idx), Rat(h))


def _narrow_conditions(analysis: _ProxyAnalysis, h: Rat) -> NarrowCertificate:
    conds = []
    c1 = 0 < h < min(analysis.d_at_1, analysis.d_at_m1)
    conds.append(
        ConditionRecord(
            "strip-below-endpoint-values",
            c1,
            {"h": h, "D(1)": analysis.d_at_1, "D(-1)": analysis.d_at_m1},
        )
    )
    floor = analysis.crit_value_floor()
    c2 = h < floor
    conds.append(
        ConditionRecord("no-critical-value-in-strip", c2, {"crit_value_floor": floor})
    )
    if not (c1 and c2):
        return NarrowCertificate(analysis.n, h, Rat(0), Rat(0), conds, False)

    level_pts = analysis.level_points(h)
    l_lo, l_hi = _level_radius(level_pts)

    # 3: second derivative nonvanishing on |x| <= l.
    c3 = True
    witness = None
    for pt in analysis.infl_pts:
        decided = False
        for _ in range(200):
            alo, ahi = pt.abs_bounds()
            if alo > l_hi:
                decided = True
                break
            if ahi <= l_lo:
                break
            if pt.exact:
                break
            pt.refine()
        if not decided:
            c3 = False
            witness = (pt.lo, pt.hi)
            break
    conds.append(
        ConditionRecord(
            "curvature-nonzero-in-core",
            c3,
            {"l_lo": l_lo, "l_hi": l_hi, "witness": witness},
        )
    )

    # 4: 3 * l * max |D''| < 1 over [-1, 1].
    m2 = analysis.max_abs_over_unit(analysis.D2, analysis.jerk_pts)
    c4 = 3 * l_hi * m2 < 1
    conds.append(
        ConditionRecord(
            "curvature-bound",
            c4,
            {"max_abs_D2": m2, "limit_1_over_3l": Rat(1, 3) / l_hi},
        )
    )
    return NarrowCertificate(
        analysis.n, h, l_lo, l_hi, conds, all(c.passed for c in conds)
    )


def find_narrow_h(idx, max_halvings: int = 64) -> NarrowCertificate:
    """Search a narrow strip height constructively.

    Starts just below the minimum of the interior critical values and the
    endpoint values (which settles the first two conditions), then halves until
    the two curvature conditions certify; the level radius shrinks to zero with
    h, so this terminates quickly on simple-rooted inputs.
    """
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    if not is_simple_all(phi_poly(idx.n).derivative()):
        raise SimplicityViolated(f"Phi_{idx.n}' has a repeated real root")
    analysis = _get_analysis(idx)
    floor = analysis.crit_value_floor()
    h = min(floor, analysis.d_at_1, analysis.d_at_m1) / 2
    for _ in range(max_halvings):
        cert = _narrow_conditions(analysis, h)
        if cert.passed:
            return cert
        h = h / 2
    raise NotNarrow(f"no narrow height found for n={idx.n} after {max_halvings} halvings")


def maximize_narrow_h(idx, steps: int = 40) -> NarrowCertificate:
    """Largest certifiable narrow height, by bisection above ``find_narrow_h``.

    Narrowness is downward closed in h (each condition only relaxes as h
    shrinks), so bisection between a passing height and the hard ceiling
    min(critical-value floor, D(+-1)) converges to the supremum.  A larger h
    makes the graph-separation conditions pass at smaller p.
    """
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    base = find_narrow_h(idx)
    analysis = _get_analysis(idx)
    lo = base.h
    hi = min(analysis.crit_value_floor(), analysis.d_at_1, analysis.d_at_m1)
    best = base
    for _ in range(steps):
        mid = (lo + hi) / 2
        # keep denominators dyadic-small
        mid = Rat(int(mid * (1 << 30)), 1 << 30)
        if not (lo < mid < hi):
            break
        cert = _narrow_conditions(analysis, mid)
        if cert.passed:
            lo, best = mid, cert
        else:
            hi = mid
    return best


# -- the seven separation conditions ------------------------------------------------


def _classify_in_strip(analysis: _ProxyAnalysis, pt: AlgPoint, h: Rat) -> bool:
    """Conservative membership |D(pt)| <= h: True unless certified outside."""
    for _ in range(80):
        lo, hi = _abs_value_bounds(analysis.D.num, analysis.D.den, pt)
        if lo > h:
            return False
        if hi <= h or pt.exact:
            return True
        pt.refine()
    return True


def _min_abs_over_points(fun: RatFun, pts: list[AlgPoint], max_refine: int = 200) -> Rat:
    """Certified positive lower bound of |fun| over the given points."""
    best = None
    for pt in pts:
        for _ in range(max_refine):
            lo, _hi = _abs_value_bounds(fun.num, fun.den, pt)
            if lo > 0:
                break
            if pt.exact:
                raise ArithmeticError("function vanishes at an extremal point")
            pt.refine()
        else:
            raise ArithmeticError("cannot bound function away from zero")
        best = lo if best is None else min(best, lo)
    if best is None:
        raise ArithmeticError("no candidate points")
    return best


def _no_points_in(pts: list[AlgPoint], lo: Rat, hi: Rat, max_refine: int = 120) -> bool:
    """Certify that no point of pts lies in the closed interval [lo, hi]."""
    for pt in pts:
        for _ in range(max_refine):
            if pt.hi < lo or pt.lo > hi:
                break
            if pt.exact:
                return False
            pt.refine()
        else:
            return False
    return True


def check_well_configured(idx, h, p: int, root_bits: int = 64) -> WellConfiguredCertificate:
    """Evaluate the seven separation conditions for (n, h, p).

    The supplied h must be narrow (NotNarrow otherwise).  Every condition is
    decided by exact arithmetic on certified enclosures:

    1.  a < b, checked as a**p < l (equivalent, avoids the irrational b);
    2.  p * max |D| over [-a**p, a**p] < h, bounding max |H| over [-a, a];
    3.  p**2 a**(p-1) * max |D'| over [-a**p, a**p] < min |D'| over the strip,
        bounding max |H'| against min |D'| where both graphs live;
    4/5. positivity (k odd) or negativity (k even) of D' and D'' on the core
        (0, l] or [-l, 0): by the chain rule these force H'' > 0 on the
        relevant side interval [a, b] or [-b, -a] for every odd p;
    6.  p * h > max |D| over [-1, 1]: the smallest |H| value on the far region
        is exactly p*h, since |D| = h is attained at the level radius;
    7.  p**2 * l * min-strip |D'| > max |D'| over [-1, 1], bounding min |H'|
        over the far strips.

    Conditions 3 and 7 use conservative bounds (a sound "pass"; a "fail" may
    merely mean the bound was not tight enough at this p).
    """
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    h = Rat(h)
    if not is_prime(p) or p == 2 or not coprime(idx.n, p):
        raise IndexNotCoprime(f"{p} must be an odd prime not dividing {idx.n}")
    analysis = _get_analysis(idx)
    narrow = _narrow_conditions(analysis, h)
    if not narrow.passed:
        raise NotNarrow(f"h={h} is not narrow for n={idx.n}")
    static = _wc_static(analysis, h, narrow, root_bits)
    return _wc_for_p(analysis, static, p)


@dataclass
class _WcStatic:
    h: Rat
    l_lo: Rat
    l_hi: Rat
    a_lo: Rat
    a_hi: Rat
    m0_hi: Rat  # max |D| over [-1, 1]
    m1_hi: Rat  # max |D'| over [-1, 1]
    strip_min_d1: Rat  # min |D'| over the strip |D| <= h
    core_side_ok: bool  # D', D'' sign-definite on the relevant core side
    core_detail: dict


def _wc_static(
    analysis: _ProxyAnalysis, h: Rat, narrow: NarrowCertificate, root_bits: int
) -> _WcStatic:
    l_lo, l_hi = narrow.l_lo, narrow.l_hi
    level_pts = analysis.level_points(h)

    # a = max{|x| : |x| <= 1, D''(x) = 0 or |D(x)| <= h}; the strip's outermost
    # point satisfies |D| = h, so the candidates are the level points and the
    # inflection points.
    for pt in level_pts + analysis.infl_pts:
        while not pt.exact and pt.hi - pt.lo > Rat(1, 1 << root_bits):
            pt.refine()
    cands = [pt.abs_bounds() for pt in level_pts + analysis.infl_pts]
    a_lo = max(c[0] for c in cands)
    a_hi = max(c[1] for c in cands)

    m0_hi = analysis.max_abs_over_unit(analysis.D, analysis.crit_pts)
    m1_hi = analysis.max_abs_over_unit(analysis.D1, analysis.infl_pts)

    # min |D'| over the strip: attained at a strip boundary point or at an
    # inflection point inside the strip (D' has no zeros in the strip).
    strip_pts = list(level_pts)
    for pt in analysis.infl_pts:
        if _classify_in_strip(analysis, pt, h):
            strip_pts.append(pt)
    strip_min_d1 = _min_abs_over_points(analysis.D1, strip_pts)

    # Core-side sign definiteness of D' and D'' (drives conditions 4 / 5).
    k = analysis.k
    if k % 2 == 1:
        side_lo, side_hi = Rat(0), l_hi
        sample = l_hi
        want = 1
    else:
        side_lo, side_hi = -l_hi, Rat(0)
        sample = -l_hi
        want = -1
    ok = (
        _no_points_in(analysis.crit_pts, side_lo, side_hi)
        and _no_points_in(analysis.infl_pts, side_lo, side_hi)
        and analysis.D1.sign_at(sample) == want
        and analysis.D2.sign_at(sample) == want
    )
    detail = {
        "side": (side_lo, side_hi),
        "D1_sign_at_sample": analysis.D1.sign_at(sample),
        "D2_sign_at_sample": analysis.D2.sign_at(sample),
        "narrow_curvature_bound": True,  # implied by the narrow certificate
    }
    return _WcStatic(
        h, l_lo, l_hi, a_lo, a_hi, m0_hi, m1_hi, strip_min_d1, ok, detail
    )


def _dyadic_upper(x: Rat, bits: int = 16) -> Rat:
    """Dyadic upper bound of x in (0, 1), strictly below 1."""
    w = bits
    while True:
        m = -((-int(x.numerator) << w) // int(x.denominator))  # ceil
        if m < (1 << w):
            return Rat(m, 1 << w)
        w *= 2
        if w > 4096:
            raise ArithmeticError("no dyadic upper bound below 1")


def _wc_for_p(analysis: _ProxyAnalysis, st: _WcStatic, p: int) -> WellConfiguredCertificate:
    h = st.h
    conds = []

    # r bounds a**p from above; a short dyadic upper bound of a keeps the
    # power cheap even for p in the thousands.
    a_up = _dyadic_upper(st.a_hi) if st.a_hi < 1 else None
    r = a_up**p if a_up is not None else None
    c1 = r is not None and r < st.l_lo
    conds.append(ConditionRecord("graphs-ordered", c1, {"a_up^p": r, "l_lo": st.l_lo}))

    if r is not None:
        inner_ok = _no_points_in(analysis.crit_pts, -r, r) and _no_points_in(
            analysis.infl_pts, -r, r
        )
    else:
        inner_ok = False

    # |D(u)| <= |u| * max|D'| over [-r, r] (mean value theorem from D(0) = 0);
    # if the cheap bound is inconclusive, evaluate |D(+-r)| exactly (no
    # critical points inside [-r, r], so the endpoints dominate).
    c2 = False
    detail2: dict = {"h": h}
    if inner_ok:
        cheap = p * r * st.m1_hi
        if cheap < h:
            c2 = True
            detail2["p*maxH_bound"] = cheap
        else:
            d_at_r = max(rat_abs(analysis.D.eval_rat(r)), rat_abs(analysis.D.eval_rat(-r)))
            c2 = p * d_at_r < h
            detail2["p*maxD"] = p * d_at_r
    conds.append(ConditionRecord("far-graph-flat-inside", c2, detail2))

    # max |H'| over the strip is at most p^2 a^(p-1) max |D'| over [-a^p, a^p].
    c3 = False
    detail3: dict = {"strip_min_D1": st.strip_min_d1}
    if inner_ok:
        a_pow = r / a_up  # a_up**(p-1)
        cheap = p * p * a_pow * st.m1_hi
        if cheap < st.strip_min_d1:
            c3 = True
            detail3["max_H1_bound"] = cheap
        else:
            d1_at_r = max(
                rat_abs(analysis.D1.eval_rat(r)), rat_abs(analysis.D1.eval_rat(-r))
            )
            lhs3 = p * p * a_pow * d1_at_r
            c3 = lhs3 < st.strip_min_d1
            detail3["max_H1_bound"] = lhs3
    conds.append(ConditionRecord("far-graph-slope-dominated", c3, detail3))

    k = analysis.k
    c4 = st.core_side_ok if k % 2 == 1 else True
    conds.append(
        ConditionRecord(
            "bridge-convex-positive-side",
            c4,
            {"applies": k % 2 == 1, **st.core_detail},
        )
    )
    c5 = st.core_side_ok if k % 2 == 0 else True
    conds.append(
        ConditionRecord(
            "bridge-convex-negative-side",
            c5,
            {"applies": k % 2 == 0, **st.core_detail},
        )
    )

    c6 = p * h > st.m0_hi
    conds.append(
        ConditionRecord("near-graph-tall", c6, {"p*h": p * h, "max_abs_D": st.m0_hi}))
    lhs7 = p * p * st.l_lo * st.strip_min_d1
    c7 = lhs7 > st.m1_hi
    conds.append(
        ConditionRecord(
            "near-graph-steep", c7, {"min_H1_bound": lhs7, "max_abs_D1": st.m1_hi}
        )
    )

    passed = all(c.passed for c in conds)
    b_lo, b_hi = nth_root_enclosure(st.l_lo, p, 48)[0], nth_root_enclosure(st.l_hi, p, 48)[1]
    return WellConfiguredCertificate(
        analysis.n, p, h, st.a_lo, st.a_hi, b_lo, b_hi, conds, passed
    )


def smallest_passing_p(idx, h, p_max: int, root_bits: int = 64):
    """Sweep odd primes p <= p_max; return (first passing p or None, certificates)."""
    idx = idx if isinstance(idx, PrimeIndex) else PrimeIndex.of(int(idx))
    h = Rat(h)
    analysis = _get_analysis(idx)
    narrow = _narrow_conditions(analysis, h)
    if not narrow.passed:
        raise NotNarrow(f"h={h} is not narrow for n={idx.n}")
    static = _wc_static(analysis, h, narrow, root_bits)
    certificates = []
    first = None
    q = 3
    while q <= p_max:
        if is_prime(q) and coprime(idx.n, q):
            cert = _wc_for_p(analysis, static, q)
            certificates.append(cert)
            if first is None and cert.passed:
                first = q
        q += 2
    return first, certificates

"""Exact arithmetic foundation: big integers, rationals and dense integer polynomials.

A polynomial is a dense, immutable sequence of arbitrary-precision integer
coefficients in ascending order: ``coeffs[i]`` is the coefficient of ``x**i``.
The zero polynomial has an empty coefficient tuple.  Every operation is pure,
so values can be shared freely between threads.

Rationals are GMP-backed ``gmpy2.mpq`` values (always canonical: lowest terms,
positive denominator), with a ``fractions.Fraction`` fallback when gmpy2 is
missing.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

try:
    from gmpy2 import mpq as Rat, mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

    _mpz = int

RatLike = Union[int, Rat]

# Multiplication strategy: schoolbook below this degree, Kronecker-substitution
# (coefficients packed into two big integers, multiplied by GMP) above it.
MUL_SUBQUADRATIC_THRESHOLD = 64


class NonExactDivision(ArithmeticError):
    """Polynomial division left a nonzero remainder where exactness was required."""


def _strip(coeffs: list) -> tuple:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class IntPoly:
    """Dense univariate polynomial over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip([int(c) for c in coeffs]))

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, stripped: tuple) -> "IntPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", stripped)
        return p

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls._raw(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls._raw((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls._raw((0, 1))

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPoly":
        """c * x**k"""
        if c == 0:
            return cls.zero()
        return cls._raw((0,) * k + (int(c),))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({self.to_pretty_string()!r})"

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly._raw(_strip(out))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return self.mul_scalar(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly.zero()
        if min(len(a), len(b)) <= MUL_SUBQUADRATIC_THRESHOLD:
            return IntPoly._raw(_strip(_mul_schoolbook(a, b)))
        return IntPoly._raw(_strip(_mul_kronecker(a, b)))

    __rmul__ = __mul__

    def mul_scalar(self, c: int) -> "IntPoly":
        if c == 0:
            return IntPoly.zero()
        return IntPoly._raw(tuple(k * c for k in self.coeffs))

    def shift_index(self, k: int) -> "IntPoly":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return IntPoly._raw((0,) * k + self.coeffs)

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and composition ---------------------------------------------

    def derivative(self, order: int = 1) -> "IntPoly":
        """Formal derivative of the given order."""
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        c = self.coeffs
        for _ in range(order):
            c = tuple(i * c[i] for i in range(1, len(c)))
        return IntPoly._raw(_strip(list(c)))

    def compose_power(self, p: int) -> "IntPoly":
        """Substitute x**p by index dilation: coefficient i moves to i*p."""
        if p < 1:
            raise ValueError("power must be positive")
        if p == 1 or not self.coeffs:
            return self
        out = [0] * ((len(self.coeffs) - 1) * p + 1)
        for i, c in enumerate(self.coeffs):
            out[i * p] = c
        return IntPoly._raw(_strip(out))

    def eval_int(self, x: int) -> int:
        """Exact value at an integer point (Horner)."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def eval_rat(self, x: RatLike) -> Rat:
        """Exact value at a rational point."""
        if not self.coeffs:
            return Rat(0)
        x = Rat(x)
        num = int(x.numerator)
        den = int(x.denominator)
        if den == 1:
            return Rat(self.eval_int(num))
        # Two-sided Horner: sum c_i num^i den^(d-i), single normalization at the end.
        d = len(self.coeffs) - 1
        v = 0
        dp = 1
        for c in reversed(self.coeffs):
            v = v * num + c * dp
            dp *= den
        return Rat(v, den**d)

    def eval_numer_at(self, num: int, den: int) -> int:
        """Integer numerator of den**degree * p(num/den); den must be positive."""
        v = 0
        dp = 1
        for c in reversed(self.coeffs):
            v = v * num + c * dp
            dp *= den
        return v

    def sign_at(self, x: RatLike) -> int:
        """Sign of the exact value at a rational point."""
        x = Rat(x)
        v = self.eval_numer_at(int(x.numerator), int(x.denominator))
        return (v > 0) - (v < 0)

    def taylor_shift(self, c: RatLike) -> tuple["IntPoly", int]:
        """Shifted polynomial den(c)**degree * p(x + c) and the scale den(c)**degree.

        The scale is a positive integer, so sign patterns of the result match
        those of p(x + c).
        """
        c = Rat(c)
        u = int(c.numerator)
        v = int(c.denominator)
        if not self.coeffs or (u == 0 and v == 1):
            return self, 1
        d = len(self.coeffs) - 1
        if v == 1 and u == 1:
            out = list(self.coeffs)
            for j in range(d):
                for i in range(d - 1, j - 1, -1):
                    out[i] += out[i + 1]
            return IntPoly._raw(_strip(out)), 1
        # Horner in (v*x + u): res <- res*(v*x+u) + a_i * v^(d-i)
        res = [self.coeffs[-1]]
        vp = 1
        for i in range(d - 1, -1, -1):
            vp *= v
            nxt = [0] * (len(res) + 1)
            for j, r in enumerate(res):
                nxt[j] += r * u
                nxt[j + 1] += r * v
            nxt[0] += self.coeffs[i] * vp
            res = nxt
        return IntPoly._raw(_strip(res)), v**d

    # -- content and primitive part -------------------------------------------

    def content(self) -> int:
        """GCD of the coefficients (nonnegative)."""
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        if g == 1:
            return self
        return IntPoly._raw(tuple(c // g for c in self.coeffs))

    def reversed(self) -> "IntPoly":
        """Coefficient reversal x**degree * p(1/x)."""
        return IntPoly._raw(_strip(list(reversed(self.coeffs))))

    # -- text forms ------------------------------------------------------------

    def to_coeff_string(self) -> str:
        """Canonical text form: ascending space-separated coefficients."""
        if not self.coeffs:
            return "0"
        return " ".join(str(c) for c in self.coeffs)

    @classmethod
    def from_coeff_string(cls, s: str) -> "IntPoly":
        return cls(int(tok) for tok in s.split())

    def to_pretty_string(self) -> str:
        """Human-readable form, highest-degree term first, e.g. ``x^2 + x + 1``."""
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                term = xs if mag == 1 else f"{mag}{xs}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"{sign} {term}")
        return " ".join(parts)

    @classmethod
    def from_pretty_string(cls, s: str) -> "IntPoly":
        """Parse the pretty form (terms like ``3x^2``, ``- x``, ``+ 7``)."""
        import re

        s = s.strip()
        if s in ("", "0"):
            return cls.zero()
        coeffs: dict[int, int] = {}
        term_re = re.compile(
            r"\s*([+-]?)\s*(?:(\d+)\s*\*?\s*)?(x(?:\^(\d+))?)?\s*"
        )
        pos = 0
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial text at: {s[pos:]!r}")
            sign, digits, xpart, exp = m.groups()
            if digits is None and xpart is None:
                raise ValueError(f"cannot parse polynomial text at: {s[pos:]!r}")
            c = int(digits) if digits is not None else 1
            if sign == "-":
                c = -c
            k = 0
            if xpart is not None:
                k = int(exp) if exp is not None else 1
            coeffs[k] = coeffs.get(k, 0) + c
            pos = m.end()
        if not coeffs:
            return cls.zero()
        out = [0] * (max(coeffs) + 1)
        for k, c in coeffs.items():
            out[k] = c
        return cls(out)


# -- multiplication back ends ----------------------------------------------


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] += ca * cb
    return out


def _pack_nonneg(parts: Sequence[int], block_bytes: int) -> int:
    buf = bytearray(len(parts) * block_bytes)
    for i, c in enumerate(parts):
        if c:
            buf[i * block_bytes : i * block_bytes + (c.bit_length() + 7) // 8] = c.to_bytes(
                (c.bit_length() + 7) // 8, "little"
            )
    return int.from_bytes(buf, "little")


def _unpack(v: int, n: int, block_bytes: int) -> list:
    raw = int(v).to_bytes(n * block_bytes, "little")
    return [
        int.from_bytes(raw[i * block_bytes : (i + 1) * block_bytes], "little")
        for i in range(n)
    ]


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list:
    """Exact product via Kronecker substitution.

    Coefficients are split into nonnegative and negative parts, packed into
    big integers with non-overlapping blocks, and multiplied with GMP.
    """
    n_out = len(a) + len(b) - 1
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    bound = min(len(a), len(b)) * max_a * max_b
    block_bits = max(bound.bit_length() + 1, 8)
    block_bytes = (block_bits + 7) // 8

    ap = _pack_nonneg([c if c > 0 else 0 for c in a], block_bytes)
    an = _pack_nonneg([-c if c < 0 else 0 for c in a], block_bytes)
    bp = _pack_nonneg([c if c > 0 else 0 for c in b], block_bytes)
    bn = _pack_nonneg([-c if c < 0 else 0 for c in b], block_bytes)

    ap, an, bp, bn = _mpz(ap), _mpz(an), _mpz(bp), _mpz(bn)
    pos = ap * bp + an * bn
    neg = ap * bn + an * bp

    cp = _unpack(pos, n_out, block_bytes)
    cn = _unpack(neg, n_out, block_bytes)
    return [p - q for p, q in zip(cp, cn)]


# -- module-level operations -------------------------------------------------


def div_exact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient a / b in the integer polynomial ring.

    Raises NonExactDivision if b does not divide a exactly; a nonzero
    remainder signals a broken identity upstream.
    """
    if b.is_zero:
        raise NonExactDivision("division by the zero polynomial")
    if a.is_zero:
        return IntPoly.zero()
    if a.degree < b.degree:
        raise NonExactDivision("degree of dividend below divisor")
    rem = list(a.coeffs)
    bc = b.coeffs
    lead = bc[-1]
    db = len(bc) - 1
    q = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        t, r = divmod(c, lead)
        if r:
            raise NonExactDivision("leading coefficient does not divide")
        q[i - db] = t
        for j in range(db + 1):
            rem[i - db + j] -= t * bc[j]
    if any(rem[:db]):
        raise NonExactDivision("nonzero remainder")
    return IntPoly(q)


def pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder: remainder of lead(b)**(deg a - deg b + 1) * a by b."""
    da, db = a.degree, b.degree
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    if da < db:
        return a
    rem = list(a.coeffs)
    bc = b.coeffs
    lead = bc[-1]
    # One multiplication by lead per elimination step keeps the exact
    # lead**(da-db+1) overall factor even when a top coefficient is zero.
    for i in range(da, db - 1, -1):
        c = rem[i]
        for j in range(i):
            rem[j] *= lead
        if c:
            for j in range(db):
                rem[i - db + j] -= c * bc[j]
        rem[i] = 0
    return IntPoly(rem[:db] if db > 0 else [])


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive GCD via the subresultant polynomial remainder sequence.

    The subresultant scaling keeps intermediate coefficient growth polynomial,
    where the naive primitive PRS over the rationals blows up past degree a few
    hundred.  The result is primitive with positive leading coefficient.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    A, B = a.primitive(), b.primitive()
    if A.degree < B.degree:
        A, B = B, A
    g = 1
    h = 1
    while True:
        delta = A.degree - B.degree
        R = pseudo_rem(A, B)
        if R.is_zero:
            return B.primitive()
        if R.degree == 0:
            return IntPoly.one()
        A, B = B, IntPoly(int(c) // (g * h**delta) for c in R.coeffs)
        g = A.lead
        if delta == 1:
            h = g
        elif delta > 1:
            h = g**delta // h ** (delta - 1)


def resultant(a: IntPoly, b: IntPoly) -> int:
    """Resultant via fraction-free Gaussian elimination of the Sylvester matrix."""
    da, db = a.degree, b.degree
    if da < 0 or db < 0:
        return 0
    if da == 0:
        return a.coeffs[0] ** db
    if db == 0:
        return b.coeffs[0] ** da
    n = da + db
    m = [[0] * n for _ in range(n)]
    ra = list(reversed(a.coeffs))
    rb = list(reversed(b.coeffs))
    for i in range(db):
        m[i][i : i + da + 1] = ra
    for i in range(da):
        m[db + i][i : i + db + 1] = rb
    # Bareiss fraction-free elimination.
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for s in range(k + 1, n):
                if m[s][k]:
                    m[k], m[s] = m[s], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: return [(g_i, i)] with f = content * prod g_i**i.

    The g_i are primitive, pairwise coprime and squarefree; only factors with
    positive degree are returned.
    """
    if f.is_zero:
        raise ValueError("squarefree decomposition of the zero polynomial")
    f = f.primitive()
    if f.degree == 0:
        return []
    df = f.derivative()
    g = poly_gcd(f, df)
    out: list[tuple[IntPoly, int]] = []
    if g.degree == 0:
        return [(f, 1)]
    w = div_exact(f, g)
    y = div_exact(df, g)
    i = 1
    while True:
        z = y - w.derivative()
        if z.is_zero:
            if w.degree > 0:
                out.append((w.primitive(), i))
            return out
        gi = poly_gcd(w, z)
        if gi.degree > 0:
            out.append((gi.primitive(), i))
        w = div_exact(w, gi)
        y = div_exact(z, gi)
        i += 1


def squarefree_part(f: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors (primitive, positive lead)."""
    parts = squarefree_decomposition(f)
    out = IntPoly.one()
    for g, _ in parts:
        out = out * g
    return out.primitive()


# -- rational helpers ----------------------------------------------------------


def rat(num: int, den: int = 1) -> Rat:
    return Rat(num, den)


def rat_abs(x: Rat) -> Rat:
    return -x if x < 0 else x


def rat_sign(x: RatLike) -> int:
    return (x > 0) - (x < 0)


def decimal_string(x: Rat, digits: int) -> str:
    """Decimal form of x truncated toward zero to the given digit count."""
    neg = x < 0
    if neg:
        x = -x
    scaled = int(x.numerator) * 10**digits // int(x.denominator)
    ip, fp = divmod(scaled, 10**digits)
    s = f"{ip}.{fp:0{digits}d}" if digits else str(ip)
    return "-" + s if neg and scaled else s


def enclosure_decimal_string(lo: Rat, hi: Rat, digits: int) -> str:
    """Certified decimal digits shared by the whole enclosure [lo, hi].

    Both endpoints must truncate to the same string; otherwise the digit
    request is refused (caller should refine the enclosure).
    """
    a = decimal_string(lo, digits)
    b = decimal_string(hi, digits)
    if a != b:
        raise ValueError(f"enclosure too wide to certify {digits} decimals: [{lo}, {hi}]")
    return a

"""Exact construction of cyclotomic polynomials and their classical identities.

The n-th cyclotomic polynomial is built over the radical by repeated exact
division (for squarefree s and a new prime p, the degree-raising step is
``Phi_sp(x) = Phi_s(x**p) / Phi_s(x)``), then index dilation lifts to the full
index.  Every division is asserted exact, so the construction doubles as a
self-check of the underlying identity.
"""

from __future__ import annotations

import os
import threading
from collections import OrderedDict
from dataclasses import dataclass
from math import gcd, isqrt

from .bigpoly import IntPoly, Rat, div_exact


class UnsupportedIndex(ValueError):
    """Index outside the supported range (n must be at least 2)."""


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division; indices here are small)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    r = isqrt(n)
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by deterministic trial division."""
    if n < 1:
        raise UnsupportedIndex(f"cannot factor {n}")
    out: dict[int, int] = {}
    m = n
    for p in (2, 3, 5):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    f = 7
    while f * f <= m:
        while m % f == 0:
            out[f] = out.get(f, 0) + 1
            m //= f
        f += 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class GeneralIndex:
    """Any index n >= 2 with its factorization and radical."""

    n: int
    factorization: tuple[tuple[int, int], ...]
    radical: int

    @classmethod
    def of(cls, n: int) -> "GeneralIndex":
        if n < 2:
            raise UnsupportedIndex(f"index must be >= 2, got {n}")
        fac = factorize(n)
        rad = 1
        for p in fac:
            rad *= p
        return cls(n, tuple(sorted(fac.items())), rad)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    @property
    def is_squarefree(self) -> bool:
        return self.n == self.radical


@dataclass(frozen=True)
class PrimeIndex:
    """A squarefree odd index: sorted distinct odd primes p1 < ... < pk."""

    primes: tuple[int, ...]

    def __post_init__(self):
        if not self.primes:
            raise UnsupportedIndex("at least one prime required")
        if list(self.primes) != sorted(set(self.primes)):
            raise UnsupportedIndex("primes must be strictly increasing")
        for p in self.primes:
            if p == 2 or not is_prime(p):
                raise UnsupportedIndex(f"{p} is not an odd prime")

    @classmethod
    def of(cls, n: int) -> "PrimeIndex":
        fac = factorize(n)
        if n < 3 or 2 in fac or any(e > 1 for e in fac.values()):
            raise UnsupportedIndex(f"{n} is not a product of distinct odd primes")
        return cls(tuple(sorted(fac)))

    @property
    def n(self) -> int:
        out = 1
        for p in self.primes:
            out *= p
        return out

    @property
    def k(self) -> int:
        return len(self.primes)


def _as_general(idx) -> GeneralIndex:
    if isinstance(idx, GeneralIndex):
        return idx
    if isinstance(idx, PrimeIndex):
        return GeneralIndex.of(idx.n)
    return GeneralIndex.of(int(idx))


def totient(idx) -> int:
    """Euler totient from the factorization; equals deg Phi_n."""
    g = _as_general(idx)
    out = 1
    for p, e in g.factorization:
        out *= (p - 1) * p ** (e - 1)
    return out


class _PhiCache:
    """Bounded LRU cache for constructed polynomials, safe for concurrent
    readers with exclusive insertion; optionally spilled to CYCLO_CACHE_DIR."""

    def __init__(self, budget: int = 64):
        self.budget = budget
        self._data: OrderedDict[int, IntPoly] = OrderedDict()
        self._lock = threading.Lock()

    def get(self, n: int):
        with self._lock:
            if n in self._data:
                self._data.move_to_end(n)
                return self._data[n]
        path = self._spill_path(n)
        if path and os.path.exists(path):
            with open(path) as fh:
                poly = IntPoly.from_coeff_string(fh.read())
            self.put(n, poly, spill=False)
            return poly
        return None

    def put(self, n: int, poly: IntPoly, spill: bool = True):
        with self._lock:
            self._data[n] = poly
            self._data.move_to_end(n)
            while len(self._data) > self.budget:
                self._data.popitem(last=False)
        path = self._spill_path(n)
        if spill and path:
            tmp = path + ".tmp"
            with open(tmp, "w") as fh:
                fh.write(poly.to_coeff_string())
            os.replace(tmp, path)

    @staticmethod
    def _spill_path(n: int):
        root = os.environ.get("CYCLO_CACHE_DIR")
        if not root:
            return None
        os.makedirs(root, exist_ok=True)
        return os.path.join(root, f"phi_{n}.txt")

    def clear(self):
        with self._lock:
            self._data.clear()


_cache = _PhiCache()


def set_cache_budget(budget: int):
    _cache.budget = max(1, int(budget))


def phi_poly(idx) -> IntPoly:
    """The exact n-th cyclotomic polynomial (n >= 2)."""
    g = _as_general(idx)
    cached = _cache.get(g.n)
    if cached is not None:
        return cached

    rad_primes = g.primes
    if rad_primes[0] == 2:
        # Phi_2m(x) = +/- Phi_m(-x) for odd m; build the odd part first.
        odd = g.radical // 2
        if odd == 1:
            poly = IntPoly([1, 1])
        else:
            base = phi_poly(GeneralIndex.of(odd))
            mirrored = IntPoly([-c if i & 1 else c for i, c in enumerate(base.coeffs)])
            if mirrored.lead < 0:
                mirrored = -mirrored
            poly = mirrored
    else:
        p1 = rad_primes[0]
        poly = IntPoly([1] * p1)  # (x^p - 1)/(x - 1)
        s = p1
        for p in rad_primes[1:]:
            poly = div_exact(poly.compose_power(p), poly)
            s *= p
    e = g.n // g.radical
    if e > 1:
        poly = poly.compose_power(e)
    if poly.degree != totient(g):
        raise AssertionError(f"degree of Phi_{g.n} differs from totient")
    _cache.put(g.n, poly)
    return poly


def check_palindrome(idx) -> bool:
    """Coefficient sequence equals its reverse (true for every n >= 2)."""
    c = phi_poly(idx).coeffs
    return c == tuple(reversed(c))


def check_constant_and_linear_terms(idx: PrimeIndex) -> bool:
    """Constant term 1 and x-coefficient +1 for odd k, -1 for even k."""
    if not isinstance(idx, PrimeIndex):
        idx = PrimeIndex.of(int(idx))
    poly = phi_poly(idx)
    want_linear = 1 if idx.k % 2 == 1 else -1
    return poly[0] == 1 and poly[1] == want_linear


def special_value(p: int, d: int, x: int) -> Rat:
    """Closed-form value of the d-th derivative of Phi_p at x in {-1, 0, +1}.

    Known closed forms for odd prime p and d <= 3; each is cross-checked in the
    test suite against direct evaluation of the constructed polynomial.
    """
    if not is_prime(p) or p == 2:
        raise UnsupportedIndex(f"{p} is not an odd prime")
    if d < 0 or d > 3:
        raise ValueError("supported derivative orders are 0..3")
    if x not in (-1, 0, 1):
        raise ValueError("supported points are -1, 0, +1")
    table = {
        (0, -1): Rat(1),
        (0, 0): Rat(1),
        (0, 1): Rat(p),
        (1, -1): -Rat(p - 1, 2),
        (1, 0): Rat(1),
        (1, 1): Rat(p * (p - 1), 2),
        (2, -1): Rat((p - 1) ** 2, 2),
        (2, 0): Rat(2),
        (2, 1): Rat(p * (p - 1) * (p - 2), 3),
        (3, -1): -Rat((p - 1) * (p - 3) * (2 * p - 1), 4),
        # At x=0 the d-th derivative is d! times the degree-d coefficient,
        # which only exists while d <= p-1 (degenerates for p=3, d=3).
        (3, 0): Rat(6) if p > 3 else Rat(0),
        (3, 1): Rat(p * (p - 1) * (p - 2) * (p - 3), 4),
    }
    return table[(d, x)]


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1

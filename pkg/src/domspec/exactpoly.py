"""Exact integer polynomials, Sturm sequences and largest-root isolation.

Everything here is exact: coefficients are Python ints and evaluation points
are :class:`fractions.Fraction`.  Root questions are always answered on the
squarefree part so that Sturm counts are counts of distinct roots.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

DEFAULT_WIDTH = Fraction(1, 10**12)


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class NoRealRootError(ValueError):
    pass


def _trim(cs: Sequence[int]) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class IntPoly:
    """Univariate polynomial with integer coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _trim(int(c) for c in coeffs)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @classmethod
    def x(cls) -> IntPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = ("" if mag == 1 and k else str(mag)) + ("x" if k else "") + (f"^{k}" if k > 1 else "")
            parts.append(("-" if c < 0 else "+") + body)
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result, base = IntPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Exact value at an int or Fraction (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def compose_square(self) -> IntPoly:
        """p(x) -> p(x^2), i.e. substitute mu = lambda^2."""
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return IntPoly(out)

    def compose(self, q: IntPoly) -> IntPoly:
        acc = IntPoly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPoly([c // g for c in self.coeffs])

    def sign_at(self, x: Fraction) -> int:
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        acc, bp = 0, 1
        # sum c_k a^k b^(d-k); multiplying by b^d > 0 keeps the sign
        for c in reversed(self.coeffs):
            acc = acc * a + c * bp
            bp *= b
        return (acc > 0) - (acc < 0)

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> IntPoly:
        return cls(int(c) for c in json.loads(text))


def _coerce(p) -> IntPoly:
    return p if isinstance(p, IntPoly) else IntPoly([p])


# -- division over Q ------------------------------------------------------

def _frac_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / lb
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _to_primitive(fr: Sequence[Fraction]) -> IntPoly:
    """Scale a rational polynomial by a positive rational to a primitive IntPoly."""
    if not fr:
        return IntPoly()
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return IntPoly([c // g for c in ints])


def poly_rem(p: IntPoly, q: IntPoly) -> IntPoly:
    """Remainder of p by q over Q, rescaled by a positive factor to integers."""
    _, r = _frac_divmod([Fraction(c) for c in p.coeffs], [Fraction(c) for c in q.coeffs])
    return _to_primitive(r)


def exact_div(p: IntPoly, q: IntPoly) -> IntPoly:
    """p / q when q divides p exactly over Z[x]."""
    quo, rem = _frac_divmod([Fraction(c) for c in p.coeffs], [Fraction(c) for c in q.coeffs])
    if rem or any(c.denominator != 1 for c in quo):
        raise ValueError("polynomial division is not exact")
    return IntPoly(int(c) for c in quo)


def poly_gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient."""
    a, b = p.primitive(), q.primitive()
    while not b.is_zero():
        a, b = b, poly_rem(a, b)
    return a.primitive()


def squarefree(p: IntPoly) -> IntPoly:
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return exact_div(p.primitive(), g).primitive()


# -- Sturm machinery ------------------------------------------------------

@lru_cache(maxsize=4096)
def _sturm_chain(coeffs: tuple[int, ...]) -> tuple[IntPoly, ...]:
    p = squarefree(IntPoly(coeffs))
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        r = poly_rem(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append(-r)
    return tuple(c for c in chain if not c.is_zero())


def _variations(chain: Sequence[IntPoly], x: Fraction) -> int:
    v, last = 0, 0
    for c in chain:
        s = c.sign_at(x)
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def sturm_count(p: IntPoly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root count")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    chain = _sturm_chain(p.coeffs)
    return _variations(chain, lo) - _variations(chain, hi)


def root_bound(p: IntPoly) -> Fraction:
    """Power of two strictly above 1 + max |c_i / c_lead| (Cauchy)."""
    lead = abs(p.lead)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    bound = 1 + -(-m // lead)
    b = 1
    while b <= bound:
        b *= 2
    return Fraction(b)


def count_real_roots(p: IntPoly) -> int:
    if p.degree <= 0:
        return 0
    b = root_bound(p)
    return sturm_count(p, -b, b)


@dataclass(frozen=True)
class RootInterval:
    """Isolating interval (lo, hi] holding exactly one real root of ``poly``."""

    lo: Fraction
    hi: Fraction
    poly: IntPoly

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def refine(self, width) -> RootInterval:
        return _bisect_isolated(self.poly, self.lo, self.hi, Fraction(width))

    def to_dict(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "lo_float": float(self.lo),
                "hi_float": float(self.hi), "poly": [str(c) for c in self.poly.coeffs]}


def _bisect_isolated(p: IntPoly, lo: Fraction, hi: Fraction, width: Fraction) -> RootInterval:
    """Shrink (lo, hi], known to hold exactly one root of squarefree(p), by sign bisection."""
    sf = _sturm_chain(p.coeffs)[0]
    s_hi = sf.sign_at(hi)
    while hi - lo > width:
        if s_hi == 0:
            lo = max(lo, hi - width)
            break
        mid = (lo + hi) / 2
        s = sf.sign_at(mid)
        if s == 0:
            lo, hi, s_hi = max(lo, mid - width), mid, 0
            break
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi, p)


def isolate_largest_root(p: IntPoly, width=DEFAULT_WIDTH) -> RootInterval:
    width = Fraction(width)
    if p.degree <= 0 or count_real_roots(p) == 0:
        raise NoRealRootError(f"{p} has no real roots")
    b = root_bound(p)
    lo, hi = -b, b
    chain = _sturm_chain(p.coeffs)
    v_hi = _variations(chain, hi)
    while True:
        v_lo = _variations(chain, lo)
        if v_lo - v_hi == 1:
            break
        mid = (lo + hi) / 2
        if _variations(chain, mid) - v_hi >= 1:
            lo = mid
        else:
            hi = mid
            v_hi = _variations(chain, hi)
    return _bisect_isolated(p, lo, hi, width)


def largest_root(p: IntPoly) -> float:
    return isolate_largest_root(p, Fraction(1, 2**50)).mid


def _same_largest_root(p: IntPoly, q: IntPoly) -> bool:
    """Certificate via gcd: the common factor's largest root is the top root of both."""
    g = poly_gcd(squarefree(p), squarefree(q))
    if g.degree <= 0 or count_real_roots(g) == 0:
        return False
    r = isolate_largest_root(g, Fraction(1, 2**20))
    # shrink until r's interval isolates it for p and q as well
    while True:
        if sturm_count(p, r.lo, r.hi) == 1 and sturm_count(q, r.lo, r.hi) == 1:
            break
        r = r.refine(r.width / 1024)
    for f in (p, q):
        top = root_bound(f)
        if r.hi < top and sturm_count(f, r.hi, top) > 0:
            return False
    return True


def compare_largest_roots(p: IntPoly, q: IntPoly) -> Ordering:
    """Exact ordering of the largest real roots of ``p`` and ``q``."""
    a = isolate_largest_root(p, Fraction(1, 2**16))
    b = isolate_largest_root(q, Fraction(1, 2**16))
    checked_gcd = False
    while True:
        if a.hi <= b.lo:
            return Ordering.LESS
        if b.hi <= a.lo:
            return Ordering.GREATER
        if not checked_gcd and max(a.width, b.width) < Fraction(1, 2**40):
            checked_gcd = True
            if _same_largest_root(p, q):
                return Ordering.EQUAL
        a = a.refine(a.width / 16)
        b = b.refine(b.width / 16)

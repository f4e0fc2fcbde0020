"""Exact dense polynomials in one variable q over the integers.

Coefficients are arbitrary-precision Python ints, stored densely from the
constant term up with trailing zeros trimmed.  The module also provides
cyclotomic polynomials, factorization of a monic polynomial into cyclotomics,
and the canonical text renderings used in reports:

>>> render(cyclotomic(6))
'q^2-q+1'
>>> render_factored({8: 1, 2: 2})
'Φ8Φ2^2'
"""

from __future__ import annotations

import functools
from typing import Iterable, Iterator

from .errors import NotCyclotomicProduct


class QPoly:
    """Immutable integer polynomial in q.

    >>> (Q + 1) * (Q - 1)
    QPoly('q^2-1')
    >>> QPoly([1, 0, 2]).degree
    2
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports -1."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "QPoly":
        if isinstance(other, int):
            other = QPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "QPoly":
        if isinstance(other, int):
            other = QPoly([other])
        return self + (-other)

    def __rsub__(self, other) -> "QPoly":
        return (-self) + other

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, int):
            return QPoly([other * c for c in self.coeffs])
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "QPoly":
        """Multiply by q**k."""
        if not self.coeffs:
            return ZERO
        return QPoly((0,) * k + self.coeffs)

    def __divmod__(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Euclidean division; requires the divisor to be monic."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.coeffs[-1] != 1:
            raise ValueError("divisor must be monic for exact integer division")
        rem = list(self.coeffs)
        d = other.degree
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - d - 1, -1, -1):
            c = rem[i + d]
            if c:
                quot[i] = c
                for j, cb in enumerate(other.coeffs):
                    rem[i + j] -= c * cb
        return QPoly(quot), QPoly(rem)

    def __call__(self, x: int) -> int:
        """Evaluate at an integer by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_nonneg(self) -> bool:
        """True when every coefficient is >= 0."""
        return all(c >= 0 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"QPoly('{render(self)}')"

    def __str__(self) -> str:
        return render(self)


ZERO = QPoly()
ONE = QPoly([1])
Q = QPoly([0, 1])


def divisors(m: int) -> list[int]:
    """Positive divisors of m in increasing order."""
    if m < 1:
        raise ValueError("m must be >= 1")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@functools.lru_cache(maxsize=None)
def cyclotomic(k: int) -> QPoly:
    """The k-th cyclotomic polynomial, by exact division of q^k - 1.

    >>> render(cyclotomic(1)), render(cyclotomic(2)), render(cyclotomic(4))
    ('q-1', 'q+1', 'q^2+1')
    """
    p = QPoly([-1] + [0] * (k - 1) + [1])
    for d in divisors(k):
        if d < k:
            q, r = divmod(p, cyclotomic(d))
            assert not r, f"q^{k}-1 not divisible by cyclotomic({d})"
            p = q
    return p


def factor_cyclotomic(p: QPoly, m: int) -> dict[int, int]:
    """Factor a monic product of cyclotomics Φ_k with k dividing m.

    Greedy trial division, largest degree first.  Returns {k: exponent}.
    Raises NotCyclotomicProduct when a nontrivial remainder survives.
    """
    if not p or p.coeffs[-1] != 1:
        raise NotCyclotomicProduct(f"not monic: {render(p)}")
    factors: dict[int, int] = {}
    # sort by degree phi(k) descending, then k descending for determinism
    ks = sorted(divisors(m), key=lambda k: (cyclotomic(k).degree, k), reverse=True)
    for k in ks:
        phi_k = cyclotomic(k)
        while p.degree >= phi_k.degree:
            quot, rem = divmod(p, phi_k)
            if rem:
                break
            factors[k] = factors.get(k, 0) + 1
            p = quot
    if p != ONE:
        raise NotCyclotomicProduct(
            f"residue {render(p)} is not a product of cyclotomics dividing q^{m}-1"
        )
    return factors


def is_sign_palindromic(p: QPoly, n: int) -> bool:
    """Check p_i == (-1)^n * p_{n-i} for 0 <= i <= n, padding with zeros."""
    sign = -1 if n % 2 else 1
    return all(p.coefficient(i) == sign * p.coefficient(n - i) for i in range(n + 1))


def _term(c: int, i: int) -> str:
    if i == 0:
        return str(abs(c))
    mag = "" if abs(c) == 1 else str(abs(c))
    var = "q" if i == 1 else f"q^{i}"
    return mag + var


def render(p: QPoly) -> str:
    """Canonical text form, descending powers: 'q^4+4q^2+1'."""
    if not p:
        return "0"
    parts: list[str] = []
    for i in range(p.degree, -1, -1):
        c = p.coefficient(i)
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(sign + _term(c, i))
    return "".join(parts)


def render_factored(factors: dict[int, int]) -> str:
    """Canonical label for a cyclotomic multiset: 'Φ8Φ2^2'."""
    if not factors:
        return "1"
    parts = []
    for k in sorted(factors, reverse=True):
        e = factors[k]
        parts.append(f"Φ{k}" + (f"^{e}" if e > 1 else ""))
    return "".join(parts)


def iter_terms(p: QPoly) -> Iterator[tuple[int, int]]:
    """(power, coefficient) pairs with nonzero coefficient, ascending."""
    for i, c in enumerate(p.coeffs):
        if c:
            yield i, c


def to_json(p: QPoly) -> dict:
    """JSON form used across the CLI: {'coeffs': [c0, c1, ...]}."""
    return {"coeffs": list(p.coeffs)}

"""Exact cyclotomic integers sum_k a_k zeta_n^k."""

from __future__ import annotations

from functools import lru_cache
from fractions import Fraction
from math import gcd


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial; coefficient lists are lowest degree first."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) - 1 < dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    return quot, num[:dd] if dd else [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as a coefficient tuple, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise ArithmeticError("cyclotomic division left a remainder")
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _mobius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


class CycInt:
    """Element of Z[zeta_n], stored as a coefficient vector modulo x^n - 1.

    Equality and hashing use the canonical form: the remainder modulo Phi_n,
    which has degree below phi(n). Arithmetic needs matching conductors; use
    ``lift`` to move to a multiple of the conductor explicitly.

    >>> z3 = CycInt.root(3, 1)
    >>> (1 + z3 + z3 * z3).rational_value()
    0
    >>> CycInt.root(8, 1).is_rational_integer
    False
    """

    __slots__ = ("conductor", "coefficients", "_canon")

    def __init__(self, conductor: int, coefficients) -> None:
        if conductor < 1:
            raise ValueError("conductor must be positive")
        coeffs = [0] * conductor
        for k, a in enumerate(coefficients):
            coeffs[k % conductor] += int(a)
        self.conductor = conductor
        self.coefficients = tuple(coeffs)
        self._canon: tuple[int, ...] | None = None

    @classmethod
    def integer(cls, a: int, conductor: int = 1) -> CycInt:
        return cls(conductor, [a])

    @classmethod
    def root(cls, n: int, k: int = 1, coefficient: int = 1) -> CycInt:
        c = [0] * n
        c[k % n] = coefficient
        return cls(n, c)

    @classmethod
    def from_terms(cls, terms) -> CycInt:
        """Build from [conductor, exponent, coefficient] triples, lifting to the lcm conductor."""
        terms = [tuple(int(x) for x in t) for t in terms]
        for t in terms:
            if len(t) != 3 or t[0] < 1:
                raise ValueError(f"bad cyclotomic term {t!r}")
        n = 1
        for c, _, _ in terms:
            n = _lcm(n, c)
        coeffs = [0] * n
        for c, e, a in terms:
            coeffs[(e * (n // c)) % n] += a
        return cls(n, coeffs)

    def canonical(self) -> tuple[int, ...]:
        """Remainder modulo Phi_n, padded to length phi(n)."""
        if self._canon is None:
            phi = cyclotomic_polynomial(self.conductor)
            _, rem = _poly_divmod(list(self.coefficients), list(phi))
            deg = len(phi) - 1
            rem = list(rem) + [0] * (deg - len(rem))
            self._canon = tuple(rem[:deg])
        return self._canon

    def reduced(self) -> CycInt:
        """The canonical representative as a CycInt of the same conductor."""
        return CycInt(self.conductor, self.canonical())

    @property
    def is_rational_integer(self) -> bool:
        return not any(self.canonical()[1:])

    def rational_value(self) -> int:
        if not self.is_rational_integer:
            raise ValueError(f"{self} is not a rational integer")
        canon = self.canonical()
        return canon[0] if canon else 0

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def lift(self, n: int) -> CycInt:
        """The same number written with conductor n (a multiple of the current one)."""
        if n % self.conductor:
            raise ValueError(f"cannot lift conductor {self.conductor} to {n}")
        m = n // self.conductor
        c = [0] * n
        for k, a in enumerate(self.coefficients):
            c[k * m] += a
        return CycInt(n, c)

    def _coerce(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.integer(other, self.conductor)
        if isinstance(other, CycInt):
            if other.conductor != self.conductor:
                raise ValueError(f"conductor mismatch {self.conductor} vs {other.conductor}")
            return other
        raise TypeError(type(other).__name__)

    def __add__(self, other) -> CycInt:
        o = self._coerce(other)
        return CycInt(self.conductor, [a + b for a, b in zip(self.coefficients, o.coefficients)])

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.conductor, [-a for a in self.coefficients])

    def __sub__(self, other) -> CycInt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CycInt:
        return self._coerce(other) - self

    def __mul__(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt(self.conductor, [a * other for a in self.coefficients])
        o = self._coerce(other)
        n = self.conductor
        out = [0] * n
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(o.coefficients):
                    if b:
                        out[(i + j) % n] += a * b
        return CycInt(n, out)

    __rmul__ = __mul__

    def galois(self, a: int) -> CycInt:
        """Image under zeta -> zeta^a (a a unit mod the conductor)."""
        n = self.conductor
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit mod {n}")
        out = [0] * n
        for k, c in enumerate(self.coefficients):
            out[(k * a) % n] += c
        return CycInt(n, out)

    def conjugate(self) -> CycInt:
        return self.galois(-1)

    def exact_div(self, d: int) -> CycInt:
        """Divide the canonical form by an integer that divides every coefficient."""
        canon = self.canonical()
        if any(c % d for c in canon):
            raise ArithmeticError(f"{self} is not divisible by {d}")
        return CycInt(self.conductor, [c // d for c in canon])

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational_integer and self.rational_value() == other
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.conductor != self.conductor:
            n = _lcm(self.conductor, other.conductor)
            return self.lift(n).canonical() == other.lift(n).canonical()
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        # Tr(x)/phi(n) does not depend on the conductor used to write x
        return hash(self.normalized_trace())

    def normalized_trace(self) -> Fraction:
        """Average of the Galois conjugates, a rational number."""
        n = self.conductor
        total = Fraction(0)
        for k, a in enumerate(self.coefficients):
            if a:
                m = n // gcd(n, k)
                total += Fraction(a * _mobius(m), euler_phi(m))
        return total

    def to_terms(self) -> list[list[int]]:
        """Canonical [conductor, exponent, coefficient] triples."""
        return [[self.conductor, k, a] for k, a in enumerate(self.canonical()) if a]

    def __repr__(self) -> str:
        return f"CycInt({self.conductor}, {list(self.canonical())})"

    def __str__(self) -> str:
        if self.is_rational_integer:
            return str(self.rational_value())
        parts = []
        for k, a in enumerate(self.canonical()):
            if not a:
                continue
            mono = "1" if k == 0 else f"z{self.conductor}^{k}"
            parts.append(f"{a}*{mono}" if a != 1 or k == 0 else mono)
        return " + ".join(parts)


def cyc_canonical(x: CycInt) -> tuple[CycInt, bool, int | None]:
    """Canonical form, whether x is a rational integer, and that integer if so."""
    red = x.reduced()
    if red.is_rational_integer:
        return red, True, red.rational_value()
    return red, False, None

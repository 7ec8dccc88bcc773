"""Finitely generated abelian groups in invariant-factor form."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def _invariant_factors_from_prime_powers(powers: dict[int, list[int]]) -> tuple[int, ...]:
    # powers: prime -> exponents; pair the largest exponents of every prime together
    per_prime = {p: sorted(es, reverse=True) for p, es in powers.items() if es}
    length = max((len(es) for es in per_prime.values()), default=0)
    factors = []
    for k in range(length):
        d = 1
        for p, es in per_prime.items():
            if k < len(es):
                d *= p ** es[k]
        factors.append(d)
    return tuple(reversed(factors))


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank together with Z/d_1 + ... + Z/d_k, where d_1 | d_2 | ... | d_k.

    >>> AbelianGroup.from_orders([2, 24])
    AbelianGroup(invariant_factors=(2, 24), free_rank=0)
    >>> str(AbelianGroup.from_orders([2, 2, 2, 8]))
    '2^3 x 8'
    >>> str(AbelianGroup())
    '1'
    """

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} is not >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a} and {b} violate divisibility")

    @classmethod
    def from_orders(cls, orders, free_rank: int = 0) -> AbelianGroup:
        """Direct sum of cyclic groups of the given orders; order 0 means a copy of Z."""
        powers: dict[int, list[int]] = {}
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free_rank += 1
                continue
            for p, e in factorize(n).items() if n > 1 else ():
                powers.setdefault(p, []).append(e)
        return cls(_invariant_factors_from_prime_powers(powers), free_rank)

    @classmethod
    def cyclic(cls, n: int) -> AbelianGroup:
        return cls.from_orders([n])

    @classmethod
    def elementary(cls, p: int, rank: int) -> AbelianGroup:
        return cls((p,) * rank)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        """Order of the group, or None when it has a free part."""
        return prod(self.invariant_factors) if self.free_rank == 0 else None

    @property
    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) + self.free_rank <= 1

    @property
    def rank(self) -> int:
        """Minimal number of generators."""
        return len(self.invariant_factors) + self.free_rank

    def primes(self) -> list[int]:
        return sorted(factorize(self.invariant_factors[-1])) if self.invariant_factors else []

    def primary_part(self, p: int) -> AbelianGroup:
        """The p-Sylow subgroup; only defined for finite groups."""
        if self.free_rank:
            raise ValueError("primary part requires a finite group")
        return AbelianGroup(tuple(p ** valuation(d, p) for d in self.invariant_factors if d % p == 0))

    def elementary_divisors(self) -> list[int]:
        """Prime-power orders of the cyclic summands, sorted."""
        out = []
        for d in self.invariant_factors:
            out.extend(p**e for p, e in factorize(d).items())
        return sorted(out)

    def direct_sum(self, other: AbelianGroup) -> AbelianGroup:
        return AbelianGroup.from_orders(
            list(self.invariant_factors) + list(other.invariant_factors),
            self.free_rank + other.free_rank,
        )

    __add__ = direct_sum

    def is_summand_of(self, other: AbelianGroup) -> bool:
        """Whether this group is isomorphic to a direct summand of other (finite groups)."""
        if self.free_rank > other.free_rank:
            return False
        mine = self.elementary_divisors()
        theirs = other.elementary_divisors()
        for q in mine:
            if q not in theirs:
                return False
            theirs.remove(q)
        return True

    def to_json(self) -> list[int]:
        return list(self.invariant_factors) + [0] * self.free_rank

    @classmethod
    def from_json(cls, data) -> AbelianGroup:
        if isinstance(data, AbelianGroup):
            return data
        if isinstance(data, int):
            return cls.from_orders([data]) if data != 1 else cls()
        return cls.from_orders([d for d in data if d != 1])

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        runs: list[list[int]] = []
        for d in self.invariant_factors:
            if runs and runs[-1][0] == d:
                runs[-1][1] += 1
            else:
                runs.append([d, 1])
        parts.extend(str(d) if k == 1 else f"{d}^{k}" for d, k in runs)
        return " x ".join(parts) if parts else "1"


def primary_part(g: AbelianGroup, p: int) -> AbelianGroup:
    return g.primary_part(p)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b

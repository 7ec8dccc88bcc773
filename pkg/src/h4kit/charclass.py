"""Chern and Pontryagin classes of representations restricted to cyclic subgroups.

A representation of Z/n is recorded by its eigenvalue multiset: exponent j
stands for the eigenvalue exp(2 pi i j / n). Degree-four classes of Z/n are
integers mod n, the coefficient of t^2 where t = c_1 of the character
g -> exp(2 pi i / n).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping


class CharClassError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiplicities of a generator of Z/n, keyed by exponent mod n."""

    modulus: int
    multiplicities: tuple[tuple[int, int], ...]

    def __init__(self, modulus: int, multiplicities: Mapping[int, int] | Iterable[tuple[int, int]]) -> None:
        if modulus < 1:
            raise CharClassError("modulus must be positive")
        items = multiplicities.items() if isinstance(multiplicities, Mapping) else multiplicities
        acc: dict[int, int] = {}
        for j, m in items:
            m = int(m)
            if m < 0:
                raise CharClassError(f"negative multiplicity {m} at exponent {j}")
            if m:
                key = int(j) % modulus
                acc[key] = acc.get(key, 0) + m
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "multiplicities", tuple(sorted(acc.items())))

    @classmethod
    def from_exponents(cls, modulus: int, exponents: Iterable[int]) -> Spectrum:
        acc: dict[int, int] = {}
        for j in exponents:
            acc[j % modulus] = acc.get(j % modulus, 0) + 1
        return cls(modulus, acc)

    def as_dict(self) -> dict[int, int]:
        return dict(self.multiplicities)

    def __getitem__(self, j: int) -> int:
        return self.as_dict().get(j % self.modulus, 0)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.multiplicities)

    def exponents(self) -> list[int]:
        return [j for j, m in self.multiplicities for _ in range(m)]

    def conjugate(self) -> Spectrum:
        return Spectrum(self.modulus, {(-j) % self.modulus: m for j, m in self.multiplicities})

    @property
    def is_real_symmetric(self) -> bool:
        return self == self.conjugate()

    def __add__(self, other: Spectrum) -> Spectrum:
        if other.modulus != self.modulus:
            raise CharClassError(f"modulus mismatch {self.modulus} vs {other.modulus}")
        acc = self.as_dict()
        for j, m in other.multiplicities:
            acc[j] = acc.get(j, 0) + m
        return Spectrum(self.modulus, acc)

    def pullback(self, n_tilde: int) -> Spectrum:
        """The same representation viewed on Z/n_tilde through Z/n_tilde -> Z/n (n divides n_tilde)."""
        if n_tilde % self.modulus:
            raise CharClassError(f"{self.modulus} does not divide {n_tilde}")
        r = n_tilde // self.modulus
        return Spectrum(n_tilde, {j * r: m for j, m in self.multiplicities})

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "multiplicities": {str(j): m for j, m in self.multiplicities}}

    def __str__(self) -> str:
        return "{" + ", ".join(f"{j}:{m}" for j, m in self.multiplicities) + f"}} mod {self.modulus}"


@dataclass(frozen=True)
class H4Class:
    """value * t^2 in H^4(Z/n; Z) = Z/n."""

    modulus: int
    value: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    @property
    def order(self) -> int:
        return self.modulus // gcd(self.modulus, self.value)

    def __add__(self, other: H4Class) -> H4Class:
        _same(self.modulus, other.modulus)
        return H4Class(self.modulus, self.value + other.value)

    def __mul__(self, k: int) -> H4Class:
        return H4Class(self.modulus, self.value * k)

    __rmul__ = __mul__

    def pullback(self, n_tilde: int) -> H4Class:
        """Image under H^4(Z/n) -> H^4(Z/n_tilde): t^2 goes to (n_tilde/n)^2 t^2."""
        if n_tilde % self.modulus:
            raise CharClassError(f"{self.modulus} does not divide {n_tilde}")
        r = n_tilde // self.modulus
        return H4Class(n_tilde, self.value * r * r)

    def label(self) -> str:
        return t2_label(self.modulus, self.value)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "value": self.value, "order": self.order, "label": self.label()}


@dataclass(frozen=True)
class ChernPair:
    modulus: int
    c1: int
    c2: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", int(self.c1) % self.modulus)
        object.__setattr__(self, "c2", int(self.c2) % self.modulus)

    @property
    def c2_class(self) -> H4Class:
        return H4Class(self.modulus, self.c2)

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "c1": self.c1, "c2": self.c2, "c2_order": self.c2_class.order,
                "c2_label": t2_label(self.modulus, self.c2)}


def _same(a: int, b: int) -> None:
    if a != b:
        raise CharClassError(f"modulus mismatch {a} vs {b}")


def t2_label(n: int, v: int) -> str:
    v %= n
    if v == 0:
        return "0"
    if v == 1:
        return "t^2"
    if v == n - 1:
        return "-t^2"
    return f"{v}t^2"


def chern_restriction(s: Spectrum) -> ChernPair:
    """c_1 and c_2 of a representation of Z/n from its eigenvalue exponents.

    >>> chern_restriction(Spectrum(4, {0: 25, 1: 25, 2: 30, 3: 25})).c2
    3
    """
    total = sum(j * m for j, m in s.multiplicities)
    squares = sum(j * j * m for j, m in s.multiplicities)
    return ChernPair(s.modulus, total, (total * total - squares) // 2)


def whitney_c2(parts: Iterable[ChernPair]) -> ChernPair:
    """Total (c_1, c_2) of a direct sum: c_2(V + W) = c_2(V) + c_2(W) + c_1(V) c_1(W)."""
    parts = list(parts)
    if not parts:
        raise CharClassError("empty direct sum needs an explicit modulus")
    n = parts[0].modulus
    c1, c2 = 0, 0
    for part in parts:
        _same(n, part.modulus)
        c1, c2 = c1 + part.c1, c2 + part.c2 + c1 * part.c1
    return ChernPair(n, c1, c2)


def rotation_numbers(s: Spectrum) -> list[int]:
    """One exponent per conjugate pair {j, -j}; pairs of eigenvalue -1 give n/2.

    Fixed lines (exponent 0) and an unpaired -1 line carry no rotation and are dropped.
    """
    if not s.is_real_symmetric:
        raise CharClassError("spectrum is not symmetric under j -> -j, so the representation is not real here")
    n = s.modulus
    out: list[int] = []
    for j, m in s.multiplicities:
        if j == 0:
            continue
        if 2 * j == n:
            out.extend([j] * (m // 2))
        elif 2 * j < n:
            out.extend([j] * m)
    return out


def p1_restriction(s: Spectrum) -> H4Class:
    """p_1 on Z/n: sum over rotation planes of (rotation number)^2.

    >>> p1_restriction(Spectrum(8, {0: 3, 1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 1, 7: 1})).value
    6
    """
    return H4Class(s.modulus, sum(c * c for c in rotation_numbers(s)))


@dataclass(frozen=True)
class PhalfCertificate:
    lift_order: int
    groups: tuple[tuple[int, int, tuple[int, ...]], ...]  # (rotation residue, multiplicity, candidate lifts)
    assignments: int  # number of lift choices covered by the search
    admissible_values: tuple[int, ...]  # distinct values of sum c^2 / 2 mod lift_order over admissible lifts

    @property
    def agrees(self) -> bool:
        return len(self.admissible_values) == 1

    def to_json(self) -> dict:
        return {
            "lift_order": self.lift_order,
            "groups": [{"rotation": r, "count": k, "lifts": list(c)} for r, k, c in self.groups],
            "assignments": str(self.assignments),
            "admissible_values": list(self.admissible_values),
            "agrees": self.agrees,
        }


def _lift_candidates(r: int, n_tilde: int) -> tuple[int, ...]:
    out = set()
    for base in (r, -r):
        for shift in (-2, -1, 0, 1, 2):
            c = base + shift * n_tilde
            if abs(c) <= n_tilde:
                out.add(c)
    return tuple(sorted(out))


def phalf_restriction(s: Spectrum, lift_order: int | None = None) -> tuple[H4Class, PhalfCertificate]:
    """p_1/2 on Z/lift_order for a real representation of Z/n pulled back along Z/lift_order -> Z/n.

    The rotation numbers become residues mod lift_order; every integer lift c
    with |c| <= lift_order and either sign is considered, subject to the spin
    condition sum c = 0 mod 2, and (sum c^2)/2 mod lift_order is recorded.
    The search runs over (parity, sum c^2 mod 2 lift_order) states, so it is
    exhaustive without listing assignments. All admissible lifts must agree.

    >>> cls, cert = phalf_restriction(Spectrum(8, {0: 3, 1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 1, 7: 1}), 8)
    >>> cls.value, cls.order, cert.agrees
    (7, 8, True)
    """
    n = s.modulus
    nt = n if lift_order is None else int(lift_order)
    if nt not in (n, 2 * n):
        raise CharClassError(f"lift order must be {n} or {2 * n}")
    ratio = nt // n
    counts: dict[int, int] = {}
    for r in rotation_numbers(s):
        counts[r * ratio] = counts.get(r * ratio, 0) + 1
    mod = 2 * nt
    states = {(0, 0)}
    groups = []
    total = 1
    for r, k in sorted(counts.items()):
        cands = _lift_candidates(r, nt)
        groups.append((r, k, cands))
        total *= len(cands) ** k
        steps = {(c % 2, (c * c) % mod) for c in cands}
        for _ in range(k):
            states = {((a + x) % 2, (b + y) % mod) for a, b in states for x, y in steps}
    values = sorted({(b // 2) % nt for a, b in states if a == 0})
    cert = PhalfCertificate(nt, tuple(groups), total, tuple(values))
    if not values:
        raise CharClassError(f"no spin lift exists on Z/{nt}: every lift has odd total rotation")
    if len(values) > 1:
        raise CharClassError(f"admissible lifts disagree: values {values} mod {nt}")
    return H4Class(nt, values[0]), cert


def cup_square_generators(n: int) -> tuple[list[int], list[int]]:
    """Units of Z/n that are squares of units, and the remaining units.

    >>> cup_square_generators(24)
    ([1], [5, 7, 11, 13, 17, 19, 23])
    """
    if n < 2:
        raise CharClassError("n must be at least 2")
    units = [k for k in range(1, n) if gcd(k, n) == 1]
    squares = sorted({k * k % n for k in units})
    return squares, [u for u in units if u not in squares]


def su2_symmetric_power_c2(n: int) -> int:
    """c_2(S^n pi) as a multiple of c_2(pi) for pi the defining SU(2) representation.

    The weights of S^n pi are n, n-2, ..., -n times those of pi, so the
    multiple is -e_2(n, n-2, ..., -n).

    >>> [su2_symmetric_power_c2(k) for k in range(6)]
    [0, 1, 4, 10, 20, 35]
    """
    if n < 0:
        raise CharClassError("n must be nonnegative")
    weights = [n - 2 * k for k in range(n + 1)]
    s = sum(weights)
    q = sum(w * w for w in weights)
    return -((s * s - q) // 2)

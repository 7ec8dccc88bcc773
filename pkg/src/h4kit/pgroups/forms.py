"""Quadratic forms over F_2, symplectic forms over odd F_p, and Sq^1 on polynomials."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..exactalg import FpMatrix


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = sum_{i <= j} c_ij x_i x_j over F_2, stored as an upper-triangular matrix."""

    coefficients: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        c = tuple(tuple(int(x) % 2 for x in row) for row in self.coefficients)
        n = len(c)
        if any(len(row) != n for row in c):
            raise ValueError("coefficient matrix must be square")
        if any(c[i][j] for i in range(n) for j in range(i)):
            raise ValueError("coefficient matrix must be upper triangular")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_terms(cls, n: int, terms: Sequence[tuple[int, int]]) -> QuadraticForm:
        """Build from monomials x_i x_j given as index pairs (x_i^2 is (i, i))."""
        c = [[0] * n for _ in range(n)]
        for i, j in terms:
            i, j = min(i, j), max(i, j)
            c[i][j] ^= 1
        return cls(tuple(map(tuple, c)))

    @classmethod
    def hyperbolic(cls, m: int) -> QuadraticForm:
        return cls.from_terms(2 * m, [(2 * i, 2 * i + 1) for i in range(m)])

    @classmethod
    def elliptic(cls, m: int) -> QuadraticForm:
        """Hyperbolic planes plus one anisotropic plane x^2 + xy + y^2."""
        terms = [(2 * i, 2 * i + 1) for i in range(m)] + [(0, 0), (1, 1)]
        return cls.from_terms(2 * m, terms)

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def __call__(self, x: Sequence[int]) -> int:
        c = self.coefficients
        n = self.rank
        return sum(c[i][j] * x[i] * x[j] for i in range(n) for j in range(i, n)) % 2

    def polar(self) -> FpMatrix:
        """B_Q(x, y) = Q(x + y) - Q(x) - Q(y) as a symmetric matrix with zero diagonal."""
        n = self.rank
        c = self.coefficients
        return FpMatrix(2, [[0 if i == j else c[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)], n)

    def as_polynomial(self) -> dict[tuple[int, ...], int]:
        n = self.rank
        out: dict[tuple[int, ...], int] = {}
        for i in range(n):
            for j in range(i, n):
                if self.coefficients[i][j]:
                    e = [0] * n
                    e[i] += 1
                    e[j] += 1
                    out[tuple(e)] = 1
        return out


@dataclass(frozen=True)
class FormAnalysis:
    polar: FpMatrix
    nondegenerate: bool
    arf: int | None
    zeros: int
    ones: int


def quadratic_form_analyze(q: QuadraticForm) -> FormAnalysis:
    """Polar form, nondegeneracy, and Arf invariant by majority vote.

    The Arf invariant is 0 when Q takes the value 0 more often than 1. It is
    only meaningful for nondegenerate Q; for degenerate forms it is None.

    >>> quadratic_form_analyze(QuadraticForm.hyperbolic(1)).arf
    0
    >>> quadratic_form_analyze(QuadraticForm.elliptic(1)).arf
    1
    """
    n = q.rank
    ones = sum(q(x) for x in itertools.product((0, 1), repeat=n))
    zeros = 2**n - ones
    b = q.polar()
    nondeg = b.is_invertible() if n else True
    arf = (0 if zeros > ones else 1) if nondeg else None
    return FormAnalysis(b, nondeg, arf, zeros, ones)


def arf_sign(arf: int) -> int:
    """+1 for plus type (Arf 0), -1 for minus type (Arf 1)."""
    return 1 if arf == 0 else -1


@dataclass(frozen=True)
class SymplecticForm:
    """Alternating form omega on F_p^(2m), p odd."""

    p: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.p == 2:
            raise ValueError("use QuadraticForm in characteristic 2")
        w = tuple(tuple(int(x) % self.p for x in row) for row in self.matrix)
        n = len(w)
        if n % 2 or any(len(r) != n for r in w):
            raise ValueError("form must be square of even size")
        for i in range(n):
            if w[i][i]:
                raise ValueError("alternating form needs a zero diagonal")
            for j in range(n):
                if (w[i][j] + w[j][i]) % self.p:
                    raise ValueError("form is not skew-symmetric")
        object.__setattr__(self, "matrix", w)

    @classmethod
    def standard(cls, p: int, m: int) -> SymplecticForm:
        d = 2 * m
        w = [[0] * d for _ in range(d)]
        for i in range(m):
            w[i][m + i] = 1
            w[m + i][i] = p - 1
        return cls(p, tuple(map(tuple, w)))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def nondegenerate(self) -> bool:
        return FpMatrix(self.p, self.matrix).is_invertible()

    def __call__(self, u: Sequence[int], v: Sequence[int]) -> int:
        w = self.matrix
        n = self.rank
        return sum(u[i] * w[i][j] * v[j] for i in range(n) for j in range(n)) % self.p

    def similitude_scalar(self, g: FpMatrix) -> int:
        """The a with omega(gu, gv) = a omega(u, v); raises if g is not a similitude."""
        p = self.p
        w = FpMatrix(p, self.matrix)
        pulled = g.transpose() @ w @ g
        i, j = next((i, j) for i in range(self.rank) for j in range(self.rank) if self.matrix[i][j])
        a = pulled[i, j] * pow(self.matrix[i][j], -1, p) % p
        if a == 0 or pulled != w.scale(a):
            raise ValueError("matrix does not scale omega")
        return a


def _clean(f: dict) -> dict:
    return {e: 1 for e, c in f.items() if c % 2}


def poly_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + c
    return _clean(out)


def poly_mul(f: dict, g: dict) -> dict:
    out: dict[tuple[int, ...], int] = {}
    for a, c in f.items():
        for b, d in g.items():
            e = tuple(x + y for x, y in zip(a, b))
            out[e] = out.get(e, 0) + c * d
    return _clean(out)


def monomial(n: int, *indices: int) -> dict:
    e = [0] * n
    for i in indices:
        e[i] += 1
    return {tuple(e): 1}


def sq1(f: dict) -> dict:
    """The derivation with x_i -> x_i^2: each monomial prod x_i^a_i goes to sum a_i x^(a + e_i).

    >>> sq1(monomial(2, 0, 1)) == poly_add(monomial(2, 0, 0, 1), monomial(2, 0, 1, 1))
    True
    >>> sq1(monomial(2, 0, 0))
    {}
    """
    out: dict[tuple[int, ...], int] = {}
    for e, c in f.items():
        if not c % 2:
            continue
        for i, a in enumerate(e):
            if a % 2:
                bumped = list(e)
                bumped[i] += 1
                key = tuple(bumped)
                out[key] = out.get(key, 0) + 1
    return _clean(out)


def alt2_from_sq1_image(f: dict, n: int) -> FpMatrix:
    """Invert e_i ^ e_j -> x_i^2 x_j + x_i x_j^2 on the image of Sq^1 from quadratics.

    Returns the alternating matrix over F_2; raises if f is not in that image.
    """
    w = [[0] * n for _ in range(n)]
    rest = dict(f)
    for i in range(n):
        for j in range(i + 1, n):
            key = tuple(2 if k == i else 1 if k == j else 0 for k in range(n))
            if rest.get(key):
                w[i][j] = w[j][i] = 1
                rest = poly_add(rest, poly_add(monomial(n, i, i, j), monomial(n, i, j, j)))
    if rest:
        raise ValueError("polynomial is not in the image of Sq^1 on quadratics")
    return FpMatrix(2, w, n)

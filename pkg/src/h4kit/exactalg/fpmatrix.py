"""Dense matrices over a prime field."""

from __future__ import annotations

from typing import Iterable, Sequence

from .abelian import is_prime


class FpMatrix:
    """Matrix over F_p with entries kept reduced in 0..p-1.

    Generator matrices act on column vectors: v -> M v.
    """

    __slots__ = ("p", "rows", "cols", "data")

    def __init__(self, p: int, data: Iterable[Iterable[int]], cols: int | None = None) -> None:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.data = tuple(tuple(int(x) % p for x in row) for row in data)
        self.rows = len(self.data)
        self.cols = cols if cols is not None else (len(self.data[0]) if self.data else 0)
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, p: int, n: int) -> FpMatrix:
        return cls(p, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> FpMatrix:
        return cls(p, [[0] * cols for _ in range(rows)], cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.data[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.p, self.cols, self.data))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, {self.rows}x{self.cols})"

    def _check(self, other: FpMatrix) -> None:
        if self.p != other.p:
            raise ValueError("matrices over different fields")

    def __add__(self, other: FpMatrix) -> FpMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return FpMatrix(self.p, [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __sub__(self, other: FpMatrix) -> FpMatrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return FpMatrix(self.p, [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        p = self.p
        return FpMatrix(
            p,
            [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in self.data],
            other.cols,
        )

    def scale(self, a: int) -> FpMatrix:
        return FpMatrix(self.p, [[a * x for x in r] for r in self.data], self.cols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, v)) % self.p for r in self.data)

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, list(zip(*self.data)) if self.rows else [], self.rows)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def rank(self) -> int:
        return len(_rref(self.p, [list(r) for r in self.data], self.cols)[1])

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def inverse(self) -> FpMatrix:
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.data)]
        red, piv = _rref(self.p, aug, 2 * n, limit=n)
        if len(piv) != n:
            raise ValueError("matrix is singular")
        return FpMatrix(self.p, [r[n:] for r in red[:n]], n)

    def __pow__(self, k: int) -> FpMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result = FpMatrix.identity(self.p, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def order(self, limit: int = 10**6) -> int:
        """Multiplicative order of an invertible matrix."""
        ident = FpMatrix.identity(self.p, self.rows)
        cur = self
        for k in range(1, limit + 1):
            if cur == ident:
                return k
            cur = cur @ self
        raise ValueError("order exceeds limit")

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]


def _rref(p: int, a: list[list[int]], ncols: int, limit: int | None = None):
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols if limit is None else limit):
        pr = next((i for i in range(r, len(a)) if a[i][c] % p), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rref(m: FpMatrix) -> tuple[FpMatrix, list[int]]:
    red, piv = _rref(m.p, [list(r) for r in m.data], m.cols)
    return FpMatrix(m.p, red, m.cols), piv


def kernel_mod_p(m: FpMatrix) -> list[tuple[int, ...]]:
    """Echelonized basis of {v : m v = 0}; its length is cols - rank.

    >>> kernel_mod_p(FpMatrix.identity(3, 3))
    []
    >>> len(kernel_mod_p(FpMatrix.zeros(2, 2, 4)))
    4
    """
    p, n = m.p, m.cols
    red, piv = _rref(p, [list(r) for r in m.data], n)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, piv):
            v[pc] = (-row[f]) % p
        basis.append(tuple(v))
    # echelonize the basis itself so it is canonical
    if basis:
        red_b, _ = _rref(p, [list(v) for v in basis], n)
        basis = [tuple(v) for v in red_b if any(v)]
    return basis


def stack(mats: Sequence[FpMatrix]) -> FpMatrix:
    """Vertical concatenation."""
    if not mats:
        raise ValueError("nothing to stack")
    p, cols = mats[0].p, mats[0].cols
    rows: list[tuple[int, ...]] = []
    for m in mats:
        if m.p != p or m.cols != cols:
            raise ValueError("incompatible blocks")
        rows.extend(m.data)
    return FpMatrix(p, rows, cols)


def span_rank(p: int, vectors: Sequence[Sequence[int]], dim: int) -> int:
    if not vectors:
        return 0
    return FpMatrix(p, vectors, dim).rank()

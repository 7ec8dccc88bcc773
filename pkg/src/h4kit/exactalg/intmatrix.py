"""Sparse integer matrices, Smith normal form and cokernels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .abelian import AbelianGroup


class IntMatrix:
    """Sparse integer matrix stored as {(row, col): value} with no stored zeros."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: dict[tuple[int, int], int] | None = None) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if v:
                clean[(i, j)] = int(v)
        self._entries = clean

    @classmethod
    def from_dense(cls, data: Iterable[Iterable[int]], cols: int | None = None) -> IntMatrix:
        data = [list(r) for r in data]
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        entries = {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(len(data), ncols, entries)

    @classmethod
    def from_rows(cls, rows: list[dict[int, int]], cols: int) -> IntMatrix:
        return cls(len(rows), cols, {(i, j): v for i, r in enumerate(rows) for j, v in r.items()})

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, values: list[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        r = len(values) if rows is None else rows
        c = len(values) if cols is None else cols
        return cls(r, c, {(i, i): v for i, v in enumerate(values)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._entries.get(key, 0)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (i, k), v in self._entries.items():
            for j, w in right[k].items():
                acc[(i, j)] = acc.get((i, j), 0) + v * w
        return IntMatrix(self.rows, other.cols, acc)

    def apply(self, vec: list[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [0] * self.rows
        for (i, j), v in self._entries.items():
            out[i] += v * vec[j]
        return out

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = m.to_dense()
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SNFResult:
    """D = U * m * V with U, V unimodular and D diagonal with d_i | d_{i+1}."""

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d not in (0, 1))


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Smith normal form with both transforms (dense algorithm, meant for modest sizes).

    >>> smith_normal_form(IntMatrix.diagonal([2, 3])).diagonal
    (1, 6)
    """
    r, c = m.shape
    a = m.to_dense()
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        ad, asrc = a[dst], a[src]
        for k in range(c):
            if asrc[k]:
                ad[k] += f * asrc[k]
        ud, us = u[dst], u[src]
        for k in range(r):
            if us[k]:
                ud[k] += f * us[k]

    def add_col(dst, src, f):
        for row in a:
            if row[src]:
                row[dst] += f * row[src]
        for row in v:
            if row[src]:
                row[dst] += f * row[src]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = a[t][t]
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(i, t) for i in range(t + 1, r) if a[i][t]] + [(t, j) for j in range(t + 1, c) if a[t][j]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(a[ij[0]][ij[1]]))
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    diag = tuple(a[i][i] for i in range(min(r, c)))
    return SNFResult(diag, IntMatrix.from_dense(u, r), IntMatrix.from_dense(v, c))


@dataclass
class Elimination:
    """Outcome of sparse integer elimination of a matrix up to unimodular row/column operations.

    ``pivots`` lists (row, col, d) with the matrix equivalent to the diagonal of the d's.
    When ``log`` is kept, the row operations can be replayed on vectors of the target
    lattice (rows index target coordinates).
    """

    rows: int
    cols: int
    pivots: list[tuple[int, int, int]]
    log: list[tuple[int, list[tuple[int, int]]]] | None = None
    unit_pivots: int = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def diagonal(self) -> list[int]:
        return [abs(d) for _, _, d in self.pivots]

    def cokernel(self) -> AbelianGroup:
        return AbelianGroup.from_orders(
            [d for d in self.diagonal() if d != 1], free_rank=self.rows - self.rank
        )

    def replay(self, vec: list[int]) -> list[int]:
        """Apply the recorded row operations U to a target vector."""
        if self.log is None:
            raise ValueError("elimination was run without a log")
        z = list(vec)
        for src, ops in self.log:
            zs = z[src]
            if zs:
                for dst, f in ops:
                    z[dst] -= f * zs
        return z

    def unreplay(self, vec: list[int]) -> list[int]:
        """Apply U^{-1}: the inverse row operations in reverse order."""
        if self.log is None:
            raise ValueError("elimination was run without a log")
        z = list(vec)
        for src, ops in reversed(self.log):
            # z[src] is untouched by its own entry, so each entry inverts in one pass
            zs = z[src]
            if zs:
                for dst, f in ops:
                    z[dst] += f * zs
        return z


def eliminate(
    rows: list[dict[int, int]],
    ncols: int,
    *,
    modulus: int | None = None,
    keep_log: bool = False,
) -> Elimination:
    """Sparse elimination to a diagonal form.

    Unit pivots are taken first, cheapest row first, choosing the column with the
    fewest entries (a Markowitz-style fill heuristic). The small residual is then
    finished with smallest-magnitude pivots and Euclidean row/column steps. With a
    modulus every nonzero is a unit and the result is the rank over Z/modulus.
    """
    nrows = len(rows)
    if modulus is not None:
        a = [{j: v % modulus for j, v in r.items() if v % modulus} for r in rows]
    else:
        a = [{j: v for j, v in r.items() if v} for r in rows]
    colmap: dict[int, set[int]] = {}
    for i, r in enumerate(a):
        for j in r:
            colmap.setdefault(j, set()).add(i)
    log: list[tuple[int, list[tuple[int, int]]]] | None = [] if keep_log else None
    pivots: list[tuple[int, int, int]] = []
    alive = {i for i, r in enumerate(a) if r}

    def row_op(dst: int, src: int, f: int) -> None:
        # row_dst -= f * row_src
        rd = a[dst]
        for j, w in a[src].items():
            nv = rd.get(j, 0) - f * w
            if modulus is not None:
                nv %= modulus
            if nv:
                if j not in rd:
                    colmap.setdefault(j, set()).add(dst)
                rd[j] = nv
            elif j in rd:
                del rd[j]
                colmap[j].discard(dst)
        if not rd:
            alive.discard(dst)

    def clear_column(i: int, c: int, inv: int | None) -> list[tuple[int, int]]:
        ops = []
        pv = a[i][c]
        for j in sorted(colmap.get(c, ())):
            if j == i:
                continue
            if inv is not None:
                f = a[j][c] * inv
                if modulus is not None:
                    f %= modulus
            else:
                f = a[j][c] // pv
            if f:
                row_op(j, i, f)
                ops.append((j, f))
        return ops

    def drop_pivot(i: int, c: int) -> None:
        for j in a[i]:
            colmap[j].discard(i)
        a[i] = {}
        alive.discard(i)

    # phase 1: unit pivots
    changed = True
    while changed:
        changed = False
        for i in sorted(alive, key=lambda k: (len(a[k]), k)):
            if i not in alive:
                continue
            r = a[i]
            cands = [j for j, v in r.items() if modulus is not None or abs(v) == 1]
            if not cands:
                continue
            c = min(cands, key=lambda j: (len(colmap[j]), j))
            pv = r[c]
            inv = pow(pv, -1, modulus) if modulus is not None else pv
            ops = clear_column(i, c, inv)
            if log is not None:
                log.append((i, ops))
            pivots.append((i, c, 1 if modulus is not None else pv))
            drop_pivot(i, c)
            changed = True

    # phase 2: residual with Euclidean steps (integers only)
    while alive:
        best = None
        for i in alive:
            for j, v in a[i].items():
                key = (abs(v), (len(a[i]) - 1) * (len(colmap[j]) - 1), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        _, i, c = best
        pv = a[i][c]
        ops = clear_column(i, c, None)
        if log is not None and ops:
            log.append((i, ops))
        if len(colmap[c]) > 1:
            continue  # a smaller remainder appeared in this column
        # column operations clear the rest of row i
        for j, w in sorted(a[i].items()):
            if j == c:
                continue
            f = w // pv
            if f:
                for k in list(colmap[c]):
                    rk = a[k]
                    nv = rk.get(j, 0) - f * rk[c]
                    if nv:
                        if j not in rk:
                            colmap.setdefault(j, set()).add(k)
                        rk[j] = nv
                    elif j in rk:
                        del rk[j]
                        colmap[j].discard(k)
        if len(a[i]) > 1:
            continue
        pivots.append((i, c, pv))
        drop_pivot(i, c)
    return Elimination(nrows, ncols, pivots, log, sum(1 for p in pivots if abs(p[2]) == 1))


def elementary_divisors(m: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form (not necessarily in divisibility order)."""
    return eliminate(m.row_dicts(), m.cols).diagonal()


def cokernel_group(m: IntMatrix) -> AbelianGroup:
    """Z^rows / (image of m).

    >>> str(cokernel_group(IntMatrix.diagonal([2, 3])))
    '6'
    >>> str(cokernel_group(IntMatrix(2, 0)))
    'Z^2'
    """
    return eliminate(m.row_dicts(), m.cols).cokernel()


def rank_mod(m: IntMatrix | list[dict[int, int]], modulus: int, ncols: int | None = None) -> int:
    if isinstance(m, IntMatrix):
        return eliminate(m.row_dicts(), m.cols, modulus=modulus).rank
    return eliminate(m, ncols or 0, modulus=modulus).rank


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel of m, as the columns of the returned matrix."""
    snf = smith_normal_form(m)
    rank = sum(1 for d in snf.diagonal if d)
    v = snf.right.to_dense()
    cols = list(range(rank, m.cols))
    return IntMatrix.from_dense([[row[j] for j in cols] for row in v], len(cols))

"""Brute-force integral cohomology of tiny groups from the normalized bar complex.

All cohomology is with trivial Z coefficients. A k-cochain is a function on
k-tuples of non-identity elements (normalized cochains vanish on tuples that
contain the identity), so C^k has rank (n-1)^k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .exactalg import AbelianGroup, IntMatrix
from .exactalg.intmatrix import Elimination, eliminate

DEFAULT_CAP = 12
OVERRIDE_CAP = 16
TABLE_LIMIT = 729


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class MultTable:
    """Multiplication table of a finite group on indices 0..n-1."""

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = ""

    def __post_init__(self) -> None:
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise OracleError("multiplication table must be square and nonempty")
        full = set(range(n))
        for row in t:
            if set(row) != full:
                raise OracleError("table rows are not permutations")
        for col in range(n):
            if {t[r][col] for r in range(n)} != full:
                raise OracleError("table columns are not permutations")
        e = self.identity
        if not (0 <= e < n) or any(t[e][x] != x or t[x][e] != x for x in range(n)):
            raise OracleError(f"index {e} is not an identity")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise OracleError(f"associativity fails at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(b for b in range(self.order) if self.table[a][b] == e) for a in range(self.order))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def exponent(self) -> int:
        from math import lcm

        out = 1
        for a in range(self.order):
            out = lcm(out, self.element_order(a))
        return out

    def center(self) -> list[int]:
        t = self.table
        return [a for a in range(self.order) if all(t[a][b] == t[b][a] for b in range(self.order))]

    def subgroup(self, elements) -> tuple[MultTable, list[int]]:
        """Restrict to a subset closed under multiplication; returns (table, embedding)."""
        elems = sorted(set(int(x) for x in elements))
        if self.identity not in elems:
            raise OracleError("subgroup must contain the identity")
        elems.remove(self.identity)
        elems = [self.identity] + elems
        pos = {g: i for i, g in enumerate(elems)}
        rows = []
        for a in elems:
            row = []
            for b in elems:
                ab = self.table[a][b]
                if ab not in pos:
                    raise OracleError("subset is not closed under multiplication")
                row.append(pos[ab])
            rows.append(row)
        return MultTable(tuple(map(tuple, rows)), 0, f"{self.name}<sub>"), elems

    def generated_by(self, gens) -> list[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def direct_product(self, other: MultTable) -> MultTable:
        n, m = self.order, other.order
        rows = []
        for a in range(n * m):
            a1, a2 = divmod(a, m)
            rows.append(tuple(self.table[a1][b // m] * m + other.table[a2][b % m] for b in range(n * m)))
        ident = self.identity * m + other.identity
        return MultTable(tuple(rows), ident, f"{self.name}x{other.name}")

    def to_text(self) -> str:
        lines = [str(self.order)]
        lines.extend(" ".join(map(str, row)) for row in self.table)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> MultTable:
        """Parse ``n`` followed by n*n row-major indices in 0..n-1."""
        toks = text.split()
        if not toks:
            raise OracleError("empty multiplication-table file")
        n = int(toks[0])
        vals = [int(x) for x in toks[1:]]
        if len(vals) != n * n:
            raise OracleError(f"expected {n * n} entries, found {len(vals)}")
        rows = tuple(tuple(vals[i * n : (i + 1) * n]) for i in range(n))
        ident = next((e for e in range(n) if rows[e] == tuple(range(n))), None)
        if ident is None:
            raise OracleError("no identity row")
        return cls(rows, ident, name)

    @classmethod
    def from_file(cls, path: str | Path) -> MultTable:
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), path.stem)


def cyclic_group(n: int) -> MultTable:
    return MultTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"C{n}")


def elementary_abelian_group(p: int, n: int) -> MultTable:
    g = cyclic_group(p)
    out = g
    for _ in range(n - 1):
        out = out.direct_product(g)
    return MultTable(out.table, out.identity, f"{p}^{n}")


def extraspecial_form(p: int, m: int, variant: str | int = "plus") -> list[list[int]]:
    """Bilinear form omega used to build p^(1+2m).

    For p = 2 omega is upper triangular with omega(v, v) = Q(v), Q hyperbolic
    (variant plus, Arf 0) or with one anisotropic plane (variant minus, Arf 1).
    For odd p omega is the standard symplectic form.
    """
    d = 2 * m
    w = [[0] * d for _ in range(d)]
    if p == 2:
        minus = variant in ("minus", 1, "1", "-", "arf1")
        for i in range(m):
            w[2 * i][2 * i + 1] = 1
        if minus:
            w[0][0] = 1
            w[1][1] = 1
    else:
        for i in range(m):
            w[i][m + i] = 1
            w[m + i][i] = p - 1
    return w


def _vec(index: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        index, r = divmod(index, p)
        out.append(r)
    return out


def build_extraspecial(p: int, m: int, variant: str | int = "plus", cap: int = TABLE_LIMIT) -> MultTable:
    """Table of p^(1+2m) from (z^i t^u)(z^j t^v) = z^(i+j+omega(u,v)) t^(u+v)."""
    from .pgroups.extraspecial import extraspecial_multiply

    order = p ** (1 + 2 * m)
    if order > cap:
        raise OracleError(f"order {order} exceeds the table cap {cap}")
    if p != 2 and variant not in ("plus", "exponent-p", "exponent p", 0, "0"):
        raise OracleError("only the exponent-p extraspecial group is supported for odd p")
    d = 2 * m
    w = extraspecial_form(p, m, variant)
    size_e = p**d
    elems = [(i, tuple(_vec(u, p, d))) for u in range(size_e) for i in range(p)]
    index = {x: k for k, x in enumerate(elems)}
    rows = []
    for x in elems:
        rows.append(tuple(index[extraspecial_multiply(p, w, x, y)] for y in elems))
    tag = {2: "plus" if variant in ("plus", 0, "0", "+", "arf0") else "minus"}.get(p, "exp-p")
    return MultTable(tuple(rows), index[(0, (0,) * d)], f"{p}^(1+{d})_{tag}")


def cyclic_cohomology(n: int, k: int) -> AbelianGroup:
    """H^k(Z/n; Z): Z in degree 0, zero in odd degrees, Z/n in positive even degrees."""
    if n < 1 or k < 0:
        raise OracleError("need n >= 1 and k >= 0")
    if k == 0:
        return AbelianGroup(free_rank=1)
    if k % 2 or n == 1:
        return AbelianGroup()
    return AbelianGroup.cyclic(n)


def _check_cap(g: MultTable, cap: int) -> None:
    if cap > OVERRIDE_CAP:
        raise OracleError(f"cap {cap} exceeds the hard limit {OVERRIDE_CAP}")
    if g.order > cap:
        raise OracleError(f"group order {g.order} exceeds cap {cap}")


def _tuples(g: MultTable, k: int):
    els = [x for x in range(g.order) if x != g.identity]
    return list(itertools.product(els, repeat=k))


def coboundary_rows(g: MultTable, k: int) -> tuple[list[dict[int, int]], int]:
    """Rows of d^k: C^k -> C^(k+1); rows index (k+1)-tuples, columns k-tuples."""
    e = g.identity
    t = g.table
    idx = {tup: i for i, tup in enumerate(_tuples(g, k))}
    rows: list[dict[int, int]] = []
    for tup in _tuples(g, k + 1):
        r: dict[int, int] = {}

        def add(key, c):
            if e in key:
                return
            j = idx[key]
            v = r.get(j, 0) + c
            if v:
                r[j] = v
            else:
                r.pop(j, None)

        add(tup[1:], 1)
        for i in range(k):
            add(tup[:i] + (t[tup[i]][tup[i + 1]],) + tup[i + 2 :], -1 if i % 2 == 0 else 1)
        add(tup[:-1], -1 if k % 2 == 0 else 1)
        rows.append(r)
    return rows, len(idx)


def coboundary(g: MultTable, k: int) -> IntMatrix:
    rows, ncols = coboundary_rows(g, k)
    return IntMatrix.from_rows(rows, ncols)


@dataclass
class CochainComplexSlice:
    """C^3 -> C^4 -> C^5 of the normalized bar complex with both differentials."""

    group: MultTable
    ranks: tuple[int, int, int]
    d3: IntMatrix
    d4: IntMatrix

    def check(self) -> bool:
        return (self.d4 @ self.d3).is_zero()


def complex_slice(g: MultTable, cap: int = DEFAULT_CAP, verify: bool = True) -> CochainComplexSlice:
    _check_cap(g, cap)
    d3, d4 = coboundary(g, 3), coboundary(g, 4)
    n1 = g.order - 1
    sl = CochainComplexSlice(g, (n1**3, n1**4, n1**5), d3, d4)
    if verify and not sl.check():
        raise OracleError("d o d != 0 in the bar complex")
    return sl


def averaging_homotopy(g: MultTable, k: int) -> IntMatrix:
    """n times the contraction C^k -> C^(k-1), (h f)(g_1..g_(k-1)) = (1/n) sum_g f(g, g_1..g_(k-1))."""
    idx = {tup: i for i, tup in enumerate(_tuples(g, k))}
    rows = _tuples(g, k - 1)
    els = [x for x in range(g.order) if x != g.identity]
    entries = {}
    for r, tup in enumerate(rows):
        for x in els:
            entries[(r, idx[(x,) + tup])] = 1
    return IntMatrix(len(rows), len(idx), entries)


def verify_rational_exactness(g: MultTable, k: int, d_prev: IntMatrix | None = None) -> bool:
    """Check d^(k-1) h + h d^k = n * id on C^k, which forces H^k(G; Q) = 0 for k >= 1."""
    if k < 1:
        raise OracleError("rational exactness only holds in positive degrees")
    d_prev = d_prev if d_prev is not None else coboundary(g, k - 1)
    acc = dict((d_prev @ averaging_homotopy(g, k)).items())
    for key, v in (averaging_homotopy(g, k + 1) @ coboundary(g, k)).items():
        acc[key] = acc.get(key, 0) + v
    n = g.order
    if any(v for (i, j), v in acc.items() if i != j):
        return False
    return all(acc.get((i, i), 0) == n for i in range(d_prev.rows))


def bar_cohomology(g: MultTable, k: int, cap: int = DEFAULT_CAP) -> AbelianGroup:
    """H^k(G; Z) for k <= 4 as ker d^k / im d^(k-1).

    The torsion is read off from the elementary divisors of d^(k-1). The free
    rank in positive degrees is zero; each call checks the averaging homotopy
    that proves it rather than computing rank d^k.
    """
    if not 0 <= k <= 4:
        raise OracleError("degree must be between 0 and 4")
    _check_cap(g, cap)
    if k == 0:
        return AbelianGroup(free_rank=1)
    rows, ncols = coboundary_rows(g, k - 1)
    elim = eliminate(rows, ncols)
    if not verify_rational_exactness(g, k, IntMatrix.from_rows(rows, ncols)):
        raise OracleError("averaging homotopy check failed")
    return AbelianGroup.from_orders([d for d in elim.diagonal() if d != 1])


@dataclass
class H4Basis:
    """H^4(G; Z) as coker(d^3) together with coordinates for cocycles."""

    group: MultTable
    elimination: Elimination
    d4: IntMatrix
    tuples: list[tuple[int, ...]]
    torsion: list[tuple[int, int]] = field(default_factory=list)

    @property
    def orders(self) -> list[int]:
        return [d for _, d in self.torsion]

    @property
    def abelian_group(self) -> AbelianGroup:
        return AbelianGroup.from_orders(self.orders)

    def vector(self, cocycle: dict[tuple[int, ...], int] | list[int]) -> list[int]:
        if isinstance(cocycle, dict):
            pos = {t: i for i, t in enumerate(self.tuples)}
            vec = [0] * len(self.tuples)
            for t, v in cocycle.items():
                if t in pos:
                    vec[pos[t]] += v
                elif self.group.identity not in t:
                    raise OracleError(f"{t} is not a 4-tuple of group elements")
            return vec
        if len(cocycle) != len(self.tuples):
            raise OracleError("cochain has the wrong length")
        return list(cocycle)

    def is_cocycle(self, cocycle) -> bool:
        return not any(self.d4.apply(self.vector(cocycle)))

    def coordinates(self, cocycle) -> tuple[int, ...]:
        """Class of a cocycle in the basis of cyclic summands listed in ``orders``."""
        vec = self.vector(cocycle)
        if not self.is_cocycle(vec):
            raise OracleError("cochain is not a cocycle")
        z = self.elimination.replay(vec)
        pivot_rows = {i for i, _, _ in self.elimination.pivots}
        if any(v for i, v in enumerate(z) if i not in pivot_rows):
            raise OracleError("cocycle has a nonzero free coordinate")
        return tuple(z[row] % d for row, d in self.torsion)

    def generator(self, index: int) -> dict[tuple[int, ...], int]:
        """A cocycle representing the index-th cyclic summand."""
        row, _ = self.torsion[index]
        e = [0] * len(self.tuples)
        e[row] = 1
        vec = self.elimination.unreplay(e)
        return {t: v for t, v in zip(self.tuples, vec) if v}


def h4_basis(g: MultTable, cap: int = DEFAULT_CAP) -> H4Basis:
    _check_cap(g, cap)
    rows, ncols = coboundary_rows(g, 3)
    elim = eliminate(rows, ncols, keep_log=True)
    if not verify_rational_exactness(g, 4, IntMatrix.from_rows(rows, ncols)):
        raise OracleError("averaging homotopy check failed")
    torsion = sorted((i, abs(d)) for i, _, d in elim.pivots if abs(d) != 1)
    return H4Basis(g, elim, coboundary(g, 4), _tuples(g, 4), torsion)


def restriction_on_h4(
    g: MultTable,
    h_elements,
    cocycle: dict[tuple[int, ...], int],
    cap: int = DEFAULT_CAP,
) -> tuple[AbelianGroup, tuple[int, ...], list[int]]:
    """Restrict a 4-cocycle of G to the subgroup on h_elements.

    Returns (H^4(H) as a group, coordinates of the restricted class, and the
    orders of the cyclic summands the coordinates refer to).
    """
    _check_cap(g, cap)
    base = h4_basis(g, cap)
    if not base.is_cocycle(cocycle):
        raise OracleError("cochain is not a cocycle")
    sub, emb = g.subgroup(h_elements)
    hb = h4_basis(sub, cap)
    restricted = {}
    for t in hb.tuples:
        v = cocycle.get(tuple(emb[x] for x in t), 0)
        if v:
            restricted[t] = v
    return hb.abelian_group, hb.coordinates(restricted), hb.orders


def kunneth_h4(h_a: list[AbelianGroup], h_b: list[AbelianGroup]) -> AbelianGroup:
    """H^4(A x B) from H^0..H^5 of the factors via the Kunneth formula."""
    from math import gcd

    def tensor(x: AbelianGroup, y: AbelianGroup) -> list[int]:
        out = []
        if x.free_rank and y.free_rank:
            out.extend([0] * (x.free_rank * y.free_rank))
        for a in x.invariant_factors:
            out.extend([a] * y.free_rank)
            out.extend(gcd(a, b) for b in y.invariant_factors)
        for b in y.invariant_factors:
            out.extend([b] * x.free_rank)
        return out

    def tor(x: AbelianGroup, y: AbelianGroup) -> list[int]:
        return [gcd(a, b) for a in x.invariant_factors for b in y.invariant_factors]

    orders: list[int] = []
    for i in range(5):
        orders.extend(tensor(h_a[i], h_b[4 - i]))
    for i in range(6):
        j = 5 - i
        if j < len(h_b) and i < len(h_a):
            orders.extend(tor(h_a[i], h_b[j]))
    free = sum(1 for d in orders if d == 0)
    return AbelianGroup.from_orders([d for d in orders if d not in (0, 1)], free_rank=free)

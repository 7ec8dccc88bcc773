"""Low-degree spectral-sequence bookkeeping for group extensions.

A page holds the cells E_r^{i,j} with i + j <= 5. Cells are finite abelian
groups when their type is known, an exact order when only the order is
known, an upper bound "order divides N", or unknown. Differentials are
applied as kernel / image and every page turn is checked to be a
subquotient of the previous page.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from math import gcd
from pathlib import Path
from typing import Iterable, Mapping

from .exactalg import AbelianGroup, IntMatrix, cokernel_group, integer_kernel, valuation

MAX_TOTAL_DEGREE = 5
KINDS = ("zero", "injective", "multiplication", "matrix", "unknown")
DATA_DIR = Path(__file__).parent / "data" / "pages"


class PageError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    group: AbelianGroup | None = None
    order: int | None = None
    exact: bool = True
    provenance: str = "asserted-zero"

    def __post_init__(self) -> None:
        if self.group is not None:
            object.__setattr__(self, "order", self.group.order)
            object.__setattr__(self, "exact", True)
        elif self.order is not None and self.order < 1:
            raise PageError("cell order must be positive")

    @classmethod
    def of(cls, group, provenance: str) -> Cell:
        return cls(AbelianGroup.from_json(group), provenance=provenance)

    @classmethod
    def trivial(cls) -> Cell:
        return cls(AbelianGroup())

    @property
    def known(self) -> bool:
        return self.group is not None

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_free(self) -> bool:
        return self.group is not None and self.group.free_rank > 0

    def describe(self) -> str:
        if self.group is not None:
            return str(self.group)
        if self.order is None:
            return "?"
        return f"|{self.order}|" if self.exact else f"<={self.order}"

    def to_json(self) -> dict:
        out: dict = {"provenance": self.provenance}
        if self.group is not None:
            out["group"] = self.group.to_json()
        elif self.order is None:
            out["unknown"] = True
        elif self.exact:
            out["order"] = self.order
        else:
            out["order_divides"] = self.order
        return out


def _cell_from_json(data: Mapping) -> Cell:
    prov = str(data.get("provenance", "asserted"))
    if "group" in data:
        return Cell.of(data["group"], prov)
    if "order" in data:
        return Cell(order=int(data["order"]), provenance=prov)
    if "order_divides" in data:
        return Cell(order=int(data["order_divides"]), exact=False, provenance=prov)
    if data.get("unknown"):
        return Cell(provenance=prov)
    raise PageError(f"cell {data.get('i')},{data.get('j')} has no group, order, or unknown marker")


def _check_bidegree(i: int, j: int) -> None:
    if i < 0 or j < 0 or i + j > MAX_TOTAL_DEGREE:
        raise PageError(f"bidegree ({i},{j}) out of range")


@dataclass(frozen=True)
class Page:
    r: int
    cells: tuple[tuple[tuple[int, int], Cell], ...]
    name: str = ""

    def __getitem__(self, ij: tuple[int, int]) -> Cell:
        _check_bidegree(*ij)
        return dict(self.cells).get(tuple(ij), Cell.trivial())

    def nonzero(self) -> list[tuple[tuple[int, int], Cell]]:
        return [(ij, c) for ij, c in self.cells if not c.is_trivial]

    def diagonal(self, k: int) -> list[tuple[tuple[int, int], Cell]]:
        return [((i, k - i), self[(i, k - i)]) for i in range(k + 1)]

    def to_json(self) -> dict:
        return {
            "page": self.r,
            "cells": [{"i": i, "j": j, **c.to_json()} for (i, j), c in self.nonzero()],
        }

    def render(self) -> str:
        """Rows from j = 5 down to 0, as the page is usually drawn."""
        lines = []
        for j in range(MAX_TOTAL_DEGREE, -1, -1):
            row = [self[(i, j)].describe() if not self[(i, j)].is_trivial else "0"
                   for i in range(MAX_TOTAL_DEGREE - j + 1)]
            lines.append(f"j={j}: " + "  ".join(row))
        return "\n".join(lines)


def assemble_page(entries: Iterable, r: int = 2, name: str = "") -> Page:
    """Build a page from (i, j, cell) triples or cell dicts; missing cells are trivial.

    Row j = 1 must vanish: the fiber of a group extension is a finite group
    when these pages are used, and finite groups have H^1(E; Z) = 0.

    >>> assemble_page([]).nonzero()
    [((0, 0), Cell(group=AbelianGroup(invariant_factors=(), free_rank=1), order=None, exact=True, provenance='coefficient ring'))]
    """
    cells: dict[tuple[int, int], Cell] = {}
    for e in entries:
        if isinstance(e, Mapping):
            i, j, cell = int(e["i"]), int(e["j"]), _cell_from_json(e)
        else:
            i, j, cell = e
            if not isinstance(cell, Cell):
                cell = Cell.of(cell, "asserted")
        _check_bidegree(i, j)
        if (i, j) in cells:
            raise PageError(f"cell ({i},{j}) given twice")
        if j == 1 and not cell.is_trivial:
            raise PageError(f"cell ({i},1) must be trivial: H^1 of a finite fiber vanishes")
        cells[(i, j)] = cell
    cells.setdefault((0, 0), Cell(AbelianGroup(free_rank=1), provenance="coefficient ring"))
    return Page(r, tuple(sorted((ij, c) for ij, c in cells.items() if not c.is_trivial)), name)


@dataclass(frozen=True)
class DifferentialSpec:
    """d_r from source (i, j) to (i + r, j - r + 1).

    kind "multiplication" sends the generator of a cyclic source to k times
    the generator of a cyclic subgroup of order `into` in the target (the
    whole target when `into` is omitted). kind "matrix" gives the images of
    the source generators as columns over the target generators.
    """

    r: int
    source: tuple[int, int]
    kind: str
    k: int | None = None
    into: int | None = None
    matrix: tuple[tuple[int, ...], ...] | None = None
    provenance: str = "asserted"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise PageError(f"unknown differential kind {self.kind!r}")
        if self.r < 2:
            raise PageError("differentials start on page 2")
        object.__setattr__(self, "source", tuple(self.source))
        _check_bidegree(*self.source)
        if self.kind == "multiplication" and self.k is None:
            raise PageError("multiplication needs a factor k")
        if self.kind == "matrix" and self.matrix is None:
            raise PageError("matrix differential needs a matrix")

    @property
    def target(self) -> tuple[int, int]:
        i, j = self.source
        return (i + self.r, j - self.r + 1)

    @classmethod
    def from_json(cls, data: Mapping) -> DifferentialSpec:
        detail = dict(data.get("detail") or {})
        m = detail.get("matrix")
        return cls(
            r=int(data["r"]),
            source=tuple(data["source"]),
            kind=str(data["kind"]),
            k=detail.get("k"),
            into=detail.get("into"),
            matrix=tuple(tuple(int(x) for x in row) for row in m) if m is not None else None,
            provenance=str(data.get("provenance", "asserted")),
        )

    def to_json(self) -> dict:
        detail = {}
        if self.k is not None:
            detail["k"] = self.k
        if self.into is not None:
            detail["into"] = self.into
        if self.matrix is not None:
            detail["matrix"] = [list(row) for row in self.matrix]
        return {"r": self.r, "source": list(self.source), "target": list(self.target),
                "kind": self.kind, "detail": detail, "provenance": self.provenance}


def _lattice_basis(vectors: list[list[int]], dim: int) -> list[list[int]]:
    """Echelon basis of the integer span of vectors (rows), full rank assumed."""
    rows = [list(v) for v in vectors if any(v)]
    basis = []
    for c in range(dim):
        live = [v for v in rows if v[c]]
        rest = [v for v in rows if not v[c]]
        while len(live) > 1:
            live.sort(key=lambda v: abs(v[c]))
            piv = live[0]
            nxt = [piv]
            for v in live[1:]:
                q = v[c] // piv[c]
                w = [a - q * b for a, b in zip(v, piv)]
                (nxt if w[c] else rest).append(w)
            live = nxt
        if not live:
            raise PageError("lattice is not of full rank")
        piv = live[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = [v for v in rest if any(v)]
    return basis


def _coordinates(basis: list[list[int]], v: list[int]) -> list[int]:
    v = list(v)
    out = []
    for c, b in enumerate(basis):
        if v[c] % b[c]:
            raise PageError("vector is not in the lattice")
        q = v[c] // b[c]
        out.append(q)
        v = [a - q * x for a, x in zip(v, b)]
    if any(v):
        raise PageError("vector is not in the lattice")
    return out


def _columns(m: tuple[tuple[int, ...], ...], rows: int, cols: int) -> list[list[int]]:
    if len(m) != rows or any(len(row) != cols for row in m):
        raise PageError(f"matrix must be {rows} x {cols}")
    return [[m[a][b] for a in range(rows)] for b in range(cols)]


def subquotient(cell: AbelianGroup, out_cols: list[list[int]] | None, out_target: AbelianGroup | None,
                in_cols: list[list[int]] | None) -> AbelianGroup:
    """ker(out) / im(in) for maps given on invariant-factor generators.

    out_cols[b] is the image of generator b of `cell` in `out_target`;
    in_cols are images in `cell` of the incoming source generators.
    """
    t = list(cell.invariant_factors)
    n = len(t)
    if n == 0:
        return AbelianGroup()
    gens = [[t[a] if a == b else 0 for a in range(n)] for b in range(n)]
    if out_cols is not None and out_target is not None and out_target.invariant_factors:
        # x in ker iff sum x_b out_cols[b] lies in diag(target) Z
        bt = list(out_target.invariant_factors)
        rt = len(bt)
        big = IntMatrix.from_dense(
            [[out_cols[b][a] for b in range(n)] + [bt[a] if a == c else 0 for c in range(rt)] for a in range(rt)],
            n + rt,
        )
        kern = integer_kernel(big).to_dense()
        lattice = [[kern[a][c] for a in range(n)] for c in range(len(kern[0]) if kern else 0)]
        lattice += gens
    else:
        lattice = [[int(a == b) for a in range(n)] for b in range(n)]
    basis = _lattice_basis(lattice, n)
    rels = gens + [list(c) for c in (in_cols or [])]
    coords = [_coordinates(basis, v) for v in rels]
    return cokernel_group(IntMatrix.from_dense([[coords[c][a] for c in range(len(coords))] for a in range(n)],
                                               len(coords)))


@dataclass
class _Effect:
    kernel_group: AbelianGroup | None = None
    kernel_order: int | None = None
    kernel_exact: bool = True
    out_cols: list[list[int]] | None = None
    out_target: AbelianGroup | None = None
    image_order: int | None = None
    in_cols: list[list[int]] | None = None
    notes: list[str] = field(default_factory=list)


def _order_in(k: int, b: int) -> int:
    return b // gcd(b, k % b) if b > 1 else 1


def _analyze(d: DifferentialSpec, src: Cell, tgt: Cell) -> tuple[_Effect, _Effect]:
    """Effects on the source (kernel) and on the target (image)."""
    out, inc = _Effect(), _Effect()
    if d.kind in ("zero", "unknown"):
        out.kernel_group, out.kernel_order, out.kernel_exact = src.group, src.order, src.exact
        inc.image_order = 1
        return out, inc
    if src.is_free or tgt.is_free:
        if d.kind == "injective" and src.is_free:
            raise PageError(f"d_{d.r} from {d.source}: a free group cannot inject into a finite cell")
        raise PageError(f"d_{d.r} from {d.source}: nonzero maps between free cells are not supported")
    if d.kind == "injective":
        if src.order is None or not src.exact:
            raise PageError(f"d_{d.r} injective from {d.source} needs a source of known order")
        if tgt.order is not None and tgt.order % src.order:
            raise PageError(f"d_{d.r}: source order {src.order} does not divide target order {tgt.order}")
        out.kernel_group = AbelianGroup()
        out.kernel_order = 1
        inc.image_order = src.order
        if src.group is not None and tgt.group is not None and tgt.group.is_cyclic and src.group.is_cyclic:
            b = tgt.order
            inc.in_cols = [[b // src.order]] if b > 1 else []
        return out, inc
    if d.kind == "multiplication":
        if src.group is None or not src.group.is_cyclic:
            raise PageError(f"d_{d.r} multiplication from {d.source} needs a cyclic source")
        a = src.order
        into = d.into
        if into is None:
            if tgt.group is None or not tgt.group.is_cyclic:
                raise PageError(f"d_{d.r}: multiplication into a noncyclic target needs 'into'")
            into = tgt.order
        if tgt.order is not None and tgt.order % into:
            raise PageError(f"d_{d.r}: subgroup order {into} does not divide target order {tgt.order}")
        if (a * d.k) % into:
            raise PageError(f"d_{d.r}: 1 -> {d.k} is not well defined from Z/{a} to Z/{into}")
        o = _order_in(d.k, into)
        out.kernel_order = a // o
        out.kernel_group = AbelianGroup.cyclic(a // o)
        inc.image_order = o
        if tgt.group is not None and tgt.group.is_cyclic and a > 1:
            b = tgt.order
            out.out_cols = [[d.k * (b // into) % b]] if b > 1 else [[]]
            out.out_target = tgt.group
            inc.in_cols = [[d.k * (b // into) % b]] if b > 1 else []
        return out, inc
    # matrix
    if src.group is None or tgt.group is None:
        raise PageError(f"d_{d.r} matrix from {d.source} needs both cells of known type")
    sa, tb = list(src.group.invariant_factors), list(tgt.group.invariant_factors)
    cols = _columns(d.matrix, len(tb), len(sa))
    for b, a in enumerate(sa):
        for row, t in enumerate(tb):
            if (a * cols[b][row]) % t:
                raise PageError(f"d_{d.r}: generator {b} of order {a} cannot map to {cols[b][row]} mod {t}")
    kern = subquotient(src.group, cols, tgt.group, None)
    out.kernel_group, out.kernel_order = kern, kern.order
    out.out_cols, out.out_target = cols, tgt.group
    inc.image_order = src.order // kern.order
    inc.in_cols = cols
    return out, inc


def turn_page(page: Page, diffs: Iterable[DifferentialSpec]) -> Page:
    """E_{r+1} from E_r and the d_r listed; cells without listed maps keep their value."""
    diffs = list(diffs)
    outgoing: dict[tuple[int, int], DifferentialSpec] = {}
    for d in diffs:
        if d.r != page.r:
            raise PageError(f"differential d_{d.r} supplied on page {page.r}")
        ti, tj = d.target
        if tj < 0 or ti + tj > MAX_TOTAL_DEGREE:
            if d.kind in ("zero", "unknown"):
                continue
            raise PageError(f"d_{d.r} from {d.source} lands outside the tracked range")
        if d.source in outgoing:
            raise PageError(f"two differentials leave {d.source}")
        outgoing[d.source] = d
    out_eff: dict[tuple[int, int], tuple[_Effect, DifferentialSpec]] = {}
    in_eff: dict[tuple[int, int], tuple[_Effect, DifferentialSpec]] = {}
    for src, d in outgoing.items():
        o, i = _analyze(d, page[src], page[d.target])
        out_eff[src] = (o, d)
        in_eff[d.target] = (i, d)
    cells = dict(page.cells)
    for ij in set(out_eff) | set(in_eff):
        old = page[ij]
        o = out_eff.get(ij)
        i = in_eff.get(ij)
        new = _combine(old, o[0] if o else None, i[0] if i else None)
        notes = []
        if o and o[1].kind not in ("zero", "unknown"):
            notes.append(f"ker d_{page.r} ({o[1].kind})")
        if i and i[1].kind not in ("zero", "unknown"):
            notes.append(f"mod im d_{page.r} ({i[1].kind})")
        if notes:
            new = replace(new, provenance=f"E{page.r + 1}: " + ", ".join(notes) + f"; from {old.provenance}")
        else:
            new = replace(new, provenance=old.provenance)
        _check_subquotient(ij, old, new)
        cells[ij] = new
    turned = Page(page.r + 1, tuple(sorted((ij, c) for ij, c in cells.items() if not c.is_trivial)), page.name)
    for (ij, c) in page.cells:
        _check_subquotient(ij, c, turned[ij])
    return turned


def _combine(old: Cell, out: _Effect | None, inc: _Effect | None) -> Cell:
    o_img = inc.image_order if inc else 1
    if out is None:
        k_group, k_order, k_exact = old.group, old.order, old.exact
    else:
        k_group, k_order, k_exact = out.kernel_group, out.kernel_order, out.kernel_exact
    if o_img == 1:
        return Cell(k_group, k_order if k_group is None else None, k_exact)
    if k_order is not None and k_order % o_img:
        raise PageError(f"image of order {o_img} does not fit in a kernel of order {k_order}")
    whole_kernel = out is None or out.kernel_order == old.order
    if old.group is not None and inc is not None and inc.in_cols is not None:
        if whole_kernel or out.out_cols is not None:
            cols = None if whole_kernel else out.out_cols
            tgt = None if whole_kernel else out.out_target
            return Cell(subquotient(old.group, cols, tgt, inc.in_cols))
    if k_order is None:
        return Cell(None, None)
    rest = k_order // o_img
    if old.group is not None and old.group.is_cyclic:
        return Cell(AbelianGroup.cyclic(rest))
    return Cell(None, rest, k_exact)


def _check_subquotient(ij, old: Cell, new: Cell) -> None:
    if old.order is None or new.order is None:
        if old.order is not None and new.order is None:
            raise PageError(f"cell {ij} lost its order bound")
        return
    if old.order % new.order:
        raise PageError(f"cell {ij}: order {new.order} is not a subquotient of order {old.order}")


def degree_order_bound(page: Page, k: int, p: int | None = None) -> int:
    """Product of the cell orders on the diagonal i + j = k (p-parts when p is given)."""
    total = 1
    for ij, c in page.diagonal(k):
        if c.is_free:
            raise PageError(f"free cell at {ij} in total degree {k}")
        if c.order is None:
            raise PageError(f"cell {ij} in total degree {k} is unknown")
        total *= c.order if p is None else p ** valuation(c.order, p)
    return total


def degree4_order_bound(page: Page, p: int | None = None) -> int:
    """Upper bound on |H^4| of the total group read off this page.

    >>> degree4_order_bound(assemble_page([(2, 2, [2]), (4, 0, [12])]))
    24
    """
    return degree_order_bound(page, 4, p)


def bound_report(page: Page, k: int = 4, p: int | None = None) -> dict:
    return {"degree": k, "prime": p, "page": page.r, "bound": degree_order_bound(page, k, p),
            "label": f"upper bound at page {page.r}"}


# Pages for central extensions n -> nG -> G.

def leibniz_square(d_y: int, n: int) -> int:
    """Coefficient of d(y^2) on xy given d(y) = d_y x: d(y^2) = 2 y d(y)."""
    return (2 * d_y) % n if n > 1 else 0


@dataclass(frozen=True)
class SchurCoverData:
    p: int
    n: int
    big_n: int
    h4: AbelianGroup | None = None
    h5: AbelianGroup | None = None
    hom_h3: AbelianGroup | None = None

    def __post_init__(self) -> None:
        for name, v in (("n", self.n), ("N", self.big_n)):
            if v < 2 or valuation(v, self.p) == 0 or v != self.p ** valuation(v, self.p):
                raise PageError(f"{name} = {v} must be a nontrivial power of {self.p}")
        if self.big_n % self.n:
            raise PageError("n must divide N: the central subgroup sits inside the multiplier")


def schur_cover_page(data: SchurCoverData) -> Page:
    """E_2 for nG -> G, p-locally, with H_1(G)_(p) = 0 and H_2(G)_(p) = Z/N."""
    n, N = data.n, data.big_n
    entries = [
        (0, 2, Cell(AbelianGroup.cyclic(n), provenance="H^0(G; H^2(Z/n)) = (Z/n) y")),
        (0, 4, Cell(AbelianGroup.cyclic(n), provenance="H^0(G; H^4(Z/n)) = (Z/n) y^2")),
        (2, 2, Cell(AbelianGroup.cyclic(n), provenance="H^2(G; Z/n) = Z/n for H_2 cyclic and H_1 = 0")),
        (3, 0, Cell(AbelianGroup.cyclic(N), provenance="H^3(G)_(p) = Z/N, dual to H_2")),
    ]
    if data.hom_h3 is not None:
        h32 = AbelianGroup.cyclic(n).direct_sum(data.hom_h3)
        if data.hom_h3.is_trivial:
            entries.append((3, 2, Cell(h32, provenance="H^3(G; Z/n) = H^3 (x) Z/n")))
        else:
            entries.append((3, 2, Cell(order=h32.order, provenance="H^3(G; Z/n), extension of Hom(H_3, Z/n) by Z/n")))
    else:
        entries.append((3, 2, Cell(provenance="H^3(G; Z/n): contains (Z/n) xy, rest unknown")))
    entries.append((4, 0, Cell(data.h4, provenance="H^4(G)_(p)") if data.h4 is not None
                    else Cell(provenance="H^4(G)_(p) unknown")))
    entries.append((5, 0, Cell(data.h5, provenance="H^5(G)_(p)") if data.h5 is not None
                    else Cell(provenance="H^5(G)_(p) unknown")))
    return assemble_page(entries, 2, name=f"central extension by Z/{n}, H_2 = Z/{N}")


def schur_cover_differentials(data: SchurCoverData) -> dict[int, list[DifferentialSpec]]:
    """d_2 = 0 by degree; d_3 y = (N/n) x and, by the Leibniz rule, d_3 y^2 = (2N/n) xy."""
    n, N = data.n, data.big_n
    d_y = N // n
    d_y2 = leibniz_square(d_y, n)
    if d_y2 != (2 * N // n) % n:
        raise AssertionError("Leibniz rule disagrees with the closed form 2N/n")
    d3 = [
        DifferentialSpec(3, (0, 2), "multiplication", k=d_y,
                         provenance="pullback along the cover kills a subgroup of order n in H^3, so d_3 y is injective"),
        DifferentialSpec(3, (0, 4), "multiplication", k=d_y2, into=n,
                         provenance="Leibniz: d_3(y^2) = 2 y d_3(y)"),
    ]
    return {2: [], 3: d3}


@dataclass(frozen=True)
class CoverBound:
    p: int
    n: int
    big_n: int
    divisor: int
    central_image: tuple[tuple[int, int], ...]  # (m, bound on the image of restriction to the central Z/m)
    consequences: tuple[str, ...]
    page: Page

    def to_json(self) -> dict:
        return {
            "p": self.p, "n": self.n, "H2": self.big_n, "cokernel_divides": self.divisor,
            "central_restriction_image_divides": {str(m): o for m, o in self.central_image},
            "consequences": list(self.consequences),
            "page": self.page.to_json(),
        }


def cover_cokernel_bound(p: int, h2: int, n: int | None = None, *, h1_trivial: bool = False,
                         h2_cyclic: bool = False) -> CoverBound:
    """Order bound on coker(H^4(G) -> H^4(nG)) together with central restriction constraints.

    The cokernel is filtered by E_inf^{2,2} and E_inf^{0,4}; the restriction
    of any class to the central Z/n lands in E_inf^{0,4} inside (Z/n) y^2.

    >>> [cover_cokernel_bound(*a, h1_trivial=True, h2_cyclic=True).divisor for a in [(3, 3), (2, 4, 4), (2, 2)]]
    [3, 8, 4]
    """
    if not h1_trivial:
        raise PageError("H_1(G)_(p) = 0 must be asserted")
    if not h2_cyclic:
        raise PageError("H_2(G)_(p) cyclic must be asserted")
    if n is None:
        n = p
    data = SchurCoverData(p, n, h2)
    page = schur_cover_page(data)
    diffs = schur_cover_differentials(data)
    e3 = turn_page(page, diffs[2])
    e4 = turn_page(e3, diffs[3])
    top = e4[(0, 4)]
    divisor = top.order * e4[(2, 2)].order
    # E_inf^{0,4} is the subgroup of (Z/n) y^2 generated by (n / |top|) y^2
    gen = n // top.order
    central = []
    m = p
    while m <= n:
        central.append((m, _order_in(gen, m)))
        m *= p
    cons = []
    if top.is_trivial:
        cons.append(f"all classes of H^4(nG) restrict trivially to the central Z/{n}")
    else:
        cons.append(f"a cokernel of order {divisor} forces a class with nontrivial restriction to the central Z/{n}")
        for m, o in central:
            if o == 1:
                cons.append(f"all classes of H^4(nG) vanish on the central Z/{m}")
    return CoverBound(p, n, h2, divisor, tuple(central), tuple(cons), e4)


# Page files.

@dataclass(frozen=True)
class PageRun:
    name: str
    prime: int | None
    pages: tuple[Page, ...]
    differentials: tuple[DifferentialSpec, ...]
    bounds: tuple[int, ...]

    @property
    def final(self) -> Page:
        return self.pages[-1]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "prime": self.prime,
            "pages": [p.to_json() for p in self.pages],
            "differentials": [d.to_json() for d in self.differentials],
            "degree4_bounds": list(self.bounds),
            "bound": self.bounds[-1],
            "label": f"upper bound at page {self.final.r}",
        }


def load_page_document(source) -> dict:
    if isinstance(source, Mapping):
        return dict(source)
    path = Path(source)
    if not path.exists() and not path.suffix:
        candidate = DATA_DIR / f"{source}.json"
        if candidate.exists():
            path = candidate
    return json.loads(path.read_text())


def run_page_document(doc: Mapping) -> PageRun:
    prime = doc.get("prime")
    prime = int(prime) if prime is not None else None
    if "schur_cover" in doc:
        sc = doc["schur_cover"]
        grp = lambda key: AbelianGroup.from_json(sc[key]) if sc.get(key) is not None else None  # noqa: E731
        data = SchurCoverData(int(sc["p"]), int(sc["n"]), int(sc["N"]), grp("H4"), grp("H5"), grp("hom_H3"))
        page = schur_cover_page(data)
        by_r = schur_cover_differentials(data)
        prime = prime or data.p
    else:
        page = assemble_page(doc.get("cells", []), int(doc.get("page", 2)))
        by_r = {}
        for d in doc.get("differentials", []):
            spec = DifferentialSpec.from_json(d)
            by_r.setdefault(spec.r, []).append(spec)
    name = str(doc.get("name", page.name))
    page = replace(page, name=name)
    pages = [page]
    applied: list[DifferentialSpec] = []
    bounds = [_maybe_bound(page, prime)]
    last = max(by_r) if by_r else page.r - 1
    for r in range(page.r, last + 1):
        diffs = by_r.get(r, [])
        page = turn_page(page, diffs)
        applied.extend(diffs)
        pages.append(page)
        b = _maybe_bound(page, prime)
        if b is not None and bounds[-1] is not None and bounds[-1] % b:
            raise AssertionError("degree-four bound increased across a page turn")
        bounds.append(b)
    return PageRun(name, prime, tuple(pages), tuple(applied), tuple(bounds))


def _maybe_bound(page: Page, prime: int | None) -> int | None:
    try:
        return degree4_order_bound(page, prime)
    except PageError:
        return None


def run_page_file(source) -> PageRun:
    return run_page_document(load_page_document(source))


def bundled_pages() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.json"))

"""F_p representations given by generator matrices, and the functors used on them.

Matrices act on column vectors. Bases are fixed so functor matrices are
reproducible: Sym^2 uses x_i x_j with i <= j, Alt^k uses increasing tuples,
both in lexicographic order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from ..exactalg import FpMatrix, kernel_mod_p
from ..exactalg.fpmatrix import _rref, stack

FUNCTORS = ("dual", "sym2", "alt2", "alt3", "tensor_line", "omega_complement", "quotient_by_wedge")


class ModuleError(ValueError):
    pass


@dataclass(frozen=True)
class ModuleWithAction:
    """A d-dimensional F_p vector space with a group acting through generator matrices."""

    p: int
    dimension: int
    generators: tuple[FpMatrix, ...]
    name: str = ""
    provenance: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.p != self.p or g.shape != (self.dimension, self.dimension):
                raise ModuleError(f"generator {g!r} does not fit a {self.dimension}-dimensional F_{self.p} module")
            if self.dimension and not g.is_invertible():
                raise ModuleError("generator matrices must be invertible")

    @classmethod
    def from_lists(cls, p: int, mats: Sequence[Sequence[Sequence[int]]], name: str = "") -> ModuleWithAction:
        gens = tuple(FpMatrix(p, m) for m in mats)
        dim = gens[0].rows if gens else 0
        return cls(p, dim, gens, name)

    @classmethod
    def trivial(cls, p: int, dimension: int, count: int = 1) -> ModuleWithAction:
        return cls(p, dimension, tuple(FpMatrix.identity(p, dimension) for _ in range(count)), f"trivial F_{p}^{dimension}")

    def word(self, letters: Sequence[int]) -> FpMatrix:
        """Product of generators; letter k >= 0 means generator k, -k-1 its inverse."""
        out = FpMatrix.identity(self.p, self.dimension)
        for a in letters:
            g = self.generators[a] if a >= 0 else self.generators[-a - 1].inverse()
            out = out @ g
        return out

    def direct_sum(self, other: ModuleWithAction) -> ModuleWithAction:
        if other.p != self.p or len(other.generators) != len(self.generators):
            raise ModuleError("direct sum needs the same field and generator count")
        d1, d2 = self.dimension, other.dimension
        gens = []
        for a, b in zip(self.generators, other.generators):
            rows = [list(r) + [0] * d2 for r in a.data] + [[0] * d1 + list(r) for r in b.data]
            gens.append(FpMatrix(self.p, rows, d1 + d2))
        return ModuleWithAction(self.p, d1 + d2, tuple(gens), f"{self.name} + {other.name}")

    def __repr__(self) -> str:
        return f"ModuleWithAction(p={self.p}, dim={self.dimension}, gens={len(self.generators)}, name={self.name!r})"


def _minor(m: FpMatrix, rows: Sequence[int], cols: Sequence[int]) -> int:
    k = len(rows)
    total = 0
    for perm in itertools.permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(k):
            term *= m.data[rows[i]][cols[perm[i]]]
        total += term
    return total % m.p


def alt_basis(d: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(d), k))


def sym2_basis(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i, d)]


def dual_matrix(g: FpMatrix) -> FpMatrix:
    """Action on the dual space: the inverse transpose."""
    return g.inverse().transpose()


def sym2_matrix(g: FpMatrix) -> FpMatrix:
    d = g.rows
    basis = sym2_basis(d)
    pos = {b: k for k, b in enumerate(basis)}
    out = [[0] * len(basis) for _ in basis]
    for col, (i, j) in enumerate(basis):
        for a in range(d):
            gai = g.data[a][i]
            if not gai:
                continue
            for b in range(d):
                c = gai * g.data[b][j]
                if c:
                    out[pos[(min(a, b), max(a, b))]][col] += c
    return FpMatrix(g.p, out, len(basis))


def alt_matrix(g: FpMatrix, k: int) -> FpMatrix:
    """k-th exterior power in the lexicographic basis of increasing tuples."""
    basis = alt_basis(g.rows, k)
    if not basis:
        return FpMatrix(g.p, [], 0)
    return FpMatrix(g.p, [[_minor(g, t, s) for s in basis] for t in basis], len(basis))


def wedge(p: int, d: int, left: Sequence[int], right: Sequence[int], k_left: int, k_right: int) -> list[int]:
    """Product of coordinate vectors in Alt^k_left and Alt^k_right."""
    lb, rb = alt_basis(d, k_left), alt_basis(d, k_right)
    target = alt_basis(d, k_left + k_right)
    pos = {t: i for i, t in enumerate(target)}
    out = [0] * len(target)
    for a, s in zip(left, lb):
        if not a:
            continue
        for b, t in zip(right, rb):
            if not b or set(s) & set(t):
                continue
            seq = list(s) + list(t)
            inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
            out[pos[tuple(sorted(seq))]] += (-1) ** inversions * a * b
    return [x % p for x in out]


def alternating_to_vector(p: int, omega: Sequence[Sequence[int]]) -> list[int]:
    """Coordinates of an alternating matrix in the basis e_i ^ e_j, i < j."""
    d = len(omega)
    for i in range(d):
        if omega[i][i] % p:
            raise ModuleError("form has a nonzero diagonal entry")
        for j in range(d):
            if (omega[i][j] + omega[j][i]) % p:
                raise ModuleError("form is not skew-symmetric")
    return [omega[i][j] % p for i, j in alt_basis(d, 2)]


def line_scalars(m: ModuleWithAction, omega: Sequence[Sequence[int]]) -> list[int]:
    """Scalars by which each generator scales omega inside Alt^2 of the module."""
    vec = alternating_to_vector(m.p, omega)
    if not any(vec):
        raise ModuleError("omega is zero")
    lead = next(i for i, x in enumerate(vec) if x)
    out = []
    for g in m.generators:
        img = alt_matrix(g, 2).apply(vec)
        lam = img[lead] * pow(vec[lead], -1, m.p) % m.p
        if any((x - lam * y) % m.p for x, y in zip(img, vec)):
            raise ModuleError("omega does not span an invariant line")
        out.append(lam)
    return out


def find_invariant_line(m: ModuleWithAction, max_search: int = 4096) -> list[list[int]] | None:
    """An alternating form spanning a generator-stable line in Alt^2, searched over scalar patterns."""
    p, d = m.p, m.dimension
    if (p - 1) ** len(m.generators) > max_search:
        raise ModuleError("scalar search space too large; supply omega explicitly")
    alts = [alt_matrix(g, 2) for g in m.generators]
    size = comb(d, 2)
    for lams in itertools.product(range(1, p), repeat=len(alts)):
        blocks = [a - FpMatrix.identity(p, size).scale(lam) for a, lam in zip(alts, lams)]
        ker = kernel_mod_p(stack(blocks))
        if len(ker) == 1:
            w = [[0] * d for _ in range(d)]
            for (i, j), x in zip(alt_basis(d, 2), ker[0]):
                w[i][j] = x
                w[j][i] = (-x) % p
            return w
    return None


def _quotient_action(p: int, mats: Sequence[FpMatrix], sub: list[list[int]], dim: int) -> list[FpMatrix]:
    """Induced action on F_p^dim / span(sub); sub must be stable under every matrix."""
    red, piv = _rref(p, [list(v) for v in sub], dim)
    red = [r for r in red if any(r)]
    piv = piv[: len(red)]
    comp = [c for c in range(dim) if c not in piv]

    def reduce(v: list[int]) -> list[int]:
        v = list(v)
        for row, pc in zip(red, piv):
            f = v[pc]
            if f:
                v = [(x - f * y) % p for x, y in zip(v, row)]
        return v

    for g in mats:
        for row in red:
            if any(reduce(list(g.apply(row)))):
                raise ModuleError("subspace is not invariant")
    out = []
    for g in mats:
        cols = []
        for c in comp:
            e = [0] * dim
            e[c] = 1
            img = reduce(list(g.apply(e)))
            cols.append([img[x] for x in comp])
        out.append(FpMatrix(p, [[cols[j][i] for j in range(len(comp))] for i in range(len(comp))], len(comp)))
    return out


def module_functor(kind: str, m: ModuleWithAction, aux: dict | None = None) -> ModuleWithAction:
    """Apply a functor to a module.

    ``aux`` may carry ``omega`` (an alternating matrix on the module, i.e. an
    element of its Alt^2), ``power`` for tensor_line, and ``scalars`` to
    override the scalars computed from omega.

    >>> e = ModuleWithAction.trivial(3, 6)
    >>> module_functor("alt3", e).dimension
    20
    """
    aux = aux or {}
    p, d = m.p, m.dimension
    gens = m.generators
    if kind == "dual":
        return ModuleWithAction(p, d, tuple(dual_matrix(g) for g in gens), f"({m.name})*")
    if kind == "sym2":
        return ModuleWithAction(p, d * (d + 1) // 2, tuple(sym2_matrix(g) for g in gens), f"Sym2({m.name})")
    if kind in ("alt2", "alt3"):
        k = int(kind[-1])
        return ModuleWithAction(p, comb(d, k), tuple(alt_matrix(g, k) for g in gens), f"Alt{k}({m.name})")
    if kind not in FUNCTORS:
        raise ModuleError(f"unknown functor {kind!r}; expected one of {', '.join(FUNCTORS)}")
    omega = aux.get("omega")
    if kind == "tensor_line":
        scalars = aux.get("scalars")
        if scalars is None:
            if omega is None:
                raise ModuleError("tensor_line needs omega or explicit scalars")
            scalars = line_scalars(m, omega)
        if len(scalars) != len(gens):
            raise ModuleError("need one scalar per generator")
        k = int(aux.get("power", 1))
        out = tuple(g.scale(pow(int(s), k, p)) for g, s in zip(gens, scalars))
        return ModuleWithAction(p, d, out, f"{m.name} (x) L^{k}")
    if omega is None:
        raise ModuleError(f"{kind} needs omega")
    vec = alternating_to_vector(p, omega)
    if kind == "omega_complement":
        # Alt^2 / L_omega; the complement and the quotient agree when the line splits off
        line_scalars(m, omega)
        mats = [alt_matrix(g, 2) for g in gens]
        out = _quotient_action(p, mats, [vec], comb(d, 2))
        return ModuleWithAction(p, comb(d, 2) - 1, tuple(out), f"Alt2({m.name})_omega")
    # quotient_by_wedge: Alt^3 / (module ^ omega)
    if not _nondegenerate(p, omega):
        raise ModuleError("quotient_by_wedge needs a nondegenerate omega")
    line_scalars(m, omega)
    sub = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        sub.append(wedge(p, d, e, vec, 1, 2))
    mats = [alt_matrix(g, 3) for g in gens]
    out = _quotient_action(p, mats, sub, comb(d, 3))
    dim = out[0].rows if out else comb(d, 3) - _rank(p, sub, comb(d, 3))
    return ModuleWithAction(p, dim, tuple(out), f"Alt3({m.name})/({m.name} ^ omega)")


def _rank(p: int, vecs, dim: int) -> int:
    return len(_rref(p, [list(v) for v in vecs], dim)[1]) if vecs else 0


def _nondegenerate(p: int, omega) -> bool:
    return FpMatrix(p, omega).is_invertible()


def fixed_points(m: ModuleWithAction) -> tuple[int, list[tuple[int, ...]]]:
    """Dimension and echelonized basis of the common fixed space of all generators."""
    if m.dimension == 0:
        return 0, []
    if not m.generators:
        basis = kernel_mod_p(FpMatrix.zeros(m.p, 1, m.dimension))
        return len(basis), basis
    ident = FpMatrix.identity(m.p, m.dimension)
    basis = kernel_mod_p(stack([g - ident for g in m.generators]))
    return len(basis), basis


def apply_functors(m: ModuleWithAction, chain: Sequence[str], aux: dict | None = None) -> ModuleWithAction:
    """Apply functors left to right, e.g. ["dual", "sym2"]."""
    aux = dict(aux or {})
    for kind in chain:
        if kind in ("tensor_line", "omega_complement", "quotient_by_wedge") and "omega" not in aux:
            w = find_invariant_line(m)
            if w is None:
                raise ModuleError("no invariant line in Alt^2 found; supply omega")
            aux["omega"] = w
        m = module_functor(kind, m, aux)
        if kind == "dual" and "omega" in aux:
            # a form on the old space is no longer meaningful
            aux.pop("omega")
    return m


def parse_matrices(text: str, p: int | None = None) -> tuple[int, list[list[list[int]]]]:
    """Read matrices separated by blank lines; '.' stands for 0.

    An optional header line ``p <prime>`` sets the field; lines starting with
    '#' are ignored. Returns (p, matrices).
    """
    blocks: list[list[list[int]]] = []
    cur: list[list[int]] = []
    header_p = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.lower().startswith("p ") or line.lower().startswith("p="):
            header_p = int(line[1:].strip(" ="))
            continue
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        tokens = line.split() if " " in line or "\t" in line else list(line)
        cur.append([0 if t == "." else int(t) for t in tokens])
    if cur:
        blocks.append(cur)
    prime = p if p is not None else header_p
    if prime is None:
        raise ModuleError("matrix file does not declare a prime; add a 'p <prime>' line")
    for b in blocks:
        if any(len(r) != len(b) for r in b):
            raise ModuleError("matrices must be square")
        if any(not 0 <= x < prime for r in b for x in r):
            raise ModuleError(f"entries must lie in 0..{prime - 1}")
    if not blocks:
        raise ModuleError("no matrices found")
    return prime, blocks


def format_matrices(p: int, mats: Sequence[FpMatrix]) -> str:
    lines = [f"p {p}"]
    for m in mats:
        lines.append("")
        lines.extend(" ".join("." if x == 0 else str(x) for x in row) for row in m.data)
    return "\n".join(lines) + "\n"


def load_module(path, p: int | None = None, name: str | None = None) -> ModuleWithAction:
    from pathlib import Path

    prime, mats = parse_matrices(Path(path).read_text(encoding="utf-8"), p)
    return ModuleWithAction.from_lists(prime, mats, name or Path(path).stem)

"""Low-degree integral cohomology of elementary abelian and extraspecial p-groups in closed form."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from ..exactalg import AbelianGroup, FpMatrix
from ..exactalg.abelian import is_prime
from .forms import QuadraticForm, SymplecticForm, quadratic_form_analyze
from .module import ModuleWithAction, line_scalars, module_functor


@dataclass(frozen=True)
class Layer:
    """One subquotient of a filtration: a module, or just a cyclic order when it is not an F_p-module."""

    label: str
    order: int
    module: ModuleWithAction | None = None
    split: bool | None = None  # None when the extension with the layers below is not determined


@dataclass(frozen=True)
class CohomologyDescription:
    """H^j of a p-group: order, known isomorphism type (if any), and a filtration bottom first."""

    degree: int
    order: int
    group: AbelianGroup | None
    layers: tuple[Layer, ...]
    exponent_bound: int | None = None
    unknown_extension: bool = False
    lower_degrees: dict[int, Layer] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        prod = 1
        for layer in self.layers:
            prod *= layer.order
        if self.layers and prod != self.order:
            raise ValueError(f"layer orders multiply to {prod}, not {self.order}")
        if self.group is not None and self.group.order != self.order:
            raise ValueError("group and order disagree")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "group": None if self.group is None else self.group.to_json(),
            "group_text": None if self.group is None else str(self.group),
            "exponent_bound": self.exponent_bound,
            "unknown_extension": self.unknown_extension,
            "layers": [
                {"label": l.label, "order": l.order, "dimension": None if l.module is None else l.module.dimension, "split": l.split}
                for l in self.layers
            ],
            "lower_degrees": {
                str(k): {"label": l.label, "order": l.order} for k, l in sorted(self.lower_degrees.items())
            },
            "notes": list(self.notes),
        }


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = [q for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)]
    return next(g for g in range(2, p) if all(pow(g, (p - 1) // q, p) != 1 for q in factors))


def _transvection(p: int, n: int, i: int, j: int, c: int = 1) -> FpMatrix:
    rows = [[int(a == b) for b in range(n)] for a in range(n)]
    rows[i][j] = (rows[i][j] + c) % p
    return FpMatrix(p, rows, n)


def gl_generators(p: int, n: int) -> list[FpMatrix]:
    """Adjacent transvections in both directions plus diag(primitive root, 1, ..., 1)."""
    gens = []
    for i in range(n - 1):
        gens.append(_transvection(p, n, i, i + 1))
        gens.append(_transvection(p, n, i + 1, i))
    g = _primitive_root(p)
    if g != 1:
        gens.append(FpMatrix(p, [[g if a == b == 0 else int(a == b) for b in range(n)] for a in range(n)], n))
    if not gens:
        gens.append(FpMatrix.identity(p, n))
    return gens


def gsp_generators(p: int, m: int) -> list[tuple[FpMatrix, int]]:
    """Symplectic transvections on basis vectors and pair sums, plus one similitude with a primitive scalar."""
    w = SymplecticForm.standard(p, m)
    d = 2 * m
    vecs = []
    for i in range(d):
        vecs.append([int(k == i) for k in range(d)])
    for i in range(d - 1):
        vecs.append([int(k in (i, i + 1)) for k in range(d)])
    out = []
    for v in vecs:
        # x -> x + omega(v, x) v
        rows = [[int(a == b) for b in range(d)] for a in range(d)]
        for a in range(d):
            for b in range(d):
                rows[a][b] += v[a] * sum(v[r] * w.matrix[r][b] for r in range(d))
        out.append(FpMatrix(p, rows, d))
    a = _primitive_root(p)
    out.append(FpMatrix(p, [[(a if k < m else 1) if k == l else 0 for l in range(d)] for k in range(d)], d))
    return [(g, w.similitude_scalar(g)) for g in out]


def orthogonal_generators(q: QuadraticForm, max_weight: int = 2) -> list[FpMatrix]:
    """Orthogonal transvections x -> x + B(x, v) v for nonsingular v of small support."""
    n = q.rank
    b = q.polar()
    gens = []
    for weight in range(1, max_weight + 1):
        for support in combinations(range(n), weight):
            v = [int(k in support) for k in range(n)]
            if q(v) != 1:
                continue
            rows = [[int(a == c) for c in range(n)] for a in range(n)]
            for a in range(n):
                for c in range(n):
                    rows[a][c] += v[a] * sum(v[r] * b[r, c] for r in range(n))
            gens.append(FpMatrix(2, rows, n))
    return gens or [FpMatrix.identity(2, n)]


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def elem_abelian_cohomology(p: int, n: int, j: int) -> CohomologyDescription:
    """H^j((Z/p)^n; Z) for j = 2, 3, 4 with the GL_n(F_p) action on standard generators.

    >>> elem_abelian_cohomology(2, 2, 4).order
    8
    >>> str(elem_abelian_cohomology(3, 2, 4).group)
    '3^3'
    """
    _check_prime(p)
    if n < 1:
        raise ValueError("rank must be positive")
    if j not in (2, 3, 4):
        raise ValueError("degree must be 2, 3 or 4")
    e = ModuleWithAction(p, n, tuple(gl_generators(p, n)), "E")
    ed = module_functor("dual", e)
    ed = ModuleWithAction(p, n, ed.generators, "E*")
    if j == 2:
        layers = (Layer("E*", p**n, ed, True),)
    elif j == 3:
        layers = (Layer("Alt2(E*)", p ** comb(n, 2), module_functor("alt2", ed), True),)
    elif p == 2:
        layers = (
            Layer("E*", 2**n, ed, True),
            Layer("Alt2(E*)", 2 ** comb(n, 2), module_functor("alt2", ed), False),
            Layer("Alt3(E*)", 2 ** comb(n, 3), module_functor("alt3", ed), None),
        )
    else:
        layers = (
            Layer("Sym2(E*)", p ** comb(n + 1, 2), module_functor("sym2", ed), True),
            Layer("Alt3(E*)", p ** comb(n, 3), module_functor("alt3", ed), True),
        )
    order = 1
    for layer in layers:
        order *= layer.order
    rank = sum(layer.module.dimension for layer in layers)
    notes: tuple[str, ...] = ()
    if p == 2 and j == 4:
        notes = ("the submodule E*.Alt2(E*) is Sym2(E*), a nonsplit extension",
                 "positive-degree classes have order p, so the group is elementary abelian")
    return CohomologyDescription(j, order, AbelianGroup.elementary(p, rank), layers, p, False, {}, notes)


def extraspecial_odd_cohomology(
    p: int, m: int, j: int, gsp: Sequence[tuple[Sequence[Sequence[int]] | FpMatrix, int]] | None = None
) -> CohomologyDescription:
    """H^j(p^(1+2m); Z), exponent p, p odd, m >= 2, j = 2, 3, 4.

    ``gsp`` lists (g, a) with omega(gu, gv) = a omega(u, v) for the standard
    symplectic omega; the layers carry the induced actions.

    >>> extraspecial_odd_cohomology(3, 3, 4).order == 3**35
    True
    """
    _check_prime(p)
    if p == 2:
        raise ValueError("p must be odd")
    if m < 2:
        raise ValueError("m must be at least 2")
    if j not in (2, 3, 4):
        raise ValueError("degree must be 2, 3 or 4")
    form = SymplecticForm.standard(p, m)
    d = 2 * m
    pairs = gsp_generators(p, m) if gsp is None else [
        (g if isinstance(g, FpMatrix) else FpMatrix(p, g), int(a)) for g, a in gsp
    ]
    for g, a in pairs:
        if g.shape != (d, d) or form.similitude_scalar(g) != a % p:
            raise ValueError("supplied element does not satisfy omega(gu, gv) = a omega(u, v)")
    e = ModuleWithAction(p, d, tuple(g for g, _ in pairs), "E")
    ed = ModuleWithAction(p, d, module_functor("dual", e).generators, "E*")
    omega = [list(r) for r in form.matrix]
    aux = {"omega": omega}
    if j == 2:
        layers = (Layer("E*", p**d, ed, True),)
        group = AbelianGroup.elementary(p, d)
        return CohomologyDescription(j, p**d, group, layers, p)
    alt2w = module_functor("omega_complement", ed, aux)
    if j == 3:
        layers = (Layer("Alt2(E*)_omega", p**alt2w.dimension, alt2w, True),)
        return CohomologyDescription(j, p**alt2w.dimension, AbelianGroup.elementary(p, alt2w.dimension), layers, p)
    sym2 = module_functor("sym2", ed)
    if m >= 3:
        top = module_functor("quotient_by_wedge", ed, aux)
        layers = (
            Layer("Sym2(E*)", p**sym2.dimension, sym2, True),
            Layer("Alt3(E*)/(E* ^ omega)", p**top.dimension, top, True),
        )
        dim = sym2.dimension + top.dimension
        return CohomologyDescription(j, p**dim, AbelianGroup.elementary(p, dim), layers, p)
    twisted = module_functor("tensor_line", alt2w, {"scalars": line_scalars(ed, omega)})
    layers = (
        Layer("Sym2(E*)", p**sym2.dimension, sym2, True),
        Layer("Alt2(E*)_omega (x) L_omega", p**twisted.dimension, twisted, None),
    )
    order = p ** (sym2.dimension + twisted.dimension)
    return CohomologyDescription(
        j, order, None, layers, None, True, {}, ("the extension of the top layer by Sym2(E*) is not determined",)
    )


def _parse_sign(arf) -> int:
    if isinstance(arf, str):
        key = arf.strip().lower()
        if key in ("+", "+1", "1", "plus"):
            return 1
        if key in ("-", "-1", "minus"):
            return -1
    elif arf in (1, -1):
        return int(arf)
    raise ValueError(f"type must be +1/plus or -1/minus, got {arf!r}")


def extraspecial_two_h4(m: int, arf) -> CohomologyDescription:
    """H^4(2^(1+2m)_sign; Z) for m >= 2, where sign is +1 (plus type) or -1 (minus type).

    X = E*.Alt2(E*).(Alt3(E*)/E*) has rank binom(2m, 2) + binom(2m, 3). For
    m = 2 the answer is X.4 = 2^9 x 8 (plus) or X.2 = 2^9 x 4 (minus); for
    m >= 3 it is X.2 = 2^(dim X - 1) x 4 for both types.

    >>> str(extraspecial_two_h4(2, +1).group)
    '2^9 x 8'
    >>> str(extraspecial_two_h4(2, "minus").group)
    '2^9 x 4'
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    sign = _parse_sign(arf)
    q = QuadraticForm.hyperbolic(m) if sign == 1 else QuadraticForm.elliptic(m)
    analysis = quadratic_form_analyze(q)
    if analysis.arf != (0 if sign == 1 else 1):
        raise AssertionError("model quadratic form has the wrong type")
    d = 2 * m
    e = ModuleWithAction(2, d, tuple(orthogonal_generators(q)), "E")
    ed = ModuleWithAction(2, d, module_functor("dual", e).generators, "E*")
    b = [list(r) for r in analysis.polar.data]
    alt2 = module_functor("alt2", ed)
    top = module_functor("quotient_by_wedge", ed, {"omega": b})
    dim_x = comb(d, 2) + comb(d, 3)
    if m == 2:
        last = 4 if sign == 1 else 2
    else:
        last = 2
    layers = (
        Layer("E*", 2**d, ed, True),
        Layer("Alt2(E*)", 2 ** comb(d, 2), alt2, None),
        Layer("Alt3(E*)/E*", 2**top.dimension, top, None),
        Layer(f"Z/{last} on top", last, None, False),
    )
    top_order = 2 * last  # the cyclic summand of X.last
    group = AbelianGroup.from_orders([2] * (dim_x - 1) + [top_order])
    lower = {
        2: Layer("E*", 2**d, ed, True),
        3: Layer("Alt2(E*)/B_Q", 2 ** (comb(d, 2) - 1), module_functor("omega_complement", ed, {"omega": b}), True),
    }
    return CohomologyDescription(4, 2 ** (dim_x) * last, group, layers, None, False, lower)

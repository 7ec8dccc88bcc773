"""Character tables: loading, validation, power values, eigenvalue recovery, indicators.

Documents are JSON objects::

    {"name": "M11", "order": 7920,
     "classes": [{"name": "1a", "order": 1, "size": 1}, ...],
     "powermaps": {"2": [0, 0, ...], ...},
     "irreducibles": [{"label": "chi2", "values": [10, 2, ...]}],
     "reducibles": [...], "fusions": {"M12": [...]}, "partial": false}

A value is an integer or a list of [conductor, exponent, coefficient]
triples standing for sum coefficient * exp(2 pi i exponent / conductor).
Tables marked partial list only some classes; checks that need the whole
table (class equation, orthogonality, indicators) are skipped or refused.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Any, Sequence

from .charclass import Spectrum
from .exactalg import CycInt
from .exactalg.abelian import factorize

DATA_DIR = Path(__file__).resolve().parent / "data" / "tables"


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class ClassData:
    name: str
    element_order: int
    class_size: int | None


@dataclass(frozen=True)
class Character:
    label: str
    values: tuple[CycInt, ...]
    irreducible: bool = True

    @property
    def degree(self) -> int:
        return self.values[0].rational_value()


@dataclass(frozen=True)
class CharacterTable:
    group_name: str
    group_order: int
    classes: tuple[ClassData, ...]
    irreducibles: tuple[Character, ...]
    power_maps: dict[int, tuple[int, ...]]
    fusions: dict[str, tuple[int, ...]] = field(default_factory=dict)
    reducibles: tuple[Character, ...] = ()
    partial: bool = False

    def class_index(self, c: int | str) -> int:
        if isinstance(c, int):
            if not 0 <= c < len(self.classes):
                raise TableError(f"class index {c} out of range")
            return c
        for i, cd in enumerate(self.classes):
            if cd.name.lower() == str(c).lower():
                return i
        raise TableError(f"{self.group_name} has no class named {c!r}")

    def character(self, label: str | int) -> Character:
        chars = self.irreducibles + self.reducibles
        if isinstance(label, int):
            return self.irreducibles[label]
        for ch in chars:
            if ch.label.lower() == str(label).lower():
                return ch
        raise TableError(f"{self.group_name} has no character labelled {label!r}")

    def centralizer_order(self, c: int | str) -> int:
        size = self.classes[self.class_index(c)].class_size
        if size is None:
            raise TableError("class size unknown in a partial table")
        return self.group_order // size


def _parse_value(raw: Any) -> CycInt:
    if isinstance(raw, bool):
        raise TableError("boolean is not a character value")
    if isinstance(raw, int):
        return CycInt.integer(raw)
    if isinstance(raw, list):
        if not raw:
            return CycInt.integer(0)
        return CycInt.from_terms(raw)
    raise TableError(f"cannot read character value {raw!r}")


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _common(a: CycInt, b: CycInt) -> tuple[CycInt, CycInt]:
    if a.conductor == b.conductor:
        return a, b
    n = _lcm(a.conductor, b.conductor)
    return a.lift(n), b.lift(n)


def cmul(a: CycInt, b: CycInt) -> CycInt:
    a, b = _common(a, b)
    return a * b


def cadd(a: CycInt, b: CycInt) -> CycInt:
    a, b = _common(a, b)
    return a + b


def _class_name_order(name: str) -> int | None:
    m = re.match(r"(\d+)", name)
    return int(m.group(1)) if m else None


def load_table(document: dict | str | Path) -> CharacterTable:
    """Parse and validate a character table document (a dict, JSON text, or a path)."""
    if isinstance(document, Path) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        document = json.loads(Path(document).read_text(encoding="utf-8"))
    elif isinstance(document, str):
        document = json.loads(document)
    if not isinstance(document, dict):
        raise TableError("table document must be an object")
    for key in ("name", "order", "classes", "irreducibles"):
        if key not in document:
            raise TableError(f"table document lacks {key!r}")
    partial = bool(document.get("partial", False))
    order = int(document["order"])
    classes = []
    for c in document["classes"]:
        try:
            cd = ClassData(str(c["name"]), int(c["order"]), None if c.get("size") is None else int(c["size"]))
        except (KeyError, TypeError) as exc:
            raise TableError(f"bad class entry {c!r}") from exc
        if order % cd.element_order:
            raise TableError(f"class {cd.name}: element order {cd.element_order} does not divide {order}")
        if _class_name_order(cd.name) != cd.element_order:
            raise TableError(f"class {cd.name}: name does not match element order {cd.element_order}")
        if cd.class_size is None and not partial:
            raise TableError(f"class {cd.name} has no size")
        if cd.class_size is not None and (cd.class_size < 1 or order % cd.class_size):
            raise TableError(f"class {cd.name}: size {cd.class_size} does not divide the group order")
        classes.append(cd)
    if not classes or classes[0].element_order != 1 or classes[0].class_size not in (1, None):
        raise TableError("first class must be the identity")
    k = len(classes)
    if not partial and sum(c.class_size for c in classes) != order:
        raise TableError("class sizes do not sum to the group order")

    power_maps: dict[int, tuple[int, ...]] = {}
    for key, images in (document.get("powermaps") or {}).items():
        p = int(key)
        if factorize(p) != {p: 1}:
            raise TableError(f"power map key {p} is not prime")
        images = tuple(int(x) for x in images)
        if len(images) != k or any(not 0 <= x < k for x in images):
            raise TableError(f"power map for {p} has the wrong shape")
        for i, j in enumerate(images):
            o = classes[i].element_order
            if classes[j].element_order != o // gcd(o, p):
                raise TableError(
                    f"power map {p}: {classes[i].name} -> {classes[j].name} breaks the element-order rule"
                )
        power_maps[p] = images
    if not partial:
        for p in factorize(order):
            if p not in power_maps:
                raise TableError(f"missing power map for prime {p}")

    def read_chars(entries, irreducible: bool) -> tuple[Character, ...]:
        out = []
        for ch in entries:
            vals = tuple(_parse_value(v) for v in ch["values"])
            if len(vals) != k:
                raise TableError(f"character {ch.get('label')} has {len(vals)} values for {k} classes")
            if not vals[0].is_rational_integer or vals[0].rational_value() < 1:
                raise TableError(f"character {ch.get('label')} has no positive degree")
            out.append(Character(str(ch["label"]), vals, irreducible))
        return tuple(out)

    irr = read_chars(document["irreducibles"], True)
    red = read_chars(document.get("reducibles") or [], False)
    fusions = {}
    for name, images in (document.get("fusions") or {}).items():
        images = tuple(int(x) for x in images)
        if len(images) != k or any(x < 0 for x in images):
            raise TableError(f"fusion {name} has the wrong shape")
        fusions[str(name)] = images
    table = CharacterTable(str(document["name"]), order, tuple(classes), irr, power_maps, fusions, red, partial)
    if not partial:
        _check_orthogonality(table)
        for ch in red:
            _check_decomposes(table, ch)
    return table


def _gram_entry(table: CharacterTable, a: int, b: int) -> CycInt:
    total = CycInt.integer(0)
    for ch in table.irreducibles:
        total = cadd(total, cmul(ch.values[a], ch.values[b].conjugate()))
    return total


def _check_orthogonality(table: CharacterTable) -> None:
    k = len(table.classes)
    if len(table.irreducibles) != k:
        raise TableError(f"{len(table.irreducibles)} irreducibles for {k} classes")
    for a in range(k):
        for b in range(a, k):
            entry = _gram_entry(table, a, b)
            want = table.centralizer_order(a) if a == b else 0
            if entry != want:
                ca, cb = table.classes[a].name, table.classes[b].name
                raise TableError(f"column orthogonality fails for classes {ca} and {cb}")


def inner_product(table: CharacterTable, x: Character, y: Character) -> int:
    if table.partial:
        raise TableError("inner products need a complete table")
    total = CycInt.integer(0)
    for c, vx, vy in zip(table.classes, x.values, y.values):
        total = cadd(total, cmul(vx, vy.conjugate()) * c.class_size)
    if not total.is_rational_integer or total.rational_value() % table.group_order:
        raise TableError("inner product is not an integer")
    return total.rational_value() // table.group_order


def decompose(table: CharacterTable, ch: Character) -> list[int]:
    return [inner_product(table, ch, irr) for irr in table.irreducibles]


def _check_decomposes(table: CharacterTable, ch: Character) -> None:
    mults = decompose(table, ch)
    if any(m < 0 for m in mults):
        raise TableError(f"{ch.label} is not a character")
    total = [CycInt.integer(0) for _ in table.classes]
    for m, irr in zip(mults, table.irreducibles):
        total = [cadd(t, v * m) for t, v in zip(total, irr.values)]
    if any(t != v for t, v in zip(total, ch.values)):
        raise TableError(f"{ch.label} is not a combination of the irreducibles")


def power_class(table: CharacterTable, c: int | str, k: int) -> int:
    """Index of the class of g^k for g in class c, when k is a product of mapped primes."""
    i = table.class_index(c)
    for p, e in factorize(k).items() if k > 1 else ():
        if p not in table.power_maps:
            raise TableError(f"{table.group_name}: missing power map for prime {p}")
        for _ in range(e):
            i = table.power_maps[p][i]
    return i


def power_value(ch: Character, table: CharacterTable, c: int | str, k: int) -> CycInt:
    """chi(g^k) for g in class c.

    Write k = d u mod n with d = gcd(k, n), so g^k = (g^d)^u with u prime to
    the order of g^d. The class of g^d comes from the power maps, and the
    value on (g^d)^u is the Galois image of chi(g^d) under zeta -> zeta^u.
    """
    if k < 0:
        raise TableError("k must be nonnegative")
    i = table.class_index(c)
    n = table.classes[i].element_order
    k %= n
    if k == 0:
        return ch.values[0]
    d = gcd(k, n)
    j = power_class(table, i, d)
    value = ch.values[j]
    u = (k // d) % (n // d)
    cond = value.conductor
    while gcd(u, cond) != 1:
        u += n // d
    return value.galois(u) if cond > 1 else value


def eigenvalue_multiset(ch: Character, table: CharacterTable, c: int | str) -> Spectrum:
    """Multiplicity of each eigenvalue zeta_n^j of g in class c, recovered by an exact finite Fourier transform.

    Raises when a multiplicity is negative or not an integer, and verifies
    that the multiplicities reproduce chi on every power of g.
    """
    i = table.class_index(c)
    n = table.classes[i].element_order
    values = [power_value(ch, table, i, k) for k in range(n)]
    cond = n
    for v in values:
        cond = _lcm(cond, v.conductor)
    lifted = [v.lift(cond) for v in values]
    r = cond // n
    mults: dict[int, int] = {}
    for j in range(n):
        acc = CycInt.integer(0, cond)
        for k, v in enumerate(lifted):
            acc = acc + v * CycInt.root(cond, (-j * k * r) % cond)
        if not acc.is_rational_integer:
            raise TableError(f"{ch.label} at {table.classes[i].name}: multiplicity of exponent {j} is not rational")
        val = acc.rational_value()
        if val % n:
            raise TableError(f"{ch.label} at {table.classes[i].name}: multiplicity {val}/{n} is not an integer")
        if val < 0:
            raise TableError(f"{ch.label} at {table.classes[i].name}: negative multiplicity at exponent {j}")
        if val:
            mults[j] = val // n
    spec = Spectrum(n, mults)
    for k, v in enumerate(lifted):
        rebuilt = CycInt.integer(0, cond)
        for j, m in spec.multiplicities:
            rebuilt = rebuilt + CycInt.root(cond, (j * k * r) % cond, m)
        if rebuilt != v:
            raise TableError("spectrum does not reproduce the character")
    return spec


def spectrum_from_power_values(n: int, values: Sequence[Any]) -> Spectrum:
    """Eigenvalue multiplicities from chi(g^k), k = 0..n-1 (shorter lists are extended by k -> -k conjugation)."""
    vals = [_parse_value(v) if not isinstance(v, CycInt) else v for v in values]
    if len(vals) < n:
        full = list(vals) + [None] * (n - len(vals))
        for k in range(n):
            if full[k] is None:
                mirror = full[(-k) % n]
                if mirror is None:
                    raise TableError(f"power value for k={k} missing")
                full[k] = mirror.conjugate()
        vals = full
    classes = tuple(ClassData(f"{n // gcd(n, k)}k{k}", n // gcd(n, k), None) for k in range(n))
    maps = {p: tuple((k * p) % n for k in range(n)) for p in factorize(n)} if n > 1 else {}
    table = CharacterTable("inline", n, classes, (), maps, {}, (), True)
    ch = Character("inline", tuple(vals), False)
    return eigenvalue_multiset(ch, table, 1 if n > 1 else 0)


def fs_indicator(ch: Character, table: CharacterTable) -> int:
    """Frobenius-Schur indicator (1/|G|) sum_g chi(g^2) of an irreducible character."""
    if table.partial:
        raise TableError("the indicator needs a complete table")
    total = CycInt.integer(0)
    for i, c in enumerate(table.classes):
        total = cadd(total, power_value(ch, table, i, 2) * c.class_size)
    if not total.is_rational_integer or total.rational_value() % table.group_order:
        raise TableError(f"indicator of {ch.label} is not an integer")
    ind = total.rational_value() // table.group_order
    if ind not in (-1, 0, 1):
        raise TableError(f"indicator of {ch.label} is {ind}; the character is not irreducible")
    return ind


def classes_of_order(table: CharacterTable, n: int) -> list[str]:
    return [c.name for c in table.classes if c.element_order == n]


# cyclic groups, generated rather than stored

def cyclic_table_document(n: int) -> dict:
    """C_n with classes named by order (ka, kb, ...) in the order of the exponent g^k."""
    if n < 1:
        raise TableError("n must be positive")
    names = []
    seen: dict[int, int] = {}
    for k in range(n):
        o = n // gcd(n, k)
        idx = seen.get(o, 0)
        seen[o] = idx + 1
        names.append(f"{o}{_letters(idx)}")
    classes = [{"name": names[k], "order": n // gcd(n, k), "size": 1} for k in range(n)]
    powermaps = {str(p): [(k * p) % n for k in range(n)] for p in factorize(n)} if n > 1 else {}
    irr = [{"label": f"chi{a}", "values": [[[n, (a * k) % n, 1]] for k in range(n)]} for a in range(n)]
    return {"name": f"C{n}", "order": n, "classes": classes, "powermaps": powermaps, "irreducibles": irr}


def _letters(i: int) -> str:
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(ord("a") + r) + s
    return s


@lru_cache(maxsize=None)
def bundled_table(name: str) -> CharacterTable:
    """A bundled table by name (file stem, case-insensitive) or C<n> for n <= 24."""
    m = re.fullmatch(r"[cC](\d+)", name)
    if m:
        n = int(m.group(1))
        if not 1 <= n <= 24:
            raise TableError("bundled cyclic tables cover n <= 24")
        return load_table(cyclic_table_document(n))
    for path in sorted(DATA_DIR.glob("*.json")):
        if path.stem.lower() == name.lower():
            return load_table(path)
    raise TableError(f"no bundled table named {name!r}")


def bundled_names() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.json"))


def resolve_table(ref: str | Path) -> CharacterTable:
    """A path to a table document, or the name of a bundled table."""
    path = Path(ref)
    if path.is_file():
        return load_table(path)
    stem = path.name[:-5] if path.name.lower().endswith(".json") else path.name
    return bundled_table(stem)

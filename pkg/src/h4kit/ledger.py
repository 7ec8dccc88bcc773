"""Deduction ledger for divisibility facts about H^k(G; Z) and its p-parts.

Facts are append-only. Each rule reads facts already in the ledger (or
declarations) and appends new facts that cite their premises, so every
conclusion carries a derivation tree back to computations and to explicit
external assertions.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Any, Iterable, Mapping

from . import charclass, chartab, oracle, pgroups, specseq
from .exactalg import AbelianGroup, factorize, valuation

BOUND_KINDS = (
    "order_divides",
    "order_divisible_by",
    "is_summand_of",
    "cyclic",
    "exponent_divides",
    "exponent_divisible_by",
    "equals",
    "class_order_divisible_by",
)
AUX_KINDS = ("property", "class_count", "page_input")
DATA_DIR = Path(__file__).parent / "data" / "cases"


class LedgerError(ValueError):
    """Bad input: missing declarations, unknown references, unmet hypotheses."""


class LedgerContradiction(Exception):
    def __init__(self, message: str, facts: Iterable[Fact] = ()) -> None:
        super().__init__(message)
        self.facts = tuple(facts)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _ppart(n: int, p: int) -> int:
    return p ** valuation(n, p)


@dataclass(frozen=True)
class Fact:
    id: str
    subject: str
    prime: int | None
    kind: str
    value: Any
    rule: str
    inputs: tuple[tuple[str, str], ...] = ()
    premises: tuple[str, ...] = ()
    external: bool = False
    degree: int = 4
    label: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in BOUND_KINDS + AUX_KINDS:
            raise LedgerError(f"unknown fact kind {self.kind!r}")
        if self.kind in ("order_divides", "order_divisible_by", "exponent_divides", "exponent_divisible_by",
                         "class_order_divisible_by", "class_count"):
            if not isinstance(self.value, int) or self.value < (0 if self.kind == "class_count" else 1):
                raise LedgerError(f"fact {self.id}: {self.kind} needs a positive integer, got {self.value!r}")
        if self.kind in ("is_summand_of", "equals") and not isinstance(self.value, AbelianGroup):
            raise LedgerError(f"fact {self.id}: {self.kind} needs a group")
        if self.kind == "class_order_divisible_by" and not self.label:
            raise LedgerError(f"fact {self.id}: class facts need a class label")

    def statement(self) -> str:
        where = f"H^{self.degree}({self.subject})" + (f"_({self.prime})" if self.prime else "")
        v = self.value
        if self.kind == "order_divides":
            return f"|{where}| divides {v}"
        if self.kind == "order_divisible_by":
            return f"|{where}| is divisible by {v}"
        if self.kind == "exponent_divides":
            return f"exponent of {where} divides {v}"
        if self.kind == "exponent_divisible_by":
            return f"exponent of {where} is divisible by {v}"
        if self.kind == "is_summand_of":
            return f"{where} is a direct summand of {v}"
        if self.kind == "cyclic":
            return f"{where} is cyclic"
        if self.kind == "equals":
            return f"{where} = {v}"
        if self.kind == "class_order_divisible_by":
            return f"{self.label} in {where} has order divisible by {v}"
        if self.kind == "class_count":
            return f"{self.subject} has {v} classes of elements of order {self.prime}"
        if self.kind == "page_input":
            return str(v)
        return f"{self.subject}: {v}"

    def to_json(self) -> dict:
        v = self.value.to_json() if isinstance(self.value, AbelianGroup) else self.value
        out = {
            "id": self.id,
            "subject": self.subject,
            "prime": self.prime,
            "degree": self.degree,
            "kind": self.kind,
            "value": v,
            "statement": self.statement(),
            "rule": self.rule,
            "inputs": dict(self.inputs),
            "premises": list(self.premises),
            "external": self.external,
        }
        if self.label:
            out["label"] = self.label
        return out


@dataclass(frozen=True)
class GroupDecl:
    id: str
    h1: AbelianGroup | None = None
    h2: AbelianGroup | None = None
    oracle: Mapping | None = None


@dataclass(frozen=True)
class ClassRef:
    id: str
    group: str
    table: str
    character: str
    cls: str
    method: str = "c2"
    lift_order: int | None = None
    label: str | None = None
    spin: str | None = None

    @property
    def class_label(self) -> str:
        return self.label or f"{self.method}({self.character})"


@dataclass
class Bounds:
    """What the ledger knows about one p-part in one degree."""

    p: int
    upper: int | None = None
    lower: int = 1
    exp_upper: int | None = None
    exp_lower: int = 1
    cyclic: bool = False
    summand: AbelianGroup | None = None
    equals: AbelianGroup | None = None
    facts: list[Fact] = field(default_factory=list)

    def effective_upper(self) -> int | None:
        cands = [x for x in (self.upper,
                             self.summand.order if self.summand is not None else None,
                             self.equals.order if self.equals is not None else None) if x is not None]
        return min(cands) if cands else None

    def candidates(self, limit: int = 10_000) -> list[AbelianGroup] | None:
        up = self.effective_upper()
        if up is None:
            return None
        out = []
        for a in range(valuation(up, self.p) + 1):
            for lam in _partitions(a):
                g = AbelianGroup.from_orders([self.p ** e for e in lam]) if lam else AbelianGroup()
                if self.admits(g):
                    out.append(g)
                    if len(out) > limit:
                        raise LedgerError("too many candidate groups")
        return out

    def admits(self, g: AbelianGroup) -> bool:
        n, e = g.order, g.exponent
        if self.upper is not None and self.upper % n:
            return False
        if n % self.lower or e % self.exp_lower:
            return False
        if self.exp_upper is not None and self.exp_upper % e:
            return False
        if self.cyclic and not g.is_cyclic:
            return False
        if self.summand is not None and not g.is_summand_of(self.summand):
            return False
        if self.equals is not None and g != self.equals:
            return False
        return True


def _partitions(n: int, maxpart: int | None = None):
    if n == 0:
        yield ()
        return
    maxpart = n if maxpart is None else maxpart
    for k in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@dataclass(frozen=True)
class Conclusion:
    subject: str
    prime: int | None
    degree: int
    status: str  # "equals", "order", or "interval"
    group: AbelianGroup | None
    lower: int
    upper: int | None
    candidates: tuple[AbelianGroup, ...] | None
    support: tuple[str, ...]

    def to_json(self, ledger: Ledger | None = None) -> dict:
        out = {
            "subject": self.subject,
            "prime": self.prime,
            "degree": self.degree,
            "status": self.status,
            "order_lower": self.lower,
            "order_upper": self.upper,
        }
        if self.group is not None:
            out["group"] = self.group.to_json()
            out["group_text"] = str(self.group)
        if self.candidates is not None and len(self.candidates) <= 64:
            out["candidates"] = [str(g) for g in self.candidates]
        if ledger is not None:
            out["derivation"] = [ledger.tree(fid) for fid in self.support]
        return out


class Ledger:
    def __init__(self) -> None:
        self.facts: list[Fact] = []
        self.groups: dict[str, GroupDecl] = {}
        self.sylow: set[tuple[str, str, int]] = set()
        self.covers: dict[str, tuple[str, int]] = {}
        self.extensions: dict[tuple[str, str], int] = {}
        self.classes: dict[str, ClassRef] = {}
        self.abstentions: list[dict] = []
        self._by_id: dict[str, Fact] = {}

    # declarations

    def declare_group(self, gid: str, h1=None, h2=None, oracle_spec=None) -> None:
        if gid in self.groups:
            raise LedgerError(f"group {gid} declared twice")
        self.groups[gid] = GroupDecl(
            gid,
            AbelianGroup.from_json(h1) if h1 is not None else None,
            AbelianGroup.from_json(h2) if h2 is not None else None,
            oracle_spec,
        )

    def _group(self, gid: str) -> GroupDecl:
        if gid not in self.groups:
            raise LedgerError(f"group {gid} is not declared")
        return self.groups[gid]

    def declare_sylow(self, group: str, subgroup: str, p: int) -> None:
        self._group(group)
        self._group(subgroup)
        self.sylow.add((group, subgroup, int(p)))

    def declare_cover(self, cover: str, base: str, n: int) -> None:
        self._group(cover)
        self._group(base)
        self.covers[cover] = (base, int(n))
        self.extensions[(cover, base)] = int(n)

    def declare_extension(self, group: str, quotient: str, kernel_order: int) -> None:
        self._group(group)
        self._group(quotient)
        self.extensions[(group, quotient)] = int(kernel_order)

    def declare_class(self, ref: ClassRef) -> None:
        self._group(ref.group)
        if ref.id in self.classes:
            raise LedgerError(f"class reference {ref.id} declared twice")
        self.classes[ref.id] = ref

    # facts

    def add(self, subject: str, prime: int | None, kind: str, value, rule: str, inputs: Mapping | None = None,
            premises: Iterable[str] = (), external: bool = False, degree: int = 4, label: str | None = None) -> Fact:
        if kind in BOUND_KINDS:
            self._group(subject)
        if prime is not None and kind in ("order_divides", "order_divisible_by", "exponent_divides",
                                          "exponent_divisible_by", "class_order_divisible_by"):
            value = _ppart(int(value), prime)
        if prime is not None and kind in ("is_summand_of", "equals"):
            value = value.primary_part(prime)
        for pid in premises:
            if pid not in self._by_id:
                raise LedgerError(f"premise {pid} is not in the ledger")
        fact = Fact(
            id=f"F{len(self.facts) + 1}",
            subject=subject,
            prime=prime,
            kind=kind,
            value=value,
            rule=rule,
            inputs=tuple(sorted((str(k), _text(v)) for k, v in (inputs or {}).items())),
            premises=tuple(premises),
            external=external,
            degree=degree,
            label=label,
        )
        self.facts.append(fact)
        self._by_id[fact.id] = fact
        if kind in BOUND_KINDS:
            self._check(fact)
        return fact

    def fact(self, fid: str) -> Fact:
        return self._by_id[fid]

    def subject_facts(self, subject: str, degree: int = 4) -> list[Fact]:
        return [f for f in self.facts if f.subject == subject and f.degree == degree and f.kind in BOUND_KINDS]

    def bounds(self, subject: str, p: int, degree: int = 4) -> Bounds:
        b = Bounds(p)
        for f in self.subject_facts(subject, degree):
            if f.prime is not None and f.prime != p:
                continue
            v = f.value
            if f.kind == "order_divides":
                q = _ppart(v, p)
                b.upper = q if b.upper is None else min(b.upper, q)
            elif f.kind == "order_divisible_by":
                b.lower = max(b.lower, _ppart(v, p))
            elif f.kind == "exponent_divides":
                q = _ppart(v, p)
                b.exp_upper = q if b.exp_upper is None else min(b.exp_upper, q)
            elif f.kind in ("exponent_divisible_by", "class_order_divisible_by"):
                b.exp_lower = max(b.exp_lower, _ppart(v, p))
            elif f.kind == "cyclic":
                b.cyclic = True
            elif f.kind == "is_summand_of":
                m = v.primary_part(p)
                b.summand = m if b.summand is None else _common_summand(b.summand, m)
            elif f.kind == "equals":
                g = v.primary_part(p)
                if b.equals is not None and b.equals != g:
                    raise LedgerContradiction(
                        f"H^{degree}({subject})_({p}) asserted equal to both {b.equals} and {g}",
                        [x for x in b.facts if x.kind == "equals"] + [f])
                b.equals = g
            else:
                continue
            if _relevant(f, p):
                b.facts.append(f)
        return b

    def _check(self, fact: Fact) -> None:
        primes = [fact.prime] if fact.prime is not None else self._primes_of(fact)
        for p in primes:
            b = self.bounds(fact.subject, p, fact.degree)
            cands = b.candidates()
            if cands == []:
                raise LedgerContradiction(_contradiction_message(fact.subject, p, fact.degree, b), b.facts)
            lower = max(b.lower, b.exp_lower)
            if b.exp_upper is not None and b.exp_upper % b.exp_lower:
                raise LedgerContradiction(_contradiction_message(fact.subject, p, fact.degree, b), b.facts)
            if cands is None and b.exp_upper is not None and lower > 1 and b.exp_upper % b.exp_lower:
                raise LedgerContradiction(_contradiction_message(fact.subject, p, fact.degree, b), b.facts)

    def _primes_of(self, fact: Fact) -> list[int]:
        v = fact.value
        if isinstance(v, AbelianGroup):
            n = v.order or 1
        elif isinstance(v, int):
            n = v
        else:
            n = 1
        primes = set(factorize(n)) if n > 1 else set()
        # whole-group upper bounds constrain every prime already mentioned for this subject
        for f in self.subject_facts(fact.subject, fact.degree):
            if f.prime is not None:
                primes.add(f.prime)
            elif isinstance(f.value, int) and f.value > 1:
                primes |= set(factorize(f.value))
            elif isinstance(f.value, AbelianGroup) and f.value.order and f.value.order > 1:
                primes |= set(factorize(f.value.order))
        return sorted(primes)

    def whole_upper(self, subject: str, degree: int = 4) -> tuple[int | None, list[Fact]]:
        best, used = None, []
        for f in self.subject_facts(subject, degree):
            if f.prime is not None:
                continue
            n = None
            if f.kind == "order_divides":
                n = f.value
            elif f.kind in ("equals", "is_summand_of"):
                n = f.value.order
            if n is not None and (best is None or n < best or (best % n == 0 and n != best)):
                best = n if best is None else gcd(best, n)
                used.append(f)
        return best, used

    # conclusions

    def conclude(self, subject: str, prime: int | None = None, degree: int = 4) -> Conclusion:
        self._group(subject)
        if prime is not None:
            return self._conclude_local(subject, prime, degree)
        upper, used = self.whole_upper(subject, degree)
        if upper is None:
            lower = 1
            support: set[str] = set()
            for f in self.subject_facts(subject, degree):
                if f.kind in ("order_divisible_by", "exponent_divisible_by", "class_order_divisible_by"):
                    lower = _lcm(lower, f.value)
                    support.add(f.id)
            return Conclusion(subject, None, degree, "interval", None, lower, None, None, _sorted_ids(support))
        parts = [self._conclude_local(subject, p, degree) for p in sorted(factorize(upper))] if upper > 1 else []
        support = {f.id for f in used}
        for c in parts:
            support |= set(c.support)
        lower = 1
        up = 1
        for c in parts:
            lower *= c.lower
            up *= c.upper if c.upper is not None else 1
        if all(c.status == "equals" for c in parts):
            g = AbelianGroup()
            for c in parts:
                g = g.direct_sum(c.group)
            return Conclusion(subject, None, degree, "equals", g, g.order, g.order, (g,), _sorted_ids(support))
        status = "order" if all(c.status in ("equals", "order") for c in parts) else "interval"
        return Conclusion(subject, None, degree, status, None, lower, up, None, _sorted_ids(support))

    def _conclude_local(self, subject: str, p: int, degree: int) -> Conclusion:
        b = self.bounds(subject, p, degree)
        cands = b.candidates()
        support = _sorted_ids({f.id for f in b.facts})
        if cands is None:
            lower = max(b.lower, b.exp_lower)
            return Conclusion(subject, p, degree, "interval", None, lower, None, None, support)
        if not cands:
            raise LedgerContradiction(_contradiction_message(subject, p, degree, b), b.facts)
        orders = sorted({g.order for g in cands})
        if len(cands) == 1:
            g = cands[0]
            return Conclusion(subject, p, degree, "equals", g, g.order, g.order, tuple(cands), support)
        status = "order" if len(orders) == 1 else "interval"
        return Conclusion(subject, p, degree, status, None, orders[0], orders[-1], tuple(cands), support)

    def tree(self, fid: str) -> dict:
        f = self._by_id[fid]
        node = {"id": f.id, "statement": f.statement(), "rule": f.rule}
        if f.inputs:
            node["inputs"] = dict(f.inputs)
        if f.external:
            node["external"] = True
        if f.premises:
            node["premises"] = [self.tree(p) for p in f.premises]
        return node

    def external_facts(self) -> list[Fact]:
        return [f for f in self.facts if f.external]

    def _one(self, kind: str, subject: str, ref: str | None) -> Fact:
        if ref is not None:
            f = self._by_id.get(ref)
            if f is None:
                raise LedgerError(f"fact {ref} is not in the ledger")
            if f.kind != kind:
                raise LedgerError(f"fact {ref} is a {f.kind} fact, expected {kind}")
            return f
        hits = [f for f in self.facts if f.kind == kind and f.subject == subject]
        if not hits:
            raise LedgerError(f"no {kind} fact about {subject}")
        return hits[-1]

    def _require_sylow(self, group: str, subgroup: str, p: int) -> None:
        if (group, subgroup, p) not in self.sylow:
            raise LedgerError(f"{subgroup} is not declared to contain a {p}-Sylow of {group}")

    # rules

    def rule_external(self, subject: str, kind: str, value, citation: str, prime: int | None = None,
                      degree: int = 4, label: str | None = None) -> Fact:
        if not citation:
            raise LedgerError("an external assertion needs a citation")
        if kind in ("is_summand_of", "equals"):
            value = AbelianGroup.from_json(value)
        if kind == "class_order_divisible_by" and not label:
            raise LedgerError("an external class fact needs a class label")
        if kind == "cyclic":
            value = True
        if kind in AUX_KINDS:
            f = Fact(f"F{len(self.facts) + 1}", subject, prime, kind, value, "external",
                     (("citation", citation),), (), True, degree, label)
            self.facts.append(f)
            self._by_id[f.id] = f
            return f
        return self.add(subject, prime, kind, value, "external", {"citation": citation},
                        external=True, degree=degree, label=label)

    def rule_summand(self, group: str, subgroup: str, prime: int, degree: int = 4) -> list[Fact]:
        """A subgroup containing a p-Sylow sees H^k(G)_(p) as a direct summand of H^k(S)_(p)."""
        self._require_sylow(group, subgroup, prime)
        c = self._conclude_local(subgroup, prime, degree)
        prem = c.support
        inputs = {"subgroup": subgroup}
        out = []
        if c.status == "equals":
            m = c.group
            inputs["H_subgroup"] = str(m)
            out.append(self.add(group, prime, "is_summand_of", m, "summand", inputs, prem, degree=degree))
            out.append(self.add(group, prime, "order_divides", m.order, "summand", inputs, prem, degree=degree))
            out.append(self.add(group, prime, "exponent_divides", m.exponent, "summand", inputs, prem,
                                degree=degree))
            if m.is_cyclic:
                out.append(self.add(group, prime, "cyclic", True, "summand", inputs, prem, degree=degree))
        else:
            if c.upper is None:
                raise LedgerError(f"no upper bound known for H^{degree}({subgroup})_({prime})")
            inputs["order_upper_subgroup"] = c.upper
            out.append(self.add(group, prime, "order_divides", c.upper, "summand", inputs, prem, degree=degree))
            b = self.bounds(subgroup, prime, degree)
            if b.exp_upper is not None:
                out.append(self.add(group, prime, "exponent_divides", b.exp_upper, "summand", inputs, prem,
                                    degree=degree))
        return out

    def rule_large_primes(self, group: str, prime: int, sylow_shape: str | None = None, table: str | None = None,
                          class_count: str | None = None) -> list[Fact]:
        """Vanishing of the p-part when the Sylow is p or p x p and there are few classes of order p."""
        p = int(prime)
        if sylow_shape not in ("p", "p x p"):
            raise LedgerError("the Sylow shape must be declared as 'p' or 'p x p'")
        prem: tuple[str, ...] = ()
        if table is not None:
            t = chartab.resolve_table(table)
            if t.partial:
                raise LedgerError(f"table {table} is partial; class counts need a complete table or an assertion")
            count = len(chartab.classes_of_order(t, p))
            source = f"table {t.group_name}"
        elif class_count is not None:
            f = self._one("class_count", group, class_count)
            if f.prime != p:
                raise LedgerError(f"fact {f.id} counts classes of order {f.prime}, not {p}")
            count, prem, source = f.value, (f.id,), f"fact {f.id}"
        else:
            raise LedgerError("large_primes needs a table or a class count")
        threshold = (p - 1) / 2
        inputs = {"classes_of_order_p": count, "source": source, "sylow_shape": sylow_shape}
        if count < threshold:
            return [self.add(group, p, "equals", AbelianGroup(), "large_primes", inputs, prem)]
        self.abstentions.append({"rule": "large_primes", "group": group, "prime": p,
                                 "reason": f"{count} classes of order {p}, not fewer than {threshold:g}"})
        return []

    def rule_central_character(self, quotient: str, module: str, prime: int, center_order: int,
                               nontrivial: str, rows: Iterable[int]) -> list[Fact]:
        """H^i(J; M) = 0 for all i when a p'-central subgroup acts on M through a nontrivial character."""
        p = int(prime)
        if gcd(int(center_order), p) != 1:
            raise LedgerError(f"center of order {center_order} is not prime to {p}")
        if p == 2:
            self.abstentions.append({"rule": "central_character", "group": quotient, "prime": 2,
                                     "reason": "vacuous for p = 2: F_2^x is trivial"})
            return []
        prop = self._one("property", quotient, nontrivial)
        self._group(quotient)
        out = []
        for j in rows:
            subject = f"H^*({quotient}; H^{j}({module}))"
            if subject not in self.groups:
                self.declare_group(subject)
            out.append(self.add(subject, p, "equals", AbelianGroup(), "central_character",
                                {"center_order": center_order, "row": j}, (prop.id,), degree=0))
        return out

    def rule_page_bound(self, group: str, page: str, prime: int | None = None, degree: int = 4) -> list[Fact]:
        run = specseq.run_page_file(_resolve(page, specseq.DATA_DIR))
        p = prime if prime is not None else run.prime
        final = run.final
        bound = specseq.degree_order_bound(final, degree, p)
        prem = self._page_inputs(group, run, p)
        inputs = {"page": run.name, "bound": bound, "label": f"upper bound at page {final.r}"}
        return [self.add(group, p, "order_divides", bound, "page_bound", inputs, prem, degree=degree)]

    def _page_inputs(self, group: str, run: specseq.PageRun, p: int | None) -> list[str]:
        ids = []
        for (i, j), c in run.pages[0].nonzero():
            if c.provenance.startswith("external"):
                f = self.rule_external(group, "page_input", f"{run.name}: E_2^({i},{j}) = {c.describe()}",
                                       c.provenance, prime=p)
                ids.append(f.id)
        return ids

    def rule_case_split(self, group: str, sylow_of: str, prime: int, pages: list[str], check_degree: int = 3,
                        degree: int = 4) -> list[Fact]:
        """Alternative pages for the same extension: drop those contradicting a lower bound, keep the worst."""
        p = int(prime)
        self._require_sylow(sylow_of, group, p)
        lower_src = self.bounds(sylow_of, p, check_degree)
        lower = max(lower_src.lower, lower_src.exp_lower)
        prem = [f.id for f in lower_src.facts if f.kind in ("order_divisible_by", "exponent_divisible_by",
                                                            "class_order_divisible_by")]
        survivors, report = [], []
        for ref in pages:
            run = specseq.run_page_file(_resolve(ref, specseq.DATA_DIR))
            prem += self._page_inputs(group, run, p)
            test = specseq.degree_order_bound(run.final, check_degree, p)
            ok = test % lower == 0
            report.append(f"{run.name}: degree {check_degree} bound {test} {'keeps' if ok else 'excludes'}")
            if ok:
                survivors.append(specseq.degree_order_bound(run.final, degree, p))
        inputs = {"alternatives": "; ".join(report), "lower_bound_degree": check_degree, "lower_bound": lower}
        if not survivors:
            raise LedgerContradiction(f"no alternative page for {group} is compatible with the lower bound {lower}",
                                      [self.fact(i) for i in prem])
        bound = 1
        for b in survivors:
            bound = _lcm(bound, b)
        return [self.add(group, p, "order_divides", bound, "case_split", inputs, prem, degree=degree)]

    def rule_class_lower_bound(self, clazz: str) -> list[Fact]:
        """The order of a restriction to a cyclic subgroup divides the order of the global class."""
        if clazz not in self.classes:
            raise LedgerError(f"class reference {clazz} is not declared")
        ref = self.classes[clazz]
        table = chartab.resolve_table(ref.table)
        chars = [table.character(part.strip()) for part in ref.character.split("+")]
        spec = chartab.eigenvalue_multiset(chars[0], table, ref.cls)
        for extra in chars[1:]:
            spec = spec + chartab.eigenvalue_multiset(extra, table, ref.cls)
        inputs = {"table": table.group_name, "character": ref.character, "class": ref.cls, "spectrum": str(spec),
                  "method": ref.method}
        prem: tuple[str, ...] = ()
        if ref.method == "c2":
            cls = charclass.chern_restriction(spec).c2_class
        elif ref.method == "p1":
            for ch in chars:
                self._check_real(table, ch)
            cls = charclass.p1_restriction(spec)
        elif ref.method == "phalf":
            if ref.spin:
                prem = (self._one("property", ref.group, ref.spin).id,)
            elif self._h2_mod2_vanishes(ref.group):
                inputs["spin"] = "H^2(G; Z/2) = 0 from the declared H_1 and H_2"
            else:
                raise LedgerError(f"class {clazz}: p1/2 needs a spin structure reference")
            for ch in chars:
                self._check_real(table, ch)
            cls, cert = charclass.phalf_restriction(spec, ref.lift_order)
            inputs["lift_assignments_checked"] = cert.assignments
        else:
            raise LedgerError(f"unknown method {ref.method!r}")
        inputs["restriction"] = f"{cls.label()} in H^4(Z/{cls.modulus})"
        if cls.order == 1:
            self.abstentions.append({"rule": "class_lower_bound", "group": ref.group, "prime": None,
                                     "reason": f"{ref.id} restricts trivially"})
            return []
        return [self.add(ref.group, None, "class_order_divisible_by", cls.order, "class_lower_bound", inputs, prem,
                         label=ref.class_label)]

    def _h2_mod2_vanishes(self, gid: str) -> bool:
        d = self._group(gid)
        return (d.h1 is not None and d.h2 is not None and d.h1.primary_part(2).is_trivial
                and d.h2.primary_part(2).is_trivial)

    @staticmethod
    def _check_real(table, ch) -> None:
        """Every constituent must have indicator +1; partial tables are taken on trust."""
        if table.partial:
            return
        for mult, irr in zip(chartab.decompose(table, ch), table.irreducibles):
            if mult and chartab.fs_indicator(irr, table) != 1:
                raise LedgerError(f"{ch.label} has a constituent {irr.label} that is not real")

    def rule_multiple_lift(self, group: str, clazz: str, k: int, label: str, relation: str | None = None) -> list[Fact]:
        """If k y = x and the order of x is divisible by d, then for p | d, v_p(order y) >= v_p(d) + v_p(k)."""
        src = [f for f in self.facts if f.subject == group and f.kind == "class_order_divisible_by"
               and f.label == clazz]
        if not src:
            raise LedgerError(f"no order fact for class {clazz} in {group}")
        d = 1
        for f in src:
            d = _lcm(d, f.value)
        new = 1
        for p, e in factorize(d).items() if d > 1 else ():
            new *= p ** (e + valuation(int(k), p))
        prem = [f.id for f in src]
        if relation is not None:
            prem.append(self._one("property", group, relation).id)
        inputs = {"source_class": clazz, "multiple": k, "source_order_divisible_by": d}
        return [self.add(group, None, "class_order_divisible_by", new, "multiple_lift", inputs, prem, label=label)]

    def rule_phalf_from_c2(self, group: str, clazz: str, label: str, spin: str) -> list[Fact]:
        """2 p1/2 = p1 = -c2 of the complexification, on a group where the real representation is spin."""
        return self.rule_multiple_lift(group, clazz, 2, label, relation=spin)

    def _cover_decl(self, cover: str) -> tuple[str, int]:
        if cover not in self.covers:
            raise LedgerError(f"{cover} is not declared as a central cover")
        return self.covers[cover]

    def rule_pullback_injective(self, group: str, quotient: str) -> list[Fact]:
        """H^4(Q) -> H^4(G) is injective for a central extension by Z/n when H^1(Q; Z/n) = 0."""
        key = (group, quotient)
        if key not in self.extensions:
            raise LedgerError(f"no extension {group} -> {quotient} declared")
        n = self.extensions[key]
        decl = self._group(quotient)
        if decl.h1 is None:
            raise LedgerError(f"H_1({quotient}) must be declared for the pullback rule")
        if decl.h1.free_rank or any(gcd(d, n) > 1 for d in decl.h1.invariant_factors):
            raise LedgerError(f"H^1({quotient}; Z/{n}) is nonzero")
        out = []
        inputs = {"quotient": quotient, "kernel": n}
        for f in [x for x in self.facts if x.subject == quotient and x.degree == 4]:
            if f.kind == "class_order_divisible_by":
                out.append(self.add(group, f.prime, f.kind, f.value, "pullback_injective", inputs, (f.id,),
                                    label=f.label))
        c = self.conclude(quotient)
        if c.lower > 1:
            out.append(self.add(group, None, "order_divisible_by", c.lower, "pullback_injective", inputs, c.support))
        return out

    def rule_cover(self, cover: str) -> list[Fact]:
        """|H^4(nG)| divides |H^4(G)| times the cokernel bound at each prime dividing n."""
        base, n = self._cover_decl(cover)
        decl = self._group(base)
        if decl.h1 is None or decl.h2 is None:
            raise LedgerError(f"H_1 and H_2 of {base} must be declared for the cover rule")
        c = self.conclude(base)
        if c.upper is None:
            raise LedgerError(f"no upper bound known for H^4({base})")
        total = c.upper
        inputs: dict[str, Any] = {"base": base, "kernel": n, "H4_base_upper": c.upper}
        out = []
        local = []
        for p in sorted(factorize(n)):
            if not decl.h1.primary_part(p).is_trivial:
                raise LedgerError(f"H_1({base})_({p}) is not trivial")
            h2p = decl.h2.primary_part(p)
            if not h2p.is_cyclic or h2p.is_trivial:
                raise LedgerError(f"H_2({base})_({p}) is not a nontrivial cyclic group")
            np_ = _ppart(n, p)
            cb = specseq.cover_cokernel_bound(p, h2p.order, np_, h1_trivial=True, h2_cyclic=True)
            inputs[f"cokernel_divides_at_{p}"] = cb.divisor
            inputs[f"consequences_at_{p}"] = "; ".join(cb.consequences)
            total *= cb.divisor
            local.append((p, _ppart(c.upper, p) * cb.divisor))
        out.append(self.add(cover, None, "order_divides", total, "cover", inputs, c.support))
        for p, b in local:
            out.append(self.add(cover, p, "order_divides", b, "cover", inputs, c.support))
        return out

    def rule_coprime_kernel(self, group: str, quotient: str, prime: int) -> list[Fact]:
        """A normal subgroup of order prime to p leaves the p-part of cohomology unchanged."""
        p = int(prime)
        key = (group, quotient)
        if key not in self.extensions:
            raise LedgerError(f"no extension {group} -> {quotient} declared")
        k = self.extensions[key]
        if k % p == 0:
            raise LedgerError(f"kernel order {k} is divisible by {p}")
        c = self._conclude_local(quotient, p, 4)
        inputs = {"quotient": quotient, "kernel_order": k}
        if c.status == "equals":
            return [self.add(group, p, "equals", c.group, "coprime_kernel", inputs, c.support)]
        out = []
        if c.upper is not None:
            out.append(self.add(group, p, "order_divides", c.upper, "coprime_kernel", inputs, c.support))
        if c.lower > 1:
            out.append(self.add(group, p, "order_divisible_by", c.lower, "coprime_kernel", inputs, c.support))
        return out

    def rule_oracle(self, group: str, degree: int = 4) -> list[Fact]:
        """Brute-force bar-resolution cohomology for a declared small group."""
        decl = self._group(group)
        if not decl.oracle:
            raise LedgerError(f"{group} has no oracle construction")
        table = _oracle_table(decl.oracle)
        h = oracle.bar_cohomology(table, degree, cap=oracle.OVERRIDE_CAP)
        return [self.add(group, None, "equals", h, "oracle", {"construction": json.dumps(dict(decl.oracle),
                                                                                          sort_keys=True),
                                                              "order": table.order}, degree=degree)]

    def rule_closed_form(self, group: str, family: str, params: Mapping) -> list[Fact]:
        """Closed-form H^4 for cyclic, elementary abelian and extraspecial 2-groups."""
        if family == "cyclic":
            g = oracle.cyclic_cohomology(int(params["n"]), 4)
        elif family == "elem":
            d = pgroups.elem_abelian_cohomology(int(params["p"]), int(params["n"]), 4)
            if d.group is None:
                raise LedgerError("this elementary abelian case has no closed-form group")
            g = d.group
        elif family == "extra-2":
            g = pgroups.extraspecial_two_h4(int(params["m"]), params["sign"]).group
        else:
            raise LedgerError(f"unknown closed form family {family!r}")
        inputs = {"family": family, **{k: params[k] for k in sorted(params)}}
        return [self.add(group, None, "equals", g, "closed_form", inputs)]


def _oracle_table(spec: Mapping) -> oracle.MultTable:
    if "cyclic" in spec:
        return oracle.cyclic_group(int(spec["cyclic"]))
    if "elementary" in spec:
        p, r = spec["elementary"]
        return oracle.elementary_abelian_group(int(p), int(r))
    if "extraspecial" in spec:
        p, m, variant = spec["extraspecial"]
        return oracle.build_extraspecial(int(p), int(m), variant, cap=oracle.OVERRIDE_CAP)
    if "table_file" in spec:
        return oracle.MultTable.from_file(spec["table_file"])
    raise LedgerError(f"unknown oracle construction {dict(spec)}")


def _common_summand(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    rest = b.elementary_divisors()
    keep = []
    for q in a.elementary_divisors():
        if q in rest:
            rest.remove(q)
            keep.append(q)
    return AbelianGroup.from_orders(keep)


def _relevant(f: Fact, p: int) -> bool:
    if f.prime is not None:
        return True
    if f.kind in ("order_divides", "cyclic"):
        return True
    if f.kind in ("equals", "is_summand_of"):
        return True
    return isinstance(f.value, int) and f.value % p == 0


def _contradiction_message(subject: str, p: int, degree: int, b: Bounds) -> str:
    lows = [f for f in b.facts if f.kind in ("order_divisible_by", "exponent_divisible_by", "class_order_divisible_by",
                                             "equals")]
    highs = [f for f in b.facts if f.kind in ("order_divides", "exponent_divides", "is_summand_of", "cyclic",
                                              "equals")]
    lo = " / ".join(f"{f.id} [{f.rule}] {f.statement()}" for f in lows) or "none"
    hi = " / ".join(f"{f.id} [{f.rule}] {f.statement()}" for f in highs) or "none"
    return f"contradiction for H^{degree}({subject})_({p}): lower side {lo}; upper side {hi}"


def _sorted_ids(ids) -> tuple[str, ...]:
    return tuple(sorted(ids, key=lambda s: int(s[1:])))


def _text(v) -> str:
    if isinstance(v, AbelianGroup):
        return str(v)
    return str(v)


def _resolve(ref: str, data_dir: Path) -> str | Path:
    path = Path(ref)
    if path.exists():
        return path
    for cand in (data_dir / ref, data_dir / f"{ref}.json"):
        if cand.exists():
            return cand
    return ref


# Case files.

RULES = {
    "summand": "rule_summand",
    "large_primes": "rule_large_primes",
    "central_character": "rule_central_character",
    "page_bound": "rule_page_bound",
    "case_split": "rule_case_split",
    "class_lower_bound": "rule_class_lower_bound",
    "multiple_lift": "rule_multiple_lift",
    "phalf_from_c2": "rule_phalf_from_c2",
    "pullback_injective": "rule_pullback_injective",
    "cover": "rule_cover",
    "coprime_kernel": "rule_coprime_kernel",
    "oracle": "rule_oracle",
    "closed_form": "rule_closed_form",
}


@dataclass
class CaseResult:
    name: str
    ledger: Ledger
    conclusions: list[Conclusion]
    digest: str

    @property
    def fully_mechanized(self) -> bool:
        return not self.ledger.external_facts()

    def to_json(self) -> dict:
        lg = self.ledger
        return {
            "case": self.name,
            "inputs_digest": self.digest,
            "fully_mechanized": self.fully_mechanized,
            "external_assertions": [{"id": f.id, "statement": f.statement(), "citation": dict(f.inputs).get("citation")}
                                    for f in lg.external_facts()],
            "facts": [f.to_json() for f in lg.facts],
            "abstentions": lg.abstentions,
            "conclusions": [c.to_json(lg) for c in self.conclusions],
        }


def load_case(source) -> dict:
    if isinstance(source, Mapping):
        return dict(source)
    path = Path(_resolve(str(source), DATA_DIR))
    if not path.exists():
        cand = DATA_DIR / f"{source}.case"
        if cand.exists():
            path = cand
        else:
            raise LedgerError(f"case file {source} not found")
    return json.loads(path.read_text())


def case_digest(doc: Mapping) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def run_case(source) -> CaseResult:
    doc = load_case(source)
    lg = Ledger()
    decl = doc.get("declare", {})
    for g in decl.get("groups", []):
        lg.declare_group(g["id"], g.get("H1"), g.get("H2"), g.get("oracle"))
    for s in decl.get("sylow_in", []):
        lg.declare_sylow(s["group"], s["subgroup"], s["prime"])
    for c in decl.get("cover_of", []):
        lg.declare_cover(c["cover"], c["base"], c["n"])
    for e in decl.get("extension", []):
        lg.declare_extension(e["group"], e["quotient"], e["kernel_order"])
    for c in decl.get("class_ref", []):
        lg.declare_class(ClassRef(c["id"], c["group"], c["table"], c["character"], c["class"],
                                  c.get("method", "c2"), c.get("lift_order"), c.get("label"), c.get("spin")))
    for a in decl.get("assert_external", []):
        f = lg.rule_external(a["subject"], a["kind"], a.get("value"), a.get("citation", ""), a.get("prime"),
                             a.get("degree", 4), a.get("label"))
        if "id" in a:
            _alias(lg, a["id"], f)
    for step in doc.get("apply", []):
        step = dict(step)
        name = step.pop("rule")
        if name not in RULES:
            raise LedgerError(f"unknown rule {name!r}")
        step = {k: _resolve_alias(lg, v) for k, v in step.items()}
        try:
            getattr(lg, RULES[name])(**step)
        except TypeError as exc:
            raise LedgerError(f"rule {name}: {exc}") from exc
    conclusions = [lg.conclude(c["subject"], c.get("prime"), c.get("degree", 4)) for c in doc.get("conclude", [])]
    return CaseResult(str(doc.get("name", "case")), lg, conclusions, case_digest(doc))


def _alias(lg: Ledger, name: str, f: Fact) -> None:
    if name in lg._by_id:
        raise LedgerError(f"fact alias {name} collides with an existing id")
    lg._by_id[name] = f


def _resolve_alias(lg: Ledger, v):
    if isinstance(v, str) and v in lg._by_id and not v.startswith("F"):
        return lg._by_id[v].id
    return v


def bundled_cases() -> list[str]:
    return sorted(p.stem for p in DATA_DIR.glob("*.case"))

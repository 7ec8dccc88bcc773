"""Command-line entry point: ``h4kit <command> ...``.

Reports go to stdout as JSON with sorted keys and no timestamps, so the same
inputs give the same bytes. ``--text`` prints a human-readable summary
instead. Exit status: 0 success, 1 bad input, 2 ledger contradiction, 3
internal assertion failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__, charclass, chartab, ledger, oracle, pgroups, specseq
from .exactalg import AbelianGroup

FIXTURE_ENV = "H4KIT_FIXTURES"

EXIT_OK, EXIT_INPUT, EXIT_CONTRADICTION, EXIT_INTERNAL = 0, 1, 2, 3

INPUT_ERRORS = (
    ValueError,
    KeyError,
    OSError,
    json.JSONDecodeError,
    chartab.TableError,
    charclass.CharClassError,
    ledger.LedgerError,
    specseq.PageError,
    oracle.OracleError,
    pgroups.ModuleError,
)


class Inputs:
    """Resolves file arguments and hashes everything read, for the report digest."""

    def __init__(self, args: Sequence[str]) -> None:
        self._h = hashlib.sha256()
        self._h.update(json.dumps(list(args)).encode())

    def resolve(self, ref: str, kind: str, data_dir: Path, suffixes: Sequence[str]) -> Path:
        """A path as given, else the fixture override directory, else the bundled data."""
        bases = []
        override = os.environ.get(FIXTURE_ENV)
        if override:
            bases += [Path(override) / kind, Path(override)]
        bases.append(data_dir)
        cands = [Path(ref)]
        for base in bases:
            cands.append(base / ref)
            cands += [base / f"{ref}{s}" for s in suffixes]
        # "cases/m22.case" names a file inside the bundled data tree
        cands.append(data_dir.parent / ref)
        for c in cands:
            if c.is_file():
                self._h.update(c.read_bytes())
                return c
        raise FileNotFoundError(f"no {kind} file {ref!r}")

    def table(self, ref: str) -> chartab.CharacterTable:
        try:
            path = self.resolve(ref, "tables", chartab.DATA_DIR, (".json",))
        except FileNotFoundError:
            # generated tables such as C8
            t = chartab.bundled_table(ref)
            self._h.update(json.dumps(chartab.cyclic_table_document(t.group_order), sort_keys=True).encode())
            return t
        return chartab.load_table(path)

    @property
    def digest(self) -> str:
        return self._h.hexdigest()


def _group_json(g: AbelianGroup) -> dict:
    return {"invariant_factors": g.to_json(), "text": str(g), "order": g.order}


def _spectrum_text(s: charclass.Spectrum) -> str:
    names = {0: "1"}
    if s.modulus % 2 == 0:
        names[s.modulus // 2] = "(-1)"
    if s.modulus % 4 == 0:
        names[s.modulus // 4] = "i"
        names[3 * s.modulus // 4] = "(-i)"
    return " ".join(f"{names.get(j, f'(z{s.modulus}^{j})')}^{{{m}}}" for j, m in s.multiplicities)


def _spectrum(inp: Inputs, a) -> tuple[chartab.CharacterTable, chartab.Character, charclass.Spectrum]:
    t = inp.table(a.table)
    ch = t.character(a.char)
    return t, ch, chartab.eigenvalue_multiset(ch, t, a.cls)


def _spectrum_report(inp: Inputs, a) -> tuple[dict, charclass.Spectrum]:
    t, ch, s = _spectrum(inp, a)
    return {"table": t.group_name, "character": ch.label, "class": a.cls, "spectrum": s.to_json(),
            "spectrum_text": _spectrum_text(s), "degree": s.degree}, s


def cmd_spectrum(inp: Inputs, a) -> dict:
    return _spectrum_report(inp, a)[0]


def cmd_chern(inp: Inputs, a) -> dict:
    out, s = _spectrum_report(inp, a)
    out["chern"] = charclass.chern_restriction(s).to_json()
    return out


def cmd_phalf(inp: Inputs, a) -> dict:
    out, s = _spectrum_report(inp, a)
    cls, cert = charclass.phalf_restriction(s, a.lift_order)
    p1 = charclass.p1_restriction(s).pullback(cls.modulus) if cls.modulus != s.modulus else charclass.p1_restriction(s)
    out["phalf"] = cls.to_json()
    out["p1"] = p1.to_json()
    out["doubling_holds"] = (2 * cls) == p1
    out["certificate"] = cert.to_json()
    return out


def cmd_indicator(inp: Inputs, a) -> dict:
    t = inp.table(a.table)
    ch = t.character(a.char)
    return {"table": t.group_name, "character": ch.label, "indicator": chartab.fs_indicator(ch, t)}


def cmd_pgroup(inp: Inputs, a) -> dict:
    if a.kind == "elem":
        d = pgroups.elem_abelian_cohomology(a.p, a.m, 4)
    elif a.kind == "extra-odd":
        d = pgroups.extraspecial_odd_cohomology(a.p, a.m, 4)
    else:
        if a.p != 2:
            raise ValueError("extra-2 needs --p 2")
        if a.arf is None:
            raise ValueError("extra-2 needs --arf")
        d = pgroups.extraspecial_two_h4(a.m, a.arf)
    return {"p": a.p, "kind": a.kind, "m": a.m, "arf": a.arf, "h4": d.to_json()}


def cmd_fixed(inp: Inputs, a) -> dict:
    path = inp.resolve(a.matrices, "matrices", Path(pgroups.__file__).parent.parent / "data" / "matrices", (".txt",))
    m = pgroups.load_module(path)
    chain = [f for f in a.functor.split(",") if f and f != "id"]
    out = pgroups.apply_functors(m, chain)
    dim, basis = pgroups.fixed_points(out)
    return {"module": out.name, "p": out.p, "dimension": out.dimension, "functors": chain,
            "fixed_dimension": dim, "fixed_basis": [list(v) for v in basis]}


def cmd_page(inp: Inputs, a) -> dict:
    path = inp.resolve(a.page_file, "pages", specseq.DATA_DIR, (".json",))
    run = specseq.run_page_file(path)
    a.text_lines = [run.pages[0].render()] + [p.render() for p in run.pages[1:]]
    return run.to_json()


def cmd_ledger(inp: Inputs, a) -> dict:
    path = inp.resolve(a.case_file, "cases", ledger.DATA_DIR, (".case",))
    return ledger.run_case(path).to_json()


def cmd_oracle(inp: Inputs, a) -> dict:
    path = inp.resolve(a.table, "mult", Path(oracle.__file__).parent / "data" / "mult", (".txt",))
    g = oracle.MultTable.from_file(path)
    cap = oracle.OVERRIDE_CAP if a.allow_large else oracle.DEFAULT_CAP
    h = oracle.bar_cohomology(g, a.degree, cap=cap)
    return {"order": g.order, "degree": a.degree, "cohomology": _group_json(h)}


def _text_default(result: Any, a=None, indent: str = "") -> list[str]:
    lines = []
    if isinstance(result, dict):
        for k in sorted(result):
            v = result[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{indent}{k}:")
                lines += _text_default(v, a, indent + "  ")
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
    elif isinstance(result, list):
        for item in result:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{indent}-")
                lines += _text_default(item, a, indent + "  ")
            else:
                lines.append(f"{indent}- {_scalar(item)}")
    else:
        lines.append(f"{indent}{_scalar(result)}")
    return lines


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(map(str, v)) + "]"
    if v is None:
        return "-"
    return str(v)


def _text_ledger(r: dict, a=None) -> list[str]:
    lines = [f"case: {r['case']}", f"fully mechanized: {'yes' if r['fully_mechanized'] else 'no'}"]
    if r["external_assertions"]:
        lines.append("external assertions:")
        lines += [f"  {e['id']}  {e['statement']}  [{e['citation']}]" for e in r["external_assertions"]]
    lines.append("facts:")
    for f in r["facts"]:
        prem = f" <- {', '.join(f['premises'])}" if f["premises"] else ""
        lines.append(f"  {f['id']:>4}  {f['statement']}  ({f['rule']}){prem}")
    for ab in r["abstentions"]:
        lines.append(f"abstained: {ab['rule']} on {ab['group']}: {ab['reason']}")
    lines.append("conclusions:")
    for c in r["conclusions"]:
        where = f"H^{c['degree']}({c['subject']})" + (f"_({c['prime']})" if c["prime"] else "")
        if c["status"] == "equals":
            lines.append(f"  {where} = {c['group_text']}")
        elif c["status"] == "order":
            lines.append(f"  |{where}| = {c['order_lower']}, type among {', '.join(c.get('candidates', []))}")
        else:
            up = c["order_upper"] if c["order_upper"] is not None else "?"
            lines.append(f"  {c['order_lower']} <= |{where}| <= {up} (divisibility interval)")
    return lines


def _text_page(r: dict, a) -> list[str]:
    lines = [f"page file: {r['name']}" + (f" at p = {r['prime']}" if r["prime"] else "")]
    lines += a.text_lines
    lines.append(f"degree-4 bounds by page: {', '.join(map(str, r['degree4_bounds']))}")
    lines.append(f"{r['label']}: {r['bound']}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="h4kit", description="Certified bounds on H^4 of finite groups.")
    ap.add_argument("--version", action="version", version=f"h4kit {__version__}")
    ap.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    def character_cmd(name: str, fn: Callable, help_: str, with_class: bool = True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("table")
        p.add_argument("char")
        if with_class:
            p.add_argument("cls", metavar="class")
        p.set_defaults(fn=fn)
        return p

    character_cmd("chern", cmd_chern, "c1 and c2 restricted to the cyclic subgroup generated by a class")
    character_cmd("phalf", cmd_phalf, "p1/2 restricted to a cyclic subgroup").add_argument(
        "--lift-order", type=int, default=None)
    character_cmd("spectrum", cmd_spectrum, "eigenvalue multiset of a class in a character")
    character_cmd("indicator", cmd_indicator, "Frobenius-Schur indicator", with_class=False)

    pg = sub.add_parser("pgroup", help="closed forms for p-groups")
    pgs = pg.add_subparsers(dest="pgroup_command", required=True)
    h4 = pgs.add_parser("h4", help="H^4 of an elementary abelian or extraspecial group")
    h4.add_argument("--p", type=int, required=True)
    h4.add_argument("--kind", choices=("elem", "extra-odd", "extra-2"), required=True)
    h4.add_argument("--m", type=int, required=True, help="rank n for elem, half-rank m for extraspecial")
    h4.add_argument("--arf", default=None, help="type of an extraspecial 2-group: 1 or plus, -1 or minus")
    h4.set_defaults(fn=cmd_pgroup)

    fx = sub.add_parser("fixed", help="fixed points of a functor applied to a matrix group module")
    fx.add_argument("matrices")
    fx.add_argument("--functor", required=True, help="comma-separated functor chain, e.g. dual,sym2")
    fx.set_defaults(fn=cmd_fixed)

    pr = sub.add_parser("page", help="spectral sequence pages")
    prs = pr.add_subparsers(dest="page_command", required=True)
    run = prs.add_parser("run")
    run.add_argument("page_file")
    run.set_defaults(fn=cmd_page, text_fn=_text_page)

    lg = sub.add_parser("ledger", help="deduction ledger")
    lgs = lg.add_subparsers(dest="ledger_command", required=True)
    run = lgs.add_parser("run")
    run.add_argument("case_file")
    run.set_defaults(fn=cmd_ledger, text_fn=_text_ledger)

    orc = sub.add_parser("oracle", help="brute-force group cohomology")
    orcs = orc.add_subparsers(dest="oracle_command", required=True)
    h = orcs.add_parser("h")
    h.add_argument("--table", required=True, help="multiplication-table file")
    h.add_argument("--degree", type=int, required=True)
    h.add_argument("--allow-large", action="store_true", help=f"raise the order cap to {oracle.OVERRIDE_CAP} (slow)")
    h.set_defaults(fn=cmd_oracle)
    return ap


def render(report: dict, a) -> str:
    if not a.text:
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    if report["status"] != "ok":
        return f"error ({report['status']}): {report['error']}\n"
    lines = getattr(a, "text_fn", _text_default)(report["result"], a)
    return "\n".join(lines) + "\n"


def run(argv: Sequence[str] | None = None) -> tuple[dict, int, str]:
    argv = list(sys.argv[1:] if argv is None else argv)
    # --text may appear anywhere on the line
    text = "--text" in argv
    argv = [x for x in argv if x != "--text"]
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        code = EXIT_OK if exc.code == 0 else EXIT_INPUT
        return {}, code, ""
    a.text = text
    inp = Inputs(argv)
    report: dict[str, Any] = {"command": argv, "version": __version__}
    try:
        result = a.fn(inp, a)
        report.update(status="ok", result=result, exit_code=EXIT_OK)
    except ledger.LedgerContradiction as exc:
        report.update(status="contradiction", error=str(exc), facts=[f.to_json() for f in exc.facts],
                      exit_code=EXIT_CONTRADICTION)
    except AssertionError as exc:
        report.update(status="internal", error=str(exc) or "assertion failed", exit_code=EXIT_INTERNAL)
    except INPUT_ERRORS as exc:
        report.update(status="input", error=str(exc), exit_code=EXIT_INPUT)
    report["inputs_digest"] = inp.digest
    return report, report["exit_code"], render(report, a)


def main(argv: Sequence[str] | None = None) -> int:
    report, code, out = run(argv)
    sys.stdout.write(out)
    if code and report:
        print(f"h4kit: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

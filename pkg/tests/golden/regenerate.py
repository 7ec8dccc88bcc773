"""Rewrite the golden reports from the current build: python tests/golden/regenerate.py"""

import json
from pathlib import Path

from h4kit.cli import run

HERE = Path(__file__).parent

if __name__ == "__main__":
    for name, argv in json.loads((HERE / "commands.json").read_text()).items():
        report, code, out = run(argv)
        if code:
            raise SystemExit(f"{name}: exit {code}: {report.get('error')}")
        (HERE / f"{name}.json").write_text(out)
        print(name)

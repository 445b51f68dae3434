"""``gcsurgery run <file>...``: execute scenario scripts and report.

Exit status: 0 when no expectation fails, 1 on any Fail, 2 on a syntax or
operation error.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from .dsl import (ScenarioError, ScenarioSyntaxError, emit_human, emit_json, execute_scenario,
                  parse_scenario)
from .groups import IdentifyBudgets
from .groups.cosets import DEFAULT_MAX_COSETS
from .groups.tietze import DEFAULT_BUDGET, DEFAULT_RELATOR_CAP


def bundled_scenarios() -> list[Path]:
    """The shipped scenario corpus, sorted by file name."""
    root = resources.files("gcsurgery") / "scenarios"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".gcs"))


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"{n} is not a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gcsurgery",
                                 description="Torus-surgery scenario runner.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run scenario scripts")
    run.add_argument("files", nargs="+", type=Path)
    run.add_argument("--json", action="store_true", help="emit the JSON report")
    run.add_argument("--max-cosets", type=_positive, default=DEFAULT_MAX_COSETS)
    run.add_argument("--tietze-budget", type=_positive, default=DEFAULT_BUDGET)
    run.add_argument("--relator-cap", type=_positive, default=DEFAULT_RELATOR_CAP)
    sub.add_parser("corpus", help="list the bundled scenario files")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        for p in bundled_scenarios():
            print(p)
        return 0

    budgets = IdentifyBudgets(args.max_cosets, args.tietze_budget, args.relator_cap)
    results, errors = [], []
    for path in args.files:
        try:
            script = parse_scenario(path.read_text(encoding="utf-8"), path.stem)
            results.append(execute_scenario(script, budgets))
        except ScenarioSyntaxError as exc:
            errors.append({"file": str(path), "line": exc.line, "column": exc.column,
                           "message": exc.message})
        except ScenarioError as exc:
            errors.append({"file": str(path), "line": exc.line, "directive": exc.index,
                           "message": exc.message})
        except OSError as exc:
            errors.append({"file": str(path), "message": str(exc)})

    if args.json:
        sys.stdout.write(emit_json(results, budgets, errors))
    else:
        sys.stdout.write(emit_human(results))
        for e in errors:
            where = f"{e['file']}:{e['line']}" if "line" in e else e["file"]
            if "column" in e:
                where += f":{e['column']}"
            print(f"error: {where}: {e['message']}", file=sys.stderr)
    if errors:
        return 2
    return 1 if any(r.failed for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_DIR = PROJECT_ROOT / "src"
if str(SRC_DIR) not in sys.path:
    sys.path.insert(0, str(SRC_DIR))

from jobs.registry import list_tasks  # noqa: E402
from jobs.runner import execute  # noqa: E402
from utils.logging import setup_logging  # noqa: E402


def _print_tasks(*, as_json: bool) -> None:
    catalog = list_tasks()
    if as_json:
        print(json.dumps(catalog, indent=2, sort_keys=True))
        return
    print(f"{'Task':<20} {'Rand':<5} {'Required':<18} Description")
    print("-" * 90)
    for entry in catalog:
        required = ",".join(entry["required"]) or "-"
        rand = "yes" if entry["randomized"] else "no"
        print(f"{entry['name']:<20} {rand:<5} {required:<18} {entry['description']}")


def _cmd_run(config: str) -> int:
    result = execute(config)
    if result.error is not None:
        print(f"config error: {result.error}", file=sys.stderr)
        return result.status
    print("\nVERIFICATION REPORT")
    print("=" * 90)
    for report in result.reports:
        print(report.summary())
    print("=" * 90)
    passed = sum(1 for r in result.reports if r.passed)
    print(f"{passed}/{len(result.reports)} reports passed; exit {result.status}")
    return result.status


def main(argv: list[str] | None = None) -> int:
    setup_logging()
    parser = argparse.ArgumentParser(description="Thermodynamic action verification runs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="Execute every task of a run config")
    p_run.add_argument("config", help="Path to a run config (config/runs/*.yaml)")

    p_list = sub.add_parser("list-tasks", help="Show the task catalog")
    p_list.add_argument("--json", action="store_true", help="Print the catalog as JSON")

    args = parser.parse_args(argv)
    if args.command == "list-tasks":
        _print_tasks(as_json=args.json)
        return 0
    return _cmd_run(args.config)


if __name__ == "__main__":
    raise SystemExit(main())

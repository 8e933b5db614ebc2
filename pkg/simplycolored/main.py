"""Command-line driver."""
import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

import structlog

from .commands import category, colored, constructions, convolution, structure
from .core.config import settings
from .core.exceptions import DefinitionError, WorkbenchError
from .core.logging import configure_logging
from .models.report import CommandReport

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="Report format.")
    common.add_argument("--output-dir", type=Path, default=settings.OUTPUT_DIR, help="Also write the report here.")
    common.add_argument("--log-level", default=None, help="Log level for stderr (default: settings).")

    parser = argparse.ArgumentParser(
        prog=settings.APP_NAME,
        description="Exact-arithmetic workbench for simply colored coalgebras.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (structure, colored, constructions, convolution, category):
        module.register(subparsers, [common])
    return parser


def _subject(args: argparse.Namespace) -> str:
    if getattr(args, "file", None) is not None:
        return Path(args.file).name
    files = getattr(args, "files", None) or []
    return "+".join(Path(f).name for f in files)


def render_text(report: CommandReport) -> str:
    lines = [f"{report.command}: {report.subject}"]
    if report.ok:
        lines.append("status: ok")
    else:
        status = f"status: FAILED: {report.error}"
        if report.witness is not None:
            status += f" (witness: {report.witness})"
        lines.append(status)
    for key, value in report.data.items():
        rendered = value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)
        lines.append(f"{key}: {rendered}")
    if report.checks:
        lines.append("checks:")
        for check in report.checks:
            mark = "ok" if check.passed else "FAIL"
            line = f"  [{mark}] {check.name}"
            if check.witness is not None:
                line += f" (witness: {check.witness})"
            if check.detail:
                line += f" - {check.detail}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def render(report: CommandReport, fmt: str) -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    return render_text(report)


def _write(report: CommandReport, text: str, args: argparse.Namespace) -> None:
    sys.stdout.write(text)
    if args.output_dir is None:
        return
    args.output_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(report.subject).stem.replace("+", "_") or "report"
    suffix = "json" if args.format == "json" else "txt"
    path = args.output_dir / f"{report.command}-{stem}.{suffix}"
    path.write_text(text, encoding="utf-8")
    logger.info("report_written", path=str(path))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand and print its report; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    configure_logging(args.log_level)

    try:
        report = args.handler(args)
        code = EXIT_OK if report.ok else EXIT_CHECK_FAILED
    except DefinitionError as exc:
        logger.warning("definition_rejected", line=exc.line, column=exc.column, reason=exc.reason)
        report = CommandReport(
            command=args.command,
            subject=_subject(args),
            ok=False,
            error=exc.reason,
            data={"line": exc.line, "column": exc.column},
        )
        code = EXIT_USAGE
    except WorkbenchError as exc:
        logger.warning("command_refused", command=args.command, error=exc.message, witness=exc.witness)
        report = CommandReport(
            command=args.command,
            subject=_subject(args),
            ok=False,
            error=exc.message,
            witness=exc.witness,
            data={"error_type": type(exc).__name__},
        )
        code = EXIT_CHECK_FAILED
    _write(report, render(report, args.format), args)
    return code


def main() -> None:
    raise SystemExit(run())

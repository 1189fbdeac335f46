"""Command-line entry point: ``examsched -t 54 --input-dir data --output-dir out``.

Stages run in order: ingest, validation, room decision, personnel
decision, crew organisation.  Each stage writes its artifacts before the
next one starts, so a failure leaves earlier outputs on disk.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import outputs
from .crew_organization import organize_crew
from .errors import (
    CrewError,
    IngestError,
    InsufficientCapacity,
    PersonnelError,
    ScheduleError,
    ValidationFailed,
)
from .ingest import load_bundle
from .model import DEFAULT_RATE, DEFAULT_SUPERVISOR_RATE, ScheduleConfig, validate_round
from .personnel_decision import decide_personnel
from .room_decision import schedule_round

log = logging.getLogger("examsched")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ROOMS = 4
EXIT_ASSIGNMENT = 5
EXIT_CREW = 6


@dataclass
class PipelineRun:
    config: ScheduleConfig
    stage_outputs: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="examsched",
        description="Choose rooms, proctors and room positions for a round of simultaneous exams.",
    )
    p.add_argument("-t", "--rate", type=_positive_int, default=DEFAULT_RATE,
                   help="students per proctor (default: %(default)s)")
    p.add_argument("--supervisor-rate", type=_positive_int, default=DEFAULT_SUPERVISOR_RATE,
                   help="students per supervisor (default: %(default)s)")
    p.add_argument("--input-dir", type=Path, default=Path("."),
                   help="directory holding the five input CSV files (default: current directory)")
    p.add_argument("--output-dir", type=Path, default=Path("."),
                   help="directory receiving the outputs (default: current directory)")
    p.add_argument("--check", action="store_true", help="only validate the input files")
    p.add_argument("--literal-num-level", action="store_true",
                   help="rank undergraduates above postgraduates above lecturers when placing crews")
    p.add_argument("-v", "--verbose", action="store_true", help="log stage timings")
    return p


def parse_flags(argv) -> ScheduleConfig:
    args = build_parser().parse_args(argv)
    return _config(args)


def _config(args) -> ScheduleConfig:
    return ScheduleConfig(
        rate=args.rate,
        supervisor_rate=args.supervisor_rate,
        input_dir=args.input_dir,
        output_dir=args.output_dir,
        literal_num_level=args.literal_num_level,
    )


def validate_inputs(config: ScheduleConfig):
    bundle = load_bundle(config.input_dir)
    report = validate_round(bundle.catalog, bundle.tests, bundle.personnel, bundle.log, bundle.lecturers)
    return bundle, report


def run_pipeline(config: ScheduleConfig) -> PipelineRun:
    run = PipelineRun(config)
    started = time.perf_counter()
    out = Path(config.output_dir)

    bundle, report = validate_inputs(config)
    run.diagnostics["validation"] = report
    for issue in report.warnings:
        log.warning("%s", issue)
    if not report.ok:
        raise ValidationFailed(report)

    out.mkdir(parents=True, exist_ok=True)
    outputs.clear_outputs(out)

    scheduled = schedule_round(bundle.tests, bundle.catalog, config)
    run.stage_outputs["room_decision"] = outputs.write_scheduled_rooms(out, scheduled)
    run.diagnostics["proctors_per_test"] = {s.test.label: s.total_proctors for s in scheduled}
    log.info("room decision done in %.3fs", time.perf_counter() - started)

    decision = decide_personnel(scheduled, bundle.personnel, bundle.log, bundle.lecturers)
    run.stage_outputs["personnel_decision"] = list(outputs.write_personnel(out, scheduled, decision))
    run.diagnostics["equity_bound"] = decision.assignment.bound
    run.diagnostics["alpha"] = decision.context.alpha
    log.info("personnel decision done in %.3fs", time.perf_counter() - started)

    programme = {
        s.test.label: organize_crew(s, decision.crews[s.test.label], config.literal_num_level)
        for s in scheduled
    }
    run.stage_outputs["crew_organization"] = outputs.write_programming(out, programme)
    run.diagnostics["runtime"] = time.perf_counter() - started
    log.info("crew organization done in %.3fs", run.diagnostics["runtime"])
    return run


def exit_code(exc: ScheduleError) -> int:
    if isinstance(exc, (IngestError, ValidationFailed)):
        return EXIT_DATA
    if isinstance(exc, InsufficientCapacity):
        return EXIT_ROOMS
    if isinstance(exc, PersonnelError):
        return EXIT_ASSIGNMENT
    if isinstance(exc, CrewError):
        return EXIT_CREW
    return 1


def _summary(run: PipelineRun) -> str:
    lines = []
    for label, w in run.diagnostics["proctors_per_test"].items():
        lines.append(f"{label}: {w} proctors")
    lines.append(f"equity bound z* = {run.diagnostics['equity_bound']} (service average {run.diagnostics['alpha']})")
    lines.append(f"outputs written to {run.config.output_dir}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    config = _config(args)
    try:
        if args.check:
            _, report = validate_inputs(config)
            for issue in report.issues:
                print(issue, file=sys.stderr)
            print("inputs are consistent" if report.ok else f"{len(report.errors)} error(s) found")
            return EXIT_OK if report.ok else EXIT_DATA
        run = run_pipeline(config)
    except ScheduleError as exc:
        print(f"examsched: {exc.stage} failed: {exc}", file=sys.stderr)
        return exit_code(exc)
    print(_summary(run))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

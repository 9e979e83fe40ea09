"""`cubes` command line: repl, run, render, serve, exercises.

Exit codes: 0 success, 1 incorrect exercise answer, 2 parse error,
3 evaluation error, 4 file/IO error, 5 cannot bind the service address.
"""

from __future__ import annotations

import argparse
import os
import socket
import sys
from typing import Optional, Sequence

from . import frameio
from .engine import eval_pipeline
from .errors import (EvalError, FrameError, LexError, ParseError,
                     format_source_error)
from .exercises import builtin_exercises, exercise_by_id, grade
from .lang import parse_pipeline
from .render import RenderOptions, render_frame

EXIT_OK = 0
EXIT_INCORRECT = 1
EXIT_PARSE = 2
EXIT_EVAL = 3
EXIT_IO = 4
EXIT_BIND = 5

DEFAULT_LISTEN = "127.0.0.1:7878"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubes",
        description="Classroom data wrangling with cube grids and pipelines.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("repl", help="interactive pipeline loop")
    p.add_argument("--data", help="CSV or JSON frame to start from")
    p.add_argument("--no-color", action="store_true")

    p = sub.add_parser("run", help="run a pipeline script over a data file")
    p.add_argument("script", help="script file, or - for stdin")
    p.add_argument("--data", required=True, help="input frame (CSV or JSON)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("render", help="draw a frame as cube glyphs")
    p.add_argument("--data", required=True)
    p.add_argument("--mode", choices=("ascii_cubes", "table"),
                   default="ascii_cubes")
    p.add_argument("--no-color", action="store_true")
    p.add_argument("--width", type=int, default=80)

    p = sub.add_parser("serve", help="start the session service")
    p.add_argument("--listen",
                   default=os.environ.get("LISTEN_ADDR", DEFAULT_LISTEN),
                   help=f"host:port (default {DEFAULT_LISTEN})")
    p.add_argument("--ttl", type=float,
                   default=float(os.environ.get("SESSION_TTL_SECS", 4 * 3600)),
                   help="session idle lifetime in seconds")
    p.add_argument("--fixture-dir", default=os.environ.get("FIXTURE_DIR"),
                   help="directory of extra CSV/JSON fixtures")

    p = sub.add_parser("exercises", help="list or grade exercises")
    ex_sub = p.add_subparsers(dest="exercises_command", required=True)
    ex_sub.add_parser("list", help="print exercise ids and prompts")
    p = ex_sub.add_parser("check", help="grade an answer file")
    p.add_argument("id", help="exercise id")
    p.add_argument("--answer", required=True,
                   help="file holding the submission, or - for stdin")

    return parser


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _script_to_source(text: str) -> Optional[str]:
    """Normalize a script to one pipeline source; None means the empty script."""
    stripped = text.strip()
    if not stripped:
        return None
    if stripped.startswith("data"):
        return stripped
    stages = []
    for line in stripped.splitlines():
        line = line.strip()
        if line.endswith("|>"):
            line = line[:-2].rstrip()
        if line:
            stages.append(line)
    return "data |> " + " |> ".join(stages)


def cmd_run(args: argparse.Namespace) -> int:
    try:
        script = _read_text(args.script)
        frame = frameio.load_frame(args.data)
    except (OSError, FrameError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    source = _script_to_source(script)
    result = frame
    if source is not None:
        try:
            pipeline = parse_pipeline(source)
        except (LexError, ParseError) as err:
            print(format_source_error(source, err), file=sys.stderr)
            return EXIT_PARSE
        try:
            result, _ = eval_pipeline(frame, pipeline)
        except EvalError as err:
            print(format_source_error(source, err), file=sys.stderr)
            return EXIT_EVAL
    text = (frameio.frame_to_json(result) if args.format == "json"
            else frameio.frame_to_csv(result))
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    try:
        frame = frameio.load_frame(args.data)
    except (OSError, FrameError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    try:
        options = RenderOptions(mode=args.mode, color=not args.no_color,
                                width=args.width)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    sys.stdout.write(render_frame(frame, options))
    return EXIT_OK


def cmd_repl(args: argparse.Namespace) -> int:
    from .repl import run_repl
    try:
        return run_repl(data_path=args.data, color=not args.no_color)
    except (OSError, FrameError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO


def _parse_listen(listen: str) -> tuple[str, int]:
    host, _, port_text = listen.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"listen address must be host:port, got {listen!r}")
    return host, int(port_text)


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    try:
        host, port = _parse_listen(args.listen)
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            probe.bind((host, port))
        finally:
            probe.close()
    except (OSError, ValueError) as err:
        print(f"error: cannot listen on {args.listen}: {err}", file=sys.stderr)
        return EXIT_BIND
    config = ServiceConfig(
        session_ttl_secs=args.ttl,
        instructor_token=os.environ.get("INSTRUCTOR_TOKEN"),
        fixture_dir=args.fixture_dir,
        cors_origins=tuple(
            o.strip() for o in os.environ.get("CORS_ORIGINS", "*").split(",")),
    )
    uvicorn.run(create_app(config), host=host, port=port, log_level="info")
    return EXIT_OK


def cmd_exercises(args: argparse.Namespace) -> int:
    if args.exercises_command == "list":
        for ex in builtin_exercises():
            print(f"{ex.id:14s} {ex.prompt}")
        return EXIT_OK
    try:
        exercise = exercise_by_id(args.id)
    except KeyError:
        print(f"error: no exercise named {args.id!r}", file=sys.stderr)
        return EXIT_IO
    try:
        submission = _read_text(args.answer)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    report = grade(exercise, submission)
    print(report.verdict)
    if report.error is not None:
        print(format_source_error(submission.strip(), report.error))
    for message in report.triggered_pitfalls:
        print(f"hint: {message}")
    return EXIT_OK if report.verdict == "correct" else EXIT_INCORRECT


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "repl": cmd_repl,
        "run": cmd_run,
        "render": cmd_render,
        "serve": cmd_serve,
        "exercises": cmd_exercises,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

"""Interactive pipeline loop for the terminal.

Students type pipelines (with or without the leading `data |>`); each stage
prints its verb, the resulting grid, and what changed ("rows kept: 1,3").
Results commit to the session, so pipelines compose across lines. A trailing
`|>` or an open parenthesis continues onto the next line.

Meta-commands:
    :help                 list commands
    :undo                 restore the frame before the last pipeline
    :reset                restore the session's starting frame
    :load PATH            start over from a CSV or JSON file
    :save PATH            write the current frame (CSV, or JSON by extension)
    :exercises            list exercise ids and prompts
    :check ID             grade the last pipeline against an exercise
    :quit                 leave
"""

from __future__ import annotations

from typing import IO, Optional

from . import frameio
from .engine import eval_pipeline
from .errors import CubesError, SourceError, format_source_error
from .exercises import builtin_exercises, exercise_by_id, grade
from .fixtures import figure1
from .lang import parse_pipeline, pretty_print
from .model import CubeFrame
from .render import RenderOptions, diff_annotations, render_frame

PROMPT = "cubes> "
CONTINUATION = "  ...> "


def _needs_continuation(source: str) -> bool:
    if source.rstrip().endswith("|>"):
        return True
    return source.count("(") > source.count(")")


class Repl:
    def __init__(self, frame: Optional[CubeFrame] = None, color: bool = True):
        self.initial = frame if frame is not None else figure1()
        self.current = self.initial
        self.undo_stack: list[CubeFrame] = []
        self.last_source: Optional[str] = None
        self.options = RenderOptions(color=color)

    # -- command handling ----------------------------------------------------

    def handle(self, source: str, out: IO[str]) -> bool:
        """Process one complete input; returns False when the loop should end."""
        source = source.strip()
        if not source:
            return True
        if source.startswith(":"):
            return self._meta(source, out)
        self._run_pipeline(source, out)
        return True

    def _run_pipeline(self, source: str, out: IO[str]) -> None:
        if not source.startswith("data"):
            source = "data |> " + source
        try:
            pipeline = parse_pipeline(source)
            result, traces = eval_pipeline(self.current, pipeline)
        except SourceError as err:
            out.write(format_source_error(source, err) + "\n")
            return
        except CubesError as err:
            out.write(f"error: {err}\n")
            return
        for trace in traces:
            out.write(f"|> {pretty_print(trace.verb)}\n")
            out.write(render_frame(trace.output_snapshot, self.options))
            for note in trace.notes:
                out.write(f"   note: {note}\n")
            for line in diff_annotations(trace.diff):
                out.write(f"   {line}\n")
        if not traces:
            out.write(render_frame(self.current, self.options))
        self.undo_stack.append(self.current)
        self.current = result
        self.last_source = source

    def _meta(self, source: str, out: IO[str]) -> bool:
        command, _, argument = source.partition(" ")
        argument = argument.strip()
        if command in (":quit", ":exit", ":q"):
            return False
        if command == ":help":
            out.write(__doc__.split("Meta-commands:\n", 1)[1])
            return True
        if command == ":undo":
            if self.undo_stack:
                self.current = self.undo_stack.pop()
                out.write(render_frame(self.current, self.options))
            else:
                out.write("nothing to undo\n")
            return True
        if command == ":reset":
            self.undo_stack.append(self.current)
            self.current = self.initial
            out.write(render_frame(self.current, self.options))
            return True
        if command == ":load":
            try:
                loaded = frameio.load_frame(argument)
            except (OSError, CubesError) as err:
                out.write(f"cannot load {argument}: {err}\n")
                return True
            self.initial = self.current = loaded
            self.undo_stack.clear()
            self.last_source = None
            out.write(render_frame(self.current, self.options))
            return True
        if command == ":save":
            try:
                if argument.endswith(".json"):
                    frameio.save_json(self.current, argument)
                else:
                    frameio.save_csv(self.current, argument)
            except OSError as err:
                out.write(f"cannot save {argument}: {err}\n")
                return True
            out.write(f"saved {argument}\n")
            return True
        if command == ":exercises":
            for ex in builtin_exercises():
                out.write(f"{ex.id:14s} {ex.prompt}\n")
            return True
        if command == ":check":
            self._check(argument, out)
            return True
        out.write(f"unknown command {command}; :help lists commands\n")
        return True

    def _check(self, exercise_id: str, out: IO[str]) -> None:
        try:
            exercise = exercise_by_id(exercise_id)
        except KeyError:
            out.write(f"no exercise named {exercise_id!r}; "
                      ":exercises lists them\n")
            return
        if self.last_source is None:
            out.write("run a pipeline first, then :check it\n")
            return
        report = grade(exercise, self.last_source)
        out.write(f"{report.verdict}\n")
        for message in report.triggered_pitfalls:
            out.write(f"   hint: {message}\n")

    # -- the loop --------------------------------------------------------------

    def interact(self, stdin: IO[str], stdout: IO[str]) -> None:
        stdout.write(render_frame(self.current, self.options))
        buffer = ""
        while True:
            stdout.write(CONTINUATION if buffer else PROMPT)
            stdout.flush()
            line = stdin.readline()
            if not line:
                stdout.write("\n")
                return
            buffer = (buffer + "\n" + line if buffer else line).rstrip("\n")
            if _needs_continuation(buffer):
                continue
            source, buffer = buffer, ""
            if not self.handle(source, stdout):
                return


def run_repl(data_path: Optional[str] = None, color: bool = True,
             stdin: Optional[IO[str]] = None,
             stdout: Optional[IO[str]] = None) -> int:
    import sys
    frame = frameio.load_frame(data_path) if data_path else None
    repl = Repl(frame, color=color)
    repl.interact(stdin or sys.stdin, stdout or sys.stdout)
    return 0

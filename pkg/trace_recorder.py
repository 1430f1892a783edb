#!/usr/bin/env python3
"""
Trace Recorder
Collects rows of a trace or sweep with status callbacks and writes them as CSV
"""

import csv
import sys
from typing import Callable, List, Optional, Sequence

from basis_errors import DimensionMismatchError

WERNER_SWEEP_HEADER = ("z", "discord", "min_basis_entropy")
GROVER_HEADER = ("k", "p_success", "basis_entropy")
SHOR_HEADER = ("step", "basis_entropy")
DECOHERE_HEADER = ("step", "basis_entropy", "state_entropy")


def format_cell(value) -> str:
    """Integers verbatim, reals with 12 significant digits"""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return f"{float(value):.12g}"


def emit_csv(header: Sequence[str], rows: Sequence[Sequence], path: str):
    """Write header plus rows; every line is newline-terminated"""
    width = len(header)
    for index, row in enumerate(rows):
        if len(row) != width:
            raise DimensionMismatchError(f"row {index} has {len(row)} cells, header has {width}")

    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([format_cell(value) for value in row] for row in rows)


class TraceRecorder:
    """Accumulates the rows of one named trace"""

    def __init__(self, header: Sequence[str]):
        self.header = tuple(header)
        self.rows: List[tuple] = []
        self.recording = False
        self.trace_name = ""

        # Callback for progress reporting
        self.status_callback = None

    def set_status_callback(self, callback: Callable[[str, str], None]):
        """Set callback for status updates (message, level)"""
        self.status_callback = callback

    def _notify(self, message: str, level: str):
        if self.status_callback:
            try:
                self.status_callback(message, level)
            except Exception as e:
                print(f"⚠️  Warning: Status callback error: {e}", file=sys.stderr)

    def _require_recording(self):
        if not self.recording:
            raise RuntimeError("no trace is being recorded; call start_recording first")

    def start_recording(self, trace_name: str):
        self.trace_name = trace_name
        self.rows = []
        self.recording = True
        self._notify(f"🔄 Recording trace '{trace_name}'", "info")

    def add_row(self, *values):
        self._require_recording()
        if len(values) != len(self.header):
            raise DimensionMismatchError(f"trace '{self.trace_name}' expects {len(self.header)} cells, got {len(values)}")
        self.rows.append(tuple(values))

    def finish_recording(self, path: Optional[str] = None) -> List[tuple]:
        """Stop recording and write the CSV when a path is given"""
        self._require_recording()
        self.recording = False
        if path:
            emit_csv(self.header, self.rows, path)
            self._notify(f"💾 Wrote {len(self.rows)} rows to {path}", "success")
        else:
            self._notify(f"✅ Trace '{self.trace_name}' finished with {len(self.rows)} rows", "success")
        return list(self.rows)

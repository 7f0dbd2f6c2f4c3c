"""Black-box objective served by an external process.

Wire protocol, one request in flight at a time: the client writes a line of
D space-separated decimal coordinates, the process answers with one line
holding a decimal value, or ``ERROR <message>``.
"""

from __future__ import annotations

import logging
import math
import subprocess
from collections.abc import Sequence

import numpy as np

log = logging.getLogger(__name__)


class OracleError(RuntimeError):
    """Spawn failure, protocol violation or an error reported by the process."""


def format_request(x) -> str:
    # repr of a Python float is locale independent and round-trips exactly
    return " ".join(repr(float(v)) for v in np.atleast_1d(x)) + "\n"


def parse_reply(line: str) -> float:
    text = line.strip()
    if text.startswith("ERROR"):
        raise OracleError(f"oracle reported: {text[5:].strip() or 'unspecified error'}")
    try:
        value = float(text)
    except ValueError:
        raise OracleError(f"non-numeric oracle reply: {line!r}") from None
    if not math.isfinite(value):
        raise OracleError(f"non-finite oracle reply: {line!r}")
    return value


class ExternalOracle:
    """Objective handle backed by a long-lived subprocess.

    Parameters
    ----------
    command : sequence of str
        Program and arguments, as for `subprocess.Popen`.
    dim : int, optional
        If given, every request must have exactly this many coordinates.
    """

    def __init__(self, command: Sequence[str], dim: int | None = None):
        if not command:
            raise OracleError("empty oracle command")
        self.command = list(command)
        self.dim = dim
        self.n_calls = 0
        try:
            self._proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise OracleError(f"cannot start oracle {self.command[0]!r}: {exc}") from exc

    def __call__(self, x) -> float:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.dim is not None and x.shape[0] != self.dim:
            raise OracleError(f"expected {self.dim} coordinates, got {x.shape[0]}")
        proc = self._proc
        if proc.poll() is not None:
            raise OracleError(f"oracle exited with status {proc.returncode}")
        try:
            proc.stdin.write(format_request(x))
            proc.stdin.flush()
            line = proc.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise OracleError(f"oracle pipe closed: {exc}") from exc
        if not line:
            raise OracleError("oracle closed its output (EOF)")
        self.n_calls += 1
        return parse_reply(line)

    def close(self, timeout: float = 5.0) -> None:
        proc = getattr(self, "_proc", None)
        if proc is None or proc.poll() is not None:
            return
        try:
            proc.stdin.close()
            proc.wait(timeout=timeout)
        except (OSError, subprocess.TimeoutExpired):
            log.warning("oracle did not exit, terminating")
            proc.kill()
            proc.wait()
        finally:
            if proc.stdout:
                proc.stdout.close()

    def __enter__(self) -> ExternalOracle:
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def __del__(self):
        self.close(timeout=1.0)


def spawn_external_oracle(command: Sequence[str], dim: int | None = None) -> ExternalOracle:
    return ExternalOracle(command, dim)

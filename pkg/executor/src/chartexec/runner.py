"""Parent-side orchestration: one fresh subprocess per script, a private
temp working directory, a hard wall-clock timeout, and display-less backends.
"""

from __future__ import annotations

import json
import os
import shutil
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

STDERR_TAIL_CHARS = 2000


@dataclass
class ExecStatus:
    outcome: str  # ok | exec_error | timeout | empty_figure
    stderr_tail: str
    duration_ms: int


def _write_status(out_dir: Path, status: ExecStatus) -> None:
    (out_dir / "status.json").write_text(
        json.dumps(
            {
                "outcome": status.outcome,
                "stderr_tail": status.stderr_tail,
                "duration_ms": status.duration_ms,
            },
            indent=1,
            sort_keys=True,
        ),
        encoding="utf-8",
    )


def execute_script(
    script_path: str | Path,
    timeout_seconds: float,
    out_dir: str | Path,
    render: bool = False,
) -> ExecStatus:
    """Run one candidate script in isolation; results land in out_dir.

    Writes status.json always; figure.json (and optionally render.png) when
    the script ran. The subprocess works inside a throwaway directory, so
    scripts cannot touch the host corpus through relative paths.
    """
    script = Path(script_path)
    out = Path(out_dir).resolve()
    out.mkdir(parents=True, exist_ok=True)

    if not script.is_file():
        status = ExecStatus("exec_error", f"script not found: {script}", 0)
        _write_status(out, status)
        return status

    env = os.environ.copy()
    env["MPLBACKEND"] = "Agg"

    start = time.monotonic()
    with tempfile.TemporaryDirectory(prefix="chartexec-") as tmp:
        sandbox_script = Path(tmp) / script.name
        shutil.copyfile(script, sandbox_script)
        cmd = [sys.executable, "-m", "chartexec.harness", str(sandbox_script), str(out)]
        if render:
            cmd.append("--render")
        proc = subprocess.Popen(
            cmd, cwd=tmp, env=env,
            stdout=subprocess.PIPE, stderr=subprocess.PIPE,
        )
        try:
            _, stderr = proc.communicate(timeout=timeout_seconds)
        except subprocess.TimeoutExpired:
            proc.kill()
            proc.communicate()
            status = ExecStatus(
                "timeout",
                f"killed after {timeout_seconds}s wall clock",
                int((time.monotonic() - start) * 1000),
            )
            _write_status(out, status)
            return status

    duration_ms = int((time.monotonic() - start) * 1000)
    stderr_tail = stderr.decode("utf-8", errors="replace")[-STDERR_TAIL_CHARS:]

    status_file = out / "status.json"
    if not status_file.is_file():
        # the harness itself died (segfault, OOM kill): report, don't raise
        status = ExecStatus("exec_error", stderr_tail, duration_ms)
        _write_status(out, status)
        return status

    reported = json.loads(status_file.read_text(encoding="utf-8"))
    status = ExecStatus(
        outcome=reported.get("outcome", "exec_error"),
        stderr_tail=reported.get("stderr_tail") or stderr_tail,
        duration_ms=duration_ms,
    )
    _write_status(out, status)
    return status

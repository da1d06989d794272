"""Command-line entry: chartexec <script> --timeout N --out-dir D [--render].

Exit code is 0 whenever a status.json was written, regardless of the
script's own outcome; orchestration failures (unwritable out-dir) exit 1.
"""

from __future__ import annotations

import argparse
import sys

from chartexec.runner import execute_script


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="chartexec",
        description="Run a plotting script in isolation and serialize its figure",
    )
    parser.add_argument("script", help="path to the candidate Python script")
    parser.add_argument("--timeout", type=float, default=30.0,
                        help="wall-clock seconds before the run is killed")
    parser.add_argument("--out-dir", required=True,
                        help="directory for figure.json / status.json / render.png")
    parser.add_argument("--render", action="store_true",
                        help="also rasterize the captured figure when possible")
    args = parser.parse_args(argv)
    if args.timeout <= 0:
        parser.error("--timeout must be positive")
    try:
        status = execute_script(
            args.script, timeout_seconds=args.timeout,
            out_dir=args.out_dir, render=args.render,
        )
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{status.outcome} ({status.duration_ms} ms)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

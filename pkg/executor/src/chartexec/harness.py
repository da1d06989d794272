"""In-process harness executed inside the sandboxed child interpreter.

Runs the candidate script with network access stubbed out, then captures
whatever figures it created (plotly figures found in the script's namespace,
matplotlib figures from the global registry) and serializes the first one
with content into the canonical document. Always writes status.json and
exits 0; failures are reported, not raised.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import traceback
from pathlib import Path

STDERR_TAIL_CHARS = 2000


def _disable_network() -> None:
    import socket

    def deny(*_args, **_kwargs):
        raise OSError("network access is disabled inside the executor sandbox")

    socket.socket.connect = lambda self, *a, **k: deny()
    socket.socket.connect_ex = lambda self, *a, **k: deny()
    socket.create_connection = deny
    socket.getaddrinfo = deny


def _neutralize_plotly_show() -> None:
    """Make figure display a no-op the moment plotly is imported.

    There is no display in the sandbox, and the available renderers raise
    rather than degrade, so show() must never run for real.
    """
    import builtins

    real_import = builtins.__import__
    state = {"patched": False}

    def hook(name, *args, **kwargs):
        module = real_import(name, *args, **kwargs)
        if not state["patched"] and name.split(".")[0] == "plotly":
            try:
                import plotly.io as pio
                from plotly.basedatatypes import BaseFigure

                pio.show = lambda *a, **k: None
                BaseFigure.show = lambda self, *a, **k: None
                state["patched"] = True
            except Exception:
                pass
        return module

    builtins.__import__ = hook


def _json_default(obj):
    # numpy scalars and datetimes from user data degrade gracefully
    try:
        return float(obj)
    except (TypeError, ValueError):
        return str(obj)


def _has_content(doc: dict) -> bool:
    for trace in doc.get("data", []):
        for key, value in trace.items():
            if key in ("type", "name", "subplot", "colors", "colorscale"):
                continue
            if isinstance(value, list) and len(value) > 0:
                return True
    return False


def _capture_documents(script_globals: dict) -> list[dict]:
    docs: list[dict] = []
    if "plotly" in sys.modules:
        try:
            from plotly.basedatatypes import BaseFigure

            from chartexec.plotly_capture import capture_plotly

            figures = [
                value for value in script_globals.values()
                if isinstance(value, BaseFigure)
            ]
            if not figures:
                # not bound at module level (e.g. built inside a function and
                # only shown): fall back to any still-alive figure object
                import gc

                figures = [o for o in gc.get_objects() if isinstance(o, BaseFigure)]
            for fig in figures:
                docs.append(capture_plotly(fig))
        except Exception:
            docs.append({"data": [], "layout": {},
                         "rejections": [{"reason": "plotly capture failed"}]})
    if "matplotlib" in sys.modules:
        try:
            import matplotlib.pyplot as plt

            from chartexec.mpl_capture import capture_matplotlib

            for num in plt.get_fignums():
                docs.append(capture_matplotlib(plt.figure(num)))
        except Exception:
            docs.append({"data": [], "layout": {},
                         "rejections": [{"reason": "matplotlib capture failed"}]})
    return docs


def _render_png(out_dir: Path) -> str | None:
    if "matplotlib" not in sys.modules:
        return None
    try:
        import matplotlib.pyplot as plt

        nums = plt.get_fignums()
        if not nums:
            return None
        target = out_dir / "render.png"
        plt.figure(nums[0]).savefig(target)
        return str(target)
    except Exception:
        return None


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="chartexec-harness")
    parser.add_argument("script")
    parser.add_argument("out_dir")
    parser.add_argument("--render", action="store_true")
    args = parser.parse_args(argv)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    _disable_network()
    _neutralize_plotly_show()

    status = {"outcome": "ok", "stderr_tail": "", "duration_ms": 0}
    script_globals: dict = {
        "__name__": "__main__",
        "__file__": str(Path(args.script).resolve()),
        "__builtins__": __builtins__,
    }
    start = time.perf_counter()
    failed = False
    try:
        source = Path(args.script).read_text(encoding="utf-8", errors="replace")
        code = compile(source, args.script, "exec")
        exec(code, script_globals)
    except SystemExit as exc:
        if exc.code not in (None, 0):
            failed = True
            status["outcome"] = "exec_error"
            status["stderr_tail"] = f"SystemExit: {exc.code}"
    except BaseException:
        failed = True
        status["outcome"] = "exec_error"
        status["stderr_tail"] = traceback.format_exc()[-STDERR_TAIL_CHARS:]
    status["duration_ms"] = int((time.perf_counter() - start) * 1000)

    if not failed:
        docs = _capture_documents(script_globals)
        chosen = next((d for d in docs if _has_content(d)), None)
        if chosen is None:
            status["outcome"] = "empty_figure"
            chosen = docs[0] if docs else {"data": [], "layout": {}, "rejections": []}
        (out_dir / "figure.json").write_text(
            json.dumps(chosen, indent=1, sort_keys=True, default=_json_default),
            encoding="utf-8",
        )
        if args.render:
            rendered = _render_png(out_dir)
            if rendered:
                status["render"] = "render.png"

    (out_dir / "status.json").write_text(
        json.dumps(status, indent=1, sort_keys=True), encoding="utf-8"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point.

    dmanifold run --scene S.json [--task NAME] [--jobs N] [--emit-certificates]
    dmanifold etale --scene S.json MORPHISM WITNESSES
    dmanifold corner --scene S.json boundary X --args '{"point": [0, 0]}'
    dmanifold canon --scene S.json

Exit status: 0 when every task passes, 1 when some task fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from ..atlas import DEFAULT_CAP
from .scene import SceneError, canonical, dumps, load_scene, scene_from_data
from .tasks import SIGNATURES, Context, TaskInputError, bind_positional, run_task

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _run_one(payload: tuple):
    """Worker body; re-parses the scene so nothing mutable crosses processes."""
    data, source, task, cap, seed = payload
    try:
        sc = scene_from_data(data, source)
        return "ok", run_task(Context(sc, cap, seed), task)
    except SceneError as e:
        return "input", str(e)


def run_scene(scene, *, task: str | None = None, jobs: int = 1, cap: int = DEFAULT_CAP, seed: int = 0,
              certificates: bool = False, timing: bool = False) -> dict:
    """Execute the scene's tasks in order and assemble the report.  Raises SceneError on bad input."""
    scene.resolve_all()
    tasks = scene.tasks
    if task is not None:
        tasks = [t for t in tasks if t["name"] == task]
        if not tasks:
            raise SceneError(f"no task named {task!r}")
    if jobs > 1 and len(tasks) > 1:
        raw = {"declarations": scene.declarations, "tasks": []}
        payloads = [(raw, "<scene>", t, cap, seed) for t in tasks]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, payloads))  # map preserves task order
        outcomes = []
        for kind, val in results:
            if kind == "input":
                raise SceneError(val)
            outcomes.append(val)
    else:
        ctx = Context(scene, cap, seed)
        outcomes = [run_task(ctx, t) for t in tasks]
    entries = [o.to_json(certificates, timing) for o in outcomes]
    passed = sum(o.status == "PASS" for o in outcomes)
    return {
        "status": "PASS" if passed == len(outcomes) else "FAIL",
        "summary": {"passed": passed, "failed": len(outcomes) - passed, "total": len(outcomes)},
        "tasks": entries,
    }


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", required=True, help="scene file (JSON)")
    common.add_argument("--emit-certificates", action="store_true", help="keep certificate blocks in the report")
    common.add_argument("--max-degree", type=int, default=DEFAULT_CAP,
                        help="localization cap N for atlas membership tests (p^N r in the ideal)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property tasks")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock seconds per task (makes the report non-reproducible)")
    common.add_argument("--output", help="write the report here instead of stdout")

    ap = argparse.ArgumentParser(prog="dmanifold", description="Check d-manifold and corner data in scene files.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="run the scene's tasks")
    run.add_argument("--task", help="run only this task")
    run.add_argument("--jobs", type=int, default=1, help="worker processes (report order is unchanged)")
    sub.add_parser("canon", parents=[common], help="print the scene in canonical form")
    for op, sig in SIGNATURES.items():
        p = sub.add_parser(op, parents=[common], help=f"one-off {op} task ({', '.join(sig)})")
        p.add_argument("names", nargs="*", help="scene entity names")
        p.add_argument("--args", default="{}", help="extra keyword arguments as a JSON object")
    return ap


def _emit(doc, path: str | None):
    text = dumps(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    try:
        scene = load_scene(args.scene)
        if args.command == "canon":
            _emit(canonical(scene), args.output)
            return EXIT_PASS
        if args.command == "run":
            report = run_scene(scene, task=args.task, jobs=max(1, args.jobs), cap=args.max_degree, seed=args.seed,
                               certificates=args.emit_certificates, timing=args.timing)
        else:
            try:
                extra = json.loads(args.args)
            except json.JSONDecodeError as e:
                raise SceneError(f"--args:{e.lineno}:{e.colno}: {e.msg}") from None
            if not isinstance(extra, dict):
                raise SceneError("--args must be a JSON object")
            kwargs = {**bind_positional(args.command, args.names), **extra}
            scene.tasks = [{"name": args.command, "op": args.command, "args": kwargs}]
            report = run_scene(scene, cap=args.max_degree, seed=args.seed,
                               certificates=args.emit_certificates, timing=args.timing)
            # a one-off command reports the verdict itself, not an expectation check
            res = report["tasks"][0]["result"]
            if res.get("ok") is False:
                report["status"] = "FAIL"
    except (SceneError, TaskInputError) as e:
        print(f"dmanifold: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report, args.output)
    return EXIT_PASS if report["status"] == "PASS" else EXIT_FAIL



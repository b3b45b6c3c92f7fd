"""Run every scene in fixtures/ and print one line per task.

Usage: python3 scripts/run_fixtures.py [--dir fixtures] [--jobs 1] [--update-golden]
Exit status is 0 only if every task in every scene passes and, unless
--update-golden is given, every report matches its copy in <dir>/golden/.
"""

from __future__ import annotations

import argparse
import pathlib

from dmanifold.cli import SceneError, load_scene, run_scene
from dmanifold.cli.scene import dumps

ROOT = pathlib.Path(__file__).resolve().parent.parent


def golden_report(scene_path: pathlib.Path, jobs: int = 1) -> str:
    """The report stored as a regression reference: certificates kept, no timing."""
    return dumps(run_scene(load_scene(str(scene_path)), jobs=jobs, certificates=True))


def run_dir(path: pathlib.Path, jobs: int = 1, update_golden: bool = False) -> tuple:
    rows, ok = [], True
    golden = path / "golden"
    for f in sorted(path.glob("*.json")):
        try:
            rep = run_scene(load_scene(str(f)), jobs=jobs)
            text = golden_report(f, jobs)
        except SceneError as e:
            rows.append((f.name, "-", "ERROR", str(e)))
            ok = False
            continue
        ok &= rep["status"] == "PASS"
        ref = golden / f.name
        if update_golden:
            golden.mkdir(exist_ok=True)
            ref.write_text(text, encoding="utf-8")
        elif ref.exists() and ref.read_text(encoding="utf-8") != text:
            rows.append((f.name, "-", "DIFF", f"report differs from {ref.relative_to(path)}"))
            ok = False
        if not rep["tasks"]:
            rows.append((f.name, "-", "PASS", "no tasks"))
        for t in rep["tasks"]:
            detail = "; ".join(fl["path"] for fl in t.get("failures", []))
            rows.append((f.name, t["name"], t["status"], detail))
    return rows, ok


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--dir", default=str(ROOT / "fixtures"))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--update-golden", action="store_true", help="rewrite the stored reference reports")
    args = ap.parse_args()
    rows, ok = run_dir(pathlib.Path(args.dir), args.jobs, args.update_golden)
    w = max((len(r[0]) for r in rows), default=0)
    for scene, task, status, detail in rows:
        print(f"{status:5} {scene:{w}} {task} {detail}".rstrip())
    print("all fixtures pass" if ok else "some fixtures FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())

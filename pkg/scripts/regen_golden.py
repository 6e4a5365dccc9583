"""Rewrite the CLI golden files listed in instances/golden/manifest.json.

Run from the repository root after an intentional output change.
"""
import io
import json
import pathlib

from gradecone.cli import run

ROOT = pathlib.Path(__file__).resolve().parents[1]
GOLDEN = ROOT / "instances" / "golden"


def main():
    for name, argv in json.loads((GOLDEN / "manifest.json").read_text()):
        out = io.StringIO()
        code = run([str(ROOT / a) if a.startswith("instances/") else a for a in argv], out, io.StringIO())
        (GOLDEN / name).write_text(out.getvalue())
        print(f"{name}: exit {code}")


if __name__ == "__main__":
    main()

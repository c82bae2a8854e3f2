"""Regenerate tests/golden from the current CLI: ``python tests/make_golden.py``."""

import tempfile
from pathlib import Path

from cli_cases import GOLDEN_CASES, GOLDEN_DIR, invoke, populate

if __name__ == "__main__":
    GOLDEN_DIR.mkdir(exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        populate(Path(tmp))
        for name, (argv, expected) in GOLDEN_CASES.items():
            code, text = invoke(argv, Path(tmp))
            if code != expected:
                raise SystemExit(f"{name}: exit {code}, expected {expected}\n{text}")
            (GOLDEN_DIR / f"{name}.txt").write_bytes(text.encode("utf-8"))
            print(f"{name}: {len(text.splitlines())} lines")

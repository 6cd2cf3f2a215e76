#!/usr/bin/env python3
"""Run the eight acceptance criteria and print one line per criterion."""
from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from test_acceptance import main  # noqa: E402

if __name__ == "__main__":
    raise SystemExit(main())

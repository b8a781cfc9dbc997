#!/usr/bin/env python3
"""Run the acceptance suite, one printed line per criterion."""

import pathlib
import sys

import pytest

if __name__ == "__main__":
    root = pathlib.Path(__file__).resolve().parent.parent
    sys.exit(pytest.main(["-s", "-q", str(root / "tests" / "test_acceptance.py"),
                          *sys.argv[1:]]))

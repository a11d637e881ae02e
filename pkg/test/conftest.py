"""Shared helpers for the test suite."""

import os
import sys
from itertools import product

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from hypothesis import strategies as st  # noqa: E402

paths = st.text(alphabet="12", min_size=1, max_size=20)
capacities = st.integers(min_value=1, max_value=5)


def every_path(L):
    return ["".join(letters) for letters in product("12", repeat=L)]


def highest_paths(L):
    from src.dynamics.evolution import is_highest

    return [p for p in every_path(L) if is_highest(p)]

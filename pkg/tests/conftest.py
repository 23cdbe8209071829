"""
Pytest fixtures shared by the hoarith tests.
"""

import pytest

from hoarith.corpus import PROGRAMS


@pytest.fixture
def count_up():
    """The count-up program y := 0; while y < x do y := y + 1 od, over (x, y)."""
    program = PROGRAMS["count_up"]
    return program.prog, program.xs

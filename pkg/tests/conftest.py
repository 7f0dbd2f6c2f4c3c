import sys
import textwrap

import pytest


@pytest.fixture
def script(tmp_path):
    """Write a small Python program and return the command that runs it."""

    def make(name, body):
        path = tmp_path / name
        path.write_text(textwrap.dedent(body))
        return [sys.executable, str(path)]

    return make


SQUARE = """
import sys
for line in sys.stdin:
    x = float(line)
    print(repr(x * x), flush=True)
"""

PLATEAU = """
import math, sys
for line in sys.stdin:
    x1, x2 = map(float, line.split())
    print(abs(math.floor(x1)) + abs(math.floor(x2)), flush=True)
"""


@pytest.fixture
def square_cmd(script):
    return script("square.py", SQUARE)


@pytest.fixture
def plateau_cmd(script):
    return script("plateau.py", PLATEAU)

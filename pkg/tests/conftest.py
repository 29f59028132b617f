import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from quiver_dga import FormalSum, Generator, QuiverDGA, Word, idempotent  # noqa: E402


@pytest.fixture
def path_a3() -> QuiverDGA:
    """1 -> 2 -> 3 with d(a13) = a23 a12."""
    gens = {
        "a12": Generator("a12", "1", "2", 1, Fraction(1)),
        "a23": Generator("a23", "2", "3", 1, Fraction(1)),
        "a13": Generator("a13", "1", "3", 1, Fraction(3)),
    }
    diff = {"a13": FormalSum([Word(("a23", "a12"), "1", "3")])}
    return QuiverDGA(("1", "2", "3"), gens, diff, name="A3")


@pytest.fixture
def loop_dga() -> QuiverDGA:
    """One vertex, one degree-0 loop, zero differential."""
    gens = {"x": Generator("x", "v", "v", 0, Fraction(1))}
    return QuiverDGA(("v",), gens, {}, name="loop")


@pytest.fixture
def exact_pair() -> QuiverDGA:
    """Vertices X, Y; x0 at X with d(x0) = e[X], y: Y -> X, z: Y -> Y."""
    gens = {
        "x0": Generator("x0", "X", "X", -1, Fraction(1)),
        "y": Generator("y", "Y", "X", 0, Fraction(1)),
        "z": Generator("z", "Y", "Y", 0, Fraction(1)),
    }
    diff = {"x0": FormalSum([idempotent("X")])}
    return QuiverDGA(("X", "Y"), gens, diff, name="exact")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(7)

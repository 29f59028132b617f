import pytest

from boundary_algebra import MarkedSurface
from front_diagram import FrontError, a_n, theta
from registry import (
    REGISTRY,
    RunOptions,
    check_pinched_front,
    check_short_chord_basis,
    disk_surfaces,
    opening_dims,
    pinched_figure_eight,
    t_chord,
    verify_all,
)
from quiver_dga import check_d_squared


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_example_verifies(name) -> None:
    result = REGISTRY[name].verify(RunOptions())
    assert result.ok, result.discrepancies


def test_every_example_says_where_its_numbers_come_from() -> None:
    for entry in REGISTRY.values():
        assert entry.description
        assert all(x.provenance in ("published", "derived") for x in entry.expectations)


def test_t_chord_names() -> None:
    assert t_chord("t12") == "c[1>2]^0"
    assert t_chord("t34^1") == "c[3>4]^1"
    assert t_chord("c1") == "c1"


def test_pinched_figure_eight_degrees_and_d_squared() -> None:
    dga = pinched_figure_eight(1)
    assert {g: dga.generators[g].degree for g in ("a1", "c2", "d")} == {"a1": -1, "c2": 1, "d": 0}
    assert check_d_squared(dga).ok


def test_pinched_front_matches_its_disk_table() -> None:
    problems, details = check_pinched_front(2)
    assert problems == []
    assert details["front disks"] == {"b1": 1, "c": 1, "d": 2}


def test_unknown_example_names_are_refused() -> None:
    with pytest.raises(KeyError):
        verify_all(["nope"])


def test_result_dict_is_json_ready() -> None:
    (result,) = verify_all(["unknot"])
    d = result.as_dict()
    assert d["name"] == "unknot"
    assert d["ok"] is True
    assert d["details"]["cohomology"] == {0: 1}


def test_short_chord_basis_reaches_five_points() -> None:
    (result,) = verify_all(["short-chords"])
    assert result.ok, result.discrepancies
    assert result.details["surfaces"] == len(disk_surfaces(5))
    assert max(len(c.points) for s in disk_surfaces(5) for _, c in s.circles()) == 5
    assert check_short_chord_basis(MarkedSurface.disk_with_stops(5), 2, 6) == []


@pytest.mark.parametrize("n", [2, 3])
def test_opening_theta_at_its_right_singularity(n) -> None:
    stopped, opened = opening_dims(theta(n), "R", 6)
    assert stopped == opened
    assert opened[0] == n


def test_opening_needs_a_right_singularity() -> None:
    with pytest.raises(FrontError):
        opening_dims(theta(2), "L", 6)
    with pytest.raises(FrontError):
        opening_dims(a_n(2), "X", 6)

import pytest

from boundary_algebra import (
    SPHERE,
    STOP,
    BoundaryCircle,
    MarkedPoint,
    MarkedSurface,
    NullHomotopicCocore,
    SurfaceComponent,
    SurfaceError,
    attach_handles,
    closed_form_minimal_model,
    cocore_null_homotopic,
    disk_sequences,
    internal_dga,
    null_homotopic_pieces,
    surface_from_json,
    surface_to_json,
    surger_away,
    unconcatable_short_basis,
)
from quiver_dga import FormalSum, check_d_squared, idempotent
from registry import disk_surfaces, null_homotopy_surface, pinched_surface


def test_sphere_needs_two_points() -> None:
    with pytest.raises(SurfaceError):
        MarkedSurface.disk([("1", "x", SPHERE)])
    with pytest.raises(SurfaceError):
        MarkedSurface.disk([("1", "x", STOP), ("2", "x", STOP)])


def test_chord_counts() -> None:
    s = MarkedSurface.disk_with_stops(3)
    assert len(internal_dga(s, 0).generators) == 3
    assert len(internal_dga(s, 1).generators) == 12


def test_splitting_differential() -> None:
    dga = internal_dga(MarkedSurface.disk_with_stops(3), 0)
    assert dga.differential["c[1>3]^0"] == FormalSum([dga.word("c[2>3]^0", "c[1>2]^0")])
    assert not dga.differential["c[1>2]^0"]
    assert dga.generators["c[1>3]^0"].source == "s1"
    assert dga.generators["c[1>3]^0"].target == "s3"


def test_disk_term_only_on_full_turns() -> None:
    s = MarkedSurface.disk_with_stops(3)
    with_d1 = internal_dga(s, 1)
    without = internal_dga(s, 1, with_d1=False)
    assert idempotent("s1") in with_d1.differential["c[1>1]^1"]
    assert idempotent("s1") not in without.differential["c[1>1]^1"]
    assert with_d1.differential["c[1>2]^1"] == without.differential["c[1>2]^1"]


def test_degrees_follow_winding_and_potentials() -> None:
    dga = internal_dga(MarkedSurface.disk_with_stops(2), 2)
    assert dga.generators["c[1>2]^0"].degree == 1
    assert dga.generators["c[2>1]^1"].degree == -1
    assert dga.generators["c[1>1]^2"].degree == -3
    pinched = internal_dga(pinched_surface(), 1)
    assert pinched.generators["c[1>2]^0"].degree == 0
    assert pinched.generators["c[1>4]^0"].degree == -1


@pytest.mark.parametrize("s", disk_surfaces(5), ids=lambda s: "-".join(p.kind[:2] for _, c in s.circles() for p in c.points))
def test_internal_algebras_square_to_zero(s) -> None:
    assert check_d_squared(internal_dga(s, 2)).ok


def test_unconcatable_basis_of_stops() -> None:
    basis = unconcatable_short_basis(MarkedSurface.disk_with_stops(3), 1, 4)
    assert len(basis) == 6
    assert sum(1 for w in basis if w.is_idempotent) == 3


def test_disk_sequences_cover_the_circle() -> None:
    seqs = disk_sequences(MarkedSurface.disk_with_stops(3), 3)
    assert len(seqs) == 12
    assert all(sum(c.steps() for c in d.chords) == 3 for d in seqs)


def test_sphere_handle_makes_an_annulus() -> None:
    s = MarkedSurface.disk([("1", "x", SPHERE), ("2", "x", SPHERE)])
    ss = attach_handles(s)
    assert ss.boundary_circle_count == 2
    assert list(ss.euler.values()) == [0]
    assert ss.cocores() == ["x"]


def test_adjacent_sphere_points_give_an_essential_cocore() -> None:
    # neither foot is alone on its circle
    s = MarkedSurface.disk([("1", "x", SPHERE), ("2", "x", SPHERE)])
    assert cocore_null_homotopic(attach_handles(s), "x") is False
    assert null_homotopic_pieces(s) == []
    assert null_homotopic_pieces(null_homotopy_surface()) == ["S"]


def test_null_homotopic_cocore_is_refused() -> None:
    s = null_homotopy_surface()
    assert null_homotopic_pieces(s) == ["S"]
    with pytest.raises(NullHomotopicCocore) as err:
        closed_form_minimal_model(s, 2, 4)
    assert err.value.piece == "S"


def test_surger_away_merges_the_disks() -> None:
    s = surger_away(null_homotopy_surface(), "S")
    assert s.pieces() == ["a", "b"]
    assert len(s.components) == 1
    assert null_homotopic_pieces(s) == []
    with pytest.raises(SurfaceError):
        surger_away(null_homotopy_surface(), "a")


def test_closed_form_theta_2() -> None:
    model = closed_form_minimal_model(MarkedSurface.disk_with_stops(2), 2, 4, arity_bound=4)
    assert model.op(("c[2>1]^1", "c[1>2]^0")) == frozenset(["e[s1]"])
    assert model.op(("c[1>2]^0", "c[2>1]^1")) == frozenset(["e[s2]"])
    assert model.op(("c[1>2]^0", "e[s1]")) == frozenset(["c[1>2]^0"])


def test_surface_json_keeps_order_and_potentials() -> None:
    s = pinched_surface()
    assert surface_from_json(surface_to_json(s)) == s
    comp = SurfaceComponent(0, (BoundaryCircle("C0", (MarkedPoint("1", "p", STOP),)),))
    assert surface_from_json(surface_to_json(MarkedSurface((comp,)))).pieces() == ["p"]
    with pytest.raises(SurfaceError):
        surface_from_json({"components": [{"circles": [{"points": [{"id": "1"}]}]}]})

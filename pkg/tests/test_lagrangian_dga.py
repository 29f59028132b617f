from fractions import Fraction

import pytest

from boundary_algebra import SPHERE, STOP
from front_diagram import (
    FrontDiagram,
    LeftCusp,
    RightCusp,
    Singularity,
    a_n,
    cyc,
    handcuff,
    handle_unknot,
    open_at,
    permutation,
    pinched_eight,
    quiver_of,
    theta,
    theta_prime,
    unknot,
)
from lagrangian_dga import (
    LOOP,
    LagrangianError,
    assemble,
    assemble_ce,
    assembly_summary,
    crossing_quiver,
    diagram_to_json,
    disk_faces,
    disks_to_json,
    enumerate_disks,
    ng_resolve,
    planar_map,
)
from quiver_dga import FormalSum, check_d_squared, idempotent
from registry import random_permutation


def test_ng_resolution_of_the_unknot() -> None:
    lag = ng_resolve(unknot())
    assert lag.counts == [0, 2, 2, 0]
    assert [c.kind for c in lag.crossings()] == [LOOP]
    dump = diagram_to_json(lag)
    assert [e["type"] for e in dump["events"]] == ["cap", "crossing", "close"]
    assert dump["bordered"] is False


def test_unknot_lobes_cancel() -> None:
    asm = assemble(unknot(), "crossings")
    b1 = asm.dga.generators["b1"]
    assert (b1.source, b1.target, b1.degree) == ("u", "u", -1)
    assert len(asm.disks["b1"]) == 2
    assert not asm.dga.differential["b1"]
    assert assembly_summary(asm)["disks"] == 2


def test_one_sided_unknot_keeps_the_loop_lobe() -> None:
    dga = assemble_ce(handle_unknot("left"), "stopped")
    want = FormalSum([dga.word("c[L.1>L.2]^0"), idempotent("u")])
    assert dga.differential["b1"] == want


def unknot_through_a_vertex() -> FrontDiagram:
    evs = (LeftCusp(0, "u"), Singularity(1, 1, 1, "V", ("u", "u")), RightCusp(0, "u"))
    return FrontDiagram(events=evs, name="unknot-through-V")


def test_cap_lobe_turns_under_an_interior_vertex() -> None:
    asm = assemble(unknot_through_a_vertex(), "full")
    dga = asm.dga
    under = "c[V.2>V.1]^1"
    assert dga.generators[under].degree == 0
    assert dga.generators["b1"].degree == -1
    assert dga.differential["b1"] == FormalSum([idempotent("u"), dga.word(under)])
    turned = [d for d in asm.disks["b1"] if d.negatives() == [under]]
    assert [c.kind for c in turned[0].corners] == ["r", "u"]
    assert check_d_squared(dga).ok


def test_interior_vertex_blocks_disks_when_left_out() -> None:
    dga = assemble_ce(unknot_through_a_vertex(), "stopped")
    assert dga.differential["b1"] == FormalSum([idempotent("u")])


def test_no_under_turn_without_winding_chords() -> None:
    dga = assemble_ce(unknot_through_a_vertex(), "full", max_winding=0)
    assert "c[V.2>V.1]^1" not in dga.generators
    assert dga.differential["b1"] == FormalSum([idempotent("u")])


def test_pinched_figure_eight_front() -> None:
    asm = assemble(pinched_eight(), "full")
    dga = asm.dga
    assert dga.vertices == ("l", "r")
    assert {g: dga.generators[g].degree for g in ("d", "c", "b1")} == {"d": -1, "c": 1, "b1": -1}
    assert [asm.surface.potential(f"V.{i}") for i in range(1, 5)] == [1, 0, 1, 2]
    assert dga.differential["d"] == FormalSum([idempotent("l"), dga.word("c[V.3>V.4]^0")])
    assert dga.differential["c"] == FormalSum([dga.word("c[V.1>V.2]^0")])
    assert dga.differential["b1"] == FormalSum([idempotent("r")])
    assert [len(asm.disks[g]) for g in ("d", "c", "b1")] == [2, 1, 1]
    assert check_d_squared(dga).ok


def test_mode_errors() -> None:
    with pytest.raises(LagrangianError):
        assemble(theta(2), "crossings")
    with pytest.raises(LagrangianError):
        assemble(unknot(), "sideways")
    with pytest.raises(LagrangianError):
        assemble(theta(2), "full", max_winding=-1)


def test_opened_a3_is_the_path_algebra() -> None:
    dga = assemble_ce(open_at(a_n(3), {"R"}), "crossings")
    assert sorted(dga.generators) == ["a12", "a13", "a23"]
    assert {g.degree for g in dga.generators.values()} == {1}
    assert dga.differential["a13"] == FormalSum([dga.word("a23", "a12")])
    assert not dga.differential["a12"]
    assert not dga.differential["a23"]
    assert dga.generators["a13"].weight == Fraction(3)


def test_crossing_free_diagram_has_no_disks() -> None:
    lag = ng_resolve(open_at(theta(2), ["L", "R"]))
    assert lag.crossings() == []
    assert lag.bordered
    assert enumerate_disks(lag, {}) == {}


def test_vertex_surfaces() -> None:
    full = assemble(theta(2), "full").surface
    assert len(full.components) == 2
    assert {p.kind for _, c in full.circles() for p in c.points} == {SPHERE}
    stopped = assemble(theta(2), "stopped").surface
    assert len(stopped.components) == 1
    assert stopped.pieces() == ["1", "2"]
    assert {p.kind for _, c in stopped.circles() for p in c.points} == {STOP}
    assert assemble(theta(2), "stopped").max_winding == 0


def test_theta_prime_cusp_chord_kills_its_handle() -> None:
    dga = assemble_ce(theta_prime(2), "full")
    assert dga.differential["b1"] == FormalSum([idempotent("Pi")])


@pytest.mark.parametrize(
    "front, mode",
    [
        (open_at(a_n(2), {"R"}), "crossings"),
        (open_at(a_n(3), {"R"}), "crossings"),
        (open_at(a_n(4), {"R"}), "crossings"),
        (theta(2), "full"),
        (theta(3), "full"),
        (theta(3), "stopped"),
        (theta_prime(2), "full"),
        (open_at(cyc(2), {"R"}), "crossings"),
        (handcuff(), "stopped"),
    ],
    ids=lambda x: getattr(x, "name", x),
)
def test_assembled_algebras_square_to_zero(front, mode) -> None:
    assert check_d_squared(assemble_ce(front, mode)).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_random_permutations(rng, n) -> None:
    for _ in range(5):
        sigma = random_permutation(rng, n)
        opened = open_at(permutation(sigma), {"R"})
        assert check_d_squared(assemble_ce(opened, "crossings")).ok
        assert crossing_quiver(opened) == quiver_of(sigma)


def test_planar_map_of_the_unknot() -> None:
    pm = planar_map(ng_resolve(unknot()))
    assert [v["id"] for v in pm.vertices] == ["b1"]
    assert len(pm.edges) == 2
    assert all(e["ends"] == ["b1", "b1"] for e in pm.edges)
    assert sorted((f["area"] for f in pm.faces), key=str) == [1, 1, None]
    assert pm.euler_characteristic() == 2


def test_planar_map_of_the_pinched_figure_eight() -> None:
    pm = planar_map(ng_resolve(pinched_eight()))
    singular = next(v for v in pm.vertices if v["type"] == "singular")
    assert singular["valency"] == 4
    assert len(set(singular["edges"])) == 4
    assert (len(pm.vertices), len(pm.edges), len(pm.faces)) == (4, 8, 6)
    assert pm.euler_characteristic() == 2
    components = {e["component"] for e in pm.edges if singular["id"] in e["ends"]}
    assert components == {"l", "r"}


@pytest.mark.parametrize(
    "front, mode",
    [
        (unknot(), "crossings"),
        (open_at(a_n(3), {"R"}), "crossings"),
        (open_at(cyc(2), {"R"}), "crossings"),
        (theta_prime(2), "full"),
        (pinched_eight(), "full"),
    ],
    ids=lambda x: getattr(x, "name", x),
)
def test_disk_faces_add_up_to_the_disk_area(front, mode) -> None:
    asm = assemble(front, mode)
    pm = planar_map(asm.diagram)
    assert asm.disks
    for ds in asm.disks.values():
        for disk in ds:
            faces = disk_faces(pm, disk)
            assert sum(k * pm.face_area(f) for f, k in faces.items()) == disk.area
    dump = disks_to_json(asm.disks, pm)
    assert all("faces" in row for rows in dump.values() for row in rows)

from itertools import permutations

import pytest

from front_diagram import (
    Crossing,
    FrontDiagram,
    FrontError,
    HandlePermutation,
    LeftCusp,
    MaslovError,
    RightCusp,
    Singularity,
    SideError,
    a_n,
    a_prime_n_word,
    build,
    check,
    compute_maslov,
    cyc,
    front_from_json,
    front_to_json,
    handcuff,
    handle_unknot,
    open_at,
    permutation,
    quiver_flip_oracle,
    quiver_of,
    reflect,
    resolve_at,
    shift,
    theta,
    theta_prime,
    to_side,
    trace,
    unknot,
    validate,
)


def all_words(n: int):
    letters = [i for i in range(1, n + 1) for _ in range(2)]
    return sorted({HandlePermutation(w).canonical()[0] for w in permutations(letters)}, key=str)


def test_unknot_slices_and_potential() -> None:
    f = unknot()
    assert f.counts() == [0, 2, 0]
    assert f.is_closed
    assert trace(f).components() == ["u"]
    assert compute_maslov(f).by_component() == {"u": [0, 1]}


def test_validate_stops_at_first_problem() -> None:
    issues = validate(FrontDiagram(events=(RightCusp(0), LeftCusp(5))))
    assert len(issues) == 1
    assert issues[0].event == 0
    with pytest.raises(FrontError):
        check(FrontDiagram(events=(RightCusp(0),)))


def test_strands_must_end_somewhere() -> None:
    issues = validate(FrontDiagram(events=(LeftCusp(0),)))
    assert "right border" in issues[0].message


def test_singularity_ids_are_unique() -> None:
    f = FrontDiagram(events=(Singularity(0, 0, 2, "X"), Singularity(0, 2, 0, "X")))
    assert "repeated" in validate(f)[0].message


def test_maslov_conflict_has_a_witness() -> None:
    f = FrontDiagram(events=(LeftCusp(0), Crossing(0, "k"), RightCusp(0)))
    with pytest.raises(MaslovError) as err:
        compute_maslov(f)
    assert len(err.value.witness) == 2


def test_maslov_seeds_and_free_components() -> None:
    f = unknot()
    assert compute_maslov(f).underdetermined == ("u",)
    seeded = compute_maslov(f, {"u": 3})
    assert seeded.underdetermined == ()
    assert seeded.by_component() == {"u": [3, 4]}
    with pytest.raises(FrontError):
        compute_maslov(f, {"nope": 0})
    assert compute_maslov(f, fill_free=False).by_component() == {}


def test_permutation_parse_and_validation() -> None:
    sigma = HandlePermutation.parse("121323")
    assert sigma.n == 3
    assert str(sigma) == "121323"
    assert HandlePermutation.parse("1, 2, 1, 2").word == (1, 2, 1, 2)
    with pytest.raises(FrontError):
        HandlePermutation.parse("112")
    with pytest.raises(FrontError):
        HandlePermutation.parse("1133")


def test_interleaving() -> None:
    sigma = HandlePermutation.parse("1212")
    assert sigma.interleaved(1, 2)
    assert not sigma.interleaved(2, 1)
    assert quiver_of(sigma) == frozenset({("1", "2")})
    assert quiver_of(HandlePermutation.parse("1221")) == frozenset()


def test_shift_of_121323() -> None:
    sigma = HandlePermutation.parse("121323")
    assert str(shift(sigma, 1)) == "123213"
    assert shift(sigma, 6) == sigma


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_interleaving_is_always_acyclic(n) -> None:
    assert all(sigma.interleaving_is_acyclic() for sigma in all_words(n))


def test_quiver_flip_oracle_on_121323() -> None:
    sigma = HandlePermutation.parse("121323")
    assert quiver_of(sigma) == frozenset({("1", "2"), ("2", "3")})
    assert quiver_flip_oracle(sigma) == frozenset({("1", "3"), ("2", "3")})


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_quiver_flip_oracle_matches_shift(n) -> None:
    for sigma in all_words(n):
        assert quiver_flip_oracle(sigma) == quiver_of(shift(sigma, 1)), str(sigma)


def test_a_n_crossings() -> None:
    f = a_n(3)
    assert sorted(c.id for _, c in f.crossings()) == ["a12", "a13", "a23"]
    assert f.singularities()["R"][1].in_valency == 6
    assert permutation("11").crossings() == []


def test_a_prime_word_is_valid() -> None:
    assert a_prime_n_word(3).n == 3
    with pytest.raises(FrontError):
        a_prime_n_word(1)


def test_family_builders() -> None:
    assert build("theta", "3").name == "theta_3"
    assert build("handle-unknot", "right").singularities()["R"][1].in_valency == 2
    with pytest.raises(FrontError):
        build("nope")
    with pytest.raises(FrontError):
        theta(1)
    with pytest.raises(FrontError):
        handle_unknot("up")
    for f in (theta_prime(2), cyc(3), handcuff()):
        assert validate(f) == []


def test_open_both_sides_of_theta() -> None:
    f = open_at(theta(2), ["L", "R"])
    assert f.singularities() == {}
    assert len(f.left_ends) == 2
    assert len(f.right_ends) == 2
    assert [e.name() for e in f.left_ends] == ["L.1", "L.2"]


def test_resolve_left_and_right() -> None:
    left = resolve_at(theta(2), ["L"])
    assert [(c.id, c.twist) for _, c in left.crossings()] == [("a[L.1>L.2]", True)]
    assert [e.name() for e in left.left_ends] == ["L.2", "L.1"]
    right = resolve_at(theta(2), ["R"])
    assert [c.id for _, c in right.crossings()] == ["p[R.2>R.1]", "a[R.2>R.1]"]


def test_to_side_refuses_blocked_singularities() -> None:
    f = FrontDiagram(events=(LeftCusp(0, "u"), Singularity(0, 1, 1, "X", ("u", "u")), RightCusp(0, "u")))
    with pytest.raises(SideError):
        to_side(f, "X")
    with pytest.raises(FrontError):
        to_side(f, "nope")


def test_reflect_is_an_involution() -> None:
    for f in (theta_prime(3), a_n(3), handcuff()):
        assert reflect(reflect(f)) == f
    g = reflect(handle_unknot("left"))
    assert g.singularities()["L"][1].side == "right"


def test_front_json() -> None:
    f = theta_prime(2)
    assert front_from_json(front_to_json(f)) == f
    g = open_at(theta(2), ["L"])
    assert front_from_json(front_to_json(g)) == g
    with pytest.raises(FrontError):
        front_from_json({"events": [{"type": "wiggle", "pos": 0}]})

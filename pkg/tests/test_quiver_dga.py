from fractions import Fraction

import pytest

from boundary_algebra import MarkedSurface, internal_dga
from quiver_dga import (
    DGAError,
    ExactRemovalError,
    FormalSum,
    Generator,
    QuiverDGA,
    TruncationEscape,
    TruncationPolicy,
    Word,
    WeightFiltrationError,
    build_complex,
    check_d_squared,
    cohomology,
    compose,
    dga_from_json,
    dga_to_json,
    differential_of_word,
    direct_product,
    enumerate_words,
    hh0_truncated,
    idempotent,
    multiply,
    persistent_dims,
    relabel,
    remove_exact_generator,
    structural_differences,
)


def test_formal_sums_cancel_in_pairs() -> None:
    w = Word(("a",), "1", "2")
    assert not FormalSum([w, w])
    assert FormalSum([w]) + FormalSum([w]) == FormalSum()
    assert repr(FormalSum()) == "0"


def test_compose_reads_right_to_left() -> None:
    a = Word(("a12",), "1", "2")
    b = Word(("a23",), "2", "3")
    assert compose(b, a) == Word(("a23", "a12"), "1", "3")
    assert compose(a, b) is None
    assert multiply(FormalSum([b]), FormalSum([a, idempotent("2")])) == FormalSum([Word(("a23", "a12"), "1", "3"), b])


def test_generators_need_positive_weight() -> None:
    with pytest.raises(DGAError):
        Generator("g", "1", "1", 0, Fraction(0))


def test_differential_degree_is_checked() -> None:
    gens = {
        "a": Generator("a", "1", "1", 0, Fraction(1)),
        "b": Generator("b", "1", "1", 0, Fraction(2)),
    }
    with pytest.raises(DGAError):
        QuiverDGA(("1",), gens, {"b": FormalSum([Word(("a",), "1", "1")])})


def test_differential_may_not_raise_weight() -> None:
    gens = {
        "a": Generator("a", "1", "1", 0, Fraction(2)),
        "b": Generator("b", "1", "1", -1, Fraction(1)),
    }
    with pytest.raises(WeightFiltrationError) as info:
        QuiverDGA(("1",), gens, {"b": FormalSum([Word(("a",), "1", "1")])})
    assert info.value.gid == "b"
    assert isinstance(info.value, ValueError)
    # equal weight is allowed
    gens["b"] = Generator("b", "1", "1", -1, Fraction(2))
    QuiverDGA(("1",), gens, {"b": FormalSum([Word(("a",), "1", "1")])})


def test_splitting_part_alone_squares_to_zero() -> None:
    dga = internal_dga(MarkedSurface.disk_with_stops(3), 2, with_d1=False)
    report = check_d_squared(dga)
    assert report.ok
    assert report.checked


def test_word_rejects_noncomposable_letters(path_a3) -> None:
    assert str(path_a3.word("a23", "a12")) == "a23 a12"
    with pytest.raises(DGAError):
        path_a3.word("a12", "a23")


def test_leibniz_rule(path_a3) -> None:
    assert differential_of_word(path_a3, path_a3.word("a13")) == FormalSum([path_a3.word("a23", "a12")])
    assert not differential_of_word(path_a3, path_a3.word("a23", "a12"))


def test_d_squared_passes_and_fails(path_a3) -> None:
    assert check_d_squared(path_a3).ok
    gens = {
        "a": Generator("a", "v", "v", -1, Fraction(1)),
        "b": Generator("b", "v", "v", -2, Fraction(2)),
    }
    diff = {"a": FormalSum([idempotent("v")]), "b": FormalSum([Word(("a",), "v", "v")])}
    report = check_d_squared(QuiverDGA(("v",), gens, diff))
    assert not report.ok
    assert list(report.residues) == ["b"]


def test_enumerate_words_needs_bounds_on_cycles(loop_dga) -> None:
    with pytest.raises(DGAError):
        enumerate_words(loop_dga, TruncationPolicy())
    words = enumerate_words(loop_dga, TruncationPolicy(max_length=3))
    assert [len(w) for w in words] == [0, 1, 2, 3]


def test_cohomology_of_a3(path_a3) -> None:
    H = cohomology(build_complex(path_a3, TruncationPolicy()))
    assert H.dims == {0: 3, 1: 2, 2: 0}
    assert H.total == 5
    reps = {str(w) for s in H.representatives[1] for w in s}
    assert reps == {"a12", "a23"}


def test_corner_complex(path_a3) -> None:
    cx = build_complex(path_a3, TruncationPolicy(), corner=["1", "3"])
    H = cohomology(cx)
    assert H.dims[0] == 2
    assert H.dims[1] == 0


def test_truncation_escape_is_reported(path_a3) -> None:
    with pytest.raises(TruncationEscape):
        build_complex(path_a3, TruncationPolicy(max_length=1, degree_window=(1, 1)))


def test_persistent_dims_of_closed_truncation(path_a3) -> None:
    small = build_complex(path_a3, TruncationPolicy(max_weight=Fraction(3)))
    large = build_complex(path_a3, TruncationPolicy(max_weight=Fraction(5), degree_window=small.window))
    assert persistent_dims(small, large) == {0: 3, 1: 2, 2: 0}


def test_remove_exact_generator(exact_pair) -> None:
    reduced = remove_exact_generator(exact_pair, "x0", "X")
    assert reduced.vertices == ("Y",)
    assert set(reduced.generators) == {"z"}
    with pytest.raises(ExactRemovalError):
        remove_exact_generator(exact_pair, "z", "Y")
    with pytest.raises(ExactRemovalError):
        remove_exact_generator(exact_pair, "nope", "X")


def test_relabel_and_structural_differences(path_a3) -> None:
    renamed = relabel(path_a3, {"1": "p"}, {"a12": "b"})
    assert renamed.generators["b"].source == "p"
    assert structural_differences(path_a3, renamed, {"a12": "b"}, {"1": "p"}) == []
    assert structural_differences(path_a3, renamed) != []


def test_direct_product_renames_clashes(path_a3) -> None:
    both = direct_product(path_a3, path_a3)
    assert len(both.vertices) == 6
    assert "a13#2" in both.generators
    assert check_d_squared(both).ok


def test_hh0_of_acyclic_and_loop(path_a3, loop_dga) -> None:
    assert hh0_truncated(path_a3, 2, ignore_differential=True) == {0: 3, 1: 0, 2: 0}
    with pytest.raises(DGAError):
        hh0_truncated(path_a3, 2)
    assert hh0_truncated(loop_dga, 3) == {0: 1, 1: 1, 2: 1, 3: 1}


def test_json_keeps_structure(path_a3) -> None:
    back = dga_from_json(dga_to_json(path_a3))
    assert structural_differences(path_a3, back) == []
    assert back.generators["a13"].weight == Fraction(3)
    with pytest.raises(DGAError):
        dga_from_json({"vertices": ["1"]})

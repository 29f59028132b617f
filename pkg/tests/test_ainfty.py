import pytest

from ainfty import (
    AInfinityError,
    check_relations,
    compare_models,
    contraction_from_complex,
    model_from_json,
    model_to_json,
    path_algebra_model,
    transfer,
)
from boundary_algebra import MarkedSurface, closed_form_minimal_model
from quiver_dga import TruncationPolicy, build_complex


def a3_path_model():
    arrows = {"a12": ("1", "2", 1), "a23": ("2", "3", 1)}
    return path_algebra_model(["1", "2", "3"], arrows, [("a23", "a12")])


def test_path_algebra_with_zero_relation() -> None:
    A = a3_path_model()
    assert sorted(A.basis) == ["a12", "a23", "e[1]", "e[2]", "e[3]"]
    assert A.op(("a23", "a12")) == frozenset()
    assert A.op(("a12", "e[1]")) == frozenset(["a12"])
    assert A.op(("e[2]", "a12")) == frozenset(["a12"])
    assert A.nonzero_arities() == [2]


def test_path_algebra_satisfies_relations() -> None:
    assert check_relations(a3_path_model(), 3).ok


def test_contraction_of_a3(path_a3) -> None:
    c = contraction_from_complex(build_complex(path_a3, TruncationPolicy()))
    assert c.violations() == []
    assert c.sizes[1] == (0, 2)


def test_transfer_of_a3_has_no_higher_operations(path_a3) -> None:
    model = transfer(path_a3, TruncationPolicy(), arity_bound=4)
    assert len(model.basis) == 5
    assert model.higher_operations() == {}
    assert set(model.units) == {"1", "2", "3"}
    assert check_relations(model).ok


def test_transfer_needs_arity_two(path_a3) -> None:
    with pytest.raises(AInfinityError):
        transfer(path_a3, TruncationPolicy(), arity_bound=1)


def test_compare_models_reports_first_gap() -> None:
    A = a3_path_model()
    assert compare_models(A, A) is None
    free = path_algebra_model(["1", "2", "3"], {"a12": ("1", "2", 1), "a23": ("2", "3", 1)})
    with pytest.raises(AInfinityError):
        compare_models(A, free)


def test_closed_form_satisfies_relations() -> None:
    model = closed_form_minimal_model(MarkedSurface.disk_with_stops(2), 2, 4, arity_bound=4)
    assert check_relations(model, 3).ok


def test_model_json_keeps_operations() -> None:
    A = a3_path_model()
    back = model_from_json(model_to_json(A))
    assert compare_models(A, back) is None
    with pytest.raises(AInfinityError):
        model_from_json({"basis": [{"id": "x"}]})

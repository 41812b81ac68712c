import pytest

from fixcat.core.errors import IllTypedInput
from fixcat.core.presheaf import (
    chaotic_simplicial_set,
    check_presheaf_functoriality,
    completeness_check,
    completeness_check_representable,
    delete_cell,
    kan_extension_cell,
    representable,
    segal_check,
)
from fixcat.core.sigma import (
    DeltaMap,
    SigmaBound,
    SigmaObject,
    delta_hom_enumerate,
    extension_map,
    find_congruence_counterexample,
    segal_fiber_count,
    sigma_category_axioms,
    sigma_compose,
    sigma_hom_enumerate,
    sigma_identity,
    sigma_normalize,
    truncate_at_constant,
    truncate_at_zero,
)
from fixcat.models.higher import PresheafDocument
from fixcat.services.loader import build_presheaf, load_document

EMPTY = SigmaObject(())


@pytest.mark.parametrize("entries, count", [((1,), 3), ((2,), 10)])
def test_endomorphism_counts(entries, count):
    obj = SigmaObject(entries)
    assert len(sigma_hom_enumerate(obj, obj)) == count


def test_delta_hom_counts_are_binomial():
    assert len(delta_hom_enumerate(1, 2)) == 6
    assert len(delta_hom_enumerate(2, 2)) == 10
    assert len(delta_hom_enumerate(0, 0)) == 1


def test_delta_maps_must_be_weakly_increasing():
    with pytest.raises(IllTypedInput):
        DeltaMap(1, 1, (1, 0))
    with pytest.raises(IllTypedInput):
        DeltaMap(1, 1, (0, 2))


def test_segal_fiber_count_over_the_empty_sequence():
    report = segal_fiber_count(EMPTY, 2, SigmaObject((2,)))
    assert report["terms"] == [[1, 3], [2, 2], [3, 1]]
    assert report["direct"] == report["fiber"] == 10
    assert report["agree"]


@pytest.mark.parametrize("k, ell, target", [((), 2, (1,)), ((1,), 2, (2,)), ((2,), 2, (1, 2)), ((), 3, (2,))])
def test_segal_fiber_count_agrees(k, ell, target):
    assert segal_fiber_count(SigmaObject(k), ell, SigmaObject(target))["agree"]


@pytest.mark.parametrize("bound", [SigmaBound(2, 1, 1), SigmaBound(1, 2, 2)])
def test_sigma_is_a_category(bound):
    report = sigma_category_axioms(bound)
    assert report.passed, report.violations[:3]
    assert report.objects_checked == len(bound.objects())


def test_truncation_normal_form_is_a_congruence():
    bound = SigmaBound(2, 1, 1)
    assert find_congruence_counterexample(truncate_at_constant, bound) is None
    witness = find_congruence_counterexample(truncate_at_zero, bound)
    assert witness is not None
    assert len(witness["identified"]) == 2


def test_normal_form_fills_levels_over_zero():
    one = SigmaObject((1,))
    m = sigma_normalize([DeltaMap(1, 1, (0, 1))], one, one)
    assert len(m.components) == 2
    assert m == sigma_identity(one)
    assert sigma_compose(m, m) == m


def test_normal_form_stops_at_the_first_constant():
    src, tgt = SigmaObject((1, 1)), SigmaObject((1, 1))
    a = sigma_normalize([DeltaMap(1, 1, (1, 1)), DeltaMap(1, 1, (0, 1))], src, tgt)
    b = sigma_normalize([DeltaMap(1, 1, (1, 1)), DeltaMap(1, 1, (0, 0))], src, tgt)
    assert a == b
    assert len(a.components) == 1


def test_normalize_rejects_bad_components():
    one, two = SigmaObject((1,)), SigmaObject((1, 1))
    with pytest.raises(IllTypedInput):
        sigma_normalize([DeltaMap(2, 1, (0, 0, 1))], one, one)
    with pytest.raises(IllTypedInput):
        sigma_normalize([DeltaMap(1, 1, (0, 1))], one, two)


def test_parsing_objects_and_bounds():
    assert SigmaObject.parse("(2,1)") == SigmaObject((2, 1))
    assert SigmaObject.parse("()") == EMPTY
    assert SigmaBound.parse("1,2,3") == SigmaBound(1, 2, 3)
    with pytest.raises(IllTypedInput):
        SigmaObject.parse("2,x")
    with pytest.raises(IllTypedInput):
        SigmaObject((0,))
    with pytest.raises(IllTypedInput):
        SigmaBound.parse("2,2")


def test_extension_by_identity_is_identity():
    k = SigmaObject((2,))
    assert extension_map(k, DeltaMap.identity(1)) == sigma_identity(SigmaObject((2, 1)))


# ── Presheaves ──


@pytest.mark.parametrize("apex", SigmaBound(2, 2, 2).objects(), ids=lambda o: o.label())
def test_representables_are_segal_and_complete(apex):
    P = representable(apex, SigmaBound(2, 2, 2))
    assert segal_check(P).passed
    assert completeness_check(P)["passed"]


def test_representable_is_functorial():
    assert check_presheaf_functoriality(representable(SigmaObject((1,)), SigmaBound(1, 1, 1))) == []


def test_shipped_presheaves(corpus):
    rep = build_presheaf(load_document(corpus / "representable-1.json", PresheafDocument))
    assert segal_check(rep).passed
    iso = build_presheaf(load_document(corpus / "walking-iso.json", PresheafDocument))
    assert check_presheaf_functoriality(iso) == []
    report = completeness_check(iso)
    assert not report["passed"]
    assert report["failures"][0]["pair"] == ["'x'", "'y'"]


def test_deleting_a_cell_breaks_the_segal_condition():
    bound = SigmaBound(1, 2, 2)
    two = SigmaObject((2,))
    P = delete_cell(representable(two, bound), two, sigma_identity(two))
    report = segal_check(P)
    assert not report.passed
    assert report.failures[0]["kind"] == "non-surjective"
    assert report.checked[0]["cells"] == 9


@pytest.mark.parametrize("size, at, classes", [(1, (), 1), (1, (1,), 1), (2, (), 2)])
def test_kan_extension_of_chaotic_sets(size, at, classes):
    X = chaotic_simplicial_set(size, 1)
    assert len(kan_extension_cell(X, EMPTY, SigmaObject(at))) == classes


@pytest.mark.parametrize("apex", [(1,), (2, 1)])
def test_representables_are_complete(apex):
    report = completeness_check_representable(SigmaObject(apex), SigmaBound(2, 2, 2))
    assert report["passed"]
    assert report["levels_checked"] > 0

import pytest

from src.services.cliffspace import eps, eps_bar
from src.services.fieldcalc import bracket, normal_pair
from src.services.mrycheck import (
    CENTRAL,
    Degree,
    H,
    XMinus,
    XPlus,
    cartan_g0,
    check_all,
    check_relation,
    degree,
    extended_cartan,
    generator_field,
    generator_fields,
    pair_relation,
    perturbed,
    relation_instances,
    relation_table,
    render_text,
    symbols,
    zero_degree,
)
from src.utils.model_pydantic import AlgebraKind, Family, RecordStatus

A_ODD = AlgebraKind(family=Family.A_ODD, n=3)
D = AlgebraKind(family=Family.D, n=2)
D3 = AlgebraKind(family=Family.D, n=3)
A_EVEN = AlgebraKind(family=Family.A_EVEN, n=2)
D4 = AlgebraKind(family=Family.D4_TRIALITY, n=2)
A_EVEN3 = AlgebraKind(family=Family.A_EVEN, n=3)
ACCEPTANCE_KINDS = [A_ODD, D, D3, A_EVEN, A_EVEN3, D4]


@pytest.fixture(scope="session")
def a_odd_report():
    """
    Full symbolic check of AOdd n = 3, shared by the report tests.
    """
    return check_all(A_ODD, record_timings=False)


def test_symbols_and_names():
    assert symbols(D) == [H(0), H(1), H(2), XPlus(0), XPlus(1), XPlus(2), XMinus(0), XMinus(1), XMinus(2)]
    assert str(XPlus(2)) == "X+(2)"
    assert str(H(0)) == "H(0)"
    assert str(CENTRAL) == "c"


def test_extended_cartan_examples():
    d3 = extended_cartan(D3)
    assert (d3[0, 1], d3[1, 0]) == (-2, -1)
    a_even = extended_cartan(A_EVEN)
    assert (a_even[0, 1], a_even[1, 0]) == (-1, -2)
    d4 = extended_cartan(D4)
    assert (d4[1, 2], d4[2, 1]) == (-3, -1)
    a_odd = extended_cartan(A_ODD)
    assert (a_odd[0, 2], a_odd[2, 0], a_odd[0, 1]) == (-1, -1, 0)


def test_fixed_point_cartan_types():
    assert cartan_g0(A_ODD)[1, 2] == -2
    assert cartan_g0(D3)[2, 1] == -2
    assert cartan_g0(A_EVEN)[1, 0] == -2
    assert cartan_g0(D4).tolist() == [[2, -3], [-1, 2]]


def test_relation_table_coefficients():
    assert relation_table(A_ODD).hh_coeff(0, 0) == 4
    assert relation_table(A_EVEN).hh_coeff(0, 0) == 2
    assert relation_table(A_ODD).hh_coeff(0, 2) == -2
    assert relation_table(D).hh_coeff(0, 1) == -2
    assert relation_table(A_EVEN).hh_coeff(2, 2) == 8
    assert relation_table(D4).serre_arity(1, 2) == 4
    assert relation_table(A_ODD).serre_arity(1, 3) == 1


def test_generator_field_after_c_elimination():
    field = generator_field(A_ODD, XPlus(0))
    assert field == normal_pair(eps_bar(2), eps(1, True)) + normal_pair(eps(2, True), eps_bar(1))


def test_generator_field_examples():
    assert generator_field(D, H(0)) == 2 * normal_pair(eps(1, True), eps(1))
    assert generator_field(D4, XPlus(2)) == normal_pair(eps(2), eps_bar(2, True))
    assert generator_field(A_ODD, XPlus(0), eliminate=False) != generator_field(A_ODD, XPlus(0))


def test_generator_field_errors():
    with pytest.raises(ValueError):
        generator_field(A_ODD, CENTRAL)
    with pytest.raises(ValueError):
        generator_field(A_ODD, XPlus(4))


def test_relation_instances_are_sorted_and_complete():
    instances = list(relation_instances(A_ODD))
    ids = [relation_id for relation_id, _ in instances]
    assert ids == sorted(ids)
    assert len(instances) == 10 + 32 + 8 + 16 + 24
    assert (12, (1, 2, 1)) in relation_instances(D4)


@pytest.mark.parametrize(
    "G, K, relation_id",
    [
        (H(0), H(0), 1),
        (H(0), H(2), 2),
        (H(1), H(1), 3),
        (H(2), H(3), 4),
        (H(3), H(3), 5),
        (H(1), XPlus(2), 6),
        (XMinus(2), H(1), 6),
        (XPlus(1), XPlus(1), 7),
        (XPlus(1), XMinus(2), 8),
        (XMinus(1), XPlus(1), 8),
        (XPlus(1), XPlus(2), None),
        (CENTRAL, H(1), None),
    ],
)
def test_pair_relation(G, K, relation_id):
    assert pair_relation(A_ODD, G, K) == relation_id


@pytest.mark.parametrize(
    "kind, relation_id, indices",
    [
        (A_EVEN, 8, (2, 2)),
        (D4, 8, (0, 0)),
        (A_ODD, 6, (0, 0, 1)),
        (D, 4, (1, 2)),
        (A_EVEN, 11, (1, 0, -1)),
        (A_EVEN, 10, (0, 1, 1)),
        (D4, 12, (1, 2, 1)),
    ],
)
def test_check_relation_passes(kind, relation_id, indices):
    record = check_relation(kind, relation_id, indices)
    assert record.status == RecordStatus.PASS
    assert record.residual is None
    assert record.id == relation_id
    assert record.indices == list(indices)


def test_cartan_acts_on_x_alpha0_with_weight_two():
    fields = generator_fields(A_ODD)
    result = bracket(fields[H(0)], fields[XPlus(0)], A_ODD)
    assert result.delta_part == 2 * fields[XPlus(0)]


def test_check_relation_without_c_elimination():
    record = check_relation(A_ODD, 8, (0, 0), eliminate=False)
    assert record.passed


@pytest.mark.parametrize(
    "relation_id, indices",
    [
        (1, (0, 1)),
        (13, (0, 0)),
        (6, (0, 4, 1)),
        (7, (1, 2)),
        (10, (1, 3, 1)),
        (9, (1, 1, 1)),
    ],
)
def test_check_relation_rejects_bad_instances(relation_id, indices):
    with pytest.raises(ValueError):
        check_relation(A_ODD, relation_id, indices)


def test_check_all_passes(a_odd_report):
    assert a_odd_report.passed
    assert a_odd_report.fail_count == 0
    assert len(a_odd_report.relations) == len(list(relation_instances(A_ODD)))
    assert all(record.ms == 0 for record in a_odd_report.relations)


@pytest.mark.parametrize("kind", [D, D3, A_EVEN, A_EVEN3, D4], ids=lambda kind: kind.label)
def test_check_all_passes_for_other_families(kind):
    report = check_all(kind, record_timings=False)
    assert report.passed, [record.label for record in report.relations if not record.passed]
    assert len(report.relations) == len(list(relation_instances(kind)))


def test_perturbed_field_fails():
    fields = perturbed(generator_fields(A_ODD), XPlus(1))
    report = check_all(A_ODD, fields=fields, record_timings=False)
    assert report.fail_count > 0
    failed = next(record for record in report.relations if not record.passed)
    assert failed.residual


def test_degree():
    assert degree(A_ODD, CENTRAL) == zero_degree(A_ODD)
    assert degree(A_ODD, XPlus(1), 3) == Degree(3, (0, 1, 0, 0))
    assert degree(A_ODD, H(2), -1) == Degree(-1, (0, 0, 0, 0))
    assert degree(A_ODD, XPlus(1), 2) + degree(A_ODD, XMinus(1), -2) == zero_degree(A_ODD)


def test_render_text(a_odd_report):
    text = render_text(a_odd_report)
    assert text.splitlines()[0] == f"a-odd n=3: {a_odd_report.pass_count} pass, 0 fail"
    assert "serre a_ij=-2" in text


@pytest.mark.parametrize("kind", ACCEPTANCE_KINDS, ids=lambda kind: kind.label)
def test_c_elimination_does_not_change_any_result(kind):
    for relation_id, indices in relation_instances(kind):
        dropped = check_relation(kind, relation_id, indices, record_timings=False)
        kept = check_relation(kind, relation_id, indices, eliminate=False, record_timings=False)
        assert (kept.status, kept.residual) == (dropped.status, dropped.residual), (relation_id, indices)
        assert dropped.passed

import warnings
from itertools import product

import pytest

from src.services.loopcore import (
    C0,
    C1,
    TDT,
    GElement,
    KahlerElement,
    LoopElement,
    PsiReading,
    ToroidalElement,
    build_algebra,
    check_eta_psi,
    check_pairing_table,
    check_psi_homomorphism,
    check_psi_pair,
    eta,
    fixed_generators,
    form_violations,
    is_twisted,
    jacobi_violations,
    kahler_reduce,
    loop_bracket,
    loop_degree,
    pairing_table,
    pibar,
    psi,
    psi_uncorrected,
    closed_form_pairing_table,
    serre_in_image,
    sigma_violations,
    tensor,
    theta0_triple,
    toroidal_bracket,
)
from src.services.mrycheck import CENTRAL, H, XPlus, degree, symbols
from src.services.scalars import ONE, sqrt2
from src.utils.model_pydantic import AlgebraKind, Family, RecordStatus

A_ODD = AlgebraKind(family=Family.A_ODD, n=3)
D = AlgebraKind(family=Family.D, n=2)
D3 = AlgebraKind(family=Family.D, n=3)
A_EVEN = AlgebraKind(family=Family.A_EVEN, n=2)
D4 = AlgebraKind(family=Family.D4_TRIALITY, n=2)
KINDS = [A_ODD, D, A_EVEN, D4]


@pytest.fixture(scope="session")
def a_odd_algebra():
    """
    sl(6) with its diagram flip, shared across the session.
    """
    return build_algebra(A_ODD)


@pytest.mark.parametrize("kind, dimension", [(A_ODD, 35), (D, 15), (D3, 28), (A_EVEN, 24), (D4, 28)])
def test_algebra_dimensions(kind, dimension):
    assert build_algebra(kind).dimension == dimension


def test_chevalley_relations(a_odd_algebra):
    algebra = a_odd_algebra
    for i, j in product(range(1, algebra.rank + 1), repeat=2):
        expected = algebra.h(i) if i == j else GElement()
        assert algebra.bracket(algebra.e(i), algebra.f(j)) == expected


def test_triality_permutes_cartan():
    algebra = build_algebra(D4)
    assert algebra.sigma(algebra.h(1)) == algebra.h(3)
    assert algebra.sigma(algebra.h(3)) == algebra.h(4)
    assert algebra.sigma(algebra.h(4)) == algebra.h(1)
    assert algebra.sigma(algebra.h(2)) == algebra.h(2)
    assert algebra.sigma(algebra.e(1), 3) == algebra.e(1)


@pytest.mark.parametrize("kind", [D, A_EVEN, D4], ids=lambda kind: kind.label)
def test_algebra_invariants(kind):
    algebra = build_algebra(kind)
    assert jacobi_violations(algebra) == []
    assert form_violations(algebra) == []
    assert sigma_violations(algebra) == []


def test_theta0_triple_is_an_sl2_triple():
    for kind in KINDS:
        algebra = build_algebra(kind)
        e, f, h = theta0_triple(kind)
        assert algebra.bracket(e, f) == h
        assert algebra.bracket(h, e) == 2 * e
        assert algebra.bracket(h, f) == -2 * f


def test_fixed_generators():
    algebra = build_algebra(A_EVEN)
    e2, f2, h2 = fixed_generators(A_EVEN)[1]
    assert h2 == 2 * (algebra.h(2) + algebra.h(3))
    assert e2 == sqrt2() * (algebra.e(2) + algebra.e(3))
    a_odd = build_algebra(A_ODD)
    e1, _f1, _h1 = fixed_generators(A_ODD)[0]
    assert e1 == a_odd.e(1) + a_odd.e(5)
    for kind in KINDS:
        algebra = build_algebra(kind)
        for triple in fixed_generators(kind):
            for x in triple:
                assert algebra.sigma(x) == x


def test_kahler_reduce_examples():
    assert kahler_reduce((3, 0), (-3, 0)) == KahlerElement({C0: -3})
    assert kahler_reduce((2, -1), (-2, 1)) == KahlerElement({C0: -2, C1: 1})
    assert kahler_reduce((1, 0), (1, 0)).is_zero()
    assert kahler_reduce((0, 1), (0, -1)) == KahlerElement({C1: -1})


def test_kahler_reduce_rejects_inadmissible_degrees():
    with pytest.raises(ValueError):
        kahler_reduce((0, 1), (0, 0), r=2)
    with pytest.raises(ValueError):
        kahler_reduce((1, 1), (1, 0), r=3)


@pytest.mark.parametrize(
    "b, a",
    [((1, 2), (-1, 0)), ((2, -2), (1, 4)), ((0, 1), (3, -1)), ((-2, 0), (2, 0)), ((1, -3), (-1, 3))],
)
def test_kahler_skew_rule(b, a):
    assert (kahler_reduce(b, a) + kahler_reduce(a, b)).is_zero()


def test_toroidal_bracket_central_charge(a_odd_algebra):
    algebra = a_odd_algebra
    h1 = algebra.h(1)
    result = loop_bracket(tensor(h1, 1, 0), tensor(h1, -1, 0), algebra)
    assert result.loop.is_zero()
    assert result.central == KahlerElement({C0: 2})
    central = ToroidalElement(LoopElement(), KahlerElement.basis(C0))
    assert toroidal_bracket(ToroidalElement(tensor(h1, 1, 0), KahlerElement()), central, algebra).is_zero()


def test_twisted_elements(a_odd_algebra):
    algebra = a_odd_algebra
    fixed = fixed_generators(A_ODD)[0][0]
    assert is_twisted(algebra, tensor(fixed, 2, 0))
    assert not is_twisted(algebra, tensor(algebra.e(1), 0, 0))
    assert not is_twisted(algebra, tensor(fixed, 0, 1))


def test_psi_examples():
    assert psi(CENTRAL, 0, A_ODD) == ToroidalElement(LoopElement(), KahlerElement.basis(C0))
    image = psi(H(0), 2, D)
    assert image.central == KahlerElement({(TDT, 2, 0): 2})
    algebra = build_algebra(A_EVEN)
    assert psi(XPlus(1), 3, A_EVEN).loop == tensor(algebra.e(1) + algebra.e(4), 3, 0)
    assert psi(H(0), 1, A_EVEN).central == KahlerElement({(TDT, 1, 0): 1})


def test_psi_rejects_out_of_range_symbols():
    with pytest.raises(ValueError):
        psi(XPlus(4), 0, A_ODD)
    with pytest.raises(ValueError):
        pibar(H(3), 0, D)


def test_psi_maps_cartan_pair_to_central_charge():
    algebra = build_algebra(A_ODD)
    result = toroidal_bracket(psi(H(0), 1, A_ODD), psi(H(2), -1, A_ODD), algebra)
    assert result == ToroidalElement(LoopElement(), KahlerElement({C0: -2}))


@pytest.mark.parametrize("kind", KINDS, ids=lambda kind: kind.label)
def test_psi_is_a_homomorphism(kind):
    report = check_psi_homomorphism(kind, 1, record_timings=False)
    assert report.passed, [record.label for record in report.relations if not record.passed]


def test_psi_pair_requires_a_relation():
    with pytest.raises(ValueError):
        check_psi_pair(A_ODD, XPlus(1), XPlus(2), 1)
    with pytest.raises(ValueError):
        check_psi_homomorphism(A_ODD, -1)


def test_serre_in_image_vanishes():
    assert serre_in_image(D4, 1, 2, 1).is_zero()
    assert serre_in_image(A_EVEN, 1, 0, -1).is_zero()


@pytest.mark.parametrize("kind", [A_ODD, A_EVEN], ids=lambda kind: kind.label)
def test_uncorrected_reading_is_not_a_homomorphism(kind):
    report = check_psi_homomorphism(kind, 1, PsiReading.UNCORRECTED, record_timings=False)
    assert not report.passed


def test_psi_uncorrected_is_deprecated():
    with pytest.deprecated_call():
        uncorrected = psi_uncorrected(XPlus(0), 0, A_EVEN)
    assert uncorrected != psi(XPlus(0), 0, A_EVEN)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        assert psi_uncorrected(H(1), 0, A_EVEN) == psi(H(1), 0, A_EVEN)


@pytest.mark.parametrize("kind", [A_ODD, D, D3, D4], ids=lambda kind: kind.label)
def test_pairing_table_matches_closed_form(kind):
    assert pairing_table(kind) == closed_form_pairing_table(kind)
    record = check_pairing_table(kind, record_timings=False)
    assert record.status == RecordStatus.PASS
    assert record.id == 0


def test_pairing_table_examples():
    table = pairing_table(A_ODD)
    assert table[(0, 0, 1)] == -ONE
    assert table[(0, 0, 2)] == 0
    with pytest.raises(ValueError):
        closed_form_pairing_table(A_EVEN)
    with pytest.raises(ValueError):
        check_pairing_table(A_EVEN)


@pytest.mark.parametrize("kind", KINDS, ids=lambda kind: kind.label)
def test_eta_psi_is_pibar(kind):
    assert check_eta_psi(kind, 2, record_timings=False).passed
    assert pibar(CENTRAL, 0, kind).is_zero()
    assert pibar(H(0), 1, kind) == eta(psi(H(0), 1, kind))


def test_eta_psi_fails_for_uncorrected_a_even():
    record = check_eta_psi(A_EVEN, 1, PsiReading.UNCORRECTED, record_timings=False)
    assert record.status == RecordStatus.FAIL
    assert record.residual["symbol"] == "X+(0)"


@pytest.mark.parametrize("kind", KINDS, ids=lambda kind: kind.label)
def test_pibar_respects_the_grading(kind):
    for symbol in symbols(kind):
        assert loop_degree(kind, pibar(symbol, 2, kind)) == {degree(kind, symbol, 2)}

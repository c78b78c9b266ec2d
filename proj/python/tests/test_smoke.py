import cmath
import math

import pytest

import cyclotome as cy


def test_number_theory():
    assert cy.mult_order(11, 14) == 3
    assert cy.is_index_two(3, 22)
    assert not cy.is_index_two(11, 86)
    assert [cy.class_number(p) for p in (7, 11, 19, 23, 43, 107)] == [1, 1, 1, 3, 1, 3]
    rows = cy.search_case_B(120, 10)
    assert [(r.p1, r.p, r.h) for r in rows] == [(11, 3, 1), (107, 3, 3)]
    assert any(r.p == 37 and r.pds for r in cy.search_case_A(7, 1, 40))


def test_field():
    F = cy.build_field(11, 3)
    assert F.order == 1331
    assert F.dlog(F.gamma) == 1
    assert F.element_order(F.exp(95)) == 14
    with pytest.raises(cy.CyclotomeError, match="NotPrime"):
        cy.build_field(12, 1)


def test_case_A_skew_hds():
    D = cy.construct_case_A(7, 1, 11, list(range(7)))
    assert len(D) == 665
    report = cy.verify(D, "both")
    assert report["verdict"] == "SkewHDS"
    assert (report["v"], report["k"], report["lambda"]) == (1331, 665, 332)
    for z in D.restricted_sums():
        assert abs(z.real + 0.5) < 1e-6
        assert abs(abs(z.imag) - math.sqrt(1331) / 2) < 1e-6


def test_case_B_round_trip():
    D = cy.construct_case_B(11, 3)
    assert D.index_set == [0, 1, 2, 3, 5, 6, 8, 9, 10, 15, 18]
    again, warnings = cy.load_text(D.to_text())
    assert warnings == []
    assert again.elements() == D.elements()
    assert cy.verify(again, "brute")["lambda"] == 60


def test_gauss_sums():
    S = cy.build_scheme(cy.build_field(7, 1), 2)
    assert abs(abs(S.gauss_sum(1)) ** 2 - 7) < 1e-9
    assert abs(S.gauss_sum(0) + 1) < 1e-9
    assert abs(sum(S.periods) + 1) < 1e-9
    assert cy.davenport_hasse_holds(3, 1, 3, 2)


def test_errors():
    with pytest.raises(cy.CyclotomeError, match="index-2 condition failed"):
        cy.construct_case_B(43, 11)
    with pytest.raises(cy.CyclotomeError, match="EvenLift"):
        cy.construct_case_A(7, 1, 11, list(range(7)), s=2)
    with pytest.raises(cy.CyclotomeError, match="BadIndexSet"):
        cy.construct_case_A(7, 1, 11, [0, 1, 2, 3, 4, 5, 12])

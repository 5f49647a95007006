from fractions import Fraction
import os
import sys

sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

import pytest

from freefield.printing import format_series
from freefield.qseries import (
    QSeries,
    char_fock,
    char_lattice,
    char_orbifold,
    char_u,
    char_u_trace,
    char_virasoro_c1,
    char_weyl,
    closed_form_checks,
    enum_u,
    enum_virasoro,
    lattice_decomposition_checks,
    telescoping_checks,
    u_checks,
    verify_decompositions,
)


def test_fock_character_is_partition_generating_function():
    assert char_fock(0, 6).coeffs == (1, 1, 2, 3, 5, 7, 11)


def test_virasoro_vacuum_character():
    assert char_virasoro_c1(0, 6) == QSeries.make(0, [1, 0, 1, 1, 2, 2, 4])
    assert enum_virasoro(0, 6) == char_virasoro_c1(0, 6)


def test_orbifold_characters_sum_to_fock():
    assert char_orbifold(1, False, 8) + char_orbifold(-1, False, 8) == char_fock(0, 8)


def test_twisted_tops_have_expected_weights():
    assert char_orbifold(1, True, 4).normalized().offset == Fraction(1, 16)
    assert char_orbifold(-1, True, 4).normalized().offset == Fraction(9, 16)


def test_lattice_character_starts_with_vacuum_and_sl2():
    lattice = char_lattice(4)
    assert lattice.coefficient(0) == 1
    # e^(+-gamma) and gamma(-1)
    assert lattice.coefficient(1) == 3


def test_weyl_character_low_terms():
    # (1 - t)^(-2): 1 + 2t + 3t^2 + ...; even part 1 + 3t^2, odd part 2t + 4t^3
    even = char_weyl(1, 0, 2)
    odd = char_weyl(1, 1, 2)
    assert even.coefficient(0) == 1 and even.coefficient(1) == 3
    assert odd.coefficient(Fraction(1, 2)) == 2


def test_series_on_different_grids_add():
    total = QSeries.make(0, [1, 1, 1]) + QSeries.make(Fraction(1, 2), [1, 1])
    assert total.step == Fraction(1, 2)
    assert [total.coefficient(e) for e in (0, Fraction(1, 2), 1, Fraction(3, 2))] == [1, 1, 1, 1]


def test_equality_uses_common_range():
    assert QSeries.make(0, [1, 2, 3]) == QSeries.make(0, [1, 2])
    assert QSeries.make(0, [1, 2, 3]) != QSeries.make(0, [1, 3])


def test_normalized_collapses_half_step():
    s = QSeries.make(Fraction(1, 16), [0, 0, 1, 0, 2], Fraction(1, 2))
    n = s.normalized()
    assert n.offset == Fraction(17, 16)
    assert n.step == 1
    assert n.coeffs == (1, 2)


def test_format_series():
    assert format_series(QSeries.make(0, [1, 1, 2])) == "1 + q + 2 q^2 + O(q^3)"
    assert format_series(QSeries.make(Fraction(1, 16), [1, 0, 1])) == "q^(1/16) (1 + q^2 + O(q^3))"


def test_closed_forms_match_enumeration():
    checks = closed_form_checks(8, 6, ranks=(1, 2))
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_virasoro_characters_match_enumeration_to_q12(m):
    enumerated = enum_virasoro(m, 12)
    assert enumerated.order >= 12
    assert enumerated == char_virasoro_c1(m, 12)


def test_closed_form_checks_use_full_order_for_virasoro():
    checks = [c for c in closed_form_checks(12, 4, ranks=(1,)) if c.name.startswith("virasoro")]
    assert len(checks) == 5
    assert all(dict(c.parameters)["order"] == "12" for c in checks)
    assert all(c.passed for c in checks)


def test_fock_telescopes_into_virasoro_characters():
    assert all(c.passed for c in telescoping_checks(12, m_max=3))


def test_lattice_decomposes_into_virasoro_characters():
    assert all(c.passed for c in lattice_decomposition_checks(10))


@pytest.mark.parametrize("n", [2, 3])
def test_character_of_u(n):
    assert char_u(n, 6) == char_u_trace(n, 6)
    assert enum_u(n, 6) == char_u(n, 6)
    assert all(c.passed for c in u_checks(n, 6))


def test_low_order_warns(caplog):
    with caplog.at_level("WARNING", logger="freefield.qseries"):
        telescoping_checks(4, m_max=0)
    assert any("below" in r.message for r in caplog.records)


def test_verify_decompositions_collects_every_family():
    checks = verify_decompositions(10, tensor_order=6, telescoping_order=12, u_ranks=(2,))
    names = [c.name for c in checks]
    assert any(n.startswith("M(1,") for n in names)
    assert any("U(n=2)" in n for n in names)
    assert all(c.passed for c in checks), [n for n, c in zip(names, checks) if not c.passed]

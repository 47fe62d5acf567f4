"""Formal semigroups: constructors, counting, validation, Alexander round trips."""

from fractions import Fraction as F

import pytest

from upsilon.errors import NotLSpaceError
from upsilon.semigroup import (
    AlexanderPoly,
    FormalSemigroup,
    alexander_from_semigroup,
    cable_semigroup,
    pretzel_semigroup,
    semigroup_from_alexander,
    torus_semigroup,
    unknot_semigroup,
)


def sieve_membership(p, q, bound):
    """Independent oracle: reachability of a*p + b*q by dynamic programming."""
    reach = [False] * bound
    reach[0] = True
    for k in range(bound):
        if k >= p and reach[k - p]:
            reach[k] = True
        if k >= q and reach[k - q]:
            reach[k] = True
    return reach


def test_torus_3_7():
    s = torus_semigroup(3, 7)
    assert s.genus == 6
    assert s.small_elements == (0, 3, 6, 7, 9, 10)


def test_torus_trivial_strand():
    assert torus_semigroup(1, 9) == unknot_semigroup()
    assert torus_semigroup(9, 1).genus == 0


def test_torus_2_3():
    s = torus_semigroup(2, 3)
    assert s.genus == 1 and s.small_elements == (0,)


@pytest.mark.parametrize("p,q", [(2, 3), (3, 4), (3, 7), (4, 9), (5, 7)])
def test_torus_against_sieve(p, q):
    s = torus_semigroup(p, q)
    bound = 2 * s.genus + 5
    reach = sieve_membership(p, q, bound)
    for m in range(bound):
        assert (m in s) == reach[m]


def test_torus_rejects_bad_input():
    with pytest.raises(ValueError, match="coprime"):
        torus_semigroup(2, 4)
    with pytest.raises(ValueError, match="positive"):
        torus_semigroup(0, 5)


def test_pretzel_small_cases_match_torus():
    assert pretzel_semigroup(1) == torus_semigroup(3, 4)
    assert pretzel_semigroup(2) == torus_semigroup(3, 5)


def test_pretzel_three():
    s = pretzel_semigroup(3)
    assert s.genus == 5
    assert s.small_elements == (0, 3, 5, 7, 8)
    assert s.gaps() == (1, 2, 4, 6, 9)


def test_pretzel_rejects_zero():
    with pytest.raises(ValueError):
        pretzel_semigroup(0)


def test_cable_of_trefoil():
    s = cable_semigroup(torus_semigroup(2, 3), 2, 5)
    assert s.genus == 4
    assert s.small_elements == (0, 4, 5, 6)


def test_cable_2_3_is_torus_3_4():
    assert cable_semigroup(torus_semigroup(2, 3), 2, 3) == torus_semigroup(3, 4)


def test_cable_below_regime_rejected():
    with pytest.raises(NotLSpaceError, match="not an L-space cable"):
        cable_semigroup(torus_semigroup(2, 3), 2, 1)


def test_cable_identity_when_p_is_1():
    s = torus_semigroup(3, 7)
    assert cable_semigroup(s, 1, 100) is s


def test_cable_of_unknot_is_torus():
    for p, q in [(2, 3), (3, 5), (4, 7)]:
        assert cable_semigroup(unknot_semigroup(), p, q) == torus_semigroup(p, q)


def test_count_below_table_3_7():
    s = torus_semigroup(3, 7)
    assert [s.count_below(m) for m in range(13)] == [0, 1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6, 6]


def test_count_below_edges():
    s = torus_semigroup(3, 35)
    assert s.count_below(33) == 11
    assert s.count_below(34) == 12
    assert s.count_below(35) == 12
    assert s.count_below(0) == 0
    assert s.count_below(-4) == 0
    assert s.count_below(2 * s.genus + 10) == s.genus + 10


def test_threshold_values():
    assert torus_semigroup(3, 7).threshold() == F(2, 3)
    assert torus_semigroup(2, 3).threshold() == 2
    s = torus_semigroup(2, 5)
    brute = min(F(2 * s.count_below(m), m) for m in (1, 2, 3))
    assert s.threshold() == brute == 1
    with pytest.raises(ValueError, match="unknot"):
        unknot_semigroup().threshold()


def test_symmetry_and_gap_count():
    for s in (torus_semigroup(3, 7), pretzel_semigroup(4), cable_semigroup(torus_semigroup(2, 3), 2, 7)):
        g = s.genus
        assert len(s.gaps()) == g
        assert 1 not in s
        for m in range(2 * g):
            assert (m in s) != ((2 * g - 1 - m) in s)
        for nu in range(2 * g + 1):
            assert s.count_below(2 * g - nu) == g - nu + s.count_below(nu)


def test_validation_failures():
    with pytest.raises(ValueError, match="gap"):
        FormalSemigroup(2, (0, 2, 3))
    with pytest.raises(ValueError, match="1 must be a gap"):
        FormalSemigroup(1, (0, 1))
    with pytest.raises(ValueError, match="symmetry"):
        FormalSemigroup(2, (0, 3))
    with pytest.raises(ValueError, match="0 must be a member"):
        FormalSemigroup(1, (1,))


def test_str_and_json():
    s = torus_semigroup(3, 7)
    assert str(s) == "{0,3,6,7,9,10} ∪ Z≥12"
    assert s.to_json_dict() == {"genus": 6, "small_elements": [0, 3, 6, 7, 9, 10]}
    assert str(unknot_semigroup()) == "Z≥0"


def test_alexander_of_trefoil():
    assert alexander_from_semigroup(torus_semigroup(2, 3)).coefficients == (1, -1, 1)


def test_alexander_of_unknot():
    assert alexander_from_semigroup(unknot_semigroup()).coefficients == (1,)
    assert semigroup_from_alexander(AlexanderPoly((1,))) == unknot_semigroup()


def test_semigroup_from_alexander_simple():
    assert semigroup_from_alexander(AlexanderPoly((1, -1, 1))) == torus_semigroup(2, 3)


@pytest.mark.parametrize(
    "s",
    [
        torus_semigroup(2, 3),
        torus_semigroup(3, 7),
        pretzel_semigroup(3),
        cable_semigroup(torus_semigroup(2, 3), 2, 5),
    ],
)
def test_alexander_round_trip(s):
    assert semigroup_from_alexander(alexander_from_semigroup(s)) == s


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_cable_alexander_is_product():
    # companion polynomial evaluated at t^p times the torus polynomial
    for core, p, q in [((2, 3), 2, 5), ((3, 7), 3, 35)]:
        s_core = torus_semigroup(*core)
        cab = alexander_from_semigroup(cable_semigroup(s_core, p, q))
        comp = alexander_from_semigroup(s_core).coefficients
        stretched = [0] * ((len(comp) - 1) * p + 1)
        for k, c in enumerate(comp):
            stretched[k * p] = c
        tor = alexander_from_semigroup(torus_semigroup(p, q)).coefficients
        assert tuple(poly_mul(stretched, list(tor))) == cab.coefficients


def test_alexander_validation():
    with pytest.raises(ValueError, match="flat"):
        AlexanderPoly((1, -2, 1))
    with pytest.raises(ValueError, match="palindromic"):
        AlexanderPoly((1, -1, 0, 0, 1))
    with pytest.raises(ValueError, match="alternate"):
        AlexanderPoly((1, 0, 1, 0, 1))
    with pytest.raises(ValueError, match="degree"):
        AlexanderPoly((1, 1))


def test_alexander_with_no_knot_semigroup_is_rejected():
    # flat, palindromic and alternating, yet the expansion support contains 1
    with pytest.raises(ValueError, match="1 must be a gap"):
        semigroup_from_alexander(AlexanderPoly((1, 0, -1, 0, 1)))

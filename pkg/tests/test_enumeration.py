from math import factorial

import pytest

from brauertype import canonical as cn
from brauertype import diagrams as dg
from brauertype import enumeration as en
from brauertype.diagrams import MonoidFamily as F
from brauertype.errors import CapExceeded, FormulaMismatch, NotAPermutation

import oracles


def test_set_partitions_bell_numbers():
    assert [sum(1 for _ in en.set_partitions(m)) for m in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("family, oracle, top", [
    (F.B, oracles.brauer_elements, 5),
    (F.PB, oracles.partial_brauer_elements, 4),
    (F.IS, oracles.partial_injections, 5),
    (F.IT, lambda n: oracles.block_bijections(n, same_sizes=True), 4),
    (F.IP, oracles.block_bijections, 4),
])
def test_enumeration_matches_direct_construction(family, oracle, top):
    for n in range(1, top + 1):
        assert set(en.enumerate_family(family, n)) == oracle(n)


def test_c_and_s_sizes():
    assert len(en.enumerate_family(F.S, 3)) == 6
    assert len(en.enumerate_family(F.S, 4)) == 24
    assert set(en.enumerate_family(F.C, 3)) == set(oracles.all_diagrams(3))
    assert len(en.enumerate_family(F.C, 4)) == 4140


def test_output_sorted_and_deterministic():
    a = en.enumerate_family(F.PB, 3)
    assert a == sorted(a)
    assert a == en.enumerate_family(F.PB, 3)


def test_known_sizes():
    assert len(en.enumerate_family(F.B, 4)) == 105
    assert len(en.enumerate_family(F.IT, 3)) == 16
    assert len(en.enumerate_family(F.PB, 2)) == 10


def test_cap_exceeded_reports_partial_count():
    with pytest.raises(CapExceeded) as info:
        en.enumerate_family(F.B, 5, cap=100)
    assert info.value.partial > 100
    with pytest.raises(CapExceeded):
        en.enumerate_family(F.C, 4, cap=10)


def test_is2_census():
    c = en.census(F.IS, 2)
    assert c.by_rank == {0: 1, 1: 4, 2: 2}
    assert c.total == 7


def test_b4_census():
    c = en.census(F.B, 4)
    assert c.by_rank == {0: 9, 2: 72, 4: 24}
    assert c.total == sum(c.by_rank.values()) == 105


def test_pb2_census():
    c = en.census(F.PB, 2)
    assert c.by_type == {(0, 0, 0, 0): 2, (0, 0, 0, 1): 4, (0, 0, 0, 2): 1,
                         (0, 1, 0, 0): 1, (0, 0, 1, 0): 1, (1, 0, 0, 0): 1}
    assert c.total == 10


def test_it3_census():
    c = en.census(F.IT, 3)
    assert c.by_type == {(3, 0, 0): 6, (1, 1, 0): 9, (0, 0, 1): 1}


def test_census_json_uses_decimal_strings():
    out = en.census(F.IT, 3).to_json()
    assert out["total"] == "16"
    assert out["by_rank"] == {"1": "1", "2": "9", "3": "6"}
    assert out["by_type"]["1,1,0"] == "9"


def test_census_mismatch_is_a_hard_error():
    elements = en.enumerate_family(F.B, 4)[1:]
    with pytest.raises(FormulaMismatch) as info:
        en.census(F.B, 4, elements=elements)
    assert info.value.enumerated + 1 == info.value.formula


def test_brauer_formula_at_rank_zero():
    # rank 0 exists only for even degree: (2l-1)!!^2 perfect matchings per side
    assert en.brauer_rank_count(4, 0) == 9
    assert en.brauer_rank_count(6, 0) == 225
    assert en.brauer_rank_count(5, 0) == 0


def test_formula_totals_are_known_sequences():
    # the Brauer total is (2n-1)!!
    for n in range(1, 9):
        by_rank, _ = en.expected_census(F.B, n)
        assert sum(by_rank.values()) == factorial(2 * n) // (2**n * factorial(n))
    assert [sum(en.expected_census(F.IS, n)[0].values()) for n in range(1, 7)] == [2, 7, 34, 209, 1546, 13327]


def test_formulas_exact_beyond_64_bits():
    by_rank, _ = en.expected_census(F.IS, 13)
    assert by_rank[13] == factorial(13)
    assert en.is_rank_count(20, 10) == 184756**2 * 3628800


def test_act_identity_and_conjugation():
    e = dg.identity(4)
    x = dg.parse("{1,3|2,4'|4|1',2'|3'}")
    assert en.act(e, x, e) == x
    for i in range(1, 4):
        # any w with w({1,2}) = {i, i+1}
        rest = [k for k in range(1, 5) if k not in (i, i + 1)]
        w = dg.from_permutation((i, i + 1, *rest))
        assert en.act(w, dg.pi(1, 4), w) == dg.pi(i, 4)
        assert en.act(w, dg.rho(1, 4), w) == dg.rho(i, 4)
    with pytest.raises(NotAPermutation):
        en.act(dg.pi(1, 4), x, e)


def test_act_matches_permute():
    g = dg.from_permutation((2, 3, 1))
    h = dg.from_permutation((3, 1, 2))
    for x in oracles.all_diagrams(3):
        gp = tuple(k - 1 for k in dg.as_permutation(g))
        hp = tuple(k - 1 for k in dg.as_permutation(h))
        assert en.act(g, x, h) == dg.permute(x, gp, hp)


def test_b2_orbits():
    reports = en.orbits(F.B, 2)
    assert [r.representative for r in reports] == [dg.identity(2), dg.pi(1, 2)]
    assert [r.orbit_size for r in reports] == [2, 1]


@pytest.mark.parametrize("family", [F.B, F.IT, F.PB, F.IS])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_orbits_against_group_closure(family, n):
    elements = en.enumerate_family(family, n)
    reports = en.orbits(family, n, elements)
    assert sum(r.orbit_size for r in reports) == len(elements)
    assert len(reports) == len(cn.canonical_specs(family, n))
    for r in reports:
        assert r.orbit_size * r.stabilizer_size == factorial(n) ** 2
        assert r.orbit_size == r.bound
        if n <= 3:
            assert len(oracles.orbit_by_group(r.representative, n)) == r.orbit_size


def test_it_stabilizer_product_formula():
    for n in range(1, 5):
        for r in en.orbits(F.IT, n):
            assert r.stabilizer_size == cn.stabilizer_lower_bound(r.spec, n)


def test_orbit_json():
    out = en.orbits(F.B, 2)[1].to_json()
    assert out == {"rep": "{1,2|1',2'}", "spec": [1], "size": "1", "stabilizer": "4", "bound": "1"}

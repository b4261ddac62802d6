import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brauertype import canonical as cn
from brauertype import diagrams as dg
from brauertype import enumeration as en
from brauertype.diagrams import MonoidFamily as F
from brauertype.errors import InvalidSpec, NotAMember
from brauertype.presentations import evaluate, tau

import oracles

FAMILIES = [F.B, F.IT, F.PB, F.IS]


def brute_force_factor(x, core):
    """Least (u, v) in one-line order with u * core * v == x."""
    n = x.n
    perms = list(itertools.permutations(range(1, n + 1)))
    for u in perms:
        left = dg.multiply(dg.from_permutation(u), core).product
        for v in perms:
            if dg.multiply(left, dg.from_permutation(v)).product == x:
                return u, v
    return None


def test_partitions():
    assert list(cn.partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [len(list(cn.partitions(n))) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_canonical_examples():
    assert cn.canonical(cn.brauer_spec(0), 4) == dg.identity(4)
    assert cn.canonical(cn.brauer_spec(1), 2) == dg.pi(1, 2)
    assert cn.canonical(cn.brauer_spec(2), 5) == dg.pi(1, 5) * dg.pi(3, 5)
    it = cn.canonical(cn.it_spec((2, 1)), 3)
    assert dg.format_text(it) == "{1,2,1',2'|3,3'}"
    assert it == evaluate((tau(1),), 3)
    assert dg.format_text(cn.canonical(cn.it_spec((3, 2)), 5)) == "{1,2,3,1',2',3'|4,5,4',5'}"
    assert dg.format_text(cn.canonical(cn.is_spec(2), 3)) == "{1|2|3,3'|1'|2'}"


def test_pb_canonical_shapes():
    n = 7
    d = cn.canonical(cn.pb_spec(1, 1, 0, 1), n)
    assert dg.format_text(d) == "{1,2|3,4|5|6,6'|7,7'|1',2'|3'|4'|5'}"
    assert dg.pb_type(d) == (1, 1, 0, 1)
    d = cn.canonical(cn.pb_spec(1, 0, 1, 1), n)
    assert dg.pb_type(d) == (1, 0, 1, 1)
    assert dg.format_text(d) == "{1,2|3|4|5|6,6'|7,7'|1',2'|3',4'|5'}"


def test_pb_mixed_spec_is_constructible_but_not_canonical():
    spec = cn.pb_spec(0, 1, 1, 0)
    assert not spec.is_canonical
    d = cn.canonical(spec, 4)
    assert dg.member(d, F.PB)
    assert spec not in cn.canonical_specs(F.PB, 4)
    with pytest.raises(InvalidSpec):
        cn.predicted_orbit_size(spec, 4)


@pytest.mark.parametrize("spec, n", [
    (cn.brauer_spec(3), 5), (cn.it_spec((1, 2)), 3), (cn.it_spec((2, 1)), 4),
    (cn.pb_spec(1, 1, 0, 1), 4), (cn.pb_spec(-1, 0, 0, 0), 4), (cn.is_spec(5), 4),
    (cn.CanonicalSpec(F.C, (0,)), 3),
])
def test_invalid_specs(spec, n):
    with pytest.raises(InvalidSpec):
        cn.canonical(spec, n)


@pytest.mark.parametrize("family", FAMILIES)
def test_canonical_elements_are_members_and_distinct(family):
    for n in range(1, 7):
        specs = cn.canonical_specs(family, n)
        elements = [cn.canonical(s, n) for s in specs]
        assert len(set(elements)) == len(specs)
        assert all(dg.member(x, family) for x in elements)
        assert all(cn.spec_of(x, family) == s for x, s in zip(elements, specs))


# -- factorization


def test_factorize_identity():
    for family in FAMILIES:
        f = cn.factorize(dg.identity(4), family)
        assert f.u == dg.identity(4) and f.v == dg.identity(4)
        assert cn.canonical(f.core, 4) == dg.identity(4)


def test_factorize_b4_example():
    x = dg.parse("{1,3|2,4|1',2'|3',4'}")
    f = cn.factorize(x, F.B)
    assert f.core == cn.brauer_spec(2)
    assert f.product() == x
    expected = brute_force_factor(x, cn.canonical(f.core, 4))
    assert (dg.as_permutation(f.u), dg.as_permutation(f.v)) == expected


def test_factorize_point_in_pb2():
    f = cn.factorize(dg.sigma_point(1, 2), F.PB)
    assert f.core == cn.pb_spec(0, 0, 0, 1)
    assert f.product() == dg.sigma_point(1, 2)


def test_factorize_rejects_non_members():
    with pytest.raises(NotAMember):
        cn.factorize(dg.rho(1, 3), F.B)
    with pytest.raises(ValueError):
        cn.factorize(dg.identity(3), F.C)


@pytest.mark.parametrize("family", FAMILIES)
def test_factorize_round_trip_exhaustive(family):
    for n in range(1, 5):
        for x in en.enumerate_family(family, n):
            f = cn.factorize(x, family)
            assert dg.is_permutation(f.u) and dg.is_permutation(f.v)
            assert f.product() == x


@pytest.mark.parametrize("family", FAMILIES)
def test_factorize_is_lexicographically_least(family):
    rng = random.Random(5)
    for n in (2, 3, 4):
        elements = en.enumerate_family(family, n)
        sample = elements if n < 4 else rng.sample(elements, min(25, len(elements)))
        for x in sample:
            f = cn.factorize(x, family)
            expected = brute_force_factor(x, cn.canonical(f.core, n))
            assert (dg.as_permutation(f.u), dg.as_permutation(f.v)) == expected


def test_orbits_hold_one_canonical_element_each():
    for family in FAMILIES:
        for n in range(1, 4):
            canon = {cn.canonical(s, n) for s in cn.canonical_specs(family, n)}
            seen = set()
            for c in canon:
                orbit = oracles.orbit_by_group(c, n)
                assert orbit & canon == {c}
                seen |= orbit
            assert seen == set(en.enumerate_family(family, n))


def test_predicted_orbit_sizes():
    assert cn.predicted_orbit_size(cn.brauer_spec(1), 4) == 72
    assert cn.predicted_orbit_size(cn.it_spec((2, 1)), 3) == 9
    assert cn.stabilizer_lower_bound(cn.it_spec((2, 2)), 4) == 2 * 2**4
    assert cn.predicted_orbit_size(cn.pb_spec(0, 1, 0, 0), 2) == 1
    assert cn.predicted_orbit_size(cn.is_spec(1), 3) == 18


# -- conjugates of the atoms


def test_epsilon_first_pair_is_the_atom():
    for n in range(2, 6):
        assert cn.epsilon(1, 2, n) == dg.pi(1, n)
        assert cn.epsilon(1, 2, n, F.IT) == dg.rho(1, n)


def test_epsilon_shapes():
    assert dg.format_text(cn.epsilon(1, 3, 3)) == "{1,3|2,2'|1',3'}"
    assert dg.format_text(cn.epsilon(2, 4, 4, F.IT)) == "{1,1'|2,4,2',4'|3,3'}"
    with pytest.raises(ValueError):
        cn.epsilon(2, 2, 3)
    with pytest.raises(ValueError):
        cn.epsilon(1, 4, 3)
    with pytest.raises(ValueError):
        cn.epsilon(1, 2, 3, F.IS)


def test_epsilon_independent_of_coset_representative():
    n = 4
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for base, family in ((dg.pi(1, n), F.B), (dg.rho(1, n), F.IT)):
            images = set()
            for w in itertools.permutations(range(1, n + 1)):
                if {w[0], w[1]} == {i, j}:
                    wd = dg.from_permutation(w)
                    images.add(wd.flip() * base * wd)
            assert images == {cn.epsilon(i, j, n, family)}


def test_disjoint_epsilons_commute():
    for n in (4, 5):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for family in (F.B, F.IT):
            for (i, j), (p, q) in itertools.product(pairs, pairs):
                if {i, j} & {p, q}:
                    continue
                a, b = cn.epsilon(i, j, n, family), cn.epsilon(p, q, n, family)
                assert a * b == b * a


def test_it_epsilon_triangle():
    n = 5
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        e = lambda a, b: cn.epsilon(min(a, b), max(a, b), n, F.IT)
        assert e(i, j) * e(j, k) == e(i, k) * e(j, k) == e(i, j) * e(i, k)


def test_epsilon_rho_examples():
    assert cn.epsilon_rho({(1, 2)}, 3) == cn.epsilon(1, 2, 3, F.IT)
    chain = cn.epsilon_rho([(1, 2), (2, 3)], 3)
    assert chain == cn.epsilon_rho(cn.closure_pairs([(1, 2), (2, 3)], 3), 3)
    assert dg.format_text(chain) == "{1,2,3,1',2',3'}"
    assert cn.epsilon_rho([(1, 2), (3, 4)], 4) == cn.epsilon_rho([(3, 4), (1, 2)], 4)
    assert cn.epsilon_rho([(2, 2)], 3) == dg.identity(3)
    with pytest.raises(ValueError):
        cn.epsilon_rho([], 3)
    with pytest.raises(ValueError):
        cn.epsilon_rho([(1, 4)], 3)


@given(st.integers(2, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(1, n), st.integers(1, n)),
                                             min_size=1, max_size=6))))
def test_epsilon_rho_depends_only_on_closure(case):
    n, rel = case
    closed = cn.epsilon_rho(cn.closure_pairs(rel, n), n)
    assert cn.epsilon_rho(rel, n) == closed
    assert cn.epsilon_rho(rel[::-1], n) == closed
    blocks = cn.equivalence_closure(rel, n)
    assert sorted(len(b) for b in blocks) == sorted(len(b) // 2 for b in closed.blocks)


def test_point_bracket_identities():
    n = 4
    v = lambda i: dg.sigma_point(i, n)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        e = cn.epsilon(i, j, n, F.PB)
        nu = cn.nu(i, j, n)
        assert v(i) * e == v(j) * e == v(i) * v(j) * e == nu
        assert v(i) * cn.mu(i, j, n) == v(i) * v(j)


def test_mu_nu_first_pair():
    assert dg.format_text(cn.mu(1, 2, 2)) == "{1,2|1'|2'}"
    assert dg.format_text(cn.nu(1, 2, 2)) == "{1|2|1',2'}"


def test_pb_reduction_at_degree_4():
    n = 4
    for (i, j), (p, q) in itertools.permutations(itertools.combinations(range(1, n + 1), 2), 2):
        if {i, j} & {p, q}:
            continue
        x = cn.mu(i, j, n) * cn.nu(p, q, n)
        y = cn.epsilon(i, j, n, F.PB) * dg.sigma_point(p, n) * dg.sigma_point(q, n)
        assert cn.spec_of(x, F.PB) == cn.spec_of(y, F.PB) == cn.pb_spec(1, 0, 0, 2)
        assert y in oracles.orbit_by_group(x, n)

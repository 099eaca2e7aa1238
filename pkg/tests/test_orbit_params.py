from itertools import combinations
from math import comb, factorial

import pytest

from borel_orbits.exceptions import BorelOrbitsError, NotAdmissible
from borel_orbits.intlinalg import integer_rank
from borel_orbits.orbit_params import (enumerate_admissible_pairs, enumerate_orthogonal_subsets,
                                       enumerate_params, is_admissible_pair, typeB_enumerate,
                                       typeC_completion, typeC_completion_parts,
                                       typeC_enumerate_admissible,
                                       typeC_enumerate_full_admissible, typeC_is_admissible,
                                       typeC_is_essential, typeC_is_full_admissible)
from borel_orbits.root_system import Root
from borel_orbits.weyl import enumerate_WP, identity, inversion_set, omega_P
from conftest import comin
from oracles import c_full_admissible_sets, c_partitions, orthogonal_subsets


def R(*c):
    return Root(tuple(c))


def _inv(v):
    return {r.coords for r in inversion_set(v)}


def _sets(params):
    return {frozenset(r.coords for r in p.s) for p in params}


# -- counts -----------------------------------------------------------------------------------

def test_c2_omega_counts_against_oracle(cd_c2):
    w = omega_P(cd_c2)
    full = c_full_admissible_sets(2, _inv(w))
    orth = orthogonal_subsets(_inv(w))
    assert (len(full), len(orth)) == (6, 5)
    assert _sets(typeC_enumerate_full_admissible(cd_c2, w)) == set(full)
    assert len(enumerate_orthogonal_subsets(cd_c2, w)) == 5


def test_a3_middle_rook_count():
    cd = comin("A", 3, 2)
    rook = sum(comb(2, k) ** 2 * factorial(k) for k in range(3))
    assert rook == 7
    assert len(enumerate_orthogonal_subsets(cd, omega_P(cd))) == rook


@pytest.mark.parametrize("p,q", [(2, 3), (3, 3), (1, 4)])
def test_grassmannian_rook_counts(p, q):
    cd = comin("A", p + q - 1, p)
    rook = sum(comb(p, k) * comb(q, k) * factorial(k) for k in range(min(p, q) + 1))
    assert len(enumerate_orthogonal_subsets(cd, omega_P(cd))) == rook


@pytest.mark.parametrize("n", [2, 3])
def test_full_admissible_all_v_against_oracle(n):
    cd = comin("C", n, n)
    for v in enumerate_WP(cd):
        assert _sets(typeC_enumerate_full_admissible(cd, v)) == set(c_full_admissible_sets(n, _inv(v)))


def test_full_admissible_c4_omega_against_oracle():
    cd = comin("C", 4, 4)
    w = omega_P(cd)
    assert _sets(typeC_enumerate_full_admissible(cd, w)) == set(c_full_admissible_sets(4, _inv(w)))


@pytest.mark.parametrize("n", [3, 4])
def test_filter_and_generate_agree(n):
    cd = comin("C", n, n)
    for v in enumerate_WP(cd):
        a = typeC_enumerate_full_admissible(cd, v, strategy="filter")
        b = typeC_enumerate_full_admissible(cd, v, strategy="generate")
        assert a == b


def test_type_b_family_against_definition():
    cd = comin("B", 3, 1)
    a0 = (1, 0, 0)
    for v in enumerate_WP(cd):
        inv = _inv(v)
        expected = set(orthogonal_subsets(inv))
        if a0 in inv:
            for b in inv:
                g = tuple(x - y for x, y in zip(b, a0))
                # gamma = e_j is a positive Levi root of B3 with alpha_P = alpha_1
                if sorted(map(abs, g)) == [0, 0, 1] and sum(g) == 1 and g[0] == 0:
                    expected.add(frozenset({a0, b}))
        assert _sets(typeB_enumerate(cd, v)) == expected


@pytest.mark.parametrize("t,n,p", [("A", 3, 2), ("A", 4, 1), ("D", 4, 1), ("D", 4, 4)])
def test_simply_laced_families_coincide(t, n, p):
    cd = comin(t, n, p)
    for v in enumerate_WP(cd):
        assert enumerate_params(cd, v, "char2") == enumerate_params(cd, v, "char_ne2")
        assert _sets(enumerate_params(cd, v)) == set(orthogonal_subsets(_inv(v)))


# -- the paper's worked examples ----------------------------------------------------------------

def test_c5_completion_via_B(cd_c5):
    w = omega_P(cd_c5)
    s = [R(1, 0, 0, 0, 1), R(0, 1, 0, 1, 0), R(0, 2, 0, 0, 0)]
    a_set, b_set = typeC_completion_parts(cd_c5, w, s)
    assert a_set == frozenset() and b_set == {R(2, 0, 0, 0, 0)}
    full = typeC_completion(cd_c5, w, s)
    assert full.s == {R(1, 0, 0, 0, 1), R(2, 0, 0, 0, 0), R(0, 1, 0, 1, 0), R(0, 2, 0, 0, 0)}
    assert full.x_part == {R(1, 0, 0, 0, 1), R(0, 1, 0, 1, 0)}
    assert full.z_part == {R(2, 0, 0, 0, 0), R(0, 2, 0, 0, 0)}
    assert full.pad(R(2, 0, 0, 0, 0)) == R(1, 0, 0, 0, 1)
    assert full.pad(R(0, 2, 0, 0, 0)) == R(0, 1, 0, 1, 0)
    assert not typeC_is_full_admissible(cd_c5, w, s)
    assert typeC_is_full_admissible(cd_c5, w, full.s)


def test_c5_completion_via_A(cd_c5):
    w = omega_P(cd_c5)
    s = [R(1, 0, 0, 0, 1), R(0, 2, 0, 0, 0)]
    a_set, b_set = typeC_completion_parts(cd_c5, w, s)
    assert a_set == {R(2, 0, 0, 0, 0)} and b_set == frozenset()
    assert typeC_completion(cd_c5, w, s).s == {R(1, 0, 0, 0, 1), R(2, 0, 0, 0, 0), R(0, 2, 0, 0, 0)}


# -- laws ----------------------------------------------------------------------------------------

@pytest.mark.parametrize("n,all_v", [(3, True), (4, False)])
def test_completion_laws(n, all_v):
    cd = comin("C", n, n)
    vs = enumerate_WP(cd) if all_v else [omega_P(cd)]
    for v in vs:
        for tcs in typeC_enumerate_admissible(cd, v):
            c = typeC_completion(cd, v, tcs)
            assert tcs.s <= c.s
            assert typeC_is_admissible(cd, v, c.s).s == c.s
            assert c.x_part == tcs.x_part
            assert typeC_completion(cd, v, c).s == c.s
            assert typeC_is_full_admissible(cd, v, tcs.s) == (c.s == tcs.s)


def test_admissible_sets_against_oracle_and_independent():
    cd = comin("C", 3, 3)
    for v in enumerate_WP(cd):
        inv = sorted(_inv(v))
        expected = {frozenset(s) for k in range(len(inv) + 1)
                    for s in combinations(inv, k) if c_partitions(s)}
        got = typeC_enumerate_admissible(cd, v)
        assert _sets(got) == expected
        for tcs in got:
            parts = c_partitions([r.coords for r in tcs.s])
            assert len(parts) == 1
            x, z, pad = parts[0]
            assert x == {r.coords for r in tcs.x_part} and z == {r.coords for r in tcs.z_part}
            assert all(tcs.pad(R(*b)).coords == a for b, a in pad.items())
            assert integer_rank([list(r.coords) for r in tcs.s]) == len(tcs.s)


def test_long_root_extension_remark():
    cd = comin("C", 3, 3)
    rs = cd.rs
    for v in enumerate_WP(cd):
        for tcs in typeC_enumerate_admissible(cd, v):
            for b in inversion_set(v):
                if b.is_long and b not in tcs.s and not any(rs.lt[rs.index(b), rs.index(a)]
                                                            for a in tcs.s):
                    typeC_is_admissible(cd, v, tcs.s | {b})


def test_non_essential_roots_are_recovered():
    cd = comin("C", 4, 4)
    w = omega_P(cd)
    for tcs in typeC_enumerate_full_admissible(cd, w):
        for b in tcs.z_part:
            rest = tcs.s - {b}
            if typeC_is_essential(cd, w, tcs, b):
                assert b not in typeC_completion(cd, w, rest).s
            else:
                assert typeC_completion(cd, w, rest).s == tcs.s


def test_essential_root_in_paper_example(cd_c5):
    w = omega_P(cd_c5)
    full = typeC_completion(cd_c5, w, [R(1, 0, 0, 0, 1), R(0, 1, 0, 1, 0), R(0, 2, 0, 0, 0)])
    assert not typeC_is_essential(cd_c5, w, full, R(2, 0, 0, 0, 0))
    assert typeC_is_essential(cd_c5, w, full, R(0, 2, 0, 0, 0))


# -- rejections -----------------------------------------------------------------------------------

def test_rejections(cd_c3):
    w = omega_P(cd_c3)
    with pytest.raises(NotAdmissible, match="clause \\(ii\\)"):
        # 2e3 meets e2+e3 but 2e3 - (e2+e3) is negative
        typeC_is_admissible(cd_c3, w, [R(2, 0, 0), R(0, 0, 2), R(0, 1, 1)])
    with pytest.raises(NotAdmissible, match="inversion set"):
        typeC_is_admissible(cd_c3, identity(cd_c3.rs), [R(2, 0, 0)])
    with pytest.raises(BorelOrbitsError):
        enumerate_admissible_pairs(cd_c3)
    with pytest.raises(BorelOrbitsError):
        typeC_enumerate_full_admissible(cd_c3, w, strategy="nope")
    cd = comin("A", 3, 2)
    w = omega_P(cd)
    assert is_admissible_pair(cd, w, [R(0, 1, -1, 0), R(1, 0, 0, -1)])
    assert not is_admissible_pair(cd, w, [R(0, 1, -1, 0), R(0, 1, 0, -1)])

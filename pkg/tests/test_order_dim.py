import json

import numpy as np
import pytest

from borel_orbits.exceptions import BorelOrbitsError, NotAdmissible, ScopeError
from borel_orbits.involution import minus_one_eigenspace_dim
from borel_orbits.orbit_params import (AdmissiblePair, TypeBParam, enumerate_admissible_pairs,
                                       enumerate_orthogonal_subsets, typeB_enumerate,
                                       typeC_enumerate_full_admissible, typeC_is_admissible)
from borel_orbits.order_dim import (TYPE_B_READING, Y_char_ne2, Y_typeC, build_poset,
                                    dim_simply_laced, dim_table, dim_typeB, dim_typeC,
                                    dim_typeC_closed_form, involution_of, m_alpha,
                                    m_alpha_fiber, pair_leq, sigma_v, transitive_reduction)
from borel_orbits.root_system import Root
from borel_orbits.weyl import (enumerate_WP, from_word, identity, inversion_set,
                               omega_P)
from conftest import comin


def R(*c):
    return Root(tuple(c))


ORDER_CASES = [("A", 3, 1), ("A", 3, 2), ("D", 4, 1)]


def _poset(t, n, p):
    cd = comin(t, n, p)
    return cd, build_poset(cd)


# -- A1 by hand ------------------------------------------------------------------------------

def test_a1_poset_by_hand():
    cd, P = _poset("A", 1, 1)
    s = from_word(cd.rs, [1])
    e = identity(cd.rs)
    alpha = cd.rs.simples[0]
    bottom, mid, top = AdmissiblePair(e, ()), AdmissiblePair(s, ()), AdmissiblePair(s, {alpha})
    assert P.params == [bottom, mid, top]
    assert P.dims == [1, 1, 2]
    assert pair_leq(cd, mid, top) and pair_leq(cd, bottom, top)
    assert not pair_leq(cd, top, mid)
    # [s sigma_empty]^P = s is not below id, so the two minima are incomparable
    assert not pair_leq(cd, bottom, mid) and not pair_leq(cd, mid, bottom)
    assert P.covers == [(0, 2), (1, 2)]
    assert m_alpha(cd, 1, bottom) == top
    assert set(m_alpha_fiber(cd, 1, top)) == {bottom, mid}


def test_minimal_elements_have_dim_psi():
    for t, n, p in ORDER_CASES:
        cd, P = _poset(t, n, p)
        n_el = len(P.params)
        mins = [j for j in range(n_el) if not any(P.leq[i, j] for i in range(n_el) if i != j)]
        assert all(P.dims[j] == len(cd.psi) for j in mins)
        assert P.params.index(AdmissiblePair(identity(cd.rs), ())) in mins


# -- order laws ---------------------------------------------------------------------------------

@pytest.mark.parametrize("t,n,p", ORDER_CASES)
def test_partial_order_and_monotone_dims(t, n, p):
    cd, P = _poset(t, n, p)
    L = P.leq
    m = L.astype(int)
    assert np.all(np.diag(L))
    assert not np.any(L & L.T & ~np.eye(len(L), dtype=bool))
    assert not np.any((m @ m > 0) & ~L)
    for i in range(len(L)):
        for j in range(len(L)):
            if i != j and L[i, j]:
                assert P.dims[i] < P.dims[j]


@pytest.mark.parametrize("t,n,p", ORDER_CASES)
def test_batched_matches_pairwise(t, n, p):
    cd, P = _poset(t, n, p)
    for i, x in enumerate(P.params):
        for j, y in enumerate(P.params):
            assert pair_leq(cd, x, y) == bool(P.leq[i, j])


@pytest.mark.parametrize("t,n,p", ORDER_CASES)
def test_action_laws(t, n, p):
    cd, P = _poset(t, n, p)
    L = P.leq
    idx = {q: i for i, q in enumerate(P.params)}
    k = len(P.params)
    for a in range(1, cd.rs.rank + 1):
        m = [idx[m_alpha(cd, a, q)] for q in P.params]
        for x in range(k):
            assert L[x, m[x]]
            assert m[m[x]] == m[x]
            assert P.dims[m[x]] - P.dims[x] in (0, 1)
            for y in range(k):
                if L[x, y]:
                    assert L[m[x], m[y]]
            if m[x] != x:
                for y in range(k):
                    rhs = L[y, x] or any(m[z] == m[y] and L[z, x] for z in range(k))
                    assert L[y, m[x]] == rhs


def test_m_alpha_fixed_when_sigma_sends_alpha_negative():
    cd = comin("A", 3, 2)
    rs = cd.rs
    for q in enumerate_admissible_pairs(cd):
        sig = sigma_v(q.v, q.s)
        for i in range(3):
            if not rs.positive[sig.perm[rs.simple_idx[i]]]:
                assert m_alpha(cd, i + 1, q) == q


def test_fibers_nonempty_when_sigma_descends():
    cd = comin("A", 3, 2)
    rs = cd.rs
    params = enumerate_admissible_pairs(cd)
    for q in params:
        sig = sigma_v(q.v, q.s)
        for i in range(1, 4):
            s = from_word(rs, [i])
            if (s * sig).length < sig.length:
                assert m_alpha_fiber(cd, i, q, params)


def test_m_alpha_rejects_non_simply_laced(cd_c2):
    with pytest.raises(ScopeError):
        m_alpha(cd_c2, 1, AdmissiblePair(identity(cd_c2.rs), ()))


def test_pair_leq_rejects_non_admissible():
    cd = comin("A", 3, 2)
    e = identity(cd.rs)
    with pytest.raises(NotAdmissible):
        pair_leq(cd, (e, {R(0, 1, -1, 0)}), (e, ()))


# -- dimensions -----------------------------------------------------------------------------

def test_dim_simply_laced_examples():
    cd = comin("A", 3, 2)
    w = omega_P(cd)
    assert dim_simply_laced(cd, (identity(cd.rs), ())) == 4
    assert dim_simply_laced(cd, (w, ())) == 4
    assert dim_simply_laced(cd, (w, {cd.theta})) == 5
    for q in enumerate_admissible_pairs(cd):
        assert 0 <= dim_simply_laced(cd, q) - q.v.length <= len(cd.psi)


@pytest.mark.parametrize("t,n,p", [("A", 3, 1), ("A", 3, 2), ("B", 3, 1), ("C", 3, 3),
                                   ("D", 4, 1)])
def test_Y_char_ne2_is_involution_length(t, n, p):
    cd = comin(t, n, p)
    for v in enumerate_WP(cd):
        for s in enumerate_orthogonal_subsets(cd, v):
            y = Y_char_ne2(cd, v, s)
            assert len(y) == involution_of(v, s).length
            assert s <= y.members <= inversion_set(v)


def test_involution_lambda_is_set_size():
    cd = comin("C", 3, 3)
    for v in enumerate_WP(cd):
        for s in enumerate_orthogonal_subsets(cd, v):
            assert minus_one_eigenspace_dim(sigma_v(v, s)) == len(s)


@pytest.mark.parametrize("n,all_v", [(2, True), (3, True), (4, False)])
def test_dim_typeC_is_psi_plus_Y(n, all_v):
    cd = comin("C", n, n)
    for v in (enumerate_WP(cd) if all_v else [omega_P(cd)]):
        for tcs in typeC_enumerate_full_admissible(cd, v):
            y = Y_typeC(cd, v, tcs)
            assert dim_typeC(cd, tcs) == len(cd.psi) + len(y)
            assert tcs.s <= y.members <= inversion_set(v)


def test_closed_form_agrees_at_omega():
    for n in (2, 3, 4):
        cd = comin("C", n, n)
        w = omega_P(cd)
        for tcs in typeC_enumerate_full_admissible(cd, w):
            assert dim_typeC_closed_form(cd, tcs) == dim_typeC(cd, tcs)


def test_closed_form_gap_smallest_case(cd_c2):
    v = from_word(cd_c2.rs, [1, 2])
    empty = typeC_is_admissible(cd_c2, v, ())
    short = typeC_is_admissible(cd_c2, v, [R(1, 1)])
    # the successor 2e1 of e1+e2 is not an inversion of v
    assert R(2, 0) not in inversion_set(v)
    assert dim_typeC_closed_form(cd_c2, short) == dim_typeC_closed_form(cd_c2, empty) == 3
    assert dim_typeC(cd_c2, short) == 4 == 3 + len(Y_typeC(cd_c2, v, short))


def test_dim_typeC_examples(cd_c2):
    w = omega_P(cd_c2)
    both = typeC_is_admissible(cd_c2, w, [R(2, 0), R(0, 2)])
    lx = involution_of(w, both.x_part).length
    assert dim_typeC(cd_c2, both) == 3 + lx
    y = Y_typeC(cd_c2, w, typeC_is_admissible(cd_c2, w, [R(1, 1), R(2, 0)]))
    assert y.members == {R(1, 1), R(2, 0)}
    assert dim_typeC(cd_c2, typeC_is_admissible(cd_c2, w, ())) == 3


def test_dim_typeC_rejects_incomplete_set(cd_c5):
    w = omega_P(cd_c5)
    s = typeC_is_admissible(cd_c5, w, [R(1, 0, 0, 0, 1), R(0, 2, 0, 0, 0)])
    with pytest.raises(NotAdmissible):
        dim_typeC(cd_c5, s)


def test_dim_typeB_examples():
    cd = comin("B", 2, 1)
    w = omega_P(cd)
    a0 = cd.short_root_in_psi
    l_refl = involution_of(w, [a0]).length
    assert dim_typeB(cd, (w, {a0})) == 3 + l_refl - 1
    assert dim_typeB(cd, (w, {a0, R(1, 1)})) == 3 + l_refl
    assert dim_typeB(cd, (w, {a0})) < dim_typeB(cd, (w, {a0, R(1, 1)}))
    assert dim_typeB(cd, (w, ())) == 3
    assert dim_typeB(cd, TypeBParam(w, frozenset({R(1, 1), R(1, -1)}))) == \
        3 + involution_of(w, [R(1, 1), R(1, -1)]).length
    with pytest.raises(NotAdmissible):
        dim_typeB(cd, (identity(cd.rs), {a0}))


def test_type_b_dims_within_range():
    cd = comin("B", 4, 1)
    for v in enumerate_WP(cd):
        for q in typeB_enumerate(cd, v):
            d = dim_typeB(cd, q)
            assert len(cd.psi) <= d <= len(cd.psi) + v.length


# -- poset and tables ------------------------------------------------------------------------

def test_poset_export_formats():
    cd, P = _poset("A", 3, 2)
    obj = json.loads(P.to_json())
    assert set(obj) >= {"params", "leq", "covers", "dims"}
    assert len(obj["params"]) == len(P.params) == 21
    dot = P.to_dot()
    assert dot.startswith("digraph") and 'label="v=[] S={}' in dot and "rank=same" in dot


def test_transitive_reduction_chain():
    leq = np.triu(np.ones((4, 4), dtype=bool))
    assert transitive_reduction(leq) == [(0, 1), (1, 2), (2, 3)]


def test_b_c_posets_need_flag():
    with pytest.raises(ScopeError):
        build_poset(comin("C", 2, 2))
    P = build_poset(comin("B", 2, 1), conjectural=True)
    assert "not a theorem" in P.metadata["order"]
    assert P.metadata["typeB_dimension_reading"] == TYPE_B_READING


def test_dim_tables_sorted_and_complete():
    cd = comin("C", 3, 3)
    rows = dim_table(cd)
    assert [d for _, d in rows] == sorted(d for _, d in rows)
    assert len(rows) == sum(len(typeC_enumerate_full_admissible(cd, v)) for v in enumerate_WP(cd))
    with pytest.raises(BorelOrbitsError):
        from borel_orbits.order_dim import typeB_dim_table
        typeB_dim_table(cd)

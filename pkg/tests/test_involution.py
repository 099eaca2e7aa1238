from itertools import combinations

import numpy as np
import pytest

from borel_orbits.exceptions import BorelOrbitsError
from borel_orbits.involution import (Involution, circ, enumerate_involutions, involution_leq,
                                     minus_one_eigenspace_dim, negated_roots, sigma_from_set)
from borel_orbits.root_system import Root, is_strongly_orthogonal_set
from borel_orbits.weyl import bruhat_leq, identity, simple_reflection
from conftest import comin, system
from oracles import matrix_group_words, matrix_key


def _lam_numeric(w) -> int:
    m = np.array(matrix_key(w), dtype=float)
    d = int(round(np.sqrt(len(m))))
    m = m.reshape(d, d)
    rank = w.rs.rank
    # on the span of the roots; type A carries one extra fixed direction
    return rank - (np.linalg.matrix_rank(m + np.eye(d)) - (d - rank))


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("C", 3)])
def test_circ_length_step_and_comparability(t, n):
    rs = system(t, n)
    for sig in enumerate_involutions(rs):
        for i in range(1, n + 1):
            tau = circ(i, sig)
            up = bruhat_leq(sig.w, tau.w)
            assert up or bruhat_leq(tau.w, sig.w)
            assert tau.length == sig.length + (1 if up else -1)
            s = simple_reflection(rs, i)
            assert up == ((s * sig.w).length > sig.w.length)


def test_circ_monotone_A3():
    rs = system("A", 3)
    invs = enumerate_involutions(rs)
    for i in (1, 2, 3):
        img = {s: circ(i, s) for s in invs}
        for a in invs:
            for b in invs:
                if a == b or not involution_leq(a, b):
                    continue
                ua, ub = involution_leq(a, img[a]), involution_leq(b, img[b])
                if ua == ub:
                    assert involution_leq(img[a], img[b]) and img[a] != img[b]
                elif ua:
                    assert involution_leq(img[a], b) and involution_leq(a, img[b])


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_lambda_matches_float_rank(t, n):
    for sig in enumerate_involutions(system(t, n)):
        assert sig.lam == _lam_numeric(sig.w)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("D", 4)])
def test_involution_counts(t, n):
    expected = 0
    for key in matrix_group_words(t, n):
        d = int(round(np.sqrt(len(key))))
        m = np.array(key).reshape(d, d)
        expected += bool(np.array_equal(m @ m, np.eye(d, dtype=int)))
    assert len(enumerate_involutions(system(t, n))) == expected


def test_sigma_from_set_lambda_and_negated_roots():
    rs = system("C", 3)
    s = [Root((2, 0, 0)), Root((0, 1, 1))]
    sig = sigma_from_set(rs, s)
    assert sig.lam == 2 == minus_one_eigenspace_dim(sig.w)
    assert set(s) <= negated_roots(sig)
    with pytest.raises(BorelOrbitsError):
        sigma_from_set(rs, [Root((2, 0, 0)), Root((1, 1, 0))])


def test_not_an_involution():
    rs = system("A", 2)
    with pytest.raises(BorelOrbitsError):
        Involution(simple_reflection(rs, 1) * simple_reflection(rs, 2))


def test_identity_length_zero():
    assert Involution(identity(system("B", 2))).length == 0


@pytest.mark.parametrize("t,n,p", [("A", 4, 2), ("B", 4, 1), ("C", 3, 3), ("D", 4, 1),
                                   ("E6", None, 1)])
def test_sigma_injective_on_strongly_orthogonal_subsets(t, n, p):
    cd = comin(t, n, p)
    seen = {}
    for k in range(len(cd.psi) + 1):
        for s in combinations(sorted(cd.psi), k):
            if k > 4:
                break
            if not is_strongly_orthogonal_set(cd.rs, s):
                continue
            key = sigma_from_set(cd.rs, s).w.key()
            assert seen.setdefault(key, frozenset(s)) == frozenset(s)

"""Weyl group elements, Bruhat order and the parabolic quotient ``W^P``."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .exceptions import BorelOrbitsError
from .root_system import CominusculeData, Root, RootSystem


class WeylElement:
    """An element of W acting on the roots of ``rs``.

    Stored as the permutation of root indices it induces (``perm[k]`` is the
    index of ``w(root_k)``); this is determined by the images of the simple
    roots and gives canonical equality and hashing.
    """

    __slots__ = ("rs", "perm", "_inv", "_length", "_hash")

    def __init__(self, rs: RootSystem, perm: Sequence[int] | np.ndarray):
        self.rs = rs
        arr = np.asarray(perm, dtype=np.int64)
        arr.setflags(write=False)
        self.perm = arr
        self._inv = None
        self._length = None
        self._hash = None

    # -- structure ----------------------------------------------------------
    @property
    def inv_perm(self) -> np.ndarray:
        if self._inv is None:
            inv = np.empty_like(self.perm)
            inv[self.perm] = np.arange(self.perm.shape[0], dtype=np.int64)
            inv.setflags(write=False)
            self._inv = inv
        return self._inv

    @property
    def images(self) -> tuple[Root, ...]:
        """Images of the simple roots, in Delta order."""
        return tuple(self.rs.roots[self.perm[s]] for s in self.rs.simple_idx)

    @property
    def length(self) -> int:
        if self._length is None:
            rs = self.rs
            self._length = int(np.count_nonzero(rs.positive & ~rs.positive[self.perm]))
        return self._length

    def act_idx(self, k: int) -> int:
        return int(self.perm[k])

    def __call__(self, root: Root) -> Root:
        return self.rs.roots[self.perm[self.rs.index(root)]]

    def __mul__(self, other: WeylElement) -> WeylElement:
        return WeylElement(self.rs, self.perm[other.perm])

    def inverse(self) -> WeylElement:
        return WeylElement(self.rs, self.inv_perm)

    def is_identity(self) -> bool:
        return bool(np.all(self.perm == np.arange(self.perm.shape[0])))

    def key(self) -> bytes:
        return self.perm.tobytes()

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeylElement) and other.rs is self.rs
                and np.array_equal(self.perm, other.perm))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.perm.tobytes())
        return self._hash

    def __repr__(self) -> str:
        word = reduced_word(self)
        return f"WeylElement({self.rs.name}, word={word})"

    # -- descents -----------------------------------------------------------
    def has_left_descent(self, i: int) -> bool:
        """``l(s_i w) < l(w)``, i.e. ``w^{-1}(alpha_i) < 0``; ``i`` is 0-based."""
        return not self.rs.positive[self.inv_perm[self.rs.simple_idx[i]]]

    def has_right_descent(self, i: int) -> bool:
        return not self.rs.positive[self.perm[self.rs.simple_idx[i]]]


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, np.arange(rs.num_roots, dtype=np.int64))


def simple_reflection(rs: RootSystem, alpha: Root | int) -> WeylElement:
    return WeylElement(rs, rs.simple_refl[rs.simple_index(alpha)])


def reflection(rs: RootSystem, beta: Root) -> WeylElement:
    """``s_beta`` for any root ``beta`` (``gamma -> gamma - <gamma, beta^vee> beta``)."""
    return WeylElement(rs, rs.refl[rs.index(beta)])


def act(w: WeylElement, root: Root) -> Root:
    return w(root)


def compose(w: WeylElement, u: WeylElement) -> WeylElement:
    """``w u`` (apply ``u`` first)."""
    return w * u


def inverse(w: WeylElement) -> WeylElement:
    return w.inverse()


def length(w: WeylElement) -> int:
    return w.length


def inversion_set(w: WeylElement) -> frozenset[Root]:
    rs = w.rs
    mask = rs.positive & ~rs.positive[w.perm]
    return frozenset(rs.roots[i] for i in np.flatnonzero(mask))


def inversion_idx(w: WeylElement) -> np.ndarray:
    rs = w.rs
    return np.flatnonzero(rs.positive & ~rs.positive[w.perm])


def left_mul_simple(w: WeylElement, i: int) -> WeylElement:
    """``s_i w`` for a 0-based simple index."""
    return WeylElement(w.rs, w.rs.simple_refl[i][w.perm])


def right_mul_simple(w: WeylElement, i: int) -> WeylElement:
    return WeylElement(w.rs, w.perm[w.rs.simple_refl[i]])


def reduced_word(w: WeylElement) -> list[int]:
    """A reduced word as 1-based simple indices (peels off right descents)."""
    word: list[int] = []
    cur = w
    r = w.rs.rank
    while cur.length:
        for i in range(r):
            if cur.has_right_descent(i):
                word.append(i + 1)
                cur = right_mul_simple(cur, i)
                break
    word.reverse()
    return word


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    """Multiply out a word of 1-based indices; reject non-reduced words."""
    word = list(word)
    w = identity(rs)
    for i in word:
        w = w * simple_reflection(rs, int(i))
    if w.length != len(word):
        raise BorelOrbitsError(f"word {word} is not reduced (length {w.length})")
    return w


# -- Bruhat order ----------------------------------------------------------------

def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat comparison by descent recursion on ``w``."""
    if u.rs is not w.rs:
        raise BorelOrbitsError("elements of different Weyl groups")
    rs = u.rs
    return _kernels.bruhat_leq(u.inv_perm, w.inv_perm, u.length, w.length,
                               rs.simple_idx, rs.simple_refl, rs.positive)


def bruhat_lt(u: WeylElement, w: WeylElement) -> bool:
    return u.length < w.length and bruhat_leq(u, w)


def bruhat_matrix(elements: Sequence[WeylElement]) -> np.ndarray:
    """``M[a, b] = elements[a] <= elements[b]`` for a batch, via the compiled kernel."""
    if not elements:
        return np.zeros((0, 0), dtype=bool)
    rs = elements[0].rs
    invs = np.ascontiguousarray(np.stack([e.inv_perm for e in elements]))
    lens = np.array([e.length for e in elements], dtype=np.int64)
    return _kernels.bruhat_matrix(invs, lens, rs.simple_idx, rs.simple_refl, rs.positive)


def subword_ideal(w: WeylElement) -> set[bytes]:
    """Keys of all products of subwords of one reduced word of ``w``."""
    rs = w.rs
    word = reduced_word(w)
    gens = [rs.simple_refl[i - 1] for i in word]
    n = rs.num_roots
    out = set()
    for choice in product((False, True), repeat=len(word)):
        perm = np.arange(n, dtype=np.int64)
        for g, take in zip(gens, choice):
            if take:
                perm = perm[g]
        out.add(perm.tobytes())
    return out


def bruhat_leq_subword(u: WeylElement, w: WeylElement) -> bool:
    """Brute-force oracle: ``u <= w`` iff ``u`` is a subword product of ``w``."""
    return u.key() in subword_ideal(w)


# -- whole group and parabolic quotient -------------------------------------------

def enumerate_W(rs: RootSystem, limit: int = 50_000) -> list[WeylElement]:
    """All of W by breadth-first search, length-sorted."""
    start = identity(rs)
    seen = {start.key()}
    level = [start]
    out = [start]
    while level:
        nxt = []
        for w in level:
            for i in range(rs.rank):
                if w.has_left_descent(i):
                    continue
                u = left_mul_simple(w, i)
                k = u.key()
                if k not in seen:
                    seen.add(k)
                    nxt.append(u)
        out.extend(nxt)
        if len(out) > limit:
            raise BorelOrbitsError(f"|W({rs.name})| exceeds enumeration limit {limit}")
        level = nxt
    return out


def _inversion_sort_key(w: WeylElement) -> tuple:
    return tuple(sorted(w.rs.roots[i].coords for i in inversion_idx(w)))


def is_in_WP(cd: CominusculeData, w: WeylElement) -> bool:
    return bool(np.all(cd.psi_mask[inversion_idx(w)]))


def enumerate_WP(cd: CominusculeData) -> list[WeylElement]:
    """Minimal coset representatives, sorted by length then by inversion set."""
    rs = cd.rs
    start = identity(rs)
    out = [start]
    level = [start]
    seen = {start.key()}
    while level:
        nxt = []
        for w in level:
            inv = w.inv_perm
            for i in range(rs.rank):
                beta = inv[rs.simple_idx[i]]
                # s_i w in W^P with l(s_i w) = l(w) + 1 iff w^{-1}(alpha_i) in Psi
                if not cd.psi_mask[beta]:
                    continue
                u = left_mul_simple(w, i)
                k = u.key()
                if k not in seen:
                    seen.add(k)
                    nxt.append(u)
        nxt.sort(key=_inversion_sort_key)
        out.extend(nxt)
        level = nxt
    return out


def coset_rep_P(cd: CominusculeData, w: WeylElement) -> WeylElement:
    """``[w]^P``: the unique element of ``W^P`` in ``w W_P``."""
    cur = w
    changed = True
    while changed:
        changed = False
        for i in cd.levi_simple_pos:
            if cur.has_right_descent(i):
                cur = right_mul_simple(cur, i)
                changed = True
    return cur


def omega_P(cd: CominusculeData) -> WeylElement:
    """The maximum of ``W^P``; its inversion set is Psi."""
    return enumerate_WP(cd)[-1]


def longest_element(rs: RootSystem) -> WeylElement:
    """``w_0`` is the element sending every positive root negative (``w_0 = -1`` composed with a diagram symmetry)."""
    cur = identity(rs)
    while True:
        for i in range(rs.rank):
            if not cur.has_left_descent(i):
                cur = left_mul_simple(cur, i)
                break
        else:
            return cur

"""Root systems of types A, B, C, D, E6, E7 in exact integer coordinates.

Realisations:

* ``A_n``: ``e_i - e_j`` in Z^(n+1), simple roots ``e_i - e_{i+1}``.
* ``B_n``: ``+-e_i +- e_j`` and ``+-e_i`` in Z^n, simple roots
  ``e_1 - e_2, ..., e_{n-1} - e_n, e_n``.
* ``C_n``: ``+-e_i +- e_j`` and ``+-2e_i`` in Z^n, simple roots
  ``e_1 - e_2, ..., e_{n-1} - e_n, 2e_n``.
* ``D_n``: ``+-e_i +- e_j`` in Z^n, simple roots
  ``e_1 - e_2, ..., e_{n-1} - e_n, e_{n-1} + e_n``.
* ``E6``/``E7``: coordinates are the coefficients in the simple roots and the
  inner product is the Cartan matrix (Bourbaki numbering: the branch node is
  ``alpha_4`` and ``alpha_2`` hangs off it).

Inner products are ``x^T G y`` with ``G`` the identity for the classical types.
Nothing here touches floating point.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exceptions import BorelOrbitsError, NotARoot, UnsupportedRootSystem

SUPPORTED_TYPES = ("A", "B", "C", "D", "E6", "E7")
SHORT, LONG = "short", "long"


@dataclass(frozen=True, order=True)
class Root:
    """A root as an integer coordinate vector.

    Ordering and hashing use ``coords`` only, so ``sorted`` gives the canonical
    lexicographic order used for every deterministic listing.
    """

    coords: tuple[int, ...]
    length_class: str = field(default=LONG, compare=False)

    def __neg__(self) -> Root:
        return Root(tuple(-c for c in self.coords), self.length_class)

    @property
    def is_long(self) -> bool:
        return self.length_class == LONG

    @property
    def is_short(self) -> bool:
        return self.length_class == SHORT

    def __repr__(self) -> str:
        return f"Root({', '.join(map(str, self.coords))})"


def _unit(n: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


def _cartan_E(rank: int) -> np.ndarray:
    edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
    if rank == 7:
        edges.append((6, 7))
    c = 2 * np.eye(rank, dtype=np.int64)
    for a, b in edges:
        c[a - 1, b - 1] = c[b - 1, a - 1] = -1
    return c


def _base(type_label: str, rank: int) -> tuple[list[list[int]], np.ndarray]:
    if type_label == "A":
        d = rank + 1
        simples = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(d)]
                   for i in range(rank)]
        return simples, np.eye(d, dtype=np.int64)
    if type_label in ("B", "C", "D"):
        n = rank
        simples = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n)]
                   for i in range(n - 1)]
        if type_label == "B":
            simples.append(_unit(n, n - 1))
        elif type_label == "C":
            simples.append(_unit(n, n - 1, 2))
        else:
            last = [0] * n
            last[n - 2] = last[n - 1] = 1
            simples.append(last)
        return simples, np.eye(n, dtype=np.int64)
    # E6, E7: simple-root coordinates, Cartan matrix as Gram matrix
    return [_unit(rank, i) for i in range(rank)], _cartan_E(rank)


def _check_type(type_label: str, rank: int | None) -> tuple[str, int]:
    label = str(type_label).upper()
    if label in ("E",) and rank in (6, 7):
        label = f"E{rank}"
    if label in ("E6", "E7"):
        fixed = int(label[1])
        if rank is not None and rank != fixed:
            raise UnsupportedRootSystem(f"{label} has rank {fixed}, got {rank}")
        return label, fixed
    if label in ("G", "G2", "F", "F4", "E8") or (label == "E" and rank == 8):
        raise UnsupportedRootSystem(
            f"type {label}{'' if rank is None else rank} has no simple root with "
            "coefficient 1 in the highest root, so no cominuscule parabolic exists")
    if label not in SUPPORTED_TYPES:
        raise UnsupportedRootSystem(f"unknown root system type {type_label!r}")
    if rank is None:
        raise UnsupportedRootSystem(f"type {label} needs a rank")
    rank = int(rank)
    minimum = {"A": 1, "B": 2, "C": 2, "D": 4}[label]
    if rank < minimum:
        raise UnsupportedRootSystem(f"type {label} needs rank >= {minimum}, got {rank}")
    return label, rank


class RootSystem:
    """An irreducible reduced root system with precomputed index tables.

    Roots are stored once, in canonical (lexicographic) order; most internal
    algorithms work with their indices. The tables are read-only numpy arrays:

    ``vectors``      (N, d) coordinates
    ``coeffs``       (N, r) coefficients in the simple roots
    ``inner``        (N, N) inner products
    ``pair``         (N, N) ``pair[b, a] = <beta_b, alpha_a^vee>``
    ``refl``         (N, N) ``refl[a, b]`` index of ``s_{alpha_a}(beta_b)``
    ``sum_idx``      (N, N) index of ``root_a + root_b`` or -1
    ``positive``     (N,)   mask of positive roots
    ``neg``          (N,)   index of the negative root
    ``simple_idx``   (r,)   simple root indices in Delta order
    ``simple_refl``  (r, N) root permutations of the simple reflections
    """

    def __init__(self, type_label: str, rank: int, simples: Sequence[Sequence[int]],
                 gram: np.ndarray):
        self.type_label = type_label
        self.rank = rank
        self.gram = np.asarray(gram, dtype=np.int64)
        self.dim = self.gram.shape[0]
        simple_vecs = [np.asarray(s, dtype=np.int64) for s in simples]

        def ip(x, y):
            return int(x @ self.gram @ y)

        # closure of Delta under simple reflections, tracking Delta-coefficients
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        queue: deque[tuple[np.ndarray, np.ndarray]] = deque()
        for i, s in enumerate(simple_vecs):
            c = np.zeros(rank, dtype=np.int64)
            c[i] = 1
            seen[tuple(s.tolist())] = tuple(c.tolist())
            queue.append((s, c))
        simple_norms = [ip(s, s) for s in simple_vecs]
        while queue:
            x, c = queue.popleft()
            for i, s in enumerate(simple_vecs):
                num = 2 * ip(x, s)
                if num % simple_norms[i]:
                    raise BorelOrbitsError("non-crystallographic pairing")  # pragma: no cover
                k = num // simple_norms[i]
                if k == 0:
                    continue
                y = x - k * s
                key = tuple(y.tolist())
                if key not in seen:
                    cy = c.copy()
                    cy[i] -= k
                    seen[key] = tuple(cy.tolist())
                    queue.append((y, cy))

        keys = sorted(seen)
        self.vectors = np.array(keys, dtype=np.int64)
        self.coeffs = np.array([seen[k] for k in keys], dtype=np.int64)
        self._index = {k: i for i, k in enumerate(keys)}
        n = len(keys)
        self.inner = self.vectors @ self.gram @ self.vectors.T
        norms = np.diag(self.inner).copy()
        self.norms = norms
        max_norm = int(norms.max())
        self.roots: tuple[Root, ...] = tuple(
            Root(k, LONG if norms[i] == max_norm else SHORT) for i, k in enumerate(keys))
        self.simply_laced = bool(np.all(norms == max_norm))

        twice = 2 * self.inner
        if np.any(twice % norms[np.newaxis, :]):
            raise BorelOrbitsError("pairing is not integral")  # pragma: no cover
        self.pair = twice // norms[np.newaxis, :]

        self.positive = np.all(self.coeffs >= 0, axis=1)
        self.neg = np.array([self._index[tuple((-self.vectors[i]).tolist())]
                             for i in range(n)], dtype=np.int64)
        self.refl = np.empty((n, n), dtype=np.int64)
        self.sum_idx = np.full((n, n), -1, dtype=np.int64)
        for a in range(n):
            va = self.vectors[a]
            for b in range(n):
                vb = self.vectors[b]
                self.refl[a, b] = self._index[tuple((vb - self.pair[b, a] * va).tolist())]
                self.sum_idx[a, b] = self._index.get(tuple((va + vb).tolist()), -1)
        self.simple_idx = np.array([self._index[tuple(s.tolist())] for s in simple_vecs],
                                   dtype=np.int64)
        self.simple_refl = np.ascontiguousarray(self.refl[self.simple_idx])
        for arr in (self.vectors, self.coeffs, self.inner, self.pair, self.positive,
                    self.neg, self.refl, self.sum_idx, self.simple_idx, self.simple_refl,
                    self.norms):
            arr.setflags(write=False)

    # -- lookup -----------------------------------------------------------
    def index(self, root: Root | Sequence[int]) -> int:
        coords = root.coords if isinstance(root, Root) else tuple(int(c) for c in root)
        try:
            return self._index[coords]
        except KeyError:
            raise NotARoot(f"{coords} is not a root of {self.name}") from None

    def root(self, coords: Root | Sequence[int]) -> Root:
        return self.roots[self.index(coords)]

    def __contains__(self, item) -> bool:
        coords = item.coords if isinstance(item, Root) else tuple(item)
        return coords in self._index

    def indices(self, roots: Iterable[Root]) -> list[int]:
        return [self.index(r) for r in roots]

    @property
    def name(self) -> str:
        return self.type_label if self.type_label.startswith("E") else \
            f"{self.type_label}{self.rank}"

    @property
    def simples(self) -> tuple[Root, ...]:
        return tuple(self.roots[i] for i in self.simple_idx)

    @cached_property
    def positives(self) -> frozenset[Root]:
        return frozenset(r for r, p in zip(self.roots, self.positive) if p)

    @cached_property
    def positive_idx(self) -> np.ndarray:
        return np.flatnonzero(self.positive)

    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @cached_property
    def leq(self) -> np.ndarray:
        """``leq[a, b]``: ``root_b - root_a`` is a nonnegative combination of Delta."""
        out = np.all(self.coeffs[np.newaxis, :, :] >= self.coeffs[:, np.newaxis, :], axis=2)
        out.setflags(write=False)
        return out

    @cached_property
    def lt(self) -> np.ndarray:
        out = self.leq & ~np.eye(self.num_roots, dtype=bool)
        out.setflags(write=False)
        return out

    @cached_property
    def highest_root(self) -> Root:
        heights = self.coeffs.sum(axis=1)
        return self.roots[int(np.argmax(heights))]

    def simple_index(self, alpha: Root | int) -> int:
        """Position (0-based) of a simple root in Delta; ints are 1-based."""
        if isinstance(alpha, (int, np.integer)):
            if not 1 <= alpha <= self.rank:
                raise BorelOrbitsError(f"simple root index {alpha} out of range 1..{self.rank}")
            return int(alpha) - 1
        idx = self.index(alpha)
        hits = np.flatnonzero(self.simple_idx == idx)
        if hits.size == 0:
            raise BorelOrbitsError(f"{alpha} is not a simple root")
        return int(hits[0])

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    label, rank = _check_type(type_label, rank)
    simples, gram = _base(label, rank)
    return RootSystem(label, rank, simples, gram)


# -- elementary root arithmetic ---------------------------------------------

def pairing(rs: RootSystem, beta: Root, alpha: Root) -> int:
    """``<beta, alpha^vee> = 2(beta, alpha)/(alpha, alpha)``."""
    return int(rs.pair[rs.index(beta), rs.index(alpha)])


def coefficient(rs: RootSystem, gamma: Root, alpha_simple: Root | int) -> int:
    """Coefficient of a simple root in ``gamma``."""
    return int(rs.coeffs[rs.index(gamma), rs.simple_index(alpha_simple)])


def inner_product(rs: RootSystem, a: Root, b: Root) -> int:
    return int(rs.inner[rs.index(a), rs.index(b)])


def root_leq(rs: RootSystem, alpha: Root, beta: Root) -> bool:
    """True iff ``beta - alpha`` is a nonnegative integer combination of Delta."""
    return bool(np.all(rs.coeffs[rs.index(beta)] >= rs.coeffs[rs.index(alpha)]))


def root_lt(rs: RootSystem, alpha: Root, beta: Root) -> bool:
    return alpha != beta and root_leq(rs, alpha, beta)


def is_orthogonal_set(rs: RootSystem, roots: Iterable[Root]) -> bool:
    idx = rs.indices(roots)
    return all(rs.inner[a, b] == 0 for a, b in combinations(idx, 2))


def is_strongly_orthogonal_set(rs: RootSystem, roots: Iterable[Root]) -> bool:
    idx = rs.indices(roots)
    for a, b in combinations(idx, 2):
        if rs.inner[a, b] != 0:
            return False
        if rs.sum_idx[a, b] >= 0 or rs.sum_idx[a, rs.neg[b]] >= 0:
            return False
    return True


# -- cominuscule data --------------------------------------------------------

def cominuscule_simple_roots(rs: RootSystem) -> list[Root]:
    theta = rs.index(rs.highest_root)
    return [rs.roots[s] for i, s in enumerate(rs.simple_idx) if rs.coeffs[theta, i] == 1]


class CominusculeData:
    """A root system together with a cominuscule simple root ``alpha_P``.

    ``psi`` is the set of positive roots with ``alpha_P``-coefficient 1 and
    ``phi_p`` the Levi roots (coefficient 0). Index arrays mirror the frozensets.
    """

    def __init__(self, rs: RootSystem, alpha_p: Root):
        self.rs = rs
        self.alpha_p = alpha_p
        self.p = rs.simple_index(alpha_p)
        col = rs.coeffs[:, self.p]
        self.theta = rs.highest_root
        self.psi_mask = rs.positive & (col == 1)
        self.phi_p_mask = col == 0
        self.psi_idx = np.flatnonzero(self.psi_mask)
        self.phi_p_idx = np.flatnonzero(self.phi_p_mask)
        self.phi_p_pos_mask = self.phi_p_mask & rs.positive
        self.psi = frozenset(rs.roots[i] for i in self.psi_idx)
        self.phi_p = frozenset(rs.roots[i] for i in self.phi_p_idx)
        self.delta_p = tuple(r for r in rs.simples if r != alpha_p)
        self.levi_simple_pos = tuple(i for i in range(rs.rank) if i != self.p)
        for arr in (self.psi_mask, self.phi_p_mask, self.psi_idx, self.phi_p_idx,
                    self.phi_p_pos_mask):
            arr.setflags(write=False)

    @property
    def type_label(self) -> str:
        return self.rs.type_label

    @property
    def alpha_p_index(self) -> int:
        """1-based position of ``alpha_P`` in Delta."""
        return self.p + 1

    def in_psi(self, idx: int) -> bool:
        return bool(self.psi_mask[idx])

    def in_phi_p_pos(self, idx: int) -> bool:
        return bool(self.phi_p_pos_mask[idx])

    @cached_property
    def short_root_in_psi(self) -> Root | None:
        """The unique short root of Psi in type B (``e_1``); None elsewhere."""
        shorts = [r for r in sorted(self.psi) if r.is_short]
        return shorts[0] if len(shorts) == 1 else None

    def __repr__(self) -> str:
        return f"CominusculeData({self.rs.name}, alpha_P=alpha_{self.alpha_p_index})"


def build_cominuscule_data(rs: RootSystem, alpha_p: Root | int) -> CominusculeData:
    if isinstance(alpha_p, (int, np.integer)):
        alpha_p = rs.simples[rs.simple_index(alpha_p)]
    else:
        alpha_p = rs.root(alpha_p)
    if alpha_p not in cominuscule_simple_roots(rs):
        raise BorelOrbitsError(
            f"{alpha_p} does not have coefficient 1 in the highest root of {rs.name}")
    return CominusculeData(rs, alpha_p)


def suc(cd: CominusculeData, alpha: Root) -> Root:
    """Type C only: ``2e_i`` for a short ``e_i + e_j`` (i < j), identity on long roots.

    Computed as the unique long root ``delta`` of Psi with ``delta - alpha`` positive.
    """
    rs = cd.rs
    if rs.type_label != "C":
        raise BorelOrbitsError("suc is defined for type C only")
    a = rs.index(alpha)
    if not cd.psi_mask[a]:
        raise BorelOrbitsError(f"{alpha} is not in Psi")
    return rs.roots[_suc_idx(cd, a)]


def _suc_idx(cd: CominusculeData, a: int) -> int:
    rs = cd.rs
    if rs.roots[a].is_long:
        return a
    hits = [d for d in cd.psi_idx
            if rs.roots[d].is_long and rs.sum_idx[d, rs.neg[a]] >= 0
            and rs.positive[rs.sum_idx[d, rs.neg[a]]]]
    if len(hits) != 1:  # pragma: no cover - structural fact of type C
        raise BorelOrbitsError(f"suc({rs.roots[a]}) is not unique: {hits}")
    return int(hits[0])

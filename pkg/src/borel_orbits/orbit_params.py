"""Orbit parameters: admissible pairs, the type B families and type C full admissible sets.

Every family is emitted in a fixed order: by ``|S|``, then lexicographically on
the sorted root coordinates. Internally sets are handled as tuples of root
indices; the public types carry :class:`Root` frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .exceptions import BorelOrbitsError, InvariantViolation, NotAdmissible
from .root_system import CominusculeData, Root, _suc_idx
from .weyl import WeylElement, enumerate_WP, inversion_idx, is_in_WP

SUBSET_FILTER_LIMIT = 20


def set_key(roots: Iterable[Root]) -> tuple:
    roots = sorted(roots)
    return (len(roots), tuple(r.coords for r in roots))


@dataclass(frozen=True)
class AdmissiblePair:
    v: WeylElement
    s: frozenset[Root]

    def __post_init__(self):
        object.__setattr__(self, "s", frozenset(self.s))


@dataclass(frozen=True)
class TypeBParam:
    v: WeylElement
    s: frozenset[Root]
    orthogonal: bool = True


@dataclass(frozen=True)
class TypeCSet:
    """An admissible set with its forced partition ``S = X ⊔ Z`` and ``pad: Z -> X``."""

    v: WeylElement
    s: frozenset[Root]
    x_part: frozenset[Root]
    z_part: frozenset[Root]
    pad_map: Mapping[Root, Root] = field(compare=False, hash=False)

    @property
    def short_part(self) -> frozenset[Root]:
        return frozenset(r for r in self.s if r.is_short)

    def pad(self, beta: Root) -> Root:
        return self.pad_map[beta]


# -- shared helpers -------------------------------------------------------------

def _require_WP(cd: CominusculeData, v: WeylElement) -> None:
    if v.rs is not cd.rs:
        raise BorelOrbitsError("element belongs to a different root system")
    if not is_in_WP(cd, v):
        raise BorelOrbitsError("v is not a minimal coset representative (not in W^P)")


def _to_idx(cd: CominusculeData, roots: Iterable[Root]) -> tuple[int, ...]:
    return tuple(sorted(set(cd.rs.indices(roots))))


def _roots(cd: CominusculeData, idx: Iterable[int]) -> frozenset[Root]:
    return frozenset(cd.rs.roots[i] for i in idx)


def _sorted_sets(sets: Iterable[frozenset[Root]]) -> list[frozenset[Root]]:
    return sorted(sets, key=set_key)


def orthogonal_subset_idx(cd: CominusculeData, pool: np.ndarray) -> list[tuple[int, ...]]:
    """All pairwise orthogonal subsets of the root indices ``pool``."""
    pool = np.asarray(pool, dtype=np.int64)
    k = len(pool)
    if k > 62:
        raise BorelOrbitsError(f"{k} roots exceed the bitmask enumeration width")
    inner = cd.rs.inner[np.ix_(pool, pool)]
    conflict = np.zeros(k, dtype=np.int64)
    for i in range(k):
        for j in range(k):
            if i != j and inner[i, j] != 0:
                conflict[i] |= np.int64(1) << j
    masks = _kernels.orthogonal_subsets(conflict)
    out = []
    for m in masks.tolist():
        out.append(tuple(int(pool[i]) for i in range(k) if (m >> i) & 1))
    return out


# -- simply laced / char != 2 -----------------------------------------------------

def enumerate_orthogonal_subsets(cd: CominusculeData, v: WeylElement) -> list[frozenset[Root]]:
    _require_WP(cd, v)
    subsets = orthogonal_subset_idx(cd, inversion_idx(v))
    return _sorted_sets(_roots(cd, s) for s in subsets)


def enumerate_admissible_pairs(cd: CominusculeData) -> list[AdmissiblePair]:
    if not cd.rs.simply_laced:
        raise BorelOrbitsError(
            f"{cd.rs.name} is not simply laced; use typeB_enumerate or "
            "typeC_enumerate_full_admissible")
    return [AdmissiblePair(v, s) for v in enumerate_WP(cd)
            for s in enumerate_orthogonal_subsets(cd, v)]


def is_admissible_pair(cd: CominusculeData, v: WeylElement, s: Iterable[Root]) -> bool:
    rs = cd.rs
    if not is_in_WP(cd, v):
        return False
    idx = rs.indices(s)
    inv = set(inversion_idx(v).tolist())
    if not all(i in inv for i in idx):
        return False
    return all(rs.inner[a, b] == 0 for a in idx for b in idx if a != b)


# -- type B ------------------------------------------------------------------------

def typeB_enumerate(cd: CominusculeData, v: WeylElement) -> list[TypeBParam]:
    """The family ``H_v``: orthogonal subsets plus the pairs ``{a0, a0 + gamma}``."""
    if cd.rs.type_label != "B":
        raise BorelOrbitsError("typeB_enumerate needs a type B root system")
    _require_WP(cd, v)
    rs = cd.rs
    inv = inversion_idx(v)
    params = [TypeBParam(v, _roots(cd, s), True) for s in orthogonal_subset_idx(cd, inv)]
    a0 = rs.index(cd.short_root_in_psi)
    inv_set = set(inv.tolist())
    if a0 in inv_set:
        for b in sorted(inv_set):
            g = rs.sum_idx[b, rs.neg[a0]]  # gamma = b - a0
            if g >= 0 and cd.phi_p_pos_mask[g]:
                params.append(TypeBParam(v, _roots(cd, (a0, b)), False))
    return sorted(params, key=lambda p: set_key(p.s))


def is_typeB_param(cd: CominusculeData, v: WeylElement, s: Iterable[Root]) -> bool:
    s = frozenset(s)
    return any(p.s == s for p in typeB_enumerate(cd, v))


# -- type C ------------------------------------------------------------------------

class _CContext:
    """Index-level view of one ``(cd, v)`` for the type C combinatorics."""

    def __init__(self, cd: CominusculeData, v: WeylElement):
        if cd.rs.type_label != "C":
            raise BorelOrbitsError("type C operations need a type C root system")
        _require_WP(cd, v)
        self.cd = cd
        self.rs = cd.rs
        self.v = v
        self.inv = inversion_idx(v)
        self.inv_set = frozenset(self.inv.tolist())
        self.long = np.array([r.is_long for r in self.rs.roots])
        self.suc = {int(a): _suc_idx(cd, int(a)) for a in cd.psi_idx}

    def gamma_is_levi_pos(self, beta: int, alpha: int) -> bool:
        g = self.rs.sum_idx[beta, self.rs.neg[alpha]]
        return g >= 0 and bool(self.cd.phi_p_pos_mask[g])

    def partition(self, s: tuple[int, ...]):
        """``(X, Z, pad)`` for an admissible set, else raise :class:`NotAdmissible`."""
        rs = self.rs
        missing = [i for i in s if i not in self.inv_set]
        if missing:
            raise NotAdmissible(f"{rs.roots[missing[0]]} is not in the inversion set of v")
        shorts = [i for i in s if not self.long[i]]
        x = shorts + [i for i in s if self.long[i]
                      and all(rs.inner[i, a] == 0 for a in shorts)]
        z = [i for i in s if i not in x]
        for a in x:
            for b in x:
                if a < b and rs.inner[a, b] != 0:
                    raise NotAdmissible(
                        f"clause (i): X(S) is not orthogonal ({rs.roots[a]}, {rs.roots[b]})")
        pad = {}
        for b in z:
            hits = [a for a in x if self.gamma_is_levi_pos(b, a)]
            if not hits:
                raise NotAdmissible(
                    f"clause (ii): {rs.roots[b]} is not alpha + gamma with alpha in X(S), "
                    "gamma a positive Levi root")
            if len(hits) > 1:
                raise InvariantViolation(f"pad({rs.roots[b]}) is not unique")
            pad[b] = hits[0]
        return tuple(sorted(x)), tuple(sorted(z)), pad

    def try_partition(self, s):
        try:
            return self.partition(s)
        except NotAdmissible:
            return None

    def completion_sets(self, s, x, z, pad):
        lt = self.rs.lt
        s_set = set(s)
        x_long = [g for g in x if self.long[g]]
        a_set, b_set = set(), set()
        for a in s:
            if self.long[a]:
                continue
            beta = self.suc[a]
            if beta in s_set or beta not in self.inv_set:
                continue
            # "alpha not greater than gamma" is "not lt[gamma, alpha]"
            if any(lt[g, beta] and not lt[g, a] for g in x_long):
                a_set.add(beta)
            if any(lt[g, beta] and not lt[pad[g], a] for g in z):
                b_set.add(beta)
        return a_set, b_set

    def is_full(self, s, x, z, pad) -> bool:
        # the two clauses of full admissibility, read directly
        lt = self.rs.lt
        z_set = set(z)
        for a in s:
            if self.long[a]:
                continue
            beta = self.suc[a]
            if beta not in self.inv_set or beta in z_set:
                continue
            for g in x:
                if self.long[g] and lt[g, beta] and not lt[g, a]:
                    return False
            for g in z:
                if lt[g, beta] and not lt[pad[g], a]:
                    return False
        return True

    def complete(self, s):
        x, z, pad = self.partition(s)
        a_set, b_set = self.completion_sets(s, x, z, pad)
        passes = 0
        cur = tuple(sorted(set(s) | a_set | b_set))
        while a_set or b_set:
            passes += 1
            nx, nz, npad = self.partition(cur)
            if nx != x:
                raise InvariantViolation("completion changed X(S)")
            a_set, b_set = self.completion_sets(cur, nx, nz, npad)
            if a_set or b_set:
                raise InvariantViolation(
                    "completion needed a second pass: "
                    f"{[str(self.rs.roots[i]) for i in sorted(a_set | b_set)]}")
            cur = tuple(sorted(set(cur) | a_set | b_set))
        return cur

    def make(self, s) -> TypeCSet:
        x, z, pad = self.partition(s)
        roots = self.rs.roots
        return TypeCSet(self.v, _roots(self.cd, s), _roots(self.cd, x), _roots(self.cd, z),
                        {roots[b]: roots[a] for b, a in pad.items()})

    def z_candidates(self, x) -> list[int]:
        x_short = [a for a in x if not self.long[a]]
        return [b for b in self.inv.tolist() if self.long[b] and b not in x
                and any(self.gamma_is_levi_pos(b, a) for a in x_short)]

    def admissible_sets(self):
        """All admissible sets: an orthogonal ``X`` plus any subset of its Z-candidates."""
        for x in orthogonal_subset_idx(self.cd, self.inv):
            cand = self.z_candidates(x)
            for m in range(1 << len(cand)):
                z = [cand[i] for i in range(len(cand)) if (m >> i) & 1]
                yield tuple(sorted(x + tuple(z)))


def typeC_is_admissible(cd: CominusculeData, v: WeylElement, s: Iterable[Root]) -> TypeCSet:
    ctx = _CContext(cd, v)
    return ctx.make(_to_idx(cd, s))


def typeC_completion(cd: CominusculeData, v: WeylElement, tcs: TypeCSet | Iterable[Root]) -> TypeCSet:
    """The full admissible completion ``S ∪ A(S) ∪ B(S)``."""
    ctx = _CContext(cd, v)
    s = _to_idx(cd, tcs.s if isinstance(tcs, TypeCSet) else tcs)
    return ctx.make(ctx.complete(s))


def typeC_completion_parts(cd: CominusculeData, v: WeylElement,
                           s: Iterable[Root]) -> tuple[frozenset[Root], frozenset[Root]]:
    """``(A(S), B(S))`` for an admissible ``S``."""
    ctx = _CContext(cd, v)
    idx = _to_idx(cd, s)
    a_set, b_set = ctx.completion_sets(idx, *ctx.partition(idx))
    return _roots(cd, a_set), _roots(cd, b_set)


def typeC_is_full_admissible(cd: CominusculeData, v: WeylElement, s: Iterable[Root]) -> bool:
    ctx = _CContext(cd, v)
    idx = _to_idx(cd, s)
    parts = ctx.try_partition(idx)
    return parts is not None and ctx.is_full(idx, *parts)


def typeC_enumerate_admissible(cd: CominusculeData, v: WeylElement) -> list[TypeCSet]:
    ctx = _CContext(cd, v)
    return sorted((ctx.make(s) for s in ctx.admissible_sets()), key=lambda t: set_key(t.s))


def typeC_enumerate_full_admissible(cd: CominusculeData, v: WeylElement,
                                    strategy: str = "auto") -> list[TypeCSet]:
    """Full admissible sets for ``v``.

    ``strategy="filter"`` tests every subset of the inversion set;
    ``"generate"`` builds admissible sets from their orthogonal part. ``"auto"``
    filters up to :data:`SUBSET_FILTER_LIMIT` roots.
    """
    ctx = _CContext(cd, v)
    if strategy == "auto":
        strategy = "filter" if len(ctx.inv) <= SUBSET_FILTER_LIMIT else "generate"
    found = []
    if strategy == "filter":
        pool = ctx.inv.tolist()
        for m in range(1 << len(pool)):
            s = tuple(pool[i] for i in range(len(pool)) if (m >> i) & 1)
            parts = ctx.try_partition(s)
            if parts is not None and ctx.is_full(s, *parts):
                found.append(s)
    elif strategy == "generate":
        for s in ctx.admissible_sets():
            parts = ctx.partition(s)
            if ctx.is_full(s, *parts):
                found.append(s)
    else:
        raise BorelOrbitsError(f"unknown strategy {strategy!r}")
    return sorted((ctx.make(s) for s in found), key=lambda t: set_key(t.s))


def typeC_is_essential(cd: CominusculeData, v: WeylElement, tcs: TypeCSet, beta: Root) -> bool:
    """``beta`` in Z(S) is essential iff completing ``S - {beta}`` does not bring it back."""
    if beta not in tcs.z_part:
        raise BorelOrbitsError(f"{beta} is not in Z(S)")
    ctx = _CContext(cd, v)
    b = cd.rs.index(beta)
    rest = tuple(i for i in _to_idx(cd, tcs.s) if i != b)
    return b not in ctx.complete(rest)


# -- dispatch --------------------------------------------------------------------------

def enumerate_params(cd: CominusculeData, v: WeylElement, mode: str = "char2") -> list:
    """Orbit parameters for one ``v``.

    ``mode="char2"`` gives the characteristic 2 family of the type (orthogonal
    subsets for ADE, ``H_v`` for B, full admissible sets for C);
    ``mode="char_ne2"`` gives orthogonal subsets for every type.
    """
    t = cd.rs.type_label
    if mode == "char_ne2" or (mode == "char2" and cd.rs.simply_laced):
        return [AdmissiblePair(v, s) for s in enumerate_orthogonal_subsets(cd, v)]
    if mode != "char2":
        raise BorelOrbitsError(f"unknown characteristic mode {mode!r}")
    if t == "B":
        return typeB_enumerate(cd, v)
    if t == "C":
        return typeC_enumerate_full_admissible(cd, v)
    raise BorelOrbitsError(f"no characteristic 2 parametrisation for {t}")  # pragma: no cover

"""Bruhat order on admissible pairs, the minimal parabolic action, dimensions and posets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .exceptions import BorelOrbitsError, InvariantViolation, NotAdmissible, ScopeError
from .involution import Involution, sigma_perm
from .orbit_params import (AdmissiblePair, TypeBParam, TypeCSet, enumerate_admissible_pairs,
                           is_admissible_pair, set_key, typeB_enumerate,
                           typeC_enumerate_full_admissible, typeC_is_full_admissible)
from .root_system import CominusculeData, Root, _suc_idx
from .serialize import param_label, param_to_json
from .weyl import (WeylElement, bruhat_leq, bruhat_matrix, coset_rep_P, enumerate_WP,
                   inversion_idx)

TYPE_B_READING = "sigma_{v(s_alpha0)} read as the reflection through v(alpha0)"


def _pair(x) -> AdmissiblePair:
    if isinstance(x, AdmissiblePair):
        return x
    v, s = x
    return AdmissiblePair(v, frozenset(s))


def sigma_v(v: WeylElement, roots: Iterable[Root]) -> WeylElement:
    """``sigma_{v(S)} = v sigma_S v^{-1}``, the product of reflections through ``v(S)``."""
    rs = v.rs
    return WeylElement(rs, sigma_perm(rs, [v.perm[rs.index(r)] for r in roots]))


def sigma_S(v: WeylElement, roots: Iterable[Root]) -> WeylElement:
    rs = v.rs
    return WeylElement(rs, sigma_perm(rs, rs.indices(roots)))


def involution_of(v: WeylElement, roots: Iterable[Root]) -> Involution:
    roots = list(roots)
    return Involution(sigma_v(v, roots), len(roots))


# -- order on V_L -----------------------------------------------------------------

def pair_leq(cd: CominusculeData, x, y) -> bool:
    """``(u,R) <= (v,S)``: ``sigma_{u(R)} <= sigma_{v(S)}`` and ``[v sigma_S]^P <= [u sigma_R]^P <= u <= v``."""
    x, y = _pair(x), _pair(y)
    (u, r), (v, s) = (x.v, x.s), (y.v, y.s)
    for w, roots in ((u, r), (v, s)):
        if not is_admissible_pair(cd, w, roots):
            raise NotAdmissible("pair_leq needs admissible pairs")
    rep_u = coset_rep_P(cd, u * sigma_S(u, r))
    if not bruhat_leq(rep_u, u):
        raise InvariantViolation("[u sigma_R]^P <= u failed")
    if not bruhat_leq(u, v):
        return False
    if not bruhat_leq(sigma_v(u, r), sigma_v(v, s)):
        return False
    rep_v = coset_rep_P(cd, v * sigma_S(v, s))
    return bruhat_leq(rep_v, rep_u)


# -- minimal parabolic action ----------------------------------------------------------

def m_alpha(cd: CominusculeData, alpha: Root | int, x) -> AdmissiblePair:
    """The open ``B``-orbit in ``P_alpha v x_S``, as an admissible pair."""
    x = _pair(x)
    v, s = x.v, x.s
    rs = cd.rs
    if not rs.simply_laced:
        raise ScopeError("m_alpha is defined here for simply laced systems")
    if not is_admissible_pair(cd, v, s):
        raise NotAdmissible("m_alpha needs an admissible pair")
    i = rs.simple_index(alpha)
    a = int(rs.simple_idx[i])
    s_idx = rs.indices(s)
    sig = sigma_v(v, s)
    if not rs.positive[sig.perm[a]]:
        return x  # case 1
    beta = int(v.inv_perm[a])
    ortho = lambda k: all(rs.inner[k, g] == 0 for g in s_idx)
    if not rs.positive[beta]:  # case 2: s_alpha v < v
        nb = int(rs.neg[beta])
        if ortho(nb):
            return AdmissiblePair(v, s | {rs.roots[nb]})
        return x
    sv = WeylElement(rs, rs.simple_refl[i][v.perm])
    if cd.psi_mask[beta]:  # case 3: v < s_alpha v in W^P
        if ortho(beta):
            return AdmissiblePair(sv, s | {rs.roots[beta]})
        return AdmissiblePair(sv, s)
    # case 4: beta in Delta_P
    if beta not in {int(rs.simple_idx[j]) for j in cd.levi_simple_pos}:
        raise InvariantViolation(f"v^-1(alpha) = {rs.roots[beta]} is not in Delta_P")
    image = frozenset(rs.roots[rs.refl[beta, g]] for g in s_idx)
    if image != s:
        return AdmissiblePair(v, image)
    nbeta = int(rs.neg[beta])
    gammas = [g for g in s_idx if rs.sum_idx[g, nbeta] >= 0]
    if not gammas:
        return x
    g = gammas[0]
    g_minus_b = int(rs.sum_idx[g, nbeta])
    deltas = [d for d in s_idx if d != g and rs.sum_idx[d, beta] >= 0]
    if not deltas:
        return AdmissiblePair(v, (s - {rs.roots[g]}) | {rs.roots[g_minus_b]})
    d = deltas[0]
    tau = int(rs.sum_idx[g_minus_b, rs.neg[d]])
    if rs.positive[tau]:
        return x
    new = (s - {rs.roots[g], rs.roots[d]}) | {rs.roots[g_minus_b],
                                               rs.roots[rs.sum_idx[d, beta]]}
    return AdmissiblePair(v, new)


def m_alpha_fiber(cd: CominusculeData, alpha: Root | int, x,
                  params: Sequence[AdmissiblePair] | None = None) -> list[AdmissiblePair]:
    """``E_alpha(v,S)``: admissible pairs other than ``x`` that ``m_alpha`` sends to ``x``."""
    x = _pair(x)
    if params is None:
        params = enumerate_admissible_pairs(cd)
    return [p for p in params if p != x and m_alpha(cd, alpha, p) == x]


# -- dimensions ---------------------------------------------------------------------------

def dim_simply_laced(cd: CominusculeData, x) -> int:
    x = _pair(x)
    return len(cd.psi) + involution_of(x.v, x.s).length


@dataclass(frozen=True)
class YSet:
    v: WeylElement
    s: frozenset[Root]
    members: frozenset[Root]

    def __len__(self) -> int:
        return len(self.members)


def Y_char_ne2(cd: CominusculeData, v: WeylElement, s: Iterable[Root]) -> YSet:
    """``{beta in Phi+(v) | beta in S or beta - alpha in Phi+ for some alpha in S}``."""
    rs = cd.rs
    s = frozenset(s)
    s_idx = rs.indices(s)
    out = set()
    for b in inversion_idx(v).tolist():
        if b in s_idx or any(_diff_positive(cd, b, a) for a in s_idx):
            out.add(rs.roots[b])
    return YSet(v, s, frozenset(out))


def _diff_positive(cd: CominusculeData, b: int, a: int) -> bool:
    rs = cd.rs
    d = rs.sum_idx[b, rs.neg[a]]
    return d >= 0 and bool(rs.positive[d])


def Y_typeC(cd: CominusculeData, v: WeylElement, tcs: TypeCSet) -> YSet:
    """``{beta in Phi+(v) | beta in S, or beta short with beta - alpha in Phi+ for some alpha in X(S)}``."""
    rs = cd.rs
    if not typeC_is_full_admissible(cd, v, tcs.s):
        raise NotAdmissible("Y_typeC needs a full admissible set")
    s_idx = set(rs.indices(tcs.s))
    x_idx = rs.indices(tcs.x_part)
    out = set()
    for b in inversion_idx(v).tolist():
        if b in s_idx or (rs.roots[b].is_short
                          and any(_diff_positive(cd, b, a) for a in x_idx)):
            out.add(rs.roots[b])
    return YSet(v, frozenset(tcs.s), frozenset(out))


def _suc_missing(cd: CominusculeData, tcs: TypeCSet) -> int:
    """Short ``alpha in S`` whose ``suc(alpha)`` is an inversion of ``v`` but not in ``S``."""
    rs = cd.rs
    inv = set(inversion_idx(tcs.v).tolist())
    s_idx = set(rs.indices(tcs.s))
    return sum(1 for a in rs.indices(tcs.short_part)
               if (b := _suc_idx(cd, a)) in inv and b not in s_idx)


def dim_typeC(cd: CominusculeData, tcs: TypeCSet) -> int:
    """``#Psi + L(sigma_{v(X(S))})`` minus the short roots of ``S`` whose successor lies in ``Phi+(v) - S``.

    Equals ``#Psi + #Y_typeC``. The published closed form (:func:`dim_typeC_closed_form`)
    subtracts ``#S_s - #Z(S)`` instead; the two differ exactly when some short root of
    ``S`` has its successor outside ``Phi+(v)``.
    """
    if not typeC_is_full_admissible(cd, tcs.v, tcs.s):
        raise NotAdmissible("dim_typeC needs a full admissible set")
    lx = involution_of(tcs.v, tcs.x_part).length
    return len(cd.psi) + lx - _suc_missing(cd, tcs)


def dim_typeC_closed_form(cd: CominusculeData, tcs: TypeCSet) -> int:
    """``#Psi + L(sigma_{v(X(S))}) - #S_s + #Z(S)``, taken literally."""
    if not typeC_is_full_admissible(cd, tcs.v, tcs.s):
        raise NotAdmissible("dim_typeC_closed_form needs a full admissible set")
    lx = involution_of(tcs.v, tcs.x_part).length
    return len(cd.psi) + lx - len(tcs.short_part) + len(tcs.z_part)


def dim_typeB(cd: CominusculeData, param: TypeBParam | tuple) -> int:
    """Dimension for a member of ``H_v`` (see :data:`TYPE_B_READING`)."""
    if isinstance(param, tuple):
        v, s = param
        s = frozenset(s)
    else:
        v, s = param.v, param.s
    if cd.rs.type_label != "B":
        raise BorelOrbitsError("dim_typeB needs a type B root system")
    if not any(p.s == s for p in typeB_enumerate(cd, v)):
        raise NotAdmissible("S is not in H_v")
    rs = cd.rs
    a0 = cd.short_root_in_psi
    a0_i = rs.index(a0)
    psi = len(cd.psi)
    orthogonal = all(rs.inner[a, b] == 0 for a in rs.indices(s) for b in rs.indices(s)
                     if a != b)
    if orthogonal and s != {a0}:
        return psi + involution_of(v, s).length
    l_refl = involution_of(v, [a0]).length
    if s == {a0}:
        above = [b for b in inversion_idx(v).tolist() if rs.lt[a0_i, b]]
        return psi + l_refl - len(above)
    (top,) = s - {a0}
    t = rs.index(top)
    between = [b for b in range(rs.num_roots) if rs.lt[a0_i, b] and rs.lt[b, t]]
    return psi + l_refl - len(between)


# -- posets ----------------------------------------------------------------------------

@dataclass
class OrbitPoset:
    params: list
    leq: np.ndarray
    covers: list[tuple[int, int]]
    dims: list[int]
    labels: list[str]
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        obj = {
            "params": [param_to_json(p) for p in self.params],
            "leq": [[bool(b) for b in row] for row in self.leq],
            "covers": [[i, j] for i, j in self.covers],
            "dims": list(self.dims),
        }
        if self.metadata:
            obj["metadata"] = self.metadata
        return json.dumps(obj, indent=1, sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph orbits {", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
        for d in sorted(set(self.dims)):
            members = " ".join(f"n{i};" for i, di in enumerate(self.dims) if di == d)
            lines.append(f"  {{ rank=same; /* dim {d} */ {members} }}")
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{lab}\\ndim={self.dims[i]}"];')
        for i, j in self.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def transitive_reduction(leq: np.ndarray) -> list[tuple[int, int]]:
    n = leq.shape[0]
    strict = (leq & ~np.eye(n, dtype=bool)).astype(np.int64)
    two_step = (strict @ strict) > 0
    cov = (strict > 0) & ~two_step
    return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]


def _order_matrix(cd: CominusculeData, cores: Sequence[tuple[WeylElement, frozenset]]) -> np.ndarray:
    """Def. of the pair order evaluated in one batch over ``(v, orthogonal core)``."""
    elems: dict[bytes, int] = {}
    pool: list[WeylElement] = []

    def slot(w: WeylElement) -> int:
        k = w.key()
        if k not in elems:
            elems[k] = len(pool)
            pool.append(w)
        return elems[k]

    sig, rep, vs = [], [], []
    for v, s in cores:
        sig.append(slot(sigma_v(v, s)))
        rep.append(slot(coset_rep_P(cd, v * sigma_S(v, s))))
        vs.append(slot(v))
    m = bruhat_matrix(pool)
    sig, rep, vs = np.array(sig), np.array(rep), np.array(vs)
    if not np.all(m[rep, vs]):
        raise InvariantViolation("[u sigma_R]^P <= u failed")
    return (m[np.ix_(sig, sig)] & m[np.ix_(rep, rep)].T & m[np.ix_(vs, vs)])


def _wp_order(cd: CominusculeData) -> dict[bytes, int]:
    return {w.key(): i for i, w in enumerate(enumerate_WP(cd))}


def build_poset(cd: CominusculeData, conjectural: bool = False) -> OrbitPoset:
    """Poset of orbit parameters with covers and dimensions.

    Simply laced: the proven order on admissible pairs. Types B and C only with
    ``conjectural=True``: the same formula applied to an orthogonal core
    (``X(S)`` in type C, ``S`` or ``{alpha0}`` in type B), labelled as such.
    """
    rs = cd.rs
    meta: dict = {}
    if rs.simply_laced:
        params = enumerate_admissible_pairs(cd)
        cores = [(p.v, p.s) for p in params]
        dims = [dim_simply_laced(cd, p) for p in params]
        meta["order"] = "theorem"
    elif not conjectural:
        raise ScopeError(
            f"no Bruhat order is proven for type {rs.type_label} in characteristic 2; "
            "use a dimension table, or request the conjectural order explicitly")
    else:
        rows = dim_table(cd)
        params = [p for p, _ in rows]
        dims = [d for _, d in rows]
        if rs.type_label == "C":
            cores = [(p.v, p.x_part) for p in params]
        else:
            a0 = cd.short_root_in_psi
            cores = [(p.v, p.s if p.orthogonal else frozenset({a0})) for p in params]
        meta["order"] = "conjectural: deford-style relation on orthogonal cores, not a theorem"
        meta["warning"] = "may violate antisymmetry and dimension monotonicity"
        if rs.type_label == "B":
            meta["typeB_dimension_reading"] = TYPE_B_READING
    leq = _order_matrix(cd, cores)
    labels = [param_label(rs, p) for p in params]
    return OrbitPoset(params, leq, transitive_reduction(leq), dims, labels, meta)


def dim_table(cd: CominusculeData) -> list[tuple[object, int]]:
    """``(param, dim)`` for every orbit, sorted by dimension then by ``W^P`` order and set."""
    t = cd.rs.type_label
    order = _wp_order(cd)
    if cd.rs.simply_laced:
        rows = [(p, dim_simply_laced(cd, p)) for p in enumerate_admissible_pairs(cd)]
    elif t == "B":
        rows = [(p, dim_typeB(cd, p)) for v in enumerate_WP(cd) for p in typeB_enumerate(cd, v)]
    else:
        rows = [(p, dim_typeC(cd, p)) for v in enumerate_WP(cd)
                for p in typeC_enumerate_full_admissible(cd, v)]
    return sorted(rows, key=lambda r: (r[1], order[r[0].v.key()], set_key(r[0].s)))


def typeB_dim_table(cd: CominusculeData) -> list[tuple[TypeBParam, int]]:
    if cd.rs.type_label != "B":
        raise BorelOrbitsError("typeB_dim_table needs type B")
    return dim_table(cd)


def typeC_dim_table(cd: CominusculeData) -> list[tuple[TypeCSet, int]]:
    if cd.rs.type_label != "C":
        raise BorelOrbitsError("typeC_dim_table needs type C")
    return dim_table(cd)

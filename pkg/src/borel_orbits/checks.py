"""Verification suites run by ``borel-orbits verify``.

Each check is exhaustive over a small family of root systems. Hard checks are
theorems (or definitional facts) and make the run fail; observations are
reported with their counts but never change the exit status.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from .intlinalg import integer_rank
from .involution import circ, enumerate_involutions, minus_one_eigenspace_dim
from .orbit_params import (enumerate_orthogonal_subsets, enumerate_params, typeC_completion,
                           typeC_enumerate_admissible, typeC_enumerate_full_admissible,
                           typeC_is_admissible, typeC_is_full_admissible)
from .order_dim import (Y_char_ne2, Y_typeC, build_poset, dim_typeC, dim_typeC_closed_form,
                        involution_of, m_alpha, sigma_S, sigma_v)
from .root_system import (CominusculeData, build_cominuscule_data, build_root_system,
                          cominuscule_simple_roots, is_orthogonal_set,
                          is_strongly_orthogonal_set)
from .weyl import (bruhat_leq, bruhat_leq_subword, coset_rep_P, enumerate_W, enumerate_WP,
                   inversion_idx, is_in_WP, omega_P, simple_reflection)


@dataclass
class CheckResult:
    suite: str
    name: str
    hard: bool
    checked: int
    failures: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        kind = "HARD" if self.hard else "OBS "
        status = "ok  " if self.passed else ("FAIL" if self.hard else "seen")
        extra = f"  {self.detail}" if self.detail else ""
        return (f"[{status}] {kind} {self.suite}/{self.name}: "
                f"{self.checked} checked, {self.failures} failing{extra}")


def _classical(max_rank: int, families: str = "ABCD") -> list[tuple[str, int]]:
    out = []
    for t in families:
        lo = {"A": 1, "B": 2, "C": 2, "D": 4}[t]
        hi = max(max_rank, 4) if t == "D" else max_rank
        out += [(t, r) for r in range(lo, hi + 1)]
    return out


def _cominuscule(max_rank: int, families: str = "ABCD") -> list[CominusculeData]:
    out = []
    for t, r in _classical(max_rank, families):
        rs = build_root_system(t, r)
        for a in cominuscule_simple_roots(rs):
            out.append(build_cominuscule_data(rs, a))
    return out


class _Tally:
    def __init__(self, suite: str):
        self.suite = suite
        self.results: list[CheckResult] = []

    def add(self, name: str, cases: Iterable[bool], hard: bool = True, detail: str = ""):
        n = bad = 0
        for ok in cases:
            n += 1
            bad += not ok
        self.results.append(CheckResult(self.suite, name, hard, n, bad, detail))


# -- suites -------------------------------------------------------------------------------

def suite_roots(max_rank: int) -> list[CheckResult]:
    t = _Tally("roots")
    systems = [build_root_system(a, r) for a, r in _classical(max_rank)]
    t.add("negation and sign", (bool(rs.positive[k]) != bool(rs.positive[rs.neg[k]])
                                and rs.neg[rs.neg[k]] == k
                                for rs in systems for k in range(rs.num_roots)))
    t.add("root order is a partial order", (_is_partial_order(rs.leq[np.ix_(rs.positive_idx, rs.positive_idx)])
                                            for rs in systems))
    cds = _cominuscule(max_rank)
    t.add("psi: sums are not roots, differences are Levi roots",
          (_psi_pair_ok(cd, a, b) for cd in cds for a in cd.psi_idx for b in cd.psi_idx))
    t.add("orthogonal pairs in psi are strongly orthogonal",
          (not is_orthogonal_set(cd.rs, [a, b]) or is_strongly_orthogonal_set(cd.rs, [a, b])
           for cd in cds for a, b in combinations(cd.psi, 2)))
    bs = [cd for cd in cds if cd.rs.type_label == "B"]
    t.add("type B: roots of psi are pairwise comparable",
          (bool(cd.rs.leq[a, b] or cd.rs.leq[b, a])
           for cd in bs for a, b in combinations(cd.psi_idx.tolist(), 2)))
    t.add("type B: orthogonal pairs in psi straddle the short root",
          (ok for cd in bs for ok in _straddle(cd)))
    return t.results


def _straddle(cd: CominusculeData) -> Iterable[bool]:
    rs = cd.rs
    a0 = rs.index(cd.short_root_in_psi)
    for a, b in combinations(cd.psi_idx.tolist(), 2):
        if rs.inner[a, b] == 0:
            lo, hi = (a, b) if rs.lt[a, b] else (b, a)
            yield bool(rs.lt[lo, a0] and rs.lt[a0, hi])


def _psi_pair_ok(cd: CominusculeData, a: int, b: int) -> bool:
    rs = cd.rs
    if rs.sum_idx[a, b] >= 0:
        return False
    d = rs.sum_idx[a, rs.neg[b]]
    return d < 0 or bool(cd.phi_p_mask[d])


def _is_partial_order(leq: np.ndarray) -> bool:
    n = leq.shape[0]
    m = leq.astype(np.int64)
    refl = bool(np.all(np.diag(leq)))
    anti = not np.any(leq & leq.T & ~np.eye(n, dtype=bool))
    trans = not np.any(((m @ m) > 0) & ~leq)
    return refl and anti and trans


def suite_bruhat(max_rank: int) -> list[CheckResult]:
    t = _Tally("bruhat")
    r = min(max_rank, 3)
    for typ in "AB":
        rs = build_root_system(typ, max(r, 2) if typ == "B" else r)
        ws = enumerate_W(rs)
        t.add(f"oracle agreement {rs.name}",
              (bruhat_leq(u, w) == bruhat_leq_subword(u, w) for u in ws for w in ws),
              detail=f"({len(ws)}^2 = {len(ws) ** 2} pairs)")
        t.add(f"lifting lemma triples {rs.name}", _propord(rs, ws))
    groups = [(rs, enumerate_W(rs)) for rs in (build_root_system(a, k) for a, k in _classical(max_rank))
              if rs.rank <= 4]
    t.add("length = #inversions", (w.length == len(inversion_idx(w)) for _, ws in groups for w in ws))
    cds = _cominuscule(max_rank)
    t.add("W^P closed under [.]^P", (is_in_WP(cd, coset_rep_P(cd, w))
                                     for cd in cds if cd.rs.rank <= 4
                                     for w in enumerate_W(cd.rs)))
    t.add("omega^P is the maximum of W^P", (bruhat_leq(v, omega_P(cd))
                                            for cd in cds for v in enumerate_WP(cd)))
    t.add("descents of v in W^P are maximal inversions", (ok for cd in cds for ok in _descent_max(cd)))
    return t.results


def _propord(rs, ws) -> Iterable[bool]:
    for i in range(1, rs.rank + 1):
        s = simple_reflection(rs, i)
        for u in ws:
            su = s * u
            for v in ws:
                if u == v or not bruhat_leq(u, v):
                    continue
                sv = s * v
                up_u, up_v = su.length > u.length, sv.length > v.length
                if up_u == up_v:
                    yield bruhat_leq(su, sv) and su != sv
                elif up_u:
                    yield bruhat_leq(u, sv) and bruhat_leq(su, v)


def _descent_max(cd: CominusculeData) -> Iterable[bool]:
    rs = cd.rs
    simple = set(rs.simple_idx.tolist())
    for v in enumerate_WP(cd):
        inv = inversion_idx(v).tolist()
        maximal = {b for b in inv if not any(rs.lt[b, c] for c in inv)}
        for i, a in enumerate(rs.simple_idx.tolist()):
            if not rs.positive[v.inv_perm[a]]:
                yield int(rs.neg[v.inv_perm[a]]) in maximal
        for b in maximal:
            yield int(rs.neg[v.perm[b]]) in simple


def suite_involution(max_rank: int) -> list[CheckResult]:
    t = _Tally("involution")
    r = min(max_rank, 3)
    systems = [build_root_system(a, max(r, 2) if a != "A" else r) for a in "ABC"]
    length_ok, comp_ok = [], []
    for rs in systems:
        invs = enumerate_involutions(rs)
        for sig in invs:
            for i in range(1, rs.rank + 1):
                tau = circ(i, sig)
                up = bruhat_leq(sig.w, tau.w)
                length_ok.append(tau.length == sig.length + (1 if up else -1))
                s = simple_reflection(rs, i)
                comparable = up or bruhat_leq(tau.w, sig.w)
                comp_ok.append(comparable and up == ((s * sig.w).length > sig.w.length))
    t.add("L changes by one under the circle action", length_ok)
    t.add("circle action comparable, direction of s*sigma", comp_ok)
    rs = build_root_system("A", r)
    invs = enumerate_involutions(rs)
    t.add(f"circle action monotone on {rs.name}", _bruhat_circ(rs, invs))
    cds = _cominuscule(max_rank)
    t.add("lambda of sigma_S equals #S", (involution_of(v, s).lam == _lam_direct(v, s)
                                         for cd in cds if cd.rs.simply_laced or cd.rs.rank <= 3
                                         for v in enumerate_WP(cd)
                                         for s in enumerate_orthogonal_subsets(cd, v)))
    t.add("sigma_S injective on strongly orthogonal subsets of psi",
          (ok for cd in cds for ok in _sigma_injective(cd)))
    return t.results


def _lam_direct(v, s) -> int:
    return minus_one_eigenspace_dim(sigma_v(v, s))


def _sigma_injective(cd: CominusculeData) -> Iterable[bool]:
    seen: dict[bytes, frozenset] = {}
    for k in range(len(cd.psi) + 1):
        for s in combinations(cd.psi, k):
            if not is_strongly_orthogonal_set(cd.rs, s):
                continue
            key = sigma_S(omega_P(cd), s).key()
            yield seen.setdefault(key, frozenset(s)) == frozenset(s)


def _bruhat_circ(rs, invs) -> Iterable[bool]:
    for i in range(1, rs.rank + 1):
        img = {sig: circ(i, sig) for sig in invs}
        for sig in invs:
            for tau in invs:
                if sig == tau or not bruhat_leq(sig.w, tau.w):
                    continue
                cs, ct = img[sig], img[tau]
                up_s = bruhat_leq(sig.w, cs.w)
                up_t = bruhat_leq(tau.w, ct.w)
                if up_s == up_t:
                    yield bruhat_leq(cs.w, ct.w) and cs != ct
                elif up_s:
                    yield bruhat_leq(cs.w, tau.w) and bruhat_leq(sig.w, ct.w)


def suite_params(max_rank: int) -> list[CheckResult]:
    t = _Tally("params")
    cs = _cominuscule(max(max_rank, 2), "C")
    indep, part, pad_ok, remark = [], [], [], []
    for cd in cs:
        rs = cd.rs
        for v in enumerate_WP(cd):
            for tcs in typeC_enumerate_admissible(cd, v):
                indep.append(integer_rank([list(r.coords) for r in tcs.s]) == len(tcs.s))
                shorts = tcs.short_part
                x = shorts | {b for b in tcs.s if b.is_long and is_orthogonal_set(rs, list(shorts) + [b])}
                part.append(x == tcs.x_part and tcs.s - x == tcs.z_part)
                for b in tcs.z_part:
                    pads = [a for a in tcs.x_part if _is_pad(cd, b, a)]
                    pad_ok.append(pads == [tcs.pad(b)])
                if rs.rank == 3:
                    for b in (rs.roots[k] for k in inversion_idx(v).tolist()):
                        if b.is_long and b not in tcs.s and not any(rs.lt[rs.index(b), rs.index(a)]
                                                                    for a in tcs.s):
                            remark.append(_admissible(cd, v, tcs.s | {b}))
    t.add("admissible sets are linearly independent", indep)
    t.add("X/Z partition matches its closed form", part)
    t.add("pad is unique", pad_ok)
    t.add("adding a long root below nothing keeps admissibility (C3)", remark)
    counts = []
    for cd in cs:
        w = omega_P(cd)
        full = len(typeC_enumerate_full_admissible(cd, w))
        orth = len(enumerate_orthogonal_subsets(cd, w))
        counts.append(f"C{cd.rs.rank}: {full} vs {orth}")
    t.add("char 2 has more orbits than orthogonal subsets at omega^P",
          (len(typeC_enumerate_full_admissible(cd, omega_P(cd)))
           > len(enumerate_orthogonal_subsets(cd, omega_P(cd))) for cd in cs),
          detail="; ".join(counts))
    sl = [cd for cd in _cominuscule(max_rank, "AD")]
    t.add("simply laced: char 2 and char != 2 families agree",
          (enumerate_params(cd, v, "char2") == enumerate_params(cd, v, "char_ne2")
           for cd in sl for v in enumerate_WP(cd)))
    return t.results


def _is_pad(cd: CominusculeData, beta, alpha) -> bool:
    rs = cd.rs
    g = rs.sum_idx[rs.index(beta), rs.neg[rs.index(alpha)]]
    return g >= 0 and bool(cd.phi_p_pos_mask[g])


def _admissible(cd, v, s) -> bool:
    try:
        typeC_is_admissible(cd, v, s)
    except ValueError:
        return False
    return True


def suite_completion(max_rank: int) -> list[CheckResult]:
    t = _Tally("completion")
    cs = _cominuscule(max(max_rank, 2), "C")
    sub, adm, idem, fix = [], [], [], []
    total = 0
    for cd in cs:
        for v in enumerate_WP(cd):
            for tcs in typeC_enumerate_admissible(cd, v):
                total += 1
                c = typeC_completion(cd, v, tcs)
                sub.append(tcs.s <= c.s)
                adm.append(_admissible(cd, v, c.s))
                idem.append(typeC_completion(cd, v, c).s == c.s)
                fix.append(typeC_is_full_admissible(cd, v, tcs.s) == (c.s == tcs.s))
    t.add("S is contained in its completion", sub)
    t.add("completion is admissible", adm)
    t.add("completion is idempotent", idem, detail=f"({total} admissible sets)")
    t.add("full admissible iff fixed by completion", fix)
    return t.results


def suite_order(max_rank: int) -> list[CheckResult]:
    t = _Tally("order")
    cds = [cd for cd in _cominuscule(max_rank, "AD") if cd.rs.rank <= 4]
    po, mono, up, act, onestep, restr, offset, idem, cover = ([] for _ in range(9))
    for cd in cds:
        P = build_poset(cd)
        L = P.leq
        n = len(P.params)
        index = {p: i for i, p in enumerate(P.params)}
        po.append(_is_partial_order(L))
        mono.extend(P.dims[i] < P.dims[j] for i in range(n) for j in range(n) if i != j and L[i, j])
        sig = [sigma_v(p.v, p.s) for p in P.params]
        restr.extend(bruhat_leq(sig[i], sig[j]) for i in range(n) for j in range(n) if L[i, j])
        offset.extend(0 <= d - p.v.length <= len(cd.psi) for p, d in zip(P.params, P.dims))
        cover.extend(P.dims[j] == P.dims[i] + 1 for i, j in P.covers)
        for a in range(1, cd.rs.rank + 1):
            m = np.array([index[m_alpha(cd, a, p)] for p in P.params])
            up.extend(bool(L[x, m[x]]) for x in range(n))
            act.extend(bool(L[m[x], m[y]]) for x in range(n) for y in range(n) if L[x, y])
            idem.extend(m[m] == m)
            onestep.extend(_one_step(L, m))
    names = ", ".join(f"{cd.rs.name}/a{cd.p}" for cd in cds)
    t.add("pair order is a partial order", po, detail=f"({names})")
    t.add("strict dimension monotonicity", mono)
    t.add("x <= m_alpha(x)", up)
    t.add("m_alpha is monotone", act)
    t.add("one-step property", onestep)
    t.add("order restricts to involution order", restr)
    t.add("0 <= dim - l(v) <= #psi", offset)
    t.add("m_alpha idempotent", idem, hard=False)
    t.add("covers raise dimension by one", cover, hard=False)
    return t.results


def _one_step(L: np.ndarray, m: np.ndarray) -> Iterable[bool]:
    n = L.shape[0]
    # below_x[y]: some z with m(z) = m(y) lies below x
    for x in range(n):
        if m[x] == x:
            continue
        hit = np.zeros(n, dtype=bool)
        for z in np.nonzero(L[:, x])[0]:
            hit[m[z]] = True
        for y in range(n):
            yield bool(L[y, m[x]]) == bool(L[y, x] or hit[m[y]])


def suite_dims(max_rank: int) -> list[CheckResult]:
    t = _Tally("dims")
    cds = _cominuscule(max(max_rank, 3), "ABCD")
    cds = [cd for cd in cds if cd.rs.rank <= max(max_rank, 4)]
    t.add("#Y (char != 2) = L(sigma_v(S))",
          (len(Y_char_ne2(cd, v, s)) == involution_of(v, s).length
           for cd in cds for v in enumerate_WP(cd) for s in enumerate_orthogonal_subsets(cd, v)))
    cs = [cd for cd in _cominuscule(max(max_rank, 2), "C")]
    pairs = [(cd, tcs) for cd in cs for v in enumerate_WP(cd)
             for tcs in typeC_enumerate_full_admissible(cd, v)]
    t.add("type C: dim = #psi + #Y", (dim_typeC(cd, x) == len(cd.psi) + len(Y_typeC(cd, x.v, x))
                                      for cd, x in pairs))
    t.add("type C: published closed form = #psi + #Y",
          (dim_typeC_closed_form(cd, x) == dim_typeC(cd, x) for cd, x in pairs), hard=False,
          detail="(differs when a short root of S has its successor outside Phi+(v))")
    return t.results


SUITES: dict[str, Callable[[int], list[CheckResult]]] = {
    "roots": suite_roots,
    "bruhat": suite_bruhat,
    "involution": suite_involution,
    "params": suite_params,
    "completion": suite_completion,
    "order": suite_order,
    "dims": suite_dims,
}


def run_suites(names: Iterable[str], max_rank: int) -> list[CheckResult]:
    out: list[CheckResult] = []
    for name in names:
        out.extend(SUITES[name](max_rank))
    return out

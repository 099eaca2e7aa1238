"""Involutions of W: ``sigma_S``, the circle action and involution length."""

from __future__ import annotations

from functools import reduce
from typing import Iterable

import numpy as np

from .exceptions import BorelOrbitsError
from .intlinalg import integer_rank
from .root_system import Root, RootSystem, is_orthogonal_set
from .weyl import (WeylElement, bruhat_leq, enumerate_W, identity, reflection,
                   simple_reflection)


def minus_one_eigenspace_dim(w: WeylElement) -> int:
    """``lambda(w)``: dimension of the (-1)-eigenspace on the span of the roots.

    Works with the matrix of ``w`` in the basis Delta, so the answer is
    ``rank - rank(M + I)`` computed exactly.
    """
    rs = w.rs
    r = rs.rank
    cols = rs.coeffs[w.perm[rs.simple_idx]]  # row i = coefficients of w(alpha_i)
    m = cols.T + np.eye(r, dtype=np.int64)
    return r - integer_rank(m.tolist())


class Involution:
    """A Weyl group element ``w`` with ``w^2 = 1`` and its invariant ``lambda``."""

    __slots__ = ("w", "lam")

    def __init__(self, w: WeylElement, lam: int | None = None):
        if not (w * w).is_identity():
            raise BorelOrbitsError("element is not an involution")
        self.w = w
        self.lam = minus_one_eigenspace_dim(w) if lam is None else lam

    @property
    def length(self) -> int:
        """``L = (l + lambda) / 2``."""
        total = self.w.length + self.lam
        if total % 2:
            raise BorelOrbitsError("l + lambda is odd")  # pragma: no cover
        return total // 2

    def __eq__(self, other) -> bool:
        return isinstance(other, Involution) and self.w == other.w

    def __hash__(self) -> int:
        return hash(self.w)

    def __repr__(self) -> str:
        return f"Involution({self.w!r}, lambda={self.lam})"


def sigma_from_set(rs: RootSystem, roots: Iterable[Root]) -> Involution:
    """``sigma_S``, the product of the reflections in a pairwise orthogonal set."""
    roots = list(roots)
    if not is_orthogonal_set(rs, roots):
        raise BorelOrbitsError(f"{sorted(roots)} is not an orthogonal set")
    w = reduce(lambda acc, b: acc * reflection(rs, b), roots, identity(rs))
    # orthogonal roots are linearly independent and span the (-1)-eigenspace
    return Involution(w, len(roots))


def sigma_perm(rs: RootSystem, idx: Iterable[int]) -> np.ndarray:
    """Root permutation of ``prod s_gamma`` over root indices (no orthogonality check)."""
    perm = np.arange(rs.num_roots, dtype=np.int64)
    for k in idx:
        perm = rs.refl[k][perm]
    return perm


def circ(alpha: Root | int, sigma: Involution) -> Involution:
    """``s_alpha o sigma``: ``s sigma`` if they commute, else ``s sigma s``."""
    rs = sigma.w.rs
    s = simple_reflection(rs, alpha)
    left = s * sigma.w
    right = sigma.w * s
    if left == right:
        return Involution(left)
    return Involution(left * s)


def inv_length(sigma: Involution) -> int:
    return sigma.length


def enumerate_involutions(rs: RootSystem) -> list[Involution]:
    return [Involution(w) for w in enumerate_W(rs) if (w * w).is_identity()]


def involution_leq(a: Involution, b: Involution) -> bool:
    """Bruhat order on involutions, inherited from W."""
    return bruhat_leq(a.w, b.w)


def negated_roots(sigma: Involution) -> frozenset[Root]:
    """Positive roots ``gamma`` with ``sigma(gamma) = -gamma``."""
    rs = sigma.w.rs
    idx = rs.positive_idx
    hit = sigma.w.perm[idx] == rs.neg[idx]
    return frozenset(rs.roots[i] for i in idx[hit])

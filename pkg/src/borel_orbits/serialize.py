"""Text and JSON forms of roots, Weyl elements and orbit parameters.

Root text syntax (classical types): ``"i+j"`` is ``e_i + e_j`` (``"i+i"`` is
``2e_i`` in type C), ``"i"`` is ``e_i`` (type B), ``"i-j"`` is ``e_i - e_j``. A
leading ``-`` negates. In JSON a root is its integer coordinate array.
"""

from __future__ import annotations

import re
from typing import Any, Iterable

from .exceptions import BorelOrbitsError, NotARoot
from .orbit_params import (AdmissiblePair, TypeBParam, TypeCSet, set_key,
                           typeC_is_admissible)
from .root_system import CominusculeData, Root, RootSystem
from .weyl import WeylElement, from_word, reduced_word

_ROOT_RE = re.compile(r"^\s*(-)?\s*(\d+)\s*(?:([+-])\s*(\d+))?\s*$")


def parse_root(rs: RootSystem, text: str) -> Root:
    if rs.type_label.startswith("E"):
        raise BorelOrbitsError("text root syntax is for classical types; use coordinates")
    m = _ROOT_RE.match(text)
    if not m:
        raise BorelOrbitsError(f"cannot parse root {text!r}")
    neg, i, sign, j = m.groups()
    i = int(i)
    coords = [0] * rs.dim
    if not 1 <= i <= rs.dim:
        raise BorelOrbitsError(f"index {i} out of range in {text!r}")
    coords[i - 1] += 1
    if j is not None:
        j = int(j)
        if not 1 <= j <= rs.dim:
            raise BorelOrbitsError(f"index {j} out of range in {text!r}")
        coords[j - 1] += 1 if sign == "+" else -1
    if neg:
        coords = [-c for c in coords]
    try:
        return rs.root(coords)
    except NotARoot:
        raise BorelOrbitsError(f"{text!r} is not a root of {rs.name}") from None


def parse_roots(rs: RootSystem, text: str) -> list[Root]:
    text = text.strip().strip("{}")
    if not text:
        return []
    return [parse_root(rs, part) for part in re.split(r"[,;\s]+", text) if part]


def format_root(rs: RootSystem, root: Root) -> str:
    c = root.coords
    if rs.type_label.startswith("E"):
        return "(" + ",".join(map(str, c)) + ")"
    nz = [(k + 1, x) for k, x in enumerate(c) if x]
    if len(nz) == 1:
        k, x = nz[0]
        return {1: f"{k}", 2: f"{k}+{k}", -1: f"-{k}", -2: f"-{k}+{k}"}[x]
    (i, a), (j, b) = nz
    if a > 0:
        return f"{i}+{j}" if b > 0 else f"{i}-{j}"
    return f"{j}-{i}" if b > 0 else f"-{i}+{j}"


def format_roots(rs: RootSystem, roots: Iterable[Root]) -> str:
    return "{" + ", ".join(format_root(rs, r) for r in sorted(roots)) + "}"


# -- Weyl elements ---------------------------------------------------------------

def word_to_json(w: WeylElement) -> list[int]:
    return reduced_word(w)


def word_from_json(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    return from_word(rs, word)


def parse_word(rs: RootSystem, text: str) -> WeylElement:
    text = text.strip().strip("[]")
    if not text:
        return from_word(rs, [])
    return from_word(rs, [int(t) for t in re.split(r"[,\s.]+", text) if t])


def format_word(w: WeylElement) -> str:
    return "[" + ",".join(map(str, reduced_word(w))) + "]"


# -- parameters --------------------------------------------------------------------

def _coords(roots: Iterable[Root]) -> list[list[int]]:
    return [list(r.coords) for r in sorted(roots)]


def param_to_json(param) -> dict[str, Any]:
    out: dict[str, Any] = {"v": word_to_json(param.v), "S": _coords(param.s)}
    if isinstance(param, TypeCSet):
        x = sorted(param.x_part)
        z = sorted(param.z_part)
        out["X"] = _coords(x)
        out["Z"] = _coords(z)
        out["pad"] = {str(z.index(b)): x.index(a) for b, a in sorted(param.pad_map.items())}
    elif isinstance(param, TypeBParam):
        out["orthogonal"] = param.orthogonal
    return out


def param_from_json(cd: CominusculeData, obj: dict[str, Any]):
    rs = cd.rs
    v = word_from_json(rs, obj["v"])
    s = frozenset(rs.root(c) for c in obj["S"])
    if "X" in obj:
        tcs = typeC_is_admissible(cd, v, s)
        if _coords(tcs.x_part) != obj["X"] or _coords(tcs.z_part) != obj["Z"]:
            raise BorelOrbitsError("stored X/Z partition disagrees with the recomputed one")
        return tcs
    if "orthogonal" in obj:
        return TypeBParam(v, s, bool(obj["orthogonal"]))
    return AdmissiblePair(v, s)


def param_label(rs: RootSystem, param) -> str:
    return f"v={format_word(param.v)} S={format_roots(rs, param.s)}"


def param_sort_key(param, wp_order: dict) -> tuple:
    return (wp_order[param.v.key()], set_key(param.s))

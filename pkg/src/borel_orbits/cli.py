"""Command line front end.

Exit status: 0 success, 1 a hard invariant failed, 2 usage or input error,
3 the request is outside the library's scope.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from . import _kernels
from .checks import SUITES, run_suites
from .exceptions import (BorelOrbitsError, InvariantViolation, NotAdmissible, ScopeError,
                         UnsupportedRootSystem)
from .order_dim import (TYPE_B_READING, build_poset, dim_simply_laced, dim_table)
from .orbit_params import TypeCSet, enumerate_params, typeC_completion, typeC_is_admissible
from .root_system import CominusculeData, build_cominuscule_data, build_root_system
from .serialize import (format_root, format_roots, format_word, param_label, param_to_json,
                        parse_roots, parse_word)
from .weyl import enumerate_WP, inversion_idx, omega_P

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_SCOPE = 0, 1, 2, 3

RANK_CAPS = {"A": 9, "B": 8, "C": 8, "D": 8, "E6": 6, "E7": 7}
CAPS_ENV = "BOREL_ORBITS_RANK_CAPS"


def rank_caps() -> dict[str, int]:
    """Defaults, overridden by e.g. ``BOREL_ORBITS_RANK_CAPS="A=11,C=9"``."""
    caps = dict(RANK_CAPS)
    raw = os.environ.get(CAPS_ENV, "")
    for item in filter(None, (p.strip() for p in raw.split(","))):
        key, _, val = item.partition("=")
        try:
            caps[key.strip().upper()] = int(val)
        except ValueError:
            raise BorelOrbitsError(f"bad {CAPS_ENV} entry {item!r}") from None
    return caps


@dataclass
class RunConfig:
    type_label: str
    rank: int | None
    alpha_p_index: int | None
    characteristic_mode: str = "char2"
    v_selector: str = "all"
    output_format: str = "text"
    max_rank_verify: int = 3

    def cominuscule(self) -> CominusculeData:
        rs = build_root_system(self.type_label, self.rank)
        cap = rank_caps().get(rs.type_label if rs.type_label[0] != "E" else rs.name)
        if cap is not None and rs.rank > cap:
            raise ScopeError(f"{rs.name} is above the rank cap {cap} (set {CAPS_ENV} to raise it)")
        a = self.alpha_p_index
        if a is None:
            if rs.type_label == "B":
                a = 1
            elif rs.type_label == "C":
                a = rs.rank
            elif rs.name == "E7":
                a = 7
            else:
                raise BorelOrbitsError(f"--alpha-p is required for type {rs.name}")
        if not 1 <= a <= rs.rank:
            raise BorelOrbitsError(f"--alpha-p must be between 1 and {rs.rank}")
        return build_cominuscule_data(rs, a)


def _config(args) -> RunConfig:
    return RunConfig(args.type, args.rank, args.alpha_p, getattr(args, "char", "char2"),
                     getattr(args, "v", "all"), getattr(args, "format", "text"))


def _selected_v(cd: CominusculeData, selector: str):
    if selector == "all":
        return enumerate_WP(cd)
    if selector == "omega":
        return [omega_P(cd)]
    v = parse_word(cd.rs, selector)
    if v not in set(enumerate_WP(cd)):
        raise BorelOrbitsError(f"{format_word(v)} is not a minimal coset representative")
    return [v]


def _header(cd: CominusculeData) -> dict:
    return {"system": cd.rs.name, "alpha_p": cd.alpha_p_index}


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


# -- commands ------------------------------------------------------------------------------

def cmd_info(cfg: RunConfig) -> str:
    cd = cfg.cominuscule()
    rs = cd.rs
    wp = enumerate_WP(cd)
    info = {
        **_header(cd),
        "positive_roots": len(rs.positive_idx),
        "psi_size": len(cd.psi),
        "WP_size": len(wp),
        "theta": list(cd.theta.coords),
        "psi": [list(r.coords) for r in sorted(cd.psi)],
        "backend": _kernels.backend(),
    }
    if cfg.output_format == "json":
        return _dump(info)
    fmt = (lambda r: format_root(rs, r))
    return "".join([
        f"system      {rs.name}\n",
        f"alpha_P     alpha_{cd.alpha_p_index} = {fmt(cd.alpha_p)}\n",
        f"|Phi+|      {info['positive_roots']}\n",
        f"|Psi|       {info['psi_size']}\n",
        f"|W^P|       {info['WP_size']}\n",
        f"theta       {fmt(cd.theta)}\n",
        f"Psi         {format_roots(rs, cd.psi)}\n",
    ])


def _text_param(cd: CominusculeData, p) -> str:
    line = param_label(cd.rs, p)
    if isinstance(p, TypeCSet):
        line += f" X={format_roots(cd.rs, p.x_part)} Z={format_roots(cd.rs, p.z_part)}"
    return line


def cmd_enumerate(cfg: RunConfig) -> str:
    cd = cfg.cominuscule()
    if cfg.characteristic_mode == "compare":
        return cmd_compare_char(cfg)
    params = [p for v in _selected_v(cd, cfg.v_selector)
              for p in enumerate_params(cd, v, cfg.characteristic_mode)]
    if cfg.output_format == "json":
        return _dump({**_header(cd), "mode": cfg.characteristic_mode,
                      "params": [param_to_json(p) for p in params]})
    lines = [_text_param(cd, p) for p in params]
    lines.append(f"total {len(params)}")
    return "\n".join(lines) + "\n"


def cmd_poset(cfg: RunConfig, conjectural: bool) -> str:
    cd = cfg.cominuscule()
    poset = build_poset(cd, conjectural=conjectural)
    if cfg.output_format == "dot":
        return poset.to_dot()
    if cfg.output_format == "json":
        return poset.to_json() + "\n"
    lines = [f"{i}: {lab}  dim={d}" for i, (lab, d) in enumerate(zip(poset.labels, poset.dims))]
    lines += [f"{i} < {j}" for i, j in poset.covers]
    lines += [f"# {k}: {v}" for k, v in sorted(poset.metadata.items())]
    return "\n".join(lines) + "\n"


def cmd_dims(cfg: RunConfig) -> str:
    cd = cfg.cominuscule()
    if cfg.characteristic_mode == "char_ne2":
        rows = [(p, dim_simply_laced(cd, p)) for v in enumerate_WP(cd)
                for p in enumerate_params(cd, v, "char_ne2")]
        rows.sort(key=lambda r: (r[1],))
    else:
        rows = dim_table(cd)
    wanted = None if cfg.v_selector == "all" else set(_selected_v(cd, cfg.v_selector))
    rows = [r for r in rows if wanted is None or r[0].v in wanted]
    meta = {}
    if cd.rs.type_label == "B" and cfg.characteristic_mode != "char_ne2":
        meta["typeB_dimension_reading"] = TYPE_B_READING
    if cfg.output_format == "json":
        return _dump({**_header(cd), "mode": cfg.characteristic_mode, "metadata": meta,
                      "rows": [{**param_to_json(p), "dim": d} for p, d in rows]})
    out = [f"{d:4d}  {_text_param(cd, p)}" for p, d in rows]
    out += [f"# {k}: {v}" for k, v in sorted(meta.items())]
    return "\n".join(out) + "\n"


def cmd_compare_char(cfg: RunConfig) -> str:
    cd = cfg.cominuscule()
    rows = []
    for v in _selected_v(cd, cfg.v_selector):
        rows.append((format_word(v), len(enumerate_params(cd, v, "char2")),
                     len(enumerate_params(cd, v, "char_ne2"))))
    t2 = sum(r[1] for r in rows)
    tn = sum(r[2] for r in rows)
    if cfg.output_format == "json":
        return _dump({**_header(cd), "rows": [{"v": v, "char2": a, "char_ne2": b}
                                              for v, a, b in rows],
                      "total": {"char2": t2, "char_ne2": tn}})
    width = max(len(r[0]) for r in rows + [("v", 0, 0)])
    out = [f"{'v':<{width}}  char2  char!=2"]
    out += [f"{v:<{width}}  {a:5d}  {b:7d}" for v, a, b in rows]
    out.append(f"{'total':<{width}}  {t2:5d}  {tn:7d}")
    out.append(f"char2: {t2}, char!=2: {tn}")
    return "\n".join(out) + "\n"


def render_diagram(cd: CominusculeData, tcs: TypeCSet, shade: bool = False,
                   unicode: bool = False) -> str:
    """Upper-left triangle of the symmetric matrix: row i holds columns n..i, box (i,j) = e_i+e_j."""
    rs = cd.rs
    n = rs.rank
    inv = {rs.roots[k] for k in inversion_idx(tcs.v).tolist()}
    empty, outside = ("·", "∘") if unicode else (".", "o")

    def mark(i: int, j: int) -> str:
        coords = [0] * n
        coords[i - 1] += 1
        coords[j - 1] += 1
        r = rs.root(coords)
        if r in tcs.x_part:
            return "X"
        if r in tcs.z_part:
            return "Z"
        if shade and r not in inv:
            return outside
        return empty

    rows = [[mark(i, j) for j in range(n, i - 1, -1)] for i in range(1, n + 1)]
    cols = " ".join(str(j) for j in range(n, 0, -1))
    if not unicode:
        out = [f"    {cols}"]
        out += [f"{i:>2} | " + " ".join(row) for i, row in enumerate(rows, 1)]
        return "\n".join(out) + "\n"
    out = ["      " + "   ".join(str(j) for j in range(n, 0, -1))]
    for i, row in enumerate(rows, 1):
        cells = "┼".join(["───"] * len(row))
        out.append("    " + ("┌" + cells.replace("┼", "┬") + "┐" if i == 1
                             else "├" + cells + "┼───┘"))
        out.append(f"{i:>2}  │" + "│".join(f" {c} " for c in row) + "│")
    out.append("    └───┘")
    return "\n".join(out) + "\n"


def cmd_diagram(cfg: RunConfig, set_expr: str, complete: bool, shade: bool, unicode: bool) -> str:
    cd = cfg.cominuscule()
    if cd.rs.type_label != "C":
        raise BorelOrbitsError("diagrams are drawn for type C only")
    v = _selected_v(cd, cfg.v_selector)[0] if cfg.v_selector != "all" else omega_P(cd)
    roots = parse_roots(cd.rs, set_expr)
    for r in roots:
        if r not in cd.psi:
            raise BorelOrbitsError(f"{format_root(cd.rs, r)} is not in Psi")
    tcs = typeC_is_admissible(cd, v, roots)
    if complete:
        tcs = typeC_completion(cd, v, tcs)
    if cfg.output_format == "json":
        return _dump({**_header(cd), **param_to_json(tcs)})
    return render_diagram(cd, tcs, shade, unicode)


def cmd_verify(suites: Sequence[str], max_rank: int) -> tuple[str, int]:
    caps = rank_caps()
    if max_rank > min(caps["A"], caps["B"], caps["C"], caps["D"]):
        raise ScopeError(f"--max-rank {max_rank} is above the rank caps")
    results = run_suites(suites, max_rank)
    lines = [r.line() for r in results]
    hard = [r for r in results if r.hard]
    failed = [r for r in hard if not r.passed]
    seen = [r for r in results if not r.hard and not r.passed]
    lines.append(f"hard invariants: {len(hard) - len(failed)}/{len(hard)} passed; "
                 f"observations with counterexamples: {len(seen)}")
    return "\n".join(lines) + "\n", (EXIT_INVARIANT if failed else EXIT_OK)


# -- argument parsing ------------------------------------------------------------------------

def _add_system(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, help="A, B, C, D, E6 or E7")
    p.add_argument("--rank", type=int, help="rank (implied for E6/E7)")
    p.add_argument("--alpha-p", type=int, dest="alpha_p",
                   help="1-based index of the cominuscule simple root (default: 1 for B, n for C)")


def _add_v(p: argparse.ArgumentParser, default: str = "all") -> None:
    p.add_argument("--v", default=default,
                   help="'all', 'omega', or a reduced word such as '3,2,3'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borel-orbits",
        description="Borel orbits on Hermitian symmetric varieties, combinatorially.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="root data, Psi and |W^P|")
    _add_system(p)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("enumerate", help="list orbit parameters")
    _add_system(p)
    _add_v(p)
    p.add_argument("--char", choices=["char2", "char_ne2", "compare"], default="char2")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("poset", help="Bruhat order on orbit parameters")
    _add_system(p)
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--conjectural-order", action="store_true",
                   help="types B/C: compute an unproven relation for exploration")

    p = sub.add_parser("dims", help="orbit dimensions")
    _add_system(p)
    _add_v(p)
    p.add_argument("--char", choices=["char2", "char_ne2"], default="char2")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("compare-char", help="orbit counts in characteristic 2 and otherwise")
    _add_system(p)
    _add_v(p, default="omega")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("diagram", help="draw a type C set as a triangle")
    _add_system(p)
    _add_v(p, default="omega")
    p.add_argument("--set", required=True, dest="set_expr",
                   help="roots such as '1+5,2+4,2+2' (i+i is 2e_i)")
    p.add_argument("--complete", action="store_true", help="draw the full admissible completion")
    p.add_argument("--shade", action="store_true", help="mark boxes outside Phi+(v)")
    p.add_argument("--unicode", action="store_true", help="box drawing characters")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="repeatable; default runs every suite")
    p.add_argument("--max-rank", type=int, default=3, dest="max_rank")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[str, int]:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        suites = args.suite or list(SUITES)
        return cmd_verify(suites, args.max_rank)
    cfg = _config(args)
    if args.command == "info":
        return cmd_info(cfg), EXIT_OK
    if args.command == "enumerate":
        return cmd_enumerate(cfg), EXIT_OK
    if args.command == "poset":
        return cmd_poset(cfg, args.conjectural_order), EXIT_OK
    if args.command == "dims":
        return cmd_dims(cfg), EXIT_OK
    if args.command == "compare-char":
        return cmd_compare_char(cfg), EXIT_OK
    return cmd_diagram(cfg, args.set_expr, args.complete, args.shade, args.unicode), EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        text, code = run(argv)
    except (ScopeError, UnsupportedRootSystem) as exc:
        print(f"error: out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (NotAdmissible, BorelOrbitsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

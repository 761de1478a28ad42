"""``loopflag`` command line: thin adapters from argv to library calls.

Every subcommand returns a :class:`CommandResult`; ``--json`` prints it as one
JSON document, otherwise it is rendered as aligned ``key  value`` lines.
Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import affine, autgrp, degcalc, laurent, monad, rootsys, sheafseq, weyl
from .affine import Crossing
from .errors import LoopflagError
from .exact import fmt

DEFAULT_MAX_LENGTH = 10
DEFAULT_MAX_RANK = 8
HARD_MAX_LENGTH = weyl.MAX_LENGTH
HARD_MAX_RANK = 16


@dataclass
class CommandResult:
    command: str
    inputs: dict
    payload: dict = field(default_factory=dict)
    status: str = "ok"
    message: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CommandResult":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        if self.status != "ok":
            return f"error: {self.message}"
        lines = []
        width = max((len(k) for k in self.payload), default=0)
        for key, value in self.payload.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                lines.append(f"{key}:")
                lines.extend("  " + row for row in _table(value))
            else:
                lines.append(f"{key:<{width}}  {_scalar_text(value)}")
        return "\n".join(lines)


def _scalar_text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar_text(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_scalar_text(v)}" for k, v in value.items()) + "}"
    return str(value)


def _table(rows: list) -> list:
    cols = list(rows[0])
    cells = [[_scalar_text(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    out += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return out


def _jsonable(x):
    """Exact numbers become ints or ``p/q`` strings; containers recurse."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else fmt(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    return str(x)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def _int_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _root_system(args) -> rootsys.RootSystem:
    if not 1 <= args.max_rank <= HARD_MAX_RANK:
        raise LoopflagError(f"--max-rank must lie in 1..{HARD_MAX_RANK}; got {args.max_rank}")
    if args.rank > args.max_rank:
        raise LoopflagError(f"rank {args.rank} exceeds --max-rank {args.max_rank}")
    return rootsys.build_root_system(args.family, args.rank)


def _length_cap(args) -> int:
    if not 0 <= args.max_length <= HARD_MAX_LENGTH:
        raise LoopflagError(f"--max-length must lie in 0..{HARD_MAX_LENGTH}; got {args.max_length}")
    return args.max_length


def _crossing(rs, args) -> Crossing:
    return Crossing.from_crossed(rs.rank, args.cross)


def _vec(v) -> str:
    return "(" + ",".join(fmt(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_roots(args) -> dict:
    rs = _root_system(args)
    return {
        "system": rs.label,
        "simple_roots": [_vec(a) for a in rs.simple_roots],
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "positive_roots": [rs.name(a) for a in rs.positive_roots],
        "highest_root": rs.name(rs.theta),
        "rho": _vec(rs.rho),
        "comarks": list(rs.comarks),
        "dual_coxeter": rs.h_vee,
    }


def cmd_strange(args) -> dict:
    rs = _root_system(args)
    return {"system": rs.label, "value": fmt(rootsys.strange_identity(rs))}


def cmd_classify(args) -> dict:
    rs = _root_system(args)
    c = _crossing(rs, args)
    p = affine.classify_parabolic(c, rs)
    return {
        "system": rs.label,
        "crossing": str(c),
        "klass": p.klass,
        "chi_delta": affine.chi_delta(c, rs),
        "levi_nodes": list(p.delta_chi),
        "q_chi": sorted(rs.name(a) for a in p.q_chi_roots),
    }


def cmd_autos(args) -> dict:
    rs = _root_system(args)
    group = autgrp.automorphism_group(rs)
    return {
        "system": rs.label,
        "order": len(group),
        "exceptional": autgrp.is_exceptional(rs),
        "automorphisms": [str(s) for s in group],
    }


def cmd_standardize(args) -> dict:
    rs = _root_system(args)
    c = _crossing(rs, args)
    sigma = autgrp.standardizable(rs, c)
    out = {"system": rs.label, "crossing": str(c), "standardizable": sigma is not None}
    if sigma is not None:
        out["automorphism"] = str(sigma)
        out["image"] = str(autgrp.act_on_crossing(sigma, c))
    return out


def cmd_weyl_count(args) -> dict:
    rs = _root_system(args)
    levels = weyl.enumerate_by_length(rs, _length_cap(args))
    return {"system": rs.label, "max_length": args.max_length, "counts": [len(levels[k]) for k in sorted(levels)]}


def cmd_hasse(args) -> dict:
    rs = _root_system(args)
    c = _crossing(rs, args)
    cap = _length_cap(args)
    words = weyl.reduced_words(rs, cap)
    rows = []
    for w in weyl.hasse_elements(rs, c, cap):
        data = weyl.stratum_data(w)
        rows.append({
            "word": " ".join(f"s{i}" for i in words[w]) or "e",
            "length": weyl.length(w),
            "translation": _vec(weyl.translation_part(w)),
            "codimension": data["codimension"],
        })
    counts = [sum(1 for r in rows if r["length"] == k) for k in range(cap + 1)]
    return {"system": rs.label, "crossing": str(c), "counts": counts, "elements": rows}


def cmd_degree(args) -> dict:
    rs = _root_system(args)
    c = _crossing(rs, args)
    consts = degcalc.affine_levi_constants(rs, c)
    return {
        "system": rs.label,
        "crossing": str(c),
        "k": list(args.k),
        "N": {str(j): fmt(v) for j, v in consts.N.items()},
        "degree": degcalc.formal_degree(rs, c, args.k),
    }


def cmd_instanton_dim(args) -> dict:
    rs = _root_system(args)
    return {"system": rs.label, "k": args.k, "dimension": degcalc.instanton_dimension(rs, args.k)}


def cmd_charges(args) -> dict:
    return {"value": ",".join(map(str, degcalc.charges(args.k, args.j)))}


def cmd_hecke_degrees(args) -> dict:
    return {"value": ",".join(map(str, degcalc.hecke_degree_action(args.n, args.k)))}


def cmd_sheafseq(args) -> dict:
    fam = sheafseq.normalize_family(args.family)
    r = sheafseq.root_rank(fam, args.n)
    spec = sheafseq.sequence_spec(fam, args.n, Crossing.from_crossed(r, args.cross))
    survivors = [sheafseq.SheafIndex(args.i, j, s) for j, s in spec.surviving_labels]
    out = {
        "family": fam,
        "n": args.n,
        "crossing": str(spec.source_crossing),
        "sheaves": [str(x) for x in survivors],
        "degrees": [sheafseq.sheaf_degree(fam, args.n, x) for x in survivors],
    }
    if fam == "gl":
        out["quotient_sizes"] = list(sheafseq.quotient_sizes(spec))
    return out


def cmd_hecke_shift(args) -> dict:
    fam = sheafseq.normalize_family(args.family)
    sign = {None: None, "+": 1, "-": -1}[args.sign]
    idx = sheafseq.SheafIndex(args.i, args.j, sign)
    op = {
        "shift": lambda: sheafseq.hecke_index_shift(fam, args.n, idx),
        "swap-middle": lambda: sheafseq.swap_middle(args.n, idx),
        "swap-top": lambda: sheafseq.swap_top(args.n, idx),
    }[args.op]
    if args.op != "shift" and fam != "so_even":
        raise LoopflagError(f"{args.op} exists only for so_even")
    img = op()
    return {"family": fam, "n": args.n, "source": str(idx), "image": str(img), "i": img.i, "j": img.j}


def _laurent_rows(g: laurent.LaurentMatrix) -> list:
    return [
        {"power": k, "coefficient": [[str(x) for x in row] for row in c.tolist()]}
        for k, c in sorted(g.to_z().coeffs.items())
    ]


def cmd_flip_demo(args) -> dict:
    demo = laurent.flip_demo(args.levels)
    return {
        "levels": demo["levels"],
        "borel_fixed": demo["flip_borel_in_borel"],
        "p1_maps_into_p2": demo["flip_p1_in_p2"],
        "p1_not_preserved": not demo["flip_p1_in_p1"],
        "flipped_borel": _laurent_rows(demo["flipped_borel"]),
        "flipped_p1": _laurent_rows(demo["flipped_p1"]),
    }


def _parse_coeff(text: str):
    try:
        power, body = text.split(":", 1)
        rows = [[Fraction(x) for x in r.split(",")] for r in body.split(";")]
        return int(power), rows
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected POWER:a,b;c,d, got {text!r}") from None


def cmd_window(args) -> dict:
    g = laurent.LaurentMatrix.from_z(dict(args.coeff))
    if args.conjugate:
        g = laurent.conjugate_outer(g, args.conjugate)
    win = laurent.window(g, args.lo, args.hi)
    idx = list(win.scalar_range())
    return {
        "block_size": win.block_size,
        "range": [args.lo, args.hi],
        "periodic": win.is_periodic(),
        "matrix": [" ".join(fmt(win.scalar_entry(a, b)) for b in idx) for a in idx],
    }


def cmd_monad(args) -> dict:
    m = monad.random_monad(args.k, args.n, args.seed)
    h = monad.hecke_monad(m)
    out = {
        "k": args.k,
        "n": args.n,
        "seed": args.seed,
        "valid": monad.validate(m),
        "transform_valid": monad.validate(h),
        "data": m.to_dict(),
        "transform": h.to_dict(),
    }
    if args.check_order:
        out["order_check"] = monad.hecke_order_check(m)
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")

    system = argparse.ArgumentParser(add_help=False)
    system.add_argument("--family", required=True, type=str.upper, choices=rootsys.FAMILIES)
    system.add_argument("--rank", required=True, type=int)
    system.add_argument("--max-rank", type=int, default=DEFAULT_MAX_RANK)

    cross = argparse.ArgumentParser(add_help=False)
    cross.add_argument("--cross", required=True, type=_int_list, help="crossed nodes, e.g. 0,2")

    length = argparse.ArgumentParser(add_help=False)
    length.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)

    parser = _Parser(prog="loopflag", description="Parabolics, Weyl strata and Hecke transforms of loop groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, parents, help_text):
        p = sub.add_parser(name, parents=[common] + parents, help=help_text)
        p.set_defaults(func=func)
        return p

    add("roots", cmd_roots, [system], "root data of a classical system")
    add("strange", cmd_strange, [system], "2<rho,theta> + <theta,theta> in the Killing form")
    add("classify", cmd_classify, [system, cross], "standard / exotic / improper parabolic")
    add("autos", cmd_autos, [system], "extended-diagram automorphism group")
    add("standardize", cmd_standardize, [system, cross], "move a crossing through node 0")
    add("weyl-count", cmd_weyl_count, [system, length], "affine Weyl elements per length")
    add("hasse", cmd_hasse, [system, cross, length], "minimal coset representatives")
    p = add("degree", cmd_degree, [system, cross], "formal degree 4 sum (1+N_j) k_j")
    p.add_argument("--k", required=True, type=_int_list, help="degrees on the crossed nodes")
    p = add("instanton-dim", cmd_instanton_dim, [system], "framed instanton dimension")
    p.add_argument("--k", required=True, type=int)
    p = add("charges", cmd_charges, [], "charges k_i = k + j_1 + ... + j_i")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--j", required=True, type=_int_list)
    p = add("hecke-degrees", cmd_hecke_degrees, [], "cyclic action on multi-degrees")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--k", required=True, type=_int_list)
    p = add("sheafseq", cmd_sheafseq, [cross], "surviving sheaves of a crossing")
    p.add_argument("--family", required=True, choices=["gl", "sl", "so_even", "so_odd", "sp"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--i", type=int, default=0)
    p = add("hecke-shift", cmd_hecke_shift, [], "Hecke relabelling of a sheaf index")
    p.add_argument("--family", required=True, choices=["gl", "sl", "so_even", "so_odd", "sp"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--i", required=True, type=int)
    p.add_argument("--j", required=True, type=int)
    p.add_argument("--sign", choices=["+", "-"])
    p.add_argument("--op", choices=["shift", "swap-middle", "swap-top"], default="shift")
    p = add("flip-demo", cmd_flip_demo, [], "the sl(2) flip on generic Borel and parabolic loops")
    p.add_argument("--levels", type=int, default=3)
    p = add("window", cmd_window, [], "periodic infinite-matrix window of a Laurent matrix")
    p.add_argument("--coeff", required=True, action="append", type=_parse_coeff, help="POWER:a,b;c,d (repeatable)")
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--hi", type=int, default=1)
    p.add_argument("--conjugate", choices=laurent.KINDS)
    p = add("monad", cmd_monad, [], "random ADHM data and its Hecke transform")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check-order", action="store_true")
    return parser


def run(argv) -> tuple:
    """Parse and execute; returns ``(CommandResult, exit code)``. Usage errors raise SystemExit(2)."""
    args = build_parser().parse_args(argv)
    inputs = {k: _jsonable(v) for k, v in vars(args).items() if k not in ("func", "command", "json")}
    try:
        payload = _jsonable(args.func(args))
        return CommandResult(args.command, inputs, payload), 0
    except LoopflagError as exc:
        return CommandResult(args.command, inputs, {}, "error", str(exc)), 1


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    result, code = run(argv)
    as_json = "--json" in argv
    if as_json:
        print(result.to_json())
    elif code == 0:
        print(result.to_text())
    else:
        print(result.to_text(), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

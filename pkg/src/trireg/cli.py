"""``trireg`` command line: check, count, verify, render and resolve triangular regions.

Exit codes: 0 pass, 1 a verified property failed, 2 bad input, 3 a size cap was hit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
from pathlib import Path

from trireg import render
from trireg.core import (
    ParseError,
    Puncture,
    TriangularRegion,
    build_region,
    covering_puncture,
    overlap_components,
    parse_monomial,
    rotate,
)
from trireg.cycles import (
    difference_cycles,
    e_count,
    floating_punctures,
    same_sign_guarantee,
    twist,
)
from trireg.matching import (
    NotTileableError,
    OversizeError,
    biadjacency,
    count_tilings,
    determinant,
    enumerate_tilings,
    msgn,
    permanent,
)
from trireg.paths import lattice_points, lpsgn, path_matrix, signed_family_count
from trireg.resolution import ResolutionError, resolve
from trireg.tileability import canonical_tiling, heavy_subregion, is_tileable

SCHEMA_VERSION = 1

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

DEFAULT_ENUM_CAP = 20000
DEFAULT_LGV_CAP = 6

PROPERTIES = ("detzn", "signed-enum", "persign", "rotation", "lgv", "twist")


class InputError(ValueError):
    pass


class CapError(RuntimeError):
    pass


def enum_cap() -> int:
    return int(os.environ.get("TRIREG_ENUM_CAP", DEFAULT_ENUM_CAP))


# ---------------------------------------------------------------- spec input

_COMPACT = re.compile(r"^\s*(?:T_?)?(\d+)\s*(?::|\()(.*?)\)?\s*$", re.S)


def _gens_from_text(body: str, line: int, column: int) -> list:
    gens = []
    pos = 0
    for piece in body.split(","):
        stripped = piece.strip()
        if stripped:
            offset = len(piece) - len(piece.lstrip())
            gens.append(parse_monomial(stripped, line, column + pos + offset))
        pos += len(piece) + 1
    return gens


def _locate(text: str, needle: str) -> tuple[int, int]:
    idx = text.find(needle)
    if idx < 0:
        return 1, 1
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def parse_spec(text: str) -> TriangularRegion:
    """A region from JSON ``{"d": 6, "gens": ["x^3", ...]}`` or compact ``6: x^3, y^4, z^5``.

    ``T_6(x^3, y^4, z^5)`` is accepted as well.
    """
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        d = doc.get("d")
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            line, col = _locate(text, '"d"')
            raise ParseError("field d must be a positive integer", line, col)
        raw = doc.get("gens", [])
        if not isinstance(raw, list) or not all(isinstance(g, str) for g in raw):
            line, col = _locate(text, '"gens"')
            raise ParseError("field gens must be a list of strings", line, col)
        gens = []
        for g in raw:
            line, col = _locate(text, json.dumps(g))
            gens.append(parse_monomial(g, line, col + 1))
        return build_region(d, gens)
    match = _COMPACT.match(text)
    if match is None:
        raise ParseError("expected a JSON object or 'd: gen, gen, ...'", 1, 1)
    d = int(match.group(1))
    if d < 1:
        raise ParseError("d must be a positive integer", 1, match.start(1) + 1)
    body_start = match.start(2)
    line = text.count("\n", 0, body_start) + 1
    column = body_start - (text.rfind("\n", 0, body_start) + 1) + 1
    return build_region(d, _gens_from_text(match.group(2), line, column))


def load_spec(arg: str) -> TriangularRegion:
    path = Path(arg)
    if len(arg) < 4096 and path.is_file():
        return parse_spec(path.read_text())
    return parse_spec(arg)


# ---------------------------------------------------------------- helpers


def _tilings(region: TriangularRegion) -> list:
    n = count_tilings(region)
    if n > enum_cap():
        raise CapError(f"{n} tilings exceed the enumeration cap {enum_cap()}")
    return list(enumerate_tilings(region))


def _tiling_at(region: TriangularRegion, index: int):
    if index < 0:
        raise InputError("tiling index must be non-negative")
    for i, t in enumerate(enumerate_tilings(region)):
        if i == index:
            return t
    raise InputError(f"tiling index {index} out of range for {region}")


def _det_pair(region: TriangularRegion) -> tuple[int, int]:
    return determinant(biadjacency(region)), determinant(path_matrix(region))


def _need_balanced(region: TriangularRegion) -> None:
    if not region.is_balanced:
        up, down = region.balance()
        raise InputError(f"{region} is not balanced ({up} up, {down} down)")


def _find_puncture(region: TriangularRegion, text: str, covering: bool) -> Puncture:
    g = parse_monomial(text)
    for group in overlap_components(region):
        member = next((p for p in group if p.generator == g), None)
        if member is None:
            continue
        if member.is_corner:
            raise InputError(f"{member} is a corner puncture; corner punctures are not resolved")
        if len(group) > 1:
            if not covering:
                raise InputError(f"{member} overlaps other punctures; pass --covering to resolve their covering region")
            return covering_puncture(group, region.d)
        return member
    raise InputError(f"{g} is not a puncture of {region}")


# ---------------------------------------------------------------- commands


def cmd_check(region: TriangularRegion, args) -> tuple[dict, int]:
    up, down = region.balance()
    floating, _ = floating_punctures(region)
    witness = heavy_subregion(region)
    report = {
        "region": str(region),
        "balanced": region.is_balanced,
        "up": up,
        "down": down,
        "tileable": region.is_balanced and witness is None,
        "heavy_witness": None if witness is None else str(witness),
        "punctures": [
            {"gen": str(p.generator), "side": p.side, "floating": p in floating} for p in region.punctures
        ],
        "same_sign_guarantee": same_sign_guarantee(region),
    }
    return report, EXIT_PASS


def cmd_count(region: TriangularRegion, args) -> tuple[dict, int]:
    _need_balanced(region)
    if args.method == "permanent":
        count = permanent(biadjacency(region))
    else:
        count = count_tilings(region)
    return {"region": str(region), "method": args.method, "count": count}, EXIT_PASS


def _verify_detzn(region):
    det_z, det_n = _det_pair(region)
    products = sorted({msgn(region, t) * lpsgn(region, t) for t in _tilings(region)})
    ok = abs(det_z) == abs(det_n) and len(products) <= 1
    return ok, {"det_z": det_z, "det_n": det_n, "sign_products": products}


def _verify_signed_enum(region):
    det_z, det_n = _det_pair(region)
    tilings = _tilings(region)
    sum_m = sum(msgn(region, t) for t in tilings)
    sum_l = sum(lpsgn(region, t) for t in tilings)
    ok = sum_m == det_z and sum_l in (det_n, -det_n)
    return ok, {"det_z": det_z, "det_n": det_n, "sum_msgn": sum_m, "sum_lpsgn": sum_l, "tilings": len(tilings)}


def _verify_persign(region):
    z = biadjacency(region)
    per, det_z = permanent(z), determinant(z)
    table = [
        {"index": i, "msgn": msgn(region, t), "lpsgn": lpsgn(region, t)} for i, t in enumerate(_tilings(region))
    ]
    ok = per == abs(det_z) and len({row["msgn"] for row in table}) <= 1 and len({row["lpsgn"] for row in table}) <= 1
    return ok, {"per_z": per, "det_z": det_z, "guarantee": same_sign_guarantee(region), "signs": table}


def _verify_rotation(region):
    rows = []
    for k in range(3):
        r = rotate(region, k)
        det_z, det_n = _det_pair(r)
        rows.append({"k": k, "region": str(r), "count": count_tilings(r), "abs_det_z": abs(det_z), "abs_det_n": abs(det_n)})
    ok = all(
        (row["count"], row["abs_det_z"], row["abs_det_n"]) == (rows[0]["count"], rows[0]["abs_det_z"], rows[0]["abs_det_n"])
        for row in rows
    )
    return ok, {"rotations": rows}


def _verify_lgv(region):
    starts, _ = lattice_points(region)
    if len(starts) > DEFAULT_LGV_CAP:
        raise CapError(f"{len(starts)} start points exceed the path-family cap {DEFAULT_LGV_CAP}")
    det_n = determinant(path_matrix(region))
    signed, unsigned = signed_family_count(region)
    return signed == det_n, {"det_n": det_n, "signed_families": signed, "families": unsigned, "starts": len(starts)}


def _verify_twist(region):
    tilings = _tilings(region)
    cycles = []
    ok = True
    for first, second in itertools.combinations(tilings, 2):
        for cycle in difference_cycles(region, first, second):
            n = len(cycle)
            after = twist(region, first, cycle)
            m_ratio = msgn(region, first) * msgn(region, after)
            l_ratio = lpsgn(region, first) * lpsgn(region, after)
            ec = e_count(region, cycle)
            good = m_ratio == (-1) ** (n - 1) and ec % 2 != n % 2 and l_ratio == (-1) ** ec
            ok &= good
            cycles.append({"n": n, "msgn_ratio": m_ratio, "lpsgn_ratio": l_ratio, "e_count": ec, "pass": good})
    return ok, {"cycles": len(cycles), "failures": [c for c in cycles if not c["pass"]], "sample": cycles[:20]}


VERIFIERS = {
    "detzn": _verify_detzn,
    "signed-enum": _verify_signed_enum,
    "persign": _verify_persign,
    "rotation": _verify_rotation,
    "lgv": _verify_lgv,
    "twist": _verify_twist,
}


def cmd_verify(region: TriangularRegion, args) -> tuple[dict, int]:
    _need_balanced(region)
    ok, data = VERIFIERS[args.property](region)
    report = {"region": str(region), "property": args.property, "pass": ok, **data}
    return report, EXIT_PASS if ok else EXIT_FAIL


def _picture(region, tiling, what: str, fmt: str) -> str:
    if fmt == "ascii":
        if what == "region":
            return render.region_ascii(region)
        if what == "paths":
            return render.paths_ascii(region, tiling)
        return render.tiling_ascii(region, tiling)
    if what == "region":
        return render.region_svg(region)
    if what == "paths":
        return render.paths_svg(region, tiling)
    if what == "matching":
        return render.matching_svg(region, tiling)
    return render.tiling_svg(region, tiling)


def cmd_render(region: TriangularRegion, args) -> tuple[str, int]:
    tiling = None if args.what == "region" else _tiling_at(region, args.tiling_index)
    return _picture(region, tiling, args.what, args.format), EXIT_PASS


def cmd_resolve(region: TriangularRegion, args) -> tuple[dict, int]:
    _need_balanced(region)
    if not is_tileable(region):
        raise InputError(f"{region} has no tiling")
    tiling = canonical_tiling(region) if args.tiling_index is None else _tiling_at(region, args.tiling_index)
    puncture = _find_puncture(region, args.puncture, args.covering)
    res = resolve(region, tiling, puncture)
    report = {"source": region.spec(), **res.to_json(), "balanced": res.region.is_balanced}
    report["renders"] = {
        "before": render.tiling_svg(region, tiling),
        "after": render.tiling_svg(res.region, res.tiling),
    }
    return report, EXIT_PASS


COMMANDS = {
    "check": cmd_check,
    "count": cmd_count,
    "verify": cmd_verify,
    "render": cmd_render,
    "resolve": cmd_resolve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trireg", description="Lozenge tilings of punctured triangular regions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", required=True, help="spec file, or inline JSON / '6: x^3, y^4, z^5'")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        return p

    add("check", "balance, tileability, punctures and sign guarantees")
    p = add("count", "number of lozenge tilings")
    p.add_argument("--method", choices=("enum", "permanent"), default="enum")
    p = add("verify", "check a sign or counting property")
    p.add_argument("--property", choices=PROPERTIES, required=True)
    p = add("render", "draw the region, a tiling, its matching or its lattice paths")
    p.add_argument("--what", choices=("region", "tiling", "paths", "matching"), default="region")
    p.add_argument("--format", choices=("svg", "ascii"), default="svg")
    p.add_argument("--tiling-index", type=int, default=0)
    p = add("resolve", "resolve a puncture relative to a tiling")
    p.add_argument("--puncture", required=True, help="generator of the puncture, e.g. xy^4z^2")
    p.add_argument("--covering", action="store_true", help="resolve the covering region of an overlapping group")
    p.add_argument("--tiling-index", type=int, default=None, help="enumeration index (default: canonical tiling)")
    return parser


def _emit(payload, output: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, message: str, code: int, **extra) -> int:
    print(json.dumps({"schema_version": SCHEMA_VERSION, "error": kind, "message": message, **extra}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        region = load_spec(args.spec)
        payload, code = COMMANDS[args.command](region, args)
    except ParseError as exc:
        return _error("parse", str(exc), EXIT_INPUT, line=exc.line, column=exc.column)
    except (OversizeError, CapError) as exc:
        return _error("cap", str(exc), EXIT_CAP)
    except (InputError, NotTileableError, ResolutionError, ValueError) as exc:
        return _error("input", str(exc), EXIT_INPUT)
    if isinstance(payload, dict):
        payload = {"schema_version": SCHEMA_VERSION, "command": args.command, **payload}
    _emit(payload, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())

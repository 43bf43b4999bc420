"""Command-line interface: deterministic, file-based access to every
pipeline stage.

Exit codes: 0 success/verified, 1 verified-false (witness printed),
2 usage or validation error.  With ``--format json`` the output is
canonical JSON, byte-stable for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from . import fileio
from .chartab import (
    DEFAULT_SEED,
    dixon_character_table,
    verify_orthogonality,
)
from .errors import (
    IncompatibleFamily,
    NotAGroup,
    NotAPartition,
    NotASupercharacterTheory,
    SchemaError,
    SupercharError,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    FiniteGroup,
    Subgroup,
    builtin_group,
    closure,
    conjugacy_classes,
    element_order,
    enumerate_subgroups,
    subgroup_from_elements,
    trivial_subgroup,
    whole_subgroup,
)
from .nsystems import (
    DEFAULT_SEARCH_BUDGET,
    NSystem,
    check_ach3,
    find_uvdw_certificate,
    verify_artin_takagi,
    verify_heilbronn_stark,
    verify_uvdw,
)
from .theories import (
    DEFAULT_ENUM_CLASS_CAP,
    classical_theory,
    enumerate_theories,
    is_compatible,
    make_family,
    maximal_theory,
    superinduce,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    """Resolved run options shared by all subcommands."""

    group_path: Optional[str]
    builtin: Optional[str]
    fmt: str
    max_order: int
    enum_cap: int
    budget: int
    prime: Optional[int]
    seed: int

    def __post_init__(self):
        if self.max_order <= 0 or self.enum_cap <= 0 or self.budget <= 0:
            raise SchemaError("caps must be positive")


def _config(args) -> RunConfig:
    max_order = getattr(args, "max_order", None)
    if max_order is None:
        max_order = int(os.environ.get("SUPERCHAR_MAX_ORDER", DEFAULT_MAX_ORDER))
    return RunConfig(
        group_path=getattr(args, "group", None),
        builtin=getattr(args, "builtin", None),
        fmt=getattr(args, "format", "text"),
        max_order=max_order,
        enum_cap=getattr(args, "cap", DEFAULT_ENUM_CLASS_CAP),
        budget=getattr(args, "budget", DEFAULT_SEARCH_BUDGET),
        prime=getattr(args, "prime", None),
        seed=getattr(args, "seed", DEFAULT_SEED),
    )


def _resolve_group(cfg: RunConfig) -> FiniteGroup:
    if (cfg.group_path is None) == (cfg.builtin is None):
        raise SchemaError("exactly one of --group FILE or --builtin NAME is required")
    G = builtin_group(cfg.builtin) if cfg.builtin else fileio.load_group(cfg.group_path)
    if G.order > cfg.max_order:
        raise SchemaError(
            f"group order {G.order} exceeds cap {cfg.max_order} "
            f"(set SUPERCHAR_MAX_ORDER or --max-order to raise it)"
        )
    return G


def _derived_subgroup(G: FiniteGroup) -> Subgroup:
    gens = {
        G.m(G.m(x, y), G.m(G.inverse(x), G.inverse(y)))
        for x in range(G.order)
        for y in range(G.order)
    }
    return subgroup_from_elements(G, closure(G, gens))


def _parse_subgroup(G: FiniteGroup, spec: str) -> Subgroup:
    """Subgroup spec: 'trivial', 'whole', 'derived', '#k' (canonical
    index), 'Ak' (alternating part of a symmetric group, i.e. the derived
    subgroup of expected order k!/2), or comma-separated elements."""
    spec = spec.strip()
    if spec == "trivial":
        return trivial_subgroup(G)
    if spec in ("whole", "G"):
        return whole_subgroup(G)
    if spec == "derived":
        return _derived_subgroup(G)
    if spec.startswith("#"):
        subs = enumerate_subgroups(G)
        k = int(spec[1:])
        if not 0 <= k < len(subs):
            raise SchemaError(f"subgroup index {k} out of range 0..{len(subs) - 1}")
        return subs[k]
    if len(spec) > 1 and spec[0] in "aA" and spec[1:].isdigit():
        k = int(spec[1:])
        want = 1
        for i in range(3, k + 1):
            want *= i
        sub = _derived_subgroup(G)
        if sub.order != want:
            raise SchemaError(
                f"no alternating subgroup of order {want} (derived subgroup "
                f"has order {sub.order})"
            )
        return sub
    try:
        elements = [int(t) for t in spec.split(",")]
    except ValueError:
        raise SchemaError(f"cannot parse subgroup spec {spec!r}") from None
    return subgroup_from_elements(G, elements)


def _parse_base(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise SchemaError(f"base must be comma-separated integers, got {text!r}") from None


def _parse_values(text: str) -> List[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"values must be comma-separated rationals, got {text!r}") from None


def _emit(args, payload: dict, lines: Sequence[str]):
    if getattr(args, "format", "text") == "json":
        print(fileio.canonical_json(payload))
    else:
        for line in lines:
            print(line)


def _table_for(G: FiniteGroup, cfg: RunConfig):
    return dixon_character_table(G, prime=cfg.prime, seed=cfg.seed)


def _theory_from_choice(table, choice: str):
    if choice == "classical":
        return classical_theory(table)
    if choice == "maximal":
        return maximal_theory(table)
    return fileio.load_theory(table, choice)


def _family_for(G: FiniteGroup, cfg: RunConfig, choice: str):
    if choice in ("classical", "maximal"):
        return make_family(G, choice, prime=cfg.prime, seed=cfg.seed)
    return fileio.load_family(G, choice, prime=cfg.prime, seed=cfg.seed)


def _report_payload(report) -> dict:
    return {
        "check": report.name,
        "ok": report.ok,
        "details": report.details,
        "witness": report.violations,
        "warnings": report.warnings,
    }


def _report_exit(args, report) -> int:
    lines = [f"{report.name}: {'ok' if report.ok else 'FAILED'}"]
    lines += [f"  {k} = {v}" for k, v in report.details.items()]
    lines += [f"  violation: {v}" for v in report.violations]
    lines += [f"  warning: {w}" for w in report.warnings]
    _emit(args, _report_payload(report), lines)
    return EXIT_OK if report.ok else EXIT_FALSE


# -- group ---------------------------------------------------------------------


def cmd_group_check(args) -> int:
    cfg = _config(args)
    try:
        G = _resolve_group(cfg)
    except NotAGroup as exc:
        payload = {"ok": False, "witness": {"reason": exc.reason}}
        _emit(args, payload, [f"not a group: {exc.reason}"])
        return EXIT_FALSE
    payload = {"ok": True, "name": G.name, "order": G.order, "exponent": G.exponent}
    _emit(args, payload, [f"{G.name}: group of order {G.order}, exponent {G.exponent}"])
    return EXIT_OK


def cmd_group_info(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    cls = conjugacy_classes(G)
    subs = enumerate_subgroups(G)
    payload = {
        "name": G.name,
        "order": G.order,
        "exponent": G.exponent,
        "class_reps": list(cls.representatives),
        "class_sizes": list(cls.sizes),
        "element_orders": [element_order(G, g) for g in range(G.order)],
        "subgroups": [list(s.elements) for s in subs],
    }
    lines = [
        f"{G.name}: order {G.order}, exponent {G.exponent}",
        f"conjugacy classes ({len(cls)}): "
        + " ".join(f"C{i}=rep {r},size {s}" for i, (r, s) in enumerate(zip(cls.representatives, cls.sizes))),
        f"subgroups ({len(subs)}):",
    ]
    lines += [f"  #{i}: order {s.order}, elements {list(s.elements)}" for i, s in enumerate(subs)]
    _emit(args, payload, lines)
    return EXIT_OK


# -- table ---------------------------------------------------------------------


def cmd_table_compute(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    table = _table_for(G, cfg)
    if args.output:
        fileio.save_table(table, args.output)
    payload = fileio.table_to_obj(table)
    payload["fingerprint"] = fileio.table_fingerprint(table)
    lines = [
        f"character table of {G.name} ({len(table)} classes), "
        f"fingerprint {payload['fingerprint']}",
        "degrees: " + " ".join(str(d) for d in table.degrees),
    ]
    for i, row in enumerate(table.rows):
        lines.append(f"chi{i}: " + "  ".join(str(v) for v in row.values))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_table_verify(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    table = fileio.decode_table(G, args.table)
    report = verify_orthogonality(table)
    payload = {"ok": report.ok, "witness": report.violations}
    lines = [f"orthogonality: {'ok' if report.ok else 'FAILED'}"]
    lines += [f"  violation: {v}" for v in report.violations]
    _emit(args, payload, lines)
    return EXIT_OK if report.ok else EXIT_FALSE


# -- sct -----------------------------------------------------------------------


def _theory_lines(theory) -> List[str]:
    lines = []
    for x, (xb, kb) in enumerate(zip(theory.irr_blocks, theory.class_blocks)):
        elems = theory.superclass_elements(x)
        lines.append(f"X{x}={list(xb)}  K{x}=classes {list(kb)} elements {list(elems)}")
    return lines


def cmd_sct_verify(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    table = _table_for(G, cfg)
    try:
        theory = fileio.load_theory(table, args.theory)
    except NotASupercharacterTheory as exc:
        payload = {
            "ok": False,
            "witness": {"condition": exc.condition, "message": str(exc), **exc.witness},
        }
        _emit(args, payload, [f"not a supercharacter theory: {exc}"])
        return EXIT_FALSE
    except NotAPartition as exc:
        payload = {"ok": False, "witness": {"message": str(exc)}}
        _emit(args, payload, [f"not a supercharacter theory: {exc}"])
        return EXIT_FALSE
    payload = {"ok": True, "theory": fileio.theory_to_obj(theory)}
    _emit(args, payload, [f"valid theory with {theory.n_blocks} blocks"] + _theory_lines(theory))
    return EXIT_OK


def cmd_sct_enumerate(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    table = _table_for(G, cfg)
    theories = enumerate_theories(table, max_classes=cfg.enum_cap)
    payload = {
        "group": G.name,
        "count": len(theories),
        "theories": [
            {
                "irr_partition": [list(b) for b in t.irr_blocks],
                "class_partition": [list(b) for b in t.class_blocks],
            }
            for t in theories
        ],
    }
    lines = [f"{len(theories)} supercharacter theories of {G.name}"]
    for i, t in enumerate(theories):
        lines.append(f"[{i}] X={[list(b) for b in t.irr_blocks]} K={[list(b) for b in t.class_blocks]}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_sct_compat(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    sub = _parse_subgroup(G, args.subgroup)
    big_theory = _theory_from_choice(_table_for(G, cfg), args.theory)
    sub_theory = _theory_from_choice(
        dixon_character_table(sub.local, seed=cfg.seed), args.sub_theory
    )
    ok, witness = is_compatible(sub_theory, big_theory, sub.elements)
    payload = {"ok": ok, "subgroup": list(sub.elements)}
    if not ok:
        payload["witness"] = {"element": witness}
    lines = [
        f"theories on {list(sub.elements)} <= {G.name}: "
        + ("compatible" if ok else f"INCOMPATIBLE (witness element {witness})")
    ]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FALSE


# -- superinduction --------------------------------------------------------------


def cmd_sind(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    sub = _parse_subgroup(G, args.subgroup)
    big_theory = _theory_from_choice(_table_for(G, cfg), args.theory)
    sub_theory = _theory_from_choice(
        dixon_character_table(sub.local, seed=cfg.seed), args.sub_theory
    )
    values = _parse_values(args.values)
    if len(values) != sub_theory.n_blocks:
        raise SchemaError(
            f"expected {sub_theory.n_blocks} block values for the subgroup theory, "
            f"got {len(values)}"
        )
    phi = sub_theory.superclass_function(values)
    result = superinduce(phi, big_theory, sub.elements)
    blocks = result.block_values()
    payload = {
        "subgroup": list(sub.elements),
        "values": {f"K{k}": str(v) for k, v in enumerate(blocks)},
    }
    lines = [f"Sind from {list(sub.elements)} to {G.name}:"]
    lines += [f"  K{k}: {v}" for k, v in enumerate(blocks)]
    _emit(args, payload, lines)
    return EXIT_OK


# -- family ----------------------------------------------------------------------


def cmd_family_check(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    try:
        family = _family_for(G, cfg, args.family)
    except IncompatibleFamily as exc:
        payload = {
            "ok": False,
            "witness": {
                "h1": list(exc.h1_elements),
                "h2": list(exc.h2_elements),
                "element": exc.witness,
            },
        }
        _emit(args, payload, [f"family incompatible: {exc}"])
        return EXIT_FALSE
    if args.output:
        fileio.save_family(family, args.output)
    payload = {
        "ok": True,
        "label": family.label,
        "subgroups": [list(s.elements) for s in family.subgroups],
    }
    lines = [
        f"compatible {family.label} family on {G.name} "
        f"with {len(family.subgroups)} subgroups"
    ]
    _emit(args, payload, lines)
    return EXIT_OK


# -- n-systems ---------------------------------------------------------------------


def _nsystem_from_args(args, cfg, G) -> NSystem:
    family = _family_for(G, cfg, args.family)
    if getattr(args, "nsys", None):
        return fileio.load_nsystem(family, args.nsys)
    if getattr(args, "base", None) is None:
        raise SchemaError("one of --base or --nsys is required")
    return NSystem(family, _parse_base(args.base))


def cmd_nsys_build(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    ns = _nsystem_from_args(args, cfg, G)
    if args.output:
        fileio.save_nsystem(ns, args.output)
    blocks = ns.theta_top.block_values()
    payload = fileio.nsystem_to_obj(ns)
    payload["theta"] = {f"K{k}": str(v) for k, v in enumerate(blocks)}
    lines = [f"n-system on {G.name} ({ns.family.label} family), base {list(ns.base)}"]
    lines += [f"  Theta K{k}: {v}" for k, v in enumerate(blocks)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_nsys_theta(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    ns = _nsystem_from_args(args, cfg, G)
    sub = ns.family.subgroup_by_elements(_parse_subgroup(G, args.subgroup).elements)
    theta = ns.theta(sub)
    blocks = theta.block_values()
    payload = {
        "subgroup": list(sub.elements),
        "theta": {f"K{k}": str(v) for k, v in enumerate(blocks)},
    }
    lines = [f"Theta on subgroup {list(sub.elements)}:"]
    lines += [f"  K{k}: {v}" for k, v in enumerate(blocks)]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_nsys_verify(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    ns = _nsystem_from_args(args, cfg, G)
    family = ns.family
    if args.theorem == "artin-takagi":
        return _report_exit(args, verify_artin_takagi(ns))
    if args.theorem == "ach3":
        return _report_exit(args, check_ach3(ns))
    if args.theorem == "heilbronn-stark":
        if args.subgroup:
            subs = [family.subgroup_by_elements(_parse_subgroup(G, args.subgroup).elements)]
        else:
            subs = list(family.subgroups)
        reports = [verify_heilbronn_stark(ns, sub) for sub in subs]
        ok = all(r.ok for r in reports)
        payload = {"ok": ok, "reports": [_report_payload(r) for r in reports]}
        lines = []
        for sub, r in zip(subs, reports):
            lines.append(
                f"heilbronn-stark on {list(sub.elements)}: {'ok' if r.ok else 'FAILED'}"
            )
            lines += [f"  violation: {v}" for v in r.violations]
        _emit(args, payload, lines)
        return EXIT_OK if ok else EXIT_FALSE
    # uvdw
    if args.cert:
        cert = fileio.load_certificate(family, args.cert)
    else:
        if not args.subgroup:
            raise SchemaError("uvdw verification needs --cert FILE or --subgroup SPEC")
        sub = family.subgroup_by_elements(_parse_subgroup(G, args.subgroup).elements)
        search = find_uvdw_certificate(family, sub, budget=cfg.budget)
        if search.certificate is None:
            payload = {
                "ok": False,
                "witness": {"found": False, "exhausted": search.exhausted, "nodes": search.nodes},
            }
            _emit(args, payload, ["no certificate found within budget"])
            return EXIT_FALSE
        cert = search.certificate
    return _report_exit(args, verify_uvdw(ns, cert))


# -- certificate search ---------------------------------------------------------------


def cmd_uvdw_find(args) -> int:
    cfg = _config(args)
    G = _resolve_group(cfg)
    family = _family_for(G, cfg, args.family)
    sub = family.subgroup_by_elements(_parse_subgroup(G, args.subgroup).elements)
    search = find_uvdw_certificate(family, sub, budget=cfg.budget)
    if search.certificate is None:
        payload = {
            "found": False,
            "exhausted": search.exhausted,
            "nodes": search.nodes,
        }
        status = "budget exhausted" if search.exhausted else "search space exhausted"
        _emit(args, payload, [f"no certificate found ({status}, {search.nodes} nodes)"])
        return EXIT_FALSE
    cert = search.certificate
    if args.output:
        fileio.save_certificate(cert, args.output)
    payload = {"found": True, "nodes": search.nodes, "certificate": fileio.certificate_to_obj(cert)}
    lines = [f"certificate for H = {list(cert.subgroup.elements)} ({search.nodes} nodes):"]
    for hi, blocks in cert.terms:
        lines.append(f"  Hi = {list(hi.elements)}, sigma blocks {['X%d' % b for b in blocks]}")
    if not cert.terms:
        lines.append("  (empty decomposition: Sind 1_H = 1_G)")
    _emit(args, payload, lines)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def _add_common(p, group=True):
    if group:
        p.add_argument("--group", help="group file (group/v1 JSON)")
        p.add_argument("--builtin", help="built-in group: cN, sN, dN, qN or aN")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--prime", type=int, default=None, help="Dixon prime override")
    p.add_argument("--max-order", dest="max_order", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superchar",
        description="Exact supercharacter theories and arithmetic invariants of finite groups.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    g = top.add_parser("group", help="group input checks").add_subparsers(
        dest="sub", required=True
    )
    p = g.add_parser("check", help="verify the group axioms")
    _add_common(p)
    p.set_defaults(func=cmd_group_check)
    p = g.add_parser("info", help="classes, element orders and subgroups")
    _add_common(p)
    p.set_defaults(func=cmd_group_info)

    t = top.add_parser("table", help="character tables").add_subparsers(
        dest="sub", required=True
    )
    p = t.add_parser("compute", help="exact character table via Dixon's method")
    _add_common(p)
    p.add_argument("--output", help="write a chartable/v1 file")
    p.set_defaults(func=cmd_table_compute)
    p = t.add_parser("verify", help="check a table file against the orthogonality relations")
    _add_common(p)
    p.add_argument("--table", required=True, help="chartable/v1 file")
    p.set_defaults(func=cmd_table_verify)

    s = top.add_parser("sct", help="supercharacter theories").add_subparsers(
        dest="sub", required=True
    )
    p = s.add_parser("verify", help="validate a theory file")
    _add_common(p)
    p.add_argument("--theory", required=True, help="sct/v1 file")
    p.set_defaults(func=cmd_sct_verify)
    p = s.add_parser("enumerate", help="list every supercharacter theory")
    _add_common(p)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CLASS_CAP,
                   help="max conjugacy classes for enumeration")
    p.set_defaults(func=cmd_sct_enumerate)
    p = s.add_parser("compat", help="check subgroup-theory compatibility")
    _add_common(p)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--theory", default="classical", help="classical | maximal | sct/v1 file")
    p.add_argument("--sub-theory", dest="sub_theory", default="classical")
    p.set_defaults(func=cmd_sct_compat)

    p = top.add_parser("sind", help="superinduce a superclass function")
    _add_common(p)
    p.add_argument("--subgroup", required=True)
    p.add_argument("--theory", default="classical")
    p.add_argument("--sub-theory", dest="sub_theory", default="classical")
    p.add_argument("--values", required=True, help="one rational per subgroup K-block")
    p.set_defaults(func=cmd_sind)

    f = top.add_parser("family", help="compatible families").add_subparsers(
        dest="sub", required=True
    )
    p = f.add_parser("check", help="build a family and verify pairwise compatibility")
    _add_common(p)
    p.add_argument("--family", default="classical", help="classical | maximal | family/v1 file")
    p.add_argument("--output", help="write a family/v1 file")
    p.set_defaults(func=cmd_family_check)

    n = top.add_parser("nsys", help="integer systems on supercharacters").add_subparsers(
        dest="sub", required=True
    )
    for name, func, extra in (
        ("build", cmd_nsys_build, "output"),
        ("theta", cmd_nsys_theta, "subgroup"),
        ("verify", cmd_nsys_verify, "verify"),
    ):
        p = n.add_parser(name)
        _add_common(p)
        p.add_argument("--family", default="classical")
        p.add_argument("--base", help="comma-separated integers, one per top X-block")
        p.add_argument("--nsys", help="nsys/v1 file instead of --base")
        if extra == "output":
            p.add_argument("--output", help="write an nsys/v1 file")
        elif extra == "subgroup":
            p.add_argument("--subgroup", required=True)
        else:
            p.add_argument(
                "--theorem",
                required=True,
                choices=["artin-takagi", "heilbronn-stark", "uvdw", "ach3"],
            )
            p.add_argument("--subgroup")
            p.add_argument("--cert", help="uvdw/v1 certificate file")
            p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
        p.set_defaults(func=func)

    u = top.add_parser("uvdw", help="decomposition certificates").add_subparsers(
        dest="sub", required=True
    )
    p = u.add_parser("find", help="search for a decomposition certificate")
    _add_common(p)
    p.add_argument("--family", default="classical")
    p.add_argument("--subgroup", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--output", help="write a uvdw/v1 file")
    p.set_defaults(func=cmd_uvdw_find)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SupercharError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

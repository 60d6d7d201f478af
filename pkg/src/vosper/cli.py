"""``vosper`` command line: analyze, enumerate, verify, atoms.

Exit codes: 0 success, 1 disagreement or failed suite, 2 parse error or cap
exceeded, 3 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .audit import enumerate_and_audit, records_to_csv, records_to_json
from .bits import members
from .cayley import (
    classify_arc_transitive,
    classify_superconnected_cayley,
    classify_vosperian_cayley,
)
from .connectivity import connectivity_profile, isoperimetric_connectivity, k_atoms
from .digraph import Digraph, cayley_digraph, read_edge_list, reverse
from .errors import BudgetExceeded, ParseError, PreconditionError
from .groups import CATALOG_MAX_ORDER, FiniteGroup, is_aperiodic, parse_group_spec, parse_subset
from .oracle import superconnected_by_definition, vosperian_by_definition
from .suites import DEFAULT_SEED, SUITES, run_suite
from .symmetry import AUTOMORPHISM_CAP, is_arc_transitive, is_irreducible, twin_classes

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    group: Optional[str] = None
    subset: Optional[str] = None
    edges: Optional[str] = None
    k: int = 2
    oracle: bool = False
    max_order: int = 6
    suite: Optional[str] = None
    seed: int = DEFAULT_SEED
    format: str = "json"

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        return cls(**{k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__})


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _load_input(cfg: RunConfig) -> tuple[Digraph, Optional[FiniteGroup], Optional[int], dict]:
    if (cfg.group is None) == (cfg.edges is None):
        raise ParseError("give exactly one of --group/--subset or --edges")
    if cfg.edges is not None:
        if cfg.subset is not None:
            raise ParseError("--subset only applies to --group inputs")
        try:
            d = read_edge_list(cfg.edges)
        except OSError as exc:
            raise ParseError(f"cannot read {cfg.edges}: {exc}") from exc
        return d, None, None, {"kind": "edges", "path": cfg.edges}
    if cfg.subset is None:
        raise ParseError("--group needs --subset")
    g = parse_group_spec(cfg.group)
    s = parse_subset(cfg.subset, g.order)
    d = cayley_digraph(g, s)
    return d, g, s, {"kind": "cayley", "group": g.label, "subset": members(s)}


def _classes(d: Digraph) -> list[list[int]]:
    return [members(c) for c in twin_classes(d).classes]


def cmd_analyze(cfg: RunConfig) -> tuple[int, str]:
    d, g, s, source = _load_input(cfg)
    profile = connectivity_profile(d, vertex_transitive=g is not None)
    doc: dict = {
        "schema": "vosper.analyze/1",
        "input": source,
        "label": d.label,
        "n": d.n,
        **profile.as_dict(),
        "condition": None,
        "irreducible": is_irreducible(d),
        "twin_classes": _classes(d),
        "anti_twin_classes": _classes(reverse(d)),
        "arc_transitive": None,
        "arc_transitive_prediction": None,
        "cayley": None,
        "oracle": None,
    }
    if d.n <= AUTOMORPHISM_CAP and d.num_arcs():
        doc["arc_transitive"] = is_arc_transitive(d)
        if doc["arc_transitive"]:
            doc["arc_transitive_prediction"] = classify_arc_transitive(d)
    if g is not None:
        verdict = classify_vosperian_cayley(g, s)
        aperiodic = is_aperiodic(g, s)
        if aperiodic:
            sv = classify_superconnected_cayley(g, s)
            superconn = {"source": "theorem", **sv.as_dict()}
        else:
            superconn = {
                "source": "oracle-only",
                "superconnected": profile.superconnected,
                "via": "none",
                "witness": None,
            }
        doc["condition"] = verdict.condition
        doc["cayley"] = {
            "aperiodic": aperiodic,
            "vosperian_verdict": verdict.as_dict(),
            "superconnected_verdict": superconn,
        }
    if cfg.oracle:
        vo = vosperian_by_definition(d)
        so = superconnected_by_definition(d)
        doc["oracle"] = {
            "vosperian": vo,
            "superconnected": so,
            "agrees": vo == profile.vosperian and so == profile.superconnected,
        }
    if cfg.format == "text":
        return EXIT_OK, _text(doc)
    return EXIT_OK, _dump(doc)


def _text(doc: dict) -> str:
    lines = []
    for key, value in doc.items():
        text = value if isinstance(value, str) else json.dumps(value, separators=(",", ":"))
        lines.append(f"{key}: {text}")
    return "\n".join(lines) + "\n"


def cmd_enumerate(cfg: RunConfig) -> tuple[int, str]:
    if cfg.max_order > CATALOG_MAX_ORDER:
        raise BudgetExceeded(f"--max-order is capped at {CATALOG_MAX_ORDER}")
    records = enumerate_and_audit(cfg.max_order, use_oracle=cfg.oracle)
    out = records_to_json(records) if cfg.format == "json" else records_to_csv(records)
    code = EXIT_OK if all(r.agreement for r in records) else EXIT_DISAGREE
    return code, out


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    if cfg.suite not in SUITES:
        raise ParseError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    result = run_suite(cfg.suite, cfg.seed)
    doc = {"schema": "vosper.verify/1", **result.as_dict()}
    if cfg.format == "text":
        lines = [
            f"suite {result.name}: {'PASS' if result.passed else 'FAIL'}",
            f"checked {result.checked}, violations {result.violations}",
        ]
        lines += [f"  failure: {f}" for f in result.failures]
        lines += [f"  finding: {k} x{v}" for k, v in sorted(result.findings.items())]
        lines += [f"  note: {n}" for n in result.notes]
        out = "\n".join(lines) + "\n"
    else:
        out = _dump(doc)
    return (EXIT_OK if result.passed else EXIT_DISAGREE), out


def cmd_atoms(cfg: RunConfig) -> tuple[int, str]:
    if cfg.k < 1:
        raise ParseError("--k must be at least 1")
    d, _, _, source = _load_input(cfg)
    kappa_k = isoperimetric_connectivity(d, cfg.k)
    if kappa_k is None:
        raise PreconditionError(f"{d} is not {cfg.k}-separable")
    pos = k_atoms(d, cfg.k, "positive")
    neg = k_atoms(d, cfg.k, "negative")
    doc = {
        "schema": "vosper.atoms/1",
        "input": source,
        "label": d.label,
        "k": cfg.k,
        "kappa_k": kappa_k,
        "kappa_minus_k": isoperimetric_connectivity(reverse(d), cfg.k),
        "atoms": [a.as_dict() for a in pos],
        "negative_atoms": [a.as_dict() for a in neg],
    }
    if cfg.format == "text":
        lines = [f"{d.label}: kappa_{cfg.k} = {kappa_k}"]
        lines += [f"  + {a}" for a in pos]
        lines += [f"  - {a}" for a in neg]
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, _dump(doc)


COMMANDS = {
    "analyze": cmd_analyze,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "atoms": cmd_atoms,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vosper", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"vosper {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def input_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--group", help="group spec such as Z7, D5, Z2xZ2, Q8 or a JSON table")
        p.add_argument("--subset", help="comma-separated connection set, e.g. 1,2,3")
        p.add_argument("--edges", help="edge-list file: 'n m' header then m lines 'u v'")

    p = sub.add_parser("analyze", help="connectivity profile and classifier verdicts")
    input_flags(p)
    p.add_argument("--oracle", action="store_true", help="also run the brute-force definitions")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("enumerate", help="audit every catalog Cayley digraph")
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", required=True, help=", ".join(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("atoms", help="list k-atoms of both signs")
    input_flags(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cfg = RunConfig.from_args(ns)
        code, out = COMMANDS[cfg.command](cfg)
    except (ParseError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())

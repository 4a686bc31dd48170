"""Command-line front end.

Every command writes one JSON document to stdout (``--pretty`` switches to an
indented text rendering).  Errors go to stderr as JSON with a non-zero exit
code: 2 for bad input, 3 for a search or budget limit, 1 for a negative
verdict or a failed verification.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .cache import ArtifactCache
from .decider import (
    DEFAULT_TUPLE_BUDGET,
    BudgetExceeded,
    TruncatedSearch,
    VerificationReport,
    decide,
    decide_by_bfs,
    verify_class_searchable,
    verify_generation_claims,
    verify_pair_orbits,
    verify_theorem,
)
from .hurwitz import DEFAULT_NODE_CAP, Factorization, NotAReflectionError, orbit
from .matgroup import (
    GroupTable,
    SubgroupRecord,
    WordParseError,
    check_lattice_shape,
    class_labels,
    closure,
    lattice,
    parse_factorization,
)
from .normform import LENGTH_BOUNDS, NotG4Error, coverage, normalize, validate_catalog

log = logging.getLogger("g7hurwitz")

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

SUITES = ("theorem", "class-search", "generation", "catalog", "census", "all")

# (census name, lengths) checked by default
THEOREM_PLAN = [
    ("G4a", range(1, 6)),
    ("G4b", range(1, 6)),
    ("G422", range(1, 6)),
    ("G6a", range(1, 5)),
    ("G6b", range(1, 5)),
    ("G5", range(1, 6)),
    ("G7", range(1, 5)),
]
CLASS_SEARCH_PLAN = [("G4a", 5), ("G4b", 5), ("G5", 5), ("G422", 4), ("G6a", 4), ("G6b", 4), ("G7", 4)]
CATALOG_MAX_LEN = 12


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.kind = kind
        self.code = code


# -- output ----------------------------------------------------------------------


def _pretty(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for item in obj:
            sub = _pretty(item, indent + 1)
            lines.append(f"{pad}- {sub[0].strip()}" if sub else f"{pad}-")
            lines.extend(sub[1:])
        return lines
    return [pad + _scalar(obj)]


def _flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) for x in items) and len(v) <= 12


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)


def emit(obj, pretty: bool, stream=None) -> None:
    stream = stream or sys.stdout
    if isinstance(obj, str):
        stream.write(obj)
        return
    if pretty:
        stream.write("\n".join(_pretty(obj)) + "\n")
    else:
        stream.write(json.dumps(obj, sort_keys=False) + "\n")


# -- shared helpers --------------------------------------------------------------


def _cache(args) -> ArtifactCache:
    return ArtifactCache(args.cache_dir, enabled=not args.no_cache)


def load_host(args) -> GroupTable:
    return _cache(args).group_table()


def named_subgroups(host: GroupTable) -> dict[str, SubgroupRecord]:
    lat = lattice(host)
    return dict(zip(lat.names, lat.records))


def resolve_groups(host: GroupTable, label: str) -> list[str]:
    """A census name (``G4a``) or an isomorphism label (``G4``, meaning every copy)."""
    named = named_subgroups(host)
    if label in named:
        return [label]
    alias = {"G(4,2,2)": "G422"}.get(label, label)
    if alias in named:
        return [alias]
    hits = [nm for nm, rec in named.items() if rec.iso_class == label or nm.rstrip("abcdefgh") == label]
    if not hits:
        raise CliError("unknown-group", f"no reflection subgroup called {label!r}; known: {', '.join(named)}")
    return hits


def parse_fact(host: GroupTable, text: str) -> Factorization:
    try:
        return Factorization(host, parse_factorization(host, text))
    except WordParseError as exc:
        raise CliError("parse-error", str(exc)) from None
    except NotAReflectionError as exc:
        raise CliError("not-a-reflection", str(exc)) from None


def minimal_generators(host: GroupTable, rec: SubgroupRecord) -> tuple[int, ...]:
    """Lexicographically least among the smallest sets of reflections generating ``rec``."""
    for k in range(1, len(rec.reflections) + 1):
        for combo in itertools.combinations(rec.reflections, k):
            if closure(host, combo).element_ids == rec.element_ids:
                return combo
    return ()


# -- commands --------------------------------------------------------------------


def cmd_group_info(args) -> int:
    host = load_host(args)
    names = resolve_groups(host, args.label)
    named = named_subgroups(host)
    out = []
    for name in names:
        rec = named[name]
        labels = class_labels(host, rec)
        gens = minimal_generators(host, rec) if name != "G7" else tuple(host.generators[g] for g in "stu")
        out.append(
            {
                "name": name,
                "iso_class": rec.iso_class,
                "order": rec.order,
                "reflections": len(rec.reflections),
                "classes": [
                    {
                        "label": lb,
                        "size": len(cls),
                        "reflection_order": host.element_orders[cls[0]],
                        "members": [host.word(g) for g in cls],
                    }
                    for lb, cls in zip(labels, rec.own_classes)
                ],
                "generators": [host.word(g) for g in gens],
            }
        )
    emit(out[0] if len(out) == 1 else out, args.pretty)
    return EXIT_OK


def cmd_orbit(args) -> int:
    host = load_host(args)
    T = parse_fact(host, args.fact)
    rep = orbit(T, node_cap=args.cap)
    emit(rep.to_json(host), args.pretty)
    return EXIT_LIMIT if rep.truncated else EXIT_OK


def cmd_decide(args) -> int:
    host = load_host(args)
    T, V = parse_fact(host, args.fact1), parse_fact(host, args.fact2)
    if args.mode == "bfs":
        try:
            verdict = decide_by_bfs(T, V, node_cap=args.cap)
        except TruncatedSearch as exc:
            raise CliError("truncated", str(exc), EXIT_LIMIT) from None
    else:
        verdict = decide(T, V)
    emit(verdict.to_json(), args.pretty)
    return EXIT_OK if verdict.equivalent else EXIT_NO


def cmd_normalize(args) -> int:
    host = load_host(args)
    T = parse_fact(host, args.fact)
    try:
        nf = normalize(T)
    except NotG4Error as exc:
        raise CliError("not-g4", str(exc)) from None
    out = nf.to_json()
    if nf.source in ("orbit-bfs", "fiber-min") and "erratum_note" not in out:
        out["fallback"] = f"length {len(T)} is below the catalog bound {LENGTH_BOUNDS[nf.key.category]} for {nf.key.category}"
    emit(out, args.pretty)
    return EXIT_OK


def cmd_census(args) -> int:
    host = load_host(args)
    data = _cache(args).census(host)
    counts: dict[str, int] = {}
    for node in data["nodes"]:
        counts[node["iso_class"]] = counts.get(node["iso_class"], 0) + 1
    emit({"counts": counts, "subgroups": [n["name"] for n in data["nodes"]]}, args.pretty)
    return EXIT_OK


def cmd_lattice(args) -> int:
    host = load_host(args)
    lat = lattice(host)
    if args.format == "dot":
        emit(lat.to_dot(), args.pretty)
    else:
        emit({**_cache(args).census(host), "dot": lat.to_dot()}, args.pretty)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


def _catalog_report(host: GroupTable, max_len: int) -> VerificationReport:
    entries = validate_catalog(host, max_len=max_len)
    unexplained = [e.to_json(host) for e in entries if not e.validated and not e.explained]
    errata = [e.to_json(host) for e in entries if not e.validated]
    lengths = range(min(LENGTH_BOUNDS.values()), max_len + 1)
    cov = {str(n): coverage(host, n).to_json() for n in lengths}
    return VerificationReport(
        group="G4",
        length=max_len,
        tuples_examined=len(entries),
        orbits_found=0,
        partitions_agree=not unexplained,
        counterexamples=unexplained,
        suite="catalog",
        details={
            "validated": sum(e.validated for e in entries),
            "errata": errata,
            "coverage": {
                n: {"realizable_keys": c["realizable_keys"], "covered": c["covered"], "uncovered": len(c["uncovered"]), "errata": len(c["errata"])}
                for n, c in cov.items()
            },
        },
    )


def _census_report(host: GroupTable) -> VerificationReport:
    lat = lattice(host)
    problems = check_lattice_shape(lat)
    return VerificationReport(
        group="G7",
        length=0,
        tuples_examined=len(lat.records),
        orbits_found=0,
        partitions_agree=not problems,
        counterexamples=problems,
        suite="census",
        details={"counts": lat.counts(), "edges": len(lat.covers)},
    )


def _run_task(task: tuple) -> dict:
    suite, name, n, budget, cache_dir, use_cache = task
    host = ArtifactCache(cache_dir, enabled=use_cache).group_table()
    if suite == "theorem":
        rep = verify_theorem(named_subgroups(host)[name], n, budget=budget)
    elif suite == "class-search":
        rep = verify_class_searchable(named_subgroups(host)[name], n, budget=budget)
    elif suite == "generation":
        rep = verify_generation_claims(host)
    elif suite == "pair-orbits":
        rep = verify_pair_orbits(host)
    elif suite == "catalog":
        rep = _catalog_report(host, n)
    elif suite == "census":
        rep = _census_report(host)
    else:
        raise ValueError(suite)
    out = rep.to_json() | {"ok": rep.ok}
    if suite in ("theorem", "class-search"):
        out["group"] = name
    return out


def plan_tasks(args, host: GroupTable) -> list[tuple]:
    suites = SUITES[:-1] if args.suite == "all" else (args.suite,)
    wanted = set(resolve_groups(host, args.group)) if args.group else None
    common = (args.budget, args.cache_dir, not args.no_cache)
    tasks = []
    for suite in suites:
        if suite == "theorem":
            for name, lengths in THEOREM_PLAN:
                if wanted is None or name in wanted:
                    ns = range(1, args.max_len + 1) if args.max_len else lengths
                    tasks.extend(("theorem", name, n, *common) for n in ns)
        elif suite == "class-search":
            for name, n in CLASS_SEARCH_PLAN:
                if wanted is None or name in wanted:
                    tasks.append(("class-search", name, args.max_len or n, *common))
        elif suite == "generation":
            tasks.append(("generation", "G7", 0, *common))
            tasks.append(("pair-orbits", "G4", 0, *common))
        elif suite == "catalog":
            tasks.append(("catalog", "G4", args.max_len or CATALOG_MAX_LEN, *common))
        elif suite == "census":
            tasks.append(("census", "G7", 0, *common))
    if wanted is not None and not tasks:
        raise CliError("empty-plan", f"suite {args.suite!r} has nothing to check for group {args.group!r}")
    return tasks


def cmd_verify(args) -> int:
    host = load_host(args)  # warms the cache before workers start
    tasks = plan_tasks(args, host)
    try:
        if args.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(_run_task, tasks))
        else:
            reports = [_run_task(t) for t in tasks]
    except BudgetExceeded as exc:
        raise CliError("budget-exceeded", str(exc), EXIT_LIMIT) from None
    ok = all(r["ok"] for r in reports)
    emit({"suite": args.suite, "ok": ok, "reports": reports}, args.pretty)
    return EXIT_OK if ok else EXIT_NO


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="g7hurwitz", description="Hurwitz orbits of reflection factorizations in G7 and its reflection subgroups.")
    p.add_argument("--pretty", action="store_true", help="indented text instead of JSON")
    p.add_argument("--cache-dir", type=Path, default=None, help="artifact cache (default $G7HURWITZ_CACHE_DIR or ~/.cache/g7hurwitz)")
    p.add_argument("--no-cache", action="store_true", help="rebuild everything, read and write nothing")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group-info", help="order, reflections, classes and generators of a subgroup")
    g.add_argument("label", help="census name such as G7, G6a, G4b, G422, Z3xZ3c, or an iso label such as G4")
    g.set_defaults(func=cmd_group_info)

    o = sub.add_parser("orbit", help="Hurwitz orbit of a factorization")
    o.add_argument("fact", help='comma-separated words, e.g. "t, s*t*s"')
    o.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP, help="stop after this many orbit members")
    o.set_defaults(func=cmd_orbit)

    d = sub.add_parser("decide", help="are two factorizations Hurwitz-equivalent?")
    d.add_argument("fact1")
    d.add_argument("fact2")
    d.add_argument("--mode", choices=("criterion", "bfs"), default="criterion")
    d.add_argument("--cap", type=int, default=DEFAULT_NODE_CAP)
    d.set_defaults(func=cmd_decide)

    n = sub.add_parser("normalize", help="standard representative of the orbit of a G4 factorization")
    n.add_argument("fact")
    n.set_defaults(func=cmd_normalize)

    v = sub.add_parser("verify", help="run an exhaustive verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--group", help="restrict to one subgroup (census name) or all copies of an iso label")
    v.add_argument("--max-len", type=int, default=None, help="theorem: lengths 1..N; class-search: length N; catalog: n+m <= N")
    v.add_argument("--budget", type=int, default=DEFAULT_TUPLE_BUDGET, help="largest tuple space to enumerate")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="reflection subgroups of G7 by isomorphism type")
    c.set_defaults(func=cmd_census)

    lt = sub.add_parser("lattice", help="reflection subgroup lattice as JSON (with DOT) or DOT")
    lt.add_argument("--format", choices=("json", "dot"), default="json")
    lt.set_defaults(func=cmd_lattice)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        emit({"error": exc.kind, "message": str(exc)}, False, sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

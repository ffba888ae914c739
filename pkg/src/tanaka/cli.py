"""Command-line driver.

Exit codes are a stable contract: 0 success, 1 domain failure (invalid
or non-fundamental algebra, failed identity, unreachable level, failing
self-test), 2 input error (unreadable file, malformed document, unknown
preset, out-of-range option).

All numbers are printed exactly: dimensions as integers, rationals as
num/den. The json format of `prolong` round-trips through parse_result
byte-identically.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable, Optional, TextIO

from .catalog import make_algebra
from .jsonio import (
    AlgebraInputError,
    LoadedAlgebra,
    emit_g0_generators,
    emit_rational,
    emit_result,
    parse_algebra,
    parse_g0,
)
from .lie import G0Spec, GradedLieAlgebra, der0_basis, is_fundamental, resolve_g0
from .prolong import ProlongationResult, order_and_bound, prolong
from .selftest import run_catalog_suite, run_filtered_suite
from .torsion import kernel_reports, tower_report


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation, after option parsing."""

    command: str
    source: Optional[str]
    g0: str = "der0"
    max_degree: int = 10
    base_dim: Optional[int] = None
    level: int = 0
    fmt: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("--max-degree must be at least 1")
        if self.level < 0:
            raise ValueError("--level must be non-negative")
        if self.fmt not in ("text", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")


def _load_algebra(config: RunConfig) -> LoadedAlgebra:
    source = config.source
    if source is None:
        raise AlgebraInputError(f"{config.command} needs an algebra (preset:NAME or a path)")
    if source.startswith("preset:"):
        name = source[len("preset:"):]
        try:
            return LoadedAlgebra(name, make_algebra(name), ())
        except ValueError as exc:
            raise AlgebraInputError(str(exc)) from exc
    try:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise AlgebraInputError(f"cannot read {source}: {exc}") from exc
    loaded = parse_algebra(text)
    return loaded if loaded.name else LoadedAlgebra(source, loaded.algebra, loaded.violations)


def _require_usable(loaded: LoadedAlgebra, out: TextIO) -> Optional[int]:
    """Shared gate for the computing commands; None means proceed."""
    if loaded.violations:
        for v in loaded.violations:
            print(f"violation: {v}", file=sys.stderr)
        print(f"invalid algebra: {loaded.name}", file=sys.stderr)
        return 1
    if not is_fundamental(loaded.algebra):
        print(f"not fundamental: {loaded.name}", file=sys.stderr)
        return 1
    return None


def _resolve_g0(config: RunConfig, alg: GradedLieAlgebra):
    if config.g0.startswith("file:"):
        path = config.g0[len("file:"):]
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise AlgebraInputError(f"cannot read {path}: {exc}") from exc
        spec = parse_g0(text, alg)
    else:
        try:
            spec = G0Spec(config.g0)
        except ValueError as exc:
            raise AlgebraInputError(str(exc)) from exc
    try:
        return resolve_g0(spec, alg)
    except ValueError as exc:
        raise AlgebraInputError(str(exc)) from exc


def _base_dim(config: RunConfig, alg: GradedLieAlgebra) -> int:
    dim_m = alg.space.total_dim
    if config.base_dim is None:
        return dim_m
    if config.base_dim < dim_m:
        raise AlgebraInputError(
            f"--base-dim {config.base_dim} is smaller than dim m = {dim_m}")
    return config.base_dim


def _run_prolong(config: RunConfig, loaded: LoadedAlgebra) -> ProlongationResult:
    g0 = _resolve_g0(config, loaded.algebra)
    return prolong(loaded.algebra, g0, max_degree=config.max_degree)


def cmd_check(config: RunConfig, out: TextIO) -> int:
    loaded = _load_algebra(config)
    alg = loaded.algebra
    fundamental = not loaded.violations and is_fundamental(alg)
    if config.fmt == "json":
        doc = {
            "name": loaded.name,
            "dim": alg.space.total_dim,
            "valid": not loaded.violations,
            "fundamental": fundamental,
            "violations": list(loaded.violations),
        }
        print(json.dumps(doc, indent=2), file=out)
    else:
        degs = alg.space.degrees
        print(f"{loaded.name}: dim m = {alg.space.total_dim}, "
              f"degrees {degs[0]}..{degs[-1]}", file=out)
        for v in loaded.violations:
            print(f"violation: {v}", file=out)
        if loaded.violations:
            print("invalid", file=out)
        elif not fundamental:
            print("valid", file=out)
            print("not fundamental", file=out)
        else:
            print("valid", file=out)
            print("fundamental", file=out)
    return 0 if fundamental else 1


def cmd_der0(config: RunConfig, out: TextIO) -> int:
    loaded = _load_algebra(config)
    if loaded.violations:
        for v in loaded.violations:
            print(f"violation: {v}", file=sys.stderr)
        print(f"invalid algebra: {loaded.name}", file=sys.stderr)
        return 1
    basis = der0_basis(loaded.algebra)
    if config.fmt == "json":
        out.write(emit_g0_generators(basis))
        return 0
    print(f"dim der0 = {len(basis)}", file=out)
    for i, gen in enumerate(basis, start=1):
        blocks = []
        for d in gen.source.degrees:
            block = gen.block(d)
            if block.rows and block.cols:
                rows = [[emit_rational(e) for e in row] for row in block.entries]
                blocks.append(f"{d}: {rows}")
        print(f"D{i}: " + "; ".join(blocks), file=out)
    return 0


def _finite_lines(result: ProlongationResult, base_dim: int) -> list[str]:
    order, bound = order_and_bound(result, base_dim)
    dims = [len(result.g0)] + [result.dim_g(s) for s in range(1, order + 1)]
    head = f"order {order}"
    if any(dims):
        head += "; dims " + " ".join(f"g{i}={d}" for i, d in enumerate(dims))
    head += f"; bound {bound}"
    terms = " + ".join(str(t) for t in [base_dim] + dims)
    return [head, f"bound = dim(M) + Σ dim(g^i) = {terms} = {bound}"]


def cmd_prolong(config: RunConfig, out: TextIO) -> int:
    loaded = _load_algebra(config)
    failed = _require_usable(loaded, out)
    if failed is not None:
        return failed
    base_dim = _base_dim(config, loaded.algebra)
    result = _run_prolong(config, loaded)
    if config.fmt == "json":
        out.write(emit_result(result, base_dim))
        return 0
    if result.status.kind == "finite":
        for line in _finite_lines(result, base_dim):
            print(line, file=out)
    else:
        dims = ",".join(str(d) for d in result.dims)
        print(f"truncated at {result.status.max_degree}; dims {dims}", file=out)
    return 0


def cmd_torsion(config: RunConfig, out: TextIO) -> int:
    loaded = _load_algebra(config)
    failed = _require_usable(loaded, out)
    if failed is not None:
        return failed
    result = _run_prolong(config, loaded)
    n = config.level
    try:
        report = kernel_reports(result, n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if config.fmt == "json":
        doc = {
            "level": report.level,
            "dim_tor": report.dim_tor,
            "rank": report.rank,
            "dim_w": report.dim_w,
            "dim_domain": report.dim_domain,
            "dim_g_next": report.dim_g_next,
            "dim_gl_tail": report.dim_gl_tail,
            "gl_kernel_matches": report.gl_kernel_matches,
            "hom_injective": report.hom_injective,
            "messages": list(report.messages),
        }
        print(json.dumps(doc, indent=2), file=out)
        return 0 if report.passed else 1
    s = n + 1
    print(f"dim Tor^{s} = {report.dim_tor}", file=out)
    print(f"rank ∂^{s} = {report.rank}", file=out)
    print(f"dim W^{s} = {report.dim_w}", file=out)
    verdict = "PASS" if report.gl_kernel_matches else "FAIL"
    if n == 0:
        print(f"Ker ∂ = gl_2 + g^1: {verdict}", file=out)
    else:
        print(f"Ker ∂^{s} = gl_{s + 1} + g^{s}: {verdict}", file=out)
        hom = "PASS" if report.hom_injective else "FAIL"
        print(f"∂^{s} injective on Hom(g^i, g^{n}): {hom}", file=out)
    for msg in report.messages:
        print(f"note: {msg}", file=out)
    return 0 if report.passed else 1


def cmd_tower(config: RunConfig, out: TextIO) -> int:
    loaded = _load_algebra(config)
    failed = _require_usable(loaded, out)
    if failed is not None:
        return failed
    base_dim = _base_dim(config, loaded.algebra)
    result = _run_prolong(config, loaded)
    report = tower_report(result, base_dim)
    if config.fmt == "json":
        doc = {
            "base_dim": report.base_dim,
            "kind": report.kind,
            "order": report.order,
            "dim_g0": report.dim_g0,
            "rows": [{
                "n": r.n,
                "dim_g": r.dim_g,
                "dim_structure_group": r.dim_structure_group,
                "dim_group_product": r.dim_group_product,
                "dim_tor": r.dim_tor,
                "rank": r.rank,
                "dim_w": r.dim_w,
                "dim_total": r.dim_total,
            } for r in report.rows],
            "bound": report.bound,
        }
        print(json.dumps(doc, indent=2), file=out)
        return 0
    header = ("n", "g^n", "struct", "product", "Tor", "rank", "W", "total")
    table = [header]
    for r in report.rows:
        row = (r.n, r.dim_g, r.dim_structure_group, r.dim_group_product,
               r.dim_tor, r.rank, r.dim_w, r.dim_total)
        table.append(tuple(str(x) for x in row))
    widths = [max(len(str(row[c])) for row in table) for c in range(len(header))]
    truncated = report.kind == "truncated"
    for i, row in enumerate(table):
        line = "  ".join(str(cell).rjust(w) for cell, w in zip(row, widths))
        if truncated and i == len(table) - 1:
            line += "  truncated"
        print(line, file=out)
    if report.bound is not None:
        print(f"dim bound = {report.bound}", file=out)
    else:
        print(f"truncated at {result.status.max_degree}", file=out)
    return 0


def cmd_selftest(config: RunConfig, out: TextIO) -> int:
    reports = [run_filtered_suite(config.seed), run_catalog_suite()]
    for rep in reports:
        print(f"{rep.name}: {rep.cases} cases, {rep.checks} checks, "
              f"{len(rep.failures)} failures", file=out)
    bad = [rep for rep in reports if not rep.passed]
    if bad:
        print(f"first counterexample: {bad[0].failures[0]}", file=out)
        return 1
    print("all suites passed", file=out)
    return 0


COMMANDS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "check": cmd_check,
    "der0": cmd_der0,
    "prolong": cmd_prolong,
    "torsion": cmd_torsion,
    "tower": cmd_tower,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanaka",
        description="Prolongation, torsion, and filtered-calculus computations "
                    "on graded Lie algebras, in exact rational arithmetic.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("source", nargs="?", default=None,
                        help="algebra: preset:NAME or a JSON file path")
    parser.add_argument("--g0", default="der0",
                        help="degree-0 part: a preset name or file:PATH")
    parser.add_argument("--max-degree", type=int, default=10)
    parser.add_argument("--base-dim", type=int, default=None)
    parser.add_argument("--level", type=int, default=0,
                        help="torsion level n (reports the level n+1 map)")
    parser.add_argument("--format", dest="fmt", choices=("text", "json"),
                        default="text")
    parser.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(command=args.command, source=args.source, g0=args.g0,
                           max_degree=args.max_degree, base_dim=args.base_dim,
                           level=args.level, fmt=args.fmt, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[config.command](config, sys.stdout)
    except AlgebraInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

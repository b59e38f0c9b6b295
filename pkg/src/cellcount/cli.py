"""``cellcount`` command-line interface.

Machine output is canonical JSON on stdout (sorted keys); ``--human`` adds a
readable summary on stderr.  Exit status: 0 success, 1 verification failure,
2 usage or size errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .complex import (
    BUILTINS,
    CellComplex,
    builtin,
    flow_basis,
    graph_complex,
    loops_and_coloops,
    matrix_complex,
    simplex_skeleton,
)
from .errors import CellCountError
from .exact_linalg import IntMatrix, invariant_factors
from .integral_counts import COUNTERS, fit_integral_qp
from .modular_counts import (
    brute_chromatic,
    brute_flow,
    brute_tension,
    chromatic_delcon,
    chromatic_ie,
    flow_delcon,
    flow_ie,
    tension_qp,
)
from .orientations import enumerate_acyclic, enumerate_totally_cyclic
from .quasipoly import format_poly
from .report import jsonable
from .tutte import arithmetic_tutte, tutte, tutte_specialization
from .unimodularity import classify
from .verify import verify_complex

VERBS = ("info", "chromatic", "tension", "flow", "tutte", "orientations", "classify", "verify")
METHODS = ("ie", "delcon", "tutte", "brute")


class UsageError(Exception):
    pass


def _parse_matrix_text(text: str) -> list[list[int]]:
    stripped = text.strip()
    if stripped.startswith("["):
        data = json.loads(stripped)
        if isinstance(data, dict):
            data = data["boundary"]
        return [[int(x) for x in row] for row in data]
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if line:
            rows.append([int(tok) for tok in line.split()])
    if not rows:
        raise UsageError("matrix file has no rows")
    return rows


def _parse_edge_list(text: str):
    vertices: list[str] = []
    edges = []

    def add(v):
        if v not in vertices:
            vertices.append(v)

    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("vertices:"):
            for v in line.split(":", 1)[1].split():
                add(v)
            continue
        toks = line.replace(",", " ").split()
        if len(toks) != 2:
            raise UsageError(f"edge line {line!r} needs exactly two endpoints")
        for v in toks:
            add(v)
        edges.append(tuple(toks))
    return vertices, edges


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def load_complex(args) -> CellComplex:
    if args.builtin:
        return builtin(args.builtin)
    if args.file:
        try:
            return CellComplex.loads(_read(args.file))
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise UsageError(f"bad complex file {args.file}: {e}")
    if args.matrix:
        try:
            rows = _parse_matrix_text(_read(args.matrix))
        except (ValueError, json.JSONDecodeError, KeyError) as e:
            raise UsageError(f"bad matrix file {args.matrix}: {e}")
        return matrix_complex(IntMatrix(rows), name=os.path.basename(args.matrix))
    if args.graph:
        vertices, edges = _parse_edge_list(_read(args.graph))
        return graph_complex(vertices, edges, name=os.path.basename(args.graph))
    N, d = args.simplex_skeleton
    return simplex_skeleton(N, d)


def _k_values(args) -> list[int]:
    if args.k is not None:
        return [args.k]
    return list(range(1, args.k_max + 1))


def _count_output(X: CellComplex, kind: str, args) -> dict:
    if args.integral:
        fit = fit_integral_qp(X, kind)
        out = fit.to_json()
        if args.k is not None:
            out["value"] = COUNTERS[kind](X, args.k)
        return out
    method = args.method
    if method == "brute":
        brute = {"chromatic": brute_chromatic, "tension": brute_tension, "flow": brute_flow}[kind]
        return {"kind": kind, "method": "brute", "values": {str(k): brute(X, k) for k in _k_values(args)}}
    if method == "ie":
        q = {"chromatic": chromatic_ie, "tension": tension_qp, "flow": flow_ie}[kind](X)
    elif method == "delcon":
        if kind == "tension":
            raise UsageError("--method delcon is available for chromatic and flow only")
        q = chromatic_delcon(X) if kind == "chromatic" else flow_delcon(X)
    else:
        q = tutte_specialization(X, kind)
    out = q.to_json()
    if args.k is not None:
        out["value"] = jsonable(q(args.k))
    return out


def _info(X: CellComplex) -> dict:
    loops, coloops = loops_and_coloops(X)
    return {
        "complex": X.to_json(),
        "n": X.n,
        "m": X.m,
        "rank": X.rank,
        "invariant_factors": list(invariant_factors(X.boundary)),
        "loops": [X.facet_labels[j] for j in sorted(loops)],
        "coloops": [X.facet_labels[j] for j in sorted(coloops)],
        "flow_basis": flow_basis(X).tolist(),
    }


def _orientations(X: CellComplex) -> dict:
    acyc = [str(e) for e in enumerate_acyclic(X)]
    cyc = [str(e) for e in enumerate_totally_cyclic(X)]
    return {"acyclic": acyc, "totally_cyclic": cyc, "n_acyclic": len(acyc), "n_totally_cyclic": len(cyc)}


def _human(verb: str, result: dict) -> str:
    if verb in ("chromatic", "tension", "flow") and "constituents" in result:
        from .quasipoly import Quasipolynomial

        q = Quasipolynomial.from_json(result)
        lines = [f"{verb}: period {q.period}"]
        for r, c in enumerate(q.constituents):
            lines.append(f"  k = {r} mod {q.period}: {format_poly(c)}")
        return "\n".join(lines)
    if verb == "verify":
        lines = []
        for c in result["checks"]:
            tail = f"  ({c['reason']})" if c.get("reason") else ""
            lines.append(f"{c['status'].upper():8s} {c['name']}{tail}")
        s = result["summary"]
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines)
    width = max((len(k) for k in result), default=0)
    return "\n".join(f"{k:{width}s}  {json.dumps(jsonable(v), sort_keys=True)}" for k, v in sorted(result.items()))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cellcount", description="Count colorings, tensions and flows of cell complexes.")
    parser.add_argument("verb", choices=VERBS)
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=BUILTINS)
    src.add_argument("--file", help="complex JSON file")
    src.add_argument("--matrix", help="boundary matrix file (whitespace rows or JSON)")
    src.add_argument("--graph", help="edge list file, one 'u v' pair per line")
    src.add_argument("--simplex-skeleton", nargs=2, type=int, metavar=("N", "d"))
    parser.add_argument("--method", choices=METHODS, default="ie")
    parser.add_argument("--k", type=int, help="evaluate at this k (brute: count at this k)")
    parser.add_argument("--k-max", type=int, default=3, help="largest k for brute counts and verify")
    parser.add_argument("--integral", action="store_true", help="integral palette [-k+1, k-1] instead of Z_k")
    parser.add_argument("--max-subset-bits", type=int, help="override CELLCOUNT_MAX_SUBSET_BITS")
    parser.add_argument("--output", help="write the JSON here instead of stdout")
    parser.add_argument("--human", action="store_true", help="also print a readable summary to stderr")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_subset_bits is not None:
        os.environ["CELLCOUNT_MAX_SUBSET_BITS"] = str(args.max_subset_bits)
    status = 0
    try:
        if args.k is not None and args.k < 1:
            raise UsageError("--k must be positive")
        if args.k_max < 1:
            raise UsageError("--k-max must be positive")
        X = load_complex(args)
        verb = args.verb
        if verb == "info":
            result = _info(X)
        elif verb in ("chromatic", "tension", "flow"):
            result = _count_output(X, verb, args)
            if verb == "flow" and X.m == 0:
                print("note: a complex without facets has exactly one (empty) flow; "
                      "under the convention that sets this count to 0 the value would be 0", file=sys.stderr)
        elif verb == "tutte":
            result = {"tutte": tutte(X).to_json(), "arithmetic_tutte": arithmetic_tutte(X).to_json()}
        elif verb == "orientations":
            result = _orientations(X)
        elif verb == "classify":
            result = classify(X.boundary).to_json()
        else:
            report = verify_complex(X, args.k_max)
            result = report.to_json()
            status = 0 if report.passed else 1
    except (UsageError, CellCountError) as e:
        print(f"cellcount: error: {e}", file=sys.stderr)
        return 2
    text = json.dumps(jsonable(result), sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.human:
        print(_human(args.verb, result), file=sys.stderr)
    return status


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

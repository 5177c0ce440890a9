"""Command line front end: ``evotensor {analyze,kron,decompose,classify,graph}``.

Exit codes: 0 on any completed analysis, 2 on unreadable input, 3 when the
input violates a command's precondition (shape, size guard).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import classification as cls
from . import decompose, graph
from .evolution import (EvolutionAlgebra, annihilator, is_nondegenerate, is_perfect, is_simple,
                        tensor_evolution)
from .linalg import Permutation, format_rational
from .matrixio import ParseError, matrix_to_json, matrix_to_text, read_matrix

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
DEFAULT_MAX_DIM = 9


class PreconditionError(Exception):
    pass


def _load(path: str) -> EvolutionAlgebra:
    m, labels = read_matrix(path)
    if not m.is_square:
        raise PreconditionError(f"{path}: structure matrix must be square, got {m.rows}x{m.cols}")
    return EvolutionAlgebra(m, labels)


def _one_based(indices) -> str:
    return "{" + ", ".join(str(i + 1) for i in sorted(indices)) + "}"


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        json.dump(payload, sys.stdout, indent=2, ensure_ascii=False)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text)


def analyze_report(e: EvolutionAlgebra) -> dict:
    g = graph.support_graph(e.matrix)
    perfect = is_perfect(e)
    strong = graph.is_strongly_connected(g)
    prof = decompose.zero_profile(e.matrix)
    return {
        "dim": e.dim,
        "perfect": perfect,
        "nondegenerate": is_nondegenerate(e),
        "annihilator": sorted(annihilator(e)),
        "zero_profile": prof.as_dict(),
        "stabilizing_index": graph.stabilizing_index(g.adjacency),
        "strongly_connected": strong,
        "simple": is_simple(e) if perfect else None,
        "period": graph.period(g) if strong and g.edges() else None,
    }


def cmd_analyze(args) -> int:
    e = _load(args.input)
    r = analyze_report(e)
    yn = {True: "yes", False: "no", None: "n/a"}
    p = r["zero_profile"]
    text = (
        f"dimension: {r['dim']}\n"
        f"perfect: {yn[r['perfect']]}\n"
        f"nondegenerate: {yn[r['nondegenerate']]}\n"
        f"annihilator basis indices: {_one_based(r['annihilator'])}\n"
        f"zero profile: z={p['z']} z_d={p['z_d']} z_c={p['z_c']} z_r={p['z_r']} rank={p['rank']}\n"
        f"stabilizing index: {r['stabilizing_index']}\n"
        f"strongly connected: {yn[r['strongly_connected']]}\n"
        f"simple: {yn[r['simple']]}\n"
        f"period: {r['period'] if r['period'] is not None else 'n/a'}\n"
    )
    _emit(args, r, text)
    return EXIT_OK


def cmd_kron(args) -> int:
    a, b = _load(args.left), _load(args.right)
    t = tensor_evolution(a, b)
    m = b.dim
    ann_pred = {i * m + j for i in range(a.dim) for j in range(m) if i in annihilator(a) or j in annihilator(b)}
    summary = {
        "perfect": {"from_factors": is_perfect(a) and is_perfect(b), "direct": is_perfect(t)},
        "nondegenerate": {"from_factors": is_nondegenerate(a) and is_nondegenerate(b),
                          "direct": is_nondegenerate(t)},
        "annihilator": {"from_factors": sorted(ann_pred), "direct": sorted(annihilator(t))},
    }
    payload = {"matrix": matrix_to_json(t.matrix), "labels": list(t.labels), "transfer": summary}
    if args.json:
        _emit(args, payload, "")
        return EXIT_OK
    lines = [matrix_to_text(t.matrix)]
    for key in ("perfect", "nondegenerate"):
        s = summary[key]
        lines.append(f"# {key}: from factors {s['from_factors']}, direct {s['direct']}\n")
    s = summary["annihilator"]
    lines.append(f"# annihilator: from factors {_one_based(s['from_factors'])}, "
                 f"direct {_one_based(s['direct'])}\n")
    # comment lines keep the output re-readable as a plain-text matrix
    sys.stdout.write("".join(lines))
    return EXIT_OK


def _max_dim(args) -> int:
    env = os.environ.get("EVOTENSOR_MAX_ORBIT")
    if env:
        try:
            return int(env)
        except ValueError:
            raise PreconditionError(f"EVOTENSOR_MAX_ORBIT must be an integer, got {env!r}") from None
    return args.max_dim


def _parse_split(text: str, dim: int) -> tuple[int, int]:
    try:
        n, k = (int(x) for x in text.split(","))
    except ValueError:
        raise PreconditionError(f"--split expects n,k; got {text!r}") from None
    if n < 2 or k < 2 or n * k != dim:
        raise PreconditionError(f"split {n},{k} does not factor dimension {dim}")
    return n, k


def cmd_decompose(args) -> int:
    e = _load(args.input)
    splits = [_parse_split(args.split, e.dim)] if args.split else decompose.block_splits(e.dim)
    if not splits:
        raise PreconditionError(f"dimension {e.dim} has no split into two factors of size > 1")
    if e.dim > _max_dim(args):
        raise PreconditionError(f"dimension {e.dim} exceeds the orbit search guard ({_max_dim(args)})")
    reasons = decompose.screen(e.matrix) if e.dim == 4 else []
    perfect = is_perfect(e)
    witness, found_split = None, None
    for n, k in splits:
        if perfect and (n, k) == (2, 2):
            witness = decompose.natural_basis_search(e)
        elif perfect:
            witness = decompose.orbit_search(e, n, k)
        else:
            # non-perfect algebras have non-monomial natural bases; only the given basis is tested
            factors = decompose.rank1_factorize(decompose.extended_matrix(e.matrix, n, k), n, k)
            if factors:
                witness = decompose.DecompositionWitness(Permutation.identity(e.dim), (1,) * e.dim,
                                                         *factors, e.matrix)
        if witness is not None:
            found_split = (n, k)
            break
    wj = None
    if witness is not None:
        wj = cls.witness_json(witness)
        wj["split"] = list(found_split)
    if not perfect:
        searched = "given basis only"
    elif e.dim == 4:
        searched = "all natural bases"
    else:
        searched = "permutation orbit"
    payload = {"screen": reasons, "witness": wj, "perfect": perfect, "searched": searched}
    lines = ["screening: " + ("passed" if not reasons else "; ".join(reasons)) + "\n"]
    if witness is None:
        lines.append(f"no Kronecker factorization found ({searched})\n")
    else:
        lines.append("permutation: " + " ".join(str(i + 1) for i in witness.sigma.images) + "\n")
        lines.append("scales: " + " ".join(format_rational(Fraction(c)) for c in witness.scales) + "\n")
        lines.append("transformed matrix:\n" + matrix_to_text(witness.transformed))
        lines.append("left factor:\n" + matrix_to_text(witness.left))
        lines.append("right factor:\n" + matrix_to_text(witness.right))
    _emit(args, payload, "".join(lines))
    return EXIT_OK


def cmd_classify(args) -> int:
    e = _load(args.input)
    if e.dim != 4:
        raise PreconditionError(f"classify needs a 4x4 structure matrix, got {e.dim}x{e.dim}")
    report = cls.classify(e)
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK


def cmd_graph(args) -> int:
    e = _load(args.input)
    g = graph.support_graph(e.matrix)
    if args.json:
        _emit(args, graph.to_adjacency_lists(g), "")
    else:
        sys.stdout.write(graph.to_dot(g, e.labels))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evotensor",
        description="Exact analysis of evolution algebras and their tensor products.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("analyze", cmd_analyze, "perfectness, annihilator, zero profile, graph connectivity")
    p.add_argument("input", help="matrix file (JSON or whitespace text, '-' for stdin)")

    p = add("kron", cmd_kron, "structure matrix of a tensor product")
    p.add_argument("left")
    p.add_argument("right")

    p = add("decompose", cmd_decompose, "screen and search for a Kronecker factorization")
    p.add_argument("input")
    p.add_argument("--split", help="block split n,k (default: every split)")
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM,
                   help="largest dimension for the n! orbit search (env EVOTENSOR_MAX_ORBIT)")

    p = add("classify", cmd_classify, "classify a 4-dimensional evolution algebra")
    p.add_argument("input")

    p = add("graph", cmd_graph, "associated directed graph as DOT (or adjacency lists with --json)")
    p.add_argument("input")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"evotensor: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"evotensor: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

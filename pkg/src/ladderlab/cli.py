"""Command-line entry point: gen, verify, search, profiles, extract, wcol,
bounds.

Exit codes are part of the stable interface: 0 = success / structure valid,
1 = verification failed or nothing found, 2 = usage or input error.  With
``--json`` every report goes to standard output as canonical JSON (sorted
keys, two-space indent, integers only) so identical inputs produce identical
bytes; without it the same facts print as aligned text.  Environment:
``LADDERLAB_SIZE_CAP`` widens the exhaustive-search guards, and
``LADDERLAB_SEED`` seeds the randomized test harnesses (the CLI itself is
fully deterministic).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ladderlab._jsonutil import canonical_json, parse_json
from ladderlab.cages import (
    cage_from_json_obj,
    cage_pipeline,
    cage_to_json_obj,
    quasi_cage_pipeline,
    validate_cage_structures,
)
from ladderlab.decomposition import (
    PairingDecomposition,
    PathDecomposition,
    TreeDecomposition,
    decomposition_from_json_obj,
    decomposition_to_json_obj,
    validate_pairing,
    validate_path_decomposition,
    validate_tree_decomposition,
)
from ladderlab.errors import (
    ArgumentError,
    LadderlabError,
    ParseError,
    SizeError,
    StructuralError,
)
from ladderlab.generators import (
    gen_bounded_degree,
    gen_pairing_seed,
    gen_pathwidth,
    gen_planar_even,
    gen_treewidth,
    save_bundle,
)
from ladderlab.graphcore import Graph, load_graph, profile_count, save_graph
from ladderlab.ladder import (
    certificate_from_json_obj,
    certificate_to_json_obj,
    greedy_semi_ladder,
    max_semi_ladder_exact,
    verify_certificate,
)
from ladderlab.sparsity import (
    bounds_table,
    degeneracy_order,
    uqw_extract,
    wcol_exact,
    wcol_of_order,
)
from ladderlab.sunflower import (
    build_alignment,
    extract_sunflower_alignment,
)

__all__ = ["main"]


def _emit(args, obj, text_lines) -> None:
    if args.json:
        sys.stdout.write(canonical_json(obj))
    else:
        for line in text_lines:
            print(line)


def _load_graph(path: str) -> Graph:
    return load_graph(path)


def _parse_vertex_set(spec: str, g: Graph) -> list[int]:
    if spec == "all":
        return list(range(g.n))
    try:
        vertices = sorted({int(part) for part in spec.split(",") if part != ""})
    except ValueError:
        raise ArgumentError(f"vertex set {spec!r} is not a comma list of integers")
    for v in vertices:
        g._check_vertex(v)
    return vertices


# -- gen --------------------------------------------------------------------


def _require_params(args, names: tuple[str, ...]) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        flags = ", ".join("--" + name for name in missing)
        raise ArgumentError(f"family {args.family!r} requires {flags}")


def _cmd_gen(args) -> int:
    out = Path(args.out)
    if args.family == "bounded-degree":
        _require_params(args, ("k", "h"))
        bundle = gen_bounded_degree(args.k, args.h)
    elif args.family == "planar-even":
        _require_params(args, ("h",))
        bundle = gen_planar_even(args.h)
    elif args.family == "pathwidth":
        _require_params(args, ("p", "d", "k"))
        bundle = gen_pathwidth(args.p, args.d, args.k)
    elif args.family == "treewidth":
        _require_params(args, ("d", "k"))
        bundle = gen_treewidth(args.d, args.k)
    else:  # pairing-seed
        _require_params(args, ("mode",))
        g, pairing = gen_pairing_seed(args.mode, args.value)
        out.mkdir(parents=True, exist_ok=True)
        save_graph(g, out / "graph.txt")
        (out / "decomposition.json").write_text(
            canonical_json(decomposition_to_json_obj(pairing))
        )
        files = ["graph.txt", "decomposition.json"]
        if args.dot:
            (out / "graph.dot").write_text(g.to_dot())
            files.append("graph.dot")
        _emit(args, {"out": str(out), "files": sorted(files)},
              [f"wrote {out / name}" for name in files])
        return 0
    save_bundle(bundle, out)
    files = ["graph.txt", "certificate.json", "meta.json"]
    if bundle.path_decomposition is not None or bundle.pairing is not None:
        files.append("decomposition.json")
    if args.dot:
        (out / "graph.dot").write_text(bundle.graph.to_dot())
        files.append("graph.dot")
    _emit(args, {"out": str(out), "files": sorted(files)},
          [f"wrote {out / name}" for name in files])
    return 0


# -- verify -----------------------------------------------------------------


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    obj = parse_json(Path(args.certificate).read_text())
    if not isinstance(obj, dict):
        raise StructuralError("certificate file must contain a JSON object")
    if "kind" in obj:
        cert = certificate_from_json_obj(obj)
        try:
            report = verify_certificate(g, cert, threads=args.threads)
        except StructuralError as exc:
            _emit(args, {"valid": False, "error": str(exc)}, [f"invalid: {exc}"])
            return 1
        text = ["valid" if report.valid else
                f"invalid: violation at (i={report.violation.i}, "
                f"j={report.violation.j}), observed "
                f"{'inf' if report.violation.observed is None else report.violation.observed}, "
                f"required {report.violation.required}"]
        _emit(args, report.to_json_obj(), text)
        return 0 if report.valid else 1
    if "type" in obj:
        decomposition = decomposition_from_json_obj(obj)
        if isinstance(decomposition, PairingDecomposition):
            report = validate_pairing(g, decomposition)
        elif isinstance(decomposition, TreeDecomposition):
            report = validate_tree_decomposition(g, decomposition)
        elif isinstance(decomposition, PathDecomposition):
            report = validate_path_decomposition(g, decomposition)
        else:  # pragma: no cover - closed enumeration
            raise StructuralError("unknown decomposition type")
        text = [f"valid (width {report.width})" if report.valid
                else f"invalid: {report.violation}"]
        _emit(args, report.to_json_obj(), text)
        return 0 if report.valid else 1
    if "P" in obj and "Q" in obj:
        structure = cage_from_json_obj(obj)
        report = validate_cage_structures(g, structure)
        text = (["valid (" + type(structure).__name__.lower() + ")"]
                if report.valid else
                ["invalid: " + failure for failure in report.failures])
        _emit(args, report.to_json_obj(), text)
        return 0 if report.valid else 1
    raise StructuralError(
        "unrecognized payload: expected a certificate ('kind'), a "
        "decomposition ('type'), or a cage structure ('P'/'Q')"
    )


# -- search -----------------------------------------------------------------


def _cmd_search(args) -> int:
    g = _load_graph(args.graph)
    if args.mode == "exact":
        cert = max_semi_ladder_exact(g, args.d)
    else:
        cert = greedy_semi_ladder(g, args.d)
    obj = certificate_to_json_obj(cert)
    text = [f"order {cert.order} (kind {cert.kind.value}, d {cert.d})",
            "a: " + " ".join(map(str, cert.a)),
            "b: " + " ".join(map(str, cert.b))]
    _emit(args, obj, text)
    return 0 if cert.order >= 1 else 1


# -- profiles ---------------------------------------------------------------


def _cmd_profiles(args) -> int:
    g = _load_graph(args.graph)
    domain = _parse_vertex_set(args.set, g)
    count = profile_count(g, domain, args.d)
    _emit(args, {"count": count, "d": args.d, "set": domain},
          [f"profiles {count}"])
    return 0


# -- extract ----------------------------------------------------------------


def _extract_base_certificate(args, g: Graph):
    if args.certificate is not None:
        return certificate_from_json_obj(
            parse_json(Path(args.certificate).read_text())
        )
    if args.d is None:
        raise ArgumentError(
            "quasi-cage/cage extraction needs --certificate or --d "
            "(to search greedily first)"
        )
    return greedy_semi_ladder(g, args.d)


def _cmd_extract(args) -> int:
    g = _load_graph(args.graph)
    if args.pipeline in ("quasi-cage", "cage"):
        cert = _extract_base_certificate(args, g)
        run = cage_pipeline if args.pipeline == "cage" else quasi_cage_pipeline
        result = run(g, cert)
        if result is None:
            _emit(args, {"found": False}, ["not found"])
            return 1
        obj = cage_to_json_obj(result)
        text = [f"{args.pipeline} of order {result.order} "
                f"(p {result.p}, q {result.q}, d {result.d})"]
        _emit(args, obj, text)
        return 0
    if args.pipeline == "sunflower-alignment":
        if args.certificate is None or args.decomposition is None:
            raise ArgumentError(
                "sunflower-alignment extraction needs --certificate and "
                "--decomposition"
            )
        cert = certificate_from_json_obj(
            parse_json(Path(args.certificate).read_text())
        )
        decomposition = decomposition_from_json_obj(
            parse_json(Path(args.decomposition).read_text())
        )
        if not isinstance(decomposition, PathDecomposition):
            raise ArgumentError(
                "sunflower-alignment extraction needs a path decomposition"
            )
        alignment = build_alignment(g, decomposition, cert)
        d = cert.d if args.d is None else args.d
        result = extract_sunflower_alignment(g, alignment, args.order, d)
        if result is None:
            _emit(args, {"found": False}, ["not found"])
            return 1
        obj = {
            "certificate": certificate_to_json_obj(result.certificate),
            "core": sorted(result.core),
            "order": result.order,
            "t": list(result.t),
        }
        text = [f"sunflower alignment of order {result.order}",
                "core: " + " ".join(map(str, sorted(result.core))),
                "t: " + " ".join(map(str, result.t))]
        _emit(args, obj, text)
        return 0
    # uqw
    if args.d is None:
        raise ArgumentError("uqw extraction needs --d")
    members = _parse_vertex_set(args.set, g)
    sigma = degeneracy_order(g)
    witness = uqw_extract(g, members, args.d, args.m, sigma)
    if witness is None:
        _emit(args, {"found": False}, ["not found"])
        return 1
    obj = witness.to_json_obj()
    text = [f"uqw witness: {len(witness.independent)} kept, "
            f"{len(witness.deleted)} deleted (d {witness.d})",
            "independent: " + " ".join(map(str, sorted(witness.independent))),
            "deleted: " + " ".join(map(str, sorted(witness.deleted)))]
    _emit(args, obj, text)
    return 0


# -- wcol -------------------------------------------------------------------


def _cmd_wcol(args) -> int:
    g = _load_graph(args.graph)
    if args.mode == "exact":
        if args.size_cap is not None:
            value, sigma = wcol_exact(g, args.d, size_cap=args.size_cap)
        else:
            value, sigma = wcol_exact(g, args.d)
    else:
        sigma = degeneracy_order(g)
        value = wcol_of_order(g, sigma, args.d)
    obj = {"d": args.d, "mode": args.mode, "order": list(sigma.order),
           "wcol": value}
    text = [f"wcol_{args.d} = {value} ({args.mode})",
            "order: " + " ".join(map(str, sigma.order))]
    _emit(args, obj, text)
    return 0


# -- bounds -----------------------------------------------------------------


def _bounds_kwargs(args) -> dict:
    kwargs = {}
    if args.delta is not None:
        kwargs["delta"] = args.delta
    if args.p is not None:
        kwargs["p"] = args.p
    if args.t is not None:
        kwargs["t"] = args.t
    return kwargs


def _format_bound_rows(rows) -> list[str]:
    header = ("class", "params", "d", "lower", "upper", "adjusted", "notes")
    table = [header]
    for row in rows:
        obj = row.to_json_obj()
        table.append((
            obj["class"],
            ",".join(f"{k}={v}" for k, v in sorted(obj["params"].items())) or "-",
            str(obj["d"]),
            "-" if obj["lower"] is None else
            (obj["lower"] if isinstance(obj["lower"], str) else obj["lower"]["text"]),
            "-" if obj["upper"] is None else
            (obj["upper"] if isinstance(obj["upper"], str) else obj["upper"]["text"]),
            ",".join(f"{k}={v}" for k, v in sorted(obj["adjusted"].items())) or "-",
            obj["notes"] or "-",
        ))
    widths = [max(len(line[col]) for line in table) for col in range(len(header))]
    return ["  ".join(cell.ljust(widths[col]) for col, cell in enumerate(line)).rstrip()
            for line in table]


def _cmd_bounds(args) -> int:
    d_max = args.d if args.d_max is None else args.d_max
    if d_max < args.d:
        raise ArgumentError("--d-max must be >= --d")
    kwargs = _bounds_kwargs(args)
    rows = []
    for d in range(args.d, d_max + 1):
        rows.extend(bounds_table(args.graph_class, d, **kwargs).rows)
    obj = {"rows": [row.to_json_obj() for row in rows]}
    _emit(args, obj, _format_bound_rows(rows))
    return 0


# -- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ladderlab",
        description="Generate, verify, search, and bound distance-d ladder "
                    "structures.",
    )
    parser.add_argument("--json", action="store_true",
                        help="canonical JSON output (byte-stable)")
    parser.add_argument("--threads", type=int, default=1,
                        help="parallel BFS batch width where supported")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a witness family bundle")
    gen.add_argument("family", choices=["bounded-degree", "planar-even",
                                        "pathwidth", "treewidth",
                                        "pairing-seed"])
    gen.add_argument("--k", type=int, help="family width parameter")
    gen.add_argument("--h", type=int, help="family height parameter")
    gen.add_argument("--p", type=int, help="pathwidth parameter")
    gen.add_argument("--d", type=int, help="distance parameter")
    gen.add_argument("--mode", choices=["base", "lengthen", "widen"],
                     help="pairing-seed mode")
    gen.add_argument("--value", type=int, help="pairing-seed mode parameter")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--dot", action="store_true",
                     help="also write graph.dot")
    gen.set_defaults(run=_cmd_gen)

    verify = sub.add_parser("verify", help="verify a stored structure")
    verify.add_argument("graph")
    verify.add_argument("certificate",
                        help="JSON file: certificate, decomposition, or cage")
    verify.set_defaults(run=_cmd_verify)

    search = sub.add_parser("search", help="search for a semi-ladder")
    search.add_argument("graph")
    search.add_argument("--d", type=int, required=True)
    search.add_argument("--mode", choices=["exact", "greedy"],
                        default="greedy")
    search.set_defaults(run=_cmd_search)

    profiles = sub.add_parser("profiles",
                              help="count distance profiles on a vertex set")
    profiles.add_argument("graph")
    profiles.add_argument("--set", default="all",
                          help="comma list of vertices, or 'all'")
    profiles.add_argument("--d", type=int, required=True)
    profiles.set_defaults(run=_cmd_profiles)

    extract = sub.add_parser("extract", help="run an extraction pipeline")
    extract.add_argument("graph")
    extract.add_argument("--pipeline", required=True,
                         choices=["quasi-cage", "cage",
                                  "sunflower-alignment", "uqw"])
    extract.add_argument("--certificate", help="semi-ladder JSON input")
    extract.add_argument("--decomposition",
                         help="path decomposition JSON (sunflower-alignment)")
    extract.add_argument("--d", type=int, help="distance parameter")
    extract.add_argument("--m", type=int, default=2,
                         help="uqw target independent-set size")
    extract.add_argument("--order", type=int, default=2,
                         help="sunflower-alignment target order")
    extract.add_argument("--set", default="all",
                         help="uqw input vertex set (comma list or 'all')")
    extract.set_defaults(run=_cmd_extract)

    wcol = sub.add_parser("wcol", help="weak colouring number")
    wcol.add_argument("graph")
    wcol.add_argument("--d", type=int, required=True)
    wcol.add_argument("--mode", choices=["heuristic", "exact"],
                      default="heuristic")
    wcol.add_argument("--size-cap", type=int, dest="size_cap",
                      help="override the exact-mode size guard")
    wcol.set_defaults(run=_cmd_wcol)

    bounds = sub.add_parser("bounds", help="semi-ladder order bound table")
    bounds.add_argument("--class", dest="graph_class", required=True,
                        choices=["degree", "planar", "pathwidth",
                                 "treewidth", "kt", "wcol", "all"])
    bounds.add_argument("--d", type=int, required=True)
    bounds.add_argument("--d-max", type=int, dest="d_max",
                        help="evaluate a d range (inclusive)")
    bounds.add_argument("--delta", type=int, help="degree bound")
    bounds.add_argument("--p", type=int, help="pathwidth bound")
    bounds.add_argument("--t", type=int, help="clique-minor / wcol order")
    bounds.set_defaults(run=_cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArgumentError, SizeError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LadderlabError:
        raise


if __name__ == "__main__":
    sys.exit(main())

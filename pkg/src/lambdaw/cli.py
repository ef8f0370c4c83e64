"""Command line front end: ``build``, ``verify``, ``graph`` and ``mutate``.

Instances are JSON files::

    {"quiver": {"vertices": 3, "arrows": [[3, 2], [3, 1], [2, 1]]},
     "word": [1, 2, 3, 1, 3, 2, 1],
     "options": {"field": "q", "seed": 0, "suites": ["qh", "graph"]}}

``word`` may also be a string such as ``"s1 s2 s1"`` or ``"121"``.
Exit status: 0 verified, 1 falsified, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .coxeter import InputError, Quiver, build_quiver, certify_word, last_occurrences
from .linalg import Field
from .modops import (NotAModuleError, WordAlgebra, ext1_dim, lambda_w, layers, omega_tilde,
                     standard_ct)
from .preproj import ResourceCapExceeded, loewy_diagram, rep_to_json

SCHEMA = "lambdaw-report/1"
SUITES = ("ct", "qh", "ringel", "duality", "functor", "omega-path", "graph")
EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


# instances -------------------------------------------------------------------------

@dataclass
class Instance:
    quiver: Quiver
    word: list[int]
    field: Field
    seed: int
    suites: list[str]
    max_nodes: int
    max_edges: int
    source: dict

    def algebra(self) -> WordAlgebra:
        return WordAlgebra(self.quiver, certify_word(self.quiver, self.word), self.field)


def parse_word(raw) -> list[int]:
    if isinstance(raw, list):
        for k, x in enumerate(raw, 1):
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError("malformed-word", f"letter {x!r} at position {k} is not an integer", k)
        return list(raw)
    if not isinstance(raw, str):
        raise InputError("malformed-word", "word must be a list or a string")
    text = raw.strip()
    if re.fullmatch(r"\d+", text):
        return [int(c) for c in text]
    tokens = re.findall(r"\S+", text.replace("*", " ").replace(",", " "))
    out = []
    for k, tok in enumerate(tokens, 1):
        m = re.fullmatch(r"s?_?(\d+)", tok)
        if not m:
            raise InputError("malformed-word", f"cannot read letter {tok!r} at position {k}", k)
        out.append(int(m.group(1)))
    return out


def load_instance(path: str, overrides: dict | None = None) -> Instance:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError("missing-file", f"no such instance file: {path}")
    except json.JSONDecodeError as e:
        raise InputError("malformed-json", f"{path}: {e.msg} at line {e.lineno}", e.pos)
    if not isinstance(data, dict) or "quiver" not in data or "word" not in data:
        raise InputError("malformed", "instance needs 'quiver' and 'word'")
    qd = data["quiver"]
    q = build_quiver(qd.get("vertices"), qd.get("arrows", []))
    word = parse_word(data["word"])
    certify_word(q, word)
    opts = dict(data.get("options", {}))
    opts.update({k: v for k, v in (overrides or {}).items() if v is not None})
    suites = opts.get("suites") or list(SUITES)
    if isinstance(suites, str):
        suites = [s.strip() for s in suites.split(",") if s.strip()]
    for s in suites:
        if s not in SUITES:
            raise InputError("unknown-suite", f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
    try:
        field = Field.parse(str(opts.get("field", "q")))
    except ValueError as e:
        raise InputError("bad-field", str(e))
    return Instance(q, word, field, int(opts.get("seed", 0)), suites,
                    int(opts.get("max_nodes", 10000)), int(opts.get("max_edges", 50000)), data)


# suites ------------------------------------------------------------------------------

def _clean(obj):
    """JSON-ready copy: tuples to lists, non-string keys to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items() if not str(k).startswith("_")}
    if isinstance(obj, (list, tuple)):
        return [_clean(x) for x in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def suite_ct(A, M, inst) -> dict:
    from .tilting import is_cluster_tilting
    ok, diag = is_cluster_tilting(M, A)
    ext = sum(ext1_dim(X, Y, A) for X in M.summands for Y in M.summands)
    last = set(last_occurrences(A.word).values())
    proj_ok = [p for p, flag in zip(M.labels, M.projective) if flag] == sorted(last)
    return {"theorem": "standard_object_is_cluster_tilting", "ext_total": ext,
            "summands": diag["summands"], "projective_positions": sorted(last),
            "projectives_match": proj_ok, "diagnostic": diag,
            "verified": ok and ext == 0 and proj_ok}


def suite_qh(A, M, inst, ctx) -> dict:
    from . import quasihered as qh
    G, D = ctx["gamma"], ctx["delta"]
    rep = qh.quasihereditary_report(A, M, G, D)
    aus = qh.two_auslander_certificate(G)
    rep["cartan"] = G.cartan()
    return {"theorem": "strongly_quasihereditary_2_auslander", "quasihereditary": rep,
            "two_auslander": aus, "verified": rep["verified"] and aus["verified"]}


def suite_ringel(A, M, inst, ctx) -> dict:
    from . import quasihered as qh
    G, D = ctx["gamma"], ctx["delta"]
    U = qh.characteristic_tilting(A, M, G, D, samples=20, seed=inst.seed)
    R = qh.ringel_dual_check(A, M, G, seed=inst.seed)
    ctx["ringel"] = R
    return {"theorem": "characteristic_tilting_and_ringel_dual", "tilting": U,
            "ringel": R, "verified": U["verified"] and R["verified"]}


def suite_duality(A, M, inst, ctx) -> dict:
    import random
    from . import quasihered as qh
    from .modops import random_submodule
    G, D = ctx["gamma"], ctx["delta"]
    dual = qh.duality_check(A, M, G, D, 20, 20, seed=inst.seed)
    rng = random.Random(inst.seed)
    filt = []
    for _ in range(5):
        X = random_submodule(A, rng, copies=2, generators=rng.choice([1, 2]))
        try:
            steps = qh.transport_layer_filtration(X, A, M, G)
            filt.append({"dims": list(X.dims),
                         "layers": [[s.layer, s.multiplicity] for s in steps]})
        except Exception as e:  # reported, counted as a failure
            filt.append({"dims": list(X.dims), "error": str(e)})
    ok = all("error" not in f for f in filt)
    return {"theorem": "duality_sub_and_delta_filtered", "duality": dual,
            "layer_filtrations": filt, "verified": dual["verified"] and ok}


def suite_functor(A, M, inst, ctx) -> dict:
    from . import functorial as fu
    cuts = [c for c in (1, 2) if c < len(A.word)]
    out = []
    ok = True
    for c in cuts:
        S = fu.WordSplit(A, c)
        parts = {"split": S.label(), "regular": fu.identify_regular(S),
                 "functor": fu.verify_functor_props(S, 10, inst.seed),
                 "subfactor_ct": fu.subfactor_ct_check(S, 10, inst.seed),
                 "subfactor_end": fu.subfactor_end_check(S, inst.seed)}
        ok = ok and all(v["verified"] for k, v in parts.items() if k != "split")
        out.append(parts)
    return {"theorem": "tensor_functor_and_subfactor", "splits": out,
            "dynkin": A.quiver.is_dynkin(), "verified": ok}


def suite_omega_path(A, M, inst, ctx) -> dict:
    from . import functorial as fu
    from .tilting import verify_omega_path
    P = verify_omega_path(A, M)
    ctx["omega_path"] = P
    syz = fu.syzygy_tensor_check(A)
    return {"theorem": "mutation_path_to_syzygy_object", "schedule": P.schedule,
            "stage_one_length": P.stage_one_length, "checkpoint": P.checkpoint,
            "endpoint_matches": P.endpoint_matches, "two_arrow_checks": P.two_arrow_checks,
            "syzygy_comparison": syz, "verified": P.verified and syz["verified"]}


def build_graph(A, M, inst, ctx):
    from .tilting import ct_graph, verify_omega_path
    O = omega_tilde(M, A)
    P = ctx.get("omega_path") or verify_omega_path(A, M, certify="incremental")
    ctx["omega_path"] = P
    g = ct_graph(M, A, inst.max_nodes, inst.max_edges, targets=[O])
    g.marks = {"M": g.find(M, A)}
    o = g.find(O, A)
    if o is not None:
        g.marks["OmegaM"] = o
    g.marks = {k: v for k, v in g.marks.items() if v is not None}
    path = [g.find(X, A) for X in P.objects]
    g.path = path if all(p is not None for p in path) else []
    return g


def suite_graph(A, M, inst, ctx) -> dict:
    g = build_graph(A, M, inst, ctx)
    ctx["graph"] = g
    expect = sum(1 for p in M.projective if not p)
    degs = g.degrees()
    same = "M" in g.marks and "OmegaM" in g.marks and \
        g.marks["OmegaM"] in g.component(g.marks["M"])
    return {"theorem": "syzygy_object_in_component", "nodes": len(g.nodes),
            "edges": len(g.undirected_edges()), "partial": g.partial, "capped": g.capped,
            "expected_degree": expect, "degrees": sorted(set(degs.values())),
            "involutive": g.symmetric(), "same_component": same,
            "path_in_graph": bool(g.path),
            "verified": same and g.symmetric() and all(d == expect for d in degs.values())}


def run_suites(inst: Instance, timings: dict | None = None) -> tuple[dict, dict]:
    from . import quasihered as qh
    A = inst.algebra()
    M = standard_ct(A)
    ctx: dict = {}
    if {"qh", "ringel", "duality"} & set(inst.suites):
        ctx["gamma"] = qh.end_algebra(M)
        ctx["delta"] = qh.delta_system(A, M, ctx["gamma"])
    runners = {"ct": lambda: suite_ct(A, M, inst),
               "qh": lambda: suite_qh(A, M, inst, ctx),
               "ringel": lambda: suite_ringel(A, M, inst, ctx),
               "duality": lambda: suite_duality(A, M, inst, ctx),
               "functor": lambda: suite_functor(A, M, inst, ctx),
               "omega-path": lambda: suite_omega_path(A, M, inst, ctx),
               "graph": lambda: suite_graph(A, M, inst, ctx)}
    results = {}
    for name in SUITES:
        if name not in inst.suites:
            continue
        t0 = time.perf_counter()
        try:
            results[name] = _clean(runners[name]())
        except ResourceCapExceeded:
            raise
        except Exception as e:  # a crash inside a suite falsifies that suite only
            results[name] = {"verified": False, "error": f"{type(e).__name__}: {e}"}
        if timings is not None:
            timings[name] = time.perf_counter() - t0
    report = {
        "schema": SCHEMA,
        "tool_version": __version__,
        "instance": {"quiver": inst.quiver.to_json(), "word": inst.word},
        "field": inst.field.name,
        "seed": inst.seed,
        "suites": results,
        "verified": all(r.get("verified") for r in results.values()),
        "partial": bool(results.get("graph", {}).get("partial", False)),
        "capped": bool(results.get("graph", {}).get("capped", False)),
    }
    ctx["algebra"], ctx["object"] = A, M
    return report, ctx


# output ----------------------------------------------------------------------------

def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def summary_rows(report: dict) -> list[list[str]]:
    rows = [["suite", "theorem", "verified"]]
    for name, r in report["suites"].items():
        rows.append([name, str(r.get("theorem", "")), "yes" if r.get("verified") else "no"])
    return rows


def print_delimited(title: str, rows: list[list[str]], out=None):
    out = out or sys.stdout
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    out.write(f"--- {title} ---\n{buf.getvalue()}--- end {title} ---\n")


def write_figures(outdir: Path, ctx: dict, report: dict) -> list[str]:
    from . import plotting
    made = []
    A, M = ctx["algebra"], ctx["object"]
    O = omega_tilde(M, A)
    made.append(str(plotting.plot_dimension_vectors(
        {"standard summands": [list(X.dims) for X in M.summands],
         "layers": [list(L.dims) for L, _ in layers(A)],
         "syzygy object": [list(X.dims) for X in O.summands]},
        outdir / "figures" / "dimension_vectors.png")))
    cartans = {}
    if "gamma" in ctx:
        cartans["End(M)"] = ctx["gamma"].cartan()
    R = ctx.get("ringel")
    if R:
        cartans["End(Omega M)"] = R["cartan_end_omega"]
    if cartans:
        made.append(str(plotting.plot_cartan(cartans, outdir / "figures" / "cartan.png")))
    if "graph" in ctx:
        made.append(str(plotting.plot_ct_graph(ctx["graph"], outdir / "figures" / "ct_graph.png",
                                               seed=report.get("seed", 0))))
    return made


# commands ----------------------------------------------------------------------------

def cmd_build(args) -> int:
    inst = load_instance(args.instance, {"field": args.field})
    A = inst.algebra()
    M = standard_ct(A)
    L = layers(A)
    R, Ps = lambda_w(A)
    out = Path(args.out)
    print(f"word {' '.join(f's{i}' for i in inst.word)}  l(w)={len(inst.word)}  "
          f"dim Lambda_w={R.dim}  field={inst.field.name}")
    rows = [["position", "letter", "dims", "layer_dims", "projective"]]
    diagrams = []
    for j, (X, (Lj, _)) in enumerate(zip(M.summands, L), 1):
        rows.append([str(j), str(inst.word[j - 1]), " ".join(map(str, X.dims)),
                     " ".join(map(str, Lj.dims)), "yes" if M.projective[j - 1] else "no"])
        diagrams.append(f"M{j}:\n{loewy_diagram(X)}\nL{j}:\n{loewy_diagram(Lj)}\n")
        _write(out / "modules" / f"M{j}.json", json.dumps(rep_to_json(X), sort_keys=True))
        _write(out / "modules" / f"L{j}.json", json.dumps(rep_to_json(Lj), sort_keys=True))
    for v, P in enumerate(Ps, 1):
        _write(out / "modules" / f"P{v}.json", json.dumps(rep_to_json(P), sort_keys=True))
    print_delimited("summands", rows)
    text = "\n".join(diagrams)
    print(text)
    _write(out / "diagrams.txt", text)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    _write(out / "summands.csv", buf.getvalue())
    if args.figures:
        from . import plotting
        plotting.plot_dimension_vectors(
            {"standard summands": [list(X.dims) for X in M.summands],
             "layers": [list(Lj.dims) for Lj, _ in L]},
            out / "figures" / "dimension_vectors.png")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_instance(args.instance, {"field": args.field, "seed": args.seed,
                                         "suites": args.suites, "max_nodes": args.max_nodes})
    timings: dict = {}
    report, ctx = run_suites(inst, timings)
    out = Path(args.out)
    _write(out / "report.json", json.dumps(report, indent=2, sort_keys=True) + "\n")
    rows = summary_rows(report)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    _write(out / "summary.csv", buf.getvalue())
    print_delimited("verification", rows)
    print_delimited("timings", [["suite", "seconds"]] +
                    [[k, f"{v:.2f}"] for k, v in timings.items()])
    if "graph" in ctx:
        _write(out / "graph.dot", ctx["graph"].to_dot())
        _write(out / "graph.json", json.dumps(_clean(ctx["graph"].to_json()), sort_keys=True))
    if args.figures:
        for f in write_figures(out, ctx, report):
            print(f"figure {f}")
    if not report["verified"]:
        return EXIT_FALSIFIED
    if report["capped"]:
        return EXIT_CAP
    return EXIT_OK


def cmd_graph(args) -> int:
    inst = load_instance(args.instance, {"field": args.field, "max_nodes": args.max_nodes})
    A = inst.algebra()
    M = standard_ct(A)
    ctx: dict = {}
    res = _clean(suite_graph(A, M, inst, ctx))
    g = ctx["graph"]
    out = Path(args.out)
    _write(out / "graph.dot", g.to_dot(dims=args.dims))
    _write(out / "graph.json", json.dumps(_clean(g.to_json()), sort_keys=True))
    rows = [["key", "value"]] + [[k, json.dumps(v)] for k, v in res.items()]
    print_delimited("graph", rows)
    if args.figures:
        from . import plotting
        print(f"figure {plotting.plot_ct_graph(g, out / 'figures' / 'ct_graph.png')}")
    if not res["verified"]:
        return EXIT_FALSIFIED
    return EXIT_CAP if res["capped"] else EXIT_OK


def cmd_mutate(args) -> int:
    from .tilting import MutationError, is_cluster_tilting, mutate
    inst = load_instance(args.instance, {"field": args.field})
    A = inst.algebra()
    M = standard_ct(A)
    script = []
    if args.replay:
        try:
            script = json.loads(Path(args.replay).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise InputError("bad-replay", f"cannot read replay script: {e}")
        if not isinstance(script, list) or not all(isinstance(k, int) for k in script):
            raise InputError("bad-replay", "replay script must be a JSON list of positions")
    if args.at is not None:
        script = script + [args.at]
    out = Path(args.out)
    rows = [["step", "position", "removed_dims", "middle_dims", "added_dims"]]
    for step, k in enumerate(script, 1):
        if k not in M.labels:
            raise InputError("bad-position", f"position {k} outside 1..{len(M.labels)}", step)
        try:
            M, pair = mutate(M, M.position(k), A)
        except MutationError as e:
            raise InputError("projective-position", str(e), step)
        rows.append([str(step), str(k), " ".join(map(str, pair.removed.dims)),
                     " ".join(map(str, pair.middle.dims)), " ".join(map(str, pair.added.dims))])
        _write(out / "modules" / f"mutated_step{step}_pos{k}.json",
               json.dumps(rep_to_json(pair.added), sort_keys=True))
    ok, diag = is_cluster_tilting(M, A)
    print_delimited("mutations", rows)
    print(loewy_diagram(M.summands[M.position(script[-1])]) if script else "no mutation")
    _write(out / "mutation_script.json", json.dumps(script))
    return EXIT_OK if ok else EXIT_FALSIFIED


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lambdaw", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("instance")
        sp.add_argument("--field", help="q or fp:<prime>")
        sp.add_argument("--out", default="lambdaw-out")
        sp.add_argument("--figures", action="store_true", help="render PNG figures")

    b = sub.add_parser("build", help="standard summands, layers and Lambda_w")
    common(b)
    b.set_defaults(func=cmd_build)
    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suites", help=f"comma separated subset of {','.join(SUITES)}")
    v.add_argument("--seed", type=int)
    v.add_argument("--max-nodes", type=int)
    v.set_defaults(func=cmd_verify)
    g = sub.add_parser("graph", help="explore the cluster tilting graph")
    common(g)
    g.add_argument("--max-nodes", type=int)
    g.add_argument("--dims", action="store_true", help="dimension vectors in DOT labels")
    g.set_defaults(func=cmd_graph)
    m = sub.add_parser("mutate", help="mutate the standard object")
    common(m)
    m.add_argument("--at", type=int, help="1-based position")
    m.add_argument("--replay", help="JSON list of positions applied first")
    m.set_defaults(func=cmd_mutate)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        where = f" (position {e.position})" if e.position is not None else ""
        print(f"input error [{e.reason}]{where}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NotAModuleError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceCapExceeded as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit status: 0 on success, 1 on a typed domain error (its name is written to
standard error), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional

from topgraph import constructions as cons
from topgraph import io
from topgraph.algebra import identify_finite_dim
from topgraph.cardinal import format_cardinal
from topgraph.errors import TopGraphError
from topgraph.factor import compose, is_regular, is_vertex_surjective, validate_factor_map
from topgraph.graph import (
    TopGraph,
    classify_vertices,
    enumerate_paths,
    is_topologically_free,
    loops,
    path_count_from,
    validate_graph,
)
from topgraph.projective import (
    ProjectiveSystem,
    bratteli_to_system,
    limit_algebra_report,
    obstruction_set,
    recover_bratteli,
    stationary_limit,
    thread_approximation,
    validate_system,
)


def fmt_set(xs) -> str:
    xs = sorted(xs)
    return "{" + ", ".join(xs) + "}" if xs else "∅"


def _coord(x) -> str:
    return "∞" if x is None else x


class Output:
    def __init__(self, args):
        self.structured = getattr(args, "format", "text") == "structured"
        self.lines: list = []
        self.data: dict = {}

    def line(self, text: str = ""):
        self.lines.append(text)

    def put(self, key, value):
        self.data[key] = value

    def render(self) -> str:
        if self.structured:
            return io.dumps(self.data)
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _emit_graph(args, out: Output, g: TopGraph, key: str = "graph"):
    obj = io.graph_to_obj(g)
    if args.out:
        io.save_graph(g, args.out)
        out.line(f"wrote {args.out}: {len(g.vertices)} vertices, {len(g.edges)} edge classes")
        out.put("written", args.out)
    else:
        out.lines.append(io.dumps(obj).rstrip("\n"))
    out.put(key, obj)


def _vertex_list(raw: Optional[str]) -> list:
    if not raw:
        return []
    return [v for v in (s.strip() for s in raw.split(",")) if v]


def _load_system(args) -> ProjectiveSystem:
    if args.stationary:
        F = io.load_graph(args.stationary[0])
        m = io.load_map(args.stationary[1])
        if m.source != F or m.target != F:
            raise io.FormatError("the stationary map must be a self-map of the given graph")
        return ProjectiveSystem.from_stationary(F, m)
    if not args.system:
        raise io.FormatError("give a system file or --stationary GRAPH MAP")
    return io.load_system(args.system)


def _require_stationary(s: ProjectiveSystem):
    if not s.stationary:
        raise io.FormatError("this command needs a stationary system")
    return s.graphs[0], s.maps[0]


# -- commands ----------------------------------------------------------------


def cmd_validate(args, out):
    g = io.load_graph(args.graph)
    validate_graph(g)
    out.line("ok")
    out.put("valid", True)


def cmd_classify(args, out):
    c = classify_vertices(io.load_graph(args.graph))
    out.line(f"sce = {fmt_set(c.sce)}")
    out.line(f"inf = {fmt_set(c.inf)}")
    out.line(f"rg = {fmt_set(c.rg)}")
    for name in ("sce", "inf", "rg", "fin", "sg"):
        out.put(name, sorted(getattr(c, name)))


def cmd_paths(args, out):
    g = io.load_graph(args.graph)
    pe = enumerate_paths(g, args.max_len)
    counts = {}
    for n in range(args.max_len + 1):
        out.line(f"length {n}: {pe.count(n)}")
        counts[str(n)] = {v: format_cardinal(pe.count(n, v)) for v in g.sorted_vertices()}
        for v in g.sorted_vertices():
            k = pe.count(n, v)
            if k:
                out.line(f"  from {v}: {k}")
    if args.list:
        for p in pe.paths:
            out.line(f"{p.dom} -> {p.ran}: {p}")
    out.put("counts", counts)
    out.put("paths", [{"dom": p.dom, "ran": p.ran, "steps": [list(s) for s in p.steps]} for p in pe.paths])
    if args.from_vertex:
        total = path_count_from(g, args.from_vertex)
        out.line(f"paths from {args.from_vertex}: {total}")
        out.put("path_count_from", format_cardinal(total))


def cmd_free(args, out):
    g = io.load_graph(args.graph)
    free, witness = is_topologically_free(g)
    out.line("free" if free else f"not free: loop without entrances based at {witness.dom}: {witness}")
    out.put("free", free)
    out.put("witness", None if witness is None else [list(s) for s in witness.steps])
    if args.loops:
        for p in loops(g, args.loops):
            out.line(f"loop at {p.dom}: {p}")


def cmd_map_validate(args, out):
    m = io.load_map(args.map)
    validate_factor_map(m)
    reg, surj = is_regular(m), is_vertex_surjective(m)
    out.line("ok")
    out.line(f"regular: {str(reg).lower()}")
    out.line(f"vertex-surjective: {str(surj).lower()}")
    out.put("valid", True)
    out.put("regular", reg)
    out.put("vertex_surjective", surj)


def cmd_map_compose(args, out):
    outer, inner = io.load_map(args.outer), io.load_map(args.inner)
    validate_factor_map(outer)
    validate_factor_map(inner)
    m = compose(outer, inner)
    obj = io.map_to_obj(m)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(io.dumps(obj))
        out.line(f"wrote {args.out}")
    else:
        out.lines.append(io.dumps(obj).rstrip("\n"))
    out.put("map", obj)


def cmd_ey(args, out):
    _emit_graph(args, out, cons.attach_e_y(io.load_graph(args.graph), _vertex_list(args.y)))


def cmd_toeplitz(args, out):
    _emit_graph(args, out, cons.toeplitz_graph(io.load_graph(args.graph)))


def cmd_subgraph(args, out):
    g = io.load_graph(args.graph)
    chain = [_vertex_list(v) for v in args.vertices]
    # an increasing chain of vertex sets yields an increasing chain of subgraphs
    for k, V in enumerate(chain[:-1]):
        sub = cons.subgraph_f_v(g, V)
        out.line(f"stage {k}: {len(sub.vertices)} vertices, {len(sub.edges)} edge classes")
    _emit_graph(args, out, cons.subgraph_f_v(g, chain[-1]))


def cmd_defect(args, out):
    rep = cons.subalgebra_defect(io.load_graph(args.graph), io.load_graph(args.sub))
    out.line(f"Y = {fmt_set(rep.y)}")
    out.put("y", sorted(rep.y))
    _emit_graph(args, out, rep.graph)


def cmd_hereditary(args, out):
    h = cons.is_hereditary_v(io.load_graph(args.graph), _vertex_list(args.vertices))
    out.line(str(h).lower())
    out.put("hereditary", h)


def cmd_full(args, out):
    full, depths = cons.is_full_v(io.load_graph(args.graph), _vertex_list(args.vertices))
    out.line(str(full).lower())
    for v in sorted(depths):
        out.line(f"  {v}: n = {depths[v]}")
    out.put("full", full)
    out.put("depths", dict(sorted(depths.items())))


def cmd_amplify(args, out):
    _emit_graph(args, out, cons.amplify(io.load_graph(args.graph), args.n, args.variant))


def cmd_union(args, out):
    _emit_graph(args, out, cons.disjoint_union(*(io.load_graph(p) for p in args.graphs)))


def cmd_product(args, out):
    _emit_graph(args, out, cons.product_with_set(io.load_graph(args.graph), args.n))


def cmd_compactify(args, out):
    _emit_graph(args, out, cons.one_point_compactify(io.load_graph(args.graph)))


def cmd_system_validate(args, out):
    rep = validate_system(_load_system(args))
    out.line(f"regular: {str(rep.regular).lower()}")
    out.line(f"surjective: {str(rep.surjective).lower()}")
    out.put("regular", rep.regular)
    out.put("surjective", rep.surjective)


def cmd_limit(args, out):
    F, m = _require_stationary(_load_system(args))
    _emit_graph(args, out, stationary_limit(F, m), key="limit")


def cmd_threads(args, out):
    ts = thread_approximation(_load_system(args), args.depth)
    counts = ts.real_counts()
    out.line(f"vertex threads: {len(ts.vertex_threads)}")
    out.line(f"everywhere real: {len(ts.everywhere_real())}")
    out.line("real coordinates per stage: " + " ".join(str(k) for k in counts))
    for t in ts.vertex_threads:
        out.line("  (" + ", ".join(_coord(x) for x in t) + ")")
    out.put("vertex_threads", [list(t) for t in ts.vertex_threads])
    out.put("edge_threads", [list(t) for t in ts.edge_threads])
    out.put("real_counts", counts)


def cmd_obstruction(args, out):
    F, m = _require_stationary(_load_system(args))
    limit = stationary_limit(F, m)
    y = obstruction_set(F, m, limit)
    out.line(f"Y = {fmt_set(y)}")
    out.put("y", sorted(y))


def cmd_report(args, out):
    F, m = _require_stationary(_load_system(args))
    rep = limit_algebra_report(F, m)
    out.line(f"limit vertices = {fmt_set(rep.limit.vertices)}")
    out.line("limit edges = " + fmt_set(f"{c.id}: {c.dom}->{c.ran} ×{c.mult}" for c in rep.limit.edges))
    out.line(f"Y = {fmt_set(rep.y)}")
    out.line(f"E_Y vertices = {fmt_set(rep.e_y.vertices)}")
    out.line("colim ≅ O(E_Y)")
    if rep.e_y_algebra is not None:
        out.line(f"colim ≅ {rep.e_y_algebra}")
    if rep.limit_algebra is not None:
        out.line(f"O(limit) ≅ {rep.limit_algebra}")
    out.line(f"colim ≅ O(limit): {str(rep.iso_to_limit).lower()}")
    for note in rep.notes:
        out.line(note)
    out.put("limit", io.graph_to_obj(rep.limit))
    out.put("y", sorted(rep.y))
    out.put("e_y", io.graph_to_obj(rep.e_y))
    out.put("iso_to_limit", rep.iso_to_limit)
    out.put("limit_algebra", None if rep.limit_algebra is None else io.algebra_to_obj(rep.limit_algebra))
    out.put("colim_algebra", None if rep.e_y_algebra is None else io.algebra_to_obj(rep.e_y_algebra))
    out.put("notes", list(rep.notes))


def cmd_bratteli(args, out):
    if args.action == "import":
        b = io.load_bratteli(args.file)
        s = bratteli_to_system(b)
        rep = validate_system(s)
        for n, g in enumerate(s.graphs):
            out.line(f"stage {n}: {identify_finite_dim(g)}")
        out.line(f"regular: {str(rep.regular).lower()}")
        out.line(f"surjective: {str(rep.surjective).lower()}")
        obj = io.system_to_obj(s)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(io.dumps(obj))
            out.line(f"wrote {args.out}")
        out.put("system", obj)
        out.put("stages", [io.algebra_to_obj(identify_finite_dim(g)) for g in s.graphs])
    else:
        b = recover_bratteli(io.load_system(args.file))
        obj = io.bratteli_to_obj(b)
        out.lines.append(io.dumps(obj).rstrip("\n"))
        out.put("bratteli", obj)


def cmd_identify(args, out):
    a = identify_finite_dim(io.load_graph(args.graph))
    out.line(str(a))
    out.put("summands", io.algebra_to_obj(a))


def cmd_dot(args, out):
    text = io.to_dot(io.load_graph(args.graph))
    out.lines.append(text.rstrip("\n"))
    out.put("dot", text)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", help="write the produced graph or map to this file")

    p = argparse.ArgumentParser(prog="topgraph", description="Discrete topological graph calculus.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    def system_args(sp):
        sp.add_argument("system", nargs="?", help="system file")
        sp.add_argument("--stationary", nargs=2, metavar=("GRAPH", "MAP"))

    add("validate", cmd_validate, "check a graph file").add_argument("graph")
    add("classify", cmd_classify, "sources, infinite receivers, regular vertices").add_argument("graph")

    sp = add("paths", cmd_paths, "count and list paths")
    sp.add_argument("graph")
    sp.add_argument("--max-len", type=int, default=2)
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--from", dest="from_vertex", help="total path count from a vertex (acyclic graphs)")

    sp = add("free", cmd_free, "topological freeness")
    sp.add_argument("graph")
    sp.add_argument("--loops", type=int, metavar="MAX_LEN", help="also list loops up to this length")

    add("map-validate", cmd_map_validate, "check a factor map").add_argument("map")
    sp = add("map-compose", cmd_map_compose, "compose OUTER after INNER")
    sp.add_argument("outer")
    sp.add_argument("inner")

    sp = add("ey", cmd_ey, "attach copies of regular vertices Y")
    sp.add_argument("graph")
    sp.add_argument("--y", default="", help="comma-separated vertex ids")
    add("toeplitz", cmd_toeplitz, "attach copies of all regular vertices").add_argument("graph")

    sp = add("subgraph", cmd_subgraph, "subgraph of edges into V; repeat -V for a chain")
    sp.add_argument("graph")
    sp.add_argument("-V", "--vertices", action="append", required=True)

    sp = add("defect", cmd_defect, "regular vertices of a subgraph that lose edges")
    sp.add_argument("graph")
    sp.add_argument("sub")

    sp = add("hereditary", cmd_hereditary, "is V closed under taking domains of incoming edges")
    sp.add_argument("graph")
    sp.add_argument("-V", "--vertices", required=True)
    sp = add("full", cmd_full, "fullness certificate for hereditary V")
    sp.add_argument("graph")
    sp.add_argument("-V", "--vertices", required=True)

    sp = add("amplify", cmd_amplify, "attach N copies of the vertex set")
    sp.add_argument("graph")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--variant", choices=("chain", "star"), default="chain")

    add("union", cmd_union, "disjoint union").add_argument("graphs", nargs="+")
    sp = add("product", cmd_product, "product with an n-point discrete space")
    sp.add_argument("graph")
    sp.add_argument("-n", type=int, required=True)
    add("compactify", cmd_compactify, "add the point at infinity").add_argument("graph")

    system_args(add("system-validate", cmd_system_validate, "validate a projective system"))
    system_args(add("limit", cmd_limit, "stationary projective limit"))
    sp = add("threads", cmd_threads, "coherent threads up to a depth")
    system_args(sp)
    sp.add_argument("--depth", type=int, required=True)
    system_args(add("obstruction", cmd_obstruction, "obstruction set Y of a stationary system"))
    system_args(add("report", cmd_report, "limit, Y, E_Y and algebra identifications"))

    sp = add("bratteli", cmd_bratteli, "Bratteli data to projective system and back")
    sp.add_argument("action", choices=("import", "export"))
    sp.add_argument("file")

    add("identify", cmd_identify, "identify the algebra of a finite acyclic graph").add_argument("graph")
    add("dot", cmd_dot, "Graphviz rendering").add_argument("graph")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args)
    try:
        args.func(args, out)
    except TopGraphError as exc:
        stderr.write(f"{exc.name}: {exc}\n")
        return 1
    except (io.FormatError, OSError, ValueError, KeyError, TypeError) as exc:
        stderr.write(f"malformed input: {exc}\n")
        return 2
    stdout.write(out.render())
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

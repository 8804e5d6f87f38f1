"""Command-line interface: ``hardcore-zeros <command> ...``.

Exit codes: 0 success / certified, 1 search did not converge or ratio
escaped, 2 input error, 3 precondition failed, 4 structural violation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import certify as cert_mod
from . import families as fam
from .gaussian import GaussianRational, format_pair
from .graph import Graph, format_edge_list, lexicographic_blowup, read_edge_list
from .indpoly import (
    format_roots_csv,
    poly_roots,
    univariate_coeffs,
    z_eval,
)
from .recognize import (
    SubdividedClawSpec,
    contains_induced,
    find_simplicial_cliques,
    in_class_cls,
    is_claw_free,
    multigraph_line_cover,
    subdivided_claw,
)
from .regions import (
    RegionSpec,
    asano_boundary_point,
    sector_for_interval,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_STRUCTURE = 4

MAX_SCAN_POINTS = 10**6


class InputError(ValueError):
    pass


# -- parsing helpers -------------------------------------------------------


def parse_number(text: str, exact: bool):
    text = text.strip()
    if exact:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {text!r}") from exc
    try:
        return float(text)
    except ValueError as exc:
        raise InputError(f"bad number {text!r}") from exc


def parse_complex(text: str, exact: bool = False):
    """``"re,im"`` or ``"re"``; rational ``p/q`` parts when ``exact``."""
    parts = text.split(",")
    if len(parts) > 2:
        raise InputError(f"expected 're,im', got {text!r}")
    re_ = parse_number(parts[0], exact)
    im = parse_number(parts[1], exact) if len(parts) == 2 else (Fraction(0) if exact else 0.0)
    if exact:
        return GaussianRational(re_, im)
    return complex(re_, im)


def parse_weights_text(text: str, n: int, exact: bool) -> list:
    """Lines ``"v re im"``; every vertex must appear exactly once."""
    out: list = [None] * n
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) not in (2, 3):
            raise InputError(f"bad weight line {ln!r}")
        try:
            v = int(parts[0])
        except ValueError as exc:
            raise InputError(f"bad vertex index in {ln!r}") from exc
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range for n={n}")
        if out[v] is not None:
            raise InputError(f"vertex {v} given twice")
        re_ = parse_number(parts[1], exact)
        im = parse_number(parts[2], exact) if len(parts) == 3 else 0
        out[v] = GaussianRational(re_, im) if exact else complex(re_, im)
    missing = [v for v, w in enumerate(out) if w is None]
    if missing:
        raise InputError(f"no weight for vertices {missing[:10]}")
    return out


def load_graph(path: str) -> Graph:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def load_weights(args, G: Graph):
    if args.weights:
        try:
            with open(args.weights, encoding="utf-8") as fh:
                return parse_weights_text(fh.read(), G.n, args.exact)
        except OSError as exc:
            raise InputError(f"cannot read {args.weights}: {exc}") from exc
    lam = parse_complex(args.lam, args.exact)
    return [lam] * G.n


def format_value(value) -> str:
    if isinstance(value, GaussianRational):
        return f"{value.real} {value.imag}"
    return format_pair(value)


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError(f"bad integer list {text!r}") from exc


def write_output(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------


def cmd_eval(args) -> int:
    G = load_graph(args.graph)
    w = load_weights(args, G)
    print(format_value(z_eval(G, w)))
    return EXIT_OK


def cmd_coeffs(args) -> int:
    G = load_graph(args.graph)
    print(univariate_coeffs(G).to_csv())
    return EXIT_OK


def cmd_roots(args) -> int:
    G = load_graph(args.graph)
    sys.stdout.write(format_roots_csv(poly_roots(univariate_coeffs(G), tol=args.tol)))
    return EXIT_OK


def cmd_recognize(args) -> int:
    G = load_graph(args.graph)
    kind = args.kind
    if kind == "claw":
        print(str(is_claw_free(G)).lower())
    elif kind == "sttt":
        spec = SubdividedClawSpec(*parse_int_list(args.spec)) if args.spec else SubdividedClawSpec.symmetric(args.t)
        found, emb = contains_induced(G, subdivided_claw(spec))
        print(str(not found).lower())
        if found:
            print("# induced copy: " + " ".join(str(emb[h]) for h in sorted(emb)))
    elif kind == "cls":
        print(str(in_class_cls(G, args.k)).lower())
        for K in find_simplicial_cliques(G, args.k):
            print("# simplicial " + ",".join(map(str, K)))
    else:
        cover = multigraph_line_cover(G)
        print(str(cover is not None).lower())
        if cover is not None:
            print(f"# k0={cover.k0}")
            for c in cover.cliques:
                print(",".join(map(str, c)))
    return EXIT_OK


def cmd_region(args) -> int:
    kind = args.kind
    z = parse_complex(args.z, args.exact) if args.z else None
    if kind == "sector":
        psi = sector_for_interval(args.lam0, args.eps, args.delta, args.t)
        print(f"psi {psi!r}")
        if z is not None:
            print(str(RegionSpec("sector", (args.lam0, args.eps, psi)).contains(z)).lower())
        return EXIT_OK
    if kind == "asano" and args.y is not None:
        print(format_value(asano_boundary_point(args.k0, parse_number(args.y, args.exact))))
        return EXIT_OK
    if z is None:
        raise InputError("--z is required")
    k = parse_number(args.k, args.exact) if args.k else None
    if kind == "parabola":
        if k is None:
            raise InputError("--k is required")
        spec = RegionSpec("parabola", (k,))
    elif kind == "halfplane":
        spec = RegionSpec("halfplane", (parse_number(args.t_half, args.exact),))
    elif kind in ("F", "Fstar"):
        spec = RegionSpec(kind, (args.delta, args.t))
    else:
        spec = RegionSpec("asano", (args.k0,))
    print(str(spec.contains(z)).lower())
    return EXIT_OK


def cmd_certify(args) -> int:
    G = load_graph(args.graph)
    w = load_weights(args, G)
    try:
        if args.mode == "sttt":
            cert = cert_mod.certify_sttt(G, w, args.t, root=args.root)
        else:
            K = parse_int_list(args.K) if args.K else None
            cert = cert_mod.certify_clawfree(G, K, w, args.k)
    except cert_mod.StructuralViolation as exc:
        print(f"structural violation: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    write_output(cert.to_text(), args.output)
    if cert.outcome == cert_mod.CERTIFIED:
        return EXIT_OK
    print(f"{cert.outcome}: {cert.message}", file=sys.stderr)
    return EXIT_PRECONDITION if cert.outcome == cert_mod.PRECONDITION_FAILED else EXIT_FAIL


def cmd_family(args) -> int:
    kind = args.kind
    if kind == "cycle":
        G = fam.make_cycle(args.n)
    elif kind == "pathpower":
        G = fam.make_path_power(args.n, args.d)
    elif kind == "multipartite":
        G = fam.make_multipartite(fam.MultipartiteSpec(*parse_int_list(args.spec)))
    elif kind == "tree":
        G = fam.make_tree_T(args.d, args.k)
    else:
        if not args.graph:
            raise InputError("blowup needs --graph")
        G = lexicographic_blowup(load_graph(args.graph), args.s, args.blowup_mode)
    write_output(format_edge_list(G), args.output)
    return EXIT_OK


@dataclass(frozen=True)
class ScanSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    res_re: int
    res_im: int
    mode: str = "abs"

    def __post_init__(self):
        if self.res_re < 2 or self.res_im < 2:
            raise InputError("scan resolution must be >= 2 per axis")
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise InputError("scan bounds must be ordered")
        if self.res_re * self.res_im > MAX_SCAN_POINTS:
            raise InputError(f"scan grid of {self.res_re * self.res_im} points exceeds {MAX_SCAN_POINTS}")

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        """Row-major points: ``im`` outer, ``re`` inner."""
        re_ = np.linspace(self.re_min, self.re_max, self.res_re)
        im = np.linspace(self.im_min, self.im_max, self.res_im)
        R, I = np.meshgrid(re_, im)
        return R.ravel(), I.ravel()


def _scan_region(spec: ScanSpec, target: str) -> np.ndarray:
    name, _, params = target.partition(":")
    vals = tuple(float(x) for x in params.split(",")) if params else ()
    if name in ("F", "Fstar", "asano"):
        vals = tuple(int(v) for v in vals)
    try:
        region = RegionSpec(name, vals)
    except (IndexError, TypeError) as exc:
        raise InputError(f"bad region target {target!r}") from exc
    R, I = spec.grid()
    return np.array([int(region.contains(complex(x, y))) for x, y in zip(R, I)])


def cmd_scan(args) -> int:
    spec = ScanSpec(args.re_min, args.re_max, args.im_min, args.im_max, args.res, args.res_im or args.res, args.mode)
    R, I = spec.grid()
    if spec.mode == "region":
        if not args.region:
            raise InputError("region scans need --region")
        values = _scan_region(spec, args.region)
    else:
        if args.graph:
            G = load_graph(args.graph)
        elif args.tree:
            d, k = parse_int_list(args.tree)
            G = fam.make_tree_T(d, k)
        else:
            raise InputError("need --graph or --tree")
        coeffs = np.array([float(c) for c in univariate_coeffs(G).coeffs][::-1])
        lam = R + 1j * I
        Z = np.abs(np.polyval(coeffs, lam))
        if spec.mode == "abs":
            values = Z
        else:
            scale = np.polyval(coeffs, np.abs(lam))
            values = (Z <= args.zero_tol * scale).astype(int)
    out = ["re,im,value\n"]
    for x, y, v in zip(R, I, values):
        out.append(f"{float(x)!r},{float(y)!r},{float(v)!r}\n" if spec.mode == "abs" else f"{float(x)!r},{float(y)!r},{int(v)}\n")
    write_output("".join(out), args.output)
    return EXIT_OK


def cmd_counterexample(args) -> int:
    kind = args.kind
    if kind == "cycle":
        sol = fam.cycle_zero_weights(args.a, args.n)
        lines = [f"# cycle a={sol.a!r} n={sol.n} b={sol.b!r} valid={str(sol.valid).lower()} "
                 f"relative_residual={sol.relative_residual()!r} s={args.s}"]
        base = [sol.lam if i % 2 == 0 else sol.mu for i in range(2 * sol.n)]
        weights = fam.lift_clique_weights(base, args.s) if args.s > 1 else base
        lines += [f"{v} {format_pair(w, 17)}" for v, w in enumerate(weights)]
        write_output("\n".join(lines) + "\n", args.output)
    elif kind == "sparse":
        ce = fam.find_sparse_counterexample(args.eps)
        write_output(ce.to_text(), args.output)
    elif kind == "multipartite":
        res = fam.multipartite_root_near(parse_complex(args.z), args.eps, degree_cap=args.degree_cap)
        write_output(f"A,B,N,re,im,residual\n{res.A},{res.B},{res.N},{res.root.real!r},"
                     f"{res.root.imag!r},{res.residual!r}\n", args.output)
    else:
        if args.nearest:
            res = fam.tree_zero_nearest(args.k, args.d, complex(fam.find_indifferent_lambda(args.k), 0))
        else:
            seed = parse_complex(args.seed) if args.seed else None
            res = fam.tree_zero_search(args.k, args.d, seed)
        text = fam.format_zero_csv([res])
        if args.trajectory:
            text += "".join(f"# {z.real!r},{z.imag!r}\n" for z in res.trajectory)
        write_output(text, args.output)
        if not res.converged:
            print(f"tree zero search did not converge (residual {res.residual:.3g})", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _add_weights(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", default="1", help="constant weight 're,im' (default 1)")
    p.add_argument("--weights", help="file with lines 'v re im'")
    p.add_argument("--exact", action="store_true", help="parse numbers as exact rationals p/q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hardcore-zeros", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the independence polynomial")
    p.add_argument("graph")
    _add_weights(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", help="univariate coefficients as CSV")
    p.add_argument("graph")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("roots", help="roots of the univariate polynomial as CSV 're,im'")
    p.add_argument("graph")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("recognize", help="graph-class tests")
    p.add_argument("kind", choices=["claw", "sttt", "cls", "linecover"])
    p.add_argument("graph")
    p.add_argument("--t", type=int, default=1, help="arm length for sttt")
    p.add_argument("--spec", help="arm lengths 'i,j,k' for sttt (overrides --t)")
    p.add_argument("--k", type=int, default=2, help="clique bound for cls")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("region", help="region membership tests")
    p.add_argument("kind", choices=["parabola", "halfplane", "F", "Fstar", "sector", "asano"])
    p.add_argument("--z", help="point 're,im'")
    p.add_argument("--k", help="parabola parameter")
    p.add_argument("--t-half", dest="t_half", default="0.5", help="halfplane threshold")
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--lam0", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--k0", type=int, default=2)
    p.add_argument("--y", help="asano: print the boundary point for this parameter")
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("certify", help="run a non-vanishing certificate")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["sttt", "clawfree"], required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--K", help="simplicial clique 'a,b,...' (default: first found)")
    p.add_argument("-o", "--output")
    _add_weights(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("family", help="emit a family member as an edge list")
    p.add_argument("kind", choices=["cycle", "pathpower", "multipartite", "tree", "blowup"])
    p.add_argument("--n", type=int, default=4, help="cycle length / path vertices")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--spec", default="1,1,1,1", help="multipartite 'a,b,n,m'")
    p.add_argument("--graph", help="base graph for blowup")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--blowup-mode", dest="blowup_mode", choices=["clique", "independent"], default="clique")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("scan", help="lambda-plane scan as CSV 're,im,value'")
    p.add_argument("--re-min", dest="re_min", type=float, required=True)
    p.add_argument("--re-max", dest="re_max", type=float, required=True)
    p.add_argument("--im-min", dest="im_min", type=float, required=True)
    p.add_argument("--im-max", dest="im_max", type=float, required=True)
    p.add_argument("--res", type=int, default=100)
    p.add_argument("--res-im", dest="res_im", type=int)
    p.add_argument("--mode", choices=["abs", "zero", "region"], default="abs")
    p.add_argument("--graph")
    p.add_argument("--tree", help="'d,k' for the subdivided tree")
    p.add_argument("--region", help="e.g. 'parabola:1', 'halfplane:0.5', 'F:3,1', 'asano:3'")
    p.add_argument("--zero-tol", dest="zero_tol", type=float, default=1e-3)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("counterexample", help="construct zeros approaching region boundaries")
    p.add_argument("kind", choices=["cycle", "sparse", "multipartite", "tree"])
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--s", type=int, default=1, help="clique blow-up size for cycle weights")
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--z", default="2,2")
    p.add_argument("--degree-cap", dest="degree_cap", type=int, default=4000)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--seed")
    p.add_argument("--nearest", action="store_true", help="multi-seed search for the zero nearest lambda0")
    p.add_argument("--trajectory", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ValueError as exc:
        # InputError and GraphError are ValueErrors too
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

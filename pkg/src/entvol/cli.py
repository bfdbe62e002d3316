"""Command-line front end: parse states, dispatch computations, emit JSON/CSV.

Exit status: 0 on success, 2 on a domain error (a machine-readable error code
is printed as JSON), 64 on a usage error.  Floating point numbers are printed
with 12 significant digits; a few closed-form constants also carry a symbolic
rendering.  The environment variable ``ENTVOL_MC_SEED`` supplies the default
Monte-Carlo seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

import numpy as np

from . import bipartite, fourqubit, oracle, polytope
from .errors import EntvolError, UsageError
from .schmidt import SchmidtVector, canonicalize

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _num(x: float) -> float:
    return float(_fmt(x))


def _round_floats(obj):
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit_json(payload: dict, stream=None) -> None:
    print(json.dumps(_round_floats(payload)), file=stream or sys.stdout)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 64
        raise UsageError(message)


def _parse_schmidt(text: str) -> SchmidtVector:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"bad Schmidt vector {text!r}: {exc}") from exc
    return canonicalize(values)


def _parse_gammas(text: str) -> np.ndarray:
    try:
        rows = [[float(t) for t in part.split(",")] for part in text.split(";")]
    except ValueError as exc:
        raise UsageError(f"bad gamma block {text!r}: {exc}") from exc
    return np.asarray(rows, dtype=float)


def _default_seed_params() -> fourqubit.SeedParams:
    d = math.sqrt(0.195)
    p = fourqubit.SeedParams(0.6, 0.5 + 0.1j, 0.25 - 0.35j, complex(d))
    p.validate()
    return p


def _load_form(args) -> fourqubit.FourQubitForm:
    if getattr(args, "state", None):
        text = sys.stdin.read() if args.state == "-" else open(args.state, encoding="utf-8").read()
        return fourqubit.FourQubitForm.from_json(json.loads(text))
    if getattr(args, "gammas", None):
        return fourqubit.FourQubitForm(_default_seed_params(), _parse_gammas(args.gammas))
    raise UsageError("provide --state FILE or --gammas")


def _mc_config(args) -> oracle.McConfig:
    seed = args.mc_seed if args.mc_seed is not None else int(os.environ.get("ENTVOL_MC_SEED", "0"))
    return oracle.McConfig(samples=args.mc_samples, seed=seed)


# -- bipartite ----------------------------------------------------------------

def _report_payload(rep: bipartite.MeasureReport, label: str) -> dict:
    return {
        f"E_{label}": rep.entanglement,
        f"V_{label}": rep.volume,
        "dimension": rep.dimension,
        "v_sup": rep.v_sup,
        "k": rep.k,
    }


def _cmd_bipartite_source(args) -> int:
    lam = _parse_schmidt(args.schmidt)
    rep = (bipartite.source_entanglement(lam) if args.k is None
           else bipartite.source_entanglement_k(lam, args.k))
    payload = _report_payload(rep, "s")
    payload["schmidt"] = list(lam.components)
    if args.json:
        _emit_json(payload)
    else:
        print(f"E_s = {_fmt(rep.entanglement)}  (V_s = {_fmt(rep.volume)}, "
              f"dim {rep.dimension}, k = {rep.k})")
    return EXIT_OK


def _cmd_bipartite_accessible(args) -> int:
    lam = _parse_schmidt(args.schmidt)
    rep = (bipartite.accessible_entanglement(lam) if args.k is None
           else bipartite.accessible_entanglement_k(lam, args.k))
    n_vertices = bipartite.accessible_vertices(lam).n if args.k is None else None
    payload = _report_payload(rep, "a")
    payload["schmidt"] = list(lam.components)
    if n_vertices is not None:
        payload["vertices"] = n_vertices
    if args.json:
        _emit_json(payload)
    else:
        extra = f", {n_vertices} vertices" if n_vertices is not None else ""
        print(f"E_a = {_fmt(rep.entanglement)}  (V_a = {_fmt(rep.volume)}, "
              f"dim {rep.dimension}{extra})")
    return EXIT_OK


def _cmd_bipartite_convert(args) -> int:
    src = _parse_schmidt(args.src)
    dst = _parse_schmidt(args.dst)
    from .schmidt import embed, majorizes
    d = max(src.d, dst.d)
    ok = majorizes(embed(dst, d), embed(src, d))
    payload = {"convertible": bool(ok), "from": list(src.components), "to": list(dst.components)}
    if args.json:
        _emit_json(payload)
    else:
        print("convertible" if ok else "not convertible")
    return EXIT_OK


def _cmd_bipartite_sweep(args) -> int:
    start = _parse_schmidt(args.start)
    stop = _parse_schmidt(args.stop)
    if start.d != stop.d:
        raise UsageError("sweep endpoints need equal dimension")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    d = start.d
    header = ["step"] + [f"lambda_{i+1}" for i in range(d)] + [
        "V_s", "V_a", "E_s", "E_a", "accessible_vertices", "V_a_dim"]
    writer.writerow(header)
    a0, a1 = start.as_array(), stop.as_array()
    for step in range(args.steps):
        t = step / (args.steps - 1) if args.steps > 1 else 0.0
        lam = canonicalize((1 - t) * a0 + t * a1)
        s_rep = bipartite.source_entanglement(lam)
        a_rep = bipartite.accessible_entanglement(lam)
        n_v = bipartite.accessible_vertices(lam).n
        writer.writerow([step] + [_fmt(x) for x in lam.components]
                        + [_fmt(s_rep.volume), _fmt(a_rep.volume),
                           _fmt(s_rep.entanglement), _fmt(a_rep.entanglement),
                           n_v, a_rep.dimension])
    return EXIT_OK


# -- fourqubit ----------------------------------------------------------------

_SYMBOLIC_SUP = {
    (fourqubit.TAG_SEED, "a"): "29*pi/12",
    (fourqubit.TAG_MES, "a"): "pi",
    (fourqubit.TAG_AXIS_ONLY, "a"): "11*pi/48",
    (fourqubit.TAG_GENERAL_ONE, "a"): "pi/12",
    (fourqubit.TAG_GENERAL_ONE, "s"): "1/(36*sqrt(3))",
}


def _cmd_fourqubit_classify(args) -> int:
    cls = fourqubit.classify(_load_form(args))
    payload = {
        "tag": cls.tag,
        "axis": None if cls.w is None else fourqubit.AXIS_NAMES[cls.w],
        "roles": {k: (list(v) if isinstance(v, tuple) else v) for k, v in cls.roles.items()},
        "standard_gammas": cls.gammas.tolist(),
    }
    if cls.diagnostic:
        payload["diagnostic"] = cls.diagnostic
    if args.json:
        _emit_json(payload)
    else:
        print(f"class: {cls.tag}" + (f" (axis {fourqubit.AXIS_NAMES[cls.w]})" if cls.w is not None else ""))
        if cls.diagnostic:
            print(f"note: {cls.diagnostic}")
    return EXIT_OK


def _cmd_fourqubit_measures(args) -> int:
    form = _load_form(args)
    cls = fourqubit.classify(form)
    s_rep, a_rep = fourqubit.entanglement_4q(cls, _mc_config(args))
    payload = {
        "class": cls.tag,
        "E_s": s_rep.entanglement, "V_s": s_rep.volume,
        "V_s_dim": s_rep.dimension, "V_s_sup": s_rep.v_sup,
        "E_a": a_rep.entanglement, "V_a": a_rep.volume,
        "V_a_dim": a_rep.dimension, "V_a_sup": a_rep.v_sup,
    }
    if cls.tag == fourqubit.TAG_SEED:
        payload["V_a_symbolic"] = "29*pi/12"
    for kind in ("s", "a"):
        sym = _SYMBOLIC_SUP.get((cls.tag, kind))
        if sym:
            payload[f"V_{kind}_sup_symbolic"] = sym
    if args.json:
        _emit_json(payload)
    else:
        print(f"class {cls.tag}: E_s = {_fmt(s_rep.entanglement)} "
              f"(V_s = {_fmt(s_rep.volume)}, dim {s_rep.dimension}), "
              f"E_a = {_fmt(a_rep.entanglement)} "
              f"(V_a = {_fmt(a_rep.volume)}, dim {a_rep.dimension})")
    return EXIT_OK


def _load_pair(args) -> tuple[fourqubit.FourQubitForm, fourqubit.FourQubitForm]:
    seed = _default_seed_params()
    if args.from_gammas and args.to_gammas:
        return (fourqubit.FourQubitForm(seed, _parse_gammas(args.from_gammas)),
                fourqubit.FourQubitForm(seed, _parse_gammas(args.to_gammas)))
    if args.from_state and args.to_state:
        with open(args.from_state, encoding="utf-8") as fh:
            a = fourqubit.FourQubitForm.from_json(json.load(fh))
        with open(args.to_state, encoding="utf-8") as fh:
            b = fourqubit.FourQubitForm.from_json(json.load(fh))
        return a, b
    raise UsageError("provide --from-gammas/--to-gammas or --from-state/--to-state")


def _cmd_fourqubit_convert(args) -> int:
    initial, final = _load_pair(args)
    verdict = fourqubit.can_convert(initial, final)
    payload = {"convertible": bool(verdict), "row": verdict.row}
    if verdict.detail:
        payload["detail"] = verdict.detail
    if args.json:
        _emit_json(payload)
    else:
        print(("convertible via " + verdict.row) if verdict else
              f"not convertible ({verdict.detail})")
    return EXIT_OK


def _cmd_fourqubit_witness(args) -> int:
    initial, final = _load_pair(args)
    wit = fourqubit.povm_witness(initial, final)
    payload = {
        "row": wit.row,
        "outcomes": len(wit.outcomes),
        "probabilities": list(wit.probabilities),
        "pauli_patterns": list(wit.pauli_patterns),
        "completeness_residual": wit.completeness_residual,
        "eta_residual": wit.eta_residual,
        "outcome_mismatch": wit.outcome_mismatch,
    }
    if args.json:
        _emit_json(payload)
    else:
        print(f"row {wit.row}: {len(wit.outcomes)} outcomes, "
              f"p = {[_fmt(p) for p in wit.probabilities]}")
        print(f"completeness residual {wit.completeness_residual:.2e}, "
              f"eta residual {wit.eta_residual:.2e}, "
              f"outcome mismatch {wit.outcome_mismatch:.2e}")
    return EXIT_OK


def _cmd_fourqubit_sweep(args) -> int:
    g0 = _parse_gammas(args.from_gammas)
    g1 = _parse_gammas(args.to_gammas)
    seed = _default_seed_params()
    cfg = _mc_config(args)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["step", "class"]
                    + [f"gamma_{p+1}{fourqubit.AXIS_NAMES[k]}" for p in range(4) for k in range(3)]
                    + ["V_s", "V_s_dim", "V_a", "V_a_dim", "E_s", "E_a"])
    for step in range(args.steps):
        t = step / (args.steps - 1) if args.steps > 1 else 0.0
        g = (1 - t) * g0 + t * g1
        cls = fourqubit.classify(fourqubit.FourQubitForm(seed, g))
        s_rep, a_rep = fourqubit.entanglement_4q(cls, cfg)
        writer.writerow([step, cls.tag] + [_fmt(x) for x in g.ravel()]
                        + [_fmt(s_rep.volume), s_rep.dimension,
                           _fmt(a_rep.volume), a_rep.dimension,
                           _fmt(s_rep.entanglement), _fmt(a_rep.entanglement)])
    return EXIT_OK


# -- polytope -----------------------------------------------------------------

def _load_polytope(args):
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    payload = json.loads(text)
    if "A" in payload:
        return polytope.HalfspaceSystem.from_json(payload), None
    if "vertices" in payload:
        return None, polytope.VertexSet.from_json(payload)
    raise UsageError("polytope JSON needs either A/b or vertices")


def _cmd_polytope_vertices(args) -> int:
    H, V = _load_polytope(args)
    if H is None:
        raise UsageError("vertex enumeration needs an H-representation")
    V = polytope.enumerate_vertices(H)
    payload = {"vertices": V.vertices.tolist(), "count": V.n}
    if args.json:
        _emit_json(payload)
    else:
        for v in V.vertices:
            print(" ".join(_fmt(x) for x in v))
    return EXIT_OK


def _cmd_polytope_volume(args) -> int:
    H, V = _load_polytope(args)
    adjacency = None
    if V is None:
        V = polytope.enumerate_vertices(H)
        adjacency = polytope.vertex_adjacency(H, V)
    vol, dim = polytope.volume_triangulation(V)
    payload = {"volume": vol, "dimension": dim, "vertices": V.n}
    if adjacency is not None:
        simple = polytope.is_simple(H, V, adjacency)
        payload["simple"] = bool(simple)
        if simple and dim > 0:
            payload["brion_volume"] = polytope.brion_volume(V, adjacency)
    if args.json:
        _emit_json(payload)
    else:
        line = f"volume = {_fmt(vol)} (dimension {dim}, {V.n} vertices)"
        if "simple" in payload:
            line += f", simple = {payload['simple']}"
        print(line)
    return EXIT_OK


# -- oracle -------------------------------------------------------------------

def _cmd_oracle_source(args) -> int:
    lam = _parse_schmidt(args.schmidt)
    cfg = oracle.McConfig(samples=args.samples, seed=args.seed)
    res = oracle.mc_source_volume(lam, cfg)
    payload = res.to_json()
    payload["closed_form"] = bipartite.source_volume(lam)
    _emit_json(payload)
    return EXIT_OK


def _cmd_oracle_accessible(args) -> int:
    lam = _parse_schmidt(args.schmidt)
    cfg = oracle.McConfig(samples=args.samples, seed=args.seed)
    res = oracle.mc_accessible_volume(lam, cfg)
    payload = res.to_json()
    payload["polytope_value"] = bipartite.accessible_volume(lam)[0]
    _emit_json(payload)
    return EXIT_OK


def _cmd_oracle_region(args) -> int:
    cfg = oracle.McConfig(samples=args.samples, seed=args.seed)
    if args.region == "ball":
        lo, hi = np.full(3, -0.5), np.full(3, 0.5)
        predicate = lambda pts: (pts ** 2).sum(axis=1) < 0.25
    elif args.region == "half-ball":
        lo, hi = np.array([0.0, -0.5, -0.5]), np.full(3, 0.5)
        predicate = lambda pts: (pts ** 2).sum(axis=1) < 0.25
    elif args.region == "reachable":
        if not args.gammas:
            raise UsageError("--gammas required for the reachable region")
        g = _parse_gammas(args.gammas)
        if g.shape != (4, 3):
            raise UsageError("expected four gamma rows")
        cls = fourqubit.classify(fourqubit.FourQubitForm(_default_seed_params(), g))
        if cls.tag != fourqubit.TAG_GENERAL_ONE:
            raise UsageError("reachable-region sampling applies to single-general-party states")
        res = fourqubit.caseiii_accessible_mc(
            np.abs(cls.gammas[cls.roles["party"]]), cfg)
        _emit_json(res.to_json())
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown region {args.region}")
    res = oracle.mc_region_volume(predicate, lo, hi, cfg)
    _emit_json(res.to_json())
    return EXIT_OK


# -- wiring -------------------------------------------------------------------

def build_parser() -> _Parser:
    p = _Parser(prog="entvol", description=__doc__)
    sub = p.add_subparsers(dest="group", required=True)

    bp = sub.add_parser("bipartite", help="bipartite Schmidt-vector measures")
    bsub = bp.add_subparsers(dest="cmd", required=True)

    b_src = bsub.add_parser("source")
    b_src.add_argument("--schmidt", required=True)
    b_src.add_argument("--k", type=int, default=None)
    b_src.add_argument("--json", action="store_true")
    b_src.set_defaults(func=_cmd_bipartite_source)

    b_acc = bsub.add_parser("accessible")
    b_acc.add_argument("--schmidt", required=True)
    b_acc.add_argument("--k", type=int, default=None)
    b_acc.add_argument("--json", action="store_true")
    b_acc.set_defaults(func=_cmd_bipartite_accessible)

    b_cnv = bsub.add_parser("convert")
    b_cnv.add_argument("--from", dest="src", required=True)
    b_cnv.add_argument("--to", dest="dst", required=True)
    b_cnv.add_argument("--json", action="store_true")
    b_cnv.set_defaults(func=_cmd_bipartite_convert)

    b_swp = bsub.add_parser("sweep")
    b_swp.add_argument("--from-schmidt", dest="start", required=True)
    b_swp.add_argument("--to-schmidt", dest="stop", required=True)
    b_swp.add_argument("--steps", type=int, required=True)
    b_swp.set_defaults(func=_cmd_bipartite_sweep)

    fq = sub.add_parser("fourqubit", help="generic four-qubit states")
    fsub = fq.add_subparsers(dest="cmd", required=True)

    def _add_state_opts(sp):
        sp.add_argument("--state", help="JSON payload file ('-' for stdin)")
        sp.add_argument("--gammas", help="four semicolon-separated gamma triples")
        sp.add_argument("--mc-samples", type=int, default=1_000_000)
        sp.add_argument("--mc-seed", type=int, default=None)
        sp.add_argument("--json", action="store_true")

    f_cls = fsub.add_parser("classify")
    _add_state_opts(f_cls)
    f_cls.set_defaults(func=_cmd_fourqubit_classify)

    f_mea = fsub.add_parser("measures")
    _add_state_opts(f_mea)
    f_mea.set_defaults(func=_cmd_fourqubit_measures)

    def _add_pair_opts(sp):
        sp.add_argument("--from-gammas")
        sp.add_argument("--to-gammas")
        sp.add_argument("--from-state")
        sp.add_argument("--to-state")
        sp.add_argument("--json", action="store_true")

    f_cnv = fsub.add_parser("convert")
    _add_pair_opts(f_cnv)
    f_cnv.set_defaults(func=_cmd_fourqubit_convert)

    f_wit = fsub.add_parser("witness")
    _add_pair_opts(f_wit)
    f_wit.set_defaults(func=_cmd_fourqubit_witness)

    f_swp = fsub.add_parser("sweep")
    f_swp.add_argument("--from-gammas", required=True)
    f_swp.add_argument("--to-gammas", required=True)
    f_swp.add_argument("--steps", type=int, required=True)
    f_swp.add_argument("--mc-samples", type=int, default=200_000)
    f_swp.add_argument("--mc-seed", type=int, default=None)
    f_swp.set_defaults(func=_cmd_fourqubit_sweep)

    pl = sub.add_parser("polytope", help="raw polytope operations")
    psub = pl.add_subparsers(dest="cmd", required=True)
    p_ver = psub.add_parser("vertices")
    p_ver.add_argument("--input", required=True, help="JSON file ('-' for stdin)")
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(func=_cmd_polytope_vertices)
    p_vol = psub.add_parser("volume")
    p_vol.add_argument("--input", required=True)
    p_vol.add_argument("--json", action="store_true")
    p_vol.set_defaults(func=_cmd_polytope_volume)

    orc = sub.add_parser("oracle", help="Monte-Carlo validators")
    osub = orc.add_subparsers(dest="cmd", required=True)

    def _add_oracle_opts(sp, with_schmidt=True):
        if with_schmidt:
            sp.add_argument("--schmidt", required=True)
        sp.add_argument("--samples", type=int, default=1_000_000)
        sp.add_argument("--seed", type=int,
                        default=int(os.environ.get("ENTVOL_MC_SEED", "0")))

    o_src = osub.add_parser("source")
    _add_oracle_opts(o_src)
    o_src.set_defaults(func=_cmd_oracle_source)
    o_acc = osub.add_parser("accessible")
    _add_oracle_opts(o_acc)
    o_acc.set_defaults(func=_cmd_oracle_accessible)
    o_reg = osub.add_parser("region")
    _add_oracle_opts(o_reg, with_schmidt=False)
    o_reg.add_argument("--region", choices=("ball", "half-ball", "reachable"), default="ball")
    o_reg.add_argument("--gammas")
    o_reg.set_defaults(func=_cmd_oracle_region)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EntvolError as exc:
        _emit_json({"error": exc.code, "message": str(exc)})
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

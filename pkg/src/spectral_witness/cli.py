"""
Command-line front end.

Every command writes one JSON document to stdout. Verdicts live in the
document; the exit code is 0 when the computation ran and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import sys

from . import criteria, gallery, io, linalg
from .construction import assemble_witness, certify, kew_interval, random_certified_spec
from .decomposition import apply_map, is_completely_copositive, split_ab, to_positive_map
from .errors import InvalidInputError, PreconditionError
from .linalg import DEFAULT_TOL, BipartiteDims, is_psd
from .schmidt import DEFAULT_RESTARTS, k_norm_sq, k_norm_sq_oracle, schmidt_decompose


def _load_spec(path):
    return io.spec_from_doc(io.read_doc(path))


def _load_witness(path):
    doc = io.read_doc(path)
    if isinstance(doc, dict) and "basis" in doc:
        spec = io.spec_from_doc(doc)
        return assemble_witness(spec), spec.dims
    W = io.matrix_from_doc(doc)
    return W, None


def cmd_gallery(args):
    if args.family == "flip":
        spec = gallery.flip_spec()
    elif args.family == "reduction":
        spec = gallery.reduction_spec(args.d)
    elif args.family == "sn":
        spec = gallery.sn_spec(args.d, args.p)
    else:
        spec = gallery.cho_kye_spec(gallery.ChoKyeParams(args.a, args.b, args.c))
    return io.spec_to_doc(spec)


def cmd_certify(args):
    spec = _load_spec(args.spec)
    report = certify(spec, args.k).as_dict()
    interval = kew_interval(spec)
    report["certified_k_max"] = interval.k_max
    report["not_k_max_plus_1"] = interval.not_next
    report["min_lambda_above_split"] = float(spec.positive_part.min())
    return report


def cmd_decompose(args):
    spec = _load_spec(args.spec)
    res = split_ab(spec, args.tol)
    W = assemble_witness(spec)
    return {
        "mu_1": res.mu1,
        "min_eig_A": res.min_eig_A,
        "min_eig_B_pt": res.min_eig_B_pt,
        "b_min_bound": res.b_min_bound,
        "saturated": res.saturated,
        "A_positive": res.A_positive,
        "B_pt_positive": res.B_pt_positive,
        "decomposable": res.decomposable,
        "completely_copositive": is_completely_copositive(W, spec.dims, args.tol),
        "A": io.matrix_to_doc(res.A),
        "B": io.matrix_to_doc(res.B),
    }


def cmd_knorm(args):
    psi = io.vector_from_doc(io.read_doc(args.vec))
    report = {"k": args.k, "k_norm_sq": k_norm_sq(psi, args.k), "schmidt_rank": schmidt_decompose(psi).rank}
    if args.oracle:
        if args.seed is None:
            raise InvalidInputError("--oracle requires --seed")
        report["oracle_k_norm_sq"] = k_norm_sq_oracle(psi, args.k, args.restarts, args.seed)
        report["restarts"] = args.restarts
        report["seed"] = args.seed
    return report


def cmd_detect(args):
    W, dims = _load_witness(args.witness)
    rho = io.state_from_doc(io.read_doc(args.state))
    if dims is not None and dims != rho.dims:
        raise InvalidInputError("witness and state dimensions differ")
    value = criteria.detect(W, rho)
    return {"trace_W_rho": value, "detected": value < -args.tol}


def cmd_tests(args):
    rho = io.state_from_doc(io.read_doc(args.state))
    return criteria.criteria_report(rho, args.tol).as_dict()


def cmd_random_witness(args):
    spec = random_certified_spec(BipartiteDims(args.dA, args.dB), args.L, args.seed)
    return io.spec_to_doc(spec)


def cmd_random_state(args):
    dims = BipartiteDims(args.dA, args.dB)
    if args.ppt:
        rho = criteria.random_ppt_state(dims, args.seed)
    else:
        rho = criteria.random_separable_state(dims, args.terms, args.seed)
    return io.state_to_doc(rho)


def cmd_map(args):
    spec = _load_spec(args.spec)
    X = io.matrix_from_doc(io.read_doc(args.input))
    rep = to_positive_map(spec)
    Y = apply_map(rep, X)
    out = io.matrix_to_doc(Y)
    out["mu_1"] = rep.mu1
    out["kappa"] = rep.kappa
    out["output_psd"] = is_psd(0.5 * (Y + Y.conj().T), args.tol)[0] if linalg.is_hermitian(X) else None
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spectral-witness", description=__doc__.strip().splitlines()[0])
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative tolerance for positivity verdicts")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gallery", help="emit a witness spec from the built-in families")
    gs = g.add_subparsers(dest="family", required=True)
    gs.add_parser("flip")
    r = gs.add_parser("reduction")
    r.add_argument("--d", type=int, required=True)
    s = gs.add_parser("sn")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--p", type=float, required=True)
    c = gs.add_parser("chokye")
    for name in ("a", "b", "c"):
        c.add_argument(f"--{name}", type=float, required=True)
    g.set_defaults(func=cmd_gallery)

    c = sub.add_parser("certify", help="k-EW certificate of a witness spec")
    c.add_argument("--spec", required=True)
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("decompose", help="split W = A + B and check A >= 0, B^Gamma >= 0")
    c.add_argument("--spec", required=True)
    c.set_defaults(func=cmd_decompose)

    c = sub.add_parser("knorm", help="squared k-norm of a bipartite vector")
    c.add_argument("--vec", required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--oracle", action="store_true", help="also run the see-saw maximization")
    c.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    c.add_argument("--seed", type=int)
    c.set_defaults(func=cmd_knorm)

    c = sub.add_parser("detect", help="Tr(W rho)")
    c.add_argument("--witness", required=True, help="spec or matrix file")
    c.add_argument("--state", required=True)
    c.set_defaults(func=cmd_detect)

    c = sub.add_parser("tests", help="PPT, reduction, entropic and majorization criteria")
    c.add_argument("--state", required=True)
    c.set_defaults(func=cmd_tests)

    c = sub.add_parser("random-witness", help="random spec certified at k = 1")
    c.add_argument("--dA", type=int, required=True)
    c.add_argument("--dB", type=int, required=True)
    c.add_argument("--L", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.set_defaults(func=cmd_random_witness)

    c = sub.add_parser("random-state", help="random PPT or separable state")
    kind = c.add_mutually_exclusive_group(required=True)
    kind.add_argument("--ppt", action="store_true")
    kind.add_argument("--separable", action="store_true")
    c.add_argument("--terms", type=int, default=None)
    c.add_argument("--dA", type=int, required=True)
    c.add_argument("--dB", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.set_defaults(func=cmd_random_state)

    c = sub.add_parser("map", help="apply the positive map induced by a spec")
    c.add_argument("--spec", required=True)
    c.add_argument("--input", required=True, help="matrix file holding X")
    c.set_defaults(func=cmd_map)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "random-state" and args.separable and args.terms is None:
        print("error: --separable requires --terms", file=sys.stderr)
        return 2
    try:
        doc = args.func(args)
    except (InvalidInputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(io.dumps(doc) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line frontend: JSON in, JSON report out, deterministic.

Exit codes: 0 for success/confirmed verdicts, 2 for violation or
unconfirmed verdicts, 1 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import DaggerAlgError
from .localization import (
    LocalizationSpec,
    koszul_h_check,
    mayer_vietoris,
    present_localization,
)
from .nonarch import check_adjunction, pi_tensor_check
from .normed_core import MAX, SUM, WeightedFreeModule
from .scalars import (
    BanachRing,
    integers_archimedean,
    integers_trivial,
    rationals_archimedean,
    rationals_padic,
)
from .selftest import canonical_json, run_all
from .series import (
    DaggerPresentation,
    PolyRadius,
    TruncatedSeries,
    norm_S,
    norm_T,
)
from .spectrum import global_sup_report, shilov_check, spectral_via_powers
from .tensor import TensorElement, tensor_norm_certified

REPORT_VERSION = 1


def parse_ring(text: str) -> BanachRing:
    if text == "Z":
        return integers_archimedean()
    if text == "Ztriv":
        return integers_trivial()
    if text == "R":
        return rationals_archimedean()
    if text.startswith("Qp:"):
        return rationals_padic(int(text.split(":", 1)[1]))
    return BanachRing.from_json(json.loads(text))


def parse_rho(text: str, n: int) -> PolyRadius:
    parts = [Fraction(p) for p in text.split(",")]
    if len(parts) == 1 and n > 1:
        parts = parts * n
    return PolyRadius(tuple(parts))


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _emit(report, args) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


def cmd_norm(args) -> int:
    ring = parse_ring(args.ring)
    f = TruncatedSeries.from_json(_load_json(args.series), ring)
    rho = parse_rho(args.rho, f.n)
    report = {
        "version": REPORT_VERSION,
        "S": norm_S(f, rho).to_json(),
        "T": norm_T(f, rho).to_json(),
    }
    _emit(report, args)
    return 0


def cmd_tensor(args) -> int:
    obj = _load_json(args.element)
    left = WeightedFreeModule.from_json(obj["left"])
    right = WeightedFreeModule.from_json(obj["right"])
    terms = tuple(
        (tuple(Fraction(c) for c in m), tuple(Fraction(c) for c in n))
        for m, n in obj["terms"]
    )
    x = TensorElement(left, right, terms)
    flavor = args.flavor
    nv = tensor_norm_certified(x, flavor)
    _emit({"version": REPORT_VERSION, "norm": nv.to_json(),
           "flavor": flavor}, args)
    return 0


def cmd_localize(args) -> int:
    A = DaggerPresentation.from_json(_load_json(args.algebra))
    spec = LocalizationSpec.from_json(_load_json(args.spec), A.ring)
    B = present_localization(A, spec)
    _emit({"version": REPORT_VERSION, "presentation": B.to_json()}, args)
    return 0


def cmd_koszul(args) -> int:
    A = DaggerPresentation.from_json(_load_json(args.algebra))
    spec = LocalizationSpec.from_json(_load_json(args.spec), A.ring)
    B = DaggerPresentation.from_json(_load_json(args.map)) if args.map else A
    verdict = koszul_h_check(A, spec, B, args.degree)
    report = {
        "version": REPORT_VERSION,
        "concentrated_in_degree_0": verdict.concentrated,
        "kernel_dimension": verdict.kernel_dim,
        "degree": verdict.degree,
    }
    _emit(report, args)
    return 0 if verdict.concentrated else 2


def cmd_mv_check(args) -> int:
    ring = parse_ring(args.ring)
    elements = [
        {int(k): Fraction(v) for k, v in e.items()}
        for e in _load_json(args.elements)
    ]
    rep = mayer_vietoris(ring, args.degree, elements)
    report = {
        "version": REPORT_VERSION,
        "exact": rep.exact,
        "diagonal_injective": rep.diagonal_injective,
        "kernel_is_diagonal": rep.kernel_is_diagonal,
        "splittings_unique": rep.splittings_unique,
        "elements_checked": rep.checked,
    }
    _emit(report, args)
    return 0 if rep.exact else 2


def cmd_spectrum(args) -> int:
    ring = integers_archimedean()
    f = TruncatedSeries.from_json(_load_json(args.series), ring)
    rho = parse_rho(args.rho, f.n)
    rep = global_sup_report(f, rho, args.prime_bound, args.grid)
    powers = spectral_via_powers(f, rho, args.powers)
    report = {
        "version": REPORT_VERSION,
        "global_sup": rep.value.to_json(),
        "per_place": [[label, nv.to_json()] for label, nv in rep.per_place],
        "unlisted_primes_bounded_by": str(rep.unlisted_primes_bounded_by),
        "power_estimates": [nv.to_json() for nv in powers],
    }
    _emit(report, args)
    return 0


def cmd_shilov(args) -> int:
    ring = integers_archimedean()
    f = TruncatedSeries.from_json(_load_json(args.series), ring)
    rho = parse_rho(args.rho, f.n)
    verdict = shilov_check(f, rho, args.prime_bound)
    report = {
        "version": REPORT_VERSION,
        "confirmed": verdict.confirmed,
        "archimedean_sup": verdict.archimedean_sup.to_json(),
        "max_other_fiber": verdict.max_other.to_json(),
        "monomial_floor": str(verdict.monomial_floor),
    }
    _emit(report, args)
    return 0 if verdict.confirmed else 2


def cmd_pi_check(args) -> int:
    import random

    obj = _load_json(args.module)
    M = WeightedFreeModule.from_json(obj)
    rng = random.Random(args.seed)
    p = M.ring.p or 2
    matrices = []
    for _ in range(args.samples):
        tgt_rank = rng.randint(1, 3)
        matrices.append(
            tuple(
                tuple(
                    Fraction(p) ** rng.randint(-3, 3) * rng.choice([0, 1, 2])
                    for _ in range(M.rank)
                )
                for _ in range(tgt_rank)
            )
        )
    target = WeightedFreeModule(M.ring, (Fraction(1),) * 3, MAX)
    records = []
    ok = True
    for mat in matrices:
        tgt = WeightedFreeModule(M.ring, target.weights[: len(mat)], MAX)
        rec = check_adjunction(M, tgt, [mat])[0]
        ok = ok and rec.equal
        records.append(rec.equal)
    tensor_rec = pi_tensor_check(M, M)
    report = {
        "version": REPORT_VERSION,
        "samples": args.samples,
        "adjunction_all_equal": ok,
        "tensor_intertwine_confirmed": tensor_rec.confirmed,
    }
    _emit(report, args)
    return 0 if ok and tensor_rec.confirmed else 2


def cmd_selftest(args) -> int:
    report = run_all(args.seed, args.threads)
    for c in report["criteria"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"criterion {c['id']:2d} {c['name']:<24s} {status}",
              file=sys.stderr)
    _emit(report, args)
    return 0 if report["passed"] else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="daggeralg",
        description="Exact-arithmetic normed modules and overconvergent "
        "series algebras: certified norms, localizations, spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--json-out", help="also write the report to a file")

    p = sub.add_parser("norm", help="series norms at a polyradius")
    p.add_argument("--series", required=True)
    p.add_argument("--ring", default="Z")
    p.add_argument("--rho", default="1")
    add_common(p)
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("tensor", help="certified tensor norm of an element")
    p.add_argument("--element", required=True)
    p.add_argument("--flavor", choices=[SUM, MAX], default=SUM)
    add_common(p)
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("localize", help="extend a presentation by a "
                       "localization step")
    p.add_argument("--algebra", required=True)
    p.add_argument("--spec", required=True)
    add_common(p)
    p.set_defaults(fn=cmd_localize)

    p = sub.add_parser("koszul", help="two-term complex homology check")
    p.add_argument("--algebra", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--map", help="target presentation, defaults to the algebra")
    p.add_argument("--degree", type=int,
                   default=_env_int("DAGGERALG_DEGREE", 8))
    add_common(p)
    p.set_defaults(fn=cmd_koszul)

    p = sub.add_parser("mv-check", help="disk/annulus gluing exactness")
    p.add_argument("--elements", required=True,
                   help="JSON list of {exponent: coefficient} tables")
    p.add_argument("--ring", default="Qp:2")
    p.add_argument("--degree", type=int,
                   default=_env_int("DAGGERALG_DEGREE", 8))
    add_common(p)
    p.set_defaults(fn=cmd_mv_check)

    p = sub.add_parser("spectrum", help="per-place sup norms and spectral "
                       "estimates over the integers")
    p.add_argument("--series", required=True)
    p.add_argument("--rho", default="1")
    p.add_argument("--prime-bound", type=int,
                   default=_env_int("DAGGERALG_PRIME_BOUND", 50))
    p.add_argument("--grid", type=int, default=2,
                   help="exponent grid size per place family")
    p.add_argument("--powers", type=int, default=8)
    add_common(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("shilov", help="Archimedean-fiber dominance check")
    p.add_argument("--series", required=True)
    p.add_argument("--rho", default="1")
    p.add_argument("--prime-bound", type=int,
                   default=_env_int("DAGGERALG_PRIME_BOUND", 50))
    add_common(p)
    p.set_defaults(fn=cmd_shilov)

    p = sub.add_parser("pi-check", help="max-norm reflection adjunction "
                       "sampling")
    p.add_argument("--module", required=True)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=_env_int("DAGGERALG_SEED", 7))
    add_common(p)
    p.set_defaults(fn=cmd_pi_check)

    p = sub.add_parser("selftest", help="run the full verification suite")
    p.add_argument("--seed", type=int, default=_env_int("DAGGERALG_SEED", 7))
    p.add_argument("--threads", type=int, default=None)
    add_common(p)
    p.set_defaults(fn=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (DaggerAlgError, ValueError, KeyError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

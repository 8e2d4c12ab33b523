"""Command-line interface: flagcone info | verify | eval.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 bad
configuration or usage.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .catalog import describe
from .errors import ConfigError, FlagconeError
from .kahler import anticanonical_potential
from .rational import GaussianRational, get_backend, parse_rational_complex
from .report import ALL_SUITES, JobConfig, report_to_json, run_verification


def _parse_theta(text: str) -> tuple:
    text = (text or "").strip()
    if not text:
        return ()
    try:
        return tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError as exc:
        raise ConfigError(f"cannot parse theta {text!r}") from exc


def _parse_floats(text: str) -> tuple:
    return tuple(float(t) for t in text.split(",") if t.strip())


def _parse_suites(text: str) -> tuple:
    items = tuple(t.strip() for t in text.split(",") if t.strip())
    return items or ALL_SUITES


def _parse_point(text: str, backend: str) -> list:
    vals = [t for t in (text or "").split(",") if t.strip()]
    if backend == "exact":
        return [parse_rational_complex(v) for v in vals]
    return [complex(v.strip().replace("i", "j")) for v in vals]


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--rank", type=int, required=True, help="rank of A_n")
    p.add_argument("--theta", default="", help="comma-separated simple-root "
                   "indices in the parabolic (1-based); empty for the full flag")
    p.add_argument("--ell", type=int, default=1, help="covering integer")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="flagcone",
        description="Constructs Kahler-Einstein flag metrics, Sasaki-Einstein "
        "circle bundles and Ricci-flat cone/bundle metrics from type-A root "
        "data, and verifies every claimed identity numerically or exactly.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="combinatorial invariants of (rank, theta, ell)")
    _add_common(p_info)
    p_info.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p_ver = sub.add_parser("verify", help="run verification suites")
    _add_common(p_ver)
    p_ver.add_argument("--backend", default="float", choices=("float", "exact"))
    p_ver.add_argument("--jet-order", type=int, default=4)
    p_ver.add_argument("--samples", type=int, default=5)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--constant-C", dest="constant_c", type=float, default=1.0)
    p_ver.add_argument("--radii", default="10,100,1000")
    p_ver.add_argument("--suites", default=",".join(ALL_SUITES))
    p_ver.add_argument("--tol-scale", type=float, default=1.0,
                       help="scale every tolerance (0 forces failures)")
    p_ver.add_argument("--timing", action="store_true",
                       help="include wall times (breaks byte reproducibility)")
    p_ver.add_argument("--config", default=None,
                       help="TOML file with the same keys; flags win")
    p_ver.add_argument("--out", default=None)

    p_eval = sub.add_parser("eval", help="evaluate one tensor at one point")
    _add_common(p_eval)
    p_eval.add_argument("--quantity", required=True,
                        choices=("potential", "metric", "ricci", "eta", "phi",
                                 "sasaki_g", "cone_g", "calabi_g"))
    p_eval.add_argument("--point", default="", help="comma-separated chart "
                        "coordinates (complex like 0.1+0.2j, or rationals "
                        "like 1/2+1/3i on the exact backend)")
    p_eval.add_argument("--backend", default="float", choices=("float", "exact"))
    p_eval.add_argument("--radius", type=float, default=1.0, help="cone radius")
    p_eval.add_argument("--angle", type=float, default=0.0, help="circle angle")
    p_eval.add_argument("--fiber-b", dest="fiber_b", default="1.0",
                        help="fiber coordinate for calabi_g")
    p_eval.add_argument("--constant-C", dest="constant_c", type=float, default=1.0)
    p_eval.add_argument("--out", default=None)
    return ap


def _emit(payload: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _scalar_json(x, backend) -> object:
    if get_backend(backend).exact and isinstance(x, GaussianRational):
        return str(x)
    x = complex(x)
    if x.imag == 0:
        return x.real
    return {"re": x.real, "im": x.imag}


def _matrix_json(M, backend) -> list:
    out = []
    for row in np.asarray(M):
        out.append([_scalar_json(v, backend) for v in row])
    return out


def cmd_info(args) -> int:
    spec = anticanonical_potential(args.rank, set(_parse_theta(args.theta)),
                                   args.ell)
    payload = json.dumps(describe(spec), indent=2, sort_keys=True) + "\n"
    _emit(payload, args.out)
    return 0


def cmd_verify(args) -> int:
    kwargs = {
        "rank": args.rank,
        "theta": _parse_theta(args.theta),
        "ell": args.ell,
        "backend": args.backend,
        "jet_order": args.jet_order,
        "samples": args.samples,
        "seed": args.seed,
        "constant_c": args.constant_c,
        "radii": _parse_floats(args.radii),
        "suites": _parse_suites(args.suites),
        "tol_scale": args.tol_scale,
        "timing": args.timing,
    }
    if args.config:
        with open(args.config, "rb") as fh:
            base = tomllib.load(fh)
        defaults = {
            "rank": None, "theta": (), "ell": 1, "backend": "float",
            "jet_order": 4, "samples": 5, "seed": 0, "constant_c": 1.0,
            "radii": (10.0, 100.0, 1000.0), "suites": ALL_SUITES,
            "tol_scale": 1.0, "timing": False,
        }
        for key, value in base.items():
            k = key.replace("-", "_")
            if k not in kwargs and k != "rank":
                raise ConfigError(f"unknown config key {key!r}")
            if k == "theta":
                value = tuple(sorted(int(v) for v in value)) \
                    if isinstance(value, list) else _parse_theta(str(value))
            elif k == "suites":
                value = tuple(value) if isinstance(value, list) \
                    else _parse_suites(str(value))
            elif k == "radii":
                value = tuple(float(v) for v in value) if isinstance(value, list) \
                    else _parse_floats(str(value))
            # command-line flags win where they differ from the parser default
            if k == "rank":
                continue
            if kwargs[k] == defaults.get(k):
                kwargs[k] = value
    cfg = JobConfig(**kwargs)
    report = run_verification(cfg)
    _emit(report_to_json(report), args.out)
    return 0 if report["overall_passed"] else 1


def cmd_eval(args) -> int:
    spec = anticanonical_potential(args.rank, set(_parse_theta(args.theta)),
                                   args.ell)
    z = _parse_point(args.point, args.backend)
    if len(z) != spec.m:
        raise ConfigError(
            f"point needs {spec.m} chart coordinates, got {len(z)}"
        )
    q = args.quantity
    out = {"quantity": q, "rank": args.rank, "theta": sorted(_parse_theta(args.theta)),
           "ell": args.ell, "backend": args.backend,
           "point": [str(v) if args.backend == "exact" else _scalar_json(complex(v), "float")
                     for v in z]}
    from . import kahler, sasaki
    from .cone import BundleChartPoint, ConeChartPoint, cone_metric_at
    from .calabi import calabi_metric_at

    if q == "potential":
        import math

        from .minors import norm_square_eval

        out["frame"] = "log K = sum_alpha c_alpha log S_alpha"
        out["value"] = kahler.potential_value(spec, z)
        out["factors"] = []
        for mps, c in spec.factors:
            s = norm_square_eval(mps, z, "float").real
            out["factors"].append({
                "weight_index": mps.weight_index,
                "exponent": c,
                "norm_square": s,
                "log": math.log(s),
            })
    elif q == "metric":
        s = kahler.metric_at(spec, z, backend=args.backend)
        out["frame"] = "holomorphic dz_i (x) dzbar_j; value = hessian/(2 pi)"
        out["matrix"] = _matrix_json(s.matrix, "float")
        if args.backend == "exact":
            out["hessian_exact"] = _matrix_json(s.hessian, "exact")
            out["normalization"] = "exact entries are d_i dbar_j log K = 2 pi g_ij"
    elif q == "ricci":
        ric = kahler.ricci_at(spec, z, backend=args.backend)
        out["frame"] = "holomorphic dz_i (x) dzbar_j"
        out["matrix"] = _matrix_json(ric, args.backend)
    elif q == "eta":
        out["frame"] = "(dx_1, dy_1, ..., dtheta)"
        out["components"] = [float(v) for v in sasaki.contact_form_at(spec, z)]
    elif q == "phi":
        out["frame"] = "(x_1, y_1, ..., theta) coordinate endomorphism"
        out["matrix"] = _matrix_json(sasaki.phi_tensor_at(spec, z), "float")
    elif q == "sasaki_g":
        s = sasaki.sasaki_metric_at(spec, z, theta=args.angle)
        out["frame"] = "(x_1, y_1, ..., theta) symmetric 2-tensor"
        out["matrix"] = _matrix_json(s.g, "float")
        out["eta_bar"] = [float(v) for v in s.eta_bar]
        out["xi"] = [float(v) for v in s.xi]
    elif q == "cone_g":
        p = ConeChartPoint(r=args.radius, theta=args.angle, z=tuple(z))
        out["frame"] = "(r, x_1, y_1, ..., theta) symmetric 2-tensor"
        out["matrix"] = _matrix_json(cone_metric_at(spec, p), "float")
    elif q == "calabi_g":
        b = complex(args.fiber_b.replace("i", "j"))
        p = BundleChartPoint(z=tuple(z), b=b)
        out["frame"] = "holomorphic (dz_1..dz_m, db) Hermitian matrix"
        out["matrix"] = _matrix_json(
            calabi_metric_at(spec, p, args.constant_c), "float"
        )
    payload = json.dumps(out, indent=2, sort_keys=True) + "\n"
    _emit(payload, args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "info":
            code = cmd_info(args)
        elif args.command == "verify":
            code = cmd_verify(args)
        else:
            code = cmd_eval(args)
    except ConfigError as exc:
        print(f"flagcone: configuration error: {exc}", file=sys.stderr)
        return 2
    except (FlagconeError, ValueError) as exc:
        print(f"flagcone: error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())

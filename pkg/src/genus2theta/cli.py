"""Command-line entry point: ``genus2theta <group> <command> [options]``.

Inputs come from flags holding inline JSON and/or a JSON object given with
``--json`` (a file path or ``-`` for stdin); explicit flags win.  The report is
written as JSON to ``--out`` (default stdout).  Exit status: 0 on success, 1 for
a module error, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import importlib
import json
import sys

import numpy as np

from . import acceptance, characteristics as chars, locus, siegel, strata, surface_group as sg
from .errors import Genus2Error

# the package re-exports the function ``theta``; keep a handle on the module
th = importlib.import_module(__package__ + ".theta")


class InputError(Exception):
    pass


# --- JSON helpers -------------------------------------------------------------

def _cjson(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return [_cjson(v) for v in x]
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (list, tuple)):
        return [_cjson(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _cjson(v) for k, v in x.items()}
    if isinstance(x, set):
        return sorted(x)
    return x


def _params(args) -> dict:
    data = {}
    if args.json:
        try:
            text = sys.stdin.read() if args.json == "-" else open(args.json).read()
            data = json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read --json input: {exc}") from exc
        if not isinstance(data, dict):
            raise InputError("--json input must be a JSON object")
    for key in ("omega", "omega1", "omega2", "z", "delta", "delta1", "delta2", "M", "hc"):
        raw = getattr(args, key, None)
        if raw is not None:
            if key.startswith("delta") and raw.strip() and set(raw.strip()) <= {"0", "1"}:
                data[key] = raw.strip()  # compact bit string such as 1101
                continue
            try:
                data[key] = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise InputError(f"--{key} is not valid JSON: {exc}") from exc
    for key in ("word", "c", "u", "v", "x", "y", "w", "g", "nbeta", "radius", "slices", "direction",
                "generator", "step", "open_from", "ambient_dim", "g1", "index"):
        val = getattr(args, key, None)
        if val is not None:
            data[key] = val
    return data


def _need(data: dict, key: str):
    if key not in data:
        raise InputError(f"missing required input '{key}'")
    return data[key]


def _omega(data, key="omega") -> siegel.PeriodMatrix:
    try:
        return siegel.PeriodMatrix.from_json(_need(data, key))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, Genus2Error):
            raise
        raise InputError(f"malformed {key}: {exc}") from exc


def _vector(data, key="z", g=None) -> np.ndarray:
    try:
        z = siegel.complex_array_from_json(_need(data, key))
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed {key}: {exc}") from exc
    if z.ndim != 1 or (g is not None and z.shape[0] != g):
        raise InputError(f"{key} must be a vector of length {g}")
    return z


def _delta(data, key="delta", g=None) -> chars.Characteristic:
    raw = _need(data, key)
    try:
        if isinstance(raw, str):
            bits = [int(ch) for ch in raw if ch in "01"]
            if not bits or len(bits) % 2:
                raise InputError(f"{key} bit string must have even nonzero length")
            half = len(bits) // 2
            d = chars.Characteristic(tuple(bits[:half]), tuple(bits[half:]))
        else:
            d = chars.Characteristic.from_json(raw)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed {key}: {exc}") from exc
    if g is not None and d.genus != g:
        raise InputError(f"{key} has genus {d.genus}, expected {g}")
    return d


def _symplectic(data) -> siegel.SymplecticIntMatrix:
    if "generator" in data:
        gens = siegel.sp4_generators()
        if data["generator"] not in gens:
            raise InputError(f"unknown generator; choose from {sorted(gens)}")
        return gens[data["generator"]]
    return siegel.SymplecticIntMatrix(np.array(_need(data, "M")))


def _word(data, key) -> sg.SurfaceWord:
    return sg.SurfaceWord.parse(str(_need(data, key)))


# --- commands -----------------------------------------------------------------

def cmd_char(cmd, data, cfg):
    if cmd == "parity":
        d = _delta(data)
        return {"delta": d.to_json(), "parity": d.parity().value}
    if cmd == "enumerate":
        g = int(data.get("g", 2))
        rows = [{"delta": d.to_json(), "parity": d.parity().value} for d in chars.enumerate_characteristics(g)]
        return {"g": g, "characteristics": rows,
                "even": sum(r["parity"] == "even" for r in rows), "odd": sum(r["parity"] == "odd" for r in rows)}
    if cmd == "direct-sum":
        return {"delta": chars.direct_sum(_delta(data, "delta1"), _delta(data, "delta2")).to_json()}
    if cmd == "split":
        first, second = chars.split(_delta(data), int(_need(data, "g1")))
        return {"delta1": first.to_json(), "delta2": second.to_json()}
    if cmd == "half-period":
        omega = _omega(data)
        return {"half_period": chars.half_period(_delta(data, g=omega.g), omega)}
    raise InputError(f"unknown char command {cmd}")


def cmd_siegel(cmd, data, cfg):
    if cmd == "act":
        return {"omega": siegel.act_on_siegel(_symplectic(data), _omega(data)).to_json()}
    if cmd == "act-pair":
        omega = _omega(data)
        new_omega, new_z = siegel.act_on_pair(_symplectic(data), omega, _vector(data, g=omega.g))
        return {"omega": new_omega.to_json(), "z": new_z}
    if cmd == "direct-sum":
        return {"omega": siegel.direct_sum_period(_omega(data, "omega1"), _omega(data, "omega2")).to_json()}
    if cmd == "reducible":
        return {"block_reducible": siegel.is_block_reducible(_omega(data), float(data.get("tol", 1e-10)))}
    if cmd == "reduce":
        omega = _omega(data)
        pt = siegel.reduce_mod_lattice(omega, _vector(data, g=omega.g))
        return {"z": pt.z, "m1": pt.lattice_coords[0].tolist(), "m2": pt.lattice_coords[1].tolist()}
    raise InputError(f"unknown siegel command {cmd}")


def _theta_result(res: th.ThetaResult) -> dict:
    return {"value": res.value, "abs": abs(res.value), "truncation_bound": res.truncation_bound,
            "radius_used": res.radius_used}


def cmd_theta(cmd, data, cfg):
    err = cfg.target_err
    if cmd == "eval":
        omega = _omega(data)
        return _theta_result(th.theta(_delta(data, g=omega.g), omega, _vector(data, g=omega.g), err))
    if cmd == "jet":
        omega = _omega(data)
        jet = th.theta_jet(_delta(data, g=omega.g), omega, _vector(data, g=omega.g), err)
        return {"value": jet.value, "grad_z": jet.grad_z, "hess_z": jet.hess_z,
                "omega_gradient": jet.omega_gradient(), "truncation_bound": jet.truncation_bound}
    if cmd == "null-table":
        omega = _omega(data)
        rows = []
        for d in chars.enumerate_characteristics(omega.g):
            res = th.thetanull(d, omega, err)
            rows.append({"delta": d.to_json(), "parity": d.parity().value, "abs": abs(res.value),
                         "value": res.value, "truncation_bound": res.truncation_bound})
        return {"rows": rows}
    raise InputError(f"unknown theta command {cmd}")


def cmd_theta_check(cmd, data, cfg):
    err = cfg.target_err
    rng = np.random.default_rng(cfg.seed)
    if cmd == "heat":
        omega = _omega(data)
        d = _delta(data, g=omega.g)
        z = _vector(data, g=omega.g)
        r = th.heat_residual(d, omega, z, float(data.get("step", 1e-4)), err)
        return {"relative_residual": r, "passed": r <= 1e-6}
    if cmd == "parity":
        omega = _omega(data)
        d = _delta(data, g=omega.g)
        z = _vector(data, g=omega.g) if "z" in data else rng.uniform(-1, 1, omega.g) + 1j * rng.uniform(-1, 1, omega.g)
        res, tol = th.check_parity(d, omega, z, err)
        return {"residual": res, "tolerance": tol, "passed": res <= tol}
    if cmd == "product":
        o1, o2 = _omega(data, "omega1"), _omega(data, "omega2")
        d = _delta(data, g=o1.g + o2.g)
        r = th.check_product(d, o1, o2, _vector(data, g=o1.g + o2.g), err)
        return {"relative_residual": r, "passed": r <= 1e-10}
    if cmd == "shift":
        omega = _omega(data)
        d = _delta(data, g=omega.g)
        z = _vector(data, g=omega.g)
        r = th.check_shift_reference(d, omega, z, err)
        expected = th.exponential_factor(d, omega, z)
        rel = abs(r - expected) / abs(expected)
        return {"ratio": r, "expected_factor": expected, "relative_mismatch": rel, "passed": rel <= 1e-8}
    if cmd == "transform":
        omega = _omega(data)
        M = _symplectic(data)
        mapping = th.characteristic_map(M, omega, err)
        return {"map": [{"delta": k.to_json(), "image": v.to_json()} for k, v in mapping.items()],
                "bijective": len(set(mapping.values())) == len(mapping),
                "parity_preserved": all(k.parity() is v.parity() for k, v in mapping.items())}
    raise InputError(f"unknown theta check {cmd}")


def cmd_locus(cmd, data, cfg):
    err = cfg.target_err
    if cmd == "slice":
        omega = _omega(data)
        d = _delta(data, g=omega.g)
        j = int(data.get("direction", 0))
        w = complex(*data["w"]) if isinstance(data.get("w"), list) else complex(str(data.get("w", "0.3+0.4j")).replace(" ", ""))
        zeros = locus.slice_zeros(d, omega, locus.coordinate_slice(omega, j, w), err)
        return {"zeros": [zr.to_json() for zr in zeros]}
    if cmd == "trace":
        omega = _omega(data)
        d = _delta(data, g=omega.g)
        cloud = locus.trace_zero_curve(d, omega, int(data.get("slices", 16)), int(data.get("direction", 0)), err)
        return {"n_points": len(cloud), "points": [[_cjson(x) for x in zr.z] for zr in cloud],
                "multiplicities": [zr.multiplicity for zr in cloud]}
    if cmd == "classify":
        omega = _omega(data)
        cls = locus.classify_point(_delta(data, g=omega.g), omega, _vector(data, g=omega.g), target_err=err)
        return cls.to_json()
    if cmd == "verify-reducible":
        o1, o2 = _omega(data, "omega1"), _omega(data, "omega2")
        d = _delta(data, g=2) if "delta" in data else acceptance.ODD_PAIR
        report = locus.verify_reducible_structure(d, o1, o2, int(data.get("slices", 16)), err)
        out = report.to_json()
        out["passed"] = report.branch_residual <= 1e-6 and report.node_count == 1 and report.node_order == 2
        return out
    raise InputError(f"unknown locus command {cmd}")


def cmd_group(cmd, data, cfg):
    if cmd == "reduce":
        w = _word(data, "word")
        return {"word": str(w), "length": len(w), "pretty": w.pretty()}
    if cmd == "trivial":
        w = _word(data, "word")
        return {"word": str(w), "trivial": sg.dehn_is_trivial(w), "dehn_normal_form": str(sg.dehn_reduce(w))}
    if cmd == "abelianize":
        return {"homology": list(sg.abelianize(_word(data, "word")))}
    if cmd == "splitting":
        c = sg.SurfaceWord.parse(str(data.get("c", "")))
        split = sg.splitting_from_scc(c, _word(data, "u"), _word(data, "v"))
        return {**split.to_json(), "invariants": split.invariant_report()}
    if cmd == "hall-witt":
        return {"holds": sg.hall_witt_check(_word(data, "x"), _word(data, "y"), sg.SurfaceWord.parse(str(_need(data, "w"))))}
    if cmd == "verify-figure2":
        return {**sg.figure2_verify(), "four_term_steps": sg.four_term_steps()}
    raise InputError(f"unknown group command {cmd}")


def cmd_strata(cmd, data, cfg):
    if cmd == "nerve":
        nerve = strata.build_nerve(int(_need(data, "nbeta")), int(_need(data, "radius")))
        return {**nerve.to_json(), "triangles": strata.triangle_count(nerve)}
    if cmd == "hc":
        nerve = strata.build_nerve(int(_need(data, "nbeta")), int(_need(data, "radius")))
        return {"nerve": nerve.to_json(), "hc": strata.compute_hc(nerve).to_json()}
    if cmd == "gysin":
        if "hc" in data:
            hc = strata.GradedRanks({int(k): int(v) for k, v in data["hc"].items()})
        else:
            hc = strata.compute_hc(strata.build_nerve(int(data.get("nbeta", 1)), int(data.get("radius", 0))))
        forced = strata.gysin_vanishing(hc, int(data.get("open_from", 3)), int(data.get("ambient_dim", 8)))
        return {"hc": hc.to_json(), "forced_zero": sorted(forced)}
    if cmd == "kernel-rank":
        n = int(_need(data, "nbeta"))
        return {"n_beta": n, "kernel_rank": strata.kernel_rank(n)}
    raise InputError(f"unknown strata command {cmd}")


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--target-err", type=float, default=1e-12)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", help="JSON object with inputs (file path or '-')")
    common.add_argument("--out", default="-", help="output file or '-'")
    for key in ("omega", "omega1", "omega2", "z", "delta", "delta1", "delta2", "M", "hc"):
        common.add_argument(f"--{key}", help="inline JSON")
    common.add_argument("--word")
    common.add_argument("--c")
    common.add_argument("--u")
    common.add_argument("--v")
    common.add_argument("--x")
    common.add_argument("--y")
    common.add_argument("--w")
    common.add_argument("--g", type=int)
    common.add_argument("--g1", type=int)
    common.add_argument("--generator")
    common.add_argument("--nbeta", type=int)
    common.add_argument("--radius", type=int)
    common.add_argument("--slices", type=int)
    common.add_argument("--cell-grid", dest="slices", type=int, help="alias of --slices")
    common.add_argument("--direction", type=int)
    common.add_argument("--step", type=float)
    common.add_argument("--open-from", dest="open_from", type=int)
    common.add_argument("--ambient-dim", dest="ambient_dim", type=int)

    parser = argparse.ArgumentParser(prog="genus2theta", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    layout = {
        "char": ["parity", "enumerate", "direct-sum", "split", "half-period"],
        "siegel": ["act", "act-pair", "direct-sum", "reducible", "reduce"],
        "theta": ["eval", "jet", "null-table"],
        "locus": ["slice", "trace", "classify", "verify-reducible"],
        "group": ["reduce", "trivial", "abelianize", "splitting", "hall-witt", "verify-figure2"],
        "strata": ["nerve", "hc", "gysin", "kernel-rank"],
    }
    for group, commands in layout.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True)
        for name in commands:
            sub.add_parser(name, parents=[common])
        if group == "theta":
            check = sub.add_parser("check")
            checks = check.add_subparsers(dest="check", required=True)
            for name in ("heat", "parity", "product", "shift", "transform"):
                checks.add_parser(name, parents=[common])
    groups.add_parser("verify-all", parents=[common])
    return parser


HANDLERS = {
    "char": cmd_char, "siegel": cmd_siegel, "theta": cmd_theta,
    "locus": cmd_locus, "group": cmd_group, "strata": cmd_strata,
}


def dispatch(args) -> tuple[int, dict]:
    if not args.target_err > 0:
        return 2, {"error": {"code": "malformed_input", "message": "--target-err must be positive", "context": {}}}
    try:
        data = _params(args)
        if args.group == "verify-all":
            report = acceptance.run_all(args.seed)
            return (0 if report["passed"] else 1), report
        if args.group == "theta" and args.command == "check":
            return 0, cmd_theta_check(args.check, data, args)
        return 0, HANDLERS[args.group](args.command, data, args)
    except InputError as exc:
        return 2, {"error": {"code": "malformed_input", "message": str(exc), "context": {}}}
    except Genus2Error as exc:
        return 1, {"error": exc.to_dict()}
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        return 2, {"error": {"code": "malformed_input", "message": str(exc), "context": {"type": type(exc).__name__}}}
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        return 1, {"error": {"code": "numeric_failure", "message": str(exc), "context": {"type": type(exc).__name__}}}
    except Exception as exc:  # structured report instead of a traceback
        return 1, {"error": {"code": "internal_error", "message": str(exc), "context": {"type": type(exc).__name__}}}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    status, report = dispatch(args)
    text = json.dumps(_cjson(report), sort_keys=True, indent=2) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

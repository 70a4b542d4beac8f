"""Command line front end: JSON in, JSON or CSV out, one verb per operation.

Flags that take structured input accept either inline JSON or a file path
("-" reads standard input).  Exit codes: 0 success, 1 domain error (with a
machine-readable error object), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import acceptance, duality, gps, hermitian, isotone_cone, m2, poset
from .errors import InvalidInput, OrderConesError


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _load(text: str):
    """Inline JSON when it looks like JSON, else a file path ('-' is stdin)."""
    stripped = text.strip()
    if not stripped:
        raise InvalidInput("empty input")
    if stripped == "-":
        return json.load(sys.stdin)
    if stripped[:1] in "[{" or stripped in ("true", "false", "null"):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"inline JSON does not parse: {exc}") from exc
    try:
        with open(text, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {text!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"file {text!r} does not parse as JSON: {exc}") from exc


def _emit(args, payload: dict | list | str) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(_jsonable(payload), sort_keys=True, indent=2)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _function_arg(value) -> np.ndarray:
    data = _load(value)
    if isinstance(data, dict):
        data = data.get("values")
    return isotone_cone.as_function(data)


def _functions_arg(value) -> list[np.ndarray]:
    data = _load(value)
    if isinstance(data, dict):
        data = data.get("functions", data.get("values"))
    return [isotone_cone.as_function(row) for row in data]


def _poset_arg(value) -> poset.FinitePoset:
    return poset.FinitePoset.from_json(_load(value))


def _preorder_arg(value) -> poset.FinitePreorder:
    return poset.FinitePreorder.from_json(_load(value))


def _region_arg(value) -> m2.SphericalRegion:
    return m2.SphericalRegion.from_json(_load(value))


def _hermitian_arg(value) -> hermitian.HermitianMatrix:
    data = _load(value)
    if isinstance(data, list):
        data = {"re": data}
    return hermitian.HermitianMatrix.from_json(data)


def _pure_state_arg(value) -> m2.PureStatePoint:
    data = _load(value)
    if isinstance(data, list):
        data = {"xi": data} if np.asarray(data).ndim == 2 else {"bloch": data}
    return m2.PureStatePoint.from_json(data)


def _relation_csv(pre: poset.FinitePreorder) -> str:
    lines = ["source,target"]
    lines += [f"{x},{y}" for x, y in sorted(pre.strict_pairs())]
    return "\n".join(lines)


def _maybe_relation(args, obj: poset.FinitePreorder, extra: dict | None = None):
    if getattr(args, "format", "json") == "csv":
        _emit(args, _relation_csv(obj))
        return
    payload = obj.to_json()
    if extra:
        payload.update(extra)
    _emit(args, payload)


# --------------------------------------------------------------------------
# poset verbs


def _cmd_poset_check(args) -> int:
    try:
        p = _poset_arg(getattr(args, "in"))
    except OrderConesError as exc:
        _emit(args, {"valid": False, "reason": exc.kind, "detail": str(exc)})
        return 0
    _emit(args, {"valid": True, "bounded": poset.bounds(p).bounded})
    return 0


def _cmd_poset_reduce(args) -> int:
    q = _preorder_arg(getattr(args, "in"))
    reduced, projection = poset.reduce_preorder(q)
    _emit(args, {"poset": reduced.to_json(), "projection": projection})
    return 0


def _cmd_poset_combine(args) -> int:
    combined = poset.combine(_poset_arg(args.a), _poset_arg(args.b), args.mode)
    _maybe_relation(args, combined)
    return 0


def _cmd_poset_interval(args) -> int:
    p = _poset_arg(getattr(args, "in"))
    _emit(args, {"elements": poset.interval(p, args.x, args.y)})
    return 0


def _cmd_poset_bounds(args) -> int:
    b = poset.bounds(_poset_arg(getattr(args, "in")))
    _emit(args, {"top": b.top, "bottom": b.bottom})
    return 0


def _cmd_poset_sprinkle(args) -> int:
    sprinkled = poset.sprinkle_minkowski(args.n, args.seed)
    payload = sprinkled.poset.to_json()
    payload["coords"] = sprinkled.coords_json()
    if args.format == "csv":
        _emit(args, _relation_csv(sprinkled.poset))
    else:
        _emit(args, payload)
    return 0


# --------------------------------------------------------------------------
# cone verbs


def _cmd_cone_isotone(args) -> int:
    p = _preorder_arg(args.poset)
    f = _function_arg(args.f)
    _emit(args, {"isotone": isotone_cone.is_isotone(p, f, tol=args.tol)})
    return 0


def _cmd_cone_order_from(args) -> int:
    elements = _load(args.elements)
    fns = _functions_arg(args.functions)
    pre, separates = isotone_cone.order_from_functions(elements, fns, tol=args.tol)
    _maybe_relation(args, pre, {"separates_points": separates})
    return 0


def _cmd_cone_express(args) -> int:
    p = _poset_arg(args.poset)
    gens = _functions_arg(args.generators)
    target = _function_arg(args.target)
    expr = isotone_cone.stone_nachbin_express(p, gens, target, tol=args.tol, prune=args.prune)
    err = float(np.max(np.abs(isotone_cone.eval_expr(expr, gens) - target)))
    _emit(args, {"expr": expr.to_json(), "max_error": err})
    return 0


def _cmd_cone_eval(args) -> int:
    expr = isotone_cone.expr_from_json(_load(args.expr))
    fns = _functions_arg(args.functions) if args.functions else []
    values = isotone_cone.eval_expr(expr, fns, size=args.size)
    _emit(args, {"values": values.tolist()})
    return 0


def _cmd_cone_decompose(args) -> int:
    p = _poset_arg(args.poset)
    terms = isotone_cone.upset_decomposition(p, _function_arg(args.f), tol=args.tol)
    _emit(
        args,
        {"terms": [{"coeff": c, "indicator": ind.tolist()} for c, ind in terms]},
    )
    return 0


def _cmd_cone_contains(args) -> int:
    contained = isotone_cone.generated_cone_contains(
        _load(args.elements), _functions_arg(args.functions), _function_arg(args.f), tol=args.tol
    )
    _emit(args, {"contains": contained})
    return 0


def _cmd_cone_minimal(args) -> int:
    p = _poset_arg(getattr(args, "in"))
    witness = isotone_cone.minimal_witness(p)
    if witness is None:
        _emit(args, {"witness": None, "totally_ordered": True})
        return 0
    payload = {
        "witness": {
            "x": witness.x,
            "y": witness.y,
            "in_cone": witness.in_cone.tolist(),
            "outside": witness.outside.tolist(),
        },
        "totally_ordered": False,
    }
    if args.pair:
        a, b = args.pair
        payload["separator"] = {"a": a, "b": b, "values": witness.separator(a, b).tolist()}
    _emit(args, payload)
    return 0


def _cmd_cone_cobounded(args) -> int:
    res = isotone_cone.cobounded_commutative(_poset_arg(getattr(args, "in")))
    payload: dict = {"cobounded": res.cobounded, "witness": None}
    if res.witness is not None:
        payload["witness"] = {
            "f": res.witness.f.tolist(),
            "g": res.witness.g.tolist(),
            "condition": res.witness.condition,
            "lhs": res.witness.lhs,
            "rhs": res.witness.rhs,
        }
    _emit(args, payload)
    return 0


# --------------------------------------------------------------------------
# herm verbs


def _sqrt_guard(x: float) -> float:
    if x < -1e-10:
        raise ValueError("negative spectral point")
    return float(np.sqrt(max(x, 0.0)))


_NAMED_FUNCTIONS = {
    "abs": abs,
    "sqrt": _sqrt_guard,
    "square": lambda x: x * x,
    "identity": lambda x: x,
    "exp": np.exp,
}


def _cmd_herm_spectral(args) -> int:
    dec = hermitian.spectral(_hermitian_arg(getattr(args, "in")))
    _emit(args, dec.to_json())
    return 0


def _cmd_herm_fn(args) -> int:
    if args.fn not in _NAMED_FUNCTIONS:
        raise InvalidInput(f"unknown function {args.fn!r}; pick one of {sorted(_NAMED_FUNCTIONS)}")
    out = hermitian.func_calc(_hermitian_arg(getattr(args, "in")), _NAMED_FUNCTIONS[args.fn])
    _emit(args, out.to_json())
    return 0


def _cmd_herm_lattice(args) -> int:
    join, meet = hermitian.lattice_ops(_hermitian_arg(args.a), _hermitian_arg(args.b))
    _emit(args, {"join": join.to_json(), "meet": meet.to_json()})
    return 0


def _cmd_herm_classify(args) -> int:
    _emit(args, hermitian.classify(_hermitian_arg(getattr(args, "in"))).to_json())
    return 0


# --------------------------------------------------------------------------
# m2 verbs


def _cmd_m2_hopf(args) -> int:
    data = _load(args.xi)
    if isinstance(data, dict):
        data = data["xi"]
    pairs = np.asarray(data, dtype=float)
    bloch = m2.hopf(pairs[:, 0] + 1j * pairs[:, 1])
    _emit(args, {"bloch": bloch.tolist()})
    return 0


def _cmd_m2_member(args) -> int:
    member = m2.iso_membership(_region_arg(args.region), _hermitian_arg(args.matrix), tol=args.tol)
    _emit(args, {"member": member})
    return 0


def _cmd_m2_order(args) -> int:
    region = _region_arg(args.region)
    if args.samples:
        rng = np.random.default_rng(args.seed)
        pts = rng.normal(size=(2 * args.samples, 3))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        rows = []
        for i in range(args.samples):
            p = m2.PureStatePoint.from_bloch(pts[2 * i])
            q = m2.PureStatePoint.from_bloch(pts[2 * i + 1])
            rows.append((pts[2 * i], pts[2 * i + 1], m2.pure_state_order(region, p, q, tol=args.tol)))
        if args.format == "csv":
            lines = ["px,py,pz,qx,qy,qz,relation"]
            for p, q, rel in rows:
                lines.append(",".join(repr(float(x)) for x in (*p, *q)) + f",{rel}")
            _emit(args, "\n".join(lines))
        else:
            _emit(
                args,
                {
                    "samples": [
                        {"p": p.tolist(), "q": q.tolist(), "relation": rel} for p, q, rel in rows
                    ]
                },
            )
        return 0
    if not args.p or not args.q:
        raise InvalidInput("need --p and --q (or --samples for a scan)")
    p = _pure_state_arg(args.p)
    q = _pure_state_arg(args.q)
    _emit(args, {"relation": m2.pure_state_order(region, p, q, tol=args.tol)})
    return 0


def _cmd_m2_state_order(args) -> int:
    region = _region_arg(args.region)
    rho = m2.DensityState.from_json(_load(args.rho))
    sigma = m2.DensityState.from_json(_load(args.sigma))
    _emit(args, {"relation": m2.state_order(region, rho, sigma, tol=args.tol)})
    return 0


def _cmd_m2_fs(args) -> int:
    p = _pure_state_arg(args.p)
    q = _pure_state_arg(args.q)
    _emit(
        args,
        {"distance": m2.fubini_study(p, q), "probability": m2.transition_probability(p, q)},
    )
    return 0


def _cmd_m2_transverse(args) -> int:
    data = _load(args.matrix)
    if isinstance(data, list):
        data = {"re": data}
    mat = hermitian.complex_matrix_from_json(data)
    result = m2.transversality(_region_arg(args.region), mat, tol=args.tol)
    _emit(args, result.to_json())
    return 0


def _cmd_m2_join_coeffs(args) -> int:
    alpha, beta = m2.join_coeffs(_hermitian_arg(args.a), _hermitian_arg(args.b))
    _emit(args, {"alpha": alpha, "beta": beta})
    return 0


def _cmd_m2_cobounded(args) -> int:
    witness = m2.cobounded_witness(_region_arg(args.region))
    _emit(args, {"witness": None if witness is None else witness.to_json()})
    return 0


def _cmd_m2_rotation(args) -> int:
    rot = np.asarray(_load(args.matrix), dtype=float)
    _emit(args, {"preserves": m2.rotation_preserves(_region_arg(args.region), rot, tol=args.tol)})
    return 0


# --------------------------------------------------------------------------
# dual verbs


def _cmd_dual_from_poset(args) -> int:
    algebra = duality.algebra_from_poset(_poset_arg(getattr(args, "in")))
    _emit(args, algebra.to_json())
    return 0


def _algebra_arg(value) -> duality.FiniteCommutativeIStar:
    data = _load(value)
    if isinstance(data, dict) and "poset" in data:
        data = data["poset"]
    return duality.algebra_from_poset(poset.FinitePoset.from_json(data))


def _cmd_dual_characters(args) -> int:
    recovered = duality.character_order(_algebra_arg(getattr(args, "in")))
    _maybe_relation(args, recovered)
    return 0


def _cmd_dual_morphism(args) -> int:
    mapping = _load(args.map)
    if isinstance(mapping, dict) and "map" in mapping:
        mapping = mapping["map"]
    report = duality.morphism_check(mapping, _poset_arg(args.source), _poset_arg(args.target))
    _emit(args, report.to_json())
    return 0


def _cmd_dual_cobounded_duality(args) -> int:
    p = _poset_arg(getattr(args, "in"))
    agree = duality.cobounded_duality_check(p)
    _emit(
        args,
        {
            "agree": agree,
            "cobounded": isotone_cone.cobounded_commutative(p).cobounded,
            "bounded": poset.bounds(p).bounded,
        },
    )
    return 0


# --------------------------------------------------------------------------
# gps verbs


def _space_arg(args) -> tuple[gps.FiniteMetricSpace, list]:
    data = _load(getattr(args, "in"))
    space = gps.FiniteMetricSpace.from_json(data)
    landmarks = data.get("landmarks", [])
    if args.landmarks:
        landmarks = _load(args.landmarks)
    if not landmarks:
        raise InvalidInput("no landmarks given (in the file or via --landmarks)")
    return space, landmarks


def _cmd_gps_complete(args) -> int:
    space, landmarks = _space_arg(args)
    _emit(args, {"complete": gps.gps_complete(space, landmarks, tol=args.tol)})
    return 0


def _cmd_gps_order(args) -> int:
    space, landmarks = _space_arg(args)
    result = gps.gps_order(space, landmarks, orientation=args.orientation, tol=args.tol)
    _maybe_relation(args, result.order, {"complete": result.complete, "orientation": args.orientation})
    return 0


# --------------------------------------------------------------------------
# accept


def _cmd_accept_all(args) -> int:
    only = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    results = acceptance.run_all(seed=args.seed, fast=args.fast, only=only)
    for r in results:
        print(r.line())
    all_passed = all(r.passed for r in results)
    summary = {
        "seed": args.seed,
        "fast": args.fast,
        "all_passed": all_passed,
        "criteria": [r.to_json() for r in results],
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(_jsonable(summary), fh, sort_keys=True, indent=2)
            fh.write("\n")
    print("ALL CRITERIA PASSED" if all_passed else "CRITERIA FAILED")
    return 0 if all_passed else 1


# --------------------------------------------------------------------------
# parser


def _add_common(sp, tol_default: float | None = None, fmt: bool = False):
    sp.add_argument("--out", help="write the result to this path instead of stdout")
    if tol_default is not None:
        sp.add_argument("--tol", type=float, default=tol_default, help="comparison tolerance")
    if fmt:
        sp.add_argument("--format", choices=["json", "csv"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordercones",
        description="Finite posets, isotone cones, and 2x2 matrix order structures.",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("poset", help="finite poset operations").add_subparsers(
        dest="verb", required=True
    )
    sp = g.add_parser("check")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_poset_check)
    sp = g.add_parser("reduce")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_poset_reduce)
    sp = g.add_parser("combine")
    sp.add_argument("--mode", choices=["product", "disjoint_union"], required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    _add_common(sp, fmt=True)
    sp.set_defaults(handler=_cmd_poset_combine)
    sp = g.add_parser("interval")
    sp.add_argument("--in", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_poset_interval)
    sp = g.add_parser("bounds")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_poset_bounds)
    sp = g.add_parser("sprinkle")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    _add_common(sp, fmt=True)
    sp.set_defaults(handler=_cmd_poset_sprinkle)

    g = groups.add_parser("cone", help="isotone cone operations").add_subparsers(
        dest="verb", required=True
    )
    sp = g.add_parser("isotone")
    sp.add_argument("--poset", required=True)
    sp.add_argument("--f", required=True)
    _add_common(sp, tol_default=isotone_cone.DEFAULT_TOL)
    sp.set_defaults(handler=_cmd_cone_isotone)
    sp = g.add_parser("order-from")
    sp.add_argument("--elements", required=True)
    sp.add_argument("--functions", required=True)
    _add_common(sp, tol_default=isotone_cone.DEFAULT_TOL, fmt=True)
    sp.set_defaults(handler=_cmd_cone_order_from)
    sp = g.add_parser("express")
    sp.add_argument("--poset", required=True)
    sp.add_argument("--generators", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--prune", action="store_true")
    _add_common(sp, tol_default=isotone_cone.DEFAULT_TOL)
    sp.set_defaults(handler=_cmd_cone_express)
    sp = g.add_parser("eval")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--functions")
    sp.add_argument("--size", type=int)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_cone_eval)
    sp = g.add_parser("decompose")
    sp.add_argument("--poset", required=True)
    sp.add_argument("--f", required=True)
    _add_common(sp, tol_default=isotone_cone.DEFAULT_TOL)
    sp.set_defaults(handler=_cmd_cone_decompose)
    sp = g.add_parser("contains")
    sp.add_argument("--elements", required=True)
    sp.add_argument("--functions", required=True)
    sp.add_argument("--f", required=True)
    _add_common(sp, tol_default=isotone_cone.DEFAULT_TOL)
    sp.set_defaults(handler=_cmd_cone_contains)
    sp = g.add_parser("minimal")
    sp.add_argument("--in", required=True)
    sp.add_argument("--pair", nargs=2, metavar=("A", "B"))
    _add_common(sp)
    sp.set_defaults(handler=_cmd_cone_minimal)
    sp = g.add_parser("cobounded")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_cone_cobounded)

    g = groups.add_parser("herm", help="hermitian matrix operations").add_subparsers(
        dest="verb", required=True
    )
    sp = g.add_parser("spectral")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_herm_spectral)
    sp = g.add_parser("fn")
    sp.add_argument("--in", required=True)
    sp.add_argument("--fn", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_herm_fn)
    sp = g.add_parser("lattice")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_herm_lattice)
    sp = g.add_parser("classify")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_herm_classify)

    g = groups.add_parser("m2", help="2x2 algebra order operations").add_subparsers(
        dest="verb", required=True
    )
    sp = g.add_parser("hopf")
    sp.add_argument("--xi", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_m2_hopf)
    sp = g.add_parser("member")
    sp.add_argument("--region", required=True)
    sp.add_argument("--matrix", required=True)
    _add_common(sp, tol_default=m2.GEOM_TOL)
    sp.set_defaults(handler=_cmd_m2_member)
    sp = g.add_parser("order")
    sp.add_argument("--region", required=True)
    sp.add_argument("--p")
    sp.add_argument("--q")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int, default=0)
    _add_common(sp, tol_default=m2.GEOM_TOL, fmt=True)
    sp.set_defaults(handler=_cmd_m2_order)
    sp = g.add_parser("state-order")
    sp.add_argument("--region", required=True)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--sigma", required=True)
    _add_common(sp, tol_default=m2.GEOM_TOL)
    sp.set_defaults(handler=_cmd_m2_state_order)
    sp = g.add_parser("fs")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_m2_fs)
    sp = g.add_parser("transverse")
    sp.add_argument("--region", required=True)
    sp.add_argument("--matrix", required=True)
    _add_common(sp, tol_default=m2.GEOM_TOL)
    sp.set_defaults(handler=_cmd_m2_transverse)
    sp = g.add_parser("join-coeffs")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_m2_join_coeffs)
    sp = g.add_parser("cobounded")
    sp.add_argument("--region", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_m2_cobounded)
    sp = g.add_parser("rotation")
    sp.add_argument("--region", required=True)
    sp.add_argument("--matrix", required=True)
    _add_common(sp, tol_default=m2.GEOM_TOL)
    sp.set_defaults(handler=_cmd_m2_rotation)

    g = groups.add_parser("dual", help="poset/algebra round trips").add_subparsers(
        dest="verb", required=True
    )
    sp = g.add_parser("from-poset")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_dual_from_poset)
    sp = g.add_parser("characters")
    sp.add_argument("--in", required=True)
    _add_common(sp, fmt=True)
    sp.set_defaults(handler=_cmd_dual_characters)
    sp = g.add_parser("morphism")
    sp.add_argument("--source", required=True, help="domain poset of the map")
    sp.add_argument("--target", required=True, help="codomain poset of the map")
    sp.add_argument("--map", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_dual_morphism)
    sp = g.add_parser("cobounded-duality")
    sp.add_argument("--in", required=True)
    _add_common(sp)
    sp.set_defaults(handler=_cmd_dual_cobounded_duality)

    g = groups.add_parser("gps", help="landmark orders on metric spaces").add_subparsers(
        dest="verb", required=True
    )
    sp = g.add_parser("complete")
    sp.add_argument("--in", required=True)
    sp.add_argument("--landmarks")
    _add_common(sp, tol_default=isotone_cone.DEFAULT_TOL)
    sp.set_defaults(handler=_cmd_gps_complete)
    sp = g.add_parser("order")
    sp.add_argument("--in", required=True)
    sp.add_argument("--landmarks")
    sp.add_argument("--orientation", choices=["remark", "reversed"], default="remark")
    _add_common(sp, tol_default=isotone_cone.DEFAULT_TOL, fmt=True)
    sp.set_defaults(handler=_cmd_gps_order)

    g = groups.add_parser("accept", help="run the acceptance suite").add_subparsers(
        dest="verb", required=True
    )
    sp = g.add_parser("all")
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--fast", action="store_true", help="scaled-down smoke run")
    sp.add_argument("--criteria", help="comma-separated criterion numbers to run")
    sp.add_argument("--out", help="write the JSON report here")
    sp.set_defaults(handler=_cmd_accept_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except OrderConesError as exc:
        print(
            json.dumps({"error": {"kind": exc.kind, "detail": str(exc)}}, sort_keys=True),
            file=sys.stdout,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())

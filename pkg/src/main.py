"""
idxlab command line.

    idxlab field 3 --ext 2
    idxlab hs germ.json --ideal "x^2+x*y+y^2"
    idxlab census conic.json --max-degree 4
    idxlab lift model.json --point a 1 --ext 2 --cut "y-1"
    idxlab suite

Descriptors are JSON files ("-" reads stdin). Reports go to stdout as JSON
with sorted keys; logs go to stderr. Exit status: 0 success, 1 a suite check
failed, 2 bad input.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, ValidationError

from src.algebra.fields import GENERATOR_NAME, extension_of, make_extension, make_prime_field
from src.algebra.fermat import fermat_decomposition, fermat_known_degrees
from src.algebra.parser import parse_point, parse_poly
from src.algebra.poly import MultiPoly
from src.census.points import VarietyDescriptor, closed_point_census, regular_filter
from src.config.settings import RunConfig, settings
from src.descriptors import SCHEMA, Descriptor, parse_descriptor
from src.errors import IdxLabError
from src.invariants.gamma import gamma_estimate, principal_multiplicity_scan
from src.local.hilbert import (
    LocalRingSpec,
    PrimaryIdealSpec,
    hs_table,
    local_ring_at,
    multiplicity_at_point,
)
from src.models.dvr import (
    ModelDescriptor,
    lift_degree,
    model_fiber_decomposition,
    model_point_report,
)
from src.resolution.blowup import resolve_germ
from src.resolution.cone import cone_theorem_check
from src.suite.checks import GROUPS, run_suite

logger = logging.getLogger("idxlab")


# ── input helpers ───────────────────────────────────────────────────────


def _load(path: str) -> Descriptor:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return parse_descriptor(data)


def _expect(descriptor: Descriptor, kind: type, command: str):
    if not isinstance(descriptor, kind):
        raise IdxLabError(f"`{command}` needs a {kind.__name__} descriptor, got {type(descriptor).__name__}")
    return descriptor


def _local(descriptor: Descriptor) -> LocalRingSpec:
    """Local specs pass through; a variety is read as the germ of its equations at the origin."""
    if isinstance(descriptor, LocalRingSpec):
        return descriptor
    if isinstance(descriptor, VarietyDescriptor):
        return LocalRingSpec(field=descriptor.field, vars=descriptor.vars, ideal_generators=descriptor.generators)
    raise IdxLabError("this command needs a local ring or variety descriptor")


def _ideals(spec: LocalRingSpec, texts: Optional[Sequence[str]]) -> List[PrimaryIdealSpec]:
    out = []
    for text in texts or []:
        gens = [parse_poly(s.strip(), spec.field, spec.vars) for s in text.split(",")]
        out.append(PrimaryIdealSpec(generators=gens))
    return out


def _point(field, texts: Sequence[str], ext: int):
    return parse_point(texts, extension_of(field, ext))


# ── commands ────────────────────────────────────────────────────────────


def cmd_field(args, config: RunConfig) -> Dict[str, Any]:
    base = make_prime_field(args.p)
    F = base if args.ext == 1 else make_extension(base, args.ext)
    modulus = None
    if F.modulus is not None:
        modulus = str(MultiPoly.from_univariate(base, (GENERATOR_NAME,), GENERATOR_NAME, F.modulus))
    return {
        "p": F.p,
        "k": F.k,
        "order": F.order,
        "modulus": modulus,
        "generator": F.format(F.generator().value) if F.k > 1 else None,
    }


def cmd_mult(args, config: RunConfig) -> Dict[str, Any]:
    descriptor = _load(args.descriptor)
    if args.point:
        v = _expect(descriptor, VarietyDescriptor, "mult --point")
        point = _point(v.field, args.point, args.ext)
        e = multiplicity_at_point(v, point, n_max=config.hs_max, m_max=config.truncation)
        spec = local_ring_at(v, point)
        table = hs_table(spec, n_max=config.hs_max, m_max=config.truncation)
        return {"dimension": table.dimension, "multiplicity": e, "ring": _describe(spec)}
    spec = _local(descriptor)
    Q = (_ideals(spec, args.ideal) or [None])[0]
    table = hs_table(spec, Q, n_max=config.hs_max, m_max=config.truncation)
    return {"dimension": table.dimension, "multiplicity": table.multiplicity, "ring": _describe(spec)}


def _describe(spec: LocalRingSpec) -> Dict[str, Any]:
    return {"field": repr(spec.field), "vars": list(spec.vars), "ideal": [str(g) for g in spec.generators]}


def cmd_hs(args, config: RunConfig) -> BaseModel:
    spec = _local(_load(args.descriptor))
    Q = (_ideals(spec, args.ideal) or [None])[0]
    return hs_table(spec, Q, n_max=config.hs_max, extend=args.extend, m_max=config.truncation)


def cmd_gamma(args, config: RunConfig) -> BaseModel:
    spec = _local(_load(args.descriptor))
    return gamma_estimate(
        spec,
        trials=config.trials,
        degree_bound=args.degree_bound,
        seed=config.seed,
        curated=_ideals(spec, args.ideal),
        m_max=config.truncation,
        n_max=config.hs_max,
    )


def cmd_scan(args, config: RunConfig) -> BaseModel:
    spec = _local(_load(args.descriptor))
    return principal_multiplicity_scan(spec, args.bound, m_max=config.truncation)


def cmd_census(args, config: RunConfig) -> BaseModel:
    v = _expect(_load(args.descriptor), VarietyDescriptor, "census")
    if args.regular:
        return regular_filter(v, config.max_degree)
    return closed_point_census(v, config.max_degree)


def cmd_index(args, config: RunConfig) -> Dict[str, Any]:
    v = _expect(_load(args.descriptor), VarietyDescriptor, "index")
    census = regular_filter(v, config.max_degree) if args.regular else closed_point_census(v, config.max_degree)
    return {
        "delta": census.gcd_estimate,
        "nu": census.min_degree,
        "max_degree": census.max_degree,
        "upper_estimate": census.upper_estimate,
    }


def cmd_cone(args, config: RunConfig) -> BaseModel:
    v = _expect(_load(args.descriptor), VarietyDescriptor, "cone")
    spec = LocalRingSpec(field=v.field, vars=v.vars, ideal_generators=v.generators)
    return cone_theorem_check(
        v,
        D=config.max_degree,
        trials=config.trials,
        curated=_ideals(spec, args.ideal),
        seed=config.seed,
        degree=args.degree,
        m_max=config.truncation,
        n_max=config.hs_max,
    )


def cmd_resolve(args, config: RunConfig) -> BaseModel:
    spec = _local(_load(args.descriptor))
    if not spec.is_hypersurface or len(spec.vars) != 2:
        raise IdxLabError("`resolve` needs a plane curve germ: two variables, one equation")
    return resolve_germ(spec.generators[0], root_choice=args.root_choice)


def cmd_model(args, config: RunConfig) -> Dict[str, Any]:
    m = _expect(_load(args.descriptor), ModelDescriptor, "model")
    out: Dict[str, Any] = {"fiber": model_fiber_decomposition(m, config.max_degree)}
    if args.point:
        out["point"] = model_point_report(m, _point(m.field, args.point, args.ext))
    return out


def cmd_lift(args, config: RunConfig) -> BaseModel:
    m = _expect(_load(args.descriptor), ModelDescriptor, "lift")
    g = parse_poly(args.cut, m.field, m.vars)
    return lift_degree(m, _point(m.field, args.point, args.ext), g)


def cmd_fermat(args, config: RunConfig) -> Dict[str, Any]:
    b, e_p = fermat_decomposition(args.p)
    return {
        "p": args.p,
        "b": b,
        "E_p": str(e_p),
        "deg_E_p": e_p.total_degree,
        "known_degrees": fermat_known_degrees(args.p),
    }


def cmd_suite(args, config: RunConfig) -> BaseModel:
    return run_suite(config, groups=args.group)


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], Any]] = {
    "field": cmd_field,
    "mult": cmd_mult,
    "hs": cmd_hs,
    "gamma": cmd_gamma,
    "scan": cmd_scan,
    "census": cmd_census,
    "index": cmd_index,
    "cone": cmd_cone,
    "resolve": cmd_resolve,
    "model": cmd_model,
    "lift": cmd_lift,
    "fermat": cmd_fermat,
    "suite": cmd_suite,
}


# ── argument parsing ────────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=None, help="census degree D (default: automatic)")
    common.add_argument("--trials", type=int, default=None, help="sampled parameter ideals")
    common.add_argument("--seed", type=int, default=None, help="64-bit sampler seed")
    common.add_argument("--truncation", type=int, default=None, help="cutoff cap M_max")
    common.add_argument("--hs-max", type=int, default=None, help="Hilbert-Samuel rows n_max")
    common.add_argument("--out", choices=["json", "table"], default=None, help="report format")

    parser = argparse.ArgumentParser(prog="idxlab", description="Index, multiplicity and resolution computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str, descriptor: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        if descriptor:
            p.add_argument("descriptor", help="JSON descriptor file, or - for stdin")
        return p

    p = command("field", "describe F_p or F_{p^k}", descriptor=False)
    p.add_argument("p", type=int)
    p.add_argument("--ext", type=int, default=1)

    p = command("mult", "multiplicity of a local ring, or of a variety at a point")
    p.add_argument("--ideal", action="append", help="comma-separated generators of Q")
    p.add_argument("--point", nargs="+")
    p.add_argument("--ext", type=int, default=1, help="degree of the field holding the point")

    p = command("hs", "Hilbert-Samuel table")
    p.add_argument("--ideal", action="append", help="comma-separated generators of Q")
    p.add_argument("--extend", type=int, default=0, help="rows computed after the difference settles")

    p = command("gamma", "gcd of multiplicities over curated and sampled ideals")
    p.add_argument("--ideal", action="append", help="comma-separated generators of a curated ideal")
    p.add_argument("--degree-bound", type=int, default=None)

    p = command("scan", "every principal length up to a degree bound")
    p.add_argument("--bound", type=int, required=True)

    p = command("census", "closed points by degree")
    p.add_argument("--regular", action="store_true", help="regular points only")

    p = command("index", "index estimate from the census")
    p.add_argument("--regular", action="store_true", help="regular points only")

    p = command("cone", "index of V against multiplicities at the vertex of its cone")
    p.add_argument("--ideal", action="append", help="comma-separated generators of a curated ideal")
    p.add_argument("--degree", type=int, default=None, help="deg V, compared with e(m) at the vertex")

    p = command("resolve", "places of a plane curve germ")
    p.add_argument("--root-choice", type=int, default=0)

    p = command("model", "special fiber of a model over F_q[[t]]")
    p.add_argument("--point", nargs="+")
    p.add_argument("--ext", type=int, default=1)

    p = command("lift", "degree of a lifted point through a fiber point")
    p.add_argument("--point", nargs="+", required=True)
    p.add_argument("--ext", type=int, default=1)
    p.add_argument("--cut", required=True, help="cutting curve g(x, y)")

    p = command("fermat", "x^p+(1-x)^p-1 decomposition", descriptor=False)
    p.add_argument("p", type=int)

    p = command("suite", "run the acceptance suite", descriptor=False)
    p.add_argument("--group", action="append", choices=[name for name, _ in GROUPS])

    return parser


# ── output ──────────────────────────────────────────────────────────────


def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json", by_alias=True)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def render(command: str, result: Any, output: str) -> str:
    payload = _plain(result)
    if output == "table":
        rows = payload.items() if isinstance(payload, dict) else [("result", payload)]
        return "\n".join(f"{k:<16} {json.dumps(v, sort_keys=True)}" for k, v in rows)
    return json.dumps({"schema": SCHEMA, "command": command, "result": payload}, sort_keys=True, indent=2)


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(
        level=settings.log_level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.from_settings(
            seed=args.seed,
            max_degree=args.max_degree,
            trials=args.trials,
            truncation=args.truncation,
            hs_max=args.hs_max,
            output=args.out,
        )
        logger.debug("[CLI] %s with %s", args.command, config)
        result = COMMANDS[args.command](args, config)
    except (IdxLabError, ValidationError, OSError) as exc:
        print(f"idxlab {args.command}: {exc}", file=sys.stderr)
        return 2
    print(render(args.command, result, config.output))
    if args.command == "suite":
        return result.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())

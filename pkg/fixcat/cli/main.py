"""
fixcat command line.

Every subcommand loads its input documents, runs one operation and writes a
single result document to stdout (json, text or dot). Logs go to stderr.

Exit codes: 0 pass, 1 verdict failure or domain error, 2 input or usage
error, 3 chain did not stabilize or a budget was exceeded.
"""
import argparse
import itertools
import logging
import sys
from dataclasses import dataclass

import numpy as np
from pydantic import ValidationError

from config.settings import settings
from fixcat import __version__
from fixcat.core.adamek import (
    adamek_lax,
    adamek_on_object,
    free_algebra,
    initial_algebra,
    lambek_verify,
    propagate,
    propagation_fixed_check,
    terminal_coalgebra,
)
from fixcat.core.algebra import Algebra, StructureHom, coalgebra_homs, iter_coalgebras, iter_lax_algebras
from fixcat.core.category import FinSet
from fixcat.core.chains import NotStabilized
from fixcat.core.dataflow import dataflow_solve, worklist_solve
from fixcat.core.errors import BudgetExceeded, FixcatError, IllTypedInput
from fixcat.core.fixpoint import (
    colocal_via_lift,
    coreflect,
    is_F_colocal,
    is_F_local,
    local_via_lift,
    local_via_section,
    reflect,
    reflection_adjunction_check,
)
from fixcat.core.lattice import gfp, gfp_via_adamek, lfp, lfp_via_adamek
from fixcat.core.presheaf import completeness_check, completeness_check_representable, segal_check
from fixcat.core.rank import (
    contractible,
    depth,
    enumerate_machines,
    enumerate_skeletons,
    hom_rank_profile,
    is_noetherian,
    noeth_equiv_rank,
    rank,
    skeleton_key,
)
from fixcat.core.sigma import SigmaBound, SigmaObject, sigma_hom_enumerate
from fixcat.models.algebra import AlgebraDocument, CoalgebraDocument, HomDocument, HomKind, LaxAlgebraDocument
from fixcat.models.category import FunctorDocument
from fixcat.models.higher import PresheafDocument, SkeletonDocument
from fixcat.models.lattice import CfgDocument, LatticeDocument, MapDocument
from fixcat.models.run import OutputFormat, RunConfig
from fixcat.services.loader import (
    algebra_document,
    build_algebra,
    build_cfg,
    build_coalgebra,
    build_functor,
    build_hom,
    build_lattice,
    build_lax_algebra,
    build_map,
    build_presheaf,
    build_skeleton,
    coalgebra_document,
    load_document,
    map_to_pairs,
    parse_elements,
    write_schemas,
)
from fixcat.services.render import chain_to_dot, dump_json, pushout_row_to_dot, render_text, stage_rows

logger = logging.getLogger("fixcat.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


@dataclass
class Outcome:
    doc: dict
    code: int = EXIT_OK
    rows: list | None = None
    dot: str | None = None


# ── Shared helpers ──


def _verdict(passed: bool) -> int:
    return EXIT_OK if passed else EXIT_FAILED


def _not_stabilized(outcome: NotStabilized, name: str = "chain") -> Outcome:
    return Outcome(
        outcome.report(), EXIT_BUDGET,
        rows=stage_rows(outcome.stage_sizes, outcome.image_sizes),
        dot=chain_to_dot(outcome.stage_sizes, name),
    )


def _structure_doc(result, spec):
    """Document form of a computed (co)algebra; thin-lattice results are single elements."""
    if not isinstance(result.carrier, FinSet):
        return {"carrier": result.carrier}
    if isinstance(result, Algebra):
        return algebra_document(result, spec).model_dump(mode="json", exclude_none=True)
    return coalgebra_document(result, spec).model_dump(mode="json", exclude_none=True)


def _certificate(cert, spec, key: str, name: str) -> Outcome:
    if isinstance(cert, NotStabilized):
        return _not_stabilized(cert, name)
    cat = cert.result.functor.category
    doc = {
        "status": "stabilized",
        "index": cert.index,
        "stage_sizes": cert.stage_sizes,
        "carrier_size": cat.size(cert.result.carrier),
        "probes": cert.probes,
        "verified": cert.verified,
        key: _structure_doc(cert.result, spec),
    }
    return Outcome(doc, _verdict(cert.verified), stage_rows(cert.stage_sizes),
                   chain_to_dot(cert.stage_sizes, name, cert.index))


def _functor(args):
    doc = load_document(args.functor, FunctorDocument)
    return build_functor(doc.functor), doc.functor


# ── Adámek drivers ──


def cmd_initial_algebra(args, run: RunConfig) -> Outcome:
    F, spec = _functor(args)
    return _certificate(initial_algebra(F, run.budget, run.probe_size), spec, "algebra", "initial")


def cmd_terminal_coalgebra(args, run: RunConfig) -> Outcome:
    F, spec = _functor(args)
    return _certificate(terminal_coalgebra(F, run.budget, run.probe_size), spec, "coalgebra", "terminal")


def cmd_free_algebra(args, run: RunConfig) -> Outcome:
    F, spec = _functor(args)
    K = parse_elements(args.object)
    if args.route == "lax":
        cert = adamek_on_object(F, K, run.budget, run.probe_size)
    else:
        cert = free_algebra(F, K, run.budget, run.probe_size)
    out = _certificate(cert, spec, "algebra", "free")
    if not isinstance(cert, NotStabilized) and cert.unit is not None:
        unit = cert.unit
        out.doc["unit"] = map_to_pairs(unit if args.route == "direct" else unit.carrier_map)
    return out


def cmd_free_lax(args, run: RunConfig) -> Outcome:
    doc = load_document(args.lax, LaxAlgebraDocument)
    lax = build_lax_algebra(doc)
    step = propagate(lax)
    sizes = {"E": len(lax.apex), "FB": len(lax.resolution.target), "B": len(lax.carrier),
             "P": len(step.pushout.apex)}
    cert = adamek_lax(lax, run.budget, run.probe_size)
    out = _certificate(cert, doc.functor, "algebra", "propagation")
    out.doc["first_step"] = sizes
    out.dot = pushout_row_to_dot(sizes)
    return out


# ── Fixed points and locality ──


def _fixed_point_doc(fixed, spec) -> dict:
    return coalgebra_document(fixed.as_coalgebra(), spec).model_dump(mode="json", exclude_none=True)


def cmd_reflect(args, run: RunConfig) -> Outcome:
    doc = load_document(args.coalgebra, CoalgebraDocument)
    coalg = build_coalgebra(doc)
    refl = reflect(coalg, run.budget)
    if isinstance(refl, NotStabilized):
        return _not_stabilized(refl, "reflection")
    sizes = refl.outcome.stage_sizes
    result = {
        "status": "stabilized",
        "index": refl.index,
        "stage_sizes": sizes,
        "fixed_point": _fixed_point_doc(refl.fixed, doc.functor),
        "unit": map_to_pairs(refl.unit),
    }
    code = EXIT_OK
    if args.check:
        result["adjunction"] = reflection_adjunction_check(coalg, run.budget, run.probe_size)
        code = _verdict(result["adjunction"].get("passed", False))
    return Outcome(result, code, stage_rows(sizes), chain_to_dot(sizes, "reflection", refl.index))


def cmd_coreflect(args, run: RunConfig) -> Outcome:
    doc = load_document(args.algebra, AlgebraDocument)
    alg = build_algebra(doc)
    core = coreflect(alg, run.budget)
    if isinstance(core, NotStabilized):
        return _not_stabilized(core, "coreflection")
    sizes = core.outcome.stage_sizes
    result = {
        "status": "stabilized",
        "index": core.index,
        "stage_sizes": sizes,
        "fixed_point": _fixed_point_doc(core.fixed, doc.functor),
        "counit": map_to_pairs(core.counit),
    }
    return Outcome(result, EXIT_OK, stage_rows(sizes), chain_to_dot(sizes, "coreflection", core.index))


def _verdict_doc(v) -> dict:
    doc = {"verdict": v.verdict, "method": v.method, "witness": v.witness}
    if v.section is not None:
        doc["section"] = map_to_pairs(v.section)
    if v.details:
        doc["details"] = v.details
    return doc


def cmd_is_local(args, run: RunConfig) -> Outcome:
    doc = load_document(args.hom, HomDocument)
    phi = build_hom(doc)
    if doc.kind == HomKind.COALGEBRA:
        methods = {
            "reflection": lambda: is_F_local(phi, run.budget),
            "section": lambda: local_via_section(phi, run.budget),
            "lift": lambda: local_via_lift(phi),
        }
    else:
        methods = {
            "reflection": lambda: is_F_colocal(phi, run.budget),
            "lift": lambda: colocal_via_lift(phi),
        }
    chosen = list(methods) if args.method == "all" else [args.method]
    unknown = [m for m in chosen if m not in methods]
    if unknown:
        raise IllTypedInput(f"Method {unknown[0]!r} is not available for {doc.kind.value} homs")
    verdicts = {}
    for name in chosen:
        v = methods[name]()
        if isinstance(v, NotStabilized):
            return _not_stabilized(v, "locality")
        verdicts[name] = _verdict_doc(v)
    primary = verdicts[chosen[0]]["verdict"]
    result = {"kind": doc.kind.value, "local": primary == "local", "verdicts": verdicts}
    rows = [{"method": k, "verdict": v["verdict"]} for k, v in verdicts.items()]
    return Outcome(result, _verdict(primary == "local"), rows)


# ── Lattices and dataflow ──


def _lattice_map(args):
    lattice = build_lattice(load_document(args.lattice, LatticeDocument)) if args.lattice else None
    return build_map(load_document(args.map, MapDocument), lattice)


def _kleene_command(args, run: RunConfig, kleene, via_adamek) -> Outcome:
    f = _lattice_map(args)
    found = kleene(f)
    result = {"element": found.element, "stage": found.stage, "direction": found.direction}
    if run.trace:
        result["trace"] = found.trace
    code = EXIT_OK
    if args.via in ("adamek", "both"):
        result["adamek"] = via_adamek(f)
        result["agree"] = result["adamek"] == found.element
        code = _verdict(result["agree"])
        if args.via == "adamek":
            result["element"] = result["adamek"]
    rows = [{"stage": n, "element": x} for n, x in enumerate(found.trace)]
    return Outcome(result, code, rows)


def cmd_lfp(args, run: RunConfig) -> Outcome:
    return _kleene_command(args, run, lfp, lfp_via_adamek)


def cmd_gfp(args, run: RunConfig) -> Outcome:
    return _kleene_command(args, run, gfp, gfp_via_adamek)


def cmd_dataflow(args, run: RunConfig) -> Outcome:
    doc = load_document(args.cfg, CfgDocument)
    cfg = build_cfg(doc)
    direction = args.direction or doc.direction.value
    solution = dataflow_solve(cfg, direction, args.mode)
    result = solution.as_dict()
    if run.trace:
        result["trace"] = solution.trace
    oracle = worklist_solve(cfg, direction)
    result["oracle_agrees"] = oracle.outputs == solution.outputs and oracle.inputs == solution.inputs
    rows = solution.to_frame().to_dict(orient="records")
    return Outcome(result, _verdict(result["oracle_agrees"]), rows)


# ── Σ ──


def _presheaf(args, run: RunConfig):
    doc = load_document(args.presheaf, PresheafDocument)
    if args.bound:
        doc = doc.model_copy(update={"bound": tuple(SigmaBound.parse(args.bound).as_list())})
    return build_presheaf(doc, run.hom_budget)


def cmd_sigma_hom(args, run: RunConfig) -> Outcome:
    src, tgt = SigmaObject.parse(args.source), SigmaObject.parse(args.target)
    homs = sigma_hom_enumerate(src, tgt, run.hom_budget)
    result = {"source": src.label(), "target": tgt.label(), "count": len(homs)}
    if args.list:
        result["morphisms"] = [u.label() for u in homs]
    rows = [{"morphism": u.label()} for u in homs] if args.list else None
    return Outcome(result, EXIT_OK, rows)


def cmd_sigma_segal(args, run: RunConfig) -> Outcome:
    report = segal_check(_presheaf(args, run))
    return Outcome(report.as_dict(), _verdict(report.passed), report.checked)


def _representable_bound(apex: SigmaObject, text) -> SigmaBound:
    if text:
        bound = SigmaBound.parse(text)
        if not bound.contains(apex):
            raise IllTypedInput(f"Representable {apex.label()} lies outside bound {text}")
        return bound
    return SigmaBound(max(2, apex.dim), max([2, *apex.entries]), 2)


def cmd_sigma_complete(args, run: RunConfig) -> Outcome:
    if args.obj is not None:
        apex = SigmaObject.parse(args.obj)
        bound = _representable_bound(apex, args.bound)
        report = {"representable": apex.label(), "bound": bound.as_list(),
                  **completeness_check_representable(apex, bound)}
    else:
        report = completeness_check(_presheaf(args, run))
    return Outcome(report, _verdict(report["passed"]), report["failures"] or None)


# ── Rank ──


def _skeleton(args):
    return build_skeleton(load_document(args.spec, SkeletonDocument))


def cmd_rank(args, run: RunConfig) -> Outcome:
    spec = _skeleton(args)
    value = rank(spec)
    result = {
        "rank": value.label(),
        "value": value.as_dict(),
        "contractible": {mode: contractible(spec, mode) for mode in ("inductive", "coinductive")},
        "homs": hom_rank_profile(spec),
    }
    rows = [{"hom": k, "rank": v} for k, v in result["homs"].items()]
    return Outcome(result, EXIT_OK, rows)


def cmd_noetherian(args, run: RunConfig) -> Outcome:
    spec = _skeleton(args)
    verdict, witness = is_noetherian(spec)
    result = {"noetherian": verdict}
    if args.witness:
        result["witness"] = witness.as_dict() if witness else None
    return Outcome(result, _verdict(verdict))


def cmd_skeletons(args, run: RunConfig) -> Outcome:
    trees = enumerate_skeletons(args.max_objects, args.max_depth, run.hom_budget)
    result = {"max_objects": args.max_objects, "max_depth": args.max_depth, "count": len(trees)}
    rows = [{"key": skeleton_key(t), "depth": depth(t), "rank": rank(t).label()} for t in trees]
    if not args.count:
        result["skeletons"] = rows
    return Outcome(result, EXIT_OK, rows)


# ── verify ──


def cmd_verify_lambek(args, run: RunConfig) -> Outcome:
    F, spec = _functor(args)
    cert = initial_algebra(F, run.budget, probe_size=0)
    if isinstance(cert, NotStabilized):
        return _not_stabilized(cert, "initial")
    report = lambek_verify(cert.result, run.probe_size)
    report["index"] = cert.index
    report["carrier_size"] = F.category.size(cert.result.carrier)
    return Outcome(report, _verdict(report["passed"]), report["hom_failures"] or None)


def _sampled(items: list, sample: int, seed: int) -> list:
    """All items, or `sample` of them drawn without replacement from a seeded generator."""
    if sample <= 0 or sample >= len(items):
        return items
    rng = np.random.default_rng(seed)
    picked = sorted(rng.choice(len(items), size=sample, replace=False).tolist())
    return [items[i] for i in picked]


def _sweep_fields(args, run: RunConfig, total: int) -> dict:
    if args.sample <= 0:
        return {}
    return {"seed": run.seed, "sample": min(args.sample, total), "population": total}


def cmd_verify_pfp(args, run: RunConfig) -> Outcome:
    F, _ = _functor(args)
    population = list(iter_lax_algebras(F, args.max_apex, args.max_carrier, run.hom_budget))
    checked, disagreements = 0, []
    for lax in _sampled(population, args.sample, run.seed):
        checked += 1
        report = propagation_fixed_check(lax)
        if not report["agree"]:
            disagreements.append({"apex": len(lax.apex), "carrier": len(lax.carrier), **report})
    result = {"checked": checked, "disagreements": disagreements[:10], "passed": not disagreements,
              **_sweep_fields(args, run, len(population))}
    return Outcome(result, _verdict(not disagreements))


def cmd_verify_llift(args, run: RunConfig) -> Outcome:
    """Section criterion agrees with reflection; a found lift is never contradicted."""
    F, _ = _functor(args)
    coalgebras = list(iter_coalgebras(F, args.max_carrier, run.hom_budget))
    population = [StructureHom(c, d, m) for c, d in itertools.product(coalgebras, repeat=2)
                  for m in coalgebra_homs(c, d)]
    checked, skipped, failures = 0, 0, []
    for phi in _sampled(population, args.sample, run.seed):
        full = is_F_local(phi, run.budget)
        if isinstance(full, NotStabilized):
            skipped += 1
            continue
        checked += 1
        section = local_via_section(phi, run.budget)
        lift = local_via_lift(phi)
        if section.verdict != full.verdict or (lift.is_local and not full.is_local):
            failures.append({"source": len(phi.source.carrier), "target": len(phi.target.carrier),
                             "reflection": full.verdict, "section": section.verdict, "lift": lift.verdict})
    result = {"checked": checked, "skipped": skipped, "failures": failures[:10], "passed": not failures,
              **_sweep_fields(args, run, len(population))}
    return Outcome(result, _verdict(not failures))


def cmd_verify_noeth_rank(args, run: RunConfig) -> Outcome:
    if args.spec:
        report = noeth_equiv_rank(_skeleton(args))
        return Outcome(report, _verdict(report["agree"]))
    checked, failures = 0, []
    for machine in enumerate_machines(args.max_states, args.max_objects):
        checked += 1
        report = noeth_equiv_rank(machine)
        if not report["agree"]:
            failures.append(report)
    result = {"checked": checked, "failures": failures[:10], "passed": not failures}
    return Outcome(result, _verdict(not failures))


def cmd_schemas(args, run: RunConfig) -> Outcome:
    written = write_schemas(args.out)
    return Outcome({"written": [str(p) for p in written]})


# ── Parser ──


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=None)
    common.add_argument("--trace", action="store_true", help="include iteration traces")
    common.add_argument("--budget", type=int, default=None, help="chain stage cap")
    common.add_argument("--hom-budget", type=int, default=None, help="enumeration cap")
    common.add_argument("--probe-size", type=int, default=None, help="carrier bound of probe algebras")
    common.add_argument("--seed", type=int, default=None, help="seed of sampled verify sweeps")
    common.add_argument("--verbose", "-v", action="count", default=0)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="fixcat", description="Fixed points of endofunctors on finite categories")
    parser.add_argument("--version", action="version", version=f"fixcat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, parent=sub):
        p = parent.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("initial-algebra", cmd_initial_algebra, "initial algebra by the Adámek chain")
    p.add_argument("--functor", required=True)
    p = add("terminal-coalgebra", cmd_terminal_coalgebra, "terminal coalgebra by the limit chain")
    p.add_argument("--functor", required=True)
    p = add("free-algebra", cmd_free_algebra, "free algebra on a finite set")
    p.add_argument("--functor", required=True)
    p.add_argument("--on", "--object", dest="object", required=True, help="object document or comma-separated elements")
    p.add_argument("--route", choices=["direct", "lax"], default="direct")
    p = add("free-lax", cmd_free_lax, "algebra generated by a lax algebra")
    p.add_argument("--lax", required=True)
    p = add("reflect", cmd_reflect, "reflect a coalgebra onto fixed points")
    p.add_argument("--coalgebra", required=True)
    p.add_argument("--check", action="store_true", help="also probe the adjunction hom counts")
    p = add("coreflect", cmd_coreflect, "coreflect an algebra onto fixed points")
    p.add_argument("--algebra", required=True)
    p = add("is-local", cmd_is_local, "locality of a coalgebra hom (colocality for algebra homs)")
    p.add_argument("--hom", required=True)
    p.add_argument("--method", choices=["all", "reflection", "section", "lift"], default="all")
    for name, handler in (("lfp", cmd_lfp), ("gfp", cmd_gfp)):
        p = add(name, handler, f"{name} of a monotone map by Kleene iteration")
        p.add_argument("--lattice")
        p.add_argument("--map", required=True)
        p.add_argument("--via", choices=["kleene", "adamek", "both"], default="kleene")
    p = add("dataflow", cmd_dataflow, "solve a dataflow system over a finite lattice")
    p.add_argument("--cfg", required=True)
    p.add_argument("--direction", choices=["forward", "backward"], default=None)
    p.add_argument("--mode", choices=["jacobi", "gauss-seidel"], default="jacobi")

    sigma = sub.add_parser("sigma", help="Σ morphisms and presheaves").add_subparsers(dest="sigma_command", required=True)
    p = add("hom", cmd_sigma_hom, "enumerate Σ morphisms", sigma)
    p.add_argument("--src", "--source", dest="source", required=True, help="e.g. 1 or 2,1")
    p.add_argument("--tgt", "--target", dest="target", required=True)
    p.add_argument("--list", action="store_true")
    p = add("segal-check", cmd_sigma_segal, "Segal condition of a bounded presheaf", sigma)
    p.add_argument("--presheaf", required=True)
    p.add_argument("--bound", default=None, help="max_dim,max_entry,max_level")
    p = add("complete-check", cmd_sigma_complete, "completeness of a presheaf or of a representable", sigma)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--presheaf")
    target.add_argument("--obj", help="apex of a representable, e.g. 2,1")
    p.add_argument("--bound", default=None, help="max_dim,max_entry,max_level")

    p = add("rank", cmd_rank, "rank of a hom-skeleton")
    p.add_argument("--spec", required=True)
    p = add("noetherian", cmd_noetherian, "Noetherianness of a hom-skeleton")
    p.add_argument("--spec", required=True)
    p.add_argument("--witness", action="store_true")
    p = add("skeletons", cmd_skeletons, "enumerate hom-skeletons up to equivalence")
    p.add_argument("--max-objects", type=int, default=2)
    p.add_argument("--max-depth", type=int, default=2)
    p.add_argument("--count", action="store_true")

    verify = sub.add_parser("verify", help="exhaustive property checks").add_subparsers(dest="verify_command", required=True)
    p = add("lambek", cmd_verify_lambek, "initial algebra action is invertible and initial", verify)
    p.add_argument("--functor", required=True)
    p = add("pfp", cmd_verify_pfp, "propagation fixed points are the strict algebras", verify)
    p.add_argument("--functor", required=True)
    p.add_argument("--max-apex", type=int, default=2)
    p.add_argument("--max-carrier", type=int, default=2)
    p.add_argument("--sample", type=int, default=0, help="check a seeded sample instead of every instance")
    p = add("llift", cmd_verify_llift, "locality criteria against reflection", verify)
    p.add_argument("--functor", required=True)
    p.add_argument("--max-carrier", type=int, default=2)
    p.add_argument("--sample", type=int, default=0, help="check a seeded sample instead of every hom")
    p = add("noeth-rank", cmd_verify_noeth_rank, "Noetherian iff small rank", verify)
    p.add_argument("--spec", default=None)
    p.add_argument("--max-states", type=int, default=3)
    p.add_argument("--max-objects", type=int, default=2)

    p = add("schemas", cmd_schemas, "write JSON Schemas of every input document")
    p.add_argument("--out", default="schemas")
    return parser


def run_config(args) -> RunConfig:
    def pick(flag, default):
        return default if flag is None else flag

    return RunConfig(
        budget=pick(args.budget, settings.STAGE_BUDGET),
        hom_budget=pick(args.hom_budget, settings.HOM_BUDGET),
        format=pick(args.format, settings.FORMAT),
        trace=args.trace,
        seed=pick(args.seed, settings.SEED),
        probe_size=pick(args.probe_size, 2),
    )


def _configure_logging(verbose: int):
    level = logging.DEBUG if verbose > 1 else logging.INFO if verbose == 1 else settings.LOG_LEVEL
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def _emit(outcome: Outcome, fmt: OutputFormat, out):
    if fmt == OutputFormat.TEXT:
        out.write(render_text(outcome.doc, outcome.rows) + "\n")
    elif fmt == OutputFormat.DOT and outcome.dot is not None:
        out.write(outcome.dot + "\n")
    else:
        if fmt == OutputFormat.DOT:
            logger.warning("This result has no diagram; writing json instead of dot")
        out.write(dump_json(outcome.doc) + "\n")


def _error_outcome(e: FixcatError, code: int) -> Outcome:
    return Outcome({"status": "error", "error": type(e).__name__, "message": e.message, "witness": e.witness}, code)


def dispatch(argv=None, out=None) -> int:
    out = out or sys.stdout
    problems = settings.validate()
    if problems:
        for p in problems:
            print(f"fixcat: {p}", file=sys.stderr)
        return EXIT_INPUT
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        run = run_config(args)
    except ValidationError as e:
        print(f"fixcat: invalid options: {e.errors()[0]['msg']} (see schemas/run-config.schema.json)", file=sys.stderr)
        return EXIT_INPUT

    try:
        outcome = args.handler(args, run)
    except IllTypedInput as e:
        print(f"fixcat: {e.message}", file=sys.stderr)
        outcome = _error_outcome(e, EXIT_INPUT)
    except BudgetExceeded as e:
        logger.info("Budget exceeded: %s", e.message)
        outcome = _error_outcome(e, EXIT_BUDGET)
    except FixcatError as e:
        logger.warning("%s: %s", type(e).__name__, e.message)
        outcome = _error_outcome(e, EXIT_FAILED)
    _emit(outcome, run.format, out)
    logger.debug("Exit code %d", outcome.code)
    return outcome.code


def main() -> int:
    return dispatch(sys.argv[1:])


if __name__ == "__main__":
    raise SystemExit(main())

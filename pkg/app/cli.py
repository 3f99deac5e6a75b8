"""
Command-line front end.

    python -m app.cli gen new-loop 5 2 --json
    python -m app.cli design build fixtures/z5_planar.json
    python -m app.cli batch fixtures/manifest.json

Exit codes: 0 success, 1 property refuted (report carries the witness), 2 input or usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

from pydantic import BaseModel, TypeAdapter
from pydantic_core import to_json

from app.config import settings
from app.errors import AlgebraError, BadParameters, NotAdditive, NotBalanced, NotPlanar, SchemaError
from app.models.automaton import Automaton
from app.models.bistructure import SubBiStructure
from app.models.documents import FamilySpec, MagmaDocument
from app.models.magma import IDENTITY_KINDS
from app.models.ring import PolyOverZp
from app.models.smarandache import ModularOp
from app.services.automaton_service import AutomatonService
from app.services.bistruct_service import BiStructService
from app.services.bivector_service import BivectorService
from app.services.convolution_service import ConvolutionService
from app.services.design_service import DesignService
from app.services.document_service import DocumentService
from app.services.family_service import FamilyService
from app.services.magma_service import MagmaService
from app.services.ring_service import RingService
from app.services.smarandache_service import SmarandacheService

logger = logging.getLogger(__name__)

REFUTATIONS = (NotPlanar, NotBalanced, NotAdditive)
_MATRIX = TypeAdapter(list[list[int]])


@dataclass
class Outcome:
    code: int
    payload: Any = None
    error: Optional[str] = None


class Workbench:
    """Services wired from the command-line flags."""

    def __init__(self, cap: int | None = None, seed: int | None = None):
        self.magma = MagmaService(subset_cap=cap)
        self.families = FamilyService()
        self.bistruct = BiStructService(self.magma)
        self.smarandache = SmarandacheService(self.magma, self.bistruct, subset_cap=cap)
        self.rings = RingService(self.magma, subset_cap=cap)
        self.conv = ConvolutionService(self.magma, seed=seed)
        self.designs = DesignService(self.rings)
        self.automata = AutomatonService(self.magma, self.smarandache, subset_cap=cap, seed=seed)
        self.bivectors = BivectorService()
        self.documents = DocumentService(self.families, self.bistruct)

    def load_magma(self, path: Optional[str]):
        return self.documents.magma(self.documents.load(_required(path)))

    def load_ring(self, path: Optional[str]):
        return self.documents.ring(self.documents.load(_required(path)))

    def load_bistructure(self, path: Optional[str]):
        return self.documents.bistructure(self.documents.load(_required(path)))


def _required(path: Optional[str]) -> str:
    """Input paths fall back to FIXTURES_DIR when they do not exist as given."""
    if not path:
        raise BadParameters("this action needs an input document path")
    bundled = settings.fixtures_dir / path
    if not Path(path).exists() and bundled.is_file():
        return str(bundled)
    return path


def _labels(text: Optional[str]) -> list[str]:
    if not text:
        return []
    return [item.strip() for item in text.split(",") if item.strip()]


def _ints(text: Optional[str]) -> list[int]:
    try:
        return [int(item) for item in _labels(text)]
    except ValueError as exc:
        raise BadParameters(f"expected comma-separated integers, got `{text}`") from exc


def _sub(parts: Optional[list[str]]) -> SubBiStructure:
    if not parts:
        raise BadParameters("pass one --part per component")
    return SubBiStructure(tuple(frozenset(_labels(part)) for part in parts))


# ---- verbs -------------------------------------------------------------


def _gen(args, wb: Workbench) -> Outcome:
    spec = FamilySpec(
        family=args.family.replace("-", "_"),
        parameters=args.parameters,
        tier=args.tier,
        subset=_labels(args.subset) or None,
        prefix=args.prefix,
    )
    return Outcome(0, wb.documents.magma_document(wb.families.build(spec)))


def _classify(args, wb: Workbench) -> Outcome:
    magma = wb.load_magma(args.path)
    report = wb.magma.classify(magma)
    if args.invariants:
        return Outcome(0, [report, wb.magma.local_invariants(magma)])
    return Outcome(0, report)


def _identity(args, wb: Workbench) -> Outcome:
    magma = wb.load_magma(args.path)
    reports = []
    for name in args.names or IDENTITY_KINDS:
        if name not in IDENTITY_KINDS:
            raise BadParameters(f"unknown identity `{name}`; choose from {', '.join(IDENTITY_KINDS)}")
        try:
            reports.append(wb.magma.check_identity(magma, name))
        except AlgebraError:
            if args.names:
                raise
            logger.debug("[CLI] identity=%s not applicable to %s", name, magma.name)
    refuted = bool(args.names) and not all(r.holds for r in reports)
    return Outcome(1 if refuted else 0, reports)


def _bistruct(args, wb: Workbench) -> Outcome:
    bs = wb.load_bistructure(args.path)
    svc = wb.bistruct
    action = args.action
    if action == "classify":
        return Outcome(0, svc.classify_bi(bs))
    if action == "subs":
        subs = svc.enumerate_sub(bs, exhaustive=args.exhaustive)
        return Outcome(0, [{"parts": s.as_lists(bs), "order": s.order, "biorder": s.biorder} for s in subs])
    if action == "lagrange":
        return Outcome(0, svc.lagrange_report(bs))
    if action == "biorder":
        return Outcome(0, svc.biorder_and_pseudo(_sub(args.part), bs))
    if action == "cauchy":
        return Outcome(0, svc.cauchy_elements(bs))
    if action == "sylow":
        primes = args.primes or []
        if len(primes) == 2:
            found = svc.sylow_search(bs, primes[0], primes[1])
        elif len(primes) == 1:
            found = svc.sylow_p(bs, primes[0])
        else:
            raise BadParameters("sylow takes --primes p or --primes p1 p2")
        return Outcome(0 if found else 1, [{"parts": s.as_lists(bs), "order": s.order} for s in found])
    if action == "bicoset":
        return Outcome(0, svc.bicoset(bs, _sub(args.part), args.element, args.side))
    if action == "normal":
        normal = svc.normal_check(bs, _sub(args.part))
        return Outcome(0 if normal else 1, {"normal": normal})
    if action == "normalizer":
        return Outcome(0, svc.normalizer(bs, args.element))
    return Outcome(0, svc.quotient(bs, _sub(args.part)))


def _smar(args, wb: Workbench) -> Outcome:
    svc = wb.smarandache
    action = args.action
    if action == "detect":
        report = svc.s_detect(wb.load_magma(args.path), args.target, maximal_only=not args.all)
        return Outcome(0 if report.smarandache else 1, report)
    if action == "biset":
        parts = [_labels(part) for part in args.part or []]
        if len(parts) != 2:
            raise BadParameters("biset takes exactly two --part lists")
        universe = list(dict.fromkeys(parts[0] + parts[1]))
        ops = []
        for text in args.op or []:
            part, op, modulus = text.split(":")
            ops.append(ModularOp(part=int(part), op=op, modulus=int(modulus)))
        report = svc.s_biset(universe, (parts[0], parts[1]), ops)
        return Outcome(0 if report.holds else 1, report)
    if action == "grade":
        try:
            target = wb.load_bistructure(args.path)
        except SchemaError:
            target = wb.load_magma(args.path)
        return Outcome(0, svc.s_grade(target, args.property))

    bs = wb.load_bistructure(args.path)
    if action == "bi":
        report = svc.s_bi_detect(bs)
        return Outcome(0 if report.smarandache else 1, report)
    if action == "cauchy":
        return Outcome(0, svc.s_cauchy(bs))
    if action == "inverse":
        return Outcome(0, svc.s_inverse_pairs(bs))
    return Outcome(0, svc.s_coset(bs, _sub(args.part), args.element, args.side))


def _ring(args, wb: Workbench) -> Outcome:
    svc = wb.rings
    action = args.action
    if action == "poly":
        return Outcome(0, svc.poly_reducibility(PolyOverZp(args.p, tuple(_ints(args.coeffs)))))
    if action == "trichotomy":
        return Outcome(0, svc.biring_trichotomy(_ints(args.coeffs), args.primes or [2, 3]))
    if action in ("union", "ideals"):
        components, ambient, name = wb.documents.ring_union(wb.documents.load(_required(args.path)))
        union, report = svc.assemble_ringlike_union(components, ambient, name)
        if action == "union":
            return Outcome(0, report)
        return Outcome(0, svc.bi_ideals(union, args.side))

    rt = wb.load_ring(args.path)
    if action == "classify":
        return Outcome(0, svc.classify_ringlike(rt))
    if action == "srings":
        found = svc.s_ring_detect(rt)
        return Outcome(0 if found else 1, found)
    if action == "elements":
        return Outcome(0, svc.s_elements(rt))
    report = svc.ifp_check(rt)
    return Outcome(0 if report.holds else 1, report)


def _conv(args, wb: Workbench) -> Outcome:
    svc = wb.conv
    basis = wb.load_magma(args.path)
    action = args.action
    if action == "envelope":
        return Outcome(0, svc.mod_p_envelope(args.p, basis))
    if action == "bienvelope":
        return Outcome(0, svc.bimod_envelope(args.p, args.q, basis))

    alg = svc.algebra(basis, args.modulus)
    if action == "zero-divisor":
        return Outcome(0, svc.zero_divisor_witness(alg, args.element))
    if action == "associator":
        witness = svc.associator_witness(alg)
        return Outcome(0, {"algebra": alg.name, "associative": witness is None, "witness": witness})

    a = svc.element(alg, _ints(args.a))
    if action == "augmentation":
        value = svc.augmentation(a)
        return Outcome(0, {"algebra": alg.name, "a": a.coeffs.tolist(), "augmentation": value, "ideal_member": value == 0})
    b = svc.element(alg, _ints(args.b))
    result = svc.conv_mul(a, b) if action == "mul" else svc.conv_add(a, b)
    return Outcome(
        0, {"algebra": alg.name, "a": a.coeffs.tolist(), "b": b.coeffs.tolist(), action: result.coeffs.tolist()}
    )


def _design(args, wb: Workbench) -> Outcome:
    svc = wb.designs
    action = args.action
    if action in ("check", "dual"):
        design, declared = wb.documents.design(wb.documents.load(_required(args.path)))
        if action == "dual":
            design = svc.dual(design)
        report = svc.describe(design)
        if action == "check":
            svc.check_declared(report, declared)
        return Outcome(0 if report.bibd else 1, report)
    if action == "biplanar":
        components, _, _ = wb.documents.ring_union(wb.documents.load(_required(args.path)))
        if len(components) != 2:
            raise BadParameters("a biplanar check takes two components")
        return Outcome(0, svc.biplanar(components[0].algebra, components[1].algebra))

    nr = wb.load_ring(args.path)
    planar = svc.planar_check(nr)
    if action == "planar" or not planar.planar:
        return Outcome(0 if planar.planar else 1, planar)
    return Outcome(0, svc.bibd_from_planar(nr))


def _automaton(args, wb: Workbench) -> Outcome:
    svc = wb.automata
    action = args.action
    if action in ("bi-run", "bi-dot"):
        bsa = wb.documents.bimachine(wb.documents.load(_required(args.path)))
        if action == "bi-dot":
            return Outcome(0, svc.to_dot(bsa))
        word = []
        for item in _labels(args.word):
            tag, _, symbol = item.partition(":")
            word.append((int(tag) - 1, symbol))
        return Outcome(0, svc.run_bi(bsa, args.start, word))

    machine = wb.documents.machine(wb.documents.load(_required(args.path)))
    if action == "run":
        word = _labels(args.word)
        if isinstance(machine, Automaton):
            return Outcome(0, svc.run_auto(machine, args.start, word))
        return Outcome(0, svc.run(machine, args.start, word))
    if action == "subs":
        return Outcome(0, svc.sub_semiautomata(machine, _labels(args.inputs) or None))
    if action == "ssubs":
        report = svc.s_semigroup_subautomata(machine, wb.families.zn_mul(args.modulus), _labels(args.inputs) or None)
        return Outcome(0 if report.subsets else 1, report)
    if action == "syntactic":
        return Outcome(0, svc.syntactic_nearring(machine, wb.families.zn_add(args.modulus)))
    if action == "product":
        other = wb.documents.machine(wb.documents.load(_required(args.other)))
        return Outcome(0, wb.documents.machine_document(svc.direct_product(machine, other)))
    if args.states:
        machine = svc.restrict(machine, _labels(args.states), _labels(args.inputs) or None)
    return Outcome(0, svc.to_dot(machine))


def _bivect(args, wb: Workbench) -> Outcome:
    svc = wb.bivectors
    V = svc.space(args.p, *args.dims)
    action = args.action
    if action == "dim":
        return Outcome(0, {"dims": list(V.dims), "dim": svc.dim(V)})
    W = svc.space(args.p, *(args.other or args.dims))
    if action == "iso":
        iso = svc.isomorphic(V, W)
        return Outcome(0 if iso else 1, {"domain": list(V.dims), "codomain": list(W.dims), "isomorphic": iso})
    if action == "bihom":
        if args.count:
            report = svc.bihom_count_check(V, W)
            return Outcome(0 if report.holds else 1, report)
        return Outcome(0, {"domain": list(V.dims), "codomain": list(W.dims), "dim": svc.bihom_dim(V, W)})
    first = _MATRIX.validate_json(args.first or "[]")
    second = _MATRIX.validate_json(args.second or "[]")
    T = svc.bilinear_map(V, W, first, second)
    if action == "apply":
        v = svc.vector(V, _ints(args.vector))
        image = svc.apply(T, v)
        return Outcome(0, {"vector": v.coords.tolist(), "image": image.coords.tolist(), "component": image.component + 1})
    return Outcome(0, svc.describe(T))


def _batch(args, wb: Workbench) -> Outcome:
    manifest_path = Path(_required(args.path))
    manifest = wb.documents.manifest(wb.documents.load(manifest_path))
    base = manifest_path.parent
    cases = []
    for entry in manifest.entries:
        argv = [str(base / item) if not item.startswith("-") and (base / item).is_file() else item for item in entry.argv]
        result = execute(argv)
        cases.append(
            {
                "name": entry.name,
                "exit": result.code,
                "expect": entry.expect,
                "ok": result.code == entry.expect,
                "error": result.error,
            }
        )
        logger.info("[Batch] case=%s exit=%s expect=%s", entry.name, result.code, entry.expect)
    failed = [case["name"] for case in cases if not case["ok"]]
    return Outcome(1 if failed else 0, {"cases": cases, "failed": failed})


# ---- parser ------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON reports.")
    common.add_argument("--dot", action="store_true", help="Emit graph text where the verb supports it.")
    common.add_argument("--out", help="Write the report to this path instead of stdout.")
    common.add_argument("--seed", type=int, help="Seed for randomized searches.")
    common.add_argument("--cap", type=int, help="Exhaustive subset search cap.")
    common.add_argument("--verbose", action="store_true", help="Log progress to stderr.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="bialgebra", description="Finite bialgebraic structures workbench.")
    verbs = parser.add_subparsers(dest="verb", required=True)

    gen = verbs.add_parser("gen", parents=[common], help="Generate a constructor family table.")
    gen.add_argument("family")
    gen.add_argument("parameters", nargs="*", type=int)
    gen.add_argument("--tier", default="Z***", choices=["Z", "Z*", "Z**", "Z***"])
    gen.add_argument("--subset", help="Comma-separated closed label subset.")
    gen.add_argument("--prefix")
    gen.set_defaults(handler=_gen)

    classify = verbs.add_parser("classify", parents=[common], help="Classify a magma.")
    classify.add_argument("path")
    classify.add_argument("--invariants", action="store_true", help="Add loop nuclei and centers.")
    classify.set_defaults(handler=_classify)

    identity = verbs.add_parser("identity", parents=[common], help="Check named loop identities.")
    identity.add_argument("path")
    identity.add_argument("names", nargs="*")
    identity.set_defaults(handler=_identity)

    bistruct = verbs.add_parser("bistruct", parents=[common], help="Analyze a bistructure.")
    bistruct.add_argument(
        "action",
        choices=["classify", "subs", "lagrange", "biorder", "cauchy", "sylow", "bicoset", "normal", "normalizer", "quotient"],
    )
    bistruct.add_argument("path")
    bistruct.add_argument("--part", action="append", help="Comma-separated labels, one per component.")
    bistruct.add_argument("--element")
    bistruct.add_argument("--side", default="right", choices=["left", "right"])
    bistruct.add_argument("--primes", nargs="+", type=int)
    bistruct.add_argument("--exhaustive", action="store_true")
    bistruct.set_defaults(handler=_bistruct)

    smar = verbs.add_parser("smar", parents=[common], help="Smarandache detection.")
    smar.add_argument("action", choices=["detect", "bi", "cauchy", "grade", "biset", "inverse", "coset"])
    smar.add_argument("path", nargs="?")
    smar.add_argument("--target", default="group-in-semigroup", choices=["group-in-semigroup", "semigroup-in-groupoid", "group-in-loop"])
    smar.add_argument("--all", action="store_true", help="Keep non-maximal witnesses.")
    smar.add_argument("--property", default="commutative", choices=["commutative", "cyclic", "Lagrange", "hyper", "simple"])
    smar.add_argument("--part", action="append")
    smar.add_argument("--op", action="append", help="part:mul|add:modulus")
    smar.add_argument("--element")
    smar.add_argument("--side", default="right", choices=["left", "right"])
    smar.set_defaults(handler=_smar)

    ring = verbs.add_parser("ring", parents=[common], help="Ring-like analyzers and polynomials.")
    ring.add_argument("action", choices=["classify", "srings", "elements", "ifp", "union", "ideals", "poly", "trichotomy"])
    ring.add_argument("path", nargs="?")
    ring.add_argument("--side", default="two_sided", choices=["right", "left", "two_sided", "mixed"])
    ring.add_argument("--coeffs", help="Ascending coefficients, comma-separated.")
    ring.add_argument("--p", type=int, default=2)
    ring.add_argument("--primes", nargs="+", type=int)
    ring.set_defaults(handler=_ring)

    conv = verbs.add_parser("conv", parents=[common], help="Structure ring convolution.")
    conv.add_argument("action", choices=["mul", "add", "augmentation", "zero-divisor", "associator", "envelope", "bienvelope"])
    conv.add_argument("path")
    conv.add_argument("--modulus", type=int, default=0)
    conv.add_argument("--a")
    conv.add_argument("--b")
    conv.add_argument("--element")
    conv.add_argument("--p", type=int, default=2)
    conv.add_argument("--q", type=int, default=3)
    conv.set_defaults(handler=_conv)

    design = verbs.add_parser("design", parents=[common], help="Planar near-rings and block designs.")
    design.add_argument("action", choices=["planar", "build", "biplanar", "check", "dual"])
    design.add_argument("path")
    design.set_defaults(handler=_design)

    automaton = verbs.add_parser("automaton", parents=[common], help="Finite machines.")
    automaton.add_argument("action", choices=["run", "bi-run", "subs", "ssubs", "syntactic", "dot", "bi-dot", "product"])
    automaton.add_argument("path")
    automaton.add_argument("other", nargs="?")
    automaton.add_argument("--start", default="0")
    automaton.add_argument("--word", default="", help="Comma-separated symbols; bi-run uses tag:symbol.")
    automaton.add_argument("--inputs")
    automaton.add_argument("--states")
    automaton.add_argument("--modulus", type=int, default=6)
    automaton.set_defaults(handler=_automaton)

    bivect = verbs.add_parser("bivect", parents=[common], help="Bivector spaces over GF(p).")
    bivect.add_argument("action", choices=["dim", "iso", "bihom", "matrix", "apply"])
    bivect.add_argument("--p", type=int, default=2)
    bivect.add_argument("--dims", nargs=2, type=int, required=True)
    bivect.add_argument("--other", nargs=2, type=int)
    bivect.add_argument("--count", action="store_true")
    bivect.add_argument("--first", help="JSON rows of the first block.")
    bivect.add_argument("--second", help="JSON rows of the second block.")
    bivect.add_argument("--vector")
    bivect.set_defaults(handler=_bivect)

    batch = verbs.add_parser("batch", parents=[common], help="Run a manifest of commands.")
    batch.add_argument("path")
    batch.set_defaults(handler=_batch)
    return parser


# ---- rendering ---------------------------------------------------------


def _grid(doc: MagmaDocument) -> str:
    width = max(len(label) for label in doc.elements)
    header = " " * width + " │ " + " ".join(label.rjust(width) for label in doc.elements)
    lines = [doc.name, header, "─" * len(header)]
    for label, row in zip(doc.elements, doc.table):
        lines.append(label.rjust(width) + " │ " + " ".join(doc.elements[v].rjust(width) for v in row))
    return "\n".join(lines)


def _text(payload: Any) -> str:
    if isinstance(payload, str):
        return payload
    if isinstance(payload, MagmaDocument):
        return _grid(payload)
    if isinstance(payload, list):
        return "\n\n".join(_text(item) for item in payload)
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json", by_alias=True)
    if isinstance(payload, dict):
        return "\n".join(f"{key}: {_text(value) if isinstance(value, BaseModel) else value}" for key, value in payload.items())
    return str(payload)


def render(payload: Any, as_json: bool) -> str:
    if isinstance(payload, str) or not as_json:
        return _text(payload)
    return to_json(payload, indent=2, by_alias=True).decode("utf-8")


# ---- entry points ------------------------------------------------------


def execute(argv: list[str]) -> Outcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return Outcome(code, error=None if code == 0 else "usage error")

    root = logging.getLogger()
    previous = root.level
    if args.verbose:
        root.setLevel(logging.INFO)
    try:
        return _run(args)
    finally:
        root.setLevel(previous)


def _run(args: argparse.Namespace) -> Outcome:
    wb = Workbench(cap=args.cap, seed=args.seed)
    handler: Callable[[argparse.Namespace, Workbench], Outcome] = args.handler
    try:
        outcome = handler(args, wb)
    except NotBalanced as exc:
        outcome = Outcome(1, {"refuted": str(exc), "histogram": exc.histogram}, error=str(exc))
    except REFUTATIONS as exc:
        outcome = Outcome(1, {"refuted": str(exc)}, error=str(exc))
    except AlgebraError as exc:
        return Outcome(2, error=f"{type(exc).__name__}: {exc}")
    except ValueError as exc:
        return Outcome(2, error=f"invalid input: {exc}")

    if outcome.payload is not None:
        text = render(outcome.payload, args.json or args.dot)
        if args.out:
            try:
                Path(args.out).write_text(text + "\n", encoding="utf-8")
            except OSError as exc:
                return Outcome(2, error=f"cannot write {args.out}: {exc}")
            outcome.payload = None
        else:
            outcome.payload = text
    return outcome


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=logging.WARNING,
        format="%(asctime)s │ %(levelname)-7s │ %(name)s │ %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )
    outcome = execute(list(sys.argv[1:] if argv is None else argv))
    if outcome.payload:
        print(outcome.payload)
    if outcome.error:
        print(outcome.error, file=sys.stderr)
    return outcome.code


if __name__ == "__main__":
    raise SystemExit(main())

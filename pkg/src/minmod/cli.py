"""Command-line front end.

Subcommands: check, dim, betti, exact, volume, spectrum, flex, verify,
replay, catalog.  Algebras come from DSL files or catalog specs like
``lemma(i=0)``.  ``--json`` emits a schema-validated report whose
certificates the ``replay`` subcommand re-verifies without re-solving.

Exit codes: 0 all checks pass, 1 a check failed, 2 inconclusive,
3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from importlib import resources

from . import catalog
from .cohomology import (TopFunctional, VolumeRejection, betti_table, is_closed,
                         is_exact, top_functional_from_volume, verify_volume_form)
from .dsl import AlgebraFile, ParseError, element_str, parse_algebra, parse_element, parse_morphism
from .endo import SolverConfig, degree_spectrum, verify_morphism
from .flexcert import (check_prop4_condition, construct_lower_grading,
                       monomial_differential_check, multiple_family_verify,
                       scaling_certificate, two_stage_decomposition)
from .gca import StructureError
from .sullivan import (EllipticityCertificate, check_d_squared, check_minimality,
                       dimension_formula, ellipticity_certificate, extend_derivation,
                       formal_dimension)

SCHEMA_NAME = "report.schema.json"
SCHEMA_ID = "minmod-report/1"

PASS, FAIL, INCONCLUSIVE, USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _q(x) -> str:
    return str(Fraction(x))


_CATALOG_SPEC = re.compile(r"^([A-Za-z0-9-]+)(?:\((.*)\))?$")


def load_algebra(spec: str) -> AlgebraFile:
    """A DSL file path, or a catalog spec like ``chiral1(l1=4,l2=2)``."""
    m = _CATALOG_SPEC.match(spec)
    if m and m.group(1) in {e.key for e in catalog.ENTRIES}:
        params = {}
        for part in filter(None, (m.group(2) or "").split(",")):
            if "=" not in part:
                raise ParseError(f"bad catalog parameter {part!r}")
            k, v = part.split("=", 1)
            try:
                params[k.strip()] = int(v)
            except ValueError:
                raise ParseError(f"catalog parameter {k.strip()} must be an integer")
        try:
            return catalog.build(m.group(1), **params)
        except (KeyError, ValueError) as exc:
            raise ParseError(str(exc))
    try:
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {spec!r}: {exc.strerror}")
    return parse_algebra(text, name=spec)


def _report(args, command, af, verdict, lines, payload) -> int:
    code = {"pass": PASS, "fail": FAIL, "inconclusive": INCONCLUSIVE}[verdict]
    if args.json:
        doc = {
            "schema": SCHEMA_ID,
            "command": command,
            "argv": args._argv,
            "verdict": verdict,
        }
        if af is not None:
            from .dsl import print_algebra
            doc["algebra"] = {"name": af.name, "source": print_algebra(af)}
        doc.update(payload)
        validate_report(doc)
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)
    return code


def _morphism_lines(images: dict) -> list:
    return [f"f {name} = {element_str(e)}" for name, e in sorted(images.items())]


# -- subcommand bodies ------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.key:
        try:
            af = catalog.build(args.key, **_parse_params(args.param))
        except (KeyError, ValueError) as exc:
            print(str(exc), file=sys.stderr)
            return USAGE
        from .dsl import print_algebra
        return _report(args, "catalog", af, "pass", [print_algebra(af).rstrip()], {})
    rows = catalog.describe()
    lines = [f"{k:14s} {s:55s} {p}" for k, s, p in rows]
    return _report(args, "catalog", None, "pass", lines,
                   {"entries": [{"key": k, "summary": s, "parameters": p} for k, s, p in rows]})


def _parse_params(items) -> dict:
    params = {}
    for part in items or []:
        if "=" not in part:
            raise ParseError(f"expected NAME=INT, got {part!r}")
        k, v = part.split("=", 1)
        params[k.strip()] = int(v)
    return params


def cmd_check(args) -> int:
    af = load_algebra(args.algebra)
    alg = af.algebra
    d2 = check_d_squared(alg)
    minimal = check_minimality(alg)
    cert = ellipticity_certificate(alg)
    elliptic = isinstance(cert, EllipticityCertificate)
    lines = [f"d^2 = 0: {'pass' if d2 else 'FAIL'}",
             f"minimal: {'pass' if minimal else 'FAIL'}"]
    witnesses = []
    if elliptic:
        for name, (n, w) in sorted(cert.powers.items()):
            lines.append(f"elliptic: {name}^{n} exact")
            witnesses.append({"generator": name, "exponent": n, "witness": element_str(w)})
    else:
        lines.append(f"ellipticity: inconclusive at {cert.generator} (bound {cert.n_max})")
    ok = bool(d2) and bool(minimal) and elliptic
    verdict = "pass" if ok else ("inconclusive" if d2 and minimal else "fail")
    lines.append(verdict)
    return _report(args, "check", af, verdict, lines, {
        "checks": {"d_squared": bool(d2), "minimal": bool(minimal), "elliptic": elliptic},
        "certificates": {"ellipticity": witnesses},
    })


def _certified(af: AlgebraFile):
    cert = ellipticity_certificate(af.algebra)
    if not isinstance(cert, EllipticityCertificate):
        raise StructureError(f"ellipticity inconclusive at {cert.generator}")
    return cert


def cmd_dim(args) -> int:
    af = load_algebra(args.algebra)
    cert = _certified(af)
    value = formal_dimension(af.algebra, cert).value
    return _report(args, "dim", af, "pass", [str(value)], {"dimension": value})


def cmd_betti(args) -> int:
    af = load_algebra(args.algebra)
    up_to = args.max_degree if args.max_degree is not None else min(
        dimension_formula(af.algebra), 40)
    table = betti_table(af.algebra, up_to)
    lines = [f"b_{n} = {b}" for n, b in enumerate(table)]
    return _report(args, "betti", af, "pass", lines,
                   {"max_degree": up_to, "betti": table})


def cmd_exact(args) -> int:
    af = load_algebra(args.algebra)
    alg = af.algebra
    e = parse_element(alg, args.expression)
    closed = is_closed(alg, e)
    witness = is_exact(alg, e) if closed else None
    lines = [f"closed: {closed}"]
    if closed:
        lines.append(f"exact: {witness is not None}")
        if witness is not None:
            lines.append(f"witness: d({element_str(witness.preimage)})")
    verdict = "pass" if closed else "fail"
    return _report(args, "exact", af, verdict, lines, {
        "expression": args.expression,
        "closed": closed,
        "exact": bool(closed and witness is not None),
        "witness": element_str(witness.preimage) if witness else None,
    })


def cmd_volume(args) -> int:
    af = load_algebra(args.algebra)
    if af.volume is None:
        print("no volume declaration", file=sys.stderr)
        return FAIL
    cert = _certified(af)
    try:
        vol = verify_volume_form(af.algebra, af.volume, cert)
    except VolumeRejection as exc:
        return _report(args, "volume", af, "fail",
                       [f"rejected: {exc.reason}"], {"rejected": exc.reason})
    phi = [{"monomial": af.algebra.free.monomial_str(m), "value": _q(c)}
           for m, c in sorted(vol.functional.phi.items()) if c]
    lines = [f"volume form verified in degree {vol.degree}"]
    return _report(args, "volume", af, "pass", lines, {
        "degree": vol.degree,
        "representative": element_str(vol.representative),
        "functional": phi,
    })


def _volume(af: AlgebraFile):
    if af.volume is None:
        raise StructureError("the presentation declares no volume form")
    return verify_volume_form(af.algebra, af.volume, _certified(af))


def cmd_spectrum(args) -> int:
    af = load_algebra(args.algebra)
    vol = _volume(af)
    cfg = SolverConfig()
    if args.case_depth is not None:
        cfg = SolverConfig(case_depth=args.case_depth, node_budget=cfg.node_budget,
                           family_samples=cfg.family_samples)
    verdict = degree_spectrum(af.algebra, vol, cfg)
    witnesses = []
    for leaf in verdict.leaves:
        for morphism, degree in leaf.witnesses:
            witnesses.append({"morphism": _morphism_lines(morphism.images),
                              "degree": _q(degree), "label": morphism.label})
    lines = [verdict.describe(),
             f"complete case analysis: {verdict.complete}",
             f"verified witnesses: {len(witnesses)}"]
    v = "inconclusive" if verdict.classification == "Inconclusive" else "pass"
    return _report(args, "spectrum", af, v, lines, {
        "classification": verdict.classification,
        "spectrum": [_q(q) for q in verdict.spectrum],
        "families": [f.describe() for f in verdict.families],
        "flexible": verdict.flexible,
        "complete": verdict.complete,
        "witnesses": witnesses,
    })


def cmd_flex(args) -> int:
    af = load_algebra(args.algebra)
    alg = af.algebra
    vol = _volume(af)
    mono_ok, offender = monomial_differential_check(alg)
    grading = construct_lower_grading(alg)
    cond_ok, cond_off = check_prop4_condition(alg, grading)
    two = two_stage_decomposition(alg)
    lines = [f"monomial differentials: {mono_ok}" + (f" (fails at {offender})" if offender else ""),
             "lower grading: " + ", ".join(
                 f"{g.name}:{l}" for g, l in zip(alg.generators, grading.degrees)),
             f"lower-degree condition: {cond_ok}" + (f" (fails at {cond_off})" if cond_off else ""),
             f"two-stage: {two if two else 'none'}"]
    payload = {
        "monomial_differentials": mono_ok,
        "grading": {g.name: l for g, l in zip(alg.generators, grading.degrees)},
        "condition": cond_ok,
        "two_stage": {"closed": list(two[0]), "rest": list(two[1])} if two else None,
    }
    if not cond_ok:
        lines.append("no scaling certificate")
        return _report(args, "flex", af, "inconclusive", lines, payload)
    sc = scaling_certificate(alg, grading, vol)
    rep = multiple_family_verify(alg, grading, vol, [2, 3])
    lines.append(f"scaling degree: {sc.degree} = {sc.base}^{sc.degree_exponent()}")
    lines.append(sc.family_description())
    for c in rep.checks:
        lines.append(f"k = {c.k}: degree {c.degree}, {c.classes_checked} classes, "
                     + ("pass" if c.ok else f"FAIL at {c.failing}"))
    verdict = "pass" if rep.ok else "fail"
    payload["scaling"] = {"base": sc.base, "degree": _q(sc.degree),
                          "exponent": sc.degree_exponent(),
                          "morphism": _morphism_lines(sc.images)}
    payload["multiples"] = [{"k": c.k, "degree": _q(c.degree) if c.degree is not None else None,
                             "classes": c.classes_checked, "failing": c.failing}
                            for c in rep.checks]
    return _report(args, "flex", af, verdict, lines, payload)


def cmd_verify(args) -> int:
    af = load_algebra(args.algebra)
    with open(args.morphism, encoding="utf-8") as fh:
        images = parse_morphism(af.algebra, fh.read())
    vol = _volume(af) if af.volume is not None else None
    report = verify_morphism(af.algebra, images, vol)
    if report.valid:
        lines = ["valid morphism"]
        if report.degree is not None:
            lines.append(f"degree: {report.degree}")
    else:
        lines = [f"not a morphism: fails at {report.failing}"]
    return _report(args, "verify", af, "pass" if report.valid else "fail", lines, {
        "valid": report.valid,
        "failing": report.failing,
        "degree": _q(report.degree) if report.degree is not None else None,
        "morphism": _morphism_lines(images),
    })


# -- replay -----------------------------------------------------------------


def validate_report(doc) -> None:
    import jsonschema

    with resources.files("minmod").joinpath(SCHEMA_NAME).open(encoding="utf-8") as fh:
        schema = json.load(fh)
    jsonschema.validate(doc, schema)


def cmd_replay(args) -> int:
    import jsonschema

    with open(args.report, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        validate_report(doc)
    except jsonschema.ValidationError as exc:
        print(f"invalid report: {exc.message}", file=sys.stderr)
        return USAGE
    if doc.get("schema") != SCHEMA_ID:
        print(f"unsupported schema {doc.get('schema')!r}", file=sys.stderr)
        return USAGE
    command = doc["command"]
    failures = _replay_checks(doc, command)
    if failures:
        for f in failures:
            print(f"replay FAIL: {f}")
        return FAIL
    print(f"replayed {command}: all certificates verify")
    return PASS


def _replay_checks(doc, command) -> list:
    if command == "catalog":
        return []
    af = parse_algebra(doc["algebra"]["source"], name=doc["algebra"]["name"])
    alg = af.algebra
    failures = []
    if command == "check":
        for c in doc["certificates"]["ellipticity"]:
            w = parse_element(alg, c["witness"])
            if extend_derivation(alg, w) != alg.gen(c["generator"]) ** c["exponent"]:
                failures.append(f"ellipticity witness for {c['generator']}")
    elif command == "dim":
        if dimension_formula(alg) != doc["dimension"]:
            failures.append("dimension")
    elif command == "betti":
        if betti_table(alg, doc["max_degree"]) != doc["betti"]:
            failures.append("betti table")
    elif command == "exact":
        e = parse_element(alg, doc["expression"])
        if is_closed(alg, e) != doc["closed"]:
            failures.append("closedness")
        if doc["witness"] is not None:
            w = parse_element(alg, doc["witness"])
            if extend_derivation(alg, w) != e:
                failures.append("exactness witness")
    elif command == "volume":
        failures += _replay_volume(af, doc)
    elif command in ("spectrum", "verify", "flex"):
        failures += _replay_morphisms(af, doc, command)
    else:
        failures.append(f"unreplayable command {command!r}")
    return failures


def _replay_volume(af, doc) -> list:
    alg = af.algebra
    phi = {}
    for entry in doc["functional"]:
        (mono,) = parse_element(alg, entry["monomial"]).terms
        phi[mono] = Fraction(entry["value"])
    functional = TopFunctional(alg, doc["degree"], phi)
    failures = []
    if not functional.replay_annihilates_d():
        failures.append("functional does not annihilate d")
    rep = parse_element(alg, doc["representative"])
    if functional.apply(rep) != 1:
        failures.append("functional does not normalize the representative")
    return failures


def _replay_morphisms(af, doc, command) -> list:
    alg = af.algebra
    vol = None
    if af.volume is not None:
        try:
            vol = _volume(af)
        except (StructureError, VolumeRejection):
            vol = None
    failures = []
    if command == "spectrum":
        entries = [(w["morphism"], w["degree"], w.get("label", "")) for w in doc["witnesses"]]
    elif command == "verify":
        entries = [(doc["morphism"], doc["degree"], "")] if doc["valid"] else []
    else:
        entries = []
        if doc.get("scaling"):
            entries.append((doc["scaling"]["morphism"], doc["scaling"]["degree"], "scaling"))
    for lines, degree, label in entries:
        images = parse_morphism(alg, "\n".join(lines))
        rep = verify_morphism(alg, images, vol)
        tag = f" ({label})" if label else ""
        if not rep.valid:
            failures.append(f"morphism{tag} fails at {rep.failing}")
        elif degree is not None and vol is not None and rep.degree != Fraction(degree):
            failures.append(f"morphism{tag} degree {rep.degree} != {degree}")
    return failures


# -- entry point ------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="minmod", description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampling commands")
    sub = parser.add_subparsers(dest="command", required=True)

    def alg_cmd(name, fn, **extra):
        p = sub.add_parser(name)
        p.add_argument("algebra", help="DSL file or catalog spec like lemma(i=0)")
        for flag, kw in extra.items():
            p.add_argument(flag, **kw)
        p.set_defaults(fn=fn)
        return p

    alg_cmd("check", cmd_check)
    alg_cmd("dim", cmd_dim)
    alg_cmd("betti", cmd_betti, **{"--max-degree": dict(type=int, default=None)})
    p = alg_cmd("exact", cmd_exact)
    p.add_argument("expression")
    alg_cmd("volume", cmd_volume)
    alg_cmd("spectrum", cmd_spectrum, **{"--case-depth": dict(type=int, default=None)})
    alg_cmd("flex", cmd_flex)
    p = alg_cmd("verify", cmd_verify)
    p.add_argument("morphism", help="file of `f NAME = EXPR` lines")
    p = sub.add_parser("replay")
    p.add_argument("report", help="a JSON report emitted with --json")
    p.set_defaults(fn=cmd_replay)
    p = sub.add_parser("catalog")
    p.add_argument("key", nargs="?", default=None)
    p.add_argument("--param", action="append", help="NAME=INT, repeatable")
    p.set_defaults(fn=cmd_catalog)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    args._argv = argv
    try:
        return args.fn(args)
    except (ParseError, StructureError) as exc:
        print(str(exc), file=sys.stderr)
        return USAGE if isinstance(exc, ParseError) else FAIL
    except VolumeRejection as exc:
        print(f"volume rejected: {exc.reason}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())

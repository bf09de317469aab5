"""Command line front end.

    idealaudit compute SESSION [--ideal NAME ...]
    idealaudit audit SESSION [--ideal NAME ...] [--check A,E]
    idealaudit enumerate --vars 2 --max-colength 12 [--check A,E] [--all]
    idealaudit fthreshold SESSION --ideal J [--a NAME] [--e-max 3]
    idealaudit corpus

Output is canonical JSON (stdout, or ``--json PATH``).  Failures print a JSON
error object on stderr and exit nonzero; no partial document is written.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from typing import List, Optional, Sequence

from . import groebner as gb
from .auditor import CHECKS, AuditConfig, audit_family, audit_ideal
from .corpus import corpus_run
from .frobenius import HypothesisError, check_crll, check_htw, check_hmtw_dim2, fthreshold_estimate
from .invariants import IdealHandle, invariant_bundle
from .monomial import ENUMERATION_CAP, colength, enumerate_integrally_closed, enumerate_staircases
from .multiplicity import Unstabilized, multiplicity
from .polyarith import QQ
from .report import SCHEMA_VERSION, TOOL_VERSION, csv_text, dumps, emit, family_document, record_document
from .session import SessionError, parse_session

EXIT_USAGE = 2
EXIT_FAILURE = 1
EXIT_MISMATCH = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _checks(text: Optional[str]):
    if not text:
        return CHECKS
    names = tuple(c.strip() for c in text.split(",") if c.strip())
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {','.join(unknown)}; choose from {','.join(CHECKS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON document here instead of stdout")
    common.add_argument("--csv", metavar="PATH", help="per-ideal slack summary (audit, enumerate)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--nmax", type=int, default=None, help="largest power used by Hilbert-Samuel fits")
    common.add_argument("--truncation-cap", type=int, default=None, help="largest truncation degree (default 64)")
    common.add_argument("--trials", type=int, default=5, help="general elements tried per colon test")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--modcheck", action="store_true", help="recompute lengths modulo a large prime")
    common.add_argument("--timing", action="store_true", help="record runtimes (breaks byte-identical output)")
    common.add_argument("--check", metavar="A,E", default=None, help="comma separated subset of checks")

    p = _Parser(prog="idealaudit", description="Exact invariants and inequality audits for m-primary ideals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("compute", parents=[common], help="invariants of named ideals")
    c.add_argument("session")
    c.add_argument("--ideal", action="append", default=[])
    a = sub.add_parser("audit", parents=[common], help="evaluate the inequality suite")
    a.add_argument("session")
    a.add_argument("--ideal", action="append", default=[])
    e = sub.add_parser("enumerate", parents=[common], help="two-variable monomial families")
    e.add_argument("--vars", type=int, default=2)
    e.add_argument("--max-colength", type=int, required=True)
    e.add_argument("--all", action="store_true", help="every staircase, not only integrally closed ones")
    f = sub.add_parser("fthreshold", parents=[common], help="nu_e ladder over GF(p)")
    f.add_argument("session")
    f.add_argument("--ideal", required=True, help="J, the target ideal")
    f.add_argument("--a", default=None, help="the ideal a (default: the maximal ideal)")
    f.add_argument("--e-max", type=int, default=3)
    sub.add_parser("corpus", parents=[common], help="rerun the regression corpus")
    return p


def _config(args) -> AuditConfig:
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    return AuditConfig(
        seed=args.seed,
        trials=args.trials,
        n_max=args.nmax,
        checks=_checks(args.check),
        workers=max(1, args.workers),
        timing=args.timing,
    )


def _load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read())


def _selected(session, names: List[str]) -> List[tuple]:
    names = names or list(session.ideals)
    if not names:
        raise UsageError("the session declares no ideals")
    return [(n, session.ideal(n)) for n in names]


def _modcheck(I: IdealHandle) -> None:
    gb.length(I.ring, I.gens, I.model().truncation_N, modcheck=True)


def cmd_compute(args, config):
    session = _load(args.session)
    results = []
    for name, I in _selected(session, args.ideal):
        if args.modcheck:
            _modcheck(I)
        bundle = invariant_bundle(I, config.trials, config.seed)
        try:
            bundle.e = multiplicity(I, config.n_max)
        except Unstabilized:
            bundle.e = None
        results.append({"name": name, "ring": I.ring.describe(), "ideal": I.describe(), "invariants": bundle.as_dict()})
    doc = {"schema_version": SCHEMA_VERSION, "results": results, "meta": _meta(config)}
    return doc, None, 0


def _meta(config):
    return {"seed": config.seed, "trials": config.trials, "n_max": config.n_max, "tool_version": TOOL_VERSION}


def cmd_audit(args, config):
    session = _load(args.session)
    chosen = _selected(session, args.ideal)
    if args.modcheck:
        for _, I in chosen:
            _modcheck(I)
    if len(chosen) == 1:
        record = audit_ideal(chosen[0][1], config)
        return record_document(record, config), csv_text([record], config.checks), 0
    summary = audit_family([I for _, I in chosen], config)
    doc = family_document(summary, config, {"kind": "session", "ideals": [n for n, _ in chosen]})
    return doc, csv_text(summary.rows, config.checks), 0


def cmd_enumerate(args, config):
    if args.vars != 2:
        raise UsageError("enumeration is implemented for --vars 2 only")
    if not 1 <= args.max_colength <= ENUMERATION_CAP:
        raise UsageError(f"--max-colength must lie in 1..{ENUMERATION_CAP}")
    family = list(enumerate_staircases(args.max_colength) if args.all else enumerate_integrally_closed(2, args.max_colength))
    source = {"kind": "staircases" if args.all else "integrally_closed", "vars": 2, "max_colength": args.max_colength}
    by_colength = Counter(colength(M) for M in family)
    if args.check is None:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "source": source,
            "count": len(family),
            "by_colength": {str(k): by_colength[k] for k in sorted(by_colength)},
            "meta": _meta(config),
        }
        return doc, None, 0
    ring = gb.RingPresentation(QQ, ("x", "y"))
    summary = audit_family([IdealHandle.from_monomial(ring, M) for M in family], config)
    doc = family_document(summary, config, source)
    doc["violations"] = {c: summary.tallies[c]["violated"] for c in config.checks}
    return doc, csv_text(summary.rows, config.checks), 0


def cmd_fthreshold(args, config):
    session = _load(args.session)
    J = session.ideal(args.ideal)
    a = session.ideal(args.a) if args.a else IdealHandle.maximal(J.ring)
    if args.e_max < 0:
        raise UsageError("--e-max must be nonnegative")
    seq = fthreshold_estimate(a, J, args.e_max)
    checks = []
    for fn in (check_hmtw_dim2, check_crll, check_htw):
        try:
            v = fn(J)
            checks.append({"name": v.name, "lhs": v.lhs, "rhs": v.rhs, "slack": v.slack, "status": "holds" if v.holds else "violated", "details": v.details})
        except HypothesisError as exc:
            checks.append({"name": fn.__name__.replace("check_", "").upper(), "status": "skipped", "reason": str(exc)})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ring": J.ring.describe(),
        "J": J.describe(),
        "a": a.describe(),
        "p": seq.p,
        "nu": {str(e): v for e, v in sorted(seq.entries.items())},
        "estimates": {str(e): v for e, v in sorted(seq.estimates.items())},
        "regular_closed_form": seq.regular_closed_form,
        "closed_form_consistent": seq.closed_form_consistent,
        "checks": checks,
        "meta": _meta(config),
    }
    return doc, None, 0


def cmd_corpus(args, config):
    report = corpus_run(config=config)
    doc = {"schema_version": SCHEMA_VERSION, **report.to_dict(), "diff": report.diff(), "meta": _meta(config)}
    return doc, None, 0 if report.ok else EXIT_MISMATCH


COMMANDS = {
    "compute": cmd_compute,
    "audit": cmd_audit,
    "enumerate": cmd_enumerate,
    "fthreshold": cmd_fthreshold,
    "corpus": cmd_corpus,
}


def _error(kind: str, message: str, **extra) -> str:
    return dumps({"error": kind, "message": message, **extra})


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    saved_cap = os.environ.get("IDEAL_AUDIT_CAP")
    try:
        args = build_parser().parse_args(argv)
        if args.truncation_cap is not None:
            if args.truncation_cap < 2:
                raise UsageError("--truncation-cap must be at least 2")
            os.environ["IDEAL_AUDIT_CAP"] = str(args.truncation_cap)
        config = _config(args)
        doc, csv_doc, code = COMMANDS[args.command](args, config)
        emit(dumps(doc), args.json, stdout)
        if args.csv and csv_doc is not None:
            emit(csv_doc, args.csv, stdout)
        if code:
            stderr.write(_error("mismatch", "corpus expectations not reproduced"))
        return code
    except UsageError as exc:
        stderr.write(_error("usage", str(exc)))
        return EXIT_USAGE
    except SessionError as exc:
        stderr.write(dumps(exc.to_dict()))
        return EXIT_USAGE
    except KeyError as exc:
        stderr.write(_error("input", str(exc.args[0])))
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(_error("input", str(exc)))
        return EXIT_USAGE
    except gb.NotMPrimary as exc:
        stderr.write(_error("not_m_primary", str(exc)))
        return EXIT_FAILURE
    except HypothesisError as exc:
        stderr.write(_error("hypothesis", str(exc)))
        return EXIT_FAILURE
    except Exception as exc:  # noqa: BLE001 - every failure must surface as JSON
        stderr.write(_error(type(exc).__name__, str(exc)))
        return EXIT_FAILURE
    finally:
        if saved_cap is None:
            os.environ.pop("IDEAL_AUDIT_CAP", None)
        else:
            os.environ["IDEAL_AUDIT_CAP"] = saved_cap


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

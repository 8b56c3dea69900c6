"""Command line front end and JSON job runner.

A job file looks like::

    {"options": {"horizon": 1000, "seed": 0},
     "tasks": [{"task": "member", "group": "T", "sequence": "factorial",
                "points": ["1/6", "1/7"]}]}

Every subcommand other than ``run`` builds a one-task job and runs it the same
way, so the report format is identical everywhere.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import classify as C
from .construct import (
    claim_lift,
    dense_enum_zero_characterizer,
    extend_prime_index,
    k_characterize_open_finite_index,
)
from .errors import CharsubError, DescriptorMismatch, ParseError
from .expr import format_element, format_sequence, parse_element, parse_group, parse_sequence
from .groups import DEFAULT_CAP, is_finite
from .membership import DEFAULT_HORIZON, member, s_v_finite
from .radicals import inj_into_torus, radical
from .verify import SUITES, run_suite

TASK_KINDS = ("member", "radical", "s_v_finite", "construct", "classify", "verify")
CONSTRUCT_KINDS = ("claim-lift", "k-characterize", "extend-prime", "dense-enum", "inj-into-torus")
CLASSIFY_KINDS = ("exp", "eo", "not-t-char", "autochar", "minap", "k-char-finite")


class JobError(CharsubError):
    """The job file itself is malformed."""


@dataclass(frozen=True)
class Options:
    horizon: int = DEFAULT_HORIZON
    cap: int = DEFAULT_CAP
    seed: int = 0
    workers: int = 1


@dataclass
class TaskResult:
    index: int
    task: dict
    ok: bool
    result: object = None
    error: str | None = None
    seconds: float = 0.0

    def payload(self) -> dict:
        out = {"index": self.index, "task": self.task, "ok": self.ok}
        if self.error is not None:
            out["error"] = self.error
        else:
            out["result"] = self.result
        return out


@dataclass
class Report:
    options: Options
    results: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(not r.ok for r in self.results)

    def payload(self) -> dict:
        return {"options": self.options.__dict__, "tasks": [r.payload() for r in self.results]}

    def digest(self) -> str:
        """Hash of the payload without timings; equal jobs give equal digests."""
        text = json.dumps(self.payload(), sort_keys=True, default=str)
        return hashlib.sha256(text.encode()).hexdigest()

    def to_dict(self) -> dict:
        out = self.payload()
        for entry, r in zip(out["tasks"], self.results):
            entry["seconds"] = round(r.seconds, 6)
        out["digest"] = self.digest()
        out["exit_status"] = 1 if self.failed else 0
        return out


# ---------------------------------------------------------------------------
# task preparation: everything is parsed and type-checked before computing


def _require(task, key):
    if key not in task:
        raise JobError(f"task is missing {key!r}")
    return task[key]


def _parse_field(parser, task, key, *args):
    try:
        return parser(*args, str(_require(task, key)))
    except ParseError as exc:
        raise ParseError(f"in field {key!r}: {exc}", pos=None) from None


def prepare(task: dict, options: Options):
    """Parse a task into a zero-argument callable, raising before any computation."""
    if not isinstance(task, dict):
        raise JobError("each task must be an object")
    kind = _require(task, "task")
    if kind not in TASK_KINDS:
        raise JobError(f"unknown task {kind!r}; expected one of {', '.join(TASK_KINDS)}")
    horizon = int(task.get("horizon", options.horizon))
    cap = int(task.get("cap", options.cap))
    seed = int(task.get("seed", options.seed))

    if kind == "verify":
        name = _require(task, "suite")
        if name not in SUITES:
            raise JobError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
        sizes = task.get("sizes", {})
        return lambda: _suite_result(run_suite(name, seed, sizes))

    if kind == "construct":
        return _prepare_construct(task, horizon)
    if kind == "classify":
        return _prepare_classify(task, seed)

    G = _parse_field(parse_group, task, "group")
    seq = _parse_field(parse_sequence, task, "sequence", G)
    if kind == "member":
        points = task.get("points")
        if not isinstance(points, list):
            raise JobError("member needs a list 'points'")
        xs = []
        for i, p in enumerate(points):
            try:
                xs.append(parse_element(G, str(p)))
            except ParseError as exc:
                raise ParseError(f"in points[{i}]: {exc}", pos=None) from None

        def run_member():
            out = []
            for p, x in zip(points, xs):
                v = member(G, seq, x, horizon=horizon)
                out.append({"point": str(p), **v.to_dict()})
            return out

        return run_member
    if kind == "radical":
        def run_radical():
            r = radical(G, seq, cap)
            return {"subgroup": r.describe(), "certificate": r.certificate.to_dict(),
                    "replayed": r.certificate.replay()}

        return run_radical
    # s_v_finite
    if not is_finite(G):
        raise DescriptorMismatch(f"s_v_finite needs a finite group, got {G}")

    def run_sv():
        H = s_v_finite(G, seq, cap)
        return {"order": H.order, "index": H.index, "elements": [format_element(G, x) for x in H.elements()]}

    return run_sv


def _prepare_construct(task, horizon):
    kind = _require(task, "kind")
    if kind == "claim-lift":
        m = int(_require(task, "m"))
        a = Fraction(str(_require(task, "a")))
        return lambda: {"a": str(a), "m": m, "b": str(claim_lift(a, m))}
    if kind == "k-characterize":
        m = int(_require(task, "m"))
        chain = task.get("chain")

        def run_k():
            r = k_characterize_open_finite_index(m, chain=chain, horizon=horizon)
            return {"sequence": format_sequence(r.sequence), "chain": list(r.presentation.chain),
                    "steps": list(r.steps)}

        return run_k
    if kind == "extend-prime":
        p = int(_require(task, "p"))
        G = _parse_field(parse_group, task, "group")
        u = _parse_field(parse_sequence, task, "sequence", G)

        def run_ext():
            ext = extend_prime_index(u, p, G)
            return {"sequence": format_sequence(ext.sequence), "branch": ext.branch, "reason": ext.reason}

        return run_ext
    if kind == "dense-enum":
        return lambda: {"sequence": format_sequence(dense_enum_zero_characterizer())}
    if kind == "inj-into-torus":
        G = _parse_field(parse_group, task, "group")
        return lambda: {"sequence": format_sequence(inj_into_torus(G))}
    raise JobError(f"unknown construction {kind!r}; expected one of {', '.join(CONSTRUCT_KINDS)}")


def _prepare_classify(task, seed):
    kind = _require(task, "kind")
    if kind not in CLASSIFY_KINDS:
        raise JobError(f"unknown classification {kind!r}; expected one of {', '.join(CLASSIFY_KINDS)}")
    G = _parse_field(parse_group, task, "group")
    if kind == "exp":
        return lambda: {"exp": str(C.exp_descriptor(G))}
    if kind == "eo":
        return lambda: {"eo": str(C.eo_descriptor(G))}
    if kind == "not-t-char":
        def run_t():
            crit = C.not_t_characterizable(G)
            return {"holds": crit.holds, "eo": str(crit.eo), "exp": str(crit.exp), "witness": crit.witness,
                    "witness_group": None if crit.witness_group is None else str(crit.witness_group),
                    "reason": crit.reason}

        return run_t
    if kind == "autochar":
        return lambda: C.autochar_verdict(G, seed=seed).to_dict()
    if kind == "minap":
        def run_minap():
            ans = C.admits_minap_fg(G)
            return {"admits": ans.admits, "rank": ans.rank, "torsion": list(ans.torsion), "flagged": ans.flagged}

        return run_minap

    def run_pigeonhole():
        fact = C.k_char_impossible_finite(G)
        return {"dual_order": fact.dual_order, "statement": fact.statement}

    return run_pigeonhole


def _suite_result(summary):
    out = summary.to_dict()
    if not summary.ok:
        raise SuiteFailed(out)
    return out


class SuiteFailed(Exception):
    def __init__(self, summary):
        super().__init__(f"suite {summary['suite']} failed {summary['failed']} checks")
        self.summary = summary


# ---------------------------------------------------------------------------
# running


def _execute(index, task, prepared):
    start = time.perf_counter()
    if isinstance(prepared, Exception):
        return TaskResult(index, task, False, error=_describe(prepared))
    try:
        result = prepared()
        return TaskResult(index, task, True, result, seconds=time.perf_counter() - start)
    except SuiteFailed as exc:
        return TaskResult(index, task, False, exc.summary, error=str(exc), seconds=time.perf_counter() - start)
    except (CharsubError, ArithmeticError, ValueError, TypeError, AssertionError) as exc:
        return TaskResult(index, task, False, error=_describe(exc), seconds=time.perf_counter() - start)


def _describe(exc) -> str:
    return f"{type(exc).__name__}: {exc}"


def run_job(job: dict, overrides: dict | None = None) -> Report:
    """Run every task of a parsed job; a failing task never stops the others."""
    if not isinstance(job, dict):
        raise JobError("a job must be an object with 'tasks'")
    raw = dict(job.get("options", {}))
    raw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    known = {k: int(raw[k]) for k in ("horizon", "cap", "seed", "workers") if k in raw}
    options = Options(**known)
    tasks = job.get("tasks", [])
    if not isinstance(tasks, list):
        raise JobError("'tasks' must be a list")
    prepared = []
    for task in tasks:
        try:
            prepared.append(prepare(task, options))
        except (CharsubError, ValueError, TypeError, ZeroDivisionError) as exc:
            prepared.append(exc)
    jobs = list(zip(range(len(tasks)), tasks, prepared))
    if options.workers > 1:
        with ThreadPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(lambda t: _execute(*t), jobs))
    else:
        results = [_execute(*t) for t in jobs]
    results.sort(key=lambda r: r.index)
    return Report(options, results)


def load_job(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise JobError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", pos=exc.colno - 1, line=exc.lineno) from None


# ---------------------------------------------------------------------------
# text output


def _short(result) -> str:
    if isinstance(result, list):
        return ", ".join(f"{r['point']}: {r['status']}" for r in result)
    if isinstance(result, dict):
        if "suite" in result:
            flag = " (vacuous)" if result["vacuous"] else ""
            return f"{result['passed']} passed, {result['failed']} failed{flag}"
        if "elements" in result:
            return "{" + ", ".join(result["elements"]) + "}"
        parts = []
        for key, value in result.items():
            if key in ("certificate", "check", "steps", "replayed"):
                continue
            parts.append(f"{key}={value}")
        return "; ".join(parts)
    return str(result)


def format_text(report: Report) -> str:
    lines = []
    for r in report.results:
        label = r.task.get("task", "?") if isinstance(r.task, dict) else "?"
        if isinstance(r.task, dict) and "suite" in r.task:
            label += f" {r.task['suite']}"
        if isinstance(r.task, dict) and "kind" in r.task:
            label += f" {r.task['kind']}"
        if r.ok:
            lines.append(f"[{r.index}] {label}: {_short(r.result)}")
        else:
            lines.append(f"[{r.index}] {label}: ERROR {r.error}")
    lines.append(f"{len(report.results)} task(s), {sum(not r.ok for r in report.results)} failed")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--horizon", type=int, help=f"evidence horizon (default {DEFAULT_HORIZON})")
    common.add_argument("--cap", type=int, help=f"brute-force group order cap (default {DEFAULT_CAP})")
    common.add_argument("--seed", type=int, help="seed for sampled checks (default 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--workers", type=int, help="run tasks on this many threads")

    parser = argparse.ArgumentParser(prog="charsub", description="Characterized subgroups of abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="run a JSON job file")
    p.add_argument("jobfile")

    p = sub.add_parser("member", parents=[common], help="membership verdicts for points")
    p.add_argument("group")
    p.add_argument("sequence")
    p.add_argument("points", nargs="+")

    p = sub.add_parser("radical", parents=[common], help="the radical of a sequence")
    p.add_argument("group")
    p.add_argument("sequence")

    p = sub.add_parser("construct", parents=[common], help="build a characterizing sequence")
    p.add_argument("kind", choices=CONSTRUCT_KINDS)
    p.add_argument("--m", type=int)
    p.add_argument("--a")
    p.add_argument("--p", type=int)
    p.add_argument("--group")
    p.add_argument("--sequence")
    p.add_argument("--chain", help="comma separated chain, e.g. 12,6,1")

    p = sub.add_parser("classify", parents=[common], help="classification facts about a group")
    p.add_argument("kind", choices=CLASSIFY_KINDS)
    p.add_argument("group")

    p = sub.add_parser("verify", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--sizes", default="{}", help='JSON object, e.g. \'{"max_order": 16}\'')
    return parser


def _job_from_args(args) -> dict:
    if args.command == "run":
        return load_job(args.jobfile)
    task = {"task": args.command}
    if args.command == "member":
        task.update(group=args.group, sequence=args.sequence, points=args.points)
    elif args.command == "radical":
        task.update(group=args.group, sequence=args.sequence)
    elif args.command == "construct":
        task["kind"] = args.kind
        for key in ("m", "a", "p", "group", "sequence"):
            if getattr(args, key) is not None:
                task[key] = getattr(args, key)
        if args.chain:
            task["chain"] = [int(c) for c in args.chain.split(",")]
    elif args.command == "classify":
        task.update(kind=args.kind, group=args.group)
    elif args.command == "verify":
        try:
            sizes = json.loads(args.sizes)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--sizes is not JSON: {exc.msg}", pos=exc.colno - 1, line=exc.lineno) from None
        task.update(suite=args.suite, sizes=sizes)
    return {"tasks": [task]}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = _job_from_args(args)
        overrides = {"horizon": args.horizon, "cap": args.cap, "seed": args.seed, "workers": args.workers}
        report = run_job(job, overrides)
    except CharsubError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2, default=str))
    else:
        print(format_text(report))
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())

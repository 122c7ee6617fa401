"""
Основной модуль стенда счётчиковых автоматов: командная строка.

Глаголы validate, run, prob, reach, transform, build, ips, classify.
Каждая команда только разбирает флаги, вызывает операции пакетов и
печатает отчёт строками «ключ: значение» или в JSON (--json).
Коды выхода: 0 успех, 1 ошибка проверки или семантики, 2 ввод-вывод,
3 неверные флаги.
"""
import argparse
import sys
import warnings
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import config
from builtin import SAMPLES, blackbox_recognizer, membership, qtwin_spec
from constructions import (
    build_exist_twin_qcca,
    build_greater_square_pebble,
    build_lapins_recognizer,
    build_siam_twins_pebble,
    build_usquare_qcca,
    lemma1_reachable,
    transform_nca_to_pca,
)
from constructions.transform import TransformParams, fan_out, source_hash
from engines import (
    classify_mode,
    exact_probability,
    monte_carlo,
    run_deterministic,
    run_scripted,
    sampling_chooser,
)
from errors import (
    ConfigError,
    Inconclusive,
    MachineSyntaxError,
    NonConvergence,
    NonHalting,
    UnknownLanguage,
    ValidationError,
    WorkbenchError,
)
from exactmath import parse_rational
from log_adapter import ReportAdapter, save_transcript
from machines import MachineSpec, load_machine, print_machine, save_machine
from protocols import (
    ProtocolParams,
    adversarial_provers,
    corollary2_verifier,
    honest_prover,
    run_session,
    theorem1_verifier,
)
from utils.logger import SessionLogger, get_logger
from utils.rng import DeterministicRNG

logger = get_logger(__name__)

BUILTIN_PREFIX = "builtin:"


class FlagError(WorkbenchError):
    """Неверные или несовместимые флаги."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise FlagError(message)


def _machines() -> Dict[str, Any]:
    table: Dict[str, Any] = {
        "qtwin": qtwin_spec,
        "exist-twin": build_exist_twin_qcca,
        "siam-twins": build_siam_twins_pebble,
    }
    table.update(SAMPLES)
    return table


def _harness(name: str, seed: int):
    if name == "usquare":
        return build_usquare_qcca(blackbox_recognizer("SQUARE", config.SQUARE_EPSILON, seed))
    gsq = build_greater_square_pebble(blackbox_recognizer("GREATER", config.GREATER_EPSILON, seed))
    if name == "greater-square":
        return gsq
    if name == "lapins":
        return build_lapins_recognizer(gsq)
    return None


HARNESSES = ("usquare", "greater-square", "lapins")


def resolve_target(ref: str, seed: int = config.DEFAULT_SEED):
    """Файл машины или builtin:<имя> (машина или обёртка с чёрным ящиком)."""
    if ref.startswith(BUILTIN_PREFIX):
        name = ref[len(BUILTIN_PREFIX):]
        if name in HARNESSES:
            return _harness(name, seed)
        factory = _machines().get(name)
        if factory is None:
            known = sorted(list(_machines()) + list(HARNESSES))
            raise FlagError(f"unknown builtin {name!r}; known: {', '.join(known)}")
        return factory()
    return load_machine(ref)


def _require_spec(target: Any, verb: str) -> MachineSpec:
    if not isinstance(target, MachineSpec):
        raise FlagError(f"{verb} needs a machine, not a black-box harness")
    return target


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except MachineSyntaxError as exc:
        raise FlagError(str(exc)) from None


def _emit(args, lines: List[str], data: Any) -> None:
    if args.json:
        print(ReportAdapter.to_json(data))
    else:
        for line in lines:
            print(line)


# ==========================================================================
# Команды
# ==========================================================================

def cmd_validate(args) -> int:
    try:
        spec = load_machine(args.file)
    except ValidationError as exc:
        for violation in exc.violations:
            print(violation)
        return config.EXIT_CODES["invalid"]
    _emit(args, [f"valid: {spec.kind}", f"states: {len(spec.states)}"],
          {"valid": True, "kind": spec.kind, "states": list(spec.states)})
    return config.EXIT_CODES["ok"]


def cmd_run(args) -> int:
    spec = _require_spec(resolve_target(args.machine, args.seed), "run")
    if spec.signature.mode == "nondeterministic":
        raise FlagError("run needs a deterministic, probabilistic or quantum machine; use reach for 2nca")
    if spec.signature.mode == "deterministic" and not spec.communication:
        result = run_deterministic(spec, args.input, args.max_steps)
    else:
        rng = DeterministicRNG(args.seed)
        result = run_scripted(spec, args.input, sampling_chooser(rng), args.max_steps)
    final = result.final
    lines = [
        f"decision: {result.decision}",
        f"steps: {result.steps}",
        f"restarts: {result.restarts}",
        f"final_state: {final.state}",
        f"head: {final.head}",
        f"counters: {list(final.counters)}",
    ]
    _emit(args, lines, {"decision": result.decision, "steps": result.steps,
                        "restarts": result.restarts, "final": final.classical()})
    return config.EXIT_CODES["ok"]


def cmd_prob(args) -> int:
    target = resolve_target(args.machine, args.seed)
    if args.method == "mc":
        estimate = monte_carlo(target, args.input, trials=args.trials, seed=args.seed,
                               step_cap=args.step_cap, jobs=args.jobs)
        _emit(args, ReportAdapter.estimate_lines(estimate), estimate)
    else:
        method = "forward" if args.method == "forward" else "regenerative"
        report = exact_probability(target, args.input, tolerance=_rational(args.tol),
                                   horizon=args.horizon, method=method)
        _emit(args, ReportAdapter.report_lines(report), report)
    return config.EXIT_CODES["ok"]


def cmd_reach(args) -> int:
    spec = _require_spec(resolve_target(args.machine), "reach")
    result = lemma1_reachable(spec, args.input, args.scale)
    states = sorted(result.states)
    lines = [
        f"M: {result.bound.m}",
        f"counter_cap: {result.bound.counter_cap}",
        f"step_cap: {result.bound.step_cap}",
        f"explored: {result.explored}",
        f"reachable: {' '.join(states)}",
        f"accepting_path: {len(result.accepting_path) - 1 if result.accepting_path else 'none'}",
    ]
    for state in states:
        lines.append(f"witness {state}: {len(result.witnesses[state]) - 1} steps")
    data = {
        "bound": result.bound,
        "reachable": states,
        "witness_lengths": {s: len(result.witnesses[s]) - 1 for s in states},
        "accepting": result.accepting_path is not None,
    }
    _emit(args, lines, data)
    return config.EXIT_CODES["ok"]


def cmd_transform(args) -> int:
    spec = _require_spec(resolve_target(args.machine), "transform")
    params = None
    if args.k is not None or args.c is not None:
        params = TransformParams(args.k or fan_out(spec), args.c or config.TRANSFORM_C)
    pca = transform_nca_to_pca(spec, params, audit_words=args.audit)
    header = [f"source: {source_hash(spec)}", f"k: {pca.labels['k']}", f"c: {pca.labels['c']}"]
    if args.output:
        save_machine(pca, args.output, header)
        print(f"written: {args.output}")
    else:
        sys.stdout.write("".join(f"# {line}\n" for line in header) + print_machine(pca))
    return config.EXIT_CODES["ok"]


def cmd_build(args) -> int:
    factory = _machines().get(args.name)
    if factory is None:
        raise FlagError(f"unknown construction {args.name!r}; known: {', '.join(sorted(_machines()))}")
    spec = factory()
    if args.output:
        save_machine(spec, args.output)
        print(f"written: {args.output}")
    else:
        sys.stdout.write(print_machine(spec))
    return config.EXIT_CODES["ok"]


def _prover(name: str, target: MachineSpec, lie_step: int):
    if name == "honest":
        return honest_prover(target)
    provers = {p.name: p for p in adversarial_provers(target, lie_step)}
    if name not in provers:
        raise FlagError(f"unknown prover {name!r}; use honest or one of {', '.join(config.ADVERSARY_NAMES)}")
    return provers[name]


def cmd_ips(args) -> int:
    target = _require_spec(resolve_target(args.target), "ips")
    if args.k < 2:
        raise FlagError(f"k must be at least 2, got {args.k}")
    params = ProtocolParams(k=args.k)
    if args.verifier == "thm1":
        verifier = theorem1_verifier(target, params)
    else:
        verifier = corollary2_verifier(target, params)
    prover = _prover(args.prover, target, args.lie_step)
    result = run_session(verifier, prover, args.input, mode=args.method, budget=args.budget,
                         seed=args.seed, samples=args.samples, target=target, params=params,
                         jobs=args.jobs)

    if args.method == "mc":
        lines = ReportAdapter.estimate_lines(result.report)
    else:
        lines = ReportAdapter.report_lines(result.report)
    lines += ReportAdapter.mapping_lines(result.predicted, prefix="predicted_")
    for index, transcript in enumerate(result.transcripts, start=1):
        lines.append(f"transcript {index}: {transcript.decision}, {transcript.rounds} rounds")
        lines += ["  " + line for line in ReportAdapter.transcript_lines(transcript.events)]
    _emit(args, lines, {"report": result.report, "predicted": result.predicted,
                        "transcripts": [t.events for t in result.transcripts]})

    if args.transcript and result.transcripts:
        save_transcript(result.transcripts[0].events, args.transcript)
    if args.log:
        session_log = SessionLogger()
        session_log.set_parameters({"verifier": args.verifier, "prover": args.prover, "input": args.input,
                                    "k": args.k, "method": args.method, "seed": args.seed})
        for transcript in result.transcripts:
            session_log.log_events(transcript.events)
        session_log.set_report(ReportAdapter.jsonable({"report": result.report, "predicted": result.predicted}))
        session_log.save(args.log)
    return config.EXIT_CODES["ok"]


def cmd_classify(args) -> int:
    target = resolve_target(args.machine, args.seed)
    tolerance = _rational(args.tol)
    members, nonmembers = list(args.members), list(args.nonmembers)
    if args.language:
        for word in args.words:
            (members if membership(args.language, word) else nonmembers).append(word)
    if not members and not nonmembers:
        raise FlagError("classify needs at least one input word")
    member_reports = [exact_probability(target, w, tolerance=tolerance, horizon=args.horizon) for w in members]
    nonmember_reports = [exact_probability(target, w, tolerance=tolerance, horizon=args.horizon)
                         for w in nonmembers]
    mode = classify_mode(member_reports, nonmember_reports, _rational(args.epsilon))
    _emit(args, [f"mode: {mode}", f"members: {len(members)}", f"nonmembers: {len(nonmembers)}"],
          {"mode": mode, "members": members, "nonmembers": nonmembers})
    return config.EXIT_CODES["ok"]


# ==========================================================================
# Разбор флагов
# ==========================================================================

def _sampling_flags() -> argparse.ArgumentParser:
    """--seed и --jobs после глагола; без флага остаётся глобальное значение."""
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ctrwb", description=config.PROJECT_NAME)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    parser.add_argument("--jobs", type=int, default=1)
    sampling = [_sampling_flags()]
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = verbs.add_parser("validate", help="parse and validate a machine file")
    p.add_argument("file")
    p.set_defaults(handler=cmd_validate)

    p = verbs.add_parser("run", help="run one trajectory", parents=sampling)
    p.add_argument("machine")
    p.add_argument("--input", default="")
    p.add_argument("--max-steps", type=int, default=config.DEFAULT_STEP_CAP)
    p.set_defaults(handler=cmd_run)

    p = verbs.add_parser("prob", help="acceptance and rejection probabilities", parents=sampling)
    p.add_argument("machine")
    p.add_argument("--input", default="")
    p.add_argument("--method", choices=("exact", "forward", "mc"), default="exact")
    p.add_argument("--tol", default="1/1000000000")
    p.add_argument("--horizon", type=int, default=config.DEFAULT_HORIZON)
    p.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    p.add_argument("--step-cap", type=int, default=config.DEFAULT_STEP_CAP)
    p.set_defaults(handler=cmd_prob)

    p = verbs.add_parser("reach", help="bounded reachability of a 2nca")
    p.add_argument("machine")
    p.add_argument("--input", default="")
    p.add_argument("--scale", type=int, default=1)
    p.set_defaults(handler=cmd_reach)

    p = verbs.add_parser("transform", help="turn a 2nca into a 2pca")
    p.add_argument("machine")
    p.add_argument("--k", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--audit", nargs="*", default=[])
    p.add_argument("--output")
    p.set_defaults(handler=cmd_transform)

    p = verbs.add_parser("build", help="print a built-in machine file")
    p.add_argument("name")
    p.add_argument("--output")
    p.set_defaults(handler=cmd_build)

    p = verbs.add_parser("ips", help="run a verifier/prover session", parents=sampling)
    p.add_argument("--verifier", choices=("thm1", "cor2"), default="thm1")
    p.add_argument("--target", default=BUILTIN_PREFIX + "anbn-1d2ca")
    p.add_argument("--input", default="")
    p.add_argument("--prover", default="honest")
    p.add_argument("--lie-step", type=int, default=config.DEFAULT_LIE_STEP)
    p.add_argument("--k", type=int, default=config.DEFAULT_K)
    p.add_argument("--method", choices=("exact", "mc"), default="exact")
    p.add_argument("--budget", type=int)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--transcript")
    p.add_argument("--log")
    p.set_defaults(handler=cmd_ips)

    p = verbs.add_parser("classify", help="recognition mode over labelled inputs")
    p.add_argument("machine")
    p.add_argument("--members", nargs="*", default=[])
    p.add_argument("--nonmembers", nargs="*", default=[])
    p.add_argument("--language", help="label --words with a membership oracle")
    p.add_argument("--words", nargs="*", default=[])
    p.add_argument("--epsilon", default="1/4")
    p.add_argument("--tol", default="1/1000000000")
    p.add_argument("--horizon", type=int, default=config.DEFAULT_HORIZON)
    p.set_defaults(handler=cmd_classify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logger.debug("verb %s with seed %s", args.verb, args.seed)
        if args.jobs < 1:
            raise FlagError("--jobs must be at least 1")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonConvergence)
            return args.handler(args)
    except (FlagError, UnknownLanguage) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return config.EXIT_CODES["flags"]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return config.EXIT_CODES["io"]
    except ValidationError as exc:
        for violation in exc.violations:
            print(violation, file=sys.stderr)
        return config.EXIT_CODES["invalid"]
    except (MachineSyntaxError, ConfigError, NonHalting, Inconclusive, WorkbenchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return config.EXIT_CODES["invalid"]


if __name__ == "__main__":
    sys.exit(main())

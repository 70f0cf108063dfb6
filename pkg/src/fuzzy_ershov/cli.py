"""``fuzzy-ershov`` command line.

Exit codes: 0 success, 1 a domain check failed, 2 input could not be parsed
or validated, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import boolean, gallery, hierarchy, mindchange, trace
from .numeric import RationalError, parse_rational
from .trace import ApproximationTrace, Shape

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_PARSE = 2
EXIT_IO = 3


class CheckFailed(Exception):
    """A domain check failed; the message is the report to show."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    action: str | None = None
    input: Path | None = None
    input2: Path | None = None
    output: Path | None = None
    shape: Shape | None = None
    level: int | None = None
    denominator_bound: int | None = None
    seed: int | None = None
    horizon: int | None = None
    lookahead: bool = False
    variant: str = "sigma"
    elements: int = 1
    center: str = "1/2"
    amplitude: str = "1/4"
    count: int = 1
    digits: str = ""

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        def resolve(p):
            return None if p is None else Path(p).expanduser().resolve()

        return cls(
            subcommand=ns.command,
            action=getattr(ns, "action", None),
            input=resolve(getattr(ns, "input", None)),
            input2=resolve(getattr(ns, "input2", None)),
            output=resolve(getattr(ns, "output", None)),
            shape=None if getattr(ns, "shape", None) is None else Shape.parse(ns.shape),
            level=getattr(ns, "level", None),
            denominator_bound=getattr(ns, "denominator_bound", None),
            seed=getattr(ns, "seed", None),
            horizon=getattr(ns, "horizon", None),
            lookahead=getattr(ns, "lookahead", False),
            variant=getattr(ns, "variant", "sigma"),
            elements=getattr(ns, "elements", 1),
            center=getattr(ns, "center", "1/2"),
            amplitude=getattr(ns, "amplitude", "1/4"),
            count=getattr(ns, "count", 1),
            digits=getattr(ns, "digits", ""),
        )


def _color_enabled() -> bool:
    return os.environ.get("FUZZY_ERSHOV_COLOR", "").lower() in {"1", "true", "yes", "always"}


def _status(text: str, good: bool) -> str:
    if not _color_enabled():
        return text
    code = "32" if good else "31"
    return f"\033[{code}m{text}\033[0m"


def _need(cfg: RunConfig, attr: str, flag: str):
    value = getattr(cfg, attr)
    if value is None:
        raise ValueError(f"{cfg.subcommand} needs {flag}")
    return value


def _load(cfg: RunConfig, path: Path | None = None, shape: Shape | None = None) -> ApproximationTrace:
    path = path or _need(cfg, "input", "--in")
    rows, header_shape = trace.parse_raw(path.read_text())
    t = trace.validate(rows, shape or cfg.shape or header_shape)
    if cfg.horizon is not None:
        if not 1 <= cfg.horizon <= t.S:
            raise ValueError(f"--horizon {cfg.horizon} outside 1..{t.S}")
        t = t.prefix(cfg.horizon)
    return t


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        cfg.output.write_text(text)


def cmd_validate(cfg: RunConfig) -> int:
    t = _load(cfg)
    print(_status(f"OK shape={t.shape} X={t.X} S={t.S}", True))
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    _emit(cfg, hierarchy.report_csv(hierarchy.classify(_load(cfg))))
    return EXIT_OK


def cmd_profile(cfg: RunConfig) -> int:
    t = _load(cfg)
    prof = mindchange.pi_profile(t) if cfg.variant == "pi" else mindchange.sigma_profile(t)
    _emit(cfg, mindchange.render_profile(prof, mindchange.update_profile(t)))
    return EXIT_OK


def cmd_decompose(cfg: RunConfig) -> int:
    out = _need(cfg, "output", "--out")
    d = boolean.decompose(_load(cfg), _need(cfg, "level", "--level"), lookahead=cfg.lookahead)
    boolean.write_bundle(d, out)
    print(f"decomp n={d.n} k={d.k} pairs={len(d.pairs)}")
    return EXIT_OK


def cmd_recompose(cfg: RunConfig) -> int:
    d = boolean.read_bundle(_need(cfg, "input", "--in"))
    _emit(cfg, trace.dumps(boolean.recompose(d)))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    report = boolean.verify_theorem(
        _load(cfg), _need(cfg, "level", "--level"), lookahead=cfg.lookahead
    )
    text = boolean.render_report(report)
    _emit(cfg, text)
    if not report.ok:
        raise CheckFailed(f"verify failed: {', '.join(sorted(report.failed_checks()))}")
    return EXIT_OK


def cmd_ops(cfg: RunConfig) -> int:
    a = _load(cfg)
    if cfg.action == "complement":
        result = trace.complement(a)
    else:
        b = _load(cfg, _need(cfg, "input2", "--in2"))
        result = trace.union(a, b) if cfg.action == "union" else trace.intersection(a, b)
    _emit(cfg, trace.dumps(result))
    return EXIT_OK


def cmd_cut(cfg: RunConfig) -> int:
    t = _load(cfg)
    bound = _need(cfg, "denominator_bound", "--denominator-bound")
    if t.shape is Shape.SIGMA1:
        cut = trace.enumerate_left_cut
    elif t.shape is Shape.PI1:
        cut = trace.enumerate_right_cut
    else:
        raise ValueError(f"cut needs a Sigma1 or Pi1 trace, got {t.shape}")
    lines = [" ".join(str(q) for q in cut(t, x, bound)) for x in range(t.X)]
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_gallery(cfg: RunConfig) -> int:
    kind = cfg.action
    S = _need(cfg, "horizon", "--horizon")
    if kind == "harkleroad":
        table = gallery.ToyHaltingTable.read(_need(cfg, "input", "--in"))
        t = gallery.harkleroad(table, S)
    elif kind == "oscillator":
        sched = gallery.OscillatorSchedule(
            parse_rational(cfg.center), parse_rational(cfg.amplitude), cfg.count
        )
        t = gallery.oscillator(sched, S)
    elif kind == "random":
        t = gallery.random_bounded_trace(
            cfg.seed if cfg.seed is not None else 0,
            cfg.elements,
            S,
            _need(cfg, "level", "--level"),
            cfg.denominator_bound or 16,
        )
    elif kind == "leftce":
        t = gallery.left_ce_real(cfg.digits, S)
    else:
        t = gallery.right_ce_real(cfg.digits, S)
    _emit(cfg, trace.dumps(t))
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "profile": cmd_profile,
    "decompose": cmd_decompose,
    "recompose": cmd_recompose,
    "verify": cmd_verify,
    "ops": cmd_ops,
    "cut": cmd_cut,
    "gallery": cmd_gallery,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", help="input trace file (or bundle directory)")
    common.add_argument("--in2", dest="input2", help="second input trace file")
    common.add_argument("--out", dest="output", help="output path (default: stdout)")
    common.add_argument("--shape", choices=[s.value for s in Shape],
                        help="claimed shape, overriding the file header")
    common.add_argument("--level", type=int, help="hierarchy level n >= 1")
    common.add_argument("--denominator-bound", type=int, help="grid denominator bound")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--horizon", type=int,
                        help="number of stages (gallery) or truncation of the input")

    p = argparse.ArgumentParser(prog="fuzzy-ershov", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check a trace file against its shape")
    sub.add_parser("classify", parents=[common], help="per-element level report as CSV")
    sp = sub.add_parser("profile", parents=[common], help="mind-change profile report")
    sp.add_argument("--variant", choices=["sigma", "pi"], default="sigma")
    for name, helptext in [
        ("decompose", "split into Sigma1 pairs (writes a bundle directory)"),
        ("verify", "decompose, recompose and check the guarantees"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--lookahead", action="store_true",
                        help="count flips out of stage s as well (one-stage-early phases)")
    sub.add_parser("recompose", parents=[common], help="max-min recombination of a bundle")
    sp = sub.add_parser("ops", parents=[common], help="fuzzy set algebra")
    sp.add_argument("action", choices=["union", "intersection", "complement"])
    sub.add_parser("cut", parents=[common], help="left cut (Sigma1) or right cut (Pi1) on a grid")
    sp = sub.add_parser("gallery", parents=[common], help="generate example traces")
    sp.add_argument("action", choices=["harkleroad", "oscillator", "random", "leftce", "rightce"])
    sp.add_argument("--elements", type=int, default=1, help="X for random traces")
    sp.add_argument("--center", default="1/2")
    sp.add_argument("--amplitude", default="1/4")
    sp.add_argument("--count", type=int, default=1, help="oscillation count")
    sp.add_argument("--digits", default="", help="binary digits for leftce/rightce")
    return p


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except CheckFailed as exc:
        print(_status(f"FAIL {exc}", False), file=sys.stderr)
        return EXIT_CHECK
    except boolean.LevelExceeded as exc:
        print(_status(f"FAIL level precondition: {exc}", False), file=sys.stderr)
        return EXIT_CHECK
    except trace.ShapeViolation as exc:
        print(_status(f"FAIL x={exc.x} s={exc.s} invariant={exc.invariant}: {exc}", False),
              file=sys.stderr)
        return EXIT_PARSE
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, RationalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

"""``syndetica <command> [--config file.json] [flags]``.

Exit codes: 0 certified / pass, 1 refuted / fail, 2 inconclusive,
64 usage error or malformed config, 65 bad input data.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import __version__
from .constructions import bebutov, build_hierarchy, hierarchy_prefix, squares_indicator, squares_window
from .errors import CoverageError, InconclusiveError, PolynomialError, SyndeticaError
from .induced import GroupElement, act, minimal_probe, omega, theorem_b_bridge
from .largeness import (
    LargenessProfile1D, longest_run, piecewise_syndetic_witness, syndetic_gap,
    thickly_syndetic_profile)
from .poly import PolyFamily
from .polyret import TSGenerator, required_window, return_set, theorem_b_harness, ts_generate
from .symdyn import SeqWindow, Word, language, multiple_recurrence_scan, occurrences
from .verify import SUITES, run_suite
from .window import Box, Window1D, Window2D

SCHEMA = "syndetica.report/1"
EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DATA = 64, 65
VERDICT_EXIT = {"certified": 0, "pass": 0, "recurrent": 0,
                "refuted": 1, "fail": 1, "not-recurrent": 1,
                "inconclusive": 2}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Every parameter a command reads. Serializable, so a run is
    reproducible from its config alone."""

    command: str = ""
    action: Optional[str] = None
    seed: int = 0
    # set sources: evens, odds, squares, empty, full, ts, members:1,2,3, file:path.json
    set: str = "evens"
    lo: int = 0
    hi: int = 1000
    core: Optional[list] = None
    query: str = "syndetic"
    nmax: int = 3
    max_gap: Optional[int] = None
    g: int = 2
    L: int = 100
    ts_nmax: int = 4
    periods: Optional[list] = None
    offset: int = 0
    polys: str = "n,n^2"
    box: Optional[list] = None
    block_max: Optional[list] = None
    seq: Optional[str] = None
    text: Optional[str] = None
    word: Optional[str] = None
    k: int = 1
    j: int = 0
    r: int = 20
    n_max: int = 10_000
    depth: int = 7
    length: Optional[int] = None
    K: int = 0
    W: int = 20
    m_act: int = 0
    k_act: int = 0
    H: int = 10
    suite: str = "all"
    s_override: Optional[str] = None
    input: Optional[str] = None
    format: Optional[str] = None
    out: Optional[str] = None
    bitmap: Optional[str] = None
    meta: Optional[str] = None
    json: bool = False

    def to_json(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def merged(cls, config: dict, flags: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(config) - names)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        try:
            return cls(**{**config, **flags})
        except TypeError as exc:
            raise UsageError(str(exc)) from None


# ----------------------------------------------------------------- inputs


def load_set(cfg: RunConfig, lo: Optional[int] = None, hi: Optional[int] = None) -> Window1D:
    lo = cfg.lo if lo is None else lo
    hi = cfg.hi if hi is None else hi
    spec = cfg.set
    if spec.startswith("file:"):
        return Window1D.from_json(json.loads(Path(spec[5:]).read_text()))
    if spec.startswith("members:"):
        items = [int(v) for v in spec[8:].split(",") if v.strip()]
        return Window1D.from_members(lo, hi, items)
    if spec == "evens":
        return Window1D.from_mask_fn(lo, hi, lambda ns: ns % 2 == 0)
    if spec == "odds":
        return Window1D.from_mask_fn(lo, hi, lambda ns: ns % 2 == 1)
    if spec == "squares":
        return squares_window(lo, hi)
    if spec == "empty":
        return Window1D.empty(lo, hi)
    if spec == "full":
        return Window1D.full(lo, hi)
    if spec == "ts":
        return ts_generate(generator(cfg), lo, hi)
    raise UsageError(f"unknown set source {spec!r}")


def generator(cfg: RunConfig) -> TSGenerator:
    periods = None if cfg.periods is None else tuple(int(p) for p in cfg.periods)
    nmax = cfg.ts_nmax if periods is None else len(periods)
    return TSGenerator(nmax, periods, cfg.offset)


def load_seq(cfg: RunConfig) -> SeqWindow:
    if cfg.seq:
        return SeqWindow.load(cfg.seq)
    if cfg.text:
        return SeqWindow.from_str(cfg.text)
    raise UsageError("give a sequence with --seq FILE or --text 0101...")


def need_box(cfg: RunConfig) -> Box:
    if cfg.box is None or len(cfg.box) != 4:
        raise UsageError("--box needs four integers: mlo mhi nlo nhi")
    return Box(*(int(v) for v in cfg.box))


def emit(cfg: RunConfig, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def report(cfg: RunConfig, body: dict, verdict: Optional[str] = None) -> dict:
    out = {"schema": SCHEMA, "command": cfg.command, "config": cfg.to_json(), **body}
    if verdict is not None:
        out["verdict"] = verdict
    return out


def note(msg: str) -> None:
    print(msg, file=sys.stderr)


# --------------------------------------------------------------- commands


def _nested_gaps(S: Window1D, core: tuple[int, int]) -> list:
    """Gaps on the prefixes of the core of relative length 1/8, 1/4, 1/2, 1."""
    lo, hi = core
    span = hi - lo + 1
    return [syndetic_gap(S, (lo, lo + max(span // f, 1) - 1)) for f in (8, 4, 2, 1)]


def cmd_analyze_set(cfg: RunConfig) -> int:
    S = load_set(cfg)
    core = tuple(cfg.core) if cfg.core else (S.lo, S.hi)
    body: dict = {"set": cfg.set, "window": list(S.interval), "core": list(core)}
    rows = []
    try:
        if cfg.query == "syndetic":
            g = syndetic_gap(S, core)
            rows.append(("gap", g))
            if cfg.max_gap is not None:
                verdict = "certified" if g is not None and g <= cfg.max_gap else "refuted"
            elif core[1] - core[0] + 1 < 64:
                verdict = "inconclusive"
                body["reason"] = "core too short for the growth test; pass --max-gap"
            else:
                nested = _nested_gaps(S, core)
                body["nested_gaps"] = nested
                big = [float("inf") if v is None else v for v in nested]
                if big[-1] == big[-2] and big[-1] != float("inf"):
                    verdict = "certified"
                elif all(a < b for a, b in zip(big, big[1:])):
                    verdict = "refuted"
                else:
                    verdict = "inconclusive"
            body["gap"] = g
        elif cfg.query == "thick":
            if cfg.nmax > core[1] - core[0] + 1:
                raise InconclusiveError(f"core {core} shorter than run length {cfg.nmax}",
                                        required=cfg.nmax)
            run = longest_run(S, core)
            rows.append(("longest run", run))
            body["longest_run"] = run
            verdict = "certified" if run >= cfg.nmax else "refuted"
        elif cfg.query == "ts":
            prof = thickly_syndetic_profile(S, cfg.nmax, cfg.core)
            rows.extend((f"N={N}", v) for N, v in prof.gaps.items())
            body["profile"] = prof.to_json()
            verdict = "certified" if prof.certified(cfg.max_gap) else "refuted"
        elif cfg.query == "ps":
            if cfg.L > core[1] - core[0] + 1:
                raise InconclusiveError(f"stretch {cfg.L} longer than core {core}",
                                        required=cfg.L)
            p = piecewise_syndetic_witness(S, cfg.g, cfg.L, core)
            rows.append(("witness", p))
            body["witness"] = p
            verdict = "certified" if p is not None else "refuted"
        else:
            raise UsageError(f"unknown query {cfg.query!r}")
    except InconclusiveError as exc:
        verdict = "inconclusive"
        body["reason"] = str(exc)
        body["required"] = exc.required
    if cfg.json or cfg.out:
        emit(cfg, report(cfg, body, verdict))
    else:
        print(f"{'N' if cfg.query == 'ts' else 'quantity':<12} value")
        for name, val in rows:
            print(f"{name:<12} {'inf' if val is None else val}")
        print(f"verdict: {verdict}")
        if "reason" in body:
            print(f"reason: {body['reason']}")
    return VERDICT_EXIT[verdict]


def cmd_return_set(cfg: RunConfig) -> int:
    A = PolyFamily.parse(cfg.polys)
    box = need_box(cfg)
    lo, hi = required_window(A, box)
    note(f"S window needed for this box: [{lo}, {hi}]")
    S = load_set(cfg, lo, hi)
    if cfg.block_max:
        rep = theorem_b_harness(generator(cfg), A, box, cfg.block_max, cfg.core, S=S)
        emit(cfg, report(cfg, rep.to_json(), rep.verdict.lower()))
        return VERDICT_EXIT[rep.verdict.lower()]
    R = return_set(S, A, box)
    if cfg.bitmap:
        Path(cfg.bitmap).write_bytes(R.to_pbm())
    body = {"polys": str(A), "box": list(box), "s_window": list(S.interval), "count": R.count()}
    if cfg.out:
        Path(cfg.out).write_text(R.to_csv())
    print(json.dumps(report(cfg, body), sort_keys=True))
    return EXIT_OK


def cmd_occurs(cfg: RunConfig) -> int:
    if not cfg.word:
        raise UsageError("--word is required")
    s = load_seq(cfg)
    occ = occurrences(Word.from_str(cfg.word), s)
    emit(cfg, report(cfg, {"word": cfg.word, "interval": list(s.interval),
                           "places": occ.members().tolist(), "count": occ.count()}))
    return EXIT_OK


def cmd_language(cfg: RunConfig) -> int:
    s = load_seq(cfg)
    words = sorted(str(w) for w in language(s, cfg.k))
    emit(cfg, report(cfg, {"k": cfg.k, "words": words, "count": len(words)}))
    return EXIT_OK


def cmd_mrec_scan(cfg: RunConfig) -> int:
    s = load_seq(cfg)
    try:
        found = multiple_recurrence_scan(s, cfg.j, cfg.r, cfg.n_max)
    except InconclusiveError as exc:
        emit(cfg, report(cfg, {"reason": str(exc), "required": exc.required}, "inconclusive"))
        return EXIT_INCONCLUSIVE
    emit(cfg, report(cfg, {"returns": found, "count": len(found)}))
    return EXIT_OK


def _write_seq(cfg: RunConfig, s: SeqWindow) -> None:
    if cfg.out:
        s.save(cfg.out)
    else:
        sys.stdout.write(s.to_ascii() + "\n")


def cmd_build_example(cfg: RunConfig) -> int:
    kind = cfg.action
    if kind == "squares":
        _write_seq(cfg, squares_indicator(cfg.lo, cfg.hi))
    elif kind == "bebutov":
        _write_seq(cfg, bebutov(load_set(cfg)))
    elif kind == "theoremC":
        h = build_hierarchy(cfg.depth)
        s = hierarchy_prefix(h, cfg.length or h.words[-1].size)
        meta = json.dumps(h.to_json(), sort_keys=True, indent=2) + "\n"
        if cfg.meta:
            Path(cfg.meta).write_text(meta)
        if cfg.out:
            s.save(cfg.out)
        if not cfg.meta and not cfg.out:
            sys.stdout.write(meta)
    else:
        raise UsageError("build-example needs squares, bebutov or theoremC")
    return EXIT_OK


def _point(cfg: RunConfig):
    x = load_seq(cfg) if (cfg.seq or cfg.text) else bebutov(load_set(cfg))
    A = PolyFamily.parse(cfg.polys)
    p = omega(x, A, cfg.K, cfg.W)
    if cfg.m_act or cfg.k_act:
        p = act(GroupElement(cfg.m_act, cfg.k_act), p)
    return p


def cmd_induced(cfg: RunConfig) -> int:
    if cfg.action == "omega":
        p = _point(cfg)
        cells = {str(n): ["".join(map(str, p.cells[n + p.K, i])) for i in range(p.d)]
                 for n in range(-p.K, p.K + 1)}
        emit(cfg, report(cfg, {"K": p.K, "obs": list(p.obs), "cells": cells}))
        return EXIT_OK
    if cfg.action == "bridge":
        A = PolyFamily.parse(cfg.polys)
        box = need_box(cfg)
        lo, hi = required_window(A, box)
        res = theorem_b_bridge(load_set(cfg, lo, hi), A, box)
        if cfg.bitmap:
            stem = cfg.bitmap[:-4] if cfg.bitmap.endswith(".pbm") else cfg.bitmap
            for name, w in (("lhs", res.lhs), ("rhs", res.rhs), ("diff", res.diff)):
                Path(f"{stem}.{name}.pbm").write_bytes(w.to_pbm())
        verdict = "pass" if res.differing_cells == 0 else "fail"
        emit(cfg, report(cfg, res.to_json(), verdict))
        return VERDICT_EXIT[verdict]
    if cfg.action == "probe":
        res = minimal_probe([_point(cfg)], cfg.r, cfg.H)[0]
        emit(cfg, report(cfg, {"witness": res.witness, "returns": res.returns,
                               "detail": res.detail}, res.verdict))
        return VERDICT_EXIT[res.verdict]
    raise UsageError("induced needs omega, bridge or probe")


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite not in SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(sorted(SUITES))}")
    results = run_suite(cfg.suite, seed=cfg.seed, depth=cfg.depth, s_override=cfg.s_override)
    for res in results:
        note(res.line())
    verdicts = [r.verdict for r in results]
    overall = "fail" if "fail" in verdicts else "inconclusive" if "inconclusive" in verdicts else "pass"
    emit(cfg, report(cfg, {"suite": cfg.suite, "results": [r.to_json() for r in results]},
                     overall))
    return VERDICT_EXIT[overall]


def _read_object(path: str):
    p = Path(path)
    raw = p.read_bytes()
    if raw.startswith(b"{"):
        obj = json.loads(raw)
        if obj.get("schema") == SCHEMA and "profile" in obj:
            obj = obj["profile"]
        kind = obj.get("type")
        if kind == "window1d":
            return Window1D.from_json(obj)
        if kind == "window2d":
            return Window2D.from_json(obj)
        if kind == "seq":
            return SeqWindow.from_ascii(obj["symbols"], obj)
        if "kind" in obj and "gaps" in obj and isinstance(obj["core"], list) and len(obj["core"]) == 2:
            return LargenessProfile1D.from_json(obj)
        raise UsageError(f"unrecognized JSON object in {path}")
    return SeqWindow.load(p)


def cmd_export(cfg: RunConfig) -> int:
    if not cfg.input or not cfg.format:
        raise UsageError("export needs --input and --format")
    obj = _read_object(cfg.input)
    fmt = cfg.format
    data: str | bytes
    if fmt == "json":
        if isinstance(obj, SeqWindow):
            data = json.dumps({"type": "seq", **obj.sidecar(), "symbols": obj.to_ascii()},
                              sort_keys=True)
        else:
            data = json.dumps(obj.to_json(), sort_keys=True)
        data += "\n"
    elif fmt == "csv" and isinstance(obj, (Window1D, Window2D)):
        data = obj.to_csv()
    elif fmt == "pbm" and isinstance(obj, Window2D):
        data = obj.to_pbm()
    elif fmt == "ascii" and isinstance(obj, SeqWindow):
        if cfg.out:
            obj.save(cfg.out)
            return EXIT_OK
        data = obj.to_ascii() + "\n"
    else:
        raise UsageError(f"cannot export {type(obj).__name__} as {fmt}")
    if cfg.out:
        if isinstance(data, bytes):
            Path(cfg.out).write_bytes(data)
        else:
            Path(cfg.out).write_text(data)
    elif isinstance(data, bytes):
        sys.stdout.buffer.write(data)
    else:
        sys.stdout.write(data)
    return EXIT_OK


COMMANDS = {
    "analyze-set": cmd_analyze_set,
    "return-set": cmd_return_set,
    "occurs": cmd_occurs,
    "language": cmd_language,
    "mrec-scan": cmd_mrec_scan,
    "build-example": cmd_build_example,
    "induced": cmd_induced,
    "verify": cmd_verify,
    "export": cmd_export,
}


# ----------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON file of RunConfig fields; flags override it")
    common.add_argument("--out")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int)

    sets = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    sets.add_argument("--set", help="evens|odds|squares|empty|full|ts|members:1,2|file:S.json")
    sets.add_argument("--lo", type=int)
    sets.add_argument("--hi", type=int)
    sets.add_argument("--ts-nmax", dest="ts_nmax", type=int)
    sets.add_argument("--periods", type=int, nargs="+")
    sets.add_argument("--offset", type=int)

    seqs = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    seqs.add_argument("--seq", help="ASCII 0/1 file with a .json sidecar")
    seqs.add_argument("--text", help="inline one-sided sequence")

    parser = _Parser(prog="syndetica", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"syndetica {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("analyze-set", parents=[common, sets], argument_default=argparse.SUPPRESS,
                       help="largeness verdict for a set on a window")
    p.add_argument("--query", choices=["syndetic", "thick", "ts", "ps"])
    p.add_argument("--nmax", type=int)
    p.add_argument("--max-gap", dest="max_gap", type=int)
    p.add_argument("--core", type=int, nargs=2)
    p.add_argument("--g", type=int)
    p.add_argument("--L", type=int)

    p = sub.add_parser("return-set", parents=[common, sets], argument_default=argparse.SUPPRESS,
                       help="polynomial return set over a box")
    p.add_argument("--polys")
    p.add_argument("--box", type=int, nargs=4, metavar=("MLO", "MHI", "NLO", "NHI"))
    p.add_argument("--bitmap")
    p.add_argument("--block-max", dest="block_max", type=int, nargs=2)
    p.add_argument("--core", type=int, nargs=4)

    p = sub.add_parser("occurs", parents=[common, seqs], argument_default=argparse.SUPPRESS)
    p.add_argument("--word")
    p = sub.add_parser("language", parents=[common, seqs], argument_default=argparse.SUPPRESS)
    p.add_argument("--k", type=int)
    p = sub.add_parser("mrec-scan", parents=[common, seqs], argument_default=argparse.SUPPRESS)
    p.add_argument("--j", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)

    p = sub.add_parser("build-example", parents=[common, sets], argument_default=argparse.SUPPRESS)
    p.add_argument("action", choices=["squares", "bebutov", "theoremC"])
    p.add_argument("--depth", type=int)
    p.add_argument("--length", type=int)
    p.add_argument("--meta")

    p = sub.add_parser("induced", parents=[common, sets, seqs], argument_default=argparse.SUPPRESS)
    p.add_argument("action", choices=["omega", "bridge", "probe"])
    p.add_argument("--polys")
    p.add_argument("--box", type=int, nargs=4, metavar=("MLO", "MHI", "NLO", "NHI"))
    p.add_argument("--K", type=int)
    p.add_argument("--W", type=int)
    p.add_argument("--m-act", dest="m_act", type=int)
    p.add_argument("--k-act", dest="k_act", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--H", type=int)
    p.add_argument("--bitmap")

    p = sub.add_parser("verify", parents=[common], argument_default=argparse.SUPPRESS,
                       help="run acceptance suites")
    p.add_argument("--suite")
    p.add_argument("--depth", type=int)
    p.add_argument("--s-override", dest="s_override", choices=["empty", "full"])

    p = sub.add_parser("export", parents=[common], argument_default=argparse.SUPPRESS)
    p.add_argument("--input")
    p.add_argument("--format", choices=["json", "csv", "pbm", "ascii"])
    return parser


def parse_config(argv) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command", None)
    if not command:
        raise UsageError("no command given; see syndetica --help")
    config = {}
    path = args.pop("config", None)
    if path:
        try:
            config = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        if not isinstance(config, dict):
            raise UsageError("config must be a JSON object")
    config.pop("command", None)
    return RunConfig.merged(config, {**args, "command": command})


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, PolynomialError) as exc:
        print(f"syndetica: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CoverageError, InconclusiveError) as exc:
        print(f"syndetica: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (SyndeticaError, OSError, ValueError) as exc:
        print(f"syndetica: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

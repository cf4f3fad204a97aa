"""Command-line front end.

Exit codes: 0 success, 1 property violation, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import braid as braid_mod
from .braid import BraidWord, closure, parse_braid, random_markov_walk
from .diagram import LinkDiagram, parse_pd, unlink_diagram
from .errors import CapExceededError, InputError, KhkitError
from .khovanov import KH_CAP, collapsed_grading, euler_matches_jones, kh_homology
from .polynomials import BRACKET_CAP, jones_bracket, jones_skein
from .slicelab import (
    Path,
    catalan,
    charpoly_identity_check,
    enumerate_matchings,
    fibre_drift,
    horseshoe,
    parallel_transport,
    random_slice,
    sl2_word_check,
    sum_of_squares,
    word_power,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
DEFAULT_SEED = 20240101


@dataclass
class RunConfig:
    command: str
    braid: str | None = None
    pd: str | None = None
    unlink: int | None = None
    fmt: str = "text"
    seed: int = DEFAULT_SEED
    max_crossings: int | None = None
    extra: dict = field(default_factory=dict)

    def source_count(self) -> int:
        return sum(x is not None for x in (self.braid, self.pd, self.unlink))


@dataclass
class Loaded:
    diagram: LinkDiagram
    braid: BraidWord | None
    label: str


def load_input(cfg: RunConfig) -> Loaded:
    if cfg.source_count() != 1:
        raise InputError("give exactly one of --braid, --pd, --unlink")
    if cfg.braid is not None:
        b = parse_braid(cfg.braid)
        d, label = closure(b), str(b)
    elif cfg.pd is not None:
        try:
            with open(cfg.pd, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read PD file: {exc}") from None
        b, d, label = None, parse_pd(text), cfg.pd
    else:
        if cfg.unlink < 1:
            raise InputError("--unlink needs a positive integer")
        b = BraidWord(cfg.unlink, ())
        d, label = unlink_diagram(cfg.unlink), f"unlink {cfg.unlink}"
    if cfg.max_crossings is not None and d.n_crossings > cfg.max_crossings:
        raise CapExceededError(f"diagram has {d.n_crossings} crossings, limit is {cfg.max_crossings}")
    return Loaded(d, b, label)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def emit(cfg: RunConfig, payload: dict, text: Callable[[], str], rows: Callable[[], list[list]]):
    if cfg.fmt == "json":
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif cfg.fmt == "csv":
        out = _csv(rows())
    else:
        out = text().rstrip("\n") + "\n"
    sys.stdout.write(out)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_jones(cfg: RunConfig) -> int:
    src = load_input(cfg)
    cap = cfg.max_crossings if cfg.max_crossings is not None else BRACKET_CAP
    vb = jones_bracket(src.diagram, cap=cap)
    vs = jones_skein(src.diagram, cap=cap)
    agree = vb == vs
    payload = {
        "input": src.label,
        "crossings": src.diagram.n_crossings,
        "bracket": vb.pairs(),
        "skein": vs.pairs(),
        "canonical": vb.canonical(),
        "agreement": agree,
    }
    emit(
        cfg, payload,
        lambda: f"input: {src.label}\nbracket: {vb.canonical()}\nskein: {vs.canonical()}\nagreement: {str(agree).lower()}",
        lambda: [["algorithm", "numerator", "coefficient"]]
        + [["bracket", k, c] for k, c in vb.pairs()]
        + [["skein", k, c] for k, c in vs.pairs()],
    )
    return EXIT_OK if agree else EXIT_VIOLATION


def _kh_payload(src: Loaded, cap: int) -> dict:
    kh = kh_homology(src.diagram, cap=cap)
    check = euler_matches_jones(kh, jones_bracket(src.diagram))
    strands = src.braid.strands if src.braid is not None else None
    w = src.diagram.writhe
    col = collapsed_grading(kh, strands if strands is not None else 0, w)
    meta = col.metadata()
    if strands is None:
        meta["floer_degree_offset"] = None
        meta["note"] = "strand count unknown for PD input; offset not defined"
    return {
        "input": src.label,
        "bigraded": kh.to_json(),
        "collapsed": col.to_json(),
        "collapsed_metadata": meta,
        "euler_jones_check": check,
    }


def cmd_khovanov(cfg: RunConfig) -> int:
    src = load_input(cfg)
    cap = cfg.max_crossings if cfg.max_crossings is not None else KH_CAP
    payload = _kh_payload(src, cap)

    def text():
        lines = [f"input: {src.label}", "bigraded:"]
        for e in payload["bigraded"]:
            lines.append(f"  Kh^({e['i']},{e['j']}) free={e['free']} torsion={e['torsion']}")
        lines.append("collapsed (k = i - j):")
        for e in payload["collapsed"]:
            lines.append(f"  k={e['k']} free={e['free']} torsion={e['torsion']}")
        lines.append(f"euler_jones_check: {str(payload['euler_jones_check']).lower()}")
        return "\n".join(lines)

    def rows():
        out = [["table", "i", "j", "k", "free", "torsion"]]
        for e in payload["bigraded"]:
            out.append(["bigraded", e["i"], e["j"], "", e["free"], " ".join(map(str, e["torsion"]))])
        for e in payload["collapsed"]:
            out.append(["collapsed", "", "", e["k"], e["free"], " ".join(map(str, e["torsion"]))])
        return out

    emit(cfg, payload, text, rows)
    return EXIT_OK if payload["euler_jones_check"] else EXIT_VIOLATION


def _inject_bug(b: BraidWord) -> BraidWord:
    # an extra clasp on a fresh strand changes the link type
    s = braid_mod.stabilize(b, 1)
    return BraidWord(s.strands, s.letters + (s.strands - 1,))


def cmd_markov_test(cfg: RunConfig) -> int:
    if cfg.braid is None or cfg.pd is not None or cfg.unlink is not None:
        raise InputError("markov-test needs exactly one --braid")
    src = load_input(cfg)
    steps = cfg.extra.get("steps", 50)
    if steps < 0:
        raise InputError("--steps must be non-negative")
    walked = random_markov_walk(src.braid, steps, cfg.seed)
    if cfg.extra.get("inject_bug"):
        walked = _inject_bug(walked)
    after = closure(walked)
    cap = cfg.max_crossings if cfg.max_crossings is not None else KH_CAP
    if after.n_crossings > cap:
        raise CapExceededError(f"walked diagram has {after.n_crossings} crossings, limit is {cap}")
    v0, v1 = jones_bracket(src.diagram), jones_bracket(after)
    k0, k1 = kh_homology(src.diagram, cap), kh_homology(after, cap)
    jones_ok = v0 == v1
    kh_ok = k0 == k1
    diff = []
    if not jones_ok:
        diff.append({"invariant": "jones", "before": v0.canonical(), "after": v1.canonical()})
    if not kh_ok:
        keys = sorted(set(k0) | set(k1))
        for key in keys:
            a, b = k0.get(key), k1.get(key)
            if a != b:
                diff.append({
                    "invariant": "khovanov",
                    "bidegree": list(key),
                    "before": a.to_json() if a else None,
                    "after": b.to_json() if b else None,
                })
    payload = {
        "input": str(src.braid),
        "walked": str(walked),
        "steps": steps,
        "seed": cfg.seed,
        "jones_equal": jones_ok,
        "khovanov_equal": kh_ok,
        "pass": jones_ok and kh_ok,
        "diff": diff,
    }

    def text():
        lines = [
            f"input: {payload['input']}",
            f"walked: {payload['walked']}",
            f"steps: {steps} seed: {cfg.seed}",
            f"jones_equal: {str(jones_ok).lower()}",
            f"khovanov_equal: {str(kh_ok).lower()}",
            f"result: {'pass' if payload['pass'] else 'FAIL'}",
        ]
        for dd in diff:
            lines.append(f"  diff: {json.dumps(dd, sort_keys=True)}")
        return "\n".join(lines)

    emit(cfg, payload, text, lambda: [["input", "walked", "steps", "seed", "jones_equal", "khovanov_equal", "pass"],
                                       [payload["input"], payload["walked"], steps, cfg.seed, jones_ok, kh_ok, payload["pass"]]])
    return EXIT_OK if payload["pass"] else EXIT_VIOLATION


# -- slice ---------------------------------------------------------------------

def _slice_charpoly(cfg: RunConfig) -> dict:
    m, trials = cfg.extra.get("m", 3), cfg.extra.get("trials", 20)
    if m < 1 or trials < 0:
        raise InputError("--m must be positive and --trials non-negative")
    if m > 8:
        raise CapExceededError("charpoly sweep capped at m=8")
    rng = random.Random(cfg.seed)
    failures = sum(1 for _ in range(trials) if not charpoly_identity_check(random_slice(m, rng)))
    return {"sub": "charpoly", "m": m, "trials": trials, "failures": failures, "pass": failures == 0}


def _slice_matchings(cfg: RunConfig) -> dict:
    m = cfg.extra.get("m", 3)
    ms = enumerate_matchings(m)
    ok = len(ms) == catalan(m) and horseshoe(m) in ms
    return {"sub": "matchings", "m": m, "count": len(ms), "catalan": catalan(m),
            "matchings": [[list(p) for p in x] for x in ms], "pass": ok}


def _slice_transport(cfg: RunConfig) -> dict:
    n = cfg.extra.get("n", 2)
    steps = cfg.extra.get("steps", 32)
    if n < 1 or steps < 1:
        raise InputError("--n and --steps must be positive")
    rng = np.random.default_rng(cfg.seed)
    p = sum_of_squares(n)
    x0 = rng.normal(size=n) + 1j * rng.normal(size=n)
    a = complex(p(x0))
    loop = Path.circle(abs(a), 16, start_angle=float(np.angle(a)))
    loop = Path((a,) + loop.waypoints[1:-1] + (a,))
    there = parallel_transport(p, x0, loop, steps=steps, method="rk4")
    back = parallel_transport(p, there, loop.reversed(), steps=steps, method="rk4")
    ref = parallel_transport(p, x0, loop, method="dop853")
    ret = float(np.max(np.abs(back - x0)))
    agree = float(np.max(np.abs(there - ref)))
    drift = fibre_drift(p, there, a)
    return {"sub": "transport", "n": n, "steps": steps, "return_error": ret,
            "integrator_disagreement": agree, "fibre_drift": drift,
            "pass": ret <= 1e-6 and agree <= 1e-6 and drift <= 1e-8 * max(1.0, abs(a))}


def _slice_sl2(cfg: RunConfig) -> dict:
    n = cfg.extra.get("n", 1)
    if n < 1:
        raise InputError("--n must be positive")
    ok = sl2_word_check(n)
    ab = word_power(1)
    return {"sub": "sl2", "n": n, "identity": ok, "AB": [list(r) for r in ab], "pass": ok}


SLICE_SUBS = {"charpoly": _slice_charpoly, "matchings": _slice_matchings,
              "transport": _slice_transport, "sl2": _slice_sl2}


def cmd_slice(cfg: RunConfig) -> int:
    payload = SLICE_SUBS[cfg.extra["sub"]](cfg)
    payload["seed"] = cfg.seed

    def text():
        lines = [f"slice {payload['sub']}: {'pass' if payload['pass'] else 'FAIL'}"]
        for k in sorted(payload):
            if k in ("sub", "pass", "matchings"):
                continue
            lines.append(f"  {k}: {payload[k]}")
        for mt in payload.get("matchings", []):
            lines.append("  " + " ".join(f"({a},{b})" for a, b in mt))
        return "\n".join(lines)

    def rows():
        if "matchings" in payload:
            return [["index", "pairs"]] + [[i, " ".join(f"{a}-{b}" for a, b in mt)] for i, mt in enumerate(payload["matchings"])]
        keys = sorted(k for k in payload if not isinstance(payload[k], list))
        return [keys, [payload[k] for k in keys]]

    emit(cfg, payload, text, rows)
    return EXIT_OK if payload["pass"] else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, inputs: bool = True):
    if inputs:
        p.add_argument("--braid", help='braid word, e.g. "2: 1 1 1"')
        p.add_argument("--pd", metavar="FILE", help="file holding a PD code (text or JSON)")
        p.add_argument("--unlink", type=int, metavar="N", help="N-component crossingless unlink")
    p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--max-crossings", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khkit", description="Link invariants and slice experiments.")
    sub = ap.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("jones", help="Jones polynomial by two algorithms"))
    _add_common(sub.add_parser("khovanov", help="integral Khovanov homology"))
    mk = sub.add_parser("markov-test", help="invariance under a random Markov walk")
    _add_common(mk)
    mk.add_argument("--steps", type=int, default=50)
    mk.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    sl = sub.add_parser("slice", help="slice-lab checks")
    ssub = sl.add_subparsers(dest="sub", required=True)
    for name in SLICE_SUBS:
        sp = ssub.add_parser(name)
        _add_common(sp, inputs=False)
        if name == "charpoly":
            sp.add_argument("--m", type=int, default=3)
            sp.add_argument("--trials", type=int, default=20)
        elif name == "matchings":
            sp.add_argument("--m", type=int, default=3)
        elif name == "transport":
            sp.add_argument("--n", type=int, default=2)
            sp.add_argument("--steps", type=int, default=32)
        else:
            sp.add_argument("--n", type=int, default=1)
    return ap


COMMANDS = {"jones": cmd_jones, "khovanov": cmd_khovanov, "markov-test": cmd_markov_test, "slice": cmd_slice}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {k: v for k, v in vars(ns).items()
             if k not in ("command", "braid", "pd", "unlink", "fmt", "seed", "max_crossings")}
    return RunConfig(
        command=ns.command,
        braid=getattr(ns, "braid", None),
        pd=getattr(ns, "pd", None),
        unlink=getattr(ns, "unlink", None),
        fmt=ns.fmt,
        seed=ns.seed,
        max_crossings=ns.max_crossings,
        extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    cfg = config_from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except CapExceededError as exc:
        print(f"khkit: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, KeyError) as exc:
        print(f"khkit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KhkitError as exc:
        print(f"khkit: error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    raise SystemExit(main())

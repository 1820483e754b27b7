"""Command line driver.

    conifold-dt series d0d6 --k 0 --chi 2 --zmax 4
    conifold-dt cross seed.json --wall 0 --mode lie
    conifold-dt verify --suite all --order 12
    conifold-dt classify 1 1 1 --relation t-above-phi --a 1

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from . import liewall, models
from .lattice import ChargeIndex
from .series import Series, Window, WindowError, decode, encode, render

CONFIG_ENV = "CONIFOLD_DT_CONFIG"
DEFAULT_CONFIG_PATH = Path("~/.config/conifold-dt/config.json")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    window: Window = Window(x_min=-10, x_max=10, y_max=6, z_min=0, z_max=10)
    format: str = "text"
    fixture_dir: Path = Path("tests/fixtures")

    @classmethod
    def load(cls, path: Path | None = None) -> "RunConfig":
        if path is None:
            env = os.environ.get(CONFIG_ENV)
            path = Path(env) if env else DEFAULT_CONFIG_PATH.expanduser()
        cfg = cls()
        if not path.exists():
            return cfg
        data = json.loads(path.read_text(encoding="utf-8"))
        if "window" in data:
            cfg = replace(cfg, window=Window.from_dict({**cfg.window.to_dict(), **data["window"]}))
        if "format" in data:
            if data["format"] not in ("text", "json"):
                raise UsageError(f"config format must be text or json, got {data['format']!r}")
            cfg = replace(cfg, format=data["format"])
        if "fixture_dir" in data:
            cfg = replace(cfg, fixture_dir=Path(data["fixture_dir"]))
        return cfg


def _window_from_args(cfg: RunConfig, args) -> Window:
    d = cfg.window.to_dict()
    for key, flag in (("x_min", "xmin"), ("x_max", "xmax"), ("y_max", "ymax"), ("z_min", "zmin"), ("z_max", "zmax")):
        value = getattr(args, flag, None)
        if value is not None:
            d[key] = value
    try:
        return Window.from_dict(d)
    except WindowError as exc:
        raise UsageError(str(exc)) from exc


def _emit_series(s: Series, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(encode(s), sort_keys=True) + "\n")
    else:
        out.write(render(s) + "\n")


def _spec_from_args(args) -> models.ChamberSeriesSpec:
    try:
        if args.family == "d0d6":
            return models.ChamberSeriesSpec("d0d6", args.k, chi=args.chi if args.chi is not None else 1)
        if args.a is None:
            raise UsageError("conifold series need --a")
        sector = args.sector or "lower"
        return models.ChamberSeriesSpec("conifold", args.k, sector, a=args.a)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_series(args, cfg: RunConfig, out) -> int:
    spec = _spec_from_args(args)
    w = _window_from_args(cfg, args)
    try:
        s = models.closed_series(spec, w)
    except WindowError as exc:
        raise UsageError(str(exc)) from exc
    _emit_series(s, args.format or cfg.format, out)
    return 0


def _read_series(path: str) -> Series:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    try:
        return decode(json.loads(text))
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot decode series from {path}: {exc}") from exc


def cmd_cross(args, cfg: RunConfig, out) -> int:
    s = _read_series(args.input)
    fmt = args.format or cfg.format
    try:
        if args.mode == "euler":
            result = liewall.cross_wall_euler(s, args.wall, inverse=args.inverse)
        else:
            result = liewall.cross_wall_closed(s, args.wall, inverse=args.inverse)
        agree = None
        if args.mode == "lie":
            via_lie = liewall.cross_series_lie(s, args.wall, inverse=args.inverse)
            agree = via_lie == result
            if not agree:
                d = via_lie.diff(result)[0]
                out.write(f"first difference at {d[0]}: lie {d[1]} != closed {d[2]}\n")
            result = via_lie
    except liewall.WindowTooNarrowError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit_series(result, fmt, out)
    if agree is not None:
        out.write(f"routes agree: {'true' if agree else 'false'}\n")
        return 0 if agree else 1
    return 0


# -- verification suites ------------------------------------------------------


def _check_lemma_ass(order: int):
    for n in range(1, 7):
        for parity in ("even", "odd"):
            res = liewall.lemma_ass_check(n, parity, order)
            yield f"lemma-ass n={n} {parity} order={order}", res.ok, res.detail


def _check_macmahon(order: int):
    for chi in (1, 2, -6):
        res = models.verify_macmahon(chi, order)
        yield f"macmahon chi={chi} order={order}", res.ok, res.detail


def _check_stable_pairs(order: int):
    oy = max(1, min(6, order // 2))
    res = models.verify_stable_pairs(oy, order)
    yield f"stablepairs y<={oy} z<={order}", res.ok, res.detail


def _route_pair(a: Series, b: Series) -> tuple[bool, str]:
    d = a.diff(b)
    if not d:
        return True, ""
    e, left, right = d[0]
    return False, f"first difference at {e}: {left} != {right}"


def _check_routes(order: int):
    w = Window(-order, order, 0, 0, order)
    for chi in (1, 2, -6):
        seed = models.d0d6_seed(chi, w)
        for k in range(-3, 4):
            closed = models.d0d6_closed(models.ChamberSeriesSpec("d0d6", k, chi=chi), w)
            ok, detail = _route_pair(models.iterate_walls(seed, -1, k), closed)
            yield f"routes d0d6 chi={chi} chamber={k} iterated=closed", ok, detail
    for k in range(-2, 3):
        before = models.d0d6_closed(models.ChamberSeriesSpec("d0d6", k - 1, chi=2), w)
        closed = liewall.cross_wall_closed(before, k)
        ok1, d1 = _route_pair(liewall.cross_series_lie(before, k, method="sum"), closed)
        ok2, d2 = _route_pair(liewall.cross_series_lie(before, k, method="bch"), closed)
        yield f"routes d0d6 wall={k} sum=bch=closed", ok1 and ok2, d1 or d2
    yield from _check_conifold(order, "lower")


def _check_conifold(order: int, sector: str):
    oy = max(1, min(6, order // 2))
    w = Window(-order, 2 * order, oy, 0, order)
    for a in (1, 2, 3):
        spec0 = models.ChamberSeriesSpec("conifold", 0, sector, a=a)
        k0, seed = models.seed_series(spec0, w)
        for k in range(-2, 3):
            closed = models.conifold_closed(models.ChamberSeriesSpec("conifold", k, sector, a=a), w)
            ok, detail = _route_pair(models.iterate_walls(seed, k0, k), closed)
            yield f"routes conifold sector={sector} a={a} chamber={k} iterated=closed", ok, detail


SUITES = {
    "lemma-ass": _check_lemma_ass,
    "macmahon": _check_macmahon,
    "stablepairs": _check_stable_pairs,
    "routes": _check_routes,
    "conifold-upper": lambda order: _check_conifold(order, "upper"),
}


def cmd_verify(args, cfg: RunConfig, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in names:
        for label, ok, detail in SUITES[name](args.order):
            status = "pass" if ok else "fail"
            line = f"{status.upper()} {label}"
            if not ok:
                failed += 1
                line += f" :: {detail}"
            out.write(line + "\n")
    out.write(f"summary: {'pass' if not failed else 'fail'} ({failed} failing)\n")
    return 0 if not failed else 1


def cmd_classify(args, cfg: RunConfig, out) -> int:
    cls = ChargeIndex(args.r, args.beta, args.n)
    try:
        found = models.classify_semistable(args.relation, args.sector, cls, args.a)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    fmt = args.format or cfg.format
    if fmt == "json":
        doc = [
            {"kind": d.kind.value, "r": d.r, "m": d.m, "a": d.a, "length": d.length,
             "constraint": d.constraint, "description": d.describe()}
            for d in found
        ]
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif not found:
        out.write("no semistable objects\n")
    else:
        for d in found:
            out.write(d.describe() + "\n")
    return 0


def cmd_fixtures(args, cfg: RunConfig, out) -> int:
    target = Path(args.out) if args.out else cfg.fixture_dir
    written = write_fixtures(target)
    out.write(f"wrote {len(written)} fixtures to {target}\n")
    return 0


D0D6_FIXTURE_WINDOW = Window(-10, 10, 0, 0, 10)
CONIFOLD_FIXTURE_WINDOW = Window(-12, 24, 6, 0, 12)


def fixture_name(spec: models.ChamberSeriesSpec) -> str:
    if spec.family is models.Family.D0D6:
        return f"d0d6_k{spec.k}_chi{spec.chi}.json"
    return f"conifold_k{spec.k}_{spec.sector.value}_a{spec.a}.json"


def fixture_specs():
    for chi in (1, 2, -6):
        for k in range(-3, 4):
            yield models.ChamberSeriesSpec("d0d6", k, chi=chi), D0D6_FIXTURE_WINDOW
    for sector in ("lower", "upper"):
        for a in (1, 2, 3):
            for k in range(-2, 3):
                yield models.ChamberSeriesSpec("conifold", k, sector, a=a), CONIFOLD_FIXTURE_WINDOW


def write_fixtures(target: Path) -> list[Path]:
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for spec, w in fixture_specs():
        path = target / fixture_name(spec)
        path.write_text(json.dumps(encode(models.closed_series(spec, w)), sort_keys=True) + "\n", encoding="utf-8")
        written.append(path)
    return written


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conifold-dt", description="DT series around the conifold point")
    p.add_argument("--config", type=Path, help="JSON config file (flags win)")
    sub = p.add_subparsers(dest="command", required=True)

    def window_flags(sp):
        for flag in ("xmin", "xmax", "ymax", "zmin", "zmax"):
            sp.add_argument(f"--{flag}", type=int)
        sp.add_argument("--format", choices=("text", "json"))

    sp = sub.add_parser("series", help="closed-form chamber series")
    sp.add_argument("family", choices=("d0d6", "conifold"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--sector", choices=("lower", "upper"))
    sp.add_argument("--a", type=int)
    sp.add_argument("--chi", type=int)
    window_flags(sp)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("cross", help="cross one wall")
    sp.add_argument("input", help="series JSON file, or - for stdin")
    sp.add_argument("--wall", type=int, required=True)
    sp.add_argument("--mode", choices=("dt", "euler", "lie"), default="dt")
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--format", choices=("text", "json"))
    sp.set_defaults(func=cmd_cross)

    sp = sub.add_parser("verify", help="run identity checks")
    sp.add_argument("--suite", choices=("all", *SUITES), default="all")
    sp.add_argument("--order", type=int, default=12)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="semistable objects of a class")
    sp.add_argument("r", type=int)
    sp.add_argument("beta", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--relation", choices=[r.value for r in models.Relation], required=True)
    sp.add_argument("--sector", choices=("lower", "upper"))
    sp.add_argument("--a", type=int)
    sp.add_argument("--format", choices=("text", "json"))
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("fixtures", help="write golden series fixtures")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        cfg = RunConfig.load(args.config)
        if getattr(args, "order", 1) is not None and getattr(args, "order", 1) < 1:
            raise UsageError("--order must be >= 1")
        return args.func(args, cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

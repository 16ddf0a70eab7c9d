"""Command-line front end: ``curvex <subcommand> [options]``.

Every subcommand calls one library function and prints its JSON (or DOT)
payload unchanged.  Exit codes: 0 success, 1 a check failed, 2 bad usage
or a violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .complex import Complex2
from .errors import CurvexError
from .farey import farey_ball, fibers_of
from .graph import automorphism_group, nerve
from .level import farey_level, gstar_level
from .reconstruct import reconstruct_curve_complex
from .surface import SurfaceSpec
from .tower import build_tower, surface_product, tower_report
from .verify import SUITES, format_table, run_suite

USAGE, FAILED = 2, 1


@dataclass
class CommandConfig:
    command: str
    surface: str | None = None
    levels: list[int] = field(default_factory=list)
    depth: int | None = None
    fmt: str | None = None
    out: Path | None = None
    deadline: float | None = None
    star: bool = False
    triangles: bool = False
    infile: Path | None = None
    cover: Path | None = None
    suite: str = "default"

    def absolute_deadline(self) -> float | None:
        return None if self.deadline is None else time.monotonic() + self.deadline


def _levels(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("at least one level is required")
    return out


def _surface(text: str) -> str:
    try:
        SurfaceSpec.parse(text)
    except (ValueError, CurvexError) as exc:
        raise argparse.ArgumentTypeError(str(exc))
    return text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "dot"),
                        help="payload format (default json; verify prints a table unless json is asked for)")
    common.add_argument("--out", type=Path, help="write the payload here instead of stdout")
    common.add_argument("--deadline", type=float, help="search budget in seconds")

    ap = argparse.ArgumentParser(prog="curvex", description="Curve-complex and Farey-quotient toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("farey", parents=[common], help="Farey tessellation ball")
    p.add_argument("--depth", type=int, required=True)

    p = sub.add_parser("quotient", parents=[common], help="level-m quotient of the Farey complex")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--star", action="store_true", help="complete graph on the cusps instead")

    p = sub.add_parser("product", parents=[common], help="product complex of a surface at one level")
    p.add_argument("--surface", type=_surface, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--star", action="store_true")

    p = sub.add_parser("reconstruct", parents=[common], help="curve complex from a star-flavour graph")
    p.add_argument("--in", dest="infile", type=Path, required=True)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of a complex")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--triangles", action="store_true", help="require triangles to be preserved")

    p = sub.add_parser("tower", parents=[common], help="tower of level quotients")
    p.add_argument("--surface", type=_surface, required=True)
    p.add_argument("--levels", type=_levels, required=True)

    p = sub.add_parser("nerve", parents=[common], help="nerve of a vertex cover")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--cover", type=Path, help="JSON list of vertex-index lists; default: the fibers")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="default")
    return ap


def parse_config(argv: list[str] | None) -> CommandConfig:
    ns = build_parser().parse_args(argv)
    levels = getattr(ns, "levels", None) or ([ns.level] if getattr(ns, "level", None) is not None else [])
    return CommandConfig(
        command=ns.command,
        surface=getattr(ns, "surface", None),
        levels=levels,
        depth=getattr(ns, "depth", None),
        fmt=ns.fmt,
        out=ns.out,
        deadline=ns.deadline,
        star=getattr(ns, "star", False),
        triangles=getattr(ns, "triangles", False),
        infile=getattr(ns, "infile", None),
        cover=getattr(ns, "cover", None),
        suite=getattr(ns, "suite", "default"),
    )


def _load(path: Path) -> Complex2:
    return Complex2.from_json(path.read_text(encoding="utf-8"))


def _payload(obj, fmt: str) -> str:
    if fmt == "dot":
        if isinstance(obj, Complex2):
            return obj.to_dot()
        if hasattr(obj, "skeleton"):
            return obj.skeleton().to_dot()
        raise ValueError("this result has no DOT form; use --format json")
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return json.dumps(obj)


def _render(cfg: CommandConfig, result) -> str:
    if cfg.command != "verify":
        return _payload(result, cfg.fmt or "json")
    if cfg.fmt == "dot":
        raise ValueError("verify has no DOT form")
    if cfg.fmt == "json":
        return json.dumps([{"check": r.name, "status": r.status, "seconds": round(r.seconds, 3),
                            "budget": r.budget, "detail": r.detail} for r in result])
    return format_table(result)


def execute(cfg: CommandConfig) -> tuple[object, int]:
    """Run the library call behind ``cfg``; returns (result, exit code)."""
    deadline = cfg.absolute_deadline()
    if cfg.command == "farey":
        return farey_ball(cfg.depth), 0
    if cfg.command == "quotient":
        m = cfg.levels[0]
        return (gstar_level(m) if cfg.star else farey_level(m)), 0
    if cfg.command == "product":
        return surface_product(cfg.surface, cfg.levels[0], cfg.star).flattened, 0
    if cfg.command == "reconstruct":
        return reconstruct_curve_complex(_load(cfg.infile), deadline=deadline), 0
    if cfg.command == "aut":
        return automorphism_group(_load(cfg.infile), respect_triangles=cfg.triangles, deadline=deadline), 0
    if cfg.command == "tower":
        return tower_report(build_tower(cfg.surface, cfg.levels)), 0
    if cfg.command == "nerve":
        c = _load(cfg.infile)
        cover = json.loads(cfg.cover.read_text(encoding="utf-8")) if cfg.cover else fibers_of(c)
        return nerve(c, cover), 0
    if cfg.command == "verify":
        rows = run_suite(cfg.suite)
        return rows, 0 if all(r.ok for r in rows) else FAILED
    raise ValueError(f"unknown command {cfg.command!r}")


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse already printed the message
        return USAGE if exc.code else 0
    try:
        result, code = execute(cfg)
        text = _render(cfg, result)
    except (TimeoutError, RuntimeError) as exc:
        # the search ran out of budget or an internal consistency check failed
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED
    except (CurvexError, ValueError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE
    text = text.rstrip("\n") + "\n"
    if cfg.out is not None:
        cfg.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

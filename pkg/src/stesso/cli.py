"""Command-line front end: ``stesso {synth,cost,verify,map,comparator,export}``."""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

from .circuit import from_qasm, to_qasm
from .composer import VARIANTS, make_sequence, sequence_to_text
from .comparator import ComparatorSpec, synth_comparator, verify_comparator
from .cost import cost_table, format_table, legal_points, measure, predict
from .layout import COUPLING_KINDS, check_adjacency, make_coupling, place_and_route, routed_equivalent
from .sim import DEFAULT_SAMPLES, verify_mcx
from .synth import PolarityMask, synth_mp, synth_pp

SUBCOMMANDS = ("synth", "cost", "verify", "map", "comparator", "export")


class ConfigError(ValueError):
    pass


@dataclass
class CommandConfig:
    subcommand: str
    variant: str = "seq1"
    n: int | None = None
    n_s: int | None = None
    mask: str | None = None
    grid: tuple[int, int] | None = None
    coupling: str | None = None
    dims: tuple[int, ...] = ()
    method: str = "auto"
    bits: int | None = None
    input: Path | None = None
    output: Path | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    fmt: str = "qasm"
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        need = {
            "synth": ("n",), "verify": ("input", "n"), "map": ("input", "coupling"),
            "comparator": ("bits",), "export": ("n",), "cost": (),
        }
        if self.subcommand not in need:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        for name in need[self.subcommand]:
            if getattr(self, name) is None:
                flag = {"n": "--n (or --controls)", "input": "an input file"}.get(name, f"--{name}")
                raise ConfigError(f"{self.subcommand} requires {flag}")
        if self.subcommand == "cost" and self.grid is None and self.n is None:
            raise ConfigError("cost requires --grid LO..HI or --n")
        if self.variant not in VARIANTS:
            raise ConfigError(f"--variant must be one of {VARIANTS}")
        if self.mask is not None and self.n is not None and len(self.mask) != self.n:
            raise ConfigError(f"--mask has {len(self.mask)} bits for {self.n} controls")
        if self.mask is not None and not re.fullmatch(r"[01]+", self.mask):
            raise ConfigError("--mask must be a 0/1 bitstring ordered c1..cn")
        if self.subcommand == "map":
            make_coupling(self.coupling, self.dims)


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.|-|:)\s*(\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError("empty range")
    return lo, hi


def parse_dims(text: str) -> tuple[int, ...]:
    parts = re.split(r"[x,]", text.strip().lower())
    try:
        return tuple(int(p) for p in parts if p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad dims {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stesso", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, variant=True):
        if variant:
            sp.add_argument("--variant", choices=VARIANTS, default="seq1")
        sp.add_argument("--n", "--controls", dest="n", type=int)
        sp.add_argument("--supports", dest="n_s", type=int)
        sp.add_argument("--mask", help="polarity bitstring c1..cn, 1 = negated")

    s = sub.add_parser("synth", help="synthesize an MCX and write OpenQASM")
    common(s)
    s.add_argument("-o", "--output", type=Path)

    c = sub.add_parser("cost", help="predicted vs measured gate counts")
    common(c)
    c.add_argument("--grid", type=parse_range)

    v = sub.add_parser("verify", help="check an OpenQASM file against the MCX oracle")
    v.add_argument("input", type=Path)
    common(v, variant=False)
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    v.add_argument("--seed", type=int, default=0)

    m = sub.add_parser("map", help="place and route onto a coupling graph")
    m.add_argument("input", type=Path)
    m.add_argument("--coupling", choices=COUPLING_KINDS, required=True)
    m.add_argument("--dims", type=parse_dims, required=True)
    m.add_argument("--method", choices=("auto", "exhaustive", "greedy"), default="auto")
    m.add_argument("-o", "--output", type=Path)

    k = sub.add_parser("comparator", help="n-bit magnitude comparator")
    k.add_argument("--bits", type=int, required=True)
    k.add_argument("-o", "--output", type=Path)

    e = sub.add_parser("export", help="write a circuit or its composition sequence")
    common(e)
    e.add_argument("--format", dest="fmt", choices=("qasm", "sequence"), default="qasm")
    e.add_argument("-o", "--output", type=Path)
    return p


def config_from_args(argv: Sequence[str] | None = None) -> CommandConfig:
    ns = build_parser().parse_args(argv)
    known = CommandConfig.__dataclass_fields__
    return CommandConfig(**{k: v for k, v in vars(ns).items() if k in known})


def _emit(text: str, path: Path | None, out: TextIO) -> None:
    if path is None:
        out.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _record_line(prefix: str, rec) -> str:
    return (f"{prefix} x={rec.x_count} ccx={rec.ccx_count} size={rec.total_size} "
            f"supports={rec.support_count} qubits={rec.total_qubits}"
            + (f" depth={rec.depth}" if rec.depth is not None else ""))


def _circuit(cfg: CommandConfig):
    if cfg.mask is not None:
        return synth_mp(cfg.n, PolarityMask.parse(cfg.mask), cfg.variant, cfg.n_s)
    return synth_pp(cfg.n, cfg.variant, cfg.n_s)


def _synth(cfg, out, err) -> int:
    circuit = _circuit(cfg)
    _emit(to_qasm(circuit), cfg.output, out)
    print(_record_line("measured", measure(circuit)), file=out if cfg.output else err)
    return 0


def _cost(cfg, out, err) -> int:
    if cfg.grid is not None:
        lo, hi = cfg.grid
        variants = (cfg.variant,) if cfg.n is not None else VARIANTS
        rows = cost_table(legal_points(hi, lo, variants))
        out.write(format_table(rows))
        return 0
    print(_record_line("predicted", predict(cfg.variant, cfg.n, cfg.n_s)), file=out)
    print(_record_line("measured", measure(_circuit(cfg))), file=out)
    return 0


def _verify(cfg, out, err) -> int:
    circuit = from_qasm(cfg.input.read_text(encoding="utf-8"))
    n = cfg.n
    target = circuit.num_qubits - 1
    supports = list(range(n, target))
    verdict = verify_mcx(circuit, list(range(n)), target, supports, cfg.mask,
                         samples=cfg.samples, seed=cfg.seed)
    print(verdict, file=out)
    return 0 if verdict.ok else 1


def _map(cfg, out, err) -> int:
    circuit = from_qasm(cfg.input.read_text(encoding="utf-8"))
    coupling = make_coupling(cfg.coupling, cfg.dims)
    placement = place_and_route(circuit, coupling, cfg.method)
    out.write(placement.table())
    print(f"swaps\t{placement.swap_count}", file=out)
    print(f"method\t{placement.method}", file=out)
    print(f"native_cx_estimate\t{placement.native_cx_estimate}", file=out)
    ok = check_adjacency(placement, circuit, coupling)
    if coupling.num_vertices <= 20:
        ok = ok and routed_equivalent(circuit, placement)
    print(f"equivalent\t{'ok' if ok else 'FAIL'}", file=out)
    if cfg.output is not None:
        cfg.output.write_text(to_qasm(placement.routed), encoding="utf-8")
    return 0 if ok else 1


def _comparator(cfg, out, err) -> int:
    circuit = synth_comparator(cfg.bits)
    report = verify_comparator(circuit, ComparatorSpec.standard(cfg.bits))
    _emit(to_qasm(circuit), cfg.output, out)
    print(report, file=out if cfg.output else err)
    return 0 if report.ok else 1


def _export(cfg, out, err) -> int:
    if cfg.fmt == "sequence":
        _emit(sequence_to_text(make_sequence(cfg.variant, cfg.n, cfg.n_s)), cfg.output, out)
    else:
        _emit(to_qasm(_circuit(cfg)), cfg.output, out)
    return 0


HANDLERS = {"synth": _synth, "cost": _cost, "verify": _verify, "map": _map,
            "comparator": _comparator, "export": _export}


def run(config: CommandConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    try:
        config.validate()
        return HANDLERS[config.subcommand](config, out, err)
    except (ValueError, OSError) as exc:
        print(f"stesso {config.subcommand}: error: {exc}", file=err)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())

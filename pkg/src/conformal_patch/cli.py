"""Command-line front end.

Exit status: 0 on success, 1 on a validation or design error (including a
bad command line), 2 when a file cannot be read or written.
"""

from __future__ import annotations

import argparse
import math
import sys

from .element_pattern import SphericalGrid
from .errors import MetricUndefined, SpecParseError, SpecValidationError
from .export import export_pattern_csv, export_touchstone_s1p
from .feed_network import feed_input_reflection, junction_checks
from .metrics import bandwidth_minus_10db, return_loss_db
from .report import (
    DesignStageError,
    design_feed,
    design_patch,
    design_pattern,
    design_sweep,
    dumps_report,
    run_design,
    sweep_summary,
)
from .specfile import parse_spec
from .synthesis import bandwidth_factor, resonant_frequency

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conformal-patch", description="Microstrip patch / conformal array design tool")
    sub = parser.add_subparsers(dest="command", metavar="{synth,pattern,sweep,feed,report}")
    sub.required = True

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--spec", required=True, help="JSON design spec")
        p.add_argument("--out", help="output file (default: standard output)")
        return p

    add("synth", "print the synthesized patch dimensions")
    p = add("pattern", "write the array pattern as CSV")
    p.add_argument("--cut", default="full", help='"full" (default), "E" or "H"')
    p.add_argument("--step", type=float, default=1.0, help="grid step in degrees")
    add("sweep", "write the S11 sweep as Touchstone .s1p and print the -10 dB bandwidth")
    add("feed", "print the corporate feed and its input match")
    add("report", "run the full design and write a JSON report")
    return parser


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None, stdout) -> None:
    if out is None:
        stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _table(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)


def _synth_text(spec) -> str:
    d = design_patch(spec)
    res = resonant_frequency(d)
    return _table(
        [
            ("f0", f"{d.f0 / 1e9:.6g} GHz"),
            ("W", f"{d.W * 1e3:.4f} mm"),
            ("L", f"{d.L * 1e3:.4f} mm"),
            ("L_eff", f"{d.L_eff * 1e3:.4f} mm"),
            ("delta_L", f"{d.delta_L * 1e3:.4f} mm"),
            ("eps_eff", f"{d.eps_eff:.4f}"),
            ("f_res", f"{res.canonical / 1e9:.6f} GHz"),
            ("f_res_uncorrected", f"{res.uncorrected / 1e9:.6f} GHz"),
            ("bandwidth_factor", f"{bandwidth_factor(d):.6g}"),
        ]
    )


def _feed_text(spec) -> str:
    tree = design_feed(spec)
    gamma = feed_input_reflection(tree)
    rl = return_loss_db(min(abs(gamma), 1.0))
    lengths = tree.path_electrical_lengths()
    lines = [
        f"corporate feed 1:{tree.n_elements}  port {tree.port_impedance:g} ohm  "
        f"elements {tree.element_impedance:g} ohm",
        "path from input to one element:",
        f"  {'role':<13}{'Z0 ohm':>9}{'width mm':>10}{'length mm':>11}{'deg':>9}",
    ]
    for s in tree.paths()[0][1]:
        lines.append(
            f"  {s.role:<13}{s.z0:>9.3f}{s.width * 1e3:>10.4f}{s.physical_length * 1e3:>11.4f}"
            f"{math.degrees(s.electrical_length):>9.2f}"
        )
    for level, chk in enumerate(junction_checks(tree), start=1):
        lines.append(
            f"junction level {level}: design load {chk.expected:.3f} ohm, "
            f"branches in parallel {chk.actual.real:.3f}{chk.actual.imag:+.3f}j ohm"
        )
    lines.append(f"path length spread: {max(lengths) - min(lengths):.3e} rad")
    rl_text = "inf" if math.isinf(rl) else f"{rl:.2f}"
    lines.append(f"input |gamma| {abs(gamma):.3e}  return loss {rl_text} dB")
    return "\n".join(lines) + "\n"


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_VALIDATION

    try:
        spec = parse_spec(_read(args.spec))
    except OSError as exc:
        stderr.write(f"error: cannot read spec: {exc}\n")
        return EXIT_IO
    except (SpecParseError, SpecValidationError) as exc:
        stderr.write(f"error: invalid spec: {exc}\n")
        return EXIT_VALIDATION

    try:
        if args.command == "synth":
            text = _synth_text(spec)
        elif args.command == "pattern":
            grid = SphericalGrid.uniform(args.step)
            text = export_pattern_csv(design_pattern(spec, design_patch(spec), grid), args.cut)
        elif args.command == "sweep":
            response = design_sweep(spec, design_patch(spec))
            text = export_touchstone_s1p(response)
            summary = sweep_summary(response)
            try:
                bw = f"{bandwidth_minus_10db(response):.6g} Hz"
            except MetricUndefined as exc:
                bw = f"undefined ({exc})"
            info = (
                f"min VSWR {summary['min_vswr']:.4f} at {summary['min_vswr_frequency_hz']:.6g} Hz\n"
                f"-10 dB bandwidth {bw}\n"
            )
        elif args.command == "feed":
            text = _feed_text(spec)
        else:
            text = dumps_report(run_design(spec))
    except (DesignStageError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION

    try:
        _emit(text, args.out, stdout)
    except OSError as exc:
        stderr.write(f"error: cannot write output: {exc}\n")
        return EXIT_IO
    if args.command == "sweep":
        # keep the data stream clean when the trace itself goes to stdout
        (stdout if args.out else stderr).write(info)
    return EXIT_OK


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()

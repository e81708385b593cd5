"""hasse-forge command line.

    hasse-forge count    --spec FILE [--max-m N]
    hasse-forge zeta     --spec FILE [--max-m N]
    hasse-forge spectrum --spec FILE [--export PATH]
    hasse-forge regdet   (--spec FILE | --spectrum FILE) --s LIST [--delta X]
    hasse-forge verify   --spec FILE --s LIST [--tol X]

Exit status: 0 when every check passed, 1 on a failed check, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import HasseForgeError, SpecParse
from .regdet import (_fmt_complex, dim_infty, finite_det_parity_class, regdet_parity_class,
                     scaling_check, verify_theorem_a)
from .spectrum import (build_tp_model, export_spectrum, import_spectrum,
                       spectrum_from_zeta)
from .varieties import (counts_from_zeta, functional_equation_check, point_counts,
                        spec_from_json, zeta_of)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_BARE_UNIT = re.compile(r"(^|[+-])j")


def parse_complex(text: str) -> complex:
    """Parse 'a', 'a+bi', 'bi' (also 'i', '-i', and j instead of i)."""
    norm = text.replace(" ", "").replace("i", "j")
    norm = _BARE_UNIT.sub(r"\g<1>1j", norm)
    try:
        value = complex(norm)
    except ValueError:
        raise SpecParse(f"cannot parse complex number {text!r}") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise SpecParse(f"non-finite sample {text!r}")
    return value


def parse_complex_list(text: str) -> list:
    return [parse_complex(x) for x in text.split(",") if x.strip()]


@dataclass
class RunConfig:
    command: str
    spec_path: str | None = None
    spectrum_path: str | None = None
    s_samples: list = field(default_factory=list)
    max_m: int = 3
    delta: float = 1.0
    tolerances: Tolerances = DEFAULT_TOLERANCES
    output: str = "table"
    csv_path: str | None = None
    export_path: str | None = None

    def validate(self):
        if self.command in ("regdet", "verify") and not self.s_samples:
            raise SpecParse(f"{self.command} needs at least one --s sample")
        if self.max_m < 1:
            raise SpecParse("--max-m must be at least 1")
        if self.delta <= 0:
            raise SpecParse("--delta must be positive")
        if self.command != "regdet" and self.spec_path is None:
            raise SpecParse(f"{self.command} needs --spec")
        if self.command == "regdet" and not (self.spec_path or self.spectrum_path):
            raise SpecParse("regdet needs --spec or --spectrum")


def load_spec(path):
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecParse(f"cannot read variety spec {path}: {exc}") from exc
    return spec_from_json(obj)


def _table(header, rows):
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"


def _csv(header, rows):
    return "\n".join([",".join(header)] + [",".join(str(c) for c in r) for r in rows]) + "\n"


def _emit(cfg, header, rows, out):
    text = _csv(header, rows) if cfg.output == "csv" else _table(header, rows)
    out.write(text)
    if cfg.csv_path:
        Path(cfg.csv_path).write_text(_csv(header, rows))


def _model_for(cfg):
    if cfg.spectrum_path:
        try:
            text = Path(cfg.spectrum_path).read_text()
        except OSError as exc:
            raise SpecParse(f"cannot read spectrum {cfg.spectrum_path}: {exc}") from exc
        try:
            S = import_spectrum(text)
        except ValueError as exc:
            raise SpecParse(str(exc)) from exc
        return None, S
    Z = zeta_of(load_spec(cfg.spec_path))
    return Z, spectrum_from_zeta(Z, cfg.tolerances.weil)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    tol = cfg.tolerances
    cfg.validate()

    if cfg.command == "count":
        spec = load_spec(cfg.spec_path)
        counts = point_counts(spec, cfg.max_m)
        _emit(cfg, ["m", "N_m"], list(enumerate(counts.counts, start=1)), out)
        return EXIT_OK

    if cfg.command == "zeta":
        spec = load_spec(cfg.spec_path)
        Z = zeta_of(spec)
        rows = [[i, " ".join(str(c) for c in P)] for i, P in enumerate(Z.polys)]
        _emit(cfg, ["i", "P_i coefficients (t^0 t^1 ...)"], rows, out)
        fe = functional_equation_check(Z)
        M = min(cfg.max_m, len(spec.counts)) if hasattr(spec, "counts") else cfg.max_m
        reproduced = counts_from_zeta(Z, M) == list(point_counts(spec, M).counts)
        out.write(f"functional equation: {'ok' if fe.ok else 'VIOLATED ' + str(fe.violations)}\n")
        out.write(f"counts N_1..N_{M} reproduced: {'ok' if reproduced else 'NO'}\n")
        return EXIT_OK if fe.ok and reproduced else EXIT_FAIL

    if cfg.command == "spectrum":
        _, S = _model_for(cfg)
        rows, ok = [], True
        for i, entry, res in S.weil_residuals():
            rows.append([i, repr(entry.lam.real), repr(entry.lam.imag), entry.mult, f"{res:.2e}"])
            ok &= res <= tol.weil
        _emit(cfg, ["i", "re", "im", "mult", "weil_residual"], rows, out)
        if cfg.export_path:
            Path(cfg.export_path).write_text(export_spectrum(S))
        return EXIT_OK if ok else EXIT_FAIL

    if cfg.command == "regdet":
        _, S = _model_for(cfg)
        model = build_tp_model(S)
        rows, ok = [], True
        for s in cfg.s_samples:
            for parity in (0, 1):
                reg = regdet_parity_class(model, parity, s, tol, cfg.delta)
                fin = finite_det_parity_class(model, parity, s)
                dim = dim_infty(model, parity, s, tol)
                scale = scaling_check(model, parity, s, cfg.delta, tol)
                gap = abs(reg - fin) / max(abs(fin), abs(reg), 1e-300)
                good = abs(dim) <= tol.invariant and scale.ok and (gap <= tol.identity or reg == fin == 0)
                ok &= good
                rows.append([_fmt_complex(s), parity, repr(reg.real), repr(reg.imag),
                             repr(fin.real), repr(fin.imag), f"{abs(dim):.2e}",
                             "ok" if good else "fail"])
        _emit(cfg, ["s", "parity", "det_re", "det_im", "finite_re", "finite_im", "dim_inf", "status"],
              rows, out)
        return EXIT_OK if ok else EXIT_FAIL

    if cfg.command == "verify":
        spec = load_spec(cfg.spec_path)
        report = verify_theorem_a(spec, cfg.s_samples, tol, raise_on_failure=False)
        text = report.to_csv()
        if cfg.output == "csv":
            out.write(text)
        else:
            rows = [line.split(",") for line in text.splitlines()[1:]]
            out.write(_table(text.splitlines()[0].split(","), rows))
        if cfg.csv_path:
            Path(cfg.csv_path).write_text(text)
        out.write(f"overall: {'PASS' if report.ok else 'FAIL'}\n")
        return EXIT_OK if report.ok else EXIT_FAIL

    raise SpecParse(f"unknown command {cfg.command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hasse-forge", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=["count", "zeta", "spectrum", "regdet", "verify"])
    parser.add_argument("--spec", dest="spec_path")
    parser.add_argument("--spectrum", dest="spectrum_path",
                        help="spectrum text records (i,re,im,mult,jordan) instead of --spec")
    parser.add_argument("--s", dest="s_samples", default="", help="comma list, e.g. 2,3,1.5+0.7i")
    parser.add_argument("--max-m", type=int, default=3)
    parser.add_argument("--delta", type=float, default=1.0)
    parser.add_argument("--tol", type=float, default=None, help="identity tolerance")
    parser.add_argument("--csv", dest="csv_path")
    parser.add_argument("--output", choices=["table", "csv"], default="table")
    parser.add_argument("--export", dest="export_path", help="spectrum: write text records here")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = DEFAULT_TOLERANCES if args.tol is None else DEFAULT_TOLERANCES.with_overrides(identity=args.tol)
        cfg = RunConfig(args.command, args.spec_path, args.spectrum_path,
                        parse_complex_list(args.s_samples), args.max_m, args.delta, tol,
                        args.output, args.csv_path, args.export_path)
        return run(cfg)
    except HasseForgeError as exc:
        print(f"hasse-forge: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""(p2, p3) grid sweeps of the entanglement measures, with CSV emission."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .gmn import SolverError, gmn
from .hypergraph import Bipartition
from .measures import TOL_ZERO, negativity, reduced_concurrence
from .randomize import randomize


class SweepConfigError(ValueError):
    """Invalid sweep configuration."""


@dataclass(frozen=True)
class Range:
    """Inclusive start:stop:step axis; a scalar is a single-point range."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not (0.0 <= self.start <= 1.0 and 0.0 <= self.stop <= 1.0):
            raise SweepConfigError(f"range {self} outside [0, 1]")
        if self.stop < self.start:
            raise SweepConfigError(f"range {self} has stop < start")
        if self.stop > self.start and self.step <= 0:
            raise SweepConfigError(f"range {self} needs step > 0")

    @classmethod
    def parse(cls, text):
        parts = text.split(":")
        try:
            if len(parts) == 1:
                v = float(parts[0])
                return cls(v, v, 1.0)
            if len(parts) == 3:
                return cls(float(parts[0]), float(parts[1]), float(parts[2]))
        except ValueError:
            pass
        raise SweepConfigError(f"cannot parse range {text!r}; use 'v' or 'start:stop:step'")

    def points(self):
        if self.stop == self.start:
            return [self.start]
        count = int(round((self.stop - self.start) / self.step))
        return [round(self.start + i * self.step, 12) for i in range(count + 1)
                if self.start + i * self.step <= self.stop + 1e-12]

    def __str__(self):
        if self.stop == self.start:
            return f"{self.start:g}"
        return f"{self.start:g}:{self.stop:g}:{self.step:g}"


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: hypergraph, measure with its context, and the (p2, p3) grid."""

    hypergraph: object
    hypergraph_name: str
    measure: str  # negativity | concurrence | gmn
    context: object  # Bipartition, qubit pair tuple, or None for gmn
    p2: Range
    p3: Range
    tol_zero: float = TOL_ZERO

    def __post_init__(self):
        n = self.hypergraph.n_vertices
        if self.measure == "negativity":
            if not isinstance(self.context, Bipartition) or self.context.n_qubits != n:
                raise SweepConfigError("negativity needs a bipartition of the state's qubits")
        elif self.measure == "concurrence":
            pair = self.context
            if (not isinstance(pair, tuple) or len(pair) != 2 or pair[0] == pair[1]
                    or any(q < 1 or q > n for q in pair)):
                raise SweepConfigError(f"concurrence needs a distinct qubit pair in 1..{n}")
        elif self.measure == "gmn":
            if self.context is not None:
                raise SweepConfigError("gmn takes no bipartition/pair context")
            if n not in (2, 3, 4):
                raise SweepConfigError("gmn supports 2..4 qubits")
        else:
            raise SweepConfigError(f"unknown measure {self.measure!r}")

    def context_str(self):
        if self.measure == "negativity":
            return str(self.context)
        if self.measure == "concurrence":
            return f"({self.context[0]},{self.context[1]})"
        return "all-bipartitions"

    def evaluate(self, rho):
        """Measure value for one grid state; may raise SolverError for gmn."""
        if self.measure == "negativity":
            return negativity(rho, self.context)
        if self.measure == "concurrence":
            return reduced_concurrence(rho, *self.context)
        return gmn(rho)


@dataclass
class SweepResult:
    """Grid records (p2, p3, value, status) plus the generating config."""

    config: SweepConfig
    records: list  # (p2, p3, value, status)

    def values(self):
        return [r[2] for r in self.records]


def run_sweep(cfg, progress=None):
    """Evaluate the measure on every (p2, p3) grid point, row-major, p2 outer.

    A gmn solver failure is recorded in the point's status column instead
    of aborting the sweep.
    """
    h = cfg.hypergraph
    cards = h.cardinalities()
    if not cards <= {2, 3}:
        raise SweepConfigError(
            f"sweep grid covers p2/p3 only; hypergraph has cardinalities {sorted(cards)}")
    records = []
    for p2 in cfg.p2.points():
        for p3 in cfg.p3.points():
            rho = randomize(h, {k: p for k, p in ((2, p2), (3, p3)) if k in cards})
            try:
                value = cfg.evaluate(rho)
                status = "ok"
            except SolverError as err:
                value = (-err.solution.objective if err.solution is not None
                         else float("nan"))
                status = err.solution.status if err.solution is not None else "failed"
            records.append((p2, p3, value, status))
            if progress is not None:
                progress(p2, p3, value, status)
    return SweepResult(cfg, records)


def emit_csv(res, path, timestamp=None):
    """Write the sweep as CSV with ``#`` metadata lines.

    Deterministic apart from the timestamp line; values carry 17
    significant digits so parsing them back is lossless.
    """
    cfg = res.config
    lines = [
        f"# rhstates {__version__}",
        f"# hypergraph: {cfg.hypergraph_name}",
        f"# edges: {';'.join(','.join(map(str, e)) for e in cfg.hypergraph.edges)}",
        f"# n_vertices: {cfg.hypergraph.n_vertices}",
        f"# measure: {cfg.measure}",
        f"# context: {cfg.context_str()}",
        f"# p2: {cfg.p2}",
        f"# p3: {cfg.p3}",
        f"# tol_zero: {cfg.tol_zero:g}",
    ]
    if timestamp is not None:
        lines.append(f"# timestamp: {timestamp}")
    lines.append("p2,p3,value,status")
    for p2, p3, value, status in res.records:
        lines.append(f"{p2:.17g},{p3:.17g},{value:.17g},{status}")
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def parse_csv(path):
    """Read back an emitted CSV: (metadata dict, records list)."""
    meta = {}
    records = []
    header_seen = False
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, val = body.split(":", 1)
                    meta[key.strip()] = val.strip()
                continue
            if not line:
                continue
            if not header_seen:
                header_seen = True  # column header
                continue
            p2, p3, value, status = line.split(",")
            records.append((float(p2), float(p3), float(value), status))
    return meta, records


GNUPLOT_TEMPLATE = """\
# gnuplot script for {csv}
set datafile separator ","
set datafile commentschars "#"
set xlabel "p2"
set ylabel "p3"
set zlabel "{measure}"
set dgrid3d {n2},{n3}
set hidden3d
splot "{csv}" using 1:2:3 with lines title "{title}"
pause -1
"""


def emit_gnuplot(res, csv_path, path):
    """Write a gnuplot script that surfaces the emitted CSV."""
    cfg = res.config
    script = GNUPLOT_TEMPLATE.format(
        csv=csv_path, measure=cfg.measure,
        n2=max(len(cfg.p2.points()), 2), n3=max(len(cfg.p3.points()), 2),
        title=f"{cfg.hypergraph_name} {cfg.measure} {cfg.context_str()}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(script)
    return path

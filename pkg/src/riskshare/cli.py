"""Command-line front end.

    riskshare <verb> key=value ...

Verbs: ``eval``, ``infconv``, ``portfolio``, ``sweep``, ``oracle``,
``table``, ``counterexample``. Results go to stdout as CSV (or to ``out=``);
provenance tags go in a CSV column, and for ``eval`` to stderr. Exit status
is 2 for malformed input and 1 for computational errors.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import os
import sys
import traceback
from typing import Optional, Sequence

from . import oracle, portfolio, sharing
from .config import number, number_list, parse_kv, reject_unknown, take_distortion, take_distribution
from .distortion import make_distortion
from .errors import RiskShareError, UsageError
from .riskmeasure import Distribution, QuadConfig, choquet_detail

VERBS = ("eval", "infconv", "portfolio", "sweep", "oracle", "table", "counterexample")
USAGE = "usage: riskshare {" + ",".join(VERBS) + "} key=value ..."


def fmt(x: Optional[float], digits: int) -> str:
    if x is None:
        return ""
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    out = f"{x:.{digits}g}"
    return "0" if out == "-0" else out


class _Output:
    def __init__(self, kv: dict):
        self.digits = int(number(kv.pop("digits", "6"), "digits"))
        if not 1 <= self.digits <= 17:
            raise UsageError("digits must lie in 1..17")
        self.path = kv.pop("out", None)
        self.buf = io.StringIO()
        self.writer = csv.writer(self.buf, lineterminator="\n")

    def row(self, *cells):
        self.writer.writerow(cells)

    def num(self, x):
        return fmt(x, self.digits)

    def flush(self, stdout):
        text = self.buf.getvalue()
        if self.path:
            with open(self.path, "w", newline="") as fh:
                fh.write(text)
        else:
            stdout.write(text)


def _n(kv, key="n", default=None):
    raw = kv.pop(key, default)
    if raw is None:
        raise UsageError(f"missing {key}=")
    v = number(raw, key)
    if v != int(v):
        raise UsageError(f"{key} must be an integer")
    return int(v)


# verbs ---------------------------------------------------------------------


def _cmd_eval(kv, out, stdout, stderr):
    h = take_distortion(kv)
    d = take_distribution(kv)
    reject_unknown(kv)

    def run():
        det = choquet_detail(h, d, QuadConfig.default())
        prov = "quantile" if h.family_tag == "var_step" else "choquet_survival"
        if det.tail_mass:
            prov += ";tails_integrated"
        return det.value, prov

    return lambda: _emit_eval(out, stdout, stderr, *run())


def _emit_eval(out, stdout, stderr, value, prov):
    stderr.write(f"provenance={prov}\n")
    if out.path:
        out.row("value", "provenance")
        out.row(out.num(value), prov)
    else:
        out.buf.write(out.num(value) + "\n")


def _cmd_infconv(kv, out, stdout, stderr):
    h = take_distortion(kv)
    d = take_distribution(kv)
    n = _n(kv)
    regime = kv.pop("regime", "counter_monotonic")
    space = kv.pop("space", d.sign_class)
    reject_unknown(kv)

    def run():
        r = sharing.infconv(h, n, d, regime, space, QuadConfig.default())
        out.row("value", "regime", "provenance")
        out.row(out.num(r.value), r.regime, r.provenance)

    return run


def _cost(kv):
    kind = kv.pop("cost", "quadratic")
    a = number(kv.pop("cost_a", "1"), "cost_a")
    if kind == "quadratic":
        return portfolio.CostModel.quadratic(a)
    if kind == "power":
        return portfolio.CostModel.power(number(kv.pop("cost_p", "2"), "cost_p"), a)
    raise UsageError(f"unknown cost model {kind!r}")


def _cmd_portfolio(kv, out, stdout, stderr):
    h = take_distortion(kv)
    d = take_distribution(kv)
    n = _n(kv)
    cost = _cost(kv)
    W = number(kv.pop("W", "1"), "W")
    reject_unknown(kv)

    def run():
        sol = portfolio.optimal_lambda(portfolio.PortfolioProblem(h, n, d, cost, W), QuadConfig.default())
        out.row("lambda_star", "binding", "objective", "target_rho", "provenance")
        out.row(out.num(sol.lambda_star), sol.binding, out.num(sol.objective_value), out.num(sol.target_value), sol.branch)

    return run


def _cmd_sweep(kv, out, stdout, stderr):
    if "family" not in kv:
        raise UsageError("missing family=")
    family = kv.pop("family")
    if "params" not in kv:
        raise UsageError("missing params=p1,p2,...")
    grid = number_list(kv.pop("params"), "params")
    ns = [int(v) for v in number_list(kv.pop("n", "2"), "n")]
    fixed = {}
    if "k" in kv:
        fixed["k"] = int(number(kv.pop("k"), "k"))
    d = take_distribution(kv) if "dist" in kv else Distribution.uniform(0.0, 1.0)
    cost = _cost(kv)
    W = number(kv.pop("W", "1"), "W")
    reject_unknown(kv)

    def run():
        rows = portfolio.sweep(family, grid, ns, d, cost, W, fixed, QuadConfig.default())
        for r in rows:
            if r.error:
                stderr.write(f"param={fmt(r.param, out.digits)} n={r.n}: {r.error}\n")
        portfolio.write_sweep_csv(rows, out.buf, out.digits)

    return run


def _cmd_oracle(kv, out, stdout, stderr):
    path = kv.pop("scenario", None)
    if path is None:
        raise UsageError("missing scenario=<file>")
    reject_unknown(kv)
    try:
        with open(path) as fh:
            sc = oracle.parse_scenario(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read scenario: {exc}") from exc

    def run():
        res = oracle.run_scenario(sc)
        out.row("value", "candidates", "provenance")
        out.row(out.num(res.value), res.candidates, f"oracle:{res.method}")
        if res.allocation is not None:
            for i, comp in enumerate(res.allocation):
                out.row(f"X{i + 1}", *[out.num(v) for v in comp.values])

    return run


TABLE_CASES = (
    ("uniform", lambda: Distribution.uniform(0.0, 1.0)),
    ("pareto", lambda: Distribution.pareto(3.0, 2.0)),
    ("lognormal", lambda: Distribution.lognormal(0.0, 1.0)),
)


def comparison_table(h=None, n: int = 2, q: Optional[QuadConfig] = None):
    """Rows ``(case, rho_h, counter value, provenance)`` for ``Y`` and ``-Y``."""
    from .riskmeasure import choquet

    h = h if h is not None else make_distortion("wang", {"lambda": -0.6})
    rows = []
    for name, build in TABLE_CASES:
        for sign in (1, -1):
            d = build() if sign > 0 else build().negated()
            space = "Lplus" if sign > 0 else "Lminus"
            rho = choquet(h, d, q)
            r = sharing.infconv(h, n, d, "counter_monotonic", space, q)
            rows.append((name if sign > 0 else f"-{name}", rho, r.value, r.provenance))
    return rows


def _cmd_table(kv, out, stdout, stderr):
    h = take_distortion(kv) if "family" in kv else None
    n = _n(kv, default="2")
    reject_unknown(kv)

    def run():
        out.row("case", "rho_h", "counter_monotonic", "provenance")
        for case, rho, counter, prov in comparison_table(h, n, QuadConfig.default()):
            out.row(case, out.num(rho), out.num(counter), prov)

    return run


def _cmd_counterexample(kv, out, stdout, stderr):
    reject_unknown(kv)

    def run():
        rep = oracle.appendix_counterexample()
        joint = "joint>=1" if rep.joint_value >= 1 else f"joint={fmt(rep.joint_value, out.digits)}"
        line = f"sequential={fmt(rep.sequential_value, out.digits)} {joint} gap={str(rep.gap_confirmed).lower()}\n"
        stdout.write(line)
        if out.path:
            out.row("quantity", "value", "provenance")
            out.row("sequential", out.num(rep.sequential_value), "oracle:value_grid_sequential")
            out.row("joint", out.num(rep.joint_value), "oracle:value_grid")
            out.row("gap_confirmed", str(rep.gap_confirmed).lower(), "oracle")
            out.row("zero_sequential_attainable", str(rep.zero_sequential_attainable).lower(), "oracle:exhaustive")
            out.row("zero_joint_attainable", str(rep.zero_joint_attainable).lower(), "oracle:exhaustive")

    return run


_COMMANDS = {
    "eval": _cmd_eval,
    "infconv": _cmd_infconv,
    "portfolio": _cmd_portfolio,
    "sweep": _cmd_sweep,
    "oracle": _cmd_oracle,
    "table": _cmd_table,
    "counterexample": _cmd_counterexample,
}


def _origin(exc: BaseException) -> str:
    frames = traceback.extract_tb(exc.__traceback__)
    for fr in reversed(frames):
        base = os.path.splitext(os.path.basename(fr.filename))[0]
        if "riskshare" in fr.filename and not base.startswith("_"):
            return base
    return "riskshare"


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    if os.environ.get("RISKSHARE_LOG"):
        logging.basicConfig(level=os.environ["RISKSHARE_LOG"].upper(), stream=stderr)
    if not argv or argv[0] in ("-h", "--help"):
        stderr.write(USAGE + "\n")
        return 0 if argv else 2
    verb = argv[0]
    try:
        if verb not in _COMMANDS:
            raise UsageError(f"unknown verb {verb!r}")
        kv = parse_kv(argv[1:])
        out = _Output(kv)
        run = _COMMANDS[verb](kv, out, stdout, stderr)
        QuadConfig.default()
    except RiskShareError as exc:
        stderr.write(f"riskshare: usage error: {exc}\n{USAGE}\n")
        return 2
    try:
        run()
    except RiskShareError as exc:
        stderr.write(f"riskshare: {type(exc).__name__} in {_origin(exc)}: {exc}\n")
        return 1
    out.flush(stdout)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

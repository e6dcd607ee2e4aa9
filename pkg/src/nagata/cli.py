"""Command-line entry point: one subcommand per toolkit area.

Exit status is 0 on success, 2 on a usage error and 3 on a domain error,
in which case the error class name is printed on stderr.  Every subcommand
accepts ``--format json`` (the default); tabular ones also speak CSV.
"""

from __future__ import annotations

import argparse
import csv
import decimal
import io
import json
import sys
from fractions import Fraction

from . import cluster as cl
from . import cones, cremona, interp, valuation, waldschmidt
from .errors import InvalidParameter, NagataError
from .exactnum import QuadNum, as_quad, parse_quad, parse_rat
from .lattice import class_to_json, parse_class, render_class

__all__ = ["main", "build_parser"]


# -- output ----------------------------------------------------------------------
class _Out:
    def __init__(self, fmt: str, decimals: int | None):
        self.fmt = fmt
        self.decimals = decimals

    def num(self, x):
        """Exact string, or ``{"exact", "decimal"}`` under ``--decimals``."""
        q = as_quad(x)
        if self.decimals is None:
            return str(q)
        return {"exact": str(q), "decimal": _decimal(q, self.decimals)}


def _decimal(q: QuadNum, digits: int) -> str:
    """Fixed-point rendering with ``digits`` places after the point."""
    magnitude = len(str(abs(int(float(q))))) if q.sign() else 1
    d = q.to_decimal(digits + magnitude + 10)
    with decimal.localcontext() as ctx:
        ctx.prec = digits + magnitude + 10
        return format(d.quantize(decimal.Decimal(1).scaleb(-digits)), "f")


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _flat_rows(data: dict):
    return [[k, json.dumps(v, ensure_ascii=False) if isinstance(v, (dict, list)) else v] for k, v in data.items()]


def _emit(out: _Out, data, text: str | None = None, table=None) -> str:
    if out.fmt == "json":
        return json.dumps(data, ensure_ascii=False, indent=2)
    if out.fmt == "csv":
        if table is not None:
            return _csv(*table).rstrip("\n")
        return _csv(["key", "value"], _flat_rows(data)).rstrip("\n")
    if text is not None:
        return text
    if isinstance(data, dict):
        return "\n".join(f"{k}: {v}" for k, v in data.items())
    return "\n".join(str(x) for x in data)


# -- argument helpers -------------------------------------------------------------
def _rat(s: str) -> Fraction:
    try:
        return parse_rat(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _quad(s: str) -> QuadNum:
    try:
        return parse_quad(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def parse_mult(s: str) -> tuple[int, ...]:
    """``"2,1^6"`` -> ``(2, 1, 1, 1, 1, 1, 1)``."""
    out: list[int] = []
    for tok in s.split(","):
        tok = tok.strip()
        if not tok:
            raise argparse.ArgumentTypeError(f"empty entry in {s!r}")
        base, sep, count = tok.partition("^")
        try:
            value, reps = int(base), int(count) if sep else 1
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad multiplicity entry {tok!r}")
        if value < 0 or reps < 0:
            raise argparse.ArgumentTypeError(f"negative entry {tok!r}")
        out.extend([value] * reps)
    return tuple(out)


def _rat_list(s: str) -> list[Fraction]:
    return [_rat(x) for x in s.split(",") if x.strip()]


# -- handlers ---------------------------------------------------------------------
def cmd_negcurves(a, out):
    classes = cremona.enumerate_minus_one(a.n)
    records = [class_to_json(c) for c in classes]
    table = (["d"] + [f"m{i + 1}" for i in range(a.n)], [[str(c.d)] + [str(x) for x in c.m] for c in classes])
    text = "\n".join(render_class(c) for c in classes) + f"\n# {len(classes)} classes, max degree {cremona.max_degree(classes)}"
    return _emit(out, records, text, table)


def cmd_hudson(a, out):
    trace = cremona.hudson_test(parse_class(a.cls))
    steps = [
        {"base": list(s.base), "source": render_class(s.source), "target": render_class(s.target), "c": str(s.c)}
        for s in trace.steps
    ]
    data = {"start": render_class(trace.start), "steps": steps, "degrees": [str(d) for d in trace.degrees], "verdict": trace.verdict}
    lines = [f"start {render_class(trace.start)}"]
    lines += [f"  base {s['base']}: {s['source']} -> {s['target']}" for s in steps]
    lines.append(f"verdict {trace.verdict}")
    table = (["step", "base", "source", "target"], [[k + 1, " ".join(map(str, s["base"])), s["source"], s["target"]] for k, s in enumerate(steps)])
    return _emit(out, data, "\n".join(lines), table)


def cmd_cremona(a, out):
    base = [int(x) for x in a.base.split(",")]
    if len(base) != 3:
        raise InvalidParameter("--base needs three indices")
    image = cremona.cremona_transform(parse_class(a.cls), *base)
    return _emit(out, {"class": render_class(image), **{"json": class_to_json(image)}}, render_class(image))


def _class_for_n(a):
    c = parse_class(a.cls)
    if a.n is not None and a.n != c.n:
        raise InvalidParameter(f"class has {c.n} points but --n is {a.n}")
    return c


def cmd_cone(a, out):
    r = cones.cone_report(_class_for_n(a))
    data = r.to_json()
    data["L_pairing"] = out.num(r.L_pairing)
    data["self_pairing"] = out.num(r.self_pairing)
    return _emit(out, data)


def cmd_bqp(a, out):
    c = cones.bqp_class(a.q, a.p)
    r = cones.cone_report(c)
    data = {"class": render_class(c), "self_pairing": out.num(r.self_pairing), "K_side": r.K_side, "in_Q": r.in_Q}
    return _emit(out, data)


def cmd_nef(a, out):
    res = cones.nef_test_small(_class_for_n(a))
    data = {"nef": res.nef, "min_pairing": out.num(res.min_pairing),
            "witness": render_class(res.witness) if res.witness is not None else None}
    return _emit(out, data)


def _cluster(a, default=cl.UNIT_VALUE):
    norm = getattr(a, "normalize", None) or default
    return cl.cluster_from_cf(a.t, norm)


def cmd_cluster(a, out):
    c = _cluster(a)
    rows = c.describe()
    data = {
        "t": str(a.t),
        "continued_fraction": cl.continued_fraction(a.t),
        "centers": rows,
        "sum_of_squares": out.num(cl.sum_of_squares(c)),
        "volume": out.num(cl.volume(c)),
        "proximity_equalities": c.satisfies_proximity_equalities(),
    }
    header = list(rows[0].keys()) if rows else []
    table = (header, [[json.dumps(r[h]) if isinstance(r[h], list) else r[h] for h in header] for r in rows])
    return _emit(out, data, None, table)


def _start_divisor(a, c):
    if a.divisor is not None:
        coeffs = _rat_list(a.divisor)
        return cl.ContractedDivisor.from_e_coefficients(coeffs)
    if a.m is None:
        raise InvalidParameter("give --m or --divisor")
    return cl.ContractedDivisor((Fraction(0),) * (c.s - 1) + (Fraction(a.m),))


def cmd_unload(a, out):
    c = _cluster(a, cl.UNIT_LAST)
    start = _start_divisor(a, c)
    res = cl.unload(c, start)
    data = {
        "start_mbar": [str(x) for x in start.mbar],
        "trace": [j + 1 for j in res.steps],
        "mbar": [str(x) for x in res.mbar],
        "excesses": [str(x) for x in res.divisor.excesses(c)],
    }
    if a.divisor is None and c.weights[-1] == 1:
        data["colength"] = cl.colength(c, a.m)
    table = (["index", "mbar"], [[k + 1, str(x)] for k, x in enumerate(res.mbar)])
    return _emit(out, data, None, table)


def cmd_relzariski(a, out):
    c = _cluster(a, cl.UNIT_LAST)
    d = cl.ContractedDivisor.from_e_coefficients(_rat_list(a.divisor))
    p, n = cl.relative_zariski(c, d)
    data = {
        "P": {"total": [out.num(x) for x in p.e_coefficients()], "strict": [out.num(x) for x in p.strict_coefficients(c)]},
        "N": {"total": [out.num(x) for x in n.e_coefficients()], "strict": [out.num(x) for x in n.strict_coefficients(c)]},
        "P_dot_strict": [out.num(x) for x in p.excesses(c)],
        "P_is_valuation_divisor": p == cl.valuation_divisor(c) if c.satisfies_proximity_equalities() else None,
    }
    return _emit(out, data)


def _series(a) -> valuation.PlaneSeries:
    if getattr(a, "xi", None):
        return valuation.PlaneSeries.exact(_rat_list(a.xi))
    return valuation.PlaneSeries.generic(a.xi_seed if a.xi_seed is not None else a.seed)


def cmd_qval(a, out):
    f = valuation.parse_poly(a.poly)
    value, order = valuation.quasimonomial_value_certified(_series(a), a.t, f)
    return _emit(out, {"value": out.num(value), "certified_order": order, "degree": valuation.poly_degree(f)})


def cmd_legendre(a, out):
    if a.orevkov is not None:
        datum = waldschmidt.orevkov_datum(a.orevkov)
        polygon, degree = datum.polygon, datum.degree
    elif a.poly:
        f = valuation.parse_poly(a.poly)
        polygon, degree = valuation.newton_polygon(_series(a), f), valuation.poly_degree(f)
    else:
        raise InvalidParameter("give --poly or --orevkov")
    fn = valuation.legendre(polygon)
    pieces = [
        {"lo": out.num(p.lo), "hi": None if p.hi is None else out.num(p.hi), "slope": str(p.slope), "intercept": str(p.intercept)}
        for p in fn.pieces
    ]
    intervals = valuation.submaximal_set(fn, degree)
    data = {
        "vertices": [list(v) for v in polygon.vertices],
        "degree": degree,
        "breakpoints": [out.num(b) for b in fn.breakpoints],
        "pieces": pieces,
        "submaximal": [[out.num(i.lo), None if i.hi is None else out.num(i.hi)] for i in intervals],
    }
    table = (["lo", "hi", "slope", "intercept"],
             [[str(p.lo), "inf" if p.hi is None else str(p.hi), str(p.slope), str(p.intercept)] for p in fn.pieces])
    return _emit(out, data, None, table)


def cmd_mu(a, out):
    table = waldschmidt.build_mu_table()
    res = waldschmidt.mu_eval(table, a.t, a.assume_conjecture)
    data = res.to_json()
    if res.known:
        data["value"] = out.num(res.value)
        data["residual"] = out.num(res.value * res.value - a.t)
    return _emit(out, data)


def cmd_mu_sample(a, out):
    if a.step <= 0:
        raise InvalidParameter("--step must be positive")
    table = waldschmidt.build_mu_table()
    rows = []
    t = a.start
    while t <= a.stop:
        res = waldschmidt.mu_eval(table, t, a.assume_conjecture)
        sqrt_t = _sqrt_decimal(t, 30)
        rows.append([
            str(t),
            _decimal(res.value, 30) if res.known else "",
            int(res.known),
            (res.row.row_id if res.row is not None else "") if res.known else "",
            sqrt_t,
        ])
        t += a.step
    header = ["t", "mu", "known", "row_id", "sqrt_t"]
    data = [dict(zip(header, r)) for r in rows]
    return _emit(out, data, None, (header, rows))


def _sqrt_decimal(t: Fraction, digits: int) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = digits + 20
        root = (decimal.Decimal(t.numerator) / decimal.Decimal(t.denominator)).sqrt()
        return format(root.quantize(decimal.Decimal(1).scaleb(-digits)), "f")


def _config(a, n):
    return interp.make_config(a.config, n, a.prime, a.seed, a.a, a.b, a.delta)


def _mult(a):
    m = a.mult
    n = a.n if a.n is not None else len(m)
    if len(m) != n:
        raise InvalidParameter(f"--mult lists {len(m)} values but --n is {n}")
    return n, m


def cmd_interp(a, out):
    n, m = _mult(a)
    res = interp.dimension(interp.InterpProblem(_config(a, n), a.degree, m))
    return _emit(out, res.to_json())


def cmd_alpha(a, out):
    n, m = _mult(a)
    res = interp.alpha(_config(a, n), m, a.dmax)
    return _emit(out, res.to_json(), str(res))


def cmd_seshadri(a, out):
    data = {"n": a.n, "upper": out.num(cones.seshadri_upper_bound(a.n))}
    if a.n >= 10:
        try:
            _, upper_sq = waldschmidt.hr09_bound(a.n)
            # epsilon = 1/alpha-hat >= 1/sqrt(upper^2)
            data["lower_squared"] = out.num(upper_sq.inverse())
        except InvalidParameter:
            data["lower_squared"] = None
    if a.m_max:
        quotients = interp.waldschmidt_upper(_config(a, a.n), (1,) * a.n, a.m_max)
        data["alpha_quotients"] = [str(q) for q in quotients]
        data["lower_sampled"] = str(1 / min(quotients))
    return _emit(out, data)


def cmd_compare_roundoff(a, out):
    c = _cluster(a, cl.UNIT_LAST)
    return _emit(out, cl.compare_roundoff(c, a.m))


# -- parser ---------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--decimals", type=int, default=None, help="add decimal renderings with N digits")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="nagata", description="Exact computations on blown-up planes and plane valuations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("negcurves", cmd_negcurves, "enumerate (-1)-classes for 2 <= n <= 8")
    p.add_argument("--n", type=int, required=True)

    p = add("hudson", cmd_hudson, "run Hudson's test on a class")
    p.add_argument("--class", dest="cls", required=True)

    p = add("cremona", cmd_cremona, "apply a quadratic transformation")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--base", required=True, help="three 1-based indices, e.g. 1,2,3")

    for name, func in (("cone", cmd_cone), ("nef", cmd_nef)):
        p = add(name, func, f"{name} report for a class")
        p.add_argument("--n", type=int)
        p.add_argument("--class", dest="cls", required=True)

    p = add("bqp", cmd_bqp, "the boundary class B_{q,p}")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    norm = dict(choices=[cl.UNIT_VALUE, cl.UNIT_LAST], default=None)
    p = add("cluster", cmd_cluster, "cluster of centers of v_{xi,t}")
    p.add_argument("--t", type=_rat, required=True)
    p.add_argument("--normalize", **norm)

    p = add("unload", cmd_unload, "unload -m E_s (or a given divisor)")
    p.add_argument("--t", type=_rat, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--divisor", help="coefficients of D = sum c_i E_i")
    p.add_argument("--normalize", **norm)

    p = add("relzariski", cmd_relzariski, "relative Zariski decomposition")
    p.add_argument("--t", type=_rat, required=True)
    p.add_argument("--divisor", required=True, help="coefficients of D = sum c_i E_i")
    p.add_argument("--normalize", **norm)

    p = add("qval", cmd_qval, "quasimonomial value v_{xi,t}(f)")
    p.add_argument("--t", type=_quad, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--xi-seed", type=int)
    p.add_argument("--xi", help="explicit series coefficients a1,a2,...")

    p = add("legendre", cmd_legendre, "Newton polygon, Legendre transform and submaximal set")
    p.add_argument("--poly")
    p.add_argument("--orevkov", type=int, help="use the Orevkov datum i instead of a polynomial")
    p.add_argument("--xi-seed", type=int)
    p.add_argument("--xi")

    p = add("mu", cmd_mu, "known value of mu-hat(t)")
    p.add_argument("--t", type=_quad, required=True)
    p.add_argument("--assume-conjecture", action="store_true")

    p = add("mu-sample", cmd_mu_sample, "sample mu-hat on a grid")
    p.add_argument("--from", dest="start", type=_rat, default=Fraction(1))
    p.add_argument("--to", dest="stop", type=_rat, default=Fraction(9))
    p.add_argument("--step", type=_rat, default=Fraction(1, 200))
    p.add_argument("--assume-conjecture", action="store_true")

    for name, func in (("interp", cmd_interp), ("alpha", cmd_alpha)):
        p = add(name, func, "fat-point interpolation dimension" if name == "interp" else "least degree alpha")
        p.add_argument("--n", type=int)
        p.add_argument("--mult", type=parse_mult, required=True)
        if name == "interp":
            p.add_argument("--degree", type=int, required=True)
        else:
            p.add_argument("--dmax", type=int, default=100)
        _config_args(p)

    p = add("seshadri", cmd_seshadri, "Seshadri constant bounds for n general points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-max", type=int, default=0, help="also sample alpha(m Z)/m for m <= M")
    _config_args(p)

    p = add("compare-roundoff", cmd_compare_roundoff, "unloaded D_m versus m D_v and its round-down")
    p.add_argument("--t", type=_rat, required=True)
    p.add_argument("--m", type=int, required=True)
    return parser


def _config_args(p):
    p.add_argument("--config", default="general", choices=list(interp.KINDS))
    p.add_argument("--prime", type=int, default=interp.DEFAULT_PRIME)
    p.add_argument("--a", type=int, default=0, help="cubic coefficient a (oncubic)")
    p.add_argument("--b", type=int, default=7, help="cubic coefficient b (oncubic)")
    p.add_argument("--delta", type=int, default=4, help="curve degree (oncurve)")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(args.format, args.decimals)
    try:
        text = args.func(args, out)
    except NagataError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ValueError, TypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

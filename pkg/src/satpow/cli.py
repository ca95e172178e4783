"""Job language, command dispatch and report serialisation.

A job is a ``;``-separated list of statements::

    ring Q[x,y]; ideal(x^2, x*y); K=5; cmd=epsilon

    ring Q[x,y]; module([x,0],[y,0]); cmd=power-seq; format=json

Usage: ``satpow run JOBFILE`` or ``satpow eval 'JOB'``.  Exit status is 0 on
success, 2 on a parse or usage error and 3 on an algebra error; errors are
also written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction

from satpow.asymptotics import (
    AsymptoticReport,
    Diagnostics,
    DualPathMismatch,
    Row,
    epsilon_estimate,
    groebner_row,
    oracle_row,
    run_sequence,
    tau_check,
)
from satpow.ideal_ops import AlgebraError, Ideal, saturate_colon, saturate_elim
from satpow.module_ops import (
    GradedPiece,
    SubmoduleSpec,
    module_power,
    module_saturate,
    quotient_length,
    torsion_h0,
)
from satpow.polycore import Poly, Ring, VecPoly

COMMANDS = ("saturate", "power-seq", "epsilon", "tau-check", "oracle-diff")
FORMATS = ("csv", "json", "plotdata")


class JobParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str = ""):
        self.message = message
        self.pos = pos
        if pos is not None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            self.line, self.col = line, col
            message = f"{message} (line {line}, column {col})"
        else:
            self.line = self.col = None
        super().__init__(message)


# -- tokenizer / recursive descent ------------------------------------------

# '#' starts a comment running to the end of the line
_TOKEN = re.compile(r"(?:\s|#[^\n]*(?=\n|$))*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([^\s#]))")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", num, start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("sym", sym, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ring: Ring | None = None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring

    # helpers
    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise JobParseError(msg, tok[2], self.text)

    def expect(self, value):
        t = self.next()
        if t[1] != value or t[0] == "end":
            self.error(f"expected {value!r}, found {t[1] or 'end of input'!r}", t)
        return t

    def accept(self, value):
        if self.peek()[1] == value and self.peek()[0] != "end":
            return self.next()
        return None

    # polynomial grammar
    def poly(self) -> Poly:
        if self.ring is None:
            self.error("ring not declared")
        p = self.term()
        while True:
            if self.accept("+"):
                p = p + self.term()
            elif self.accept("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            if self.accept("*"):
                p = p * self.unary()
            elif self.peek()[1] == "/":
                tok = self.next()
                q = self.unary()
                if not q.is_constant() or q.is_zero():
                    self.error("division only by a nonzero constant", tok)
                p = p * (1 / q.lead_coeff)
            else:
                return p

    def unary(self) -> Poly:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.accept("^"):
            t = self.next()
            if t[0] != "num":
                self.error("exponent must be a non-negative integer", t)
            return base ** int(t[1])
        return base

    def atom(self) -> Poly:
        t = self.next()
        if t[0] == "num":
            return self.ring.const(int(t[1]))
        if t[0] == "name":
            if t[1] not in self.ring.names:
                self.error(f"unknown variable {t[1]!r}", t)
            return self.ring.var(t[1])
        if t[1] == "(":
            p = self.poly()
            self.expect(")")
            return p
        self.error(f"unexpected {t[1] or 'end of input'!r}", t)


def parse_polynomial(text: str, ring: Ring) -> Poly:
    p = _Parser(text, ring)
    out = p.poly()
    if p.peek()[0] != "end":
        p.error(f"unexpected {p.peek()[1]!r}")
    return out


# -- jobs ------------------------------------------------------------------


@dataclass
class JobSpec:
    ring: Ring
    target: str  # "ideal" or "module"
    generators: list
    gamma: int = 1
    K: int | None = None
    command: str = "power-seq"
    format: str = "csv"
    tol: Fraction = Fraction(1, 10)
    cap: int | None = None

    @property
    def d(self) -> int:
        return self.ring.ngens

    def submodule(self) -> SubmoduleSpec:
        if self.target == "ideal":
            return SubmoduleSpec.from_ideal(Ideal(self.ring, self.generators))
        return SubmoduleSpec(self.ring, self.gamma, list(self.generators))


_SETTINGS = ("K", "cmd", "format", "tol", "cap")


def parse_job(text: str) -> JobSpec:
    p = _Parser(text)
    ring = None
    target = None
    gens = []
    gamma = 1
    settings = {}
    while p.peek()[0] != "end":
        if p.accept(";"):
            continue
        tok = p.next()
        word = tok[1]
        if tok[0] != "name":
            p.error(f"expected a statement, found {word!r}", tok)
        if word == "ring":
            if ring is not None:
                p.error("duplicate ring declaration", tok)
            field_tok = p.next()
            if field_tok[1] != "Q":
                p.error("only the field Q is supported", field_tok)
            p.expect("[")
            names = []
            while True:
                t = p.next()
                if t[0] != "name":
                    p.error("expected a variable name", t)
                if t[1] in names:
                    p.error(f"duplicate variable {t[1]!r}", t)
                names.append(t[1])
                if not p.accept(","):
                    break
            p.expect("]")
            ring = p.ring = Ring(tuple(names))
        elif word in ("ideal", "module"):
            if ring is None:
                p.error("ring not declared", tok)
            if target is not None:
                p.error("duplicate target declaration", tok)
            target = word
            p.expect("(")
            if word == "ideal":
                if not p.accept(")"):
                    gens.append(p.poly())
                    while p.accept(","):
                        gens.append(p.poly())
                    p.expect(")")
            else:
                rows = []
                while True:
                    start = p.expect("[")
                    comps = [p.poly()]
                    while p.accept(","):
                        comps.append(p.poly())
                    p.expect("]")
                    if rows and len(comps) != len(rows[0]):
                        p.error("module vectors of different lengths", start)
                    rows.append(comps)
                    if not p.accept(","):
                        break
                p.expect(")")
                gamma = len(rows[0])
                gens = [VecPoly(ring, r) for r in rows]
        elif word in _SETTINGS:
            if word in settings:
                p.error(f"duplicate setting {word!r}", tok)
            p.expect("=")
            settings[word] = _setting_value(p, word)
        else:
            p.error(f"unknown statement {word!r}", tok)
        if p.peek()[0] != "end":
            p.expect(";")
    if ring is None:
        raise JobParseError("ring not declared")
    if target is None:
        raise JobParseError("no ideal or module given")
    return JobSpec(
        ring,
        target,
        gens,
        gamma,
        K=settings.get("K"),
        command=settings.get("cmd", "power-seq"),
        format=settings.get("format", "csv"),
        tol=settings.get("tol", Fraction(1, 10)),
        cap=settings.get("cap"),
    )


def _setting_value(p: _Parser, word: str):
    if word in ("K", "cap"):
        t = p.next()
        if t[0] != "num" or int(t[1]) < 1:
            p.error(f"{word} must be a positive integer", t)
        return int(t[1])
    if word == "tol":
        start = p.peek()
        chunk = ""
        while p.peek()[0] != "end" and p.peek()[1] != ";":
            chunk += p.next()[1]
        try:
            value = Fraction(chunk)
        except ValueError:
            p.error(f"bad tolerance {chunk!r}", start)
        if value < 0:
            p.error("tolerance must be non-negative", start)
        return value
    # cmd / format: a possibly hyphenated word
    start = p.next()
    if start[0] != "name":
        p.error(f"bad value for {word}", start)
    value = start[1]
    while p.peek()[1] == "-":
        p.next()
        value += "-" + p.next()[1]
    allowed = COMMANDS if word == "cmd" else FORMATS
    if value not in allowed:
        p.error(f"{word} must be one of {', '.join(allowed)}", start)
    return value


def format_job(job: JobSpec) -> str:
    """Canonical text for a job; parse_job(format_job(j)) reproduces j."""
    parts = [f"ring Q[{','.join(job.ring.names)}]"]
    if job.target == "ideal":
        parts.append("ideal(" + ", ".join(str(g) for g in job.generators) + ")")
    else:
        vecs = ("[" + ", ".join(str(c) for c in v.comps) + "]" for v in job.generators)
        parts.append("module(" + ", ".join(vecs) + ")")
    if job.K is not None:
        parts.append(f"K={job.K}")
    parts.append(f"cmd={job.command}")
    parts.append(f"format={job.format}")
    parts.append(f"tol={job.tol}")
    if job.cap is not None:
        parts.append(f"cap={job.cap}")
    return "; ".join(parts)


# -- serialisation ---------------------------------------------------------


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _unq(s: str) -> Fraction:
    return Fraction(s)


def report_to_dict(report: AsymptoticReport) -> dict:
    dg = report.diagnostics
    return {
        "d": report.d,
        "e": report.e,
        "gamma": report.gamma,
        "rank_hypothesis_met": report.rank_hypothesis_met,
        "method": report.method,
        "rows": [
            {
                "k": r.k,
                "lambda": r.lam,
                "n_k": r.n_k,
                "ratio": _q(r.ratio),
                "eps_k": _q(r.eps),
                "ratio_decimal": r.ratio_decimal,
                "eps_decimal": r.eps_decimal,
            }
            for r in report.rows
        ],
        "diagnostics": {
            "tau_hat": dg.tau_hat,
            "last_delta": None if dg.last_delta is None else _q(dg.last_delta),
            "monotone_tail": dg.monotone_tail,
            "ratio_bounded": dg.ratio_bounded,
        },
    }


def report_from_json(data) -> AsymptoticReport:
    if isinstance(data, (bytes, str)):
        data = json.loads(data)
    rows = [
        Row(r["k"], r["lambda"], r["n_k"], _unq(r["ratio"]), _unq(r["eps_k"])) for r in data["rows"]
    ]
    dg = data["diagnostics"]
    diag = Diagnostics(
        dg["tau_hat"],
        None if dg["last_delta"] is None else _unq(dg["last_delta"]),
        dg["monotone_tail"],
        dg["ratio_bounded"],
    )
    return AsymptoticReport(data["d"], data["e"], data["gamma"], rows, data["method"], diag)


def emit(report: AsymptoticReport, fmt: str = "csv", extra: dict | None = None) -> bytes:
    """Serialise a report as csv, json or two-column plot data."""
    if fmt == "json":
        payload = report_to_dict(report)
        if extra:
            payload.update(extra)
        return (json.dumps(payload, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "lambda", "n_k", "ratio", "eps_k"])
        for r in report.rows:
            w.writerow([r.k, r.lam, r.n_k, _q(r.ratio), _q(r.eps)])
        for key, value in (extra or {}).items():
            buf.write(f"# {key}={json.dumps(value)}\n")
        return buf.getvalue().encode()
    if fmt == "plotdata":
        lines = [f"{r.k} {r.eps_decimal}" for r in report.rows]
        lines += [f"# {key}={json.dumps(value)}" for key, value in (extra or {}).items()]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


# -- commands --------------------------------------------------------------


class UsageError(ValueError):
    pass


def _saturate(job: JobSpec, check: bool) -> bytes:
    E1 = module_power(job.submodule(), 1)
    if job.target == "ideal":
        I = Ideal(job.ring, job.generators)
        N, n = saturate_colon(I, cap=job.cap or 64)
        if check and saturate_elim(I) != N:
            raise DualPathMismatch("saturate_colon and saturate_elim disagree")
        gens = [str(g) for g in N.generators]
        piece = GradedPiece(job.ring, 1, 1, [VecPoly(job.ring, [g]) for g in N.generators])
    else:
        piece, n = module_saturate(E1, job.cap)
        if check and torsion_h0(E1, job.cap)[0] != piece:
            raise DualPathMismatch("saturation in S and torsion in F disagree")
        gens = ["[" + ", ".join(str(c) for c in v.comps) + "]" for v in piece.gb.elements]
    length = quotient_length(piece, E1, n)
    payload = {"command": "saturate", "generators": gens, "n_stab": n, "length": length}
    if job.format == "json":
        return (json.dumps(payload, indent=2) + "\n").encode()
    if job.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["generator"])
        w.writerows([g] for g in gens)
        buf.write(f"# n_stab={n}\n# length={length}\n")
        return buf.getvalue().encode()
    raise UsageError("saturate supports csv and json output")


def _oracle_diff(job: JobSpec, workers: int) -> tuple:
    E = job.submodule()
    if not E.is_monomial():
        raise UsageError("oracle-diff needs a monomial ideal")
    K = job.K or 12
    rows = []
    ok = True
    for k in range(1, K + 1):
        g = groebner_row(E, k, cap=job.cap)
        o = oracle_row(E, k)
        rows.append({"k": k, "lambda_groebner": g[0], "lambda_oracle": o[0],
                     "n_groebner": g[1], "n_oracle": o[1], "match": g == o})
        ok &= g == o
    if job.format == "json":
        out = json.dumps({"command": "oracle-diff", "rows": rows, "agree": ok}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out = buf.getvalue()
    return out.encode(), ok


def execute(job: JobSpec, oracle: bool = False, check: bool = False, workers: int = 1) -> bytes:
    """Run a job and return its serialised output."""
    if job.command == "saturate":
        return _saturate(job, check)
    if job.command == "oracle-diff":
        out, ok = _oracle_diff(job, workers)
        if not ok:
            raise DualPathMismatch("Groebner and oracle sequences differ:\n" + out.decode())
        return out
    method = "oracle" if oracle else "groebner"
    report = run_sequence(job.submodule(), job.K, method=method, check=check, cap=job.cap, workers=workers)
    extra = {}
    if job.command == "epsilon":
        est = epsilon_estimate(report, job.tol)
        extra["epsilon"] = {
            "point": _q(est.point),
            "point_decimal": est.point_decimal,
            "bracket": [_q(est.bracket[0]), _q(est.bracket[1])],
            "converged": est.converged,
        }
    elif job.command == "tau-check":
        tc = tau_check(report)
        extra["tau_check"] = {
            "tau_hat": tc.tau_hat,
            "linear": tc.linear,
            "head_tau": tc.head_tau,
            "stable": tc.stable,
            "ratio_nonincreasing": tc.ratio_nonincreasing,
        }
    return emit(report, job.format, extra)


def _fail(kind: str, exc: Exception, code: int) -> int:
    info = {"error": kind, "message": str(exc)}
    if isinstance(exc, JobParseError) and exc.pos is not None:
        info.update(position=exc.pos, line=exc.line, column=exc.col)
    sys.stderr.write(json.dumps(info) + "\n")
    return code


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="satpow", description="Saturated powers and epsilon multiplicity.")
    sub = ap.add_subparsers(dest="mode", required=True)
    run = sub.add_parser("run", help="run a job file")
    run.add_argument("jobfile")
    ev = sub.add_parser("eval", help="run an inline job")
    ev.add_argument("job")
    for p in (run, ev):
        p.add_argument("--K", type=int)
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--tol", type=Fraction)
        p.add_argument("--cap", type=int)
        p.add_argument("--oracle", action="store_true", help="force the monomial fast path")
        p.add_argument("--check", action="store_true", help="verify with independent paths")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        text = open(args.jobfile, encoding="utf-8").read() if args.mode == "run" else args.job
        job = parse_job(text)
        overrides = {k: v for k, v in (("K", args.K), ("format", args.format),
                                       ("tol", args.tol), ("cap", args.cap)) if v is not None}
        job = replace(job, **overrides)
        if args.oracle and not job.submodule().is_monomial():
            raise UsageError("--oracle needs a monomial ideal")
    except (JobParseError, UsageError, OSError, ValueError) as exc:
        return _fail("parse", exc, 2)

    workers = int(os.environ.get("SATPOW_THREADS", "1") or 1)
    try:
        out = execute(job, oracle=args.oracle, check=args.check, workers=workers)
    except UsageError as exc:
        return _fail("usage", exc, 2)
    except AlgebraError as exc:
        return _fail("algebra", exc, 3)
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())

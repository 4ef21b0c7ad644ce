"""Sequence files and report serialisation.

SeqFile syntax::

    q=2 m=2 n=4
    0110
    1011

The header may carry ``mod=<digits>`` (comma separated base-p coefficients,
constant term first) to override the default field modulus.  For q <= 10
each row is a run of single-digit symbols; for larger q symbols are comma
separated integers.  Blank lines and lines starting with ``#`` are ignored.

Report CSV files are a sequence of sections.  Each section is a
``# <schema>`` line, a header row with the schema's fixed columns, data
rows, and a blank line.  Exact integers are written as decimal strings and
rationals as numerator/denominator column pairs.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable

from .census import (
    BoundFitReport,
    DeviationTable,
    DistributionTable,
    ExpectationRecord,
    MCEstimate,
    center,
)
from .field import FieldError, field_make
from .lfsr import Multisequence

SCHEMAS: dict[str, tuple[str, ...]] = {
    "distribution": ("q", "m", "n", "L", "count"),
    "deviation": ("q", "m", "n", "delta", "count"),
    "expectation": ("q", "m", "n", "e_num", "e_den", "e_float", "ceil_term", "residual_num", "residual_den"),
    "bounds": ("q", "m", "n", "c_combined_num", "c_combined_den", "c_zdelta_num", "c_zdelta_den", "lemma2_ok"),
    "polytope": ("m", "L", "H", "rho", "M", "bound", "ok"),
    "vertices": ("m", "L", "H", "nu", "coords"),
    "functional_max": ("m", "L", "value", "argmax"),
    "montecarlo": ("q", "m", "n", "samples", "seed", "mean", "stderr"),
}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {message}")


# -- SeqFile ------------------------------------------------------------------


def _parse_header(text: str, lineno: int) -> dict[str, str]:
    fields: dict[str, str] = {}
    col = 1
    for token in text.split():
        col = text.index(token, col - 1) + 1
        key, sep, value = token.partition("=")
        if not sep or key not in ("q", "m", "n", "mod"):
            raise ParseError(f"unexpected header token {token!r}", lineno, col)
        if key in fields:
            raise ParseError(f"duplicate header key {key!r}", lineno, col)
        fields[key] = value
    for key in ("q", "m", "n"):
        if key not in fields:
            raise ParseError(f"header is missing {key}=", lineno)
        if not fields[key].isdigit():
            raise ParseError(f"{key} must be a nonnegative integer", lineno)
    return fields


def parse_modulus(text: str) -> tuple[int, ...]:
    return tuple(int(d) for d in text.split(","))


def parse_seqfile(text: str, modulus: tuple[int, ...] | None = None) -> Multisequence:
    lines = [
        (k, line.rstrip("\r\n"))
        for k, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty sequence file", 1)
    head_no, head = lines[0]
    fields = _parse_header(head, head_no)
    q, m, n = int(fields["q"]), int(fields["m"]), int(fields["n"])
    if "mod" in fields:
        try:
            modulus = parse_modulus(fields["mod"])
        except ValueError:
            raise ParseError("mod= must be comma separated integers", head_no) from None
    if m < 1:
        raise ParseError("m must be at least 1", head_no)
    fld = field_make(q, modulus)
    body = lines[1:]
    if n == 0 and not body:
        return Multisequence.zeros(fld, m, 0)
    if len(body) != m:
        raise ParseError(f"expected {m} rows, found {len(body)}", body[-1][0] if body else head_no)
    rows = []
    for r, (lineno, line) in enumerate(body, start=1):
        stripped = line.strip()
        offset = line.index(stripped[0]) if stripped else 0
        if q <= 10:
            tokens = [(offset + k + 1, ch) for k, ch in enumerate(stripped)]
        else:
            tokens, col = [], offset + 1
            for tok in stripped.split(","):
                tokens.append((col, tok.strip()))
                col += len(tok) + 1
        row = []
        for pos, (col, tok) in enumerate(tokens, start=1):
            if not tok.isdigit():
                raise ParseError(f"row {r}: {tok!r} is not a symbol", lineno, col)
            v = int(tok)
            if v >= q:
                raise FieldError(f"row {r}, position {pos} (line {lineno}, column {col}): symbol {v} outside [0, {q})")
            row.append(v)
        if len(row) != n:
            raise ParseError(f"row {r} has {len(row)} symbols, expected {n}", lineno)
        rows.append(row)
    return Multisequence.from_rows(fld, rows)


def format_seqfile(t: Multisequence) -> str:
    head = f"q={t.field.q} m={t.m} n={t.n}"
    if t.field.modulus is not None:
        head += " mod=" + ",".join(map(str, t.field.modulus))
    sep = "" if t.field.q <= 10 else ","
    return "\n".join([head] + [sep.join(map(str, row)) for row in t.rows]) + "\n"


# -- census reports -------------------------------------------------------------


def census_rows(t: DistributionTable, e: ExpectationRecord, z: DeviationTable, b: BoundFitReport):
    """Rows of every schema for one census cell, as lists of strings."""
    key = [str(t.q), str(t.m), str(t.n)]
    return {
        "distribution": [key + [str(L), str(c)] for L, c in enumerate(t.counts)],
        "expectation": [
            key
            + [
                str(e.e_exact.numerator),
                str(e.e_exact.denominator),
                repr(float(e.e_exact)),
                str(e.ceil_term),
                str(e.residual.numerator),
                str(e.residual.denominator),
            ]
        ],
        "deviation": [key + [str(d), str(c)] for d, c in sorted(z.zcounts.items())],
        "bounds": [
            key
            + [
                str(b.c_combined.numerator),
                str(b.c_combined.denominator),
                str(b.c_zdelta.numerator),
                str(b.c_zdelta.denominator),
                str(b.c_lemma2_ok).lower(),
            ]
        ],
    }


def write_sections(sections: Iterable[tuple[str, list[list[str]]]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for schema, rows in sections:
        buf.write(f"# {schema}\n")
        writer.writerow(SCHEMAS[schema])
        writer.writerows(rows)
        buf.write("\n")
    return buf.getvalue()


def read_sections(text: str) -> list[tuple[str, list[dict[str, str]]]]:
    out: list[tuple[str, list[dict[str, str]]]] = []
    lines = text.splitlines()
    k = 0
    while k < len(lines):
        line = lines[k]
        if not line.strip():
            k += 1
            continue
        if not line.startswith("# "):
            raise ParseError("expected a '# <schema>' section marker", k + 1)
        schema = line[2:].strip()
        if schema not in SCHEMAS:
            raise ParseError(f"unknown schema {schema!r}", k + 1, 3)
        end = k + 1
        while end < len(lines) and lines[end].strip():
            end += 1
        reader = csv.reader(lines[k + 1 : end])
        header = next(reader, None)
        if tuple(header or ()) != SCHEMAS[schema]:
            raise ParseError(f"header does not match schema {schema}", k + 2)
        out.append((schema, [dict(zip(header, row)) for row in reader]))
        k = end
    return out


def census_csv(cells) -> str:
    sections = []
    for cell in cells:
        rows = census_rows(*cell)
        sections.extend((schema, rows[schema]) for schema in ("distribution", "expectation", "deviation", "bounds"))
    return write_sections(sections)


def parse_census_csv(text: str):
    """Inverse of :func:`census_csv`: list of (table, expectation, deviation, bounds)."""
    cells = []
    current: dict[str, list[dict[str, str]]] = {}
    for schema, rows in read_sections(text):
        current[schema] = rows
        if schema == "bounds":
            cells.append(_cell_from_rows(current))
            current = {}
    return cells


def _cell_from_rows(sections):
    dist = sections["distribution"]
    q, m, n = (int(dist[0][k]) for k in ("q", "m", "n"))
    t = DistributionTable(q, m, n, tuple(int(r["count"]) for r in sorted(dist, key=lambda r: int(r["L"]))))
    er = sections["expectation"][0]
    e = ExpectationRecord(
        q,
        m,
        n,
        Fraction(int(er["e_num"]), int(er["e_den"])),
        int(er["ceil_term"]),
        Fraction(int(er["residual_num"]), int(er["residual_den"])),
    )
    z = DeviationTable(q, m, n, center(m, n), {int(r["delta"]): int(r["count"]) for r in sections["deviation"]})
    br = sections["bounds"][0]
    b = BoundFitReport(
        q,
        m,
        n,
        br["lemma2_ok"] == "true",
        Fraction(int(br["c_combined_num"]), int(br["c_combined_den"])),
        Fraction(int(br["c_zdelta_num"]), int(br["c_zdelta_den"])),
    )
    return t, e, z, b


def _rational(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator), "float": float(x)}


def census_json(cells) -> str:
    blocks = []
    for t, e, z, b in cells:
        blocks.append(
            {
                "q": t.q,
                "m": t.m,
                "n": t.n,
                "distribution": [{"L": L, "count": str(c)} for L, c in enumerate(t.counts)],
                "expectation": {
                    "e_exact": _rational(e.e_exact),
                    "ceil_term": e.ceil_term,
                    "residual": _rational(e.residual),
                },
                "deviation": {"center": z.center, "zcounts": [{"delta": d, "count": str(c)} for d, c in sorted(z.zcounts.items())]},
                "bounds": {
                    "lemma2_ok": b.c_lemma2_ok,
                    "c_combined": _rational(b.c_combined),
                    "c_zdelta": _rational(b.c_zdelta),
                },
            }
        )
    return json.dumps(blocks, indent=2) + "\n"


def parse_census_json(text: str):
    def rat(d):
        return Fraction(int(d["num"]), int(d["den"]))

    cells = []
    for blk in json.loads(text):
        q, m, n = blk["q"], blk["m"], blk["n"]
        t = DistributionTable(q, m, n, tuple(int(r["count"]) for r in blk["distribution"]))
        ex = blk["expectation"]
        e = ExpectationRecord(q, m, n, rat(ex["e_exact"]), ex["ceil_term"], rat(ex["residual"]))
        dv = blk["deviation"]
        z = DeviationTable(q, m, n, dv["center"], {r["delta"]: int(r["count"]) for r in dv["zcounts"]})
        bd = blk["bounds"]
        b = BoundFitReport(q, m, n, bd["lemma2_ok"], rat(bd["c_combined"]), rat(bd["c_zdelta"]))
        cells.append((t, e, z, b))
    return cells


def census_table(cells) -> str:
    out = []
    for t, e, z, b in cells:
        out.append(f"q={t.q} m={t.m} n={t.n}")
        out.append("  L      count")
        out.extend(f"  {L:<6d} {c}" for L, c in enumerate(t.counts))
        out.append(f"  E = {e.e_exact} ~ {float(e.e_exact):.6f}   ceil = {e.ceil_term}   residual = {float(e.residual):+.6f}")
        out.append(
            f"  lemma2 {'ok' if b.c_lemma2_ok else 'VIOLATED'}   "
            f"c_combined = {b.c_combined} ~ {float(b.c_combined):.6f}   "
            f"c_zdelta = {b.c_zdelta} ~ {float(b.c_zdelta):.6f}"
        )
        out.append("")
    return "\n".join(out)


def mc_rows(est: MCEstimate) -> list[list[str]]:
    return [[str(est.q), str(est.m), str(est.n), str(est.samples), str(est.seed), repr(est.mean), repr(est.stderr)]]


def parse_mc_csv(text: str) -> MCEstimate:
    (schema, rows), = read_sections(text)
    r = rows[0]
    return MCEstimate(
        int(r["q"]), int(r["m"]), int(r["n"]), int(r["samples"]), int(r["seed"]), float(r["mean"]), float(r["stderr"])
    )

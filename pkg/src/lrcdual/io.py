"""Text formats: code files, table specs, CSV/markdown tables."""

from __future__ import annotations

import csv
import io as _io
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .bounds import METHOD_ALIASES, METHODS, BoundResult, LrcParams
from .code import LinearCode
from .gf import field_new
from .linalg import Matrix, dependent_row

CSV_HEADER = ("q", "n", "d", "r", "method", "k_bound", "status")
MARKDOWN_COLUMNS = (("lp", "LP"), ("sh_lp", "SH with LP"), ("sh_exact", "SH exact"), ("gen_singleton", "gen. Singl."))
BUNDLED_SPECS = ("table1", "table2", "table3", "table4")


class FormatError(ValueError):
    pass


# Code files: header "q n k", then k rows of n symbols.

def parse_code(text: str, source: str = "<code>") -> LinearCode:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError(f"{source}: empty code file")
    try:
        q, n, k = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError(f"{source}: header must be 'q n k', got {lines[0]!r}") from None
    try:
        F = field_new(q)
    except ValueError as exc:
        raise FormatError(f"{source}: {exc}") from None
    body = lines[1:]
    if len(body) != k:
        raise FormatError(f"{source}: header promises {k} rows, found {len(body)}")
    rows = []
    for idx, ln in enumerate(body, 1):
        try:
            vals = [int(x) for x in ln.split()]
        except ValueError:
            raise FormatError(f"{source}: row {idx} has a non-integer entry") from None
        if len(vals) != n:
            raise FormatError(f"{source}: row {idx} has {len(vals)} entries, expected {n}")
        if any(not 0 <= v < q for v in vals):
            raise FormatError(f"{source}: row {idx} has an entry outside [0, {q - 1}]")
        rows.append(vals)
    if k < 1 or n < 1:
        raise FormatError(f"{source}: need k >= 1 and n >= 1")
    G = Matrix(F, np.array(rows, dtype=np.int64))
    bad = dependent_row(G)
    if bad is not None:
        raise FormatError(f"{source}: row {bad + 1} is linearly dependent on the rows above it (rank < {k})")
    return LinearCode(F, G)


def read_code(path: str | Path) -> LinearCode:
    path = Path(path)
    return parse_code(path.read_text(), str(path))


def format_code(code: LinearCode) -> str:
    lines = [f"{code.field.q} {code.n} {code.k}"]
    lines += [" ".join(str(v) for v in row) for row in code.G.tolist()]
    return "\n".join(lines) + "\n"


# Table specs.

@dataclass
class TableSpec:
    rows: list[LrcParams] = field(default_factory=list)
    methods: list[str] = field(default_factory=lambda: ["lp", "sh_lp", "sh_exact", "gen_singleton"])
    format: str = "markdown"


def normalize_methods(raw: str | list[str]) -> list[str]:
    items = raw.split(",") if isinstance(raw, str) else list(raw)
    out = []
    for m in items:
        m = m.strip()
        if not m:
            continue
        m = METHOD_ALIASES.get(m, m)
        if m not in METHODS:
            raise FormatError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
        out.append(m)
    return out


def parse_table_spec(text: str, source: str = "<spec>") -> TableSpec:
    """Lines ``q n d r``; optional ``methods: ...`` and ``format: ...`` directives; ``#`` comments."""
    spec = TableSpec()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" in line:
            key, _, value = (s.strip() for s in line.partition(":"))
            if key == "methods":
                spec.methods = normalize_methods(value)
            elif key == "format":
                if value not in ("csv", "markdown"):
                    raise FormatError(f"{source}:{lineno}: format must be csv or markdown")
                spec.format = value
            else:
                raise FormatError(f"{source}:{lineno}: unknown directive {key!r}")
            continue
        try:
            q, n, d, r = (int(x) for x in line.split())
        except ValueError:
            raise FormatError(f"{source}:{lineno}: expected 'q n d r', got {raw!r}") from None
        try:
            spec.rows.append(LrcParams(q, n, d, r))
        except ValueError as exc:
            raise FormatError(f"{source}:{lineno}: {exc}") from None
    return spec


def load_table_spec(name_or_path: str) -> TableSpec:
    if name_or_path in BUNDLED_SPECS:
        text = resources.files("lrcdual.data").joinpath(f"{name_or_path}.txt").read_text()
        return parse_table_spec(text, name_or_path)
    path = Path(name_or_path)
    return parse_table_spec(path.read_text(), str(path))


# Rendering.

def cell_text(res: BoundResult | Exception | None) -> str:
    if res is None:
        return ""
    if isinstance(res, Exception):
        return "ERR"
    if res.status == "ok":
        return str(res.value)
    return "n/a" if res.status == "unavailable" else res.status


def render_csv(rows: list[tuple[LrcParams, dict[str, BoundResult | Exception]]], methods: list[str]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p, results in rows:
        for m in methods:
            res = results.get(m)
            if isinstance(res, Exception):
                value, status = "", "error"
            else:
                value = "" if res.value is None else str(res.value)
                status = res.status
            w.writerow((p.q, p.n, p.d, p.r, m, value, status))
    return buf.getvalue()


def parse_csv(text: str) -> list[tuple[int, int, int, int, str, int | None, str]]:
    reader = csv.reader(_io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise FormatError(f"unexpected CSV header {header}")
    out = []
    for row in reader:
        q, n, d, r, method, value, status = row
        out.append((int(q), int(n), int(d), int(r), method, int(value) if value else None, status))
    return out


def render_markdown(rows: list[tuple[LrcParams, dict[str, BoundResult | Exception]]], methods: list[str]) -> str:
    labels = dict(MARKDOWN_COLUMNS)
    labels["dual_distance"] = "dual dist."
    paper_order = [m for m, _ in MARKDOWN_COLUMNS]
    ordered = [m for m in paper_order if m in methods] + [m for m in methods if m not in paper_order]
    header = ["q", "n", "d", "r"] + [labels.get(m, m) for m in ordered]
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for p, results in rows:
        cells = [str(p.q), str(p.n), str(p.d), str(p.r)]
        for m in ordered:
            res = results.get(m)
            text = cell_text(res)
            if isinstance(res, BoundResult) and res.status == "ok" and m != "dual_distance":
                text = f"k <= {text}"
            cells.append(text)
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"

"""Columnar file geometry and scan planning with predicate pushdown.

A table is laid out as one object whose columns are stored as runs of
fixed-size pages. A scan turns into one ranged read per needed page;
with pushdown enabled, later predicate columns and the projection only
read pages that still contain surviving rows.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .units import ceil_div, exact_fraction, parse_bytes

_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


@dataclass(frozen=True)
class Page:
    """One page of one column: a row range mapped to a byte range."""

    start_row: int
    rows: int
    offset: int
    length: int


@dataclass(frozen=True)
class Column:
    name: str
    value_bytes: int
    pages: tuple[Page, ...]


@dataclass(frozen=True)
class TableLayout:
    table: str
    rows: int
    columns: tuple[Column, ...]

    def column(self, name: str) -> Column:
        for col in self.columns:
            if col.name == name:
                return col
        known = ", ".join(c.name for c in self.columns)
        raise ValueError(f"unknown column {name!r} (table {self.table!r} has: {known})")


def build_layout(rows: int, columns, table: str = "t") -> TableLayout:
    """Pack columns greedily into pages.

    ``columns`` is a sequence of (name, page_bytes, value_bytes).
    Each page holds floor(page_bytes / value_bytes) rows, the last page
    of a column may be partial. Columns are laid out back to back in
    one file object.
    """
    if rows < 1:
        raise ValueError(f"row count must be >= 1, got {rows}")
    specs = list(columns)
    if not specs:
        raise ValueError("layout needs at least one column")
    names = [name for name, _, _ in specs]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate column names in layout: {names}")
    built = []
    offset = 0
    for name, page_bytes, value_bytes in specs:
        if not name:
            raise ValueError("column name must be non-empty")
        if value_bytes < 1:
            raise ValueError(f"column {name!r}: value_bytes must be >= 1, got {value_bytes}")
        if page_bytes < value_bytes:
            raise ValueError(
                f"column {name!r}: page_bytes {page_bytes} smaller than value_bytes {value_bytes}"
            )
        rows_per_page = page_bytes // value_bytes
        pages = []
        start = 0
        while start < rows:
            n = min(rows_per_page, rows - start)
            pages.append(Page(start_row=start, rows=n, offset=offset, length=n * value_bytes))
            offset += n * value_bytes
            start += n
        built.append(Column(name=name, value_bytes=value_bytes, pages=tuple(pages)))
    return TableLayout(table=table, rows=rows, columns=tuple(built))


@dataclass(frozen=True)
class Predicate:
    """A comparison of one column against an integer literal."""

    column: str
    op: str
    literal: int

    def __post_init__(self) -> None:
        if self.op not in _OPS:
            raise ValueError(f"unknown comparator {self.op!r} (supported: {sorted(_OPS)})")

    def matches(self, value: int) -> bool:
        return _OPS[self.op](value, self.literal)


def apply_predicate(values, pred: Predicate, candidates) -> set[int]:
    """Rows among ``candidates`` whose value satisfies the predicate."""
    result = set()
    n = len(values)
    for row in candidates:
        if not 0 <= row < n:
            raise ValueError(f"candidate row {row} out of range for {n} rows")
        if pred.matches(values[row]):
            result.add(row)
    return result


def pages_for_rows(layout: TableLayout, column: str, rows) -> set[int]:
    """Page ids of ``column`` whose row ranges intersect ``rows``."""
    col = layout.column(column)
    needed = set()
    for row in rows:
        if not 0 <= row < layout.rows:
            raise ValueError(f"row index {row} out of range for table with {layout.rows} rows")
        # Pages are packed uniformly except the last, so the page id is
        # a direct division by the full-page row count.
        per_page = col.pages[0].rows
        needed.add(min(row // per_page, len(col.pages) - 1))
    return needed


@dataclass(frozen=True)
class ReadRequest:
    """One ranged read against the table object."""

    obj: str
    offset: int
    length: int
    labels: tuple[str, ...]


@dataclass(frozen=True)
class ScanPlan:
    """The ranged reads a scan issues, plus the surviving row set."""

    requests: tuple[ReadRequest, ...]
    survivors: frozenset[int]
    request_count: int
    total_bytes: int

    def __post_init__(self) -> None:
        if self.request_count != len(self.requests):
            raise ValueError("request_count does not match the request list")
        if self.total_bytes != sum(r.length for r in self.requests):
            raise ValueError("total_bytes does not match the request list")

    @classmethod
    def make(cls, requests, survivors) -> "ScanPlan":
        requests = tuple(requests)
        return cls(
            requests=requests,
            survivors=frozenset(survivors),
            request_count=len(requests),
            total_bytes=sum(r.length for r in requests),
        )


def _check_scan_inputs(layout: TableLayout, data, projection, predicates) -> list[str]:
    referenced = []
    for name in [p.column for p in predicates] + list(projection):
        if name not in referenced:
            referenced.append(name)
    if not referenced:
        raise ValueError("scan references no columns (empty projection with no predicates)")
    for name in referenced:
        layout.column(name)
        if name not in data:
            raise ValueError(f"no data supplied for column {name!r}")
        if len(data[name]) != layout.rows:
            raise ValueError(
                f"column {name!r} has {len(data[name])} values for {layout.rows} rows"
            )
    return referenced


def plan_scan(layout: TableLayout, data, projection, predicates, pushdown: bool = True) -> ScanPlan:
    """Plan a scan, either with predicate pushdown or as a full scan.

    Pushdown reads every page of the first predicate column, then for
    each later predicate and for the projection only the pages that
    intersect the surviving rows. A full scan reads every page of every
    referenced column. Both modes compute identical survivor sets.
    """
    referenced = _check_scan_inputs(layout, data, projection, predicates)

    survivors = set(range(layout.rows))
    read: dict[str, set[int]] = {name: set() for name in referenced}
    requests: list[ReadRequest] = []

    def add_pages(name: str, page_ids) -> None:
        col = layout.column(name)
        new = sorted(set(page_ids) - read[name])
        for pid in new:
            page = col.pages[pid]
            requests.append(
                ReadRequest(obj=layout.table, offset=page.offset, length=page.length,
                            labels=(f"{name}/p{pid}",))
            )
        read[name].update(new)

    if pushdown:
        for i, pred in enumerate(predicates):
            if i == 0:
                needed = range(len(layout.column(pred.column).pages))
            else:
                needed = pages_for_rows(layout, pred.column, survivors)
            add_pages(pred.column, needed)
            survivors = apply_predicate(data[pred.column], pred, survivors)
        for name in projection:
            add_pages(name, pages_for_rows(layout, name, survivors))
    else:
        for name in referenced:
            add_pages(name, range(len(layout.column(name).pages)))
        for pred in predicates:
            survivors = apply_predicate(data[pred.column], pred, survivors)

    return ScanPlan.make(requests, survivors)


def coalesce_requests(plan: ScanPlan, max_gap: int) -> ScanPlan:
    """Merge adjacent requests on the same object when the gap is small.

    Gap bytes are counted as transferred, so merging trades bytes for
    request count. Requests shrink or stay equal in number, bytes grow
    or stay equal, survivors are untouched.
    """
    if max_gap < 0:
        raise ValueError(f"max gap must be >= 0, got {max_gap}")
    order: list[str] = []
    grouped: dict[str, list[ReadRequest]] = {}
    for req in plan.requests:
        if req.obj not in grouped:
            grouped[req.obj] = []
            order.append(req.obj)
        grouped[req.obj].append(req)
    merged: list[ReadRequest] = []
    for obj in order:
        run: ReadRequest | None = None
        for req in sorted(grouped[obj], key=lambda r: (r.offset, r.length)):
            if run is not None and req.offset - (run.offset + run.length) <= max_gap:
                end = max(run.offset + run.length, req.offset + req.length)
                run = ReadRequest(obj=obj, offset=run.offset, length=end - run.offset,
                                  labels=run.labels + req.labels)
            else:
                if run is not None:
                    merged.append(run)
                run = req
        if run is not None:
            merged.append(run)
    return ScanPlan.make(merged, plan.survivors)


@dataclass(frozen=True)
class FleetScanComparison:
    """Daily fleet-level request and byte totals, pushdown vs. full scan."""

    pushdown_bytes: int
    pushdown_requests: int
    full_scan_bytes: int
    full_scan_requests: int


def fleet_scan_projection(
    daily_bytes: int,
    avg_request_bytes: int,
    inflation: float | int | Fraction,
    page_bytes: int,
) -> FleetScanComparison:
    """Fleet-level projection of scan traffic with and without pushdown.

    With pushdown the fleet moves ``daily_bytes`` in reads averaging
    ``avg_request_bytes``. Without it, scans read ``inflation`` times
    as many bytes, but in full pages, so requests are counted at
    ``page_bytes`` apiece.
    """
    if daily_bytes <= 0:
        raise ValueError(f"daily bytes must be > 0, got {daily_bytes}")
    if avg_request_bytes <= 0:
        raise ValueError(f"average request bytes must be > 0, got {avg_request_bytes}")
    if page_bytes <= 0:
        raise ValueError(f"page bytes must be > 0, got {page_bytes}")
    factor = exact_fraction(inflation)
    if factor <= 0:
        raise ValueError(f"inflation factor must be > 0, got {inflation}")
    full_bytes = int(factor * daily_bytes)
    return FleetScanComparison(
        pushdown_bytes=daily_bytes,
        pushdown_requests=ceil_div(daily_bytes, avg_request_bytes),
        full_scan_bytes=full_bytes,
        full_scan_requests=ceil_div(full_bytes, page_bytes),
    )


def synthesize_column_data(layout: TableLayout, seed: int, low: int = 0, high: int = 100) -> dict:
    """Deterministic integer column data for a layout.

    Values are uniform over [low, high), drawn column by column in
    layout order, so predicates with literals in that range have
    predictable selectivity.
    """
    rng = np.random.default_rng(seed)
    return {
        col.name: rng.integers(low, high, size=layout.rows).tolist()
        for col in layout.columns
    }


def layout_from_dict(spec: dict) -> TableLayout:
    """Build a layout from its JSON form.

    Schema: {"table": str, "rows": int, "columns": [{"name": str,
    "page_bytes": int, "value_bytes": int}]}. Byte fields also accept
    decimal-suffix strings such as "1MB".
    """
    if not isinstance(spec, dict):
        raise ValueError(f"layout must be a JSON object, got {type(spec).__name__}")
    table = spec.get("table")
    if not isinstance(table, str) or not table:
        raise ValueError("layout field 'table' must be a non-empty string")
    rows = spec.get("rows")
    if not isinstance(rows, int) or isinstance(rows, bool):
        raise ValueError(f"layout field 'rows' must be an integer, got {rows!r}")
    raw_columns = spec.get("columns")
    if not isinstance(raw_columns, list) or not raw_columns:
        raise ValueError("layout field 'columns' must be a non-empty array")
    columns = []
    for i, raw in enumerate(raw_columns):
        if not isinstance(raw, dict):
            raise ValueError(f"layout columns[{i}] must be an object")
        name = raw.get("name")
        if not isinstance(name, str) or not name:
            raise ValueError(f"layout columns[{i}].name must be a non-empty string")
        try:
            page_bytes = parse_bytes(raw["page_bytes"])
            value_bytes = parse_bytes(raw["value_bytes"])
        except KeyError as exc:
            raise ValueError(f"layout columns[{i}] is missing field {exc.args[0]!r}") from None
        columns.append((name, page_bytes, value_bytes))
    return build_layout(rows, columns, table=table)


def query_from_dict(spec: dict):
    """Parse a query's JSON form into (projection, predicates, pushdown).

    Schema: {"select": [str...], "where": [{"col": str, "op": str,
    "lit": int}], "pushdown": bool}. "where" defaults to no predicates
    and "pushdown" to true.
    """
    if not isinstance(spec, dict):
        raise ValueError(f"query must be a JSON object, got {type(spec).__name__}")
    select = spec.get("select", [])
    if not isinstance(select, list) or not all(isinstance(s, str) for s in select):
        raise ValueError("query field 'select' must be an array of column names")
    raw_where = spec.get("where", [])
    if not isinstance(raw_where, list):
        raise ValueError("query field 'where' must be an array")
    predicates = []
    for i, raw in enumerate(raw_where):
        if not isinstance(raw, dict):
            raise ValueError(f"query where[{i}] must be an object")
        col = raw.get("col")
        if not isinstance(col, str) or not col:
            raise ValueError(f"query where[{i}].col must be a non-empty string")
        lit = raw.get("lit")
        if not isinstance(lit, int) or isinstance(lit, bool):
            raise ValueError(f"query where[{i}].lit must be an integer, got {lit!r}")
        op = raw.get("op")
        if op not in _OPS:
            raise ValueError(f"query where[{i}].op must be one of {sorted(_OPS)}, got {op!r}")
        predicates.append(Predicate(column=col, op=op, literal=lit))
    pushdown = spec.get("pushdown", True)
    if not isinstance(pushdown, bool):
        raise ValueError(f"query field 'pushdown' must be a boolean, got {pushdown!r}")
    return select, predicates, pushdown


def load_layout(path: str) -> TableLayout:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"layout file {path}: invalid JSON ({exc})") from None
    return layout_from_dict(spec)


def load_query(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            spec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"query file {path}: invalid JSON ({exc})") from None
    return query_from_dict(spec)

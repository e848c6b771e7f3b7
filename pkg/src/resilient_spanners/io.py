"""Edge-list files and JSON reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path as FsPath
from typing import Optional

from .graph import INF, Graph, GraphError, _exact_weight

SCHEMA_VERSION = 1


class ParseError(GraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message, line)
        self.line = line


# ---------------------------------------------------------------------------
# Edge lists
# ---------------------------------------------------------------------------


def format_number(x) -> str:
    """Exact text form: integers plainly, terminating fractions as decimals, others as ``p/q``."""
    if x is INF:
        return "inf"
    if isinstance(x, int):
        return str(x)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10**digits
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(int(scaled)), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def parse_edge_list(text: str) -> tuple[Graph, dict]:
    """Parse ``u v [w]`` lines; returns the graph and ``key=value`` metadata from comments.

    An optional ``n <count>`` header fixes the vertex count, otherwise it is
    one more than the largest vertex id.  Comment lines start with ``#``.
    """
    n: Optional[int] = None
    meta: dict = {}
    items: list[tuple[int, tuple]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    meta[k] = v
            continue
        parts = line.split()
        if parts[0] == "n":
            if n is not None or items:
                raise ParseError("header 'n <count>' must come first and only once", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"malformed header {line!r}", lineno)
            n = int(parts[1])
            continue
        if len(parts) not in (2, 3):
            raise ParseError(f"expected 'u v' or 'u v w', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"vertex ids must be integers in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"vertex ids must be non-negative in {line!r}", lineno)
        try:
            w = _exact_weight(parts[2]) if len(parts) == 3 else 1
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
        items.append((lineno, (u, v, w)))
    if n is None:
        n = 1 + max((max(u, v) for _, (u, v, _) in items), default=-1)
    # validate edge by edge so errors carry the line number
    seen: set = set()
    for lineno, (u, v, w) in items:
        key = (min(u, v), max(u, v))
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if max(u, v) >= n:
            raise ParseError(f"vertex {max(u, v)} out of range [0, {n})", lineno)
        if w <= 0:
            raise ParseError(f"non-positive weight {w}", lineno)
        if key in seen:
            raise ParseError(f"duplicate edge {key}", lineno)
        seen.add(key)
    return Graph(n, [it for _, it in items]), meta


def serialize_edge_list(g: Graph, meta: Optional[dict] = None) -> str:
    lines = []
    if meta:
        lines.append("# " + " ".join(f"{k}={meta[k]}" for k in sorted(meta)))
    lines.append(f"n {g.n}")
    for (u, v, w) in g.weighted_edges():
        lines.append(f"{u} {v}" if g.is_unit else f"{u} {v} {format_number(w)}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> tuple[Graph, dict]:
    return parse_edge_list(FsPath(path).read_text())


def write_graph(path, g: Graph, meta: Optional[dict] = None) -> None:
    FsPath(path).write_text(serialize_edge_list(g, meta))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def edge_key(e) -> str:
    return f"{e[0]}-{e[1]}"


def jsonable(x):
    """Convert graph values into plain JSON types (``INF`` becomes ``"inf"``)."""
    if x is INF:
        return "inf"
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    if isinstance(x, dict):
        return {(edge_key(k) if isinstance(k, tuple) else str(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if hasattr(x, "__dataclass_fields__"):
        return jsonable(asdict(x))
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class Report:
    """Result record of one CLI operation or experiment.

    All fields are normalized to JSON types on construction, so
    ``parse_report(emit_report(r)) == r``.  Only ``timings`` may differ
    between otherwise identical runs.
    """

    operation: str
    input: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    sizes: dict = field(default_factory=dict)
    fragility_histogram: dict = field(default_factory=dict)
    partition: dict = field(default_factory=dict)
    cycle_stats: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def __post_init__(self):
        for f in fields(self):
            if f.name not in ("operation", "schema_version"):
                setattr(self, f.name, jsonable(getattr(self, f.name)))

    def without_timings(self) -> dict:
        d = asdict(self)
        d.pop("timings")
        return d


def emit_report(report: Report) -> str:
    return json.dumps(asdict(report), sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> Report:
    data = json.loads(text)
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported report schema version {version!r}")
    return Report(**data)

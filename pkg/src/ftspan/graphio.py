"""Plain-text edge-list format.

Header line "n m", then m lines "u v w" with whitespace separation and a
decimal weight.  Writing uses repr() so weights survive a round trip
bit-exactly.
"""

from __future__ import annotations

import math

from .graph import WeightedGraph, normalize


def write_graph(g: WeightedGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    for e in g.edges:
        lines.append(f"{e.u} {e.v} {e.weight!r}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> WeightedGraph:
    """Parse the edge-list format; malformed input reports its line number."""
    lines = text.splitlines()
    header_idx = None
    for i, line in enumerate(lines):
        if line.strip():
            header_idx = i
            break
    if header_idx is None:
        raise ValueError("empty graph file")
    header = lines[header_idx].split()
    if len(header) != 2:
        raise ValueError(f"line {header_idx + 1}: header must be 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError(f"line {header_idx + 1}: header must hold two integers") from None
    if n < 0 or m < 0:
        raise ValueError(f"line {header_idx + 1}: negative counts in header")

    raw = []
    for i in range(header_idx + 1, len(lines)):
        line = lines[i].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {i + 1}: expected 'u v w', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = float(parts[2])
        except ValueError:
            raise ValueError(f"line {i + 1}: cannot parse edge {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {i + 1}: vertex out of range for n={n}")
        if math.isnan(w) or math.isinf(w) or w < 0:
            raise ValueError(f"line {i + 1}: weight must be finite and non-negative")
        raw.append((u, v, w))
    if len(raw) != m:
        raise ValueError(f"edge count mismatch: header says {m}, found {len(raw)}")
    return normalize(raw, n)


def read_graph_file(path: str) -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph_file(g: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_graph(g))

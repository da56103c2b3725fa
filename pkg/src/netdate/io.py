"""CSV file formats for graphs, estimates and experiment outputs.

All files are headered CSV with '.'-decimal numeric fields.  Floats are
written with full round-trip precision, so write-then-parse reproduces
the exact same values.  Vertex ids are raw nonnegative integers; gaps
in the id range parse as isolated vertices unless compaction is
requested explicitly.
"""

from __future__ import annotations

import csv

import numpy as np

from .model import TimestampedGraph

EDGE_HEADER = ["src", "dst", "date"]
ESTIMATE_HEADER = ["node", "z_local", "z_model"]
TRUTH_HEADER = ["node", "z_true"]
CURVE_HEADER = ["edges_per_vertex", "smoothed_improvement"]


class EdgeListParseError(ValueError):
    """Malformed edge-list input; the message carries line numbers."""


def _open_maybe(source, mode):
    if hasattr(source, "read") or hasattr(source, "write"):
        return source, False
    return open(source, mode, newline=""), True


def parse_edge_list(source, compact_ids=False):
    """Read an edge-list CSV into a :class:`TimestampedGraph`.

    The file starts with the header ``src,dst,date`` and carries one
    edge per row.  The vertex count is ``1 + max id``; with
    ``compact_ids=True`` the distinct ids are instead relabeled to
    ``0..k-1`` in ascending order.  Self-loops, repeated pairs (both
    line numbers are reported), non-numeric fields and non-finite dates
    raise :class:`EdgeListParseError` naming the offending line.
    """
    stream, owned = _open_maybe(source, "r")
    try:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise EdgeListParseError("line 1: missing header 'src,dst,date'")
        if [h.strip() for h in header] != EDGE_HEADER:
            raise EdgeListParseError(
                f"line 1: expected header 'src,dst,date', got {','.join(header)!r}"
            )
        edges = []
        seen = {}
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise EdgeListParseError(
                    f"line {lineno}: expected 3 fields, got {len(row)}"
                )
            try:
                i, j = int(row[0]), int(row[1])
            except ValueError:
                raise EdgeListParseError(
                    f"line {lineno}: vertex ids must be integers, got "
                    f"{row[0]!r}, {row[1]!r}"
                ) from None
            try:
                date = float(row[2])
            except ValueError:
                raise EdgeListParseError(
                    f"line {lineno}: date must be a number, got {row[2]!r}"
                ) from None
            if i < 0 or j < 0:
                raise EdgeListParseError(
                    f"line {lineno}: vertex ids must be nonnegative"
                )
            if i == j:
                raise EdgeListParseError(f"line {lineno}: self-loop at vertex {i}")
            if not np.isfinite(date):
                raise EdgeListParseError(
                    f"line {lineno}: date must be finite, got {row[2]!r}"
                )
            pair = (min(i, j), max(i, j))
            if pair in seen:
                raise EdgeListParseError(
                    f"lines {seen[pair]} and {lineno}: duplicate edge "
                    f"{pair[0]}-{pair[1]}"
                )
            seen[pair] = lineno
            edges.append((pair[0], pair[1], date))
    finally:
        if owned:
            stream.close()
    if compact_ids:
        ids = sorted({v for i, j, _ in edges for v in (i, j)})
        relabel = {old: new for new, old in enumerate(ids)}
        edges = [(relabel[i], relabel[j], d) for i, j, d in edges]
        n = len(ids)
    else:
        n = 1 + max((j for _, j, _ in edges), default=-1)
    return TimestampedGraph(n, edges)


def _write_rows(dest, header, rows):
    stream, owned = _open_maybe(dest, "w")
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if owned:
            stream.close()


def _fmt(x):
    return repr(float(x))


def write_edge_list(graph, dest):
    """Write a graph in the ``src,dst,date`` format read by parse_edge_list."""
    _write_rows(
        dest,
        EDGE_HEADER,
        ((int(i), int(j), _fmt(d))
         for i, j, d in zip(graph.edge_i, graph.edge_j, graph.dates)),
    )


def write_node_estimates(dest, z_local, z_model):
    """Write per-vertex local and model estimates, one row per vertex id."""
    z_local = np.asarray(z_local, dtype=np.float64)
    z_model = np.asarray(z_model, dtype=np.float64)
    if z_local.shape != z_model.shape:
        raise ValueError("estimate vectors must have equal length")
    _write_rows(
        dest,
        ESTIMATE_HEADER,
        ((v, _fmt(a), _fmt(b))
         for v, (a, b) in enumerate(zip(z_local, z_model))),
    )


def write_ground_truth(dest, z_true):
    """Write the ground-truth activity dates, one row per vertex id."""
    _write_rows(
        dest,
        TRUTH_HEADER,
        ((v, _fmt(z)) for v, z in enumerate(np.asarray(z_true, dtype=np.float64))),
    )


def write_experiment_records(dest, records):
    """Write experiment records; flags are encoded as 0/1."""
    from .evaluation import RECORD_FIELDS

    def encode(rec):
        for name in RECORD_FIELDS:
            v = getattr(rec, name)
            if isinstance(v, bool):
                yield int(v)
            elif isinstance(v, float):
                yield _fmt(v)
            else:
                yield v

    _write_rows(dest, list(RECORD_FIELDS), (list(encode(r)) for r in records))


def write_trace(dest, trace):
    """Write a fit's per-iteration log-likelihood trace."""
    _write_rows(
        dest,
        ["iteration", "log_likelihood"],
        ((k, _fmt(v)) for k, v in enumerate(trace)),
    )


def write_curve(dest, curve):
    """Write a smoothed curve; undefined points are written as 'nan'."""
    _write_rows(
        dest,
        CURVE_HEADER,
        ((_fmt(x), _fmt(y)) for x, y in zip(curve.grid_x, curve.values)),
    )

"""Serialization: JSON instance files, flat-text graph files, tree files.

Instances are JSON because they double as hand-editable test fixtures;
graphs are a flat text format that diffs cleanly. All files are UTF-8
with LF line endings. Graph serialization is canonical: parsing and
re-serializing a valid file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import InputFormatError
from .graphs import Edge, Instance, canonical_edges
from .drawings import Tree

__all__ = [
    "instance_to_dict",
    "instance_from_dict",
    "instance_to_json",
    "read_instance",
    "write_instance",
    "graph_to_text",
    "parse_graph_text",
    "read_graph",
    "write_graph",
    "read_tree",
    "write_tree",
    "read_bench_config",
]


def _coord_list(arr: np.ndarray) -> list[list[float]]:
    return [[float(x), float(y)] for x, y in arr]


def _parse_coords(raw, field: str) -> list[list[float]]:
    if not isinstance(raw, list):
        raise InputFormatError(f"{field!r} must be an array of [x, y] pairs")
    out = []
    for entry in raw:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry)
        ):
            raise InputFormatError(f"{field!r} entries must be 2-element number arrays")
        x, y = float(entry[0]), float(entry[1])
        if not (np.isfinite(x) and np.isfinite(y)):
            raise InputFormatError(f"{field!r} contains a non-finite coordinate")
        out.append([x, y])
    return out


def instance_to_dict(inst: Instance) -> dict:
    doc = {
        "vertices": _coord_list(inst.vertices),
        "witnesses": _coord_list(inst.witnesses),
    }
    if inst.label is not None:
        doc["label"] = inst.label
    return doc


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise InputFormatError("instance document must be an object with 'vertices'")
    vertices = _parse_coords(doc["vertices"], "vertices")
    if not vertices:
        raise InputFormatError("'vertices' must not be empty")
    witnesses = _parse_coords(doc.get("witnesses", []), "witnesses")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise InputFormatError("'label' must be a string")
    return Instance(
        np.array(vertices),
        np.array(witnesses) if witnesses else np.empty((0, 2)),
        label=label,
    )


def instance_to_json(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def read_instance(path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read instance file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON in {path}: {exc}") from exc
    return instance_from_dict(doc)


def write_instance(path, inst: Instance) -> None:
    Path(path).write_text(instance_to_json(inst), encoding="utf-8", newline="\n")


def graph_to_text(n: int, edges: frozenset[Edge]) -> str:
    """Canonical graph serialization: 'n m' header then sorted edge lines."""
    lines = [f"{n} {len(edges)}"]
    lines.extend(f"{i} {j}" for i, j in sorted(edges))
    return "\n".join(lines) + "\n"


def parse_graph_text(text: str) -> tuple[int, frozenset[Edge]]:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise InputFormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise InputFormatError(f"graph header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise InputFormatError(f"graph header must be integers: {lines[0]!r}") from exc
    if n < 0 or m < 0:
        raise InputFormatError("graph header counts must be non-negative")
    if len(lines) - 1 != m:
        raise InputFormatError(f"header promises {m} edges, file has {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InputFormatError(f"edge line must be 'i j', got {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InputFormatError(f"edge line must be integers: {ln!r}") from exc
        if not 0 <= i < j < n:
            raise InputFormatError(f"edge ({i}, {j}) must satisfy 0 <= i < j < n={n}")
        edges.append((i, j))
    if len(set(edges)) != len(edges):
        raise InputFormatError("duplicate edges in graph file")
    if edges != sorted(edges):
        raise InputFormatError("edges must be sorted lexicographically")
    return n, canonical_edges(edges, n)


def read_graph(path) -> tuple[int, frozenset[Edge]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read graph file {path}: {exc}") from exc
    return parse_graph_text(text)


def write_graph(path, n: int, edges: frozenset[Edge]) -> None:
    Path(path).write_text(graph_to_text(n, edges), encoding="utf-8", newline="\n")


def read_tree(path) -> Tree:
    """Tree file: first line n, second line the n-1 parents of nodes 2..n."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read tree file {path}: {exc}") from exc
    lines = text.split("\n")
    if not lines or not lines[0].strip():
        raise InputFormatError("tree file must start with the node count")
    try:
        n = int(lines[0].strip())
    except ValueError as exc:
        raise InputFormatError(f"node count must be an integer: {lines[0]!r}") from exc
    if n < 1:
        raise InputFormatError(f"node count must be >= 1, got {n}")
    rest = lines[1].split() if len(lines) > 1 else []
    if len(rest) != n - 1:
        raise InputFormatError(f"expected {n - 1} parent entries, got {len(rest)}")
    try:
        parents = tuple(int(tok) for tok in rest)
    except ValueError as exc:
        raise InputFormatError("parent entries must be integers") from exc
    try:
        return Tree(parents)
    except Exception as exc:
        raise InputFormatError(f"invalid tree: {exc}") from exc


def write_tree(path, tree: Tree) -> None:
    body = f"{tree.n}\n" + " ".join(str(p) for p in tree.parents) + "\n"
    Path(path).write_text(body, encoding="utf-8", newline="\n")


def read_bench_config(path) -> tuple[list[tuple[int, int]], int, int]:
    """Benchmark config: {"sizes": [[n, w], ...], "trials": t, "seed": s}."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputFormatError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("bench config must be a JSON object")
    sizes_raw = doc.get("sizes")
    if not isinstance(sizes_raw, list):
        raise InputFormatError("'sizes' must be an array of [n, w] pairs")
    sizes = []
    for entry in sizes_raw:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise InputFormatError("'sizes' entries must be 2-element integer arrays")
        if entry[0] < 1 or entry[1] < 0:
            raise InputFormatError(f"size {entry} must have n >= 1 and w >= 0")
        sizes.append((entry[0], entry[1]))
    trials = doc.get("trials", 1)
    seed = doc.get("seed", 0)
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
        raise InputFormatError("'trials' must be a positive integer")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise InputFormatError("'seed' must be an integer")
    return sizes, trials, seed

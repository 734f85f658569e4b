"""JSON / JSON-lines file formats and run manifests.

Files use 1-based vertex indices; the Python API is 0-based.
"""

from __future__ import annotations

import hashlib
import json
import time
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .errors import ParseError, UnknownStructure
from .incidence import BUILDERS, IncidenceStructure, Cell, Vertex


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj) + "\n", encoding="utf-8")
    return path


def write_jsonl(path, rows: Iterable) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(dumps(row) + "\n")
    return path


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def read_jsonl(path) -> list:
    rows = []
    try:
        with Path(path).open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if line.strip():
                    rows.append(json.loads(line))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return rows


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- structures ---------------------------------------------------------------

def _num_out(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else float(x)


def _num_in(x) -> int | Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"coordinate {x!r} is not a number")
    f = Fraction(x)
    if f.denominator not in (1, 2):
        raise ParseError(f"coordinate {x!r} has denominator {f.denominator}")
    return int(f) if f.denominator == 1 else f


def structure_to_json(s: IncidenceStructure) -> dict:
    out = {
        "name": s.name,
        "vertices": [[_num_out(x) for x in v.coords] for v in s.vertices] if s.has_coords
        else [[] for _ in s.vertices],
        "cells": [[v + 1 for v in c.sorted_members] for c in s.cells],
    }
    if all(c.center is not None for c in s.cells):
        out["centers"] = [[_num_out(x) for x in c.center] for c in s.cells]
    return out


def structure_from_json(data: dict) -> IncidenceStructure:
    try:
        name = str(data["name"])
        raw_vertices = data["vertices"]
        raw_cells = data["cells"]
        n = len(raw_vertices)
        vertices = tuple(
            Vertex(i + 1, tuple(_num_in(x) for x in coords) if coords else None)
            for i, coords in enumerate(raw_vertices)
        )
        centers = data.get("centers") or [None] * len(raw_cells)
        cells = []
        for j, (members, center) in enumerate(zip(raw_cells, centers)):
            if not all(isinstance(v, int) and 1 <= v <= n for v in members):
                raise ParseError(f"cell {j + 1} has an invalid vertex index")
            cells.append(Cell(j + 1, frozenset(v - 1 for v in members),
                              tuple(_num_in(x) for x in center) if center else None))
        return IncidenceStructure(name, vertices, tuple(cells))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed structure: {exc}") from exc


def load_structure(ref) -> IncidenceStructure:
    """A structure file path, or the name of a built-in structure."""
    ref = str(ref)
    if Path(ref).is_file():
        return structure_from_json(read_json(ref))
    if ref in BUILDERS:
        return BUILDERS[ref]()
    if ref.endswith(".json"):
        raise ParseError(f"{ref}: no such file")
    raise UnknownStructure(f"unknown structure {ref!r}; choose from {sorted(BUILDERS)}")


# -- labelings ----------------------------------------------------------------

def labeling_to_json(structure: str, labels) -> dict:
    return {"structure": structure, "labels": [int(x) for x in labels]}


def load_labeling(path) -> list:
    data = read_json(path)
    try:
        labels = data["labels"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: missing 'labels'") from exc
    if not isinstance(labels, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in labels
    ):
        raise ParseError(f"{path}: 'labels' must be a list of integers")
    return labels


def load_labelings(path) -> list:
    """Label sequences from a JSON-lines file or a single labeling file."""
    path = Path(path)
    if path.suffix == ".jsonl":
        rows = read_jsonl(path)
    else:
        rows = [read_json(path)]
    try:
        return [list(r["labels"]) for r in rows]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"{path}: every row needs 'labels'") from exc


# -- manifests ----------------------------------------------------------------

class RunManifest:
    """Records parameters, input/output digests and wall time of one command."""

    def __init__(self, command: str, parameters: dict):
        self.command = command
        self.parameters = parameters
        self.inputs: dict = {}
        self.outputs: dict = {}
        self.started = time.time()

    def add_input(self, path) -> None:
        if Path(path).is_file():
            self.inputs[str(path)] = sha256(path)

    def add_output(self, path) -> None:
        self.outputs[str(path)] = sha256(path)

    def write(self, path) -> Path:
        return write_json(path, {
            "command": self.command,
            "parameters": self.parameters,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "timing": {
                "started": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime(self.started)),
                "seconds": round(time.time() - self.started, 3),
            },
        })


def manifest_path_for(out: Path) -> Path:
    out = Path(out)
    if out.is_dir():
        return out / "manifest.json"
    return out.with_name(out.name + ".manifest.json")

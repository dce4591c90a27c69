"""CSV/JSON serialisation of results and run manifests."""
from __future__ import annotations

import csv
import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graph import RNG_ALGORITHM, Graph
from .markov import AbsorptionVector


@contextmanager
def open_out(path: str | Path | None):
    """Yield a text stream for ``path``, or stdout when ``path`` is None or ``-``."""
    if path is None or str(path) == "-":
        yield sys.stdout
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            yield fh


def write_rows(out, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, np.integer):
        return int(x)
    return x


def write_vector(out, g: Graph, index, values, value_name: str) -> None:
    write_rows(out, ["vertex_label", value_name],
               ((g.label_of(int(i)), v) for i, v in zip(index, values)))


def absorption_vector_rows(g: Graph, av: AbsorptionVector):
    return [(g.label_of(int(i)), float(m)) for i, m in zip(av.index, av.m)]


def absorption_vector_json(g: Graph, av: AbsorptionVector) -> dict:
    return {
        "seed": g.label_of(av.seed),
        "m": {str(lab): m for lab, m in absorption_vector_rows(g, av)},
    }


def write_matrix(out, g: Graph, matrix: np.ndarray) -> None:
    """Dense matrix with external labels on both axes; column j is seed j."""
    labels = g.external_labels()
    write_rows(out, ["vertex_label", *map(str, labels)],
               ([lab, *row] for lab, row in zip(labels, matrix)))


def manifest_path(out: str | Path) -> Path:
    return Path(f"{out}.manifest.json")


def write_manifest(out: str | Path | None, command: str, source: str, params: dict,
                   rng_seeds: dict | None = None, extra_outputs: Sequence[str] = ()) -> Path | None:
    if out is None or str(out) == "-":
        return None
    from . import __version__

    path = manifest_path(out)
    manifest = {
        "command": command,
        "input": source,
        "parameters": params,
        "rng_seeds": rng_seeds or {},
        "rng_algorithm": RNG_ALGORITHM,
        "tool_version": __version__,
        "outputs": [str(out), *map(str, extra_outputs)],
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n",
                    encoding="utf-8")
    return path

"""Column-oriented figure datasets and their CSV serialization.

CSV output is deterministic: a header row, every number rendered with
``%.15e`` (16 significant digits), ``\\n`` line endings, and a trailing
newline.  Rerunning the same scenario must reproduce the file byte for
byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class FigureDataset:
    """Named real-valued columns of equal length."""

    columns: dict[str, np.ndarray]

    def __post_init__(self) -> None:
        if not self.columns:
            raise ValueError("dataset must have at least one column")
        lengths = set()
        for name, values in self.columns.items():
            arr = np.asarray(values, dtype=float)
            if arr.ndim != 1:
                raise ValueError(f"column {name!r} is not one-dimensional")
            if arr.shape[0] == 0:
                raise ValueError(f"column {name!r} is empty")
            lengths.add(arr.shape[0])
            object.__getattribute__(self, "columns")[name] = arr
        if len(lengths) != 1:
            raise ValueError(f"columns have unequal lengths: {sorted(lengths)}")

    @property
    def n_rows(self) -> int:
        return next(iter(self.columns.values())).shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.columns[name]


def render_csv(dataset: FigureDataset) -> str:
    names = list(dataset.columns)
    lines = [",".join(names)]
    table = np.column_stack([dataset.columns[name] for name in names])
    for row in table:
        lines.append(",".join(f"{value:.15e}" for value in row))
    return "\n".join(lines) + "\n"


def emit_csv(dataset: FigureDataset, path: str | Path) -> Path:
    """Write the dataset to ``path``; parent directories must exist."""
    path = Path(path)
    text = render_csv(dataset)
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)
    return path

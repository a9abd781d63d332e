"""Atomic writers for CSV and JSON-lines data files, and deterministic JSON rendering."""

import csv
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, Iterable, Mapping, Sequence, TextIO, Union

Destination = Union[Path, TextIO]


def _atomic_write(file_path: Path, write: Callable[[TextIO], None]) -> None:
    """Write through a temporary file in the destination directory, then rename."""
    file_path = Path(file_path)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{file_path.name}.", dir=file_path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            write(handle)
        os.replace(tmp_name, file_path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def _dispatch(destination: Destination, write: Callable[[TextIO], None]) -> None:
    """Paths are written atomically; open streams (e.g. stdout) are written in place."""
    if isinstance(destination, (str, Path)):
        _atomic_write(Path(destination), write)
    else:
        write(destination)


def write_csv(destination: Destination, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """CSV with a header row; always written even when ``rows`` is empty."""
    def write(handle: TextIO) -> None:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)

    _dispatch(destination, write)


def write_jsonl(destination: Destination, records: Iterable[Mapping[str, Any]]) -> None:
    """One JSON object per line, keys in insertion order."""
    def write(handle: TextIO) -> None:
        for record in records:
            handle.write(json.dumps(record) + "\n")

    _dispatch(destination, write)


def dumps(payload: Any) -> str:
    """Deterministic JSON rendering used for every summary and report."""
    return json.dumps(payload, sort_keys=True)

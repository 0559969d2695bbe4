from __future__ import annotations

import contextlib
import csv
import os
import tempfile
from pathlib import Path
from typing import Iterator

from .errors import DataError, InputError


@contextlib.contextmanager
def atomic_write(path: str | os.PathLike, newline: str | None = "") -> Iterator:
    """Open a temp file next to ``path`` and rename it into place on success."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline=newline) as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def read_csv(path: str | os.PathLike, required: tuple[str, ...] = ()) -> tuple[list[str], list[dict[str, str]]]:
    """Read a headed CSV into a list of dicts, validating required columns."""
    path = Path(path)
    try:
        fh = open(path, encoding="utf-8-sig", newline="")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    with fh:
        try:
            reader = csv.DictReader(fh, strict=True)
            header = list(reader.fieldnames or [])
            if not header:
                raise DataError(f"{path}: missing header row")
            for col in required:
                if col not in header:
                    raise DataError(f"{path}: missing required column {col!r}")
            rows = list(reader)
        except (csv.Error, UnicodeDecodeError) as exc:
            raise DataError(f"{path}: malformed CSV: {exc}") from exc
    return header, rows


def write_csv(path: str | os.PathLike, header: list[str], rows) -> None:
    with atomic_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)

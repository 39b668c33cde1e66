"""Small filesystem helpers shared across modules."""

from __future__ import annotations

import os
import tempfile
from contextlib import contextmanager
from pathlib import Path


@contextmanager
def atomic_write(path, mode: str = "w", encoding=None, newline=None):
    """Write to a temp file in the target directory, then rename.

    Readers never observe a partially written file, and concurrent
    writers of the same path cannot interleave contents.
    """
    target = Path(path)
    if "r" in mode or "a" in mode or "+" in mode:
        raise ValueError(f"atomic_write requires a write mode, got {mode!r}")
    if "b" not in mode and encoding is None:
        encoding = "utf-8"
    fd, tmp_name = tempfile.mkstemp(
        dir=target.parent, prefix=target.name + ".", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, mode, encoding=encoding, newline=newline) as fh:
            yield fh
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise

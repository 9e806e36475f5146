"""Persistent JSON store for q-zeros.

The file lives in ``$RQMATHIEU_CACHE_DIR`` (default ``~/.cache/rqmathieu``);
updates are atomic (write to a temporary file, then rename).  Values are
written with ``repr`` precision, so a warm run reproduces a cold run bit
for bit.
"""

import json
import os
import tempfile
import threading
from pathlib import Path

CACHE_ENV = "RQMATHIEU_CACHE_DIR"
FILENAME = "qzeros.json"


def cache_dir():
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "rqmathieu"


class ZeroCache:
    """Dict-backed store with ``get``/``put``; flushed on every new entry."""

    def __init__(self, directory=None):
        self.path = Path(directory or cache_dir()) / FILENAME
        self._lock = threading.Lock()
        self._data = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                data = json.load(fh)
            if not isinstance(data, dict):
                raise ValueError(f"corrupt cache file {self.path}")
            self._data = {str(k): float(v) for k, v in data.items()}

    def __len__(self):
        return len(self._data)

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            if self._data.get(key) == value:
                return
            self._data[key] = float(value)
            self._flush()

    def _flush(self):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=".qzeros-", dir=self.path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(self._data, fh, sort_keys=True, indent=0)
                fh.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

"""On-disk JSON cache of computed results.

Entries are keyed by (m, n, space, mode, package version) and written once,
atomically (temporary file then rename).  The directory defaults to
``~/.cache/jacobi_forests`` and can be moved with ``JACOBI_FORESTS_CACHE``.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import __version__

ENV = "JACOBI_FORESTS_CACHE"


def default_dir() -> Path:
    env = os.environ.get(ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "jacobi_forests"


class Cache:
    def __init__(self, root: Path | str | None = None, enabled: bool = True):
        self.root = Path(root) if root is not None else default_dir()
        self.enabled = enabled

    def path(self, m: int, n: int, space: str, mode: str) -> Path:
        safe = space.replace("/", "_")
        return self.root / f"{safe}_m{m}_n{n}_{mode}_v{__version__}.json"

    def get(self, m, n, space, mode):
        if not self.enabled:
            return None
        p = self.path(m, n, space, mode)
        try:
            return json.loads(p.read_text())
        except (OSError, ValueError):
            return None

    def put(self, m, n, space, mode, value) -> None:
        if not self.enabled:
            return
        p = self.path(m, n, space, mode)
        if p.exists():
            return
        p.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(value, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def fetch(self, m, n, space, mode, compute):
        """Cached value, computing and storing it on a miss.

        The value goes through a JSON round trip either way, so hits and
        misses render identically.
        """
        hit = self.get(m, n, space, mode)
        if hit is not None:
            return hit
        value = json.loads(json.dumps(compute(), sort_keys=True))
        self.put(m, n, space, mode, value)
        return value

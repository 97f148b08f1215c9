"""
On-disk result cache.

Entries are versioned JSON files named by the sha256 of a canonical descriptor
(diagram, operation, KL convention in effect, schema version). Payloads are stored as canonical
JSON text, so a warm run writes exactly the bytes a cold run would.
"""

import gzip
import hashlib
import json
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union

from kl.table import select_convention
from reports.models import CacheEntry
from utils.config_loader import settings
from utils.constants import SCHEMA_VERSION
from utils.errors import CacheMismatchError
from utils.logging_utils import execution_logger


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def stable_hash(value: Any) -> str:
    return hashlib.sha256(canonical_json(value).encode("utf-8")).hexdigest()


class ResultCache:
    """Content-addressed store for computed payloads."""

    def __init__(
        self,
        directory: Optional[Union[str, Path]] = None,
        enabled: Optional[bool] = None,
        compress: Optional[bool] = None,
        verify: bool = False,
    ):
        config = settings.cache
        self.directory = Path(directory or config.dir)
        self.enabled = config.enabled if enabled is None else enabled
        self.compress = config.compress if compress is None else compress
        self.verify = verify
        self.hits = 0
        self.misses = 0

    def descriptor(self, operation: str, diagram: Dict[str, Any], **params: Any) -> Dict[str, Any]:
        return {
            "operation": operation,
            "diagram": diagram,
            "convention": select_convention().value,
            "schema_version": SCHEMA_VERSION,
            "params": params,
        }

    def path_for(self, key: str) -> Path:
        suffix = ".json.gz" if self.compress else ".json"
        return self.directory / key[:2] / f"{key}{suffix}"

    def _read(self, key: str) -> Optional[CacheEntry]:
        for path in (self.directory / key[:2] / f"{key}.json", self.directory / key[:2] / f"{key}.json.gz"):
            if not path.exists():
                continue
            raw = gzip.decompress(path.read_bytes()) if path.suffix == ".gz" else path.read_bytes()
            try:
                entry = CacheEntry.model_validate_json(raw)
            except ValueError as e:
                execution_logger.logger.warning("Unreadable cache entry ignored", path=str(path), error=str(e))
                continue
            # schema bumps invalidate
            if entry.schema_version != SCHEMA_VERSION or entry.key != key:
                continue
            return entry
        return None

    def _write(self, entry: CacheEntry) -> Path:
        path = self.path_for(entry.key)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = entry.model_dump_json(indent=2).encode("utf-8")
        path.write_bytes(gzip.compress(data, mtime=0) if self.compress else data)
        return path

    def get(self, descriptor: Dict[str, Any]) -> Optional[str]:
        """Cached payload text, or None."""
        if not self.enabled:
            return None
        entry = self._read(stable_hash(descriptor))
        return entry.payload if entry else None

    def put(self, descriptor: Dict[str, Any], payload: Any) -> str:
        text = canonical_json(payload)
        if self.enabled:
            key = stable_hash(descriptor)
            entry = CacheEntry(key=key, operation=descriptor["operation"], descriptor=descriptor, payload=text)
            path = self._write(entry)
            execution_logger.log_action("cache_store", descriptor["operation"], path=str(path))
        return text

    def fetch(self, descriptor: Dict[str, Any], compute: Callable[[], Any]) -> str:
        """Payload text from the cache, computing and storing it on a miss.

        In verify mode a hit is recomputed and must match byte for byte.
        """
        cached = self.get(descriptor)
        operation = descriptor["operation"]
        if cached is None:
            self.misses += 1
            return self.put(descriptor, compute())

        self.hits += 1
        if self.verify:
            fresh = canonical_json(compute())
            passed = fresh == cached
            execution_logger.log_validation(f"cache_verify:{operation}", len(cached), len(fresh), passed)
            if not passed:
                raise CacheMismatchError("cached payload differs from recomputation", operation=operation)
        else:
            execution_logger.log_action("cache_hit", operation)
        return cached

    def clear(self) -> int:
        """Delete every entry; returns how many files went."""
        removed = 0
        if not self.directory.exists():
            return 0
        for path in sorted(self.directory.rglob("*.json*")):
            path.unlink()
            removed += 1
        return removed

"""Disk-backed 6j-symbol tables.

One binary file per level holds the symbol values of canonical orbit
representatives, so repeated scans and level sweeps share work across
runs.  Layout: a fixed header (magic, format version, r, entry count)
followed by fixed-width records of six u16 colors, the log-magnitude as
f64, and the complex phase as two f64s.  Values round-trip exactly, so
warm and cold runs agree bit for bit.

Only canonical representatives are persisted.  The substitution moves of
the symmetry group preserve |6j| but can flip the sign of the value, so a
value indexed by an orbit is exact only for the representative it was
computed on; see ``magnitude_log`` for the orbit-invariant part.
"""

import math
import os
import struct
import tempfile

from .qarith import Level, SignedLog
from .sixj import Sextuple, canonical_form, is_admissible_sextuple, sixj_symbol

_MAGIC = b"SJV6TABL"
_FORMAT_VERSION = 1
_HEADER = struct.Struct("<8sIIQ")
_RECORD = struct.Struct("<6Hddd")


def table_path(cache_dir, r: int) -> str:
    return os.path.join(cache_dir, f"sixj-r{r}.bin")


def load_table(path: str, r: int) -> dict:
    """Read a {canonical color tuple: SignedLog} table; {} if absent."""
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except FileNotFoundError:
        return {}
    if len(blob) < _HEADER.size:
        raise ValueError(f"{path}: truncated header")
    magic, version, file_r, count = _HEADER.unpack_from(blob, 0)
    if magic != _MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}")
    if version != _FORMAT_VERSION:
        raise ValueError(f"{path}: format version {version}, expected {_FORMAT_VERSION}")
    if file_r != r:
        raise ValueError(f"{path}: table is for r={file_r}, expected r={r}")
    expected = _HEADER.size + count * _RECORD.size
    if len(blob) != expected:
        raise ValueError(f"{path}: size {len(blob)} != expected {expected}")
    table = {}
    off = _HEADER.size
    for _ in range(count):
        rec = _RECORD.unpack_from(blob, off)
        off += _RECORD.size
        table[rec[:6]] = SignedLog(rec[6], complex(rec[7], rec[8]))
    return table


def save_table(path: str, r: int, table: dict) -> None:
    """Atomically write the table (records sorted by color tuple)."""
    parts = [_HEADER.pack(_MAGIC, _FORMAT_VERSION, r, len(table))]
    for key in sorted(table):
        val = table[key]
        parts.append(_RECORD.pack(*key, val.log_magnitude,
                                  val.phase.real, val.phase.imag))
    blob = b"".join(parts)
    dirname = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=dirname, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def resolve_cache_dir(explicit=None):
    """Cache directory from the flag, else SIXJVOL_CACHE_DIR, else None."""
    if explicit:
        return explicit
    return os.environ.get("SIXJVOL_CACHE_DIR") or None


class DiskBackedSixjEvaluator:
    """6j evaluation backed by the per-level table.

    Without a cache directory it degrades to an in-memory memo.  Exact
    values are cached under the canonical key only when the query already
    is the canonical representative (the value of any other orbit member
    may differ in sign from the stored one); magnitude queries hit the
    table for the whole orbit.
    """

    def __init__(self, lvl: Level, cache_dir=None):
        self.lvl = lvl
        self.cache_dir = resolve_cache_dir(cache_dir)
        self._path = None
        self.table = {}
        self._dirty = 0
        if self.cache_dir is not None:
            os.makedirs(self.cache_dir, exist_ok=True)
            self._path = table_path(self.cache_dir, lvl.r)
            self.table = load_table(self._path, lvl.r)

    def evaluate(self, s: Sextuple) -> SignedLog:
        """Exact symbol value; served from the table on canonical queries."""
        ckey = canonical_form(s, self.lvl).colors
        if ckey != s.colors:
            return sixj_symbol(s, self.lvl)
        val = self.table.get(ckey)
        if val is None:
            val = sixj_symbol(s, self.lvl)
            self.table[ckey] = val
            self._dirty += 1
        return val

    def magnitude_log(self, s: Sextuple) -> float:
        """log|6j| of any admissible sextuple, via its orbit representative."""
        ckey = canonical_form(s, self.lvl).colors
        val = self.table.get(ckey)
        if val is None:
            val = sixj_symbol(Sextuple(*ckey), self.lvl)
            self.table[ckey] = val
            self._dirty += 1
        return val.log_magnitude if not val.is_zero else -math.inf

    def absorb(self, memo: dict) -> int:
        """Adopt canonical entries from a run memo (e.g. a level sweep's).

        Keys that are not their own canonical form are aliases whose stored
        phase belongs to the representative, not to them; they are skipped.
        Returns the number of new entries.
        """
        added = 0
        for key, val in memo.items():
            if key in self.table:
                continue
            s = Sextuple(*key)
            if not is_admissible_sextuple(s, self.lvl):
                continue
            if canonical_form(s, self.lvl).colors != key:
                continue
            self.table[key] = val
            added += 1
        self._dirty += added
        return added

    def save(self) -> None:
        if self._path is not None and self._dirty:
            save_table(self._path, self.lvl.r, self.table)
            self._dirty = 0

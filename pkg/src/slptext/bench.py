"""Extraction benchmark harness.

Given encodings of the same text, measures mean extract latency over
seeded pseudo-random positions for every combination of substring
length and worker count, and refuses to report a timing whose extracted
bytes do not checksum-match the decoded text.

Positions for substring length L come from the counter-based stream
seeded with mix(seed ^ mix(L)), mapped to 1 + draw % (n - L + 1), so
runs are reproducible across implementations.  Queries are split into
contiguous static slices, one per worker.  Workers are forked processes
sharing the already-loaded encoding copy-on-write (falling back to
threads where fork is unavailable); pool startup happens outside the
timed section, which covers only the queries themselves.
"""

from __future__ import annotations

import multiprocessing
import time
import zlib
from dataclasses import dataclass, field

from .bits import mix64
from .corpus import splitmix64

CSV_HEADER = "encoding,length,threads,mean_us,total_s,size_bytes"


class BenchDataError(Exception):
    """The inputs disagree (encodings of different texts, bad lengths)."""


class BenchChecksumError(Exception):
    """An encoding returned bytes that do not match the decoded text."""


@dataclass
class BenchConfig:
    lengths: list = field(default_factory=lambda: [1, 10, 100, 1000])
    queries: int = 10000
    threads: list = field(default_factory=lambda: list(range(1, 9)))
    seed: int = 0

    def __post_init__(self):
        if not self.lengths or min(self.lengths) < 1:
            raise ValueError("substring lengths must be >= 1")
        if self.queries < 1:
            raise ValueError("query count must be >= 1")
        if not self.threads or min(self.threads) < 1:
            raise ValueError("thread counts must be >= 1")


@dataclass
class BenchRow:
    encoding: str
    length: int
    threads: int
    mean_us: float
    total_s: float
    size_bytes: int


@dataclass
class BenchReport:
    rows: list

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            lines.append(f"{r.encoding},{r.length},{r.threads},"
                         f"{r.mean_us:.3f},{r.total_s:.6f},{r.size_bytes}")
        return "\n".join(lines) + "\n"


def draw_positions(seed: int, length: int, count: int, n: int) -> list:
    """The documented position stream for one substring length."""
    if length > n:
        raise BenchDataError(f"substring length {length} exceeds text ({n})")
    stream_seed = mix64(seed ^ mix64(length))
    span = n - length + 1
    return [1 + splitmix64(stream_seed, j) % span for j in range(count)]


# worker state published before the pool forks; inherited copy-on-write
_WORK: dict = {}


def _run_slice(args) -> int:
    lo, hi, length = args
    extract = _WORK["enc"].extract
    positions = _WORK["positions"]
    crc = zlib.crc32
    fold = 0
    for j in range(lo, hi):
        fold ^= crc(extract(positions[j], length))
    return fold


def _slices(count: int, workers: int):
    base, extra = divmod(count, workers)
    out = []
    lo = 0
    for w in range(workers):
        hi = lo + base + (1 if w < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _timed(enc, positions, length, workers):
    """(xor-folded checksum, wall seconds) for one configuration."""
    _WORK["enc"] = enc
    _WORK["positions"] = positions
    # steady-state measurement: fault in buffers and caches untimed
    extract = enc.extract
    for j in range(min(64, len(positions))):
        extract(positions[j], length)
    args = [(lo, hi, length) for lo, hi in _slices(len(positions), workers)]
    if workers == 1:
        t0 = time.perf_counter()
        fold = _run_slice(args[0])
        return fold, time.perf_counter() - t0
    if "fork" in multiprocessing.get_all_start_methods():
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(workers) as pool:
            t0 = time.perf_counter()
            folds = pool.map(_run_slice, args, chunksize=1)
            wall = time.perf_counter() - t0
    else:  # pragma: no cover - non-fork platforms
        from multiprocessing.pool import ThreadPool
        with ThreadPool(workers) as pool:
            t0 = time.perf_counter()
            folds = pool.map(_run_slice, args, chunksize=1)
            wall = time.perf_counter() - t0
    fold = 0
    for f in folds:
        fold ^= f
    return fold, wall


def run_bench(encodings: list, config: BenchConfig) -> BenchReport:
    """encodings: (label, encoding, serialized size in bytes) triples.

    All encodings must decode to the same text; each (length, workers)
    cell is verified against the decoded text's checksums before its
    timing enters the report.
    """
    if not encodings:
        raise BenchDataError("no encodings to benchmark")
    n = encodings[0][1].n
    text = encodings[0][1].extract(1, n)
    for label, enc, _size in encodings[1:]:
        if enc.n != n or enc.extract(1, enc.n) != text:
            raise BenchDataError(
                f"encoding '{label}' does not decode to the same text")

    rows = []
    crc = zlib.crc32
    for length in config.lengths:
        positions = draw_positions(config.seed, length, config.queries, n)
        oracle = 0
        for p in positions:
            oracle ^= crc(text[p - 1:p - 1 + length])
        for label, enc, size_bytes in encodings:
            for workers in config.threads:
                fold, wall = _timed(enc, positions, length, workers)
                if fold != oracle:
                    raise BenchChecksumError(
                        f"encoding '{label}' failed extraction checksum at "
                        f"length {length} with {workers} workers")
                rows.append(BenchRow(
                    encoding=label, length=length, threads=workers,
                    mean_us=wall / len(positions) * 1e6,
                    total_s=wall, size_bytes=size_bytes))
    return BenchReport(rows=rows)

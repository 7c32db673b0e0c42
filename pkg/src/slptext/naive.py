"""Baseline grammar encoding: everything in plain fixed-width arrays.

Rule right-hand sides take 2r entries of ceil(log2(r + sigma)) bits,
rule expansion lengths r entries of ceil(log2 n) bits, and the start
rule its symbol ids plus cumulative expansion lengths for binary
search.  Large and simple: queries walk symbol ids directly, comparing
the character offset against the left child's stored length.

Container format NSLP (little-endian): magic "NSLP", u16 version, u64
sigma, u64 r, u64 s, u64 n, sigma alphabet bytes, then tagged
fixed-width arrays in order: right-hand sides (2r), expansion lengths
(r), start symbols (s), start cumulative lengths (s).
"""

from __future__ import annotations

import struct
from bisect import bisect_left

from .bits import ByteReader, ByteWriter, FixedWidthArray, SlpFormatError
from .grammar import Slp, _rule_lengths
from .tracing import QueryTrace

NSLP_MAGIC = b"NSLP"
NSLP_VERSION = 1


class NaiveSlpEncoding:
    __slots__ = ("n", "sigma", "r", "s", "alphabet", "rhs", "lengths",
                 "start_symbols", "start_prefix", "_prefix")

    def __init__(self, *, n, sigma, r, s, alphabet, rhs, lengths,
                 start_symbols, start_prefix):
        self.n = n
        self.sigma = sigma
        self.r = r
        self.s = s
        self.alphabet = alphabet
        self.rhs = rhs
        self.lengths = lengths
        self.start_symbols = start_symbols
        self.start_prefix = start_prefix
        # decoded once: bisect over a plain list beats bit-extraction here
        self._prefix = start_prefix.values()

    # -- queries ---------------------------------------------------------

    def _resolve_start(self, i: int):
        t = bisect_left(self._prefix, i)
        j = i - (self._prefix[t - 1] if t else 0)
        return t, j

    def _symbol_length(self, sym: int) -> int:
        return 1 if sym < self.sigma else self.lengths.get(sym - self.sigma)

    def access(self, i: int, trace: QueryTrace | None = None) -> int:
        """Character at 1-based text position i."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        t, j = self._resolve_start(i)
        sym = self.start_symbols.get(t)
        if trace is not None:
            trace.start_symbol = t + 1
            trace.start_offset = j
            trace.start_size = self._symbol_length(sym)
        sigma = self.sigma
        rhs = self.rhs
        lengths = self.lengths
        while sym >= sigma:
            if trace is not None:
                trace.steps += 1
            k = sym - sigma
            left = rhs.get(2 * k)
            left_size = 1 if left < sigma else lengths.get(left - sigma)
            if j <= left_size:
                sym = left
            else:
                j -= left_size
                sym = rhs.get(2 * k + 1)
        return self.alphabet[sym]

    def extract(self, i: int, length: int,
                trace: QueryTrace | None = None) -> bytes:
        """The `length` characters starting at 1-based position i."""
        if length < 0:
            raise ValueError("length must be >= 0")
        if length == 0:
            if not 1 <= i <= self.n + 1:
                raise IndexError(f"position {i} out of range 1..{self.n + 1}")
            return b""
        if i < 1 or i + length - 1 > self.n:
            raise IndexError(
                f"range [{i}, {i + length - 1}] out of bounds 1..{self.n}")

        t, j = self._resolve_start(i)
        sym = self.start_symbols.get(t)
        sigma = self.sigma
        rhs = self.rhs
        lengths = self.lengths
        alphabet = self.alphabet
        out = bytearray()
        stack: list = []  # pending right-child symbols

        while sym >= sigma:
            k = sym - sigma
            left = rhs.get(2 * k)
            left_size = 1 if left < sigma else lengths.get(left - sigma)
            if j <= left_size:
                stack.append(rhs.get(2 * k + 1))
                if trace is not None:
                    trace.pushes += 1
                sym = left
            else:
                j -= left_size
                sym = rhs.get(2 * k + 1)
        out.append(alphabet[sym])

        while len(out) < length:
            if stack:
                sym = stack.pop()
            else:
                t += 1
                sym = self.start_symbols.get(t)
                if trace is not None:
                    trace.start_symbols_touched += 1
            while sym >= sigma:
                k = sym - sigma
                stack.append(rhs.get(2 * k + 1))
                if trace is not None:
                    trace.pushes += 1
                sym = rhs.get(2 * k)
            out.append(alphabet[sym])
        return bytes(out)

    # -- serialization ---------------------------------------------------

    def serialize(self) -> bytes:
        w = ByteWriter()
        w.raw(NSLP_MAGIC)
        w.u16(NSLP_VERSION)
        w.raw(struct.pack("<QQQQ", self.sigma, self.r, self.s, self.n))
        w.raw(self.alphabet)
        self.rhs.write(w)
        self.lengths.write(w)
        self.start_symbols.write(w)
        self.start_prefix.write(w)
        return w.getvalue()

    @classmethod
    def deserialize(cls, data: bytes) -> "NaiveSlpEncoding":
        if data[:4] != NSLP_MAGIC:
            raise SlpFormatError(
                f"bad magic: expected {NSLP_MAGIC!r}, got {data[:4]!r}")
        r_ = ByteReader(data, 4)
        version = r_.u16()
        if version != NSLP_VERSION:
            raise SlpFormatError(f"unsupported version {version}")
        sigma, r, s, n = struct.unpack("<QQQQ", r_.take(32))
        alphabet = r_.take(sigma)
        rhs = FixedWidthArray.read(r_, "right-hand sides")
        lengths = FixedWidthArray.read(r_, "expansion lengths")
        start_symbols = FixedWidthArray.read(r_, "start symbols")
        start_prefix = FixedWidthArray.read(r_, "start prefix sums")
        if not r_.done():
            raise SlpFormatError(f"{len(data) - r_.pos} trailing bytes")
        enc = cls(n=n, sigma=sigma, r=r, s=s, alphabet=alphabet, rhs=rhs,
                  lengths=lengths, start_symbols=start_symbols,
                  start_prefix=start_prefix)
        enc._spot_check()
        return enc

    def _spot_check(self) -> None:
        if list(self.alphabet) != sorted(set(self.alphabet)):
            raise SlpFormatError("alphabet must be distinct and ascending")
        if self.rhs.count != 2 * self.r or self.lengths.count != self.r:
            raise SlpFormatError("rule arrays do not match header r")
        if self.start_symbols.count != self.s or \
                self.start_prefix.count != self.s:
            raise SlpFormatError("start arrays do not match header s")
        sigma = self.sigma
        limit = sigma + self.r
        for k in range(self.r):
            left = self.rhs.get(2 * k)
            right = self.rhs.get(2 * k + 1)
            if left >= limit or right >= limit:
                raise SlpFormatError(f"rule {k} references an undefined symbol")
            expect = self._symbol_length(left) + self._symbol_length(right)
            if self.lengths.get(k) != expect:
                raise SlpFormatError(
                    f"rule {k} stores length {self.lengths.get(k)}, "
                    f"children sum to {expect}")
        prev = 0
        for t, cum in enumerate(self._prefix):
            sym = self.start_symbols.get(t)
            if sym >= limit:
                raise SlpFormatError(f"start symbol {t} undefined")
            if cum != prev + self._symbol_length(sym):
                raise SlpFormatError("start prefix sums are not consistent")
            prev = cum
        if prev != self.n:
            raise SlpFormatError("start rule does not cover the text")

    def size_report(self) -> dict:
        header = 4 + 2 + 32 + self.sigma
        report = {
            "header": header,
            "rhs": self.rhs.serialized_size(),
            "lengths": self.lengths.serialized_size(),
            "start_symbols": self.start_symbols.serialized_size(),
            "start_prefix": self.start_prefix.serialized_size(),
        }
        report["total"] = sum(report.values())
        report["core_total"] = report["total"]
        return report


def encode(slp: Slp) -> NaiveSlpEncoding:
    """Build the plain-array encoding of a valid grammar."""
    sigma = slp.sigma
    r = len(slp.rules)
    n = slp.text_length
    lengths = _rule_lengths(slp)

    sym_width = (r + sigma - 1).bit_length()
    # ceil(log2 n) bits, widened in the corner case where a rule expands
    # to the whole text and n is a power of two (the formula cannot hold it)
    len_width = (n - 1).bit_length()
    if lengths:
        len_width = max(len_width, max(lengths).bit_length())

    rhs_values = []
    for left, right in slp.rules:
        rhs_values.append(left)
        rhs_values.append(right)

    prefix = []
    cum = 0
    for sym in slp.start:
        cum += 1 if sym < sigma else lengths[sym - sigma]
        prefix.append(cum)
    if cum != n:
        raise ValueError("start rule does not expand to text_length")

    return NaiveSlpEncoding(
        n=n, sigma=sigma, r=r, s=len(slp.start), alphabet=bytes(slp.alphabet),
        rhs=FixedWidthArray.from_values(rhs_values, width=sym_width),
        lengths=FixedWidthArray.from_values(lengths, width=len_width),
        start_symbols=FixedWidthArray.from_values(slp.start, width=sym_width),
        start_prefix=FixedWidthArray.from_values(prefix, width=n.bit_length()),
    )

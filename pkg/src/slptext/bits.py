"""Bit-level storage primitives: packed integer arrays, rank/select
bitvectors (a plain one and a sparse Elias-Fano one), and a static
minimal perfect hash over integer keys.

Everything here serializes to a tagged little-endian layout so that the
container formats built on top are bit-exact and reimplementable:

  0x01 FixedWidthArray   tag, count u64, width u8, payload ceil(count*width/8) bytes
  0x02 DenseBitVector    tag, nbits u64, payload ceil(nbits/8) bytes
  0x03 SparseBitVector   tag, nbits u64, ones u64, low_width u8,
                         low payload, high_nbits u64, high payload
  0x04 SizeMphf          tag, nkeys u64, seed u64, nbuckets u64,
                         then a FixedWidthArray of bucket slot codes
  0x05 ExplicitSizeMap   tag, nkeys u64, then two FixedWidthArrays:
                         keys (ascending) and their mapped values
  0x06 GroupedArray      tag, ngroups u64, widths FixedWidthArray,
                         payload_len u64, payload

Bit k of any payload lives in byte k >> 3 at bit k & 7; multi-bit values
are packed LSB-first.  Rank/select directories are rebuilt at load time
and never serialized.  Group element counts for 0x06 are not repeated in
its payload; the owning container stores them once and passes them back
in at load time.
"""

from __future__ import annotations

import struct

TAG_FIXED_WIDTH = 0x01
TAG_DENSE_BV = 0x02
TAG_SPARSE_BV = 0x03
TAG_SIZE_MPHF = 0x04
TAG_EXPLICIT_MAP = 0x05
TAG_GROUPED = 0x06

# Below this ones/nbits density a bitvector is stored Elias-Fano style.
SPARSE_DENSITY = 1.0 / 16.0

_U64 = struct.Struct("<Q")
_U16 = struct.Struct("<H")

_POPCOUNT = bytes(bin(i).count("1") for i in range(256))


class SlpFormatError(Exception):
    """Raised for bad magic, truncation, or inconsistent serialized data."""


class ByteReader:
    """Cursor over a bytes-like payload; all reads raise on truncation."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def take(self, n: int) -> bytes:
        end = self.pos + n
        if end > len(self.data):
            raise SlpFormatError(
                f"truncated payload: wanted {n} bytes at offset {self.pos}, "
                f"have {len(self.data) - self.pos}"
            )
        out = self.data[self.pos:end]
        self.pos = end
        return out

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        return _U16.unpack(self.take(2))[0]

    def u64(self) -> int:
        return _U64.unpack(self.take(8))[0]

    def expect_tag(self, tag: int, what: str) -> None:
        got = self.u8()
        if got != tag:
            raise SlpFormatError(f"bad tag for {what}: expected {tag:#x}, got {got:#x}")

    def done(self) -> bool:
        return self.pos == len(self.data)


class ByteWriter:
    def __init__(self):
        self.parts: list[bytes] = []

    def raw(self, b: bytes) -> None:
        self.parts.append(bytes(b))

    def u8(self, v: int) -> None:
        self.parts.append(bytes((v,)))

    def u16(self, v: int) -> None:
        self.parts.append(_U16.pack(v))

    def u64(self, v: int) -> None:
        self.parts.append(_U64.pack(v))

    def getvalue(self) -> bytes:
        return b"".join(self.parts)


class FixedWidthArray:
    """Mutable packed array of `count` unsigned ints of `width` bits each.

    Width 0 is legal: every element reads back as 0 and the payload is
    empty (used for fields whose value is forced by context).
    """

    __slots__ = ("count", "width", "buf", "_mask")

    def __init__(self, count: int, width: int, buf: bytearray | None = None):
        if not 0 <= width <= 64:
            raise ValueError(f"width {width} out of range 0..64")
        nbytes = (count * width + 7) // 8
        if buf is None:
            buf = bytearray(nbytes)
        elif len(buf) != nbytes:
            raise SlpFormatError(
                f"fixed-width payload is {len(buf)} bytes, expected {nbytes}"
            )
        self.count = count
        self.width = width
        self.buf = buf
        self._mask = (1 << width) - 1

    @classmethod
    def from_values(cls, values, width: int | None = None) -> "FixedWidthArray":
        values = list(values)
        if width is None:
            width = max((v.bit_length() for v in values), default=0)
        arr = cls(len(values), width)
        if width == 0:
            return arr
        buf = arr.buf
        acc = 0
        accbits = 0
        pos = 0
        for v in values:
            if v < 0 or v > arr._mask:
                raise ValueError(f"value {v} does not fit in {width} bits")
            acc |= v << accbits
            accbits += width
            while accbits >= 8:
                buf[pos] = acc & 0xFF
                acc >>= 8
                accbits -= 8
                pos += 1
        if accbits:
            buf[pos] = acc & 0xFF
        return arr

    def get(self, i: int) -> int:
        if not 0 <= i < self.count:
            raise IndexError(f"index {i} out of range for {self.count} elements")
        w = self.width
        if w == 0:
            return 0
        bit = i * w
        lo = bit >> 3
        hi = (bit + w + 7) >> 3
        return (int.from_bytes(self.buf[lo:hi], "little") >> (bit & 7)) & self._mask

    def set(self, i: int, v: int) -> None:
        if not 0 <= i < self.count:
            raise IndexError(f"index {i} out of range for {self.count} elements")
        w = self.width
        if v < 0 or v > self._mask:
            raise ValueError(f"value {v} does not fit in {w} bits")
        if w == 0:
            return
        bit = i * w
        lo = bit >> 3
        hi = (bit + w + 7) >> 3
        chunk = int.from_bytes(self.buf[lo:hi], "little")
        shift = bit & 7
        chunk = (chunk & ~(self._mask << shift)) | (v << shift)
        self.buf[lo:hi] = chunk.to_bytes(hi - lo, "little")

    def values(self) -> list:
        return [self.get(i) for i in range(self.count)]

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        for i in range(self.count):
            yield self.get(i)

    def write(self, w: ByteWriter) -> None:
        w.u8(TAG_FIXED_WIDTH)
        w.u64(self.count)
        w.u8(self.width)
        w.raw(self.buf)

    @classmethod
    def read(cls, r: ByteReader, what: str = "fixed-width array") -> "FixedWidthArray":
        r.expect_tag(TAG_FIXED_WIDTH, what)
        count = r.u64()
        width = r.u8()
        if width > 64:
            raise SlpFormatError(f"{what}: width {width} out of range")
        payload = r.take((count * width + 7) // 8)
        return cls(count, width, bytearray(payload))

    def serialized_size(self) -> int:
        return 1 + 8 + 1 + len(self.buf)


class DenseBitVector:
    """Plain bitvector with a sampled rank directory.

    rank1/select1/select0 use 1-based positions and ranks: rank1(i)
    counts set bits among positions 1..i, select1(k) returns the
    position of the k-th set bit.
    """

    BLOCK_BYTES = 64  # directory sampling stride (512 bits)

    __slots__ = ("nbits", "ones", "buf", "_rank_dir")

    def __init__(self, nbits: int, buf: bytearray):
        if len(buf) != (nbits + 7) // 8:
            raise SlpFormatError(
                f"bitvector payload is {len(buf)} bytes for {nbits} bits"
            )
        if nbits & 7:
            # bits past nbits must be zero so popcounts stay honest
            buf[-1] &= (1 << (nbits & 7)) - 1
        self.nbits = nbits
        self.buf = buf
        dir_ = [0]
        total = 0
        pop = _POPCOUNT
        for off in range(0, len(buf), self.BLOCK_BYTES):
            for b in buf[off:off + self.BLOCK_BYTES]:
                total += pop[b]
            dir_.append(total)
        self.ones = total
        self._rank_dir = dir_

    @classmethod
    def from_positions(cls, nbits: int, positions) -> "DenseBitVector":
        """positions are 1-based indices of the set bits."""
        buf = bytearray((nbits + 7) // 8)
        for p in positions:
            if not 1 <= p <= nbits:
                raise ValueError(f"bit position {p} out of range 1..{nbits}")
            i = p - 1
            buf[i >> 3] |= 1 << (i & 7)
        return cls(nbits, buf)

    def bit(self, p: int) -> int:
        """Value of the bit at 1-based position p."""
        if not 1 <= p <= self.nbits:
            raise IndexError(f"position {p} out of range 1..{self.nbits}")
        i = p - 1
        return (self.buf[i >> 3] >> (i & 7)) & 1

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self.nbits:
            raise IndexError(f"rank1 position {i} out of range 0..{self.nbits}")
        if i == 0:
            return 0
        nbytes = i >> 3
        block = nbytes // self.BLOCK_BYTES
        total = self._rank_dir[block]
        pop = _POPCOUNT
        for b in self.buf[block * self.BLOCK_BYTES:nbytes]:
            total += pop[b]
        rem = i & 7
        if rem:
            total += pop[self.buf[nbytes] & ((1 << rem) - 1)]
        return total

    def _select_scan(self, k: int, want_ones: bool) -> int:
        # binary search the directory, then scan one block byte by byte
        dir_ = self._rank_dir
        lo, hi = 0, len(dir_) - 1
        bb = self.BLOCK_BYTES
        while lo < hi:
            mid = (lo + hi) // 2
            cum = dir_[mid] if want_ones else mid * bb * 8 - dir_[mid]
            if cum < k:
                lo = mid + 1
            else:
                hi = mid
        block = lo - 1
        run = dir_[block] if want_ones else block * bb * 8 - dir_[block]
        pop = _POPCOUNT
        byte_limit = min(len(self.buf), (block + 1) * bb)
        for off in range(block * bb, byte_limit):
            b = self.buf[off] if want_ones else ~self.buf[off] & 0xFF
            c = pop[b]
            if run + c >= k:
                for bi in range(8):
                    if (b >> bi) & 1:
                        run += 1
                        if run == k:
                            return off * 8 + bi + 1
            run += c
        raise AssertionError("select directory out of sync")

    def select1(self, k: int) -> int:
        if not 1 <= k <= self.ones:
            raise IndexError(f"select1 rank {k} out of range 1..{self.ones}")
        return self._select_scan(k, True)

    def select0(self, k: int) -> int:
        zeros = self.nbits - self.ones
        if not 1 <= k <= zeros:
            raise IndexError(f"select0 rank {k} out of range 1..{zeros}")
        p = self._select_scan(k, False)
        if p > self.nbits:
            raise IndexError(f"select0 rank {k} lands past the vector")
        return p

    def write(self, w: ByteWriter) -> None:
        w.u8(TAG_DENSE_BV)
        w.u64(self.nbits)
        w.raw(self.buf)

    @classmethod
    def read(cls, r: ByteReader) -> "DenseBitVector":
        nbits = r.u64()
        payload = r.take((nbits + 7) // 8)
        return cls(nbits, bytearray(payload))

    def serialized_size(self) -> int:
        return 1 + 8 + len(self.buf)


class SparseBitVector:
    """Elias-Fano encoding of a sparse set of 1-based bit positions.

    Stores the c set positions as low-bit/high-bit halves: the low
    floor(log2(nbits/c)) bits go to a packed array, the high halves to a
    unary-coded dense vector queried with select.
    """

    __slots__ = ("nbits", "ones", "low", "high", "_low_width")

    def __init__(self, nbits: int, ones: int, low: FixedWidthArray,
                 high: DenseBitVector):
        self.nbits = nbits
        self.ones = ones
        self.low = low
        self.high = high
        self._low_width = low.width
        if low.count != ones or high.ones != ones:
            raise SlpFormatError("sparse bitvector halves disagree on count")

    @staticmethod
    def _low_width_for(nbits: int, ones: int) -> int:
        if ones == 0:
            return 0
        ratio = nbits // ones
        return ratio.bit_length() - 1 if ratio >= 1 else 0

    @classmethod
    def from_positions(cls, nbits: int, positions) -> "SparseBitVector":
        positions = sorted(positions)
        c = len(positions)
        lw = cls._low_width_for(nbits, c)
        mask = (1 << lw) - 1
        lows = []
        high_positions = []
        prev = 0
        for k, p in enumerate(positions):
            if not 1 <= p <= nbits:
                raise ValueError(f"bit position {p} out of range 1..{nbits}")
            if p <= prev:
                raise ValueError("duplicate bit position")
            prev = p
            v = p - 1
            lows.append(v & mask)
            high_positions.append((v >> lw) + k + 1)
        high_len = c + (((nbits - 1) >> lw) + 1 if nbits else 0) + 1
        return cls(nbits, c,
                   FixedWidthArray.from_values(lows, lw),
                   DenseBitVector.from_positions(high_len, high_positions))

    def select1(self, k: int) -> int:
        if not 1 <= k <= self.ones:
            raise IndexError(f"select1 rank {k} out of range 1..{self.ones}")
        bucket = self.high.select1(k) - k
        return ((bucket << self._low_width) | self.low.get(k - 1)) + 1

    def rank1(self, i: int) -> int:
        if not 0 <= i <= self.nbits:
            raise IndexError(f"rank1 position {i} out of range 0..{self.nbits}")
        if i == 0 or self.ones == 0:
            return 0
        v = i - 1
        lw = self._low_width
        bucket = v >> lw
        lo_target = v & ((1 << lw) - 1)
        # ones whose high half is < bucket sit before the bucket-th zero
        r0 = self.high.select0(bucket) - bucket if bucket else 0
        r1 = self.high.select0(bucket + 1) - (bucket + 1)
        # lows ascend inside a bucket; count entries <= lo_target
        lo_, hi_ = r0, r1
        low = self.low
        while lo_ < hi_:
            mid = (lo_ + hi_) // 2
            if low.get(mid) <= lo_target:
                lo_ = mid + 1
            else:
                hi_ = mid
        return lo_

    def bit(self, p: int) -> int:
        return self.rank1(p) - self.rank1(p - 1)

    def write(self, w: ByteWriter) -> None:
        w.u8(TAG_SPARSE_BV)
        w.u64(self.nbits)
        w.u64(self.ones)
        w.u8(self.low.width)
        w.raw(self.low.buf)
        w.u64(self.high.nbits)
        w.raw(self.high.buf)

    @classmethod
    def read(cls, r: ByteReader) -> "SparseBitVector":
        nbits = r.u64()
        ones = r.u64()
        lw = r.u8()
        low = FixedWidthArray(ones, lw, bytearray(r.take((ones * lw + 7) // 8)))
        high_bits = r.u64()
        high = DenseBitVector(high_bits, bytearray(r.take((high_bits + 7) // 8)))
        return cls(nbits, ones, low, high)

    def serialized_size(self) -> int:
        return 1 + 8 + 8 + 1 + len(self.low.buf) + 8 + len(self.high.buf)


def build_bitvector(nbits: int, positions):
    """Build a rank/select bitvector, picking the representation by density."""
    positions = sorted(positions)
    if nbits and len(positions) / nbits < SPARSE_DENSITY:
        return SparseBitVector.from_positions(nbits, positions)
    return DenseBitVector.from_positions(nbits, positions)


def read_bitvector(r: ByteReader, what: str = "bitvector"):
    tag = r.u8()
    if tag == TAG_DENSE_BV:
        return DenseBitVector.read(r)
    if tag == TAG_SPARSE_BV:
        return SparseBitVector.read(r)
    raise SlpFormatError(f"bad tag for {what}: got {tag:#x}")


_M64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """splitmix64 finalizer; the deterministic scrambler behind hashing and RNG."""
    x &= _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def _hash_with_salt(key: int, seed: int, salt: int) -> int:
    return mix64(key ^ mix64(seed ^ (salt * 0x9E3779B97F4A7C15)))


class SizeMphf:
    """Static minimal perfect hash from a fixed set of u64 keys onto [0, d).

    Hash-and-displace construction: first-level hash assigns keys to
    buckets; buckets are placed largest first by searching a per-bucket
    displacement whose second-level hash lands every key in a free slot;
    leftover single-key buckets take the remaining free slots directly.
    Queries on keys outside the build set return an arbitrary but
    in-range value.
    """

    KEYS_PER_BUCKET = 4
    DISP_LIMIT = 1 << 20
    MAX_ATTEMPTS = 64

    __slots__ = ("nkeys", "seed", "nbuckets", "codes")

    def __init__(self, nkeys: int, seed: int, nbuckets: int, codes: FixedWidthArray):
        self.nkeys = nkeys
        self.seed = seed
        self.nbuckets = nbuckets
        self.codes = codes

    @classmethod
    def build(cls, keys, seed: int = 0) -> "SizeMphf":
        keys = list(keys)
        d = len(keys)
        if d == 0:
            raise ValueError("cannot build a perfect hash over zero keys")
        if len(set(keys)) != d:
            raise ValueError("keys must be distinct")
        for attempt in range(cls.MAX_ATTEMPTS):
            attempt_seed = mix64(seed ^ (attempt * 0xA0761D6478BD642F)) or 1
            built = cls._build_once(keys, attempt_seed)
            if built is not None:
                mphf = cls(d, attempt_seed, built[0], built[1])
                # bijection sanity: every build key maps to a distinct slot
                image = {mphf.query(k) for k in keys}
                if len(image) == d:
                    return mphf
        raise RuntimeError(f"perfect hash construction failed after "
                           f"{cls.MAX_ATTEMPTS} seed attempts")

    @classmethod
    def _build_once(cls, keys, seed):
        d = len(keys)
        nbuckets = max(1, (d + cls.KEYS_PER_BUCKET - 1) // cls.KEYS_PER_BUCKET)
        buckets = [[] for _ in range(nbuckets)]
        for key in keys:
            buckets[_hash_with_salt(key, seed, 0) % nbuckets].append(key)
        order = sorted(range(nbuckets), key=lambda b: (-len(buckets[b]), b))
        occupied = bytearray(d)
        codes = [0] * nbuckets
        singles = []
        for b in order:
            bucket = buckets[b]
            if len(bucket) <= 1:
                if bucket:
                    singles.append(b)
                continue
            placed = cls._displace(bucket, seed, d, occupied)
            if placed is None:
                return None
            disp, slots = placed
            codes[b] = disp
            for s in slots:
                occupied[s] = 1
        free = [s for s in range(d) if not occupied[s]]
        free.reverse()
        for b in singles:
            slot = free.pop()
            codes[b] = cls.DISP_LIMIT + 1 + slot
            occupied[slot] = 1
        return nbuckets, FixedWidthArray.from_values(codes)

    @classmethod
    def _displace(cls, bucket, seed, d, occupied):
        for disp in range(1, cls.DISP_LIMIT):
            slots = []
            ok = True
            for key in bucket:
                s = _hash_with_salt(key, seed, disp) % d
                if occupied[s] or s in slots:
                    ok = False
                    break
                slots.append(s)
            if ok:
                return disp, slots
        return None

    @property
    def d(self) -> int:
        return self.nkeys

    def query(self, key: int) -> int:
        code = self.codes.get(_hash_with_salt(key, self.seed, 0) % self.nbuckets)
        if code > self.DISP_LIMIT:
            slot = code - self.DISP_LIMIT - 1
            return slot if slot < self.nkeys else slot % self.nkeys
        return _hash_with_salt(key, self.seed, code) % self.nkeys

    def write(self, w: ByteWriter) -> None:
        w.u8(TAG_SIZE_MPHF)
        w.u64(self.nkeys)
        w.u64(self.seed)
        w.u64(self.nbuckets)
        self.codes.write(w)

    @classmethod
    def read(cls, r: ByteReader) -> "SizeMphf":
        nkeys = r.u64()
        seed = r.u64()
        nbuckets = r.u64()
        codes = FixedWidthArray.read(r, "perfect hash codes")
        if codes.count != nbuckets:
            raise SlpFormatError("perfect hash bucket table has wrong length")
        return cls(nkeys, seed, nbuckets, codes)

    def serialized_size(self) -> int:
        return 1 + 24 + self.codes.serialized_size()


class ExplicitSizeMap:
    """Table-backed stand-in for SizeMphf with a caller-chosen bijection.

    Used when a specific size -> rank assignment must be reproduced.
    Same contract as SizeMphf: bijective on the build set, in-range on
    anything else.
    """

    __slots__ = ("nkeys", "_keys", "_values")

    def __init__(self, keys: list, values: list):
        self.nkeys = len(keys)
        self._keys = keys
        self._values = values

    @classmethod
    def build(cls, mapping: dict) -> "ExplicitSizeMap":
        d = len(mapping)
        if d == 0:
            raise ValueError("cannot build a size map over zero keys")
        if sorted(mapping.values()) != list(range(d)):
            raise ValueError("size map values must be a bijection onto 0..d-1")
        keys = sorted(mapping)
        return cls(keys, [mapping[k] for k in keys])

    @property
    def d(self) -> int:
        return self.nkeys

    def query(self, key: int) -> int:
        keys = self._keys
        lo, hi = 0, len(keys)
        while lo < hi:
            mid = (lo + hi) // 2
            if keys[mid] < key:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(keys) and keys[lo] == key:
            return self._values[lo]
        return key % self.nkeys  # garbage in, in-range out

    def write(self, w: ByteWriter) -> None:
        w.u8(TAG_EXPLICIT_MAP)
        w.u64(self.nkeys)
        FixedWidthArray.from_values(self._keys).write(w)
        FixedWidthArray.from_values(self._values).write(w)

    @classmethod
    def read(cls, r: ByteReader) -> "ExplicitSizeMap":
        nkeys = r.u64()
        keys = FixedWidthArray.read(r, "size map keys")
        values = FixedWidthArray.read(r, "size map values")
        if keys.count != nkeys or values.count != nkeys:
            raise SlpFormatError("size map arrays have wrong length")
        return cls(keys.values(), values.values())

    def serialized_size(self) -> int:
        w = ByteWriter()
        self.write(w)
        return len(w.getvalue())


def read_size_map(r: ByteReader):
    tag = r.u8()
    if tag == TAG_SIZE_MPHF:
        return SizeMphf.read(r)
    if tag == TAG_EXPLICIT_MAP:
        return ExplicitSizeMap.read(r)
    raise SlpFormatError(f"bad tag for size map: got {tag:#x}")


class GroupedArray:
    """Concatenation of per-group packed arrays, each with its own width.

    Element (g, k) lives at bit offset(g) + k * width(g) of one shared
    payload.  The per-group element counts are owned by the enclosing
    container and passed back in when deserializing.
    """

    __slots__ = ("widths", "counts", "buf", "_offsets")

    def __init__(self, widths: list, counts: list, buf: bytearray):
        if len(widths) != len(counts):
            raise SlpFormatError("grouped array widths/counts mismatch")
        offsets = []
        bit = 0
        for w_, c_ in zip(widths, counts):
            offsets.append(bit)
            bit += w_ * c_
        if len(buf) != (bit + 7) // 8:
            raise SlpFormatError(
                f"grouped array payload is {len(buf)} bytes, expected {(bit + 7) // 8}"
            )
        self.widths = widths
        self.counts = counts
        self.buf = buf
        self._offsets = offsets

    @classmethod
    def from_groups(cls, groups: list, widths: list | None = None) -> "GroupedArray":
        """groups: list of value lists, one per group."""
        if widths is None:
            widths = [max((v.bit_length() for v in g), default=0) for g in groups]
        counts = [len(g) for g in groups]
        total_bits = sum(w_ * c_ for w_, c_ in zip(widths, counts))
        buf = bytearray((total_bits + 7) // 8)
        acc = 0
        accbits = 0
        pos = 0
        for g, w_ in zip(groups, widths):
            cap = (1 << w_) - 1
            for v in g:
                if v < 0 or v > cap:
                    raise ValueError(f"value {v} does not fit in {w_} bits")
                acc |= v << accbits
                accbits += w_
                while accbits >= 8:
                    buf[pos] = acc & 0xFF
                    acc >>= 8
                    accbits -= 8
                    pos += 1
        if accbits:
            buf[pos] = acc & 0xFF
        return cls(list(widths), counts, buf)

    def get(self, g: int, k: int) -> int:
        w = self.widths[g]
        if w == 0:
            return 0
        if not 0 <= k < self.counts[g]:
            raise IndexError(f"element {k} out of range for group {g}")
        bit = self._offsets[g] + k * w
        lo = bit >> 3
        hi = (bit + w + 7) >> 3
        return (int.from_bytes(self.buf[lo:hi], "little") >> (bit & 7)) & ((1 << w) - 1)

    def group_values(self, g: int) -> list:
        return [self.get(g, k) for k in range(self.counts[g])]

    def write(self, w: ByteWriter) -> None:
        w.u8(TAG_GROUPED)
        w.u64(len(self.widths))
        FixedWidthArray.from_values(self.widths, width=7).write(w)
        w.u64(len(self.buf))
        w.raw(self.buf)

    @classmethod
    def read(cls, r: ByteReader, counts: list) -> "GroupedArray":
        r.expect_tag(TAG_GROUPED, "grouped array")
        ngroups = r.u64()
        if ngroups != len(counts):
            raise SlpFormatError("grouped array group count mismatch")
        widths = FixedWidthArray.read(r, "grouped array widths").values()
        paylen = r.u64()
        buf = bytearray(r.take(paylen))
        return cls(widths, list(counts), buf)

    def serialized_size(self) -> int:
        widths_size = FixedWidthArray.from_values(self.widths, width=7).serialized_size()
        return 1 + 8 + widths_size + 8 + len(self.buf)

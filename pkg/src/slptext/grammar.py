"""In-memory straight-line program (SLP) model and its brute-force oracle.

An SLP is a grammar generating exactly one byte string: binary rules
over a single integer symbol namespace, plus one top-level start
sequence.  Terminals take ids [0, sigma); rule k takes id sigma + k.
Rules may reference later rules as long as the reference graph is
acyclic.

Everything that claims to answer queries over an encoded text is tested
against `decompress`/`access_oracle` from this module, which expand the
grammar the obvious way and are trusted by construction.

File format SLP1 (little-endian): magic "SLP1", u64 sigma, u64 r,
u64 s, u64 n, sigma alphabet bytes, r pairs of u64 symbol ids, s u64
symbol ids.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .bits import SlpFormatError

SLP_MAGIC = b"SLP1"

# decompress memoizes per-rule expansions up to this combined budget
_MEMO_BUDGET = 1 << 28


@dataclass
class Slp:
    """alphabet: ascending distinct terminal bytes; rules[k] = (left, right)
    symbol ids; start: the top-level symbol sequence; text_length: n."""

    alphabet: bytes
    rules: list[tuple[int, int]]
    start: list[int]
    text_length: int

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def num_rules(self) -> int:
        return len(self.rules)


@dataclass
class GrammarStats:
    sigma: int
    n: int
    s: int
    r: int
    d: int
    h: int

    def line(self) -> str:
        return (f"sigma={self.sigma} n={self.n} s={self.s} "
                f"r={self.r} d={self.d} h={self.h}")


def validate(slp: Slp) -> list[str]:
    """Check every structural invariant; returns [] when the grammar is sound.

    Violations name the offending rule index (or the start rule) so a
    broken build pinpoints itself.
    """
    violations = []
    sigma = slp.sigma
    r = len(slp.rules)
    limit = sigma + r

    if list(slp.alphabet) != sorted(set(slp.alphabet)):
        violations.append("alphabet: terminals must be distinct and ascending")

    for k, rule in enumerate(slp.rules):
        if len(rule) != 2:
            violations.append(f"rule {k}: must have exactly two symbols")
            continue
        for side, sym in zip(("left", "right"), rule):
            if not 0 <= sym < limit:
                violations.append(f"rule {k}: {side} symbol {sym} undefined")

    if not slp.start:
        violations.append("start rule: empty")
    for pos, sym in enumerate(slp.start):
        if not 0 <= sym < limit:
            violations.append(f"start rule: symbol {sym} at index {pos} undefined")

    if violations:
        return violations

    # cycle check: iterative three-color DFS over the rule graph
    WHITE, GRAY, BLACK = 0, 1, 2
    color = bytearray(r)
    for k0 in range(r):
        if color[k0] != WHITE:
            continue
        stack = [(k0, 0)]
        color[k0] = GRAY
        while stack:
            k, child = stack[-1]
            if child == 2:
                color[k] = BLACK
                stack.pop()
                continue
            stack[-1] = (k, child + 1)
            sym = slp.rules[k][child]
            if sym < sigma:
                continue
            nk = sym - sigma
            if color[nk] == GRAY:
                violations.append(f"rule {nk}: cycle through non-terminal references")
                return violations
            if color[nk] == WHITE:
                color[nk] = GRAY
                stack.append((nk, 0))

    lengths = _rule_lengths(slp)
    total = sum(lengths[s - sigma] if s >= sigma else 1 for s in slp.start)
    if total != slp.text_length:
        violations.append(
            f"start rule: expands to {total} characters, text_length says "
            f"{slp.text_length}"
        )
    return violations


def _fold_rules(slp: Slp, leaf, combine) -> list[int]:
    """Bottom-up value per rule: combine(left_value, right_value), with
    `leaf` for terminals.  Tolerates forward references; raises on cycles."""
    sigma = slp.sigma
    rules = slp.rules
    r = len(rules)
    values = [0] * r
    done = bytearray(r)
    max_stack = 3 * r + 4  # every rule enters at most once per referencing edge
    for k0 in range(r):
        if done[k0]:
            continue
        stack = [k0]
        while stack:
            k = stack[-1]
            if done[k]:
                stack.pop()
                continue
            left, right = rules[k]
            pending = [c - sigma for c in (left, right)
                       if c >= sigma and not done[c - sigma]]
            if pending:
                stack.extend(pending)
                if len(stack) > max_stack:
                    raise SlpFormatError("rule references form a cycle")
                continue
            values[k] = combine(
                values[left - sigma] if left >= sigma else leaf,
                values[right - sigma] if right >= sigma else leaf,
            )
            done[k] = 1
            stack.pop()
    return values


def _rule_lengths(slp: Slp) -> list[int]:
    """Expansion length of every rule (terminals expand to one character)."""
    return _fold_rules(slp, 1, lambda a, b: a + b)


def _rule_heights(slp: Slp) -> list[int]:
    return _fold_rules(slp, 0, lambda a, b: 1 + (a if a > b else b))


def expansion_lengths(slp: Slp) -> list[int]:
    """Number of characters each rule expands to (terminals count 1)."""
    return _rule_lengths(slp)


def start_lengths(slp: Slp) -> list[int]:
    """Expansion length of each start-rule symbol, in order."""
    lengths = _rule_lengths(slp)
    sigma = slp.sigma
    return [lengths[s - sigma] if s >= sigma else 1 for s in slp.start]


def stats(slp: Slp) -> GrammarStats:
    """Summary statistics: alphabet size, text length, start width, rule
    count, distinct rule expansion lengths, and grammar height.

    Height is the edge count of the deepest rule-to-terminal chain;
    terminals stand at height 0, so a grammar with no rules has h = 0.
    """
    lengths = _rule_lengths(slp)
    heights = _rule_heights(slp)
    d = len(set(lengths))
    h = max(heights, default=0)
    st = GrammarStats(
        sigma=slp.sigma,
        n=slp.text_length,
        s=len(slp.start),
        r=len(slp.rules),
        d=d,
        h=h,
    )
    assert st.d <= st.r
    assert st.r == 0 or st.h >= 1
    return st


def decompress(slp: Slp) -> bytes:
    """Expand the grammar into the text it generates.

    Iterative so deep grammars cannot blow the recursion limit; each
    rule's expansion is memoized on first sight (within a byte budget),
    so repeated rules append in one step.
    """
    sigma = slp.sigma
    alphabet = slp.alphabet
    rules = slp.rules
    out = bytearray()
    memo: dict[int, bytes] = {}
    budget = _MEMO_BUDGET
    stack: list = list(reversed(slp.start))
    while stack:
        item = stack.pop()
        if type(item) is tuple:
            k, from_pos = item
            chunk = bytes(out[from_pos:])
            if budget >= len(chunk):
                memo[k] = chunk
                budget -= len(chunk)
            continue
        if item < sigma:
            out.append(alphabet[item])
            continue
        k = item - sigma
        got = memo.get(k)
        if got is not None:
            out += got
            continue
        stack.append((k, len(out)))
        left, right = rules[k]
        stack.append(right)
        stack.append(left)
    return bytes(out)


def access_oracle(slp: Slp, i: int) -> int:
    """Character at 1-based position i, by full decompression.

    Deliberately slow and obviously correct; the reference the real
    encodings are checked against.
    """
    if not 1 <= i <= slp.text_length:
        raise IndexError(f"position {i} out of range 1..{slp.text_length}")
    return decompress(slp)[i - 1]


def save_slp(slp: Slp) -> bytes:
    violations = validate(slp)
    if violations:
        raise SlpFormatError("refusing to serialize invalid grammar: "
                             + "; ".join(violations[:3]))
    parts = [SLP_MAGIC,
             struct.pack("<QQQQ", slp.sigma, len(slp.rules), len(slp.start),
                         slp.text_length),
             slp.alphabet]
    pack2 = struct.Struct("<QQ").pack
    parts.extend(pack2(a, b) for a, b in slp.rules)
    parts.append(struct.pack(f"<{len(slp.start)}Q", *slp.start))
    return b"".join(parts)


def load_slp(data: bytes) -> Slp:
    if data[:4] != SLP_MAGIC:
        raise SlpFormatError(f"bad magic: expected {SLP_MAGIC!r}, got {data[:4]!r}")
    if len(data) < 36:
        raise SlpFormatError("truncated header")
    sigma, r, s, n = struct.unpack_from("<QQQQ", data, 4)
    need = 36 + sigma + 16 * r + 8 * s
    if len(data) != need:
        raise SlpFormatError(f"file is {len(data)} bytes, header implies {need}")
    pos = 36
    alphabet = data[pos:pos + sigma]
    pos += sigma
    rules = []
    unpack2 = struct.Struct("<QQ").unpack_from
    for _ in range(r):
        rules.append(unpack2(data, pos))
        pos += 16
    start = list(struct.unpack_from(f"<{s}Q", data, pos))
    slp = Slp(alphabet=alphabet, rules=rules, start=start, text_length=n)
    violations = validate(slp)
    if violations:
        raise SlpFormatError("invalid grammar: " + "; ".join(violations[:3]))
    return slp

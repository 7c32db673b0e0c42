"""Pair-replacement grammar construction.

Repeatedly replaces the most frequent adjacent symbol pair in a working
sequence with a fresh non-terminal until no pair occurs twice, counting
occurrences left to right without overlaps; whatever survives becomes
the start rule.  Ties between equally frequent pairs go to the
lexicographically smallest (left, right), so runs are deterministic.

The sequence lives in flat arrays: symbol values, prev/next live links,
and a doubly threaded list of the registered occurrences of each pair.
Replacing one occurrence touches a constant number of cells.  Pair
selection uses a lazy max-heap whose keys are upper bounds on the true
counts; stale entries deflate when popped.  Only same-symbol pairs can
overlap themselves, so their exact non-overlapping count is computed on
demand instead of being tracked incrementally.
"""

from __future__ import annotations

import heapq
from array import array

from .grammar import Slp

_HOLE = -1


class _PairRec:
    __slots__ = ("count", "head", "pushed")

    def __init__(self):
        self.count = 0
        self.head = -1
        self.pushed = 0  # largest heap key ever pushed for this pair


def compress_sequence(seq, next_id: int):
    """Run pair replacement over `seq`.

    Fresh non-terminals take ids next_id, next_id + 1, ...  Returns
    (rules, remaining): rules[j] is the (left, right) pair that id
    next_id + j replaces, remaining is the surviving sequence.
    Symbols >= next_id may appear in the input (the forest builder uses
    one-off sentinels); they are never confused with new rules because
    callers reserve the id space.
    """
    n = len(seq)
    if n < 2:
        return [], list(seq)
    # pair keys pack two ids into 64 bits; fresh ids stay below the cap
    # too since at most n // 2 rules can ever be minted
    if max(seq) >= 1 << 32 or next_id + n // 2 >= 1 << 32:
        raise ValueError("symbol ids must stay below 2^32")

    sym = array("q", seq)
    nxt = array("q", range(1, n + 1))
    nxt[n - 1] = -1
    prv = array("q", range(-1, n - 1))
    tnx = array("q", bytes(8 * n))
    tpv = array("q", bytes(8 * n))

    table: dict[int, _PairRec] = {}
    heap: list = []

    def reg_add(i, push=True):
        # key is computed from the live neighbors, so call before any edit
        k = (sym[i] << 32) | sym[nxt[i]]
        rec = table.get(k)
        if rec is None:
            rec = _PairRec()
            table[k] = rec
        head = rec.head
        tnx[i] = head
        tpv[i] = -1
        if head != -1:
            tpv[head] = i
        rec.head = i
        rec.count += 1
        if push and rec.count >= 2 and rec.pushed < rec.count:
            rec.pushed = rec.count
            heapq.heappush(heap, (-rec.count, k, False))

    def reg_del(i):
        k = (sym[i] << 32) | sym[nxt[i]]
        rec = table[k]
        pn = tpv[i]
        nn = tnx[i]
        if pn != -1:
            tnx[pn] = nn
        else:
            rec.head = nn
        if nn != -1:
            tpv[nn] = pn
        rec.count -= 1

    for i in range(n - 1):
        reg_add(i, push=False)
    for k, rec in table.items():
        if rec.count >= 2:
            rec.pushed = rec.count
            heapq.heappush(heap, (-rec.count, k, False))

    def occurrences(rec):
        out = []
        i = rec.head
        while i != -1:
            out.append(i)
            i = tnx[i]
        out.sort()
        return out

    def nonoverlap_count(rec):
        # greedy left-to-right count; only same-symbol runs can overlap
        eff = 0
        forbid = -2
        for p in occurrences(rec):
            if p == forbid:
                forbid = -2
                continue
            eff += 1
            forbid = nxt[p]
        return eff

    rules: list[tuple[int, int]] = []

    while heap:
        negc, key, is_eff = heapq.heappop(heap)
        rec = table.get(key)
        if rec is None or rec.count < 2:
            if rec is not None:
                # let a future count rise push a fresh entry
                rec.pushed = 0
            continue
        c = -negc
        a = key >> 32
        b = key & 0xFFFFFFFF
        if is_eff:
            eff = nonoverlap_count(rec)
            if eff < 2:
                continue
            if c != eff:
                heapq.heappush(heap, (-eff, key, True))
                continue
        else:
            if c > rec.count:
                # stale upper bound: re-enter at the true count
                rec.pushed = rec.count
                heapq.heappush(heap, (-rec.count, key, False))
                continue
            if c < rec.count:
                continue  # a larger entry was pushed when the count rose
            if a == b:
                eff = nonoverlap_count(rec)
                if eff < c:
                    if eff >= 2:
                        heapq.heappush(heap, (-eff, key, True))
                    continue

        new_id = next_id + len(rules)
        rules.append((a, b))
        for p in occurrences(rec):
            if sym[p] != a:
                continue
            q = nxt[p]
            if q == -1 or sym[q] != b:
                continue
            lp = prv[p]
            rn = nxt[q]
            reg_del(p)
            if lp != -1:
                reg_del(lp)
            if rn != -1:
                reg_del(q)
            sym[p] = new_id
            sym[q] = _HOLE
            nxt[p] = rn
            if rn != -1:
                prv[rn] = p
            if lp != -1:
                reg_add(lp)
            if rn != -1:
                reg_add(p)

    out = []
    i = 0  # position 0 is never holed: holes are always right-hand elements
    while i != -1:
        out.append(sym[i])
        i = nxt[i]
    return rules, out


def repair_build(text: bytes) -> Slp:
    """Compress `text` into a grammar by repeated pair replacement."""
    if not text:
        raise ValueError("text must be non-empty")
    alphabet = bytes(sorted(set(text)))
    term_of = [0] * 256
    for t, byte in enumerate(alphabet):
        term_of[byte] = t
    seq = [term_of[byte] for byte in text]
    rules, start = compress_sequence(seq, len(alphabet))
    return Slp(alphabet=alphabet, rules=rules, start=start,
               text_length=len(text))

"""Content-defined chunking and the chunk-then-compress grammar pipeline.

A w-byte window slides over the text; a phrase break lands after every
position where the window's Karp-Rabin hash is 0 modulo the trigger
parameter p, and the final phrase ends at the text end.  Boundaries
depend only on window content, so repeated stretches of a repetitive
text chunk into repeated phrases and the distinct-phrase dictionary
plus phrase-id parse is far smaller than the text.

The grammar pipeline built on top:

  1. pair-compress the dictionary as a forest (one-off sentinels keep
     replacements from crossing phrase boundaries; rules are shared),
  2. fold each phrase's residual sequence left to right so the phrase
     is the complete expansion of a single symbol,
  3. pair-compress the parse over phrase-id terminals,
  4. substitute each phrase id in the parse grammar with that phrase's
     root symbol.

The splice is correct because step 2 guarantees a one-symbol root per
phrase, and it is cheap because both compressions see sequences much
shorter than the text.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grammar import Slp
from .repair import compress_sequence

# Rolling hash constants, fixed for reproducibility: polynomial hash
# with base 256 + 3 modulo the Mersenne prime 2^61 - 1.
KR_BASE = 259
KR_PRIME = (1 << 61) - 1

DEFAULT_WINDOW = 16
DEFAULT_MODULUS = 64


@dataclass(frozen=True)
class CtphParams:
    window: int = DEFAULT_WINDOW
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")


@dataclass
class Parse:
    """dictionary: distinct phrases in first-occurrence order;
    parse: phrase indices whose concatenation is the input."""

    dictionary: list[bytes]
    parse: list[int]


def phrase_cuts(text: bytes, params: CtphParams) -> list[int]:
    """End offsets (exclusive) of every phrase, in order; last is len(text)."""
    n = len(text)
    w = params.window
    p = params.modulus
    cuts: list[int] = []
    if n >= w:
        prime = KR_PRIME
        h = 0
        for byte in text[:w]:
            h = (h * KR_BASE + byte) % prime
        if h % p == 0:
            cuts.append(w)
        # out_tbl[b] = b * KR_BASE^(w-1), the term leaving the window
        top = pow(KR_BASE, w - 1, prime)
        out_tbl = [(b * top) % prime for b in range(256)]
        base = KR_BASE
        for i in range(w, n):
            h = ((h - out_tbl[text[i - w]]) * base + text[i]) % prime
            if not h % p:
                cuts.append(i + 1)
    if not cuts or cuts[-1] != n:
        cuts.append(n)
    return cuts


def ctph_parse(text: bytes, params: CtphParams | None = None) -> Parse:
    """Chunk `text` into phrases at content-defined boundaries."""
    if not text:
        raise ValueError("text must be non-empty")
    params = params or CtphParams()
    index: dict[bytes, int] = {}
    dictionary: list[bytes] = []
    parse: list[int] = []
    prev = 0
    for cut in phrase_cuts(text, params):
        phrase = text[prev:cut]
        prev = cut
        idx = index.get(phrase)
        if idx is None:
            idx = len(dictionary)
            index[phrase] = idx
            dictionary.append(phrase)
        parse.append(idx)
    return Parse(dictionary=dictionary, parse=parse)


def build_via_ctph(text: bytes, params: CtphParams | None = None) -> Slp:
    """Chunk, compress dictionary and parse separately, splice into one
    grammar for the whole text."""
    if not text:
        raise ValueError("text must be non-empty")
    params = params or CtphParams()
    parsed = ctph_parse(text, params)

    alphabet = bytes(sorted(set(text)))
    sigma = len(alphabet)
    term_of = [0] * 256
    for t, byte in enumerate(alphabet):
        term_of[byte] = t

    # forest: phrases joined by sentinels that occur exactly once each,
    # so no replaceable pair ever spans a boundary
    nphrases = len(parsed.dictionary)
    forest_len = sum(len(ph) for ph in parsed.dictionary) + nphrases
    sentinel_base = sigma + forest_len  # above any rule id this run can mint
    forest: list[int] = []
    for j, phrase in enumerate(parsed.dictionary):
        if j:
            forest.append(sentinel_base + j)
        forest.extend(term_of[byte] for byte in phrase)

    dict_rules, residual = compress_sequence(forest, sigma)

    phrase_seqs: list[list[int]] = []
    cur: list[int] = []
    for x in residual:
        if x >= sentinel_base:
            phrase_seqs.append(cur)
            cur = []
        else:
            cur.append(x)
    phrase_seqs.append(cur)

    # left-to-right fold: each phrase becomes one root symbol
    roots: list[int] = []
    for seq in phrase_seqs:
        acc = seq[0]
        for x in seq[1:]:
            dict_rules.append((acc, x))
            acc = sigma + len(dict_rules) - 1
        roots.append(acc)

    parse_rules, parse_start = compress_sequence(parsed.parse, nphrases)

    rd = len(dict_rules)

    def splice(x: int) -> int:
        return roots[x] if x < nphrases else sigma + rd + (x - nphrases)

    rules = dict_rules + [(splice(a), splice(b)) for a, b in parse_rules]
    start = [splice(x) for x in parse_start]
    return Slp(alphabet=alphabet, rules=rules, start=start,
               text_length=len(text))

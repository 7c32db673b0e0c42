"""Frozen serialized fixtures pin the on-disk formats.

If any of these tests break, the byte layout changed: either revert the
change or bump the container version and regenerate the fixtures
alongside an entry in the format documentation.
"""

import hashlib
from pathlib import Path

import pytest

from slptext import naive, shaped
from slptext.grammar import decompress, load_slp, save_slp
from slptext.naive import NaiveSlpEncoding
from slptext.repair import repair_build
from slptext.shaped import ShapedSlpEncoding

from conftest import GATTACA_TEXT, gattaca_slp

DATA = Path(__file__).parent / "data"

SHA256 = {
    "gattaca.slp": "558bc478659daf0a",
    "gattaca.sslp": "1c84628b42447a2a",
    "gattaca.nslp": "263b5b56a29b0aee",
    "woodchuck.slp": "e2fd1433ebb145dd",
    "woodchuck.sslp": "44465cd30d43b69a",
    "woodchuck.nslp": "bbe713f5a0f057bd",
}

WOODCHUCK_TEXT = (b"how_much_wood_would_a_woodchuck_chuck_if_a_woodchuck"
                  b"_could_chuck_wood" * 7)


@pytest.mark.parametrize("name", sorted(SHA256))
def test_fixture_digests_unchanged(name):
    blob = (DATA / name).read_bytes()
    assert hashlib.sha256(blob).hexdigest()[:16] == SHA256[name], \
        f"{name}: serialized layout drifted"


def test_encoders_still_reproduce_fixtures():
    g = gattaca_slp()
    assert save_slp(g) == (DATA / "gattaca.slp").read_bytes()
    assert shaped.encode(g, size_order={5: 1, 3: 2, 2: 0}).serialize() == \
        (DATA / "gattaca.sslp").read_bytes()
    assert naive.encode(g).serialize() == (DATA / "gattaca.nslp").read_bytes()
    w = repair_build(WOODCHUCK_TEXT)
    assert save_slp(w) == (DATA / "woodchuck.slp").read_bytes()
    assert shaped.encode(w, seed=11).serialize() == \
        (DATA / "woodchuck.sslp").read_bytes()
    assert naive.encode(w).serialize() == (DATA / "woodchuck.nslp").read_bytes()


@pytest.mark.parametrize("stem,text", [
    ("gattaca", GATTACA_TEXT),
    ("woodchuck", WOODCHUCK_TEXT),
])
def test_fixtures_answer_queries(stem, text):
    slp = load_slp((DATA / f"{stem}.slp").read_bytes())
    assert decompress(slp) == text
    se = ShapedSlpEncoding.deserialize((DATA / f"{stem}.sslp").read_bytes())
    ne = NaiveSlpEncoding.deserialize((DATA / f"{stem}.nslp").read_bytes())
    assert se.extract(1, len(text)) == text
    assert ne.extract(1, len(text)) == text
    for i in range(1, len(text) + 1, 7):
        assert se.access(i) == ne.access(i) == text[i - 1]

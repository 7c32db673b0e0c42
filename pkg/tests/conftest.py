import pytest

from slptext.grammar import Slp


def gattaca_slp() -> Slp:
    """Hand-built grammar for GATTAGATACAT$GATTACATAGAT.

    Alphabet $ A C G T takes ids 0..4; rules are listed bottom-up so
    ids are V=5, X=6, W=7, Y=8, Z=9 with V -> AT, X -> TA, W -> GV,
    Y -> CV, Z -> WX and the start rule Z W A Y $ Z Y A W.
    """
    DOL, A, C, G, T = range(5)
    V, X, W, Y, Z = range(5, 10)
    return Slp(
        alphabet=bytes(sorted(b"$ACGT")),
        rules=[(A, T), (T, A), (G, V), (C, V), (W, X)],
        start=[Z, W, A, Y, DOL, Z, Y, A, W],
        text_length=25,
    )


GATTACA_TEXT = b"GATTAGATACAT$GATTACATAGAT"


@pytest.fixture
def gattaca():
    return gattaca_slp()

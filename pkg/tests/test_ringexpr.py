import random

import pytest

from zdgraph import rings as R
from zdgraph.errors import RingSemanticError, RingSyntaxError
from zdgraph.ringexpr import parse_ring_spec, render_ring_spec


def test_parse_examples():
    assert parse_ring_spec("Z/27") == R.Zn(27)
    assert parse_ring_spec("Z/2 x GF(3)") == R.Product((R.Zn(2), R.GF(3, 1)))
    assert parse_ring_spec("Z/4[x]/(x^2)") == R.MonicQuotient(R.Zn(4), (0, 0, 1))
    assert parse_ring_spec("GF(9)") == R.GF(3, 2)
    assert parse_ring_spec("GF(16)") == R.GF(2, 4)
    assert parse_ring_spec("FamA(2,3)") == R.FamA(2, 3)
    assert parse_ring_spec("FamB(5)") == R.FamB(5)
    assert parse_ring_spec("Z/8[x]/(x^3+2x+1)") == R.MonicQuotient(R.Zn(8), (1, 2, 0, 1))
    assert parse_ring_spec("Z/4[x]/(x^2-2)") == R.MonicQuotient(R.Zn(4), (2, 0, 1))
    assert parse_ring_spec("Z/2 x Z/2 x Z/2") == R.Product((R.Zn(2),) * 3)


def test_gf_and_zn_are_distinct_specs():
    assert parse_ring_spec("GF(5)") != parse_ring_spec("Z/5")
    g = R.make_ring(parse_ring_spec("GF(5)"))
    z = R.make_ring(parse_ring_spec("Z/5"))
    assert all(g.mul(a, b) == z.mul(a, b) for a in range(5) for b in range(5))


@pytest.mark.parametrize("text", [
    "Z/27",
    "Z/2 x GF(3)",
    "Z/4[x]/(x^2)",
    "Z/9[x]/(x^3+x+2)",
    "FamA(2,3)",
    "FamB(5)",
    "FamC(7)",
    "FamD(3)",
    "GF(16)",
    "Z/6 x Z/10 x FamA(2,2)",
])
def test_round_trip(text):
    spec = parse_ring_spec(text)
    assert parse_ring_spec(render_ring_spec(spec)) == spec


def _random_spec(rng: random.Random, depth=0):
    choice = rng.randrange(8 if depth else 9)
    if choice == 0:
        return R.Zn(rng.randrange(2, 50))
    if choice == 1:
        return R.GF(rng.choice([2, 3, 5, 7]), rng.randrange(1, 4))
    if choice == 2:
        n = rng.randrange(2, 10)
        deg = rng.randrange(1, 4)
        coeffs = [rng.randrange(n) for _ in range(deg)] + [1]
        return R.MonicQuotient(R.Zn(n), tuple(coeffs))
    if choice == 3:
        return R.FamA(rng.choice([2, 3, 5]), rng.randrange(1, 5))
    if choice == 4:
        return R.FamB(rng.choice([2, 3, 5]))
    if choice == 5:
        return R.FamC(rng.choice([2, 3, 5]))
    if choice == 6:
        return R.FamD(rng.choice([2, 3, 5]))
    if choice == 7:
        return R.Zn(rng.randrange(2, 1000))
    return R.Product(tuple(_random_spec(rng, depth + 1) for _ in range(rng.randrange(2, 4))))


def test_round_trip_random_specs():
    rng = random.Random(123)
    for _ in range(500):
        spec = _random_spec(rng)
        assert parse_ring_spec(render_ring_spec(spec)) == spec


def test_semantic_errors():
    with pytest.raises(RingSemanticError):
        parse_ring_spec("Z/1")
    with pytest.raises(RingSemanticError):
        parse_ring_spec("GF(12)")
    with pytest.raises(RingSemanticError):
        parse_ring_spec("GF(1)")
    with pytest.raises(RingSemanticError):
        parse_ring_spec("FamA(4,2)")
    with pytest.raises(RingSemanticError):
        parse_ring_spec("FamA(2,0)")
    with pytest.raises(RingSemanticError):
        parse_ring_spec("Z/4[x]/(2x^2)")
    with pytest.raises(RingSemanticError):
        parse_ring_spec("Z/4[x]/(3)")


def test_syntax_errors_carry_positions():
    cases = ["", "Zebra", "Z/", "Z/4[x]/(x^2", "GF(", "FamA(2", "Z/6 x ", "x Z/6", "Z/27 junk"]
    for text in cases:
        with pytest.raises(RingSyntaxError) as info:
            parse_ring_spec(text)
        assert 1 <= info.value.position <= len(text) + 2, text
        assert info.value.expected


def test_fuzz_never_crashes():
    rng = random.Random(99)
    for _ in range(5000):
        length = rng.randrange(0, 30)
        text = "".join(chr(rng.randrange(32, 127)) for _ in range(length))
        try:
            parse_ring_spec(text)
        except (RingSyntaxError, RingSemanticError):
            pass

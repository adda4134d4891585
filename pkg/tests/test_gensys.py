import pytest

from m5gb.cli import format_system
from m5gb.gensys import SplitMix64, gen_dense_quadratic
from m5gb.verify import vanishes_at


def test_splitmix_reference_vectors():
    rng = SplitMix64(0)
    assert [rng.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]
    rng = SplitMix64(1234567)
    assert [rng.next() for _ in range(2)] == [6457827717110365317, 3203168211198807973]


def test_residue_range():
    rng = SplitMix64(9)
    draws = [rng.residue(101) for _ in range(5000)]
    assert min(draws) == 0 and max(draws) == 100


def test_shape_and_planted_point():
    F, point = gen_dense_quadratic(5, 10, 101, 42)
    assert len(F) == 10 and len(point) == 5
    assert all(len(f) <= 21 for f in F)
    assert all(f.degree() == 2 for f in F)
    assert vanishes_at(F, point)


def test_univariate_pair():
    F, point = gen_dense_quadratic(1, 2, 101, 0)
    assert point == [67]
    assert [repr(f) for f in F] == ["26*x1^2 + 88*x1 + 4", "12*x1^2 + 14*x1 + 37"]
    assert vanishes_at(F, point)


def test_deterministic():
    a = gen_dense_quadratic(6, 12, 101, 7)
    b = gen_dense_quadratic(6, 12, 101, 7)
    assert format_system(101, 6, a[0]) == format_system(101, 6, b[0])
    assert a[1] == b[1]
    assert gen_dense_quadratic(6, 12, 101, 8)[0] != a[0]


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("p", [3, 101, 65521])
def test_always_planted(seed, p):
    F, point = gen_dense_quadratic(4, 6, p, seed)
    assert vanishes_at(F, point)
    assert all(f.degree() == 2 for f in F)


def test_lex_order():
    F, point = gen_dense_quadratic(3, 4, 101, 1, order="lex")
    assert F[0].ring.order.kind == "lex"
    assert vanishes_at(F, point)


@pytest.mark.parametrize("args", [(0, 1, 101), (2, 0, 101), (2, 2, 4), (2, 2, 2)])
def test_invalid(args):
    with pytest.raises(ValueError):
        gen_dense_quadratic(*args)

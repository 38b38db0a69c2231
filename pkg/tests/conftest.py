import pytest

from realcert.cartan import CartanContext
from realcert.cli.polyspec import parse
from realcert.drinfeld import DrinfeldPoly, KRFactor
from realcert.graph import QFGraph

K = KRFactor

# vertex order is fixed so tests can refer to ids
FACTORS = {
    "line4": (6, [K(4, 0), K(2, 4), K(3, 9, 3), K(2, 14, 3)]),
    "glued-line4": (6, [K(4, 0), K(2, 4), K(3, 9, 3), K(1, 7)]),
    "no-rds5": (3, [K(2, 0), K(1, 3), K(3, 3), K(2, 6), K(2, 6)]),
    "triangle3": (4, [K(1, 2, 3), K(3, 6, 3), K(2, 9, 3)]),
}
HALF = [K(2, 0), K(1, 3), K(3, 3), K(2, 6), K(2, 6)]
MIRROR_HALF = [K(2, -4), K(1, -7), K(3, -7), K(2, -10), K(2, -10)]
FACTORS["no-rds5-pair"] = (3, HALF + MIRROR_HALF)


def triangle(shift: int):
    return [K(1, 2 + shift, 3), K(3, 6 + shift, 3), K(2, 9 + shift, 3)]


FACTORS["triangle3-pair"] = (4, triangle(0) + triangle(14))
FACTORS["triangle3-triple"] = (4, triangle(0) + triangle(14) + triangle(28))


def graph(name: str) -> QFGraph:
    rank, fs = FACTORS[name]
    return QFGraph(CartanContext(rank), fs)


def poly(rank: int, factors) -> DrinfeldPoly:
    return DrinfeldPoly.from_factors(CartanContext(rank), factors)


def spec_poly(text: str) -> DrinfeldPoly:
    return parse(text).poly()


@pytest.fixture(params=sorted(FACTORS))
def named_graph(request):
    return request.param, graph(request.param)

from fractions import Fraction

import pytest

from graphchords import MetricGraph


@pytest.fixture
def single_edge():
    return MetricGraph({"u", "v"}, [("a", ("u", "v"))])


@pytest.fixture
def loop():
    return MetricGraph({"u"}, [("a", ("u", "u"))])


@pytest.fixture
def theta():
    return MetricGraph({"u", "v"}, [("a", ("u", "v")), ("b", ("u", "v")), ("c", ("u", "v"))])


@pytest.fixture
def triangle():
    return MetricGraph(
        {"u", "v", "w"},
        [("a", ("u", "v")), ("b", ("v", "w")), ("c", ("w", "u"))],
    )


@pytest.fixture
def figure_eight():
    return MetricGraph({"u"}, [("a", ("u", "u")), ("b", ("u", "u"))])


@pytest.fixture
def dumbbell():
    return MetricGraph(
        {"u", "v"},
        [("e", ("u", "v")), ("lu", ("u", "u")), ("lv", ("v", "v"))],
    )


def F(x) -> Fraction:
    return Fraction(x)

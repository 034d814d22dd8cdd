import pytest

from substream import parse_edge_list
from substream._kernels import warmup

FIG1_TEXT = """\
a c 3
a b 1
a b 2
c a 2
c e 9
b d 3
d f 1
e f 6
f c 7
"""

# sorted stream order: (a,b,1),(d,f,1),(a,b,2),(c,a,2),(a,c,3),(b,d,3),(e,f,6),(f,c,7),(c,e,9)
FIG1_SORTED = [
    ("a", "b", 1), ("d", "f", 1), ("a", "b", 2), ("c", "a", 2), ("a", "c", 3),
    ("b", "d", 3), ("e", "f", 6), ("f", "c", 7), ("c", "e", 9),
]


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    warmup()


@pytest.fixture(scope="session")
def fig1():
    return parse_edge_list(FIG1_TEXT)


@pytest.fixture()
def fig1_text():
    return FIG1_TEXT


def labeled_edges(stream):
    return [
        (stream.labels[e.tail], stream.labels[e.head], e.timestamp) for e in stream
    ]

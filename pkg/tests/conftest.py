import pytest

from gci.ambient import Ambient, LineBundle
from gci.construction import CechClass
from gci.poly import parse

P0_TEXT = "y0^2+y1^2+y2^2+y3^2+y4^2"
P1_TEXT = "y0^2+y4^2"
P2_TEXT = "y1^2+y3^2"
P3_TEXT = "y0^2+y1^2-y2^2-y3^2-y4^2"


@pytest.fixture(scope="session")
def toy_ambient():
    return Ambient.product([1, 1], names=[["y0", "y1"], ["z0", "z1"]],
                           distinguished=1)


@pytest.fixture(scope="session")
def toy_data(toy_ambient):
    """The smallest interesting instance: F = y0*z0^2 + y1*z1^2 with
    L = M = O(1) on the P^1 base, d = e = 2."""
    L = LineBundle(toy_ambient, (1, 0))
    M = LineBundle(toy_ambient, (1, 0))
    F = parse("y0*z0^2 + y1*z1^2", toy_ambient, (1, 2))
    q = CechClass(
        (
            parse("0", toy_ambient, (0, 0)),
            parse("1", toy_ambient, (0, 0)),
            parse("0", toy_ambient, (0, 0)),
        ),
        2, 2, 1,
    )
    return dict(ambient=toy_ambient, L=L, M=M, d=2, e=2, F=F, q=q)


@pytest.fixture(scope="session")
def cy_ambient():
    return Ambient.product(
        [4, 1],
        names=[["y0", "y1", "y2", "y3", "y4"], ["z0", "z1"]],
        distinguished=1,
    )


@pytest.fixture(scope="session")
def cy_data(cy_ambient):
    """The worked Calabi-Yau threefold instance on P^4 x P^1: four
    explicit quadrics, three coordinate linear forms, d = 3, e = 1."""
    amb = cy_ambient
    P = [parse(t, amb, (2, 0)) for t in (P0_TEXT, P1_TEXT, P2_TEXT, P3_TEXT)]
    Q = [parse(t, amb, (1, 0)) for t in ("y0", "y1", "y2")]
    F = parse(
        f"({P0_TEXT})*z0^3 + ({P1_TEXT})*z0^2*z1 + ({P2_TEXT})*z0*z1^2 + ({P3_TEXT})*z1^3",
        amb, (2, 3),
    )
    # q_j is the coefficient of z0^-j z1^(-4+j): innermost chart index first
    q = CechClass((Q[2], Q[1], Q[0]), 3, 1, 1)
    L = LineBundle(amb, (2, 0))
    M = LineBundle(amb, (3, 0))
    return dict(ambient=amb, L=L, M=M, d=3, e=1, F=F, q=q, P=P, Q=Q)


@pytest.fixture(scope="session")
def reducible_ambient():
    return Ambient.product(
        [2, 1, 1, 1],
        names=[["w0", "w1", "w2"], ["x0", "x1"], ["u0", "u1"], ["v0", "v1"]],
        distinguished=3,
    )

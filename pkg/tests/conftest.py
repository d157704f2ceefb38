import pytest

from ulpa import samples
from ulpa.leavitt import LeavittAlgebra
from ulpa.rings import QQ

SAMPLE_NAMES = ["G_LOOP", "G_LOOP2", "G_CHAIN", "G_MIX", "G_ULTRA"]


@pytest.fixture(params=SAMPLE_NAMES)
def sample_graph(request):
    return samples.load(request.param)


@pytest.fixture
def g_loop():
    return samples.load("G_LOOP")


@pytest.fixture
def g_loop2():
    return samples.load("G_LOOP2")


@pytest.fixture
def g_chain():
    return samples.load("G_CHAIN")


@pytest.fixture
def g_mix():
    return samples.load("G_MIX")


@pytest.fixture
def g_ultra():
    return samples.load("G_ULTRA")


@pytest.fixture
def alg_mix(g_mix):
    return LeavittAlgebra(g_mix, QQ)


@pytest.fixture
def alg_loop(g_loop):
    return LeavittAlgebra(g_loop, QQ)


@pytest.fixture
def alg_chain(g_chain):
    return LeavittAlgebra(g_chain, QQ)


@pytest.fixture
def alg_ultra(g_ultra):
    return LeavittAlgebra(g_ultra, QQ)

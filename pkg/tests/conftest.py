import pytest

from kgode import Params, State, classify, integrate, sweep


@pytest.fixture(scope="session")
def params():
    return Params.symmetric()


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # trigger JIT compilation once so timing-sensitive tests measure physics,
    # not compilation
    tiny = Params.symmetric(horizon=0.25)
    integrate(State.at_rest(0.1, 0.1), tiny)
    integrate(State.at_rest(0.1, 0.1), tiny, scheme="verlet")
    classify(0.1, 0.1, tiny)
    sweep((0.0, 0.1), (0.0, 0.1), 2, 2, tiny)

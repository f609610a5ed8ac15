import pytest
from hypothesis import HealthCheck, settings

from deltapi.padic import PadicCtx

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

M = 8

# quadratic test rings: Eisenstein t^2 - p, and unramified t^2 - n with n a non-square
CONTEXTS = {
    "Z5": PadicCtx.zp(5, M),
    "Z7": PadicCtx.zp(7, M),
    "ram5": PadicCtx.ramified(5, (-5, 0, 1), M),
    "ram7": PadicCtx.ramified(7, (-7, 0, 1), M),
    "unr5": PadicCtx.unramified(5, (-2, 0, 1), M),
    "unr7": PadicCtx.unramified(7, (-3, 0, 1), M),
}


@pytest.fixture(params=sorted(CONTEXTS))
def ctx(request):
    return CONTEXTS[request.param]


@pytest.fixture
def z5():
    return PadicCtx.zp(5, M)

import pytest
from hypothesis import HealthCheck, settings

from cotsum import PrecisionConfig

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture
def cfg():
    return PrecisionConfig()


@pytest.fixture
def cfg_ext():
    return PrecisionConfig(working_precision=113)

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def prime13():
    from silmarils.field import Prime

    return Prime(13)


@pytest.fixture(scope="session")
def prime251():
    from silmarils.field import Prime

    return Prime(251)

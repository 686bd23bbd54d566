import os

from hypothesis import HealthCheck, settings

from superflag import FlagType

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def ft(text: str) -> FlagType:
    return FlagType.parse(text)

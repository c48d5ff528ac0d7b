from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def rationals(bound: int = 30, positive: bool = False):
    num = st.integers(1, bound) if positive else st.integers(-bound, bound)
    return st.builds(Fraction, num, st.integers(1, bound))

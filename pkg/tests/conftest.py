import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from liereach.envelope import EnvElement, monomials_up_to  # noqa: E402
from liereach.gaussian import GaussianRational  # noqa: E402
from liereach.presets import ALGEBRAS, algebra  # noqa: E402

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

PRESET_ALGEBRAS = sorted(ALGEBRAS)

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussians = st.builds(GaussianRational, small_fracs, small_fracs)
nonzero_gaussians = gaussians.filter(bool)


def env_elements(alg, max_order=2, max_terms=4):
    monos = monomials_up_to(alg.d, max_order)
    return st.dictionaries(st.sampled_from(monos), gaussians, max_size=max_terms).map(
        lambda d: EnvElement(alg, d))


@pytest.fixture(params=PRESET_ALGEBRAS)
def preset_alg(request):
    return algebra(request.param)


def frac(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = [mod.RESULTS[k] for k in sorted(mod.RESULTS)] if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

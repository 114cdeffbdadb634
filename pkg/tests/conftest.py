import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from numsys.automata import OrderedDfa  # noqa: E402
from numsys.languages import EXAMPLES  # noqa: E402
from numsys.numeration import make_system  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_SYSTEMS = {}


def system(name):
    if name not in _SYSTEMS:
        _SYSTEMS[name] = make_system(EXAMPLES[name]())
    return _SYSTEMS[name]


@pytest.fixture(params=sorted(EXAMPLES))
def any_system(request):
    return system(request.param)


@st.composite
def random_dfas(draw, max_states=5, letters=("a", "b")):
    n = draw(st.integers(1, max_states))
    k = len(letters)
    delta = tuple(tuple(draw(st.integers(0, n - 1)) for _ in range(k)) for _ in range(n))
    finals = draw(st.frozensets(st.integers(0, n - 1)))
    return OrderedDfa.build(letters, delta, 0, finals)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])

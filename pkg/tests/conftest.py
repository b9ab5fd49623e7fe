import numpy as np
import pytest

from ammonia_rd.config import bundled_config_path, parse_config
from ammonia_rd.model import ModelParams, validate_model

BASELINE = dict(D1=3e-5, D2=1e-5, m1=0.0, m2=0.0, sigma1=1.5, sigma2=1.5, a1=7e-3, a2=1e-2,
            alpha1=1.5, beta1=0.5, alpha2=0.5, beta2=1.5, N=2)

_criteria = {}


def params(**over):
    data = dict(BASELINE)
    data.update(over)
    return ModelParams(**data)


def model(**over):
    return validate_model(params(**over))


def record(number, title, ok, detail=""):
    """Print and remember one acceptance verdict line."""
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  [{detail}]"
    _criteria[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_criteria):
            terminalreporter.write_line(_criteria[n])


@pytest.fixture
def baseline():
    return model()


@pytest.fixture(scope="session")
def bundled():
    return parse_config(bundled_config_path())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

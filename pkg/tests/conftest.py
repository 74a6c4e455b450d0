import pytest
from hypothesis import settings

from christol.corpus import random_instances, worked_instances
from christol.pipeline import compile_instance

settings.register_profile("default", deadline=None, derandomize=True, max_examples=100)
settings.load_profile("default")

CORPUS_SIZE = 216
CORPUS_SEED = 0


@pytest.fixture(scope="session")
def corpus():
    return worked_instances() + random_instances(CORPUS_SIZE, seed=CORPUS_SEED)


@pytest.fixture(scope="session")
def compiled(corpus):
    """Every corpus instance run through the pipeline once (no oracle)."""
    return [compile_instance(I.P, I.prefix, forward=True, verify=0) for I in corpus]


@pytest.fixture(scope="session")
def oracles(corpus):
    """(series to 4096 terms, kernel count, exact flag) per corpus instance."""
    from christol.furstenberg import degree_height, prepare
    from christol.series import DEFAULT_LMIN, DEFAULT_PRECISION, expand_root, kernel_oracle
    out = []
    for I in corpus:
        pre = prepare(degree_height(I.P), I.prefix).prefix
        f = expand_root(I.P, pre, max(4096, DEFAULT_PRECISION))
        count, exact, _ = kernel_oracle(I.P, pre, DEFAULT_PRECISION, DEFAULT_LMIN, series=f)
        out.append((f.coeffs[:4096], count, exact))
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

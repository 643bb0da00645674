import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

settings.register_profile(
    "braidbox", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("braidbox")

finite = st.floats(-2, 2, allow_nan=False, allow_infinity=False)


def complex_matrices(n: int, m: int | None = None):
    m = n if m is None else m
    return st.tuples(hnp.arrays(float, (n, m), elements=finite),
                     hnp.arrays(float, (n, m), elements=finite)).map(lambda p: p[0] + 1j * p[1])


seeds = st.integers(0, 2**32 - 1)


def haar(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture(scope="session")
def groups():
    from braidbox import cyclic_table, group_quantum_group, symmetric_group_table

    return {
        "Z2": group_quantum_group(cyclic_table(2), name="Z2"),
        "Z3": group_quantum_group(cyclic_table(3), name="Z3"),
        "Z4": group_quantum_group(cyclic_table(4), name="Z4"),
        "S3": group_quantum_group(symmetric_group_table(3), name="S3"),
    }


# acceptance verdicts, filled by tests/test_acceptance.py and printed at the end
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}: {title}")

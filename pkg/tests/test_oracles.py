"""Each recorded oracle value, one test per case."""
import pytest

import oracle_cases

ORACLES = oracle_cases.load_oracles()


@pytest.mark.parametrize("oracle", ORACLES, ids=[o["id"] for o in ORACLES])
def test_oracle(oracle, tmp_path):
    fn = getattr(oracle_cases, oracle["id"])
    value = fn(str(tmp_path)) if oracle["id"] in oracle_cases.NEEDS_TMP else fn()
    assert oracle_cases.compare(oracle["value"], value, atol=1e-12) == []

"""The ten acceptance criteria, each at its stated size and time target.

Run alone with ``python3 -m pytest tests/test_acceptance.py -v``; every
criterion prints one ``[PASS]``/``[FAIL]`` line.
"""
import pytest

from fin2cat.acceptance import CHECKS

LINES = []


@pytest.mark.slow
@pytest.mark.parametrize("check", CHECKS, ids=[f"{c.number:02d}-{c.__name__[6:]}" for c in CHECKS])
def test_criterion(check, capsys):
    res = check()
    LINES.append(res.line())
    with capsys.disabled():
        print("\n" + res.line())
    assert res.instances > 0
    assert res.failures == 0, res.first_failure
    assert res.within_time, f"{res.seconds:.1f}s exceeds the {res.target:.0f}s target"


def test_summary(capsys):
    # runs after the criteria in file order and repeats their verdicts together
    if not LINES:
        pytest.skip("no criteria were run")
    with capsys.disabled():
        print("\nacceptance summary")
        for line in LINES:
            print("  " + line)
    assert all(line.startswith("[PASS]") for line in LINES)

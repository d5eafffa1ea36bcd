"""Acceptance criteria AC-1 to AC-9, each run at its stated scale.

Every criterion prints one line ``AC-i: PASS|FAIL <experiment> ...`` to the
terminal, whatever the pytest capture mode.  Criteria are exact, so a single
counterexample fails the test.
"""

import pytest

from wlgenus.experiments import EXPERIMENTS, run_experiment

CRITERIA = sorted((ac, name) for name, (ac, _) in EXPERIMENTS.items())


@pytest.mark.parametrize("criterion,experiment", CRITERIA, ids=[ac for ac, _ in CRITERIA])
def test_acceptance(criterion, experiment, capsys):
    report = run_experiment(criterion, {"seed": 0})
    assert report.experiment == experiment
    failed = sorted(k for k, v in report.verdicts.items() if not v)
    line = f"{criterion}: {'PASS' if report.passed else 'FAIL'} {experiment} ({report.elapsed:.1f} s)"
    if failed:
        line += f" failed verdicts: {', '.join(failed)}"
    with capsys.disabled():
        print(f"\n{line}")
        for note in report.notes:
            print(f"    {note}")
    if not report.passed:
        pytest.fail(line, pytrace=False)

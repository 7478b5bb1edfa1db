"""The nine acceptance criteria, one pass/fail line each.

The lines are printed in the pytest terminal summary. Run this file
directly, or use scripts/run_acceptance.py outside pytest:

    python3 tests/test_acceptance.py
"""
import pytest

from monocell import suites

# runtime bounds in seconds, where a criterion sets one
BOUNDS = {1: 10, 2: 300, 6: 300}


def _record(log, number, res):
    bound = BOUNDS.get(number)
    line = f"criterion {number}: {res.line()}"
    if bound is not None:
        line += f" (bound {bound}s)"
    log.append(line)
    for msg in res.failures[:10]:
        log.append(f"    {msg}")
    assert res.passed, "\n".join(res.failures[:20]) or "no checks ran"
    if bound is not None:
        assert res.seconds < bound, f"took {res.seconds:.1f}s, bound {bound}s"


def test_c1_example_regressions(acceptance_log):
    _record(acceptance_log, 1, suites.example_regressions())


def test_c2_dual_oracle(corpus, acceptance_log):
    assert len(corpus) >= 200
    _record(acceptance_log, 2, suites.dual_oracle(corpus))


def test_c3_matroid(corpus, acceptance_log):
    _record(acceptance_log, 3, suites.matroid_suite(corpus))


def test_c4_exchange_projection(corpus, acceptance_log):
    _record(acceptance_log, 4, suites.projection_suite(corpus))


def test_c5_split_glue(corpus, acceptance_log):
    _record(acceptance_log, 5, suites.split_glue_suite(corpus, split_count=50))


def test_c6_regular_cell_evidence(corpus, acceptance_log):
    _record(acceptance_log, 6, suites.evidence_suite(corpus))


def test_c7_toric(acceptance_log):
    _record(acceptance_log, 7, suites.toric_suite())


@pytest.mark.slow
def test_c8_grid_fuzz(corpus, acceptance_log):
    _record(acceptance_log, 8, suites.fuzz_suite(corpus, fuzz=32))


def test_c9_mutation_kill(corpus, acceptance_log):
    _record(acceptance_log, 9, suites.mutation_suite(corpus))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

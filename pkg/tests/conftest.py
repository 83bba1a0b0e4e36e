import random
from functools import lru_cache
from pathlib import Path

import pytest

from taureg import catalog
from taureg.presentations import random_module
from taureg.algebra import opposite
from taureg.rep import direct_sum, dual, injective, simple

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

# criterion id -> list of (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@lru_cache(maxsize=None)
def alg(name):
    return catalog.algebra(name)


def _one_module(A, rng, max_dim):
    x = rng.random()
    if x < 0.8:
        B = A if x < 0.45 else opposite(A)
        for _ in range(5):
            M = random_module(B, rng, max_p0=3, max_p1=2, sparsity=0.5, max_dim=max_dim)
            if M.dim:
                break
        # over the opposite algebra: a kernel of a map between injectives
        return M if B is A else dual(M)
    i = rng.randint(1, A.n)
    return simple(A, i) if x < 0.9 else injective(A, i)


def small_module(A, rng, max_dim=6):
    """Random module of moderate size, sometimes a sum of two."""
    M = _one_module(A, rng, max_dim)
    if rng.random() < 0.3:
        N = _one_module(A, rng, max(1, max_dim - M.dim))
        if M.dim + N.dim <= max_dim + 2:
            M = direct_sum(M, N)
    return M


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c.split()[0])):
        results = ACCEPTANCE[cid]
        ok = all(r for r, _ in results)
        details = "; ".join(d for _, d in results if d)
        runs = f"[{sum(r for r, _ in results)}/{len(results)} runs passed]"
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {cid}  {runs}  {details}".rstrip())

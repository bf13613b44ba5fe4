import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ainfty.cochains import Cochain  # noqa: E402
from ainfty.graded import QQ, FieldSpec  # noqa: E402
from ainfty.tensor import words  # noqa: E402

F5 = FieldSpec.prime(5)
FIELDS = [QQ, F5]


def nonempty_degrees(A, n, target=None):
    """Internal degrees k for which C^{n,k}(A, target) has a nonzero elementary map."""
    src = A.space
    tgt = A.space if target is None else target
    ks = set()
    for w in words(src, n):
        q = sum(src.degrees[i] for i in w)
        for d in set(tgt.degrees):
            ks.add(d - q)
    return sorted(ks)


def random_cochain_on(rng, A, n, k=None, target=None, density=0.6):
    from ainfty.catalog import random_cochain

    tgt = A.space if target is None else target
    if k is None:
        k = rng.choice(nonempty_degrees(A, n, tgt))
    return random_cochain(rng, A.space, tgt, n, k, density)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def report(capsys):
    """Print a line straight to the terminal, bypassing capture."""
    def emit(line):
        with capsys.disabled():
            print(line)
    return emit

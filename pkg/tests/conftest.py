import itertools
import random

import pytest
from hypothesis import settings

settings.register_profile("suite", deadline=None, max_examples=40)
settings.load_profile("suite")


def random_arrangement(rng, dim, n, coeff=2):
    """Random essential-ish arrangement with small integer coefficients."""
    from arrpd.arrangement import Arrangement, InvalidForm, normalize

    forms = set()
    guard = 0
    while len(forms) < n and guard < 400:
        guard += 1
        vec = tuple(rng.randint(-coeff, coeff) for _ in range(dim))
        try:
            forms.add(normalize(vec))
        except InvalidForm:
            continue
    return Arrangement(dim, sorted(forms), normalized=True)


@pytest.fixture
def rng():
    return random.Random(20240817)

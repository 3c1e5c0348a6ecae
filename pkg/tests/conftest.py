import itertools

import pytest

from ancrystal import generate

# the desk-scale parameter set used throughout the acceptance suite:
# every (n, c) with n <= 3 and entries <= 2, plus n = 4 with entries <= 1
DESK_PARAMS = tuple(
    (n, c)
    for n in (1, 2, 3)
    for c in itertools.product(range(3), repeat=n)
) + tuple((4, c) for c in itertools.product(range(2), repeat=4))


@pytest.fixture(scope="session")
def crystals():
    """Session-wide cache of generated crystals keyed by (n, c, d)."""
    cache = {}

    def get(n, c, d=None):
        key = (n, tuple(c), None if d is None else tuple(d))
        if key not in cache:
            cache[key] = generate(n, c, d)
        return cache[key]

    return get

import functools

import pytest

from schubsig.cli import parse_space
from schubsig.cohomology import build_space


@functools.lru_cache(maxsize=None)
def space(text):
    """Cached model for a space string such as "G(2,4)" or "Q6"."""
    s = parse_space(text)
    return build_space(s.type_label, s.rank, s.node)


@pytest.fixture
def model():
    return space

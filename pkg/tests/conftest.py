import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from borel_orbits.root_system import build_cominuscule_data, build_root_system  # noqa: E402


@lru_cache(maxsize=None)
def system(t, n=None):
    return build_root_system(t, n)


@lru_cache(maxsize=None)
def comin(t, n, p):
    return build_cominuscule_data(system(t, n), p)


@pytest.fixture
def cd_c2():
    return comin("C", 2, 2)


@pytest.fixture
def cd_c3():
    return comin("C", 3, 3)


@pytest.fixture
def cd_c5():
    return comin("C", 5, 5)

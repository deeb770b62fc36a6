"""
Fixture condivise dai test: scale ridotte, parametri di packing veloci,
famiglie di codici piccole.
"""

import numpy as np
import pytest

from dimension import PackingParams, ScaleLadder
from sets import Placement, kakeya_union_builder


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def short_ladder():
    """Quattro scale 0.3 ... 0.3·2^-1.5 (rapporto √2)."""
    return ScaleLadder.geometric(0.3, 0.3 * 2 ** -1.5, 4)


@pytest.fixture
def fine_ladder():
    """Quattro scale 0.1 ... 0.0125 (rapporto 2) per insiemi 1-D riscalati."""
    return ScaleLadder.geometric(0.1, 0.0125, 4)


@pytest.fixture
def fast_params():
    return PackingParams(stop_k=300, seed=0)


@pytest.fixture
def origin_family():
    return kakeya_union_builder(8, Placement.ORIGIN)


@pytest.fixture
def random_family():
    return kakeya_union_builder(32, Placement.RANDOM, rng_seed=1)

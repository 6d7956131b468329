import numpy as np
import pytest
from lsemStability.graphs import path_graph
from lsemStability.instances import GeneratorConfig, instability_instance, random_parameters


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def unstable():
    return instability_instance(1e-6)


@pytest.fixture
def random_path(rng):
    return random_parameters(path_graph(20), GeneratorConfig(h=0.2, d=200), rng)

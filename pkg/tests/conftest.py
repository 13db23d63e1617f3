from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from secindex.io import parse_system
from secindex.model import build_attack_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def chain_system():
    return parse_system((FIXTURES / "chain.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def chain_graph(chain_system):
    return build_attack_graph(chain_system)


@pytest.fixture(scope="session")
def collider_system():
    return parse_system((FIXTURES / "collider.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def collider_graph(collider_system):
    return build_attack_graph(collider_system)

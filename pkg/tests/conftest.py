"""Shared fixtures: small quotients used across the suite."""

import pytest

from roots.diagram import dynkin
from utils.config_loader import settings
from weyl.poset import full_group, generate_coset_poset


@pytest.fixture(scope="session")
def a3_middle():
    """(A3, crossed 2): the 2x2-box Young lattice."""
    return generate_coset_poset(dynkin("A", 3, crossed=[2]))


@pytest.fixture(scope="session")
def f4_poset():
    """(F4, crossed a) with Levi C3."""
    return generate_coset_poset(dynkin("F", 4, crossed=[1]))


@pytest.fixture(scope="session")
def d4_poset():
    """(D4, crossed 1 and 3) with Levi A2."""
    return generate_coset_poset(dynkin("D", 4, crossed=[1, 3]))


@pytest.fixture(scope="session")
def a3_group():
    return full_group(dynkin("A", 3))


@pytest.fixture(scope="session")
def b3_group():
    return full_group(dynkin("B", 3))


@pytest.fixture
def isolated_settings(monkeypatch, tmp_path):
    """Per-test overrides that leave the global settings untouched afterwards."""
    for name in ("max_elements", "jobs", "allow_large", "kl_convention"):
        monkeypatch.setattr(settings, name, getattr(settings, name))
    monkeypatch.setattr(settings, "cache_dir", str(tmp_path / "cache"))
    return settings

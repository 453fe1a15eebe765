"""Shared corpus fixtures (session-scoped: synthesis of the big grids is the
dominant cost and every module exercises the same three regimes)."""

import pytest

from superosc import presets


@pytest.fixture(scope="session")
def cert_pair():
    return presets.cert_pair()


@pytest.fixture(scope="session")
def cert_signal(cert_pair):
    return presets.cert_signal(cert_pair)


@pytest.fixture(scope="session")
def cert_spectrum(cert_signal):
    return presets.cert_spectrum(cert_signal)


@pytest.fixture(scope="session")
def dyn_pair():
    return presets.dyn_pair()


@pytest.fixture(scope="session")
def dyn_signal(dyn_pair):
    return presets.dyn_signal(dyn_pair)


@pytest.fixture(scope="session")
def dyn_particle(dyn_pair):
    return presets.dyn_particle(dyn_pair)


@pytest.fixture(scope="session")
def mild_signal():
    return presets.mild_signal()


@pytest.fixture(scope="session")
def mild_pair():
    return presets.mild_pair()


@pytest.fixture(scope="session")
def mild_pair_real(mild_pair):
    return presets.mild_pair_signal_real(mild_pair)

import json

import pytest

from blowdown import Construction, build_model, load_construction


@pytest.fixture(scope="session")
def main_construction() -> Construction:
    return load_construction("main_k3")


@pytest.fixture(scope="session")
def pencil2_construction() -> Construction:
    return load_construction("pencil2_k3")


@pytest.fixture(scope="session")
def k4_construction() -> Construction:
    return load_construction("k4")


@pytest.fixture(scope="session")
def main_model(main_construction):
    return build_model(main_construction)


@pytest.fixture(scope="session")
def pencil2_model(pencil2_construction):
    return build_model(pencil2_construction)


@pytest.fixture(scope="session")
def k4_model(k4_construction):
    return build_model(k4_construction)


@pytest.fixture()
def main_raw(main_construction):
    # A fresh mutable copy per test; mutation tests edit it in place.
    with open(main_construction.source_path, "r", encoding="utf-8") as handle:
        return json.load(handle)


@pytest.fixture()
def pencil2_raw(pencil2_construction):
    with open(pencil2_construction.source_path, "r", encoding="utf-8") as handle:
        return json.load(handle)

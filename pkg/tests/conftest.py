import json
from importlib import resources

import pytest

from covseg.covers import CoverSpec
from covseg.segments import CuspidalDatum, Multisegment, Segment

ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_record():
    """Record one acceptance criterion; printed in the terminal summary."""

    def record(name: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE.append((name, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}  {detail}")


@pytest.fixture(scope="session")
def schema_registry():
    from referencing import Registry, Resource

    resources_ = []
    for entry in resources.files("covseg").joinpath("schemas").iterdir():
        if entry.name.endswith(".json"):
            doc = json.loads(entry.read_text())
            resources_.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources_)


@pytest.fixture(scope="session")
def validate(schema_registry):
    from jsonschema import Draft202012Validator

    def check(instance, name: str) -> None:
        schema = schema_registry.contents(f"urn:covseg:{name}")
        Draft202012Validator(schema, registry=schema_registry).validate(instance)

    return check


def seg(rho, a, b):
    return Segment(rho, a, b)


def ms(*segs):
    return Multisegment(segs)


@pytest.fixture
def rho():
    return CuspidalDatum("rho", 1, 1)


@pytest.fixture
def kp2():
    return CoverSpec.kp(2, 0)

import pytest

from qonsager.rewrite import cached_system
from qonsager.scalars import agreement_points, symbolic_field, SpecializedField
from qonsager.tower import tower_for


@pytest.fixture(scope="session")
def F():
    return symbolic_field()


@pytest.fixture(scope="session")
def rs(F):
    return cached_system(8, F)


@pytest.fixture(scope="session")
def tower(F):
    return tower_for(F)


@pytest.fixture(scope="session", params=range(3), ids=["default", "second", "third"])
def spec_field(request):
    return SpecializedField(agreement_points()[request.param])

import pytest

from kassoc import scenarios


@pytest.fixture(scope="session")
def example1():
    return scenarios.builtin("example1")


@pytest.fixture(scope="session")
def example2():
    return scenarios.builtin("example2")


@pytest.fixture(scope="session")
def all_builtins():
    return {name: scenarios.builtin(name) for name in scenarios.BUILTINS}

import pytest

from clinrel.synth import GeneratorConfig, generate_synthetic


@pytest.fixture(scope="session")
def corpus40():
    """The default 40-document seed-42 synthetic corpus, built once per run."""
    return generate_synthetic(GeneratorConfig())

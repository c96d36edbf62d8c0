import hypothesis
import pytest

hypothesis.settings.register_profile("default", deadline=None, max_examples=50)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=300)
hypothesis.settings.load_profile("default")


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Run from an empty directory with no TANGENT_* variables set."""
    for name in ("TANGENT_RING", "TANGENT_SEED", "TANGENT_CONFIG"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path

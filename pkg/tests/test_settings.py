import logging

import pytest

from deltawall.errors import DomainError
from deltawall.settings import (
    OutputSettings,
    QuadratureSettings,
    ResonanceSettings,
    RootSettings,
    Settings,
)


def test_defaults():
    settings = Settings()
    assert settings.roots == RootSettings()
    assert settings.resonances.accept_tol == 1e-10
    assert settings.quadrature.cutoff == 1e-12
    assert settings.shooting.x_max is None
    assert settings.output.format == "csv"


def test_yaml_sections(tmp_path):
    config = tmp_path / "deltawall.yaml"
    config.write_text(
        "roots:\n"
        "  xtol: 1.0e-12\n"
        "resonances:\n"
        "  seed-samples: '800'\n"
        "  accept-tol: 1e-9\n"
        "shooting:\n"
        "  x-max: 80\n"
        "output:\n"
        "  format: json\n"
    )
    settings = Settings(config)
    assert settings.roots.xtol == 1e-12
    assert settings.resonances.seed_samples == 800
    assert settings.resonances.accept_tol == 1e-9
    assert settings.shooting.x_max == 80.0
    assert settings.output.format == "json"
    assert settings.quadrature == QuadratureSettings()


def test_unknown_keys_are_logged(tmp_path, caplog):
    config = tmp_path / "deltawall.yaml"
    config.write_text("roots:\n  bogus: 1\nplugins:\n  a: 1\n")
    with caplog.at_level(logging.WARNING):
        Settings(config)
    assert 'Ignoring unknown RootSettings setting "bogus"' in caplog.text
    assert 'Ignoring unknown settings section "plugins"' in caplog.text


@pytest.mark.parametrize(
    "text",
    [
        "- a list\n",
        "output:\n  format: xml\n",
        "roots:\n  maxiter: 0\n",
        "quadrature:\n  epsabs: not-a-number\n",
    ],
)
def test_invalid_files(tmp_path, text):
    config = tmp_path / "deltawall.yaml"
    config.write_text(text)
    with pytest.raises(DomainError):
        Settings(config)


def test_missing_file(tmp_path):
    with pytest.raises(DomainError):
        Settings(tmp_path / "missing.yaml")


def test_override():
    settings = Settings().override(tol=1e-8, workers=3)
    assert settings.resonances.accept_tol == 1e-8
    assert settings.roots.xtol == 1e-8
    assert settings.output.workers == 3
    with pytest.raises(DomainError):
        Settings().override(workers=0)


def test_section_validation():
    with pytest.raises(DomainError):
        OutputSettings(workers=0)
    with pytest.raises(DomainError):
        ResonanceSettings(accept_tol=0.0)

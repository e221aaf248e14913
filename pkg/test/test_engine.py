from omegaconf import OmegaConf

from hypercsi.engine import CONFIG_ENV_VAR, Engine, configure_logging


def test_defaults_without_file(tmp_path, monkeypatch):
    monkeypatch.setenv(CONFIG_ENV_VAR, str(tmp_path / "absent.yaml"))

    cfg = Engine.load()

    assert cfg.unmix.eta == 0.9
    assert cfg.io.float_format == "%.17g"
    assert cfg.synth.pool_factor == 200


def test_file_overrides_defaults(tmp_path, monkeypatch):
    path = tmp_path / "conf.yaml"
    path.write_text("unmix:\n  eta: 0.75\n")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))

    cfg = Engine.load()

    assert cfg.unmix.eta == 0.75
    assert cfg.unmix.threads == 1


def test_write_conf(tmp_path):
    path = str(tmp_path / "config" / "conf.yaml")

    Engine.write_conf(path)

    assert OmegaConf.to_container(OmegaConf.load(path)) == Engine.get_default_conf()


def test_configure_logging():
    configure_logging()
    configure_logging("warning")

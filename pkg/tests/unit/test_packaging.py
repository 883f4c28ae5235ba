import pathlib

import iniconfig

SETUP_CFG = pathlib.Path(__file__).resolve().parents[2] / "setup.cfg"


def test_setup_cfg_is_valid_pytest_ini():
    cfg = iniconfig.IniConfig(str(SETUP_CFG))
    assert cfg["tool:pytest"]["testpaths"] == "tests"
    extras = cfg["options.extras_require"]
    assert "pytest" in extras["tests"]
    assert {"tests", "dev", "docs", "docsauto"} <= set(extras)

import os

import pytest

from qsymkit import config
from qsymkit.datalogging import DataLogger
from qsymkit.fixtures import counterexample_posets
from qsymkit.poset import Poset


@pytest.fixture(scope="function", autouse=False)
def restored_config():
    """ Allow a test to load another config; the packaged one is restored afterwards. """
    yield config.CONFIG_INI
    config.load_config_ini(config.get_config_ini_path())


@pytest.fixture()
def local_config(tmpdir, restored_config):
    """ Factory writing a config file with `[section] key = value` overrides and loading it. """
    def _load(**sections):
        parser = config.CONFIG_INI.self
        path = os.path.join(str(tmpdir), "config_test.ini")
        lines = []
        for section in parser.sections():
            lines.append(f"[{section}]")
            overrides = sections.get(section, {})
            for key in parser[section]:
                value = overrides.get(key, parser.get(section, key, raw=True))
                lines.append(f"{key} = {value}")
        with open(path, "w") as stream:
            stream.write("\n".join(lines) + "\n")
        return config.load_config_ini(path)
    return _load


@pytest.fixture()
def vee():
    """ a < b, a < c """
    return Poset.from_covers(3, [(0, 1), (0, 2)])


@pytest.fixture()
def wedge():
    """ a < c, b < c """
    return Poset.from_covers(3, [(0, 2), (1, 2)])


@pytest.fixture(scope="session")
def counterexample_pair():
    return counterexample_posets()


@pytest.fixture()
def poset_file(tmpdir):
    """ Factory writing poset text into a temporary file and returning its path. """
    counter = [0]

    def _write(text):
        counter[0] += 1
        path = os.path.join(str(tmpdir), f"posets{counter[0]}.poset")
        with open(path, "w", encoding="utf-8") as stream:
            stream.write(text)
        return path
    return _write


@pytest.fixture(autouse=True)
def detached_data_log_writers():
    """ Writers a failing test leaves attached must not receive the next test's events. """
    yield
    for writer in list(DataLogger._writers):
        DataLogger.remove_writer(writer)

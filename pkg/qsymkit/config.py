import configparser
import os

from qsymkit.qsymkit_types import Pointer
from qsymkit.util import find_package_location

config_file_name = "config.ini"
override_file_name = "config_local.ini"

"""
The intended use pattern is to not directly parse and import the config.ini each time
but to instead, parse it once and then import it via `from qsymkit.config import CONFIG_INI`.
"""
# All global state of the parsed config will be assigned to CONFIG_INI.
CONFIG_INI = Pointer(None)
# Path CONFIG_INI was read from, handed to worker processes.
CONFIG_INI_PATH = None

# The exhaustive poset enumerator can never be configured past this size.
ALL_POSETS_HARD_MAX = 6


def get_config_ini_path(package="qsymkit"):
    package_dir = find_package_location(package)
    config_path = os.path.join(package_dir, config_file_name)

    # Check if there is a local override config file (which is ignored by git).
    local_override_path = os.path.join(package_dir, override_file_name)
    if os.path.exists(local_override_path):
        config_path = local_override_path

    return config_path


def load_config_ini(config_filename):
    global CONFIG_INI, CONFIG_INI_PATH

    if not os.path.exists(config_filename):
        raise FileNotFoundError(f"Config file '{config_filename}' does not exist.")

    # Read config file once here.
    config = configparser.ConfigParser(allow_no_value=True)
    config._interpolation = configparser.ExtendedInterpolation()
    config.read(config_filename)

    CONFIG_INI.point_to(config)
    CONFIG_INI_PATH = os.path.abspath(config_filename)
    return config


def get_bound(name, unbounded=False):
    """ Size bound from the [bounds] section, or None when the caller opted out of bounds. """
    if unbounded and name != "all_posets_max":
        return None
    value = CONFIG_INI.getint("bounds", name)
    if name == "all_posets_max":
        value = min(value, ALL_POSETS_HARD_MAX)
    return value


load_config_ini(get_config_ini_path())

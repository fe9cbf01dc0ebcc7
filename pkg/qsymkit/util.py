import importlib.util
import logging
import multiprocessing
import os


def find_package_location(package='qsymkit'):
    return importlib.util.find_spec(package).submodule_search_locations[0]


def find_data_file(filename, package='qsymkit'):
    return os.path.join(find_package_location(package), "data", filename)


def str2bool(buffer):
    if buffer.lower() == "true":
        return True
    elif buffer.lower() == "false":
        return False
    else:
        raise ValueError(f"Expected case insensitive bool but got '{buffer}'")


def iter_bits(mask):
    """ Indices of the set bits of `mask`, ascending. """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements):
    mask = 0
    for element in elements:
        mask |= 1 << element
    return mask


def parallel_map(func, items, jobs=1, start_method=None, chunksize=None):
    """
    Map `func` over `items` on a worker pool and return the results in input order.

    :param func: Module level callable (it has to be picklable for the pool).
    :param items: Iterable of arguments.
    :param jobs: Number of worker processes. Anything <= 1 maps in-process.
    :param start_method: multiprocessing start method, defaults to the configured one.
    :param chunksize: Pool chunk size, defaults to an even split over 4 chunks per worker.
    :return: list of results.
    """
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) < 2:
        return [func(item) for item in items]

    from qsymkit import config
    if start_method is None:
        start_method = config.CONFIG_INI.get("verification", "multiprocessing_start_method", fallback="spawn")

    if chunksize is None:
        chunksize = max(1, len(items) // (4 * jobs))

    log = logging.getLogger(__name__)
    log.debug(f"Mapping {getattr(func, '__qualname__', repr(func))} over {len(items)} items with {jobs} '{start_method}' workers.")
    ctx = multiprocessing.get_context(start_method)
    # Spawned workers would otherwise re-read the packaged config.ini.
    with ctx.Pool(processes=jobs, initializer=_load_worker_config, initargs=(config.CONFIG_INI_PATH,)) as pool:
        return pool.map(func, items, chunksize=chunksize)


def _load_worker_config(path):
    from qsymkit.config import load_config_ini
    if path is not None:
        load_config_ini(path)

from .data_logger import get_logger, DataLogger
from .data_log_io import DataLogWriter, DataLogReader

from abc import ABC, abstractmethod
import logging
import time

from qsymkit import datalogging
from qsymkit.config import CONFIG_INI


class VerificationError(Exception):
    def __init__(self, *args):
        Exception.__init__(self, *args)


class Verification(ABC):
    """
    Abstract base class for the verification drivers. Subclasses implement `verify()`, which
    returns a `VerificationReport`; `start()` wraps it with timing, logging and data logging.
    """
    name = None

    log = logging.getLogger(__name__)
    data_log = datalogging.get_logger(__name__)

    def __init__(self, jobs=None, data_log_dir=None):
        """
        :param jobs: Worker processes for per-instance computations, defaults to [verification] jobs.
        :param data_log_dir: Directory for an ASDF data log of the run, or None for no data log.
        """
        self.jobs = CONFIG_INI.getint("verification", "jobs") if jobs is None else jobs
        self.data_log_dir = data_log_dir

        self.pre_verification_return = None
        self.report = None

    def pre_verification(self):
        """ This is called immediately BEFORE self.verify()."""
        pass

    @abstractmethod
    def verify(self):
        """ Run the checks and return a VerificationReport. """

    def post_verification(self, report):
        """ This is called immediately AFTER self.verify()."""
        pass

    def start(self):
        """
        Run the suite and return its report. Do not override.

        ValueErrors (bad input, exceeded bounds) propagate unchanged; any other unexpected
        exception is re-raised as a VerificationError.
        """
        data_log_writer = None
        start_time = time.perf_counter()
        try:
            if self.data_log_dir is not None:
                data_log_writer = datalogging.DataLogWriter(self.data_log_dir)
                datalogging.DataLogger.add_writer(data_log_writer)

            self.log.info(f"Starting {self.name} (jobs={self.jobs})...")
            self.pre_verification_return = self.pre_verification()

            report = self.verify()
            report.elapsed = time.perf_counter() - start_time
            self.report = report

            self.post_verification(report)

            self.data_log.log_scalar(f"{self.name}/instances", report.total_instances)
            self.data_log.log_scalar(f"{self.name}/violations", len(report.all_violations()))
            self.data_log.log_scalar(f"{self.name}/elapsed", report.elapsed)
            self.data_log.log_report(f"{self.name}/report", report)

            log_method = self.log.info if report.passed else self.log.error
            log_method(f"{self.name} finished in {report.elapsed:.3f} s: "
                       f"{report.total_instances} instances, {len(report.all_violations())} violations.")
            return report
        except KeyboardInterrupt:
            self.log.warning(f"{self.name}: caught ctrl-c, raising exception.")
            raise
        except ValueError:
            raise
        except Exception as error:
            verification_error = VerificationError(f"{self.name} aborted by an unexpected problem: {error}")
            self.log.critical(verification_error)
            raise verification_error from error
        finally:
            if data_log_writer is not None:
                datalogging.DataLogger.remove_writer(data_log_writer)
                data_log_writer.close()

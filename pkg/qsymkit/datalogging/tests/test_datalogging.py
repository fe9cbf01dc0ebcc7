import os

import numpy as np
import pytest

import qsymkit.datalogging
from qsymkit.qsym import QSymElement, coefficient_vector


def test_data_log_interface(tmpdir):
    logger = qsymkit.datalogging.get_logger(__name__)

    # Make sure this doesn't crash, even though nothing should be written out.
    logger.log_scalar('tag', 5)

    writer = qsymkit.datalogging.DataLogWriter(str(tmpdir))

    logger.log_scalar('tag2', 10)

    writer.close()


def test_data_log_refuses_overwrite(tmpdir):
    writer = qsymkit.datalogging.DataLogWriter(str(tmpdir))
    writer.close()

    with pytest.raises(ValueError):
        qsymkit.datalogging.DataLogWriter(str(tmpdir))


def test_data_log_creates_directory(tmpdir):
    log_dir = os.path.join(str(tmpdir), 'nested', 'run')
    writer = qsymkit.datalogging.DataLogWriter(log_dir)
    writer.close()

    reader = qsymkit.datalogging.DataLogReader(log_dir)
    assert reader.tags == []


def test_data_log_retrieval(tmpdir):
    logger = qsymkit.datalogging.get_logger(__name__)
    log_dir = str(tmpdir)

    writer = qsymkit.datalogging.DataLogWriter(log_dir, flush_every=2)
    qsymkit.datalogging.DataLogger.add_writer(writer)

    series = QSymElement.parse("2M_111 + M_12")
    tensor = coefficient_vector(series, 3)

    try:
        logger.log_scalar('instances', 115)
        logger.log_scalar('instances', np.int64(286))
        logger.log_scalar('instances', 1)

        logger.log_tensor('coefficients', tensor)

        logger.log_text('series', str(series))
        logger.log_text('canonical_form', b'3:0,2,a')

        logger.log_report('report', {'suite': 'injectivity', 'instances': 4, 'passed': True,
                                     'violations': []})

        with pytest.raises(ValueError):
            logger.log_text('instances', 'not a scalar')
    finally:
        # Unregister writer
        qsymkit.datalogging.DataLogger.remove_writer(writer)
        writer.close()

    reader = qsymkit.datalogging.DataLogReader(log_dir)

    wall_time, scalars = reader.get('instances')
    assert scalars == [115, 286, 1]
    assert np.all(np.diff(wall_time) >= 0)

    wall_time, scalars = reader.get('instances', slice(1, None))
    assert len(scalars) == 2
    assert len(wall_time) == 2

    wall_time, tensors = reader.get('coefficients')
    assert np.array_equal(tensors[0], tensor)

    _, texts = reader.get('series')
    assert QSymElement.parse(texts[0]) == series

    _, texts = reader.get('canonical_form')
    assert texts == ['3:0,2,a']

    _, reports = reader.get('report')
    assert reports[0]['suite'] == 'injectivity'
    assert reports[0]['passed']

    assert reader.tags == ['canonical_form', 'coefficients', 'instances', 'report', 'series']

    reader.close()

import logging

from info_logger import start_logging_info, stop_logging


class TestInfoLogger:

    ##########################################################################
    # start_logging_info() / stop_logging()

    def test_file_logging(self, tmp_path):
        log = tmp_path / "run.log"
        start_logging_info(str(log), verbose=True)
        logging.debug("debug line")
        stop_logging()
        assert "debug line" in log.read_text(encoding="utf-8")
        assert logging.getLogger().handlers == []

    def test_quiet_by_default(self, tmp_path):
        log = tmp_path / "run.log"
        start_logging_info(str(log))
        logging.debug("hidden")
        logging.warning("shown")
        stop_logging()
        text = log.read_text(encoding="utf-8")
        assert "hidden" not in text
        assert "shown" in text

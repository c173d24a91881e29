# utils/logger.py
import logging
import os

from pythonjsonlogger import jsonlogger


class CustomJsonFormatter(jsonlogger.JsonFormatter):
    def add_fields(self, log_record, record, message_dict):
        super(CustomJsonFormatter, self).add_fields(log_record, record, message_dict)
        if record.levelno >= logging.ERROR:
            log_record["lineno"] = record.lineno
            log_record["pathname"] = record.pathname


class JsonLogger:
    def __init__(self, log_file=None, level="WARNING"):
        self.logger = logging.getLogger("corrcomplete")
        self.logger.setLevel(level)
        self.logger.propagate = False
        if self.logger.handlers:
            return

        # stdout carries command output, logs go to stderr
        handlers = [logging.StreamHandler()]
        if log_file:
            handlers.append(logging.FileHandler(log_file))

        formatter = CustomJsonFormatter(
            "%(asctime)s %(name)s %(levelname)s %(message)s"
        )
        for handler in handlers:
            handler.setFormatter(formatter)
            self.logger.addHandler(handler)

    def get_logger(self):
        return self.logger


def set_level(level):
    logger.setLevel(level.upper() if isinstance(level, str) else level)


logger = JsonLogger(
    log_file=os.environ.get("CORRCOMPLETE_LOG_FILE"),
    level=os.environ.get("CORRCOMPLETE_LOG_LEVEL", "WARNING").upper(),
).get_logger()

from contextlib import contextmanager
import datetime
import functools
import sys
from typing import Callable, Optional

from loguru import logger


def configure_logging(level: str = "INFO", verbose: bool = False) -> None:
    """
    Route loguru to stderr at the given level.

    DEBUG records from the ``lapgap`` package are dropped unless ``verbose`` is set.

    Args:
        level: Minimum level for the stderr sink.
        verbose: Keep DEBUG records from lapgap modules.
    """
    logger.configure(
        handlers=[
            {
                "sink": sys.stderr,
                "level": "DEBUG" if verbose else level,
                "filter": lambda record: verbose
                or not (record["name"].startswith("lapgap") and record["level"].name == "DEBUG"),
            }
        ]
    )


def log_func(log_result: bool = False, message: Optional[str] = None) -> Callable:
    """Decorator to log execution time of a function.

    Args:
        log_result: If True, also log the function result
        message: Optional message to include in log statements for additional context
    """

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            log_message = message or func.__name__

            logger.debug(f"[START FUNC] {log_message}")
            start_time = datetime.datetime.now()
            result = func(*args, **kwargs)
            duration = (datetime.datetime.now() - start_time).total_seconds()
            logger.debug(f"[END FUNC] {log_message}. elapsed_time={duration:.2f}s")
            if log_result:
                logger.debug(f"[RESULT FUNC] {log_message}. {result=}")
            return result

        return wrapper

    return decorator


@contextmanager
def context_log(message: str):
    """
    Context manager that logs entry and exit messages.

    Args:
        message: The message to log (will be prefixed with [START] and [EXIT])

    Example:
        with context_log("sweep n=7"):
            # do something
    """
    logger.info(f"[START] {message}")
    start_time = datetime.datetime.now()

    try:
        yield
    except Exception as e:
        duration = (datetime.datetime.now() - start_time).total_seconds()
        logger.exception(f"[ERROR] {message}. duration={duration:.2f}s. {e}")
        raise
    finally:
        duration = (datetime.datetime.now() - start_time).total_seconds()
        logger.info(f"[EXIT] {message}. duration={duration:.2f}s")

from lapgap.utils.log_timing import configure_logging, context_log, log_func

__all__ = ["configure_logging", "context_log", "log_func"]

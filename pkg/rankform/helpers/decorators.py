import sys
from functools import wraps

from loguru import logger

from ..errors import RankFormError
from ..templates.messages import Messages


def exit_on_error(func):
    """Turn a command handler's exceptions into the exit-code contract.

    RankFormError subclasses carry their own code (2 validation, 3 numerical),
    unreadable files are usage errors, anything else is a crash and exits 1.
    """
    @wraps(func)
    def decorator(args) -> int:
        try:
            result = func(args)
            return 0 if result is None else result
        except RankFormError as e:
            logger.debug(f"{func.__name__} failed: {e!r}")
            print(Messages.ERROR.format(message=e.message), file=sys.stderr)
            return e.exit_code
        except OSError as e:
            logger.error(f"I/O error in {func.__name__}: {e}")
            print(Messages.ERROR.format(message=e), file=sys.stderr)
            return 2
        except Exception as e:
            logger.exception(f"Unexpected error in {func.__name__}: {e}")
            print(Messages.ERROR.format(message=e), file=sys.stderr)
            return 1

    return decorator

import collections
import contextlib
import logging
import threading
import time

from mopidy.internal.log import TRACE_LOG_LEVEL

logger = logging.getLogger(__name__)
TRACE = TRACE_LOG_LEVEL

CACHE_SIZE = 512


@contextlib.contextmanager
def time_logger(name, level=TRACE):
    start = time.time()
    yield
    end = time.time() - start
    logger.log(level, f"{name} took {int(end * 1000)}ms")


class memoized:  # noqa N801
    """Cache results by positional arguments, evicting least recently used.

    At most ``maxsize`` results are kept per function.
    """

    def __init__(self, func=None, *, maxsize=CACHE_SIZE):
        self.maxsize = maxsize
        self.cache = collections.OrderedDict()
        self._lock = threading.Lock()
        if func is not None:
            self._wrap(func)

    def _wrap(self, func):
        self.func = func
        self.__doc__ = func.__doc__
        self.__name__ = func.__name__

    def __call__(self, *args, **kwargs):
        if not hasattr(self, "func"):
            self._wrap(args[0])
            return self
        # NOTE Only args, not kwargs, are part of the memoization key.
        try:
            hash(args)
        except TypeError:
            return self.func(*args, **kwargs)
        with self._lock:
            if args in self.cache:
                self.cache.move_to_end(args)
                return self.cache[args]
        value = self.func(*args, **kwargs)
        if value is not None:
            with self._lock:
                self.cache[args] = value
                while len(self.cache) > self.maxsize:
                    self.cache.popitem(last=False)
        return value

    def clear(self):
        with self._lock:
            self.cache.clear()

"""
@file
@brief Named caches of objects indexed by the parameters
which define them, shared by the sparse operators
and the factorizations.
"""
import threading
import numpy

_caches = {}


class ObjectCache:
    """
    Stores objects indexed by the parameters which define them.
    The oldest object is removed first once the cache is full.
    Every access goes through a lock.
    """

    def __init__(self, name, max_size=32):
        """
        @param      name        name of the cache
        @param      max_size    maximum number of stored objects
        """
        self.name = name
        self.max_size = max_size
        self.cached = {}
        self.count_ = {}
        self._lock = threading.RLock()

    def __getstate__(self):
        state = self.__dict__.copy()
        del state['_lock']
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.RLock()

    def cache(self, params, value):
        """
        Caches one object.

        @param      params  parameters defining the object
        @param      value   object
        """
        key = self.as_key(params)
        with self._lock:
            if key in self.cached:
                raise KeyError(
                    "Key {0} already exists".format(params))
            if len(self.cached) >= self.max_size:
                oldest = next(iter(self.cached))
                del self.cached[oldest]
                del self.count_[oldest]
            self.cached[key] = value
            self.count_[key] = 0

    def get(self, params, default=None):
        """
        Retrieves an object.

        @param      params  parameters defining the object
        @param      default if not found
        @return             value or *default*
        """
        key = self.as_key(params)
        with self._lock:
            if key not in self.cached:
                return default
            self.count_[key] += 1
            return self.cached[key]

    def get_or_create(self, params, builder):
        """
        Retrieves an object, calls *builder()* and caches
        its result if it is missing.

        @param      params  parameters defining the object
        @param      builder function without argument
        @return             value
        """
        with self._lock:
            value = self.get(params)
            if value is None:
                value = builder()
                self.cache(params, value)
            return value

    def count(self, params):
        """
        Returns the number of times an object was reused.
        """
        with self._lock:
            return self.count_.get(self.as_key(params), 0)

    @staticmethod
    def as_key(params):
        """
        Converts parameters into a key.

        @param      params      string, dictionary or tuple
        @return                 key as a string
        """
        if isinstance(params, str):
            return params
        if isinstance(params, dict):
            params = tuple(sorted(params.items()))
        if not isinstance(params, tuple):
            raise TypeError(
                "Unable to create a key with {0}".format(type(params)))

        def fmt(v):
            if isinstance(v, tuple):
                return "(" + ",".join(fmt(e) for e in v) + ")"
            if isinstance(v, (float, numpy.floating)):
                return repr(float(v))
            if isinstance(v, (bool, int, str, numpy.integer)) or v is None:
                return repr(v)
            if isinstance(v, numpy.ndarray):
                return "h%d" % hash(v.tobytes())
            raise TypeError(
                "Unable to create a key with value {0}".format(v))

        return fmt(params)

    def __len__(self):
        return len(self.cached)

    def keys(self):
        """
        Enumerates all cached keys.
        """
        with self._lock:
            keys = list(self.cached)
        for k in keys:
            yield k

    def clear(self):
        "Removes every object."
        with self._lock:
            self.cached.clear()
            self.count_.clear()

    @classmethod
    def create_cache(cls, name, max_size=32):
        """
        Creates a new cache and registers it.

        @param      name        name
        @param      max_size    see @see cl ObjectCache
        @return                 created cache
        """
        if name in _caches:
            raise RuntimeError(
                "cache '{0}' already exists.".format(name))
        cache = cls(name, max_size=max_size)
        _caches[name] = cache
        return cache

    @staticmethod
    def get_cache(name):
        """
        Gets a cache with a given name.
        """
        return _caches[name]

    @staticmethod
    def has_cache(name):
        """
        Tells if cache *name* is present.
        """
        return name in _caches

    @staticmethod
    def remove_cache(name):
        """
        Removes a cache with a given name.
        """
        del _caches[name]

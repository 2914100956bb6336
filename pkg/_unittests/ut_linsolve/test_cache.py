# -*- coding: utf-8 -*-
"""
@brief      test log(time=1s)
"""
import unittest
import numpy
from pyquickhelper.pycode import ExtTestCase
from apaniso.linsolve import FactorizationCache


class TestFactorizationCache(ExtTestCase):

    def test_as_key(self):
        self.assertEqual(FactorizationCache.as_key("a"), "a")
        self.assertEqual(FactorizationCache.as_key(dict(b=1, a=0.5)),
                         FactorizationCache.as_key((('a', 0.5), ('b', 1))))
        self.assertNotEqual(FactorizationCache.as_key((1e-9,)),
                            FactorizationCache.as_key((1e-8,)))
        key = FactorizationCache.as_key((numpy.float64(0.5), numpy.int64(2), None))
        self.assertEqual(key, "(0.5,2,None)")
        self.assertRaise(lambda: FactorizationCache.as_key([1, 2]), TypeError)
        self.assertRaise(lambda: FactorizationCache.as_key((object(),)), TypeError)

    def test_cache(self):
        cache = FactorizationCache("local", max_size=2)
        cache.cache(('a', 1), "A")
        self.assertRaise(lambda: cache.cache(('a', 1), "B"), KeyError)
        self.assertEqual(cache.get(('a', 1)), "A")
        self.assertEqual(cache.get(('b', 1), "none"), "none")
        self.assertEqual(cache.count(('a', 1)), 1)
        cache.cache(('b', 1), "B")
        cache.cache(('c', 1), "C")
        self.assertEqual(len(cache), 2)
        self.assertEqual(cache.get(('a', 1)), None)
        self.assertEqual(len(list(cache.keys())), 2)
        cache.clear()
        self.assertEqual(len(cache), 0)

    def test_registry(self):
        name = "test_registry_cache"
        self.assertFalse(FactorizationCache.has_cache(name))
        cache = FactorizationCache.create_cache(name)
        self.assertRaise(lambda: FactorizationCache.create_cache(name), RuntimeError)
        self.assertIs(FactorizationCache.get_cache(name), cache)
        FactorizationCache.remove_cache(name)
        self.assertFalse(FactorizationCache.has_cache(name))


if __name__ == "__main__":
    unittest.main()

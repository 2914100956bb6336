# -*- coding: utf-8 -*-
"""
@brief      test log(time=1s)
"""
import pickle
import unittest
from pyquickhelper.pycode import ExtTestCase
from apaniso.helpers import ObjectCache
from apaniso.linsolve import FactorizationCache


class TestObjectCache(ExtTestCase):

    def test_get_or_create(self):
        cache = ObjectCache("local", max_size=2)
        calls = []

        def build():
            calls.append(1)
            return "A"

        self.assertEqual(cache.get_or_create(('a', 1), build), "A")
        self.assertEqual(cache.get_or_create(('a', 1), build), "A")
        self.assertEqual(len(calls), 1)
        self.assertEqual(cache.count(('a', 1)), 1)
        cache.get_or_create(('b', 1), lambda: "B")
        cache.get_or_create(('c', 1), lambda: "C")
        self.assertEqual(len(cache), 2)
        self.assertIsNone(cache.get(('a', 1)))

    def test_pickle(self):
        cache = ObjectCache("local")
        cache.cache("x", 3)
        restored = pickle.loads(pickle.dumps(cache))
        self.assertEqual(restored.get("x"), 3)
        restored.cache("y", 4)
        self.assertEqual(len(restored), 2)
        self.assertEqual(len(cache), 1)

    def test_registry_class(self):
        name = "test_registry_class"
        cache = FactorizationCache.create_cache(name)
        self.assertIsInstance(cache, FactorizationCache)
        self.assertIs(ObjectCache.get_cache(name), cache)
        ObjectCache.remove_cache(name)
        self.assertFalse(FactorizationCache.has_cache(name))


if __name__ == "__main__":
    unittest.main()

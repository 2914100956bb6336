"""
@brief      test log(time=1s)
"""
import unittest
from pyquickhelper.pycode import ExtTestCase
import apaniso
from apaniso import check, _setup_hook


class TestCheck(ExtTestCase):

    def test_check(self):
        self.assertTrue(check())

    def test_setup_hook(self):
        _setup_hook()

    def test_metadata(self):
        self.assertEqual(apaniso.__author__, "apaniso developers")
        self.assertFalse(hasattr(apaniso, "__github__"))
        self.assertFalse(hasattr(apaniso, "__url__"))


if __name__ == "__main__":
    unittest.main()

"""
Unit tests for the configuration module.
"""

import importlib
import os
import unittest
from unittest.mock import patch

from pydantic import ValidationError

import src.config
from src.config import MAX_ENUM_CAP, Settings


class TestSettings(unittest.TestCase):
    """Test cases for the Settings model."""

    def tearDown(self):
        """Reload the module so later tests see the real environment."""
        importlib.reload(src.config)

    def test_explicit_values(self):
        """Test constructing settings with explicit values."""
        config = Settings(ENUM_CAP=8, WORKERS=4, PARALLEL_MIN_N=6, LOG_LEVEL="info")

        self.assertEqual(config.ENUM_CAP, 8)
        self.assertEqual(config.WORKERS, 4)
        self.assertEqual(config.PARALLEL_MIN_N, 6)
        self.assertEqual(config.LOG_LEVEL, "INFO")

    def test_enum_cap_bounds(self):
        """The enumeration cap must stay within 0..MAX_ENUM_CAP."""
        Settings(ENUM_CAP=0)
        Settings(ENUM_CAP=MAX_ENUM_CAP)
        with self.assertRaises(ValidationError):
            Settings(ENUM_CAP=MAX_ENUM_CAP + 1)
        with self.assertRaises(ValidationError):
            Settings(ENUM_CAP=-1)

    def test_workers_must_be_positive(self):
        with self.assertRaises(ValidationError):
            Settings(WORKERS=0)

    def test_unknown_log_level(self):
        with self.assertRaises(ValidationError):
            Settings(LOG_LEVEL="LOUD")

    @patch.dict(
        os.environ,
        {
            "PERMSTAT_ENUM_CAP": "9",
            "PERMSTAT_WORKERS": "3",
            "PERMSTAT_PARALLEL_MIN_N": "5",
            "PERMSTAT_LOG_LEVEL": "debug",
        },
    )
    def test_environment_overrides(self):
        """Field defaults are read from PERMSTAT_* variables."""
        module = importlib.reload(src.config)

        self.assertEqual(module.settings.ENUM_CAP, 9)
        self.assertEqual(module.settings.WORKERS, 3)
        self.assertEqual(module.settings.PARALLEL_MIN_N, 5)
        self.assertEqual(module.settings.LOG_LEVEL, "DEBUG")

    @patch.dict(os.environ, {"PERMSTAT_ENUM_CAP": "50"})
    def test_environment_values_are_validated(self):
        """Values read from the environment go through the same validators."""
        with self.assertRaises(ValidationError):
            importlib.reload(src.config)

    def test_defaults_without_environment(self):
        """Built-in defaults apply when no PERMSTAT_* variable is set."""
        clean = {k: v for k, v in os.environ.items() if not k.startswith("PERMSTAT_")}
        with patch.dict(os.environ, clean, clear=True), patch(
            "dotenv.load_dotenv", return_value=False
        ):
            module = importlib.reload(src.config)

        self.assertEqual(module.settings.ENUM_CAP, 10)
        self.assertEqual(module.settings.WORKERS, 1)
        self.assertEqual(module.settings.PARALLEL_MIN_N, 7)
        self.assertEqual(module.settings.LOG_LEVEL, "WARNING")


if __name__ == "__main__":
    unittest.main()

"""
Unit tests for the root entry point.
"""

import importlib
from unittest.mock import patch

import main as entry


class TestEntryPoint:
    """Test main.py."""

    def test_import_leaves_logging_alone(self) -> None:
        """Test importing the entry point does not configure logging."""
        with patch("logging.basicConfig") as basic_config:
            importlib.reload(entry)
        basic_config.assert_not_called()

    def test_run_returns_exit_code(self) -> None:
        """Test run passes the command line's exit code through."""
        with patch.object(entry, "main", return_value=2) as cli_main:
            assert entry.run() == 2
        cli_main.assert_called_once_with()

    def test_interrupt(self) -> None:
        """Test Ctrl-C ends the run with exit code 130."""
        with patch.object(entry, "main", side_effect=KeyboardInterrupt):
            assert entry.run() == entry.INTERRUPTED == 130

    def test_one_logging_setup_per_run(self, tmp_path) -> None:
        """Test a run through the entry point sets up logging exactly once."""
        argv = ["chainlens", "ingest", "--input", str(tmp_path)]
        with patch("logging.basicConfig") as basic_config, patch("sys.argv", argv):
            assert entry.run() == 2
        basic_config.assert_called_once()

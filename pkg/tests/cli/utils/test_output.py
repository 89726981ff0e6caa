"""Tests for driving service generators."""

from unittest.mock import MagicMock, patch

from fracdg.cli.utils.output import StageTracker, run_with_progress
from fracdg.models.output import ProgressUpdate, Warning


def _job():
    yield ProgressUpdate("col1", "Column 1", 0, 2)
    yield Warning("r clamped to 1")
    yield ProgressUpdate("col1", "Column 1", 2, 2)
    return "done"


class TestRunWithProgress:
    """Tests for run_with_progress."""

    def test_returns_generator_value(self):
        """The generator's return value is passed through."""
        with patch("fracdg.cli.utils.output.display_warning"):
            assert run_with_progress(_job()) == "done"

    def test_warnings_are_displayed(self):
        """Warnings reach the warning printer."""
        with patch("fracdg.cli.utils.output.display_warning") as mock_warning:
            run_with_progress(_job())
        (message,), _ = mock_warning.call_args
        assert message.content == "r clamped to 1"


class TestStageTracker:
    """Tests for StageTracker."""

    def test_one_task_per_stage(self):
        """A stage gets a task once and is updated afterwards."""
        bar = MagicMock()
        tracker = StageTracker(bar)
        tracker.update(ProgressUpdate("a", "A", None, 3))
        tracker.update(ProgressUpdate("a", "A", 1, 3))
        tracker.update(ProgressUpdate("b", "B", 0, 1))
        assert bar.add_task.call_count == 2
        bar.add_task.assert_any_call("A", total=3, completed=0)
        bar.update.assert_called_once_with(bar.add_task.return_value, total=3, completed=1, description="A")

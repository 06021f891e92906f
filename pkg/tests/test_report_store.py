"""
Tests for ReportStore
"""

import json

import pytest
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from orbit_lab import OrbitReport
from report_store import ReportStore


def make_report(sigma="(1,3)", passed=True):
    return OrbitReport(
        sigma=sigma, n=3, p=2, values=[1], orbit_size=4, expected_size=4,
        checks={"orbit_size": True, "q_vanish": passed},
        generator_verdicts=[{"label": "Q[2,1]", "kind": "Q", "ok": passed}],
        xsigma_count=1, samples=5, seed=0, wall_time=0.01,
    )


class TestReportStore:
    """Saving and loading reports"""

    @pytest.fixture
    def store(self, tmp_path):
        return ReportStore(str(tmp_path / "reports"))

    def test_directory_created_lazily(self, store, tmp_path):
        """Nothing is written until a save"""
        assert not (tmp_path / "reports").exists()
        assert store.list_reports() == []
        assert store.latest() is None

    def test_save_and_load(self, store):
        """Reports come back unchanged"""
        reports = [make_report(), make_report("(1,2)", passed=False)]
        path = store.save(reports, command="survey")
        assert path.name.startswith("survey.")
        assert store.load(path) == reports

    def test_payload(self, store):
        """The file records the command and the overall verdict"""
        path = store.save([make_report(), make_report(passed=False)])
        payload = json.loads(path.read_text(encoding='utf-8'))
        assert payload["command"] == "verify"
        assert payload["passed"] is False
        assert payload["reports"][0]["passed"] is True

    def test_explicit_path(self, store, tmp_path):
        """An explicit path is used as given"""
        target = tmp_path / "out" / "report.json"
        assert store.save([make_report()], path=target) == target
        assert target.exists()

    def test_latest(self, store):
        """latest() returns the newest payload"""
        store.save([make_report()])
        store.save([make_report("(2,3)")])
        assert len(store.list_reports()) == 2
        assert store.latest()["reports"][0]["sigma"] == "(2,3)"

    def test_corrupted_file(self, store, tmp_path):
        """Broken JSON raises ValueError"""
        path = tmp_path / "broken.json"
        path.write_text("{oops")
        with pytest.raises(ValueError):
            store.load(path)

    def test_order_ignores_command(self, store):
        """Reports sort by save time, not by command name"""
        store.save([make_report()], command="verify")
        store.save([make_report("(2,3)")], command="survey")
        names = [path.name for path in store.list_reports()]
        assert names[0].startswith("verify.")
        assert store.latest()["command"] == "survey"

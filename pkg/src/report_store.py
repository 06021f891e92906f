"""
Persistent storage for orbit verification reports.
Reports are written as JSON files with timestamped names under the reports directory.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

from constants import REPORTS_DIR
from orbit_lab import OrbitReport

logger = logging.getLogger(__name__)


class ReportStore:
    """
    Saves and loads lists of OrbitReport as JSON.
    The directory is only created when a report is saved.
    """

    def __init__(self, reports_dir: str = REPORTS_DIR):
        self.reports_dir = Path(reports_dir)

    def save(self, reports: List[OrbitReport], path: Optional[Path] = None, command: str = "verify") -> Path:
        """Write reports; returns the file written"""
        if path is None:
            self.reports_dir.mkdir(parents=True, exist_ok=True)
            timestamp = datetime.now().strftime('%Y%m%d_%H%M%S_%f')
            path = self.reports_dir / f"{command}.{timestamp}.json"
        else:
            path = Path(path)
            path.parent.mkdir(parents=True, exist_ok=True)

        payload = {
            "command": command,
            "created_at": datetime.now().isoformat(),
            "passed": all(r.passed for r in reports),
            "reports": [r.to_dict() for r in reports],
        }
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=2, ensure_ascii=False)

        logger.info("saved %d report(s) to %s", len(reports), path)
        return path

    def load(self, path: Path) -> List[OrbitReport]:
        """Read reports written by save()"""
        with open(path, 'r', encoding='utf-8') as f:
            try:
                payload = json.load(f)
            except json.JSONDecodeError as exc:
                raise ValueError(f"Corrupted report file {path}: {exc}") from exc
        return [OrbitReport.from_dict(data) for data in payload.get("reports", [])]

    def list_reports(self) -> List[Path]:
        """Saved report files, oldest first"""
        if not self.reports_dir.exists():
            return []
        # names are <command>.<timestamp>.json
        return sorted(self.reports_dir.glob("*.json"), key=lambda path: path.name.split(".", 1)[-1])

    def latest(self) -> Optional[Dict]:
        """Raw payload of the newest report file"""
        files = self.list_reports()
        if not files:
            return None
        with open(files[-1], 'r', encoding='utf-8') as f:
            return json.load(f)

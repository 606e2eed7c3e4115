"""
Checkpoint manager for saving and loading game traces.
"""

import json
from datetime import datetime
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from src.models.state import GameTrace
from src.utils.logger import get_logger

logger = get_logger(__name__)

TRACE_FORMAT_VERSION = "1.0"


class CheckpointManager:
    """
    Saves game traces as JSON files keyed by run id.

    Each save writes ``<run_id>_<stage>.json`` when a stage is given and
    always refreshes ``<run_id>_latest.json``.
    """

    def __init__(self, trace_dir: str = "traces"):
        """
        Initialize checkpoint manager.

        Args:
            trace_dir: Directory to store traces
        """
        self.trace_dir = Path(trace_dir)
        self.trace_dir.mkdir(parents=True, exist_ok=True)
        logger.debug(f"Checkpoint manager initialized: {self.trace_dir}")

    def _get_trace_path(self, run_id: str, stage: Optional[str] = None) -> Path:
        filename = f"{run_id}_{stage}.json" if stage else f"{run_id}_latest.json"
        return self.trace_dir / filename

    def save(self, trace: GameTrace, stage: Optional[str] = None, metadata: Optional[dict] = None) -> Path:
        """
        Save a trace.

        Args:
            trace: Trace to save
            stage: Optional stage label (e.g. "final")
            metadata: Optional additional metadata

        Returns:
            Path to the saved file

        Example:
            >>> manager = CheckpointManager("traces")
            >>> path = manager.save(trace, stage="final")
        """
        data = {
            "checkpoint_metadata": {
                "saved_at": datetime.now().isoformat(),
                "stage": stage,
                "run_id": trace.run_id,
                "version": TRACE_FORMAT_VERSION,
                **(metadata or {}),
            },
            "trace": trace.model_dump(mode="json"),
        }
        paths = [self._get_trace_path(trace.run_id, stage)]
        if stage:
            paths.append(self._get_trace_path(trace.run_id))

        try:
            for path in paths:
                with open(path, "w", encoding="utf-8") as f:
                    json.dump(data, f, indent=2, ensure_ascii=False)
        except OSError as e:
            logger.error(f"Failed to save trace: {e}")
            raise

        logger.info(f"Trace saved: {paths[0]}")
        return paths[0]

    def load(self, run_id: str, stage: Optional[str] = None) -> Optional[GameTrace]:
        """
        Load a trace.

        Args:
            run_id: Run identifier
            stage: Optional stage label; the latest save when omitted

        Returns:
            GameTrace or None if missing or invalid
        """
        path = self._get_trace_path(run_id, stage)
        if not path.exists():
            logger.warning(f"Trace not found: {path}")
            return None

        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
            trace = GameTrace.model_validate(data.get("trace", {}))
        except (ValidationError, json.JSONDecodeError) as e:
            logger.error(f"Invalid trace data in {path}: {e}")
            return None

        logger.info(f"Trace loaded: {path}")
        return trace

    def list_traces(self, run_id: Optional[str] = None) -> List[dict]:
        """
        List saved traces, newest first.

        Args:
            run_id: Optional run id to filter by

        Returns:
            List of trace info dictionaries
        """
        traces = []
        pattern = f"{run_id}_*.json" if run_id else "*.json"
        for trace_file in self.trace_dir.glob(pattern):
            try:
                with open(trace_file, "r", encoding="utf-8") as f:
                    metadata = json.load(f).get("checkpoint_metadata", {})
            except (OSError, json.JSONDecodeError) as e:
                logger.warning(f"Failed to read trace {trace_file}: {e}")
                continue
            traces.append(
                {
                    "file": str(trace_file),
                    "run_id": metadata.get("run_id"),
                    "stage": metadata.get("stage"),
                    "saved_at": metadata.get("saved_at"),
                    "version": metadata.get("version", "unknown"),
                }
            )

        traces.sort(key=lambda x: x.get("saved_at") or "", reverse=True)
        return traces

    def delete_trace(self, run_id: str, stage: Optional[str] = None) -> bool:
        """
        Delete one saved trace.

        Returns:
            True if deleted
        """
        path = self._get_trace_path(run_id, stage)
        if not path.exists():
            logger.warning(f"Trace not found: {path}")
            return False
        path.unlink()
        logger.info(f"Trace deleted: {path}")
        return True

    def delete_run(self, run_id: str) -> int:
        """
        Delete every saved trace of a run.

        Returns:
            Number of files deleted
        """
        deleted = 0
        for trace_file in self.trace_dir.glob(f"{run_id}_*.json"):
            trace_file.unlink()
            deleted += 1
        logger.info(f"Deleted {deleted} traces for run {run_id}")
        return deleted


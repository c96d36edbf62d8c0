import os
import json
import logging
import tempfile
import shutil

logger = logging.getLogger(__name__)

# --- Report Persistence ---

def write_report(path: str, payload: dict):
    """Atomically write a JSON report: temp file in the target directory, then move."""
    target_dir = os.path.dirname(os.path.abspath(path))
    os.makedirs(target_dir, exist_ok=True)
    temp_path = None
    try:
        with tempfile.NamedTemporaryFile('w', dir=target_dir, delete=False, suffix=".tmp") as temp_f:
            json.dump(payload, temp_f, indent=4)
            temp_path = temp_f.name
        shutil.move(temp_path, path)
        logger.info(f"Wrote report to {path}")
    except OSError as e:
        logger.error(f"Failed to write report to {path}: {e}")
        if temp_path and os.path.exists(temp_path):
            try:
                os.remove(temp_path)
            except OSError as remove_err:
                logger.error(f"Failed to remove temporary report file {temp_path}: {remove_err}")
        raise

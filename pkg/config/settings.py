import os
import json
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()


class Settings:
    def __init__(self):
        self.LOG_LEVEL = os.getenv("PBI_LOG_LEVEL", "WARNING").upper()
        self.LOG_FILE = os.getenv("PBI_LOG_FILE") or None

        self.DEFAULT_SCHEME = "top10"
        self.DEFAULT_APPROACH = "fractional"
        self.DEFAULT_PRECISION = 4
        self.DEFAULT_PERCENTILE = "0.9"
        self.DEFAULT_WORKERS = 1

        self.REPORT_FORMATS = frozenset(["csv", "json"])
        self.INPUT_FORMATS = frozenset(["csv", "jsonl"])

        self.SCHEME_PRESETS = self._load_schemes_config()

    def _load_schemes_config(self) -> dict:
        config_path = Path(__file__).parent / "schemes.json"
        if not config_path.exists():
            raise FileNotFoundError(f"Missing 'schemes.json' at {config_path}")
        try:
            with open(config_path, "r", encoding="utf-8") as f:
                presets = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Failed to parse 'schemes.json': {e}")
        if not isinstance(presets, dict):
            raise ValueError("'schemes.json' must map preset names to scheme objects")
        return presets


settings = Settings()

import json
import logging

from config_manager import ConfigManager

from utils import emit, say

logger = logging.getLogger(__name__)


def _config_value(text: str):
    # JSON when it parses (numbers, true/false), the bare text otherwise
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def config(app, args):
    if not args.set:
        emit({"file": app.config.file_path, "config": dict(app.config.config)})
        return
    # Persist file values only; environment and flag overrides stay out of the saved file.
    stored = ConfigManager(app.config.file_path, environ={})
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"setting '{item}' is not of the form key=value")
        stored.set(key.strip(), _config_value(value.strip()))
    stored.save_config()
    say(f"saved {len(args.set)} setting(s) to {stored.file_path}")
    emit({"file": stored.file_path, "config": dict(stored.config)})


def setup(app):
    parser = app.add_command("config", config, "show the effective configuration or save settings to the config file")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="store a setting in the config file (repeatable)")

import configparser
import os
import pathlib

import pkg_resources
from mopidy import config

from transchromatic.errors import ConfigError

__version__ = pkg_resources.get_distribution("Transchromatic").version

dist_name = "Transchromatic"
ext_name = "transchromatic"

PARALLELISM_ENV = "TRANSCHROMATIC_PARALLELISM"


def get_default_config():
    return config.read(pathlib.Path(__file__).parent / "ext.conf")


def get_config_schema():
    schema = config.ConfigSchema(ext_name)

    schema["isomorphism_bound"] = config.Integer(minimum=1)
    schema["parallelism"] = config.Integer(minimum=1, maximum=64)
    schema["output_format"] = config.String(choices=("plain", "json"))

    schema["suite_seed"] = config.Integer(minimum=0)
    schema["suite_spans"] = config.Integer(minimum=0)

    return schema


def load_config(path=None, environ=None):
    """Defaults, then ``path`` key by key, then the parallelism hint."""
    environ = os.environ if environ is None else environ
    parser = configparser.RawConfigParser(inline_comment_prefixes=(";",))
    parser.read_string(get_default_config())
    if path is not None:
        try:
            parser.read_string(pathlib.Path(path).read_text(encoding="utf-8"))
        except (OSError, configparser.Error) as exc:
            raise ConfigError({"file": str(exc)})
    if not parser.has_section(ext_name):
        raise ConfigError({ext_name: "section not found."})

    raw = dict(parser[ext_name])
    if environ.get(PARALLELISM_ENV):
        raw["parallelism"] = environ[PARALLELISM_ENV]

    values, errors = get_config_schema().deserialize(raw)
    if errors:
        raise ConfigError(errors)
    return values

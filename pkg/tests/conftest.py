import pathlib

import pytest

from fifdim.config import load_config
from fifdim.engine import build_model

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / "configs"

CONFIG_NAMES = [
    "example5_case1_one",
    "example5_case1_sin",
    "example5_case2",
    "sg_exact",
    "degenerate_interval",
    "degenerate_cube",
]

_cache = {}


def get_config(name):
    if name not in _cache:
        _cache[name] = load_config(str(CONFIG_DIR / f"{name}.json"))
    return _cache[name]


def get_model(name):
    key = ("model", name)
    if key not in _cache:
        _cache[key] = build_model(get_config(name).spec)
    return _cache[key]


@pytest.fixture(scope="session")
def config_dir():
    return CONFIG_DIR


@pytest.fixture(params=CONFIG_NAMES, scope="session")
def each_model(request):
    return request.param, get_model(request.param)

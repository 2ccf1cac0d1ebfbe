"""Shared fixtures: the boundary grid, the expanded corpus, and the two
full CLI verification runs reused by the determinism and golden tests."""

from __future__ import annotations

import json
import pathlib

import pytest

from disclab import cli
from disclab.boundary import default_grid
from disclab.corpus import corpus_functions, standard_corpus

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def corpus():
    return corpus_functions(standard_corpus())


@pytest.fixture(scope="session")
def golden_verify() -> dict:
    with open(GOLDEN_DIR / "verify.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def verify_first(tmp_path_factory):
    """First full `verify` CLI run: (exit code, raw report bytes)."""
    out = tmp_path_factory.mktemp("verify-a") / "report.json"
    rc = cli.main(["verify", "--out", str(out)])
    return rc, out.read_bytes()


@pytest.fixture(scope="session")
def verify_second(tmp_path_factory):
    """Second run, compared against the shipped golden baseline."""
    out = tmp_path_factory.mktemp("verify-b") / "report.json"
    rc = cli.main(["verify", "--out", str(out),
                   "--golden", str(GOLDEN_DIR / "verify.json")])
    return rc, out.read_bytes()

"""Regenerate the golden baselines in this directory.

Run from the repository root after an intentional numerical change:

    python3 tests/golden/regenerate.py

Three files are produced: the full verification report (with its
tolerance map), growth-profile maxima over the standard corpus, and
the corpus norm-ratio chain constants.
"""

from __future__ import annotations

import json
import pathlib

from disclab.boundary import default_grid
from disclab.corpus import corpus_functions, standard_corpus
from disclab.spaces import growth_profile, hp_norm, s2p_norm, sp_norm
from disclab.verify import run_verification

HERE = pathlib.Path(__file__).parent

#: fields that may wobble across BLAS builds; everything else matches exactly
VERIFY_TOLERANCES = {
    "*.observed": 1e-6,
    "*.data.*": 1e-6,
}


def _dump(name: str, payload) -> None:
    path = HERE / name
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    print(f"wrote {path}")


def regenerate_verify() -> None:
    payload = run_verification().to_dict()
    payload["_tolerances"] = dict(VERIFY_TOLERANCES)
    _dump("verify.json", payload)


def regenerate_growth() -> None:
    grid = default_grid()
    corpus = corpus_functions(standard_corpus())
    out = {}
    for p in (1.0, 2.0, 4.0):
        for k in (1, 2):
            key = f"p{p:g}-k{k}"
            out[key] = [growth_profile(f, p, k).max_ratio for f in corpus]
    _dump("growth.json", out)


def regenerate_chains() -> None:
    grid = default_grid()
    corpus = corpus_functions(standard_corpus())
    out = {}
    for p in (1.0, 2.0, 4.0):
        hp_over_sp = max(hp_norm(f, p, grid) / sp_norm(f, p, grid) for f in corpus)
        sp_over_s2p = max(sp_norm(f, p, grid) / s2p_norm(f, p, grid) for f in corpus)
        out[f"p{p:g}"] = {"hp_over_sp": hp_over_sp, "sp_over_s2p": sp_over_s2p}
    _dump("chains.json", out)


if __name__ == "__main__":
    regenerate_growth()
    regenerate_chains()
    regenerate_verify()

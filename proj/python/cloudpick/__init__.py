# Copyright 2026 The cloudpick Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the cloudpick ranking engine.

Catalogs, sessions and results are plain dicts with the same layout as the
JSON files the command-line tool reads and writes.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping, Sequence

from . import _cloudpick
from ._cloudpick import NativeError

__all__ = [
    "CloudpickError",
    "evaluate",
    "fit_quadratic",
    "generate_catalog",
    "priority_vector",
    "run_bench",
    "validate_catalog",
]

__version__ = "0.1.0"


class CloudpickError(Exception):
    """Raised for invalid input; ``code``, ``path`` and ``kind`` describe it."""

    def __init__(self, info: Mapping[str, str]):
        super().__init__(f"{info['kind']} at {info['path'] or '/'}: {info['message']}")
        self.code = info["code"]
        self.kind = info["kind"]
        self.path = info["path"]
        self.message = info["message"]


def _text(doc: str | Mapping[str, Any]) -> str:
    return doc if isinstance(doc, str) else json.dumps(doc)


def _call(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except NativeError as e:
        raise CloudpickError(e.info) from None


def validate_catalog(catalog: str | Mapping[str, Any]) -> list[dict[str, str]]:
    """Every violation in the catalog; empty when it is valid."""
    return _call(_cloudpick.validate_catalog, _text(catalog))


def generate_catalog(images: int, services: int, seed: int = 42, density: float = 1.0) -> dict:
    return json.loads(_call(_cloudpick.generate_catalog, images, services, seed, density))


def evaluate(catalog: str | Mapping[str, Any], session: str | Mapping[str, Any] | None = None,
             parallel: bool = False) -> dict:
    """Runs a session against a catalog and returns the result document."""
    session_text = "" if session is None else _text(session)
    return json.loads(_call(_cloudpick.evaluate, _text(catalog), session_text, parallel))


def priority_vector(rows: Sequence[Sequence[float]]) -> tuple[list[float], float, float]:
    """(weights, lambda_max, consistency_ratio) of a reciprocal matrix."""
    return _call(_cloudpick.priority_vector, [list(r) for r in rows])


def fit_quadratic(points: Iterable[tuple[float, float]]) -> tuple[float, float, float, float]:
    """(a2, a1, a0, r_squared) of the least-squares quadratic."""
    return _call(_cloudpick.fit_quadratic, list(points))


def run_bench(config: str | Mapping[str, Any]) -> dict:
    return json.loads(_call(_cloudpick.run_bench, _text(config)))

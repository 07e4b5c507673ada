"""Shared pipeline cache so expensive stages are computed once per run."""

from heckecell.cli import Session

_CACHE: dict = {}


def get_session(system: str, weights: str = "equal", order=None) -> Session:
    key = (system, weights, order)
    if key not in _CACHE:
        _CACHE[key] = Session({"system": system, "weights": weights, "order": order})
    return _CACHE[key]

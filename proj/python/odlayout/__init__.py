"""Python front end for the odlayout engine."""

from __future__ import annotations

import json
from typing import Any, Iterable, Mapping

from . import _odlayout
from ._odlayout import Error, ParseError

__all__ = [
    "Error",
    "ParseError",
    "RequestError",
    "layout",
    "validate",
    "normalize_graph",
    "scene_to_svg",
]


class RequestError(ValueError):
    """The engine rejected the request (HTTP 400 on the service)."""

    def __init__(self, body: Mapping[str, Any]):
        super().__init__(body.get("error", "bad request"))
        self.body = dict(body)


def _graph_field(graph: Any) -> Any:
    if isinstance(graph, (bytes, bytearray)):
        return graph.decode()
    return graph


def _request(graph, fmt, config, **extra) -> str:
    body: dict[str, Any] = {"graph": _graph_field(graph)}
    if fmt is not None:
        body["format"] = fmt
    if config:
        body["config"] = dict(config)
    body.update({k: v for k, v in extra.items() if v is not None})
    return json.dumps(body)


def _decode(status: int, text: str) -> dict:
    doc = json.loads(text)
    if status == 400:
        raise RequestError(doc)
    if status >= 500:
        raise RuntimeError(doc.get("error", "internal error"))
    return doc


def layout(
    graph: Any,
    expansion: Iterable[str] = (),
    *,
    format: str | None = None,
    output: str = "scene-json",
    **config: Any,
) -> dict:
    """Lay out `graph` (dict or JSON text) with the given groups open.

    Keyword arguments beyond `format` and `output` go into the config object.
    A fatal graph still returns a dict; check its "fatal" field.
    """
    body = _request(graph, format, config, expansion=sorted(set(expansion)), output=output)
    return _decode(*_odlayout.handle_layout(body))


def validate(graph: Any, *, format: str | None = None, reverse_arrows: bool | None = None) -> dict:
    config = {} if reverse_arrows is None else {"reverse_arrows": reverse_arrows}
    return _decode(*_odlayout.handle_validate(_request(graph, format, config)))


def normalize_graph(graph: Any, format: str = "generic", reverse_arrows: bool = True) -> dict:
    """Parse a graph document and return its generic form."""
    text = graph if isinstance(graph, str) else json.dumps(graph)
    return json.loads(_odlayout.normalize_graph(text, format, reverse_arrows))


def scene_to_svg(scene: Any) -> str:
    text = scene if isinstance(scene, str) else json.dumps(scene)
    return _odlayout.scene_to_svg(text)

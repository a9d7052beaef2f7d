"""JSON Schema documents for the curve and certificate formats."""

import json
from importlib import resources


def load_schema(name: str) -> dict:
    """``name`` is ``"curve"`` or ``"certificate"``."""
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text())

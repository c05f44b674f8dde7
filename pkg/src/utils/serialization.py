import math
from enum import Enum
from typing import Any

from src.utils.orders import Symbol


def to_jsonable(value: Any) -> Any:
    """Turn package values (symbols, frozensets, terms, orderings) into plain JSON data."""
    if isinstance(value, Symbol):
        return value.name
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Enum):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        items = [to_jsonable(v) for v in value]
        return sorted(items, key=repr)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return repr(value)

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.errors import ParseError
from src.trees.kb import BUILTIN_FAMILIES, TreeFamily, family_from_json, load_family

SEED_ENV = "DILATOR_FORGE_SEED"


def env_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError as e:
        raise ParseError(f"{SEED_ENV}={raw!r} is not an integer") from e


class Config(BaseModel):
    """Bounds and inputs shared by the CLI, the API and the suites."""

    model_config = ConfigDict(extra="forbid")

    dilator: str = "omega"
    family: Optional[Union[str, Dict[str, Any]]] = None
    h_index: int = Field(default=1, ge=0)
    arity_bound: int = Field(default=3, gt=0)
    code_bound: int = Field(default=500, gt=0)
    l_bound: Optional[int] = Field(default=None, gt=0)
    depth: int = Field(default=6, gt=0)
    width: int = Field(default=4, gt=0)
    chain_len: int = Field(default=10, gt=0)
    random_orders: int = Field(default=20, ge=0)
    seed: Optional[int] = Field(default=None, validate_default=True)
    output: Optional[str] = None

    @field_validator("seed", mode="before")
    @classmethod
    def _seed_fallback(cls, value):
        return env_seed() if value is None else value

    @classmethod
    def load(cls, path: Union[str, Path], **overrides: Any) -> "Config":
        text = Path(path).read_text()
        try:
            data = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as e:
            raise ParseError(f"config file {path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ParseError(f"config file {path} must hold a JSON object")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls.build(**data)

    @classmethod
    def build(cls, **values: Any) -> "Config":
        try:
            return cls(**values)
        except ValidationError as e:
            raise ParseError(f"invalid configuration: {e}") from e

    def tree_family(self, default: str = "DEC") -> TreeFamily:
        """The configured family: a file path, an inline JSON object, or a builtin name."""
        if self.family is None:
            return family_from_json({"kind": "builtin", "name": default})
        if isinstance(self.family, dict):
            return family_from_json(self.family)
        if self.family in BUILTIN_FAMILIES:
            return family_from_json({"kind": "builtin", "name": self.family})
        return load_family(self.family)

"""Dilators addressable by name from the CLI, the API and suite configs."""
from typing import Callable, Dict, List, Optional

from src.constructions.f import FDilator
from src.constructions.h import HDilator
from src.dilators.core import PraeDilator
from src.dilators.zoo import ConstantDilator, EmptySupportVariant, OmegaDilator, TopDilator
from src.errors import ParseError
from src.trees.kb import DecFamily, TreeFamily

_SIMPLE: Dict[str, Callable[[], PraeDilator]] = {
    "omega": OmegaDilator,
    "top": TopDilator,
    "const": lambda: ConstantDilator(mu1=None),
    "omega-nosupp": lambda: EmptySupportVariant(OmegaDilator()),
}
_FAMILY_BASED = ("H", "F")


def dilator_names() -> List[str]:
    return sorted(_SIMPLE) + list(_FAMILY_BASED)


def get_dilator(name: str, family: Optional[TreeFamily] = None, h_index: int = 1) -> PraeDilator:
    """``H`` and ``F`` read the tree family (DEC when none is given); H also takes ``h_index``."""
    if name in _SIMPLE:
        return _SIMPLE[name]()
    if name == "H":
        return HDilator(family or DecFamily(), h_index)
    if name == "F":
        return FDilator(family or DecFamily())
    raise ParseError(f"unknown dilator '{name}'; choose one of {', '.join(dilator_names())}")

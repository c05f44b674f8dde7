"""Cantor normal forms below epsilon_0, used to cross-check Fix(omega).

An ordinal is a tuple of exponents, each itself such a tuple: () is 0,
((),) is 1 and (((),),) is omega. Unordered exponent lists are normalized
by sorting before comparison.
"""
import functools

from src.dilators.core import DElement, FixedPointWitness, evaluate_class
from src.dilators.zoo import OmegaDilator
from src.errors import DecodeFailure, MalformedCnf
from src.fixpoint.terms import FixTerm
from src.utils.coding import seq, unseq
from src.utils.orders import CodedOrder, Ordering

ZERO = ()
ONE = (ZERO,)
OMEGA = (ONE,)


def _check(u) -> None:
    if not isinstance(u, tuple):
        raise MalformedCnf(f"{u!r} is not a tuple of exponents")
    for x in u:
        _check(x)


def normalize(u) -> tuple:
    _check(u)
    return _normalize(u)


@functools.lru_cache(maxsize=None)
def _normalize(u: tuple) -> tuple:
    exponents = [_normalize(x) for x in u]
    exponents.sort(key=functools.cmp_to_key(lambda a, b: int(_compare(a, b))), reverse=True)
    return tuple(exponents)


def _compare(u: tuple, v: tuple) -> Ordering:
    for x, y in zip(u, v):
        step = _compare(x, y)
        if step is not Ordering.EQUAL:
            return step
    if len(u) == len(v):
        return Ordering.EQUAL
    return Ordering.LESS if len(u) < len(v) else Ordering.GREATER


def eps0_compare(u, v) -> Ordering:
    return _compare(normalize(u), normalize(v))


def is_normal_form(u) -> bool:
    try:
        return normalize(u) == u
    except MalformedCnf:
        return False


def natural(n: int) -> tuple:
    return (ZERO,) * n


def omega_power(u) -> tuple:
    return (u,)


class Eps0Order(CodedOrder):
    """Normal forms below epsilon_0; the code of u is the sequence code of its exponents' codes."""

    name = "eps0"

    def member(self, element) -> bool:
        return is_normal_form(element)

    def compare(self, a, b) -> Ordering:
        return _compare(a, b)

    def less(self, a, b) -> bool:
        return _compare(a, b) is Ordering.LESS

    def encode(self, element) -> int:
        return seq(self.encode(x) for x in element)

    def decode(self, code: int):
        if code < 0:
            raise DecodeFailure(f"{code} is not a code")
        return tuple(self.decode(c) for c in unseq(code))


EPS0 = Eps0Order()


def unfold_omega(term: FixTerm) -> tuple:
    """Read a term of Fix(omega) as a normal form: sigma picks exponents among the unfolded children."""
    children = [unfold_omega(c) for c in term.children]
    return tuple(children[i] for i in term.sigma)


def eps0_witness() -> FixedPointWitness:
    """epsilon_0 as a fixed point of omega: <a, sigma> goes to its value in omega^(eps0) = eps0."""
    omega = OmegaDilator()
    return FixedPointWitness(order=EPS0, xi=lambda d: evaluate_class(omega, EPS0, d), name="eps0")


def eps0_power_witness() -> FixedPointWitness:
    """A second fixed point: <a, sigma> goes to omega raised to its value."""
    omega = OmegaDilator()

    def xi(d: DElement) -> tuple:
        return omega_power(evaluate_class(omega, EPS0, d))

    return FixedPointWitness(order=EPS0, xi=xi, name="eps0-power")

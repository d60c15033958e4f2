"""Named benchmark families and their parameters."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

from ..core.utils.helpers import expand_ranges
from .atl import SUITE, atl_case, atl_nest, atl_nested_u
from .families import (
    BenchCase,
    cardinality,
    cardinality_u,
    parity_to_buechi,
    rabin_game,
    rabin_to_buechi,
    rabin_to_rpair,
    tree_u,
)


class UnknownFamilyError(ValueError):
    """Raise when a benchmark family name is not registered."""


@dataclass(frozen=True)
class Family:
    name: str
    params: tuple[str, ...]
    build: Callable[..., BenchCase]
    summary: str


FAMILIES: dict[str, Family] = {
    family.name: family
    for family in (
        Family("cardinality", ("n",), cardinality, "graded, at least 2n successors split by q (Sat)"),
        Family("cardinalityU", ("n",), cardinality_u, "graded, 2n successors that cannot be split by q (Unsat)"),
        Family("treeU", ("n",), tree_u, "graded, p-tree with an overfull state (Unsat)"),
        Family("parityToBuechi", ("n", "k"), parity_to_buechi, "graded, negated parity-to-Buechi implication (Unsat)"),
        Family("rabinToBuechi", ("k", "n"), rabin_to_buechi, "graded, negated Rabin-to-Buechi implication (Unsat)"),
        Family("rabinToRPair", ("k", "n"), rabin_to_rpair, "graded, negated Rabin-to-single-pair implication (Unsat)"),
        Family("rabinGame", ("k", "n"), rabin_game, "graded, negated Rabin game implication (Unsat)"),
        Family("nest", ("n",), atl_nest, "ATL, nested <<2>>F <<1>>G alternation (Sat for even n)"),
        Family("nestedU", ("n",), atl_nested_u, "ATL, nested negated untils (Unknown)"),
        Family("atl", ("i",), atl_case, f"ATL suite formula i in 1..{len(SUITE)} (Unknown)"),
    )
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError as e:
        raise UnknownFamilyError(f"Unknown family '{name}', expected one of: {', '.join(FAMILIES)}") from e


def build_case(name: str, params: Sequence[int]) -> BenchCase:
    """
    Generate one member of a family.

    Raises:
        UnknownFamilyError: If the family does not exist.
        ValueError: On a wrong number of parameters or out-of-range values.
    """
    family = get_family(name)
    if len(params) != len(family.params):
        raise ValueError(f"Family {name} takes parameters {', '.join(family.params)}, got {len(params)} values")
    return family.build(*params)


def build_cases(name: str, ranges: Sequence[str]) -> list[BenchCase]:
    """All members of a family over the cartesian product of one range per parameter."""
    family = get_family(name)
    if len(ranges) != len(family.params):
        raise ValueError(f"Family {name} needs one range per parameter ({', '.join(family.params)})")
    return [family.build(*params) for params in expand_ranges(list(ranges))]

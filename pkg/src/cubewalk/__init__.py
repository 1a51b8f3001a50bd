"""Chaotic iterations on the N-cube with a Hamiltonian cycle removed.

Balanced Gray codes give the removed cycle; the remaining graph drives a
random walk whose configurations serve as pseudorandom output.
"""

from importlib import resources

from .ncube import BooleanMap

FIXTURES = ("a", "b", "c", "d", "e")


def load_fixture(name: str) -> BooleanMap:
    """One of the reference maps on 4..8 bits, by letter."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
    text = resources.files(__package__).joinpath("data", f"{name}.txt").read_text()
    return BooleanMap.from_line(text.strip())


__all__ = ["FIXTURES", "BooleanMap", "load_fixture"]

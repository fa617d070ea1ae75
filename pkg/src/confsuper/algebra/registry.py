"""Ordered, immutable variable registries.

Every exact object in the package carries the registry it was built in, and
arithmetic between objects from different registries is refused.  The
registry order fixes the graded-lex term order of the underlying rings:
momenta come first, then positions, then parameters and auxiliary symbols.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing


class VariableKind(str, Enum):
    MOMENTUM = "momentum"
    POSITION = "position"
    PARAMETER = "parameter"
    AUXILIARY = "auxiliary"


_KIND_RANK = {
    VariableKind.MOMENTUM: 0,
    VariableKind.POSITION: 1,
    VariableKind.PARAMETER: 2,
    VariableKind.AUXILIARY: 3,
}


class RegistryMismatch(ValueError):
    """Raised when objects from different registries are combined."""


class UnknownVariable(KeyError):
    """Raised when a name is not present in a registry."""


class VariableRegistry:
    """An ordered set of named variables, each tagged with a kind.

    Parameters
    ----------
    variables : iterable of (name, kind) pairs
        Kinds may be given as :class:`VariableKind` members or their string
        values.  The stored order is stable within a kind and sorted across
        kinds (momenta, positions, parameters, auxiliary).
    """

    __slots__ = ("_names", "_kinds", "_index", "_ring_q", "_ring_i", "_hash")

    def __init__(self, variables: Iterable[tuple[str, VariableKind | str]]):
        items = [(str(n), VariableKind(k)) for n, k in variables]
        seen = set()
        for name, _ in items:
            if not name.isidentifier() or name == "i":
                raise ValueError(f"invalid variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)
        items.sort(key=lambda nk: _KIND_RANK[nk[1]])
        self._names = tuple(n for n, _ in items)
        self._kinds = tuple(k for _, k in items)
        self._index = {n: j for j, n in enumerate(self._names)}
        if not self._names:
            raise ValueError("a registry needs at least one variable")
        self._ring_q = PolyRing(self._names, QQ, grlex)
        self._ring_i = PolyRing(self._names, QQ_I, grlex)
        self._hash = hash((self._names, self._kinds))

    @classmethod
    def build(
        cls,
        positions: Sequence[str] = (),
        momenta: Sequence[str] = (),
        parameters: Sequence[str] = (),
        auxiliary: Sequence[str] = (),
    ) -> "VariableRegistry":
        return cls(
            [(n, VariableKind.MOMENTUM) for n in momenta]
            + [(n, VariableKind.POSITION) for n in positions]
            + [(n, VariableKind.PARAMETER) for n in parameters]
            + [(n, VariableKind.AUXILIARY) for n in auxiliary]
        )

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def kind(self, name: str) -> VariableKind:
        return self._kinds[self.index(name)]

    def names_of_kind(self, kind: VariableKind | str) -> tuple[str, ...]:
        kind = VariableKind(kind)
        return tuple(n for n, k in zip(self._names, self._kinds) if k is kind)

    @property
    def positions(self) -> tuple[str, ...]:
        return self.names_of_kind(VariableKind.POSITION)

    @property
    def momenta(self) -> tuple[str, ...]:
        return self.names_of_kind(VariableKind.MOMENTUM)

    @property
    def parameters(self) -> tuple[str, ...]:
        return self.names_of_kind(VariableKind.PARAMETER)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self._names)

    def ring(self, gaussian: bool = False) -> PolyRing:
        return self._ring_i if gaussian else self._ring_q

    def extend(self, variables: Iterable[tuple[str, VariableKind | str]]) -> "VariableRegistry":
        return VariableRegistry(list(zip(self._names, self._kinds)) + list(variables))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VariableRegistry):
            return NotImplemented
        return self._names == other._names and self._kinds == other._kinds

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{n}:{k.value}" for n, k in zip(self._names, self._kinds))
        return f"VariableRegistry({body})"

    # convenience constructors for elements of this registry
    def var(self, name: str):
        from .rational import RationalFunction

        return RationalFunction.variable(self, name)

    def vars(self, names: str | Sequence[str]):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        return tuple(self.var(n) for n in names)

    def const(self, value):
        from .rational import RationalFunction

        return RationalFunction.constant(self, value)

"""Group arithmetic for EFA registers: Z^k, Z mod m, free groups, and direct products.

Element values are plain immutable Python data so they hash cheaply inside
search frontiers:

* ``Zk``: tuple of ints (arbitrary precision),
* ``ZMod``: int in ``[0, m)``,
* ``Free``: reduced tuple of nonzero ints, ``+i`` for generator ``gi`` and
  ``-i`` for its inverse ``Gi``,
* ``Product``: tuple of component values.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Any, Union


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Zk:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise GroupError("Z^k needs k >= 1")

    def identity_value(self):
        return (0,) * self.k

    def mul_values(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv_value(self, x):
        return tuple(-a for a in x)

    def parse_value(self, text: str):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise GroupError(f"expected '[i1,...,ik]', got {text!r}")
        body = text[1:-1].strip()
        parts = [p.strip() for p in body.split(",")] if body else []
        if len(parts) != self.k:
            raise GroupError(f"expected {self.k} entries, got {text!r}")
        try:
            return tuple(int(p) for p in parts)
        except ValueError:
            raise GroupError(f"bad integer vector {text!r}") from None

    def format_value(self, x) -> str:
        return "[" + ",".join(str(a) for a in x) + "]"

    def random_value(self, rng: random.Random, size: int = 5):
        return tuple(rng.randint(-size, size) for _ in range(self.k))

    def norm(self, x) -> int:
        return sum(abs(a) for a in x)

    def __str__(self) -> str:
        return f"Z^{self.k}"


@dataclass(frozen=True)
class ZMod:
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise GroupError("Zmod m needs m >= 2")

    def identity_value(self):
        return 0

    def mul_values(self, x, y):
        return (x + y) % self.m

    def inv_value(self, x):
        return (-x) % self.m

    def parse_value(self, text: str):
        try:
            v = int(text.strip())
        except ValueError:
            raise GroupError(f"bad residue {text!r}") from None
        return v % self.m

    def format_value(self, x) -> str:
        return str(x)

    def random_value(self, rng: random.Random, size: int = 5):
        return rng.randrange(self.m)

    def norm(self, x) -> int:
        # finite group: never prunes
        return 0

    def __str__(self) -> str:
        return f"Zmod {self.m}"


_GEN = re.compile(r"^([gG])(\d+)$")


def free_reduce(word) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs with a single left-to-right stack pass."""
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Free:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise GroupError("free group needs rank >= 1")

    def identity_value(self):
        return ()

    def mul_values(self, x, y):
        # both operands are reduced, so cancellation only happens at the seam
        i = 0
        while i < len(x) and i < len(y) and x[len(x) - 1 - i] == -y[i]:
            i += 1
        return x[: len(x) - i] + y[i:]

    def inv_value(self, x):
        return tuple(-a for a in reversed(x))

    def parse_value(self, text: str):
        tokens = text.split()
        if tokens in ([], ["e"], ["1"]):
            return ()
        out = []
        for tok in tokens:
            m = _GEN.match(tok)
            if not m:
                raise GroupError(f"bad generator literal {tok!r}")
            i = int(m.group(2))
            if not 1 <= i <= self.rank:
                raise GroupError(f"generator {tok!r} outside rank {self.rank}")
            out.append(i if m.group(1) == "g" else -i)
        return free_reduce(out)

    def format_value(self, x) -> str:
        if not x:
            return "e"
        return " ".join(f"g{a}" if a > 0 else f"G{-a}" for a in x)

    def random_value(self, rng: random.Random, size: int = 6):
        raw = [rng.choice([1, -1]) * rng.randint(1, self.rank) for _ in range(rng.randint(0, size))]
        return free_reduce(raw)

    def norm(self, x) -> int:
        return len(x)

    def __str__(self) -> str:
        return f"F {self.rank}"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise GroupError("product needs at least one factor")
        if any(isinstance(f, Product) for f in self.factors):
            raise GroupError("products must be flat")

    def identity_value(self):
        return tuple(f.identity_value() for f in self.factors)

    def mul_values(self, x, y):
        return tuple(f.mul_values(a, b) for f, a, b in zip(self.factors, x, y))

    def inv_value(self, x):
        return tuple(f.inv_value(a) for f, a in zip(self.factors, x))

    def parse_value(self, text: str):
        text = text.strip()
        if not (text.startswith("(") and text.endswith(")")):
            raise GroupError(f"expected '( e1 ; e2 ; ... )', got {text!r}")
        parts = text[1:-1].split(";")
        if len(parts) != len(self.factors):
            raise GroupError(f"expected {len(self.factors)} components, got {text!r}")
        return tuple(f.parse_value(p) for f, p in zip(self.factors, parts))

    def format_value(self, x) -> str:
        return "( " + " ; ".join(f.format_value(a) for f, a in zip(self.factors, x)) + " )"

    def random_value(self, rng: random.Random, size: int = 5):
        return tuple(f.random_value(rng, size) for f in self.factors)

    def norm(self, x) -> int:
        return sum(f.norm(a) for f, a in zip(self.factors, x))

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


GroupSpec = Union[Zk, ZMod, Free, Product]


def parse_spec(text: str) -> GroupSpec:
    parts = [p.strip() for p in re.split(r"\s+x\s+", text.strip())]
    factors = [_parse_factor(p) for p in parts]
    return factors[0] if len(factors) == 1 else Product(tuple(factors))


def _parse_factor(text: str) -> GroupSpec:
    m = re.fullmatch(r"Z\^(\d+)", text)
    if m:
        return Zk(int(m.group(1)))
    m = re.fullmatch(r"Zmod\s+(\d+)", text)
    if m:
        return ZMod(int(m.group(1)))
    m = re.fullmatch(r"F\s+(\d+)", text)
    if m:
        return Free(int(m.group(1)))
    raise GroupError(f"unknown group literal {text!r}")


@dataclass(frozen=True)
class GroupElement:
    spec: Any
    value: Any

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return mul(self, other)

    def inverse(self) -> "GroupElement":
        return inv(self)

    def is_identity(self) -> bool:
        return self.value == self.spec.identity_value()

    def __str__(self) -> str:
        return self.spec.format_value(self.value)


def identity(spec: GroupSpec) -> GroupElement:
    return GroupElement(spec, spec.identity_value())


def mul(a: GroupElement, b: GroupElement) -> GroupElement:
    if a.spec != b.spec:
        raise GroupError(f"cannot multiply elements of {a.spec} and {b.spec}")
    return GroupElement(a.spec, a.spec.mul_values(a.value, b.value))


def inv(a: GroupElement) -> GroupElement:
    return GroupElement(a.spec, a.spec.inv_value(a.value))


def is_identity(a: GroupElement) -> bool:
    return a.is_identity()


def parse_element(spec: GroupSpec, text: str) -> GroupElement:
    return GroupElement(spec, spec.parse_value(text))


def element(spec: GroupSpec, value) -> GroupElement:
    """Wrap a raw value, normalizing residues and free words."""
    if isinstance(spec, ZMod):
        value = value % spec.m
    elif isinstance(spec, Free):
        value = free_reduce(value)
    elif isinstance(spec, Zk):
        value = tuple(value)
    elif isinstance(spec, Product):
        value = tuple(element(f, v).value for f, v in zip(spec.factors, value))
    return GroupElement(spec, value)


def random_element(spec: GroupSpec, rng: random.Random) -> GroupElement:
    return GroupElement(spec, spec.random_value(rng))

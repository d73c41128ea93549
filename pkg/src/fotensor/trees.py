"""Gorn-address tree domains and the 2-d tree model builder.

A tree domain is a set of node addresses (sequences of child indices, the
empty sequence being the root) that is hereditarily prefix-closed and
left-sibling-closed. Tree models expose immediate dominance as the binary
relation "dom" and the immediate left-of sibling relation as "leftof".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateAddressError, GornDomainError, UnknownSymbolError
from .models import Alphabet, StructureModel

DOM = "dom"
LEFTOF = "leftof"


@dataclass(frozen=True)
class GornAddress:
    digits: tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 0 for d in self.digits):
            raise ValueError(f"address digits must be nonnegative: {self.digits}")

    @classmethod
    def parse(cls, text: str) -> "GornAddress":
        """Accepts "", "ε", a plain digit string like "110", or a dotted
        form like "1.1.0" (needed once child indices exceed 9)."""
        if text in ("", "ε"):
            return cls(())
        parts = text.split(".") if "." in text else list(text)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"not a Gorn address: {text!r}") from exc

    @property
    def is_root(self) -> bool:
        return not self.digits

    def parent(self) -> "GornAddress":
        if self.is_root:
            raise ValueError("the root has no parent")
        return GornAddress(self.digits[:-1])

    def child(self, i: int) -> "GornAddress":
        return GornAddress(self.digits + (i,))

    def __str__(self):
        if not self.digits:
            return "ε"
        if all(d <= 9 for d in self.digits):
            return "".join(str(d) for d in self.digits)
        return ".".join(str(d) for d in self.digits)


def _as_address(a) -> GornAddress:
    if isinstance(a, GornAddress):
        return a
    if isinstance(a, str):
        return GornAddress.parse(a)
    return GornAddress(tuple(a))


@dataclass(frozen=True)
class DomainValidation:
    ok: bool
    violations: tuple[tuple[GornAddress, str], ...]

    def __bool__(self):
        return self.ok


def validate_gorn_domain(addresses: Iterable) -> DomainValidation:
    """Check hereditary prefix closure and left-sibling closure.

    Every violating address is reported, with the missing address it
    requires."""
    domain = {_as_address(a) for a in addresses}
    violations = []
    for addr in sorted(domain, key=lambda a: (len(a.digits), a.digits)):
        if addr.is_root:
            continue
        parent = addr.parent()
        if parent not in domain:
            violations.append((addr, f"missing prefix {parent}"))
        last = addr.digits[-1]
        if last != 0:
            sibling = parent.child(last - 1)
            if sibling not in domain:
                violations.append((addr, f"missing left sibling {sibling}"))
    return DomainValidation(not violations, tuple(violations))


def build_tree_model(
    nodes: Sequence[tuple[GornAddress | str | tuple, str]],
    alphabet: Alphabet,
) -> StructureModel:
    """Build the 2-d tree structure for labeled Gorn addresses.

    Domain indices are assigned 1-based in lexicographic-by-(depth, digits)
    address order, so serialized structures are deterministic."""
    labeled = [(_as_address(a), label) for a, label in nodes]
    addresses = [a for a, _ in labeled]
    if len(set(addresses)) != len(addresses):
        seen, dups = set(), set()
        for a in addresses:
            (dups if a in seen else seen).add(a)
        raise DuplicateAddressError(f"duplicate addresses: {sorted(map(str, dups))}")
    validation = validate_gorn_domain(addresses)
    if not validation.ok:
        details = "; ".join(f"{a}: {why}" for a, why in validation.violations)
        raise GornDomainError(f"not a Gorn tree domain: {details}")

    order = sorted(addresses, key=lambda a: (len(a.digits), a.digits))
    index = {a: i + 1 for i, a in enumerate(order)}
    n = len(order)

    unary = {sym: np.zeros(n, dtype=np.int64) for sym in alphabet}
    for addr, label in labeled:
        if label not in alphabet:
            raise UnknownSymbolError(f"label {label!r} for node {addr} not in alphabet")
        unary[label][index[addr] - 1] = 1

    dom = np.zeros((n, n), dtype=np.int64)
    leftof = np.zeros((n, n), dtype=np.int64)
    domain = set(addresses)
    for addr in order:
        if not addr.is_root:
            dom[index[addr.parent()] - 1, index[addr] - 1] = 1
        nxt = addr.parent().child(addr.digits[-1] + 1) if not addr.is_root else None
        if nxt is not None and nxt in domain:
            leftof[index[addr] - 1, index[nxt] - 1] = 1
    return StructureModel(n, unary, {DOM: dom, LEFTOF: leftof})

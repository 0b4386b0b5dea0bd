"""Defining and derived identities of the M(n) family, checked by rewriting.

Each check normalizes a concrete word and compares against the value
the identity demands.  Beyond the defining relations, derived laws are
covered: powers a^k c^k cancel to 1, the zero a^n b stays absorbing
under extra left powers of a, and d a^p c^(p+1) acts as a right
identity on arbitrary elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ZERO, Element, format_element, normalize
from .catalog import build_mn
from .enumeration import enumerate_normal_forms

SAMPLE_LEN = 3
EXTRA_POWERS = 3


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    word: str
    expected: Element
    actual: Element

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def verify_mn_identities(n: int) -> list[IdentityCheck]:
    """All identity checks for M(n), in a fixed order."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    system = build_mn(n).system
    checks: list[IdentityCheck] = []

    def check(name: str, word: str, expected: Element) -> None:
        checks.append(IdentityCheck(name, word, expected,
                                    normalize(system, word)))

    check("ac = 1", "ac", "")
    check("db = 1", "db", "")
    check("dc = 1", "dc", "")
    for k in range(1, n):
        check(f"d a^{k} b = 1", "d" + "a" * k + "b", "")
    check(f"a^{n} b = 0", "a" * n + "b", ZERO)
    for j in range(1, EXTRA_POWERS + 1):
        check(f"a^{n + j} b = 0", "a" * (n + j) + "b", ZERO)
    for k in range(1, n + 1):
        check(f"a^{k} c^{k} = 1", "a" * k + "c" * k, "")
    for p in range(EXTRA_POWERS + 1):
        suffix = "d" + "a" * p + "c" * (p + 1)
        for u in enumerate_normal_forms(system, SAMPLE_LEN):
            name = f"u d a^{p} c^{p + 1} = u at u = {format_element(u)}"
            check(name, u + suffix, u)
    return checks


def all_hold(checks: list[IdentityCheck]) -> bool:
    return all(c.ok for c in checks)

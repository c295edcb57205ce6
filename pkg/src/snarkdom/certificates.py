"""Closed-form values and explicit optimal-size constructions for J_n.

A construction is a list of per-copy role strings (``"bcd"``, ``"a"``, ...)
laid out from copy 0 and flattened through the canonical vertex numbering.
"""

from __future__ import annotations

import json
from itertools import islice, cycle
from typing import Sequence

from .graph import ROLES, VertexSet, build_flower_snark, vertex_id
from .validators import GuardFunction, Variant, validate

# Entries with a closed form but no validator in this toolkit.
RECORDED_ONLY = ("weakly_convex", "convex")

UPPER_PAIR = ("a", "bcd")
TWO_DOM_BLOCK = ("bcd", "a", "a")
TOTAL_BLOCK = ("b", "cd", "cd", "b")
TOTAL_ENDINGS = {0: (), 1: ("ab",), 2: ("ab", "ab"), 3: ("b", "acd", "b")}
CONNECTED_BLOCK = ("d", "abd", "d", "acd")
SECURE_BLOCK = ("b", "cd", "bc", "d")
SECURE_ENDINGS = {
    0: ("b", "cd", "bc", "cd"),
    1: ("b", "cd", "bc", "bd", "c"),
    2: ("bc", "cd"),
    3: ("b", "cd", "ab", "a", "ac", "bd", "c"),
}


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def formula_value(variant: Variant | str, n: int) -> int:
    if n < 3:
        raise ValueError(f"formulas hold for n >= 3, got {n}")
    if variant == "weakly_convex":
        return 2 * n
    if variant == "convex":
        return 4 * n
    variant = Variant(variant)
    if variant in (Variant.DOMINATION, Variant.INDEPENDENT):
        return n
    if variant in (Variant.SECURE, Variant.WEAK_ROMAN):
        return _ceil_div(3 * n + 1, 2)
    if variant == Variant.TWO_DOMINATION:
        return (5 * n + 4) // 3 if n % 3 == 1 else _ceil_div(5 * n, 3)
    if variant == Variant.TOTAL:
        return 3 * n // 2 + 1 if n % 4 == 2 else _ceil_div(3 * n, 2)
    if variant in (Variant.CONNECTED, Variant.UPPER):
        return 2 * n if n % 2 == 0 else 2 * n - 1
    if variant == Variant.ROMAN:
        return 2 * n
    raise ValueError(f"no closed form for {variant}")


def formula_table(n: int) -> dict[str, int]:
    names = [v.value for v in Variant if v != Variant.MINIMAL] + list(RECORDED_ONLY)
    return {name: formula_value(name, n) for name in names}


def flatten(configs: Sequence[str], n: int | None = None) -> VertexSet:
    n = len(configs) if n is None else n
    if len(configs) != n:
        raise ValueError(f"{len(configs)} copy configurations for n={n}")
    ids = [vertex_id(i, role) for i, roles in enumerate(configs) for role in roles]
    return VertexSet.from_ids(ids, 4 * n)


def configs_of(s: VertexSet) -> list[str]:
    n = s.universe // 4
    return ["".join(r for k, r in enumerate(ROLES) if vertex_id(i, k) in s) for i in range(n)]


def _tile(block: Sequence[str], n: int) -> list[str]:
    return list(islice(cycle(block), n))


def upper_dom_configs(n: int) -> list[str]:
    configs = list(UPPER_PAIR) * (n // 2)
    if n % 2:
        configs.append("a")
    return configs


def two_dom_configs(n: int) -> list[str]:
    return _tile(TWO_DOM_BLOCK, n)


def total_dom_configs(n: int) -> list[str]:
    if n == 3:
        return list(TOTAL_ENDINGS[3])
    r = n % 4
    return list(TOTAL_BLOCK) * ((n - r) // 4 if r != 3 else (n - 3) // 4) + list(TOTAL_ENDINGS[r])


def connected_dom_configs(n: int) -> list[str]:
    configs = _tile(CONNECTED_BLOCK, n)
    if n % 4 == 1:
        configs[0] = "b"
    return configs


def secure_dom_configs(n: int) -> list[str]:
    if n < 4:
        raise ValueError("no secure construction below n = 4; solve J_3 directly")
    ending = SECURE_ENDINGS[n % 4]
    if n < len(ending):
        raise ValueError(f"ending block for n={n} needs {len(ending)} copies")
    m = (n - len(ending)) // 4
    return list(SECURE_BLOCK) * m + list(ending)


def upper_dom_certificate(n: int) -> VertexSet:
    return flatten(upper_dom_configs(n))


def two_dom_certificate(n: int) -> VertexSet:
    return flatten(two_dom_configs(n))


def total_dom_certificate(n: int) -> VertexSet:
    return flatten(total_dom_configs(n))


def connected_dom_certificate(n: int) -> VertexSet:
    return flatten(connected_dom_configs(n))


def secure_dom_certificate(n: int) -> VertexSet:
    return flatten(secure_dom_configs(n))


def centres(n: int) -> VertexSet:
    return flatten(["a"] * n)


def certificate(variant: Variant | str, n: int) -> VertexSet | GuardFunction:
    if n < 3:
        raise ValueError(f"certificates need n >= 3, got {n}")
    if variant in RECORDED_ONLY:
        raise ValueError(f"{variant} domination has no construction in this toolkit")
    variant = Variant(variant)
    if variant in (Variant.DOMINATION, Variant.INDEPENDENT):
        return centres(n)
    if variant == Variant.TWO_DOMINATION:
        return two_dom_certificate(n)
    if variant == Variant.TOTAL:
        return total_dom_certificate(n)
    if variant == Variant.CONNECTED:
        return connected_dom_certificate(n)
    if variant == Variant.UPPER:
        return upper_dom_certificate(n)
    if variant == Variant.SECURE:
        return secure_dom_certificate(n)
    if variant == Variant.WEAK_ROMAN:
        return GuardFunction.indicator(secure_dom_certificate(n))
    if variant == Variant.ROMAN:
        return GuardFunction.from_masks(0, centres(n).mask, 4 * n)
    raise ValueError(f"no certificate for {variant}")


def has_certificate(variant: Variant | str, n: int) -> bool:
    if variant in RECORDED_ONLY or variant == Variant.MINIMAL:
        return False
    if Variant(variant) in (Variant.SECURE, Variant.WEAK_ROMAN):
        return n >= 4
    return n >= 3


def certificate_size(cert: VertexSet | GuardFunction) -> int:
    return cert.weight if isinstance(cert, GuardFunction) else len(cert)


def check_certificate(variant: Variant | str, n: int) -> tuple[int, bool]:
    """Build the construction and return ``(size, valid)``."""
    cert = certificate(variant, n)
    return certificate_size(cert), validate(build_flower_snark(n), variant, cert)


def certificate_record(variant: Variant | str, n: int) -> dict:
    """JSON-ready ``{variant, n, size, copies}``; guard counts repeat the role letter."""
    cert = certificate(variant, n)
    if isinstance(cert, GuardFunction):
        copies = [
            [ROLES[k] for k in range(4) for _ in range(cert[vertex_id(i, k)])] for i in range(n)
        ]
    else:
        copies = [list(c) for c in configs_of(cert)]
    return {"variant": str(Variant(variant)), "n": n, "size": certificate_size(cert), "copies": copies}


def certificate_json(variant: Variant | str, n: int) -> str:
    return json.dumps(certificate_record(variant, n))

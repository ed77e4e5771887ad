"""
Group catalog: named permutation groups with their expected properties,
loaded from data/catalog.json.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any

from config.settings import CATALOG_PATH
from scripts.perm_group import GeneratedGroup, is_abelian, parse_group_spec
from scripts.structure import invariant_factor_count, is_nilpotent

LOGGER = logging.getLogger("catalog")

REQUIRED_ENTRY_KEYS = {"name", "spec", "expected"}
REQUIRED_EXPECTED_KEYS = {"order", "abelian", "nilpotent", "n"}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    group: GeneratedGroup
    expected: dict[str, Any]
    family: str = ""
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def order(self) -> int:
        return int(self.expected["order"])


def load_catalog(path: str | Path = CATALOG_PATH) -> list[CatalogEntry]:
    """Load and validate the catalog document."""
    doc = json.loads(Path(path).read_text())
    if "entries" not in doc:
        raise ValueError("Catalog missing keys: ['entries']")
    entries = []
    names = set()
    for raw in doc["entries"]:
        missing = REQUIRED_ENTRY_KEYS - raw.keys()
        if missing:
            raise ValueError(f"Catalog entry {raw.get('name', '<unknown>')} missing keys: {sorted(missing)}")
        absent = REQUIRED_EXPECTED_KEYS - raw["expected"].keys()
        if absent:
            raise ValueError(f"Catalog entry {raw['name']} expected block missing keys: {sorted(absent)}")
        if raw["name"] in names:
            raise ValueError(f"Duplicate catalog entry {raw['name']}")
        names.add(raw["name"])
        entries.append(
            CatalogEntry(
                name=raw["name"],
                group=parse_group_spec(raw["spec"]),
                expected=dict(raw["expected"]),
                family=raw.get("family", ""),
                params=dict(raw.get("params", {})),
            )
        )
    LOGGER.debug("loaded %s catalog entries from %s", len(entries), path)
    return entries


@lru_cache(maxsize=None)
def _default_catalog() -> tuple[CatalogEntry, ...]:
    return tuple(load_catalog(CATALOG_PATH))


def catalog() -> list[CatalogEntry]:
    return list(_default_catalog())


def entry(name: str) -> CatalogEntry:
    for item in _default_catalog():
        if item.name == name:
            return item
    raise KeyError(f"no catalog entry named {name!r}")


def computed_properties(group: GeneratedGroup) -> dict[str, Any]:
    """Order, abelian flag, nilpotency and n(G) (None when nonabelian)."""
    abelian = is_abelian(group)
    return {
        "order": group.order(),
        "abelian": abelian,
        "nilpotent": is_nilpotent(group),
        "n": invariant_factor_count(group) if abelian else None,
    }


def check_entry(item: CatalogEntry) -> tuple[bool, dict[str, Any]]:
    computed = computed_properties(item.group)
    ok = all(computed[key] == item.expected[key] for key in REQUIRED_EXPECTED_KEYS)
    return ok, computed

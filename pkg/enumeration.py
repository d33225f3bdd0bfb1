#!/usr/bin/env python3
"""
Enumeration of small composition tables
Classifies every k x k table (or a seeded sample for larger k) in vectorized chunks,
groups them by profile and checks the unit / mediality laws on the way.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from algebra import FiniteMagma
from config import get_settings
from errors import BudgetExceededError, MedialddError

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_SIZE = 3

Flags = Dict[str, np.ndarray]


class Profile(NamedTuple):
    commutative: bool
    associative: bool
    medial: bool
    unit: bool

    def describe(self) -> str:
        return " ".join(f"{name}={'yes' if value else 'no'}" for name, value in zip(self._fields, self))


def table_count(size: int) -> int:
    return size ** (size * size)


def all_tables(size: int, chunk: Optional[int] = None) -> Iterator[np.ndarray]:
    """Every size x size table in index order, as (count, size, size) batches"""
    chunk = get_settings().enumeration_chunk if chunk is None else chunk
    cells = size * size
    powers = size ** np.arange(cells - 1, -1, -1, dtype=np.int64)
    total = table_count(size)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield ((idx[:, None] // powers[None, :]) % size).reshape(-1, size, size)


def sample_tables(size: int, count: int, seed: int = 0, chunk: Optional[int] = None) -> Iterator[np.ndarray]:
    """count uniformly random tables from numpy's default_rng(seed), in batches"""
    chunk = get_settings().enumeration_chunk if chunk is None else chunk
    rng = np.random.default_rng(seed)
    for start in range(0, count, chunk):
        yield rng.integers(0, size, size=(min(chunk, count - start), size, size), dtype=np.int64)


def batch_flags(tables: np.ndarray) -> Flags:
    """Law flags for a batch of tables of shape (count, k, k)"""
    t = np.asarray(tables, dtype=np.int64)
    count, k, _ = t.shape
    idx = np.arange(k)
    b3 = np.arange(count)[:, None, None, None]
    b4 = np.arange(count)[:, None, None, None, None]

    commutative = (t == t.transpose(0, 2, 1)).all(axis=(1, 2))
    # (x*y)*z against x*(y*z)
    lhs = t[b3, t[:, :, :, None], idx[None, None, None, :]]
    rhs = t[b3, idx[None, :, None, None], t[:, None, :, :]]
    associative = (lhs == rhs).reshape(count, -1).all(axis=1)
    # (a*b)*(c*d) against (a*c)*(b*d)
    lhs = t[b4, t[:, :, :, None, None], t[:, None, None, :, :]]
    rhs = t[b4, t[:, :, None, :, None], t[:, None, :, None, :]]
    medial = (lhs == rhs).reshape(count, -1).all(axis=1)

    left = (t == idx[None, None, :]).all(axis=2)
    right = (t == idx[None, :, None]).all(axis=1)
    return {
        "commutative": commutative,
        "associative": associative,
        "medial": medial,
        "left_unit": left.any(axis=1),
        "right_unit": right.any(axis=1),
        "unit": (left & right).any(axis=1),
    }


FILTERS: Dict[str, Callable[[Flags], np.ndarray]] = {
    "medial": lambda f: f["medial"],
    "non-medial": lambda f: ~f["medial"],
    "associative": lambda f: f["associative"],
    "non-associative": lambda f: ~f["associative"],
    "commutative": lambda f: f["commutative"],
    "non-commutative": lambda f: ~f["commutative"],
    "has-unit": lambda f: f["unit"],
    "no-unit": lambda f: ~f["unit"],
    "has-left-unit": lambda f: f["left_unit"],
    "has-right-unit": lambda f: f["right_unit"],
}

ALIASES = {"has-two-sided-unit": "has-unit"}

# Each law maps flags to the mask of tables that break it
LAWS: Dict[str, Callable[[Flags], np.ndarray]] = {
    "comm-assoc-implies-medial": lambda f: f["commutative"] & f["associative"] & ~f["medial"],
    "medial-left-right-unit-implies-commutative":
        lambda f: f["medial"] & f["left_unit"] & f["right_unit"] & ~f["commutative"],
    "unit-implies-medial-iff-comm-assoc":
        lambda f: f["unit"] & (f["medial"] != (f["commutative"] & f["associative"])),
    "medial-non-monoidal-has-no-unit":
        lambda f: f["medial"] & ~(f["commutative"] & f["associative"]) & f["unit"],
}


def parse_filters(specs: Sequence[str]) -> Tuple[str, ...]:
    """Split comma lists, resolve aliases and reject unknown names"""
    names = []
    for spec in specs:
        for raw in spec.split(","):
            name = ALIASES.get(raw.strip(), raw.strip())
            if not name:
                continue
            if name not in FILTERS:
                known = ", ".join(sorted(FILTERS) + sorted(ALIASES))
                raise MedialddError(f"Unknown filter {raw.strip()!r}. Available: {known}")
            if name not in names:
                names.append(name)
    return tuple(names)


@dataclass
class EnumerationResult:
    size: int
    filters: Tuple[str, ...]
    sampled: bool
    seed: Optional[int]
    examined: int = 0
    matched: int = 0
    profiles: Dict[Profile, int] = field(default_factory=dict)
    exemplars: Dict[Profile, List[np.ndarray]] = field(default_factory=dict)
    law_exceptions: Dict[str, int] = field(default_factory=lambda: {name: 0 for name in LAWS})

    def ordered_profiles(self) -> List[Profile]:
        return sorted(self.profiles, key=lambda p: tuple(not v for v in p))

    def exemplar_magmas(self, profile: Profile) -> List[FiniteMagma]:
        return [FiniteMagma(f"exemplar-{self.size}", table) for table in self.exemplars.get(profile, [])]


def enumerate_tables(size: int, filters: Sequence[str] = (), limit: int = 1, sample: Optional[int] = None,
                     seed: int = 0, chunk: Optional[int] = None) -> EnumerationResult:
    """
    Classify every table of the given size, or a seeded random sample

    Args:
        size: Carrier size k
        filters: Filter names (comma lists allowed); a table must pass all of them
        limit: Exemplar tables kept per profile
        sample: Number of random tables instead of the exhaustive scan
        seed: Seed for the sample
        chunk: Tables per vectorized batch

    Returns:
        EnumerationResult with per-profile counts of the matching tables and law
        exception counts over every examined table

    Raises:
        BudgetExceededError: size above the exhaustive cap without a sample
    """
    if size < 1:
        raise MedialddError(f"Table size must be positive, got {size}")
    if limit < 0:
        raise MedialddError(f"Exemplar limit must be non-negative, got {limit}")
    names = parse_filters(filters)
    if sample is None and size > EXHAUSTIVE_MAX_SIZE:
        raise BudgetExceededError(
            f"Exhaustive enumeration stops at size {EXHAUSTIVE_MAX_SIZE} ({table_count(size)} tables requested); "
            f"pass a sample count", limit=table_count(EXHAUSTIVE_MAX_SIZE), requested=table_count(size))
    batches = all_tables(size, chunk) if sample is None else sample_tables(size, sample, seed, chunk)
    result = EnumerationResult(size, names, sample is not None, seed if sample is not None else None)

    for tables in batches:
        flags = batch_flags(tables)
        for law, broken in LAWS.items():
            result.law_exceptions[law] += int(broken(flags).sum())
        mask = np.ones(len(tables), dtype=bool)
        for name in names:
            mask &= FILTERS[name](flags)
        for k in np.flatnonzero(mask):
            profile = Profile(bool(flags["commutative"][k]), bool(flags["associative"][k]),
                              bool(flags["medial"][k]), bool(flags["unit"][k]))
            result.profiles[profile] = result.profiles.get(profile, 0) + 1
            kept = result.exemplars.setdefault(profile, [])
            if len(kept) < limit:
                kept.append(tables[k].copy())
        result.examined += len(tables)
        result.matched += int(mask.sum())
        logger.info(f"Enumerated {result.examined} tables of size {size}, {result.matched} matched")

    for law, count in result.law_exceptions.items():
        if count:
            logger.error(f"Law {law} fails on {count} tables of size {size}")
    return result


def format_table(table: np.ndarray) -> str:
    """Compact row form, rows joined by '/'"""
    return "/".join(" ".join(str(int(v)) for v in row) for row in np.asarray(table))

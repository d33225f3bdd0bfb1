#!/usr/bin/env python3
"""
Catalog of builtin magmas
The finite tables and real-valued operations used as reference examples and regression witnesses
"""

import logging
import math
import operator
import re
from itertools import permutations
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from algebra import FiniteMagma, RealOp, Witness, WitnessKind
from errors import CatalogError

logger = logging.getLogger(__name__)

Operation = Union[FiniteMagma, RealOp]

NAME_PATTERN = re.compile(r"^(?P<base>[a-z][a-z0-9-]*?)(?:\((?P<size>\d+)\))?$")
DEFAULT_SIZE = 2
MAX_SIZE = 64

# 4-element associative, non-commutative, not medial
TAMURA = [[0, 0, 0, 0],
          [1, 1, 1, 1],
          [2, 2, 2, 2],
          [0, 0, 1, 0]]

# x * y = not y
FLIP2 = [[1, 0],
         [1, 0]]

# commutative, not associative, medial
COMM_NONASSOC4 = [[0, 2, 1, 3],
                  [2, 0, 3, 1],
                  [1, 3, 0, 2],
                  [3, 1, 2, 0]]

ABCD = ("a", "b", "c", "d")


def _finite(x) -> bool:
    return math.isfinite(float(x))


def _is_int(x) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, (bool, np.bool_))


def _pair_product(p, q):
    # (a,b) -> [[a,a],[b,b]], with (0,0) standing for the identity matrix
    a, b = p
    c, d = q
    if a == 0 and b == 0:
        return (c, d)
    if c == 0 and d == 0:
        return (a, b)
    s = c + d
    return (a * s, b * s)


def _h(x, y):
    return np.minimum(np.minimum(x + 1, 16) * y, 64)


def _l(a, b):
    # h transported to R through x -> exp(x) + 4
    with np.errstate(over="ignore"):
        return np.log(_h(np.exp(a) + 4, np.exp(b) + 4) - 4)


def _uniform(low: float, high: float) -> Callable[[np.random.Generator], float]:
    # half-open on the left: (low, high]
    return lambda rng: float(high - (high - low) * rng.random())


def _integers(low: int, high: int) -> Callable[[np.random.Generator], int]:
    return lambda rng: int(rng.integers(low, high + 1))


PAIR_MATRIX_WITNESS = Witness(
    WitnessKind.MEDIAL,
    ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.0)),
    (1.0, 0.0),
    (0.0, 1.0),
)


def _real_ops() -> Dict[str, Callable[[], RealOp]]:
    real = _uniform(-100.0, 100.0)
    return {
        "sub-int": lambda: RealOp("sub-int", operator.sub, _is_int, _integers(-1000, 1000),
                                  medial=True, exact=True, integral=True, vectorized=False),
        "add-pos-int": lambda: RealOp("add-pos-int", operator.add, lambda x: _is_int(x) and x >= 1,
                                      _integers(1, 1000), medial=True, exact=True, integral=True, vectorized=False),
        "add-real": lambda: RealOp("add-real", np.add, _finite, real, medial=True),
        "mul-real": lambda: RealOp("mul-real", np.multiply, _finite, _uniform(-10.0, 10.0), medial=True),
        "sub-real": lambda: RealOp("sub-real", np.subtract, _finite, real, medial=True),
        "div-real": lambda: RealOp("div-real", np.divide, lambda x: _finite(x) and x > 0,
                                   _uniform(0.1, 10.0), medial=True),
        "min-real": lambda: RealOp("min-real", np.minimum, _finite, real, medial=True, exact=True),
        "max-real": lambda: RealOp("max-real", np.maximum, _finite, real, medial=True, exact=True),
        "proj-left-real": lambda: RealOp("proj-left-real", lambda x, y: x + 0 * y, _finite, real,
                                         medial=True, exact=True),
        "proj-right-real": lambda: RealOp("proj-right-real", lambda x, y: 0 * x + y, _finite, real,
                                          medial=True, exact=True),
        "h-continuous": lambda: RealOp("h-continuous", _h, lambda x: _finite(x) and x > 4,
                                       _uniform(4.0, 100.0), medial=True, exact=True),
        "l-continuous": lambda: RealOp("l-continuous", _l, _finite, _uniform(-5.0, 5.0), medial=True),
        "pair-matrix": lambda: RealOp("pair-matrix", _pair_product,
                                      lambda p: all(_finite(v) for v in p), _pair_sampler,
                                      medial=False, medial_witness=PAIR_MATRIX_WITNESS, pair=True,
                                      vectorized=False,
                                      special_points=((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -1.0))),
    }


def _pair_sampler(rng: np.random.Generator) -> Tuple[float, float]:
    # positive quadrant keeps c + d away from 0
    return float(rng.uniform(0.5, 3.0)), float(rng.uniform(0.5, 3.0))


def _symmetric_group3() -> FiniteMagma:
    perms = list(permutations(range(3)))
    return FiniteMagma.from_function(
        "s3", perms, lambda p, q: tuple(p[q[i]] for i in range(3)),
        labels=["".join(map(str, p)) for p in perms])


def _sized(base: str, k: int) -> FiniteMagma:
    labels = [str(i) for i in range(k)]
    idx = np.arange(k)
    if base == "proj-left":
        table = np.repeat(idx[:, None], k, axis=1)
    elif base == "proj-right":
        table = np.repeat(idx[None, :], k, axis=0)
    else:
        table = (idx[:, None] + idx[None, :]) % k
    return FiniteMagma(f"{base}({k})", table, labels)


FIXED: Dict[str, Callable[[], FiniteMagma]] = {
    "tamura": lambda: FiniteMagma("tamura", TAMURA, ABCD),
    "flip2": lambda: FiniteMagma("flip2", FLIP2, ("0", "1")),
    "comm-nonassoc4": lambda: FiniteMagma("comm-nonassoc4", COMM_NONASSOC4, ABCD),
    "s3": _symmetric_group3,
}

SIZED = ("proj-left", "proj-right", "z-add")

REAL = _real_ops()


def catalog_names() -> List[str]:
    """Every name builtin() accepts, sized families shown with their parameter"""
    return sorted(FIXED) + [f"{base}(k)" for base in SIZED] + sorted(REAL)


def builtin(name: str) -> Operation:
    """
    Look up a builtin operation by name

    Args:
        name: Catalog name; proj-left, proj-right and z-add take an optional size, e.g. "z-add(3)"

    Returns:
        A FiniteMagma or a RealOp

    Raises:
        CatalogError: for unknown names or bad sizes
    """
    match = NAME_PATTERN.match(name.strip())
    if match is None:
        raise CatalogError(f"Malformed builtin name {name!r}")
    base, size = match.group("base"), match.group("size")
    if base in SIZED:
        k = DEFAULT_SIZE if size is None else int(size)
        if not 1 <= k <= MAX_SIZE:
            raise CatalogError(f"Size of {base} must be in 1..{MAX_SIZE}, got {k}")
        return _sized(base, k)
    if size is not None:
        raise CatalogError(f"Builtin {base!r} takes no size parameter")
    if base in FIXED:
        return FIXED[base]()
    if base in REAL:
        return REAL[base]()
    raise CatalogError(f"Unknown builtin {name!r}. Available: {', '.join(catalog_names())}")

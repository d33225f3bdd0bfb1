#!/usr/bin/env python3
"""
Generalised switching functions as dense truth tables
Per-variable abstraction, order-dependence checks and counterexample construction.
Serves as the brute-force oracle for the decision-diagram engine.

Encoding: row index bit for variable 1 is the most significant, so
values[k] = f(b_1, ..., b_n) with k = b_1 b_2 ... b_n read as a binary number.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from algebra import FiniteMagma
from config import get_settings
from errors import ArityError, BudgetExceededError, CarrierError, VariableIndexError

logger = logging.getLogger(__name__)

Assignment = Tuple[int, ...]

MAX_VARS = 20

INT64_MIN, INT64_MAX = int(np.iinfo(np.int64).min), int(np.iinfo(np.int64).max)


def assignment_index(bits: Sequence[int]) -> int:
    index = 0
    for b in bits:
        if b not in (0, 1):
            raise ArityError(f"Assignment bits must be 0 or 1, got {tuple(bits)}")
        index = (index << 1) | int(b)
    return index


def index_assignment(index: int, n: int) -> Assignment:
    return tuple((index >> (n - 1 - k)) & 1 for k in range(n))


def _py(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    return value


def _as_value_array(values: Any) -> np.ndarray:
    """Pick int64 / float64 for numeric values, object otherwise (pairs, terms)"""
    if isinstance(values, np.ndarray) and values.ndim == 1:
        return values.copy()
    items = [_py(v) for v in values]
    integral = bool(items) and all(isinstance(v, int) and not isinstance(v, bool) for v in items)
    if integral and all(INT64_MIN <= v <= INT64_MAX for v in items):
        return np.array(items, dtype=np.int64)
    if items and not integral and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in items):
        return np.array(items, dtype=np.float64)
    out = np.empty(len(items), dtype=object)
    for k, v in enumerate(items):
        out[k] = v
    return out


def _check_var(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise VariableIndexError(f"Variable {i} outside 1..{n}")


class TruthTable:
    """Immutable dense table of f: B^n -> M"""

    def __init__(self, n: int, values: Any):
        if not 1 <= n <= MAX_VARS:
            raise ArityError(f"Variable count must be in 1..{MAX_VARS}, got {n}")
        arr = _as_value_array(values)
        if arr.shape != (2 ** n,):
            raise ArityError(f"A function of {n} variables needs {2 ** n} values, got {arr.shape[0]}")
        arr.setflags(write=False)
        self.n = n
        self._values = arr

    @classmethod
    def constant(cls, n: int, value: Any) -> "TruthTable":
        return cls(n, [value] * (2 ** n))

    @property
    def values(self) -> np.ndarray:
        return self._values

    def cube(self) -> np.ndarray:
        """Values as an n-dimensional 2 x ... x 2 array, axis k-1 = variable k"""
        return self._values.reshape((2,) * self.n)

    def __getitem__(self, index: int) -> Any:
        return _py(self._values[index])

    def evaluate(self, bits: Sequence[int]) -> Any:
        if len(bits) != self.n:
            raise ArityError(f"Assignment of length {len(bits)} for a function of {self.n} variables")
        return self[assignment_index(bits)]

    def is_constant(self) -> bool:
        first = self._values[0]
        return all(v == first for v in self._values.tolist()) if self._values.dtype == object \
            else bool((self._values == first).all())

    def depends_on(self, i: int) -> bool:
        _check_var(self.n, i)
        cube = self.cube()
        lo, hi = np.take(cube, [0], axis=i - 1), np.take(cube, [1], axis=i - 1)
        if cube.dtype == object:
            return any(p != q for p, q in zip(lo.ravel().tolist(), hi.ravel().tolist()))
        return not bool((lo == hi).all())

    def validate(self, op: Any) -> None:
        for k, v in enumerate(self._values.tolist()):
            if not op.contains(v):
                raise CarrierError(f"Value {v!r} at row {k} is outside the carrier of {op.name!r}")

    def equals(self, other: "TruthTable", op: Any = None) -> bool:
        """Equality under the op's rule (exact, or tolerance for non-clamp reals)"""
        if self.n != other.n:
            return False
        if op is None:
            return self == other
        return bool(np.all(op.arrays_equal(self._values, other._values)))

    def __eq__(self, other):
        if not isinstance(other, TruthTable) or self.n != other.n:
            return False
        return self._values.tolist() == other._values.tolist()

    def __hash__(self):
        return hash((self.n, tuple(self._values.tolist())))

    def __repr__(self):
        return f"TruthTable(n={self.n}, values={self._values.tolist()})"


def abstract_var(f: TruthTable, i: int, op: Any) -> TruthTable:
    """
    A(i)(f)(b) = f(b with b_i = 0) * f(b with b_i = 1)

    The arity is kept; variable i becomes vacuous in the result.
    """
    _check_var(f.n, i)
    cube = f.cube()
    combined = op.apply_arrays(np.take(cube, [0], axis=i - 1), np.take(cube, [1], axis=i - 1))
    return TruthTable(f.n, np.concatenate([combined, combined], axis=i - 1).reshape(-1))


def abstract_sequence(f: TruthTable, order: Sequence[int], op: Any) -> TruthTable:
    """Abstract the variables in application order: order[0] first"""
    for i in order:
        f = abstract_var(f, i, op)
    return f


class OrderWitness(NamedTuple):
    i: int
    j: int
    assignment: Assignment
    i_first: Any
    j_first: Any


def is_function_abstractable(f: TruthTable, op: Any) -> Tuple[bool, Optional[OrderWitness]]:
    """
    Check that every pair of abstractions commutes

    Returns:
        (True, None) or (False, witness) for the first pair i < j and the first
        assignment on which abstracting i first differs from abstracting j first
    """
    single = {i: abstract_var(f, i, op) for i in range(1, f.n + 1)}
    for i in range(1, f.n + 1):
        for j in range(i + 1, f.n + 1):
            i_first = abstract_var(single[i], j, op)
            j_first = abstract_var(single[j], i, op)
            same = np.asarray(op.arrays_equal(i_first.values, j_first.values))
            if not same.all():
                k = int(np.flatnonzero(~same)[0])
                return False, OrderWitness(i, j, index_assignment(k, f.n), i_first[k], j_first[k])
    return True, None


def pair_bracketings(f: TruthTable, op: Any) -> Tuple[Any, Any]:
    """
    The two n = 2 abstraction results written out

    Returns:
        ((f00*f10)*(f01*f11), (f00*f01)*(f10*f11)): variable 1 abstracted
        first, then variable 2 abstracted first
    """
    if f.n != 2:
        raise ArityError(f"Bracketing check needs n = 2, got {f.n}")
    f00, f01, f10, f11 = (f[k] for k in range(4))
    return op(op(f00, f10), op(f01, f11)), op(op(f00, f01), op(f10, f11))


def make_quadruple_function(n: int, a: Any, b: Any, c: Any, d: Any) -> TruthTable:
    """f depends on (b_1, b_2) only: a, b, c, d at (0,0), (0,1), (1,0), (1,1)"""
    if n < 2:
        raise ArityError(f"Quadruple function needs n >= 2, got {n}")
    return TruthTable(n, np.repeat(_as_value_array([a, b, c, d]), 2 ** (n - 2)))


def restrict_to_pair(f: TruthTable, i: int, j: int, base: Sequence[int]) -> TruthTable:
    """h(x, y) = f(base with position i := x and position j := y)"""
    _check_var(f.n, i)
    _check_var(f.n, j)
    if not i < j:
        raise VariableIndexError(f"restrict_to_pair needs i < j, got {i}, {j}")
    if len(base) != f.n:
        raise ArityError(f"Base assignment of length {len(base)} for a function of {f.n} variables")
    values = []
    for x in (0, 1):
        for y in (0, 1):
            bits = list(base)
            bits[i - 1], bits[j - 1] = x, y
            values.append(f.evaluate(bits))
    return TruthTable(2, values)


@dataclass
class OrderOutcome:
    """One distinct abstraction result and every application order producing it"""
    result: TruthTable
    orders: List[Tuple[int, ...]] = field(default_factory=list)


def _orders_with_results(f: TruthTable, remaining: Tuple[int, ...], prefix: Tuple[int, ...],
                         op: Any) -> Iterator[Tuple[Tuple[int, ...], TruthTable]]:
    if not remaining:
        yield prefix, f
        return
    for k, i in enumerate(remaining):
        yield from _orders_with_results(abstract_var(f, i, op), remaining[:k] + remaining[k + 1:],
                                        prefix + (i,), op)


def abstract_all_orders(f: TruthTable, variables: Sequence[int], op: Any,
                        limit: Optional[int] = None) -> List[OrderOutcome]:
    """
    Abstract the variables in every order and group equal results

    Args:
        f: Function to abstract
        variables: Distinct variable indices
        op: Operation used for abstraction
        limit: Maximum number of variables (factorial guard)

    Returns:
        Distinct outcomes in order of first appearance; a single outcome means the
        abstraction over these variables is order-independent for f

    Raises:
        BudgetExceededError: if more than limit variables are requested
    """
    limit = get_settings().permutation_limit if limit is None else limit
    variables = tuple(variables)
    for i in variables:
        _check_var(f.n, i)
    if len(set(variables)) != len(variables):
        raise VariableIndexError(f"Variables must be distinct, got {variables}")
    if len(variables) > limit:
        raise BudgetExceededError(f"{len(variables)} variables exceed the permutation limit {limit}",
                                  limit=limit, requested=len(variables))
    outcomes: List[OrderOutcome] = []
    for order, result in _orders_with_results(f, variables, (), op):
        for outcome in outcomes:
            if outcome.result.equals(result, op):
                outcome.orders.append(order)
                break
        else:
            outcomes.append(OrderOutcome(result, [order]))
    logger.info(f"{len(outcomes)} distinct outcome(s) over orders of {variables}")
    return outcomes


# Vectorized exhaustive scans over all of GSF(n, M)

def all_functions(size: int, n: int) -> np.ndarray:
    """Every f in GSF(n, M) for |M| = size, one row per function, base-size digits"""
    width = 2 ** n
    count = size ** width
    powers = size ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (np.arange(count, dtype=np.int64)[:, None] // powers[None, :]) % size


def _batch_abstract(cube: np.ndarray, axis: int, table: np.ndarray) -> np.ndarray:
    return table[np.take(cube, [0], axis=axis), np.take(cube, [1], axis=axis)]


def abstractable_mask(m: FiniteMagma, functions: np.ndarray, n: int) -> np.ndarray:
    """Per-row abstractability of a batch of value rows over a finite magma"""
    functions = np.asarray(functions, dtype=np.int64)
    count = functions.shape[0]
    cube = functions.reshape((count,) + (2,) * n)
    single = {i: _batch_abstract(cube, i, m.table) for i in range(1, n + 1)}
    mask = np.ones(count, dtype=bool)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            i_first = _batch_abstract(single[i], j, m.table)
            j_first = _batch_abstract(single[j], i, m.table)
            mask &= (i_first == j_first).reshape(count, -1).all(axis=1)
    return mask


def exhaustive_confirmation(m: FiniteMagma, n: int, budget: Optional[int] = None) -> Optional[bool]:
    """
    Is every f in GSF(n, M) abstractable? None when |M|^(2^n) exceeds the budget
    """
    budget = get_settings().exhaustive_budget if budget is None else budget
    count = m.size ** (2 ** n)
    if count > budget:
        logger.warning(f"Exhaustive scan of {m.size}^{2 ** n} functions over {m.name} skipped (budget {budget})")
        return None
    verdict = bool(abstractable_mask(m, all_functions(m.size, n), n).all())
    logger.info(f"Exhaustive scan of {count} functions over {m.name}, n={n}: abstractable={verdict}")
    return verdict


def search_counterexample(m: Any, n: int, verify: bool = True,
                          budget: Optional[int] = None) -> Optional[TruthTable]:
    """
    Construct an order-dependent function from a medial-law violation

    A violating quadruple (a,b,c,d) becomes the function with those values on
    (b_1, b_2); no enumeration is needed. For a medial finite magma the
    exhaustive scan (within budget) is run when verify is set.

    Returns:
        The order-dependent function, or None when the operation is medial
    """
    if n < 2:
        raise ArityError(f"Counterexample search needs n >= 2, got {n}")
    medial, witness = m.medial_certificate()
    if not medial:
        return make_quadruple_function(n, *witness.operands)
    if verify and isinstance(m, FiniteMagma):
        budget = get_settings().exhaustive_budget if budget is None else budget
        if m.size ** (2 ** n) <= budget:
            functions = all_functions(m.size, n)
            mask = abstractable_mask(m, functions, n)
            if not mask.all():
                row = functions[int(np.flatnonzero(~mask)[0])]
                logger.error(f"Medial magma {m.name} has an order-dependent function {row.tolist()}")
                return TruthTable(n, row)
            logger.info(f"No order-dependent function among {len(functions)} over {m.name}")
        else:
            logger.warning(f"Exhaustive scan over {m.name} with n={n} exceeds budget {budget}; "
                           f"medial law over {m.size ** 4} quadruples stands")
    return None

#!/usr/bin/env python3
"""
Binary operations and their algebraic classification
Finite composition tables, real-valued operations, the free magma, and structure transport
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Any, Callable, Dict, Hashable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from config import get_settings
from errors import CarrierError, MedialddError, TransportError

logger = logging.getLogger(__name__)


class WitnessKind(str, Enum):
    COMMUTATIVITY = "commutativity"
    ASSOCIATIVITY = "associativity"
    MEDIAL = "medial"
    UNIT_EXISTENCE = "unit-existence"


@dataclass(frozen=True)
class Witness:
    """A concrete operand tuple on which a law fails: lhs != rhs"""
    kind: WitnessKind
    operands: Tuple[Any, ...]
    lhs: Any
    rhs: Any

    def describe(self, render: Callable[[Any], str] = str) -> str:
        operands = ",".join(render(x) for x in self.operands)
        return f"({operands}): {render(self.lhs)} != {render(self.rhs)}"


class Element(NamedTuple):
    index: int
    label: str


class UnitScan(NamedTuple):
    left: Tuple[int, ...]
    right: Tuple[int, ...]
    unit: Optional[int]


def _first_violation(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    """
    Pick the reported violation out of a boolean failure grid

    Tuples with pairwise distinct operands come first, each tier in row-major
    (lexicographic) order. The grid is indexed by the operand tuple.
    """
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    distinct = np.ones(len(hits), dtype=bool)
    for p in range(hits.shape[1]):
        for q in range(p + 1, hits.shape[1]):
            distinct &= hits[:, p] != hits[:, q]
    chosen = np.flatnonzero(distinct)
    row = hits[chosen[0]] if len(chosen) else hits[0]
    return tuple(int(v) for v in row)


class FiniteMagma:
    """
    A finite carrier {0..n-1} with a total n x n composition table

    Rows are the left operand, columns the right operand. The table is
    stored as a read-only int64 array, so instances are immutable.
    """

    exact = True
    dtype = np.int64

    def __init__(self, name: str, table: Any, labels: Optional[Sequence[str]] = None):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise CarrierError(f"Composition table of {name!r} must be a non-empty square, got shape {arr.shape}")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            bad = tuple(int(v) for v in np.argwhere((arr < 0) | (arr >= n))[0])
            raise CarrierError(f"Table of {name!r} is not closed: entry {bad} = {int(arr[bad])} outside 0..{n - 1}")
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(label) for label in labels)
        if len(labels) != n:
            raise CarrierError(f"{name!r} has {n} elements but {len(labels)} labels")
        if len(set(labels)) != n:
            raise CarrierError(f"Labels of {name!r} are not distinct: {labels}")
        arr.setflags(write=False)
        self.name = name
        self._table = arr
        self._labels = labels
        self._index = {label: i for i, label in enumerate(labels)}
        self._medial: Optional[Tuple[bool, Optional[Witness]]] = None

    @classmethod
    def from_function(cls, name: str, elements: Sequence[Hashable], opfunc: Callable[[Any, Any], Any],
                      labels: Optional[Sequence[str]] = None) -> "FiniteMagma":
        """Tabulate opfunc over a finite element list; raises CarrierError on a non-closed operation"""
        position = {x: i for i, x in enumerate(elements)}
        table = []
        for x in elements:
            row = []
            for y in elements:
                z = opfunc(x, y)
                if z not in position:
                    raise CarrierError(f"{name!r}: {x!r} * {y!r} = {z!r} leaves the carrier")
                row.append(position[z])
            table.append(row)
        return cls(name, table, labels if labels is not None else [str(x) for x in elements])

    @property
    def size(self) -> int:
        return self._table.shape[0]

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def table(self) -> np.ndarray:
        return self._table

    def element(self, ref: Union[int, str, Element]) -> Element:
        """Resolve an index, label or Element of this carrier"""
        if isinstance(ref, Element):
            ref = ref.index
        if isinstance(ref, str):
            if ref not in self._index:
                raise CarrierError(f"Unknown element {ref!r} in {self.name!r}; known: {' '.join(self._labels)}")
            ref = self._index[ref]
        if isinstance(ref, (bool, np.bool_)) or not isinstance(ref, (int, np.integer)):
            raise CarrierError(f"Element reference {ref!r} is neither an index nor a label")
        if not 0 <= int(ref) < self.size:
            raise CarrierError(f"Element index {ref} outside carrier 0..{self.size - 1} of {self.name!r}")
        return Element(int(ref), self._labels[int(ref)])

    def eval(self, a: Union[int, str, Element], b: Union[int, str, Element]) -> Element:
        """Validated composition a * b"""
        x, y = self.element(a), self.element(b)
        return self.element(int(self._table[x.index, y.index]))

    def __call__(self, a: int, b: int) -> int:
        return int(self._table[self.canonical(a), self.canonical(b)])

    def apply_arrays(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        lo = np.asarray(lo)
        hi = np.asarray(hi)
        for arr in (lo, hi):
            if arr.size and (arr.min() < 0 or arr.max() >= self.size):
                raise CarrierError(f"Operand outside carrier 0..{self.size - 1} of {self.name!r}")
        return self._table[lo, hi]

    def contains(self, value: Any) -> bool:
        return isinstance(value, (int, np.integer)) and not isinstance(value, (bool, np.bool_)) \
            and 0 <= int(value) < self.size

    def canonical(self, value: Any) -> int:
        if not self.contains(value):
            raise CarrierError(f"{value!r} is not an element index of {self.name!r}")
        return int(value)

    def format_value(self, value: Any) -> str:
        return self._labels[int(value)]

    def parse_value(self, text: str) -> int:
        return self.element(text.strip()).index

    def values_equal(self, x: Any, y: Any) -> bool:
        return int(x) == int(y)

    def arrays_equal(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.asarray(x) == np.asarray(y)

    def medial_certificate(self) -> Tuple[bool, Optional[Witness]]:
        if self._medial is None:
            self._medial = check_medial(self)
        return self._medial

    def __eq__(self, other):
        return isinstance(other, FiniteMagma) and self._labels == other._labels \
            and np.array_equal(self._table, other._table)

    def __hash__(self):
        return hash((self._labels, self._table.tobytes()))

    def __repr__(self):
        return f"FiniteMagma(name={self.name!r}, size={self.size})"


def check_commutative(m: FiniteMagma) -> Tuple[bool, Optional[Witness]]:
    """True iff the table is symmetric; otherwise the first pair a < b with a*b != b*a"""
    t = m.table
    hit = _first_violation(np.triu(t != t.T, k=1))
    if hit is None:
        return True, None
    a, b = hit
    return False, Witness(WitnessKind.COMMUTATIVITY, (a, b), int(t[a, b]), int(t[b, a]))


def check_associative(m: FiniteMagma) -> Tuple[bool, Optional[Witness]]:
    """Scan all n^3 triples for (a*b)*c = a*(b*c)"""
    t = m.table
    n = m.size
    idx = np.arange(n)
    lhs = t[t[:, :, None], idx[None, None, :]]
    rhs = t[idx[:, None, None], t[None, :, :]]
    hit = _first_violation(lhs != rhs)
    if hit is None:
        return True, None
    return False, Witness(WitnessKind.ASSOCIATIVITY, hit, int(lhs[hit]), int(rhs[hit]))


def check_medial(m: FiniteMagma) -> Tuple[bool, Optional[Witness]]:
    """Scan all n^4 quadruples for the interchange law (a*b)*(c*d) = (a*c)*(b*d)"""
    t = m.table
    lhs = t[t[:, :, None, None], t[None, None, :, :]]
    rhs = t[t[:, None, :, None], t[None, :, None, :]]
    hit = _first_violation(lhs != rhs)
    if hit is None:
        return True, None
    return False, Witness(WitnessKind.MEDIAL, hit, int(lhs[hit]), int(rhs[hit]))


def find_units(m: FiniteMagma) -> UnitScan:
    """
    All left units (e*a = a for every a), all right units (a*e = a) and the two-sided unit

    Raises:
        MedialddError: if left and right units exist but do not meet in exactly one element
    """
    t = m.table
    idx = np.arange(m.size)
    left = tuple(int(e) for e in np.flatnonzero((t == idx[None, :]).all(axis=1)))
    right = tuple(int(e) for e in np.flatnonzero((t == idx[:, None]).all(axis=0)))
    unit = None
    if left and right:
        both = sorted(set(left) & set(right))
        if len(both) != 1:
            raise MedialddError(f"{m.name!r}: left units {left} and right units {right} share {both}")
        unit = both[0]
    return UnitScan(left, right, unit)


def check_unit(m: FiniteMagma, e: Union[int, str, Element]) -> Tuple[bool, Optional[Witness]]:
    """Is e a two-sided unit? On failure the witness holds (e, a) for the first a that breaks it"""
    e = m.element(e).index
    t = m.table
    for a in range(m.size):
        if t[e, a] != a:
            return False, Witness(WitnessKind.UNIT_EXISTENCE, (e, a), int(t[e, a]), a)
        if t[a, e] != a:
            return False, Witness(WitnessKind.UNIT_EXISTENCE, (e, a), int(t[a, e]), a)
    return True, None


@dataclass(frozen=True)
class AlgebraReport:
    """Classification flags, each backed by a witness when it fails"""
    commutative: bool
    commutative_witness: Optional[Witness]
    associative: bool
    associative_witness: Optional[Witness]
    medial: bool
    medial_witness: Optional[Witness]
    left_units: Tuple[int, ...] = ()
    right_units: Tuple[int, ...] = ()
    unit: Optional[int] = None

    def __post_init__(self):
        for flag, witness, name in ((self.commutative, self.commutative_witness, "commutative"),
                                    (self.associative, self.associative_witness, "associative"),
                                    (self.medial, self.medial_witness, "medial")):
            if flag == (witness is not None):
                raise MedialddError(f"Inconsistent report: {name}={flag} with witness {witness}")
        in_both = self.unit is not None and self.unit in self.left_units and self.unit in self.right_units
        if (self.unit is not None) != in_both:
            raise MedialddError(f"Unit {self.unit} is not both a left and a right unit")

    @property
    def is_semigroup(self) -> bool:
        return self.associative

    @property
    def is_monoid(self) -> bool:
        return self.associative and self.unit is not None

    @property
    def abstractable(self) -> bool:
        return self.medial

    def profile(self) -> Tuple[bool, bool, bool, bool]:
        return self.commutative, self.associative, self.medial, self.unit is not None


def classify(m: FiniteMagma) -> AlgebraReport:
    """Run every check against one magma"""
    commutative, cw = check_commutative(m)
    associative, aw = check_associative(m)
    medial, mw = m.medial_certificate()
    units = find_units(m)
    report = AlgebraReport(commutative, cw, associative, aw, medial, mw, units.left, units.right, units.unit)
    logger.info(f"Classified {m.name}: commutative={commutative} associative={associative} "
                f"medial={medial} unit={units.unit}")
    return report


# Real-valued operations

def _canonical_real(value: Any) -> float:
    x = float(value)
    if math.isnan(x):
        raise CarrierError("NaN is not a terminal value")
    return x + 0.0


@dataclass(frozen=True, eq=False)
class RealOp:
    """
    A binary operation on (a subset of) the reals, or on pairs of reals

    The medial flag is a certificate, not a computation: catalog entries carry
    the known answer and user-supplied operations must assert it.
    """
    name: str
    op: Callable[[Any, Any], Any]
    domain: Callable[[Any], bool]
    sampler: Callable[[np.random.Generator], Any]
    medial: bool
    medial_witness: Optional[Witness] = None
    exact: bool = False
    integral: bool = False
    pair: bool = False
    vectorized: bool = True
    special_points: Tuple[Any, ...] = ()
    rtol: float = field(default_factory=lambda: get_settings().real_rtol)

    def __post_init__(self):
        if not self.domain(self.sampler(np.random.default_rng(0))):
            raise CarrierError(f"Domain predicate of {self.name!r} rejects its own sample")
        if self.medial and self.medial_witness is not None:
            raise MedialddError(f"{self.name!r} is certified medial but carries a medial witness")

    @property
    def dtype(self):
        if self.pair:
            return object
        return np.int64 if self.integral else np.float64

    def canonical(self, value: Any) -> Any:
        if self.pair:
            if not isinstance(value, (tuple, list)) or len(value) != 2:
                raise CarrierError(f"{self.name!r} expects a pair, got {value!r}")
            return tuple(_canonical_real(v) for v in value)
        if self.integral:
            if isinstance(value, (float, np.floating)) and not float(value).is_integer():
                raise CarrierError(f"{self.name!r} expects an integer, got {value!r}")
            if isinstance(value, (bool, np.bool_)):
                raise CarrierError(f"{self.name!r} expects an integer, got {value!r}")
            return int(value)
        return _canonical_real(value)

    def __call__(self, a: Any, b: Any) -> Any:
        if self.integral:
            a, b = self.canonical(a), self.canonical(b)
        return self.canonical(self.op(a, b))

    def apply_arrays(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        if self.vectorized:
            return np.asarray(self.op(np.asarray(lo), np.asarray(hi)), dtype=self.dtype)
        out = np.empty(np.shape(lo), dtype=object)
        for idx in np.ndindex(out.shape):
            out[idx] = self(lo[idx], hi[idx])
        return out

    def contains(self, value: Any) -> bool:
        try:
            return bool(self.domain(self.canonical(value)))
        except (CarrierError, TypeError, ValueError):
            return False

    def format_value(self, value: Any) -> str:
        if self.pair:
            return "(" + ",".join(repr(float(v)) for v in value) + ")"
        if self.integral:
            return str(int(value))
        return repr(float(value))

    def parse_value(self, text: str) -> Any:
        text = text.strip()
        try:
            if self.pair:
                parts = text.strip("()").split(",")
                if len(parts) != 2:
                    raise ValueError(text)
                value = (float(parts[0]), float(parts[1]))
            elif self.integral:
                value = int(text)
            else:
                value = float(text)
        except ValueError:
            raise CarrierError(f"{text!r} is not a value of {self.name!r}")
        if not self.contains(value):
            raise CarrierError(f"{text!r} lies outside the domain of {self.name!r}")
        return self.canonical(value)

    def values_equal(self, x: Any, y: Any) -> bool:
        if self.exact or self.integral:
            return x == y
        if self.pair:
            return all(math.isclose(p, q, rel_tol=self.rtol, abs_tol=self.rtol) for p, q in zip(x, y))
        return math.isclose(x, y, rel_tol=self.rtol, abs_tol=self.rtol)

    def arrays_equal(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x, y = np.asarray(x), np.asarray(y)
        if self.pair:
            out = np.empty(x.shape, dtype=bool)
            for idx in np.ndindex(x.shape):
                out[idx] = self.values_equal(x[idx], y[idx])
            return out
        if self.exact or self.integral:
            return np.asarray(x == y, dtype=bool)
        return np.isclose(x, y, rtol=self.rtol, atol=self.rtol)

    def medial_certificate(self) -> Tuple[bool, Optional[Witness]]:
        return self.medial, self.medial_witness

    def __repr__(self):
        return f"RealOp(name={self.name!r}, medial={self.medial})"


@dataclass(frozen=True)
class RealLawReport:
    """Sampled verdicts for a RealOp; a True flag only means no violation was sampled"""
    trials: int
    closed: bool
    closure_witness: Optional[Tuple[Any, Any]]
    commutative: bool
    commutative_witness: Optional[Witness]
    associative: bool
    associative_witness: Optional[Witness]
    medial: bool
    medial_witness: Optional[Witness]


def sample_laws(op: RealOp, trials: int = 1000, seed: int = 0) -> RealLawReport:
    """
    Check closure, commutativity, associativity and mediality on random samples

    Args:
        op: The operation to probe
        trials: Number of sampled pairs, triples and quadruples
        seed: Seed for numpy's default_rng

    Returns:
        RealLawReport with the first sampled violation of each law
    """
    rng = np.random.default_rng(seed)
    eq = op.values_equal
    closure = comm = assoc = medial = None
    for _ in range(trials):
        x1, x2, x3, x4 = (op.sampler(rng) for _ in range(4))
        if closure is None and not op.domain(op(x1, x2)):
            closure = (x1, x2)
        if comm is None and not eq(op(x1, x2), op(x2, x1)):
            comm = Witness(WitnessKind.COMMUTATIVITY, (x1, x2), op(x1, x2), op(x2, x1))
        lhs, rhs = op(op(x1, x2), x3), op(x1, op(x2, x3))
        if assoc is None and not eq(lhs, rhs):
            assoc = Witness(WitnessKind.ASSOCIATIVITY, (x1, x2, x3), lhs, rhs)
        lhs, rhs = op(op(x1, x2), op(x3, x4)), op(op(x1, x3), op(x2, x4))
        if medial is None and not eq(lhs, rhs):
            medial = Witness(WitnessKind.MEDIAL, (x1, x2, x3, x4), lhs, rhs)
    return RealLawReport(trials, closure is None, closure, comm is None, comm,
                         assoc is None, assoc, medial is None, medial)


def search_medial_violation(op: RealOp, trials: int = 20000, seed: int = 0,
                            pool_size: int = 16) -> Optional[Witness]:
    """Random search for a medial violation over the op's special points plus sampled points"""
    rng = np.random.default_rng(seed)
    pool = [op.canonical(p) for p in op.special_points] + [op.canonical(op.sampler(rng)) for _ in range(pool_size)]
    for _ in range(trials):
        a, b, c, d = (pool[int(i)] for i in rng.integers(0, len(pool), size=4))
        lhs, rhs = op(op(a, b), op(c, d)), op(op(a, c), op(b, d))
        if not op.values_equal(lhs, rhs):
            logger.info(f"Medial violation for {op.name} at {(a, b, c, d)}")
            return Witness(WitnessKind.MEDIAL, (a, b, c, d), lhs, rhs)
    return None


# Free magma

class FreeMagma:
    """
    Term trees over leaf symbols: a * b is the node ("*", a, b)

    Nothing is identified, so two bracketings are equal only if they are the same tree.
    """

    name = "free"
    exact = True
    integral = False
    dtype = object

    def __call__(self, a: Any, b: Any) -> Tuple[str, Any, Any]:
        return ("*", a, b)

    def apply_arrays(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        out = np.empty(np.shape(lo), dtype=object)
        for idx in np.ndindex(out.shape):
            out[idx] = self(lo[idx], hi[idx])
        return out

    def contains(self, value: Any) -> bool:
        return isinstance(value, (str, tuple))

    def canonical(self, value: Any) -> Any:
        if not self.contains(value):
            raise CarrierError(f"{value!r} is not a free-magma term")
        return value

    def values_equal(self, x: Any, y: Any) -> bool:
        return x == y

    def arrays_equal(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.empty(np.shape(x), dtype=bool)
        for idx in np.ndindex(out.shape):
            out[idx] = x[idx] == y[idx]
        return out

    def format_value(self, value: Any) -> str:
        return self.render(value)

    def parse_value(self, text: str) -> str:
        return text.strip()

    def medial_certificate(self) -> Tuple[bool, Optional[Witness]]:
        a, b, c, d = "a", "b", "c", "d"
        return False, Witness(WitnessKind.MEDIAL, (a, b, c, d),
                              self(self(a, b), self(c, d)), self(self(a, c), self(b, d)))

    @staticmethod
    def render(term: Any, top: bool = True) -> str:
        if isinstance(term, tuple):
            body = f"{FreeMagma.render(term[1], False)}*{FreeMagma.render(term[2], False)}"
            return body if top else f"({body})"
        return str(term)


# Structure transport

def _as_callable(mapping: Union[Mapping, Callable], name: str) -> Callable[[Any], Any]:
    lookup = mapping if callable(mapping) else mapping.__getitem__

    def call(x: Any) -> Any:
        try:
            return lookup(x)
        except (KeyError, IndexError, TypeError) as e:
            raise TransportError(f"{name} is undefined at {x!r}: {e!r}")
    return call


def transport_classes(m: FiniteMagma, carrier: Sequence[Hashable], f: Union[Mapping, Callable],
                      g: Union[Mapping, Callable]) -> Dict[Hashable, List[Hashable]]:
    """Quotient classes {s : g(f(s)) = r} keyed by representative r, in carrier order"""
    f_, g_ = _as_callable(f, "f"), _as_callable(g, "g")
    classes: Dict[Hashable, List[Hashable]] = {}
    for s in carrier:
        r = g_(m.element(f_(s)).index)
        classes.setdefault(r, []).append(s)
    return classes


def transport(m: FiniteMagma, carrier: Sequence[Hashable], f: Union[Mapping, Callable],
              g: Union[Mapping, Callable], name: Optional[str] = None) -> FiniteMagma:
    """
    Induce an operation on the representatives g(M) of S/~ from a magma M

    a ** b := g(f(a) * f(b)), where f: S -> M is surjective and g: M -> S is a
    section (f o g = id). Representatives are ordered by their position in S.

    Args:
        m: Source magma
        carrier: The finite set S, as a sequence of distinct hashable elements
        f: Surjection S -> M (mapping or callable returning an index, label or Element)
        g: Section M -> S (mapping or callable taking an element index)
        name: Name of the transported magma

    Returns:
        FiniteMagma over the representatives

    Raises:
        TransportError: if f is not surjective, g leaves S, or f o g != id
    """
    f_, g_ = _as_callable(f, "f"), _as_callable(g, "g")
    members = list(carrier)
    if len(set(members)) != len(members):
        raise TransportError("Carrier S contains duplicate elements")
    member_set = set(members)
    try:
        image = {m.element(f_(s)).index for s in members}
    except CarrierError as e:
        raise TransportError(f"f leaves the carrier of {m.name!r}: {e}")
    missing = [m.labels[x] for x in range(m.size) if x not in image]
    if missing:
        raise TransportError(f"f is not surjective onto {m.name!r}: missing {' '.join(missing)}")
    section = {}
    for x in range(m.size):
        r = g_(x)
        if r not in member_set:
            raise TransportError(f"g({m.labels[x]}) = {r!r} is not in S")
        if m.element(f_(r)).index != x:
            raise TransportError(f"f(g({m.labels[x]})) != {m.labels[x]}")
        section[x] = r
    if len(set(section.values())) != m.size:
        raise TransportError("g is not injective")

    chosen = set(section.values())
    reps = [s for s in members if s in chosen]
    position = {r: k for k, r in enumerate(reps)}
    table = [[position[section[m(m.element(f_(r)).index, m.element(f_(q)).index)]] for q in reps] for r in reps]
    labels = [str(r).replace(" ", "") for r in reps]
    if len(set(labels)) != len(labels):
        raise TransportError(f"Representatives {reps} do not have distinct labels")
    result = FiniteMagma(name or f"{m.name}-transported", table, labels)

    source, target = classify(m), classify(result)
    if source.associative and not target.associative:
        raise TransportError(f"Transport of {m.name!r} lost associativity")
    if not source.commutative and target.commutative:
        raise TransportError(f"Transport of {m.name!r} lost non-commutativity")
    logger.info(f"Transported {m.name} onto {len(reps)} representatives of a {len(members)}-element set")
    return result


# Affine operations t(x, y) = a x + b y + c

AFFINE_GRID: Tuple[Tuple[float, float, float], ...] = tuple(product((0, 1), (0, 1), (-1, 0, 1)))
AFFINE_SAMPLES: Tuple[float, ...] = (-2.5, -1.0, 0.0, 0.5, 1.75, 3.0)


@dataclass(frozen=True)
class AffineVerdict:
    coefficients: Tuple[float, float, float]
    associative: bool
    commutative: bool


@dataclass(frozen=True)
class AffineReport:
    verdicts: Tuple[AffineVerdict, ...]
    associative_noncommutative: Tuple[Tuple[float, float, float], ...]

    @property
    def only_projections(self) -> bool:
        return set(self.associative_noncommutative) <= {(1, 0, 0), (0, 1, 0)}


def check_affine_projection_claim(grid: Sequence[Tuple[float, float, float]] = AFFINE_GRID,
                                  random_triples: int = 0, seed: int = 0,
                                  samples: Sequence[float] = AFFINE_SAMPLES,
                                  rtol: Optional[float] = None) -> AffineReport:
    """
    Test associativity and commutativity of t(x,y) = ax + by + c for each coefficient triple

    The grid must cover {0,1} x {0,1} x {-1,0,1}; random_triples extra triples
    are drawn uniformly from [-2, 2]^3.
    """
    grid = [tuple(t) for t in grid]
    missing = [t for t in AFFINE_GRID if t not in grid]
    if missing:
        raise MedialddError(f"Affine grid must include {missing}")
    rng = np.random.default_rng(seed)
    grid += [tuple(float(v) for v in rng.uniform(-2.0, 2.0, size=3)) for _ in range(random_triples)]
    tol = get_settings().real_rtol if rtol is None else rtol
    xs = np.asarray(samples, dtype=np.float64)
    x, y, z = np.meshgrid(xs, xs, xs, indexing="ij")

    verdicts = []
    for a, b, c in grid:
        def t(p, q):
            return a * p + b * q + c
        associative = bool(np.allclose(t(t(x, y), z), t(x, t(y, z)), rtol=tol, atol=tol))
        commutative = bool(np.allclose(t(x, y), t(y, x), rtol=tol, atol=tol))
        verdicts.append(AffineVerdict((a, b, c), associative, commutative))
    found = tuple(v.coefficients for v in verdicts if v.associative and not v.commutative)
    logger.info(f"Affine check over {len(verdicts)} triples: associative and non-commutative = {found}")
    return AffineReport(tuple(verdicts), found)

#!/usr/bin/env python3
"""
Hash-consed reduced ordered multi-terminal BDDs
Canonical node store with apply / restrict / abstract over pluggable terminal operations,
and the medial-law gate for abstracting several variables at once.

Variable 1 is tested first (closest to the root), matching the truth-table
encoding in gsf where variable 1 is the most significant index bit.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

from errors import ArityError, CarrierError, NotWellDefinedError, StructuralError, VariableIndexError
from gsf import TruthTable

logger = logging.getLogger(__name__)


class DDNode:
    """A node identity; equality is identity of the interned id"""
    __slots__ = ("id", "var")

    is_terminal = False

    def __init__(self, id: int, var: int):
        self.id = id
        self.var = var

    def __eq__(self, other):
        return isinstance(other, DDNode) and self.id == other.id

    def __hash__(self):
        return self.id


class TerminalNode(DDNode):
    __slots__ = ("value",)

    is_terminal = True

    def __init__(self, id: int, var: int, value: Any):
        super().__init__(id, var)
        self.value = value

    def __repr__(self):
        return f"TerminalNode(id={self.id}, value={self.value!r})"


class InternalNode(DDNode):
    __slots__ = ("low", "high")

    def __init__(self, id: int, var: int, low: DDNode, high: DDNode):
        super().__init__(id, var)
        self.low = low
        self.high = high

    def __repr__(self):
        return f"InternalNode(id={self.id}, var={self.var}, low={self.low.id}, high={self.high.id})"


class Policy(str, Enum):
    GATED = "gated"
    FORCED = "forced-order"


@dataclass(frozen=True)
class AbstractionRequest:
    """Operation, variables in application order, and how to treat a non-medial operation"""
    op: Any
    vars: Tuple[int, ...]
    policy: Policy = Policy.GATED

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(int(i) for i in self.vars))
        object.__setattr__(self, "policy", Policy(self.policy))
        if len(set(self.vars)) != len(self.vars):
            raise VariableIndexError(f"Abstracted variables must be distinct, got {self.vars}")

    def validate(self, n: int) -> None:
        for i in self.vars:
            if not 1 <= i <= n:
                raise VariableIndexError(f"Variable {i} outside 1..{n}")


class ManagerStats:
    """Counters for one manager's lifetime"""
    def __init__(self):
        self.terminals_created = 0
        self.internal_created = 0
        self.apply_calls = 0
        self.cache_hits = 0
        self.cache_misses = 0
        self.order_dependent_folds = 0

    def as_dict(self) -> Dict[str, int]:
        return dict(vars(self))


def _terminal_key(value: Any) -> Tuple[Any, ...]:
    """Total equality for terminal values; -0.0 folds into 0.0 and NaN is rejected"""
    if hasattr(value, "item") and not isinstance(value, (tuple, list)):
        value = value.item()
    if isinstance(value, bool):
        return ("bool", value)
    if isinstance(value, int):
        return ("int", value)
    if isinstance(value, float):
        if math.isnan(value):
            raise CarrierError("NaN cannot be a terminal value")
        return ("real", value + 0.0)
    if isinstance(value, (tuple, list)):
        return ("tuple",) + tuple(_terminal_key(v) for v in value)
    return ("obj", value)


def _canonical_value(value: Any) -> Any:
    if hasattr(value, "item") and not isinstance(value, (tuple, list)):
        value = value.item()
    if isinstance(value, float):
        return value + 0.0
    if isinstance(value, list):
        value = tuple(value)
    if isinstance(value, tuple):
        return tuple(_canonical_value(v) for v in value)
    return value


def node_count(node: DDNode) -> int:
    """Distinct nodes reachable from node, terminals included"""
    seen: Set[int] = set()
    stack = [node]
    while stack:
        u = stack.pop()
        if u.id in seen:
            continue
        seen.add(u.id)
        if not u.is_terminal:
            stack.append(u.low)
            stack.append(u.high)
    return len(seen)


class DDManager:
    """
    Unique table, apply cache and variable count for one family of diagrams

    A manager and its nodes belong to a single thread; independent experiments
    should use independent managers.
    """

    def __init__(self, n: int, carrier: Optional[Any] = None):
        """
        Args:
            n: Number of Boolean variables, numbered 1..n
            carrier: Optional operation whose carrier every terminal must belong to
        """
        if n < 1:
            raise ArityError(f"A manager needs at least one variable, got {n}")
        self.n = n
        self.carrier = carrier
        self.leaf_level = n + 1
        self.stats = ManagerStats()
        self._nodes: List[DDNode] = []
        self._unique: Dict[Tuple[int, int, int], InternalNode] = {}
        self._terminals: Dict[Tuple[Any, ...], TerminalNode] = {}
        self._cache: Dict[Tuple[int, int, int], DDNode] = {}
        self._op_ids: Dict[int, int] = {}
        self._ops: List[Any] = []

    def __len__(self):
        return len(self._nodes)

    def node(self, id: int) -> DDNode:
        return self._nodes[id]

    def _register(self, node: DDNode) -> None:
        self._nodes.append(node)
        if len(self._nodes) % 10000 == 0:
            logger.debug(f"Unique table holds {len(self._nodes)} nodes")

    def _op_id(self, op: Any) -> int:
        key = id(op)
        if key not in self._op_ids:
            self._op_ids[key] = len(self._ops)
            self._ops.append(op)
        return self._op_ids[key]

    def _check_var(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise VariableIndexError(f"Variable {i} outside 1..{self.n}")

    # Construction

    def mk_terminal(self, value: Any) -> TerminalNode:
        """Canonical terminal for value; the same value always yields the same node"""
        if self.carrier is not None:
            value = self.carrier.canonical(value)
            if not self.carrier.contains(value):
                raise CarrierError(f"{value!r} is outside the carrier of {self.carrier.name!r}")
        key = _terminal_key(value)
        node = self._terminals.get(key)
        if node is None:
            node = TerminalNode(len(self._nodes), self.leaf_level, _canonical_value(value))
            self._terminals[key] = node
            self._register(node)
            self.stats.terminals_created += 1
        return node

    def mk_node(self, var: int, low: DDNode, high: DDNode) -> DDNode:
        """
        Interned internal node testing var, or low itself when low is high

        Raises:
            StructuralError: if var does not precede the top variables of both children
        """
        self._check_var(var)
        if not (var < low.var and var < high.var):
            raise StructuralError(f"Variable {var} must precede children testing {low.var} and {high.var}")
        if low.id == high.id:
            return low
        key = (var, low.id, high.id)
        node = self._unique.get(key)
        if node is None:
            node = InternalNode(len(self._nodes), var, low, high)
            self._unique[key] = node
            self._register(node)
            self.stats.internal_created += 1
        return node

    def from_truth_table(self, f: TruthTable) -> DDNode:
        """Build the reduced diagram of a dense function bottom-up"""
        if f.n != self.n:
            raise ArityError(f"Function has {f.n} variables, manager has {self.n}")
        level = [self.mk_terminal(v) for v in f.values.tolist()]
        for var in range(self.n, 0, -1):
            level = [self.mk_node(var, level[2 * k], level[2 * k + 1]) for k in range(len(level) // 2)]
        return level[0]

    def to_truth_table(self, node: DDNode) -> TruthTable:
        """Dense expansion; skipped variables are vacuous"""
        memo: Dict[Tuple[int, int], List[Any]] = {}

        def expand(u: DDNode, var: int) -> List[Any]:
            key = (u.id, var)
            if key in memo:
                return memo[key]
            if var > self.n:
                out = [u.value]
            elif u.var == var:
                out = expand(u.low, var + 1) + expand(u.high, var + 1)
            else:
                half = expand(u, var + 1)
                out = half + half
            memo[key] = out
            return out

        return TruthTable(self.n, expand(node, 1))

    # Queries

    def eval(self, node: DDNode, bits: Sequence[int]) -> Any:
        if len(bits) != self.n:
            raise ArityError(f"Assignment of length {len(bits)} for {self.n} variables")
        while not node.is_terminal:
            node = node.high if bits[node.var - 1] else node.low
        return node.value

    def node_count(self, node: DDNode) -> int:
        return node_count(node)

    def support(self, node: DDNode) -> List[int]:
        found: Set[int] = set()
        seen: Set[int] = set()
        stack = [node]
        while stack:
            u = stack.pop()
            if u.id in seen or u.is_terminal:
                continue
            seen.add(u.id)
            found.add(u.var)
            stack.extend((u.low, u.high))
        return sorted(found)

    # Operations

    def restrict(self, node: DDNode, i: int, bit: int) -> DDNode:
        """Cofactor with variable i fixed to bit"""
        self._check_var(i)
        memo: Dict[int, DDNode] = {}

        def walk(u: DDNode) -> DDNode:
            if u.var > i:
                return u
            if u.var == i:
                return u.high if bit else u.low
            if u.id not in memo:
                memo[u.id] = self.mk_node(u.var, walk(u.low), walk(u.high))
            return memo[u.id]

        return walk(node)

    def _cofactors(self, u: DDNode, var: int) -> Tuple[DDNode, DDNode]:
        if u.var == var:
            return u.low, u.high
        return u, u

    def apply(self, op: Any, u: DDNode, v: DDNode) -> DDNode:
        """
        Pointwise op(u, v), memoized

        The cache key is the ordered pair (u, v): op need not be commutative.
        """
        key = (self._op_id(op), u.id, v.id)
        self.stats.apply_calls += 1
        cached = self._cache.get(key)
        if cached is not None:
            self.stats.cache_hits += 1
            return cached
        self.stats.cache_misses += 1
        if u.is_terminal and v.is_terminal:
            result = self.mk_terminal(op(u.value, v.value))
        else:
            top = min(u.var, v.var)
            u0, u1 = self._cofactors(u, top)
            v0, v1 = self._cofactors(v, top)
            result = self.mk_node(top, self.apply(op, u0, v0), self.apply(op, u1, v1))
        self._cache[key] = result
        return result

    def abstract(self, op: Any, i: int, node: DDNode) -> DDNode:
        """op(f|x_i=0, f|x_i=1); variable i no longer appears"""
        self._check_var(i)
        return self.apply(op, self.restrict(node, i, 0), self.restrict(node, i, 1))

    def abstract_set(self, req: AbstractionRequest, node: DDNode) -> DDNode:
        """
        Abstract several variables, gated on the medial law

        Gated requests over more than one variable need a medial certificate from
        the operation and fold in ascending variable order. Forced-order requests
        fold in the given order whatever the certificate says.

        Raises:
            NotWellDefinedError: gated request, non-medial operation, more than one variable
        """
        req.validate(self.n)
        op = req.op
        if len(req.vars) > 1:
            medial, witness = op.medial_certificate()
            if not medial:
                if req.policy is Policy.GATED:
                    logger.info(f"Gate refused abstraction of {req.vars} over {op.name}: {witness}")
                    raise NotWellDefinedError(
                        f"Abstraction of variables {req.vars} over {op.name!r} depends on their order",
                        witness)
                logger.warning(f"Forced-order abstraction of {req.vars} over non-medial {op.name}; "
                               f"the result depends on the order")
                self.stats.order_dependent_folds += 1
            else:
                logger.info(f"Gate accepted abstraction of {req.vars} over {op.name}")
        order = sorted(req.vars) if req.policy is Policy.GATED else req.vars
        for i in order:
            node = self.abstract(op, i, node)
        return node

    # Maintenance

    def clear_cache(self) -> None:
        logger.debug(f"Clearing apply cache with {len(self._cache)} entries")
        self._cache.clear()

    def audit(self, node: DDNode) -> int:
        """
        Check ordering, reduction and uniqueness of every reachable node

        Returns:
            Number of nodes audited

        Raises:
            StructuralError: on the first violation
        """
        seen: Set[int] = set()
        stack = [node]
        while stack:
            u = stack.pop()
            if u.id in seen:
                continue
            seen.add(u.id)
            if not 0 <= u.id < len(self._nodes) or self._nodes[u.id] is not u:
                raise StructuralError(f"Node {u.id} is not owned by this manager")
            if u.is_terminal:
                if self._terminals.get(_terminal_key(u.value)) is not u:
                    raise StructuralError(f"Terminal {u.id} is not the interned node for {u.value!r}")
                continue
            if u.low.id == u.high.id:
                raise StructuralError(f"Node {u.id} has identical children")
            if not (u.var < u.low.var and u.var < u.high.var):
                raise StructuralError(f"Node {u.id} on variable {u.var} breaks the variable order")
            if self._unique.get((u.var, u.low.id, u.high.id)) is not u:
                raise StructuralError(f"Node {u.id} is not the interned node for its key")
            stack.extend((u.low, u.high))
        return len(seen)

    # Export

    def _format(self, value: Any) -> str:
        if self.carrier is not None:
            return self.carrier.format_value(value)
        return repr(value) if isinstance(value, float) else str(value)

    def _post_order(self, node: DDNode) -> List[DDNode]:
        order: List[DDNode] = []
        seen: Set[int] = set()

        def visit(u: DDNode) -> None:
            if u.id in seen:
                return
            seen.add(u.id)
            if not u.is_terminal:
                visit(u.low)
                visit(u.high)
            order.append(u)

        visit(node)
        return order

    def dump(self, node: DDNode) -> str:
        """
        Deterministic text form, one line per node, children before parents

        Node ids are renumbered in post-order (low before high) so the dump does
        not depend on what else the manager has built.
        """
        nodes = self._post_order(node)
        local = {u.id: k for k, u in enumerate(nodes)}
        lines = []
        for u in nodes:
            if u.is_terminal:
                lines.append(f"node {local[u.id]} = terminal {self._format(u.value)}")
            else:
                lines.append(f"node {local[u.id]} = var {u.var} ? {local[u.high.id]} : {local[u.low.id]}")
        return "\n".join(lines)

    def to_dot(self, node: DDNode) -> str:
        nodes = self._post_order(node)
        local = {u.id: k for k, u in enumerate(nodes)}
        lines = ["digraph mtbdd {"]
        for u in nodes:
            k = local[u.id]
            if u.is_terminal:
                lines.append(f'  n{k} [shape=box, label="{self._format(u.value)}"];')
            else:
                lines.append(f'  n{k} [label="x{u.var}"];')
                lines.append(f"  n{k} -> n{local[u.low.id]} [style=dashed];")
                lines.append(f"  n{k} -> n{local[u.high.id]};")
        lines.append("}")
        return "\n".join(lines)

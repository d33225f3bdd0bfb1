import numpy as np
import pytest
from hypothesis import given, strategies as st

from algebra import FiniteMagma, check_medial
from catalog import builtin
from enumeration import all_tables
from errors import ArityError, CarrierError, NotWellDefinedError, StructuralError, VariableIndexError
from gsf import TruthTable, abstract_sequence, abstract_var, index_assignment, make_quadruple_function
from mtbdd import AbstractionRequest, DDManager, InternalNode, Policy, node_count
from strategies import truth_tables

A, B, C, D = 0, 1, 2, 3


def dense_restrict(f: TruthTable, i: int, bit: int) -> TruthTable:
    values = []
    for k in range(2 ** f.n):
        bits = list(index_assignment(k, f.n))
        bits[i - 1] = bit
        values.append(f.evaluate(bits))
    return TruthTable(f.n, values)


def shannon(mgr: DDManager, f: TruthTable, var: int = 1, prefix=()):
    # top-down, high branch first: a different construction order from from_truth_table
    if var > f.n:
        return mgr.mk_terminal(f.evaluate(prefix))
    high = shannon(mgr, f, var + 1, prefix + (1,))
    low = shannon(mgr, f, var + 1, prefix + (0,))
    return mgr.mk_node(var, low, high)


class TestTerminals:
    def test_interned(self):
        mgr = DDManager(2)
        assert mgr.mk_terminal(5).id == mgr.mk_terminal(5).id
        assert mgr.mk_terminal(5).id != mgr.mk_terminal(6).id

    def test_negative_zero(self):
        mgr = DDManager(2)
        assert mgr.mk_terminal(-0.0).id == mgr.mk_terminal(0.0).id

    def test_nan(self):
        with pytest.raises(CarrierError):
            DDManager(2).mk_terminal(float("nan"))

    def test_types_do_not_collide(self):
        mgr = DDManager(1)
        assert mgr.mk_terminal(1).id != mgr.mk_terminal(1.0).id

    def test_carrier_bound(self, tamura):
        mgr = DDManager(2, carrier=tamura)
        assert mgr.mk_terminal(A).value == A
        with pytest.raises(CarrierError):
            mgr.mk_terminal(7)


class TestNodes:
    def test_reduction(self):
        mgr = DDManager(2)
        t = mgr.mk_terminal(1)
        assert mgr.mk_node(1, t, t) is t

    def test_ordering(self):
        mgr = DDManager(2)
        t0, t1 = mgr.mk_terminal(0), mgr.mk_terminal(1)
        top = mgr.mk_node(1, t0, t1)
        with pytest.raises(StructuralError):
            mgr.mk_node(2, top, t0)
        with pytest.raises(StructuralError):
            mgr.mk_node(1, top, t1)

    def test_construction_order_does_not_matter(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            n = int(rng.integers(1, 6))
            f = TruthTable(n, rng.integers(0, 3, size=2 ** n))
            mgr = DDManager(n)
            assert mgr.from_truth_table(f).id == shannon(mgr, f).id

    def test_constant(self):
        mgr = DDManager(3)
        assert node_count(mgr.from_truth_table(TruthTable.constant(3, 4))) == 1

    def test_quadruple_drops_vacuous_variable(self):
        mgr = DDManager(3)
        root = mgr.from_truth_table(make_quadruple_function(3, A, B, C, D))
        assert mgr.support(root) == [1, 2]
        assert mgr.node_count(root) == 7

    def test_parity(self):
        n = 6
        f = TruthTable(n, [bin(k).count("1") % 2 for k in range(2 ** n)])
        mgr = DDManager(n)
        assert node_count(mgr.from_truth_table(f)) == 13

    def test_arity(self):
        with pytest.raises(ArityError):
            DDManager(3).from_truth_table(TruthTable(2, [0, 1, 2, 3]))


class TestEval:
    def test_terminal(self):
        mgr = DDManager(3)
        assert mgr.eval(mgr.mk_terminal(9), (1, 0, 1)) == 9

    @given(truth_tables(4, max_n=5))
    def test_round_trip(self, f):
        mgr = DDManager(f.n)
        root = mgr.from_truth_table(f)
        for k in range(2 ** f.n):
            assert mgr.eval(root, index_assignment(k, f.n)) == f[k]
        assert mgr.to_truth_table(root) == f

    def test_tamura_case_split(self, tamura):
        mgr = DDManager(3, carrier=tamura)
        root = mgr.from_truth_table(make_quadruple_function(3, D, A, C, B))
        assert mgr.eval(root, (1, 0, 0)) == C
        assert mgr.eval(root, (1, 0, 1)) == C

    def test_wrong_length(self):
        mgr = DDManager(2)
        with pytest.raises(ArityError):
            mgr.eval(mgr.mk_terminal(0), (0,))


class TestRestrict:
    def test_constant(self):
        mgr = DDManager(2)
        t = mgr.mk_terminal(3)
        assert mgr.restrict(t, 1, 0) is t

    def test_quadruple_cofactor(self):
        mgr = DDManager(3)
        root = mgr.from_truth_table(make_quadruple_function(3, A, B, C, D))
        cofactor = mgr.restrict(root, 1, 1)
        assert mgr.support(cofactor) == [2]
        assert mgr.to_truth_table(cofactor).values.tolist() == [C, C, D, D, C, C, D, D]

    @given(truth_tables(4), st.data())
    def test_defining_property(self, f, data):
        i = data.draw(st.integers(1, f.n))
        bit = data.draw(st.integers(0, 1))
        mgr = DDManager(f.n)
        result = mgr.restrict(mgr.from_truth_table(f), i, bit)
        assert i not in mgr.support(result)
        assert mgr.to_truth_table(result) == dense_restrict(f, i, bit)

    def test_index(self):
        mgr = DDManager(2)
        with pytest.raises(VariableIndexError):
            mgr.restrict(mgr.mk_terminal(0), 3, 0)


class TestApply:
    def test_addition(self):
        mgr = DDManager(1)
        result = mgr.apply(builtin("add-pos-int"), mgr.mk_terminal(2), mgr.mk_terminal(3))
        assert result.value == 5

    def test_tamura(self, tamura):
        mgr = DDManager(1, carrier=tamura)
        assert mgr.apply(tamura, mgr.mk_terminal(D), mgr.mk_terminal(C)).value == B

    def test_finite_operands_outside_carrier(self, tamura):
        mgr = DDManager(1)
        for bad in (-1, 7):
            with pytest.raises(CarrierError):
                mgr.apply(tamura, mgr.mk_terminal(bad), mgr.mk_terminal(A))

    def test_subtraction_of_itself(self):
        rng = np.random.default_rng(2)
        f = TruthTable(4, rng.uniform(-5, 5, size=16))
        mgr = DDManager(4)
        root = mgr.from_truth_table(f)
        result = mgr.apply(builtin("sub-real"), root, root)
        assert result.is_terminal and result.value == 0.0

    def test_cache_key_is_ordered(self):
        proj = builtin("proj-left(3)")
        mgr = DDManager(1)
        u, v = mgr.mk_terminal(0), mgr.mk_terminal(2)
        assert mgr.apply(proj, u, v).value == 0
        assert mgr.apply(proj, v, u).value == 2

    def test_cache_soundness(self, comm4):
        rng = np.random.default_rng(4)
        mgr = DDManager(4)
        f, g = (mgr.from_truth_table(TruthTable(4, rng.integers(0, 4, size=16))) for _ in range(2))
        first = mgr.apply(comm4, f, g)
        hits = mgr.stats.cache_hits
        assert mgr.apply(comm4, f, g) is first
        assert mgr.stats.cache_hits == hits + 1
        mgr.clear_cache()
        assert mgr.apply(comm4, f, g).id == first.id


class TestAbstract:
    def test_constant_doubles(self):
        mgr = DDManager(3)
        result = mgr.abstract(builtin("add-pos-int"), 2, mgr.mk_terminal(6))
        assert result.value == 12

    def test_tamura_orders(self, tamura):
        mgr = DDManager(2, carrier=tamura)
        root = mgr.from_truth_table(make_quadruple_function(2, D, A, C, B))
        # orders are application sequences: abstracting 1 then 2 gives b
        one_first = mgr.abstract(tamura, 2, mgr.abstract(tamura, 1, root))
        two_first = mgr.abstract(tamura, 1, mgr.abstract(tamura, 2, root))
        assert one_first.value == B
        assert two_first.value == A
        assert node_count(one_first) == 1

    def test_variable_disappears(self, comm4):
        rng = np.random.default_rng(8)
        mgr = DDManager(5)
        root = mgr.from_truth_table(TruthTable(5, rng.integers(0, 4, size=32)))
        for i in range(1, 6):
            assert i not in mgr.support(mgr.abstract(comm4, i, root))

    def test_commuting_diagram_for_medial(self, comm4):
        rng = np.random.default_rng(9)
        for _ in range(100):
            n = int(rng.integers(2, 6))
            mgr = DDManager(n)
            root = mgr.from_truth_table(TruthTable(n, rng.integers(0, 4, size=2 ** n)))
            i, j = (int(v) for v in rng.choice(np.arange(1, n + 1), size=2, replace=False))
            ij = mgr.abstract(comm4, j, mgr.abstract(comm4, i, root))
            ji = mgr.abstract(comm4, i, mgr.abstract(comm4, j, root))
            assert ij is ji
            mgr.audit(ij)


class TestAbstractSet:
    def test_gate_refuses_tamura(self, tamura):
        mgr = DDManager(2, carrier=tamura)
        root = mgr.from_truth_table(make_quadruple_function(2, D, A, C, B))
        with pytest.raises(NotWellDefinedError) as info:
            mgr.abstract_set(AbstractionRequest(tamura, (1, 2)), root)
        assert info.value.witness.operands == (D, A, C, B)

    def test_gate_allows_single_variable(self, tamura):
        mgr = DDManager(2, carrier=tamura)
        root = mgr.from_truth_table(make_quadruple_function(2, D, A, C, B))
        result = mgr.abstract_set(AbstractionRequest(tamura, (2,)), root)
        assert mgr.support(result) == [1]

    def test_forced_order(self, tamura, caplog):
        mgr = DDManager(2, carrier=tamura)
        root = mgr.from_truth_table(make_quadruple_function(2, D, A, C, B))
        result = mgr.abstract_set(AbstractionRequest(tamura, (2, 1), Policy.FORCED), root)
        assert result.value == A
        assert mgr.stats.order_dependent_folds == 1
        assert "depends on the order" in caplog.text

    def test_subtraction(self):
        sub = builtin("sub-int")
        mgr = DDManager(2, carrier=sub)
        root = mgr.from_truth_table(make_quadruple_function(2, 10, 3, 4, 1))
        assert mgr.abstract_set(AbstractionRequest(sub, (2, 1)), root).value == 4
        forced = mgr.abstract_set(AbstractionRequest(sub, (2, 1), Policy.FORCED), root)
        assert forced.value == 4

    def test_h_continuous_is_64(self):
        h = builtin("h-continuous")
        rng = np.random.default_rng(12)
        for _ in range(1000):
            n = int(rng.integers(2, 6))
            f = TruthTable(n, [h.sampler(rng) for _ in range(2 ** n)])
            k = int(rng.integers(2, n + 1))
            chosen = tuple(int(v) for v in rng.choice(np.arange(1, n + 1), size=k, replace=False))
            mgr = DDManager(n, carrier=h)
            result = mgr.abstract_set(AbstractionRequest(h, chosen), mgr.from_truth_table(f))
            assert result.is_terminal and result.value == 64.0

    def test_subtraction_node_identity(self):
        sub = builtin("sub-int")
        rng = np.random.default_rng(13)
        for _ in range(200):
            n = int(rng.integers(2, 6))
            mgr = DDManager(n)
            root = mgr.from_truth_table(TruthTable(n, rng.integers(-100, 100, size=2 ** n)))
            i, j = (int(v) for v in rng.choice(np.arange(1, n + 1), size=2, replace=False))
            first = mgr.abstract_set(AbstractionRequest(sub, (i, j), Policy.FORCED), root)
            second = mgr.abstract_set(AbstractionRequest(sub, (j, i), Policy.FORCED), root)
            assert first is second

    def test_request_validation(self, tamura):
        with pytest.raises(VariableIndexError):
            AbstractionRequest(tamura, (1, 1))
        mgr = DDManager(2)
        with pytest.raises(VariableIndexError):
            mgr.abstract_set(AbstractionRequest(tamura, (3,)), mgr.mk_terminal(0))

    def test_all_variables_leave_a_terminal(self, comm4):
        rng = np.random.default_rng(14)
        mgr = DDManager(4)
        root = mgr.from_truth_table(TruthTable(4, rng.integers(0, 4, size=16)))
        assert node_count(mgr.abstract_set(AbstractionRequest(comm4, (1, 2, 3, 4)), root)) == 1


def _oracle_instance(rng, op, values):
    n = int(rng.integers(1, 7))
    mgr = DDManager(n)
    f = TruthTable(n, values(2 ** n))
    g = TruthTable(n, values(2 ** n))
    u, v = mgr.from_truth_table(f), mgr.from_truth_table(g)

    assert mgr.to_truth_table(mgr.apply(op, u, v)) == TruthTable(n, op.apply_arrays(f.values, g.values))
    i = int(rng.integers(1, n + 1))
    bit = int(rng.integers(0, 2))
    assert mgr.to_truth_table(mgr.restrict(u, i, bit)) == dense_restrict(f, i, bit)
    assert mgr.to_truth_table(mgr.abstract(op, i, u)) == abstract_var(f, i, op)
    k = int(rng.integers(1, n + 1))
    order = tuple(int(x) for x in rng.permutation(np.arange(1, n + 1))[:k])
    forced = mgr.abstract_set(AbstractionRequest(op, order, Policy.FORCED), u)
    assert mgr.to_truth_table(forced) == abstract_sequence(f, order, op)
    mgr.audit(forced)


class TestOracle:
    def test_random_finite_magmas(self):
        rng = np.random.default_rng(20)
        for _ in range(1000):
            k = int(rng.integers(1, 5))
            m = FiniteMagma("random", rng.integers(0, k, size=(k, k)))
            _oracle_instance(rng, m, lambda size: rng.integers(0, k, size=size))

    def test_subtraction(self):
        rng = np.random.default_rng(21)
        sub = builtin("sub-int")
        for _ in range(200):
            _oracle_instance(rng, sub, lambda size: rng.integers(-1000, 1000, size=size))

    def test_min_real(self):
        rng = np.random.default_rng(22)
        op = builtin("min-real")
        for _ in range(200):
            _oracle_instance(rng, op, lambda size: rng.uniform(-100, 100, size=size))


class TestNonMedialWitness:
    def _check(self, tables):
        for t in tables:
            m = FiniteMagma("t", t)
            medial, witness = check_medial(m)
            if medial:
                continue
            mgr = DDManager(2, carrier=m)
            root = mgr.from_truth_table(make_quadruple_function(2, *witness.operands))
            one_first = mgr.abstract(m, 2, mgr.abstract(m, 1, root))
            two_first = mgr.abstract(m, 1, mgr.abstract(m, 2, root))
            assert one_first.id != two_first.id

    def test_size2(self):
        self._check(next(all_tables(2)))

    @pytest.mark.slow
    def test_size3(self):
        for tables in all_tables(3):
            self._check(tables)


class TestExport:
    def test_dump(self, tamura):
        expected = "\n".join([
            "node 0 = terminal d",
            "node 1 = terminal a",
            "node 2 = var 2 ? 1 : 0",
            "node 3 = terminal c",
            "node 4 = terminal b",
            "node 5 = var 2 ? 4 : 3",
            "node 6 = var 1 ? 5 : 2",
        ])
        f = make_quadruple_function(2, D, A, C, B)
        mgr = DDManager(2, carrier=tamura)
        assert mgr.dump(mgr.from_truth_table(f)) == expected
        busy = DDManager(2, carrier=tamura)
        busy.from_truth_table(TruthTable(2, [C, C, B, A]))
        assert busy.dump(busy.from_truth_table(f)) == expected

    def test_dot(self):
        mgr = DDManager(2)
        text = mgr.to_dot(mgr.from_truth_table(TruthTable(2, [0, 1, 1, 0])))
        assert text.startswith("digraph mtbdd {")
        assert text.endswith("}")
        assert "style=dashed" in text


class TestAudit:
    def test_clean(self):
        mgr = DDManager(3)
        root = mgr.from_truth_table(TruthTable(3, [0, 1, 2, 3, 0, 1, 2, 4]))
        assert mgr.audit(root) == node_count(root)

    def test_detects_unreduced_node(self):
        mgr = DDManager(2)
        t = mgr.mk_terminal(0)
        rogue = InternalNode(len(mgr), 1, t, t)
        with pytest.raises(StructuralError):
            mgr.audit(rogue)

    def test_detects_foreign_node(self):
        other = DDManager(2)
        node = other.from_truth_table(TruthTable(2, [0, 1, 0, 1]))
        mgr = DDManager(2)
        mgr.mk_terminal(5)
        with pytest.raises(StructuralError):
            mgr.audit(node)

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofc.discovery import SimpleSubgraph, find_simple_subgraphs
from ofc.errors import NotASubsetError
from ofc.model import FsmModel, StateNode, Transition
from ofc.patterns import (
    Boundary,
    PatternName,
    StrictMatch,
    classify_pattern,
    determine_start_end,
    strict_m_of_n,
    strict_sequence,
)

from tests.corpus import random_model
from tests.oracles import oracle_max_disjoint_paths


def region(model, nodes):
    """Wrap a node set as the discovery result it would produce."""
    from ofc.discovery import is_simple_subgraph

    verdict = is_simple_subgraph(model, nodes)
    assert verdict is not None, f"{sorted(nodes)} is not simple here"
    return SimpleSubgraph(nodes=frozenset(nodes), entry=verdict[0], exit=verdict[1])


def tiny(edges, initial="a", quorums=()):
    """Model from edge triples (id, from, to); quorums maps transition id."""
    quorum_map = dict(quorums)
    node_ids = sorted({e[1] for e in edges} | {e[2] for e in edges})
    return FsmModel(
        states=tuple(StateNode(id=n) for n in node_ids),
        initial_state=initial,
        transitions=tuple(
            Transition(
                id=tid,
                from_state=frm,
                to_state=to,
                method_name=f"m_{tid}",
                quorum=quorum_map.get(tid),
            )
            for tid, frm, to in edges
        ),
    )


class TestBoundary:
    def test_diamond_boundary(self, escrow):
        assert determine_start_end(escrow, escrow.state_ids) == Boundary(
            entry="signed_contract", exit="escrow_done"
        )

    def test_two_exits_yield_none(self, escrow):
        assert determine_start_end(escrow, {"signed_contract", "buyer_deposited"}) is None

    def test_empty_set_yields_none(self, escrow):
        assert determine_start_end(escrow, set()) is None

    def test_unknown_node_raises(self, escrow):
        with pytest.raises(NotASubsetError):
            determine_start_end(escrow, {"ghost"})

    def test_answers_on_sets_the_region_predicate_rejects(self):
        # a -> b plus a detached cycle c <-> d: the boundary pair is unique
        # even though the set is disconnected, so the region predicate says
        # no while this helper still names the pair.
        model = tiny([("t1", "a", "b"), ("t2", "c", "d"), ("t3", "d", "c")])
        from ofc.discovery import is_simple_subgraph

        members = {"a", "b", "c", "d"}
        assert is_simple_subgraph(model, members) is None
        assert determine_start_end(model, members) == Boundary(entry="a", exit="b")


class TestStructuralClassification:
    def test_chain_is_a_sequence(self, chain5):
        sg = region(chain5, {"s1", "s2", "s3"})
        kind = classify_pattern(chain5, sg)
        assert kind.kind is PatternName.SEQUENCE
        assert kind.branch_count == 1
        assert kind.quorum is None
        assert kind.strict_match is StrictMatch.SEQUENCE_STRICT

    def test_parallel_transitions_stay_a_sequence_but_not_strict(self):
        model = tiny([("t1", "a", "b"), ("t2", "a", "b"), ("t3", "b", "c")])
        kind = classify_pattern(model, region(model, {"a", "b", "c"}))
        assert kind.kind is PatternName.SEQUENCE
        assert kind.strict_match is None

    def test_self_loop_classifies_other(self):
        model = tiny([("t1", "a", "b"), ("t2", "b", "b"), ("t3", "b", "c")])
        kind = classify_pattern(model, region(model, {"a", "b", "c"}))
        assert kind.kind is PatternName.OTHER
        assert kind.strict_match is None

    def test_escrow_diamond_is_two_party_branching(self, escrow):
        sg = find_simple_subgraphs(escrow)[0]
        kind = classify_pattern(escrow, sg)
        assert kind.kind is PatternName.BRANCHING
        assert kind.branch_count == 2
        assert kind.quorum == 2
        assert kind.strict_match is StrictMatch.TWO_PARTY

    def test_three_inspectors_quorum_one(self, inspectors):
        sg = find_simple_subgraphs(inspectors)[0]
        kind = classify_pattern(inspectors, sg)
        assert kind.kind is PatternName.BRANCHING
        assert kind.branch_count == 3
        assert kind.quorum == 1
        assert kind.strict_match is StrictMatch.M_OF_N

    def test_unequal_branches_classify_without_strict_match(self, mortgage):
        sg = next(sg for sg in find_simple_subgraphs(mortgage) if sg.whole_graph)
        kind = classify_pattern(mortgage, sg)
        assert kind.kind is PatternName.BRANCHING
        assert kind.branch_count == 2
        assert kind.quorum == 2
        assert kind.strict_match is None

    def test_real_estate_inspection_fork(self, real_estate):
        nodes = {
            "inspection_started",
            "structural_checked",
            "electrical_checked",
            "plumbing_checked",
            "inspection_passed",
        }
        kind = classify_pattern(real_estate, region(real_estate, nodes))
        assert (kind.kind, kind.branch_count, kind.quorum) == (PatternName.BRANCHING, 3, 1)
        assert kind.strict_match is StrictMatch.M_OF_N

    def test_real_estate_payment_fork(self, real_estate):
        nodes = {"financing_chosen", "cash_prepared", "mortgage_approved", "payment_ready"}
        kind = classify_pattern(real_estate, region(real_estate, nodes))
        assert (kind.kind, kind.branch_count, kind.quorum) == (PatternName.BRANCHING, 2, 1)
        assert kind.strict_match is StrictMatch.TWO_PARTY

    def test_direct_entry_exit_edge_counts_as_a_branch(self):
        model = tiny([("t1", "a", "b"), ("t2", "b", "c"), ("t3", "a", "c")])
        kind = classify_pattern(model, region(model, {"a", "b", "c"}))
        assert kind.kind is PatternName.BRANCHING
        assert kind.branch_count == 2
        assert kind.strict_match is None

    def test_off_path_structure_is_other(self):
        # d hangs off the walk: reachable from b but never reaches the exit
        model = tiny(
            [("t1", "a", "b"), ("t2", "b", "c"), ("t3", "b", "d"), ("t4", "d", "b")]
        )
        kind = classify_pattern(model, region(model, {"a", "b", "c", "d"}))
        assert kind.kind is PatternName.OTHER


class TestQuorumExtraction:
    def test_quorum_reads_from_exit_joining_transitions(self):
        model = tiny(
            [("t1", "a", "b"), ("t2", "a", "c"), ("t3", "b", "d"), ("t4", "c", "d")],
            quorums=[("t3", 2), ("t4", 2)],
        )
        kind = classify_pattern(model, region(model, {"a", "b", "c", "d"}))
        assert kind.quorum == 2

    def test_quorum_elsewhere_is_ignored(self):
        model = tiny(
            [("t1", "a", "b"), ("t2", "a", "c"), ("t3", "b", "d"), ("t4", "c", "d")],
            quorums=[("t1", 2)],
        )
        kind = classify_pattern(model, region(model, {"a", "b", "c", "d"}))
        assert kind.quorum is None

    def test_quorum_beyond_branch_count_is_dropped(self):
        model = tiny(
            [("t1", "a", "b"), ("t2", "a", "c"), ("t3", "b", "d"), ("t4", "c", "d")],
            quorums=[("t3", 5)],
        )
        kind = classify_pattern(model, region(model, {"a", "b", "c", "d"}))
        assert kind.branch_count == 2
        assert kind.quorum is None

    def test_quorum_on_a_chain_is_dropped(self):
        model = tiny([("t1", "a", "b"), ("t2", "b", "c")], quorums=[("t2", 2)])
        kind = classify_pattern(model, region(model, {"a", "b", "c"}))
        assert kind.kind is PatternName.SEQUENCE
        assert kind.quorum is None

    def test_largest_annotation_wins(self):
        model = tiny(
            [("t1", "a", "b"), ("t2", "a", "c"), ("t3", "b", "d"), ("t4", "c", "d")],
            quorums=[("t3", 1), ("t4", 2)],
        )
        kind = classify_pattern(model, region(model, {"a", "b", "c", "d"}))
        assert kind.quorum == 2


class TestStrictMatchers:
    def test_strict_sequence_accepts_chain_windows(self, chain5):
        assert strict_sequence(chain5, {"s0", "s1", "s2"})
        assert strict_sequence(chain5, {"s2", "s3"})

    def test_strict_sequence_rejects_gaps(self, chain5):
        assert not strict_sequence(chain5, {"s0", "s2"})

    def test_strict_sequence_rejects_parallel_transitions(self):
        model = tiny([("t1", "a", "b"), ("t2", "a", "b"), ("t3", "b", "c")])
        assert not strict_sequence(model, {"a", "b", "c"})

    def test_strict_sequence_rejects_self_loops(self):
        model = tiny([("t1", "a", "b"), ("t2", "b", "b"), ("t3", "b", "c")])
        assert not strict_sequence(model, {"a", "b", "c"})

    def test_m_of_n_matches_the_diamond(self, escrow):
        members = escrow.state_ids
        assert strict_m_of_n(escrow, members, 2) == members
        assert strict_m_of_n(escrow, members, 1) == members

    def test_m_of_n_requires_enough_branches(self, escrow):
        assert strict_m_of_n(escrow, escrow.state_ids, 3) is None

    def test_m_of_n_rejects_unequal_branches(self, mortgage):
        assert strict_m_of_n(mortgage, mortgage.state_ids, 2) is None

    def test_m_of_n_rejects_direct_entry_exit_edge(self):
        model = tiny(
            [("t1", "a", "b"), ("t2", "a", "c"), ("t3", "b", "d"), ("t4", "c", "d"),
             ("t5", "a", "d")]
        )
        assert strict_m_of_n(model, {"a", "b", "c", "d"}, 2) is None

    def test_m_of_n_rejects_cross_edges(self):
        model = tiny(
            [("t1", "a", "b"), ("t2", "a", "c"), ("t3", "b", "d"), ("t4", "c", "d"),
             ("t5", "b", "c")]
        )
        assert strict_m_of_n(model, {"a", "b", "c", "d"}, 2) is None

    def test_m_of_n_rejects_a_bare_chain(self, chain5):
        assert strict_m_of_n(chain5, {"s0", "s1", "s2"}, 1) is None


class TestAgainstPathOracle:
    def expected_branches(self, model, sg, kind):
        oracle = oracle_max_disjoint_paths(model, sg.nodes, sg.entry, sg.exit)
        if kind.kind is PatternName.OTHER:
            return max(oracle, 1)
        return oracle

    def test_branch_counts_match_brute_force(self, random_corpus):
        checked = 0
        for _seed, model in random_corpus[:50]:
            for sg in find_simple_subgraphs(model, cap=8):
                kind = classify_pattern(model, sg)
                assert kind.branch_count == self.expected_branches(model, sg, kind), (
                    sorted(sg.nodes)
                )
                checked += 1
        assert checked > 50


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_flow_count_equals_path_enumeration(seed):
    model = random_model(seed)
    for sg in find_simple_subgraphs(model, cap=8):
        kind = classify_pattern(model, sg)
        oracle = oracle_max_disjoint_paths(model, sg.nodes, sg.entry, sg.exit)
        expected = max(oracle, 1) if kind.kind is PatternName.OTHER else oracle
        assert kind.branch_count == expected


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_sequence_label_implies_exactly_one_path(seed):
    model = random_model(seed)
    for sg in find_simple_subgraphs(model, cap=8):
        kind = classify_pattern(model, sg)
        if kind.kind is PatternName.SEQUENCE:
            assert oracle_max_disjoint_paths(model, sg.nodes, sg.entry, sg.exit) == 1

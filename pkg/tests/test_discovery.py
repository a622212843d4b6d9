import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofc.discovery import (
    DEFAULT_CAP,
    KERNEL,
    RelationKind,
    SimpleSubgraph,
    classify_relation,
    enumerate_subsets,
    find_simple_subgraphs,
    is_proper_subgraph,
    is_simple_subgraph,
    subgraph_id,
)
from ofc.errors import InvalidModelError, NotASubsetError, TooLargeError
from ofc.fixtures import builders
from ofc.model import FsmModel, StateNode, Transition

from tests.corpus import random_model
from tests.oracles import oracle_entry_exit, oracle_simple_subgraphs


def looped_chain():
    """a -> b -> c with a self-loop on b."""
    states = tuple(StateNode(id=s) for s in "abc")
    transitions = (
        Transition(id="t1", from_state="a", to_state="b", method_name="m1"),
        Transition(id="t2", from_state="b", to_state="b", method_name="retry"),
        Transition(id="t3", from_state="b", to_state="c", method_name="m2"),
    )
    return FsmModel(states=states, initial_state="a", transitions=transitions)


class TestEnumeration:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 10])
    def test_subset_count_formula(self, n):
        model = builders.chain(n)
        subsets = list(enumerate_subsets(model, cap=12))
        assert len(subsets) == 2**n - n - 1
        assert all(len(s) >= 2 for s in subsets)
        assert len(set(subsets)) == len(subsets)

    def test_order_is_deterministic(self, chain5):
        assert list(enumerate_subsets(chain5)) == list(enumerate_subsets(chain5))

    def test_cap_guards_before_any_work(self):
        model = builders.chain(17)
        with pytest.raises(TooLargeError) as err:
            next(enumerate_subsets(model))
        assert err.value.n_states == 17
        assert err.value.cap == DEFAULT_CAP

    def test_cap_never_exceeds_kernel_limit(self):
        model = builders.chain(63)
        with pytest.raises(TooLargeError) as err:
            next(enumerate_subsets(model, cap=100))
        assert err.value.cap == 62

    def test_raised_cap_admits_larger_models(self):
        model = builders.chain(17)
        subsets = enumerate_subsets(model, cap=17)
        assert next(subsets)  # enumeration starts without raising


class TestRegionPredicate:
    def test_whole_diamond_qualifies(self, escrow):
        assert is_simple_subgraph(escrow, escrow.state_ids) == (
            "signed_contract",
            "escrow_done",
        )

    def test_one_branch_has_two_exits(self, escrow):
        assert is_simple_subgraph(escrow, {"signed_contract", "buyer_deposited"}) is None

    def test_merge_with_one_branch_has_two_entries(self, escrow):
        assert is_simple_subgraph(escrow, {"buyer_deposited", "escrow_done"}) is None

    def test_self_loop_is_internal(self):
        model = looped_chain()
        assert is_simple_subgraph(model, {"a", "b"}) == ("a", "b")
        assert is_simple_subgraph(model, {"b", "c"}) == ("b", "c")

    def test_disconnected_set_fails(self, chain5):
        assert is_simple_subgraph(chain5, {"s0", "s4"}) is None

    def test_singleton_fails(self, chain5):
        assert is_simple_subgraph(chain5, {"s0"}) is None

    def test_unknown_member_raises(self, chain5):
        with pytest.raises(NotASubsetError, match="ghost"):
            is_simple_subgraph(chain5, {"s0", "ghost"})

    def test_proper_containment(self):
        assert is_proper_subgraph({"a"}, {"a", "b"})
        assert not is_proper_subgraph({"a", "b"}, {"a", "b"})
        assert not is_proper_subgraph({"a", "c"}, {"a", "b"})

    def test_agrees_with_definition_on_random_machines(self, random_corpus):
        for _seed, model in random_corpus[:40]:
            for members in enumerate_subsets(model, cap=8):
                assert is_simple_subgraph(model, members) == oracle_entry_exit(
                    model, members
                )


class TestDiscovery:
    def test_escrow_diamond_yields_exactly_one_candidate(self, escrow):
        found = find_simple_subgraphs(escrow)
        assert len(found) == 1
        only = found[0]
        assert only.nodes == escrow.state_ids
        assert (only.entry, only.exit) == ("signed_contract", "escrow_done")
        assert only.count == 0
        assert only.whole_graph

    def test_chain_of_five_yields_all_ten_windows(self, chain5):
        found = find_simple_subgraphs(chain5)
        assert len(found) == 10
        first = found[0]
        assert first.whole_graph
        assert first.count == 9
        # every candidate is a contiguous window
        for sg in found:
            lo = min(int(n[1:]) for n in sg.nodes)
            hi = max(int(n[1:]) for n in sg.nodes)
            assert sg.nodes == frozenset(f"s{i}" for i in range(lo, hi + 1))
            assert (sg.entry, sg.exit) == (f"s{lo}", f"s{hi}")

    def test_ranking_is_a_strict_total_order(self, trade):
        found = find_simple_subgraphs(trade, cap=20)
        keys = [(-sg.count, -len(sg.nodes), tuple(sorted(sg.nodes))) for sg in found]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_count_is_contained_candidate_count(self, trade):
        found = find_simple_subgraphs(trade, cap=20)
        for sg in found:
            contained = sum(
                1 for other in found if other.nodes < sg.nodes
            )
            assert sg.count == contained

    def test_whole_graph_flag_is_exact(self, random_corpus):
        for _seed, model in random_corpus[:30]:
            found = find_simple_subgraphs(model, cap=8)
            for sg in found:
                assert sg.whole_graph == (sg.nodes == model.state_ids)

    def test_invalid_model_is_rejected(self):
        broken = FsmModel(
            states=(StateNode(id="a"), StateNode(id="b")),
            initial_state="a",
            transitions=(
                Transition(id="t", from_state="a", to_state="ghost", method_name="m"),
            ),
        )
        with pytest.raises(InvalidModelError):
            find_simple_subgraphs(broken)

    def test_matches_exhaustive_oracle(self, random_corpus):
        for _seed, model in random_corpus[:40]:
            expected = oracle_simple_subgraphs(model)
            found = find_simple_subgraphs(model, cap=8)
            assert {sg.nodes for sg in found} == set(expected)
            for sg in found:
                assert (sg.entry, sg.exit) == expected[sg.nodes]

    def test_doc_shape(self, escrow):
        doc = find_simple_subgraphs(escrow)[0].to_doc()
        assert doc == {
            "id": doc["id"],
            "nodes": sorted(escrow.state_ids),
            "entry": "signed_contract",
            "exit": "escrow_done",
            "count": 0,
            "whole_graph": True,
        }
        assert doc["id"].startswith("sg_")


class TestIdentifiers:
    def test_id_depends_only_on_member_set(self):
        assert subgraph_id(["b", "a"]) == subgraph_id(["a", "b"])
        assert subgraph_id(["a", "b"]) != subgraph_id(["a", "c"])

    def test_id_shape(self):
        sid = subgraph_id({"x", "y"})
        assert sid.startswith("sg_")
        assert len(sid) == 11
        int(sid[3:], 16)  # hex tail


class TestKernels:
    def test_both_kernels_agree(self, random_corpus):
        try:
            from ofc import _fastscan
        except ImportError:
            pytest.skip("compiled kernel not built")
        from ofc import _scan_py
        from ofc.discovery import _masks_for

        for _seed, model in random_corpus[:60]:
            _ids, succ, pred, initial = _masks_for(model)
            n = len(model.states)
            assert _fastscan.scan_masks(n, succ, pred, initial) == _scan_py.scan_masks(
                n, succ, pred, initial
            )

    def test_active_kernel_is_reported(self):
        assert KERNEL in {"compiled", "python"}


class TestPairRelations:
    def chain_region(self, lo, hi, **extra):
        nodes = frozenset(f"s{i}" for i in range(lo, hi + 1))
        return SimpleSubgraph(nodes=nodes, entry=f"s{lo}", exit=f"s{hi}", **extra)

    def test_disjoint(self, chain5):
        rel = classify_relation(chain5, self.chain_region(0, 1), self.chain_region(3, 4))
        assert rel.kind is RelationKind.DISJOINT
        assert rel.shared == frozenset()

    def test_nested(self, chain5):
        rel = classify_relation(chain5, self.chain_region(0, 1), self.chain_region(0, 4))
        assert rel.kind is RelationKind.NESTED

    def test_identical_sets_are_nested(self, chain5):
        rel = classify_relation(chain5, self.chain_region(1, 3), self.chain_region(1, 3))
        assert rel.kind is RelationKind.NESTED
        assert "identical" in rel.detail

    def test_boundary_shared(self, chain5):
        rel = classify_relation(chain5, self.chain_region(0, 2), self.chain_region(2, 4))
        assert rel.kind is RelationKind.BOUNDARY_SHARED
        assert rel.shared == frozenset({"s2"})

    def test_overlap_with_simple_intersection(self, chain5):
        rel = classify_relation(chain5, self.chain_region(0, 2), self.chain_region(1, 4))
        assert rel.kind is RelationKind.OVERLAP_SIMPLE
        assert rel.shared == frozenset({"s1", "s2"})

    def test_overlap_pinned_to_one_articulation_state(self):
        # a 2-cycle hanging off the shared state rides along in the
        # overlap; its entered and exiting member coincide, which is the
        # boundary-share shape with extra members rather than a violation
        states = tuple(StateNode(id=f"s{i}", reads_words=1, writes_words=1) for i in range(5))
        transitions = (
            Transition(id="t1", from_state="s0", to_state="s1", method_name="m1"),
            Transition(id="t2", from_state="s1", to_state="s2", method_name="m2"),
            Transition(id="t3", from_state="s2", to_state="s3", method_name="m3"),
            Transition(id="t4", from_state="s3", to_state="s2", method_name="m4"),
            Transition(id="t5", from_state="s2", to_state="s4", method_name="m5"),
        )
        model = FsmModel(states=states, initial_state="s0", transitions=transitions)
        regions = {sg.nodes: sg for sg in find_simple_subgraphs(model)}
        front = regions[frozenset({"s1", "s2", "s3"})]
        back = regions[frozenset({"s2", "s3", "s4"})]
        assert (front.entry, front.exit) == ("s1", "s2")
        assert (back.entry, back.exit) == ("s2", "s4")
        rel = classify_relation(model, front, back)
        assert rel.kind is RelationKind.OVERLAP_SIMPLE
        assert rel.shared == frozenset({"s2", "s3"})
        assert "s2 -> s2" in rel.detail

    def test_fabricated_pair_is_reported_not_repaired(self, chain5):
        a = self.chain_region(0, 2)
        # not a real region of the model: claims entry s3 while sharing s2
        fake = SimpleSubgraph(nodes=frozenset({"s2", "s3", "s4"}), entry="s3", exit="s4")
        rel = classify_relation(chain5, a, fake)
        assert rel.kind is RelationKind.THEOREM_VIOLATION
        assert rel.witness is not None
        assert rel.witness["shared"] == ["s2"]
        assert "reason" in rel.witness

    def test_classification_is_symmetric(self, trade):
        found = find_simple_subgraphs(trade, cap=20)[:12]
        for a in found:
            for b in found:
                assert (
                    classify_relation(trade, a, b).kind
                    == classify_relation(trade, b, a).kind
                )

    def test_no_violations_among_fixture_candidates(self, trade, real_estate, badges):
        for model in (trade, real_estate, badges):
            found = find_simple_subgraphs(model, cap=20)
            for i, a in enumerate(found):
                for b in found[i + 1 :]:
                    rel = classify_relation(model, a, b)
                    assert rel.kind is not RelationKind.THEOREM_VIOLATION, rel.detail

    def test_trade_fixture_shares_the_deposits_done_node(self, trade):
        found = find_simple_subgraphs(trade, cap=20)
        hits = [
            (a, b)
            for i, a in enumerate(found)
            for b in found[i + 1 :]
            if classify_relation(trade, a, b).kind is RelationKind.BOUNDARY_SHARED
            and a.nodes & b.nodes == frozenset({"escrow_done"})
        ]
        assert hits, "expected an end-to-start pair joined at escrow_done"


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_discovery_matches_definition_on_arbitrary_machines(seed):
    model = random_model(seed)
    expected = oracle_simple_subgraphs(model)
    found = find_simple_subgraphs(model, cap=8)
    assert {sg.nodes: (sg.entry, sg.exit) for sg in found} == expected


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10**6))
def test_relations_never_violate_on_arbitrary_machines(seed):
    model = random_model(seed)
    found = find_simple_subgraphs(model, cap=8)
    for i, a in enumerate(found):
        for b in found[i + 1 :]:
            rel = classify_relation(model, a, b)
            assert rel.kind is not RelationKind.THEOREM_VIOLATION, rel.detail

import json

import pytest

from ofc.bridge import (
    RECORD_FIELDS,
    content_digest,
    data_key,
    derive_bridge_spec,
    generate_bridge_script,
    generate_contract_skeleton,
    generate_storage_schema,
    parse_storage_schema,
    write_artifacts,
)
from ofc.discovery import find_simple_subgraphs
from ofc.errors import InvalidSpecError, IoError, NotHierarchicalError
from ofc.hsm import hierarchical_id, replace_with_hsm


@pytest.fixture(scope="module")
def escrow_spec(wrapper, escrow):
    sg = next(s for s in find_simple_subgraphs(wrapper) if s.nodes == escrow.state_ids)
    hsm = replace_with_hsm(wrapper, sg)
    h_id = hierarchical_id(sg.nodes)
    return derive_bridge_spec(hsm, h_id), hsm, h_id


class TestSpecDerivation:
    def test_methods_are_mirrored_and_sorted(self, escrow_spec):
        spec, _, _ = escrow_spec
        assert [m.name for m in spec.methods] == ["depositBuyer", "depositSeller"]

    def test_event_pairs_number_by_method_order(self, escrow_spec):
        spec, _, _ = escrow_spec
        assert [(m.event, m.done_event) for m in spec.methods] == [
            ("offChainEvent1", "offChainDoneEvent1"),
            ("offChainEvent2", "offChainDoneEvent2"),
        ]

    def test_reads_and_writes_use_data_keys(self, escrow_spec):
        spec, _, _ = escrow_spec
        buyer = spec.methods[0]
        assert set(buyer.writes) <= {data_key(t) for t in buyer.targets}
        for m in spec.methods:
            for key in m.reads + m.writes:
                assert key.startswith("data:")

    def test_exit_reaching_flags(self, escrow_spec):
        spec, _, _ = escrow_spec
        # both deposit methods can fire the join into escrow_done
        assert all(m.exit_reaching for m in spec.methods)

    def test_three_affected_actors(self, escrow_spec):
        spec, _, _ = escrow_spec
        assert spec.affected_actors == frozenset({"buyer", "seller", "escrow_agent"})

    def test_boundary_states_recorded(self, escrow_spec):
        spec, _, _ = escrow_spec
        assert spec.entry_state == "signed_contract"
        assert spec.exit_state == "escrow_done"

    def test_plain_state_is_refused(self, escrow_spec):
        _, hsm, _ = escrow_spec
        with pytest.raises(NotHierarchicalError):
            derive_bridge_spec(hsm, "agreed")

    def test_doc_shape(self, escrow_spec):
        spec, _, h_id = escrow_spec
        doc = spec.to_doc()
        assert doc["pattern_id"] == h_id
        assert doc["affected_actors"] == ["buyer", "escrow_agent", "seller"]
        assert len(doc["methods"]) == 2
        assert {"name", "params", "reads", "writes", "event", "done_event",
                "targets", "exit_reaching"} <= set(doc["methods"][0])


class TestContractSkeleton:
    def test_carries_dispatch_guards_per_method(self, escrow_spec):
        spec, _, h_id = escrow_spec
        text = generate_contract_skeleton(spec)
        assert f"contract Pattern_{h_id}" in text
        assert text.count("guard:") == 2
        assert text.count("end guard") == 2
        assert "entry state: signed_contract" in text
        assert "exit state: escrow_done" in text

    def test_suspends_on_the_done_event(self, escrow_spec):
        spec, _, _ = escrow_spec
        text = generate_contract_skeleton(spec)
        assert "suspend until offChainDoneEvent1" in text
        assert "suspend until offChainDoneEvent2" in text

    def test_completion_verifies_all_affected_actors(self, escrow_spec):
        spec, _, _ = escrow_spec
        text = generate_contract_skeleton(spec)
        assert (
            "verify attestResults(results, signatures) covers all affected actors"
            in text
        )

    def test_output_is_deterministic(self, escrow_spec):
        spec, _, _ = escrow_spec
        assert generate_contract_skeleton(spec) == generate_contract_skeleton(spec)


class TestBridgeScript:
    def test_step_sequence_per_method(self, escrow_spec):
        spec, _, _ = escrow_spec
        text = generate_bridge_script(spec)
        assert "step invoke depositBuyer" in text
        assert "step invoke depositSeller" in text
        assert text.count("step exit_check") == 2
        assert text.count("step marshal_writes") == 2
        assert "step request_attestation buyer, escrow_agent, seller" in text
        assert "step fire offChainDoneEvent1" in text

    def test_cache_miss_recovery_block(self, escrow_spec):
        spec, _, _ = escrow_spec
        text = generate_bridge_script(spec)
        assert "on cache miss during any step:" in text
        for step in ("step pause", "step getter <missing key>", "step resume"):
            assert step in text


class TestStorageSchema:
    def test_record_has_the_seven_fields_in_order(self, escrow_spec):
        spec, _, _ = escrow_spec
        parsed = parse_storage_schema(generate_storage_schema(spec))
        assert parsed.fields == RECORD_FIELDS
        assert len(RECORD_FIELDS) == 7
        assert RECORD_FIELDS[0] == ("TransactionID", "bytes")

    def test_parse_round_trip_recovers_pattern_id(self, escrow_spec):
        spec, _, h_id = escrow_spec
        parsed = parse_storage_schema(generate_storage_schema(spec))
        assert parsed.pattern_id == h_id

    def test_missing_header_rejected(self):
        with pytest.raises(InvalidSpecError, match="no region header"):
            parse_storage_schema("record OffchainTransaction\nend record\n")

    def test_out_of_order_field_rejected(self, escrow_spec):
        spec, _, _ = escrow_spec
        text = generate_storage_schema(spec).replace("  1 TransactionID", "  9 TransactionID")
        with pytest.raises(InvalidSpecError, match="out of order"):
            parse_storage_schema(text)

    def test_garbage_field_line_rejected(self, escrow_spec):
        spec, _, _ = escrow_spec
        text = generate_storage_schema(spec).replace(
            "  1 TransactionID bytes", "  one TransactionID bytes"
        )
        with pytest.raises(InvalidSpecError, match="unparseable"):
            parse_storage_schema(text)


class TestArtifacts:
    def test_three_files_plus_manifest(self, escrow_spec, tmp_path):
        spec, _, h_id = escrow_spec
        manifest = write_artifacts([spec], tmp_path)
        names = {p.name for p in tmp_path.iterdir()}
        assert names == {
            f"{h_id}.contract.txt",
            f"{h_id}.bridge.txt",
            f"{h_id}.schema.txt",
            "manifest.json",
        }
        assert manifest["patterns"][0]["pattern_id"] == h_id
        assert manifest["patterns"][0]["variant"] == "event-driven"

    def test_manifest_digests_match_files(self, escrow_spec, tmp_path):
        spec, _, _ = escrow_spec
        manifest = write_artifacts([spec], tmp_path)
        entry = manifest["patterns"][0]
        for kind, name in entry["files"].items():
            text = (tmp_path / name).read_text(encoding="utf-8")
            assert content_digest(text) == entry["sha256"][kind]

    def test_manifest_on_disk_matches_return(self, escrow_spec, tmp_path):
        spec, _, _ = escrow_spec
        manifest = write_artifacts([spec], tmp_path)
        on_disk = json.loads((tmp_path / "manifest.json").read_text(encoding="utf-8"))
        assert on_disk == manifest

    def test_rerun_is_byte_identical(self, escrow_spec, tmp_path):
        spec, _, _ = escrow_spec
        first = tmp_path / "a"
        second = tmp_path / "b"
        write_artifacts([spec], first)
        write_artifacts([spec], second)
        for path in sorted(first.iterdir()):
            assert path.read_bytes() == (second / path.name).read_bytes()

    def test_unwritable_target_raises_io_error(self, escrow_spec, tmp_path):
        spec, _, _ = escrow_spec
        blocker = tmp_path / "blocked"
        blocker.write_text("a file, not a directory")
        with pytest.raises(IoError):
            write_artifacts([spec], blocker)

    def test_notes_mention_the_polling_alternative(self, escrow_spec, tmp_path):
        spec, _, _ = escrow_spec
        manifest = write_artifacts([spec], tmp_path)
        assert any("polling" in note for note in manifest["notes"])

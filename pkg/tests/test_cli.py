import json

import pytest

from ofc.cli import main
from ofc.fixtures import fixture_text
from ofc.hsm import serialize_hsm
from ofc.model import serialize


@pytest.fixture()
def escrow_file(tmp_path):
    path = tmp_path / "escrow.json"
    path.write_text(fixture_text("escrow_deposit"), encoding="utf-8")
    return str(path)


@pytest.fixture()
def trade_file(tmp_path):
    path = tmp_path / "trade.json"
    path.write_text(fixture_text("buyer_seller_escrow"), encoding="utf-8")
    return str(path)


def out_json(capsys):
    return json.loads(capsys.readouterr().out)


class TestValidate:
    def test_valid_model(self, escrow_file, capsys):
        assert main(["validate", escrow_file]) == 0
        doc = out_json(capsys)
        assert doc["ok"] is True
        assert doc["issues"] == []

    def test_invalid_model_exits_one(self, tmp_path, capsys):
        doc = {
            "states": [
                {"id": "a", "reads_words": 1, "writes_words": 1},
                {"id": "b", "reads_words": 1, "writes_words": 1},
            ],
            "initial_state": "a",
            "transitions": [],
        }
        path = tmp_path / "m.json"
        path.write_text(json.dumps(doc))
        assert main(["validate", str(path)]) == 1
        report = out_json(capsys)
        assert report["ok"] is False
        assert any(i["code"] == "unreachable" for i in report["issues"])

    def test_missing_file_exits_two(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "absent.json")]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error [io]: cannot read")

    def test_malformed_json_exits_two(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        assert main(["validate", str(path)]) == 2
        assert "error [syntax]" in capsys.readouterr().err


class TestDiscover:
    def test_stdout_document(self, escrow_file, capsys):
        assert main(["discover", escrow_file]) == 0
        rows = out_json(capsys)
        assert len(rows) == 1
        assert rows[0]["whole_graph"] is True

    def test_out_file(self, escrow_file, tmp_path, capsys):
        target = tmp_path / "found.json"
        assert main(["discover", escrow_file, "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert len(json.loads(target.read_text())) == 1

    def test_cap_guard(self, trade_file, capsys):
        assert main(["discover", trade_file]) == 2
        assert "error [too_large]" in capsys.readouterr().err

    def test_raised_cap(self, trade_file, capsys):
        assert main(["discover", trade_file, "--max-states", "20"]) == 0
        assert len(out_json(capsys)) == 78


class TestClassify:
    def test_rows(self, trade_file, capsys):
        assert main(["classify", trade_file, "--max-states", "20"]) == 0
        rows = out_json(capsys)
        diamond = next(r for r in rows if r["subgraph"] == "sg_8a209a3a")
        assert diamond["kind"] == "branching"
        assert diamond["strict_match"] == "two_party"


class TestCost:
    def test_basic(self, trade_file, capsys):
        code = main(
            ["cost", trade_file, "--max-states", "20", "--pattern", "sg_8a209a3a"]
        )
        assert code == 0
        doc = out_json(capsys)
        assert doc["saving"] == 40355
        assert doc["recommend_off_chain"] is True

    def test_words_flag(self, trade_file, capsys):
        main(
            [
                "cost",
                trade_file,
                "--max-states",
                "20",
                "--pattern",
                "sg_8a209a3a",
                "--words",
                "5",
            ]
        )
        assert out_json(capsys)["saving"] == 201895

    def test_midpattern_flag(self, trade_file, capsys):
        main(
            [
                "cost",
                trade_file,
                "--max-states",
                "20",
                "--pattern",
                "sg_8a209a3a",
                "--midpattern",
                "buyer_deposited,seller_deposited",
            ]
        )
        assert out_json(capsys)["saving"] == -45

    def test_unknown_pattern(self, trade_file, capsys):
        assert (
            main(["cost", trade_file, "--max-states", "20", "--pattern", "sg_x"]) == 2
        )
        assert "error [not_found]" in capsys.readouterr().err


class TestSessionAndExport:
    def test_report_and_save_then_export(self, trade_file, tmp_path, capsys):
        saved = tmp_path / "session.json"
        code = main(
            ["session", trade_file, "--max-states", "20", "--save", str(saved)]
        )
        assert code == 0
        report = out_json(capsys)
        assert report["cursor"] == "sg_ef91d828"
        assert saved.is_file()

        out_dir = tmp_path / "export"
        code = main(
            ["export", str(saved), "--max-states", "20", "--out", str(out_dir)]
        )
        assert code == 0
        manifest = out_json(capsys)
        assert manifest["accepted"] == []
        assert (out_dir / "model.json").is_file()
        assert (out_dir / "manifest.json").is_file()


class TestSimulate:
    def test_happy_trace(self, wrapper, escrow, tmp_path, capsys):
        from ofc.discovery import find_simple_subgraphs
        from ofc.hsm import replace_with_hsm

        sg = next(
            s for s in find_simple_subgraphs(wrapper) if s.nodes == escrow.state_ids
        )
        hsm_path = tmp_path / "hsm.json"
        hsm_path.write_text(serialize_hsm(replace_with_hsm(wrapper, sg)))
        trace_path = tmp_path / "trace.json"
        trace_path.write_text(
            json.dumps(
                [
                    {"op": "invoke", "method": "signContract"},
                    {"op": "invoke", "method": "depositBuyer"},
                    {"op": "invoke", "method": "depositSeller"},
                    {"op": "attest", "actor": "buyer", "verdict": True},
                    {"op": "attest", "actor": "seller", "verdict": True},
                    {"op": "attest", "actor": "escrow_agent", "verdict": True},
                    {"op": "invoke", "method": "closeEscrow"},
                ]
            )
        )
        code = main(["simulate", str(hsm_path), "--trace", str(trace_path)])
        assert code == 0
        doc = out_json(capsys)
        assert doc["gas"] == 40445
        assert doc["final_state"] == "closed"

    def test_failing_step_reports_its_index(self, wrapper, tmp_path, capsys):
        from ofc.hsm import HsmModel

        hsm_path = tmp_path / "flat.json"
        hsm_path.write_text(serialize_hsm(HsmModel(top=wrapper, mapping={})))
        trace_path = tmp_path / "trace.json"
        trace_path.write_text(json.dumps([{"op": "invoke", "method": "closeEscrow"}]))
        assert main(["simulate", str(hsm_path), "--trace", str(trace_path)]) == 2
        err = capsys.readouterr().err
        assert "error [trace]" in err
        assert "step 0" in err


class TestGastable:
    def test_defaults(self, capsys):
        assert main(["gastable"]) == 0
        assert out_json(capsys) == {
            "sload": 200,
            "sstore": 20000,
            "memop": 3,
            "stackop": 3,
            "pop": 2,
            "jump": 10,
        }

    def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "gas.json"
        config.write_text(json.dumps({"sload": 2100, "sstore": 22100}))
        assert main(["gastable", "--config", str(config)]) == 0
        doc = out_json(capsys)
        assert doc["sload"] == 2100
        assert doc["sstore"] == 22100
        assert doc["jump"] == 10


class TestRoundTripThroughFiles:
    def test_serialize_parse_is_what_validate_reads(self, chain5, tmp_path, capsys):
        path = tmp_path / "chain.json"
        path.write_text(serialize(chain5))
        assert main(["validate", str(path)]) == 0
        assert out_json(capsys)["ok"] is True

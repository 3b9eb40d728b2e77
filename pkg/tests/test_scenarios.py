import json

import pytest

from selectiongames.engine import MENGER_GAME, Transcript
from selectiongames.errors import ConfigError
from selectiongames.scenarios import (
    emit_transcript,
    load_config,
    parse_transcript,
    run_scenario,
    transcript_records,
)


def write_config(tmp_path, config, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config))
    return str(path)


def scenario_config(**overrides):
    config = {
        "space": {"kind": "countable"},
        "construction": "hurewicz",
        "strategy": "seg_tower",
        "grid": [{"horizon": 6, "innings": 6}],
        "seed": 1,
    }
    config.update(overrides)
    return config


class TestConfigErrors:
    def test_missing_space_key(self, tmp_path):
        cfg = scenario_config()
        del cfg["space"]
        with pytest.raises(ConfigError) as exc:
            run_scenario(write_config(tmp_path, cfg), output_dir=str(tmp_path / "out"))
        assert exc.value.key == "space"

    def test_missing_construction(self, tmp_path):
        cfg = scenario_config()
        del cfg["construction"]
        with pytest.raises(ConfigError):
            run_scenario(write_config(tmp_path, cfg), output_dir=str(tmp_path / "out"))

    def test_unknown_strategy(self, tmp_path):
        cfg = scenario_config(strategy="nope")
        with pytest.raises(ConfigError):
            run_scenario(write_config(tmp_path, cfg), output_dir=str(tmp_path / "out"))

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(str(path))


class TestRunScenario:
    def test_hurewicz_scenario_passes(self, tmp_path):
        cfg = scenario_config(grid=[{"horizon": 10, "innings": 10}])
        out = str(tmp_path / "out")
        assert run_scenario(write_config(tmp_path, cfg), output_dir=out) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["all_pass"]
        lines = (tmp_path / "out" / "transcript.jsonl").read_text().splitlines()
        assert json.loads(lines[0])["type"] == "meta"
        assert len(lines) == 1 + 10

    def test_oracle_scenario_two_point_single_depth(self, tmp_path):
        cfg = {
            "construction": "oracle",
            "instance": "two_point_singletons",
            "game": "single",
            "cap": 1,
            "expect_depth": 2,
        }
        out = str(tmp_path / "out")
        assert run_scenario(write_config(tmp_path, cfg), output_dir=out) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["minimal_depth"] == 2

    def test_oracle_finite_cap_two_depth_one(self, tmp_path):
        cfg = {
            "construction": "oracle",
            "instance": "two_point_singletons",
            "game": "finite",
            "cap": 2,
            "expect_depth": 1,
        }
        assert run_scenario(write_config(tmp_path, cfg), output_dir=str(tmp_path / "o")) == 0

    def test_oracle_inline_instance_from_config(self, tmp_path):
        cfg = {
            "construction": "oracle",
            "instance": {
                "space": {"kind": "finite", "points": 2, "topology": [[], [0], [1], [0, 1]]},
                "covers": [[[0], [1]]],
                "name": "inline_two",
            },
            "game": "single",
            "cap": 1,
            "expect_depth": 2,
        }
        out = str(tmp_path / "inline")
        assert run_scenario(write_config(tmp_path, cfg), output_dir=out) == 0
        report = json.loads((tmp_path / "inline" / "report.json").read_text())
        assert report["minimal_depth"] == 2

    def test_all_constructions_run(self, tmp_path):
        configs = [
            scenario_config(),
            scenario_config(construction="paw-cor", grid=[{"horizon": 4, "innings": 15, "multiplicity": 2}]),
            scenario_config(construction="rothberger", grid=[{"horizon": 4, "innings": 10}]),
            scenario_config(
                construction="appendix",
                strategy="depth_shifted",
                grid=[{"innings": 10, "sample": 4, "multiplicity": 2}],
            ),
        ]
        for k, cfg in enumerate(configs):
            out = str(tmp_path / f"out{k}")
            assert run_scenario(write_config(tmp_path, cfg, name=f"c{k}.json"), output_dir=out) == 0

    def test_same_seed_byte_identical(self, tmp_path):
        cfg = scenario_config(construction="paw-cor", grid=[{"horizon": 4, "innings": 12}])
        path = write_config(tmp_path, cfg)
        run_scenario(path, output_dir=str(tmp_path / "a"))
        run_scenario(path, output_dir=str(tmp_path / "b"))
        a = (tmp_path / "a" / "transcript.jsonl").read_bytes()
        b = (tmp_path / "b" / "transcript.jsonl").read_bytes()
        assert a == b


class TestTranscriptSerialization:
    def test_round_trip(self, tmp_path):
        from selectiongames.corpus import named_strategies
        from selectiongames.hurewicz import bob_counterplay_menger, normalize_strategy
        from selectiongames.spaces import CountableDiscrete

        N = CountableDiscrete()
        alice = named_strategies(N)["seg_tower"]
        tree = normalize_strategy(alice, N)
        t = bob_counterplay_menger(tree, raw=alice, innings=4).transcript
        dest = str(tmp_path / "t.jsonl")
        emit_transcript(t, dest)
        parsed = parse_transcript(dest)
        assert parsed == json.loads(json.dumps(transcript_records(t)))

    def test_empty_transcript_rejected(self, tmp_path):
        t = Transcript(game=MENGER_GAME, innings=())
        with pytest.raises(ValueError):
            emit_transcript(t, str(tmp_path / "x.jsonl"))

    def test_io_error_reports_path(self):
        from selectiongames.corpus import named_strategies
        from selectiongames.hurewicz import bob_counterplay_menger, normalize_strategy
        from selectiongames.spaces import CountableDiscrete

        N = CountableDiscrete()
        alice = named_strategies(N)["seg_tower"]
        t = bob_counterplay_menger(normalize_strategy(alice, N), raw=alice, innings=2).transcript
        with pytest.raises(OSError, match="/nonexistent"):
            emit_transcript(t, "/nonexistent/dir/t.jsonl")

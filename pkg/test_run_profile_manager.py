#!/usr/bin/env python3
"""
Test to verify run profiles are stored separately and that saved settings
flow into commands with explicit flags taking precedence
"""

import io
import json
import os
import sys

import pytest

# Add current directory to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from basis_entropy_app import BasisEntropyApp
from basis_errors import RunConfigError
from run_profile_manager import TEMPLATES, RunConfig, RunProfileManager


def run_app(manager, argv):
    out, err = io.StringIO(), io.StringIO()
    code = BasisEntropyApp(profile_manager=manager, out=out, err=err).run(argv)
    return code, out.getvalue().splitlines(), err.getvalue()


def test_profile_isolation(tmp_path):
    print("🧪 Testing profile isolation...")
    manager = RunProfileManager(str(tmp_path))

    assert manager.create_profile("Fast Search", RunConfig(command="extremal", starts=8), "few starts")
    assert manager.create_profile("Careful Search", RunConfig(command="extremal", starts=128, tol=1e-12))
    assert os.path.exists(tmp_path / "fast_search.json")

    fast = manager.load_profile("Fast Search")
    careful = manager.load_profile("Careful Search")
    assert fast.starts == 8
    assert careful.starts == 128
    assert careful.tol == 1e-12
    assert manager.current_profile == "Careful Search"
    assert manager.get_profile_description("Fast Search") == "few starts"
    print("✅ Profiles keep their own settings")


def test_profiles_reload_from_disk(tmp_path):
    manager = RunProfileManager(str(tmp_path))
    manager.create_profile("sweep", RunConfig(command="werner-sweep", steps=20))
    fresh = RunProfileManager(str(tmp_path))
    assert fresh.get_profile_names() == ["sweep"]
    assert fresh.load_profile("sweep").steps == 20
    assert fresh.get_all_profiles_basic_info()["sweep"]["command"] == "werner-sweep"


def test_save_and_delete(tmp_path):
    manager = RunProfileManager(str(tmp_path))
    manager.create_profile("grover", RunConfig(command="grover", n=6))
    assert manager.save_profile("grover", RunConfig(command="grover", n=8))
    assert manager.load_profile("grover").n == 8
    assert not manager.save_profile("missing", RunConfig())

    assert manager.delete_profile("grover")
    assert manager.get_profile_names() == []
    assert manager.load_profile("grover") is None
    assert not manager.delete_profile("grover")


def test_templates(tmp_path):
    manager = RunProfileManager(str(tmp_path))
    for name in TEMPLATES:
        assert manager.create_template_profile(name)
    shor = manager.load_profile("shor-15")
    assert (shor.command, shor.N, shor.x, shor.t) == ("shor", 15, 7, 8)
    assert not manager.create_template_profile("nonexistent")

    assert manager.create_template_profile("grover-n20", "small grover", {"n": 6}, "six qubits")
    small = manager.load_profile("small grover")
    assert (small.command, small.n, small.full_trace) == ("grover", 6, True)
    assert manager.get_profile_description("small grover") == "six qubits"
    assert manager.get_profile_description("grover-n20") == TEMPLATES["grover-n20"]["description"]


def test_unknown_and_invalid_settings():
    with pytest.raises(RunConfigError):
        RunConfig.from_dict({"command": "grover", "qubits": 4})
    with pytest.raises(RunConfigError):
        RunConfig().merged({"starts": 0})
    with pytest.raises(RunConfigError):
        RunConfig().merged({"tol": -1.0})
    assert RunConfig().merged({"starts": None, "unrelated": 3}).starts == 64


@pytest.mark.parametrize("settings", [
    {"command": "extremal", "mode": "maximum"},
    {"command": "extremal", "basis_class": "entangled"},
    {"command": "discord", "side": "C"},
    {"command": "extremal", "starts": "8"},
    {"command": "extremal", "tol": "tiny"},
    {"command": "grover", "n": 4.0},
    {"command": "grover", "full_trace": "yes"},
    {"command": "extremal", "seed": True},
])
def test_invalid_setting_values_and_types(settings):
    with pytest.raises(RunConfigError):
        RunConfig.from_dict(settings)


def test_profile_with_unknown_mode_fails_to_run(tmp_path):
    profiles = tmp_path / "profiles"
    profiles.mkdir()
    (profiles / "x.json").write_text(json.dumps(
        {"name": "x", "config": {"command": "extremal", "mode": "maximum", "input": "tilted"}}))
    manager = RunProfileManager(str(profiles))
    code, lines, err = run_app(manager, ["profile", "run", "x"])
    assert code == 1
    assert lines == []
    assert "--mode" in err


def test_unreadable_profile_files_are_skipped(tmp_path):
    (tmp_path / "binary.json").write_bytes(b'{"name": "binary"}\xff\xfe')
    (tmp_path / "list.json").write_text("[1, 2]")
    (tmp_path / "good.json").write_text(json.dumps({"name": "good", "config": {"command": "entropy"}}))
    manager = RunProfileManager(str(tmp_path))
    assert manager.get_profile_names() == ["good"]


def test_corrupt_profile_file_is_skipped(tmp_path):
    (tmp_path / "broken.json").write_text("{not json")
    (tmp_path / "good.json").write_text(json.dumps({"name": "good", "config": {"command": "entropy"}}))
    manager = RunProfileManager(str(tmp_path))
    assert manager.get_profile_names() == ["good"]


def test_profile_flow_through_commands(tmp_path):
    print("🧪 Testing profiles from the command line...")
    manager = RunProfileManager(str(tmp_path / "profiles"))

    assert run_app(manager, ["profile", "create", "quick", "--for", "detect", "--starts", "8",
                            "--description", "few starts"])[:2] == \
        (0, ["created quick"])
    assert run_app(manager, ["profile", "list"])[1] == ["quick detect"]
    shown = run_app(manager, ["profile", "show", "quick"])[1]
    assert "starts 8" in shown
    assert "mode max" in shown
    assert shown[-1] == "description few starts"

    # Saved settings apply, explicit flags win
    assert run_app(manager, ["detect", "--profile", "quick", "--input", "bell"])[1] == ["DiscordPresent 1.000000"]
    code, lines, _ = run_app(manager, ["detect", "--profile", "quick", "--input", "maximally-mixed:4"])
    assert lines[0].startswith("NoEvidence")

    assert run_app(manager, ["profile", "delete", "quick"])[1] == ["deleted quick"]
    code, _, err = run_app(manager, ["profile", "show", "quick"])
    assert code == 1
    assert "unknown profile" in err
    print("✅ Create, list, show, use and delete all work")


def test_template_profile_run(tmp_path):
    manager = RunProfileManager(str(tmp_path / "profiles"))
    path = tmp_path / "shor.csv"
    code, _, _ = run_app(manager, ["profile", "create", "s15", "--template", "shor-15", "--out", str(path)])
    assert code == 0

    code, lines, _ = run_app(manager, ["profile", "run", "s15"])
    assert code == 0
    assert lines == ["order 4"]
    assert path.read_text().splitlines()[0] == "step,basis_entropy"


def test_profile_create_needs_a_command(tmp_path):
    manager = RunProfileManager(str(tmp_path / "profiles"))
    code, _, err = run_app(manager, ["profile", "create", "empty"])
    assert code == 1
    assert "❌" in err
    assert run_app(manager, ["detect", "--profile", "nowhere", "--input", "bell"])[0] == 1


if __name__ == "__main__":
    print("🚀 Run Profile Tests")
    print("=" * 50)
    sys.exit(pytest.main([__file__, "-q"]))

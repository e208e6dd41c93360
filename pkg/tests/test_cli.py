"""Command line behavior: exit codes, file outputs, printed text."""

import pathlib

import pytest

from cicproof.apps import instance_to_text, make_spec, public_instance_text, random_instance
from cicproof.cli import main
from cicproof.harness import run_scenario
from cicproof.rng import Drbg

SCENARIOS = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


def _write_instance(tmp_path, name="job.inst"):
    spec = make_spec("matmul", n=2)
    pub, priv = random_instance(spec, Drbg(3, "cli"))
    path = tmp_path / name
    path.write_text(instance_to_text(spec, pub, priv))
    return path


def test_prove_then_verify_roundtrip(tmp_path, capsys):
    inst = _write_instance(tmp_path)
    assert main(["prove", str(inst), "--seed", "9"]) == 0
    out = capsys.readouterr().out
    assert "12 constraints" in out
    prefix = str(inst.with_suffix(""))
    for ext in (".vk", ".io", ".proof"):
        assert pathlib.Path(prefix + ext).exists()

    rc = main(["verify", prefix + ".vk", prefix + ".io", prefix + ".proof"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "accept"


def test_verify_rejects_wrong_io(tmp_path, capsys):
    inst = _write_instance(tmp_path)
    main(["prove", str(inst), "--out", str(tmp_path / "p")])
    capsys.readouterr()
    io_path = tmp_path / "p.io"
    values = io_path.read_text().split("=")[1].split()
    values[-1] = str((int(values[-1]) + 1) % make_spec("matmul", n=2).modulus)
    io_path.write_text("io = " + " ".join(values) + "\n")
    rc = main(["verify", str(tmp_path / "p.vk"), str(io_path), str(tmp_path / "p.proof")])
    assert rc == 1
    assert capsys.readouterr().out.strip() == "reject"


def test_verify_rejects_mangled_proof_blob(tmp_path, capsys):
    inst = _write_instance(tmp_path)
    main(["prove", str(inst), "--out", str(tmp_path / "p")])
    capsys.readouterr()
    blob = (tmp_path / "p.proof").read_bytes()
    (tmp_path / "p.proof").write_bytes(blob[:20])
    rc = main(["verify", str(tmp_path / "p.vk"), str(tmp_path / "p.io"), str(tmp_path / "p.proof")])
    assert rc == 1
    assert capsys.readouterr().out.startswith("reject (")


def test_prove_requires_private_inputs(tmp_path, capsys):
    spec = make_spec(
        "image_match", height=4, width=4, kernel_height=2, kernel_width=2, bitwidth=4
    )
    pub, _ = random_instance(spec, Drbg(4, "cli-pub"))
    path = tmp_path / "pub.inst"
    path.write_text(public_instance_text(spec, pub))
    assert main(["prove", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_scenario_run_prints_the_trace(capsys):
    path = SCENARIOS / "happy_path.scn"
    assert main(["scenario", "run", str(path)]) == 0
    printed = capsys.readouterr().out
    assert printed == run_scenario(path.read_text()).trace


def test_scenario_missing_file(capsys):
    assert main(["scenario", "run", "/nonexistent.scn"]) == 2
    assert "error:" in capsys.readouterr().err


def test_gas_subcommand(capsys):
    assert main(["gas", "image_match", "height=85", "width=85"]) == 0
    out = capsys.readouterr().out
    assert "138504000" in out.replace(",", "").replace("_", "")
    assert main(["gas", "matmul", "n=bad"]) == 2
    capsys.readouterr()
    assert main(["gas", "matmul", "nonsense"]) == 2


def test_gas_rejects_unknown_app(capsys):
    with pytest.raises(SystemExit):
        main(["gas", "sorting"])


def test_bench_csv_to_file(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    rc = main(["bench", "--apps", "multipoly", "--reps", "2", "--out", str(out)])
    assert rc == 0
    assert "wrote 2 rows" in capsys.readouterr().out
    lines = out.read_text().splitlines()
    assert lines[0].startswith("app,size,rep,")
    assert len(lines) == 3


def test_bench_unknown_app(capsys):
    assert main(["bench", "--apps", "sorting"]) == 2
    assert "error:" in capsys.readouterr().err


def test_bench_kernels_to_stdout(capsys):
    assert main(["bench", "--kernels", "--sizes", "16"]) == 0
    assert capsys.readouterr().out.startswith("active backend:")


def test_usage_error_exits_via_argparse():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2

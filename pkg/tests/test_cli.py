"""Command-line surface: flows, file formats, exit codes, determinism."""

import json

import pytest

from silmarils.cli import PROFILES, main

SEED = "2a" * 32
SEED2 = "b7" * 32


@pytest.fixture()
def keydir(tmp_path):
    kd = tmp_path / "kd"
    assert main(["keygen", "--profile", "toy-251", "--seed", SEED, "--out", str(kd)]) == 0
    return kd


@pytest.fixture()
def msg(tmp_path):
    path = tmp_path / "msg.txt"
    path.write_bytes(b"hello world")
    return path


def _sign(tmp_path, keydir, msg, name="sig.hex"):
    sig = tmp_path / name
    assert main(["sign", str(keydir), "--msg", str(msg), "--seed", SEED, "--out", str(sig)]) == 0
    return sig


def test_keygen_writes_the_descriptor_and_hex_files(keydir):
    params = json.loads((keydir / "params.json").read_text())
    assert params["profile"] == "toy-251"
    assert params["p"] == "251"
    assert params["element_bytes"] == 1
    assert params["sizes"] == {"sk": 1, "pk": 2, "sig": 5}
    for name in ("sk.hex", "pk.hex", "k_sig.hex"):
        bytes.fromhex((keydir / name).read_text().strip())
    assert len(bytes.fromhex((keydir / "k_sig.hex").read_text().strip())) == 32


def test_keygen_is_seed_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["keygen", "--profile", "toy-251", "--seed", SEED, "--out", str(a)])
    main(["keygen", "--profile", "toy-251", "--seed", SEED, "--out", str(b)])
    for name in ("sk.hex", "pk.hex", "k_sig.hex", "params.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_sign_verify_round_trip(tmp_path, keydir, msg, capsys):
    sig = _sign(tmp_path, keydir, msg)
    assert main(["verify", str(keydir), "--msg", str(msg), "--sig", str(sig)]) == 0
    out = capsys.readouterr().out
    assert "accept" in out and "receipt=" in out

    bad = tmp_path / "bad.txt"
    bad.write_bytes(b"tampered")
    assert main(["verify", str(keydir), "--msg", str(bad), "--sig", str(sig)]) == 1
    assert "reject" in capsys.readouterr().out


def test_verify_with_explicit_receipt(tmp_path, keydir, msg, capsys):
    sig = _sign(tmp_path, keydir, msg)
    main(["verify", str(keydir), "--msg", str(msg), "--sig", str(sig)])
    receipt = [
        line.split("=", 1)[1]
        for line in capsys.readouterr().out.splitlines()
        if line.startswith("receipt=")
    ][0]
    assert main([
        "verify", str(keydir), "--msg", str(msg), "--sig", str(sig),
        "--receipt", receipt,
    ]) == 0
    wrong = f"{(int(receipt, 16) + 1) % 251:02x}"
    assert main([
        "verify", str(keydir), "--msg", str(msg), "--sig", str(sig),
        "--receipt", wrong,
    ]) == 1


def test_forge_dv_passes_the_designated_verifier(tmp_path, keydir, msg, capsys):
    forged = tmp_path / "forged.hex"
    assert main([
        "forge-dv", str(keydir), "--msg", str(msg), "--seed", SEED2,
        "--out", str(forged),
    ]) == 0
    assert main(["verify", str(keydir), "--msg", str(msg), "--sig", str(forged)]) == 0


def test_forge_public_r_beats_only_weakened_check(keydir, msg, capsys):
    assert main(["forge-public-r", str(keydir), "--msg", str(msg), "--seed", SEED2]) == 0
    out = capsys.readouterr().out
    assert "weakened-verifier: accept" in out
    assert "real-verifier: reject" in out


def test_extract_reports_the_family_member(tmp_path, keydir, msg, capsys):
    sig = _sign(tmp_path, keydir, msg)
    assert main([
        "extract", str(keydir), "--msg", str(msg), "--sig", str(sig),
        "--hint", "d:3",
    ]) == 0
    record = json.loads(capsys.readouterr().out)
    assert set(record) == {"a", "d", "ratio", "s", "share0", "share1", "u0", "u1"}
    assert record["d"] == "03"


def test_exit_codes(tmp_path, keydir, msg, capsys):
    sig = _sign(tmp_path, keydir, msg)
    garbage = tmp_path / "garbage.hex"
    garbage.write_text("zz-not-hex")
    short = tmp_path / "short.hex"
    short.write_text("00ff")

    # 2: usage (bad args, unknown suite size)
    assert main(["stats", "--profile", "toy-251", "--suite", "secrecy",
                 "--trials", "5"]) == 2
    # 3: IO
    assert main(["verify", str(tmp_path / "nowhere"), "--msg", str(msg),
                 "--sig", str(sig)]) == 3
    # 4: malformed input
    assert main(["verify", str(keydir), "--msg", str(msg), "--sig", str(garbage)]) == 4
    assert main(["verify", str(keydir), "--msg", str(msg), "--sig", str(short)]) == 4
    # 5: degenerate algebra
    assert main(["extract", str(keydir), "--msg", str(msg), "--sig", str(sig),
                 "--hint", "d:0"]) == 5
    # 6: unknown strategy
    assert main(["sim3p", "--profile", "toy-13", "--adversary", "mystery",
                 "--trials", "1"]) == 6
    capsys.readouterr()


def test_sim3p_summary_and_transcript_determinism(tmp_path, capsys):
    log1, log2 = tmp_path / "t1.jsonl", tmp_path / "t2.jsonl"
    argv = ["sim3p", "--profile", "toy-251", "--seed", SEED, "--trials", "5"]
    assert main(argv + ["--out", str(log1)]) == 0
    out = capsys.readouterr().out
    assert "z2==x: 5" in out and "z3==x: 5" in out
    assert "arms: B=5" in out
    assert main(argv + ["--out", str(log2)]) == 0
    assert log1.read_bytes() == log2.read_bytes()
    records = [json.loads(line) for line in log1.read_text().splitlines()]
    assert {"trial": 0} in records
    rounds = {r["round"] for r in records if "round" in r}
    assert rounds == {1, 2, 3, 4, 5, 7}  # nothing to resolve in honest runs


def test_sim3p_with_adversary_reports_divergence(capsys):
    assert main([
        "sim3p", "--profile", "toy-13", "--seed", SEED,
        "--adversary", "substitute-guess-k1", "--trials", "30",
    ]) == 0
    out = capsys.readouterr().out
    assert "adversary=substitute-guess-k1" in out
    assert "z2==x: 30" in out


def test_stats_table_and_json_lines(tmp_path, capsys):
    out_path = tmp_path / "rows.jsonl"
    argv = [
        "stats", "--profile", "toy-13", "--suite", "core",
        "--trials", "400", "--seed", SEED, "--out", str(out_path),
    ]
    assert main(argv) == 0
    table = capsys.readouterr().out
    assert "core-forgery" in table and "pass" in table
    rows = [json.loads(line) for line in out_path.read_text().splitlines()]
    assert all(row["verdict"] == "pass" for row in rows)
    first = out_path.read_bytes()
    assert main(argv) == 0
    capsys.readouterr()
    assert out_path.read_bytes() == first  # byte-identical reports


def test_stats_exit_one_on_failed_verdict(tmp_path, capsys, monkeypatch):
    from silmarils import stats as harness

    real = harness.estimate_core_forgery

    def rigged(p, trials, *, seed=harness.DEFAULT_SEED, see_receipt=False):
        est = real(p, trials, seed=seed, see_receipt=see_receipt)
        return harness.Estimate(**{**est.__dict__, "verdict": "fail"})

    monkeypatch.setattr(harness, "estimate_core_forgery", rigged)
    assert main(["stats", "--profile", "toy-13", "--suite", "core",
                 "--trials", "50", "--seed", SEED]) == 1
    capsys.readouterr()


def test_bench_reports_all_backends(capsys):
    assert main(["bench", "--profile", "toy-251", "--trials", "5"]) == 0
    out = capsys.readouterr().out
    assert "backend=pure" in out
    assert "(selected)" in out
    assert "sign: muls=13 invs=2" in out
    assert "verify: muls=4 invs=0" in out
    assert "sizes: sk=1 B  pk=2 B  sig=5 B" in out


def test_profiles_cover_the_advertised_primes():
    assert PROFILES["secure"] == 2**255 - 19
    assert PROFILES["toy-251"] == 251
    assert set(PROFILES) == {"secure", "toy-5", "toy-13", "toy-251", "toy-1009"}


def test_seed_argument_validation(capsys):
    assert main(["keygen", "--profile", "toy-251", "--seed", "zz"]) == 2
    capsys.readouterr()

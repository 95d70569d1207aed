import json

import pytest

from ui.cli import EXIT_INVALID, EXIT_KEYFILE, EXIT_MESSAGE, EXIT_OK, main

U3_PRIVATE = "scheme = u3\nvisibility = private\nn = 81\ng = 50\nB = 5\nb = 4\n"


def run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def u3_keys(tmp_path, capsys):
    prefix = tmp_path / "u3"
    assert run(capsys, "keygen", "u3", 81, "--force-private", 4, "--out", prefix)[0] == EXIT_OK
    return f"{prefix}.pub", f"{prefix}.key"


class TestExplore:
    def test_tower_11(self, capsys):
        code, out, _ = run(capsys, "explore", 11)
        assert code == EXIT_OK
        assert out.splitlines() == [
            "n = 11",
            "phi = 10, 4, 2",
            "g1 = 2, g2 = 3, g3 = 3",
            "g = 7",
            "U^3(Z_11) = {7, 8}",
            "f(7) = 1",
            "f(8) = 0",
        ]

    def test_tower_81(self, capsys):
        code, out, _ = run(capsys, "explore", 81)
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[:5] == [
            "n = 81",
            "phi = 54, 18, 6",
            "g1 = 2, g2 = 5, g3 = 5",
            "g = 50",
            "U^3(Z_81) = {5, 23, 32, 50, 59, 77}",
        ]
        assert lines[5:] == ["f(5) = 4", "f(23) = 3", "f(32) = 0", "f(50) = 1", "f(59) = 2", "f(77) = 5"]

    def test_second_group(self, capsys):
        code, out, _ = run(capsys, "explore", 11, 2)
        assert code == EXIT_OK
        assert out.splitlines() == ["n = 11", "phi = 10, 4", "g1 = 2, g2 = 3", "U^2(Z_11) = {2, 6, 7, 8}"]

    def test_non_cyclic(self, capsys):
        code, out, err = run(capsys, "explore", 8)
        assert code == EXIT_INVALID
        assert out == ""
        assert err.startswith("error:")

    def test_group_past_enumeration_limit(self, capsys):
        n = 3**13
        code, out, err = run(capsys, "explore", n)
        assert code == EXIT_OK
        assert "error" not in err
        assert out.splitlines() == [
            f"n = {n}",
            "phi = 1062882, 354294, 118098",
            "g1 = 2, g2 = 5, g3 = 5",
            "g = 1365224",
            f"|U^3(Z_{n})| = 118098",
        ]

    @pytest.mark.parametrize("k, size", [(1, 1062882), (2, 354294)])
    def test_lower_levels_past_enumeration_limit(self, capsys, k, size):
        n = 3**13
        code, out, _ = run(capsys, "explore", n, k)
        assert code == EXIT_OK
        assert out.splitlines()[-1] == f"|U^{k}(Z_{n})| = {size}"

    def test_small_limit_skips_f_table(self, capsys, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"enumeration_limit": 10}))
        code, out, _ = run(capsys, "--config", path, "explore", 81)
        assert code == EXIT_OK
        assert out.splitlines()[4:] == ["|U^3(Z_81)| = 6"]

    def test_bad_level(self):
        with pytest.raises(SystemExit):
            main(["explore", "11", "4"])


class TestU3Flow:
    def test_keygen_to_stdout(self, capsys):
        code, out, _ = run(capsys, "keygen", "u3", 81, "--force-private", 4)
        assert code == EXIT_OK
        assert out == U3_PRIVATE

    def test_key_files(self, u3_keys):
        pub, key = u3_keys
        with open(key, encoding="utf-8") as fh:
            assert fh.read() == U3_PRIVATE
        with open(pub, encoding="utf-8") as fh:
            assert fh.read() == "scheme = u3\nvisibility = public\nn = 81\ng = 50\nB = 5\n"

    def test_worked_example(self, capsys, u3_keys):
        pub, key = u3_keys
        assert run(capsys, "encrypt", pub, 5, "--force-nonce", 2)[:2] == (EXIT_OK, "59,50\n")
        assert run(capsys, "decrypt", key, "59,50")[:2] == (EXIT_OK, "5\n")

    def test_random_nonces_round_trip(self, capsys, u3_keys):
        pub, key = u3_keys
        for index in range(6):
            code, out, _ = run(capsys, "encrypt", pub, index, "--seed", index)
            assert code == EXIT_OK
            assert run(capsys, "decrypt", key, out.strip())[1] == f"{index}\n"

    def test_message_index_out_of_range(self, capsys, u3_keys):
        code, out, err = run(capsys, "encrypt", u3_keys[0], 6)
        assert code == EXIT_MESSAGE
        assert out == ""
        assert "error:" in err

    def test_decrypt_with_public_key(self, capsys, u3_keys):
        assert run(capsys, "decrypt", u3_keys[0], "59,50")[0] == EXIT_KEYFILE

    def test_malformed_key_file(self, capsys, tmp_path):
        path = tmp_path / "bad.key"
        path.write_text(U3_PRIVATE.replace("n = 81", "n = 081"))
        assert run(capsys, "decrypt", path, "59,50")[0] == EXIT_KEYFILE

    def test_missing_key_file(self, capsys, tmp_path):
        assert run(capsys, "encrypt", tmp_path / "absent.pub", 1)[0] == EXIT_KEYFILE

    def test_key_file_not_utf8(self, capsys, tmp_path):
        path = tmp_path / "binary.key"
        path.write_bytes(U3_PRIVATE.replace("n = 81", "n = \xff").encode("latin-1"))
        code, out, err = run(capsys, "decrypt", path, "59,50")
        assert code == EXIT_KEYFILE
        assert out == ""
        assert "UTF-8" in err

    @pytest.mark.parametrize("ciphertext", ["59", "59,50,1", "a,b"])
    def test_malformed_ciphertext(self, capsys, u3_keys, ciphertext):
        assert run(capsys, "decrypt", u3_keys[1], ciphertext)[0] == EXIT_INVALID

    def test_ciphertext_outside_group(self, capsys, u3_keys):
        assert run(capsys, "decrypt", u3_keys[1], "2,50")[0] == EXIT_INVALID


class TestOtherSchemes:
    def test_classic(self, capsys, tmp_path):
        prefix = tmp_path / "classic"
        assert run(capsys, "keygen", "classic", 11, "--force-private", 3, "--out", prefix)[0] == EXIT_OK
        assert run(capsys, "encrypt", f"{prefix}.pub", 9, "--force-nonce", 4)[1] == "5,3\n"
        assert run(capsys, "decrypt", f"{prefix}.key", "5,3")[1] == "9\n"
        assert run(capsys, "encrypt", f"{prefix}.pub", 11)[0] == EXIT_MESSAGE

    def test_classic_composite(self, capsys):
        assert run(capsys, "keygen", "classic", 15)[0] == EXIT_INVALID

    @pytest.mark.parametrize("scheme, n, size", [("u2-case1", 11, 4), ("u2-case2", 33, 4), ("u2-case1", 83, 40)])
    def test_u2(self, capsys, tmp_path, scheme, n, size):
        prefix = tmp_path / scheme
        assert run(capsys, "keygen", scheme, n, "--seed", 1, "--out", prefix)[0] == EXIT_OK
        for index in range(size):
            code, out, _ = run(capsys, "encrypt", f"{prefix}.pub", index, "--seed", index)
            assert code == EXIT_OK
            assert run(capsys, "decrypt", f"{prefix}.key", out.strip())[1] == f"{index}\n"
        assert run(capsys, "encrypt", f"{prefix}.pub", size)[0] == EXIT_MESSAGE

    def test_invalid_case2_modulus(self, capsys):
        assert run(capsys, "keygen", "u2-case2", 35)[0] == EXIT_INVALID


class TestBench:
    def test_zero_runs_prints_header(self, capsys):
        code, out, _ = run(capsys, "bench", "--runs", 0, "--orders", 6)
        assert code == EXIT_OK
        assert out == "scheme,iteration,exponent,elapsed_ns\n"

    def test_seeded_exponent_column(self, capsys):
        def exponents():
            out = run(capsys, "bench", "--runs", 10, "--orders", 6, "--seed", 7)[1]
            rows = [line.split(",") for line in out.splitlines()[1:] if not line.startswith("#")]
            assert len(rows) == 20
            return [row[2] for row in rows]

        assert exponents() == exponents()

    def test_summary_footer(self, capsys):
        out = run(capsys, "bench", "--runs", 4, "--orders", 6)[1]
        footer = [line for line in out.splitlines() if line.startswith("#")]
        assert footer[-1].startswith("# ratio U3/U2 = ")

    def test_csv_and_gnuplot_files(self, capsys, tmp_path):
        csv_path = tmp_path / "bench.csv"
        prefix = tmp_path / "curve"
        code, out, _ = run(capsys, "bench", "--runs", 3, "--orders", 6, "--csv", csv_path, "--gnuplot", prefix)
        assert code == EXIT_OK
        assert out.splitlines()[0] == "# n_u2 = 23, n_u3 = 47"
        assert csv_path.read_text().startswith("scheme,iteration,exponent,elapsed_ns\nU2,0,")
        assert len((tmp_path / "curve_u2.dat").read_text().splitlines()) == 4
        assert (tmp_path / "curve_u3.dat").exists()

    def test_no_comparable_moduli(self, capsys):
        code, _, err = run(capsys, "bench", "--orders", 6, "--max-n", 10)
        assert code == EXIT_INVALID
        assert "error:" in err


class TestDlog:
    def test_solves(self, capsys):
        assert run(capsys, "dlog", 2, 7, 11)[:2] == (EXIT_OK, "7\n")
        assert run(capsys, "dlog", 2, 7, 11, "--method", "bsgs")[1] == "7\n"
        assert run(capsys, "dlog", 2, 52, 81, "--order", 54, "--method", "pohlig-hellman")[1] == "10\n"

    def test_target_outside_subgroup(self, capsys):
        assert run(capsys, "dlog", 2, 3, 7)[0] == EXIT_INVALID


class TestConfig:
    def test_enumeration_limit_from_file(self, capsys, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"enumeration_limit": 5}))
        code, out, _ = run(capsys, "--config", path, "explore", 11)
        assert code == EXIT_OK
        assert out.splitlines()[-2:] == ["g = 7", "|U^3(Z_11)| = 2"]

    def test_settings_file_not_utf8(self, capsys, tmp_path):
        path = tmp_path / "settings.json"
        path.write_bytes(b"{\"bench_runs\": \xff}")
        code, out, err = run(capsys, "--config", path, "explore", 11)
        assert code == EXIT_INVALID
        assert out == ""
        assert "UTF-8" in err

    def test_bench_runs_from_file(self, capsys, tmp_path):
        path = tmp_path / "settings.json"
        path.write_text(json.dumps({"bench_runs": 2, "bench_target_order": 6}))
        out = run(capsys, "--config", path, "bench")[1]
        assert len([line for line in out.splitlines() if not line.startswith("#")]) == 5

#!/usr/bin/env python3
"""End-to-end tests for the dsssp command-line tool.

Drives the compiled binary through subprocess and checks exit codes, JSON
report structure, CSV schemas, cross-model agreement, and byte-level
reproducibility.  Usage:

    python3 tests/test_cli.py /path/to/dsssp
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest

BIN = None  # resolved in main() from argv


def run(*args, expect=None):
    """Run the binary with args; return (exit code, stdout, stderr)."""
    proc = subprocess.run(
        [BIN, *args], capture_output=True, text=True, timeout=300
    )
    if expect is not None and proc.returncode != expect:
        raise AssertionError(
            f"dsssp {' '.join(args)}: expected exit {expect}, got "
            f"{proc.returncode}\nstdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
        )
    return proc.returncode, proc.stdout, proc.stderr


def run_json(*args, expect=0):
    _, out, _ = run(*args, expect=expect)
    return json.loads(out)


class TestHopsetCommand(unittest.TestCase):
    def test_path16_verify_passes(self):
        rep = run_json("hopset", "--gen", "path:16", "--eps", "1/2", "--verify")
        self.assertEqual(rep["command"], "hopset")
        self.assertEqual(rep["prng"], "splitmix64")
        self.assertEqual(rep["input"]["n"], 16)
        self.assertEqual(rep["input"]["m"], 15)
        self.assertEqual(rep["parameters"]["p"], 1)
        self.assertEqual(rep["parameters"]["hop_bound"], 16)
        v = rep["verify"]
        self.assertTrue(v["ok"])
        self.assertEqual(v["mode"], "all_pairs")
        self.assertEqual(v["lower_violations"], 0)
        self.assertEqual(v["upper_violations"], 0)
        # worst ratio must sit inside the advertised (1+eps) envelope
        self.assertLessEqual(v["worst_ratio_decimal"], 1.5)

    def test_export_writes_commented_edge_file(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "hs.edges")
            rep = run_json("hopset", "--gen", "path:8", "--out", out)
            self.assertEqual(rep["output"], out)
            with open(out) as f:
                lines = f.read().splitlines()
            self.assertTrue(lines[0].startswith("# hopset n=8"))
            self.assertEqual(len(lines) - 1, rep["hopset_edges"])
            for ln in lines[1:]:
                u, v, w = ln.split()
                self.assertNotEqual(u, v)

    def test_eps_out_of_range_is_config_error(self):
        rep = run_json("hopset", "--gen", "path:8", "--eps", "2/1", expect=2)
        self.assertEqual(rep["error"]["type"], "ConfigError")
        self.assertIn("--eps", rep["error"]["message"])

    def test_malformed_edge_file_reports_line(self):
        with tempfile.TemporaryDirectory() as d:
            bad = os.path.join(d, "bad.txt")
            with open(bad, "w") as f:
                f.write("3 2 5\n0 1 2\n1 2 bananas\n")
            rep = run_json("hopset", "--input", bad, expect=2)
            self.assertEqual(rep["error"]["type"], "GraphError")
            self.assertIn("line 3", rep["error"]["message"])

    def test_missing_header_reports_line_one(self):
        with tempfile.TemporaryDirectory() as d:
            bad = os.path.join(d, "bad.txt")
            with open(bad, "w") as f:
                f.write("bogus header\n")
            rep = run_json("hopset", "--input", bad, expect=2)
            self.assertIn("line 1", rep["error"]["message"])

    def test_gen_and_input_are_mutually_exclusive(self):
        code, out, _ = run("hopset", "--gen", "path:4", "--input", "x.txt")
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(out)["error"]["type"], "ConfigError")
        code, out, _ = run("hopset")
        self.assertEqual(code, 2)


class TestSsspCommand(unittest.TestCase):
    GEN = ("--gen", "random:64,128,8,7")

    def test_sequential_verifies_on_random_graph(self):
        rep = run_json("sssp", *self.GEN, "--model", "sequential", "--verify")
        v = rep["verify"]
        self.assertTrue(v["ok"])
        self.assertEqual(v["lower_violations"], 0)
        self.assertEqual(v["upper_violations"], 0)
        self.assertEqual(v["unreachable_mismatch"], 0)
        self.assertEqual(len(rep["estimates"]), 64)
        self.assertEqual(rep["estimates"][0], "0")
        # histogram buckets account for every reachable non-source node
        hist = v["ratio_histogram"]
        self.assertEqual(sum(hist.values()), 64)

    def test_streaming_matches_sequential_estimates(self):
        seq = run_json("sssp", *self.GEN, "--model", "sequential")
        st = run_json("sssp", *self.GEN, "--model", "streaming")
        self.assertEqual(seq["estimates"], st["estimates"])
        led = st["ledger"]
        self.assertEqual(led["model"], "streaming")
        self.assertGreater(led["passes"], 0)
        self.assertGreater(led["peak_space_words"], 0)
        self.assertTrue(
            any(p["phase"].startswith("clusters scale") for p in led["phases"])
        )
        self.assertEqual(
            sum(p["passes"] for p in led["phases"]), led["passes"]
        )

    def test_congest_and_clique_verify(self):
        for model in ("congest", "clique"):
            rep = run_json("sssp", *self.GEN, "--model", model, "--verify")
            self.assertTrue(rep["verify"]["ok"], msg=model)
            self.assertEqual(rep["ledger"]["model"], model)
            self.assertGreater(rep["ledger"]["total"], 0)
            ep = rep["verify"]["extract_path"]
            self.assertEqual(ep["attempted"], ep["succeeded"])

    def test_full_ledger_rows_sum_to_total(self):
        rep = run_json(
            "sssp", *self.GEN, "--model", "congest", "--full-ledger"
        )
        rows = rep["ledger"]["rows"]
        self.assertEqual(len(rows), rep["ledger"]["entries"])
        self.assertEqual(
            sum(r["units"] for r in rows), rep["ledger"]["total"]
        )
        stages = {r["stage"] for r in rows}
        for expected in ("types", "clusters", "finalsssp", "broadcast"):
            self.assertIn(expected, stages)

    def test_congest_on_disconnected_graph_exits_3(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "disc.txt")
            with open(path, "w") as f:
                f.write("4 2 3\n0 1 2\n2 3 1\n")
            rep = run_json(
                "sssp", "--input", path, "--model", "congest", expect=3
            )
            self.assertEqual(rep["error"]["type"], "DisconnectedGraph")
            # sequential tolerates the same graph
            rep = run_json("sssp", "--input", path, "--model", "sequential")
            self.assertEqual(rep["estimates"][3], "inf")

    def test_bad_source_and_bad_model_are_config_errors(self):
        rep = run_json(
            "sssp", "--gen", "path:4", "--source", "9", expect=2
        )
        self.assertEqual(rep["error"]["type"], "ConfigError")
        code, _, _ = run("sssp", "--gen", "path:4", "--model", "quantum")
        self.assertEqual(code, 2)

    def test_out_file_matches_stdout_report(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "rep.json")
            _, stdout, _ = run(
                "sssp", "--gen", "path:12", "--model", "clique", expect=0
            )
            run(
                "sssp", "--gen", "path:12", "--model", "clique",
                "--out", path, expect=0,
            )
            with open(path) as f:
                self.assertEqual(f.read(), stdout)


class TestSweepCommand(unittest.TestCase):
    HEADER = "n,D,model,cost,hopset_size,centers,worst_ratio"

    def test_header_and_row_count(self):
        _, out, err = run(
            "sweep", "--family", "path", "--n", "8,16,32",
            "--model", "congest", "--eps", "1/2", expect=0,
        )
        lines = out.splitlines()
        self.assertEqual(lines[0], self.HEADER)
        self.assertEqual(len(lines), 4)
        meta = json.loads(err.splitlines()[0])
        self.assertEqual(meta["command"], "sweep")
        self.assertEqual(meta["prng"], "splitmix64")

    def test_congest_cost_grows_with_path_length(self):
        _, out, _ = run(
            "sweep", "--family", "path", "--n", "8,16,32",
            "--model", "congest", expect=0,
        )
        rows = [ln.split(",") for ln in out.splitlines()[1:]]
        ns = [int(r[0]) for r in rows]
        costs = [int(r[3]) for r in rows]
        self.assertEqual(ns, [8, 16, 32])
        self.assertEqual(costs, sorted(costs))
        self.assertLess(costs[0], costs[-1])
        for r in rows:
            self.assertLessEqual(float(r[6]), 1.5 * 1.5)

    def test_all_models_share_the_schema(self):
        for model in ("sequential", "clique", "streaming"):
            _, out, _ = run(
                "sweep", "--family", "random", "--n", "16,24",
                "--model", model, "--W", "4", "--seed", "3", expect=0,
            )
            lines = out.splitlines()
            self.assertEqual(lines[0], self.HEADER, msg=model)
            self.assertEqual(len(lines), 3, msg=model)

    def test_empty_range_is_config_error(self):
        rep = run_json("sweep", "--family", "path", expect=2)
        self.assertEqual(rep["error"]["type"], "ConfigError")

    def test_out_file_gets_csv_meta_goes_to_stdout(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "sweep.csv")
            _, out, _ = run(
                "sweep", "--family", "path", "--n", "8",
                "--model", "clique", "--out", path, expect=0,
            )
            meta = json.loads(out)
            self.assertEqual(meta["model"], "clique")
            with open(path) as f:
                self.assertEqual(f.readline().rstrip("\n"), self.HEADER)


class TestReproducibility(unittest.TestCase):
    def test_reports_are_byte_identical_across_runs(self):
        cmds = [
            ("hopset", "--gen", "random:24,40,6,5", "--eps", "1/4", "--verify"),
            ("sssp", "--gen", "random:32,64,8,2", "--model", "congest",
             "--full-ledger"),
            ("sssp", "--gen", "random:32,64,8,2", "--model", "streaming"),
            ("sweep", "--family", "random", "--n", "12,20", "--model",
             "streaming", "--W", "3", "--seed", "9"),
        ]
        for cmd in cmds:
            _, first, _ = run(*cmd, expect=0)
            _, second, _ = run(*cmd, expect=0)
            self.assertEqual(first, second, msg=" ".join(cmd))


def main():
    global BIN
    if len(sys.argv) < 2:
        print("usage: test_cli.py /path/to/dsssp", file=sys.stderr)
        return 2
    BIN = os.path.abspath(sys.argv[1])
    if not os.access(BIN, os.X_OK):
        print(f"binary not executable: {BIN}", file=sys.stderr)
        return 2
    sys.argv = sys.argv[:1]
    unittest.main(verbosity=2)


if __name__ == "__main__":
    sys.exit(main())

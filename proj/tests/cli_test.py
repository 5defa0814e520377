"""End-to-end checks of the pbpo command-line tool.

Usage: cli_test.py <path to pbpo> <data dir>
"""

import json
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

PBPO = None
DATA = None


def run(*args):
    return subprocess.run([PBPO, *args], capture_output=True, text=True)


class CliTest(unittest.TestCase):
    def test_golden_reduce_line(self):
        out = run("bdd", "reduce", "--table", "0001", "--vars", "p,q")
        self.assertEqual(out.returncode, 0)
        self.assertEqual(out.stdout, "7 -> 4 nodes in 3 steps\n")

    def test_label_example_has_one_match(self):
        out = run("match", "--rule", f"{DATA}/relabel.json#to_x1", "--graph", f"{DATA}/relabel.json#host_x2")
        self.assertEqual(out.returncode, 0)
        self.assertIn("1 match", out.stderr)
        ws = json.loads(out.stdout)
        self.assertIn("match0.m", ws["morphisms"])

    def test_apply_relabels(self):
        out = run("apply", "--rule", f"{DATA}/relabel.json#to_x1", "--graph", f"{DATA}/relabel.json#host_x2")
        self.assertEqual(out.returncode, 0)
        graph = next(iter(json.loads(out.stdout)["graphs"].values()))
        self.assertEqual([n["label"] for n in graph["nodes"]], ["x1"])

    def test_output_is_deterministic(self):
        args = ("normalize", "--rules", f"{DATA}/bdd_rules_pq.json", "--graph", f"{DATA}/p_and_q_tree.json")
        first, second = run(*args), run(*args)
        self.assertEqual(first.returncode, 0)
        self.assertEqual(first.stdout, second.stdout)
        trace = ("apply", "--rule", f"{DATA}/relabel.json#to_x1", "--graph", f"{DATA}/relabel.json#host_x2",
                 "--emit-trace", "--format", "dot")
        self.assertEqual(run(*trace).stdout, run(*trace).stdout)

    def test_bad_match_index_is_usage_error(self):
        out = run("apply", "--rule", f"{DATA}/relabel.json#to_x1", "--graph", f"{DATA}/relabel.json#host_x2",
                  "--match-index", "3")
        self.assertEqual(out.returncode, 2)

    def test_missing_subcommand_is_usage_error(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("bdd", "reduce", "--bogus").returncode, 2)

    def test_invalid_input_exits_one(self):
        self.assertEqual(run("validate", "--graph", f"{DATA}/missing.json").returncode, 1)
        with tempfile.TemporaryDirectory() as tmp:
            bad = Path(tmp) / "bad.json"
            bad.write_text('{"graphs": {"g": {"lattice": "unit", "nodes": [{"id": "a"}, {"id": "a"}]}}}')
            out = run("validate", "--graph", str(bad))
            self.assertEqual(out.returncode, 1)
            self.assertTrue(out.stderr.startswith("pbpo: "))

    def test_squares(self):
        self.assertEqual(run("check", "--square", f"{DATA}/gluing.json#pushout_H").returncode, 0)
        out = run("check", "--square", f"{DATA}/gluing.json#candidate_H1")
        self.assertEqual(out.returncode, 1)
        self.assertIn("is not a pushout", out.stdout)
        self.assertEqual(run("check", "--square", f"{DATA}/duplication.json#duplicate", "--exhaustive").returncode, 0)

    def test_reduced_bdd_validates(self):
        out = run("bdd", "reduce", "--table", "0110", "--vars", "a,b", "--format", "json")
        self.assertEqual(out.returncode, 0)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "r.json"
            path.write_text(out.stdout)
            self.assertEqual(run("validate", "--bdd", str(path)).returncode, 0)


if __name__ == "__main__":
    PBPO, DATA = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1])

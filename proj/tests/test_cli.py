"""End-to-end checks of the mchain command line tool.

Usage: test_cli.py <mchain-binary> <data-dir>
"""

import json
import math
import os
import subprocess
import sys
import tempfile
import unittest

MCHAIN = None
DATA = None


def run(*args, **kwargs):
    return subprocess.run([MCHAIN, *args], capture_output=True, text=True,
                          timeout=120, **kwargs)


class Hierarchy(unittest.TestCase):
    def test_json_report(self):
        r = run("hierarchy", os.path.join(DATA, "chain_d.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        self.assertEqual(doc["rho"], 2)
        self.assertEqual([len(rank["clusters"]) for rank in doc["ranks"]],
                         [4, 2, 1])
        self.assertEqual(doc["ranks"][1]["clusters"][0], ["s1", "s2"])
        q01 = next(e for e in doc["ranks"][1]["Q"]
                   if e["from"] == 0 and e["to"] == 1)
        self.assertAlmostEqual(q01["rate"]["alpha"], 0.5)
        self.assertEqual(q01["rate"]["gamma"], 6)
        self.assertIsNone(doc["ranks"][2]["T"])

    def test_text_report(self):
        r = run("hierarchy", "--format", "text",
                os.path.join(DATA, "chain_a.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("rho = 1", r.stdout)
        self.assertIn("T = +inf", r.stdout)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "report.json")
            r = run("hierarchy", "--output", out,
                    os.path.join(DATA, "chain_b.json"))
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(r.stdout, "")
            with open(out) as f:
                self.assertEqual(json.load(f)["rho"], 1)


class Metastable(unittest.TestCase):
    def test_single_row(self):
        r = run("metastable", "--time", "1,0,2", "--from", "s1",
                os.path.join(DATA, "chain_b.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        row = doc["nu"][0]
        self.assertAlmostEqual(row[0], 0.0, places=12)
        self.assertAlmostEqual(row[1], 1 / 3, places=12)
        self.assertAlmostEqual(row[2], 2 / 3, places=12)
        self.assertEqual(doc["trap_trace"][0]["start"], "s1")

    def test_all_rows_sum_to_one(self):
        r = run("metastable", "--time", "1,0,7",
                os.path.join(DATA, "chain_d.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        for row in json.loads(r.stdout)["nu"]:
            self.assertAlmostEqual(sum(row), 1.0, places=9)

    def test_critical_time_scale_exit_code(self):
        r = run("metastable", "--time", "1,0,1",
                os.path.join(DATA, "chain_a.json"))
        self.assertEqual(r.returncode, 4)
        self.assertIn("critical time scale", r.stderr)

    def test_unknown_state(self):
        r = run("metastable", "--time", "1,0,2", "--from", "nope",
                os.path.join(DATA, "chain_b.json"))
        self.assertEqual(r.returncode, 2)

    def test_bad_time_syntax(self):
        r = run("metastable", "--time", "1;0;2",
                os.path.join(DATA, "chain_b.json"))
        self.assertEqual(r.returncode, 2)


class Verify(unittest.TestCase):
    def test_expm_pass(self):
        r = run("verify", "--time", "1,0,2", "--eps", "0.4,0.2,0.1",
                os.path.join(DATA, "chain_b.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        self.assertTrue(doc["monotone"])
        self.assertLessEqual(doc["final_error"], 0.05)

    def test_tight_tolerance_fails(self):
        r = run("verify", "--time", "1,0,2", "--eps", "0.4,0.2",
                "--tol", "1e-9", os.path.join(DATA, "chain_b.json"))
        self.assertEqual(r.returncode, 5)

    def test_csv_format(self):
        r = run("verify", "--time", "1,0,1.5", "--eps", "0.4,0.2",
                "--format", "csv", os.path.join(DATA, "chain_a.json"))
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.strip().splitlines()
        self.assertEqual(lines[0], "eps,start,state,predicted,numeric,abs_error")
        self.assertEqual(len(lines), 1 + 2 * 4)

    def test_monte_carlo_deterministic(self):
        args = ("verify", "--time", "1,0,1.5", "--eps", "0.4,0.25",
                "--method", "mc", "--paths", "2000", "--seed", "11",
                "--tol", "0.1", os.path.join(DATA, "chain_a.json"))
        a, b = run(*args), run(*args)
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(a.stdout, b.stdout)

    def test_ladder_out_of_range(self):
        r = run("verify", "--time", "1,0,2", "--eps", "0.05",
                os.path.join(DATA, "chain_b.json"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("out of range", r.stderr)


class InputHandling(unittest.TestCase):
    def test_unknown_field_rejected(self):
        r = run("hierarchy", os.path.join(DATA, "bad_field.json"))
        self.assertEqual(r.returncode, 2)
        self.assertIn("delta", r.stderr)

    def test_missing_file(self):
        r = run("hierarchy", os.path.join(DATA, "no_such.json"))
        self.assertEqual(r.returncode, 2)

    def test_zero_rates_need_repair(self):
        path = os.path.join(DATA, "cycle_missing.json")
        r = run("hierarchy", path)
        self.assertEqual(r.returncode, 2)
        r = run("hierarchy", "--repair", path)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("zero rates repaired", r.stderr)
        json.loads(r.stdout)

    def test_repair_time_scale_warning(self):
        path = os.path.join(DATA, "cycle_missing.json")
        r = run("metastable", "--repair", "--time", "1,0,500.25", path)
        self.assertIn("repaired-edge", r.stderr)


if __name__ == "__main__":
    MCHAIN = sys.argv.pop(1)
    DATA = sys.argv.pop(1)
    unittest.main(verbosity=2)

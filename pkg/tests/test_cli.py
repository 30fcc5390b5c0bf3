import json
import os
import shutil
import tempfile
import unittest
from unittest import mock

from tests.test_utils import mock_betti_numbers

from ellfan import settings
from ellfan.cli import main

TEST_DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "test_data")


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        self.output = os.path.join(self.tmp, "out.json")
        self.max_cones = os.environ.pop(settings.MAX_CONES_ENV, None)

    def run_command(self, *argv):
        code = main(list(argv) + ["--output", self.output])
        with open(self.output) as out:
            text = out.read()
        return code, text

    def run_json(self, *argv):
        code, text = self.run_command(*argv)
        return code, json.loads(text)

    def test_validate(self):
        code, document = self.run_json("validate", "p2")
        self.assertEqual(code, 0)
        self.assertTrue(document["smooth"])
        self.assertTrue(document["wall_check"])
        self.assertEqual(document["cones"], 7)
        code, document = self.run_json("validate", os.path.join(TEST_DATA, "test_fan_not_smooth.json"))
        self.assertEqual(code, 1)
        self.assertFalse(document["valid"])

    def test_fiber(self):
        code, document = self.run_json("fiber", "p1", "--point", os.path.join(TEST_DATA, "test_point_rank1.json"))
        self.assertEqual(code, 0)
        self.assertEqual(document["cohomology"], {"0": 2})

    def test_named_points_follow_the_fan_rank(self):
        code, document = self.run_json("fiber", "p1", "--point", "identity")
        self.assertEqual(code, 0)
        self.assertEqual(document["cohomology"], {"0": 2})
        code, document = self.run_json("localize", "p1", "--point", "order3")
        self.assertEqual(code, 0)
        self.assertTrue(document["passed"])
        code, document = self.run_json("tsub", "--point", "order2")
        self.assertEqual(code, 0)
        self.assertEqual(len(document["point"]), 2)

    def test_deterministic_output(self):
        first = self.run_command("sheaf", "p2", "--point", "order2")
        second = self.run_command("sheaf", "p2", "--point", "order2")
        self.assertEqual(first, second)
        self.assertEqual(json.loads(first[1])["gamma"]["cohomology"], {"0": 1})

    def test_pretty(self):
        code, text = self.run_command("tsub", "--point", "order6", "--pretty")
        self.assertEqual(code, 0)
        self.assertIn("\n  ", text)
        document = json.loads(text)
        self.assertEqual(document["invariant_factors"], [6])
        self.assertEqual(document["rank"], 0)

    def test_chart_hh(self):
        code, document = self.run_json("chart-hh", "--aweights", "[[1, 0]]", "--gweights", "[[0, 2]]",
                                       "--point", "order2")
        self.assertEqual(code, 0)
        self.assertEqual(document["term"]["multiplicity"], {"0": 1})
        self.assertEqual(document["gamma"]["cohomology"], {"0": 4})
        code, document = self.run_json("chart-hh", "--aweights", "[[0]]", "--gweights", "[]")
        self.assertEqual(code, 1)
        self.assertEqual(document["error"]["kind"], "infinite-rank")

    def test_usage_errors(self):
        with self.assertRaises(SystemExit) as raised:
            main(["fiber", "p1"])
        self.assertEqual(raised.exception.code, 2)
        with self.assertRaises(SystemExit) as raised:
            main(["selftest", "--only", "nothing"])
        self.assertEqual(raised.exception.code, 2)

    def test_domain_errors(self):
        code, document = self.run_json("identity-check", "a2")
        self.assertEqual(code, 1)
        self.assertEqual(document["error"]["kind"], "not-complete")
        code, document = self.run_json("validate", os.path.join(TEST_DATA, "test_fan_bad.json"))
        self.assertEqual(code, 1)
        self.assertEqual(document["error"]["kind"], "invalid-fan")
        code, document = self.run_json("sheaf", "p2", "--max-cones", "2")
        self.assertEqual(document["error"]["kind"], "cap-exceeded")

    def test_max_cones_from_environment(self):
        os.environ[settings.MAX_CONES_ENV] = "2"
        code, document = self.run_json("sheaf", "p2")
        self.assertEqual(code, 1)
        self.assertEqual(document["error"]["kind"], "cap-exceeded")

    def test_localize(self):
        code, document = self.run_json("localize", "p2", "--point", "mixed")
        self.assertEqual(code, 0)
        self.assertTrue(document["passed"])
        code, document = self.run_json("fixed", "p2", "--point", "order2")
        self.assertEqual(code, 0)
        self.assertEqual(document["components"], [{"cone": [0], "dimension": 1}, {"cone": [1, 2], "dimension": 0}])
        self.assertTrue(document["fiber_check"]["passed"])

    def test_identity_check(self):
        code, document = self.run_json("identity-check", "p1xp1")
        self.assertEqual(code, 0)
        self.assertEqual(document["betti_total"], 4)

    def test_selftest(self):
        code, text = self.run_command("selftest", "--only", "tsub", "--only", "kunneth")
        self.assertEqual(code, 0)
        self.assertIn("tsub", text)
        self.assertIn("PASS", text)

    def test_selftest_catches_a_corrupted_oracle(self):
        with mock.patch("ellfan.fans.betti_numbers", mock_betti_numbers):
            code, text = self.run_command("selftest", "--only", "identity")
        self.assertEqual(code, 1)
        self.assertIn("FAIL", text)

    def tearDown(self):
        shutil.rmtree(self.tmp)
        os.environ.pop(settings.MAX_CONES_ENV, None)
        if self.max_cones is not None:
            os.environ[settings.MAX_CONES_ENV] = self.max_cones

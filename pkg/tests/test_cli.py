import io
import json
import logging
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from app.cli import execute, main

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def fixture(name: str) -> str:
    return str(FIXTURES / name)


class GenerateAndClassifyTest(unittest.TestCase):
    def test_gen_prints_json_table(self):
        outcome = execute(["gen", "cyclic", "3", "--json"])

        self.assertEqual(outcome.code, 0)
        document = json.loads(outcome.payload)
        self.assertEqual(len(document["elements"]), 3)
        self.assertEqual(len(document["table"]), 3)

    def test_gen_renders_a_grid(self):
        outcome = execute(["gen", "new-loop", "5", "2"])

        self.assertEqual(outcome.code, 0)
        self.assertTrue(outcome.payload.startswith("L_5(2)"))
        self.assertIn("│", outcome.payload)

    def test_bad_family_parameters(self):
        outcome = execute(["gen", "new-loop", "4", "2"])

        self.assertEqual(outcome.code, 2)
        self.assertTrue(outcome.error.startswith("BadParameters"))

    def test_usage_error(self):
        with redirect_stderr(io.StringIO()):
            outcome = execute(["frobnicate"])

        self.assertEqual(outcome.code, 2)

    def test_classify_loop(self):
        outcome = execute(["classify", fixture("loop_5_2.json"), "--json"])

        self.assertEqual(outcome.code, 0)
        self.assertEqual(json.loads(outcome.payload)["kind"], "loop")

    def test_refuted_identity_exits_one(self):
        outcome = execute(["identity", fixture("loop_5_2.json"), "Associative"])

        self.assertEqual(outcome.code, 1)

    def test_unknown_identity_is_an_input_error(self):
        outcome = execute(["identity", fixture("loop_5_2.json"), "Moufang"])

        self.assertEqual(outcome.code, 2)

    def test_missing_document(self):
        outcome = execute(["classify", fixture("missing.json")])

        self.assertEqual(outcome.code, 2)
        self.assertTrue(outcome.error.startswith("SchemaError"))


class DesignAndMachineVerbTest(unittest.TestCase):
    def test_fano_check(self):
        outcome = execute(["design", "check", fixture("fano.json"), "--json"])

        self.assertEqual(outcome.code, 0)
        self.assertEqual(json.loads(outcome.payload)["lambda"], 1)

    def test_non_planar_ring_exits_one(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "z6.json"
            path.write_text('{"family": "zn_ring", "parameters": [6]}', encoding="utf-8")

            outcome = execute(["design", "build", str(path), "--json"])

        self.assertEqual(outcome.code, 1)
        self.assertFalse(json.loads(outcome.payload)["planar"])

    def test_run_machine(self):
        outcome = execute(
            ["automaton", "run", fixture("machine_2z_plus_a.json"), "--start", "1", "--word", "0,3,2", "--json"]
        )

        self.assertEqual(outcome.code, 0)
        self.assertEqual(json.loads(outcome.payload)["trace"], ["1", "2", "3", "0"])

    def test_bi_run_uses_component_tags(self):
        outcome = execute(
            ["automaton", "bi-run", fixture("bimachine_z3.json"), "--start", "1", "--word", "1:1,2:2,1:0", "--json"]
        )

        self.assertEqual(json.loads(outcome.payload)["trace"], ["1", "2", "1", "1"])

    def test_syntactic_refutation(self):
        outcome = execute(["automaton", "syntactic", fixture("machine_z6_mul.json")])

        self.assertEqual(outcome.code, 1)
        self.assertIn("refuted", outcome.payload)

    def test_dot_output(self):
        outcome = execute(["automaton", "dot", fixture("machine_2z_plus_a.json"), "--dot"])

        self.assertEqual(outcome.code, 0)
        self.assertTrue(outcome.payload.startswith("digraph"))


class BivectorVerbTest(unittest.TestCase):
    def test_dim(self):
        outcome = execute(["bivect", "dim", "--p", "5", "--dims", "2", "3", "--json"])

        self.assertEqual(json.loads(outcome.payload), {"dims": [2, 3], "dim": 5})

    def test_apply(self):
        outcome = execute(
            [
                "bivect",
                "apply",
                "--p",
                "5",
                "--dims",
                "2",
                "2",
                "--first",
                "[[1, 0], [0, 0]]",
                "--second",
                "[[2, 0], [0, 3]]",
                "--vector",
                "0,0,1,1",
                "--json",
            ]
        )

        self.assertEqual(outcome.code, 0)
        report = json.loads(outcome.payload)
        self.assertEqual(report["image"], [0, 0, 2, 3])
        self.assertEqual(report["component"], 2)

    def test_malformed_matrix(self):
        outcome = execute(["bivect", "matrix", "--dims", "1", "1", "--first", "[[1,", "--second", "[[1]]"])

        self.assertEqual(outcome.code, 2)


class OutputAndBatchTest(unittest.TestCase):
    def test_out_writes_report_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "loop.json"
            outcome = execute(["classify", fixture("loop_5_2.json"), "--json", "--out", str(target)])

            self.assertEqual(outcome.code, 0)
            self.assertIsNone(outcome.payload)
            self.assertEqual(json.loads(target.read_text(encoding="utf-8"))["kind"], "loop")

    def test_unwritable_out_path_is_an_input_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "missing" / "loop.json"
            outcome = execute(["classify", fixture("loop_5_2.json"), "--json", "--out", str(target)])

        self.assertEqual(outcome.code, 2)
        self.assertTrue(outcome.error.startswith("cannot write"))

    def test_verbose_does_not_leak_the_log_level(self):
        root = logging.getLogger()
        previous = root.level
        root.setLevel(logging.WARNING)
        try:
            with redirect_stderr(io.StringIO()):
                execute(["classify", fixture("loop_5_2.json"), "--verbose"])
            self.assertEqual(root.level, logging.WARNING)
        finally:
            root.setLevel(previous)

    def test_manifest_matches_expected_exits(self):
        outcome = execute(["batch", fixture("manifest.json"), "--json"])
        report = json.loads(outcome.payload)

        self.assertEqual(report["failed"], [])
        self.assertEqual(outcome.code, 0)
        self.assertEqual(len(report["cases"]), 42)
        self.assertEqual(report["cases"][-1]["exit"], 2)

    def test_main_prints_and_returns_code(self):
        stdout = io.StringIO()
        with redirect_stdout(stdout), redirect_stderr(io.StringIO()):
            code = main(["identity", fixture("loop_5_2.json"), "Associative", "--json"])

        self.assertEqual(code, 1)
        self.assertFalse(json.loads(stdout.getvalue())[0]["holds"])


if __name__ == "__main__":
    unittest.main()

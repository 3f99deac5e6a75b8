import json
import tempfile
import unittest
from pathlib import Path

from app.errors import AlgebraError, SchemaError
from app.models.automaton import Automaton, BiSemiAutomaton, SemiAutomaton
from app.models.documents import BatchManifest, MachineDocument, RingUnionDocument
from app.services.document_service import DocumentService

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


class DocumentLoadTest(unittest.TestCase):
    def setUp(self):
        self.service = DocumentService()

    def test_family_spec_builds_a_magma(self):
        loop = self.service.magma(self.service.load(FIXTURES / "loop_5_2.json"))

        self.assertEqual(loop.size, 6)
        self.assertIn("e", loop.labels)

    def test_explicit_table(self):
        magma = self.service.magma({"name": "Z2", "elements": ["0", "1"], "table": [[0, 1], [1, 0]]})
        document = self.service.magma_document(magma)

        self.assertEqual(document.table, [[0, 1], [1, 0]])
        self.assertEqual(document.elements, ["0", "1"])

    def test_table_entries_are_checked(self):
        with self.assertRaises(AlgebraError):
            self.service.magma({"elements": ["0", "1"], "table": [[0, 2], [1, 0]]})

    def test_schema_errors(self):
        with self.assertRaises(SchemaError):
            self.service.magma({"family": "tetrahedral", "parameters": [4]})
        with self.assertRaises(SchemaError):
            self.service.magma({"elements": ["0"], "table": [[0]], "colour": "red"})
        with self.assertRaises(SchemaError):
            self.service.magma("{not json")

    def test_missing_file(self):
        with self.assertRaises(SchemaError):
            self.service.load(FIXTURES / "missing.json")

    def test_planar_ring_fixture(self):
        ring = self.service.ring(self.service.load(FIXTURES / "z5_planar.json"))

        self.assertEqual(ring.name, "Z5 planar")
        self.assertEqual(len(ring.labels), 5)

    def test_bistructure_fixture(self):
        bs = self.service.bistructure(self.service.load(FIXTURES / "bigroup_s3_c6.json"))

        self.assertEqual(bs.name, "S3 ∪ C6")
        self.assertEqual(bs.k, 2)
        self.assertEqual(bs.order, 12)

    def test_ring_union_fixture(self):
        components, ambient, name = self.service.ring_union(
            self.service.read(FIXTURES / "biring_z10.json", RingUnionDocument)
        )

        self.assertEqual(name, "Z10 bifield")
        self.assertEqual([c.support for c in components], [("0", "5"), ("0", "2", "4", "6", "8")])
        self.assertEqual(len(ambient.labels), 10)


class MachineDocumentTest(unittest.TestCase):
    def setUp(self):
        self.service = DocumentService()

    def test_machine_with_outputs_is_an_automaton(self):
        machine = self.service.machine(self.service.load(FIXTURES / "automaton_mod4_mod5.json"))

        self.assertIsInstance(machine, Automaton)
        self.assertEqual(machine.lam.tolist()[1], [2, 0, 3, 1, 4])

    def test_plain_machine(self):
        machine = self.service.machine(self.service.load(FIXTURES / "machine_2z_plus_a.json"))

        self.assertIsInstance(machine, SemiAutomaton)
        self.assertNotIsInstance(machine, Automaton)

    def test_outputs_without_lambda(self):
        doc = {"states": ["0"], "inputs": ["0"], "delta": [[0]], "outputs": ["0"]}

        with self.assertRaises(SchemaError):
            self.service.machine(doc)

    def test_machine_document_uses_lambda_key(self):
        machine = self.service.machine(self.service.load(FIXTURES / "automaton_mod4_mod5.json"))
        dumped = json.loads(self.service.dump(self.service.machine_document(machine)))

        self.assertIn("lambda", dumped)
        self.assertEqual(MachineDocument.model_validate(dumped).lambda_, machine.lam.tolist())

    def test_bimachine(self):
        bsa = self.service.bimachine(self.service.load(FIXTURES / "bimachine_z3.json"))

        self.assertIsInstance(bsa, BiSemiAutomaton)
        self.assertEqual(len(bsa.components), 2)
        self.assertEqual(bsa.components[1].inputs, ("1", "2", "3"))


class DesignAndManifestTest(unittest.TestCase):
    def setUp(self):
        self.service = DocumentService()

    def test_design_with_declared_parameters(self):
        design, declared = self.service.design(self.service.load(FIXTURES / "fano.json"))

        self.assertEqual(design.name, "Fano plane")
        self.assertEqual(declared, {"v": 7, "b": 7, "r": 3, "k": 3, "lambda": 1})

    def test_manifest(self):
        manifest = self.service.manifest(self.service.load(FIXTURES / "manifest.json"))

        self.assertIsInstance(manifest, BatchManifest)
        self.assertEqual(len(manifest.entries), 42)
        self.assertEqual(manifest.entries[1].expect, 1)
        self.assertEqual(manifest.entries[0].expect, 0)

    def test_read_from_a_written_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "manifest.json"
            path.write_text('{"entries": [{"name": "one", "argv": ["gen", "cyclic", "3"]}]}', encoding="utf-8")

            manifest = self.service.read(path, BatchManifest)

        self.assertEqual(manifest.entries[0].argv, ["gen", "cyclic", "3"])


if __name__ == "__main__":
    unittest.main()

import unittest
from pathlib import Path

import numpy as np

from app.errors import DuplicateLabel, IndexOutOfRange, NotALoop, NotApplicable, UnknownLabel
from app.models.magma import Magma
from app.services.document_service import DocumentService
from app.services.family_service import FamilyService
from app.services.magma_service import MagmaService

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
DOCUMENTS = DocumentService()


def printed_magma(name: str):
    return DOCUMENTS.magma(DOCUMENTS.load(FIXTURES / name))


class MagmaValueTest(unittest.TestCase):
    def test_rejects_repeated_labels(self):
        with self.assertRaises(DuplicateLabel):
            Magma("bad", ("a", "a"), [[0, 1], [1, 0]])

    def test_rejects_out_of_range_entries(self):
        with self.assertRaises(IndexOutOfRange):
            Magma("bad", ("a", "b"), [[0, 2], [1, 0]])

    def test_rejects_wrong_shape(self):
        with self.assertRaises(IndexOutOfRange):
            Magma("bad", ("a", "b"), [[0, 1]])

    def test_table_is_read_only_copy(self):
        rows = np.array([[0, 1], [1, 0]])
        m = Magma("Z2", ("0", "1"), rows)
        rows[0, 0] = 1

        self.assertEqual(m.mul(0, 0), 0)
        with self.assertRaises(ValueError):
            m.table[0, 0] = 1

    def test_unknown_label(self):
        m = FamilyService().zn_add(3)

        with self.assertRaises(UnknownLabel):
            m.index("7")

    def test_restrict_keeps_labels(self):
        m = FamilyService().zn_add(6)
        sub = m.restrict(m.indices(["0", "2", "4"]))

        self.assertEqual(sub.labels, ("0", "2", "4"))
        self.assertEqual(sub.mul_labels("4", "4"), "2")


class MagmaServiceTest(unittest.TestCase):
    def setUp(self):
        self.service = MagmaService()
        self.families = FamilyService()

    def test_classify_kinds(self):
        cases = {
            "group": self.families.zn_add(4),
            "monoid": self.families.zn_mul(4),
            "loop": self.families.new_loop(5, 2),
            "quasigroup": self.families.groupoid_tier(3, 1, 2),
        }
        for kind, magma in cases.items():
            with self.subTest(kind=kind):
                self.assertEqual(self.service.classify(magma).kind, kind)

    def test_classify_reports_witnesses(self):
        report = self.service.classify(self.families.new_loop(5, 2))

        self.assertFalse(report.associative)
        self.assertEqual(len(report.witnesses["associative"]), 3)
        self.assertEqual(report.identity_label, "e")
        self.assertTrue(report.latin)

    def test_symmetric_group_is_not_commutative(self):
        report = self.service.classify(self.families.symmetric_group(3))

        self.assertEqual(report.kind, "group")
        self.assertFalse(report.commutative)
        self.assertIn("commutative", report.witnesses)

    def test_identities_hold_in_groups(self):
        s3 = self.families.symmetric_group(3)
        for kind in ("Associative", "Moufang1", "Moufang2", "Moufang3", "Bol", "LeftAlternative", "WIP"):
            with self.subTest(identity=kind):
                self.assertTrue(self.service.check_identity(s3, kind).holds)

    def test_associativity_fails_in_new_loop(self):
        report = self.service.check_identity(self.families.new_loop(5, 2), "Associative")

        self.assertFalse(report.holds)
        self.assertEqual(len(report.witness), 3)

    def test_wip_needs_identity(self):
        with self.assertRaises(NotApplicable):
            self.service.check_identity(self.families.groupoid_tier(3, 1, 2), "WIP")

    def test_element_order(self):
        c6 = self.families.cyclic(6)

        self.assertEqual(self.service.element_order(c6, c6.index("g^2")), 3)
        self.assertEqual(self.service.element_order(c6, c6.index("1")), 1)

    def test_subgroups_of_z6(self):
        z6 = self.families.zn_add(6)
        result = self.service.enumerate_subalgebras(z6, "subgroup")

        self.assertTrue(result.exhaustive)
        self.assertEqual([z6.labels_of(s) for s in result.sets], [["0"], ["0", "3"], ["0", "2", "4"], list(z6.labels)])

    def test_max_count_truncates(self):
        result = self.service.enumerate_subalgebras(self.families.zn_add(6), "subgroup", max_count=2)

        self.assertEqual(len(result.sets), 2)

    def test_local_invariants_of_s3(self):
        s3 = self.families.symmetric_group(3)
        report = self.service.local_invariants(s3)

        self.assertEqual(report.nucleus, list(s3.labels))
        self.assertEqual(report.center, ["123"])
        self.assertEqual(sorted(report.commutator_subloop), ["123", "231", "312"])

    def test_local_invariants_need_a_loop(self):
        with self.assertRaises(NotALoop):
            self.service.local_invariants(self.families.zn_mul(4))

    def test_division_tables_invert_the_table(self):
        loop = self.families.new_loop(5, 2)
        left, right = self.service.division_tables(loop)
        ar = np.arange(loop.size)

        self.assertTrue((loop.table[ar[:, None], left] == ar[None, :]).all())
        self.assertTrue((loop.table[right, ar[None, :]] == ar[:, None]).all())


class PrintedTableTest(unittest.TestCase):
    def setUp(self):
        self.service = MagmaService()
        self.families = FamilyService()

    def test_new_loops_match_the_printed_tables(self):
        for fixture, (n, m) in (("l5_2_table.json", (5, 2)), ("l5_4_table.json", (5, 4))):
            with self.subTest(fixture=fixture):
                printed = printed_magma(fixture)
                built = self.families.new_loop(n, m)

                self.assertEqual(built.labels, printed.labels)
                self.assertTrue(np.array_equal(built.table, printed.table))

    def test_printed_loop_is_neither_associative_nor_commutative(self):
        report = self.service.classify(printed_magma("l5_2_table.json"))

        self.assertEqual(report.kind, "loop")
        self.assertFalse(report.associative)
        self.assertFalse(report.commutative)

    def test_local_invariants_of_the_printed_loop(self):
        loop = printed_magma("l5_2_table.json")
        report = self.service.local_invariants(loop)

        for field in ("left_nucleus", "middle_nucleus", "right_nucleus", "nucleus", "moufang_center", "center"):
            with self.subTest(field=field):
                self.assertEqual(getattr(report, field), ["e"])
        self.assertEqual(report.commutator_subloop, list(loop.labels))
        self.assertEqual(report.associator_subloop, list(loop.labels))

    def test_p_identity_fails_in_the_linear_groupoid(self):
        report = self.service.check_identity(printed_magma("z8_2_6_table.json"), "PIdentity")

        self.assertFalse(report.holds)
        self.assertEqual(report.witness, ["1", "0"])

    def test_semialternative(self):
        loop = printed_magma("l5_2_table.json")
        report = self.service.check_identity(loop, "Semialternative")
        a, b, c = loop.indices(report.witness)
        left = self.service.left_division(loop)
        T = loop.table

        self.assertFalse(report.holds)
        self.assertNotEqual(left[T[a, T[b, c]], T[T[a, b], c]], left[T[b, T[c, a]], T[T[b, c], a]])
        self.assertTrue(self.service.check_identity(self.families.symmetric_group(3), "Semialternative").holds)
        with self.assertRaises(NotApplicable):
            self.service.check_identity(self.families.zn_mul(4), "Semialternative")

    def test_identities_hold_across_group_families(self):
        groups = [
            self.families.cyclic(6),
            self.families.zn_add(5),
            self.families.symmetric_group(3),
            self.families.alternating(4),
            self.families.dihedral(4),
            self.families.gl2(3),
        ]
        kinds = (
            "Associative",
            "Moufang1",
            "Moufang2",
            "Moufang3",
            "Bol",
            "LeftAlternative",
            "RightAlternative",
            "PIdentity",
            "WIP",
            "Semialternative",
        )
        for group in groups:
            for kind in kinds:
                with self.subTest(group=group.name, identity=kind):
                    self.assertTrue(self.service.check_identity(group, kind).holds)

    def test_bruck_needs_the_automorphic_inverse_property(self):
        self.assertTrue(self.service.check_identity(self.families.cyclic(6), "Bruck").holds)
        self.assertFalse(self.service.check_identity(self.families.symmetric_group(3), "Bruck").holds)


if __name__ == "__main__":
    unittest.main()

import unittest

import numpy as np

from app.errors import NotABiset, WrongBaseKind
from app.models.bistructure import SubBiStructure
from app.models.magma import Magma
from app.models.smarandache import ModularOp
from app.services.bistruct_service import BiStructService
from app.services.family_service import FamilyService
from app.services.smarandache_service import SmarandacheService


class SmarandacheMagmaTest(unittest.TestCase):
    def setUp(self):
        self.families = FamilyService()
        self.service = SmarandacheService()

    def test_semigroup_with_proper_groups(self):
        report = self.service.s_detect(self.families.zn_mul(6), "group-in-semigroup")

        self.assertTrue(report.smarandache)
        self.assertEqual(report.s_kind, "S-semigroup")
        self.assertEqual(report.witnesses, [["1", "5"], ["2", "4"]])
        self.assertEqual(report.witness_kinds, ["group", "group"])

    def test_all_witnesses_keep_nested_groups(self):
        report = self.service.s_detect(self.families.zn_add(8), "group-in-semigroup", maximal_only=False)

        self.assertEqual(report.witnesses, [["0", "4"], ["0", "2", "4", "6"]])

    def test_loop_with_order_two_subgroups(self):
        report = self.service.s_detect(self.families.new_loop(5, 2), "group-in-loop")

        self.assertEqual(report.s_kind, "S-loop")
        self.assertEqual(len(report.witnesses), 5)
        self.assertTrue(all(len(w) == 2 and "e" in w for w in report.witnesses))

    def test_wrong_base_kind(self):
        with self.assertRaises(WrongBaseKind):
            self.service.s_detect(self.families.new_loop(5, 2), "group-in-semigroup")

    def test_maximal_subgroup_at_idempotent(self):
        z6 = self.families.zn_mul(6)

        self.assertEqual(self.service.maximal_subgroup_at(z6, z6.index("4")), frozenset({2, 4}))

    def test_magma_grades(self):
        z6 = self.families.zn_mul(6)

        lagrange = self.service.s_grade(z6, "Lagrange")
        self.assertTrue(lagrange.flags["S-Lagrange"])
        commutative = self.service.s_grade(z6, "commutative")
        self.assertTrue(commutative.flags["S-commutative"])


class SmarandacheBistructureTest(unittest.TestCase):
    def setUp(self):
        families = FamilyService()
        self.bistruct = BiStructService()
        self.service = SmarandacheService(bistruct_service=self.bistruct)
        self.s_bigroup = self.bistruct.assemble([families.symmetric_group(3), families.zn_mul(6)], name="S3 ∪ Z6")
        self.bigroup = self.bistruct.assemble([families.symmetric_group(3), families.cyclic(6)], name="S3 ∪ C6")

    def test_s_bigroup_detection(self):
        report = self.service.s_bi_detect(self.s_bigroup)

        self.assertEqual(report.s_kind, "S-bigroup")
        self.assertEqual(len(report.parts), 2)
        self.assertEqual(report.parts[0][1], ["1", "5"])
        self.assertEqual(len(report.parts[0][0]), 6)

    def test_s_cauchy(self):
        report = self.service.s_cauchy(self.s_bigroup)
        cauchy = [(e.element, e.component, e.order) for e in report.s_cauchy]
        special = [(e.element, e.component, e.order) for e in report.s_special_cauchy]

        self.assertIn(("5", 1, 2), cauchy)
        self.assertIn(("5", 1, 2), special)
        self.assertIn(("231", 0, 3), special)

    def test_s_cauchy_needs_s_bigroup(self):
        with self.assertRaises(WrongBaseKind):
            self.service.s_cauchy(self.bigroup)

    def test_bistructure_grade(self):
        report = self.service.s_grade(self.s_bigroup, "commutative")

        self.assertEqual(report.flags, {"S-commutative": False, "S-weakly-commutative": True})

    def test_inverse_pairs(self):
        pairs = [(p.component, p.x, p.y, p.a, p.b) for p in self.service.s_inverse_pairs(self.bigroup)]

        self.assertIn((1, "g", "g^5", "g^4", "g^2"), pairs)

    def test_s_coset(self):
        H = SubBiStructure((frozenset(["123", "231", "312"]), frozenset(["1", "5"])))
        report = self.service.s_coset(self.s_bigroup, H, "5")

        self.assertEqual(report.group_part, ["1", "5"])
        self.assertEqual(report.labels, ["123", "231", "312", "1", "5"])


class WorkedBistructureTest(unittest.TestCase):
    def setUp(self):
        self.families = FamilyService()
        self.bistruct = BiStructService()
        self.service = SmarandacheService(bistruct_service=self.bistruct)

    def _with_s3_semigroup(self, n: int):
        return self.bistruct.assemble([self.families.cyclic(n), self.families.symmetric_semigroup(3)])

    def test_prime_cyclic_part_gives_a_hyper_bigroup(self):
        report = self.service.s_grade(self._with_s3_semigroup(3), "hyper")

        self.assertTrue(report.flags["S-hyper"])
        self.assertEqual(report.witness[0], ["1", "g", "g^2"])
        self.assertEqual(set(report.witness[1]), {"123", "132", "213", "231", "312", "321"})
        self.assertEqual(self.service.s_grade(self._with_s3_semigroup(3), "simple").flags, {"S-simple": False})

    def test_c9_with_s3_semigroup_is_only_weakly_commutative(self):
        report = self.service.s_grade(self._with_s3_semigroup(9), "commutative")

        self.assertEqual(report.flags, {"S-commutative": False, "S-weakly-commutative": True})

    def test_prime_order_union_is_non_lagrange(self):
        bs = self._with_s3_semigroup(4)
        report = self.service.s_grade(bs, "Lagrange")

        self.assertEqual(bs.order, 31)
        self.assertEqual(report.flags, {"S-Lagrange": False, "S-weakly-Lagrange": False, "S-non-Lagrange": True})

    def test_bisemilattice_is_not_s(self):
        first = Magma("S1", ("0", "a", "b", "c"), np.diag(np.arange(4)))
        second = Magma(
            "S2",
            ("0", "x1", "x2", "x3", "x4"),
            np.array(
                [
                    [0, 0, 0, 0, 0],
                    [0, 1, 0, 0, 1],
                    [0, 0, 2, 2, 0],
                    [0, 0, 2, 3, 0],
                    [0, 1, 0, 0, 4],
                ]
            ),
        )
        report = self.service.s_bi_detect(self.bistruct.assemble([first, second], sharing=["0"]))

        self.assertEqual(report.s_kind, "not S")
        self.assertFalse(report.smarandache)

    def test_c9_with_order_six_loop_is_an_s_biloop(self):
        loop = self.families.new_loop(5, 2).relabeled(lambda label: label if label == "e" else f"a{label}")
        report = self.service.s_bi_detect(self.bistruct.assemble([self.families.cyclic(9), loop]))

        self.assertEqual(report.s_kind, "S-biloop")
        self.assertIn({"1", "g^3", "g^6", "e", "a5"}, [set(w) for w in report.witnesses])


class SmarandacheBisetTest(unittest.TestCase):
    def setUp(self):
        self.service = SmarandacheService()

    def test_each_part_carries_a_modular_structure(self):
        report = self.service.s_biset(
            ["0", "1", "2", "3", "4", "5"],
            (["0", "1", "2"], ["2", "3", "4", "5"]),
            [ModularOp(part=0, op="mul", modulus=3), ModularOp(part=1, op="add", modulus=4)],
        )

        self.assertTrue(report.holds)
        self.assertEqual(report.witnesses, [["0", "1"], ["2", "4"]])

    def test_missing_operation_fails(self):
        report = self.service.s_biset(
            ["0", "1", "2", "3"],
            (["0", "1", "2"], ["2", "3"]),
            [ModularOp(part=0, op="mul", modulus=3)],
        )

        self.assertFalse(report.holds)
        self.assertIsNone(report.witnesses[1])

    def test_nested_split_is_not_a_biset(self):
        with self.assertRaises(NotABiset):
            self.service.s_biset(["0", "1", "2"], (["0", "1"], ["0", "1", "2"]), [])

    def test_powers_of_three_mod_27(self):
        report = self.service.s_biset(
            ["2", "3", "9", "-1", "1", "0"],
            (["2", "3", "9", "0"], ["-1", "1", "0", "2"]),
            [ModularOp(part=0, op="mul", modulus=27), ModularOp(part=1, op="mul", modulus=3)],
        )

        self.assertTrue(report.holds)
        self.assertEqual(report.witnesses, [["3", "9", "0"], ["-1", "1", "0"]])

    def test_singleton_parts_are_never_s(self):
        operations = [ModularOp(part=i, op=op, modulus=2) for i in (0, 1) for op in ("mul", "add")]
        report = self.service.s_biset(["0", "1"], (["0"], ["1"]), operations)

        self.assertFalse(report.holds)
        self.assertEqual(report.witnesses, [None, None])


class SmarandacheResidueTest(unittest.TestCase):
    def setUp(self):
        self.families = FamilyService()
        self.service = SmarandacheService()

    def test_z10_contains_a_group_on_the_even_residues(self):
        report = self.service.s_detect(self.families.zn_mul(10), "group-in-semigroup")

        self.assertIn(["2", "4", "6", "8"], report.witnesses)

    def test_z19_order_two_subgroup_does_not_divide_the_order(self):
        report = self.service.s_detect(self.families.zn_mul(19), "group-in-semigroup", maximal_only=False)

        self.assertIn(["1", "18"], report.witnesses)
        self.assertNotEqual(19 % 2, 0)

    def test_s_cauchy_against_a_symmetric_semigroup(self):
        families = FamilyService()
        bistruct = BiStructService()
        service = SmarandacheService(bistruct_service=bistruct)
        bs = bistruct.assemble([families.cyclic(5), families.symmetric_semigroup(3)])
        report = service.s_cauchy(bs)
        cauchy = {(e.element, e.order) for e in report.s_cauchy}
        special = {(e.element, e.order) for e in report.s_special_cauchy}

        self.assertEqual(bs.order, 32)
        self.assertIn(("213", 2), special)
        self.assertNotIn(("213", 2), cauchy)
        self.assertNotIn(("g", 5), special)


if __name__ == "__main__":
    unittest.main()

import unittest

from app.errors import BadParameters, NestedSupports, NotApplicable, UncoveredUniverse, UndeclaredSharing
from app.models.bistructure import SubBiStructure
from app.services.bistruct_service import BiStructService
from app.services.family_service import FamilyService


def _sub(*parts):
    return SubBiStructure(tuple(frozenset(part) for part in parts))


A3 = ["123", "231", "312"]


class AssembleTest(unittest.TestCase):
    def setUp(self):
        self.families = FamilyService()
        self.service = BiStructService()

    def test_shared_labels_must_be_declared(self):
        parts = [self.families.cyclic(3), self.families.zn_add(2)]

        with self.assertRaises(UndeclaredSharing):
            self.service.assemble(parts)
        bs = self.service.assemble(parts, sharing=["1"])
        self.assertEqual(bs.order, 4)
        self.assertEqual(bs.components_of("1"), [0, 1])

    def test_nested_supports_are_rejected(self):
        with self.assertRaises(NestedSupports):
            self.service.assemble([self.families.zn_add(3), self.families.zn_add(6)], sharing=["0", "1", "2"])

    def test_declared_universe_must_match(self):
        parts = [self.families.cyclic(2), self.families.zn_add(2)]

        with self.assertRaises(UncoveredUniverse):
            self.service.assemble(parts, sharing=["1"], universe=["1", "g", "0", "x"])

    def test_component_count(self):
        with self.assertRaises(BadParameters):
            self.service.assemble([self.families.cyclic(2), self.families.zn_add(3), self.families.dihedral(2)])


class BigroupAnalysisTest(unittest.TestCase):
    def setUp(self):
        self.families = FamilyService()
        self.service = BiStructService()
        self.bs = self.service.assemble([self.families.symmetric_group(3), self.families.cyclic(6)], name="S3 ∪ C6")

    def test_classify(self):
        report = self.service.classify_bi(self.bs)

        self.assertEqual(report.kind, "bigroup")
        self.assertEqual(report.order, 12)
        self.assertEqual(report.component_kinds, ["group", "group"])

    def test_classify_mixed_pairs(self):
        semigroup = self.service.assemble([self.families.symmetric_group(3), self.families.zn_mul(6)])
        loops = self.service.assemble(
            [
                self.families.new_loop(5, 2).relabeled(lambda label: f"a{label}"),
                self.families.new_loop(7, 3).relabeled(lambda label: f"b{label}"),
            ]
        )

        self.assertEqual(self.service.classify_bi(semigroup).kind, "biquasi_group")
        self.assertEqual(self.service.classify_bi(loops).kind, "biloop")

    def test_lagrange_is_weak(self):
        report = self.service.lagrange_report(self.bs)

        self.assertEqual(report.verdict, "weakly")
        self.assertTrue(any(entry.divides for entry in report.entries))
        self.assertTrue(any(not entry.divides for entry in report.entries))

    def test_biorder_and_pseudo(self):
        report = self.service.biorder_and_pseudo(_sub(["123", "132"], ["1", "g^3"]), self.bs)

        self.assertEqual(report.order, 4)
        self.assertEqual(report.biorder, 4)
        self.assertTrue(report.divides)
        self.assertTrue(report.pseudo_divides)

    def test_cauchy_elements_cover_both_components(self):
        entries = self.service.cauchy_elements(self.bs)

        self.assertEqual(len(entries), 12)
        self.assertTrue(all(entry.divides for entry in entries))
        self.assertIn(("g", 1, 6), [(e.element, e.component, e.order) for e in entries])

    def test_sylow_pairs(self):
        found = self.service.sylow_search(self.bs, 2, 3)

        self.assertEqual(len(found), 3)
        for sub in found:
            self.assertEqual(sub.parts[1], frozenset({"1", "g^2", "g^4"}))

    def test_sylow_pairs_in_both_orders_are_distinct(self):
        two_three = self.service.sylow_search(self.bs, 2, 3)
        three_two = self.service.sylow_search(self.bs, 3, 2)

        self.assertEqual(three_two, [_sub(A3, ["1", "g^3"])])
        self.assertTrue(two_three)
        self.assertFalse(set(two_three) & set(three_two))

    def test_sylow_of_the_union(self):
        found = self.service.sylow_p(self.bs, 2)

        self.assertEqual(len(found), 5)
        self.assertTrue(all(sub.order == 4 for sub in found))
        self.assertEqual(self.service.sylow_p(self.bs, 5), [])

    def test_bicoset_moves_only_the_holding_component(self):
        report = self.service.bicoset(self.bs, _sub(["123", "213"], ["1", "g^3"]), "g")

        self.assertEqual(report.parts, [["123", "213"], ["g", "g^4"]])

    def test_normal_check(self):
        self.assertTrue(self.service.normal_check(self.bs, _sub(A3, ["1", "g^3"])))
        self.assertFalse(self.service.normal_check(self.bs, _sub(["123", "213"], ["1", "g^3"])))

    def test_normalizer(self):
        report = self.service.normalizer(self.bs, "213")

        self.assertEqual(report.components, {0: ["123", "213"]})

    def test_quotient(self):
        report = self.service.quotient(self.bs, _sub(A3, ["1", "g^2", "g^4"]))

        self.assertEqual(report.cosets[0], [A3, ["132", "213", "321"]])
        self.assertEqual(report.cosets[1], [["1", "g^2", "g^4"], ["g", "g^3", "g^5"]])

    def test_quotient_needs_a_normal_part(self):
        with self.assertRaises(NotApplicable):
            self.service.quotient(self.bs, _sub(["123", "213"], ["g"]))


class CyclicUnionTest(unittest.TestCase):
    def setUp(self):
        self.families = FamilyService()
        self.service = BiStructService()

    def test_alternating_part_with_cube_roots_is_normal(self):
        bs = self.service.assemble([self.families.symmetric_group(3), self.families.cyclic(9)])

        self.assertTrue(self.service.normal_check(bs, _sub(A3, ["1", "g^3", "g^6"])))
        self.assertFalse(self.service.normal_check(bs, _sub(["123", "132"], ["1", "g^3", "g^6"])))

    def test_bicoset_in_c16_with_z21(self):
        bs = self.service.assemble([self.families.cyclic(16), self.families.zn_add(21)])
        H = _sub(["1", "g^4", "g^8", "g^12"], ["0", "7", "14"])
        report = self.service.bicoset(bs, H, "g^2")

        self.assertEqual(report.parts, [["g^2", "g^6", "g^10", "g^14"], ["0", "7", "14"]])
        self.assertEqual(self.service.bicoset(bs, H, "7").parts[1], ["0", "7", "14"])


class LagrangeFailureTest(unittest.TestCase):
    def setUp(self):
        self.families = FamilyService()
        self.service = BiStructService()

    def test_z10_with_s3_has_a_non_dividing_sub_bigroup(self):
        bs = self.service.assemble([self.families.zn_add(10), self.families.symmetric_group(3)])
        orders = {sub.order for sub in self.service.enumerate_sub(bs, exhaustive=True)}

        self.assertEqual(bs.order, 16)
        self.assertIn(7, orders)
        self.assertNotEqual(self.service.lagrange_report(bs).verdict, "Lagrange")

    def test_c9_with_z5_has_no_sub_bigroup_of_order_seven(self):
        bs = self.service.assemble([self.families.cyclic(9), self.families.zn_add(5).relabeled(lambda label: f"z{label}")])
        orders = {sub.order for sub in self.service.enumerate_sub(bs, exhaustive=True)}

        self.assertEqual(bs.order, 14)
        self.assertNotIn(7, orders)

    def test_biorder_counts_shared_labels_twice(self):
        bs = self.service.assemble(
            [self.families.zn_add(6), self.families.zn_add(2).relabeled(["0", "a"])], sharing=["0"]
        )
        report = self.service.biorder_and_pseudo(_sub(["0", "2", "4"], ["0", "a"]), bs)

        self.assertEqual((report.order, report.biorder), (4, 5))

    def test_biorder_divides_without_pseudo_division(self):
        bs = self.service.assemble([self.families.symmetric_group(3), self.families.cyclic(8)])
        report = self.service.biorder_and_pseudo(_sub(["123", "132", "213", "231"], ["1", "g", "g^2"]), bs)

        self.assertEqual(report.biorder, 7)
        self.assertTrue(report.biorder_divides)
        self.assertFalse(report.pseudo_divides)
        self.assertEqual(report.component_divisibility, [False, False])

    def test_biloop_with_a_non_dividing_sub_biloop(self):
        bs = self.service.assemble(
            [self.families.new_loop(5, 2), self.families.cyclic(7).relabeled(lambda label: f"c{label}")]
        )
        orders = {sub.order for sub in self.service.enumerate_sub(bs, exhaustive=True)}

        self.assertEqual(self.service.classify_bi(bs).kind, "biloop")
        self.assertEqual(bs.order, 13)
        self.assertIn(3, orders)

    def test_biloop_of_order_fifteen_has_no_sub_biloop_of_order_five(self):
        loop = self.families.new_loop(7, 4).relabeled(lambda label: label if label == "e" else f"a{label}")
        bs = self.service.assemble([self.families.cyclic(7), loop])
        orders = {sub.order for sub in self.service.enumerate_sub(bs, exhaustive=True)}

        self.assertEqual(bs.order, 15)
        self.assertEqual(self.service.classify_bi(bs).kind, "biloop")
        self.assertNotIn(5, orders)
        self.assertIn(_sub({"1"}, {"e", "a3"}), self.service.sylow_p(bs, 3))
        self.assertTrue(all(sub.order == 3 for sub in self.service.sylow_p(bs, 3)))


if __name__ == "__main__":
    unittest.main()

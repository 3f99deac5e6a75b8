import unittest

from app.errors import BadParameters, CapExceeded, ComponentMismatch
from app.services.bivector_service import BivectorService, rank_mod


class BiVectorSpaceTest(unittest.TestCase):
    def setUp(self):
        self.service = BivectorService()

    def test_dimension_and_isomorphism(self):
        V = self.service.space(5, 2, 3)

        self.assertEqual(self.service.dim(V), 5)
        self.assertTrue(self.service.isomorphic(V, self.service.space(5, 2, 3)))
        self.assertFalse(self.service.isomorphic(V, self.service.space(5, 3, 2)))
        self.assertFalse(self.service.isomorphic(V, self.service.space(7, 2, 3)))

    def test_dimension_is_the_sum_of_parts(self):
        self.assertEqual(self.service.dim(self.service.space(5, 4, 5)), 9)
        self.assertFalse(self.service.isomorphic(self.service.space(5, 2, 6), self.service.space(5, 3, 5)))

    def test_scalars_need_a_prime(self):
        with self.assertRaises(BadParameters):
            self.service.space(4, 1, 1)
        with self.assertRaises(BadParameters):
            self.service.space(3, 0, 2)

    def test_vectors_live_in_one_component(self):
        V = self.service.space(5, 2, 3)

        self.assertEqual(self.service.vector(V, [1, 2, 0, 0, 0]).component, 0)
        self.assertEqual(self.service.vector(V, [0, 0, 0, 6, 0]).coords.tolist(), [0, 0, 0, 1, 0])
        self.assertEqual(self.service.vector(V, [0, 0, 0, 0, 0], component=1).component, 1)
        with self.assertRaises(ComponentMismatch):
            self.service.vector(V, [1, 0, 0, 1, 0])
        with self.assertRaises(ComponentMismatch):
            self.service.vector(V, [1, 0, 0, 0, 0], component=1)

    def test_addition_stays_inside_a_component(self):
        V = self.service.space(5, 2, 3)
        u = self.service.vector(V, [3, 4, 0, 0, 0])

        self.assertEqual(self.service.add(u, u).coords.tolist(), [1, 3, 0, 0, 0])
        self.assertEqual(self.service.scale(2, u), self.service.add(u, u))
        with self.assertRaises(ComponentMismatch):
            self.service.add(u, self.service.vector(V, [0, 0, 1, 0, 0]))


class BiLinearMapTest(unittest.TestCase):
    def setUp(self):
        self.service = BivectorService()
        self.V = self.service.space(5, 2, 2)
        self.T = self.service.bilinear_map(self.V, self.V, [[1, 0], [0, 0]], [[2, 0], [0, 3]])

    def test_block_matrix_keeps_components_apart(self):
        self.assertEqual(
            self.service.block_matrix(self.T).tolist(),
            [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 3]],
        )

    def test_apply(self):
        first = self.service.apply(self.T, self.service.vector(self.V, [1, 1, 0, 0]))
        second = self.service.apply(self.T, self.service.vector(self.V, [0, 0, 1, 1]))

        self.assertEqual(first.coords.tolist(), [1, 0, 0, 0])
        self.assertEqual(second.coords.tolist(), [0, 0, 2, 3])
        self.assertEqual(second.component, 1)

    def test_kernel_image_stays_tagged(self):
        image = self.service.apply(self.T, self.service.vector(self.V, [0, 1, 0, 0]))

        self.assertEqual(image.coords.tolist(), [0, 0, 0, 0])
        self.assertEqual(image.component, 0)

    def test_describe(self):
        report = self.service.describe(self.T)

        self.assertEqual(report.ranks, [1, 2])
        self.assertEqual(report.eigen_bivalues, [[0, 1], [2, 3]])

    def test_rectangular_blocks(self):
        V, W = self.service.space(5, 3, 5), self.service.space(5, 2, 3)
        first = [[1, 0, 0], [0, 1, 0]]
        second = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]]
        T = self.service.bilinear_map(V, W, first, second)

        self.assertEqual(self.service.block_matrix(T).shape, (5, 8))
        self.assertEqual(self.service.describe(T).eigen_bivalues, [None, None])
        with self.assertRaises(BadParameters):
            self.service.bilinear_map(V, W, second, first)

    def test_compose(self):
        square = self.service.compose(self.T, self.T)

        self.assertEqual(square.first.tolist(), [[1, 0], [0, 0]])
        self.assertEqual(square.second.tolist(), [[4, 0], [0, 4]])

    def test_rank_over_gf_p(self):
        self.assertEqual(rank_mod([[1, 2], [2, 4]], 5), 1)
        self.assertEqual(rank_mod([[1, 2], [3, 4]], 2), 1)
        self.assertEqual(rank_mod([[1, 2], [3, 4]], 5), 2)
        self.assertEqual(rank_mod([[1, 0, 0], [0, 1, 0]], 7), 2)
        self.assertEqual(rank_mod([[5, 10], [0, 0]], 5), 0)


class BiHomCountTest(unittest.TestCase):
    def setUp(self):
        self.service = BivectorService()

    def test_enumeration_matches_the_dimension_formula(self):
        V, W = self.service.space(2, 2, 1), self.service.space(2, 1, 2)
        report = self.service.bihom_count_check(V, W)

        self.assertEqual(report.dim, 4)
        self.assertEqual(report.expected, 16)
        self.assertEqual(report.enumerated, 16)
        self.assertTrue(report.holds)

    def test_enumeration_with_swapped_dims(self):
        V, W = self.service.space(2, 1, 2), self.service.space(2, 2, 1)

        self.assertEqual(self.service.bihom_count_check(V, W).enumerated, 16)

    def test_enumeration_cap(self):
        V = self.service.space(5, 2, 2)

        with self.assertRaises(CapExceeded):
            self.service.bihom_count_check(V, V)


if __name__ == "__main__":
    unittest.main()

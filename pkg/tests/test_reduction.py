"""Solution-shortening sweeps: worked values and the invariance theorems."""

import itertools
import random

import pytest

from knapcrack.errors import DimensionMismatch
from knapcrack.formulations import attack_ahl, decompose, special_solution
from knapcrack.intmat import solve_integer_combination
from knapcrack.pipeline import generate_instance
from knapcrack.problems import LdeSystem
from knapcrack.reduction import reduce_half, reduce_solution

TOY_SYS = LdeSystem.from_rows([[3, 15, 6]], [9])


def toy_kernel():
    return decompose(TOY_SYS)


class TestReduce:
    def test_orthogonal_kernel_fixed_point(self):
        # Kernel rows orthogonal and the target already nearest the origin.
        kernel_rows = [[2, 0, 0], [0, 3, 0]]  # columns of D as a 3x2 matrix
        D = [[2, 0], [0, 3], [0, 0]]
        assert reduce_solution([1, 1, 5], D) == [1, 1, 5]

    def test_toy_returns_known_short_vector(self):
        kd = toy_kernel()
        xb = special_solution(kd, [9])
        out = reduce_solution(xb, kd)
        assert sum(a * v for a, v in zip([3, 15, 6], out)) == 9
        assert out == [0, 1, -1]

    def test_difference_lies_in_kernel_lattice(self):
        rng = random.Random(0)
        kd = toy_kernel()
        cols = kd.kernel_columns()
        for _ in range(20):
            z = [rng.randint(-5, 5) for _ in cols]
            xb = [3 + sum(c[i] * zi for c, zi in zip(cols, z)) for i in range(3)]
            xb[0] += 0  # xb = (3,0,0) + D z
            out = reduce_solution(xb, kd)
            diff = [a - b for a, b in zip(xb, out)]
            assert solve_integer_combination(cols, diff) is not None

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            reduce_solution([1, 2], toy_kernel())


class TestReduceHalf:
    def test_toy_recenters_on_binary(self):
        kd = toy_kernel()
        xb = special_solution(kd, [9])
        out = reduce_half(xb, kd)
        assert sum(a * v for a, v in zip([3, 15, 6], out)) == 9
        assert out == [1, 0, 1]

    def test_result_integral_from_odd_parity(self):
        rng = random.Random(1)
        for seed in range(5):
            gen = generate_instance(10, seed)
            sys = gen.instance.as_system()
            kd = decompose(sys)
            xb = special_solution(kd, sys.b)
            out = reduce_half(xb, kd)
            assert all(isinstance(v, int) for v in out)
            assert sys.is_solution(out)


class TestInvarianceTheorems:
    def test_input_shift_invariance(self):
        rng = random.Random(2)
        kd = toy_kernel()
        cols = kd.kernel_columns()
        xb = special_solution(kd, [9])
        base = reduce_solution(xb, kd)
        base_half = reduce_half(xb, kd)
        for _ in range(50):
            z = [rng.randint(-5, 5) for _ in cols]
            shifted = [xb[i] + sum(c[i] * zi for c, zi in zip(cols, z))
                       for i in range(len(xb))]
            assert reduce_solution(shifted, kd) == base
            assert reduce_half(shifted, kd) == base_half

    def test_input_shift_invariance_larger(self):
        rng = random.Random(3)
        for seed in range(3):
            gen = generate_instance(8, seed)
            sys = gen.instance.as_system()
            kd = decompose(sys)
            cols = kd.kernel_columns()
            xb = special_solution(kd, sys.b)
            base = reduce_solution(xb, kd)
            base_half = reduce_half(xb, kd)
            for _ in range(10):
                z = [rng.randint(-5, 5) for _ in cols]
                shifted = [xb[i] + sum(c[i] * zi for c, zi in zip(cols, z))
                           for i in range(len(xb))]
                assert reduce_solution(shifted, kd) == base
                assert reduce_half(shifted, kd) == base_half

    def test_column_sign_invariance_symmetric_rounding(self):
        # Sign flips of kernel columns leave both sweeps unchanged, provided
        # half-ties round symmetrically.
        for seed in range(3):
            gen = generate_instance(8, seed)
            sys = gen.instance.as_system()
            kd = decompose(sys)
            cols = kd.kernel_columns()
            n_rows = len(cols[0])
            xb = special_solution(kd, sys.b)
            D = [[c[i] for c in cols] for i in range(n_rows)]
            base = reduce_solution(xb, D, rounding="symmetric")
            base_half = reduce_half(xb, D, rounding="symmetric")
            s = len(cols)
            for signs in itertools.product((1, -1), repeat=s):
                flipped = [[signs[j] * D[i][j] for j in range(s)]
                           for i in range(n_rows)]
                assert reduce_solution(xb, flipped, rounding="symmetric") == base
                assert reduce_half(xb, flipped, rounding="symmetric") == base_half


class TestAgreementWithAhl:
    def test_reduce_equals_ahl_extraction(self):
        # Same short integer solution from either formulation (m = 1).
        agreements = 0
        for seed in range(8):
            gen = generate_instance(12, seed)
            sys = gen.instance.as_system()
            kd = decompose(sys)
            xb = special_solution(kd, sys.b)
            ours = reduce_solution(xb, kd)
            ahl = attack_ahl(sys)
            if ahl.x is not None:
                assert list(ahl.x) == ours
                agreements += 1
        assert agreements >= 6

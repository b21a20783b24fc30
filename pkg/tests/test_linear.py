import itertools
import random

from mvrules.linear import (Constraint, LinExpr, find_integer_point,
                            rational_feasible)


def x(name, coef=1):
    return LinExpr({name: coef}, 0)


def expr(coeffs, const=0):
    return LinExpr(coeffs, const)


def brute_force(constraints, names, box):
    for values in itertools.product(range(-box, box + 1), repeat=len(names)):
        assignment = dict(zip(names, values))
        if all(c.holds(assignment) for c in constraints):
            return assignment
    return None


class TestBasics:
    def test_interval(self):
        cons = [Constraint.ge(expr({"x": 1}, -1)),   # x >= 1
                Constraint.ge(expr({"x": -1}, 3))]   # x <= 3
        sol = find_integer_point(cons)
        assert sol is not None and 1 <= sol["x"] <= 3

    def test_empty_interval(self):
        cons = [Constraint.ge(expr({"x": 1}, -2)),   # x >= 2
                Constraint.ge(expr({"x": -1}, 1))]   # x <= 1
        assert find_integer_point(cons) is None

    def test_divisibility_equalities(self):
        assert find_integer_point([Constraint.eq(expr({"x": 2}, -3))]) is None
        sol = find_integer_point([Constraint.eq(expr({"x": 2}, -4))])
        assert sol["x"] == 2

    def test_parity_conflict(self):
        # 2x = 2y + 1 has no integer solution but is rationally feasible
        cons = [Constraint.eq(expr({"x": 2, "y": -2}, -1))]
        assert rational_feasible(cons)
        assert find_integer_point(cons) is None

    def test_bezout(self):
        cons = [Constraint.eq(expr({"x": 3, "y": 5}, -1))]
        sol = find_integer_point(cons)
        assert 3 * sol["x"] + 5 * sol["y"] == 1

    def test_equality_without_unit_coefficients(self):
        # forces the unimodular coefficient-descent path
        cons = [Constraint.eq(expr({"x": 6, "y": 10, "z": 15}, -1))]
        sol = find_integer_point(cons)
        assert 6 * sol["x"] + 10 * sol["y"] + 15 * sol["z"] == 1
        cons = [Constraint.eq(expr({"x": 6, "y": 10}, -3))]
        assert find_integer_point(cons) is None  # gcd 2 does not divide 3

    def test_descent_with_bounds(self):
        cons = [Constraint.eq(expr({"x": 6, "y": 10, "z": 15}, -1)),
                Constraint.ge(expr({"x": 1}, 0)),      # x >= 0
                Constraint.ge(expr({"x": -1}, 10)),    # x <= 10
                Constraint.ge(expr({"y": 1}, 5)),      # y >= -5
                Constraint.ge(expr({"z": -1}, 5))]     # z <= 5
        sol = find_integer_point(cons)
        assert sol is not None and all(c.holds(sol) for c in cons)

    def test_one_sided(self):
        sol = find_integer_point([Constraint.ge(expr({"x": 1}, -5))])
        assert sol["x"] >= 5
        sol = find_integer_point([Constraint.ge(expr({"x": 3, "y": -1}, 0)),
                                  Constraint.ge(expr({"y": 1}, -2))])
        assert sol["y"] >= 2 and 3 * sol["x"] >= sol["y"]

    def test_strict_rewrite(self):
        con = Constraint.gt(expr({"x": 1}, 0))  # x > 0 becomes x - 1 >= 0
        sol = find_integer_point([con])
        assert sol["x"] >= 1


class TestOmegaClassic:
    def test_pugh_example_integer_infeasible(self):
        # 27 <= 11x + 13y <= 45 and -10 <= 7x - 9y <= 4: the rational
        # region is fat but holds no lattice point
        cons = [
            Constraint.ge(expr({"x": 11, "y": 13}, -27)),
            Constraint.ge(expr({"x": -11, "y": -13}, 45)),
            Constraint.ge(expr({"x": 7, "y": -9}, 10)),
            Constraint.ge(expr({"x": -7, "y": 9}, 4)),
        ]
        assert rational_feasible(cons)
        assert brute_force(cons, ["x", "y"], 80) is None
        assert find_integer_point(cons) is None

    def test_dark_shadow_positive(self):
        cons = [
            Constraint.ge(expr({"x": 2, "y": 1}, -5)),
            Constraint.ge(expr({"x": -3, "y": 2}, 12)),
            Constraint.ge(expr({"y": -1}, 4)),
        ]
        sol = find_integer_point(cons)
        assert sol is not None
        assert all(c.holds(sol) for c in cons)


class TestRandomAgainstBruteForce:
    def run_suite(self, rng, n_vars, n_cases, box, coef=5, const=12, n_cons=4):
        names = [f"v{i}" for i in range(n_vars)]
        for _ in range(n_cases):
            cons = []
            for _ in range(rng.randint(1, n_cons)):
                coeffs = {v: rng.randint(-coef, coef) for v in names}
                kind = rng.random()
                e = expr(coeffs, rng.randint(-const, const))
                cons.append(Constraint.eq(e) if kind < 0.25 else Constraint.ge(e))
            sol = find_integer_point(cons)
            ref = brute_force(cons, names, box)
            if sol is not None:
                assert all(c.holds(sol) for c in cons)
            if ref is not None:
                assert sol is not None, f"missed feasible system {cons}"

    def test_two_vars(self):
        self.run_suite(random.Random(101), 2, 250, box=40)

    def test_three_vars(self):
        self.run_suite(random.Random(202), 3, 80, box=12, coef=4, const=8)

    def test_one_var(self):
        self.run_suite(random.Random(303), 1, 150, box=60)


def test_rational_feasible_basics():
    assert rational_feasible([Constraint.eq(expr({"x": 2}, -1))])
    assert not rational_feasible([Constraint.ge(expr({"x": 1}, -2)),
                                  Constraint.ge(expr({"x": -1}, 1))])
    assert not rational_feasible([Constraint.ge(expr({}, -1))])
    assert rational_feasible([Constraint.ge(expr({}, 0))])

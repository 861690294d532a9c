"""The exact simplex against scipy's HiGHS and sympy's rational simplex.

HiGHS decides status and a float value. sympy gives an exact value, but it
can cycle on degenerate programs and sometimes returns points that violate
an equality, so its answer only counts when it arrives in time and is feasible.
"""
import random
import signal
from fractions import Fraction

import pytest

from hullnorm.exactlp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve, verify

sp = pytest.importorskip("sympy")
simplex = pytest.importorskip("sympy.solvers.simplex")
linprog = pytest.importorskip("scipy.optimize").linprog


class _Stalled(Exception):
    pass


def _alarm(*_):
    raise _Stalled


def sympy_min(c, a, b):
    """Exact optimum from sympy, or None when it stalls or lies."""
    xs = sp.symbols(f"x0:{len(c)}")
    cons = [sp.Eq(sum(sp.Rational(aij) * x for aij, x in zip(row, xs)), sp.Rational(bi))
            for row, bi in zip(a, b)]
    cons += [x >= 0 for x in xs]
    old = signal.signal(signal.SIGALRM, _alarm)
    signal.alarm(2)
    try:
        value, point = simplex.lpmin(sum(sp.Rational(ci) * x for ci, x in zip(c, xs)), cons)
    except (_Stalled, simplex.InfeasibleLPError, simplex.UnboundedLPError):
        return None
    finally:
        signal.alarm(0)
        signal.signal(signal.SIGALRM, old)
    x = [Fraction(str(point.get(v, 0))) for v in xs]
    if any(v < 0 for v in x) or any(sum(r * v for r, v in zip(row, x)) != bi for row, bi in zip(a, b)):
        return None
    return Fraction(int(value.p), int(value.q))


def scipy_min(c, a, b):
    res = linprog([float(v) for v in c], A_eq=[[float(v) for v in row] for row in a],
                  b_eq=[float(v) for v in b], bounds=(0, None), method="highs")
    return {0: OPTIMAL, 2: INFEASIBLE, 3: UNBOUNDED}[res.status], res.fun


def test_sympy_can_return_infeasible_points():
    # lpmin reports 37/5 at (21/5, 16/5, 0), which breaks the last row
    F = Fraction
    c = [F(1)] * 3
    a = [[F(2, 3), F(-3, 2), F(3)], [F(2), F(-2), F(-1, 2)], [F(3), F(0), F(-1)]]
    b = [F(-2), F(2), F(0)]
    res = solve(c, a, b)
    assert res.status == INFEASIBLE and verify(c, a, b, res)
    assert scipy_min(c, a, b)[0] == INFEASIBLE
    assert sympy_min(c, a, b) is None


def random_program(rng):
    m, n = rng.randint(1, 3), rng.randint(1, 4)
    r = lambda: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return [r() for _ in range(n)], [[r() for _ in range(n)] for _ in range(m)], [r() for _ in range(m)]


def test_small_optimum():
    res = solve([1, 1], [[1, -1]], [1])
    assert res.status == OPTIMAL and res.value == 1
    assert verify([1, 1], [[1, -1]], [1], res)


def test_infeasible_has_farkas_vector():
    res = solve([1, 0], [[1, 1]], [-1])
    assert res.status == INFEASIBLE
    assert verify([1, 0], [[1, 1]], [-1], res)


def test_unbounded_has_ray():
    res = solve([-1, 0], [[1, -1]], [0])
    assert res.status == UNBOUNDED
    assert verify([-1, 0], [[1, -1]], [0], res)


def test_degenerate_rows():
    # duplicated constraint leaves an artificial variable basic at zero
    res = solve([1, 2], [[1, 1], [1, 1]], [1, 1])
    assert res.status == OPTIMAL and res.value == 1


def test_tampered_certificate_is_rejected():
    res = solve([1, 1], [[1, -1]], [1])
    bad = type(res)(res.status, res.value, res.x, tuple(v + 1 for v in res.y))
    assert not verify([1, 1], [[1, -1]], [1], bad)


@pytest.mark.parametrize("seed", range(40))
def test_against_oracles(seed):
    rng = random.Random(seed)
    for _ in range(5):
        c, a, b = random_program(rng)
        res = solve(c, a, b)
        assert verify(c, a, b, res)
        status, value = scipy_min(c, a, b)
        assert res.status == status
        if status == OPTIMAL:
            assert abs(float(res.value) - value) < 1e-9
            exact = sympy_min(c, a, b)
            assert exact is None or exact == res.value

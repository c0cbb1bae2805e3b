"""Solver tests: exhaustive agreement with the verifier, canonical ordering,
budget handling, and the explicit Ramsey construction."""

from itertools import product

import numpy as np
import pytest

from tfnpkit.errors import CapabilityError, DomainError, ParseError
from tfnpkit.numerics import bits_of, ceil_log2
from tfnpkit.problems import (
    ProblemId,
    ProblemInstance,
    all_solution_tags,
    gen_random_instance,
    instance_to_text,
    make_solution,
    solution_order_key,
    verify,
    wellformed,
    witness_names,
)
from tfnpkit.solvers import (
    ColoringMatrix,
    SolveBudget,
    brute_force_solve,
    coloring_from_text,
    coloring_to_text,
    designed_instances,
    enumerate_solutions,
    fuzz_instance,
    ramsey_explicit,
    random_coloring,
)

WS = ("ws", "ws_collisions", "ws_colorful")

# solver convention: clique witnesses appear once, in sorted-index form
CLIQUE_TAG = {"weak_mantel": "i", "mantel": "i", "weak_turan": "i", "turan": "iii"}


def expected_solutions(inst):
    """Every verify-accepted witness tuple, restricted to the solver's
    clique representative convention."""
    pid = inst.pid
    win = 2 * inst.n if pid.name in WS else inst.in_width
    out = []
    for tag in all_solution_tags(pid):
        arity = len(witness_names(pid, tag))
        for vals in product(range(1 << win), repeat=arity):
            if tag == CLIQUE_TAG.get(pid.name) and list(vals) != sorted(vals):
                continue
            sol = make_solution(pid, tag, *(bits_of(v, win) for v in vals))
            if verify(inst, sol).ok:
                out.append(sol)
    return out


ENUM_CASES = [
    ("weak_pigeon", 2, {}),
    ("pigeon", 2, {}),
    ("general_pigeon", 2, {"k": 2}),
    ("ekr", 2, {}),
    ("weak_gekr", 2, {"k": 3}),
    ("weak_sperner", 2, {}),
    ("sperner", 2, {}),
    ("cayley", 3, {}),
    ("ws", 1, {}),
    ("ws_collisions", 1, {}),
    ("ws_colorful", 1, {}),
    ("weak_mantel", 2, {}),
    ("mantel", 2, {}),
    ("weak_turan", 2, {"r": 2}),
    ("turan", 2, {"r": 2}),
]


@pytest.mark.parametrize("name,n,extra", ENUM_CASES)
def test_enumeration_complete_sound_and_ordered(name, n, extra):
    pid = ProblemId(name, **extra)
    for seed in (0, 3):
        inst = gen_random_instance(pid, n, seed)
        sols, truncated = enumerate_solutions(inst, SolveBudget(max_per_type=None))
        assert not truncated
        assert sols == expected_solutions(inst), (name, seed)
        keys = [solution_order_key(s) for s in sols]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)


@pytest.mark.parametrize("name,n,extra", ENUM_CASES)
def test_brute_force_minimum_and_parallel_determinism(name, n, extra):
    pid = ProblemId(name, **extra)
    for seed in (0, 3):
        inst = gen_random_instance(pid, n, seed)
        sols, _ = enumerate_solutions(inst, SolveBudget(max_per_type=None))
        best = brute_force_solve(inst)
        assert best == min(sols, key=solution_order_key) == sols[0]
        par = brute_force_solve(inst, SolveBudget(parallelism=4))
        assert par == best


def test_truncation_flag_and_cap():
    pid = ProblemId("weak_pigeon")
    inst = designed_instances(pid, 3)[0]  # constant circuit: everything collides
    sols, truncated = enumerate_solutions(inst, SolveBudget(max_per_type=5))
    assert truncated and len(sols) == 5
    full, t2 = enumerate_solutions(inst, SolveBudget(max_per_type=None))
    assert not t2 and len(full) == 16 * 15  # all ordered colliding pairs


def test_budget_guards():
    with pytest.raises(DomainError):
        SolveBudget(max_in_width=30)
    with pytest.raises(DomainError):
        SolveBudget(parallelism=0)
    inst = gen_random_instance(ProblemId("weak_pigeon"), 4, 0)
    with pytest.raises(CapabilityError):
        enumerate_solutions(inst, SolveBudget(max_in_width=4))
    with pytest.raises(CapabilityError):
        brute_force_solve(inst, SolveBudget(max_in_width=4))
    broken = ProblemInstance(ProblemId("pigeon"), 2, inst.circuit)
    with pytest.raises(DomainError):
        brute_force_solve(broken)


def test_totality_fuzz_sample():
    # a smaller in-suite slice of the totality sweep: every random instance
    # of every problem has at least one solution
    specs = [(name, n, extra) for name, n, extra in ENUM_CASES] + [
        ("gekr", 2, {"k": 3}),
        ("weak_ekr", 2, {}),
        ("weak_cayley", 3, {}),
    ]
    for name, n, extra in specs:
        pid = ProblemId(name, **extra)
        for seed in range(5):
            inst = gen_random_instance(pid, n, 100 + seed)
            brute_force_solve(inst)  # raises if nothing is found


def test_generators_are_wellformed_and_deterministic():
    for name, n, extra in ENUM_CASES:
        pid = ProblemId(name, **extra)
        for inst in designed_instances(pid, n):
            assert wellformed(inst).ok
        a = fuzz_instance(pid, n, 7)
        b = fuzz_instance(pid, n, 7)
        assert instance_to_text(a) == instance_to_text(b)
        assert wellformed(a).ok


def test_fuzz_instance_folds_wide_inputs():
    inst = fuzz_instance(ProblemId("ws"), 5, 0)  # input width 20
    assert inst.in_width == 20
    assert wellformed(inst).ok
    out = inst.circuit.eval(bits_of(0, 20))
    assert out.width == 5


# ---------------------------------------------------------------------------
# colorings and the explicit Ramsey clique


def test_coloring_round_trip_and_validation():
    c = random_coloring(9, 4)
    assert coloring_to_text(random_coloring(9, 4)) == coloring_to_text(c)
    back = coloring_from_text(coloring_to_text(c))
    assert back.n == 9 and np.array_equal(back.table, c.table)
    with pytest.raises(DomainError):
        c.color(3, 3)
    with pytest.raises(DomainError):
        ColoringMatrix(3, np.array([[0, 1, 0], [0, 0, 1], [0, 1, 0]]))
    with pytest.raises(DomainError):
        ColoringMatrix(3, np.full((3, 3), 7))
    with pytest.raises(ParseError):
        coloring_from_text("")
    with pytest.raises(ParseError):
        coloring_from_text("3\n01")
    with pytest.raises(ParseError):
        coloring_from_text("3\n0x\n1")


def test_ramsey_clique_monochromatic_and_large_enough():
    for big_n in (4, 8, 16, 32, 64):
        bound = -(-ceil_log2(big_n) // 2) if big_n > 1 else 1
        for seed in range(8):
            c = random_coloring(big_n, seed)
            clique = ramsey_explicit(c)
            assert len(clique) >= bound
            assert len(set(clique)) == len(clique)
            if len(clique) >= 2:
                col = c.color(clique[0], clique[1])
                for i, u in enumerate(clique):
                    for v in clique[i + 1:]:
                        assert c.color(u, v) == col


def test_ramsey_on_constant_colorings():
    for big_n in (8, 16, 32):
        for fill in (0, 1):
            table = np.full((big_n, big_n), fill)
            np.fill_diagonal(table, 0)
            clique = ramsey_explicit(ColoringMatrix(big_n, table))
            # every pick keeps the whole remainder: floor(log2 N) + 1 picks
            assert len(clique) >= ceil_log2(big_n)


def test_ramsey_deterministic():
    c = random_coloring(40, 12)
    assert ramsey_explicit(c) == ramsey_explicit(c)
    with pytest.raises(DomainError):
        ramsey_explicit(ColoringMatrix(1, np.zeros((1, 1), dtype=int)))

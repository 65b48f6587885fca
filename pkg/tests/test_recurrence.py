import pytest

from app.core.exceptions import RecurrenceInapplicableError
from app.services.lifting.homotopy import solve_homotopy_lifting
from app.services.lifting.recurrence import recurrence_sequence, recurrence_step, single_scalar_table
from tests.helpers import cochain, fixture_path


def test_recurrence_on_truncated_polynomial(truncated_x2):
    K = truncated_x2.complex
    eta = truncated_x2.load_cochain(fixture_path("x2_eta.json"))
    run = recurrence_sequence(K, eta)
    assert run.stopped_at is None
    for m in range(1, 7):
        assert run.tables[m] == {0: (0, K.field(m))}
    assert all(w.holds() for w in run.witnesses)


def test_recurrence_agrees_with_the_solver(truncated_x2):
    K = truncated_x2.complex
    eta = truncated_x2.load_cochain(fixture_path("x2_eta.json"))
    psi = solve_homotopy_lifting(eta)
    run = recurrence_sequence(K, eta)
    for m in range(1, 7):
        assert single_scalar_table(psi, m) == run.tables[m]


def test_recurrence_on_anticommuting_algebra(anticommuting):
    K = anticommuting.complex
    theta = cochain(anticommuting, 1, "0", "y")
    run = recurrence_sequence(K, theta, max_degree=2)
    assert run.tables[1] == {1: (1, K.field.one)}
    assert run.tables[2] == {1: (1, K.field.one)}
    assert set(run.sources.values()) == {"recurrence"}


def test_single_step_from_scratch(truncated_x2):
    K = truncated_x2.complex
    eta = truncated_x2.load_cochain(fixture_path("x2_eta.json"))
    table, witnesses = recurrence_step(K, eta, 1, {})
    assert table == {0: (0, K.field.one)}
    assert witnesses[0].target == 0
    assert {e.side for e in witnesses[0].equations} == {"left", "right"}


def test_two_entries_are_out_of_shape(anticommuting):
    K = anticommuting.complex
    with pytest.raises(RecurrenceInapplicableError):
        recurrence_step(K, cochain(anticommuting, 1, "x", "y"), 1, {})


def test_path_coefficients_stop_the_run(truncated_x3):
    K = truncated_x3.complex
    alpha = cochain(truncated_x3, 1, "x")
    run = recurrence_sequence(K, alpha)
    assert run.stopped_at == 2
    assert run.tables == {1: {0: (0, K.field.one)}}
    assert "outside the single-scalar shape" in run.reason


def test_solver_fills_the_gaps(truncated_x3):
    K = truncated_x3.complex
    alpha = cochain(truncated_x3, 1, "x")
    run = recurrence_sequence(K, alpha, fallback=solve_homotopy_lifting(alpha))
    assert run.stopped_at is None
    assert {m: table[0][1] for m, table in run.tables.items()} == {
        m: K.field(s) for m, s in {1: 1, 2: 3, 3: 4, 4: 6, 5: 7, 6: 9}.items()
    }
    assert run.sources == {
        1: "recurrence",
        2: "solver",
        3: "recurrence",
        4: "solver",
        5: "recurrence",
        6: "solver",
    }

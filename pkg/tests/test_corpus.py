import numpy as np
import pytest

from zxkit.corpus import (
    all_checks,
    check_rule_instance,
    circuit_identities,
    generator_table,
    rule_instances,
    swap_colours,
    unitary_table,
    y_state_identity,
)
from zxkit.phase import Phase
from zxkit.tensor import evaluate, proportional
from zxkit.worked import ghz_diagram


@pytest.mark.parametrize("entry", generator_table(Phase.real(0.7318)) + unitary_table(Phase.real(0.7318)),
                         ids=lambda e: e.name)
def test_matrix_tables(entry):
    assert entry.check(1e-9)


@pytest.mark.parametrize("ident", circuit_identities(), ids=lambda i: i.name)
def test_circuit_identities(ident):
    result = ident.check(1e-9)
    assert all(result.values()), result


@pytest.mark.parametrize("inst", rule_instances(), ids=lambda r: r.name)
def test_rule_instances_sound_and_replayable(inst):
    rep = check_rule_instance(inst, 1e-9)
    assert rep.sound and rep.replayed


def test_y_state_identity():
    a, b = y_state_identity()
    lam = proportional(evaluate(a), evaluate(b))
    assert lam == pytest.approx(np.exp(0.25j * np.pi))


def test_swap_colours_preserves_evaluation():
    d = ghz_diagram()
    assert np.allclose(evaluate(swap_colours(d)), evaluate(d))


def test_all_checks_count():
    checks = all_checks(1e-9)
    assert len(checks) >= 100

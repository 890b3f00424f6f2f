import io
import json

import numpy as np
import pytest

from matpowsum import harness
from matpowsum.builtins import quaternion, zn
from matpowsum.harness import Cell, ConfigError, SweepReport, _judge


def test_judge_classifications():
    eye = np.eye(2, dtype=int)
    assert _judge(eye, eye, True, None)[0] == "proved-match"
    assert _judge(eye, eye, False, None)[0] == "conjecture-match"
    cls, note, bug = _judge(eye, 0 * eye, False, lambda: 0 * eye)
    assert (cls, bug) == ("counterexample", False) and "reproduced" in note
    cls, _, bug = _judge(eye, 0 * eye, False, lambda: eye)
    assert (cls, bug) == ("proved-mismatch", True)
    cls, _, bug = _judge(eye, 0 * eye, True, lambda: 0 * eye)
    assert (cls, bug) == ("proved-mismatch", True)


def test_exit_codes():
    rep = SweepReport("x", [Cell({}, "proved-match")])
    assert rep.exit_code == harness.EXIT_OK
    rep.cells.append(Cell({}, "counterexample"))
    assert rep.exit_code == harness.EXIT_COUNTEREXAMPLE
    rep.cells.append(Cell({}, "proved-mismatch", bug=True))
    assert rep.exit_code == harness.EXIT_BUG


def test_family_sweep_small():
    rep = harness.verify_family_sweep("zn", [2, 3, 6], [2], 8)
    assert rep.exit_code == 0 and rep.cells_checked == 24
    assert rep.select(n=6, k=5)[0].classification == "proved-match"


def test_family_sweep_rejects_unknown_family():
    with pytest.raises(ConfigError):
        harness.verify_family_sweep("octonion", [2], [2], 3)


def test_reduction_and_lifting_checks():
    assert harness.check_reduction(3, 6, 2, 5).passed
    assert harness.check_lifting(2, 1, 2, 5).passed
    assert harness.check_monomial_lifting(2, (2, 1), (1, 2, 1), 1).passed
    with pytest.raises(ConfigError):
        harness.check_reduction(4, 6, 2, 1)
    with pytest.raises(ConfigError):
        harness.check_monomial_lifting(2, (1, 1), (1, 2), 1)


def test_all_words():
    assert harness.all_words(2, 2) == [(1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_lemma_audit_small_grid():
    rep = harness.lemma_audit(odd_primes=(3,), odd_s=(1, 2), two_s=(3,), tau_max=2, beta_max=3)
    assert rep.exit_code == 0
    assert not [c for c in rep.cells if c.params["section"] != "two" and c.classification != "proved-match"]
    cell = rep.select(section="two", s=3, betas=[1, 2])[0]
    assert (cell.classification, cell.expected, cell.observed) == ("audit-mismatch", 4, 0)


def test_conjecture1_records_the_excluded_case():
    rep = harness.conjecture1_sweep([(2, (1, 1))], max_degree=2)
    assert {c.classification for c in rep.cells} == {"recorded"}
    rep = harness.conjecture1_sweep([(2, (2, 1))], max_degree=2)
    assert rep.exit_code == 0 and not rep.counterexamples


def test_conjecture1_validation():
    with pytest.raises(ConfigError):
        harness.conjecture1_sweep([(4, (1,))])
    with pytest.raises(ConfigError):
        harness.conjecture1_sweep([(2, (1, 2))])


def test_catalog_refuses_noncommutative():
    with pytest.raises(ConfigError):
        harness.ring_catalog_sweep(["quaternion(3)"], ds=(2,), kmax=2)
    with pytest.raises(ConfigError):
        harness.ring_catalog_sweep(["nosuch(3)"], ds=(2,), kmax=2)


def test_catalog_skips_over_budget():
    rep = harness.ring_catalog_sweep(["zn(7)"], ds=(3,), kmax=2, budget=1000)
    assert {c.classification for c in rep.cells} == {"skipped"}
    assert rep.exit_code == 0


def test_noncommutative_probe_records_only():
    rep = harness.noncommutative_probe([quaternion(2), "upper_triangular(2)"], kmax=3)
    assert {c.classification for c in rep.cells} == {"recorded"}
    assert rep.exit_code == 0


def test_jsonl_is_deterministic():
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        harness.ring_catalog_sweep([zn(6), "null_ring(2)"], ds=(2,), kmax=6).write_jsonl(buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
    rows = [json.loads(line) for line in outs[0].splitlines()]
    assert len(rows) == 12
    assert rows[4]["observed"] == [[[3], [0]], [[0], [3]]]


def test_a017593_sweep_small():
    rep = harness.a017593_sweep(n_max=8, predicate_max=30)
    assert rep.exit_code == 0
    assert rep.select(kind="oracle", n=6)[0].observed is True

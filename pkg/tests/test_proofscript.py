from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from overcubic import claims, registry
from overcubic.eta import Theta
from overcubic.expr import BinOp, Eta, EtaExpr, Extract, Neg, Num, Pow, Ref, Subq, ThetaAtom
from overcubic.proofscript import (Assert, Let, Pragma, ScriptError, format_script, load, parse,
                                   parse_expr, replay)

SCRIPTS = Path(__file__).resolve().parents[1] / "src" / "overcubic" / "scripts"
SHIPPED = ["lemma-2", "conj-1", "conj-2"]


def f(k):
    return Eta(EtaExpr(1, 0, ((k, 1),)))


def test_parse_let():
    s = parse("let S = f4^3 / (f1^6 * f2^3)")
    (stmt,) = s.statements
    assert isinstance(stmt, Let) and stmt.name == "S"
    assert stmt.expr == BinOp("/", Pow(f(4), 3), BinOp("*", Pow(f(1), 6), Pow(f(2), 3)))


def test_parse_assert_2_8():
    text = ("let S = f4^3 / (f1^6 * f2^3)\n"
            "assert extract(S,0,2) == 8*q*f2^7*f4^3*f8^2*(1/f1^4)^4*(1/f1^2)"
            " + (f2^17*f4/f8^2)*(1/f1^4)^5*(1/f1^2) as \"2-8\"")
    a = parse(text).statements[1]
    assert isinstance(a, Assert) and a.label == "2-8" and a.modulus == 0 and a.order is None
    assert a.lhs == Extract(Ref("S"), 0, 2)
    assert replay(parse(text), 200)[0].passed


def test_let_without_name_is_a_syntax_error():
    with pytest.raises(ScriptError) as err:
        parse("let = 3")
    assert (err.value.line, err.value.col) == (1, 5)


@pytest.mark.parametrize("text,line,col", [
    ("let A = f1 $ f2", 1, 12),
    ("let A = f1\nassert A == B as \"x\"", 2, 13),
    ("let A = f1\nlet A = f2", 2, 5),
    ("assert f1 == f1 as \"x\"\nassert f2 == f2 as \"x\"", 2, 1),
    ("assert f1 == f1 mod 0 as \"x\"", 1, 21),
    ("assert f1 == f1", 1, 16),
    ("let A = extract(f1, 3, 2)", 1, 9),
    ("let A = f1^q", 1, 12),
    ("let A = (f1 + f2", 1, 17),
])
def test_errors_carry_positions(text, line, col):
    with pytest.raises(ScriptError) as err:
        parse(text)
    assert (err.value.line, err.value.col) == (line, col)


def test_precedence_and_unary_minus():
    assert parse_expr("-f1^2") == Neg(Pow(f(1), 2))
    assert parse_expr("1 - 2*q") == BinOp("-", Num(1), BinOp("*", Num(2), Eta(EtaExpr(1, 1))))
    assert parse_expr("f1^-6") == Pow(f(1), -6) == parse_expr("f1^(-6)")
    assert parse_expr("a - b - c", names={"a", "b", "c"}) == BinOp("-", BinOp("-", Ref("a"), Ref("b")), Ref("c"))
    assert parse_expr("phineg(2) + subq(psi(1), 3)") == BinOp(
        "+", ThetaAtom(Theta.PHI_NEG, 2), Subq(ThetaAtom(Theta.PSI, 1), 3))


def test_continuations_and_comments():
    s = parse("# heading\nlet A = (f1 +\n   f2)  # trailing\nlet B = A \\\n  * 2\npragma order = 50\n")
    assert [type(x) for x in s.statements] == [Let, Let, Pragma]
    assert s.pragmas == {"order": 50}


def test_replay_failure_reports_first_index():
    (r,) = replay(parse('assert f1 == f2 upto 2 as "neg"'), 100)
    assert not r.passed and r.range_checked == 2
    assert r.counterexample == (1, -1)
    assert "-1 vs 0" in r.detail


def test_replay_division_by_non_unit_has_position():
    with pytest.raises(ScriptError) as err:
        replay(parse('let A = 2*f1\n\nassert 1/A == f1 as "x"'), 10)
    assert err.value.line == 3


def test_replay_power_of_two_script():
    reports = replay(load(SCRIPTS / "lemma-2.qprf"), 400)
    assert [r.id for r in reports] == ["2-1", "2-2", "2-3", "2-4"]
    assert all(r.passed for r in reports)


def test_independent_lets_commute():
    lets = ["let A = f1^3", "let B = f2/f1", "let C = psi(1)"]
    tail = 'assert A*B == f1^2*f2 as "x"\nassert C == B*f2 mod 4 as "y"\n'
    first = replay(parse("\n".join(lets) + "\n" + tail), 200)
    second = replay(parse("\n".join(reversed(lets)) + "\n" + tail), 200)
    assert [(r.id, r.passed) for r in first] == [(r.id, r.passed) for r in second] == [("x", True), ("y", True)]


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_scripts_print_parse_round_trip(name):
    s = load(SCRIPTS / f"{name}.qprf")
    again = parse(format_script(s))
    assert again.statements == s.statements
    assert format_script(again) == format_script(s)


def test_labels_match_registry_and_claims():
    registry_ids = set(registry.REGISTRY)
    claim_ids = {c.id for c in claims.builtin_claims()}
    assert not registry_ids & claim_ids
    seen = {}
    for name in SHIPPED:
        for a in load(SCRIPTS / f"{name}.qprf").asserts:
            assert a.label in registry_ids | claim_ids, a.label
            assert a.label not in seen, f"{a.label} in {seen.get(a.label)} and {name}"
            seen[a.label] = name
    # every registry record is replayed by exactly one script
    assert registry_ids <= set(seen)


# ---- generated expressions ----------------------------------------------------------

names = st.sampled_from(["A", "B"])
atoms = st.one_of(
    st.integers(1, 9).map(f),
    st.just(Eta(EtaExpr(1, 1))),
    st.integers(0, 50).map(Num),
    st.builds(ThetaAtom, st.sampled_from(list(Theta)), st.integers(1, 8)),
    names.map(Ref),
)


def _extend(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(-4, 6)),
        st.builds(Subq, children, st.integers(1, 4)),
        st.integers(2, 6).flatmap(lambda m: st.builds(Extract, children, st.integers(0, m - 1), st.just(m))),
    )


exprs = st.recursive(atoms, _extend, max_leaves=12)


@settings(max_examples=300)
@given(exprs)
def test_print_parse_fixed_point(x):
    from overcubic.expr import to_text
    text = to_text(x)
    once = parse_expr(text, names={"A", "B"})
    assert to_text(once) == text
    assert parse_expr(to_text(once), names={"A", "B"}) == once
